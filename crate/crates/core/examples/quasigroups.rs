//! Axiom checks for the builtin quasigroups.

use ybmaps::quasigroup::BuiltinQuasigroup;
use ybmaps::{FieldConfig, Quasigroup};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    for name in BuiltinQuasigroup::NAMES {
        let g = Quasigroup::builtin(name)?;
        let report = g.check_axioms(&cfg, 100)?;
        println!("{name} (consistent: {})", report.is_consistent());
        for law in &report.laws {
            let w = law.witness.as_deref().map(|w| format!("  e.g. {w}")).unwrap_or_default();
            println!("    {:<28} {}{w}", law.law, law.holds);
        }
    }
    Ok(())
}
