//! The inverse construction and a round trip back to the map.

use ybmaps::catalog;
use ybmaps::construct::{roundtrip_check, ternary_from_yb, Preconditions, RoundTrip};
use ybmaps::yb::check_3d_consistency;
use ybmaps::{CheckOptions, Field, FieldConfig, Quasigroup};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(200);
    let div = Quasigroup::builtin("division")?;
    let t = ternary_from_yb(&catalog::fourparam(), &div, &Preconditions::strict(cfg.clone(), opts.clone()))?;
    let q = Field::Rational;
    let w = t.evaluate(&[q.int(1), q.int(2)], &[q.int(3), q.int(5)], &[q.int(1)], &[q.int(2)], &[q.int(3)])?;
    println!("{}: mu(1, 2, 3) = {}", t.name(), w[0]);
    println!("{}", check_3d_consistency(&t, &cfg, &opts)?.summary_line());
    let back = roundtrip_check(&RoundTrip::Map(catalog::fourparam()), &div, &cfg, &opts)?;
    println!("{}", back.summary_line());
    Ok(())
}
