//! Maps from the dKdV ternary system through each applicable structure.

use ybmaps::catalog;
use ybmaps::construct::{yb_from_ternary, ConstructionKind, Preconditions};
use ybmaps::yb::check_map_equality;
use ybmaps::{CheckOptions, FieldConfig, Quasigroup};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(200);
    let pre = Preconditions::strict(cfg.clone(), opts.clone());
    let t = catalog::dkdv_ternary();
    for (kind, q, known) in
        [("abelian_additive", "additive", "adler"), ("division", "division", "f4"), ("loop", "subtraction_loop", "f5")]
    {
        let map = yb_from_ternary(&t, ConstructionKind::parse(kind)?, &Quasigroup::builtin(q)?, &pre)?;
        let same = check_map_equality(&map, catalog::lookup(known)?.map().expect("map"), &cfg, &opts)?;
        println!("{:<40} equals {known}: {}", map.name(), same.verdict);
    }
    match yb_from_ternary(&t, ConstructionKind::Group, &Quasigroup::builtin("multiplicative")?, &pre) {
        Err(e) => println!("group over multiplicative: {e}"),
        Ok(_) => unreachable!("dKdV is not multiplicatively homogeneous"),
    }
    Ok(())
}
