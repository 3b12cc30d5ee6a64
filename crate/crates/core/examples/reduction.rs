//! Restricting the Case I map to x1 = 0, then tying parameters as (a-r, a+r).

use ybmaps::catalog;
use ybmaps::construct::Preconditions;
use ybmaps::lax::check_refactorization;
use ybmaps::reduce::{
    case_one_map, check_compatibility, reduce_lax, reduce_map, ConstraintFunction, Reparametrization,
};
use ybmaps::yb::check_map_equality;
use ybmaps::{CheckOptions, FieldConfig};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(200);
    let (map, lax) = case_one_map();
    let f = ConstraintFunction::zero(2, 1)?;
    println!("{}", check_compatibility(&map, &f, &cfg, &opts)?.summary_line());
    let reduced = reduce_map(&map, &f, &Preconditions::strict(cfg.clone(), opts.clone()))?;
    let rl = reduce_lax(&lax, &f)?;
    println!("{}", check_map_equality(&reduced, &catalog::fourparam(), &cfg, &opts)?.summary_line());
    println!("{}", check_refactorization(&rl, &reduced, &cfg, &opts, 3)?.summary_line());

    let h = Reparametrization::homotopy();
    let hm = h.map(&reduced, "homotopy");
    println!("{}", check_map_equality(&hm, &catalog::mkdv_toda_homotopy(), &cfg, &opts)?.summary_line());
    println!("{}", check_refactorization(&h.lax(&rl, "homotopy_lax"), &hm, &cfg, &opts, 3)?.summary_line());
    Ok(())
}
