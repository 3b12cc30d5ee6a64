//! Refactorization and strongness of the four-parameter Lax pair.

use ybmaps::catalog::{fourparam, fourparam_lax};
use ybmaps::lax::{check_refactorization, check_strongness, LaxMatrix};
use ybmaps::{CheckOptions, FieldConfig};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(100);
    let (l, r) = (fourparam_lax(), fourparam());
    println!("{}", check_refactorization(&l, &r, &cfg, &opts, 3)?.summary_line());
    println!("{}", check_strongness(&l, &r, &cfg, &opts, 10)?.summary_line());
    let id = LaxMatrix::identity(r.carrier(), 2, 2);
    println!("{}", check_strongness(&id, &r, &cfg, &opts, 10)?.summary_line());
    Ok(())
}
