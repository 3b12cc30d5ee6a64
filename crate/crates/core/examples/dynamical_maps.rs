//! A dynamical YB map from a 3D consistent ternary system.

use ybmaps::catalog;
use ybmaps::construct::{dynamical_yb_from_ternary, Preconditions};
use ybmaps::yb::check_dynamical_yb;
use ybmaps::{CheckOptions, Field, FieldConfig, Quasigroup};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(200);
    let add = Quasigroup::builtin("additive")?;
    let d = dynamical_yb_from_ternary(
        &catalog::dkdv_ternary(),
        &add,
        None,
        &Preconditions::strict(cfg.clone(), opts.clone()),
    )?;
    let q = Field::Rational;
    let (eta, xi) = d.evaluate(&[q.int(1)], &[q.int(2)], &[q.int(3)], &[q.int(1)], &[q.int(5)])?;
    println!("R(lambda=1)(x=2, y=1) with params (3, 5) = ({}, {})", eta[0], xi[0]);
    println!("{}", check_dynamical_yb(&d, &cfg, &opts)?.summary_line());
    Ok(())
}
