//! The dKdV consistency cube at a rational point, then a sampled check.

use ybmaps::catalog;
use ybmaps::yb::{check_3d_consistency, cube_values};
use ybmaps::{CheckOptions, Field, FieldConfig};

fn main() -> ybmaps::Result<()> {
    let q = Field::Rational;
    let t = catalog::dkdv_ternary();
    let i = |n| vec![q.int(n)];
    let cube = cube_values(&t, &i(1), &i(2), &i(4), &i(0), &i(1), &i(2), &i(3))?;
    println!("w1 = {}, w2 = {}", cube.w1[0], cube.w2[0]);
    println!("w3 = {} / {}", cube.w3.0[0], cube.w3.1[0]);
    println!("w4 = {} / {}", cube.w4.0[0], cube.w4.1[0]);
    println!("consistent: {}", cube.consistent());
    let r = check_3d_consistency(&t, &FieldConfig::default_prime(1), &CheckOptions::new(200))?;
    println!("{}", r.summary_line());
    Ok(())
}
