//! Exact rationals, a 61-bit prime field, and reproducible sampling.

use ybmaps::field::sample;
use ybmaps::{Field, FieldConfig, SquareMatrix};

fn main() -> ybmaps::Result<()> {
    let q = Field::Rational;
    let x = q.ratio(3, 4)? + q.ratio(5, 6)?;
    println!("3/4 + 5/6 = {x}");
    println!("(3/4)^-2 = {}", q.ratio(3, 4)?.pow(-2)?);

    let p = FieldConfig::default_prime(1).field();
    let third = p.int(3).inv()?;
    println!("1/3 in {p} = {third}; times 3 = {}", &third * &p.int(3));

    let m = SquareMatrix::from_ints(q, [[2, 1], [7, 4]]);
    println!("det = {}, inverse = {}", m.det(), m.inverse()?);

    let cfg = FieldConfig::rational(42).with_sample_bound(10)?;
    let draws: Vec<String> = sample(&cfg, 5, |e| !e.is_zero())?.iter().map(|e| e.to_string()).collect();
    println!("seed 42, bound 10: {}", draws.join(", "));
    Ok(())
}
