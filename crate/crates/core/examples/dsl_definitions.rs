//! Parse a definition file, print it canonically, and evaluate it.

use std::collections::HashMap;

use ybmaps::dsl;
use ybmaps::Field;

const Q1: &str = "
# Q1 as a ternary system
kind: ternary
params: a1, b1
vars: a, b, c
mu = (a1*a*(b - c) + b1*c*(a - b))/(a1*(b - c) + b1*(a - b))
";

fn main() -> ybmaps::Result<()> {
    let def = dsl::parse(Q1)?;
    print!("{def}");
    let q = Field::Rational;
    let t = def.into_ternary("q1")?;
    let w = t.evaluate(&[q.int(1)], &[q.int(2)], &[q.int(1)], &[q.int(2)], &[q.int(3)])?;
    println!("mu(1, 2, 3) at (1, 2) = {}", w[0]);

    let e = dsl::parse_expr("x^2 - 2*x*y + y^2")?;
    let env = HashMap::from([("x".to_string(), q.int(7)), ("y".to_string(), q.int(4))]);
    println!("{e} at (7, 4) = {}", e.evaluate(q, &env)?);

    match dsl::parse("kind: ybmap\nparams: a, b\nvars: x, y\nu = y + (a - b)/(x +") {
        Err(err) => println!("error: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
