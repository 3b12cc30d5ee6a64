//! The GL_2 map for two commuting families and its ternary system.

use ybmaps::glmatrix::{char_coeffs, check_spectral_invariants, gl_ternary, gl_yb_map, CommutingFamily};
use ybmaps::yb::{check_3d_consistency, check_yb};
use ybmaps::{CheckOptions, Field, FieldConfig, SquareMatrix};

fn main() -> ybmaps::Result<()> {
    let q = Field::Rational;
    let c = char_coeffs(&SquareMatrix::from_ints(q, [[1, 2], [3, 4]]), &SquareMatrix::from_ints(q, [[2, 0], [0, 3]]))?;
    println!("det(X - zK) coefficients: z^2 {}, z {}, 1 {}", c.f2, c.f1, c.f0);

    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(100);
    for k in [CommutingFamily::diagonal(), CommutingFamily::polynomial_in_j([0, 1, 1, 1])] {
        println!("{}", k.name());
        println!("  {}", check_yb(&gl_yb_map(&k)?, &cfg, &opts)?.summary_line());
        println!("  {}", check_spectral_invariants(&k, &cfg, &opts)?.summary_line());
        println!("  {}", check_3d_consistency(&gl_ternary(&k)?, &cfg, &CheckOptions::new(50))?.summary_line());
    }
    match gl_yb_map(&CommutingFamily::Diagonal { order: 3 }) {
        Err(e) => println!("order 3: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
