//! The YB map on pairs of 2x2 matrices built from a commuting family `K`,
//! its Lax matrix `X - zeta K`, and the induced ternary system on GL_2.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::lax::LaxMatrix;
use crate::matrix::SquareMatrix;
use crate::quasigroup::{show, Carrier};
use crate::yb::{
    run_trials, CheckOptions, Failure, Outcome, ParametricTernarySystem, ParametricYbMap, Source, VerificationReport,
};

/// Parameter families `alpha -> K_alpha` of pairwise commuting matrices.
/// These two stand in for a full classification of such families.
#[derive(Clone, Debug, PartialEq)]
pub enum CommutingFamily {
    /// `diag(alpha_1, .., alpha_n)`.
    Diagonal { order: usize },
    /// `alpha_1 I + alpha_2 J`.
    PolynomialInJ(SquareMatrix),
}

impl CommutingFamily {
    pub fn diagonal() -> Self {
        CommutingFamily::Diagonal { order: 2 }
    }

    /// `J = [[j11, j12], [j21, j22]]` from four integers.
    pub fn polynomial_in_j(j: [i64; 4]) -> Self {
        let q = crate::field::Field::Rational;
        CommutingFamily::PolynomialInJ(SquareMatrix::from_ints(q, [[j[0], j[1]], [j[2], j[3]]]))
    }

    pub fn order(&self) -> usize {
        match self {
            CommutingFamily::Diagonal { order } => *order,
            CommutingFamily::PolynomialInJ(j) => j.order(),
        }
    }

    pub fn param_arity(&self) -> usize {
        match self {
            CommutingFamily::Diagonal { order } => *order,
            CommutingFamily::PolynomialInJ(_) => 2,
        }
    }

    pub fn name(&self) -> String {
        match self {
            CommutingFamily::Diagonal { .. } => "diagonal".into(),
            CommutingFamily::PolynomialInJ(j) => format!("a1*I + a2*{j}"),
        }
    }

    pub fn eval(&self, alpha: &[FieldElement]) -> Result<SquareMatrix> {
        if alpha.len() != self.param_arity() {
            return Err(Error::ArityMismatch(format!(
                "family {} takes {} parameters",
                self.name(),
                self.param_arity()
            )));
        }
        Ok(match self {
            CommutingFamily::Diagonal { .. } => SquareMatrix::diagonal(alpha),
            CommutingFamily::PolynomialInJ(j) => {
                let f = alpha[0].field();
                // J is stored over Q
                let j = SquareMatrix::new(j.order(), j.entries().iter().map(|e| recast(e, f)).collect());
                &SquareMatrix::identity(f, j.order()).scale(&alpha[0]) + &j.scale(&alpha[1])
            }
        })
    }
}

fn recast(e: &FieldElement, f: crate::field::Field) -> FieldElement {
    if e.field() == f {
        return e.clone();
    }
    let r = e.as_rational().expect("J entries are built over Q");
    f.from_bigint(r.numer()).try_div(&f.from_bigint(r.denom())).expect("denominator invertible")
}

impl fmt::Display for CommutingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `det(X - zeta K) = f2 zeta^2 - f1 zeta + f0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCoeffs {
    pub f2: FieldElement,
    pub f1: FieldElement,
    pub f0: FieldElement,
}

/// Interpolates `p(zeta) = det(X - zeta K)` at `0, 1, -1`.
pub fn char_coeffs(x: &SquareMatrix, k: &SquareMatrix) -> Result<CharCoeffs> {
    if x.order() != 2 || k.order() != 2 {
        return Err(Error::UnsupportedOrder(x.order().max(k.order())));
    }
    let f = x.field();
    let p0 = x.det();
    let p1 = (x - k).det();
    let pm = (x + k).det();
    let two = f.int(2);
    let f2 = (&p1 + &pm).try_div(&two)? - &p0;
    let f1 = (&pm - &p1).try_div(&two)?;
    Ok(CharCoeffs { f2, f1, f0: p0 })
}

fn mat(p: &[FieldElement]) -> SquareMatrix {
    SquareMatrix::new(2, p.to_vec())
}

/// `(X, alpha, Y, beta) -> (U, V)` with
/// `U = (f2 YX - f0 K_a K_b)(f2 (Y K_a + K_b X) - f1 K_a K_b)^{-1} K_a` and
/// `V = K_a^{-1}(Y K_a + K_b X - U K_b)`, `f_i = f_i^alpha(X)`.
pub fn gl_yb_map(k: &CommutingFamily) -> Result<ParametricYbMap> {
    if k.order() != 2 {
        return Err(Error::UnsupportedOrder(k.order()));
    }
    let fam = k.clone();
    Ok(ParametricYbMap::new(
        format!("gl2_map({})", k.name()),
        Carrier::Matrices(2),
        k.param_arity(),
        move |x, a, y, b| {
            let (x, y) = (mat(x), mat(y));
            let (ka, kb) = (fam.eval(a)?, fam.eval(b)?);
            let c = char_coeffs(&x, &ka)?;
            let kk = &ka * &kb;
            let mixed = &(&y * &ka) + &(&kb * &x);
            let num = &(&y * &x).scale(&c.f2) - &kk.scale(&c.f0);
            let den = &mixed.scale(&c.f2) - &kk.scale(&c.f1);
            let u = &(&num * &den.inverse()?) * &ka;
            let v = &ka.inverse()? * &(&mixed - &(&u * &kb));
            Ok((u.into_entries(), v.into_entries()))
        },
    )
    .with_degree(64)
    .with_source(Source::Catalog))
}

/// `L(X; alpha) = X - zeta K_alpha`.
pub fn gl_lax(k: &CommutingFamily) -> Result<LaxMatrix> {
    if k.order() != 2 {
        return Err(Error::UnsupportedOrder(k.order()));
    }
    let fam = k.clone();
    Ok(LaxMatrix::new(format!("gl2_lax({})", k.name()), 2, Carrier::Matrices(2), k.param_arity(), 1, move |x, a, z| {
        Ok(&mat(x) - &fam.eval(a)?.scale(z))
    }))
}

/// `mu(A, B, C) = V(B A^{-1}, C B^{-1}) A`.
pub fn gl_ternary(k: &CommutingFamily) -> Result<ParametricTernarySystem> {
    let map = gl_yb_map(k)?;
    Ok(ParametricTernarySystem::new(
        format!("gl2_ternary({})", k.name()),
        Carrier::Matrices(2),
        k.param_arity(),
        move |al, be, a, b, c| {
            let (a, b, c) = (mat(a), mat(b), mat(c));
            let (_, v) = map.evaluate((&b * &a.inverse()?).entries(), al, (&c * &b.inverse()?).entries(), be)?;
            Ok((&mat(&v) * &a).into_entries())
        },
    )
    .with_degree(96)
    .with_source(Source::Catalog))
}

pub fn check_commutation(k: &CommutingFamily, cfg: &FieldConfig, opts: &CheckOptions) -> Result<VerificationReport> {
    let n = k.param_arity();
    run_trials("K_a K_b = K_b K_a", &k.name(), cfg, opts, 2, |s| {
        let (a, b) = (s.elements(n), s.elements(n));
        let (ka, kb) = (k.eval(&a)?, k.eval(&b)?);
        let (l, r) = (&ka * &kb, &kb * &ka);
        Ok(if l == r {
            Outcome::Agree
        } else {
            Outcome::Disagree(Failure::new(vec![("alpha", show(&a)), ("beta", show(&b))], l.to_string(), r.to_string()))
        })
    })
}

/// `f_i^alpha(U) = f_i^alpha(X)` and `f_i^beta(V) = f_i^beta(Y)` for i = 0, 1, 2.
pub fn check_spectral_invariants(
    k: &CommutingFamily,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    let map = gl_yb_map(k)?;
    let layout = map.param_layout();
    run_trials("spectral invariants f_i(U) = f_i(X), f_i(V) = f_i(Y)", map.name(), cfg, opts, map.degree(), |s| {
        let (x, y) = (map.carrier().sample(s)?, map.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let (u, v) = map.evaluate(&x, &p[0], &y, &p[1])?;
        let (ka, kb) = (k.eval(&p[0])?, k.eval(&p[1])?);
        let lhs = [char_coeffs(&mat(&u), &ka)?, char_coeffs(&mat(&v), &kb)?];
        let rhs = [char_coeffs(&mat(&x), &ka)?, char_coeffs(&mat(&y), &kb)?];
        Ok(if lhs == rhs {
            Outcome::Agree
        } else {
            let fmt = |c: &[CharCoeffs; 2]| format!("{:?}", c);
            Outcome::Disagree(Failure::new(
                vec![("X", show(&x)), ("Y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))],
                fmt(&lhs),
                fmt(&rhs),
            ))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::lax::check_refactorization;
    use crate::yb::check_yb;

    const Q: Field = Field::Rational;

    /// Direct expansion of det(X - zK) for 2x2 matrices.
    fn expand(x: &SquareMatrix, k: &SquareMatrix) -> CharCoeffs {
        let (a, b, c, d) = (x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1));
        let (p, q, r, s) = (k.get(0, 0), k.get(0, 1), k.get(1, 0), k.get(1, 1));
        CharCoeffs {
            f2: &(p * s) - &(q * r),
            f1: &(&(&(a * s) + &(p * d)) - &(b * r)) - &(q * c),
            f0: &(a * d) - &(b * c),
        }
    }

    #[test]
    fn worked_coefficients() {
        let x = SquareMatrix::from_ints(Q, [[1, 2], [3, 4]]);
        let k = SquareMatrix::from_ints(Q, [[2, 0], [0, 3]]);
        let c = char_coeffs(&x, &k).unwrap();
        assert_eq!((c.f2, c.f1, c.f0), (Q.int(6), Q.int(11), Q.int(-2)));
        let kk = char_coeffs(&k, &k).unwrap();
        assert_eq!((kk.f2, kk.f1, kk.f0), (Q.int(6), Q.int(12), Q.int(6)));
    }

    #[test]
    fn interpolation_matches_expansion() {
        let cfg = FieldConfig::default_prime(8);
        let mut s = crate::field::Sampler::new(&cfg, 0);
        for _ in 0..200 {
            let x = SquareMatrix::new(2, s.elements(4));
            let k = SquareMatrix::new(2, s.elements(4));
            assert_eq!(char_coeffs(&x, &k).unwrap(), expand(&x, &k));
        }
    }

    #[test]
    fn families_commute() {
        let cfg = FieldConfig::default_prime(2);
        let o = CheckOptions::new(50);
        assert!(check_commutation(&CommutingFamily::diagonal(), &cfg, &o).unwrap().passed());
        let j = CommutingFamily::polynomial_in_j([0, 1, 1, 1]);
        assert!(check_commutation(&j, &cfg, &o).unwrap().passed());
    }

    #[test]
    fn order_three_is_refused() {
        assert!(matches!(gl_yb_map(&CommutingFamily::Diagonal { order: 3 }), Err(Error::UnsupportedOrder(3))));
    }

    #[test]
    fn polynomial_family_map() {
        let cfg = FieldConfig::default_prime(4);
        let o = CheckOptions::new(30);
        let k = CommutingFamily::polynomial_in_j([0, 1, 2, 3]);
        let r = gl_yb_map(&k).unwrap();
        assert!(check_yb(&r, &cfg, &o).unwrap().passed());
        assert!(check_refactorization(&gl_lax(&k).unwrap(), &r, &cfg, &o, 3).unwrap().passed());
        assert!(check_spectral_invariants(&k, &cfg, &o).unwrap().passed());
    }

    #[test]
    fn identity_inputs() {
        let r = gl_yb_map(&CommutingFamily::diagonal()).unwrap();
        let i = SquareMatrix::identity(Q, 2).into_entries();
        let (u, v) = r.evaluate(&i, &[Q.int(2), Q.int(3)], &i, &[Q.int(5), Q.int(7)]).unwrap();
        assert_eq!(&mat(&u) * &mat(&v), SquareMatrix::identity(Q, 2));
    }
}
