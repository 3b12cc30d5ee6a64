//! Sampled algebraic properties, with closed forms recomputed in plain
//! `BigRational` where an exact value is compared.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ybmaps::catalog;
use ybmaps::yb::{Failure, VerificationReport};
use ybmaps::{BuiltinQuasigroup, Field, FieldConfig, FieldElement, Quasigroup, Verdict};

const P: Field = Field::Prime(2305843009213693951);

fn fp(n: u64) -> FieldElement {
    P.from_bigint(&BigInt::from(n))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn q(r: &BigRational) -> FieldElement {
    FieldElement::Rational(r.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn equal_parameters_give_the_swap(x in 1u64.., y in 1u64.., a in 1u64.., b in 1u64..) {
        let (x, y) = (vec![fp(x)], vec![fp(y)]);
        for (name, alpha) in [
            ("adler", vec![fp(a)]),
            ("h2", vec![fp(a)]),
            ("f4", vec![fp(a)]),
            ("f5", vec![fp(a)]),
            ("fourparam", vec![fp(a), fp(b)]),
            ("fourparam_involution", vec![fp(a), fp(b)]),
        ] {
            let m = catalog::lookup(name).unwrap().map().unwrap();
            match m.evaluate(&x, &alpha, &y, &alpha) {
                Ok((u, v)) => prop_assert_eq!((u, v), (y.clone(), x.clone()), "{}", name),
                Err(e) => prop_assume!(!e.is_pole()),
            }
        }
    }

    #[test]
    fn adler_matches_a_plain_rational_evaluation(x in -50i64..50, y in -50i64..50, a in -9i64..9, b in -9i64..9) {
        prop_assume!(x + y != 0);
        let t = rat(a - b, x + y);
        let want = (rat(y, 1) + &t, rat(x, 1) - &t);
        let (u, v) = catalog::adler()
            .evaluate(&[q(&rat(x, 1))], &[q(&rat(a, 1))], &[q(&rat(y, 1))], &[q(&rat(b, 1))])
            .unwrap();
        prop_assert_eq!((u, v), (vec![q(&want.0)], vec![q(&want.1)]));
    }

    #[test]
    fn fourparam_quotient_invariant(x in 1i64..60, y in 1i64..60, a1 in 1i64..9, a2 in 1i64..9, b1 in 1i64..9, b2 in 1i64..9) {
        let (xr, yr) = (rat(x, 1), rat(y, 1));
        let k = (rat(b1, 1) * &xr + rat(a2, 1) * &yr) / (rat(a1, 1) * &xr + rat(b2, 1) * &yr);
        let (u, v) = catalog::fourparam()
            .evaluate(&[q(&xr)], &[q(&rat(a1, 1)), q(&rat(a2, 1))], &[q(&yr)], &[q(&rat(b1, 1)), q(&rat(b2, 1))])
            .unwrap();
        prop_assert_eq!(&u, &vec![q(&(&yr * &k))]);
        prop_assert_eq!(&v, &vec![q(&(&xr * &k))]);
        prop_assert_eq!(u[0].try_div(&v[0]).unwrap(), q(&(yr / xr)));
    }

    #[test]
    fn builtin_left_divisions(a in 1u64.., w in 1u64..) {
        for b in [
            BuiltinQuasigroup::Additive,
            BuiltinQuasigroup::Multiplicative,
            BuiltinQuasigroup::Division,
            BuiltinQuasigroup::SubtractionLoop,
        ] {
            let g = Quasigroup::from_builtin(b);
            let (a, w) = (vec![fp(a)], vec![fp(w)]);
            prop_assert_eq!(g.op(&a, &g.ldiv(&a, &w).unwrap()).unwrap(), w.clone());
            prop_assert_eq!(g.ldiv(&a, &g.op(&a, &w).unwrap()).unwrap(), w.clone());
        }
    }

    #[test]
    fn report_merge_is_associative(counts in proptest::collection::vec((0usize..5, 0usize..3, 0usize..2), 3)) {
        let cfg = FieldConfig::default_prime(1);
        let reports: Vec<VerificationReport> = counts
            .iter()
            .enumerate()
            .map(|(i, &(used, fails, exhausted))| {
                let mut r = VerificationReport::empty("id", "s", &cfg, 4);
                r.samples.requested = used + exhausted;
                r.samples.used = used;
                r.samples.exhausted = exhausted;
                for j in 0..fails {
                    r.failures.push(Failure::new(vec![("i", i.to_string())], j.to_string(), String::new()));
                }
                r.failure_count = fails;
                r
            })
            .collect();
        let (a, b, c) = (reports[0].clone(), reports[1].clone(), reports[2].clone());
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        prop_assert_eq!(&left, &right);
        let fails: usize = counts.iter().map(|c| c.1).sum();
        let exhausted: usize = counts.iter().map(|c| c.2).sum();
        let want = if fails > 0 { Verdict::Fail } else if exhausted > 0 { Verdict::Inconclusive } else { Verdict::Pass };
        prop_assert_eq!(left.verdict, want);
    }
}
