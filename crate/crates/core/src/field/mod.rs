//! Exact coefficient fields.
//!
//! Two realizations share one element type: arbitrary-precision rationals and
//! residues modulo a prime. Every value remembers which field it lives in, so
//! constants (`0`, `1`, small integers) can be produced next to any operand
//! without threading a context through every formula. Mixing elements of
//! different fields is a programming error and panics.

mod prime;
mod sample;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use prime::{is_prime, PrimeElement};
pub use sample::{sample, Sampler};

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;
pub const DEFAULT_SAMPLE_BOUND: u64 = 100;
/// Retry budget per drawn element when a predicate rejects candidates.
pub const ELEMENT_RETRY_BUDGET: usize = 1000;

/// Identifies a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> FieldElement {
        self.int(0)
    }

    pub fn one(self) -> FieldElement {
        self.int(1)
    }

    pub fn int(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Prime(PrimeElement::from_i128(n as i128, p)),
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => FieldElement::Prime(PrimeElement::from_bigint(n, p)),
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<FieldElement> {
        self.int(num).try_div(&self.int(den))
    }

    pub fn label(self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A value in the active coefficient field.
///
/// Rationals are kept in lowest terms with a positive denominator (guaranteed
/// by `BigRational`); prime residues lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime(PrimeElement),
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime(e) => Field::Prime(e.modulus()),
        }
    }

    pub fn zero_like(&self) -> Self {
        self.field().zero()
    }

    pub fn one_like(&self) -> Self {
        self.field().one()
    }

    pub fn int_like(&self, n: i64) -> Self {
        self.field().int(n)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime(e) => e.value() == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime(e) => e.value() == 1,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::Prime(e) => e.inv().map(FieldElement::Prime).ok_or(Error::DivisionByZero),
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert. `0^0 = 1`.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Prime(_) => None,
        }
    }

    pub fn as_prime(&self) -> Option<&PrimeElement> {
        match self {
            FieldElement::Prime(e) => Some(e),
            FieldElement::Rational(_) => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime(e) => write!(f, "{}", e.value()),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("mixed-field arithmetic: {} and {}", a.field(), b.field())
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $prime:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match (self, rhs) {
                    (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational($rat(a, b)),
                    (FieldElement::Prime(a), FieldElement::Prime(b)) if a.modulus() == b.modulus() => {
                        FieldElement::Prime($prime(a, b))
                    }
                    _ => mismatch(self, rhs),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, |a: &PrimeElement, b: &PrimeElement| a.add(b));
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, |a: &PrimeElement, b: &PrimeElement| a.sub(b));
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, |a: &PrimeElement, b: &PrimeElement| a.mul(b));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Prime(e) => FieldElement::Prime(e.neg()),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    ExactRational,
    PrimeField,
}

/// Which field to sample from, and how.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    kind: FieldKind,
    modulus: u64,
    pub rng_seed: u64,
    sample_bound: u64,
}

impl FieldConfig {
    pub fn prime(modulus: u64, rng_seed: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::InvalidConfig(format!("{modulus} is not prime")));
        }
        Ok(FieldConfig { kind: FieldKind::PrimeField, modulus, rng_seed, sample_bound: DEFAULT_SAMPLE_BOUND })
    }

    pub fn default_prime(rng_seed: u64) -> Self {
        FieldConfig {
            kind: FieldKind::PrimeField,
            modulus: DEFAULT_MODULUS,
            rng_seed,
            sample_bound: DEFAULT_SAMPLE_BOUND,
        }
    }

    pub fn rational(rng_seed: u64) -> Self {
        FieldConfig { kind: FieldKind::ExactRational, modulus: 0, rng_seed, sample_bound: DEFAULT_SAMPLE_BOUND }
    }

    pub fn with_sample_bound(mut self, bound: u64) -> Result<Self> {
        if bound < 2 {
            return Err(Error::InvalidConfig(format!("sample bound {bound} < 2")));
        }
        self.sample_bound = bound;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            FieldKind::PrimeField => Some(self.modulus),
            FieldKind::ExactRational => None,
        }
    }

    pub fn sample_bound(&self) -> u64 {
        self.sample_bound
    }

    pub fn field(&self) -> Field {
        match self.kind {
            FieldKind::ExactRational => Field::Rational,
            FieldKind::PrimeField => Field::Prime(self.modulus),
        }
    }

    /// Parses `q`, `fp` or `fp:<modulus>`.
    pub fn parse(spec: &str, rng_seed: u64) -> Result<Self> {
        match spec {
            "q" => Ok(Self::rational(rng_seed)),
            "fp" => Ok(Self::default_prime(rng_seed)),
            _ => {
                let modulus = spec
                    .strip_prefix("fp:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidConfig(format!("unrecognized field `{spec}`")))?;
                Self::prime(modulus, rng_seed)
            }
        }
    }
}

/// True when `r` is in lowest terms with a positive denominator.
pub fn is_normalized(r: &BigRational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().abs().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElement {
        Field::Rational.ratio(n, d).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn prime_inverse_mod_seven() {
        let f = Field::Prime(7);
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
    }

    #[test]
    fn rational_division_by_zero() {
        let f = Field::Rational;
        assert!(matches!(f.int(1).try_div(&f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn pow_conventions() {
        let f = Field::Rational;
        assert_eq!(f.zero().pow(0).unwrap(), f.one());
        assert_eq!(q(2, 3).pow(-2).unwrap(), q(9, 4));
        assert!(f.zero().pow(-1).is_err());
        let p = Field::Prime(DEFAULT_MODULUS);
        assert_eq!(p.int(2).pow(61).unwrap(), p.one());
    }

    #[test]
    fn config_rejects_composite_modulus() {
        assert!(FieldConfig::prime(91, 1).is_err());
        assert!(FieldConfig::prime(DEFAULT_MODULUS, 1).is_ok());
        assert!(FieldConfig::rational(1).with_sample_bound(1).is_err());
        assert_eq!(FieldConfig::parse("fp", 3).unwrap().modulus(), Some(DEFAULT_MODULUS));
        assert_eq!(FieldConfig::parse("fp:7", 3).unwrap().modulus(), Some(7));
        assert!(FieldConfig::parse("fp:8", 3).is_err());
        assert!(FieldConfig::parse("real", 3).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_fields_panic() {
        let _ = Field::Rational.one() + Field::Prime(7).one();
    }

    fn rational() -> impl Strategy<Value = FieldElement> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| q(n, d))
    }

    fn residue() -> impl Strategy<Value = FieldElement> {
        (0..DEFAULT_MODULUS).prop_map(|v| FieldElement::Prime(PrimeElement::new(v, DEFAULT_MODULUS)))
    }

    fn check_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) {
        assert_eq!((a + b) + c, a + (b + c));
        assert_eq!((a * b) * c, a * (b * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert_eq!(a * (b + c), a * b + a * c);
        #[allow(clippy::eq_op)]
        let diff = a - a;
        assert_eq!(diff, a.zero_like());
        if !a.is_zero() {
            assert_eq!(a * a.inv().unwrap(), a.one_like());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            check_axioms(&a, &b, &c);
            for v in [a.clone() * b.clone() + c.clone(), (a - b).try_div(&c).unwrap_or(c)] {
                prop_assert!(is_normalized(v.as_rational().unwrap()));
            }
        }

        #[test]
        fn prime_field_axioms(a in residue(), b in residue(), c in residue()) {
            check_axioms(&a, &b, &c);
            let s = &a * &b - &c;
            prop_assert!(s.as_prime().unwrap().value() < DEFAULT_MODULUS);
        }
    }
}
