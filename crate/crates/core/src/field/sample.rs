use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, FieldConfig, FieldElement, PrimeElement, ELEMENT_RETRY_BUDGET};
use crate::error::{Error, Result};

/// Deterministic source of field elements.
///
/// Each stream index gives an independent ChaCha stream under the same seed,
/// so parallel workers never share RNG state.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    field: Field,
    bound: i64,
}

impl Sampler {
    pub fn new(cfg: &FieldConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(stream);
        Sampler { rng, field: cfg.field(), bound: cfg.sample_bound() as i64 }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Rationals are `n/d` with `|n|, d <= bound`, `d >= 1`; residues are uniform.
    pub fn element(&mut self) -> FieldElement {
        match self.field {
            Field::Rational => {
                let n = self.rng.random_range(-self.bound..=self.bound);
                let d = self.rng.random_range(1..=self.bound);
                FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Field::Prime(p) => FieldElement::Prime(PrimeElement::new(self.rng.random_range(0..p), p)),
        }
    }

    pub fn element_where(&mut self, accept: impl Fn(&FieldElement) -> bool) -> Result<FieldElement> {
        for _ in 0..ELEMENT_RETRY_BUDGET {
            let e = self.element();
            if accept(&e) {
                return Ok(e);
            }
        }
        Err(Error::SamplingExhausted { attempts: ELEMENT_RETRY_BUDGET })
    }

    pub fn nonzero(&mut self) -> Result<FieldElement> {
        self.element_where(|e| !e.is_zero())
    }

    pub fn elements(&mut self, count: usize) -> Vec<FieldElement> {
        (0..count).map(|_| self.element()).collect()
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }
}

/// Draws `count` elements satisfying `accept`, reproducibly from the config seed.
pub fn sample(cfg: &FieldConfig, count: usize, accept: impl Fn(&FieldElement) -> bool) -> Result<Vec<FieldElement>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let mut sampler = Sampler::new(cfg, 0);
    (0..count).map(|_| sampler.element_where(&accept)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_MODULUS;

    #[test]
    fn sampling_is_reproducible() {
        let cfg = FieldConfig::rational(1);
        let a = sample(&cfg, 3, |e| !e.is_zero()).unwrap();
        let b = sample(&cfg, 3, |e| !e.is_zero()).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|e| !e.is_zero()));
        let other = sample(&cfg.clone().with_seed(2), 3, |e| !e.is_zero()).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn prime_sample_in_range() {
        let cfg = FieldConfig::default_prime(7);
        let v = sample(&cfg, 1, |_| true).unwrap();
        assert!(v[0].as_prime().unwrap().value() < DEFAULT_MODULUS);
    }

    #[test]
    fn rational_samples_respect_bound() {
        let cfg = FieldConfig::rational(5).with_sample_bound(3).unwrap();
        let mut s = Sampler::new(&cfg, 0);
        for _ in 0..500 {
            let e = s.element();
            let r = e.as_rational().unwrap();
            assert!(r.numer().magnitude() <= &3u32.into());
            assert!(r.denom() <= &3.into());
        }
    }

    #[test]
    fn exhausted_when_nothing_is_acceptable() {
        // With bound 2 every draw lies in {0, ±1/2, ±1, ±2}.
        let cfg = FieldConfig::rational(1).with_sample_bound(2).unwrap();
        let small: Vec<_> = [(0, 1), (1, 2), (-1, 2), (1, 1), (-1, 1), (2, 1), (-2, 1)]
            .iter()
            .map(|&(n, d)| Field::Rational.ratio(n, d).unwrap())
            .collect();
        let err = sample(&cfg, 1, |e| !small.contains(e)).unwrap_err();
        assert!(matches!(err, Error::SamplingExhausted { attempts: 1000 }));
    }

    #[test]
    fn streams_are_independent() {
        let cfg = FieldConfig::default_prime(1);
        let a = Sampler::new(&cfg, 0).elements(4);
        let b = Sampler::new(&cfg, 1).elements(4);
        assert_ne!(a, b);
    }
}
