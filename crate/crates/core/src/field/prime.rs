use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// A residue modulo a prime, stored in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeElement {
    value: u64,
    modulus: u64,
}

impl PrimeElement {
    pub fn new(value: u64, modulus: u64) -> Self {
        PrimeElement { value: value % modulus, modulus }
    }

    pub fn from_i128(v: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        PrimeElement { value: v.rem_euclid(m) as u64, modulus }
    }

    pub fn from_bigint(v: &BigInt, modulus: u64) -> Self {
        let r = ((v % BigInt::from(modulus)) + BigInt::from(modulus)) % BigInt::from(modulus);
        PrimeElement { value: r.to_u64().expect("residue fits in u64"), modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub(crate) fn add(&self, rhs: &Self) -> Self {
        let s = self.value as u128 + rhs.value as u128;
        PrimeElement { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }

    pub(crate) fn sub(&self, rhs: &Self) -> Self {
        let value =
            if self.value >= rhs.value { self.value - rhs.value } else { self.modulus - (rhs.value - self.value) };
        PrimeElement { value, modulus: self.modulus }
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        PrimeElement { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    pub(crate) fn neg(&self) -> Self {
        let value = if self.value == 0 { 0 } else { self.modulus - self.value };
        PrimeElement { value, modulus: self.modulus }
    }

    /// Extended Euclid; `None` for zero.
    pub(crate) fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Some(PrimeElement::from_i128(t0, self.modulus))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime((1 << 61) - 1));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn arithmetic_near_the_top_of_u64() {
        let p = 18_446_744_073_709_551_557; // largest 64-bit prime
        let a = PrimeElement::new(p - 1, p);
        let b = PrimeElement::new(p - 2, p);
        assert_eq!(a.add(&b).value(), p - 3);
        assert_eq!(a.mul(&a).value(), 1);
        assert_eq!(b.sub(&a).value(), p - 1);
        assert_eq!(a.inv().unwrap().value(), p - 1);
    }
}
