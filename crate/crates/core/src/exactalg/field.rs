use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 32003;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field F_p. Elements are plain `u64` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Requires `p` prime and `p > 6`, so that 2, 3 and 6 are units.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 6 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: u64) -> FpElement {
        FpElement {
            value: v % self.p,
            p: self.p,
        }
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    pub fn from_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < (1 << 32) {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i128(t0))
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u64,
    p: u64,
}

impl FpElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FpElement> {
        let v = self.field().inv(self.value)?;
        Ok(FpElement { value: v, p: self.p })
    }

    pub fn pow(&self, e: u64) -> FpElement {
        FpElement {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for FpElement {
            type Output = FpElement;
            fn $method(self, rhs: FpElement) -> FpElement {
                assert_eq!(self.p, rhs.p, "mixed moduli");
                FpElement {
                    value: self.field().$method(self.value, rhs.value),
                    p: self.p,
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FpElement {
    type Output = FpElement;
    fn neg(self) -> FpElement {
        FpElement {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_small_and_composite_moduli() {
        for p in [0, 1, 2, 3, 4, 5, 6, 9, 32001, 1 << 40] {
            assert_eq!(PrimeField::new(p), Err(Error::BadPrime(p)));
        }
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(18446744073709551557).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(2), Ok(4));
        let f = PrimeField::new(32003).unwrap();
        assert_eq!(f.inv(1), Ok(1));
        assert_eq!(f.inv(3), Ok(10668));
        assert_eq!(f.mul(3, 10668), 1);
        assert_eq!(f.inv(0), Err(Error::ZeroInverse));
        assert_eq!(f.elem(0).inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn large_modulus_arithmetic() {
        let p = 18446744073709551557u64;
        let f = PrimeField::new(p).unwrap();
        let a = p - 2;
        let ia = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ia), 1);
        assert_eq!(f.pow(a, p - 1), 1);
    }

    #[test]
    fn element_operators() {
        let f = PrimeField::new(7).unwrap();
        let a = f.elem(5);
        let b = f.elem(4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 1);
        assert_eq!((b - a).value(), 6);
        assert_eq!((a * b).value(), 6);
        assert_eq!((-a).value(), 2);
    }

    proptest! {
        #[test]
        fn inverse_is_involution(a in 1u64..32003) {
            let f = PrimeField::new(32003).unwrap();
            let ia = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, ia), 1);
            prop_assert_eq!(f.inv(ia).unwrap(), a);
        }

        #[test]
        fn primality_matches_trial_division(n in 0u64..20000) {
            let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            prop_assert_eq!(is_prime(n), trial);
        }
    }
}
