use std::fmt;

use super::field::{FpElement, PrimeField};
use crate::rng::Prng;

/// Dense univariate polynomial over F_p, coefficients lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UPoly {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut p = UPoly {
            field,
            coeffs: coeffs.into_iter().map(|c| field.reduce(c)).collect(),
        };
        p.trim();
        p
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        UPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `x - root`.
    pub fn linear_root(field: PrimeField, root: u64) -> Self {
        Self::new(field, vec![field.neg(root % field.modulus()), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_elem(&self, x: FpElement) -> FpElement {
        self.field.elem(self.eval(x.value()))
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        UPoly::new(f, c)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        UPoly::new(f, c)
    }

    pub fn scale(&self, s: u64) -> UPoly {
        let f = self.field;
        UPoly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let f = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(f), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (UPoly::new(f, quot), UPoly::new(f, rem))
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero");
        self.scale(inv)
    }

    pub fn derivative(&self) -> UPoly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        UPoly::new(f, c)
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero(), "squarefreeness of the zero polynomial");
        self.gcd(&self.derivative()).is_constant()
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &UPoly) -> UPoly {
        let mut base = self.rem(modulus);
        let mut acc = UPoly::constant(self.field, 1).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// The distinct roots of `self` in F_p, ascending.
    ///
    /// Isolates the split part as `gcd(f, x^p - x)` and then separates the
    /// linear factors by random equal-degree splitting.
    pub fn fp_roots(&self, seed: u64) -> Vec<u64> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let f = self.field;
        let monic = self.monic();
        if monic.is_constant() {
            return Vec::new();
        }
        let xp = UPoly::x(f).pow_mod(f.modulus(), &monic);
        let split = monic.gcd(&xp.sub(&UPoly::x(f)));
        let mut rng = Prng::new(seed);
        let mut roots = Vec::new();
        split_linear(&split, &mut rng, &mut roots);
        roots.sort_unstable();
        roots
    }

    /// Evaluate at a square matrix argument (Horner).
    pub fn eval_matrix(&self, m: &super::FpMatrix) -> super::FpMatrix {
        let n = m.rows();
        let mut acc = super::FpMatrix::zeros(self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&super::FpMatrix::identity(self.field, n).scale(c));
        }
        acc
    }
}

/// `h` monic, squarefree, product of distinct linear factors.
fn split_linear(h: &UPoly, rng: &mut Prng, out: &mut Vec<u64>) {
    let f = h.field;
    match h.degree() {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(h.coeff(0))),
        Some(d) => loop {
            let shift = rng.below(f.modulus());
            let probe = UPoly::new(f, vec![shift, 1]).pow_mod((f.modulus() - 1) / 2, h);
            let g = h.gcd(&probe.sub(&UPoly::constant(f, 1)));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < d {
                let (q, _) = h.div_rem(&g);
                split_linear(&g, rng, out);
                split_linear(&q.monic(), rng, out);
                return;
            }
        },
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn random_poly(field: PrimeField, rng: &mut Prng, max_deg: u64) -> UPoly {
        let d = rng.below(max_deg + 1) as usize;
        UPoly::new(field, (0..=d).map(|_| rng.below(field.modulus())).collect())
    }

    #[test]
    fn gcd_examples() {
        let f = f7();
        let x2m1 = UPoly::from_i64(f, &[-1, 0, 1]);
        let xm1 = UPoly::from_i64(f, &[-1, 1]);
        assert_eq!(x2m1.gcd(&xm1), xm1);
        assert_eq!(xm1.coeffs(), &[6, 1]);
        let x2 = UPoly::from_i64(f, &[0, 0, 1]);
        let twox = UPoly::from_i64(f, &[0, 2]);
        assert_eq!(x2.gcd(&twox), UPoly::x(f));
        let a = UPoly::linear_root(f, 1).mul(&UPoly::linear_root(f, 2));
        let b = UPoly::linear_root(f, 1).mul(&UPoly::linear_root(f, 3));
        assert_eq!(a.gcd(&b), xm1);
    }

    #[test]
    fn squarefree_examples() {
        let f = f7();
        assert!(UPoly::from_i64(f, &[-1, 0, 1]).is_squarefree());
        assert!(!UPoly::from_i64(f, &[0, 0, 1]).is_squarefree());
        assert!(UPoly::from_i64(f, &[0, -1, 0, 1]).is_squarefree());
    }

    #[test]
    fn root_examples() {
        let f = f7();
        assert_eq!(UPoly::from_i64(f, &[-1, 0, 1]).fp_roots(0), vec![1, 6]);
        assert!(UPoly::from_i64(f, &[1, 0, 1]).fp_roots(0).is_empty());
        assert_eq!(UPoly::from_i64(f, &[0, 0, 0, 1]).fp_roots(3), vec![0]);
        assert!(UPoly::constant(f, 5).fp_roots(0).is_empty());
    }

    #[test]
    fn seeded_cubic_roots_match_exhaustive_search() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = Prng::new(2024);
        for trial in 0..200 {
            let c: Vec<u64> = (0..3).map(|_| rng.below(101)).chain([1]).collect();
            let cubic = UPoly::new(f, c);
            let brute: Vec<u64> = (0..101).filter(|&a| cubic.eval(a) == 0).collect();
            assert_eq!(cubic.fp_roots(trial), brute, "{cubic}");
        }
    }

    #[test]
    fn cubic_with_three_roots() {
        let f = PrimeField::new(101).unwrap();
        let p = UPoly::linear_root(f, 3)
            .mul(&UPoly::linear_root(f, 50))
            .mul(&UPoly::linear_root(f, 99))
            .mul(&UPoly::new(f, vec![2, 0, 1]));
        assert_eq!(p.fp_roots(11), vec![3, 50, 99]);
    }

    #[test]
    fn gcd_divides_inputs_on_random_pairs() {
        let f = PrimeField::new(97).unwrap();
        let mut rng = Prng::new(5);
        for _ in 0..1000 {
            let common = random_poly(f, &mut rng, 3);
            let a = random_poly(f, &mut rng, 5).mul(&common);
            let b = random_poly(f, &mut rng, 5).mul(&common);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let g = a.gcd(&b);
            assert_eq!(g.leading(), 1);
            assert!(a.rem(&g).is_zero());
            assert!(b.rem(&g).is_zero());
            if !common.is_zero() && !a.is_zero() && !b.is_zero() {
                assert!(g.rem(&common.monic()).is_zero());
            }
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = PrimeField::new(13).unwrap();
        let mut rng = Prng::new(8);
        for _ in 0..300 {
            let a = random_poly(f, &mut rng, 8);
            let mut b = random_poly(f, &mut rng, 4);
            if b.is_zero() {
                b = UPoly::constant(f, 1);
            }
            let (q, r) = a.div_rem(&b);
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()) || b.is_constant() && r.is_zero());
        }
    }

    proptest! {
        #[test]
        fn roots_are_exactly_the_zeros(c in proptest::collection::vec(0u64..31, 1..8), seed in any::<u64>()) {
            let f = PrimeField::new(31).unwrap();
            let poly = UPoly::new(f, c);
            prop_assume!(!poly.is_zero());
            let brute: Vec<u64> = (0..31).filter(|&a| poly.eval(a) == 0).collect();
            prop_assert_eq!(poly.fp_roots(seed), brute);
        }
    }
}
