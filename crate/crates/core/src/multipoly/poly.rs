use std::cmp::Ordering;
use std::collections::HashMap;

use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};
use crate::exactalg::{FpElement, FpMatrix, PrimeField, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, u64)>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize, order: MonomialOrder) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly {
            field,
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, order: MonomialOrder, c: u64) -> Self {
        let mut p = Self::zero(field, nvars, order);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn var(field: PrimeField, nvars: usize, order: MonomialOrder, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(field, nvars, order, Monomial::var(i), 1)
    }

    pub fn monomial(field: PrimeField, nvars: usize, order: MonomialOrder, m: Monomial, c: u64) -> Self {
        let mut p = Self::zero(field, nvars, order);
        let c = field.reduce(c);
        if c != 0 {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a canonical polynomial from arbitrary terms: like monomials are
    /// combined and zeros dropped.
    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.reduce(c));
        }
        let mut p = Self::zero(field, nvars, order);
        p.terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        p.sort();
        p
    }

    /// Trusted constructor for terms already strictly decreasing and nonzero.
    pub(crate) fn from_sorted_terms(
        field: PrimeField,
        nvars: usize,
        order: MonomialOrder,
        terms: Vec<(Monomial, u64)>,
    ) -> Self {
        debug_assert!(terms.iter().all(|&(_, c)| c != 0));
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        MultiPoly {
            field,
            nvars,
            order,
            terms,
        }
    }

    fn sort(&mut self) {
        let order = self.order;
        self.terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or(0, |&(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common total degree of all terms, if there is one. The zero
    /// polynomial reports degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let Some(first) = self.terms.first() else {
            return Some(0);
        };
        let d = first.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars || self.order != other.order || self.field != other.field {
            return Err(Error::ArityMismatch(format!(
                "({} vars, {}, p={}) vs ({} vars, {}, p={})",
                self.nvars,
                self.order.name(),
                self.field.modulus(),
                other.nvars,
                other.order.name(),
                other.field.modulus()
            )));
        }
        Ok(())
    }

    /// Merge `self + scale * other` for canonical term lists.
    fn merge(&self, other: &MultiPoly, scale: u64) -> MultiPoly {
        let f = self.field;
        let order = self.order;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, f.mul(b[j].1, scale)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, f.mul(b[j].1, scale));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, f.mul(c, scale))));
        out.retain(|&(_, c)| c != 0);
        MultiPoly {
            terms: out,
            ..self.empty_like()
        }
    }

    fn empty_like(&self) -> MultiPoly {
        MultiPoly::zero(self.field, self.nvars, self.order)
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self.merge(other, self.field.neg(1)))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.empty_like());
        }
        let f = self.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        let mut p = self.empty_like();
        p.terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        p.sort();
        Ok(p)
    }

    /// Panicking arithmetic for operands known to share a ring.
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.try_add(other).expect("incompatible polynomial rings")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.try_sub(other).expect("incompatible polynomial rings")
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("incompatible polynomial rings")
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, s: u64) -> MultiPoly {
        let f = self.field;
        let s = f.reduce(s);
        if s == 0 {
            return self.empty_like();
        }
        MultiPoly {
            terms: self.terms.iter().map(|&(m, c)| (m, f.mul(c, s))).collect(),
            ..self.empty_like()
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> MultiPoly {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return self.empty_like();
        }
        MultiPoly {
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect(),
            ..self.empty_like()
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.nvars, self.order, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coeff()).expect("nonzero");
        self.scale(inv)
    }

    pub fn eval(&self, point: &[u64]) -> Result<u64> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = self.field;
        let maxdeg = self
            .terms
            .iter()
            .flat_map(|(m, _)| (0..self.nvars).map(move |i| m.exp(i)))
            .max()
            .unwrap_or(0) as usize;
        // powers[i][k] = point[i]^k
        let powers: Vec<Vec<u64>> = point
            .iter()
            .map(|&x| {
                let x = f.reduce(x);
                let mut row = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1 % f.modulus();
                for _ in 0..=maxdeg {
                    row.push(acc);
                    acc = f.mul(acc, x);
                }
                row
            })
            .collect();
        let mut total = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, row) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    v = f.mul(v, row[e]);
                }
            }
            total = f.add(total, v);
        }
        Ok(total)
    }

    pub fn eval_elems(&self, point: &[FpElement]) -> Result<FpElement> {
        let raw: Vec<u64> = point.iter().map(|e| e.value()).collect();
        Ok(self.field.elem(self.eval(&raw)?))
    }

    pub fn partial(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let f = self.field;
        let terms = self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exp(i);
            (e > 0).then(|| (m.with_exp(i, e - 1), f.mul(c, f.reduce(e as u64))))
        });
        // Differentiation can merge no terms but may reorder them under
        // non-graded orders; rebuild canonically.
        Ok(MultiPoly::from_terms(f, self.nvars, self.order, terms))
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars)
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Substitutes `x_i -> sum_j T[i][j] x_j`. `T` must be invertible.
    pub fn linear_change(&self, t: &FpMatrix) -> Result<MultiPoly> {
        if t.rows() != self.nvars || t.cols() != self.nvars {
            return Err(Error::ArityMismatch(format!(
                "{}x{} change for {} variables",
                t.rows(),
                t.cols(),
                self.nvars
            )));
        }
        if t.rank() < self.nvars {
            return Err(Error::SingularChange);
        }
        Ok(self.substitute_linear(t))
    }

    /// Like [`linear_change`](Self::linear_change) without the invertibility check.
    pub(crate) fn substitute_linear(&self, t: &FpMatrix) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let terms = (0..self.nvars).map(|j| (Monomial::var(j), t.get(i, j)));
                MultiPoly::from_terms(self.field, self.nvars, self.order, terms)
            })
            .collect();
        self.substitute(&images)
    }

    /// Substitutes `x_i -> images[i]`; images may live in another ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = &images[0];
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        let f = self.field;
        for &(m, c) in &self.terms {
            let mut prod = MultiPoly::constant(f, target.nvars, target.order, c);
            for (i, image) in images.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| image.pow(e));
                prod = prod.mul(pw);
            }
            for (mm, cc) in prod.terms {
                let v = acc.entry(mm).or_insert(0);
                *v = f.add(*v, cc);
            }
        }
        MultiPoly::from_terms(f, target.nvars, target.order, acc)
    }

    /// Restriction to the line `t -> a + t b`, as a univariate polynomial in t.
    pub fn restrict_to_line(&self, a: &[u64], b: &[u64]) -> Result<UPoly> {
        if a.len() != self.nvars || b.len() != self.nvars {
            return Err(Error::ArityMismatch("line endpoints".into()));
        }
        let f = self.field;
        let lines: Vec<UPoly> = a
            .iter()
            .zip(b)
            .map(|(&ai, &bi)| UPoly::new(f, vec![ai, bi]))
            .collect();
        let mut cache: HashMap<(usize, u32), UPoly> = HashMap::new();
        let mut total = UPoly::zero(f);
        for &(m, c) in &self.terms {
            let mut term = UPoly::constant(f, c);
            for (i, line) in lines.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| {
                    (0..e).fold(UPoly::constant(f, 1), |acc, _| acc.mul(line))
                });
                term = term.mul(pw);
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Sets variable `i` to 1 and removes it from the ring.
    pub fn dehomogenize(&self, i: usize) -> MultiPoly {
        assert!(i < self.nvars);
        let terms = self.terms.iter().map(|&(m, c)| (m.remove_var(i), c));
        MultiPoly::from_terms(self.field, self.nvars - 1, self.order, terms)
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize, order: MonomialOrder) -> MultiPoly {
        assert!(self.nvars + extra <= MAX_VARS, "too many variables");
        MultiPoly::from_terms(self.field, self.nvars + extra, order, self.terms.iter().copied())
    }

    /// Inserts a fresh variable at position 0, shifting the others up.
    pub fn prepend_var(&self) -> MultiPoly {
        assert!(self.nvars < MAX_VARS, "too many variables");
        let n = self.nvars;
        let terms = self.terms.iter().map(|&(m, c)| {
            let mut e = vec![0u32];
            e.extend(m.exponents(n));
            (Monomial::from_exponents(&e), c)
        });
        MultiPoly::from_terms(self.field, n + 1, self.order, terms)
    }

    pub fn with_order(&self, order: MonomialOrder) -> MultiPoly {
        let mut p = MultiPoly {
            order,
            ..self.clone()
        };
        p.sort();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Prng;
    use proptest::prelude::*;

    const G: MonomialOrder = MonomialOrder::Grevlex;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn poly(f: PrimeField, n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(f, n, G, terms.iter().map(|&(e, c)| (mono(e), f.from_i64(c))))
    }

    pub(crate) fn random_poly(f: PrimeField, n: usize, rng: &mut Prng, nterms: usize, maxdeg: u32) -> MultiPoly {
        let terms: Vec<(Monomial, u64)> = (0..nterms)
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.below(maxdeg as u64 + 1) as u32).collect();
                (mono(&e), rng.below(f.modulus()))
            })
            .collect();
        MultiPoly::from_terms(f, n, G, terms)
    }

    fn random_form(f: PrimeField, n: usize, rng: &mut Prng, nterms: usize, deg: u32) -> MultiPoly {
        let terms: Vec<(Monomial, u64)> = (0..nterms)
            .map(|_| {
                let mut e = vec![0u32; n];
                for _ in 0..deg {
                    e[rng.below(n as u64) as usize] += 1;
                }
                (mono(&e), rng.below(f.modulus()))
            })
            .collect();
        MultiPoly::from_terms(f, n, G, terms)
    }

    fn naive_product(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let f = a.field();
        let mut out = MultiPoly::zero(f, a.nvars(), a.order());
        for &(ma, ca) in a.terms() {
            for &(mb, cb) in b.terms() {
                let t = MultiPoly::monomial(f, a.nvars(), a.order(), ma.mul(&mb), f.mul(ca, cb));
                out = out.add(&t);
            }
        }
        out
    }

    #[test]
    fn arithmetic_examples() {
        let f = field(7);
        let x = MultiPoly::var(f, 2, G, 0);
        let y = MultiPoly::var(f, 2, G, 1);
        assert_eq!(x.add(&y).add(&x.sub(&y)), x.scale(2));
        let zero = MultiPoly::zero(f, 2, G);
        assert!(x.add(&y).mul(&zero).is_zero());
        let other = MultiPoly::var(f, 3, G, 0);
        assert!(matches!(x.try_add(&other), Err(Error::ArityMismatch(_))));
        assert!(matches!(x.try_mul(&other), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn product_matches_naive_double_loop() {
        let f = field(32003);
        let mut rng = Prng::new(17);
        for _ in 0..50 {
            let a = random_poly(f, 4, &mut rng, 12, 4);
            let b = random_poly(f, 4, &mut rng, 12, 4);
            assert_eq!(a.mul(&b), naive_product(&a, &b));
        }
    }

    #[test]
    fn canonical_form_is_strictly_decreasing() {
        let f = field(101);
        let mut rng = Prng::new(2);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block(2)] {
            for _ in 0..50 {
                let p = random_poly(f, 4, &mut rng, 20, 3).with_order(order);
                assert!(p.terms().windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
                assert!(p.terms().iter().all(|&(_, c)| c != 0 && c < 101));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f = field(7);
        let p = poly(f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(p.eval(&[1, 2]), Ok(3));
        assert!(matches!(p.eval(&[1]), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn eval_respects_homogeneity() {
        let f = field(32003);
        let mut rng = Prng::new(4);
        for d in 1..7 {
            let p = random_form(f, 4, &mut rng, 15, d);
            let pt: Vec<u64> = (0..4).map(|_| rng.below(32003)).collect();
            let lambda = 1 + rng.below(32002);
            let scaled: Vec<u64> = pt.iter().map(|&c| f.mul(c, lambda)).collect();
            assert_eq!(
                p.eval(&scaled).unwrap(),
                f.mul(f.pow(lambda, d as u64), p.eval(&pt).unwrap())
            );
        }
    }

    #[test]
    fn partial_examples() {
        let f = field(7);
        let x2y = poly(f, 2, &[(&[2, 1], 1)]);
        assert_eq!(x2y.partial(0).unwrap(), poly(f, 2, &[(&[1, 1], 2)]));
        assert!(MultiPoly::constant(f, 2, G, 5).partial(0).unwrap().is_zero());
        assert_eq!(x2y.partial(2), Err(Error::IndexOutOfRange { index: 2, nvars: 2 }));
    }

    #[test]
    fn euler_relation_for_forms() {
        let f = field(32003);
        let mut rng = Prng::new(6);
        let p = random_form(f, 4, &mut rng, 40, 6);
        let mut euler = MultiPoly::zero(f, 4, G);
        for i in 0..4 {
            euler = euler.add(&MultiPoly::var(f, 4, G, i).mul(&p.partial(i).unwrap()));
        }
        assert_eq!(euler, p.scale(6));
    }

    #[test]
    fn homogeneity_examples() {
        let f = field(7);
        assert_eq!(poly(f, 2, &[(&[2, 0], 1), (&[1, 1], 1)]).homogeneous_degree(), Some(2));
        assert_eq!(poly(f, 2, &[(&[2, 0], 1), (&[1, 0], 1)]).homogeneous_degree(), None);
        assert_eq!(MultiPoly::zero(f, 2, G).homogeneous_degree(), Some(0));
    }

    #[test]
    fn linear_change_examples() {
        let f = field(7);
        let x2y = poly(f, 2, &[(&[2, 1], 1)]);
        assert_eq!(x2y.linear_change(&FpMatrix::identity(f, 2)).unwrap(), x2y);
        let swap = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(x2y.linear_change(&swap).unwrap(), poly(f, 2, &[(&[1, 2], 1)]));
        let singular = FpMatrix::from_rows(f, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(x2y.linear_change(&singular), Err(Error::SingularChange));
    }

    #[test]
    fn linear_change_round_trip_and_degree() {
        let f = field(32003);
        let mut rng = Prng::new(12);
        for _ in 0..10 {
            let p = random_form(f, 4, &mut rng, 12, 3);
            let t = loop {
                let rows: Vec<Vec<u64>> = (0..4).map(|_| (0..4).map(|_| rng.below(32003)).collect()).collect();
                let t = FpMatrix::from_rows(f, &rows);
                if t.rank() == 4 {
                    break t;
                }
            };
            let q = p.linear_change(&t).unwrap();
            assert_eq!(q.homogeneous_degree(), Some(3));
            let tinv = inverse(&t);
            assert_eq!(q.linear_change(&tinv).unwrap(), p);
        }
    }

    fn inverse(t: &FpMatrix) -> FpMatrix {
        // Gauss-Jordan on [T | I].
        let f = t.field();
        let n = t.rows();
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = t.row(i).to_vec();
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r][c] != 0).unwrap();
            a.swap(c, p);
            let inv = f.inv(a[c][c]).unwrap();
            for v in a[c].iter_mut() {
                *v = f.mul(*v, inv);
            }
            for r in 0..n {
                if r != c && a[r][c] != 0 {
                    let k = a[r][c];
                    for j in 0..2 * n {
                        a[r][j] = f.sub(a[r][j], f.mul(k, a[c][j]));
                    }
                }
            }
        }
        let rows: Vec<Vec<u64>> = a.into_iter().map(|r| r[n..].to_vec()).collect();
        FpMatrix::from_rows(f, &rows)
    }

    #[test]
    fn restriction_to_line_matches_evaluation() {
        let f = field(32003);
        let mut rng = Prng::new(99);
        let p = random_form(f, 4, &mut rng, 30, 6);
        let a: Vec<u64> = (0..4).map(|_| rng.below(32003)).collect();
        let b: Vec<u64> = (0..4).map(|_| rng.below(32003)).collect();
        let u = p.restrict_to_line(&a, &b).unwrap();
        assert!(u.degree().unwrap_or(0) <= 6);
        for t in [0u64, 1, 2, 12345] {
            let pt: Vec<u64> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, f.mul(t, y))).collect();
            assert_eq!(u.eval(t), p.eval(&pt).unwrap());
        }
    }

    #[test]
    fn dehomogenize_and_extend() {
        let f = field(7);
        let p = poly(f, 3, &[(&[2, 1, 0], 1), (&[1, 0, 2], 3)]);
        assert_eq!(p.dehomogenize(0), poly(f, 2, &[(&[1, 0], 1), (&[0, 2], 3)]));
        let q = p.extend_vars(1, G);
        assert_eq!(q.nvars(), 4);
        assert_eq!(q.eval(&[1, 2, 3, 5]).unwrap(), p.eval(&[1, 2, 3]).unwrap());
        let r = p.prepend_var();
        assert_eq!(r.eval(&[5, 1, 2, 3]).unwrap(), p.eval(&[1, 2, 3]).unwrap());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), 0u64..31), 0..6).prop_map(|ts| {
            let f = field(31);
            MultiPoly::from_terms(f, 3, G, ts.into_iter().map(|(e, c)| (mono(&e), c)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), pt in proptest::collection::vec(0u64..31, 3)) {
            let f = field(31);
            let (ea, eb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
            prop_assert_eq!(a.mul(&b).eval(&pt).unwrap(), f.mul(ea, eb));
            prop_assert_eq!(a.add(&b).eval(&pt).unwrap(), f.add(ea, eb));
        }
    }
}
