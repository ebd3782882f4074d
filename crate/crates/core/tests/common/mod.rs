//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::HashMap;

use sextic_core::exactalg::{FpMatrix, PrimeField};
use sextic_core::groebner::{GBasis, GbOptions, IdealPresentation};
use sextic_core::multipoly::{Monomial, MonomialOrder, MultiPoly};
use sextic_core::rng::Prng;

pub const G: MonomialOrder = MonomialOrder::Grevlex;

pub fn groebner(gens: Vec<MultiPoly>) -> GBasis {
    IdealPresentation::from_generators(gens)
        .unwrap()
        .groebner(&GbOptions::default())
        .unwrap()
}

pub fn random_poly(f: PrimeField, n: usize, rng: &mut Prng, nterms: usize, maxdeg: u32) -> MultiPoly {
    let terms: Vec<(Monomial, u64)> = (0..nterms)
        .map(|_| {
            let d = rng.below(maxdeg as u64 + 1) as u32;
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.below(n as u64) as usize] += 1;
            }
            (Monomial::from_exponents(&e), rng.below(f.modulus()))
        })
        .collect();
    MultiPoly::from_terms(f, n, G, terms)
}

/// Dense polynomial with every monomial of degree <= d.
pub fn dense_poly(f: PrimeField, n: usize, rng: &mut Prng, d: u32) -> MultiPoly {
    let terms: Vec<(Monomial, u64)> = monomials_up_to(n, d).into_iter().map(|m| (m, rng.below(f.modulus()))).collect();
    MultiPoly::from_terms(f, n, G, terms)
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::from_exponents(prefix));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Reduces by picking, at random, any reducible term and any basis element
/// whose leading monomial divides it, until no term is reducible.
pub fn random_order_reduction(f: &MultiPoly, g: &GBasis, rng: &mut Prng) -> MultiPoly {
    let mut p = f.clone();
    loop {
        let mut options: Vec<(Monomial, usize)> = Vec::new();
        for &(m, _) in p.terms() {
            for (k, b) in g.basis().iter().enumerate() {
                if b.leading_monomial().unwrap().divides(&m) {
                    options.push((m, k));
                }
            }
        }
        if options.is_empty() {
            return p;
        }
        let (m, k) = options[rng.below(options.len() as u64) as usize];
        let b = &g.basis()[k];
        let field = p.field();
        let c = field.mul(p.coeff(&m), field.inv(b.leading_coeff()).unwrap());
        let q = b.leading_monomial().unwrap().quotient_of(&m);
        p = p.sub(&b.mul_term(&q, c));
    }
}

/// `dim R_{<=D} - rank` of the Macaulay matrix of all multiples
/// `m * g` with `deg(m * g) <= D`.
pub fn macaulay_corank(gens: &[MultiPoly], d: u32) -> usize {
    let f = gens[0].field();
    let n = gens[0].nvars();
    let cols = monomials_up_to(n, d);
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let gd = g.total_degree().unwrap();
        if gd > d {
            continue;
        }
        for m in monomials_up_to(n, d - gd) {
            let mut row = vec![0u64; cols.len()];
            for &(t, c) in g.terms() {
                row[index[&t.mul(&m)]] = c;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return cols.len();
    }
    cols.len() - FpMatrix::from_rows(f, &rows).rank()
}

/// Smallest stable value of the Macaulay corank, once it has held for three
/// consecutive degrees past every generator degree.
pub fn macaulay_oracle(gens: &[MultiPoly]) -> usize {
    let start = gens.iter().map(|g| g.total_degree().unwrap()).max().unwrap();
    let mut prev = Vec::new();
    for d in start..start + 20 {
        prev.push(macaulay_corank(gens, d));
        let k = prev.len();
        if k >= 3 && prev[k - 1] == prev[k - 2] && prev[k - 2] == prev[k - 3] {
            return prev[k - 1];
        }
    }
    panic!("Macaulay corank did not stabilize: {prev:?}");
}

pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            // Inserting n-1 at `pos` adds n-1-pos inversions.
            out.push((p, even == ((n - 1 - pos).is_multiple_of(2))));
        }
    }
    out
}

/// Determinant as the signed sum over all permutations.
pub fn permutation_determinant(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let zero = MultiPoly::zero(m[0][0].field(), m[0][0].nvars(), m[0][0].order());
    permutations(m.len()).into_iter().fold(zero, |acc, (perm, even)| {
        let term = perm.iter().enumerate().fold(
            MultiPoly::constant(acc.field(), acc.nvars(), acc.order(), 1),
            |t, (i, &j)| t.mul(&m[i][j]),
        );
        if even {
            acc.add(&term)
        } else {
            acc.sub(&term)
        }
    })
}
