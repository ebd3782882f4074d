use std::collections::HashMap;

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Square matrix of polynomials, row-major.
pub type PolyMatrix = Vec<Vec<MultiPoly>>;

/// Determinant by cofactor expansion along rows, memoized on the set of
/// remaining columns: the minor on rows `k..n` depends only on which
/// `n - k` columns are left.
pub fn det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let n = m.len();
    let first = m
        .first()
        .and_then(|r| r.first())
        .ok_or_else(|| Error::ArityMismatch("empty matrix".into()))?;
    for row in m {
        if row.len() != n {
            return Err(Error::ArityMismatch("matrix is not square".into()));
        }
        for e in row {
            if e.nvars() != first.nvars() || e.order() != first.order() || e.field() != first.field() {
                return Err(Error::ArityMismatch("entries live in different rings".into()));
            }
        }
    }
    assert!(n <= 16, "cofactor expansion limited to 16x16");
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(minor(m, &rows, &cols))
}

/// Minor on the given rows and columns (same length). Entries are assumed
/// to share a ring.
pub fn minor(m: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize]) -> MultiPoly {
    assert_eq!(rows.len(), cols.len());
    let proto = &m[0][0];
    let one = MultiPoly::constant(proto.field(), proto.nvars(), proto.order(), 1);
    let k = rows.len();
    let full: u32 = (1u32 << k) - 1;
    // memo[mask] = minor on rows[k - |mask|..] and columns {cols[j] : j in mask}
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    memo.insert(0, one);
    for size in 1..=k {
        let r = rows[k - size];
        for mask in 0..=full {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = MultiPoly::zero(proto.field(), proto.nvars(), proto.order());
            // sign alternates over the columns of the mask in increasing order
            let mut sign_neg = false;
            for j in 0..k {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = &m[r][cols[j]];
                if !entry.is_zero() {
                    let sub = &memo[&(mask & !(1 << j))];
                    if !sub.is_zero() {
                        let term = entry.mul(sub);
                        acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
                    }
                }
                sign_neg = !sign_neg;
            }
            memo.insert(mask, acc);
        }
    }
    memo.remove(&full).expect("full minor")
}
