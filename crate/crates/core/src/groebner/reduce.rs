use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactalg::PrimeField;
use crate::multipoly::{Monomial, MonomialOrder};

pub(crate) type Terms = Vec<(Monomial, u64)>;

/// Counts reduction steps against a cap.
#[derive(Debug)]
pub(crate) struct Budget {
    used: u64,
    cap: Option<u64>,
}

impl Budget {
    pub fn new(cap: Option<u64>) -> Self {
        Budget { used: 0, cap }
    }

    pub fn unlimited() -> Self {
        Budget::new(None)
    }

    #[inline]
    pub fn step(&mut self) -> Result<()> {
        self.used += 1;
        match self.cap {
            Some(cap) if self.used > cap => Err(Error::ResourceBudgetExceeded(cap)),
            _ => Ok(()),
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Bitmask of variables with positive exponent; a necessary condition for
/// `a | b` is `sev(a) & !sev(b) == 0`.
#[inline]
pub(crate) fn sev(m: &Monomial) -> u32 {
    let mut s = 0;
    for i in 0..crate::multipoly::MAX_VARS {
        if m.exp(i) > 0 {
            s |= 1 << i;
        }
    }
    s
}

/// A monic reducer: leading monomial plus tail.
pub(crate) struct Reducer<'a> {
    pub lm: Monomial,
    pub sev: u32,
    pub tail: &'a [(Monomial, u64)],
}

/// `a + scale * m * b`, both canonical and strictly decreasing.
pub(crate) fn merge_scaled(
    field: PrimeField,
    order: MonomialOrder,
    a: &[(Monomial, u64)],
    b: &[(Monomial, u64)],
    m: &Monomial,
    scale: u64,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj = b.first().map(|t| t.0.mul(m));
    while i < a.len() {
        let Some(bm) = bj else { break };
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, field.mul(b[j].1, scale)));
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = field.add(a[i].1, field.mul(b[j].1, scale));
                if c != 0 {
                    out.push((bm, c));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(t, c)| (t.mul(m), field.mul(c, scale))));
    out
}

fn find_reducer(reducers: &[Reducer<'_>], m: &Monomial) -> Option<usize> {
    let s = sev(m);
    reducers
        .iter()
        .position(|r| r.sev & !s == 0 && r.lm.divides(m))
}

/// Full reduction: no term of the result is divisible by a reducer's
/// leading monomial.
pub(crate) fn reduce_full(
    field: PrimeField,
    order: MonomialOrder,
    f: Terms,
    reducers: &[Reducer<'_>],
    budget: &mut Budget,
) -> Result<Terms> {
    let mut p = f;
    let mut start = 0;
    let mut rem: Terms = Vec::new();
    while start < p.len() {
        let (m, c) = p[start];
        match find_reducer(reducers, &m) {
            Some(k) => {
                budget.step()?;
                let r = &reducers[k];
                let q = r.lm.quotient_of(&m);
                p = merge_scaled(field, order, &p[start + 1..], r.tail, &q, field.neg(c));
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    Ok(rem)
}
