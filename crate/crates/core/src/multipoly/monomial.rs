use std::cmp::Ordering;

/// Upper bound on the number of variables of any ring in the crate.
pub const MAX_VARS: usize = 8;

/// Exponent vector with cached total degree. Unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m.deg = exps.iter().sum();
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, &o) in exps.iter_mut().zip(&other.exps) {
            *e = e.checked_add(o).expect("exponent overflow");
        }
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = other.exps;
        for (e, &s) in exps.iter_mut().zip(&self.exps) {
            *e -= s;
        }
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut deg = 0;
        for (e, &o) in exps.iter_mut().zip(&other.exps) {
            *e = (*e).max(o);
            deg += *e as u32;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The variable index if this monomial is a pure power `x_i^k`, `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// True iff every variable with positive exponent lies in `vars` (bitmask).
    pub fn supported_in(&self, vars: u32) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || vars & (1 << i) != 0)
    }

    /// Drops variable `i`, shifting later variables down.
    pub fn remove_var(&self, i: usize) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut k = 0;
        for (j, &e) in self.exps.iter().enumerate() {
            if j != i {
                exps[k] = e;
                k += 1;
            }
        }
        Monomial {
            exps,
            deg: self.deg - self.exps[i] as u32,
        }
    }

    pub(crate) fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }
}

/// Monomial orders. `Block(k)` compares the first `k` variables by graded
/// reverse lexicographic order and breaks ties by grevlex on the remaining
/// variables; it is an elimination order for the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block(usize),
}

fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.exps[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = b.exps[lo..hi].iter().map(|&e| e as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = (*k).min(MAX_VARS);
                grevlex_range(a, b, 0, k).then_with(|| grevlex_range(a, b, k, MAX_VARS))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}
