use std::cmp::Ordering;

use super::ideal::{GBasis, IdealPresentation};
use super::reduce::{merge_scaled, reduce_full, sev, Budget, Reducer, Terms};
use crate::error::Result;
use crate::multipoly::{Monomial, MultiPoly};
use crate::rng::Prng;

/// Default cap on reduction steps for one completion.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Critical-pair selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Smallest lcm in the monomial order.
    Normal,
    /// Uniformly random pending pair; used to test order independence.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    pub budget: Option<u64>,
    pub selection: Selection,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            budget: Some(DEFAULT_BUDGET),
            selection: Selection::Normal,
        }
    }
}

impl GbOptions {
    pub fn with_budget(budget: u64) -> Self {
        GbOptions {
            budget: Some(budget),
            ..Default::default()
        }
    }

    pub fn unlimited() -> Self {
        GbOptions {
            budget: None,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'p> {
    ideal: &'p IdealPresentation,
    polys: Vec<Terms>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    budget: Budget,
}

impl<'p> State<'p> {
    fn reducers(&self) -> Vec<Reducer<'_>> {
        self.active
            .iter()
            .map(|&k| Reducer {
                lm: self.lms[k],
                sev: sev(&self.lms[k]),
                tail: &self.polys[k][1..],
            })
            .collect()
    }

    fn reduce(&mut self, f: Terms) -> Result<Terms> {
        let field = self.ideal.field();
        let order = self.ideal.order();
        let mut budget = std::mem::replace(&mut self.budget, Budget::unlimited());
        let out = {
            let reducers = self.reducers();
            reduce_full(field, order, f, &reducers, &mut budget)
        };
        self.budget = budget;
        out
    }

    fn spoly(&self, pair: &Pair) -> Terms {
        let field = self.ideal.field();
        let order = self.ideal.order();
        let (a, b) = (&self.polys[pair.i], &self.polys[pair.j]);
        let qa = self.lms[pair.i].quotient_of(&pair.lcm);
        let qb = self.lms[pair.j].quotient_of(&pair.lcm);
        let left: Terms = a[1..].iter().map(|&(m, c)| (m.mul(&qa), c)).collect();
        merge_scaled(field, order, &left, &b[1..], &qb, field.neg(1))
    }

    /// Gebauer–Möller installation of a new monic basis element.
    fn install(&mut self, h: Terms) {
        let hk = self.polys.len();
        let lh = h[0].0;
        self.polys.push(h);
        self.lms.push(lh);

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: hk,
                lcm: self.lms[g].lcm(&lh),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.lms[p.i].is_coprime(&lh);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.lms[p.i].is_coprime(&lh));

        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lms[p.i].lcm(&lh) != p.lcm && lms[p.j].lcm(&lh) != p.lcm)
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !lh.divides(&lms[g]));
        self.active.push(hk);
    }

    fn take_pair(&mut self, rng: &mut Option<Prng>) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ideal.order();
        let idx = match rng {
            Some(r) => r.below(self.pairs.len() as u64) as usize,
            None => {
                let mut best = 0;
                for k in 1..self.pairs.len() {
                    let (a, b) = (&self.pairs[k], &self.pairs[best]);
                    let c = order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j)));
                    if c == Ordering::Less {
                        best = k;
                    }
                }
                best
            }
        };
        Some(self.pairs.swap_remove(idx))
    }
}

fn make_monic(field: crate::exactalg::PrimeField, t: &mut Terms) {
    if let Some(&(_, lc)) = t.first() {
        if lc != 1 {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
    }
}

/// Reduced Gröbner basis of the ideal.
pub fn buchberger(ideal: &IdealPresentation, opts: &GbOptions) -> Result<GBasis> {
    let field = ideal.field();
    let order = ideal.order();
    let mut st = State {
        ideal,
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget: Budget::new(opts.budget),
    };
    let mut rng = match opts.selection {
        Selection::Normal => None,
        Selection::Shuffled(seed) => Some(Prng::new(seed)),
    };

    let mut gens: Vec<&MultiPoly> = ideal.generators().iter().collect();
    gens.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    for g in gens {
        let mut h = st.reduce(g.terms().to_vec())?;
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        if h[0].0.is_one() {
            return Ok(GBasis::unit(ideal));
        }
        st.install(h);
    }

    while let Some(pair) = st.take_pair(&mut rng) {
        let s = st.spoly(&pair);
        let mut h = st.reduce(s)?;
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        if h[0].0.is_one() {
            return Ok(GBasis::unit(ideal));
        }
        st.install(h);
    }

    // Inter-reduce the minimal basis.
    let mut basis: Vec<Terms> = Vec::with_capacity(st.active.len());
    for (pos, &k) in st.active.iter().enumerate() {
        let reducers: Vec<Reducer<'_>> = st
            .active
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &g)| Reducer {
                lm: st.lms[g],
                sev: sev(&st.lms[g]),
                tail: &st.polys[g][1..],
            })
            .collect();
        let tail = reduce_full(field, order, st.polys[k][1..].to_vec(), &reducers, &mut st.budget)?;
        let mut full = Vec::with_capacity(tail.len() + 1);
        full.push(st.polys[k][0]);
        full.extend(tail);
        basis.push(full);
    }
    let mut polys: Vec<MultiPoly> = basis
        .into_iter()
        .map(|t| MultiPoly::from_sorted_terms(field, ideal.nvars(), order, t))
        .collect();
    polys.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    Ok(GBasis::from_reduced(ideal, polys, st.budget.used()))
}
