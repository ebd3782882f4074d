use std::collections::{HashMap, HashSet};

use super::buchberger::{buchberger, GbOptions};
use super::reduce::{reduce_full, sev, Budget, Reducer};
use crate::error::{Error, Result};
use crate::exactalg::{FpMatrix, PrimeField};
use crate::multipoly::{Monomial, MonomialOrder, MultiPoly, MAX_VARS};

/// A finite generating set of an ideal in `F_p[x_0..x_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    homogeneous: bool,
}

impl IdealPresentation {
    /// Zero generators are dropped; all others must share the ring.
    pub fn new(field: PrimeField, nvars: usize, order: MonomialOrder, generators: Vec<MultiPoly>) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables { got: nvars, max: MAX_VARS });
        }
        for g in &generators {
            if g.nvars() != nvars || g.order() != order || g.field() != field {
                return Err(Error::ArityMismatch("generator outside the ideal's ring".into()));
            }
        }
        let generators: Vec<MultiPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = generators.iter().all(MultiPoly::is_homogeneous);
        Ok(IdealPresentation {
            field,
            nvars,
            order,
            generators,
            homogeneous,
        })
    }

    /// Ring taken from the first generator, which must exist.
    pub fn from_generators(generators: Vec<MultiPoly>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Precondition("ideal needs at least one generator".into()))?;
        let (f, n, o) = (first.field(), first.nvars(), first.order());
        Self::new(f, n, o, generators)
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

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `self + (extra)`.
    pub fn with_generator(&self, extra: MultiPoly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(extra);
        Self::new(self.field, self.nvars, self.order, gens)
    }
}

/// Reduced Gröbner basis: monic, minimal, fully inter-reduced and sorted by
/// increasing leading monomial, hence unique for the ideal and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBasis {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<MultiPoly>,
    steps: u64,
}

impl GBasis {
    pub(crate) fn unit(ideal: &IdealPresentation) -> Self {
        GBasis {
            field: ideal.field,
            nvars: ideal.nvars,
            order: ideal.order,
            basis: vec![MultiPoly::constant(ideal.field, ideal.nvars, ideal.order, 1)],
            steps: 0,
        }
    }

    pub(crate) fn from_reduced(ideal: &IdealPresentation, basis: Vec<MultiPoly>, steps: u64) -> Self {
        GBasis {
            field: ideal.field,
            nvars: ideal.nvars,
            order: ideal.order,
            basis,
            steps,
        }
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
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

    /// Reduction steps spent computing this basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(MultiPoly::is_unit)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(MultiPoly::leading_monomial).collect()
    }

    fn reducers(&self) -> Vec<Reducer<'_>> {
        self.basis
            .iter()
            .map(|g| {
                let lm = g.leading_monomial().expect("nonzero basis element");
                Reducer {
                    lm,
                    sev: sev(&lm),
                    tail: &g.terms()[1..],
                }
            })
            .collect()
    }

    /// The unique remainder of `f` modulo the ideal.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if f.nvars() != self.nvars || f.order() != self.order || f.field() != self.field {
            return Err(Error::ArityMismatch("polynomial outside the basis ring".into()));
        }
        let rem = reduce_full(self.field, self.order, f.terms().to_vec(), &self.reducers(), &mut Budget::unlimited())?;
        Ok(MultiPoly::from_sorted_terms(self.field, self.nvars, self.order, rem))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Krull dimension of the quotient ring: the largest set of variables
    /// such that no leading monomial involves only those variables. The unit
    /// ideal has dimension -1.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let lms = self.leading_monomials();
        (0u32..1 << self.nvars)
            .filter(|&s| lms.iter().all(|m| !m.supported_in(s)))
            .map(|s| s.count_ones() as i64)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.krull_dim() <= 0
    }

    /// Monomials outside the leading-term ideal, ascending in the order.
    /// The unit ideal has none.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let dim = self.krull_dim();
        if dim > 0 {
            return Err(Error::NotZeroDimensional(dim));
        }
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let lms = self.leading_monomials();
        let n = self.nvars;
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![Monomial::one()];
        seen.insert(Monomial::one());
        let mut out = Vec::new();
        while let Some(m) = frontier.pop() {
            out.push(m);
            for i in 0..n {
                let next = m.mul(&Monomial::var(i));
                if !seen.contains(&next) && !lms.iter().any(|l| l.divides(&next)) {
                    seen.insert(next);
                    frontier.push(next);
                }
            }
        }
        let order = self.order;
        out.sort_by(|a, b| order.cmp(a, b));
        Ok(out)
    }

    /// Dimension of the quotient algebra as a vector space.
    pub fn quotient_dim(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }

    /// Matrix of multiplication by the linear form `l` on the standard
    /// monomial basis; column `j` holds the normal form of `l * b_j`.
    pub fn mult_matrix(&self, l: &MultiPoly) -> Result<FpMatrix> {
        if l.total_degree().unwrap_or(0) > 1 {
            return Err(Error::Precondition("multiplier must be a linear form".into()));
        }
        let basis = self.standard_monomials()?;
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let n = basis.len();
        let mut mat = FpMatrix::zeros(self.field, n, n);
        for (j, b) in basis.iter().enumerate() {
            let prod = l.mul_term(b, 1);
            let nf = self.normal_form(&prod)?;
            for &(m, c) in nf.terms() {
                let i = index[&m];
                mat.set(i, j, c);
            }
        }
        Ok(mat)
    }
}

impl IdealPresentation {
    pub fn groebner(&self, opts: &GbOptions) -> Result<GBasis> {
        buchberger(self, opts)
    }
}

/// Radical membership by the Rabinowitsch trick: `g` lies in the radical of
/// `I` iff `1` lies in `I + (1 - t g)` with a fresh variable `t`.
pub fn in_radical(g: &MultiPoly, ideal: &IdealPresentation, opts: &GbOptions) -> Result<bool> {
    if g.nvars() != ideal.nvars() || g.field() != ideal.field() {
        return Err(Error::ArityMismatch("radical test outside the ideal's ring".into()));
    }
    let n = ideal.nvars();
    if n + 1 > MAX_VARS {
        return Err(Error::TooManyVariables { got: n + 1, max: MAX_VARS });
    }
    if g.is_zero() {
        return Ok(true);
    }
    let order = ideal.order();
    let field = ideal.field();
    let mut gens: Vec<MultiPoly> = ideal.generators().iter().map(|f| f.extend_vars(1, order)).collect();
    let t = MultiPoly::var(field, n + 1, order, n);
    let one = MultiPoly::constant(field, n + 1, order, 1);
    gens.push(one.sub(&t.mul(&g.extend_vars(1, order))));
    let extended = IdealPresentation::new(field, n + 1, order, gens)?;
    Ok(buchberger(&extended, opts)?.is_unit())
}

/// True iff the homogeneous ideal has empty projective zero locus, i.e. its
/// leading-term ideal contains a pure power of every variable.
pub fn is_irrelevant(ideal: &IdealPresentation, opts: &GbOptions) -> Result<bool> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = buchberger(ideal, opts)?;
    if gb.is_unit() {
        return Ok(true);
    }
    let mut covered = 0u32;
    for m in gb.leading_monomials() {
        if let Some(v) = m.pure_power_var() {
            covered |= 1 << v;
        }
    }
    Ok(covered.count_ones() as usize == ideal.nvars())
}
