//! Singularity census of the discriminant surface and of the double solid.
//!
//! Every census runs in one affine chart. A seeded random linear change of
//! coordinates is applied first, the chart `Y0 = 1` is taken, and a separate
//! check on the hyperplane `Y0 = 0` guarantees that nothing was lost at
//! infinity. The degree of the affine zero-dimensional scheme is the sum of
//! Tjurina numbers; a squarefree characteristic polynomial of a
//! multiplication operator certifies that it is reduced.

use crate::bundle::{CubicData, DiscriminantSurface, GramMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{FpMatrix, PrimeField};
use crate::groebner::{in_radical, is_irrelevant, GBasis, GbOptions, IdealPresentation};
use crate::multipoly::{minor, Monomial, MonomialOrder, MultiPoly};
use crate::rng::{derive_seed, streams, Prng};

const ORDER: MonomialOrder = MonomialOrder::Grevlex;

/// Number of random linear forms tried by the reducedness certificate.
pub const REDUCEDNESS_ATTEMPTS: usize = 5;

/// Number of nodes of a general discriminant surface.
pub const EXPECTED_NODES: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reducedness {
    Certified,
    NotCertified,
    Failed,
}

impl Reducedness {
    pub fn as_str(self) -> &'static str {
        match self {
            Reducedness::Certified => "certified",
            Reducedness::NotCertified => "not_certified",
            Reducedness::Failed => "failed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Generic31Nodes,
    Degenerate,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Generic31Nodes => "generic_31_nodes",
            Verdict::Degenerate => "degenerate",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a singularity census.
///
/// `degree` is `None` when the affine scheme is not zero-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularCensusReport {
    pub zero_dimensional: bool,
    pub degree: Option<usize>,
    pub reduced: Reducedness,
    pub points_at_infinity: bool,
    pub verdict: Verdict,
    pub chart_change_seed: u64,
}

impl SingularCensusReport {
    fn assemble(
        zero_dimensional: bool,
        degree: Option<usize>,
        reduced: Reducedness,
        points_at_infinity: bool,
        chart_change_seed: u64,
    ) -> Self {
        let verdict = if !zero_dimensional || degree != Some(EXPECTED_NODES) {
            Verdict::Degenerate
        } else if points_at_infinity || reduced != Reducedness::Certified {
            Verdict::Inconclusive
        } else {
            Verdict::Generic31Nodes
        };
        SingularCensusReport {
            zero_dimensional,
            degree,
            reduced,
            points_at_infinity,
            verdict,
            chart_change_seed,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.verdict == Verdict::Generic31Nodes
    }
}

/// The homogeneous ideal of the four partial derivatives of `Δ`.
pub fn jacobian_ideal(delta: &DiscriminantSurface) -> IdealPresentation {
    IdealPresentation::new(delta.field(), 4, ORDER, delta.partials().to_vec()).expect("partials share a ring")
}

/// A seeded invertible 4x4 matrix.
pub fn chart_change(field: PrimeField, seed: u64) -> FpMatrix {
    let mut rng = Prng::new(derive_seed(seed, streams::CHART));
    loop {
        let rows: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.below(field.modulus())).collect())
            .collect();
        let t = FpMatrix::from_rows(field, &rows);
        if t.rank() == 4 {
            return t;
        }
    }
}

/// The coordinate change and affine data shared by all census stages.
#[derive(Clone, Debug)]
pub struct CensusChart {
    /// `Y -> T Y`; the transformed surface is `Δ(T Y)`.
    pub change: FpMatrix,
    /// `Δ(T Y)`.
    pub delta: MultiPoly,
    /// `Δ(T Y)` at `Y0 = 1`, in `y1, y2, y3`.
    pub affine_delta: MultiPoly,
    /// The dehomogenized Jacobian ideal.
    pub jacobian: IdealPresentation,
    /// Its reduced Gröbner basis.
    pub basis: GBasis,
}

/// A census report together with the chart it was computed in.
#[derive(Clone, Debug)]
pub struct NodeCensus {
    pub report: SingularCensusReport,
    pub chart: CensusChart,
}

/// Runs the node census of `Δ` and returns the report only.
pub fn node_census(delta: &DiscriminantSurface, seed: u64, opts: &GbOptions) -> Result<SingularCensusReport> {
    Ok(node_census_in_chart(delta, seed, opts)?.report)
}

/// Runs the node census of `Δ`, keeping the chart for later stages.
pub fn node_census_in_chart(delta: &DiscriminantSurface, seed: u64, opts: &GbOptions) -> Result<NodeCensus> {
    let field = delta.field();
    let change = chart_change(field, seed);
    let moved = delta.delta().linear_change(&change)?;
    let partials = moved.gradient();

    let y0 = MultiPoly::var(field, 4, ORDER, 0);
    let at_infinity = IdealPresentation::new(field, 4, ORDER, partials.clone())?.with_generator(y0)?;
    let points_at_infinity = !is_irrelevant(&at_infinity, opts)?;

    let affine: Vec<MultiPoly> = partials.iter().map(|p| p.dehomogenize(0)).collect();
    let jacobian = IdealPresentation::new(field, 3, ORDER, affine)?;
    let basis = jacobian.groebner(opts)?;
    let report = census_of_basis(&basis, points_at_infinity, seed)?;
    let chart = CensusChart {
        change,
        affine_delta: moved.dehomogenize(0),
        delta: moved,
        jacobian,
        basis,
    };
    Ok(NodeCensus { report, chart })
}

fn census_of_basis(basis: &GBasis, points_at_infinity: bool, seed: u64) -> Result<SingularCensusReport> {
    if !basis.is_zero_dimensional() {
        return Ok(SingularCensusReport::assemble(
            false,
            None,
            Reducedness::Failed,
            points_at_infinity,
            seed,
        ));
    }
    let degree = basis.quotient_dim()?;
    let reduced = reducedness_certificate(basis, seed)?;
    Ok(SingularCensusReport::assemble(
        true,
        Some(degree),
        reduced,
        points_at_infinity,
        seed,
    ))
}

/// Tries up to [`REDUCEDNESS_ATTEMPTS`] random linear forms and certifies
/// the quotient reduced as soon as one has a squarefree characteristic
/// polynomial.
pub fn reducedness_certificate(basis: &GBasis, seed: u64) -> Result<Reducedness> {
    if !basis.is_zero_dimensional() {
        return Ok(Reducedness::Failed);
    }
    if basis.is_unit() {
        return Ok(Reducedness::Certified);
    }
    let field = basis.field();
    let n = basis.nvars();
    let mut rng = Prng::new(derive_seed(seed, streams::REDUCEDNESS));
    for _ in 0..REDUCEDNESS_ATTEMPTS {
        let terms: Vec<(Monomial, u64)> = (0..n).map(|i| (Monomial::var(i), rng.below(field.modulus()))).collect();
        let l = MultiPoly::from_terms(field, n, basis.order(), terms);
        if basis.mult_matrix(&l)?.charpoly()?.is_squarefree() {
            return Ok(Reducedness::Certified);
        }
    }
    Ok(Reducedness::NotCertified)
}

/// The affine double cover `w^2 = δ(y1, y2, y3)` in variables `(w, y1, y2, y3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSolidChart {
    g: MultiPoly,
}

impl DoubleSolidChart {
    /// Accepts `g` in four variables of degree 2 in `w` (variable 0) with
    /// leading coefficient 1 in `w`.
    pub fn new(g: MultiPoly) -> Result<Self> {
        if g.nvars() != 4 {
            return Err(Error::ArityMismatch("double solid chart lives in (w, y1, y2, y3)".into()));
        }
        let top = g.terms().iter().map(|(m, _)| m.exp(0)).max().unwrap_or(0);
        let w2 = Monomial::var(0).mul(&Monomial::var(0));
        if top != 2 || g.coeff(&w2) != 1 || g.terms().iter().any(|(m, _)| m.exp(0) == 2 && *m != w2) {
            return Err(Error::Precondition("g must be monic of degree 2 in w".into()));
        }
        Ok(DoubleSolidChart { g })
    }

    /// `w^2 - δ` for an affine surface equation `δ(y1, y2, y3)`.
    pub fn from_branch(delta: &MultiPoly) -> Result<Self> {
        if delta.nvars() != 3 {
            return Err(Error::ArityMismatch("branch surface must be in y1, y2, y3".into()));
        }
        let field = delta.field();
        let w = MultiPoly::var(field, 4, ORDER, 0);
        DoubleSolidChart::new(w.pow(2).sub(&delta.prepend_var().with_order(ORDER)))
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    /// The ideal `(g, ∂g/∂w, ∂g/∂y1, ∂g/∂y2, ∂g/∂y3)`.
    pub fn tjurina_ideal(&self) -> IdealPresentation {
        let mut gens = vec![self.g.clone()];
        gens.extend(self.g.gradient());
        IdealPresentation::new(self.g.field(), 4, ORDER, gens).expect("one ring")
    }

    /// Census of the Tjurina scheme in this chart. `points_at_infinity` is
    /// carried over from the chart check of the branch surface.
    pub fn census(&self, seed: u64, points_at_infinity: bool, opts: &GbOptions) -> Result<SingularCensusReport> {
        let basis = self.tjurina_ideal().groebner(opts)?;
        census_of_basis(&basis, points_at_infinity, seed)
    }
}

/// Census of the double solid branched along `Δ`, in the chart of the node
/// census with the same seed. Refuses unless that census is generic.
pub fn double_solid_census(delta: &DiscriminantSurface, seed: u64, opts: &GbOptions) -> Result<SingularCensusReport> {
    let nodes = node_census_in_chart(delta, seed, opts)?;
    double_solid_census_in_chart(&nodes, opts)
}

pub fn double_solid_census_in_chart(nodes: &NodeCensus, opts: &GbOptions) -> Result<SingularCensusReport> {
    require_generic(&nodes.report)?;
    DoubleSolidChart::from_branch(&nodes.chart.affine_delta)?.census(
        nodes.report.chart_change_seed,
        nodes.report.points_at_infinity,
        opts,
    )
}

fn require_generic(report: &SingularCensusReport) -> Result<()> {
    if report.is_generic() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "node census verdict is {}",
            report.verdict.as_str()
        )))
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn minors_of(entries: &[Vec<MultiPoly>], size: usize) -> Vec<MultiPoly> {
    let sets = subsets(entries.len(), size);
    let mut out: Vec<MultiPoly> = Vec::new();
    for (i, rows) in sets.iter().enumerate() {
        for cols in &sets[i..] {
            let m = minor(entries, rows, cols);
            if !m.is_zero() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// The homogeneous ideal of `(r+1) x (r+1)` minors of `M`, cutting out the
/// locus where the fiber quadric has rank at most `r`.
pub fn rank_stratum_ideal(m: &GramMatrix, r: usize) -> Result<IdealPresentation> {
    if !(1..=3).contains(&r) {
        return Err(Error::Precondition(format!("rank bound {r} outside 1..=3")));
    }
    let field = m.entry(0, 0).field();
    IdealPresentation::new(field, 4, ORDER, minors_of(m.entries(), r + 1))
}

/// Ideal-theoretic form of the rank stratification on `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataReport {
    pub rank2_equals_sigma: bool,
    pub rank1_empty: bool,
    /// Per 3x3 minor: lies in the radical of the Jacobian ideal.
    pub minors_in_sigma: Vec<bool>,
    /// Per Jacobian generator: lies in the radical of the 3x3-minor ideal.
    pub jacobian_in_rank2: Vec<bool>,
    /// The rank-at-most-2 locus meets the hyperplane at infinity of the chart.
    pub rank2_points_at_infinity: bool,
    /// `Δ` lies in the 3x3-minor ideal itself.
    pub delta_in_rank2_ideal: bool,
}

impl StrataReport {
    pub fn passed(&self) -> bool {
        self.rank2_equals_sigma && self.rank1_empty && self.delta_in_rank2_ideal
    }
}

/// Runs the node census with `seed` and then the strata check in its chart.
pub fn strata_check(d: &CubicData, delta: &DiscriminantSurface, seed: u64, opts: &GbOptions) -> Result<StrataReport> {
    let nodes = node_census_in_chart(delta, seed, opts)?;
    strata_check_in_chart(d, &nodes, opts)
}

pub fn strata_check_in_chart(d: &CubicData, nodes: &NodeCensus, opts: &GbOptions) -> Result<StrataReport> {
    require_generic(&nodes.report)?;
    let field = d.field();
    let gram = d.gram_matrix();
    let chart = &nodes.chart;

    let rank2 = rank_stratum_ideal(&gram, 2)?;
    let moved = rank_stratum_ideal(&gram.linear_change(&chart.change)?, 2)?;
    let affine_minors: Vec<MultiPoly> = moved.generators().iter().map(|g| g.dehomogenize(0)).collect();

    let sigma = IdealPresentation::new(field, 3, ORDER, chart.basis.basis().to_vec())?;
    let minors_in_sigma = affine_minors
        .iter()
        .map(|g| in_radical(g, &sigma, opts))
        .collect::<Result<Vec<_>>>()?;

    let rank2_affine = IdealPresentation::new(field, 3, ORDER, affine_minors)?;
    let rank2_affine = IdealPresentation::new(field, 3, ORDER, rank2_affine.groebner(opts)?.basis().to_vec())?;
    let jacobian_in_rank2 = chart
        .jacobian
        .generators()
        .iter()
        .map(|g| in_radical(g, &rank2_affine, opts))
        .collect::<Result<Vec<_>>>()?;

    let y0 = MultiPoly::var(field, 4, ORDER, 0);
    let rank2_points_at_infinity = !is_irrelevant(&moved.with_generator(y0)?, opts)?;

    let rank1_empty = is_irrelevant(&rank_stratum_ideal(&gram, 1)?, opts)?;
    let delta_in_rank2_ideal = rank2.groebner(opts)?.contains(&gram.determinant())?;

    let rank2_equals_sigma = minors_in_sigma.iter().all(|&b| b)
        && jacobian_in_rank2.iter().all(|&b| b)
        && !rank2_points_at_infinity
        && !nodes.report.points_at_infinity;
    Ok(StrataReport {
        rank2_equals_sigma,
        rank1_empty,
        minors_in_sigma,
        jacobian_in_rank2,
        rank2_points_at_infinity,
        delta_in_rank2_ideal,
    })
}

/// The singular points of `Δ` with all coordinates in `F_p`, in the original
/// coordinates, each scaled so that its first nonzero coordinate is 1.
pub fn rational_singular_points(nodes: &NodeCensus, seed: u64, opts: &GbOptions) -> Result<Vec<[u64; 4]>> {
    let chart = &nodes.chart;
    if !chart.basis.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional(chart.basis.krull_dim()));
    }
    let field = chart.basis.field();
    let mut partial: Vec<(Vec<u64>, IdealPresentation)> = vec![(Vec::new(), chart.jacobian.clone())];
    for var in 0..3 {
        let mut next = Vec::new();
        for (fixed, ideal) in partial {
            let basis = ideal.groebner(opts)?;
            if basis.is_unit() {
                continue;
            }
            let y = MultiPoly::var(field, 3, ORDER, var);
            let chi = basis.mult_matrix(&y)?.charpoly()?;
            for r in chi.fp_roots(derive_seed(seed, var as u64)) {
                let mut coords = fixed.clone();
                coords.push(r);
                let pinned = ideal.with_generator(y.sub(&MultiPoly::constant(field, 3, ORDER, r)))?;
                next.push((coords, pinned));
            }
        }
        partial = next;
    }
    let mut points = Vec::new();
    for (coords, ideal) in partial {
        if ideal.groebner(opts)?.is_unit() {
            continue;
        }
        let local = [1, coords[0], coords[1], coords[2]];
        let mut y: [u64; 4] = chart.change.mul_vec(&local).try_into().expect("length 4");
        let lead = *y.iter().find(|&&c| c != 0).expect("invertible change");
        let inv = field.inv(lead)?;
        for c in &mut y {
            *c = field.mul(*c, inv);
        }
        points.push(y);
    }
    points.sort_unstable();
    Ok(points)
}
