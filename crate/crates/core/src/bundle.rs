//! The quadric bundle obtained by projecting a cubic fivefold from a plane.
//!
//! In coordinates `(X0, X1, X2; Y0..Y3)` the plane is `Y = 0` and the cubic
//! is `sum A_ij X_i X_j + sum B_i X_i + C` with `A_ij`, `B_i`, `C` forms in
//! `Y` of degrees 1, 2, 3. Over a point `y` the fiber is the quadric with
//! Gram matrix `[[A(y), B(y)], [B(y)^T, C(y)]]`; the discriminant surface is
//! the determinant of that matrix, a sextic in `Y`.

use fnv::FnvHasher;
use std::hash::Hasher;

use crate::error::{Error, Result};
use crate::exactalg::{FpMatrix, PrimeField};
use crate::multipoly::{self, parse_poly, Monomial, MonomialOrder, MultiPoly, PolyMatrix};
use crate::rng::{derive_seed, streams, Prng};

const ORDER: MonomialOrder = MonomialOrder::Grevlex;

pub fn y_names() -> Vec<String> {
    multipoly::variable_names("Y", 4)
}

/// `X0, X1, X2, Y0, Y1, Y2, Y3`, the variables of the cubic fivefold.
pub fn xy_names() -> Vec<String> {
    let mut names = multipoly::variable_names("X", 3);
    names.extend(y_names());
    names
}

/// Keys of the instance file, in the fixed coefficient-sampling order.
pub const FORM_KEYS: [&str; 10] = ["A00", "A01", "A02", "A11", "A12", "A22", "B0", "B1", "B2", "C"];

fn form_slot(key: &str) -> Option<usize> {
    FORM_KEYS.iter().position(|&k| k == key)
}

/// Degrees of the bundle forms in the order of [`FORM_KEYS`].
const FORM_DEGREES: [u32; 10] = [1, 1, 1, 1, 1, 1, 2, 2, 2, 3];

/// All monomials of degree `d` in `n` variables, decreasing in grevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| ORDER.cmp(b, a));
    out
}

/// The forms `A_ij`, `B_i`, `C` of the cubic equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicData {
    field: PrimeField,
    a: [[MultiPoly; 3]; 3],
    b: [MultiPoly; 3],
    c: MultiPoly,
    seed: Option<u64>,
}

impl CubicData {
    /// Validates symmetry of `a` and the degrees (1, 2, 3) of the forms.
    /// Zero forms are allowed.
    pub fn new(
        field: PrimeField,
        a: [[MultiPoly; 3]; 3],
        b: [MultiPoly; 3],
        c: MultiPoly,
        seed: Option<u64>,
    ) -> Result<Self> {
        let check = |p: &MultiPoly, deg: u32, what: &str| -> Result<()> {
            if p.nvars() != 4 || p.field() != field || p.order() != ORDER {
                return Err(Error::ArityMismatch(format!("{what} is not a form in Y0..Y3 over F_{}", field.modulus())));
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(deg) {
                return Err(Error::Precondition(format!("{what} must be homogeneous of degree {deg}")));
            }
            Ok(())
        };
        for i in 0..3 {
            for j in 0..3 {
                check(&a[i][j], 1, &format!("A{i}{j}"))?;
                if a[i][j] != a[j][i] {
                    return Err(Error::Precondition(format!("A is not symmetric at ({i},{j})")));
                }
            }
            check(&b[i], 2, &format!("B{i}"))?;
        }
        check(&c, 3, "C")?;
        Ok(CubicData { field, a, b, c, seed })
    }

    fn from_forms(field: PrimeField, forms: Vec<MultiPoly>, seed: Option<u64>) -> Result<Self> {
        let f = |k: usize| forms[k].clone();
        let a = [[f(0), f(1), f(2)], [f(1), f(3), f(4)], [f(2), f(4), f(5)]];
        CubicData::new(field, a, [f(6), f(7), f(8)], f(9), seed)
    }

    /// Seeded instance. Every coefficient is drawn uniformly from F_p, form
    /// by form in the order of [`FORM_KEYS`], and within a form over the
    /// monomials of its degree in decreasing grevlex order.
    pub fn random(p: u64, seed: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mut rng = Prng::new(derive_seed(seed, streams::INSTANCE));
        let forms: Vec<MultiPoly> = FORM_DEGREES
            .iter()
            .map(|&d| {
                let terms: Vec<(Monomial, u64)> = monomials_of_degree(4, d)
                    .into_iter()
                    .map(|m| (m, rng.below(p)))
                    .collect();
                MultiPoly::from_terms(field, 4, ORDER, terms)
            })
            .collect();
        Self::from_forms(field, forms, Some(seed))
    }

    /// `A = diag(Y0, Y1, Y2)`, `B = 0`, `C = Y3^3`.
    pub fn diagonal_example(p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let y = |i| MultiPoly::var(field, 4, ORDER, i);
        let z = MultiPoly::zero(field, 4, ORDER);
        let a = [
            [y(0), z.clone(), z.clone()],
            [z.clone(), y(1), z.clone()],
            [z.clone(), z.clone(), y(2)],
        ];
        CubicData::new(field, a, [z.clone(), z.clone(), z], y(3).pow(3), None)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn a(&self) -> &[[MultiPoly; 3]; 3] {
        &self.a
    }

    pub fn b(&self) -> &[MultiPoly; 3] {
        &self.b
    }

    pub fn c(&self) -> &MultiPoly {
        &self.c
    }

    fn forms(&self) -> [&MultiPoly; 10] {
        let a = &self.a;
        [
            &a[0][0], &a[0][1], &a[0][2], &a[1][1], &a[1][2], &a[2][2], &self.b[0], &self.b[1], &self.b[2], &self.c,
        ]
    }

    pub fn gram_matrix(&self) -> GramMatrix {
        let mut entries: PolyMatrix = vec![vec![MultiPoly::zero(self.field, 4, ORDER); 4]; 4];
        for i in 0..3 {
            for j in 0..3 {
                entries[i][j] = self.a[i][j].clone();
            }
            entries[i][3] = self.b[i].clone();
            entries[3][i] = self.b[i].clone();
        }
        entries[3][3] = self.c.clone();
        GramMatrix { entries }
    }

    pub fn discriminant(&self) -> Result<DiscriminantSurface> {
        DiscriminantSurface::new(self.gram_matrix().determinant())
    }

    /// `sum A_ij X_i X_j + sum B_i X_i + C` in `X0, X1, X2, Y0..Y3`.
    pub fn cubic_equation(&self) -> MultiPoly {
        let f = self.field;
        let lift = |p: &MultiPoly| p.prepend_var().prepend_var().prepend_var();
        let x = |i| MultiPoly::var(f, 7, ORDER, i);
        let mut eq = lift(&self.c);
        for i in 0..3 {
            for j in 0..3 {
                eq = eq.add(&lift(&self.a[i][j]).mul(&x(i)).mul(&x(j)));
            }
            eq = eq.add(&lift(&self.b[i]).mul(&x(i)));
        }
        eq
    }

    /// Gram matrix of the fiber quadric over `y`.
    pub fn fiber_gram(&self, y: &[u64]) -> Result<FpMatrix> {
        check_point(y)?;
        self.gram_matrix().eval(y)
    }

    /// The conic `sum A_ij(y) X_i X_j = 0` in the plane, i.e. the fiber of
    /// the exceptional divisor over `y`.
    pub fn exceptional_conic(&self, y: &[u64]) -> Result<FpMatrix> {
        check_point(y)?;
        let mut m = FpMatrix::zeros(self.field, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, self.a[i][j].eval(y)?);
            }
        }
        Ok(m)
    }

    /// Canonical text serialization; parses back to an equal value.
    pub fn to_text(&self) -> String {
        let names = y_names();
        let mut out = format!("prime {}\n", self.field.modulus());
        if let Some(s) = self.seed {
            out.push_str(&format!("seed {s}\n"));
        }
        for (key, form) in FORM_KEYS.iter().zip(self.forms()) {
            out.push_str(&format!("{key} {}\n", form.to_text(&names)));
        }
        out
    }

    /// Reads an instance file. Either all ten forms are given explicitly, or
    /// none are and the `seed` line determines a random instance.
    pub fn from_text(text: &str) -> Result<Self> {
        let names = y_names();
        let mut prime = None;
        let mut seed = None;
        let mut raw: [Option<String>; 10] = Default::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let value = value.trim();
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            match key {
                "prime" => prime = Some(value.parse::<u64>().map_err(|_| bad("invalid prime"))?),
                "seed" => seed = Some(value.parse::<u64>().map_err(|_| bad("invalid seed"))?),
                k => {
                    let slot = form_slot(k).ok_or_else(|| bad(&format!("unknown key {k:?}")))?;
                    if raw[slot].replace(value.to_string()).is_some() {
                        return Err(bad(&format!("duplicate key {k}")));
                    }
                }
            }
        }
        let p = prime.ok_or_else(|| Error::Parse("missing prime".into()))?;
        let given = raw.iter().filter(|r| r.is_some()).count();
        match (given, seed) {
            (0, Some(s)) => Self::random(p, s),
            (0, None) => Err(Error::Parse("neither forms nor seed given".into())),
            (10, _) => {
                let field = PrimeField::new(p)?;
                let forms = raw
                    .iter()
                    .map(|r| parse_poly(r.as_deref().unwrap(), &names, field, ORDER))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_forms(field, forms, seed)
            }
            _ => Err(Error::Parse(format!("expected all 10 forms, found {given}"))),
        }
    }

    /// 64-bit FNV-1a hash of [`to_text`](Self::to_text).
    pub fn fingerprint(&self) -> u64 {
        let mut h = FnvHasher::default();
        h.write(self.to_text().as_bytes());
        h.finish()
    }
}

fn check_point(y: &[u64]) -> Result<()> {
    if y.len() != 4 {
        return Err(Error::ArityMismatch(format!("point of length {} in P^3", y.len())));
    }
    if y.iter().all(|&c| c == 0) {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

/// The 4x4 symmetric matrix of forms whose determinant is the discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: PolyMatrix,
}

impl GramMatrix {
    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Entry `(i, j)` is zero or a form of degree `w_i + w_j - 1` with
    /// weights `w = (1, 1, 1, 2)`.
    pub fn degree_pattern_ok(&self) -> bool {
        const W: [u32; 4] = [1, 1, 1, 2];
        (0..4).all(|i| {
            (0..4).all(|j| {
                let e = &self.entries[i][j];
                e.is_zero() || e.homogeneous_degree() == Some(W[i] + W[j] - 1)
            })
        })
    }

    pub fn determinant(&self) -> MultiPoly {
        multipoly::det(&self.entries).expect("4x4 matrix over one ring")
    }

    pub fn eval(&self, y: &[u64]) -> Result<FpMatrix> {
        let field = self.entries[0][0].field();
        let mut m = FpMatrix::zeros(field, 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, self.entries[i][j].eval(y)?);
            }
        }
        Ok(m)
    }

    /// Applies `Y -> T Y` to every entry.
    pub fn linear_change(&self, t: &FpMatrix) -> Result<GramMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.linear_change(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<PolyMatrix>>()?;
        Ok(GramMatrix { entries })
    }
}

/// The sextic `Δ = det(Gram)` together with its partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantSurface {
    delta: MultiPoly,
    partials: Vec<MultiPoly>,
}

impl DiscriminantSurface {
    /// Accepts any nonzero form in four variables; the zero polynomial is
    /// reported as [`Error::DegenerateDiscriminant`].
    pub fn new(delta: MultiPoly) -> Result<Self> {
        if delta.nvars() != 4 {
            return Err(Error::ArityMismatch("surface equation must be in Y0..Y3".into()));
        }
        if delta.is_zero() {
            return Err(Error::DegenerateDiscriminant);
        }
        if !delta.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let partials = delta.gradient();
        Ok(DiscriminantSurface { delta, partials })
    }

    pub fn delta(&self) -> &MultiPoly {
        &self.delta
    }

    pub fn degree(&self) -> u32 {
        self.delta.homogeneous_degree().unwrap_or(0)
    }

    pub fn partials(&self) -> &[MultiPoly] {
        &self.partials
    }

    pub fn field(&self) -> PrimeField {
        self.delta.field()
    }

    pub fn eval(&self, y: &[u64]) -> u64 {
        self.delta.eval(y).expect("point in P^3")
    }

    /// True iff some partial derivative is nonzero at `y`.
    pub fn is_smooth_at(&self, y: &[u64]) -> bool {
        self.partials.iter().any(|p| p.eval(y).expect("point in P^3") != 0)
    }
}

/// Outcome of sampling rational points on a cubic hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub points_tested: usize,
    pub failures: usize,
    pub lines_tried: usize,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.points_tested > 0
    }
}

/// Spot-checks smoothness of the cubic fivefold at sampled rational points.
pub fn smoothness_spotcheck(d: &CubicData, n_samples: usize, seed: u64) -> Result<SmoothnessReport> {
    smoothness_spotcheck_form(&d.cubic_equation(), n_samples, seed)
}

/// Samples up to `n_samples` points of `{f = 0}` by intersecting with random
/// lines and flags every point where the gradient of `f` vanishes.
pub fn smoothness_spotcheck_form(f: &MultiPoly, n_samples: usize, seed: u64) -> Result<SmoothnessReport> {
    if n_samples == 0 {
        return Err(Error::Precondition("n_samples must be at least 1".into()));
    }
    let field = f.field();
    let p = field.modulus();
    let n = f.nvars();
    let grad = f.gradient();
    let mut rng = Prng::new(derive_seed(seed, streams::SMOOTHNESS));
    let max_lines = 20 * n_samples + 100;
    let mut report = SmoothnessReport {
        points_tested: 0,
        failures: 0,
        lines_tried: 0,
    };
    while report.points_tested < n_samples && report.lines_tried < max_lines {
        report.lines_tried += 1;
        let a: Vec<u64> = (0..n).map(|_| rng.below(p)).collect();
        let b: Vec<u64> = (0..n).map(|_| rng.below(p)).collect();
        let restricted = f.restrict_to_line(&a, &b)?;
        if restricted.is_zero() {
            continue;
        }
        for t in restricted.fp_roots(rng.next_u64()) {
            if report.points_tested == n_samples {
                break;
            }
            let pt: Vec<u64> = a.iter().zip(&b).map(|(&x, &y)| field.add(x, field.mul(t, y))).collect();
            if pt.iter().all(|&c| c == 0) {
                continue;
            }
            report.points_tested += 1;
            let singular = grad.iter().all(|g| g.eval(&pt).expect("arity") == 0);
            if singular {
                report.failures += 1;
            }
        }
    }
    Ok(report)
}
