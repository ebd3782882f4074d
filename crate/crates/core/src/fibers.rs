//! Fibers of the quadric bundle: sampling over the strata of `P^3`, rank
//! checks, and the intersection numbers behind the parity certificate.

use std::collections::BTreeSet;

use crate::bundle::{CubicData, DiscriminantSurface};
use crate::error::{Error, Result};
use crate::exactalg::{FpMatrix, PrimeField};
use crate::rng::{derive_seed, streams, Prng};

/// Default number of independent lines per fiber in a certificate.
pub const LINES_PER_FIBER: usize = 20;

/// Line attempts before a pairing gives up.
pub const PAIRING_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    OffDelta,
    OnDeltaSmooth,
    OnSigma,
}

impl Stratum {
    pub fn as_str(self) -> &'static str {
        match self {
            Stratum::OffDelta => "off_delta",
            Stratum::OnDeltaSmooth => "on_delta_smooth",
            Stratum::OnSigma => "on_sigma",
        }
    }

    /// Rank of the fiber quadric over a general instance.
    pub fn expected_rank(self) -> usize {
        match self {
            Stratum::OffDelta => 4,
            Stratum::OnDeltaSmooth => 3,
            Stratum::OnSigma => 2,
        }
    }
}

/// A point of `P^3`, scaled so its first nonzero coordinate is 1, with its
/// stratum. `gram_rank` is filled in by [`FiberSample::checked`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSample {
    pub y: [u64; 4],
    pub stratum: Stratum,
    pub gram_rank: Option<usize>,
}

impl FiberSample {
    /// Tags `y` with the stratum it lies in.
    pub fn classify(delta: &DiscriminantSurface, y: &[u64]) -> Result<FiberSample> {
        let y = normalize(delta.field(), y)?;
        let stratum = if delta.eval(&y) != 0 {
            Stratum::OffDelta
        } else if delta.is_smooth_at(&y) {
            Stratum::OnDeltaSmooth
        } else {
            Stratum::OnSigma
        };
        Ok(FiberSample {
            y,
            stratum,
            gram_rank: None,
        })
    }

    /// An explicitly supplied singular point of `Δ`.
    pub fn on_sigma(delta: &DiscriminantSurface, y: &[u64]) -> Result<FiberSample> {
        let s = FiberSample::classify(delta, y)?;
        if s.stratum != Stratum::OnSigma {
            return Err(Error::Precondition(format!(
                "{:?} is not a singular point of the discriminant",
                s.y
            )));
        }
        Ok(s)
    }

    /// Computes the fiber rank and records it.
    pub fn checked(mut self, d: &CubicData) -> Result<FiberSample> {
        self.gram_rank = Some(fiber_rank_check(d, &self)?);
        Ok(self)
    }
}

fn normalize(field: PrimeField, y: &[u64]) -> Result<[u64; 4]> {
    let y: [u64; 4] = y
        .try_into()
        .map_err(|_| Error::ArityMismatch(format!("point of length {} in P^3", y.len())))?;
    let lead = *y.iter().find(|&&c| c != 0).ok_or(Error::ZeroPoint)?;
    let inv = field.inv(lead)?;
    Ok(y.map(|c| field.mul(field.reduce(c), inv)))
}

fn random_point(field: PrimeField, rng: &mut Prng, n: usize) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..n).map(|_| rng.below(field.modulus())).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn independent(field: PrimeField, u: &[u64], v: &[u64]) -> bool {
    FpMatrix::from_rows(field, &[u.to_vec(), v.to_vec()]).rank() == 2
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    Ok(())
}

/// `n` seeded points with `Δ(y) != 0`, by rejection sampling.
pub fn sample_off_delta(delta: &DiscriminantSurface, seed: u64, n: usize) -> Result<Vec<FiberSample>> {
    check_count(n)?;
    let field = delta.field();
    let mut rng = Prng::new(derive_seed(seed, streams::OFF_DELTA));
    let max_attempts = 100 * n + 1000;
    let mut out = Vec::with_capacity(n);
    for _ in 0..max_attempts {
        let s = FiberSample::classify(delta, &random_point(field, &mut rng, 4))?;
        if s.stratum == Stratum::OffDelta {
            out.push(s);
            if out.len() == n {
                return Ok(out);
            }
        }
    }
    Err(Error::SamplingExhausted(max_attempts))
}

/// `n` distinct rational points of `Δ` where some partial is nonzero, found on
/// seeded random lines of `P^3`.
pub fn sample_on_delta(delta: &DiscriminantSurface, seed: u64, n: usize) -> Result<Vec<FiberSample>> {
    check_count(n)?;
    let field = delta.field();
    let mut rng = Prng::new(derive_seed(seed, streams::ON_DELTA));
    let max_lines = 50 * n + 100;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    for _ in 0..max_lines {
        let a = random_point(field, &mut rng, 4);
        let b = random_point(field, &mut rng, 4);
        if !independent(field, &a, &b) {
            continue;
        }
        let restricted = delta.delta().restrict_to_line(&a, &b)?;
        if restricted.is_zero() {
            continue;
        }
        for t in restricted.fp_roots(rng.next_u64()) {
            let y: Vec<u64> = a.iter().zip(&b).map(|(&ai, &bi)| field.add(ai, field.mul(t, bi))).collect();
            let s = FiberSample::classify(delta, &y)?;
            if s.stratum == Stratum::OnDeltaSmooth && seen.insert(s.y) {
                out.push(s);
                if out.len() == n {
                    return Ok(out);
                }
            }
        }
    }
    Err(Error::SamplingExhausted(max_lines))
}

/// Rank of the fiber Gram matrix over `s.y`, checked against the stratum.
pub fn fiber_rank_check(d: &CubicData, s: &FiberSample) -> Result<usize> {
    let rank = d.fiber_gram(&s.y)?.rank();
    let expected = s.stratum.expected_rank();
    if rank != expected {
        return Err(Error::StratumViolation {
            stratum: s.stratum.as_str(),
            expected,
            found: rank,
        });
    }
    Ok(rank)
}

/// Root count of `a t^2 + b t + c` on the projective line, with multiplicity
/// over the algebraic closure, split into the affine part and the point
/// `t = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub affine: usize,
    pub at_infinity: usize,
}

impl Intersection {
    /// `None` when the quadratic vanishes identically.
    pub fn of_quadratic(a: u64, b: u64, c: u64) -> Option<Intersection> {
        let affine = if a != 0 {
            2
        } else if b != 0 {
            1
        } else if c != 0 {
            0
        } else {
            return None;
        };
        Some(Intersection {
            affine,
            at_infinity: 2 - affine,
        })
    }

    pub fn total(self) -> usize {
        self.affine + self.at_infinity
    }
}

/// Intersection of the quadric with Gram matrix `form` with the line through
/// `u` and `v`, or `None` if the line lies on the quadric or `u, v` are
/// dependent.
pub fn restrict_quadric(form: &FpMatrix, u: &[u64], v: &[u64]) -> Option<Intersection> {
    let field = form.field();
    if !independent(field, u, v) {
        return None;
    }
    let a = form.bilinear(v, v);
    let b = field.mul(2, form.bilinear(u, v));
    let c = form.bilinear(u, u);
    Intersection::of_quadratic(a, b, c)
}

/// Intersection number of the quadric with the first usable line from
/// `lines`, trying at most `max_attempts` of them.
pub fn pairing_over_lines<I>(form: &FpMatrix, lines: I, max_attempts: usize) -> Result<usize>
where
    I: IntoIterator<Item = (Vec<u64>, Vec<u64>)>,
{
    for (u, v) in lines.into_iter().take(max_attempts) {
        if let Some(hit) = restrict_quadric(form, &u, &v) {
            return Ok(hit.total());
        }
    }
    Err(Error::SamplingExhausted(max_attempts))
}

fn seeded_lines(field: PrimeField, n: usize, seed: u64) -> impl Iterator<Item = (Vec<u64>, Vec<u64>)> {
    let mut rng = Prng::new(derive_seed(seed, streams::LINES));
    std::iter::repeat_with(move || (random_point(field, &mut rng, n), random_point(field, &mut rng, n)))
}

fn require_off_delta(d: &CubicData, y: &[u64]) -> Result<FpMatrix> {
    let q = d.fiber_gram(y)?;
    if q.det()? == 0 {
        return Err(Error::Precondition("point lies on the discriminant".into()));
    }
    Ok(q)
}

/// Intersection number of the fiber quadric over `y` with a seeded line.
pub fn line_quadric_pairing(d: &CubicData, y: &[u64], seed: u64) -> Result<usize> {
    let q = require_off_delta(d, y)?;
    pairing_over_lines(&q, seeded_lines(d.field(), 4, seed), PAIRING_ATTEMPTS)
}

fn nondegenerate_conic(d: &CubicData, y: &[u64]) -> Result<FpMatrix> {
    let conic = d.exceptional_conic(y)?;
    if conic.rank() < 2 {
        return Err(Error::Precondition("exceptional conic has rank below 2".into()));
    }
    Ok(conic)
}

/// Intersection number of the exceptional conic over `y` with a seeded line
/// of the plane.
pub fn conic_line_pairing(d: &CubicData, y: &[u64], seed: u64) -> Result<usize> {
    let conic = nondegenerate_conic(d, y)?;
    pairing_over_lines(&conic, seeded_lines(d.field(), 3, seed), PAIRING_ATTEMPTS)
}

/// The three generator pairings on one fiber.
///
/// `pairing_h2` and `pairing_pl` are computed on `lines` independent line
/// choices each; `pairing_qpi` is the recorded constant 0 and is not
/// computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCertificate {
    pub y: [u64; 4],
    pub pairing_h2: usize,
    pub pairing_pl: usize,
    pub pairing_qpi: usize,
    pub lines: usize,
    pub constant_across_lines: bool,
    pub all_even: bool,
}

impl PairingCertificate {
    pub const QPI_SOURCE: &'static str = "paper";
}

pub fn pairing_certificate(d: &CubicData, y: &[u64], seed: u64) -> Result<PairingCertificate> {
    pairing_certificate_with_lines(d, y, seed, LINES_PER_FIBER)
}

pub fn pairing_certificate_with_lines(d: &CubicData, y: &[u64], seed: u64, lines: usize) -> Result<PairingCertificate> {
    check_count(lines)?;
    let y = normalize(d.field(), y)?;
    require_off_delta(d, &y)?;
    nondegenerate_conic(d, &y)?;
    let base = derive_seed(seed, streams::PAIRING);
    let mut h2 = Vec::with_capacity(lines);
    let mut pl = Vec::with_capacity(lines);
    for k in 0..lines {
        let s = derive_seed(base, k as u64);
        h2.push(line_quadric_pairing(d, &y, s)?);
        pl.push(conic_line_pairing(d, &y, s)?);
    }
    let constant_across_lines = h2.iter().all(|&v| v == h2[0]) && pl.iter().all(|&v| v == pl[0]);
    let (pairing_h2, pairing_pl, pairing_qpi) = (h2[0], pl[0], 0);
    Ok(PairingCertificate {
        y,
        pairing_h2,
        pairing_pl,
        pairing_qpi,
        lines,
        constant_across_lines,
        all_even: [pairing_h2, pairing_pl, pairing_qpi].iter().all(|v| v % 2 == 0),
    })
}
