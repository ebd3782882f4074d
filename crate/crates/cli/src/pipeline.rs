use std::collections::BTreeMap;
use std::time::Instant;

use sextic_core::bundle::{smoothness_spotcheck, CubicData, DiscriminantSurface};
use sextic_core::fibers::{
    fiber_rank_check, pairing_certificate_with_lines, sample_off_delta, sample_on_delta, FiberSample, Stratum,
};
use sextic_core::groebner::GbOptions;
use sextic_core::rng::derive_seed;
use sextic_core::singular::{
    double_solid_census_in_chart, node_census_in_chart, strata_check_in_chart, NodeCensus, Verdict,
};
use sextic_core::Error;

use crate::config::{Check, RunConfig};
use crate::error::CliError;
use crate::report::*;

/// Stream label for the off-discriminant points used by the pairing check.
const PAIRING_POINTS: u64 = 0x5041_4952;

/// Splits core errors into hard failures (budget) and check failures.
fn soft<T>(r: sextic_core::Result<T>) -> Result<Result<T, String>, CliError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ Error::ResourceBudgetExceeded(_)) => Err(e.into()),
        Err(e) => Ok(Err(e.to_string())),
    }
}

/// The instance for retry `attempt`: seed `seed + attempt`, or the instance
/// file (which admits a single attempt).
pub fn load_instance(cfg: &RunConfig, attempt: usize) -> Result<CubicData, CliError> {
    match &cfg.instance_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(CubicData::from_text(&text)?)
        }
        None => Ok(CubicData::random(cfg.prime, cfg.seed.wrapping_add(attempt as u64))?),
    }
}

struct Stage {
    data: CubicData,
    delta: Option<DiscriminantSurface>,
    nodes: Option<NodeCensus>,
    attempts: Vec<AttemptReport>,
}

fn census_stage(cfg: &RunConfig, opts: &GbOptions) -> Result<Stage, CliError> {
    let max_attempts = if cfg.instance_file.is_some() { 1 } else { cfg.retries + 1 };
    let mut attempts = Vec::new();
    let mut last = None;
    for attempt in 0..max_attempts {
        let data = load_instance(cfg, attempt)?;
        let mut report = AttemptReport {
            instance_seed: data.seed().map(|s| s.to_string()),
            fingerprint: data.fingerprint().to_string(),
            verdict: Verdict::Degenerate.as_str().to_string(),
        };
        let delta = match data.discriminant() {
            Ok(delta) => delta,
            Err(Error::DegenerateDiscriminant) => {
                attempts.push(report);
                last = Some((data, None, None));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let nodes = node_census_in_chart(&delta, cfg.seed, opts)?;
        report.verdict = nodes.report.verdict.as_str().to_string();
        attempts.push(report);
        let generic = nodes.report.is_generic();
        last = Some((data, Some(delta), Some(nodes)));
        if generic {
            break;
        }
    }
    let (data, delta, nodes) = last.expect("at least one attempt");
    Ok(Stage {
        data,
        delta,
        nodes,
        attempts,
    })
}

fn outcome(check: Check, passed: bool, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name: check.name().to_string(),
        passed,
        detail: detail.into(),
    }
}

fn rank_of(d: &CubicData, s: &FiberSample) -> Result<usize, CliError> {
    match soft(fiber_rank_check(d, s))? {
        Ok(r) => Ok(r),
        Err(_) => Ok(d.fiber_gram(&s.y)?.rank()),
    }
}

fn fibers_check(
    cfg: &RunConfig,
    d: &CubicData,
    delta: &DiscriminantSurface,
) -> Result<(Option<FibersSection>, CheckOutcome), CliError> {
    let check = Check::Fibers;
    let off = match soft(sample_off_delta(delta, cfg.seed, cfg.n_samples))? {
        Ok(s) => s,
        Err(e) => return Ok((None, outcome(check, false, format!("off-discriminant sampling: {e}")))),
    };
    let on = match soft(sample_on_delta(delta, cfg.seed, cfg.n_samples))? {
        Ok(s) => s,
        Err(e) => return Ok((None, outcome(check, false, format!("discriminant sampling: {e}")))),
    };
    let off_ranks = off.iter().map(|s| rank_of(d, s)).collect::<Result<Vec<_>, _>>()?;
    let on_ranks = on.iter().map(|s| rank_of(d, s)).collect::<Result<Vec<_>, _>>()?;
    let mut sigma_ranks = Vec::new();
    for y in &cfg.sigma_points {
        match soft(FiberSample::on_sigma(delta, y))? {
            Ok(s) => sigma_ranks.push(rank_of(d, &s)?),
            Err(e) => return Ok((None, outcome(check, false, format!("supplied singular point: {e}")))),
        }
    }
    let section = FibersSection {
        off_delta: StratumTally::new(Stratum::OffDelta.expected_rank(), &off_ranks),
        on_delta_smooth: StratumTally::new(Stratum::OnDeltaSmooth.expected_rank(), &on_ranks),
        on_sigma: (!cfg.sigma_points.is_empty())
            .then(|| StratumTally::new(Stratum::OnSigma.expected_rank(), &sigma_ranks)),
    };
    let violations = [&section.off_delta, &section.on_delta_smooth]
        .into_iter()
        .chain(section.on_sigma.as_ref())
        .map(|t| t.violations.parse::<usize>().expect("decimal"))
        .sum::<usize>();
    let detail = format!(
        "{} off, {} on, {} singular samples; {violations} rank violations",
        off.len(),
        on.len(),
        sigma_ranks.len()
    );
    Ok((Some(section), outcome(check, violations == 0, detail)))
}

fn pairings_check(
    cfg: &RunConfig,
    d: &CubicData,
    delta: &DiscriminantSurface,
) -> Result<(Option<PairingsSection>, CheckOutcome), CliError> {
    let check = Check::Pairings;
    let pool = 2 * cfg.n_samples + 10;
    let points = match soft(sample_off_delta(delta, derive_seed(cfg.seed, PAIRING_POINTS), pool))? {
        Ok(s) => s,
        Err(e) => return Ok((None, outcome(check, false, format!("sampling: {e}")))),
    };
    let mut patterns: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let (mut done, mut even, mut constant, mut skipped) = (0usize, 0usize, 0usize, 0usize);
    for (k, s) in points.iter().enumerate() {
        if done == cfg.n_samples {
            break;
        }
        match soft(pairing_certificate_with_lines(d, &s.y, derive_seed(cfg.seed, k as u64), cfg.lines_per_fiber))? {
            Ok(c) => {
                done += 1;
                *patterns.entry((c.pairing_h2, c.pairing_pl, c.pairing_qpi)).or_default() += 1;
                even += c.all_even as usize;
                constant += c.constant_across_lines as usize;
            }
            Err(_) => skipped += 1,
        }
    }
    let section = PairingsSection {
        certificates: done.to_string(),
        lines_per_fiber: cfg.lines_per_fiber.to_string(),
        patterns: patterns
            .iter()
            .map(|(&(a, b, c), n)| (format!("{a},{b},{c}"), n.to_string()))
            .collect(),
        all_even: even.to_string(),
        constant_across_lines: constant.to_string(),
        skipped_degenerate_conics: skipped.to_string(),
        pairing_qpi_source: sextic_core::fibers::PairingCertificate::QPI_SOURCE.to_string(),
    };
    let expected_only = patterns.keys().all(|&p| p == (2, 2, 0));
    let passed = done == cfg.n_samples && even == done && constant == done && expected_only;
    let detail = format!("{done} certificates, {even} all even, {constant} constant across lines");
    Ok((Some(section), outcome(check, passed, detail)))
}

/// Runs every check in `cfg` and assembles the report.
pub fn run_verify_all(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let opts = GbOptions::with_budget(cfg.budget);
    let checks = cfg.normalized_checks();
    let mut timings: BTreeMap<String, String> = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, String>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis().to_string());
        clock = Instant::now();
    };

    let stage = if cfg.needs_census() {
        census_stage(cfg, &opts)?
    } else {
        let data = load_instance(cfg, 0)?;
        let attempt = AttemptReport {
            instance_seed: data.seed().map(|s| s.to_string()),
            fingerprint: data.fingerprint().to_string(),
            verdict: "not_run".to_string(),
        };
        Stage {
            data,
            delta: None,
            nodes: None,
            attempts: vec![attempt],
        }
    };
    lap("census", &mut timings);

    let data = &stage.data;
    let instance = InstanceReport {
        source: if cfg.instance_file.is_some() { "file" } else { "seed" }.to_string(),
        prime: data.field().modulus().to_string(),
        seed: data.seed().map(|s| s.to_string()),
        fingerprint: data.fingerprint().to_string(),
        attempts: stage.attempts.clone(),
    };
    let mut report = VerificationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        config: ConfigEcho::new(cfg),
        instance,
        census: None,
        strata: None,
        double_solid: None,
        fibers: None,
        pairings: None,
        smoothness: None,
        checks: Vec::new(),
        verdict: String::new(),
        timings_ms: None,
    };

    let generic = stage.nodes.as_ref().filter(|n| n.report.is_generic());
    let refuse = |check: Check| {
        let verdict = stage
            .nodes
            .as_ref()
            .map_or("degenerate discriminant", |n| n.report.verdict.as_str());
        outcome(
            check,
            false,
            format!("requires a generic node census; got {verdict} after {} attempts", stage.attempts.len()),
        )
    };

    for check in checks {
        let result = match check {
            Check::Census => {
                if let Some(n) = &stage.nodes {
                    report.census = Some(CensusSection::from(&n.report));
                }
                match generic {
                    Some(n) => outcome(
                        check,
                        true,
                        format!("degree {}, reducedness {}", n.report.degree.unwrap_or(0), n.report.reduced.as_str()),
                    ),
                    None => refuse(check),
                }
            }
            Check::Strata => match generic {
                None => refuse(check),
                Some(n) => match soft(strata_check_in_chart(data, n, &opts))? {
                    Ok(s) => {
                        report.strata = Some(StrataSection::from(&s));
                        let detail = format!(
                            "rank2_equals_sigma {}, rank1_empty {}, delta_in_rank2_ideal {}",
                            s.rank2_equals_sigma, s.rank1_empty, s.delta_in_rank2_ideal
                        );
                        outcome(check, s.passed(), detail)
                    }
                    Err(e) => outcome(check, false, e),
                },
            },
            Check::DoubleSolid => match generic {
                None => refuse(check),
                Some(n) => match soft(double_solid_census_in_chart(n, &opts))? {
                    Ok(r) => {
                        report.double_solid = Some(CensusSection::from(&r));
                        let passed = r.is_generic() && r.degree == n.report.degree;
                        let degree = r.degree.map_or("none".to_string(), |d| d.to_string());
                        outcome(check, passed, format!("degree {degree}, reducedness {}", r.reduced.as_str()))
                    }
                    Err(e) => outcome(check, false, e),
                },
            },
            Check::Fibers => match generic {
                None => refuse(check),
                Some(_) => {
                    let (section, o) = fibers_check(cfg, data, stage.delta.as_ref().expect("census ran"))?;
                    report.fibers = section;
                    o
                }
            },
            Check::Pairings => match generic {
                None => refuse(check),
                Some(_) => {
                    let (section, o) = pairings_check(cfg, data, stage.delta.as_ref().expect("census ran"))?;
                    report.pairings = section;
                    o
                }
            },
            Check::Smoothness => match soft(smoothness_spotcheck(data, cfg.n_samples, cfg.seed))? {
                Ok(s) => {
                    report.smoothness = Some(SmoothnessSection::from(&s));
                    let detail = format!("{} points, {} singular", s.points_tested, s.failures);
                    outcome(check, s.passed(), detail)
                }
                Err(e) => outcome(check, false, e),
            },
        };
        report.checks.push(result);
        lap(check.name(), &mut timings);
    }

    report.verdict = if report.checks.iter().all(|c| c.passed) { "pass" } else { "fail" }.to_string();
    if cfg.timings {
        report.timings_ms = Some(timings);
    }
    Ok(report)
}

/// Runs one named check; its prerequisites run but only its section is
/// reported.
pub fn run_single(cfg: &RunConfig, check: &str) -> Result<VerificationReport, CliError> {
    let check: Check = check.parse()?;
    run_verify_all(&cfg.clone().with_checks(&[check]))
}
