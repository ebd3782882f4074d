//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod oracles;

use std::process::Command;
use std::time::{Duration, Instant};

use sextic_core::bundle::{y_names, CubicData};
use sextic_core::exactalg::{FpMatrix, PrimeField};
use sextic_core::fibers::{
    fiber_rank_check, pairing_certificate_with_lines, sample_off_delta, sample_on_delta, LINES_PER_FIBER,
};
use sextic_core::groebner::GbOptions;
use sextic_core::multipoly::{det, parse_poly, MonomialOrder, MultiPoly};
use sextic_core::rng::{derive_seed, Prng};
use sextic_core::singular::{
    double_solid_census_in_chart, node_census_in_chart, strata_check_in_chart, NodeCensus, Reducedness, Verdict,
};

const P: u64 = 32003;
const BIN: &str = env!("CARGO_BIN_EXE_sextic");

struct Line {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

struct Passing {
    data: CubicData,
    nodes: NodeCensus,
}

fn node_census_criterion(passing: &mut Vec<Passing>) -> Line {
    let opts = GbOptions::default();
    let mut slowest = Duration::ZERO;
    let mut silent_wrong = 0;
    for seed in 0..10 {
        let data = CubicData::random(P, seed).unwrap();
        let start = Instant::now();
        let nodes = node_census_in_chart(&data.discriminant().unwrap(), seed, &opts).unwrap();
        slowest = slowest.max(start.elapsed());
        let r = &nodes.report;
        let ok = r.degree == Some(31) && r.reduced == Reducedness::Certified && !r.points_at_infinity;
        if ok && r.verdict == Verdict::Generic31Nodes {
            passing.push(Passing { data, nodes });
        } else if r.verdict == Verdict::Generic31Nodes || (r.degree != Some(31) && r.verdict != Verdict::Degenerate) {
            silent_wrong += 1;
        }
    }
    Line {
        id: 1,
        name: "node census",
        passed: passing.len() >= 9 && slowest < Duration::from_secs(60) && silent_wrong == 0,
        detail: format!(
            "{}/10 seeds with 31 certified nodes, slowest census {:.3}s, {silent_wrong} mislabelled",
            passing.len(),
            slowest.as_secs_f64()
        ),
    }
}

fn double_solid_criterion(passing: &[Passing]) -> Line {
    let ok = passing
        .iter()
        .filter(|p| {
            let r = double_solid_census_in_chart(&p.nodes, &GbOptions::default()).unwrap();
            r.degree == Some(31) && r.reduced == Reducedness::Certified
        })
        .count();
    Line {
        id: 2,
        name: "double-solid census",
        passed: !passing.is_empty() && ok == passing.len(),
        detail: format!("{ok}/{} instances with 31 certified nodes", passing.len()),
    }
}

fn strata_criterion(passing: &[Passing]) -> Line {
    let (mut strata, mut exact) = (0, 0);
    for p in passing {
        let s = strata_check_in_chart(&p.data, &p.nodes, &GbOptions::default()).unwrap();
        strata += (s.rank2_equals_sigma && s.rank1_empty) as usize;
        exact += s.delta_in_rank2_ideal as usize;
    }
    Line {
        id: 3,
        name: "rank stratification",
        passed: !passing.is_empty() && strata == passing.len() && exact == passing.len(),
        detail: format!(
            "strata {strata}/{n}, discriminant in 3x3-minor ideal {exact}/{n}",
            n = passing.len()
        ),
    }
}

fn fiber_rank_criterion(passing: &[Passing]) -> Line {
    let (mut off_total, mut on_total, mut exceptions) = (0, 0, 0);
    for (k, p) in passing.iter().enumerate() {
        let delta = p.data.discriminant().unwrap();
        let off = sample_off_delta(&delta, k as u64, 100).unwrap();
        let on = sample_on_delta(&delta, k as u64, 100).unwrap();
        off_total += off.len();
        on_total += on.len();
        exceptions += off.iter().chain(&on).filter(|s| fiber_rank_check(&p.data, s).is_err()).count();
    }
    let n = passing.len();
    Line {
        id: 4,
        name: "fiber ranks",
        passed: n > 0 && off_total >= 100 * n && on_total >= 100 * n && exceptions == 0,
        detail: format!("{off_total} rank-4 and {on_total} rank-3 samples over {n} instances, {exceptions} exceptions"),
    }
}

fn pairing_criterion(passing: &[Passing]) -> Line {
    let (mut good, mut total) = (0, 0);
    for (k, p) in passing.iter().enumerate() {
        let delta = p.data.discriminant().unwrap();
        let points = sample_off_delta(&delta, derive_seed(k as u64, 99), 150).unwrap();
        let mut done = 0;
        for (j, s) in points.iter().enumerate() {
            if done == 100 {
                break;
            }
            let Ok(c) = pairing_certificate_with_lines(&p.data, &s.y, j as u64, LINES_PER_FIBER) else {
                continue;
            };
            done += 1;
            good += ((c.pairing_h2, c.pairing_pl, c.pairing_qpi) == (2, 2, 0) && c.all_even && c.constant_across_lines)
                as usize;
        }
        total += done;
    }
    let n = passing.len();
    Line {
        id: 5,
        name: "pairing certificates",
        passed: n > 0 && total == 100 * n && good == total,
        detail: format!("{good}/{total} certificates equal to (2, 2, 0) over {LINES_PER_FIBER} lines each"),
    }
}

fn degenerate_criterion() -> Line {
    let d = CubicData::diagonal_example(P).unwrap();
    let delta = d.discriminant().unwrap();
    let expected = parse_poly("Y0*Y1*Y2*Y3^3", &y_names(), d.field(), MonomialOrder::Grevlex).unwrap();
    let exact = delta.delta() == &expected;
    let r = node_census_in_chart(&delta, 0, &GbOptions::default()).unwrap().report;
    let census_ok = !r.zero_dimensional && r.verdict == Verdict::Degenerate;

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diagonal.txt");
    std::fs::write(&path, d.to_text()).unwrap();
    let code = Command::new(BIN)
        .args(["census", "--instance", path.to_str().unwrap()])
        .output()
        .unwrap()
        .status
        .code();
    Line {
        id: 6,
        name: "degenerate input",
        passed: exact && census_ok && code == Some(1),
        detail: format!(
            "discriminant exact {exact}, census {} (zero-dimensional {}), exit code {code:?}",
            r.verdict.as_str(),
            r.zero_dimensional
        ),
    }
}

fn kernel_criterion() -> Line {

    let f101 = PrimeField::new(101).unwrap();
    let mut rng = Prng::new(1234);
    let (mut nf_cases, mut nf_bad) = (0, 0);
    while nf_cases < 1000 {
        let n = 2 + rng.below(2) as usize;
        let gens: Vec<MultiPoly> = (0..1 + rng.below(3)).map(|_| oracles::random_poly(f101, n, &mut rng, 4, 3)).collect();
        if gens.iter().all(MultiPoly::is_zero) {
            continue;
        }
        let gb = oracles::groebner(gens);
        for _ in 0..10 {
            let target = oracles::random_poly(f101, n, &mut rng, 8, 5);
            nf_bad += (oracles::random_order_reduction(&target, &gb, &mut rng) != gb.normal_form(&target).unwrap()) as usize;
            nf_cases += 1;
        }
    }

    let f = PrimeField::new(P).unwrap();
    let mut rng = Prng::new(2718);
    let (mut qd_cases, mut qd_bad) = (0, 0);
    let shapes: [(usize, &[u32]); 10] = [
        (2, &[1, 2]),
        (2, &[2, 2]),
        (2, &[2, 3]),
        (2, &[3, 3]),
        (2, &[1, 4]),
        (2, &[2, 4]),
        (3, &[1, 1, 2]),
        (3, &[2, 2, 2]),
        (3, &[1, 2, 3]),
        (3, &[2, 2, 3]),
    ];
    for (n, degs) in shapes {
        for _ in 0..2 {
            let gens: Vec<MultiPoly> = degs.iter().map(|&d| oracles::dense_poly(f, n, &mut rng, d)).collect();
            let gb = oracles::groebner(gens.clone());
            if gb.is_zero_dimensional() {
                qd_cases += 1;
                qd_bad += (gb.quotient_dim().unwrap() != oracles::macaulay_oracle(&gens)) as usize;
            }
        }
    }

    let (mut det_cases, mut det_bad) = (0, 0);
    for seed in 0..6 {
        let entries = CubicData::random(P, seed).unwrap().gram_matrix().entries().clone();
        det_bad += (det(&entries).unwrap() != oracles::permutation_determinant(&entries)) as usize;
        det_cases += 1;
    }

    let (mut ch_cases, mut ch_bad) = (0, 0);
    let mut rng = Prng::new(31415);
    for size in 1..=6 {
        for _ in 0..50 {
            let rows: Vec<Vec<u64>> = (0..size).map(|_| (0..size).map(|_| rng.below(P)).collect()).collect();
            let m = FpMatrix::from_rows(f, &rows);
            ch_bad += !m.charpoly().unwrap().eval_matrix(&m).is_zero() as usize;
            ch_cases += 1;
        }
    }
    let passed = nf_bad == 0
        && qd_bad == 0
        && det_bad == 0
        && ch_bad == 0
        && nf_cases >= 1000
        && qd_cases >= 20
        && det_cases >= 5;
    Line {
        id: 7,
        name: "kernel oracles",
        passed,
        detail: format!(
            "normal form {nf_bad}/{nf_cases} mismatches, quotient dimension {qd_bad}/{qd_cases}, \
             determinant {det_bad}/{det_cases}, Cayley-Hamilton {ch_bad}/{ch_cases}"
        ),
    }
}

fn determinism_criterion() -> Line {
    let run = |seed: &str| {
        Command::new(BIN)
            .args(["verify", "--seed", seed])
            .output()
            .unwrap()
    };
    let (a, b, c) = (run("0"), run("0"), run("1"));
    let fingerprint = |o: &std::process::Output| {
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["instance"]["fingerprint"].as_str().unwrap().to_string()
    };
    let identical = !a.stdout.is_empty() && a.stdout == b.stdout;
    let changed = fingerprint(&a) != fingerprint(&c);
    Line {
        id: 8,
        name: "determinism",
        passed: identical && changed && a.status.code() == Some(0),
        detail: format!("identical reports {identical}, fingerprint changes with seed {changed}"),
    }
}

fn degree_criterion() -> Line {
    let ok = (0..100)
        .filter(|&seed| {
            let d = CubicData::random(P, seed).unwrap();
            let gram = d.gram_matrix();
            gram.degree_pattern_ok() && gram.determinant().homogeneous_degree() == Some(6)
        })
        .count();
    Line {
        id: 9,
        name: "degree bookkeeping",
        passed: ok == 100,
        detail: format!("{ok}/100 seeded Gram matrices with weights (1, 1, 1, 2) and a sextic determinant"),
    }
}

fn main() {
    let mut passing = Vec::new();
    let lines = vec![
        node_census_criterion(&mut passing),
        double_solid_criterion(&passing),
        strata_criterion(&passing),
        fiber_rank_criterion(&passing),
        pairing_criterion(&passing),
        degenerate_criterion(),
        kernel_criterion(),
        determinism_criterion(),
        degree_criterion(),
    ];
    for l in &lines {
        let status = if l.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {status} {}: {}", l.id, l.name, l.detail);
    }
    if lines.iter().any(|l| !l.passed) {
        std::process::exit(1);
    }
}
