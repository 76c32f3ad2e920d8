//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cohint::bps::{bps_character, rank1_conjecture_check, verify_integrality, BpsEngine, EngineOptions};
use cohint::group_rep::SymmetricRep;
use cohint::poset::build_poset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::props;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn series(v: &[(i64, i64)]) -> BTreeMap<i64, i64> {
    v.iter().copied().collect()
}

fn all_residuals_zero(r: &cohint::bps::IntegralityReport) -> Outcome {
    let bad: Vec<_> = r.residual.iter().filter(|(_, &v)| v != 0).collect();
    check(r.pass && bad.is_empty(), || format!("nonzero residual {bad:?}"))
}

fn golden(weights: &[i64], expected: BTreeMap<i64, i64>) -> Outcome {
    let start = Instant::now();
    let pair = common::torus1(weights);
    let classes = build_poset(&pair).map_err(|e| e.to_string())?.classes.len();
    check(classes == 2, || format!("{classes} classes"))?;
    let p = bps_character(&pair, 21).map_err(|e| e.to_string())?.p_char.dims();
    check(p == expected, || format!("P dims {p:?}"))?;
    let report = verify_integrality(&pair, 21).map_err(|e| e.to_string())?;
    check(report.verified_to == 21 && *report.residual.keys().last().unwrap() == 21, || "window".into())?;
    all_residuals_zero(&report)?;
    within(start.elapsed(), Duration::from_secs(1))
}

/// Closed form for a rank-1 torus: one dimension in each degree
/// `-(dim V - 1 - 2j)` for `j < #positive weights`.
fn rank1_oracle(weights: &[i64]) -> BTreeMap<i64, i64> {
    let g = weights.iter().filter(|&&k| k > 0).count() as i64;
    let n = weights.len() as i64;
    (0..g).map(|j| (-(n - 1 - 2 * j), 1)).collect()
}

fn random_rank1(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let pairs = rng.gen_range(1..=6usize);
    let zeros = rng.gen_range(0..=12 - 2 * pairs);
    let mut ws = vec![0; zeros];
    for _ in 0..pairs {
        let k = rng.gen_range(1..=5i64);
        ws.push(k);
        ws.push(-k);
    }
    ws
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_417);
    for _ in 0..20 {
        let ws = random_rank1(&mut rng);
        let report = rank1_conjecture_check(&SymmetricRep::rank_one(&ws), 21).map_err(|e| e.to_string())?;
        let oracle = rank1_oracle(&ws);
        check(report.matches && report.computed == oracle, || format!("{ws:?}: computed {:?}", report.computed))?;
        let total: i64 = report.computed.values().sum();
        let positive = ws.iter().filter(|&&k| k > 0).count() as i64;
        check(total == positive, || format!("{ws:?}: total {total}"))?;
        all_residuals_zero(&verify_integrality(&common::torus1(&ws), 21).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{ws:?}: {e}"))?;
    }
    within(start.elapsed(), Duration::from_secs(10))
}

/// Coefficients of `1/((1-t^2)(1-t^4))` up to `t^cutoff`.
fn gl2_series(cutoff: i64) -> BTreeMap<i64, i64> {
    (0..=cutoff)
        .filter_map(|n| {
            let count = (0..=n / 4).filter(|j| (n - 4 * j) % 2 == 0).count() as i64;
            (n % 2 == 0 && count > 0).then_some((n, count))
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let pair = common::gl2_adjoint();
    let p = bps_character(&pair, 20).map_err(|e| e.to_string())?;
    check(!p.stable && p.p_char.dims().is_empty(), || format!("P_triv {:?}", p.p_char.dims()))?;
    let report = verify_integrality(&pair, 20).map_err(|e| e.to_string())?;
    let regular = report
        .contributions
        .iter()
        .find(|c| c.root_key.is_empty())
        .ok_or_else(|| "no regular class".to_string())?;
    check(regular.dims == gl2_series(20), || format!("regular contribution {:?}", regular.dims))?;
    check(report.target_series == gl2_series(20), || "target".into())?;
    all_residuals_zero(&report)?;
    within(start.elapsed(), Duration::from_secs(2))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for (name, pair) in common::all_fixtures() {
        for (label, result) in props::all(&pair) {
            result.map_err(|e| format!("{name} {label}: {e}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))
}

fn criterion_6() -> Outcome {
    let engine = BpsEngine::new(EngineOptions { corrupt_kernel: true, ..Default::default() });
    let report = engine.verify_integrality(&common::tcc(), 21).map_err(|e| e.to_string())?;
    let nonzero = report.residual.values().filter(|&&v| v != 0).count();
    check(!report.pass && nonzero > 0, || "corrupted kernel still passes".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 T*C golden, cutoff 21", || golden(&[1, -1], series(&[(-1, 1)]))),
        ("2 T*C^2 golden, cutoff 21", || golden(&[1, 1, -1, -1], series(&[(-3, 1), (-1, 1)]))),
        ("3 rank-1 battery, 20 seeded multisets", criterion_3),
        ("4 gl2 adjoint, cutoff 20", criterion_4),
        ("5 property suite (a)-(h)", criterion_5),
        ("6 corrupted kernel negative control", criterion_6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS  criterion {name} ({:.3}s)", start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
