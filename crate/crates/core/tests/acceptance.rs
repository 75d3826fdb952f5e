//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when
//! any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::{pdf_or_zero, rel_err, representatives, s_grid, total_mass};
use record_aging::numerics::{integrate_adaptive, monotone_grid_test, Direction, GridSpec, MONOTONE_SLACK};
use record_aging::orders::estimate_limits;
use record_aging::records::{k_ratio, log_xi, psi, xi};
use record_aging::sim::{ks_critical_1pct, ks_distance, ks_two_sample, ks_two_sample_critical_1pct, sample_records};
use record_aging::theorems::{
    reproduce_example, sup_psi_ratio, verify_theorem1, verify_theorem2, verify_theorem3, verify_theorem4,
    ExampleBundle,
};
use record_aging::{
    DistributionModel, ExampleId, LimitMode, Overall, RecordKind, RecordLaw, SamplingMethod, SupLocation, SupSide,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lomax_pair() -> (DistributionModel, DistributionModel) {
    ExampleId::LomaxUpper.pair()
}

fn final_pair() -> (DistributionModel, DistributionModel) {
    ExampleId::InvWeibullLower2.pair()
}

fn curve_is_monotone(bundle: &ExampleBundle, name: &str, direction: Direction, min_points: usize) -> Outcome {
    let curve = bundle
        .curves
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("no curve named {name}"))?;
    ensure!(
        curve.values.len() >= min_points,
        "{name} has {} points, fewer than {min_points}",
        curve.values.len()
    );
    let out = monotone_grid_test(&curve.values, direction, MONOTONE_SLACK);
    ensure!(out.passed, "{name} breaks {direction:?} at index {:?}", out.first_violation);
    Ok(format!("{name} {direction:?} on {} points", curve.values.len()))
}

fn criterion_1() -> Outcome {
    let r = sup_psi_ratio(2, 3, 1.5, SupSide::UpperRecords).map_err(|e| e.to_string())?;
    ensure!((r.value - 1.125).abs() <= 1e-3, "sup = {}", r.value);
    ensure!(r.location == SupLocation::BoundaryZero, "located at {:?}", r.location);
    Ok(format!("sup = {:.12} at u -> 0+", r.value))
}

fn criterion_2() -> Outcome {
    let (x, y) = final_pair();
    let limits = estimate_limits(&x, &y, LimitMode::ReversedHazard).map_err(|e| e.to_string())?;
    let r = sup_psi_ratio(2, 3, 1.0 / limits.at_zero, SupSide::LowerRecords).map_err(|e| e.to_string())?;
    ensure!((r.value - 2.0).abs() <= 1e-3, "sup = {}", r.value);
    Ok(format!("c0* = {:.12}, sup = {:.12}", limits.at_zero, r.value))
}

fn criterion_3() -> Outcome {
    let (x, y) = lomax_pair();
    let l = estimate_limits(&x, &y, LimitMode::Hazard).map_err(|e| e.to_string())?;
    ensure!(
        (l.at_zero - 1.125).abs() <= 1e-6 && (l.at_infinity - 1.5).abs() <= 1e-6,
        "Lomax limits ({}, {})",
        l.at_zero,
        l.at_infinity
    );

    let (x, y) = ExampleId::InvWeibullLower1.pair();
    let grid = GridSpec::default_order_grid()
        .restrict_to_support(&[&x, &y])
        .map_err(|e| e.to_string())?;
    for t in grid.points() {
        let ratio = x.rev_hazard(t).map_err(|e| e.to_string())? / y.rev_hazard(t).map_err(|e| e.to_string())?;
        ensure!((ratio - 0.8).abs() <= 1e-9, "rhr ratio {ratio} at t = {t}");
    }
    let li = estimate_limits(&x, &y, LimitMode::ReversedHazard).map_err(|e| e.to_string())?;
    ensure!(
        (li.at_zero - 0.8).abs() <= 1e-9 && (li.at_infinity - 0.8).abs() <= 1e-9,
        "inverse Weibull limits ({}, {})",
        li.at_zero,
        li.at_infinity
    );

    let (x, y) = final_pair();
    let lf = estimate_limits(&x, &y, LimitMode::ReversedHazard).map_err(|e| e.to_string())?;
    ensure!(
        (lf.at_zero - 2.0).abs() <= 1e-6 && (lf.at_infinity - 2.0).abs() <= 1e-6,
        "final pair limits ({}, {})",
        lf.at_zero,
        lf.at_infinity
    );
    Ok(format!(
        "({:.9}, {:.9}), ({:.12}, {:.12}), ({:.9}, {:.9})",
        l.at_zero, l.at_infinity, li.at_zero, li.at_infinity, lf.at_zero, lf.at_infinity
    ))
}

fn criterion_4() -> Outcome {
    let (x, y) = ExampleId::Erlang.pair();
    let report = verify_theorem1(&x, &y, 3, 2).map_err(|e| e.to_string())?;
    ensure!(report.overall == Overall::Pass, "overall {:?}", report.overall);
    let bundle = reproduce_example(ExampleId::Erlang).map_err(|e| e.to_string())?;
    curve_is_monotone(&bundle, "record_hazard_ratio", Direction::Increasing, 2048)
}

fn criterion_5() -> Outcome {
    let (x, y) = lomax_pair();
    let report = verify_theorem2(&x, &y, 3, 2).map_err(|e| e.to_string())?;
    ensure!(report.overall == Overall::Pass, "overall {:?}", report.overall);
    ensure!(report.boundary_equality, "boundary equality not flagged");
    let bundle = reproduce_example(ExampleId::LomaxUpper).map_err(|e| e.to_string())?;
    let curve = curve_is_monotone(&bundle, "record_hazard_ratio", Direction::Increasing, 1024)?;
    let rec = RecordLaw::upper(x, 3).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for k in 0..=1000 {
        let t = 0.01 * 10f64.powf(4.0 * k as f64 / 1000.0);
        let l = t.ln_1p();
        let closed = 27.0 * l * l / ((1.0 + t) * (2.0 + 6.0 * l + 9.0 * l * l));
        worst = worst.max(rel_err(rec.hazard(t).map_err(|e| e.to_string())?, closed));
    }
    ensure!(worst <= 1e-9, "closed-form hazard off by {worst:e}");
    Ok(format!("pass with boundary equality, {curve}, closed form within {worst:.1e}"))
}

fn criterion_6() -> Outcome {
    let (x, y) = ExampleId::InvWeibullLower1.pair();
    let report = verify_theorem3(&x, &y, 3, 2).map_err(|e| e.to_string())?;
    ensure!(report.overall == Overall::Pass, "overall {:?}", report.overall);
    let x3 = RecordLaw::lower(x, 3).map_err(|e| e.to_string())?;
    let y2 = RecordLaw::lower(y, 2).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for k in 0..=1000 {
        let t = 0.05 * 10f64.powf(3.0 * k as f64 / 1000.0);
        let t2 = t * t;
        let rx = 64.0 / (t * t2 * (t2 * t2 + 4.0 * t2 + 8.0));
        let ry = 50.0 / (t * t2 * (t2 + 5.0));
        worst = worst.max(rel_err(x3.rev_hazard(t).map_err(|e| e.to_string())?, rx));
        worst = worst.max(rel_err(y2.rev_hazard(t).map_err(|e| e.to_string())?, ry));
    }
    ensure!(worst <= 1e-9, "closed-form rhr off by {worst:e}");
    let bundle = reproduce_example(ExampleId::InvWeibullLower1).map_err(|e| e.to_string())?;
    let curve = curve_is_monotone(&bundle, "record_rhr_ratio", Direction::Decreasing, 1024)?;
    Ok(format!("pass, closed forms within {worst:.1e}, {curve}"))
}

fn criterion_7() -> Outcome {
    let (x, y) = final_pair();
    let report = verify_theorem4(&x, &y, 3, 2).map_err(|e| e.to_string())?;
    ensure!(report.overall == Overall::Pass, "overall {:?}", report.overall);
    let bundle = reproduce_example(ExampleId::InvWeibullLower2).map_err(|e| e.to_string())?;
    let curve = curve_is_monotone(&bundle, "record_rhr_ratio", Direction::Decreasing, 1024)?;
    Ok(format!("pass, {curve}"))
}

fn criterion_8() -> Outcome {
    let ss = s_grid(2048);
    let mut checks = 0usize;
    for n in 1..=8 {
        let values: Vec<f64> = ss.iter().map(|&s| psi(n, s).unwrap()).collect();
        ensure!(values.iter().all(|&v| v >= 0.0), "psi_{n} negative");
        // Non-increasing in s = -ln u, i.e. non-decreasing in u.
        let out = monotone_grid_test(&values, Direction::Decreasing, MONOTONE_SLACK);
        ensure!(out.passed, "psi_{n} not monotone at {:?}", out.first_violation);
        for &s in &ss {
            ensure!(xi(n, s).unwrap() >= 1.0, "xi_{n}({s}) < 1");
        }
        checks += 2;
    }
    for m in 1..=8 {
        for n in 1..=m {
            for &s in &ss {
                let (pm, pn) = (psi(m, s).unwrap(), psi(n, s).unwrap());
                ensure!(pm >= pn * (1.0 - MONOTONE_SLACK), "psi_{m} < psi_{n} at s = {s}");
            }
            let ratio: Vec<f64> = ss
                .iter()
                .map(|&s| (log_xi(m, s).unwrap() - log_xi(n, s).unwrap()).exp())
                .collect();
            let out = monotone_grid_test(&ratio, Direction::Decreasing, MONOTONE_SLACK);
            ensure!(out.passed, "xi_{m}/xi_{n} not monotone at {:?}", out.first_violation);
            let k: Vec<f64> = ss.iter().map(|&s| k_ratio(m, n, s).unwrap()).collect();
            let out = monotone_grid_test(&k, Direction::Increasing, MONOTONE_SLACK);
            ensure!(out.passed, "K({m},{n}) not monotone at {:?}", out.first_violation);
            checks += 3;
        }
    }
    Ok(format!("{checks} curve checks on 2048-point grids, no violations"))
}

fn criterion_9() -> Outcome {
    let mut worst = 0.0f64;
    for &rate in &[0.5, 3.0, 5.0] {
        let base = DistributionModel::exponential(rate).unwrap();
        for n in 1..=6u32 {
            let rec = RecordLaw::upper(base, n as usize).unwrap();
            let erlang = DistributionModel::erlang(n, rate).unwrap();
            for k in 1..=200 {
                let t = erlang.quantile(k as f64 / 201.0).unwrap();
                worst = worst.max(rel_err(rec.pdf(t).unwrap(), erlang.pdf(t).unwrap()));
                worst = worst.max(rel_err(rec.sf(t).unwrap(), erlang.sf(t).unwrap()));
                worst = worst.max(rel_err(rec.hazard(t).unwrap(), erlang.hazard(t).unwrap()));
            }
        }
    }
    ensure!(worst <= 1e-10, "Erlang equivalence off by {worst:e}");

    // Seed 7 keeps every scanned sample under the per-sample draw cap.
    let d = DistributionModel::lomax(3.0, 1.0).unwrap();
    let count = 10_000;
    let critical = ks_two_sample_critical_1pct(count, count);
    let mut worst_two = 0.0f64;
    for kind in [RecordKind::Upper, RecordKind::Lower] {
        for n in 1..=4 {
            let a = sample_records(&d, n, kind, count, 1, SamplingMethod::GammaTransform).map_err(|e| e.to_string())?;
            let b = sample_records(&d, n, kind, count, 7, SamplingMethod::SequentialScan).map_err(|e| e.to_string())?;
            let dist = ks_two_sample(&a.values, &b.values).map_err(|e| e.to_string())?;
            ensure!(dist < critical, "methods differ for {kind:?} n={n}: {dist} >= {critical}");
            worst_two = worst_two.max(dist);
        }
    }

    let count = 100_000;
    let mut worst_one = 0.0f64;
    for (seed, (d, kind, n)) in [
        (DistributionModel::lomax(3.0, 1.0).unwrap(), RecordKind::Upper, 3),
        (DistributionModel::exponential(3.0).unwrap(), RecordKind::Upper, 3),
        (DistributionModel::inverse_weibull(2.0, 2.0).unwrap(), RecordKind::Lower, 3),
        (DistributionModel::inverse_weibull(4.0, 2f64.sqrt()).unwrap(), RecordKind::Lower, 3),
    ]
    .into_iter()
    .enumerate()
    {
        let b = sample_records(&d, n, kind, count, 100 + seed as u64, SamplingMethod::GammaTransform)
            .map_err(|e| e.to_string())?;
        let dist = ks_distance(&b.values, &b.law().unwrap()).map_err(|e| e.to_string())?;
        ensure!(dist < ks_critical_1pct(count), "{d} {kind:?} n={n}: KS {dist}");
        worst_one = worst_one.max(dist);
    }
    Ok(format!(
        "Erlang within {worst:.1e}, two-sample KS max {worst_two:.4} < {critical:.4}, one-sample KS max {worst_one:.5} < {:.5}",
        ks_critical_1pct(count)
    ))
}

fn criterion_10() -> Outcome {
    let mut worst_mass = 0.0f64;
    let mut worst_tail = 0.0f64;
    let mut checkpoints = 0usize;
    for d in representatives() {
        for kind in [RecordKind::Upper, RecordKind::Lower] {
            for n in 1..=6 {
                let law = RecordLaw::new(d, n, kind).unwrap();
                let mass = total_mass(&law);
                ensure!((mass - 1.0).abs() <= 1e-8, "{d} {kind:?} n={n}: mass {mass}");
                worst_mass = worst_mass.max((mass - 1.0).abs());
                for k in 1..=100 {
                    let t = d.quantile(k as f64 / 101.0).unwrap();
                    let (closed, quad) = match kind {
                        RecordKind::Upper => (
                            law.sf(t).unwrap(),
                            integrate_adaptive(pdf_or_zero(&law), t, f64::INFINITY, 1e-10).unwrap(),
                        ),
                        RecordKind::Lower => (
                            law.cdf(t).unwrap(),
                            integrate_adaptive(pdf_or_zero(&law), 0.0, t, 1e-10).unwrap(),
                        ),
                    };
                    ensure!((closed - quad).abs() <= 1e-8, "{d} {kind:?} n={n} t={t}: {closed} vs {quad}");
                    worst_tail = worst_tail.max((closed - quad).abs());
                    checkpoints += 1;
                }
            }
        }
    }
    Ok(format!(
        "mass within {worst_mass:.1e}, {checkpoints} tail checkpoints within {worst_tail:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("upper-record psi supremum equals 9/8 at u -> 0+", criterion_1),
        ("lower-record psi supremum equals 2", criterion_2),
        ("rate-ratio limits of the example pairs", criterion_3),
        ("Erlang example: upper records of exponentials", criterion_4),
        ("Lomax example: aging faster with supremum on the boundary", criterion_5),
        ("inverse Weibull example: lower records, equal shapes", criterion_6),
        ("inverse Weibull example: lower records, supremum condition", criterion_7),
        ("psi, xi and K properties for n <= m <= 8", criterion_8),
        ("Erlang and Monte Carlo oracles", criterion_9),
        ("quadrature normalization and tail forms", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
