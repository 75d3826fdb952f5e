#![allow(dead_code)]

use proptest::prelude::*;
use record_aging::numerics::integrate_adaptive;
use record_aging::{DistributionModel, RecordKind, RecordLaw};

/// One member of every family, with moderate tails.
pub fn representatives() -> Vec<DistributionModel> {
    vec![
        DistributionModel::exponential(1.3).unwrap(),
        DistributionModel::erlang(3, 2.0).unwrap(),
        DistributionModel::lomax(3.0, 1.0).unwrap(),
        DistributionModel::weibull(0.7, 1.5).unwrap(),
        DistributionModel::inverse_weibull(2.0, 2.0).unwrap(),
    ]
}

/// Random member of any family, heavy tails included.
pub fn any_model() -> impl Strategy<Value = DistributionModel> {
    prop_oneof![
        (0.2f64..5.0).prop_map(|r| DistributionModel::exponential(r).unwrap()),
        (1u32..6, 0.2f64..5.0).prop_map(|(k, r)| DistributionModel::erlang(k, r).unwrap()),
        (0.3f64..6.0, 0.3f64..3.0).prop_map(|(a, s)| DistributionModel::lomax(a, s).unwrap()),
        (0.3f64..4.0, 0.3f64..3.0).prop_map(|(a, s)| DistributionModel::weibull(a, s).unwrap()),
        (0.3f64..6.0, 0.3f64..3.0).prop_map(|(a, s)| DistributionModel::inverse_weibull(a, s).unwrap()),
    ]
}

pub fn any_kind() -> impl Strategy<Value = RecordKind> {
    prop_oneof![Just(RecordKind::Upper), Just(RecordKind::Lower)]
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Record pdf with undefined points (underflowed support) read as 0.
pub fn pdf_or_zero(law: &RecordLaw) -> impl Fn(f64) -> f64 + '_ {
    move |t| law.pdf(t).unwrap_or(0.0)
}

pub fn total_mass(law: &RecordLaw) -> f64 {
    integrate_adaptive(pdf_or_zero(law), 0.0, f64::INFINITY, 1e-10).unwrap()
}

/// `s` log-spaced over `[1e-8, 1e8]`.
pub fn s_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| 10f64.powf(-8.0 + 16.0 * i as f64 / (points - 1) as f64))
        .collect()
}
