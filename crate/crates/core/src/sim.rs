//! Seeded Monte Carlo sampling of record values and Kolmogorov–Smirnov
//! distances against the closed-form record laws.
//!
//! The generator is ChaCha8 (`rand_chacha`). A batch seeded with `seed`
//! uses the 32-byte key `[seed as little-endian u64, method tag, 0...]` and
//! draws sample `i` from stream `i`, so any subset of samples can be
//! regenerated independently and the output does not depend on how the
//! work is split.
//!
//! Both methods work with `E = -ln V`, `V` uniform on `(0, 1)`: `E` is the
//! cumulative hazard `H(X)` of a draw `X` (upper records) or its cumulative
//! reversed hazard `G(X)` (lower records). Both maps are monotone, so a
//! new record in `X` is exactly a new maximum of `E`.

use alloc::vec::Vec;

use libm::{fabs, log, sqrt};
use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::records::{check_index, RecordKind, RecordLaw};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMethod {
    /// `E = Σ n unit exponentials`, then invert `H` (or `G`).
    GammaTransform,
    /// Scan an i.i.d. sequence until the n-th record appears.
    SequentialScan,
}

impl SamplingMethod {
    fn tag(self) -> u8 {
        match self {
            SamplingMethod::GammaTransform => 1,
            SamplingMethod::SequentialScan => 2,
        }
    }
}

/// Largest record index the sequential scan accepts.
pub const SCAN_MAX_INDEX: usize = 6;
/// Per-sample draw budget of the sequential scan.
pub const SCAN_DRAW_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub base: DistributionModel,
    pub n: usize,
    pub kind: RecordKind,
    pub seed: u64,
    pub method: SamplingMethod,
}

impl SampleBatch {
    pub fn law(&self) -> Result<RecordLaw> {
        RecordLaw::new(self.base, self.n, self.kind)
    }
}

fn rng_for(seed: u64, method: SamplingMethod, sample: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = method.tag();
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(sample as u64);
    rng
}

fn unit_exponential(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.sample(Open01);
    -log(u)
}

fn driver_value(rng: &mut ChaCha8Rng, n: usize, method: SamplingMethod, sample: usize) -> Result<f64> {
    match method {
        SamplingMethod::GammaTransform => Ok((0..n).map(|_| unit_exponential(rng)).sum()),
        SamplingMethod::SequentialScan => {
            let mut record = unit_exponential(rng);
            let mut found = 1;
            let mut draws = 1u64;
            while found < n {
                if draws >= SCAN_DRAW_CAP {
                    return Err(Error::DrawCapExceeded {
                        sample,
                        cap: SCAN_DRAW_CAP,
                    });
                }
                let e = unit_exponential(rng);
                draws += 1;
                if e > record {
                    record = e;
                    found += 1;
                }
            }
            Ok(record)
        }
    }
}

/// `count` i.i.d. copies of the n-th upper or lower record of `d`.
pub fn sample_records(
    d: &DistributionModel,
    n: usize,
    kind: RecordKind,
    count: usize,
    seed: u64,
    method: SamplingMethod,
) -> Result<SampleBatch> {
    check_index(n)?;
    if count == 0 {
        return Err(Error::InvalidGrid("sample count must be at least 1"));
    }
    if method == SamplingMethod::SequentialScan && n > SCAN_MAX_INDEX {
        return Err(Error::ScanIndexTooLarge {
            n,
            max: SCAN_MAX_INDEX,
        });
    }
    let mut values = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = rng_for(seed, method, i);
        let e = driver_value(&mut rng, n, method, i)?;
        let x = match kind {
            RecordKind::Upper => d.inverse_cum_hazard(e)?,
            RecordKind::Lower => d.inverse_cum_rev_hazard(e)?,
        };
        values.push(x);
    }
    Ok(SampleBatch {
        values,
        base: *d,
        n,
        kind,
        seed,
        method,
    })
}

/// One-sample Kolmogorov–Smirnov distance `sup |F_emp - F|`.
pub fn ks_distance(values: &[f64], law: &RecordLaw) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidGrid("empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let count = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = match law.cdf(x) {
            Ok(f) => f,
            // cdf of a lower record at a point where the base cdf is 0.
            Err(Error::SupportExhausted(_)) => 0.0,
            Err(e) => return Err(e),
        };
        d = d.max(f - i as f64 / count).max((i + 1) as f64 / count - f);
    }
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidGrid("empty sample"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max(fabs(i as f64 / na - j as f64 / nb));
    }
    Ok(d)
}

/// 1% critical value of the one-sample statistic, `1.63/√n`.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / sqrt(n as f64)
}

/// 1% critical value of the two-sample statistic.
pub fn ks_two_sample_critical_1pct(n1: usize, n2: usize) -> f64 {
    let (a, b) = (n1 as f64, n2 as f64);
    1.628 * sqrt((a + b) / (a * b))
}

/// Actuarial hazard estimate on bins `[edges[k], edges[k+1])`: the fraction
/// of survivors at the bin start that fail inside it, over the bin width,
/// with survivors counted at the bin midpoint. `None` for bins with fewer
/// than `min_count` failures.
pub fn binned_hazard(values: &[f64], edges: &[f64], min_count: usize) -> Vec<Option<f64>> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let below = |x: f64| sorted.partition_point(|&v| v < x);
    edges
        .windows(2)
        .map(|w| {
            let (lo, hi) = (below(w[0]), below(w[1]));
            let failures = hi - lo;
            let at_risk = (sorted.len() - lo) as f64 - 0.5 * failures as f64;
            if failures < min_count || at_risk <= 0.0 {
                None
            } else {
                Some(failures as f64 / (at_risk * (w[1] - w[0])))
            }
        })
        .collect()
}
