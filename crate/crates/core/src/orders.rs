//! Grid verdicts for stochastic orders and TP₂/RR₂ kernels.
//!
//! A verdict is numerical evidence on finitely many points. Points where a
//! curve cannot be evaluated (the survival or distribution function has
//! underflowed, or a rate evaluates to exactly zero or NaN) are skipped; if
//! more than 1% of the grid is skipped and nothing was refuted, the verdict
//! is [`Status::Inconclusive`].

use alloc::vec::Vec;

use libm::{expm1, fabs, log, pow};
use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::numerics::{directed_step, extrapolate_limit, Direction, GridSpec, MONOTONE_SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    /// `sf_X <= sf_Y`.
    St,
    /// `h_X >= h_Y`.
    Hr,
    /// `r_X <= r_Y`.
    Rh,
    /// `h_X / h_Y` non-decreasing (`X ⪯_c Y`).
    AgingFasterHr,
    /// `r_X / r_Y` non-increasing (`X ⪯_b Y`).
    AgingFasterRhr,
    Ifr,
    Drhr,
    Tp2,
    Rr2,
    /// Monotonicity of the ratio of two arbitrary curves.
    RatioMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Inconclusive,
}

/// Where the defining inequality failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Point { t: f64 },
    Pair { t1: f64, t2: f64 },
    Minor { x1: f64, x2: f64, y1: f64, y2: f64 },
}

/// Which 2×2 minors of a kernel are examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// Consecutive rows and columns only; sufficient for strictly positive
    /// kernels.
    Adjacent,
    /// Every pair `x1 < x2`, `y1 < y2`; needed when the kernel has zeros.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridInfo {
    Points(GridSpec),
    Kernel { rows: usize, cols: usize, pairs: PairMode },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub order: OrderKind,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Smallest signed, normalized slack observed; below `-1e-9` exactly
    /// when the verdict is `Violated`.
    pub margin: f64,
    pub grid: GridInfo,
    pub evaluated: usize,
    pub skipped: usize,
}

impl OrderVerdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Which rate a limit or aging-faster check is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMode {
    /// Hazard rates; the aging order is `⪯_c`.
    Hazard,
    /// Reversed hazard rates; the aging order is `⪯_b`.
    ReversedHazard,
}

impl LimitMode {
    pub fn rate(self, d: &DistributionModel, t: f64) -> Result<f64> {
        match self {
            LimitMode::Hazard => d.hazard(t),
            LimitMode::ReversedHazard => d.rev_hazard(t),
        }
    }

    /// Direction the rate ratio must follow for the aging-faster order.
    pub fn direction(self) -> Direction {
        match self {
            LimitMode::Hazard => Direction::Increasing,
            LimitMode::ReversedHazard => Direction::Decreasing,
        }
    }

    fn order(self) -> OrderKind {
        match self {
            LimitMode::Hazard => OrderKind::AgingFasterHr,
            LimitMode::ReversedHazard => OrderKind::AgingFasterRhr,
        }
    }
}

/// Limits of a rate ratio at `0⁺` and `+∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitPair {
    pub at_zero: f64,
    pub at_infinity: f64,
    /// Ratio at `t = 2^{-k}`, `k = 1, 2, ...`.
    pub zero_iterates: Vec<f64>,
    /// Ratio at `t = 2^{k}`, `k = 1, 2, ...`.
    pub infinity_iterates: Vec<f64>,
    pub zero_residual: f64,
    pub infinity_residual: f64,
}

/// Share of grid points that may be skipped before a verdict becomes
/// inconclusive.
const MAX_SKIP_FRACTION: f64 = 0.01;

/// Evaluates one curve value; `Ok(None)` marks a skipped point.
fn sample(value: Result<f64>, t: f64) -> Result<Option<f64>> {
    match value {
        Ok(v) if v.is_nan() || v == 0.0 || v.is_infinite() => Ok(None),
        Ok(v) if v < 0.0 => Err(Error::NonPositiveValue { t, value: v }),
        Ok(v) => Ok(Some(v)),
        Err(Error::SupportExhausted(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn finish(
    order: OrderKind,
    grid: GridInfo,
    total: usize,
    evaluated: usize,
    margin: f64,
    witness: Option<Witness>,
) -> OrderVerdict {
    let skipped = total - evaluated;
    let status = if witness.is_some() {
        Status::Violated
    } else if evaluated < 2 || skipped as f64 > MAX_SKIP_FRACTION * total as f64 {
        Status::Inconclusive
    } else {
        Status::Holds
    };
    OrderVerdict {
        order,
        status,
        witness,
        margin: if margin.is_finite() { margin } else { 0.0 },
        grid,
        evaluated,
        skipped,
    }
}

fn ratio_verdict<F, G>(
    order: OrderKind,
    f: F,
    g: G,
    direction: Direction,
    grid: &GridSpec,
) -> Result<OrderVerdict>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let points = grid.points();
    let mut prev: Option<(f64, f64)> = None;
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut evaluated = 0;
    for &t in &points {
        let (Some(fv), Some(gv)) = (sample(f(t), t)?, sample(g(t), t)?) else {
            continue;
        };
        let ratio = fv / gv;
        if !(ratio.is_finite() && ratio > 0.0) {
            continue;
        }
        evaluated += 1;
        if let Some((t0, r0)) = prev {
            let step = directed_step(r0, ratio, direction);
            margin = margin.min(step);
            if step < -MONOTONE_SLACK && witness.is_none() {
                witness = Some(Witness::Pair { t1: t0, t2: t });
            }
        }
        prev = Some((t, ratio));
    }
    Ok(finish(order, GridInfo::Points(*grid), points.len(), evaluated, margin, witness))
}

/// Checks that `f/g` is weakly monotone in `direction` on `grid`, with a
/// relative slack of `1e-9` between consecutive points.
pub fn check_ratio_monotone<F, G>(f: F, g: G, direction: Direction, grid: &GridSpec) -> Result<OrderVerdict>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    ratio_verdict(OrderKind::RatioMonotone, f, g, direction, grid)
}

/// `X ⪯_c Y` (hazard ratio non-decreasing) or `X ⪯_b Y` (reversed hazard
/// ratio non-increasing).
pub fn check_aging_faster(
    x: &DistributionModel,
    y: &DistributionModel,
    mode: LimitMode,
    grid: &GridSpec,
) -> Result<OrderVerdict> {
    ratio_verdict(
        mode.order(),
        |t| mode.rate(x, t),
        |t| mode.rate(y, t),
        mode.direction(),
        grid,
    )
}

/// Aging-faster check on arbitrary rate curves, e.g. those of record laws.
pub fn check_aging_faster_curves<F, G>(f: F, g: G, mode: LimitMode, grid: &GridSpec) -> Result<OrderVerdict>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    ratio_verdict(mode.order(), f, g, mode.direction(), grid)
}

/// Increasing failure rate: `h` non-decreasing.
pub fn check_ifr(d: &DistributionModel, grid: &GridSpec) -> Result<OrderVerdict> {
    ratio_verdict(OrderKind::Ifr, |t| d.hazard(t), |_| Ok(1.0), Direction::Increasing, grid)
}

/// Decreasing reversed hazard rate: `r` non-increasing.
pub fn check_drhr(d: &DistributionModel, grid: &GridSpec) -> Result<OrderVerdict> {
    ratio_verdict(OrderKind::Drhr, |t| d.rev_hazard(t), |_| Ok(1.0), Direction::Decreasing, grid)
}

/// Normalized slack of `a <= b` from `la = ln a`, `lb = ln b`:
/// `(b - a) / max(a, b)`.
fn log_slack(la: f64, lb: f64) -> f64 {
    if la == lb {
        0.0
    } else if lb > la {
        -expm1(la - lb)
    } else {
        expm1(lb - la)
    }
}

/// Checks `a(t) <= b(t)` pointwise, both given as logarithms.
fn pointwise<A, B>(order: OrderKind, a: A, b: B, grid: &GridSpec) -> Result<OrderVerdict>
where
    A: Fn(f64) -> Result<f64>,
    B: Fn(f64) -> Result<f64>,
{
    let points = grid.points();
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut evaluated = 0;
    for &t in &points {
        let la = match a(t) {
            Ok(v) if !v.is_nan() => v,
            Ok(_) | Err(Error::SupportExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        let lb = match b(t) {
            Ok(v) if !v.is_nan() => v,
            Ok(_) | Err(Error::SupportExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        if la == f64::NEG_INFINITY && lb == f64::NEG_INFINITY {
            continue;
        }
        evaluated += 1;
        let slack = log_slack(la, lb);
        margin = margin.min(slack);
        if slack < -MONOTONE_SLACK && witness.is_none() {
            witness = Some(Witness::Point { t });
        }
    }
    Ok(finish(order, GridInfo::Points(*grid), points.len(), evaluated, margin, witness))
}

/// `X ⪯_st Y`: `sf_X(t) <= sf_Y(t)` on the grid.
pub fn check_st(x: &DistributionModel, y: &DistributionModel, grid: &GridSpec) -> Result<OrderVerdict> {
    pointwise(OrderKind::St, |t| x.log_sf(t), |t| y.log_sf(t), grid)
}

/// `X ⪯_hr Y`: `h_X(t) >= h_Y(t)` on the grid.
pub fn check_hr(x: &DistributionModel, y: &DistributionModel, grid: &GridSpec) -> Result<OrderVerdict> {
    pointwise(OrderKind::Hr, |t| Ok(log(y.hazard(t)?)), |t| Ok(log(x.hazard(t)?)), grid)
}

/// `X ⪯_rh Y`: `r_X(t) <= r_Y(t)` on the grid.
pub fn check_rh(x: &DistributionModel, y: &DistributionModel, grid: &GridSpec) -> Result<OrderVerdict> {
    pointwise(OrderKind::Rh, |t| Ok(log(x.rev_hazard(t)?)), |t| Ok(log(y.rev_hazard(t)?)), grid)
}

// ---- limits -----------------------------------------------------------------

const LIMIT_STEPS: i32 = 60;
const LIMIT_MIN_STEPS: usize = 8;
const LIMIT_SETTLED: f64 = 1e-14;
const LIMIT_RESIDUAL: f64 = 1e-6;

fn limit_along<F: Fn(f64) -> Result<f64>>(ratio: &F, base: f64, label: &'static str) -> Result<(f64, f64, Vec<f64>)> {
    let mut iterates = Vec::new();
    for k in 1..=LIMIT_STEPS {
        let t = pow(base, k as f64);
        let v = match ratio(t) {
            Ok(v) if v.is_finite() && v > 0.0 => v,
            _ => break,
        };
        let settled = iterates
            .last()
            .is_some_and(|&p: &f64| fabs(v - p) <= LIMIT_SETTLED * fabs(v));
        iterates.push(v);
        if settled && iterates.len() >= LIMIT_MIN_STEPS {
            break;
        }
    }
    let ex = extrapolate_limit(&iterates).map_err(|_| Error::NonFiniteLimit(label))?;
    if !(ex.value.is_finite() && ex.value > 0.0) || ex.residual > LIMIT_RESIDUAL * ex.value.max(1.0) {
        return Err(Error::NonFiniteLimit(label));
    }
    Ok((ex.value, ex.residual, iterates))
}

/// Limits of `rate_X / rate_Y` as `t → 0⁺` and `t → ∞`, from the ratio at
/// `t = 2^{∓k}` accelerated by iterated Aitken extrapolation.
pub fn estimate_limits(x: &DistributionModel, y: &DistributionModel, mode: LimitMode) -> Result<LimitPair> {
    estimate_limits_curves(|t| mode.rate(x, t), |t| mode.rate(y, t), mode)
}

/// [`estimate_limits`] for arbitrary rate curves.
pub fn estimate_limits_curves<F, G>(f: F, g: G, mode: LimitMode) -> Result<LimitPair>
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let ratio = |t: f64| Ok(f(t)? / g(t)?);
    let (zero_label, inf_label) = match mode {
        LimitMode::Hazard => ("hazard ratio t -> 0+", "hazard ratio t -> inf"),
        LimitMode::ReversedHazard => ("reversed hazard ratio t -> 0+", "reversed hazard ratio t -> inf"),
    };
    let (at_zero, zero_residual, zero_iterates) = limit_along(&ratio, 0.5, zero_label)?;
    let (at_infinity, infinity_residual, infinity_iterates) = limit_along(&ratio, 2.0, inf_label)?;
    Ok(LimitPair {
        at_zero,
        at_infinity,
        zero_iterates,
        infinity_iterates,
        zero_residual,
        infinity_residual,
    })
}

// ---- total positivity -------------------------------------------------------

/// A non-negative kernel sampled on `xs × ys`, stored row-major
/// (`values[i * ys.len() + j] = K(xs[i], ys[j])`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl Kernel {
    pub fn from_fn<F: Fn(f64, f64) -> f64>(xs: Vec<f64>, ys: Vec<f64>, f: F) -> Self {
        let values = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self { xs, ys, values }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ys.len() + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    /// All 2×2 minors non-negative.
    Tp2,
    /// All 2×2 minors non-positive.
    Rr2,
}

/// Sign check of `K(x1,y1)K(x2,y2) - K(x1,y2)K(x2,y1)` for `x1 < x2`,
/// `y1 < y2`, normalized by the larger product.
pub fn tp2_grid_check(kernel: &Kernel, sense: Positivity, pairs: PairMode) -> Result<OrderVerdict> {
    let (rows, cols) = (kernel.xs.len(), kernel.ys.len());
    if rows < 2 || cols < 2 || kernel.values.len() != rows * cols {
        return Err(Error::InvalidGrid("kernel needs at least 2x2 values in row-major order"));
    }
    if kernel.xs.windows(2).any(|w| !(w[0] < w[1])) || kernel.ys.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid("kernel axes must be strictly increasing"));
    }
    for (k, &v) in kernel.values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite("kernel value"));
        }
        if v < 0.0 {
            return Err(Error::NegativeKernel {
                row: k / cols,
                col: k % cols,
                value: v,
            });
        }
    }
    let sign = match sense {
        Positivity::Tp2 => 1.0,
        Positivity::Rr2 => -1.0,
    };
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut count = 0;
    for i1 in 0..rows - 1 {
        let i2_range = match pairs {
            PairMode::Adjacent => i1 + 1..i1 + 2,
            PairMode::All => i1 + 1..rows,
        };
        for i2 in i2_range {
            for j1 in 0..cols - 1 {
                let j2_range = match pairs {
                    PairMode::Adjacent => j1 + 1..j1 + 2,
                    PairMode::All => j1 + 1..cols,
                };
                for j2 in j2_range {
                    let ad = kernel.at(i1, j1) * kernel.at(i2, j2);
                    let bc = kernel.at(i1, j2) * kernel.at(i2, j1);
                    let scale = ad.max(bc);
                    let slack = if scale == 0.0 { 0.0 } else { sign * (ad - bc) / scale };
                    count += 1;
                    margin = margin.min(slack);
                    if slack < -MONOTONE_SLACK && witness.is_none() {
                        witness = Some(Witness::Minor {
                            x1: kernel.xs[i1],
                            x2: kernel.xs[i2],
                            y1: kernel.ys[j1],
                            y2: kernel.ys[j2],
                        });
                    }
                }
            }
        }
    }
    let order = match sense {
        Positivity::Tp2 => OrderKind::Tp2,
        Positivity::Rr2 => OrderKind::Rr2,
    };
    let mut verdict = finish(order, GridInfo::Kernel { rows, cols, pairs }, count, count, margin, witness);
    verdict.evaluated = rows * cols;
    verdict.skipped = 0;
    Ok(verdict)
}
