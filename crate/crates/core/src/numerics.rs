//! Shared numerical kernels: evaluation grids, adaptive Gauss–Kronrod
//! quadrature, golden-section maximization, sequence-limit extrapolation and
//! grid monotonicity testing.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use libm::{exp, fabs, log, pow};
use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Increasing => Direction::Decreasing,
            Direction::Decreasing => Direction::Increasing,
        }
    }
}

/// Evaluation points for grid checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Default density of order-check grids.
pub const DEFAULT_GRID_POINTS: usize = 2048;

/// `sf` and `cdf` must both exceed this for a point to count as inside the
/// effective support.
const SUPPORT_EDGE: f64 = 1e-12;

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite"));
        }
        if lo >= hi {
            return Err(Error::InvalidGrid("lo must be below hi"));
        }
        if count < 2 {
            return Err(Error::InvalidGrid("count must be at least 2"));
        }
        if spacing == Spacing::Log && lo <= 0.0 {
            return Err(Error::InvalidGrid("log spacing needs lo > 0"));
        }
        Ok(Self {
            lo,
            hi,
            count,
            spacing,
        })
    }

    /// 2048 log-spaced points over `[1e-6, 1e6]`.
    pub fn default_order_grid() -> Self {
        Self {
            lo: 1e-6,
            hi: 1e6,
            count: DEFAULT_GRID_POINTS,
            spacing: Spacing::Log,
        }
    }

    pub fn with_count(mut self, count: usize) -> Result<Self> {
        self.count = count;
        Self::new(self.lo, self.hi, self.count, self.spacing)
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i == n - 1 {
                    return self.hi;
                }
                let frac = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.lo + (self.hi - self.lo) * frac,
                    Spacing::Log => exp(log(self.lo) + (log(self.hi) - log(self.lo)) * frac),
                }
            })
            .collect()
    }

    /// Shrinks `[lo, hi]` to the points where every model has
    /// `sf, cdf ∈ (1e-12, 1 - 1e-12)`, keeping the point count.
    pub fn restrict_to_support(&self, models: &[&DistributionModel]) -> Result<Self> {
        let edge = -log(SUPPORT_EDGE);
        let mut lo = self.lo;
        let mut hi = self.hi;
        for d in models {
            // -ln cdf is decreasing, -ln sf increasing in t.
            let g = |t: f64| d.cum_rev_hazard(t).unwrap_or(f64::INFINITY);
            let h = |t: f64| d.cum_hazard(t).unwrap_or(f64::INFINITY);
            if g(lo) >= edge {
                lo = lo.max(bisect_log(|t| g(t) < edge, lo, hi));
            }
            if h(hi) >= edge {
                hi = hi.min(bisect_log(|t| h(t) >= edge, lo, hi));
            }
        }
        if !(lo < hi) {
            return Err(Error::InvalidGrid("grid misses the effective support"));
        }
        let lo = if self.spacing == Spacing::Log { lo.max(f64::MIN_POSITIVE) } else { lo };
        Self::new(lo, hi, self.count, self.spacing)
    }
}

/// Smallest `t` in `[lo, hi]` (to ~1e-13 relative) with `pred(t)` true,
/// for a predicate that flips once from false to true.
fn bisect_log<P: Fn(f64) -> bool>(pred: P, lo: f64, hi: f64) -> f64 {
    let (mut a, mut b) = (log(lo.max(1e-300)), log(hi));
    if pred(exp(a)) {
        return exp(a);
    }
    if !pred(exp(b)) {
        return exp(b);
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if pred(exp(mid)) {
            b = mid;
        } else {
            a = mid;
        }
        if b - a < 1e-13 {
            break;
        }
    }
    exp(b)
}

// ---- adaptive quadrature ----------------------------------------------------

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const MAX_DEPTH: u32 = 60;
const MAX_INTERVALS: usize = 50_000;

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Part of `error` that is pure rounding and cannot shrink by splitting.
    floor: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// 21-point Kronrod rule with the embedded 10-point Gauss error estimate.
fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = fabs(kronrod);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (fabs(f1) + fabs(f2));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !(kronrod.is_finite() && gauss.is_finite()) {
        return Err(Error::NonFinite("integrand"));
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * fabs(fc - mean);
    for j in 0..10 {
        asc += WGK[j] * (fabs(fv1[j] - mean) + fabs(fv2[j] - mean));
    }
    let scale = fabs(half);
    let value = kronrod * half;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut err = fabs((kronrod - gauss) * half);
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * pow(200.0 * err / res_asc, 1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok((value, err, floor))
}

/// Adaptive integral of `f` over `[lo, hi]`; `hi` may be `+∞`, in which case
/// the range beyond `lo + 1` is mapped onto `[0, 1)` by `t = lo + 1 + x/(1-x)`.
/// Reversed bounds flip the sign.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() || lo == f64::NEG_INFINITY || hi == f64::NEG_INFINITY {
        return Err(Error::InvalidGrid("integration bounds"));
    }
    if lo == hi {
        return Ok(0.0);
    }
    if lo > hi {
        return integrate_adaptive(f, hi, lo, rel_tol).map(|v| -v);
    }
    if hi.is_infinite() {
        // [lo, lo + 1] directly, so a singularity at lo keeps full
        // resolution; the tail through t = lo + 1 + x/(1-x), written in
        // w = 1 - x so that w -> 0 is resolved to full precision as well.
        let head = integrate_finite(&f, lo, lo + 1.0, rel_tol)?;
        let mapped = |w: f64| {
            let t = lo + 1.0 + (1.0 - w) / w;
            let v = f(t);
            if v == 0.0 {
                0.0
            } else {
                v / w / w
            }
        };
        return Ok(head + integrate_finite(&mapped, 0.0, 1.0, rel_tol)?);
    }
    integrate_finite(&f, lo, hi, rel_tol)
}

/// Breakpoints `a + (b-a)·2^{-k}` and `b - (b-a)·2^{-k}` for
/// `k = 8, 16, ...`, so that mass piled up against either end (integrable
/// singularities, or a heavy tail after mapping) is reachable without
/// exceeding the bisection depth.
fn initial_partition(a: f64, b: f64) -> Vec<f64> {
    let width = b - a;
    let mut points = alloc::vec![a, a + 0.5 * width, b];
    let mut k = 8;
    while k < 1075 {
        let step = width * pow(2.0, -(k as f64));
        // Keep every Kronrod node a normal number.
        if step < 1e-290 {
            break;
        }
        points.push(a + step);
        points.push(b - step);
        k += 8;
    }
    points.sort_unstable_by(f64::total_cmp);
    points.dedup();
    points.retain(|&x| x >= a && x <= b);
    points
}

fn integrate_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let mut heap = BinaryHeap::new();
    for w in initial_partition(a, b).windows(2) {
        let (value, error, floor) = gauss_kronrod_21(f, w[0], w[1])?;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            error,
            floor,
            depth: 0,
        });
    }
    loop {
        let (total, total_err, total_floor) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |(v, e, r), s| (v + s.value, e + s.error, r + s.floor));
        // Tolerances below the rounding level of the rule are unreachable.
        if total_err <= (rel_tol * fabs(total)).max(2.0 * total_floor) + 1e-300 {
            return Ok(total);
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= MAX_DEPTH || heap.len() + 2 > MAX_INTERVALS {
            return Err(Error::NonConvergence {
                estimate: total,
                error: total_err,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, floor) = gauss_kronrod_21(f, a, b)?;
            heap.push(Segment {
                a,
                b,
                value,
                error,
                floor,
                depth: worst.depth + 1,
            });
        }
    }
}

// ---- golden-section maximization -------------------------------------------

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` inside a bracket `(a, b, c)` with `a < b < c`,
/// `f(b) >= f(a)` and `f(b) >= f(c)`. Returns `(argmax, max)`, converged
/// to `rel_tol` in the argument.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    bracket: (f64, f64, f64),
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let (mut a, b, mut c) = bracket;
    let fb = f(b);
    if !(a < b && b < c) || !(fb >= f(a) && fb >= f(c)) || fb.is_nan() {
        return Err(Error::InvalidBracket);
    }
    let mut x1 = c - INV_PHI * (c - a);
    let mut x2 = a + INV_PHI * (c - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (mut best_x, mut best_f) = (b, fb);
    for _ in 0..500 {
        if f1 > best_f {
            best_x = x1;
            best_f = f1;
        }
        if f2 > best_f {
            best_x = x2;
            best_f = f2;
        }
        if c - a <= rel_tol * (fabs(x1) + fabs(x2)) * 0.5 + 1e-300 {
            break;
        }
        if f1 >= f2 {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - INV_PHI * (c - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (c - a);
            f2 = f(x2);
        }
    }
    Ok((best_x, best_f))
}

// ---- limit extrapolation ----------------------------------------------------

/// Outcome of [`extrapolate_limit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub value: f64,
    /// Distance between the twice- and once-accelerated estimates.
    pub residual: f64,
    /// Once-accelerated (Aitken) estimates from the last five iterates.
    pub accelerated: Vec<f64>,
}

fn aitken(x0: f64, x1: f64, x2: f64) -> f64 {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let denom = d2 - d1;
    let scale = fabs(x2).max(fabs(x1)).max(f64::MIN_POSITIVE);
    if fabs(denom) <= 64.0 * f64::EPSILON * scale || fabs(d2) <= 4.0 * f64::EPSILON * scale {
        x2
    } else {
        x2 - d2 * d2 / denom
    }
}

/// Limit of a convergent sequence from its last five iterates by iterated
/// Aitken Δ² acceleration; exact on `a + b·r^k` with `|r| < 1`.
pub fn extrapolate_limit(iterates: &[f64]) -> Result<Extrapolation> {
    if iterates.len() < 5 {
        return Err(Error::TooFewIterates {
            needed: 5,
            got: iterates.len(),
        });
    }
    if iterates.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("iterate"));
    }
    let x = &iterates[iterates.len() - 5..];
    let scale = x.iter().fold(0.0f64, |m, v| m.max(fabs(*v))).max(f64::MIN_POSITIVE);
    let tiny = 1e-12 * scale;
    // Raw differences must contract, otherwise Aitken lands on an antilimit.
    let d: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    if fabs(d[3]) > tiny && fabs(d[3]) >= 0.99 * fabs(d[2]) && fabs(d[2]) >= 0.99 * fabs(d[1]) {
        return Err(Error::Oscillating);
    }
    let accelerated: Vec<f64> = x.windows(3).map(|w| aitken(w[0], w[1], w[2])).collect();
    let value = aitken(accelerated[0], accelerated[1], accelerated[2]);
    let step_late = fabs(accelerated[2] - accelerated[1]);
    let step_early = fabs(accelerated[1] - accelerated[0]);
    if step_late > tiny && step_late > step_early {
        return Err(Error::Oscillating);
    }
    if !value.is_finite() {
        return Err(Error::NonFinite("extrapolated limit"));
    }
    Ok(Extrapolation {
        value,
        residual: fabs(value - accelerated[2]),
        accelerated,
    })
}

// ---- monotonicity on a grid -------------------------------------------------

/// Relative slack used by order checks: `1e-9` of the local magnitude.
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneOutcome {
    pub passed: bool,
    /// Index `k` of the first value with `values[k]` out of order relative
    /// to `values[k - 1]`.
    pub first_violation: Option<usize>,
    /// Smallest signed, magnitude-normalized step in the stated direction.
    pub margin: f64,
}

/// Normalized signed step from `a` to `b` in the stated direction.
pub fn directed_step(a: f64, b: f64, direction: Direction) -> f64 {
    let scale = fabs(a).max(fabs(b));
    let step = match direction {
        Direction::Increasing => b - a,
        Direction::Decreasing => a - b,
    };
    if scale == 0.0 {
        0.0
    } else {
        step / scale
    }
}

/// Weak monotonicity of consecutive values with relative `slack`.
pub fn monotone_grid_test(values: &[f64], direction: Direction, slack: f64) -> MonotoneOutcome {
    let mut margin = f64::INFINITY;
    let mut first_violation = None;
    for (k, w) in values.windows(2).enumerate() {
        let step = directed_step(w[0], w[1], direction);
        if step < margin {
            margin = step;
        }
        if step < -slack && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }
    MonotoneOutcome {
        passed: first_violation.is_none(),
        first_violation,
        margin: if margin.is_finite() { margin } else { 0.0 },
    }
}
