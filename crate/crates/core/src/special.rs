//! Small special-function kernels shared by the distribution and record code.
//!
//! Everything here works in log space where the plain value could overflow or
//! lose precision; the incomplete gamma functions are only needed for integer
//! shape, which is what both Erlang laws and record laws require.

use libm::{exp, expm1, log, log1p};

/// Largest `k` for which `k!` is finite in `f64`.
pub const MAX_FACTORIAL: usize = 170;

const fn factorial_table() -> [f64; MAX_FACTORIAL + 1] {
    let mut table = [1.0; MAX_FACTORIAL + 1];
    let mut k = 1;
    while k <= MAX_FACTORIAL {
        table[k] = table[k - 1] * k as f64;
        k += 1;
    }
    table
}

static FACTORIAL: [f64; MAX_FACTORIAL + 1] = factorial_table();

/// `k!` for `k <= 170`.
#[inline]
pub fn factorial(k: usize) -> f64 {
    FACTORIAL[k]
}

/// `ln(k!)` for `k <= 170`.
#[inline]
pub fn ln_factorial(k: usize) -> f64 {
    log(FACTORIAL[k])
}

/// `ln(1 - e^{-x})` for `x > 0`, accurate at both ends.
pub fn log1mexp(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if x < core::f64::consts::LN_2 {
        log(-expm1(-x))
    } else {
        log1p(-exp(-x))
    }
}

/// Compensated (Neumaier) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sum of non-negative terms in ascending order with compensation.
pub fn sum_ascending(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    let mut acc = NeumaierSum::new();
    for &t in terms.iter() {
        acc.add(t);
    }
    acc.total()
}

/// `ln Σ_{j<k} x^j / j!` for `x >= 0`, `1 <= k <= 171`.
pub fn ln_partial_exp(k: usize, x: f64) -> f64 {
    debug_assert!((1..=MAX_FACTORIAL + 1).contains(&k));
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    let lx = log(x);
    let mut logs = [0.0f64; MAX_FACTORIAL + 1];
    let mut max = f64::NEG_INFINITY;
    for (j, slot) in logs.iter_mut().enumerate().take(k) {
        *slot = j as f64 * lx - ln_factorial(j);
        if *slot > max {
            max = *slot;
        }
    }
    let mut scaled = [0.0f64; MAX_FACTORIAL + 1];
    for j in 0..k {
        scaled[j] = exp(logs[j] - max);
    }
    max + log(sum_ascending(&mut scaled[..k]))
}

/// `ln P(k, x)` through the series `x^k e^{-x}/k! Σ_j x^j k!/(k+j)!`;
/// intended for `x < k + 1` where the series converges quickly.
fn ln_gamma_p_series(k: usize, x: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = NeumaierSum::new();
    acc.add(1.0);
    let mut j = 1usize;
    while j < 100_000 {
        term *= x / (k + j) as f64;
        acc.add(term);
        if term < 1e-17 * acc.total() {
            break;
        }
        j += 1;
    }
    k as f64 * log(x) - x - ln_factorial(k) + log(acc.total())
}

/// Returns `(ln P(k, x), ln Q(k, x))` for the regularized incomplete gamma
/// functions with integer shape `k >= 1` and `x >= 0`.
pub fn ln_gamma_pq(k: usize, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x.is_infinite() {
        return (0.0, f64::NEG_INFINITY);
    }
    if x < k as f64 + 1.0 {
        let lp = ln_gamma_p_series(k, x);
        (lp, log1p(-exp(lp)))
    } else {
        let lq = -x + ln_partial_exp(k, x);
        (log1p(-exp(lq)), lq)
    }
}

/// Regularized lower incomplete gamma `P(k, x)`.
pub fn gamma_p(k: usize, x: f64) -> f64 {
    exp(ln_gamma_pq(k, x).0)
}

/// Regularized upper incomplete gamma `Q(k, x) = e^{-x} Σ_{j<k} x^j/j!`.
pub fn gamma_q(k: usize, x: f64) -> f64 {
    exp(ln_gamma_pq(k, x).1)
}
