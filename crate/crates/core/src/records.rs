//! Laws of the n-th upper and lower record values and the kernel functions
//! `ξₙ`, `ψₙ` and `K` that drive the record hazard formulas.
//!
//! All kernels take `s = -ln u > 0`. For an upper record `s` is the base
//! cumulative hazard `H(t) = -ln sf(t)`; for a lower record it is
//! `G(t) = -ln cdf(t)`.
//!
//! With `c_j = (n-1)!/(n-1-j)!`,
//!
//! ```text
//! ξₙ(s) = Σ_{j<n} c_j s^{-j}            ψₙ(s) = Σ_{j<n} j c_j s^{-j} / (s ξₙ(s))
//! ```
//!
//! Both are evaluated from log-scaled weights so that the sums never
//! overflow and the dominant term is exact at either end of `(0, ∞)`.

use libm::{exp, log, log1p};
use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::special::{ln_factorial, ln_gamma_pq, NeumaierSum, MAX_FACTORIAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Upper,
    Lower,
}

pub(crate) fn check_index(n: usize) -> Result<()> {
    if (1..=MAX_FACTORIAL).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidIndex(n))
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPoint(s))
    }
}

/// Log weights `ln(c_j s^{-j})` for `j < n`, scaled so the largest is 0.
/// Returns the shift and the number of weights written.
fn scaled_weights(n: usize, s: f64, out: &mut [f64; MAX_FACTORIAL]) -> f64 {
    let ls = log(s);
    let top = ln_factorial(n - 1);
    let mut max = f64::NEG_INFINITY;
    for (j, w) in out.iter_mut().enumerate().take(n) {
        *w = top - ln_factorial(n - 1 - j) - j as f64 * ls;
        if *w > max {
            max = *w;
        }
    }
    for w in out.iter_mut().take(n) {
        *w = exp(*w - max);
    }
    max
}

/// `ln ξₙ(s)` without argument checks. `s = 0` gives `+∞`, `s = ∞` gives 0.
pub(crate) fn ln_xi(n: usize, s: f64) -> f64 {
    if n == 1 || s == f64::INFINITY {
        return 0.0;
    }
    if s == 0.0 {
        return f64::INFINITY;
    }
    let mut w = [0.0; MAX_FACTORIAL];
    let shift = scaled_weights(n, s, &mut w);
    // One weight equals 1; adding the rest through log1p keeps ln ξ accurate
    // when it is close to zero.
    let mut rest = NeumaierSum::new();
    let mut seen_one = false;
    let mut tail: [f64; MAX_FACTORIAL] = [0.0; MAX_FACTORIAL];
    let mut len = 0;
    for &x in w.iter().take(n) {
        if x == 1.0 && !seen_one {
            seen_one = true;
        } else {
            tail[len] = x;
            len += 1;
        }
    }
    tail[..len].sort_unstable_by(f64::total_cmp);
    for &x in &tail[..len] {
        rest.add(x);
    }
    shift + log1p(rest.total())
}

/// `ξₙ(s)`; at least 1 for every `s > 0`.
pub fn xi(n: usize, s: f64) -> Result<f64> {
    check_index(n)?;
    check_s(s)?;
    Ok(exp(ln_xi(n, s)))
}

/// `ln ξₙ(s)`.
pub fn log_xi(n: usize, s: f64) -> Result<f64> {
    check_index(n)?;
    check_s(s)?;
    Ok(ln_xi(n, s))
}

pub(crate) fn psi_unchecked(n: usize, s: f64) -> f64 {
    if n == 1 {
        return 0.0;
    }
    let mut w = [0.0; MAX_FACTORIAL];
    scaled_weights(n, s, &mut w);
    let mut num = NeumaierSum::new();
    let mut den = NeumaierSum::new();
    // ascending j is ascending magnitude for s > 1, descending below; the
    // compensated sums make the order immaterial here.
    for (j, &x) in w.iter().enumerate().take(n) {
        num.add(j as f64 * x);
        den.add(x);
    }
    num.total() / (s * den.total())
}

/// `ψₙ(s) = u ξₙ'(u) / ξₙ(u)` at `u = e^{-s}`; identically 0 for `n = 1`.
pub fn psi(n: usize, s: f64) -> Result<f64> {
    check_index(n)?;
    check_s(s)?;
    Ok(psi_unchecked(n, s))
}

/// `K(s) = [Σ_{i<n} s^{i-n+1}/i!] / [Σ_{i<m} s^{i-m+1}/i!]` for `m >= n`.
pub fn k_ratio(m: usize, n: usize, s: f64) -> Result<f64> {
    check_index(m)?;
    check_index(n)?;
    if m < n {
        return Err(Error::IndexOrder { m, n });
    }
    check_s(s)?;
    let ln_k = ln_xi(n, s) - ln_factorial(n - 1) - ln_xi(m, s) + ln_factorial(m - 1);
    Ok(exp(ln_k))
}

/// The n-th upper or lower record of an i.i.d. sequence with law `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecordLaw {
    base: DistributionModel,
    index: usize,
    kind: RecordKind,
}

impl RecordLaw {
    pub fn new(base: DistributionModel, index: usize, kind: RecordKind) -> Result<Self> {
        check_index(index)?;
        Ok(Self { base, index, kind })
    }

    pub fn upper(base: DistributionModel, index: usize) -> Result<Self> {
        Self::new(base, index, RecordKind::Upper)
    }

    pub fn lower(base: DistributionModel, index: usize) -> Result<Self> {
        Self::new(base, index, RecordKind::Lower)
    }

    pub fn base(&self) -> &DistributionModel {
        &self.base
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn kind(&self) -> RecordKind {
        self.kind
    }

    /// The base quantity the record law is a gamma transform of:
    /// `H(t)` for upper records, `G(t)` for lower ones.
    fn driver(&self, t: f64) -> Result<f64> {
        let s = match self.kind {
            RecordKind::Upper => self.base.cum_hazard(t)?,
            RecordKind::Lower => self.base.cum_rev_hazard(t)?,
        };
        if s.is_infinite() || s.is_nan() {
            return Err(Error::SupportExhausted(t));
        }
        Ok(s)
    }

    /// `ln pdf = (n-1) ln s - ln (n-1)! + ln pdf_base`.
    pub fn log_pdf(&self, t: f64) -> Result<f64> {
        let s = self.driver(t)?;
        let base = self.base.log_pdf(t)?;
        if self.index == 1 {
            return Ok(base);
        }
        if s == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok((self.index - 1) as f64 * log(s) - ln_factorial(self.index - 1) + base)
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_pdf(t)?))
    }

    /// `(ln sf, ln cdf)` of the record.
    pub fn log_sf_cdf(&self, t: f64) -> Result<(f64, f64)> {
        let s = self.driver(t)?;
        // Upper: sf = Q(n, H). Lower: cdf = Q(n, G).
        let (lp, lq) = ln_gamma_pq(self.index, s);
        Ok(match self.kind {
            RecordKind::Upper => (lq, lp),
            RecordKind::Lower => (lp, lq),
        })
    }

    /// Upper: `sf_base · Σ_{k<n} H^k/k!`; lower: `1 - cdf`.
    pub fn sf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_sf_cdf(t)?.0))
    }

    /// Lower: `cdf_base · Σ_{k<n} G^k/k!`; upper: `1 - sf`.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_sf_cdf(t)?.1))
    }

    /// Hazard rate of the record. For upper records this is
    /// `h_base(t) / ξₙ(H(t))`.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        match self.kind {
            RecordKind::Upper => {
                let s = self.driver(t)?;
                let h = self.base.hazard(t)?;
                Ok(h * exp(-ln_xi(self.index, s)))
            }
            RecordKind::Lower => {
                let (ln_sf, _) = self.log_sf_cdf(t)?;
                if ln_sf == f64::NEG_INFINITY {
                    return Err(Error::SupportExhausted(t));
                }
                Ok(exp(self.log_pdf(t)? - ln_sf))
            }
        }
    }

    /// Reversed hazard rate of the record. For lower records this is
    /// `r_base(t) / ξₙ(G(t))`.
    pub fn rev_hazard(&self, t: f64) -> Result<f64> {
        match self.kind {
            RecordKind::Lower => {
                let s = self.driver(t)?;
                let r = self.base.rev_hazard(t)?;
                Ok(r * exp(-ln_xi(self.index, s)))
            }
            RecordKind::Upper => {
                let (_, ln_cdf) = self.log_sf_cdf(t)?;
                if ln_cdf == f64::NEG_INFINITY {
                    return Err(Error::SupportExhausted(t));
                }
                Ok(exp(self.log_pdf(t)? - ln_cdf))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Direct evaluation of ξₙ from its defining sum.
    fn xi_brute(n: usize, s: f64) -> f64 {
        let mut fact_i = 1.0;
        let mut acc = 0.0;
        for i in 0..n {
            if i > 0 {
                fact_i *= i as f64;
            }
            acc += s.powi(i as i32 - n as i32 + 1) / fact_i;
        }
        let fact = (1..n).fold(1.0, |p, k| p * k as f64);
        fact * acc
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(1, 0.3).unwrap(), 1.0);
        assert_relative_eq!(xi(2, 1.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(xi(3, 2.0).unwrap(), 2.5, max_relative = 1e-15);
        for n in 1..=8 {
            for &s in &[1e-3, 0.2, 1.0, 3.7, 50.0, 1e4] {
                assert_relative_eq!(xi(n, s).unwrap(), xi_brute(n, s), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1, 4.0).unwrap(), 0.0);
        assert_relative_eq!(psi(2, 1.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(psi(3, 2.0).unwrap(), 0.4, max_relative = 1e-15);
        // closed forms for n = 2, 3
        for &s in &[1e-6, 0.01, 0.5, 7.0, 1e5] {
            assert_relative_eq!(psi(2, s).unwrap(), 1.0 / (s * (1.0 + s)), max_relative = 1e-13);
            let p3 = (2.0 * s + 4.0) / (s * (s * s + 2.0 * s + 2.0));
            assert_relative_eq!(psi(3, s).unwrap(), p3, max_relative = 1e-13);
        }
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_ratio(4, 4, 0.7).unwrap(), 1.0);
        assert_relative_eq!(k_ratio(2, 1, 1.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(k_ratio(3, 2, 2.0).unwrap(), 1.2, max_relative = 1e-14);
        assert_eq!(k_ratio(2, 3, 1.0), Err(Error::IndexOrder { m: 2, n: 3 }));
    }

    #[test]
    fn kernels_reject_bad_arguments() {
        assert!(xi(2, 0.0).is_err());
        assert!(psi(2, -1.0).is_err());
        assert!(xi(0, 1.0).is_err());
        assert!(xi(171, 1.0).is_err());
    }

    #[test]
    fn ln_xi_extremes() {
        assert_relative_eq!(ln_xi(3, 1e12), 2e-12, max_relative = 1e-6);
        assert!(ln_xi(170, 1e-300).is_finite());
        assert_eq!(ln_xi(3, 0.0), f64::INFINITY);
    }

    #[test]
    fn upper_record_examples() {
        let lomax = DistributionModel::lomax(3.0, 1.0).unwrap();
        let r2 = RecordLaw::upper(lomax, 2).unwrap();
        let t = core::f64::consts::E - 1.0;
        // -ln sf = 3, pdf_base = 3 e^{-4}
        assert_relative_eq!(r2.pdf(t).unwrap(), 9.0 * (-4.0f64).exp(), max_relative = 1e-13);
        let e3 = DistributionModel::exponential(3.0).unwrap();
        let r3 = RecordLaw::upper(e3, 3).unwrap();
        assert_relative_eq!(r3.hazard(1.0).unwrap(), 27.0 / 17.0, max_relative = 1e-13);
        assert_eq!(r3.hazard(0.0).unwrap(), 0.0);
    }

    #[test]
    fn lower_record_examples() {
        let iw = DistributionModel::inverse_weibull(4.0, 2f64.powf(0.25)).unwrap();
        let r2 = RecordLaw::lower(iw, 2).unwrap();
        let t = 2f64.powf(0.25);
        assert_relative_eq!(r2.cdf(t).unwrap(), 2.0 * (-1.0f64).exp(), max_relative = 1e-13);
        let iw5 = DistributionModel::inverse_weibull(2.0, 5f64.sqrt()).unwrap();
        let y2 = RecordLaw::lower(iw5, 2).unwrap();
        for &t in &[0.1, 1.0, 2.5, 40.0] {
            let expect = 50.0 / (t * t * t * (t * t + 5.0));
            assert_relative_eq!(y2.rev_hazard(t).unwrap(), expect, max_relative = 1e-12);
        }
        assert!(matches!(y2.rev_hazard(0.0), Err(Error::SupportExhausted(_))));
    }

    #[test]
    fn first_record_is_base_law() {
        let d = DistributionModel::weibull(1.7, 0.8).unwrap();
        for kind in [RecordKind::Upper, RecordKind::Lower] {
            let r = RecordLaw::new(d, 1, kind).unwrap();
            for &t in &[0.05, 0.5, 1.3, 3.0] {
                assert_relative_eq!(r.pdf(t).unwrap(), d.pdf(t).unwrap(), max_relative = 1e-13);
                assert_relative_eq!(r.sf(t).unwrap(), d.sf(t).unwrap(), max_relative = 1e-12);
                assert_relative_eq!(r.hazard(t).unwrap(), d.hazard(t).unwrap(), max_relative = 1e-11);
                assert_relative_eq!(
                    r.rev_hazard(t).unwrap(),
                    d.rev_hazard(t).unwrap(),
                    max_relative = 1e-11
                );
            }
        }
    }
}
