//! Parametric lifetime laws on `(0, ∞)`.
//!
//! Every family exposes its survival and distribution functions through the
//! cumulative hazard `H(t) = -ln sf(t)` and the cumulative reversed hazard
//! `G(t) = -ln cdf(t)`. Record laws consume exactly these two quantities, so
//! they are computed directly rather than by taking logs of `sf`/`cdf`.
//!
//! Parameter conventions:
//!
//! | family           | sf / cdf                                   |
//! |------------------|--------------------------------------------|
//! | `Exponential`    | `sf = exp(-rate·t)`                        |
//! | `Erlang`         | `sf = Q(shape, rate·t)`                    |
//! | `Lomax`          | `sf = (1 + t/scale)^(-shape)`              |
//! | `Weibull`        | `sf = exp(-(t/scale)^shape)`               |
//! | `InverseWeibull` | `cdf = exp(-(scale/t)^shape)`              |

use core::fmt;

use libm::{exp, expm1, log, log1p, pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::records::ln_xi;
use crate::special::{ln_factorial, ln_gamma_pq, log1mexp, MAX_FACTORIAL};

/// Family tag and raw parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Exponential { rate: f64 },
    Erlang { shape: u32, rate: f64 },
    Lomax { shape: f64, scale: f64 },
    Weibull { shape: f64, scale: f64 },
    InverseWeibull { shape: f64, scale: f64 },
}

/// A validated lifetime distribution. Immutable; all evaluators are pure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Family", into = "Family")]
pub struct DistributionModel {
    family: Family,
}

impl TryFrom<Family> for DistributionModel {
    type Error = Error;

    fn try_from(family: Family) -> Result<Self> {
        Self::new(family)
    }
}

impl From<DistributionModel> for Family {
    fn from(d: DistributionModel) -> Family {
        d.family
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

impl DistributionModel {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::Exponential { rate } => positive("rate", rate)?,
            Family::Erlang { shape, rate } => {
                if shape == 0 || shape as usize > MAX_FACTORIAL {
                    return Err(Error::InvalidParameter {
                        name: "shape",
                        value: shape as f64,
                    });
                }
                positive("rate", rate)?
            }
            Family::Lomax { shape, scale }
            | Family::Weibull { shape, scale }
            | Family::InverseWeibull { shape, scale } => {
                positive("shape", shape)?;
                positive("scale", scale)?
            }
        }
        Ok(Self { family })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(Family::Exponential { rate })
    }

    pub fn erlang(shape: u32, rate: f64) -> Result<Self> {
        Self::new(Family::Erlang { shape, rate })
    }

    /// `sf(t) = (1 + t/scale)^(-shape)`.
    pub fn lomax(shape: f64, scale: f64) -> Result<Self> {
        Self::new(Family::Lomax { shape, scale })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        Self::new(Family::Weibull { shape, scale })
    }

    /// `cdf(t) = exp(-(scale/t)^shape)`.
    pub fn inverse_weibull(shape: f64, scale: f64) -> Result<Self> {
        Self::new(Family::InverseWeibull { shape, scale })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    // ---- unchecked kernels (t finite, t >= 0) -------------------------------

    fn raw_cum_hazard(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        match self.family {
            Family::Exponential { rate } => rate * t,
            Family::Erlang { shape, rate } => -ln_gamma_pq(shape as usize, rate * t).1,
            Family::Lomax { shape, scale } => shape * log1p(t / scale),
            Family::Weibull { shape, scale } => pow(t / scale, shape),
            Family::InverseWeibull { shape, scale } => -log1mexp(pow(scale / t, shape)),
        }
    }

    fn raw_cum_rev_hazard(&self, t: f64) -> f64 {
        if t == 0.0 {
            return f64::INFINITY;
        }
        match self.family {
            Family::Exponential { rate } => -log1mexp(rate * t),
            Family::Erlang { shape, rate } => -ln_gamma_pq(shape as usize, rate * t).0,
            Family::Lomax { shape, scale } => -log1mexp(shape * log1p(t / scale)),
            Family::Weibull { shape, scale } => -log1mexp(pow(t / scale, shape)),
            Family::InverseWeibull { shape, scale } => pow(scale / t, shape),
        }
    }

    fn raw_log_pdf(&self, t: f64) -> f64 {
        match self.family {
            Family::Exponential { rate } => log(rate) - rate * t,
            Family::Erlang { shape, rate } => {
                let k = shape as usize;
                if k == 1 {
                    log(rate) - rate * t
                } else if t == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    log(rate) + (k - 1) as f64 * log(rate * t) - rate * t - ln_factorial(k - 1)
                }
            }
            Family::Lomax { shape, scale } => log(shape / scale) - (shape + 1.0) * log1p(t / scale),
            Family::Weibull { shape, scale } => {
                if t == 0.0 {
                    return if shape == 1.0 {
                        -log(scale)
                    } else if shape > 1.0 {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    };
                }
                let z = t / scale;
                log(shape / scale) + (shape - 1.0) * log(z) - pow(z, shape)
            }
            Family::InverseWeibull { shape, scale } => {
                if t == 0.0 {
                    return f64::NEG_INFINITY;
                }
                let z = scale / t;
                log(shape / scale) + (shape + 1.0) * log(z) - pow(z, shape)
            }
        }
    }

    fn raw_hazard(&self, t: f64) -> f64 {
        match self.family {
            Family::Exponential { rate } => rate,
            Family::Erlang { shape, rate } => {
                if t == 0.0 {
                    return if shape == 1 { rate } else { 0.0 };
                }
                rate * exp(-ln_xi(shape as usize, rate * t))
            }
            Family::Lomax { shape, scale } => shape / (scale + t),
            Family::Weibull { shape, scale } => {
                if t == 0.0 {
                    return exp(self.raw_log_pdf(0.0));
                }
                (shape / scale) * pow(t / scale, shape - 1.0)
            }
            Family::InverseWeibull { .. } => exp(self.raw_log_pdf(t) + self.raw_cum_hazard(t)),
        }
    }

    fn raw_rev_hazard(&self, t: f64) -> f64 {
        match self.family {
            Family::InverseWeibull { shape, scale } => (shape / scale) * pow(scale / t, shape + 1.0),
            _ => exp(self.raw_log_pdf(t) + self.raw_cum_rev_hazard(t)),
        }
    }

    // ---- checked public evaluators ------------------------------------------

    fn check_point(t: f64) -> Result<()> {
        if t.is_finite() && t >= 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidPoint(t))
        }
    }

    /// Cumulative hazard `-ln sf(t)`.
    pub fn cum_hazard(&self, t: f64) -> Result<f64> {
        Self::check_point(t)?;
        Ok(self.raw_cum_hazard(t))
    }

    /// Cumulative reversed hazard `-ln cdf(t)`; infinite at `t = 0`.
    pub fn cum_rev_hazard(&self, t: f64) -> Result<f64> {
        Self::check_point(t)?;
        Ok(self.raw_cum_rev_hazard(t))
    }

    pub fn log_sf(&self, t: f64) -> Result<f64> {
        Ok(-self.cum_hazard(t)?)
    }

    pub fn log_cdf(&self, t: f64) -> Result<f64> {
        Ok(-self.cum_rev_hazard(t)?)
    }

    pub fn log_pdf(&self, t: f64) -> Result<f64> {
        Self::check_point(t)?;
        Ok(self.raw_log_pdf(t))
    }

    pub fn sf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_sf(t)?))
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_cdf(t)?))
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        Ok(exp(self.log_pdf(t)?))
    }

    /// Hazard rate `pdf/sf`. Fails with `SupportExhausted` once `sf` has
    /// underflowed in log space.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        Self::check_point(t)?;
        if self.raw_cum_hazard(t).is_infinite() {
            return Err(Error::SupportExhausted(t));
        }
        let h = self.raw_hazard(t);
        if h.is_nan() {
            return Err(Error::SupportExhausted(t));
        }
        Ok(h)
    }

    /// Reversed hazard rate `pdf/cdf`; `cdf(0) = 0`, so `t = 0` is exhausted.
    pub fn rev_hazard(&self, t: f64) -> Result<f64> {
        Self::check_point(t)?;
        if self.raw_cum_rev_hazard(t).is_infinite() {
            return Err(Error::SupportExhausted(t));
        }
        let r = self.raw_rev_hazard(t);
        if r.is_nan() {
            return Err(Error::SupportExhausted(t));
        }
        Ok(r)
    }

    /// Inverse of the cumulative hazard: the `t` with `-ln sf(t) = h`.
    pub fn inverse_cum_hazard(&self, h: f64) -> Result<f64> {
        if !(h.is_finite() && h >= 0.0) {
            return Err(Error::InvalidPoint(h));
        }
        if h == 0.0 {
            return Ok(0.0);
        }
        Ok(match self.family {
            Family::Exponential { rate } => h / rate,
            Family::Lomax { shape, scale } => scale * expm1(h / shape),
            Family::Weibull { shape, scale } => scale * pow(h, 1.0 / shape),
            Family::InverseWeibull { shape, scale } => scale * pow(-log1mexp(h), -1.0 / shape),
            Family::Erlang { .. } => solve_increasing(|t| self.raw_cum_hazard(t), h),
        })
    }

    /// Inverse of the cumulative reversed hazard: the `t` with
    /// `-ln cdf(t) = g`.
    pub fn inverse_cum_rev_hazard(&self, g: f64) -> Result<f64> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidPoint(g));
        }
        Ok(match self.family {
            Family::Exponential { rate } => -log1mexp(g) / rate,
            Family::Lomax { shape, scale } => scale * expm1(-log1mexp(g) / shape),
            Family::Weibull { shape, scale } => scale * pow(-log1mexp(g), 1.0 / shape),
            Family::InverseWeibull { shape, scale } => scale * pow(g, -1.0 / shape),
            Family::Erlang { .. } => solve_increasing(|t| -self.raw_cum_rev_hazard(t), -g),
        })
    }

    /// Quantile function. Closed form for every family except Erlang, which
    /// falls back to bisection on the cumulative (reversed) hazard.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidProbability(p));
        }
        // Invert through whichever tail is smaller to keep relative accuracy.
        if p < 0.5 {
            self.inverse_cum_rev_hazard(-log(p))
        } else {
            self.inverse_cum_hazard(-log1p(-p))
        }
    }
}

/// Solves `f(t) = target` for a continuous non-decreasing `f` on `(0, ∞)`,
/// bisecting in `ln t`.
fn solve_increasing<F: Fn(f64) -> f64>(f: F, target: f64) -> f64 {
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    while f(lo) > target && lo > 1e-300 {
        lo *= 0.5;
    }
    while f(hi) < target && hi < 1e300 {
        hi *= 2.0;
    }
    let (mut a, mut b) = (log(lo), log(hi));
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if f(exp(mid)) < target {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-16 * (1.0 + libm::fabs(mid)) {
            break;
        }
    }
    exp(0.5 * (a + b))
}

impl fmt::Display for DistributionModel {
    /// Renders in the `family:key=value,...` grammar accepted by the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Exponential { rate } => write!(f, "exp:rate={rate}"),
            Family::Erlang { shape, rate } => write!(f, "erlang:shape={shape},rate={rate}"),
            Family::Lomax { shape, scale } => write!(f, "lomax:shape={shape},scale={scale}"),
            Family::Weibull { shape, scale } => write!(f, "weibull:shape={shape},scale={scale}"),
            Family::InverseWeibull { shape, scale } => {
                write!(f, "invweibull:shape={shape},scale={scale}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::vec::Vec;

    fn all_families() -> Vec<DistributionModel> {
        std::vec![
            DistributionModel::exponential(1.7).unwrap(),
            DistributionModel::erlang(3, 2.0).unwrap(),
            DistributionModel::lomax(3.0, 1.0).unwrap(),
            DistributionModel::lomax(2.0, 0.75).unwrap(),
            DistributionModel::weibull(0.7, 2.0).unwrap(),
            DistributionModel::weibull(2.5, 1.0).unwrap(),
            DistributionModel::inverse_weibull(2.0, 2.0).unwrap(),
            DistributionModel::inverse_weibull(4.0, 2f64.sqrt()).unwrap(),
        ]
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DistributionModel::exponential(0.0).is_err());
        assert!(DistributionModel::lomax(-1.0, 1.0).is_err());
        assert!(DistributionModel::weibull(1.0, f64::NAN).is_err());
        assert!(DistributionModel::erlang(0, 1.0).is_err());
        assert!(DistributionModel::erlang(171, 1.0).is_err());
    }

    #[test]
    fn sf_examples() {
        let lomax = DistributionModel::lomax(3.0, 1.0).unwrap();
        assert_eq!(lomax.sf(0.0).unwrap(), 1.0);
        assert_relative_eq!(lomax.sf(1.0).unwrap(), 0.125, max_relative = 1e-15);
        let iw = DistributionModel::inverse_weibull(2.0, 2.0).unwrap();
        assert_relative_eq!(iw.sf(2.0).unwrap(), 1.0 - (-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn sf_rejects_non_finite_points() {
        let d = DistributionModel::exponential(1.0).unwrap();
        assert!(matches!(d.sf(f64::NAN), Err(Error::InvalidPoint(_))));
        assert!(matches!(d.sf(f64::INFINITY), Err(Error::InvalidPoint(_))));
        assert!(matches!(d.sf(-1.0), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn hazard_examples() {
        let x = DistributionModel::lomax(3.0, 1.0).unwrap();
        assert_relative_eq!(x.hazard(0.0).unwrap(), 3.0);
        let y = DistributionModel::lomax(2.0, 0.75).unwrap();
        assert_relative_eq!(y.hazard(0.0).unwrap(), 8.0 / 3.0, max_relative = 1e-15);
        // h_Y(t) = 8/(3+4t), sf_Y = 9/(3+4t)²
        for &t in &[0.1, 1.0, 7.0] {
            assert_relative_eq!(y.hazard(t).unwrap(), 8.0 / (3.0 + 4.0 * t), max_relative = 1e-14);
            let s = 9.0 / ((3.0 + 4.0 * t) * (3.0 + 4.0 * t));
            assert_relative_eq!(y.sf(t).unwrap(), s, max_relative = 1e-14);
        }
        let e = DistributionModel::exponential(2.5).unwrap();
        for &t in &[0.0, 0.3, 100.0] {
            assert_eq!(e.hazard(t).unwrap(), 2.5);
        }
    }

    #[test]
    fn rev_hazard_examples() {
        let x = DistributionModel::inverse_weibull(2.0, 2.0).unwrap();
        assert_relative_eq!(x.rev_hazard(2.0).unwrap(), 1.0, max_relative = 1e-15);
        let y = DistributionModel::inverse_weibull(2.0, 5f64.sqrt()).unwrap();
        assert_relative_eq!(y.rev_hazard(1.0).unwrap(), 10.0, max_relative = 1e-14);
        for d in all_families() {
            assert!(d.rev_hazard(1e12).unwrap() < 1e-6);
            assert!(matches!(d.rev_hazard(0.0), Err(Error::SupportExhausted(_))));
        }
    }

    #[test]
    fn support_exhaustion_is_signalled() {
        let w = DistributionModel::weibull(2.0, 1.0).unwrap();
        assert!(matches!(w.hazard(1e200), Err(Error::SupportExhausted(_))));
    }

    #[test]
    fn quantile_examples() {
        let e = DistributionModel::exponential(1.0).unwrap();
        assert_relative_eq!(e.quantile(1.0 - (-1.0f64).exp()).unwrap(), 1.0, max_relative = 1e-14);
        let l = DistributionModel::lomax(3.0, 1.0).unwrap();
        assert_relative_eq!(l.quantile(7.0 / 8.0).unwrap(), 1.0, max_relative = 1e-14);
        let w = DistributionModel::weibull(1.0, 1.0).unwrap();
        assert_relative_eq!(w.quantile(0.5).unwrap(), 2f64.ln(), max_relative = 1e-14);
        assert!(matches!(e.quantile(0.0), Err(Error::InvalidProbability(_))));
        assert!(matches!(e.quantile(1.0), Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn quantile_inverts_cdf_for_every_family() {
        for d in all_families() {
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let t = d.quantile(p).unwrap();
                assert_relative_eq!(d.cdf(t).unwrap(), p, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn pointwise_identities() {
        for d in all_families() {
            for i in 0..1000 {
                let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
                let sf = d.sf(t).unwrap();
                let cdf = d.cdf(t).unwrap();
                assert!((sf + cdf - 1.0).abs() <= 1e-12, "{d} t={t}");
                let pdf = d.pdf(t).unwrap();
                if pdf > 1e-290 && sf > 1e-290 && cdf > 1e-290 {
                    assert_relative_eq!(d.hazard(t).unwrap() * sf, pdf, max_relative = 1e-10);
                    assert_relative_eq!(d.rev_hazard(t).unwrap() * cdf, pdf, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn sf_is_non_increasing() {
        for d in all_families() {
            let mut prev = 1.0;
            for i in 0..500 {
                let t = 10f64.powf(-4.0 + 8.0 * i as f64 / 499.0);
                let s = d.sf(t).unwrap();
                assert!(s <= prev && (0.0..=1.0).contains(&s));
                prev = s;
            }
        }
    }

    #[test]
    fn inverse_cumulative_hazards_round_trip() {
        for d in all_families() {
            for &h in &[1e-8, 0.01, 0.7, 3.0, 25.0] {
                let t = d.inverse_cum_hazard(h).unwrap();
                assert_relative_eq!(d.cum_hazard(t).unwrap(), h, max_relative = 1e-9);
                let t = d.inverse_cum_rev_hazard(h).unwrap();
                assert_relative_eq!(d.cum_rev_hazard(t).unwrap(), h, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn display_uses_spec_grammar() {
        let d = DistributionModel::lomax(3.0, 1.0).unwrap();
        assert_eq!(std::format!("{d}"), "lomax:shape=3,scale=1");
    }
}
