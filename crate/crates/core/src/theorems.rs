//! Supremum conditions on `ψ` ratios, end-to-end checks of the four record
//! preservation results, and the worked examples.
//!
//! | id | hypotheses                                   | conclusion                              |
//! |----|----------------------------------------------|-----------------------------------------|
//! | T1 | `X ⪰_st Y`, `X ⪯_c Y`, `m >= n`              | `X_{U_m} ⪯_c Y_{U_n}`                   |
//! | T2 | `X ⪯_c Y`, `sup ψₙ(u)/ψₘ(u^{c₁}) <= c₀`      | `X_{U_m} ⪯_c Y_{U_n}`                   |
//! | T3 | `X ⪯_st Y`, `X ⪯_b Y`, `m >= n`              | `X_{L_m} ⪯_b Y_{L_n}`                   |
//! | T4 | `X ⪯_b Y`, `sup ψₙ(u^{1/c₀*})/ψₘ(u) <= c₁*`  | `X_{L_m} ⪯_b Y_{L_n}`                   |
//!
//! `(c₀, c₁)` are the limits of `h_X/h_Y` at `0⁺` and `∞`; the starred pair
//! are the same limits for reversed hazards. The conclusion is evaluated
//! even when a hypothesis fails, since the conditions are sufficient but
//! not necessary.

use alloc::string::String;
use alloc::vec::Vec;

use libm::{exp, fabs, log};
use serde::{Deserialize, Serialize};

use crate::dist::DistributionModel;
use crate::error::{Error, Result};
use crate::numerics::{golden_section_max, monotone_grid_test, Direction, GridSpec, Spacing, MONOTONE_SLACK};
use crate::orders::{
    check_aging_faster, check_aging_faster_curves, check_st, estimate_limits, LimitMode, LimitPair,
    OrderVerdict, Status,
};
use crate::records::{check_index, psi_unchecked, RecordLaw};

// ---- supremum engine --------------------------------------------------------

/// Which record family a `ψ` ratio belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupSide {
    /// `ψₙ(u) / ψₘ(u^{exponent})`.
    UpperRecords,
    /// `ψₙ(u^{exponent}) / ψₘ(u)`.
    LowerRecords,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupLocation {
    /// Attained at `u = e^{-s}`.
    Interior { s: f64 },
    /// Limit as `u → 0⁺` (`s → ∞`).
    BoundaryZero,
    /// Limit as `u → 1⁻` (`s → 0⁺`).
    BoundaryOne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupremumReport {
    pub value: f64,
    pub location: SupLocation,
    /// Running best after the coarse sweep, the golden-section refinement
    /// and the boundary limits; non-decreasing.
    pub iterates: Vec<f64>,
    /// True when the supremum is a maximum at an interior point rather than
    /// a boundary limit.
    pub attained: bool,
    pub limit_zero: f64,
    pub limit_one: f64,
    pub n: usize,
    pub m: usize,
    pub exponent: f64,
    pub side: SupSide,
    pub grid_points: usize,
}

pub const DEFAULT_SUP_GRID_POINTS: usize = 4096;
const SUP_S_LO: f64 = 1e-8;
const SUP_S_HI: f64 = 1e8;
const SUP_REFINE_TOL: f64 = 1e-10;
/// Relative tolerance of the `sup <= bound` hypothesis.
pub const SUP_BOUND_TOL: f64 = 1e-6;

/// The ratio `ψₙ(a s) / ψₘ(b s)` in `s = -ln u` space.
#[derive(Debug, Clone, Copy)]
struct PsiRatio {
    n: usize,
    m: usize,
    a: f64,
    b: f64,
}

impl PsiRatio {
    fn new(n: usize, m: usize, exponent: f64, side: SupSide) -> Result<Self> {
        check_index(n)?;
        check_index(m)?;
        if n == 1 || m == 1 {
            return Err(Error::DegenerateRatio { n, m });
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(Error::InvalidParameter {
                name: "exponent",
                value: exponent,
            });
        }
        let (a, b) = match side {
            SupSide::UpperRecords => (1.0, exponent),
            SupSide::LowerRecords => (exponent, 1.0),
        };
        Ok(Self { n, m, a, b })
    }

    fn eval(&self, s: f64) -> Result<f64> {
        let (sa, sb) = (self.a * s, self.b * s);
        if !(sa.is_finite() && sb.is_finite() && sa > 0.0 && sb > 0.0) {
            return Err(Error::NonFinite("psi ratio argument"));
        }
        let v = psi_unchecked(self.n, sa) / psi_unchecked(self.m, sb);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("psi ratio"))
        }
    }

    /// `ψₖ(s) ~ (k-1)/s` as `s → 0⁺`.
    fn limit_one(&self) -> f64 {
        (self.n - 1) as f64 * self.b / ((self.m - 1) as f64 * self.a)
    }

    /// `ψₖ(s) ~ (k-1)/s²` as `s → ∞`.
    fn limit_zero(&self) -> f64 {
        (self.n - 1) as f64 * self.b * self.b / ((self.m - 1) as f64 * self.a * self.a)
    }
}

/// Value of the `ψ` ratio of `side` at `u ∈ (0, 1)`.
pub fn psi_ratio_at(n: usize, m: usize, exponent: f64, side: SupSide, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidProbability(u));
    }
    PsiRatio::new(n, m, exponent, side)?.eval(-log(u))
}

/// `sup_{0<u<1}` of the `ψ` ratio, with the default 4096-point coarse grid.
pub fn sup_psi_ratio(n: usize, m: usize, exponent: f64, side: SupSide) -> Result<SupremumReport> {
    sup_psi_ratio_with(n, m, exponent, side, DEFAULT_SUP_GRID_POINTS)
}

/// Coarse log sweep over `s ∈ [1e-8, 1e8]`, golden-section refinement of the
/// best interior bracket, then comparison with the analytic limits at both
/// ends of `(0, 1)`.
pub fn sup_psi_ratio_with(
    n: usize,
    m: usize,
    exponent: f64,
    side: SupSide,
    grid_points: usize,
) -> Result<SupremumReport> {
    let ratio = PsiRatio::new(n, m, exponent, side)?;
    let ss = GridSpec::new(SUP_S_LO, SUP_S_HI, grid_points, Spacing::Log)?.points();
    let mut values = Vec::with_capacity(ss.len());
    for &s in &ss {
        values.push(ratio.eval(s)?);
    }
    let (best_i, best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let mut iterates = alloc::vec![best];

    let mut interior: Option<(f64, f64)> = None;
    if best_i > 0 && best_i + 1 < ss.len() {
        let bracket = (log(ss[best_i - 1]), log(ss[best_i]), log(ss[best_i + 1]));
        let f = |ls: f64| ratio.eval(exp(ls)).unwrap_or(f64::NEG_INFINITY);
        let (ls, v) = golden_section_max(f, bracket, SUP_REFINE_TOL)?;
        interior = Some((exp(ls), v.max(best)));
    }
    let refined = interior.map_or(best, |(_, v)| v);
    iterates.push(refined.max(best));

    let limit_zero = ratio.limit_zero();
    let limit_one = ratio.limit_one();
    let boundary = limit_zero.max(limit_one);
    let boundary_location = if limit_zero >= limit_one {
        SupLocation::BoundaryZero
    } else {
        SupLocation::BoundaryOne
    };
    let (value, location) = match interior {
        Some((s, v)) if v > boundary * (1.0 + 1e-12) => (v, SupLocation::Interior { s }),
        // Samples can sit above the limits only through roundoff.
        _ => (boundary.max(refined), boundary_location),
    };
    iterates.push(value.max(refined));
    if !value.is_finite() {
        return Err(Error::NonFinite("supremum"));
    }
    Ok(SupremumReport {
        value,
        location,
        iterates,
        attained: matches!(location, SupLocation::Interior { .. }),
        limit_zero,
        limit_one,
        n,
        m,
        exponent,
        side,
        grid_points,
    })
}

// ---- theorem checks ---------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
}

impl TheoremId {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(Self::T1),
            2 => Some(Self::T2),
            3 => Some(Self::T3),
            4 => Some(Self::T4),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Pass,
    HypothesisFailed,
    ConclusionRefuted,
    /// Nothing failed, but some check could not be decided on the grid.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisResult {
    Order(OrderVerdict),
    Supremum {
        report: SupremumReport,
        bound: f64,
        /// `sup` equals the bound within the tolerance.
        boundary_equality: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub result: HypothesisResult,
    pub status: Status,
}

impl HypothesisCheck {
    fn order(name: &str, verdict: OrderVerdict) -> Self {
        Self {
            name: name.into(),
            status: verdict.status,
            result: HypothesisResult::Order(verdict),
        }
    }

    fn supremum(name: &str, report: SupremumReport, bound: f64) -> Self {
        let holds = report.value <= bound * (1.0 + SUP_BOUND_TOL);
        let boundary_equality = fabs(report.value - bound) <= SUP_BOUND_TOL * bound;
        Self {
            name: name.into(),
            status: if holds { Status::Holds } else { Status::Violated },
            result: HypothesisResult::Supremum {
                report,
                bound,
                boundary_equality,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub x: DistributionModel,
    pub y: DistributionModel,
    pub m: usize,
    pub n: usize,
    pub limits: Option<LimitPair>,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub conclusion_check: OrderVerdict,
    pub overall: Overall,
    /// A supremum hypothesis holds with equality.
    pub boundary_equality: bool,
}

impl TheoremReport {
    pub fn supremum(&self) -> Option<&SupremumReport> {
        self.hypothesis_checks.iter().find_map(|h| match &h.result {
            HypothesisResult::Supremum { report, .. } => Some(report),
            HypothesisResult::Order(_) => None,
        })
    }
}

/// Grid and sweep density used by the theorem checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Restricted to the effective support of both laws before use.
    pub grid: GridSpec,
    pub sup_grid_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec::default_order_grid(),
            sup_grid_points: DEFAULT_SUP_GRID_POINTS,
        }
    }
}

fn overall(hypotheses: &[HypothesisCheck], conclusion: &OrderVerdict) -> Overall {
    if hypotheses.iter().any(|h| h.status == Status::Violated) {
        Overall::HypothesisFailed
    } else if conclusion.status == Status::Violated {
        Overall::ConclusionRefuted
    } else if conclusion.status == Status::Inconclusive
        || hypotheses.iter().any(|h| h.status == Status::Inconclusive)
    {
        Overall::Inconclusive
    } else {
        Overall::Pass
    }
}

fn upper_conclusion(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    grid: &GridSpec,
) -> Result<OrderVerdict> {
    let xm = RecordLaw::upper(*x, m)?;
    let yn = RecordLaw::upper(*y, n)?;
    check_aging_faster_curves(|t| xm.hazard(t), |t| yn.hazard(t), LimitMode::Hazard, grid)
}

fn lower_conclusion(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    grid: &GridSpec,
) -> Result<OrderVerdict> {
    let xm = RecordLaw::lower(*x, m)?;
    let yn = RecordLaw::lower(*y, n)?;
    check_aging_faster_curves(|t| xm.rev_hazard(t), |t| yn.rev_hazard(t), LimitMode::ReversedHazard, grid)
}

fn ordered_indices(m: usize, n: usize) -> Result<()> {
    check_index(m)?;
    check_index(n)?;
    if m < n {
        return Err(Error::IndexOrder { m, n });
    }
    Ok(())
}

fn nondegenerate_indices(m: usize, n: usize) -> Result<()> {
    check_index(m)?;
    check_index(n)?;
    if m == 1 || n == 1 {
        return Err(Error::DegenerateRatio { n, m });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn report(
    theorem: TheoremId,
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    limits: Option<LimitPair>,
    hypothesis_checks: Vec<HypothesisCheck>,
    conclusion_check: OrderVerdict,
) -> TheoremReport {
    let boundary_equality = hypothesis_checks.iter().any(|h| {
        matches!(
            h.result,
            HypothesisResult::Supremum {
                boundary_equality: true,
                ..
            }
        )
    });
    TheoremReport {
        theorem,
        x: *x,
        y: *y,
        m,
        n,
        limits,
        overall: overall(&hypothesis_checks, &conclusion_check),
        hypothesis_checks,
        conclusion_check,
        boundary_equality,
    }
}

pub fn verify_theorem1(x: &DistributionModel, y: &DistributionModel, m: usize, n: usize) -> Result<TheoremReport> {
    verify_theorem1_with(x, y, m, n, &VerifyConfig::default())
}

/// Upper records, `m >= n`: `X ⪰_st Y` and `X ⪯_c Y` give
/// `X_{U_m} ⪯_c Y_{U_n}`.
pub fn verify_theorem1_with(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    config: &VerifyConfig,
) -> Result<TheoremReport> {
    ordered_indices(m, n)?;
    let grid = config.grid.restrict_to_support(&[x, y])?;
    let hyps = alloc::vec![
        HypothesisCheck::order("x_st_geq_y", check_st(y, x, &grid)?),
        HypothesisCheck::order("x_c_leq_y", check_aging_faster(x, y, LimitMode::Hazard, &grid)?),
    ];
    let conclusion = upper_conclusion(x, y, m, n, &grid)?;
    Ok(report(TheoremId::T1, x, y, m, n, None, hyps, conclusion))
}

pub fn verify_theorem2(x: &DistributionModel, y: &DistributionModel, m: usize, n: usize) -> Result<TheoremReport> {
    verify_theorem2_with(x, y, m, n, &VerifyConfig::default())
}

/// Upper records, `m, n >= 2`: `X ⪯_c Y` and
/// `sup ψₙ(u)/ψₘ(u^{c₁}) <= c₀` give `X_{U_m} ⪯_c Y_{U_n}`.
pub fn verify_theorem2_with(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    config: &VerifyConfig,
) -> Result<TheoremReport> {
    nondegenerate_indices(m, n)?;
    let grid = config.grid.restrict_to_support(&[x, y])?;
    let limits = estimate_limits(x, y, LimitMode::Hazard)?;
    let sup = sup_psi_ratio_with(n, m, limits.at_infinity, SupSide::UpperRecords, config.sup_grid_points)?;
    let hyps = alloc::vec![
        HypothesisCheck::order("x_c_leq_y", check_aging_faster(x, y, LimitMode::Hazard, &grid)?),
        HypothesisCheck::supremum("sup_psi_ratio_leq_c0", sup, limits.at_zero),
    ];
    let conclusion = upper_conclusion(x, y, m, n, &grid)?;
    Ok(report(TheoremId::T2, x, y, m, n, Some(limits), hyps, conclusion))
}

pub fn verify_theorem3(x: &DistributionModel, y: &DistributionModel, m: usize, n: usize) -> Result<TheoremReport> {
    verify_theorem3_with(x, y, m, n, &VerifyConfig::default())
}

/// Lower records, `m >= n`: `X ⪯_st Y` and `X ⪯_b Y` give
/// `X_{L_m} ⪯_b Y_{L_n}`.
pub fn verify_theorem3_with(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    config: &VerifyConfig,
) -> Result<TheoremReport> {
    ordered_indices(m, n)?;
    let grid = config.grid.restrict_to_support(&[x, y])?;
    let hyps = alloc::vec![
        HypothesisCheck::order("x_st_leq_y", check_st(x, y, &grid)?),
        HypothesisCheck::order("x_b_leq_y", check_aging_faster(x, y, LimitMode::ReversedHazard, &grid)?),
    ];
    let conclusion = lower_conclusion(x, y, m, n, &grid)?;
    Ok(report(TheoremId::T3, x, y, m, n, None, hyps, conclusion))
}

pub fn verify_theorem4(x: &DistributionModel, y: &DistributionModel, m: usize, n: usize) -> Result<TheoremReport> {
    verify_theorem4_with(x, y, m, n, &VerifyConfig::default())
}

/// Lower records, `m, n >= 2`: `X ⪯_b Y` and
/// `sup ψₙ(u^{1/c₀*})/ψₘ(u) <= c₁*` give `X_{L_m} ⪯_b Y_{L_n}`.
pub fn verify_theorem4_with(
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    config: &VerifyConfig,
) -> Result<TheoremReport> {
    nondegenerate_indices(m, n)?;
    let grid = config.grid.restrict_to_support(&[x, y])?;
    let limits = estimate_limits(x, y, LimitMode::ReversedHazard)?;
    let sup = sup_psi_ratio_with(n, m, 1.0 / limits.at_zero, SupSide::LowerRecords, config.sup_grid_points)?;
    let hyps = alloc::vec![
        HypothesisCheck::order("x_b_leq_y", check_aging_faster(x, y, LimitMode::ReversedHazard, &grid)?),
        HypothesisCheck::supremum("sup_psi_ratio_leq_c1", sup, limits.at_infinity),
    ];
    let conclusion = lower_conclusion(x, y, m, n, &grid)?;
    Ok(report(TheoremId::T4, x, y, m, n, Some(limits), hyps, conclusion))
}

pub fn verify_theorem(
    id: TheoremId,
    x: &DistributionModel,
    y: &DistributionModel,
    m: usize,
    n: usize,
    config: &VerifyConfig,
) -> Result<TheoremReport> {
    match id {
        TheoremId::T1 => verify_theorem1_with(x, y, m, n, config),
        TheoremId::T2 => verify_theorem2_with(x, y, m, n, config),
        TheoremId::T3 => verify_theorem3_with(x, y, m, n, config),
        TheoremId::T4 => verify_theorem4_with(x, y, m, n, config),
    }
}

// ---- worked examples --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExampleId {
    /// Exponential(3) vs Exponential(5), upper records m = 3, n = 2.
    Erlang,
    /// Lomax `sf = (1+t)^-3` vs `sf = 9/(3+4t)^2`, upper records m = 3, n = 2.
    LomaxUpper,
    /// Inverse Weibull `exp(-4/t²)` vs `exp(-5/t²)`, lower records m = 3, n = 2.
    InvWeibullLower1,
    /// Inverse Weibull `exp(-4/t⁴)` vs `exp(-2/t⁴)`, lower records m = 3, n = 2.
    InvWeibullLower2,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [
        ExampleId::Erlang,
        ExampleId::LomaxUpper,
        ExampleId::InvWeibullLower1,
        ExampleId::InvWeibullLower2,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            ExampleId::Erlang => "erlang",
            ExampleId::LomaxUpper => "lomax-upper",
            ExampleId::InvWeibullLower1 => "invweibull-b",
            ExampleId::InvWeibullLower2 => "invweibull-thm4",
        }
    }

    pub fn from_slug(slug: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.slug() == slug)
    }

    /// The two base laws of the example.
    pub fn pair(self) -> (DistributionModel, DistributionModel) {
        let build = |r: Result<DistributionModel>| r.expect("example parameters are valid");
        match self {
            ExampleId::Erlang => (
                build(DistributionModel::exponential(3.0)),
                build(DistributionModel::exponential(5.0)),
            ),
            ExampleId::LomaxUpper => (
                build(DistributionModel::lomax(3.0, 1.0)),
                build(DistributionModel::lomax(2.0, 0.75)),
            ),
            ExampleId::InvWeibullLower1 => (
                build(DistributionModel::inverse_weibull(2.0, 2.0)),
                build(DistributionModel::inverse_weibull(2.0, libm::sqrt(5.0))),
            ),
            ExampleId::InvWeibullLower2 => (
                build(DistributionModel::inverse_weibull(4.0, libm::sqrt(2.0))),
                build(DistributionModel::inverse_weibull(4.0, libm::pow(2.0, 0.25))),
            ),
        }
    }
}

/// Sampled `(x, value)` pairs of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSeries {
    pub name: String,
    /// Name of the abscissa column: `t` or `u`.
    pub x_label: String,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Monotonicity the curve is expected to show, if any.
    pub expected: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveCheck {
    pub curve: String,
    pub direction: Direction,
    pub passed: bool,
    pub first_violation: Option<usize>,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleBundle {
    pub id: ExampleId,
    pub curves: Vec<CurveSeries>,
    pub curve_checks: Vec<CurveCheck>,
    pub report: TheoremReport,
    pub supremum: Option<SupremumReport>,
}

impl ExampleBundle {
    /// Every curve check passed and the theorem report is a pass.
    pub fn passed(&self) -> bool {
        self.curve_checks.iter().all(|c| c.passed) && self.report.overall == Overall::Pass
    }
}

/// Ratio `f/g` sampled on `grid`, dropping points where either side cannot
/// be evaluated.
pub fn ratio_curve<F, G>(name: &str, f: F, g: G, grid: &GridSpec, expected: Option<Direction>) -> CurveSeries
where
    F: Fn(f64) -> Result<f64>,
    G: Fn(f64) -> Result<f64>,
{
    let mut xs = Vec::new();
    let mut values = Vec::new();
    for t in grid.points() {
        if let (Ok(a), Ok(b)) = (f(t), g(t)) {
            let r = a / b;
            if r.is_finite() && r > 0.0 {
                xs.push(t);
                values.push(r);
            }
        }
    }
    CurveSeries {
        name: name.into(),
        x_label: "t".into(),
        xs,
        values,
        expected,
    }
}

/// Number of `u` values on which `ψ` ratio curves are sampled.
const U_CURVE_POINTS: usize = 1024;

/// The `ψ` ratio against `u = e^{-s}` for `s` log-spaced over
/// `[1e-3, 700]`, in increasing `u`.
pub fn psi_ratio_curve(name: &str, n: usize, m: usize, exponent: f64, side: SupSide) -> Result<CurveSeries> {
    let ratio = PsiRatio::new(n, m, exponent, side)?;
    let ss = GridSpec::new(1e-3, 700.0, U_CURVE_POINTS, Spacing::Log)?.points();
    let mut xs = Vec::with_capacity(ss.len());
    let mut values = Vec::with_capacity(ss.len());
    for &s in ss.iter().rev() {
        xs.push(exp(-s));
        values.push(ratio.eval(s)?);
    }
    Ok(CurveSeries {
        name: name.into(),
        x_label: "u".into(),
        xs,
        values,
        expected: None,
    })
}

fn check_curve(c: &CurveSeries) -> Option<CurveCheck> {
    let direction = c.expected?;
    let out = monotone_grid_test(&c.values, direction, MONOTONE_SLACK);
    Some(CurveCheck {
        curve: c.name.clone(),
        direction,
        passed: out.passed && c.values.len() >= 2,
        first_violation: out.first_violation,
        margin: out.margin,
    })
}

pub fn reproduce_example(id: ExampleId) -> Result<ExampleBundle> {
    reproduce_example_with(id, &VerifyConfig::default())
}

/// Curves, monotonicity checks and theorem report of a worked example.
pub fn reproduce_example_with(id: ExampleId, config: &VerifyConfig) -> Result<ExampleBundle> {
    let (x, y) = id.pair();
    let (m, n) = (3, 2);
    let grid = config.grid.restrict_to_support(&[&x, &y])?;
    let mut curves = Vec::new();
    let report = match id {
        ExampleId::Erlang | ExampleId::LomaxUpper => {
            let xm = RecordLaw::upper(x, m)?;
            let yn = RecordLaw::upper(y, n)?;
            if id == ExampleId::LomaxUpper {
                curves.push(psi_ratio_curve("psi_ratio", n, m, 1.5, SupSide::UpperRecords)?);
            }
            curves.push(ratio_curve(
                "record_hazard_ratio",
                |t| xm.hazard(t),
                |t| yn.hazard(t),
                &grid,
                Some(Direction::Increasing),
            ));
            if id == ExampleId::Erlang {
                verify_theorem1_with(&x, &y, m, n, config)?
            } else {
                verify_theorem2_with(&x, &y, m, n, config)?
            }
        }
        ExampleId::InvWeibullLower1 | ExampleId::InvWeibullLower2 => {
            let xm = RecordLaw::lower(x, m)?;
            let yn = RecordLaw::lower(y, n)?;
            if id == ExampleId::InvWeibullLower2 {
                curves.push(psi_ratio_curve("psi_ratio", n, m, 0.5, SupSide::LowerRecords)?);
            }
            curves.push(ratio_curve(
                "record_rhr_ratio",
                |t| xm.rev_hazard(t),
                |t| yn.rev_hazard(t),
                &grid,
                Some(Direction::Decreasing),
            ));
            if id == ExampleId::InvWeibullLower1 {
                verify_theorem3_with(&x, &y, m, n, config)?
            } else {
                verify_theorem4_with(&x, &y, m, n, config)?
            }
        }
    };
    let curve_checks = curves.iter().filter_map(check_curve).collect();
    let supremum = report.supremum().cloned();
    Ok(ExampleBundle {
        id,
        curves,
        curve_checks,
        report,
        supremum,
    })
}
