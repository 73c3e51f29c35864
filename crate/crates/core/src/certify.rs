//! Certified lower bounds on the initial degree `alpha(n, m)` of the ideal of
//! `n` general points of multiplicity `m`.
//!
//! Starting from `D_0 = (t, m, ..., m)` the curve tuple `C = (d, 1 x r, 0 x
//! (n - r))` is subtracted repeatedly (see [`crate::tuple`]). If every
//! intermediate intersection `D_i . C` is at most `g - 1` and the last
//! nonnegative step leaves enough room, then no form of degree `t` has
//! multiplicity `m` at the points, i.e. `alpha(n, m) > t`.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::BoundCondition;
use crate::tuple::{run_reduction, MultiplicityTuple, ReductionCurve, ReductionTrace};
use crate::{check_at_least, Error, Result};

/// Largest `j >= 0` with `j (j + 1) <= i`.
pub fn l_index(i: i64) -> Result<i64> {
    check_at_least("i", i, 1)?;
    // Start from the real square root and correct the rounding.
    let mut j = ((i as f64).sqrt() as i64).max(0);
    while j * (j + 1) > i {
        j -= 1;
    }
    while (j + 1) * (j + 2) <= i {
        j += 1;
    }
    Ok(j)
}

/// Which certification condition rejected a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCondition {
    /// `D_i . C > g - 1` at the given step `i < omega - 1`.
    IntersectionTooLarge { step: usize, intersection: i64 },
    /// `(t_{omega-1} + 1)(t_{omega-1} + 2) > 2 mu`.
    FinalStepTooLarge { lhs: i64, rhs: i64 },
}

impl std::fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailedCondition::IntersectionTooLarge { step, intersection } => write!(
                f,
                "condition (1) fails at i={step}: D_i.C = {intersection} exceeds g-1"
            ),
            FailedCondition::FinalStepTooLarge { lhs, rhs } => {
                write!(f, "condition (2) fails: {lhs} > 2*mu = {rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateOutcome {
    pub t: i64,
    pub certified: bool,
    pub failing_condition: Option<FailedCondition>,
    pub omega: usize,
    /// `t_{omega-1} d - D_{omega-1} . C`, the sum of the `r` largest
    /// multiplicities of `D_{omega-1}`.
    pub mu: i64,
    /// Both sides of the final-step inequality, `(lhs, 2 mu)`.
    pub final_step: (i64, i64),
    /// `false` when `(n, m, r, d)` lies outside the regime in which the
    /// closed-form bound is proven; the outcome is still computed.
    pub validated_regime: bool,
    pub trace: ReductionTrace,
}

fn validate(n: i64, m: i64, t: i64, d: i64, r: i64) -> Result<ReductionCurve> {
    check_at_least("n", n, 1)?;
    check_at_least("m", m, 1)?;
    check_at_least("t", t, 0)?;
    check_at_least("d", d, 1)?;
    check_at_least("r", r, 1)?;
    ReductionCurve::new(n as usize, d, r as usize)
}

/// Runs the reduction from `(t, m x n)` and checks both certification
/// conditions. A certified outcome means `alpha(n, m) > t`.
pub fn certify_alpha_exceeds(n: i64, m: i64, t: i64, d: i64, r: i64) -> Result<CertificateOutcome> {
    let curve = validate(n, m, t, d, r)?;
    Ok(certify_with_curve(&curve, m, t))
}

fn certify_with_curve(curve: &ReductionCurve, m: i64, t: i64) -> CertificateOutcome {
    let start = MultiplicityTuple::uniform(t, m, curve.n()).expect("validated multiplicity");
    let trace = run_reduction(&start, curve).expect("validated start tuple");
    let d = curve.degree();
    let g = curve.genus();
    let omega = trace.omega;

    let failing_step = trace.intersections[..omega - 1]
        .iter()
        .position(|&dc| dc > g - 1);

    let last = trace.last_nonnegative();
    let mu = last.degree() * d - trace.intersections[omega - 1];
    let tail = t - (omega as i64 - 1) * d;
    let lhs = (tail + 1) * (tail + 2);
    let rhs = 2 * mu;

    let failing_condition = match failing_step {
        Some(step) => Some(FailedCondition::IntersectionTooLarge {
            step,
            intersection: trace.intersections[step],
        }),
        None if lhs > rhs => Some(FailedCondition::FinalStepTooLarge { lhs, rhs }),
        None => None,
    };

    CertificateOutcome {
        t,
        certified: failing_condition.is_none(),
        failing_condition,
        omega,
        mu,
        final_step: (lhs, rhs),
        validated_regime: bound_parameters(
            curve.n() as i64,
            m,
            curve.through() as i64,
            d,
        )
        .is_ok(),
        trace,
    }
}

/// Default scan ceiling for [`best_certified_t`]: `floor((m r + g - 1) / d) + d`.
///
/// Above `d - 1` the first condition is checked at `i = 0`, where it reads
/// `t d - m r <= g - 1`, so no larger `t` can be certified.
pub fn scan_ceiling(m: i64, d: i64, r: i64) -> i64 {
    let g = (d - 1) * (d - 2) / 2;
    (m * r + g - 1).div_euclid(d) + d
}

/// The largest certified `t`, implying `alpha(n, m) >= t + 1`; `None` if no
/// `t >= 0` is certified.
pub fn best_certified_t(n: i64, m: i64, d: i64, r: i64) -> Result<Option<i64>> {
    validate(n, m, 0, d, r)?;
    best_certified_t_below(n, m, d, r, scan_ceiling(m, d, r))
}

/// As [`best_certified_t`], scanning downward from an explicit ceiling. The
/// certified set need not be an interval, so the scan stops at the first
/// (largest) certified degree rather than the end of a run.
pub fn best_certified_t_below(n: i64, m: i64, d: i64, r: i64, ceiling: i64) -> Result<Option<i64>> {
    let curve = validate(n, m, ceiling.max(0), d, r)?;
    Ok((0..=ceiling)
        .rev()
        .find(|&t| certify_with_curve(&curve, m, t).certified))
}

fn uniform_zero_index(m: i64, n: i64, r: i64) -> i64 {
    // Multiplicities stay balanced (all within 1 of each other), so each step
    // removes exactly r from their sum until fewer than r units remain.
    (m * n + r - 1) / r
}

fn validate_lemma(t: i64, m: i64, n: i64, d: i64, r: i64, i: i64) -> Result<ReductionCurve> {
    let curve = validate(n, m, t, d, r)?;
    let limit = uniform_zero_index(m, n, r);
    if i < 0 || i >= limit {
        return Err(Error::StepOutOfRange {
            index: i.max(0) as usize,
            limit: limit as usize,
        });
    }
    Ok(curve)
}

/// Closed form of the `i`-th reduction step from a uniform start:
/// multiplicities `m - i + q + 1` in the first `rho` places and `m - i + q`
/// elsewhere, where `i (n - r) = q n + rho`. Valid for `0 <= i < omega'`.
pub fn lemma_closed_form(t: i64, m: i64, n: i64, d: i64, r: i64, i: i64) -> Result<MultiplicityTuple> {
    validate_lemma(t, m, n, d, r, i)?;
    let shift = i * (n - r);
    let q = shift / n;
    let rho = (shift % n) as usize;
    let base = m - i + q;
    let mut mults = vec![base; n as usize];
    for v in &mut mults[..rho] {
        *v += 1;
    }
    MultiplicityTuple::new(t - i * d, mults)
}

/// Exact rational bounds `(lower, upper)` on `D_i . C - D_0 . C`:
/// `i (r^2/n - d^2) - (r - r^2/n) <= D_i.C - D_0.C <= i (r^2/n - d^2)`.
pub fn lemma_intersection_bounds(
    t: i64,
    m: i64,
    n: i64,
    d: i64,
    r: i64,
    i: i64,
) -> Result<(Ratio<i128>, Ratio<i128>)> {
    validate_lemma(t, m, n, d, r, i)?;
    let (n, d, r, i) = (n as i128, d as i128, r as i128, i as i128);
    let r2n = Ratio::new(r * r, n);
    let upper = (r2n - d * d) * i;
    let lower = upper - (Ratio::from_integer(r) - r2n);
    Ok((lower, upper))
}

/// Derived quantities for the closed-form bound: `n m = u r + rho` with
/// `0 < rho <= r`, and `l = min(l_{2 rho}, d) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundParameters {
    pub u: i64,
    pub rho: i64,
    pub l: i64,
}

/// Checks the preconditions of the closed-form bound and computes its
/// parameters.
pub fn bound_parameters(n: i64, m: i64, r: i64, d: i64) -> Result<BoundParameters> {
    check_at_least("n", n, 1)?;
    check_at_least("m", m, 1)?;
    check_at_least("r", r, 1)?;
    check_at_least("d", d, 1)?;
    let nm = n * m;
    let u = (nm + r - 1) / r - 1;
    let rho = nm - u * r;
    if !(0 < rho && rho <= r && r <= n) {
        return Err(Error::BoundPrecondition(BoundCondition::RemainderRange));
    }
    if r * d * (d + 1) / 2 > r * r {
        return Err(Error::BoundPrecondition(
            BoundCondition::CurveThroughEnoughPoints,
        ));
    }
    if r * r > d * d * n {
        return Err(Error::BoundPrecondition(BoundCondition::NonPositiveSelfDrift));
    }
    let l = l_index(2 * rho)?.min(d) - 1;
    Ok(BoundParameters { u, rho, l })
}

/// `1 + min(floor((m r + g - 1) / d), l + u d)`, a lower bound on `alpha(n, m)`.
pub fn aprop_lower_bound(n: i64, m: i64, r: i64, d: i64) -> Result<i64> {
    let BoundParameters { u, l, .. } = bound_parameters(n, m, r, d)?;
    let g = (d - 1) * (d - 2) / 2;
    Ok(1 + (m * r + g - 1).div_euclid(d).min(l + u * d))
}

/// Whether `(n, m)` is covered by the square-count theorem, and the initial
/// degree it predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremStatus {
    pub applicable: bool,
    /// `sqrt(n)` when `n` is a perfect square.
    pub s: Option<i64>,
    pub x: Option<i64>,
    pub k: Option<i64>,
    pub predicted_alpha: Option<i64>,
}

impl TheoremStatus {
    fn not_applicable(s: Option<i64>) -> Self {
        Self {
            applicable: false,
            s,
            x: None,
            k: None,
            predicted_alpha: None,
        }
    }
}

/// Admissible range `[lo, hi]` of the offset `x` for a given `s >= 2`.
pub fn offset_range(s: i64) -> (i64, i64) {
    if s % 2 == 0 {
        (s / 2 - l_index(s).expect("s >= 2"), s / 2)
    } else {
        ((s + 1) / 2 - l_index(2 * s).expect("s >= 2"), (s + 1) / 2)
    }
}

/// `m s + s/2 - 1` for even `s`, `m s + (s - 1)/2 - 1` for odd `s`.
pub fn predicted_alpha(s: i64, m: i64) -> i64 {
    m * s + s / 2 - 1
}

/// Looks for `m = x + k (s - 1)` with `k >= 0` and `x` in the admissible
/// range, taking the smallest `k`. Inapplicability is a value, not an error.
pub fn mainthm_parameters(n: i64, m: i64) -> TheoremStatus {
    if !(10..=i64::from(i32::MAX)).contains(&n) {
        return TheoremStatus::not_applicable(None);
    }
    let s = n.isqrt();
    if s * s != n {
        return TheoremStatus::not_applicable(None);
    }
    if !(1..=i64::from(i32::MAX)).contains(&m) {
        return TheoremStatus::not_applicable(Some(s));
    }
    let (lo, hi) = offset_range(s);
    // Smallest k with m - k (s - 1) <= hi.
    let k = if m <= hi {
        0
    } else {
        (m - hi + s - 2) / (s - 1)
    };
    let x = m - k * (s - 1);
    if x < lo {
        return TheoremStatus::not_applicable(Some(s));
    }
    TheoremStatus {
        applicable: true,
        s: Some(s),
        x: Some(x),
        k: Some(k),
        predicted_alpha: Some(predicted_alpha(s, m)),
    }
}
