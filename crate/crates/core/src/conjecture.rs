//! The conjectured Hilbert function `h(t) = max(0, C(t+2, 2) - n C(m+1, 2))`
//! for `n >= 10` general points of multiplicity `m`, and the conjectured
//! minimal free resolution
//!
//! ```text
//! 0 -> R(-a-2)^d + R(-a-1)^c -> R(-a-1)^b + R(-a)^a -> I -> 0
//! ```
//!
//! whose graded Betti numbers are determined by `h` near the initial degree.

use serde::Serialize;

use crate::{check_at_least, choose2, Error, Result};

fn validate(n: i64, m: i64) -> Result<()> {
    check_at_least("n", n, 1)?;
    if n < 10 {
        return Err(Error::BelowConjectureRange(n));
    }
    check_at_least("m", m, 1)
}

/// `n C(m+1, 2)`, the number of linear conditions imposed by the points.
pub fn condition_count(n: i64, m: i64) -> Result<i64> {
    n.checked_mul(choose2(m + 1))
        .ok_or(Error::Overflow("n * C(m+1, 2)"))
}

/// `max(0, C(t+2, 2) - n C(m+1, 2))`.
pub fn conjectured_hilbert(n: i64, m: i64, t: i64) -> Result<i64> {
    validate(n, m)?;
    check_at_least("t", t, 0)?;
    Ok((choose2(t + 2) - condition_count(n, m)?).max(0))
}

/// Least `t` with `C(t+2, 2) > n C(m+1, 2)`.
pub fn conjectured_alpha(n: i64, m: i64) -> Result<i64> {
    validate(n, m)?;
    let conditions = condition_count(n, m)?;
    let twice = conditions
        .checked_mul(2)
        .ok_or(Error::Overflow("2 * n * C(m+1, 2)"))?;
    // (t+2)(t+1) <= twice for t = isqrt(twice) - 2, so the answer is above.
    let mut t = (twice.isqrt() - 2).max(0);
    while choose2(t + 2) <= conditions {
        t += 1;
    }
    Ok(t)
}

/// Graded Betti numbers of the conjectured two-step resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiData {
    /// Initial degree.
    pub alpha: i64,
    /// Minimal generators in degree `alpha` (`a`).
    pub gens_alpha: i64,
    /// Minimal generators in degree `alpha + 1` (`b`).
    pub gens_alpha1: i64,
    /// Syzygies in degree `alpha + 1` (`c`).
    pub syz_alpha1: i64,
    /// Syzygies in degree `alpha + 2` (`d`).
    pub syz_alpha2: i64,
}

impl BettiData {
    /// `a >= 1`, `b, c >= 0`, `b c = 0` and `d = a + b - c - 1 >= 0`.
    pub fn is_consistent(&self) -> bool {
        self.gens_alpha >= 1
            && self.gens_alpha1 >= 0
            && self.syz_alpha1 >= 0
            && self.gens_alpha1 * self.syz_alpha1 == 0
            && self.syz_alpha2 == self.gens_alpha + self.gens_alpha1 - self.syz_alpha1 - 1
            && self.syz_alpha2 >= 0
    }
}

pub fn conjectured_resolution(n: i64, m: i64) -> Result<BettiData> {
    let alpha = conjectured_alpha(n, m)?;
    let h0 = conjectured_hilbert(n, m, alpha)?;
    let h1 = conjectured_hilbert(n, m, alpha + 1)?;
    let a = h0;
    let b = (h1 - 3 * h0).max(0);
    let c = (3 * h0 - h1).max(0);
    let d = a + b - c - 1;
    if d < 0 {
        return Err(Error::NegativeSyzygyCount(d));
    }
    Ok(BettiData {
        alpha,
        gens_alpha: a,
        gens_alpha1: b,
        syz_alpha1: c,
        syz_alpha2: d,
    })
}

/// Dimension in degree `t` of the ideal presented by `betti`:
/// `a C(t-alpha+2, 2) + (b - c) C(t-alpha+1, 2) - d C(t-alpha, 2)`.
pub fn resolution_hilbert_check(betti: &BettiData, t: i64) -> Result<i64> {
    if t < betti.alpha {
        return Err(Error::BelowInitialDegree {
            t,
            alpha: betti.alpha,
        });
    }
    let e = t - betti.alpha;
    Ok(betti.gens_alpha * choose2(e + 2)
        + (betti.gens_alpha1 - betti.syz_alpha1) * choose2(e + 1)
        - betti.syz_alpha2 * choose2(e))
}
