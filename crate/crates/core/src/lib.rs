//! Exact and probabilistic tools for the Hilbert functions of ideals of
//! uniform fat points in the projective plane.
//!
//! * [`tuple`] holds the integer tuple arithmetic behind the reduction
//!   algorithm: intersection products and the reduce/clamp/sort step.
//! * [`certify`] turns reduction traces into certified lower bounds on the
//!   initial degree `alpha(n, m)`, together with the closed forms used to
//!   analyse them for uniform multiplicities and `n = s^2`.
//! * [`conjecture`] evaluates the conjectured Hilbert function and the
//!   conjectured shape of the minimal free resolution.
//! * [`oracle`] computes actual Hilbert functions at random points over a
//!   prime field by exact interpolation-matrix ranks.

pub mod certify;
pub mod conjecture;
mod error;
pub mod oracle;
pub mod tuple;

pub use error::{BoundCondition, Error, Result};

/// `C(a, 2)`, taken to be zero for `a < 2`.
pub fn choose2(a: i64) -> i64 {
    if a < 2 {
        0
    } else {
        a * (a - 1) / 2
    }
}

/// Rejects values outside the 32-bit range accepted by every entry point.
///
/// Keeping inputs within `i32` guarantees that products such as `t * d` or
/// the quadratic in the second certification condition fit in `i64`.
pub(crate) fn check_i32(name: &'static str, value: i64) -> Result<()> {
    if value < i64::from(i32::MIN) || value > i64::from(i32::MAX) {
        return Err(Error::OutOfRange {
            name,
            value,
            expected: "a 32-bit integer",
        });
    }
    Ok(())
}

pub(crate) fn check_at_least(name: &'static str, value: i64, min: i64) -> Result<()> {
    check_i32(name, value)?;
    if value < min {
        return Err(Error::OutOfRange {
            name,
            value,
            expected: match min {
                0 => "a nonnegative integer",
                1 => "a positive integer",
                10 => "an integer >= 10",
                _ => "an integer above the documented minimum",
            },
        });
    }
    Ok(())
}
