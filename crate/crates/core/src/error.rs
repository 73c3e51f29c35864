use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Inequalities that must hold for the closed-form lower bound on `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCondition {
    /// `0 < rho <= r <= n`, with `n m = u r + rho`.
    RemainderRange,
    /// `r d (d + 1) / 2 <= r^2`.
    CurveThroughEnoughPoints,
    /// `r^2 <= d^2 n`.
    NonPositiveSelfDrift,
}

impl std::fmt::Display for BoundCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundCondition::RemainderRange => "0 < rho <= r <= n",
            BoundCondition::CurveThroughEnoughPoints => "r*d*(d+1)/2 <= r^2",
            BoundCondition::NonPositiveSelfDrift => "r^2 <= d^2*n",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range (expected {expected})")]
    OutOfRange {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },
    #[error("tuple has {found} multiplicities but the curve is defined for n = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("tuple is not in canonical form (sorted descending, nonnegative)")]
    NotCanonical,
    #[error("step index {index} is outside [0, {limit}) for this reduction")]
    StepOutOfRange { index: usize, limit: usize },
    #[error("lower-bound precondition violated: {0}")]
    BoundPrecondition(BoundCondition),
    #[error("n = {0} is below the range n >= 10 covered by the conjectures")]
    BelowConjectureRange(i64),
    #[error("degree {t} is below the initial degree {alpha}")]
    BelowInitialDegree { t: i64, alpha: i64 },
    #[error("conjectured resolution has a negative syzygy count {0}; inputs are inconsistent")]
    NegativeSyzygyCount(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot place {n} distinct affine points over a field of size {p}")]
    TooManyPoints { n: usize, p: u64 },
    #[error("characteristic {p} must exceed the degree {t} and the multiplicity {m}")]
    Characteristic { p: u64, t: u32, m: u32 },
    #[error("no degree t <= {bound} has a nonzero ideal piece for this sample")]
    ScanExhausted { bound: u32 },
    #[error("negative generator count {count} in degree {t}: elimination is inconsistent")]
    NegativeGeneratorCount { t: u32, count: i64 },
    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),
}
