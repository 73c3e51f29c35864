//! Brute-force Hilbert functions of uniform fat-point ideals at random
//! points over a prime field.
//!
//! Random points can only be more special than general ones, so every value
//! computed here is an upper bound for the generic Hilbert function and in
//! particular never drops below the condition count
//! `max(0, C(t+2, 2) - n C(m+1, 2))`. A match with that count certifies the
//! generic value; any other match holds with high probability over the
//! sample. The reduction from characteristic zero to `F_p` is the usual
//! semicontinuity argument and is an assumption of this method.

pub mod conditions;
mod crosscheck;
pub mod field;
pub mod linalg;
pub mod points;

pub use conditions::{conditions_matrix, monomial_count, ConditionsMatrix, Monomials};
pub use crosscheck::{
    verify_conjecture, with_reseeds, GeneratorComparison, HilbertComparison, Reseeded, Verification,
};
pub use field::{is_prime, PrimeField};
pub use linalg::{Echelon, FpMatrix};
pub use points::{sample_points, PointSet};

use serde::Serialize;

use crate::conjecture::conjectured_alpha;
use crate::{Error, Result};
use conditions::check_characteristic;

/// Largest prime below `2^16`.
pub const DEFAULT_PRIME: u64 = 65521;

/// Fresh samples tried after a first mismatch before reporting one.
pub const MAX_RESEEDS: u32 = 3;

/// One rank computation: `h(t)` for `n` points of multiplicity `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleProblem {
    pub n: usize,
    pub m: u32,
    pub t: u32,
    pub prime: u64,
    pub seed: u64,
}

/// A fixed point sample together with the multiplicity imposed at each point.
#[derive(Debug, Clone)]
pub struct FatPointSample {
    points: PointSet,
    multiplicity: u32,
}

impl FatPointSample {
    pub fn new(n: usize, m: u32, prime: u64, seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::OutOfRange {
                name: if n == 0 { "n" } else { "m" },
                value: 0,
                expected: "a positive integer",
            });
        }
        Ok(Self::from_points(sample_points(n, prime, seed)?, m))
    }

    pub fn from_points(points: PointSet, multiplicity: u32) -> Self {
        Self {
            points,
            multiplicity,
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    fn field(&self) -> PrimeField {
        self.points.field()
    }

    pub fn conditions(&self, t: u32) -> Result<ConditionsMatrix> {
        conditions_matrix(&self.points, self.multiplicity, t)
    }

    /// `dim I_t = C(t+2, 2) - rank` of the conditions matrix.
    pub fn hilbert(&self, t: u32) -> Result<u64> {
        let cond = self.conditions(t)?;
        Ok((cond.cols() - cond.matrix.rank(self.field())) as u64)
    }

    /// A basis of `I_t` as coefficient vectors over [`Monomials::of_degree`].
    pub fn ideal_basis(&self, t: u32) -> Result<Vec<Vec<u32>>> {
        Ok(self.conditions(t)?.matrix.null_space(self.field()))
    }

    /// Least `t <= bound` with `I_t != 0`.
    ///
    /// `h` is non-decreasing in `t` for any sample (multiplying by a linear
    /// form is injective), so a bisection finds the same degree as a scan.
    pub fn alpha(&self, bound: u32) -> Result<u32> {
        check_characteristic(self.field().modulus(), self.multiplicity, bound)?;
        if self.hilbert(bound)? == 0 {
            return Err(Error::ScanExhausted { bound });
        }
        let (mut lo, mut hi) = (0u32, bound);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.hilbert(mid)? > 0 {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Number of minimal generators in degree `t`: `h(t)` minus the rank of
    /// `R_1 x I_{t-1} -> I_t`.
    pub fn generator_count(&self, t: u32) -> Result<u64> {
        let h = self.hilbert(t)?;
        if t == 0 {
            return Ok(h);
        }
        let lower = self.ideal_basis(t - 1)?;
        let lower_mons = Monomials::of_degree(t - 1);
        let upper_mons = Monomials::of_degree(t);
        let mut span = Echelon::new(self.field(), upper_mons.len());
        'outer: for f in &lower {
            for var in 0..3 {
                if span.is_full() {
                    break 'outer;
                }
                let mut g = vec![0u32; upper_mons.len()];
                for (&coeff, &e) in f.iter().zip(lower_mons.exponents()) {
                    if coeff != 0 {
                        let mut shifted = e;
                        shifted[var] += 1;
                        g[upper_mons.index_of(shifted)] = coeff;
                    }
                }
                span.insert(&g);
            }
        }
        let count = h as i64 - span.rank() as i64;
        if count < 0 {
            return Err(Error::NegativeGeneratorCount { t, count });
        }
        Ok(count as u64)
    }

    pub fn generator_counts(&self, t_lo: u32, t_hi: u32) -> Result<Vec<(u32, u64)>> {
        (t_lo..=t_hi)
            .map(|t| Ok((t, self.generator_count(t)?)))
            .collect()
    }
}

/// `C(t+2, 2) - rank` of the conditions matrix at a fresh sample.
pub fn hilbert_oracle(problem: &OracleProblem) -> Result<u64> {
    check_characteristic(problem.prime, problem.m, problem.t)?;
    FatPointSample::new(problem.n, problem.m, problem.prime, problem.seed)?.hilbert(problem.t)
}

/// Upper end of the degree search for [`alpha_oracle`]: five past the
/// conjectured value when `n >= 10`, `3 n m` otherwise.
pub fn alpha_scan_bound(n: usize, m: u32) -> u32 {
    if n >= 10 {
        if let Ok(alpha) = conjectured_alpha(n as i64, i64::from(m)) {
            return (alpha + 5) as u32;
        }
    }
    (3 * n as u64 * u64::from(m)).min(u64::from(u32::MAX)) as u32
}

pub fn alpha_oracle(n: usize, m: u32, prime: u64, seed: u64) -> Result<u32> {
    FatPointSample::new(n, m, prime, seed)?.alpha(alpha_scan_bound(n, m))
}

pub fn generator_counts_oracle(
    n: usize,
    m: u32,
    prime: u64,
    seed: u64,
    t_lo: u32,
    t_hi: u32,
) -> Result<Vec<(u32, u64)>> {
    if t_lo > t_hi {
        return Err(Error::OutOfRange {
            name: "t_lo",
            value: i64::from(t_lo),
            expected: "t_lo <= t_hi",
        });
    }
    check_characteristic(prime, m, t_hi)?;
    FatPointSample::new(n, m, prime, seed)?.generator_counts(t_lo, t_hi)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `attempt`-th sample; attempt 0 uses `seed` itself.
pub fn reseed(seed: u64, attempt: u32) -> u64 {
    if attempt == 0 {
        seed
    } else {
        splitmix64(seed ^ splitmix64(u64::from(attempt)))
    }
}

/// Per-cell seed `seed ^ hash(n, m, t)` for sweeps, stable across platforms.
pub fn cell_seed(seed: u64, n: usize, m: u32, t: u32) -> u64 {
    let key = splitmix64(n as u64) ^ splitmix64(u64::from(m) << 32 | u64::from(t));
    seed ^ splitmix64(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choose2;

    fn problem(n: usize, m: u32, t: u32) -> OracleProblem {
        OracleProblem {
            n,
            m,
            t,
            prime: DEFAULT_PRIME,
            seed: 0,
        }
    }

    #[test]
    fn hilbert_examples() {
        for seed in [0, 1, 99] {
            let p = OracleProblem { seed, ..problem(1, 1, 1) };
            assert_eq!(hilbert_oracle(&p).unwrap(), 2);
        }
        assert_eq!(hilbert_oracle(&problem(16, 2, 9)).unwrap(), 7);
        assert_eq!(hilbert_oracle(&problem(16, 2, 8)).unwrap(), 0);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_oracle(16, 1, DEFAULT_PRIME, 0).unwrap(), 5);
        assert_eq!(alpha_oracle(25, 1, DEFAULT_PRIME, 0).unwrap(), 6);
        assert_eq!(alpha_oracle(16, 2, DEFAULT_PRIME, 0).unwrap(), 9);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            generator_counts_oracle(16, 2, DEFAULT_PRIME, 0, 9, 10).unwrap(),
            vec![(9, 7), (10, 0)]
        );
        assert_eq!(
            generator_counts_oracle(25, 1, DEFAULT_PRIME, 0, 6, 7).unwrap(),
            vec![(6, 3), (7, 2)]
        );
        assert_eq!(
            generator_counts_oracle(16, 2, DEFAULT_PRIME, 0, 0, 8).unwrap(),
            (0..=8).map(|t| (t, 0)).collect::<Vec<_>>()
        );
        assert!(generator_counts_oracle(16, 2, DEFAULT_PRIME, 0, 3, 2).is_err());
    }

    #[test]
    fn lower_bound_and_monotone() {
        let sample = FatPointSample::new(12, 2, DEFAULT_PRIME, 4).unwrap();
        let mut prev = 0;
        for t in 0..14u32 {
            let h = sample.hilbert(t).unwrap();
            let count = choose2(i64::from(t) + 2) - 12 * 3;
            assert!(h as i64 >= count.max(0));
            assert!(h >= prev);
            prev = h;
        }
    }

    #[test]
    fn collinear_points_are_special() {
        // Three points on the line y = 0 force h_{(3,1)}(1) = 1 > 0.
        let f = PrimeField::new(101).unwrap();
        let pts = PointSet::from_affine(f, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = FatPointSample::from_points(pts, 1);
        assert_eq!(s.hilbert(1).unwrap(), 1);
        assert_eq!(s.alpha(5).unwrap(), 1);
    }

    #[test]
    fn scan_exhaustion_is_reported() {
        let s = FatPointSample::new(16, 2, DEFAULT_PRIME, 0).unwrap();
        assert_eq!(s.alpha(8), Err(Error::ScanExhausted { bound: 8 }));
    }

    #[test]
    fn permuting_points_keeps_values() {
        let s = FatPointSample::new(11, 2, DEFAULT_PRIME, 8).unwrap();
        let mut coords = s.points().affine().to_vec();
        coords.reverse();
        coords.swap(0, 5);
        let permuted =
            FatPointSample::from_points(PointSet::from_affine(s.points().field(), coords).unwrap(), 2);
        for t in 5..10 {
            assert_eq!(s.hilbert(t).unwrap(), permuted.hilbert(t).unwrap());
        }
    }

    #[test]
    fn characteristic_errors() {
        let p = OracleProblem {
            prime: 7,
            ..problem(3, 1, 7)
        };
        assert!(matches!(hilbert_oracle(&p), Err(Error::Characteristic { .. })));
        let p = OracleProblem {
            prime: 8,
            ..problem(3, 1, 2)
        };
        assert_eq!(hilbert_oracle(&p), Err(Error::NotPrime(8)));
    }

    #[test]
    fn seeds() {
        assert_eq!(reseed(42, 0), 42);
        assert_ne!(reseed(42, 1), reseed(42, 2));
        assert_eq!(cell_seed(7, 16, 2, 0), cell_seed(7, 16, 2, 0));
        assert_ne!(cell_seed(7, 16, 2, 0), cell_seed(7, 16, 3, 0));
        assert_eq!(alpha_scan_bound(16, 2), 14);
        assert_eq!(alpha_scan_bound(4, 2), 24);
    }
}
