use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use crate::{Error, Result};

/// Distinct points `(1 : a : b)` of the projective plane over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: PrimeField,
    coords: Vec<(u32, u32)>,
}

impl PointSet {
    /// Wraps explicit affine coordinates, rejecting duplicates.
    pub fn from_affine(field: PrimeField, coords: Vec<(u32, u32)>) -> Result<Self> {
        let p = field.modulus();
        let mut seen = HashSet::with_capacity(coords.len());
        for &(a, b) in &coords {
            if u64::from(a) >= p || u64::from(b) >= p || !seen.insert((a, b)) {
                return Err(Error::OutOfRange {
                    name: "point",
                    value: i64::from(a),
                    expected: "distinct reduced coordinates",
                });
            }
        }
        Ok(Self { field, coords })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Affine coordinates `(a, b)` of each point `(1 : a : b)`.
    pub fn affine(&self) -> &[(u32, u32)] {
        &self.coords
    }
}

/// `n` pseudorandom distinct points, reproducible from `(n, p, seed)`.
pub fn sample_points(n: usize, p: u64, seed: u64) -> Result<PointSet> {
    let field = PrimeField::new(p)?;
    if (n as u128) >= u128::from(p) * u128::from(p) {
        return Err(Error::TooManyPoints { n, p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut coords = Vec::with_capacity(n);
    while coords.len() < n {
        let pt = (rng.random_range(0..p) as u32, rng.random_range(0..p) as u32);
        if seen.insert(pt) {
            coords.push(pt);
        }
    }
    Ok(PointSet { field, coords })
}
