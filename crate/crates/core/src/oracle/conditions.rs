//! Linear conditions for a form of degree `t` to vanish to order `m` at a
//! set of points.
//!
//! At a point `(1 : a : b)` a form `f` has multiplicity at least `m` iff every
//! partial derivative `d^i/dy^i d^j/dz^j f` with `i + j < m` vanishes there.
//! That gives `C(m+1, 2)` rows per point against the `C(t+2, 2)` monomials of
//! degree `t`.

use super::field::PrimeField;
use super::linalg::FpMatrix;
use super::points::PointSet;
use crate::{Error, Result};

/// Monomials `x^e0 y^e1 z^e2` of a fixed degree in graded-lex order with
/// `x > y > z`: `e0` descending, then `e1` descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomials {
    degree: u32,
    exponents: Vec<[u32; 3]>,
}

impl Monomials {
    pub fn of_degree(degree: u32) -> Self {
        let mut exponents = Vec::with_capacity(monomial_count(degree));
        for e0 in (0..=degree).rev() {
            let rest = degree - e0;
            for e1 in (0..=rest).rev() {
                exponents.push([e0, e1, rest - e1]);
            }
        }
        Self { degree, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[[u32; 3]] {
        &self.exponents
    }

    /// Position of `x^e0 y^e1 z^e2` for exponents summing to this degree.
    pub fn index_of(&self, e: [u32; 3]) -> usize {
        debug_assert_eq!(e[0] + e[1] + e[2], self.degree);
        let j = (self.degree - e[0]) as usize;
        j * (j + 1) / 2 + (j - e[1] as usize)
    }
}

/// `C(t+2, 2)`.
pub fn monomial_count(t: u32) -> usize {
    let t = t as usize;
    (t + 2) * (t + 1) / 2
}

/// `n C(m+1, 2)` vanishing conditions on the `C(t+2, 2)` forms of degree `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionsMatrix {
    pub multiplicity: u32,
    pub degree: u32,
    pub matrix: FpMatrix,
}

impl ConditionsMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }
}

pub(crate) fn check_characteristic(p: u64, m: u32, t: u32) -> Result<()> {
    if p <= u64::from(t) || p <= u64::from(m) {
        return Err(Error::Characteristic { p, t, m });
    }
    Ok(())
}

/// Derivative orders `(i, j)` with `i + j < m`, by total order then `i`
/// descending.
pub fn derivative_orders(m: u32) -> Vec<(u32, u32)> {
    (0..m)
        .flat_map(|k| (0..=k).rev().map(move |i| (i, k - i)))
        .collect()
}

/// Row `(point, (i, j))` against column `x^e0 y^e1 z^e2` holds
/// `e1!/(e1-i)! * e2!/(e2-j)! * a^(e1-i) * b^(e2-j)`.
pub fn conditions_matrix(points: &PointSet, m: u32, t: u32) -> Result<ConditionsMatrix> {
    let field = points.field();
    check_characteristic(field.modulus(), m, t)?;
    let monomials = Monomials::of_degree(t);
    let orders = derivative_orders(m);
    let falling = falling_factorials(field, t, m);

    let cols = monomials.len();
    let mut matrix = FpMatrix::zeros(points.len() * orders.len(), cols);
    let mut row = 0;
    for &(a, b) in points.affine() {
        let pow_a = powers(field, a, t);
        let pow_b = powers(field, b, t);
        for &(i, j) in &orders {
            let out = matrix.row_mut(row);
            for (col, &[_, e1, e2]) in monomials.exponents().iter().enumerate() {
                if e1 < i || e2 < j {
                    continue;
                }
                let coeff = field.mul(falling[e1 as usize][i as usize], falling[e2 as usize][j as usize]);
                let value = field.mul(pow_a[(e1 - i) as usize], pow_b[(e2 - j) as usize]);
                out[col] = field.mul(coeff, value);
            }
            row += 1;
        }
    }
    Ok(ConditionsMatrix {
        multiplicity: m,
        degree: t,
        matrix,
    })
}

fn powers(field: PrimeField, base: u32, top: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(top as usize + 1);
    let mut acc = 1u32;
    for _ in 0..=top {
        out.push(acc);
        acc = field.mul(acc, base);
    }
    out
}

/// `table[e][i] = e (e-1) ... (e-i+1)` for `e <= t`, `i < m`.
fn falling_factorials(field: PrimeField, t: u32, m: u32) -> Vec<Vec<u32>> {
    (0..=t)
        .map(|e| {
            let mut row = Vec::with_capacity(m as usize);
            let mut acc = 1u32;
            for i in 0..m {
                row.push(acc);
                acc = if i < e { field.mul(acc, field.reduce(u64::from(e - i))) } else { 0 };
            }
            row
        })
        .collect()
}
