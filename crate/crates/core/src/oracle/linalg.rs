//! Exact row echelon forms over a prime field.
//!
//! Rows are inserted one at a time and reduced against the pivots found so
//! far, taking the first nonzero column as the new pivot. Reductions
//! accumulate in `u64` and are only brought back modulo `p` when the
//! accumulator budget runs out, which keeps the inner loop free of divisions.

use super::field::PrimeField;

/// A dense matrix over `F_p`, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn echelon(&self, field: PrimeField) -> Echelon {
        let mut ech = Echelon::new(field, self.cols);
        for i in 0..self.rows {
            if ech.is_full() {
                break;
            }
            ech.insert(self.row(i));
        }
        ech
    }

    pub fn rank(&self, field: PrimeField) -> usize {
        self.echelon(field).rank()
    }

    /// A basis of `{ v : M v = 0 }`.
    pub fn null_space(&self, field: PrimeField) -> Vec<Vec<u32>> {
        self.echelon(field).null_space()
    }
}

/// Row echelon form built incrementally; pivot rows are normalized to a
/// leading one and indexed by their pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    pivots: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self {
            field,
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.cols
    }

    /// Reduces `row` against the current pivots; returns `true` if it was
    /// independent and became a new pivot row.
    pub fn insert(&mut self, row: &[u32]) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let p = self.field.modulus();
        let budget = self.field.lazy_budget();
        let mut acc: Vec<u64> = row.iter().map(|&x| u64::from(x) % p).collect();
        let mut pending = 0u64;
        for c in 0..self.cols {
            let x = acc[c] % p;
            if x == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(pivot) => {
                    let f = p - x;
                    acc[c] = 0;
                    for (a, &v) in acc[c + 1..].iter_mut().zip(&pivot[c + 1..]) {
                        *a += f * u64::from(v);
                    }
                    pending += 1;
                    if pending == budget {
                        for a in &mut acc[c + 1..] {
                            *a %= p;
                        }
                        pending = 0;
                    }
                }
                None => {
                    let inv = u64::from(self.field.inv(x as u32));
                    let mut pivot = vec![0u32; self.cols];
                    pivot[c] = 1;
                    for (dst, &a) in pivot[c + 1..].iter_mut().zip(&acc[c + 1..]) {
                        *dst = ((a % p) * inv % p) as u32;
                    }
                    self.pivots[c] = Some(pivot);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivots[c].is_some()).collect()
    }

    /// Back-substitutes so every pivot column is a unit vector.
    fn reduce_fully(&mut self) {
        let field = self.field;
        let pivot_cols = self.pivot_columns();
        for (idx, &c) in pivot_cols.iter().enumerate().rev() {
            let lower = self.pivots[c].take().expect("pivot column");
            for &above in &pivot_cols[..idx] {
                let row = self.pivots[above].as_mut().expect("pivot column");
                let x = row[c];
                if x == 0 {
                    continue;
                }
                let f = field.neg(x);
                for j in c..self.cols {
                    row[j] = field.add(row[j], field.mul(f, lower[j]));
                }
            }
            self.pivots[c] = Some(lower);
        }
    }

    /// A basis of the null space, one vector per non-pivot column.
    pub fn null_space(mut self) -> Vec<Vec<u32>> {
        self.reduce_fully();
        let field = self.field;
        let pivot_cols = self.pivot_columns();
        (0..self.cols)
            .filter(|&c| self.pivots[c].is_none())
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for &pc in &pivot_cols {
                    let row = self.pivots[pc].as_ref().expect("pivot column");
                    v[pc] = field.neg(row[free]);
                }
                v
            })
            .collect()
    }
}
