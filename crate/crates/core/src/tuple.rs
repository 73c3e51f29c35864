//! Integer `(n+1)`-tuples `(t, m_1, ..., m_n)` and the reduction sequence
//! obtained by repeatedly subtracting a fixed curve tuple.

use serde::Serialize;

use crate::{check_at_least, check_i32, Error, Result};

/// Whether a tuple's multiplicities are sorted descending and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleForm {
    Canonical,
    Raw,
}

/// A degree together with `n` point multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityTuple {
    degree: i64,
    multiplicities: Vec<i64>,
    form: TupleForm,
}

impl MultiplicityTuple {
    /// Builds a tuple, recording whether it already is canonical. Entries are
    /// never reordered or clamped here.
    pub fn new(degree: i64, multiplicities: Vec<i64>) -> Result<Self> {
        check_i32("degree", degree)?;
        for &m in &multiplicities {
            check_i32("multiplicity", m)?;
        }
        let form = if is_canonical(&multiplicities) {
            TupleForm::Canonical
        } else {
            TupleForm::Raw
        };
        Ok(Self {
            degree,
            multiplicities,
            form,
        })
    }

    /// The uniform tuple `(t, m, ..., m)` with `n` equal multiplicities.
    pub fn uniform(degree: i64, multiplicity: i64, n: usize) -> Result<Self> {
        check_at_least("multiplicity", multiplicity, 0)?;
        Self::new(degree, vec![multiplicity; n])
    }

    /// Clamps negative multiplicities to zero and sorts them descending.
    /// The degree is left untouched.
    pub fn canonicalize(mut self) -> Self {
        for m in &mut self.multiplicities {
            if *m < 0 {
                *m = 0;
            }
        }
        self.multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        self.form = TupleForm::Canonical;
        self
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    pub fn n(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn form(&self) -> TupleForm {
        self.form
    }

    pub fn is_canonical(&self) -> bool {
        self.form == TupleForm::Canonical
    }

    pub fn multiplicity_sum(&self) -> i64 {
        self.multiplicities.iter().sum()
    }

    pub fn all_multiplicities_zero(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }
}

impl std::fmt::Display for MultiplicityTuple {
    /// Run-length notation: `(5; 2x4, 1x12)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}", self.degree)?;
        let mut sep = ";";
        let mut rest = self.multiplicities.as_slice();
        while let Some(&value) = rest.first() {
            let run = rest.iter().take_while(|&&v| v == value).count();
            write!(f, "{sep} {value}x{run}")?;
            sep = ",";
            rest = &rest[run..];
        }
        write!(f, ")")
    }
}

fn is_canonical(multiplicities: &[i64]) -> bool {
    multiplicities.iter().all(|&m| m >= 0) && multiplicities.windows(2).all(|w| w[0] >= w[1])
}

/// The tuple `(d, 1 x r, 0 x (n - r))`: a degree-`d` curve through `r` of
/// the `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionCurve {
    n: usize,
    degree: i64,
    through: usize,
}

impl ReductionCurve {
    pub fn new(n: usize, degree: i64, through: usize) -> Result<Self> {
        check_at_least("n", n as i64, 1)?;
        check_at_least("d", degree, 1)?;
        if through < 1 || through > n {
            return Err(Error::OutOfRange {
                name: "r",
                value: through as i64,
                expected: "1 <= r <= n",
            });
        }
        Ok(Self {
            n,
            degree,
            through,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Number of points the curve passes through (`r`).
    pub fn through(&self) -> usize {
        self.through
    }

    /// Arithmetic genus of a plane curve of this degree.
    pub fn genus(&self) -> i64 {
        genus_of_degree(self.degree)
    }

    /// The full `(n+1)`-tuple.
    pub fn to_tuple(&self) -> MultiplicityTuple {
        let mut mults = vec![1; self.through];
        mults.resize(self.n, 0);
        MultiplicityTuple {
            degree: self.degree,
            multiplicities: mults,
            form: TupleForm::Canonical,
        }
    }
}

fn genus_of_degree(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// `(d - 1)(d - 2) / 2`.
pub fn genus(d: i64) -> Result<i64> {
    check_at_least("d", d, 1)?;
    Ok(genus_of_degree(d))
}

/// `D . C = t d - (m_1 + ... + m_r)` for a canonical `D`.
pub fn intersection_product(tuple: &MultiplicityTuple, curve: &ReductionCurve) -> Result<i64> {
    check_same_n(tuple, curve)?;
    if !tuple.is_canonical() {
        return Err(Error::NotCanonical);
    }
    Ok(intersect_unchecked(tuple, curve))
}

fn intersect_unchecked(tuple: &MultiplicityTuple, curve: &ReductionCurve) -> i64 {
    let top: i64 = tuple.multiplicities[..curve.through].iter().sum();
    tuple.degree * curve.degree - top
}

fn check_same_n(tuple: &MultiplicityTuple, curve: &ReductionCurve) -> Result<()> {
    if tuple.n() != curve.n {
        return Err(Error::LengthMismatch {
            expected: curve.n,
            found: tuple.n(),
        });
    }
    Ok(())
}

/// Subtracts `C`, clamps negative multiplicities to zero and re-sorts.
pub fn reduce_step(tuple: &MultiplicityTuple, curve: &ReductionCurve) -> Result<MultiplicityTuple> {
    check_same_n(tuple, curve)?;
    if !tuple.is_canonical() {
        return Err(Error::NotCanonical);
    }
    Ok(reduce_unchecked(tuple, curve))
}

fn reduce_unchecked(tuple: &MultiplicityTuple, curve: &ReductionCurve) -> MultiplicityTuple {
    let mut mults = tuple.multiplicities.clone();
    for m in &mut mults[..curve.through] {
        *m -= 1;
    }
    MultiplicityTuple {
        degree: tuple.degree - curve.degree,
        multiplicities: mults,
        form: TupleForm::Raw,
    }
    .canonicalize()
}

/// Index of the first step whose multiplicities all vanish, if it occurs no
/// later than `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroIndex {
    Reached(usize),
    NotReachedByOmega,
}

impl ZeroIndex {
    pub fn reached(self) -> Option<usize> {
        match self {
            ZeroIndex::Reached(i) => Some(i),
            ZeroIndex::NotReachedByOmega => None,
        }
    }
}

/// `D_0, ..., D_omega` together with the termination indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub curve: ReductionCurve,
    pub steps: Vec<MultiplicityTuple>,
    /// Least `i` with a negative degree entry.
    pub omega: usize,
    /// Least `i` with all multiplicities zero.
    pub omega_prime: ZeroIndex,
    /// `D_i . C` for every recorded step.
    pub intersections: Vec<i64>,
}

impl ReductionTrace {
    pub fn start(&self) -> &MultiplicityTuple {
        &self.steps[0]
    }

    pub fn last_nonnegative(&self) -> &MultiplicityTuple {
        &self.steps[self.omega - 1]
    }
}

/// Applies [`reduce_step`] until the degree entry becomes negative.
pub fn run_reduction(start: &MultiplicityTuple, curve: &ReductionCurve) -> Result<ReductionTrace> {
    check_same_n(start, curve)?;
    if !start.is_canonical() {
        return Err(Error::NotCanonical);
    }
    check_at_least("degree", start.degree, 0)?;

    let capacity = (start.degree / curve.degree + 2) as usize;
    let mut steps = Vec::with_capacity(capacity);
    let mut intersections = Vec::with_capacity(capacity);
    let mut omega_prime = ZeroIndex::NotReachedByOmega;
    let mut current = start.clone();
    loop {
        let i = steps.len();
        if omega_prime == ZeroIndex::NotReachedByOmega && current.all_multiplicities_zero() {
            omega_prime = ZeroIndex::Reached(i);
        }
        intersections.push(intersect_unchecked(&current, curve));
        let next = reduce_unchecked(&current, curve);
        let done = current.degree < 0;
        steps.push(current);
        if done {
            break;
        }
        current = next;
    }
    Ok(ReductionTrace {
        curve: *curve,
        omega: steps.len() - 1,
        steps,
        omega_prime,
        intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tup(degree: i64, runs: &[(i64, usize)]) -> MultiplicityTuple {
        let mults = runs
            .iter()
            .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
            .collect();
        MultiplicityTuple::new(degree, mults).unwrap()
    }

    fn c16() -> ReductionCurve {
        ReductionCurve::new(16, 3, 12).unwrap()
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(1).unwrap(), 0);
        assert_eq!(genus(3).unwrap(), 1);
        assert_eq!(genus(4).unwrap(), 3);
        assert!(genus(0).is_err());
    }

    #[test]
    fn intersection_examples() {
        let c = c16();
        assert_eq!(intersection_product(&tup(7, &[(0, 16)]), &c).unwrap(), 21);
        assert_eq!(intersection_product(&tup(8, &[(2, 16)]), &c).unwrap(), 0);
        assert_eq!(
            intersection_product(&tup(5, &[(2, 4), (1, 12)]), &c).unwrap(),
            -1
        );
    }

    #[test]
    fn intersection_rejects_mismatch_and_raw() {
        let c = c16();
        assert_eq!(
            intersection_product(&tup(1, &[(1, 15)]), &c),
            Err(Error::LengthMismatch {
                expected: 16,
                found: 15
            })
        );
        let raw = MultiplicityTuple::new(1, (0..16).collect()).unwrap();
        assert_eq!(raw.form(), TupleForm::Raw);
        assert_eq!(intersection_product(&raw, &c), Err(Error::NotCanonical));
    }

    #[test]
    fn reduce_examples() {
        let c = c16();
        assert_eq!(
            reduce_step(&c.to_tuple(), &c).unwrap(),
            tup(0, &[(0, 16)])
        );
        assert_eq!(
            reduce_step(&tup(8, &[(2, 16)]), &c).unwrap(),
            tup(5, &[(2, 4), (1, 12)])
        );
        assert_eq!(
            reduce_step(&tup(2, &[(1, 8), (0, 8)]), &c).unwrap(),
            tup(-1, &[(0, 16)])
        );
    }

    #[test]
    fn hand_trace() {
        let trace = run_reduction(&tup(8, &[(2, 16)]), &c16()).unwrap();
        assert_eq!(
            trace.steps,
            vec![
                tup(8, &[(2, 16)]),
                tup(5, &[(2, 4), (1, 12)]),
                tup(2, &[(1, 8), (0, 8)]),
                tup(-1, &[(0, 16)]),
            ]
        );
        assert_eq!(trace.omega, 3);
        assert_eq!(trace.omega_prime, ZeroIndex::Reached(3));
        assert_eq!(trace.intersections, vec![0, -1, -2, -3]);
    }

    #[test]
    fn zero_start_and_omega_formula() {
        let c = c16();
        let trace = run_reduction(&tup(10, &[(0, 16)]), &c).unwrap();
        assert_eq!(trace.omega, 10 / 3 + 1);
        assert_eq!(trace.omega_prime, ZeroIndex::Reached(0));
        assert!(trace.steps.iter().all(|s| s.all_multiplicities_zero()));

        let trace = run_reduction(&tup(9, &[(2, 16)]), &c).unwrap();
        assert_eq!(trace.omega, 4);
    }

    #[test]
    fn omega_prime_not_reached() {
        let c = ReductionCurve::new(4, 1, 1).unwrap();
        let trace = run_reduction(&tup(1, &[(5, 4)]), &c).unwrap();
        assert_eq!(trace.omega, 2);
        assert_eq!(trace.omega_prime, ZeroIndex::NotReachedByOmega);
    }

    #[test]
    fn rejects_negative_start() {
        assert!(run_reduction(&tup(-1, &[(0, 16)]), &c16()).is_err());
    }

    #[test]
    fn curve_validation() {
        assert!(ReductionCurve::new(16, 0, 3).is_err());
        assert!(ReductionCurve::new(16, 3, 0).is_err());
        assert!(ReductionCurve::new(16, 3, 17).is_err());
        assert_eq!(c16().genus(), 1);
    }

    #[test]
    fn display_run_length() {
        assert_eq!(tup(5, &[(2, 4), (1, 12)]).to_string(), "(5; 2x4, 1x12)");
        assert_eq!(MultiplicityTuple::new(3, vec![]).unwrap().to_string(), "(3)");
    }
}
