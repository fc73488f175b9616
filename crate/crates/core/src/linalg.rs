//! Exact linear algebra over a [`Field`]: an incremental sparse row echelon
//! form used for ranks of graded pieces, and a dense solver for small
//! overdetermined systems.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::Field;

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Incrementally built semi-echelon basis. Every stored row has a distinct
/// leading column and leading coefficient one.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    pivots: HashMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` until its leading column is not a pivot. Returns the
    /// residual, which is empty iff `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&self.field, &row, &self.field.neg(&coeff), pivot),
                None => break,
            }
        }
        row
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        let scale = self.field.inv(&coeff);
        for entry in row.iter_mut() {
            entry.1 = self.field.mul(&entry.1, &scale);
        }
        self.pivots.insert(lead, row);
        true
    }
}

/// `a + c * b` on sparse rows.
pub fn axpy<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    c: &F::Elem,
    b: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut ech = Echelon::new(field.clone());
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has {free} free variables")]
    Underdetermined { free: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

/// Solves `a x = b` exactly, requiring a unique solution. `a` may have more
/// rows than columns; surplus equations are checked for consistency.
pub fn solve_unique<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[F::Elem],
) -> Result<Vec<F::Elem>, SolveError> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F::Elem>> = Vec::with_capacity(a.len());
    for (r, (row, rhs)) in a.iter().zip(b).enumerate() {
        if row.len() != cols {
            return Err(SolveError::Ragged { row: r, len: row.len(), expected: cols });
        }
        let mut full = row.clone();
        full.push(rhs.clone());
        m.push(full);
    }
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(found) = (pivot_row..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = field.inv(&m[pivot_row][col]);
        for v in m[pivot_row].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for r in 0..m.len() {
            if r != pivot_row && !field.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let delta = field.mul(&factor, &m[pivot_row][c]);
                    m[r][c] = field.sub(&m[r][c], &delta);
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !field.is_zero(&row[cols])) {
        return Err(SolveError::Inconsistent);
    }
    if pivot_cols.len() < cols {
        return Err(SolveError::Underdetermined { free: cols - pivot_cols.len() });
    }
    Ok((0..cols).map(|r| m[r][cols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Exact, PrimeField};
    use num_rational::BigRational;

    #[test]
    fn echelon_rank_and_membership() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(f);
        assert!(e.insert(vec![(0, 1), (2, 3)]));
        assert!(e.insert(vec![(1, 2)]));
        assert!(!e.insert(vec![(0, 2), (1, 4), (2, 1)]));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec![(0, 3), (2, 4)]));
        assert!(!e.contains(vec![(2, 1)]));
        assert!(!e.insert(vec![]));
    }

    #[test]
    fn rational_solve_overdetermined() {
        let q = Exact::<BigRational>::new();
        let r = |v: i64| q.from_i64(v);
        let a = vec![vec![r(1), r(1)], vec![r(1), r(-1)], vec![r(2), r(0)]];
        let b = vec![r(3), r(1), r(4)];
        assert_eq!(solve_unique(&q, &a, &b).unwrap(), vec![r(2), r(1)]);
        let bad = vec![r(3), r(1), r(5)];
        assert_eq!(solve_unique(&q, &a, &bad), Err(SolveError::Inconsistent));
        let a2 = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        assert_eq!(
            solve_unique(&q, &a2, &[r(1), r(2)]),
            Err(SolveError::Underdetermined { free: 1 })
        );
    }
}
