//! Sparse matrices over a [`Field`], with exact rank and kernel computation.
//!
//! Elimination is incremental row insertion into a reduced row echelon basis.
//! Pivots are always the smallest remaining column index, so kernel bases
//! are reproducible.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<E> = BTreeMap<usize, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                m.add_to(field, r, c, &field.from_i64(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &E)> {
        self.entries.iter()
    }

    /// Adds `v` to the entry at `(r, c)`, dropping the entry if it cancels.
    pub fn add_to<F: Field<Elem = E>>(&mut self, field: &F, r: usize, c: usize, v: &E) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        if field.is_zero(v) {
            return;
        }
        let sum = match self.entries.get(&(r, c)) {
            Some(old) => field.add(old, v),
            None => v.clone(),
        };
        if field.is_zero(&sum) {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<E>> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].insert(c, v.clone());
        }
        out
    }

    pub fn column_vectors(&self) -> Vec<SparseVec<E>> {
        let mut out = vec![SparseVec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            out[c].insert(r, v.clone());
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, x: &SparseVec<E>) -> SparseVec<E> {
        let mut out = SparseVec::new();
        for (&(r, c), v) in &self.entries {
            if let Some(xc) = x.get(&c) {
                axpy_entry(field, &mut out, r, &field.mul(v, xc));
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let rhs_rows = rhs.row_vectors();
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        for (&(r, k), a) in &self.entries {
            for (&c, b) in &rhs_rows[k] {
                out.add_to(field, r, c, &field.mul(a, b));
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix<E>) -> SparseMatrix<E> {
        let mut out = SparseMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.entries = self.entries.clone();
        for (&(r, c), v) in &other.entries {
            out.entries.insert((r + self.rows, c + self.cols), v.clone());
        }
        out
    }
}

fn axpy_entry<F: Field>(field: &F, v: &mut SparseVec<F::Elem>, idx: usize, a: &F::Elem) {
    if field.is_zero(a) {
        return;
    }
    let sum = match v.get(&idx) {
        Some(old) => field.add(old, a),
        None => a.clone(),
    };
    if field.is_zero(&sum) {
        v.remove(&idx);
    } else {
        v.insert(idx, sum);
    }
}

/// `y += a * x`
pub fn axpy<F: Field>(field: &F, y: &mut SparseVec<F::Elem>, a: &F::Elem, x: &SparseVec<F::Elem>) {
    if field.is_zero(a) {
        return;
    }
    for (&i, xi) in x {
        axpy_entry(field, y, i, &field.mul(a, xi));
    }
}

/// A subspace of `F^cols` kept as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    field: F,
    // pivot column -> row with a 1 at the pivot and zeros at every other pivot
    pivots: BTreeMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F) -> Self {
        RowSpace { field, pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; the result has no pivot columns.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut v = v.clone();
        // pivot rows are fully reduced, so one pass over pivot columns suffices
        let hits: Vec<usize> = v.keys().filter(|c| self.pivots.contains_key(c)).copied().collect();
        for c in hits {
            if let Some(coef) = v.get(&c).cloned() {
                let neg = self.field.neg(&coef);
                axpy(&self.field, &mut v, &neg, &self.pivots[&c]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, lead_val)) = r.iter().next() else {
            return false;
        };
        let inv = self.field.inv(lead_val).expect("nonzero leading entry is invertible");
        for x in r.values_mut() {
            *x = self.field.mul(x, &inv);
        }
        for row in self.pivots.values_mut() {
            if let Some(coef) = row.get(&lead).cloned() {
                let neg = self.field.neg(&coef);
                axpy(&self.field, row, &neg, &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn basis(&self) -> Vec<SparseVec<F::Elem>> {
        self.pivots.values().cloned().collect()
    }
}

/// Reduced row echelon form of `m`: pivot columns and the reduced rows.
pub fn rref<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> RowSpace<F> {
    let mut space = RowSpace::new(field.clone());
    for row in m.row_vectors() {
        space.insert(&row);
    }
    space
}

pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    rref(field, m).dim()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let space = rref(field, m);
    let pivots = &space.pivots;
    let mut out = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains_key(c)) {
        let mut x = SparseVec::new();
        x.insert(free, field.one());
        for (&p, row) in pivots {
            if let Some(v) = row.get(&free) {
                x.insert(p, field.neg(v));
            }
        }
        out.push(x);
    }
    out
}

/// The span of the columns of `m`.
pub fn column_space<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> RowSpace<F> {
    let mut space = RowSpace::new(field.clone());
    for col in m.column_vectors() {
        space.insert(&col);
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn zero_and_identity() {
        let f = Rationals;
        let z: SparseMatrix<_> = SparseMatrix::zeros(3, 3);
        assert_eq!(rank(&f, &z), 0);
        assert_eq!(rank(&f, &SparseMatrix::identity(&f, 4)), 4);
        assert!(kernel_basis(&f, &SparseMatrix::identity(&f, 2)).is_empty());
        let z23: SparseMatrix<_> = SparseMatrix::zeros(2, 3);
        assert_eq!(kernel_basis(&f, &z23).len(), 3);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let f = Rationals;
        let m = SparseMatrix::from_dense(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let ker = kernel_basis(&f, &m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(&f, v).is_empty());
        }
    }

    #[test]
    fn column_space_membership() {
        let f = Rationals;
        let m = SparseMatrix::from_dense(&f, &[vec![1, 0], vec![1, 0], vec![0, 1]]);
        let cs = column_space(&f, &m);
        let inside: SparseVec<_> = [(0, f.from_i64(2)), (1, f.from_i64(2)), (2, f.from_i64(5))].into();
        let outside: SparseVec<_> = [(0, f.from_i64(1))].into();
        assert!(cs.contains(&inside));
        assert!(!cs.contains(&outside));
    }

    proptest! {
        #[test]
        fn rank_nullity_and_modular_agreement(
            dense in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 4),
        ) {
            let q = Rationals;
            let p = PrimeField::default();
            let mq = SparseMatrix::from_dense(&q, &dense);
            let mp = SparseMatrix::from_dense(&p, &dense);
            let r = rank(&q, &mq);
            prop_assert_eq!(r + kernel_basis(&q, &mq).len(), 5);
            prop_assert_eq!(r, rank(&p, &mp));
            prop_assert_eq!(r, rank(&q, &mq.transpose()));
        }
    }
}
