//! Exact sparse linear algebra over the rationals.
//!
//! Two independent routes are provided: [`SparseMatrix::rank`] uses
//! fraction-free (Bareiss) elimination on integer rows, while
//! [`EchelonBasis`] maintains a rational row-echelon basis that supports
//! span membership, solving with tracked combinations, and nullspaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polyalg::Rational;

/// Sparse vector: index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `acc += c * v`, dropping zeros.
pub fn axpy(acc: &mut SparseVec, c: &Rational, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in v {
        let entry = acc.entry(i).or_insert_with(Rational::zero);
        *entry += c * x;
        if entry.is_zero() {
            acc.remove(&i);
        }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, columns: vec![SparseVec::new(); ncols] }
    }

    pub fn from_columns(nrows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&i| i < nrows)));
        SparseMatrix { nrows, columns }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j].get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, v) in col {
                rows[i].insert(j, v.clone());
            }
        }
        rows
    }

    /// `self * v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.columns[j]);
        }
        out
    }

    /// `self * rhs`. Panics on shape mismatch.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "shape mismatch");
        SparseMatrix {
            nrows: self.nrows,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let rows = self.rows().into_iter().filter(|r| !r.is_empty()).map(integer_row).collect();
        bareiss_rank(rows)
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut ech = EchelonBasis::tracking();
        let mut kernel = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            if let Err(dependency) = ech.insert_column(j, col.clone()) {
                // col_j = Σ dependency_i col_i
                let mut v: SparseVec = dependency.into_iter().map(|(i, c)| (i, -c)).collect();
                v.insert(j, Rational::one());
                kernel.push(v);
            }
        }
        kernel
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&i, v) in col {
                out[i][j] = v.clone();
            }
        }
        out
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators of a rational row. Row scaling leaves rank unchanged.
fn integer_row(row: SparseVec) -> IntRow {
    let l = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.into_iter().map(|(j, v)| (j, (v * Rational::from_integer(l.clone())).to_integer())).collect()
}

/// Bareiss elimination. After the step with pivot `a_kk`, every surviving
/// entry is a minor of the input, so the division by the previous pivot is
/// exact. Columns without a pivot are skipped.
fn bareiss_rank(mut active: Vec<IntRow>) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    while !active.is_empty() {
        let col = active.iter().map(|r| r[0].0).min().expect("rows are nonempty");
        let pick = active
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .expect("some row leads in the pivot column");
        let pivot = active.swap_remove(pick);
        let a_kk = pivot[0].1.clone();
        for row in active.iter_mut() {
            if row[0].0 == col {
                let a_ik = row[0].1.clone();
                *row = combine(&row[1..], &pivot[1..], &a_kk, &a_ik, &prev);
            } else {
                for (_, v) in row.iter_mut() {
                    let scaled: BigInt = &*v * &a_kk;
                    debug_assert!((&scaled % &prev).is_zero());
                    *v = scaled / &prev;
                }
            }
        }
        active.retain(|r| !r.is_empty());
        prev = a_kk;
        rank += 1;
    }
    rank
}

/// `(a_kk * row - a_ik * pivot) / prev` over the merged support.
fn combine(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)], a_kk: &BigInt, a_ik: &BigInt, prev: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (c, v) = match (row.get(i), pivot.get(j)) {
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                i += 1;
                (*ci, vi * a_kk)
            }
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                i += 1;
                j += 1;
                (*ci, vi * a_kk - vj * a_ik)
            }
            (_, Some((cj, vj))) => {
                j += 1;
                (*cj, -(vj * a_ik))
            }
            (Some((ci, vi)), None) => {
                i += 1;
                (*ci, vi * a_kk)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            debug_assert!((&v % prev).is_zero());
            out.push((c, v / prev));
        }
    }
    out
}

#[derive(Clone, Debug)]
struct EchelonRow {
    vector: SparseVec,
    /// `vector = Σ combo_j column_j` over inserted columns.
    combo: SparseVec,
}

/// Incrementally built row-echelon basis of a subspace of `ℚ^m`.
///
/// Each stored row has a leading 1 at its pivot and no entries at smaller
/// indices. With tracking enabled, rows remember how they combine the
/// labelled vectors that were inserted.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, EchelonRow>,
    track: bool,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new(), track: false }
    }

    pub fn tracking() -> Self {
        EchelonBasis { rows: BTreeMap::new(), track: true }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns the remainder and, when
    /// tracking, the combination `c` with `v - remainder = Σ c_j column_j`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        while let Some((&p, c)) = rem.range(cursor..).find(|(p, _)| self.rows.contains_key(p)) {
            let c = c.clone();
            let row = &self.rows[&p];
            axpy(&mut rem, &-c.clone(), &row.vector);
            if self.track {
                axpy(&mut combo, &c, &row.combo);
            }
            cursor = p + 1;
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (rem, _) = self.reduce(&v);
        self.push_remainder(rem, SparseVec::new())
    }

    /// Inserts the labelled vector `v`. On dependency returns the
    /// combination of earlier labels equal to `v`.
    pub fn insert_column(&mut self, label: usize, v: SparseVec) -> Result<(), SparseVec> {
        let (rem, combo) = self.reduce(&v);
        if rem.is_empty() {
            return Err(combo);
        }
        let mut own: SparseVec = combo.into_iter().map(|(i, c)| (i, -c)).collect();
        own.insert(label, Rational::one());
        self.push_remainder(rem, own);
        Ok(())
    }

    fn push_remainder(&mut self, rem: SparseVec, combo: SparseVec) -> bool {
        let Some((&p, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let vector = rem.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        let combo = if self.track { combo.into_iter().map(|(i, c)| (i, c * &inv)).collect() } else { SparseVec::new() };
        self.rows.insert(p, EchelonRow { vector, combo });
        true
    }
}
