use std::collections::BTreeMap;

use super::Field;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing column indices with nonzero values.
pub type SparseVec = Vec<(usize, u32)>;

/// `a + s * b` for sparse vectors.
pub fn axpy(field: Field, a: &[(usize, u32)], s: u32, b: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            let v = field.mul(s, b[j].1);
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = field.mul_add(a[i].1, s, b[j].1);
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built echelon form of sparse rows. The pivot of a row is its
/// smallest column index.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: Field,
    pivots: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: Field) -> Self {
        SparseEchelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the current pivots, leaving a row whose leading
    /// column (if any) is not a pivot.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let f = self.field;
        let mut start = 0;
        loop {
            let Some(pos) = row[start..].iter().position(|e| self.pivots.contains_key(&e.0)) else {
                return row;
            };
            let (c, v) = row[start + pos];
            let prow = &self.pivots[&c];
            row = axpy(f, &row, f.neg(v), prow);
            start = row.partition_point(|e| e.0 < c);
        }
    }

    /// Inserts a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let row = self.reduce(row);
        let Some(&(c, v)) = row.iter().find(|e| !self.pivots.contains_key(&e.0)) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v);
        let row: SparseVec = row.into_iter().map(|(j, x)| (j, f.mul(x, inv))).collect();
        self.pivots.insert(c, row);
        true
    }

    /// Basis of `{x in F_p^cols : r . x = 0 for every inserted row r}`, one
    /// vector per non-pivot column.
    pub fn nullspace(&self, cols: usize) -> Vec<Vec<u32>> {
        let f = self.field;
        (0..cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut x = vec![0; cols];
                x[free] = 1;
                // A row's entries sit right of its (unit) pivot.
                for (&p, row) in self.pivots.iter().rev() {
                    let s = row
                        .iter()
                        .filter(|e| e.0 != p)
                        .fold(0, |acc, &(c, v)| f.mul_add(acc, v, x[c]));
                    x[p] = f.neg(s);
                }
                x
            })
            .collect()
    }
}

/// Sparse matrix with rows as sparse vectors; the map `x |-> x * M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.iter().all(|e| e.0 < cols && e.1 != 0)));
        SparseMatrix { field, cols, rows }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix::new(field, cols, vec![Vec::new(); rows])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let r = &self.rows[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => r[k].1,
            Err(_) => 0,
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new(self.field);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.rank()
    }

    pub fn apply(&self, x: &[(usize, u32)]) -> SparseVec {
        let f = self.field;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in &self.rows[i] {
                let e = acc.entry(j).or_insert(0);
                *e = f.mul_add(*e, a, b);
            }
        }
        acc.into_iter().filter(|e| e.1 != 0).collect()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows(),
            });
        }
        let rows = self.rows.iter().map(|r| other.apply(r)).collect();
        Ok(SparseMatrix::new(self.field, other.cols, rows))
    }
}
