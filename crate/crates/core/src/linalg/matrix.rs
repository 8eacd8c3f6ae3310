use super::{Field, Subspace};
use crate::error::{Error, Result};

/// Dense matrix over `F_p`.
///
/// Vectors are rows: a matrix with `r` rows and `c` columns is the linear map
/// `F_p^r -> F_p^c`, `x |-> x * M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing entries mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = field.from_i64(v);
            }
        }
        Ok(m)
    }

    pub fn from_residue_rows(field: Field, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.mul_add(*d, a, s);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows);
        let f = self.field;
        let mut out = vec![0; self.cols];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &s) in out.iter_mut().zip(self.row(i)) {
                *d = f.mul_add(*d, a, s);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Row space in canonical reduced echelon form, together with the rank.
    pub fn rref(&self) -> (Subspace, usize) {
        let s = Subspace::from_vectors(self.field, self.cols, self.row_vecs());
        let r = s.dim();
        (s, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// `{ x : x * self = 0 }`.
    pub fn left_kernel(&self) -> Subspace {
        left_kernel(self.field, self.rows, self.cols, self.row_vecs())
    }

    /// Solves `self * x = y` for a column vector `x`; `None` when `y` is not
    /// in the column space.
    pub fn solve(&self, y: &[u32]) -> Result<Option<Vec<u32>>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: y.len(),
            });
        }
        let f = self.field;
        // Augmented system [A | y], eliminated in place.
        let w = self.cols + 1;
        let mut aug: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(y[i]);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..aug.len()).find(|&k| aug[k][c] != 0) else {
                continue;
            };
            aug.swap(r, k);
            let inv = f.inv(aug[r][c]);
            for v in aug[r].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let prow = aug[r].clone();
            for (k, row) in aug.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let a = f.neg(row[c]);
                    for j in 0..w {
                        row[j] = f.mul_add(row[j], a, prow[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if aug[r..].iter().any(|row| row[self.cols] != 0) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[i][self.cols];
        }
        Ok(Some(x))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}

/// Left kernel of the `rows x cols` matrix whose rows are given.
pub(crate) fn left_kernel(field: Field, rows: usize, cols: usize, mat: Vec<Vec<u32>>) -> Subspace {
    let f = field;
    // Eliminate [A | I]; rows whose A-part vanishes carry kernel vectors.
    let mut aug: Vec<(Vec<u32>, Vec<u32>)> = mat
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let mut e = vec![0; rows];
            e[i] = 1;
            (r, e)
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..aug.len()).find(|&k| aug[k].0[c] != 0) else {
            continue;
        };
        aug.swap(r, k);
        let inv = f.inv(aug[r].0[c]);
        {
            let (a, e) = &mut aug[r];
            a.iter_mut().for_each(|v| *v = f.mul(*v, inv));
            e.iter_mut().for_each(|v| *v = f.mul(*v, inv));
        }
        let (pa, pe) = aug[r].clone();
        for (k, (a, e)) in aug.iter_mut().enumerate() {
            if k <= r || a[c] == 0 {
                continue;
            }
            let s = f.neg(a[c]);
            for j in c..cols {
                a[j] = f.mul_add(a[j], s, pa[j]);
            }
            for j in 0..rows {
                e[j] = f.mul_add(e[j], s, pe[j]);
            }
        }
        r += 1;
    }
    Subspace::from_vectors(field, rows, aug.into_iter().skip(r).map(|(_, e)| e).collect())
}
