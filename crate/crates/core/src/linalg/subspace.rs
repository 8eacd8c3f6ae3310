use super::{matrix::left_kernel, Field, Matrix};
use crate::error::{Error, Result};

/// A subspace of `F_p^n` stored by its reduced row echelon basis.
///
/// The representation is canonical: two `Subspace`s with the same ambient
/// compare equal iff they are the same set of vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_vectors(field: Field, ambient: usize, vectors: Vec<Vec<u32>>) -> Self {
        let f = field;
        let mut rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length != ambient"))
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ambient {
            if r == rows.len() {
                break;
            }
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = f.inv(rows[r][c]);
            rows[r][c..].iter_mut().for_each(|v| *v = f.mul(*v, inv));
            let prow = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == r || row[c] == 0 {
                    continue;
                }
                let s = f.neg(row[c]);
                for j in c..ambient {
                    row[j] = f.mul_add(row[j], s, prow[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_residue_rows(self.field, self.ambient, self.basis.clone())
    }

    /// Remainder of `v` after clearing the pivot columns. Zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let a = v[c];
            if a == 0 {
                continue;
            }
            let s = f.neg(a);
            for j in c..self.ambient {
                v[j] = f.mul_add(v[j], s, row[j]);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::from_vectors(self.field, self.ambient, vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // {a : a * U in V}, pushed forward along U.
        let inside = preimage(&self.basis_matrix(), other)?;
        let u = self.basis_matrix();
        let vs = inside.basis.iter().map(|a| u.apply(a)).collect();
        Ok(Subspace::from_vectors(self.field, self.ambient, vs))
    }

    /// Image of the subspace under `x |-> x * m`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: m.rows(),
            });
        }
        let vs = self.basis.iter().map(|v| m.apply(v)).collect();
        Ok(Subspace::from_vectors(self.field, m.cols(), vs))
    }

    /// Appends `extra` zero coordinates to the ambient space.
    pub fn pad(&self, extra: usize) -> Subspace {
        let mut s = self.clone();
        s.ambient += extra;
        for v in &mut s.basis {
            v.resize(s.ambient, 0);
        }
        s
    }
}

/// `{ x : x * b in v }`.
pub fn preimage(b: &Matrix, v: &Subspace) -> Result<Subspace> {
    if b.cols() != v.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: v.ambient_dim(),
            found: b.cols(),
        });
    }
    let reduced: Vec<Vec<u32>> = (0..b.rows()).map(|i| v.reduce(b.row(i))).collect();
    Ok(left_kernel(b.field(), b.rows(), b.cols(), reduced))
}
