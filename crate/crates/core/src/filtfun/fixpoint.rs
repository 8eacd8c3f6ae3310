use std::collections::{BTreeMap, HashMap};

use crate::linalg::{Field, Matrix, Subspace};

/// Coaction data split by monomial: `by_h[h]` lists `(i, j, c)` where `c` is
/// the coefficient of monomial `h` in `f_ji`, i.e. the nonzero entries of the
/// coefficient matrix `B_h` (rows indexed by `i`, columns by `j`).
pub(crate) struct CoefficientMatrices {
    pub dim: usize,
    pub by_h: Vec<Vec<(usize, usize, u32)>>,
}

/// Semi-echelon rows in `k^r`; each stored row vanishes at the pivots of the
/// rows stored before it.
struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<u32>) {
        let f = self.field;
        for (c, row) in &self.rows {
            let a = v[*c];
            if a != 0 {
                let s = f.neg(a);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(*x, s, y);
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let inv = f.inv(v[c]);
            v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
            self.rows.push((c, v));
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Columns of `Bv * T` for a sparse `T`, keyed by column; `bvt[i]` is column
/// `i` of `Bv`.
fn product_columns(field: Field, bvt: &[Vec<u32>], r: usize, t: &[(usize, usize, u32)]) -> HashMap<usize, Vec<u32>> {
    let mut out: HashMap<usize, Vec<u32>> = HashMap::new();
    for &(i, j, c) in t {
        let col = &bvt[i];
        if col.iter().all(|&x| x == 0) {
            continue;
        }
        let w = out.entry(j).or_insert_with(|| vec![0; r]);
        for (x, &y) in w.iter_mut().zip(col) {
            *x = field.mul_add(*x, c, y);
        }
    }
    out
}

/// Greatest `V` inside `start` with `Delta(V) in V (x) X`, where `X` is given
/// as a subspace of the monomial ambient indexing `data.by_h`.
///
/// Returns the fixed point and the number of strict descents.
pub(crate) fn greatest_fixed_point(
    field: Field,
    data: &CoefficientMatrices,
    x: &Subspace,
    start: Subspace,
) -> (Subspace, usize) {
    let f = field;
    let dim = data.dim;
    let xpiv = x.pivots();
    let is_xpiv: Vec<bool> = {
        let mut v = vec![false; x.ambient_dim()];
        xpiv.iter().for_each(|&c| v[c] = true);
        v
    };
    // R_c = B_c - sum_s x_s[c] B_{pi_s}: the component of B along the
    // complement coordinate c once X-directions are projected out.
    let complement: Vec<Vec<(usize, usize, u32)>> = (0..x.ambient_dim())
        .filter(|&c| !is_xpiv[c])
        .map(|c| {
            let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for &(i, j, v) in &data.by_h[c] {
                let e = acc.entry((i, j)).or_insert(0);
                *e = f.add(*e, v);
            }
            for (s, &pi) in xpiv.iter().enumerate() {
                let a = x.basis()[s][c];
                if a == 0 {
                    continue;
                }
                let na = f.neg(a);
                for &(i, j, v) in &data.by_h[pi] {
                    let e = acc.entry((i, j)).or_insert(0);
                    *e = f.mul_add(*e, na, v);
                }
            }
            acc.into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|((i, j), v)| (i, j, v))
                .collect()
        })
        .filter(|t: &Vec<_>| !t.is_empty())
        .collect();

    let mut v = start;
    let mut rounds = 0;
    loop {
        let r = v.dim();
        if r == 0 {
            return (v, rounds);
        }
        let bv = v.basis();
        let bvt: Vec<Vec<u32>> = (0..dim).map(|i| bv.iter().map(|row| row[i]).collect()).collect();
        let mut cons = Echelon {
            field: f,
            rows: Vec::new(),
        };

        // (a) coefficients must avoid the complement of X
        'a: for t in &complement {
            for (_, col) in product_columns(f, &bvt, r, t) {
                cons.insert(col);
                if cons.rank() == r {
                    break 'a;
                }
            }
        }
        // (b) the left legs paired with each X direction stay in V
        if cons.rank() < r && !v.is_full() {
            let vpiv = v.pivots();
            let mut is_vpiv = vec![false; dim];
            vpiv.iter().for_each(|&c| is_vpiv[c] = true);
            'b: for &pi in xpiv {
                let w = product_columns(f, &bvt, r, &data.by_h[pi]);
                if w.is_empty() {
                    continue;
                }
                let at_pivots: Vec<(usize, &Vec<u32>)> = vpiv
                    .iter()
                    .enumerate()
                    .filter_map(|(l, c)| w.get(c).map(|col| (l, col)))
                    .collect();
                for j in (0..dim).filter(|&j| !is_vpiv[j]) {
                    // column j of (w - w[:, pivots] * Bv)
                    let mut u = w.get(&j).cloned().unwrap_or_else(|| vec![0; r]);
                    for &(l, col) in &at_pivots {
                        let b = bv[l][j];
                        if b == 0 {
                            continue;
                        }
                        let nb = f.neg(b);
                        for (x, &y) in u.iter_mut().zip(col) {
                            *x = f.mul_add(*x, nb, y);
                        }
                    }
                    if u.iter().any(|&x| x != 0) {
                        cons.insert(u);
                        if cons.rank() == r {
                            break 'b;
                        }
                    }
                }
            }
        }

        if cons.rank() == 0 {
            return (v, rounds);
        }
        rounds += 1;
        if cons.rank() == r {
            return (Subspace::zero(f, dim), rounds);
        }
        // {y : c . y = 0 for every constraint c}, pushed forward along Bv.
        let c = Matrix::from_residue_rows(f, r, cons.rows.into_iter().map(|(_, row)| row).collect());
        let kernel = c.transpose().left_kernel();
        let vecs = kernel.basis().iter().map(|y| v.basis_matrix().apply(y)).collect();
        v = Subspace::from_vectors(f, dim, vecs);
    }
}
