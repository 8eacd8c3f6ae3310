use std::collections::BTreeMap;

use super::{CComodule, FiniteCoalgebra};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};

/// Largest supported cobar degree.
pub const MAX_DEGREE: usize = 3;

/// Largest supported `dim CH^n`.
pub const MAX_CHAIN_DIM: usize = 200_000;

/// `CH^n = M (x) C^{(x) n}` for `n = 0..=n_max` with the differentials
/// `d^n : CH^n -> CH^{n+1}` for `n < n_max`, as row-vector maps.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub differentials: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `d^{n+1} d^n == 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// Basis index of `m_i (x) c_{a_1} (x) .. (x) c_{a_n}`.
fn index(k: usize, i: usize, a: &[usize]) -> usize {
    a.iter().fold(i, |acc, &x| acc * k + x)
}

fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..k).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

fn differential(c: &FiniteCoalgebra, m: &CComodule, n: usize) -> SparseMatrix {
    let f = c.group().field();
    let k = c.dim();
    let dim_next = m.dim() * k.pow(n as u32 + 1);
    let unit: Vec<(usize, u32)> = c.unit().iter().copied().enumerate().filter(|e| e.1 != 0).collect();
    let sign = |l: usize| if l.is_multiple_of(2) { 1 } else { f.neg(1) };
    let mut rows = vec![Vec::new(); m.dim() * k.pow(n as u32)];
    for i in 0..m.dim() {
        for a in tuples(k, n) {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            let mut add = |idx: usize, v: u32| {
                let e = acc.entry(idx).or_insert(0);
                *e = f.add(*e, v);
            };
            // d_0: coaction on the module factor
            for &(j, b, v) in &m.kappa[i] {
                let mut t = vec![b];
                t.extend(&a);
                add(index(k, j, &t), v);
            }
            // d_l: coproduct on factor l
            for l in 1..=n {
                let s = sign(l);
                for &(b, cc, v) in c.structure(a[l - 1]) {
                    let mut t = a[..l - 1].to_vec();
                    t.push(b);
                    t.push(cc);
                    t.extend(&a[l..]);
                    add(index(k, i, &t), f.mul(s, v));
                }
            }
            // d_{n+1}: append the unit
            let s = sign(n + 1);
            for &(u, v) in &unit {
                let mut t = a.clone();
                t.push(u);
                add(index(k, i, &t), f.mul(s, v));
            }
            let row: SparseVec = acc.into_iter().filter(|e| e.1 != 0).collect();
            rows[index(k, i, &a)] = row;
        }
    }
    SparseMatrix::new(f, dim_next, rows)
}

/// The cobar complex `CH^*(C, M)` up to degree `n_max`.
pub fn cobar_complex(c: &FiniteCoalgebra, m: &CComodule, n_max: usize) -> Result<ChainComplex> {
    if n_max > MAX_DEGREE {
        return Err(Error::Resource {
            what: "cobar degree",
            value: n_max,
            limit: MAX_DEGREE,
        });
    }
    let k = c.dim();
    let top = (k as u128).pow(n_max as u32) * m.dim() as u128;
    if top > MAX_CHAIN_DIM as u128 {
        return Err(Error::Resource {
            what: "cobar chain dimension",
            value: usize::try_from(top).unwrap_or(usize::MAX),
            limit: MAX_CHAIN_DIM,
        });
    }
    let dims = (0..=n_max).map(|n| m.dim() * k.pow(n as u32)).collect();
    let differentials = (0..n_max).map(|n| differential(c, m, n)).collect();
    Ok(ChainComplex { dims, differentials })
}

/// `dim H^n` for `n = 0..=n_max`. The top degree has no outgoing
/// differential, so its entry is only an upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    pub top_is_upper_bound: bool,
}

pub fn cohomology_dims(x: &ChainComplex) -> Cohomology {
    let ranks: Vec<usize> = x.differentials.iter().map(SparseMatrix::rank).collect();
    let dims = (0..x.dims.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n == 0 { 0 } else { ranks[n - 1] };
            x.dims[n] - out - inc
        })
        .collect();
    Cohomology {
        dims,
        top_is_upper_bound: true,
    }
}
