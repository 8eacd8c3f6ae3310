use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CComodule, FiniteCoalgebra};
use crate::error::{Error, Result};
use crate::filtfun::{coalgebra_closure, restrict, Level, Source, XSpace};
use crate::linalg::{Matrix, SparseEchelon};

/// Unknown counts above this are refused by the exact splitting system.
pub const MAX_UNKNOWNS: usize = 4096;

const COFREE_TRIES: usize = 32;
const SEED: u64 = 0x00c0_f11e;

/// How the answer was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `M` is `C` itself.
    Regular,
    /// A linear `pi : M -> k^r` made `(pi (x) id) Delta_M` an isomorphism
    /// onto the cofree `k^r (x) C`.
    Cofree,
    /// Solved for a comodule retraction of `Delta_M : M -> M (x) C`.
    Splitting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Injectivity {
    pub injective: bool,
    pub method: Method,
}

fn cofree_certificate(c: &FiniteCoalgebra, m: &CComodule) -> bool {
    let (k, n) = (c.dim(), m.dim());
    if k == 0 || n % k != 0 {
        return false;
    }
    let r = n / k;
    let f = c.group().field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..COFREE_TRIES).any(|_| {
        let pi: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..r).map(|_| rng.gen_range(0..f.p())).collect())
            .collect();
        let mut t = Matrix::zeros(f, n, r * k);
        for (i, row) in m.kappa.iter().enumerate() {
            for &(j, a, v) in row {
                for q in 0..r {
                    t[(i, q * k + a)] = f.mul_add(t[(i, q * k + a)], v, pi[j][q]);
                }
            }
        }
        t.rank() == n
    })
}

/// Basis of `Hom^C(C, M)`, each map as a `k x m` array flattened row-major.
fn hom_from_regular(c: &FiniteCoalgebra, m: &CComodule) -> Vec<Vec<u32>> {
    let f = c.group().field();
    let (k, n) = (c.dim(), m.dim());
    let var = |a: usize, i: usize| a * n + i;
    // Delta_M(phi(c_a)) = (phi (x) id) Delta_C(c_a), at m_j (x) c_cc.
    let mut eqs: BTreeMap<(usize, usize, usize), BTreeMap<usize, u32>> = BTreeMap::new();
    for a in 0..k {
        for &(b, cc, v) in c.structure(a) {
            for j in 0..n {
                let e = eqs.entry((a, j, cc)).or_default().entry(var(b, j)).or_insert(0);
                *e = f.add(*e, v);
            }
        }
        for (i, row) in m.kappa.iter().enumerate() {
            for &(j, cc, v) in row {
                let e = eqs.entry((a, j, cc)).or_default().entry(var(a, i)).or_insert(0);
                *e = f.sub(*e, v);
            }
        }
    }
    let mut ech = SparseEchelon::new(f);
    for row in eqs.into_values() {
        let row: Vec<(usize, u32)> = row.into_iter().filter(|e| e.1 != 0).collect();
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    ech.nullspace(k * n)
}

/// Whether `m` is an injective `C`-comodule, i.e. `Delta_M` splits by a
/// comodule map `M (x) C -> M`.
pub fn injective_test(c: &FiniteCoalgebra, m: &CComodule) -> Result<Injectivity> {
    if m.dim() == c.dim() && m.kappa == c.regular().kappa {
        return Ok(Injectivity {
            injective: true,
            method: Method::Regular,
        });
    }
    if cofree_certificate(c, m) {
        return Ok(Injectivity {
            injective: true,
            method: Method::Cofree,
        });
    }
    let f = c.group().field();
    let (k, n) = (c.dim(), m.dim());
    if k * n > MAX_UNKNOWNS {
        return Err(Error::Resource {
            what: "splitting system unknowns",
            value: k * n,
            limit: MAX_UNKNOWNS,
        });
    }
    let hom = hom_from_regular(c, m);
    let h = hom.len();
    if n * h > MAX_UNKNOWNS {
        return Err(Error::Resource {
            what: "splitting system unknowns",
            value: n * h,
            limit: MAX_UNKNOWNS,
        });
    }
    // s = (s_j)_j with s_j = sum_t y_jt H_t on the copy m_j (x) C; require
    // s(Delta_M(m_i)) = m_i, i.e. sum kappa^i_{ja} s_j(c_a) = m_i.
    let mut a_mat = Matrix::zeros(f, n * n, n * h);
    for (i, row) in m.kappa.iter().enumerate() {
        for &(j, a, v) in row {
            for (t, ht) in hom.iter().enumerate() {
                for l in 0..n {
                    let x = ht[a * n + l];
                    if x != 0 {
                        let cell = &mut a_mat[(i * n + l, j * h + t)];
                        *cell = f.mul_add(*cell, v, x);
                    }
                }
            }
        }
    }
    let target: Vec<u32> = (0..n * n).map(|e| (e / n == e % n) as u32).collect();
    Ok(Injectivity {
        injective: a_mat.solve(&target)?.is_some(),
        method: Method::Splitting,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub d: u32,
    pub coalgebra_dim: usize,
    pub module_dim: usize,
    pub injective: bool,
    pub method: Method,
}

/// For each `d`: `C = O(G)_X` with `X = O(G)_{<=d}`, and whether `L_X` is
/// an injective `C`-comodule.
pub fn injectivity_profile(src: Source, d_max: u32) -> Result<Vec<ProfileRow>> {
    let group = match src {
        Source::Finite(m) => m.group().clone(),
        Source::Stream(s) => s.group().clone(),
    };
    let mut out = Vec::new();
    for d in 0..=d_max {
        let x = XSpace::canonical(&group, d);
        let closure = coalgebra_closure(&group, &x)?;
        let c = FiniteCoalgebra::new(Arc::clone(&group), closure.space)?;
        let lx = match src {
            Source::Finite(m) => restrict(m, Level::Degree(d))?.comodule,
            Source::Stream(s) => restrict(&*s.generation(s.sufficiency(d))?, Level::Degree(d))?.comodule,
        };
        let cm = c.express(&lx)?;
        let r = injective_test(&c, &cm)?;
        out.push(ProfileRow {
            d,
            coalgebra_dim: c.dim(),
            module_dim: cm.dim(),
            injective: r.injective,
            method: r.method,
        });
    }
    Ok(out)
}
