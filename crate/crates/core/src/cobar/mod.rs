//! Cobar complexes of finite sub-coalgebras `C` of `O(G)` with comodule
//! coefficients, their cohomology, and a splitting test for injectivity.

mod complex;
mod inject;

#[cfg(test)]
mod tests;

use std::sync::Arc;

pub use complex::{cobar_complex, cohomology_dims, ChainComplex, Cohomology};
pub use inject::{injective_test, injectivity_profile, Injectivity, Method, ProfileRow};

use crate::comod::Comodule;
use crate::coordalg::{Element, Group};
use crate::error::{Error, Result};
use crate::filtfun::XSpace;

/// Coalgebras above this dimension are refused.
pub const MAX_COALGEBRA_DIM: usize = 1000;

/// A finite-dimensional sub-coalgebra `C` of `O(G)` with structure constants
/// in its echelon basis `c_0..c_{k-1}`.
#[derive(Clone, Debug)]
pub struct FiniteCoalgebra {
    group: Arc<Group>,
    space: XSpace,
    basis: Vec<Element>,
    /// `structure[a]` lists `(b, c, v)` with `Delta(c_a) = sum v c_b (x) c_c`.
    structure: Vec<Vec<(usize, usize, u32)>>,
    counit: Vec<u32>,
    unit: Vec<u32>,
}

impl FiniteCoalgebra {
    /// Reads off structure constants of `space`, which must be a
    /// sub-coalgebra containing `1`.
    pub fn new(group: Arc<Group>, space: XSpace) -> Result<FiniteCoalgebra> {
        let k = space.dim();
        if k > MAX_COALGEBRA_DIM {
            return Err(Error::Resource {
                what: "coalgebra dimension",
                value: k,
                limit: MAX_COALGEBRA_DIM,
            });
        }
        let f = group.field();
        let basis = space.elements();
        let pivots = space.space().pivots();
        let pivot_of = |m: &crate::coordalg::Monomial| {
            let i = space.monomials().binary_search(m).ok()?;
            pivots.binary_search(&i).ok()
        };
        let unit = space
            .vector_of(&group.one())
            .and_then(|v| space.space().coordinates(&v))
            .ok_or_else(|| Error::NotSubcoalgebra("the subspace does not contain 1".into()))?;
        let mut structure = Vec::with_capacity(k);
        for (a, e) in basis.iter().enumerate() {
            let delta = group.coproduct(e);
            let mut row = Vec::new();
            let mut rebuilt = crate::coordalg::Tensor::zero();
            // lambda^a_{bc} is the coefficient at (pivot_b, pivot_c).
            for (l, r, v) in delta.terms() {
                if let (Some(b), Some(c)) = (pivot_of(l), pivot_of(r)) {
                    row.push((b, c, v));
                    rebuilt.add_product(f, &basis[b], &basis[c], v);
                }
            }
            if rebuilt != delta {
                return Err(Error::NotSubcoalgebra(format!(
                    "Delta({}) leaves C (x) C",
                    group.format_element(&basis[a])
                )));
            }
            structure.push(row);
        }
        let counit = basis.iter().map(|e| group.counit(e)).collect();
        Ok(FiniteCoalgebra {
            group,
            space,
            basis,
            structure,
            counit,
            unit,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self) -> &XSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn structure(&self, a: usize) -> &[(usize, usize, u32)] {
        &self.structure[a]
    }

    pub fn counit(&self) -> &[u32] {
        &self.counit
    }

    /// Coordinates of `1`.
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// Coordinates of `e` in the basis of `C`.
    pub fn coordinates(&self, e: &Element) -> Option<Vec<u32>> {
        self.space.vector_of(e).and_then(|v| self.space.space().coordinates(&v))
    }

    /// `m` as a `C`-comodule; every coefficient must lie in `C`.
    pub fn express(&self, m: &Comodule) -> Result<CComodule> {
        if **m.group() != *self.group {
            return Err(Error::GroupMismatch(m.group().to_string(), self.group.to_string()));
        }
        let mut kappa = Vec::with_capacity(m.dim());
        for i in 0..m.dim() {
            let mut row = Vec::new();
            for (j, c) in m.coaction(i) {
                let coords = self.coordinates(c).ok_or_else(|| {
                    Error::CoefficientOutside(format!(
                        "coefficient {} of {} in Delta({}) is not in C",
                        self.group.format_element(c),
                        m.labels()[*j],
                        m.labels()[i]
                    ))
                })?;
                row.extend(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|e| e.1 != 0)
                        .map(|(a, v)| (*j, a, v)),
                );
            }
            kappa.push(row);
        }
        Ok(CComodule {
            labels: m.labels().to_vec(),
            kappa,
        })
    }

    /// `C` under its own coproduct.
    pub fn regular(&self) -> CComodule {
        CComodule {
            labels: self.basis.iter().map(|e| self.group.format_element(e)).collect(),
            kappa: self.structure.clone(),
        }
    }
}

/// A comodule over a [`FiniteCoalgebra`]: `kappa[i]` lists `(j, a, v)` with
/// `Delta(m_i) = sum v m_j (x) c_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CComodule {
    pub labels: Vec<String>,
    pub kappa: Vec<Vec<(usize, usize, u32)>>,
}

impl CComodule {
    pub fn dim(&self) -> usize {
        self.kappa.len()
    }

    pub fn direct_sum(&self, other: &CComodule) -> CComodule {
        let n = self.dim();
        let mut kappa = self.kappa.clone();
        kappa.extend(
            other
                .kappa
                .iter()
                .map(|r| r.iter().map(|&(j, a, v)| (j + n, a, v)).collect()),
        );
        CComodule {
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
            kappa,
        }
    }
}
