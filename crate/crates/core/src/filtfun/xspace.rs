use std::collections::BTreeMap;

use crate::coordalg::{Element, Group, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};

/// A finite-dimensional subspace `X` of `O(G)`, stored as a subspace of the
/// span of an explicit sorted list of normal monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSpace {
    monomials: Vec<Monomial>,
    space: Subspace,
}

impl XSpace {
    pub fn new(monomials: Vec<Monomial>, space: Subspace) -> Result<XSpace> {
        if space.ambient_dim() != monomials.len() {
            return Err(Error::DimensionMismatch {
                expected: monomials.len(),
                found: space.ambient_dim(),
            });
        }
        if !monomials.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Internal("XSpace monomials must be strictly increasing".into()));
        }
        Ok(XSpace { monomials, space })
    }

    /// `O(G)_{<=d}`.
    pub fn canonical(group: &Group, d: u32) -> XSpace {
        let mut monomials = group.filtration_basis(d).to_vec();
        monomials.sort();
        let n = monomials.len();
        XSpace {
            monomials,
            space: Subspace::full(group.field(), n),
        }
    }

    /// The span of the given normal-form elements.
    pub fn span(field: Field, elements: &[Element]) -> XSpace {
        let mut monomials: Vec<Monomial> = elements.iter().flat_map(|e| e.support().cloned()).collect();
        monomials.sort();
        monomials.dedup();
        let index: BTreeMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let vecs = elements
            .iter()
            .map(|e| {
                let mut v = vec![0; monomials.len()];
                for (m, c) in e.terms() {
                    v[index[m]] = c;
                }
                v
            })
            .collect();
        let space = Subspace::from_vectors(field, monomials.len(), vecs);
        XSpace { monomials, space }
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Canonical basis elements (reduced echelon rows).
    pub fn elements(&self) -> Vec<Element> {
        self.space.basis().iter().map(|v| self.element_of(v)).collect()
    }

    pub fn element_of(&self, v: &[u32]) -> Element {
        let mut e = Element::zero();
        for (m, &c) in self.monomials.iter().zip(v) {
            e.add_term(self.field(), m.clone(), c);
        }
        e
    }

    /// Coordinates of `e` in the monomial ambient; `None` when `e` has a
    /// monomial outside it.
    pub fn vector_of(&self, e: &Element) -> Option<Vec<u32>> {
        let mut v = vec![0; self.monomials.len()];
        for (m, c) in e.terms() {
            v[self.monomials.binary_search(m).ok()?] = c;
        }
        Some(v)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.vector_of(e).is_some_and(|v| self.space.contains(&v))
    }

    pub fn contains_unit(&self, group: &Group) -> bool {
        self.contains(&group.one())
    }

    pub fn contains_space(&self, other: &XSpace) -> bool {
        other.elements().iter().all(|e| self.contains(e))
    }

    /// `X cap span(support)` as a subspace of `k^support`; `support` sorted.
    pub fn restricted_to(&self, support: &[Monomial]) -> Subspace {
        let f = self.field();
        let mut all: Vec<Monomial> = support.iter().chain(&self.monomials).cloned().collect();
        all.sort();
        all.dedup();
        let pos = |m: &Monomial| all.binary_search(m).unwrap();
        let embed = |vecs: Vec<Vec<u32>>, from: &[Monomial]| {
            let idx: Vec<usize> = from.iter().map(pos).collect();
            vecs.into_iter()
                .map(|v| {
                    let mut w = vec![0; all.len()];
                    for (k, c) in v.into_iter().enumerate() {
                        w[idx[k]] = c;
                    }
                    w
                })
                .collect::<Vec<_>>()
        };
        let x = Subspace::from_vectors(f, all.len(), embed(self.space.basis().to_vec(), &self.monomials));
        let unit = |i: usize| {
            let mut v = vec![0; support.len()];
            v[i] = 1;
            v
        };
        let s = Subspace::from_vectors(f, all.len(), embed((0..support.len()).map(unit).collect(), support));
        let both = x.intersect(&s).expect("same ambient");
        let keep: Vec<usize> = support.iter().map(pos).collect();
        let vecs = both
            .basis()
            .iter()
            .map(|w| keep.iter().map(|&k| w[k]).collect())
            .collect();
        Subspace::from_vectors(f, support.len(), vecs)
    }
}

/// A level of the filtration: the canonical `O(G)_{<=d}` or an explicit `X`.
#[derive(Clone, Copy, Debug)]
pub enum Level<'a> {
    Degree(u32),
    Space(&'a XSpace),
}

impl Level<'_> {
    /// `X cap span(support)` as a subspace of `k^support`; `support` sorted.
    pub(crate) fn restricted_to(&self, group: &Group, support: &[Monomial]) -> Subspace {
        match self {
            Level::Degree(d) => {
                let vecs = support
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| group.monomial_degree(m) <= *d)
                    .map(|(i, _)| {
                        let mut v = vec![0; support.len()];
                        v[i] = 1;
                        v
                    })
                    .collect();
                Subspace::from_vectors(group.field(), support.len(), vecs)
            }
            Level::Space(x) => x.restricted_to(support),
        }
    }

    pub fn contains_unit(&self, group: &Group) -> bool {
        match self {
            Level::Degree(_) => true,
            Level::Space(x) => x.contains_unit(group),
        }
    }

    pub fn contains(&self, group: &Group, e: &Element) -> bool {
        match self {
            Level::Degree(d) => e.support().all(|m| group.monomial_degree(m) <= *d),
            Level::Space(x) => x.contains(e),
        }
    }
}
