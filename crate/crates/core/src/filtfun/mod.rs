//! The functor `M |-> M_X`: the largest sub-comodule of `M` whose coaction
//! coefficients lie in `X`, filtrations along `O(G)_{<=d}`, and the
//! coalgebra closure `O(G)_X`.

mod fixpoint;
mod xspace;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use xspace::{Level, XSpace};

use crate::comod::{Comodule, Stream};
use crate::coordalg::{Element, Group, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use fixpoint::{greatest_fixed_point, CoefficientMatrices};

/// Comodules above this dimension skip re-validation of the induced coaction.
const REVALIDATE_LIMIT: usize = 200;

/// `M_X` as a subspace of `M` together with its induced coaction.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub subspace: Subspace,
    pub comodule: Comodule,
    /// Strict descents of the fixed-point iteration.
    pub rounds: usize,
    pub warning: Option<String>,
}

fn coefficient_matrices(m: &Comodule) -> (Vec<Monomial>, CoefficientMatrices) {
    let support: Vec<Monomial> = m.coefficient_support().into_iter().collect();
    let mut by_h = vec![Vec::new(); support.len()];
    for i in 0..m.dim() {
        for (j, f) in m.coaction(i) {
            for (h, c) in f.terms() {
                let k = support.binary_search(h).expect("support covers coefficients");
                by_h[k].push((i, *j, c));
            }
        }
    }
    (support, CoefficientMatrices { dim: m.dim(), by_h })
}

/// `M_X` inside `start` (which must be a sub-comodule of `M`).
fn fixed_subspace(m: &Comodule, level: Level, start: Subspace) -> (Subspace, usize) {
    let g = m.group();
    let (support, data) = coefficient_matrices(m);
    let x = level.restricted_to(g, &support);
    greatest_fixed_point(g.field(), &data, &x, start)
}

fn unit_warning(g: &Group, level: Level) -> Option<String> {
    (!level.contains_unit(g)).then(|| "X does not contain 1; M_X has no nonzero invariants".to_string())
}

/// `Delta(v) = sum_j m_j (x) g_j` for `v = sum_i v_i m_i`.
fn coaction_of(m: &Comodule, v: &[u32]) -> BTreeMap<usize, Element> {
    let f = m.group().field();
    let mut out: BTreeMap<usize, Element> = BTreeMap::new();
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, c) in m.coaction(i) {
            out.entry(*j).or_default().add_scaled(f, c, a);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn combination_label(m: &Comodule, v: &[u32]) -> String {
    let f = m.group().field();
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| {
            let l = &m.labels()[i];
            match f.signed(a) {
                1 => l.clone(),
                -1 => format!("-{l}"),
                s => format!("{s}*{l}"),
            }
        })
        .collect();
    parts.join("+").replace("+-", "-")
}

/// The comodule structure induced on a sub-comodule `v` of `m`, in the
/// echelon basis of `v`.
pub fn induced_comodule(m: &Comodule, v: &Subspace) -> Result<Comodule> {
    let pivots = v.pivots();
    let mut labels = Vec::with_capacity(v.dim());
    let mut coaction = Vec::with_capacity(v.dim());
    for b in v.basis() {
        let full = coaction_of(m, b);
        let row: Vec<(usize, Element)> = pivots
            .iter()
            .enumerate()
            .filter_map(|(r, q)| full.get(q).map(|c| (r, c.clone())))
            .collect();
        labels.push(combination_label(m, b));
        coaction.push(row);
    }
    let out = Comodule::from_parts(m.group().clone(), labels, coaction)?;
    if out.dim() <= REVALIDATE_LIMIT {
        let report = out.validate();
        if !report.passed() {
            return Err(Error::Internal(format!(
                "induced coaction on a restriction fails: {report}"
            )));
        }
    }
    Ok(out)
}

/// `M_X`: the greatest subspace `V` of `M` with `Delta(V) in V (x) X`.
///
/// Coefficients of `M` outside the span of `X`'s monomials are handled by
/// extending the ambient. A unit-free `X` is allowed and warned about: it
/// kills every comodule with a fixed vector, but not e.g. a `Gm` weight line.
pub fn restrict(m: &Comodule, level: Level) -> Result<Restriction> {
    let g = m.group();
    let (subspace, rounds) = fixed_subspace(m, level, Subspace::full(g.field(), m.dim()));
    let comodule = induced_comodule(m, &subspace)?;
    Ok(Restriction {
        subspace,
        comodule,
        rounds,
        warning: unit_warning(g, level),
    })
}

/// Whether `Delta(v) in V (x) X` holds coefficientwise for every basis
/// vector `v` of `V`.
pub fn is_x_subcomodule(m: &Comodule, v: &Subspace, level: Level) -> bool {
    let g = m.group();
    let f = g.field();
    v.basis().iter().all(|b| {
        let full = coaction_of(m, b);
        if !full.values().all(|c| level.contains(g, c)) {
            return false;
        }
        // sum_j m_j (x) g_j in V (x) O(G): every monomial slice lies in V.
        let mut slices: BTreeMap<&Monomial, Vec<u32>> = BTreeMap::new();
        for (j, c) in &full {
            for (h, a) in c.terms() {
                slices.entry(h).or_insert_with(|| vec![0; m.dim()])[*j] = f.add(0, a);
            }
        }
        slices.values().all(|s| v.contains(s))
    })
}

/// One row of a filtration sweep.
#[derive(Clone, Debug)]
pub struct LevelResult {
    pub d: u32,
    pub dim: usize,
    /// `M_X` inside the largest module of the sweep.
    pub subspace: Subspace,
    /// Stream generation used at this level.
    pub generation: Option<u32>,
    /// `M_X = M` (finite modules only).
    pub stabilized: bool,
}

#[derive(Clone, Debug)]
pub struct FiltrationResult {
    pub ambient_dim: usize,
    pub levels: Vec<LevelResult>,
}

impl FiltrationResult {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    /// First level with `M_X = M`.
    pub fn stabilized_at(&self) -> Option<u32> {
        self.levels.iter().find(|l| l.stabilized).map(|l| l.d)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Finite(&'a Comodule),
    Stream(&'a Stream),
}

/// Dimensions of `M_{O(G)_{<=d}}` for `d = 0..=d_max`.
///
/// Streams are evaluated at generation `n(d)` of their sufficiency bound.
pub fn filtration_dims(src: Source, d_max: u32) -> Result<FiltrationResult> {
    match src {
        Source::Finite(m) => {
            let levels = (0..=d_max)
                .map(|d| {
                    let (subspace, _) = fixed_subspace(m, Level::Degree(d), Subspace::full(m.group().field(), m.dim()));
                    LevelResult {
                        d,
                        dim: subspace.dim(),
                        stabilized: subspace.dim() == m.dim(),
                        subspace,
                        generation: None,
                    }
                })
                .collect();
            Ok(FiltrationResult {
                ambient_dim: m.dim(),
                levels,
            })
        }
        Source::Stream(s) => {
            let ambient_dim = s.generation(s.sufficiency(d_max))?.dim();
            let mut levels = Vec::new();
            for d in 0..=d_max {
                let n = s.sufficiency(d);
                let m = s.generation(n)?;
                let (sub, _) = fixed_subspace(&m, Level::Degree(d), Subspace::full(m.group().field(), m.dim()));
                levels.push(LevelResult {
                    d,
                    dim: sub.dim(),
                    subspace: sub.pad(ambient_dim - m.dim()),
                    generation: Some(n),
                    stabilized: false,
                });
            }
            Ok(FiltrationResult { ambient_dim, levels })
        }
    }
}

/// `M_{X_i}` along an explicit family `X_0, X_1, ..`.
pub fn filtration_along(m: &Comodule, family: &[XSpace]) -> Result<FiltrationResult> {
    let levels = family
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let (subspace, _) = fixed_subspace(m, Level::Space(x), Subspace::full(m.group().field(), m.dim()));
            LevelResult {
                d: i as u32,
                dim: subspace.dim(),
                stabilized: subspace.dim() == m.dim(),
                subspace,
                generation: None,
            }
        })
        .collect();
    Ok(FiltrationResult {
        ambient_dim: m.dim(),
        levels,
    })
}

/// Dimensions of `(M^(n(d)))_X` and `(M^(n(d)+1))_X` at `X = O(G)_{<=d}`;
/// equal when the sufficiency bound holds at `d`.
pub fn sufficiency_check(s: &Stream, d: u32) -> Result<(usize, usize)> {
    let n = s.sufficiency(d);
    let dim_at = |n| -> Result<usize> {
        let m = s.generation(n)?;
        Ok(
            fixed_subspace(&m, Level::Degree(d), Subspace::full(m.group().field(), m.dim()))
                .0
                .dim(),
        )
    };
    Ok((dim_at(n)?, dim_at(n + 1)?))
}

/// Least `d` with `M_{<=d} = M`: the top filtration degree of a coefficient.
pub fn coheight(m: &Comodule) -> u32 {
    m.max_filtration_degree()
}

/// `O(G)_X`.
#[derive(Clone, Debug)]
pub struct Closure {
    pub space: XSpace,
    pub rounds: usize,
    /// `Delta(D) in D (x) D` was verified.
    pub is_subcoalgebra: bool,
}

/// `O(G)_X`: the greatest `D` inside `X` with `Delta(D) in D (x) X`.
pub fn coalgebra_closure(group: &Group, x: &XSpace) -> Result<Closure> {
    let f = group.field();
    if x.field() != f {
        return Err(Error::GroupMismatch(group.to_string(), format!("F_{}", x.field().p())));
    }
    let coproducts: Vec<Arc<crate::coordalg::Tensor>> =
        x.monomials().iter().map(|h| group.coproduct_monomial(h)).collect();
    let mut left: Vec<Monomial> = x.monomials().to_vec();
    let mut right: Vec<Monomial> = Vec::new();
    for t in &coproducts {
        for (a, b, _) in t.terms() {
            left.push(a.clone());
            right.push(b.clone());
        }
    }
    left.sort();
    left.dedup();
    right.sort();
    right.dedup();
    let mut by_h = vec![Vec::new(); right.len()];
    for (h, t) in x.monomials().iter().zip(&coproducts) {
        let i = left.binary_search(h).unwrap();
        for (a, b, c) in t.terms() {
            let j = left.binary_search(a).unwrap();
            by_h[right.binary_search(b).unwrap()].push((i, j, c));
        }
    }
    let data = CoefficientMatrices { dim: left.len(), by_h };
    let embed = |s: &Subspace| {
        let idx: Vec<usize> = x.monomials().iter().map(|h| left.binary_search(h).unwrap()).collect();
        let vecs = s
            .basis()
            .iter()
            .map(|v| {
                let mut w = vec![0; left.len()];
                idx.iter().zip(v).for_each(|(&k, &c)| w[k] = c);
                w
            })
            .collect();
        Subspace::from_vectors(f, left.len(), vecs)
    };
    let (d, rounds) = greatest_fixed_point(f, &data, &x.restricted_to(&right), embed(x.space()));
    let back: Vec<Vec<u32>> = d
        .basis()
        .iter()
        .map(|w| {
            x.monomials()
                .iter()
                .map(|h| w[left.binary_search(h).unwrap()])
                .collect()
        })
        .collect();
    let space = XSpace::new(
        x.monomials().to_vec(),
        Subspace::from_vectors(f, x.monomials().len(), back),
    )?;
    // Delta(D) in D (x) D: D is its own fixed point with X replaced by D.
    let (again, extra) = greatest_fixed_point(f, &data, &space.restricted_to(&right), d.clone());
    if again != d || extra != 0 {
        return Err(Error::Internal("coalgebra closure is not a sub-coalgebra".into()));
    }
    Ok(Closure {
        space,
        rounds,
        is_subcoalgebra: true,
    })
}

/// Both sides of `(M (x) N)_X in M_X (x) N_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub tensor_dim: usize,
    pub product_dim: usize,
    pub holds: bool,
}

pub fn tensor_containment(m: &Comodule, n: &Comodule, level: Level) -> Result<Containment> {
    let f = m.group().field();
    let mn = m.tensor(n)?;
    let full = |c: &Comodule| Subspace::full(f, c.dim());
    let (lhs, _) = fixed_subspace(&mn, level, full(&mn));
    let (mx, _) = fixed_subspace(m, level, full(m));
    let (nx, _) = fixed_subspace(n, level, full(n));
    let mut vecs = Vec::with_capacity(mx.dim() * nx.dim());
    for a in mx.basis() {
        for b in nx.basis() {
            let mut w = vec![0; m.dim() * n.dim()];
            for (i, &ai) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (k, &bk) in b.iter().enumerate() {
                    w[i * n.dim() + k] = f.mul(ai, bk);
                }
            }
            vecs.push(w);
        }
    }
    let rhs = Subspace::from_vectors(f, mn.dim(), vecs);
    Ok(Containment {
        tensor_dim: lhs.dim(),
        product_dim: rhs.dim(),
        holds: rhs.contains_subspace(&lhs),
    })
}
