//! Finite-dimensional right comodules over catalog coordinate algebras, and
//! streams of nested finite truncations of infinite ones.

mod build;
mod expr;
pub(crate) mod stream;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use build::{build, Built};
pub use expr::{parse_module, ModuleExpr};
pub use stream::{Stream, StreamKind};

use crate::coordalg::{Element, Group, Monomial, Tensor};
use crate::error::{Error, Result};

/// A right comodule with basis `m_0..m_{n-1}`; `coaction[i]` lists the
/// nonzero `(j, f_ji)` with `Delta(m_i) = sum_j m_j (x) f_ji`, sorted by `j`.
#[derive(Clone)]
pub struct Comodule {
    group: Arc<Group>,
    labels: Vec<String>,
    coaction: Vec<Vec<(usize, Element)>>,
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Comodule over {} of dim {}", self.group, self.dim())?;
        for (i, row) in self.coaction.iter().enumerate() {
            let terms: Vec<String> = row
                .iter()
                .map(|(j, c)| format!("{} (x) ({})", self.labels[*j], self.group.format_element(c)))
                .collect();
            writeln!(f, "  {} -> {}", self.labels[i], terms.join(" + "))?;
        }
        Ok(())
    }
}

impl PartialEq for Comodule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.coaction == other.coaction
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Counit,
    Coassociativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Counit => "counit",
            Axiom::Coassociativity => "coassociativity",
        })
    }
}

/// First violated comodule identity, located at a basis index (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub index: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass (dim {})", self.dim),
            Some(v) => write!(f, "fail: {} axiom at basis index {} ({})", v.axiom, v.index, v.label),
        }
    }
}

impl Comodule {
    /// Assembles a comodule from raw data. Coefficients must be in normal
    /// form; the axioms are not checked (see [`Comodule::validate`]).
    pub fn from_parts(group: Arc<Group>, labels: Vec<String>, coaction: Vec<Vec<(usize, Element)>>) -> Result<Self> {
        if labels.len() != coaction.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: coaction.len(),
            });
        }
        let n = labels.len();
        let mut clean = Vec::with_capacity(n);
        for row in coaction {
            let mut acc: BTreeMap<usize, Element> = BTreeMap::new();
            for (j, c) in row {
                if j >= n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: j + 1,
                    });
                }
                let e = acc.entry(j).or_default();
                *e = e.add(group.field(), &c);
            }
            clean.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(Comodule {
            group,
            labels,
            coaction: clean,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(j, f_ji)` pairs of `Delta(m_i)`.
    pub fn coaction(&self, i: usize) -> &[(usize, Element)] {
        &self.coaction[i]
    }

    /// The coefficient `f_ji` of `m_j` in `Delta(m_i)`.
    pub fn coefficient(&self, j: usize, i: usize) -> Element {
        self.coaction[i]
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// All monomials occurring in coaction coefficients.
    pub fn coefficient_support(&self) -> BTreeSet<Monomial> {
        self.coaction
            .iter()
            .flatten()
            .flat_map(|(_, c)| c.support().cloned())
            .collect()
    }

    /// Largest filtration degree of a coefficient; `0` for the zero module.
    pub fn max_filtration_degree(&self) -> u32 {
        self.coefficient_support()
            .iter()
            .map(|m| self.group.monomial_degree(m))
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let f = g.field();
        let fail = |axiom, index: usize| ValidationReport {
            dim: self.dim(),
            violation: Some(Violation {
                axiom,
                index,
                label: self.labels[index].clone(),
            }),
        };
        for (i, row) in self.coaction.iter().enumerate() {
            // sum_j eps(f_ji) m_j == m_i
            let ok = row.iter().any(|(j, _)| *j == i) && row.iter().all(|(j, c)| g.counit(c) == (*j == i) as u32);
            if !ok {
                return fail(Axiom::Counit, i);
            }
        }
        for (i, row) in self.coaction.iter().enumerate() {
            // Delta(f_li) == sum_j f_lj (x) f_ji for every l.
            let mut rhs: BTreeMap<usize, Tensor> = BTreeMap::new();
            for (j, fji) in row {
                for (l, flj) in &self.coaction[*j] {
                    rhs.entry(*l).or_default().add_product(f, flj, fji, 1);
                }
            }
            let mut lhs: BTreeMap<usize, Tensor> = BTreeMap::new();
            for (l, fli) in row {
                lhs.insert(*l, g.coproduct(fli));
            }
            lhs.retain(|_, t| !t.is_zero());
            rhs.retain(|_, t| !t.is_zero());
            if lhs != rhs {
                return fail(Axiom::Coassociativity, i);
            }
        }
        ValidationReport {
            dim: self.dim(),
            violation: None,
        }
    }

    /// Coaction coefficients with every coefficient replaced by `map(f)`.
    pub(crate) fn map_coefficients(&self, labels: Vec<String>, map: impl Fn(&Element) -> Element) -> Comodule {
        let coaction = self
            .coaction
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(j, c)| (*j, map(c)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Comodule {
            group: self.group.clone(),
            labels,
            coaction,
        }
    }

    fn check_same_group(&self, other: &Comodule) -> Result<()> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        Ok(())
    }

    /// The trivial one-dimensional comodule `k`.
    pub fn trivial(group: Arc<Group>) -> Comodule {
        let one = group.one();
        Comodule {
            group,
            labels: vec!["1".to_string()],
            coaction: vec![vec![(0, one)]],
        }
    }

    /// The defining representation `Delta(e_j) = sum_i e_i (x) x_ij` of the
    /// matrix embedding (for `Ga` the 2-dimensional unipotent one).
    pub fn natural(group: Arc<Group>) -> Comodule {
        let n = group.matrix_size();
        let coaction = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (i, group.entry(i, j)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Comodule {
            labels: (1..=n).map(|i| format!("e{i}")).collect(),
            group,
            coaction,
        }
    }

    /// The line `k_{det^s}`.
    pub fn det_power(group: Arc<Group>, s: i64) -> Result<Comodule> {
        if !group.kind().has_inverse_det() {
            return Err(Error::Unsupported {
                op: "detpow",
                group: group.to_string(),
            });
        }
        let c = group.det_power(s)?;
        Ok(Comodule {
            group,
            labels: vec![format!("det^{s}")],
            coaction: vec![vec![(0, c)]],
        })
    }

    /// The truncation `O(G)_{<=n}` of the right regular comodule, with
    /// coaction the coproduct.
    pub fn regular(group: Arc<Group>, n: u32) -> Comodule {
        let basis = group.filtration_basis(n);
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let coaction = basis
            .iter()
            .map(|m| {
                group
                    .coproduct_monomial(m)
                    .by_left()
                    .into_iter()
                    .map(|(a, c)| (index[&a], c))
                    .collect::<Vec<_>>()
            })
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        let labels = basis.iter().map(|m| group.format_monomial(m)).collect();
        Comodule {
            group,
            labels,
            coaction,
        }
    }

    /// `M (x) N` with basis `m_i (x) n_k` at index `i * dim N + k`.
    pub fn tensor(&self, other: &Comodule) -> Result<Comodule> {
        self.check_same_group(other)?;
        let g = &self.group;
        let nd = other.dim();
        let mut labels = Vec::with_capacity(self.dim() * nd);
        let mut coaction = Vec::with_capacity(self.dim() * nd);
        for (i, row) in self.coaction.iter().enumerate() {
            for (k, orow) in other.coaction.iter().enumerate() {
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[k]));
                let mut out = Vec::new();
                for (j, f) in row {
                    for (l, h) in orow {
                        let c = g.mul(f, h);
                        if !c.is_zero() {
                            out.push((j * nd + l, c));
                        }
                    }
                }
                out.sort_by_key(|e| e.0);
                coaction.push(out);
            }
        }
        Ok(Comodule {
            group: g.clone(),
            labels,
            coaction,
        })
    }

    /// `M (+) N`, with `N`'s basis following `M`'s.
    pub fn direct_sum(&self, other: &Comodule) -> Result<Comodule> {
        self.check_same_group(other)?;
        let off = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut coaction = self.coaction.clone();
        coaction.extend(
            other
                .coaction
                .iter()
                .map(|row| row.iter().map(|(j, c)| (j + off, c.clone())).collect()),
        );
        Ok(Comodule {
            group: self.group.clone(),
            labels,
            coaction,
        })
    }

    /// The dual `M^*`: `Delta(m^i) = sum_j m^j (x) sigma(f_ij)`.
    pub fn dual(&self) -> Result<Comodule> {
        let g = &self.group;
        let mut coaction: Vec<Vec<(usize, Element)>> = vec![Vec::new(); self.dim()];
        for (j, row) in self.coaction.iter().enumerate() {
            for (i, fij) in row {
                let s = g.antipode(fij)?;
                if !s.is_zero() {
                    coaction[*i].push((j, s));
                }
            }
        }
        for row in &mut coaction {
            row.sort_by_key(|e| e.0);
        }
        Ok(Comodule {
            group: g.clone(),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            coaction,
        })
    }

    /// The `r`-th Frobenius twist: every coefficient raised to the `p^r`.
    pub fn frobenius_twist(&self, r: u32) -> Comodule {
        let labels = self
            .labels
            .iter()
            .map(|l| if r == 0 { l.clone() } else { format!("{l}^({r})") })
            .collect();
        let g = self.group.clone();
        self.map_coefficients(labels, |c| g.frobenius(c, r))
    }

    /// The quotient symmetric power `S^n(M)`: basis the degree-`n` monomials
    /// in the basis of `M`, coaction extended multiplicatively.
    pub fn symmetric_power(&self, n: u32) -> Comodule {
        let g = &self.group;
        let f = g.field();
        let q = self.dim();
        let exps = crate::coordalg::exponents_of_degree(q, n);
        let index: BTreeMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut coaction = Vec::with_capacity(exps.len());
        for a in &exps {
            // Product of Delta(m_i)^{a_i} as a polynomial in the m_j.
            let mut acc: BTreeMap<Vec<u32>, Element> = BTreeMap::new();
            acc.insert(vec![0; q], g.one());
            for (i, &ai) in a.iter().enumerate() {
                for _ in 0..ai {
                    let mut next: BTreeMap<Vec<u32>, Element> = BTreeMap::new();
                    for (mono, c) in &acc {
                        for (j, fji) in &self.coaction[i] {
                            let mut m2 = mono.clone();
                            m2[*j] += 1;
                            let e = next.entry(m2).or_default();
                            *e = e.add(f, &g.mul(c, fji));
                        }
                    }
                    next.retain(|_, c| !c.is_zero());
                    acc = next;
                }
            }
            let mut row: Vec<(usize, Element)> = acc.into_iter().map(|(m, c)| (index[&m], c)).collect();
            row.sort_by_key(|e| e.0);
            coaction.push(row);
        }
        let labels = exps
            .iter()
            .map(|e| {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.labels[i].clone()
                        } else {
                            format!("{}^{k}", self.labels[i])
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("·")
                }
            })
            .collect();
        Comodule {
            group: g.clone(),
            labels,
            coaction,
        }
    }

    /// The subcomodule spanned by the first `n` basis vectors; they must span
    /// a subcomodule.
    pub fn prefix(&self, n: usize) -> Result<Comodule> {
        if self.coaction[..n].iter().flatten().any(|(j, _)| *j >= n) {
            return Err(Error::Internal(format!(
                "the first {n} basis vectors do not span a subcomodule"
            )));
        }
        Ok(Comodule {
            group: self.group.clone(),
            labels: self.labels[..n].to_vec(),
            coaction: self.coaction[..n].to_vec(),
        })
    }
}
