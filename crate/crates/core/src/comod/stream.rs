use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::Comodule;
use crate::coordalg::{exponents_of_degree, Element, Group, GroupKind};
use crate::error::{Error, Result};

/// Generations above this dimension are refused.
const MAX_GENERATION_DIM: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamKind {
    /// `k[x_1..x_m]` under `x_i |-> x_i (x) 1 + 1 (x) t`, truncated at degree `n`.
    PolyAffine(usize),
    /// `span{1, t, t^p, .., t^{p^n}}` inside `k[t]`.
    Primitives,
    /// `span{u^j : j <= n}`, `u = t^p - t`: the functions invariant under
    /// translation by `F_p`.
    TranslationInvariants,
    /// `(+)_{r <= n} (natural^{(r)})^{(+) p^{r^e}}`.
    TwistStream(u32),
    /// `O(G)_{<=n}` inside the right regular comodule.
    Regular,
}

impl fmt::Display for StreamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamKind::PolyAffine(m) => write!(f, "polyaffine({m})"),
            StreamKind::Primitives => f.write_str("primitives"),
            StreamKind::TranslationInvariants => f.write_str("translationinvariants"),
            StreamKind::TwistStream(e) => write!(f, "twiststream({e})"),
            StreamKind::Regular => f.write_str("regular"),
        }
    }
}

/// Largest `r` with `p^r <= d`; zero for `d = 0`.
pub(crate) fn floor_log(p: u32, d: u32) -> u32 {
    let (mut r, mut q) = (0, p as u64);
    while q <= d as u64 {
        r += 1;
        q *= p as u64;
    }
    r
}

/// An infinite comodule presented by nested finite truncations `M^(n)`.
///
/// Each `M^(n)` is the prefix of `M^(n+1)` on its first `dim M^(n)` basis
/// vectors, so inclusions are coordinate inclusions.
pub struct Stream {
    group: Arc<Group>,
    kind: StreamKind,
    cache: RwLock<HashMap<u32, Arc<Comodule>>>,
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stream({} over {})", self.kind, self.group)
    }
}

impl Stream {
    pub fn new(group: Arc<Group>, kind: StreamKind) -> Result<Stream> {
        let ok = match kind {
            StreamKind::PolyAffine(m) => group.kind() == GroupKind::Ga && m >= 1,
            StreamKind::Primitives | StreamKind::TranslationInvariants => group.kind() == GroupKind::Ga,
            StreamKind::TwistStream(_) | StreamKind::Regular => true,
        };
        if !ok {
            return Err(Error::Unsupported {
                op: match kind {
                    StreamKind::PolyAffine(_) => "polyaffine",
                    StreamKind::Primitives => "primitives",
                    StreamKind::TranslationInvariants => "translationinvariants",
                    _ => unreachable!(),
                },
                group: group.to_string(),
            });
        }
        Ok(Stream {
            group,
            kind,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn kind(&self) -> StreamKind {
        self.kind
    }

    /// Generation `n(d)` past which `(M^(n))_X` no longer changes for
    /// `X` inside `O(G)_{<=d}`.
    pub fn sufficiency(&self, d: u32) -> u32 {
        let p = self.group.p();
        match self.kind {
            StreamKind::PolyAffine(_) | StreamKind::Regular => d,
            StreamKind::Primitives | StreamKind::TwistStream(_) => floor_log(p, d),
            StreamKind::TranslationInvariants => d / p,
        }
    }

    pub fn generation(&self, n: u32) -> Result<Arc<Comodule>> {
        if let Some(c) = self.cache.read().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.compute(n)?);
        self.cache.write().unwrap().insert(n, c.clone());
        Ok(c)
    }

    fn compute(&self, n: u32) -> Result<Comodule> {
        let g = &self.group;
        let f = g.field();
        let t = |e: u32| g.pow(&g.generator(0), e);
        match self.kind {
            StreamKind::Regular => Ok(Comodule::regular(g.clone(), n)),
            StreamKind::Primitives => {
                let mut labels = vec!["1".to_string()];
                let mut coaction = vec![vec![(0, g.one())]];
                let mut q = 1u32;
                for i in 0..=n {
                    labels.push(if q == 1 { "t".to_string() } else { format!("t^{q}") });
                    coaction.push(vec![(0, t(q)), (i as usize + 1, g.one())]);
                    q = q.checked_mul(g.p()).ok_or(Error::Resource {
                        what: "stream generation",
                        value: n as usize,
                        limit: i as usize,
                    })?;
                }
                Comodule::from_parts(g.clone(), labels, coaction)
            }
            StreamKind::TranslationInvariants => {
                let p = g.p();
                let u = t(p).sub(f, &t(1));
                let powers: Vec<Element> = (0..=n).map(|j| g.pow(&u, j)).collect();
                let labels = (0..=n)
                    .map(|j| match j {
                        0 => "1".to_string(),
                        1 => "u".to_string(),
                        _ => format!("u^{j}"),
                    })
                    .collect();
                let coaction = (0..=n)
                    .map(|j| {
                        (0..=j)
                            .map(|i| {
                                let c = f.binomial(j as u64, i as u64);
                                (i as usize, powers[(j - i) as usize].scale(f, c))
                            })
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect();
                Comodule::from_parts(g.clone(), labels, coaction)
            }
            StreamKind::PolyAffine(m) => {
                let exps: Vec<Vec<u32>> = (0..=n).flat_map(|k| exponents_of_degree(m, k)).collect();
                if exps.len() > MAX_GENERATION_DIM {
                    return Err(Error::Resource {
                        what: "stream generation dimension",
                        value: exps.len(),
                        limit: MAX_GENERATION_DIM,
                    });
                }
                let index: HashMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
                let labels = exps.iter().map(|e| poly_label(e)).collect();
                let coaction = exps
                    .iter()
                    .map(|a| {
                        let total: u32 = a.iter().sum();
                        let mut row = Vec::new();
                        // x^a |-> sum_{b <= a} prod binom(a_i, b_i) x^b (x) t^{|a|-|b|}
                        for b in sub_exponents(a) {
                            let c = a
                                .iter()
                                .zip(&b)
                                .fold(1, |acc, (&ai, &bi)| f.mul(acc, f.binomial(ai as u64, bi as u64)));
                            if c != 0 {
                                let k: u32 = b.iter().sum();
                                row.push((index[&b], t(total - k).scale(f, c)));
                            }
                        }
                        row.sort_by_key(|e| e.0);
                        row
                    })
                    .collect();
                Comodule::from_parts(g.clone(), labels, coaction)
            }
            StreamKind::TwistStream(e) => {
                let p = g.p() as u64;
                let nat = Comodule::natural(g.clone());
                let mut total = 0usize;
                let mut blocks = Vec::new();
                for r in 0..=n {
                    let copies = p
                        .checked_pow(r.checked_pow(e).unwrap_or(u32::MAX))
                        .filter(|&c| c as usize <= MAX_GENERATION_DIM)
                        .ok_or(Error::Resource {
                            what: "stream generation dimension",
                            value: usize::MAX,
                            limit: MAX_GENERATION_DIM,
                        })? as usize;
                    total += copies * nat.dim();
                    if total > MAX_GENERATION_DIM {
                        return Err(Error::Resource {
                            what: "stream generation dimension",
                            value: total,
                            limit: MAX_GENERATION_DIM,
                        });
                    }
                    blocks.push((r, copies));
                }
                let mut labels = Vec::with_capacity(total);
                let mut coaction: Vec<Vec<(usize, Element)>> = Vec::with_capacity(total);
                for (r, copies) in blocks {
                    let tw = nat.frobenius_twist(r);
                    for c in 0..copies {
                        let off = coaction.len();
                        for (i, l) in nat.labels().iter().enumerate() {
                            labels.push(format!("{l}^({r})#{}", c + 1));
                            coaction.push(tw.coaction(i).iter().map(|(j, x)| (j + off, x.clone())).collect());
                        }
                    }
                }
                Comodule::from_parts(g.clone(), labels, coaction)
            }
        }
    }

    /// Whether `M^(n)` sits in `M^(n+1)` as the coordinate prefix with the
    /// same coaction data.
    pub fn inclusion_is_comodule_map(&self, n: u32) -> Result<bool> {
        let small = self.generation(n)?;
        let big = self.generation(n + 1)?;
        Ok(small.dim() <= big.dim() && big.prefix(small.dim()).map(|c| c == *small).unwrap_or(false))
    }
}

fn sub_exponents(a: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &ai in a {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=ai).map(move |b| {
                    let mut v = prefix.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

fn poly_label(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{k}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
