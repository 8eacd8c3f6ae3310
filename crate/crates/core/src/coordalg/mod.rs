//! Catalog coordinate algebras `O(G)` with exact structure maps.
//!
//! Every catalog algebra is presented through a closed embedding into a
//! matrix monoid: `GL(N)` and `Gm = GL(1)` through `A |-> (A, det(A)^{-1})`,
//! `SL(N)` as the quotient by `det - 1`, `U(N)` and `Ga = U(2)` by their
//! strictly upper triangular coordinates. A monomial is `x^a * det^{-j}`;
//! normal forms reduce by the leading term of `det`, which is the diagonal
//! product in the lexicographic order on row-major variables.

mod element;
mod exponential;
mod filtration;
mod monomial;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

pub use element::{Element, Tensor};
pub use exponential::{truncated_exponential, truncated_exponential_degree};
pub use monomial::{binomial, exponents_of_degree, Monomial};

use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Ga,
    Gm,
    GL(usize),
    SL(usize),
    U(usize),
    MatMonoid(usize),
}

impl GroupKind {
    /// Size of the defining matrix embedding.
    pub fn matrix_size(self) -> usize {
        match self {
            GroupKind::Ga => 2,
            GroupKind::Gm => 1,
            GroupKind::GL(n) | GroupKind::SL(n) | GroupKind::U(n) | GroupKind::MatMonoid(n) => n,
        }
    }

    pub fn has_antipode(self) -> bool {
        !matches!(self, GroupKind::MatMonoid(_))
    }

    /// Whether `det^{-1}` is a generator.
    pub fn has_inverse_det(self) -> bool {
        matches!(self, GroupKind::Gm | GroupKind::GL(_))
    }

    pub fn is_unipotent(self) -> bool {
        matches!(self, GroupKind::Ga | GroupKind::U(_))
    }

    /// Dimension of the Lie algebra (of the monoid, for `MatMonoid`).
    pub fn lie_dim(self) -> usize {
        match self {
            GroupKind::Ga | GroupKind::Gm => 1,
            GroupKind::GL(n) | GroupKind::MatMonoid(n) => n * n,
            GroupKind::SL(n) => n * n - 1,
            GroupKind::U(n) => n * (n - 1) / 2,
        }
    }
}

struct Reduction {
    /// Variables whose product is the leading monomial of `det`.
    diag: Vec<usize>,
    /// `det - lead`, negated: `lead == tail` modulo the defining relation.
    tail: Vec<(Monomial, u32)>,
    /// `GL`: the rule consumes one `det^{-1}`; `SL`: the rule uses `det = 1`.
    lowers_inv: bool,
}

/// A catalog group (or monoid) scheme over `F_p` with its coordinate algebra.
pub struct Group {
    kind: GroupKind,
    field: Field,
    size: usize,
    nvars: usize,
    var_at: HashMap<(usize, usize), usize>,
    var_names: Vec<String>,
    reduction: Option<Reduction>,
    gen_coproducts: Vec<Tensor>,
    gen_antipodes: Option<Vec<Element>>,
    normal_cache: RwLock<HashMap<Monomial, Element>>,
    coproduct_cache: RwLock<HashMap<Monomial, Arc<Tensor>>>,
    antipode_cache: RwLock<HashMap<Monomial, Element>>,
    basis_cache: RwLock<HashMap<u32, Arc<Vec<Monomial>>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        match self.kind {
            GroupKind::Ga => write!(f, "Ga@p={p}"),
            GroupKind::Gm => write!(f, "Gm@p={p}"),
            GroupKind::GL(n) => write!(f, "GL:{n}@p={p}"),
            GroupKind::SL(n) => write!(f, "SL:{n}@p={p}"),
            GroupKind::U(n) => write!(f, "U:{n}@p={p}"),
            GroupKind::MatMonoid(n) => write!(f, "M:{n}@p={p}"),
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.field == other.field
    }
}

impl Eq for Group {}

fn parse_err(offset: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        token: token.to_string(),
        message: message.into(),
    }
}

/// Parses `Ga@p=2`, `Gm@p=3`, `GL:2@p=5`, `SL:3@p=2`, `U:3@p=3`, `M:2@p=2`.
/// Whitespace is ignored; offsets refer to the original text.
pub fn parse_group(text: &str) -> Result<Group> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let compact: String = chars.iter().map(|(_, c)| c).collect();
    let offset_of = |i: usize| chars.get(i).map_or(text.len(), |(o, _)| *o);
    let Some(at) = compact.find('@') else {
        return Err(parse_err(text.len(), text, "expected `@p=<prime>`"));
    };
    let (head, tail) = compact.split_at(at);
    let Some(pstr) = tail.strip_prefix("@p=") else {
        return Err(parse_err(offset_of(at), tail, "expected `@p=<prime>`"));
    };
    let p_at = offset_of(at + 3);
    let p: u64 = pstr
        .parse()
        .map_err(|_| parse_err(p_at, pstr, "characteristic must be an integer"))?;
    let p32 = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    let field = Field::new(p32)?;
    let (name, n) = match head.split_once(':') {
        Some((name, n)) => {
            let n_at = offset_of(name.len() + 1);
            let n: usize = n
                .parse()
                .map_err(|_| parse_err(n_at, n, "size must be a positive integer"))?;
            (name, Some(n))
        }
        None => (head, None),
    };
    let kind = match (name, n) {
        ("Ga", None) => GroupKind::Ga,
        ("Gm", None) => GroupKind::Gm,
        ("GL", Some(n)) => GroupKind::GL(n),
        ("SL", Some(n)) => GroupKind::SL(n),
        ("U", Some(n)) => GroupKind::U(n),
        ("M", Some(n)) => GroupKind::MatMonoid(n),
        _ => return Err(parse_err(offset_of(0), head, "unknown group")),
    };
    Group::new(kind, field)
}

impl Group {
    pub fn new(kind: GroupKind, field: Field) -> Result<Group> {
        let size = kind.matrix_size();
        let bad = |msg: &str| parse_err(0, &format!("{kind:?}"), msg);
        match kind {
            GroupKind::U(n) if n < 2 => return Err(bad("U(N) needs N >= 2")),
            GroupKind::GL(0) | GroupKind::SL(0) | GroupKind::MatMonoid(0) => return Err(bad("N must be >= 1")),
            _ => {}
        }
        if size > 6 {
            return Err(bad("matrix size above 6 is not supported"));
        }
        let mut var_at = HashMap::new();
        let mut var_names = Vec::new();
        let name = |i: usize, j: usize| {
            if size < 10 {
                format!("x{}{}", i + 1, j + 1)
            } else {
                format!("x{}_{}", i + 1, j + 1)
            }
        };
        match kind {
            GroupKind::Ga => {
                var_at.insert((0, 1), 0);
                var_names.push("t".to_string());
            }
            GroupKind::Gm => {
                var_at.insert((0, 0), 0);
                var_names.push("t".to_string());
            }
            GroupKind::U(n) => {
                for i in 0..n {
                    for j in i + 1..n {
                        var_at.insert((i, j), var_names.len());
                        var_names.push(name(i, j));
                    }
                }
            }
            _ => {
                for i in 0..size {
                    for j in 0..size {
                        var_at.insert((i, j), var_names.len());
                        var_names.push(name(i, j));
                    }
                }
            }
        }
        let nvars = var_names.len();
        let mut g = Group {
            kind,
            field,
            size,
            nvars,
            var_at,
            var_names,
            reduction: None,
            gen_coproducts: Vec::new(),
            gen_antipodes: None,
            normal_cache: RwLock::new(HashMap::new()),
            coproduct_cache: RwLock::new(HashMap::new()),
            antipode_cache: RwLock::new(HashMap::new()),
            basis_cache: RwLock::new(HashMap::new()),
        };
        if matches!(kind, GroupKind::Gm | GroupKind::GL(_) | GroupKind::SL(_)) {
            let det = g.determinant_raw();
            let diag: Vec<usize> = (0..size).map(|i| g.var_at[&(i, i)]).collect();
            let lead = Monomial::new((0..nvars).map(|v| diag.contains(&v) as u32).collect(), 0);
            let tail = det
                .terms()
                .filter(|(m, _)| **m != lead)
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect();
            debug_assert_eq!(det.coefficient(&lead), 1);
            g.reduction = Some(Reduction {
                diag,
                tail,
                lowers_inv: kind.has_inverse_det(),
            });
        }
        g.gen_coproducts = (0..nvars)
            .map(|v| {
                let (i, j) = *g.var_at.iter().find(|(_, &idx)| idx == v).unwrap().0;
                let mut t = Tensor::zero();
                for l in 0..size {
                    t.add_product(field, &g.entry(i, l), &g.entry(l, j), 1);
                }
                t
            })
            .collect();
        if kind.has_antipode() {
            g.gen_antipodes = Some(g.generator_antipodes());
        }
        Ok(g)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Size `N` of the defining matrix embedding.
    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_name(&self, v: usize) -> &str {
        &self.var_names[v]
    }

    pub fn one(&self) -> Element {
        Element::monomial(self.unit_monomial(), 1)
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::one(self.nvars)
    }

    pub fn constant(&self, c: i64) -> Element {
        Element::monomial(self.unit_monomial(), self.field.from_i64(c))
    }

    /// The matrix coordinate function at `(i, j)` (0-based) of the defining
    /// embedding; constant `1`/`0` on the fixed entries of `U(N)`.
    pub fn entry(&self, i: usize, j: usize) -> Element {
        match self.var_at.get(&(i, j)) {
            Some(&v) => Element::monomial(Monomial::var(self.nvars, v), 1),
            None if i == j => self.one(),
            None => Element::zero(),
        }
    }

    /// The generator `t` of `Ga` or `Gm`, and `x_{ij}` otherwise.
    pub fn generator(&self, v: usize) -> Element {
        Element::monomial(Monomial::var(self.nvars, v), 1)
    }

    fn det_inverse_monomial(&self) -> Monomial {
        Monomial::new(vec![0; self.nvars], 1)
    }

    /// `det^{-1}`; only for groups with an inverted determinant.
    pub fn det_inverse(&self) -> Result<Element> {
        if !self.kind.has_inverse_det() {
            return Err(Error::Unsupported {
                op: "det^-1",
                group: self.to_string(),
            });
        }
        Ok(Element::monomial(self.det_inverse_monomial(), 1))
    }

    /// `det(x)` in normal form (equal to `1` on `SL(N)`).
    pub fn determinant(&self) -> Element {
        self.normalize(self.determinant_raw().into_terms())
    }

    /// `det^s` for any integer `s` (negative powers need `det^{-1}`).
    pub fn det_power(&self, s: i64) -> Result<Element> {
        if s >= 0 {
            Ok(self.pow(&self.determinant(), s as u32))
        } else {
            Ok(self.pow(&self.det_inverse()?, (-s) as u32))
        }
    }

    fn minor_raw(&self, rows: &[usize], cols: &[usize]) -> Element {
        let f = self.field;
        if rows.is_empty() {
            return self.one();
        }
        let mut out = Element::zero();
        let r0 = rows[0];
        for (k, &c) in cols.iter().enumerate() {
            let e = self.entry(r0, c);
            if e.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor_raw(&rows[1..], &sub_cols);
            let prod = self.mul_raw(&e, &sub);
            let s = if k % 2 == 0 { 1 } else { f.neg(1) };
            out.add_scaled(f, &prod, s);
        }
        out
    }

    fn determinant_raw(&self) -> Element {
        let idx: Vec<usize> = (0..self.size).collect();
        self.minor_raw(&idx, &idx)
    }

    fn mul_raw(&self, a: &Element, b: &Element) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(f, ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }

    fn generator_antipodes(&self) -> Vec<Element> {
        let f = self.field;
        let n = self.size;
        let mut out = vec![Element::zero(); self.nvars];
        match self.kind {
            GroupKind::U(_) | GroupKind::Ga => {
                // sigma(x_ij) = -x_ij - sum_{i<l<j} x_il sigma(x_lj), by increasing j - i.
                let mut by_pos: BTreeMap<(usize, usize), Element> = BTreeMap::new();
                for width in 1..n {
                    for i in 0..n - width {
                        let j = i + width;
                        let mut s = self.entry(i, j).scale(f, f.neg(1));
                        for l in i + 1..j {
                            let prod = self.mul(&self.entry(i, l), &by_pos[&(l, j)]);
                            s = s.sub(f, &prod);
                        }
                        by_pos.insert((i, j), s);
                    }
                }
                for ((i, j), s) in by_pos {
                    out[self.var_at[&(i, j)]] = s;
                }
            }
            _ => {
                // Cramer: sigma(x_ij) = (-1)^{i+j} minor_{ji} det^{-1}.
                for (&(i, j), &v) in &self.var_at {
                    let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                    let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                    let mut m = self.minor_raw(&rows, &cols);
                    if (i + j) % 2 == 1 {
                        m = m.scale(f, f.neg(1));
                    }
                    if self.kind.has_inverse_det() {
                        m = self.mul_raw(&m, &Element::monomial(self.det_inverse_monomial(), 1));
                    }
                    out[v] = self.normalize(m.into_terms());
                }
            }
        }
        out
    }

    fn is_reducible(&self, m: &Monomial) -> bool {
        match &self.reduction {
            None => false,
            Some(r) => (!r.lowers_inv || m.inv() > 0) && r.diag.iter().all(|&v| m.exp(v) > 0),
        }
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.nvars() == self.nvars && !self.is_reducible(m)
    }

    /// Brings a raw linear combination of monomials into normal form.
    pub fn normalize(&self, raw: BTreeMap<Monomial, u32>) -> Element {
        let Some(red) = &self.reduction else {
            return Element::from_terms(raw);
        };
        let f = self.field;
        let mut work = raw;
        let mut done = BTreeMap::new();
        // Every rewrite replaces a monomial by strictly smaller ones in the
        // derived `(inv, deg, lex)` order, so each key is popped at most once.
        while let Some((m, c)) = work.pop_last() {
            if c == 0 {
                continue;
            }
            let Some(rest) = (if self.is_reducible(&m) {
                m.divide_vars(&red.diag)
            } else {
                None
            }) else {
                done.insert(m, c);
                continue;
            };
            let head = if red.lowers_inv {
                rest.with_inv(rest.inv() - 1)
            } else {
                rest.clone()
            };
            let e = work.entry(head).or_insert(0);
            *e = f.add(*e, c);
            for (t, tc) in &red.tail {
                let e = work.entry(t.mul(&rest)).or_insert(0);
                *e = f.mul_add(*e, c, *tc);
            }
        }
        Element::from_terms(done)
    }

    /// Normal form of a single (possibly non-normal) monomial; cached.
    pub fn normal_form(&self, m: &Monomial) -> Element {
        if !self.is_reducible(m) {
            return Element::monomial(m.clone(), 1);
        }
        if let Some(e) = self.normal_cache.read().unwrap().get(m) {
            return e.clone();
        }
        let mut raw = BTreeMap::new();
        raw.insert(m.clone(), 1);
        let e = self.normalize(raw);
        self.normal_cache.write().unwrap().insert(m.clone(), e.clone());
        e
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = self.field;
        let mut raw: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let e = raw.entry(ma.mul(mb)).or_insert(0);
                *e = f.mul_add(*e, ca, cb);
            }
        }
        self.normalize(raw)
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^{p^r}`, computed termwise since `(a + b)^p = a^p + b^p` and
    /// `c^p = c` in `F_p`.
    pub fn frobenius(&self, a: &Element, r: u32) -> Element {
        let q = (self.p() as u64).pow(r);
        let q = u32::try_from(q).expect("Frobenius exponent overflow");
        let mut raw = BTreeMap::new();
        for (m, c) in a.terms() {
            raw.insert(m.pow(q), c);
        }
        self.normalize(raw)
    }

    /// Filtration degree of a monomial: total degree plus `N` per `det^{-1}`.
    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.deg() + self.size as u32 * m.inv()
    }

    /// Filtration degree of a normal-form element; `None` for zero.
    pub fn filtration_degree(&self, a: &Element) -> Option<u32> {
        a.support().map(|m| self.monomial_degree(m)).max()
    }

    pub fn counit_monomial(&self, m: &Monomial) -> u32 {
        let diag_only = self.var_at.iter().all(|(&(i, j), &v)| i == j || m.exp(v) == 0);
        diag_only as u32
    }

    pub fn counit(&self, a: &Element) -> u32 {
        let f = self.field;
        a.terms()
            .fold(0, |acc, (m, c)| f.mul_add(acc, c, self.counit_monomial(m)))
    }

    /// Product in `O(G) (x) O(G)`, with both legs normalized.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let f = self.field;
        let mut out = Tensor::zero();
        for (a1, a2, ca) in a.terms() {
            for (b1, b2, cb) in b.terms() {
                let l = self.normal_form(&a1.mul(b1));
                let r = self.normal_form(&a2.mul(b2));
                out.add_product(f, &l, &r, f.mul(ca, cb));
            }
        }
        out
    }

    /// Coproduct of a normal monomial; cached.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Arc<Tensor> {
        if let Some(t) = self.coproduct_cache.read().unwrap().get(m) {
            return t.clone();
        }
        let t = if m.is_one() {
            let mut t = Tensor::zero();
            t.add_term(self.field, m.clone(), m.clone(), 1);
            t
        } else if let Some(v) = m.first_var() {
            let rest = self.coproduct_monomial(&m.without_var(v));
            self.tensor_mul(&self.gen_coproducts[v], &rest)
        } else {
            let di = self.det_inverse_monomial();
            let mut g = Tensor::zero();
            g.add_term(self.field, di.clone(), di, 1);
            let rest = self.coproduct_monomial(&m.with_inv(m.inv() - 1));
            self.tensor_mul(&g, &rest)
        };
        let t = Arc::new(t);
        self.coproduct_cache.write().unwrap().insert(m.clone(), t.clone());
        t
    }

    pub fn coproduct(&self, a: &Element) -> Tensor {
        let mut out = Tensor::zero();
        for (m, c) in a.terms() {
            out.add_scaled(self.field, &self.coproduct_monomial(m), c);
        }
        out
    }

    fn antipode_monomial(&self, m: &Monomial) -> Element {
        if m.is_one() {
            return self.one();
        }
        if let Some(e) = self.antipode_cache.read().unwrap().get(m) {
            return e.clone();
        }
        let gens = self.gen_antipodes.as_ref().expect("antipode checked by caller");
        let e = if let Some(v) = m.first_var() {
            self.mul(&gens[v], &self.antipode_monomial(&m.without_var(v)))
        } else {
            self.mul(&self.determinant(), &self.antipode_monomial(&m.with_inv(m.inv() - 1)))
        };
        self.antipode_cache.write().unwrap().insert(m.clone(), e.clone());
        e
    }

    pub fn antipode(&self, a: &Element) -> Result<Element> {
        if self.gen_antipodes.is_none() {
            return Err(Error::Unsupported {
                op: "antipode",
                group: self.to_string(),
            });
        }
        let f = self.field;
        let mut out = Element::zero();
        for (m, c) in a.terms() {
            out.add_scaled(f, &self.antipode_monomial(m), c);
        }
        Ok(out)
    }

    /// Applies `f (x) g` to a tensor, returning the multiplied-out element
    /// `sum f(a) g(b)`.
    pub fn multiply_legs(
        &self,
        t: &Tensor,
        left: impl Fn(&Element) -> Element,
        right: impl Fn(&Element) -> Element,
    ) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (a, b, c) in t.terms() {
            let l = left(&Element::monomial(a.clone(), 1));
            let r = right(&Element::monomial(b.clone(), 1));
            out.add_scaled(f, &self.mul(&l, &r), c);
        }
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if matches!(self.kind, GroupKind::Gm) {
            let e = m.exp(0) as i64 - m.inv() as i64;
            return match e {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
        }
        let mut parts = Vec::new();
        for (v, &a) in m.exps().iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(self.var_names[v].clone()),
                _ => parts.push(format!("{}^{}", self.var_names[v], a)),
            }
        }
        if m.inv() > 0 {
            parts.push(format!("det^-{}", m.inv()));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, a: &Element) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = self.field;
        let mut s = String::new();
        for (k, (m, c)) in a.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let c = f.signed(c);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let mono = self.format_monomial(m);
            match (mag, mono.as_str()) {
                (1, _) => s.push_str(&mono),
                (_, "1") => s.push_str(&mag.to_string()),
                _ => s.push_str(&format!("{mag}*{mono}")),
            }
        }
        s
    }

    /// Parses a product such as `x11^2*x22*det^-1` (or `t^-3` over `Gm`)
    /// into its normal form. `base` is the byte offset of `text` in the
    /// caller's input, used in errors.
    pub fn parse_monomial(&self, text: &str, base: usize) -> Result<Element> {
        let nv = self.nvars();
        let mut exps = vec![0u32; nv];
        let mut inv = 0u32;
        let mut at = base;
        for factor in text.split('*') {
            let lead = factor.len() - factor.trim_start().len();
            let tok = factor.trim();
            let off = at + lead;
            at += factor.len() + 1;
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| parse_err(off, tok, "exponent must be an integer"))?;
                    (n.trim(), e)
                }
                None => (tok, 1),
            };
            let negative_ok = name == "det" || matches!(self.kind, GroupKind::Gm);
            if power < 0 && !negative_ok {
                return Err(parse_err(off, tok, "negative exponent"));
            }
            let power32 = u32::try_from(power.unsigned_abs()).map_err(|_| parse_err(off, tok, "exponent too large"))?;
            if name == "det" {
                if !self.kind.has_inverse_det() || power > 0 {
                    return Err(parse_err(off, tok, "only det^-k is a coordinate here"));
                }
                inv += power32;
            } else if let Some(v) = self.var_names.iter().position(|n| n == name) {
                if power < 0 {
                    inv += power32;
                } else {
                    exps[v] += power32;
                }
            } else {
                return Err(parse_err(off, tok, "unknown variable"));
            }
        }
        Ok(self.normal_form(&Monomial::new(exps, inv)))
    }

    /// Comma-separated monomials, as accepted by [`Group::parse_monomial`].
    pub fn parse_span(&self, text: &str) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        let mut at = 0;
        for part in text.split(',') {
            if part.trim().is_empty() {
                return Err(parse_err(at, part, "empty entry"));
            }
            out.push(self.parse_monomial(part, at)?);
            at += part.len() + 1;
        }
        Ok(out)
    }

    /// Whether every coefficient of `t` agrees with `other`; both normalized.
    pub fn tensor_eq(&self, t: &Tensor, other: &Tensor) -> bool {
        t == other
    }
}

#[cfg(test)]
mod tests;
