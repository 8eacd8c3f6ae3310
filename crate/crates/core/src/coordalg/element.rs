use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::Monomial;
use crate::linalg::Field;

/// A finite linear combination of monomials with coefficients in `F_p`.
///
/// Elements handed out by [`super::Group`] are in normal form; raw sums built
/// with [`Element::add_term`] are not normalized until passed through
/// `Group::normalize`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        let mut e = Element::zero();
        if c != 0 {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, field: Field, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = field.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, field: Field, other: &Element, s: u32) {
        if s == 0 {
            return;
        }
        for (m, c) in other.terms() {
            let v = field.mul(c, s);
            let e = self.terms.entry(m.clone()).or_insert(0);
            *e = field.add(*e, v);
        }
        self.terms.retain(|_, v| *v != 0);
    }

    pub fn add(&self, field: Field, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(field, other, 1);
        out
    }

    pub fn sub(&self, field: Field, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(field, other, field.neg(1 % field.p()));
        out
    }

    pub fn scale(&self, field: Field, s: u32) -> Element {
        let mut out = Element::zero();
        out.add_scaled(field, self, s);
        out
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, u32> {
        self.terms
    }

    pub(crate) fn from_terms(terms: BTreeMap<Monomial, u32>) -> Self {
        let mut terms = terms;
        terms.retain(|_, v| *v != 0);
        Element { terms }
    }
}

/// An element of `O(G) (x) O(G)` as a sparse map on pairs of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(Monomial, Monomial), u32>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, u32)> + '_ {
        self.terms.iter().map(|((a, b), &c)| (a, b, c))
    }

    pub fn coefficient(&self, a: &Monomial, b: &Monomial) -> u32 {
        self.terms.get(&(a.clone(), b.clone())).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, field: Field, a: Monomial, b: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Occupied(mut o) => {
                let v = field.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Adds `s * (a (x) b)` for elements `a`, `b`.
    pub fn add_product(&mut self, field: Field, a: &Element, b: &Element, s: u32) {
        for (ma, ca) in a.terms() {
            let sa = field.mul(s, ca);
            for (mb, cb) in b.terms() {
                self.add_term(field, ma.clone(), mb.clone(), field.mul(sa, cb));
            }
        }
    }

    pub fn add_scaled(&mut self, field: Field, other: &Tensor, s: u32) {
        for (a, b, c) in other.terms() {
            self.add_term(field, a.clone(), b.clone(), field.mul(c, s));
        }
    }

    /// Groups terms by left leg: `sum_a a (x) f_a`.
    pub fn by_left(&self) -> BTreeMap<Monomial, Element> {
        let mut out: BTreeMap<Monomial, Element> = BTreeMap::new();
        for ((a, b), &c) in &self.terms {
            out.entry(a.clone()).or_default().terms.insert(b.clone(), c);
        }
        out
    }

    /// Groups terms by right leg: `sum_b f_b (x) b`.
    pub fn by_right(&self) -> BTreeMap<Monomial, Element> {
        let mut out: BTreeMap<Monomial, Element> = BTreeMap::new();
        for ((a, b), &c) in &self.terms {
            out.entry(b.clone()).or_default().terms.insert(a.clone(), c);
        }
        out
    }
}
