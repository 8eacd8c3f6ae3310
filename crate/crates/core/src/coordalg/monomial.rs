use std::fmt;

/// A monomial `x^a * det^{-inv}` in the generators of a catalog algebra.
///
/// The derived order compares `(inv, deg, exps)` with `exps` lexicographic and
/// larger exponents first; it is the order used by normal-form reduction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    inv: u32,
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            inv: 0,
            deg: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn new(exps: Vec<u32>, inv: u32) -> Self {
        let deg = exps.iter().sum();
        Monomial { inv, deg, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Power of `det^{-1}`.
    pub fn inv(&self) -> u32 {
        self.inv
    }

    /// Total degree of the polynomial part.
    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.inv == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial {
            inv: self.inv + other.inv,
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            inv: self.inv * e,
            deg: self.deg * e,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Divides out the variables in `vars` once each; `None` unless every one
    /// of them divides.
    pub fn divide_vars(&self, vars: &[usize]) -> Option<Monomial> {
        if vars.iter().any(|&v| self.exps[v] == 0) {
            return None;
        }
        let mut m = self.clone();
        for &v in vars {
            m.exps[v] -= 1;
        }
        m.deg -= vars.len() as u32;
        Some(m)
    }

    pub(crate) fn with_inv(&self, inv: u32) -> Monomial {
        Monomial {
            inv,
            deg: self.deg,
            exps: self.exps.clone(),
        }
    }

    /// Removes one factor of variable `i`.
    pub(crate) fn without_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        m
    }

    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&a| a > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/det^{}", self.exps, self.inv)
    }
}

/// All exponent vectors of total degree exactly `deg` in `nvars` variables, in
/// decreasing lexicographic order.
pub fn exponents_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, deg, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a;
        fill(cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

/// `binom(n, k)` as an exact integer; zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
