use std::sync::Arc;

use super::{exponents_of_degree, Group, GroupKind, Monomial};

impl Group {
    /// Normal monomials spanning `O(G)_{<=d}`, ordered by filtration degree
    /// and then by the monomial order. Built once per `d` and shared.
    pub fn filtration_basis(&self, d: u32) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.basis_cache.read().unwrap().get(&d) {
            return b.clone();
        }
        let mut basis = self.enumerate_basis(d);
        basis.sort_by(|a, b| {
            self.monomial_degree(a)
                .cmp(&self.monomial_degree(b))
                .then_with(|| a.cmp(b))
        });
        let basis = Arc::new(basis);
        self.basis_cache.write().unwrap().insert(d, basis.clone());
        basis
    }

    pub fn filtration_dim(&self, d: u32) -> usize {
        self.filtration_basis(d).len()
    }

    /// `dim O(G)_{<=d}` for `d = 0..=d_max` from a single enumeration.
    pub fn filtration_dims(&self, d_max: u32) -> Vec<usize> {
        let mut hist = vec![0usize; d_max as usize + 1];
        for m in self.enumerate_basis(d_max) {
            hist[self.monomial_degree(&m) as usize] += 1;
        }
        hist.iter()
            .scan(0, |acc, &h| {
                *acc += h;
                Some(*acc)
            })
            .collect()
    }

    fn enumerate_basis(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars;
        let mut out = Vec::new();
        for deg in 0..=d {
            out.extend(exponents_of_degree(n, deg).into_iter().map(|e| Monomial::new(e, 0)));
        }
        match self.kind {
            GroupKind::Ga | GroupKind::U(_) | GroupKind::MatMonoid(_) => out,
            GroupKind::Gm | GroupKind::GL(_) => {
                // x^a det^{-j}, j >= 1, |a| + jN <= d, with x^a not divisible
                // by the diagonal product.
                let size = self.size as u32;
                let mut j = 1;
                while j * size <= d {
                    for deg in 0..=d - j * size {
                        for e in exponents_of_degree(n, deg) {
                            let m = Monomial::new(e, j);
                            if self.is_normal(&m) {
                                out.push(m);
                            }
                        }
                    }
                    j += 1;
                }
                out
            }
            GroupKind::SL(_) => {
                // The rows (det - 1) x^b, |b| <= d - N, have pairwise distinct
                // leading monomials diag * x^b, so they are already in echelon
                // form and the pivots are exactly the monomials divisible by
                // the diagonal product. The basis is the pivot complement.
                out.retain(|m| self.is_normal(m));
                out
            }
        }
    }
}
