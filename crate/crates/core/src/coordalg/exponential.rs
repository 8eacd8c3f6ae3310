use super::{Element, Monomial};
use crate::linalg::Field;

/// Entries of `I + tY + ... + t^{p-1} Y^{p-1} / (p-1)!` for a generic `N x N`
/// matrix `Y`, as polynomials in the `N^2` entries of `Y` (row-major) and a
/// final variable `t`.
pub fn truncated_exponential(n: usize, field: Field) -> Vec<Vec<Element>> {
    let nv = n * n + 1;
    let t = n * n;
    let f = field;
    let y = |i: usize, j: usize| Element::monomial(Monomial::var(nv, i * n + j), 1);
    let mul = |a: &Element, b: &Element| {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_term(f, ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    };
    let mut acc: Vec<Vec<Element>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Element::monomial(Monomial::one(nv), 1)
                    } else {
                        Element::zero()
                    }
                })
                .collect()
        })
        .collect();
    // power = (tY)^k, accumulated with weight 1/k!.
    let mut power = acc.clone();
    for k in 1..f.p() {
        let mut next = vec![vec![Element::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let prod = mul(&power[i][l], &y(l, j));
                    next[i][j].add_scaled(f, &prod, 1);
                }
                next[i][j] = mul(&next[i][j], &Element::monomial(Monomial::var(nv, t), 1));
            }
        }
        power = next;
        let w = f.inv(f.factorial(k));
        for i in 0..n {
            for j in 0..n {
                acc[i][j].add_scaled(f, &power[i][j], w);
            }
        }
    }
    acc
}

/// Largest power of `t` among the entries of [`truncated_exponential`].
pub fn truncated_exponential_degree(n: usize, field: Field) -> usize {
    let t = n * n;
    truncated_exponential(n, field)
        .iter()
        .flatten()
        .flat_map(|e| e.support().map(|m| m.exp(t) as usize).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}
