use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::{SparseEchelon, SparseVec};

fn field(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn group(kind: GroupKind, p: u32) -> Group {
    Group::new(kind, field(p)).unwrap()
}

fn catalog() -> Vec<GroupKind> {
    use GroupKind::*;
    vec![
        Ga,
        Gm,
        GL(1),
        GL(2),
        GL(3),
        SL(2),
        SL(3),
        U(2),
        U(3),
        MatMonoid(2),
        MatMonoid(3),
    ]
}

fn parse(g: &Group, terms: &[(i64, &[u32], u32)]) -> Element {
    let mut raw = BTreeMap::new();
    for &(c, e, inv) in terms {
        raw.insert(Monomial::new(e.to_vec(), inv), g.field().from_i64(c));
    }
    g.normalize(raw)
}

fn random_element(g: &Group, d: u32, rng: &mut ChaCha8Rng) -> Element {
    let basis = g.filtration_basis(d);
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(1..4) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(g.field(), m, rng.gen_range(1..g.p()));
    }
    e
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), u32>;

fn coassoc_sides(g: &Group, a: &Element) -> (Triple, Triple) {
    let f = g.field();
    let t = g.coproduct(a);
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for (x, y, c) in t.terms() {
        for (x1, x2, c1) in g.coproduct_monomial(x).terms() {
            let e = left.entry((x1.clone(), x2.clone(), y.clone())).or_insert(0);
            *e = f.mul_add(*e, c, c1);
        }
        for (y1, y2, c2) in g.coproduct_monomial(y).terms() {
            let e = right.entry((x.clone(), y1.clone(), y2.clone())).or_insert(0);
            *e = f.mul_add(*e, c, c2);
        }
    }
    left.retain(|_, v| *v != 0);
    right.retain(|_, v| *v != 0);
    (left, right)
}

#[test]
fn gl2_coproduct_of_x11() {
    let g = group(GroupKind::GL(2), 5);
    let t = g.coproduct(&g.entry(0, 0));
    let mut want = Tensor::zero();
    want.add_product(g.field(), &g.entry(0, 0), &g.entry(0, 0), 1);
    want.add_product(g.field(), &g.entry(0, 1), &g.entry(1, 0), 1);
    assert_eq!(t, want);
}

#[test]
fn unit_is_grouplike() {
    for kind in catalog() {
        let g = group(kind, 3);
        let t = g.coproduct(&g.one());
        let mut want = Tensor::zero();
        want.add_product(g.field(), &g.one(), &g.one(), 1);
        assert_eq!(t, want, "{g}");
    }
}

#[test]
fn ga_coproduct_of_t_squared() {
    let g = group(GroupKind::Ga, 3);
    let t2 = g.pow(&g.generator(0), 2);
    let got = g.coproduct(&t2);
    let mut want = Tensor::zero();
    want.add_product(g.field(), &t2, &g.one(), 1);
    want.add_product(g.field(), &g.generator(0), &g.generator(0), 2);
    want.add_product(g.field(), &g.one(), &t2, 1);
    assert_eq!(got, want);
}

#[test]
fn gl2_antipode_of_x11_is_cofactor() {
    let g = group(GroupKind::GL(2), 3);
    let s = g.antipode(&g.entry(0, 0)).unwrap();
    let want = g.mul(&g.entry(1, 1), &g.det_inverse().unwrap());
    assert_eq!(s, want);
}

#[test]
fn gm_antipode_inverts_weight() {
    let g = group(GroupKind::Gm, 5);
    for n in 0..5u32 {
        let tn = g.pow(&g.generator(0), n);
        let s = g.antipode(&tn).unwrap();
        assert_eq!(s, g.pow(&g.det_inverse().unwrap(), n));
        assert_eq!(
            g.format_element(&s),
            if n == 0 {
                "1".to_string()
            } else if n == 1 {
                "t^-1".to_string()
            } else {
                format!("t^-{n}")
            }
        );
    }
}

#[test]
fn gl2_antipode_of_x12_has_degree_three() {
    let g = group(GroupKind::GL(2), 2);
    let s = g.antipode(&g.entry(0, 1)).unwrap();
    assert_eq!(g.filtration_degree(&s), Some(3));
}

#[test]
fn monoid_has_no_antipode() {
    let g = group(GroupKind::MatMonoid(2), 2);
    assert!(matches!(g.antipode(&g.one()), Err(Error::Unsupported { .. })));
}

#[test]
fn det_times_inverse_is_one() {
    let g = group(GroupKind::GL(2), 7);
    assert_eq!(g.mul(&g.determinant(), &g.det_inverse().unwrap()), g.one());
    let h = group(GroupKind::GL(3), 2);
    assert_eq!(h.mul(&h.determinant(), &h.det_inverse().unwrap()), h.one());
}

#[test]
fn ga_square() {
    let g = group(GroupKind::Ga, 2);
    let t = g.generator(0);
    assert_eq!(g.mul(&t, &t), parse(&g, &[(1, &[2], 0)]));
}

#[test]
fn sl2_relation() {
    let g = group(GroupKind::SL(2), 5);
    let x11x22 = g.mul(&g.entry(0, 0), &g.entry(1, 1));
    let want = g.one().add(g.field(), &g.mul(&g.entry(0, 1), &g.entry(1, 0)));
    assert_eq!(x11x22, want);
    assert_eq!(g.determinant(), g.one());
}

#[test]
fn basis_examples() {
    assert_eq!(group(GroupKind::GL(2), 5).filtration_dim(3), 40);
    let gm = group(GroupKind::Gm, 3);
    let b = gm.filtration_basis(3);
    let names: Vec<String> = b.iter().map(|m| gm.format_monomial(m)).collect();
    assert_eq!(b.len(), 7);
    for k in -3i32..=3 {
        let s = match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        assert!(names.contains(&s), "{s} missing from {names:?}");
    }
    assert_eq!(group(GroupKind::SL(2), 3).filtration_dim(3), 30);
}

#[test]
fn dimension_formulas() {
    let c = |n: i64, k: i64| binomial(n, k) as usize;
    for n in 1..=3usize {
        let n2 = (n * n) as i64;
        let gl = group(GroupKind::GL(n), 2);
        let sl = group(GroupKind::SL(n), 2);
        let m = group(GroupKind::MatMonoid(n), 2);
        let dmax = if n == 3 { 4 } else { 8 };
        let gl_dims = gl.filtration_dims(dmax);
        for d in 0..=dmax as i64 {
            let top = c(d + n2, n2);
            let low = c(d - n as i64 + n2, n2);
            assert_eq!(gl.filtration_dim(d as u32), top + low, "GL({n}) d={d}");
            assert_eq!(gl_dims[d as usize], top + low);
            assert_eq!(sl.filtration_dim(d as u32), top - low, "SL({n}) d={d}");
            assert_eq!(m.filtration_dim(d as u32), top);
        }
    }
    for n in 2..=4usize {
        let u = group(GroupKind::U(n), 3);
        let k = (n * (n - 1) / 2) as i64;
        for d in 0..6i64 {
            assert_eq!(u.filtration_dim(d as u32), c(d + k, k));
        }
    }
    let ga = group(GroupKind::Ga, 5);
    assert!((0..10).all(|d| ga.filtration_dim(d) == d as usize + 1));
}

#[test]
fn sl_basis_is_pivot_complement() {
    // Independent oracle: row-reduce the span of (det - 1) x^b degree by
    // degree and compare the non-pivot monomials.
    for n in [2usize, 3] {
        let g = group(GroupKind::SL(n), 3);
        let m = group(GroupKind::MatMonoid(n), 3);
        let f = g.field();
        let d = if n == 2 { 5 } else { 3 };
        let mut cols: Vec<Monomial> = m.filtration_basis(d).to_vec();
        cols.sort_by(|a, b| b.cmp(a));
        let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let det = m.determinant();
        let mut ech = SparseEchelon::new(f);
        for b in m.filtration_basis(d.saturating_sub(n as u32)).iter() {
            let mut row: SparseVec = Vec::new();
            for (t, c) in det.terms() {
                row.push((index[&t.mul(b)], c));
            }
            row.push((index[b], f.neg(1)));
            row.sort();
            ech.insert(row);
        }
        let pivots: Vec<usize> = ech.pivot_columns().collect();
        let mut complement: Vec<Monomial> = (0..cols.len())
            .filter(|i| !pivots.contains(i))
            .map(|i| cols[i].clone())
            .collect();
        complement.sort();
        let mut basis = g.filtration_basis(d).to_vec();
        basis.sort();
        assert_eq!(basis, complement, "SL({n})");
    }
}

#[test]
fn counit_and_coassociativity_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in catalog() {
        for p in [2, 3, 5] {
            let g = group(kind, p);
            let f = g.field();
            let samples = if kind.matrix_size() >= 3 { 40 } else { 200 };
            for _ in 0..samples {
                let a = random_element(&g, 4, &mut rng);
                let t = g.coproduct(&a);
                let (mut l, mut r) = (Element::zero(), Element::zero());
                for (x, y, c) in t.terms() {
                    l.add_term(f, x.clone(), f.mul(c, g.counit_monomial(y)));
                    r.add_term(f, y.clone(), f.mul(c, g.counit_monomial(x)));
                }
                assert_eq!(l, a, "{g}: right counit");
                assert_eq!(r, a, "{g}: left counit");
                let (lhs, rhs) = coassoc_sides(&g, &a);
                assert_eq!(lhs, rhs, "{g}: coassociativity on {}", g.format_element(&a));
            }
        }
    }
}

#[test]
fn antipode_axiom_on_generators() {
    for kind in catalog().into_iter().filter(|k| k.has_antipode()) {
        for p in [2, 3, 5] {
            let g = group(kind, p);
            let mut gens: Vec<Element> = (0..g.nvars()).map(|v| g.generator(v)).collect();
            if let Ok(di) = g.det_inverse() {
                gens.push(di);
            }
            for x in gens {
                let t = g.coproduct(&x);
                let left = g.multiply_legs(&t, |a| g.antipode(a).unwrap(), Clone::clone);
                let right = g.multiply_legs(&t, Clone::clone, |a| g.antipode(a).unwrap());
                let want = g.constant(g.counit(&x) as i64);
                assert_eq!(left, want, "{g}: sigma * id on {}", g.format_element(&x));
                assert_eq!(right, want, "{g}: id * sigma on {}", g.format_element(&x));
            }
        }
    }
}

#[test]
fn filtration_pieces_are_subcoalgebras() {
    for kind in catalog() {
        let g = group(kind, 3);
        let dmax = if kind.matrix_size() >= 3 { 3 } else { 6 };
        for d in 0..=dmax {
            for m in g.filtration_basis(d).iter() {
                for (a, b, _) in g.coproduct_monomial(m).terms() {
                    let da = g.monomial_degree(a);
                    let db = g.monomial_degree(b);
                    assert!(da <= d && db <= d, "{g}: leg outside degree {d}");
                    assert!(g.is_normal(a) && g.is_normal(b));
                }
            }
        }
    }
}

#[test]
fn antipode_degree_bound_for_gl() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1usize, 2, 3] {
        let g = group(GroupKind::GL(n), 3);
        let bound = 2 * n as u32 - 1;
        for v in 0..g.nvars() {
            let s = g.antipode(&g.generator(v)).unwrap();
            assert_eq!(g.filtration_degree(&s), Some(bound));
        }
        let samples = if n == 3 { 10 } else { 60 };
        for _ in 0..samples {
            let a = random_element(&g, 3, &mut rng);
            let s = g.antipode(&a).unwrap();
            if let (Some(ds), Some(da)) = (g.filtration_degree(&s), g.filtration_degree(&a)) {
                assert!(ds <= bound * da, "{g}: {ds} > {bound} * {da}");
            }
        }
    }
}

#[test]
fn truncated_exponential_degree_is_p_minus_one() {
    assert_eq!(truncated_exponential_degree(2, field(3)), 2);
    assert_eq!(truncated_exponential_degree(1, field(2)), 1);
    assert_eq!(truncated_exponential_degree(3, field(5)), 4);
    assert_eq!(truncated_exponential_degree(2, field(5)), 4);
}

#[test]
fn truncated_exponential_one_by_one() {
    // N = 1: 1 + ty + t^2 y^2 / 2 over F_3.
    let f = field(3);
    let e = &truncated_exponential(1, f)[0][0];
    assert_eq!(e.len(), 3);
    assert_eq!(e.coefficient(&Monomial::new(vec![2, 2], 0)), f.inv(2));
}

#[test]
fn frobenius_is_termwise_power() {
    let g = group(GroupKind::GL(2), 3);
    let a = g.entry(0, 0).add(g.field(), &g.entry(0, 1));
    let cube = g.pow(&a, 3);
    assert_eq!(g.frobenius(&a, 1), cube);
    let gm = group(GroupKind::Gm, 2);
    let di = gm.det_inverse().unwrap();
    assert_eq!(gm.frobenius(&di, 2), gm.pow(&di, 4));
}

#[test]
fn group_grammar() {
    for text in ["Ga@p=2", "Gm@p=3", "GL:2@p=5", "SL:3@p=2", "U:3@p=3", "M:2@p=2"] {
        assert_eq!(parse_group(text).unwrap().to_string(), text);
    }
    assert_eq!(parse_group(" GL : 2 @ p = 5 ").unwrap().to_string(), "GL:2@p=5");
    assert!(matches!(parse_group("GL:2@p=4"), Err(Error::NotPrime(4))));
    assert!(matches!(parse_group("U:1@p=2"), Err(Error::Parse { .. })));
    match parse_group("GL:x@p=5") {
        Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse_group("Foo@p=2"), Err(Error::Parse { offset: 0, .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn filtration_is_multiplicative(kind in prop::sample::select(catalog()), i in 0usize..400, j in 0usize..400, d in 0u32..4, e in 0u32..4) {
        let g = group(kind, 3);
        let bd = g.filtration_basis(d);
        let be = g.filtration_basis(e);
        let a = Element::monomial(bd[i % bd.len()].clone(), 1);
        let b = Element::monomial(be[j % be.len()].clone(), 1);
        let prod = g.mul(&a, &b);
        prop_assert!(g.filtration_degree(&prod).unwrap_or(0) <= d + e);
    }

    #[test]
    fn normal_form_is_idempotent(kind in prop::sample::select(catalog()), exps in prop::collection::vec(0u32..3, 9), inv in 0u32..3) {
        let g = group(kind, 5);
        let inv = if kind.has_inverse_det() { inv } else { 0 };
        let m = Monomial::new(exps[..g.nvars()].to_vec(), inv);
        let nf = g.normal_form(&m);
        prop_assert!(nf.support().all(|x| g.is_normal(x)));
        let again = g.normalize(nf.clone().into_terms());
        prop_assert_eq!(again, nf);
    }
}

#[test]
fn monomial_lists_parse_to_normal_forms() {
    let gl = parse_group("GL:2@p=3").unwrap();
    let span = gl.parse_span("1, x11^2*x22, det^-1").unwrap();
    assert_eq!(span.len(), 3);
    assert_eq!(span[0], gl.one());
    assert_eq!(gl.format_element(&span[1]), "x11^2*x22");
    assert_eq!(span[2], gl.det_inverse().unwrap());
    let gm = parse_group("Gm@p=2").unwrap();
    let t = gm.parse_span("t^-2, t^3").unwrap();
    assert_eq!(gm.format_element(&t[0]), "t^-2");
    assert_eq!(gm.format_element(&t[1]), "t^3");
    match gl.parse_span("1, y12") {
        Err(Error::Parse { offset, token, .. }) => assert_eq!((offset, token.as_str()), (3, "y12")),
        other => panic!("{other:?}"),
    }
    assert!(parse_group("Ga@p=2").unwrap().parse_span("t^-1").is_err());
}
