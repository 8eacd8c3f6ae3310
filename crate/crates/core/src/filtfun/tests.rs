use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::comod::Built;
use crate::coordalg::parse_group;
use crate::linalg::{Field, Matrix};

fn g(text: &str) -> Arc<Group> {
    Arc::new(parse_group(text).unwrap())
}

fn fin(text: &str, group: &Arc<Group>) -> Comodule {
    Built::parse(text, group).unwrap().finite().unwrap()
}

fn stream(text: &str, group: &Arc<Group>) -> Stream {
    Built::parse(text, group).unwrap().stream().unwrap()
}

/// Every subspace of `F_p^n`, by spanning all small sets of vectors.
fn all_subspaces(field: Field, n: usize) -> Vec<Subspace> {
    let p = field.p() as usize;
    let vectors: Vec<Vec<u32>> = (1..p.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % p) as u32;
                    k /= p;
                    d
                })
                .collect()
        })
        .collect();
    let mut seen: HashSet<Subspace> = HashSet::new();
    seen.insert(Subspace::zero(field, n));
    let mut frontier: Vec<Subspace> = vec![Subspace::zero(field, n)];
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut vs = s.basis().to_vec();
            vs.push(v.clone());
            let t = Subspace::from_vectors(field, n, vs);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// Sum of all X-subcomodules, found by exhaustion.
fn oracle_restriction(m: &Comodule, level: Level) -> Subspace {
    let f = m.group().field();
    all_subspaces(f, m.dim())
        .into_iter()
        .filter(|v| is_x_subcomodule(m, v, level))
        .fold(Subspace::zero(f, m.dim()), |acc, v| acc.sum(&v).unwrap())
}

fn span(group: &Group, elements: &[Element]) -> XSpace {
    XSpace::span(group.field(), elements)
}

#[test]
fn gm_regular_truncates_to_the_level() {
    let gm = g("Gm@p=5");
    let r = restrict(&fin("regular(3)", &gm), Level::Degree(2)).unwrap();
    assert_eq!(r.subspace.dim(), 5);
    let mut labels = r.comodule.labels().to_vec();
    labels.sort();
    assert_eq!(labels, ["1", "t", "t^-1", "t^-2", "t^2"]);
    assert!(r.warning.is_none());
}

#[test]
fn unit_level_gives_fixed_points() {
    for gt in ["GL:2@p=3", "Ga@p=2", "U:3@p=2"] {
        let group = g(gt);
        let unit = span(&group, &[group.one()]);
        let nat = restrict(&fin("natural", &group), Level::Space(&unit)).unwrap();
        let expected = match group.kind() {
            crate::coordalg::GroupKind::GL(_) => 0,
            _ => 1,
        };
        assert_eq!(nat.subspace.dim(), expected, "{gt}");
        let reg = restrict(&fin("regular(2)", &group), Level::Space(&unit)).unwrap();
        assert_eq!(reg.subspace.dim(), 1, "{gt}: constants");
        let triv = restrict(&fin("triv", &group), Level::Space(&unit)).unwrap();
        assert_eq!(triv.subspace.dim(), 1);
    }
}

#[test]
fn unit_free_level_warns_and_vanishes() {
    let ga = g("Ga@p=3");
    let x = span(&ga, &[ga.generator(0)]);
    let r = restrict(&fin("regular(3)", &ga), Level::Space(&x)).unwrap();
    assert!(r.subspace.is_zero());
    assert!(r.warning.is_some());
}

#[test]
fn unit_free_level_keeps_a_weight_line() {
    let gm = g("Gm@p=3");
    let x = span(&gm, &[gm.generator(0)]);
    let r = restrict(&fin("sum(triv, detpow(1))", &gm), Level::Space(&x)).unwrap();
    assert_eq!(r.subspace.dim(), 1);
    assert!(r.warning.is_some());
}

#[test]
fn bad_extension_keeps_three_vectors() {
    let ga = g("Ga@p=2");
    let m = fin("sum(natural, twist(1, natural))", &ga);
    let r = restrict(&m, Level::Degree(1)).unwrap();
    assert_eq!(r.subspace.dim(), 3);
    assert_eq!(r.subspace, oracle_restriction(&m, Level::Degree(1)));
    // w, v, w^(1); v^(1) carries the coefficient t^2.
    assert_eq!(r.comodule.labels(), ["e1", "e2", "e1^(1)"]);
}

#[test]
fn maximality_against_exhaustive_enumeration() {
    let cases: Vec<(&str, &str)> = vec![
        ("Ga@p=2", "natural"),
        ("Ga@p=2", "sum(natural, twist(1, natural))"),
        ("Ga@p=2", "sym(2, natural)"),
        ("Ga@p=2", "sym(3, natural)"),
        ("Ga@p=2", "tensor(natural, natural)"),
        ("U:2@p=2", "sum(natural, triv)"),
        ("GL:2@p=2", "sum(natural, detpow(1))"),
        ("GL:2@p=2", "sum(twist(1, natural), triv)"),
        ("SL:2@p=2", "tensor(natural, natural)"),
        ("Gm@p=2", "regular(1)"),
        ("M:2@p=2", "sum(natural, triv)"),
    ];
    for (gt, et) in cases {
        let group = g(gt);
        let m = fin(et, &group);
        assert!(m.dim() <= 4);
        let t = group.generator(0);
        let explicit = [
            span(&group, &[group.one()]),
            span(&group, &[group.one(), t.clone()]),
            span(&group, &[group.one(), group.pow(&t, 2)]),
            span(&group, std::slice::from_ref(&t)),
            XSpace::canonical(&group, 1),
        ];
        for d in 0..3 {
            let level = Level::Degree(d);
            let r = restrict(&m, level).unwrap();
            assert_eq!(r.subspace, oracle_restriction(&m, level), "{gt} {et} d={d}");
        }
        for x in &explicit {
            let level = Level::Space(x);
            let r = restrict(&m, level).unwrap();
            assert_eq!(
                r.subspace,
                oracle_restriction(&m, level),
                "{gt} {et} X={:?}",
                x.elements()
            );
        }
    }
}

#[test]
fn polyaffine_and_primitive_dimensions() {
    let ga2 = g("Ga@p=2");
    let poly = filtration_dims(Source::Stream(&stream("polyaffine(2)", &ga2)), 5).unwrap();
    assert_eq!(poly.dims(), [1, 3, 6, 10, 15, 21]);
    // The unit is a left leg of Delta(t), so it belongs to every level.
    let prim = filtration_dims(Source::Stream(&stream("primitives", &ga2)), 8).unwrap();
    assert_eq!(prim.dims()[1..], [2, 3, 3, 4, 4, 4, 4, 5]);
}

#[test]
fn natural_stabilizes_at_degree_one() {
    let gl = g("GL:2@p=3");
    let m = fin("natural", &gl);
    let r = filtration_dims(Source::Finite(&m), 4).unwrap();
    assert_eq!(r.dims(), [0, 2, 2, 2, 2]);
    assert_eq!(r.stabilized_at(), Some(1));
    assert_eq!(coheight(&m), 1);
}

#[test]
fn finite_modules_stabilize_at_their_coheight() {
    for (gt, et) in [
        ("GL:2@p=2", "tensor(natural, dual(natural))"),
        ("GL:2@p=3", "detpow(-1)"),
        ("SL:2@p=3", "sym(2, natural)"),
        ("U:3@p=2", "twist(1, natural)"),
        ("Ga@p=3", "regular(4)"),
        ("Gm@p=2", "sum(detpow(2), detpow(-3))"),
    ] {
        let group = g(gt);
        let m = fin(et, &group);
        let h = coheight(&m);
        let r = filtration_dims(Source::Finite(&m), h + 2).unwrap();
        assert_eq!(r.stabilized_at(), Some(h), "{gt} {et}");
        assert!(r.dims()[h as usize..].iter().all(|&d| d == m.dim()));
        assert!(r.dims().windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn closure_examples() {
    let ga = g("Ga@p=3");
    for d in 0..5 {
        let x = XSpace::canonical(&ga, d);
        let c = coalgebra_closure(&ga, &x).unwrap();
        assert_eq!(c.space, x);
        assert!(c.is_subcoalgebra);
    }
    let t2 = ga.pow(&ga.generator(0), 2);
    let x = span(&ga, &[ga.one(), t2]);
    let c = coalgebra_closure(&ga, &x).unwrap();
    assert_eq!(c.space.elements(), [ga.one()]);
    let gl = g("GL:2@p=2");
    let x = XSpace::canonical(&gl, 1);
    assert_eq!(coalgebra_closure(&gl, &x).unwrap().space, x);
}

/// `Delta(D) in D (x) X` by expansion, `D` and `X` given by elements.
fn is_coideal_in(group: &Group, d: &XSpace, x: &XSpace) -> bool {
    d.elements().iter().all(|e| {
        let t = group.coproduct(e);
        t.by_right().values().all(|l| d.contains(l)) && t.by_left().values().all(|r| x.contains(r))
    })
}

#[test]
fn closure_matches_exhaustive_search() {
    let cases: Vec<(&str, Vec<Vec<u32>>)> = vec![
        ("Ga@p=3", vec![vec![0], vec![2]]),
        ("Ga@p=2", vec![vec![0], vec![1], vec![3]]),
        ("Ga@p=2", vec![vec![1], vec![2]]),
        ("Ga@p=2", vec![vec![0], vec![2], vec![4]]),
        ("U:2@p=2", vec![vec![0], vec![1], vec![2]]),
    ];
    for (gt, exps) in cases {
        let group = g(gt);
        let t = group.generator(0);
        let elems: Vec<Element> = exps.iter().map(|e| group.pow(&t, e[0])).collect();
        let x = span(&group, &elems);
        let got = coalgebra_closure(&group, &x).unwrap().space;
        let best = all_subspaces(group.field(), x.monomials().len())
            .into_iter()
            .map(|s| XSpace::new(x.monomials().to_vec(), s).unwrap())
            .filter(|d| x.contains_space(d) && is_coideal_in(&group, d, &x))
            .max_by_key(|d| d.dim())
            .unwrap();
        assert_eq!(got, best, "{gt} {exps:?}");
        let again = coalgebra_closure(&group, &got).unwrap().space;
        assert_eq!(again, got, "idempotence");
    }
}

#[test]
fn closures_of_an_ascending_family_ascend() {
    let gl = g("GL:2@p=3");
    let mut prev: Option<XSpace> = None;
    for d in 0..4 {
        let x = XSpace::canonical(&gl, d);
        let c = coalgebra_closure(&gl, &x).unwrap().space;
        assert_eq!(c, x);
        if let Some(p) = prev {
            assert!(c.contains_space(&p));
        }
        prev = Some(c);
    }
}

#[test]
fn tensor_containment_examples() {
    let gl = g("GL:2@p=3");
    let nat = fin("natural", &gl);
    let both = tensor_containment(&nat, &nat, Level::Degree(2)).unwrap();
    assert_eq!(
        both,
        Containment {
            tensor_dim: 4,
            product_dim: 4,
            holds: true
        }
    );
    let d = fin("detpow(1)", &gl);
    let di = fin("detpow(-1)", &gl);
    let lines = tensor_containment(&d, &di, Level::Degree(1)).unwrap();
    assert_eq!(
        lines,
        Containment {
            tensor_dim: 1,
            product_dim: 0,
            holds: false
        }
    );
    let ga = g("Ga@p=2");
    let v = fin("natural", &ga);
    let vv = tensor_containment(&v, &v, Level::Degree(1)).unwrap();
    assert_eq!(
        vv,
        Containment {
            tensor_dim: 3,
            product_dim: 4,
            holds: true
        }
    );
}

#[test]
fn restriction_is_functorial_for_sum_inclusions_and_projections() {
    for (gt, a, b) in [
        ("Ga@p=2", "natural", "twist(1, natural)"),
        ("GL:2@p=3", "natural", "detpow(1)"),
        ("U:3@p=2", "sym(2, natural)", "natural"),
    ] {
        let group = g(gt);
        let (m, n) = (fin(a, &group), fin(b, &group));
        let s = m.direct_sum(&n).unwrap();
        for d in 0..4 {
            let level = Level::Degree(d);
            let mx = restrict(&m, level).unwrap().subspace;
            let nx = restrict(&n, level).unwrap().subspace;
            let sx = restrict(&s, level).unwrap().subspace;
            assert!(sx.contains_subspace(&mx.pad(n.dim())), "{gt} inclusion d={d}");
            let proj: Vec<Vec<u32>> = sx.basis().iter().map(|v| v[..m.dim()].to_vec()).collect();
            let image = Subspace::from_vectors(group.field(), m.dim(), proj);
            assert!(mx.contains_subspace(&image), "{gt} projection d={d}");
            assert_eq!(sx.dim(), mx.dim() + nx.dim());
        }
    }
}

/// `phi(m_i) = sum_k a[i][k] n_k` commutes with the coactions.
fn is_comodule_map(m: &Comodule, n: &Comodule, a: &[Vec<u32>]) -> bool {
    let f = m.group().field();
    (0..m.dim()).all(|i| {
        (0..n.dim()).all(|l| {
            let mut lhs = Element::zero();
            for (j, c) in m.coaction(i) {
                lhs.add_scaled(f, c, a[*j][l]);
            }
            let mut rhs = Element::zero();
            for k in 0..n.dim() {
                rhs.add_scaled(f, &n.coefficient(l, k), a[i][k]);
            }
            lhs == rhs
        })
    })
}

#[test]
fn kernels_and_images_of_comodule_maps_are_x_comodules() {
    let ga = g("Ga@p=2");
    let f = ga.field();
    let pairs = [
        ("natural", "sum(natural, triv)"),
        ("sum(natural, triv)", "natural"),
        ("natural", "natural"),
    ];
    for (a, b) in pairs {
        let (m, n) = (fin(a, &ga), fin(b, &ga));
        let cells = m.dim() * n.dim();
        let mut seen = 0;
        for bits in 0u32..(1 << cells) {
            let mat: Vec<Vec<u32>> = (0..m.dim())
                .map(|i| (0..n.dim()).map(|k| (bits >> (i * n.dim() + k)) & 1).collect())
                .collect();
            if !is_comodule_map(&m, &n, &mat) {
                continue;
            }
            seen += 1;
            let level = Level::Degree(1);
            let ker = Matrix::from_residue_rows(f, n.dim(), mat.clone()).left_kernel();
            let img = Subspace::from_vectors(f, n.dim(), mat);
            assert!(is_x_subcomodule(&m, &ker, level));
            assert!(is_x_subcomodule(&n, &img, level));
        }
        assert!(seen > 1, "{a} -> {b}");
    }
}

#[test]
fn sufficiency_bounds_on_cofinite_streams() {
    let ga = g("Ga@p=2");
    for et in ["primitives", "translationinvariants", "regular", "polyaffine(1)"] {
        let s = stream(et, &ga);
        for d in 0..6 {
            let (a, b) = sufficiency_check(&s, d).unwrap();
            assert_eq!(a, b, "{et} d={d}");
        }
    }
    let tw = stream("twiststream(1)", &g("GL:2@p=2"));
    for d in 0..5 {
        let (a, b) = sufficiency_check(&tw, d).unwrap();
        assert_eq!(a, b, "twiststream d={d}");
    }
}

#[test]
fn polyaffine_in_two_variables_is_not_cofinite() {
    // (x1 - x2)^k is invariant, so every generation adds to the degree-0 level.
    let s = stream("polyaffine(2)", &g("Ga@p=3"));
    let (a, b) = sufficiency_check(&s, 0).unwrap();
    assert!(b > a);
}

fn arb_level(group: Arc<Group>) -> impl Strategy<Value = XSpace> {
    let basis = group.filtration_basis(3).to_vec();
    prop::collection::vec(prop::collection::vec(0u32..group.p(), basis.len()), 1..4).prop_map(move |rows| {
        let elems: Vec<Element> = rows
            .iter()
            .map(|r| {
                let mut e = Element::zero();
                for (m, &c) in basis.iter().zip(r) {
                    e.add_term(group.field(), m.clone(), c);
                }
                e
            })
            .collect();
        let mut with_one = elems;
        with_one.push(group.one());
        XSpace::span(group.field(), &with_one)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restriction_is_an_x_subcomodule(x in arb_level(g("Ga@p=3")), which in 0usize..3) {
        let ga = g("Ga@p=3");
        let m = fin(["regular(3)", "sum(natural, twist(1, natural))", "sym(3, natural)"][which], &ga);
        let r = restrict(&m, Level::Space(&x)).unwrap();
        prop_assert!(is_x_subcomodule(&m, &r.subspace, Level::Space(&x)));
        prop_assert!(r.comodule.validate().passed());
    }

    #[test]
    fn restriction_is_monotone(x in arb_level(g("Ga@p=2")), y in arb_level(g("Ga@p=2"))) {
        let ga = g("Ga@p=2");
        let m = fin("regular(3)", &ga);
        let mut elems = x.elements();
        elems.extend(y.elements());
        let big = XSpace::span(ga.field(), &elems);
        let small = restrict(&m, Level::Space(&x)).unwrap().subspace;
        let large = restrict(&m, Level::Space(&big)).unwrap().subspace;
        prop_assert!(large.contains_subspace(&small));
    }

    #[test]
    fn closure_lies_in_x_and_is_idempotent(x in arb_level(g("Ga@p=2"))) {
        let ga = g("Ga@p=2");
        let c = coalgebra_closure(&ga, &x).unwrap();
        prop_assert!(x.contains_space(&c.space));
        prop_assert!(is_coideal_in(&ga, &c.space, &c.space));
        prop_assert_eq!(coalgebra_closure(&ga, &c.space).unwrap().space, c.space.clone());
    }
}
