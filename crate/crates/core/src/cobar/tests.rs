use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::comod::{Built, Stream};
use crate::coordalg::{parse_group, Tensor};
use crate::filtfun::{restrict, Level, Source, XSpace};
use crate::linalg::SparseMatrix;

fn g(text: &str) -> Arc<Group> {
    Arc::new(parse_group(text).unwrap())
}

fn fin(text: &str, group: &Arc<Group>) -> Comodule {
    Built::parse(text, group).unwrap().finite().unwrap()
}

fn truncation(group: &Arc<Group>, d: u32) -> FiniteCoalgebra {
    FiniteCoalgebra::new(group.clone(), XSpace::canonical(group, d)).unwrap()
}

fn h_dims(c: &FiniteCoalgebra, m: &Comodule, n_max: usize) -> Vec<usize> {
    let x = cobar_complex(c, &c.express(m).unwrap(), n_max).unwrap();
    cohomology_dims(&x).dims
}

/// Primitive elements of `C`, counted by enumerating every element over F_p.
fn primitive_count(c: &FiniteCoalgebra) -> usize {
    let g = c.group();
    let f = g.field();
    let one = g.one();
    let k = c.dim();
    let p = f.p() as usize;
    (0..p.pow(k as u32))
        .filter(|&code| {
            let mut e = Element::zero();
            let mut rest = code;
            for b in c.basis() {
                e.add_scaled(f, b, (rest % p) as u32);
                rest /= p;
            }
            let mut rhs = Tensor::zero();
            rhs.add_product(f, &e, &one, 1);
            rhs.add_product(f, &one, &e, 1);
            g.coproduct(&e) == rhs
        })
        .count()
}

#[test]
fn unit_coalgebra_with_trivial_coefficients() {
    let ga = g("Ga@p=3");
    let c = FiniteCoalgebra::new(ga.clone(), XSpace::span(ga.field(), &[ga.one()])).unwrap();
    let h = h_dims(&c, &fin("triv", &ga), 3);
    assert_eq!(h[..3], [1, 0, 0]);
    // The top degree has no outgoing differential: an upper bound only.
    assert_eq!(h[3], 1);
}

#[test]
fn d1_of_the_primitive_vanishes() {
    let ga = g("Ga@p=2");
    let c = truncation(&ga, 1);
    let x = cobar_complex(&c, &c.express(&fin("triv", &ga)).unwrap(), 2).unwrap();
    let t = c.coordinates(&ga.generator(0)).unwrap();
    let tv: Vec<(usize, u32)> = t.into_iter().enumerate().filter(|e| e.1 != 0).collect();
    assert!(x.differentials[1].apply(&tv).is_empty());
}

#[test]
fn differentials_square_to_zero() {
    let cases = [
        ("Ga@p=2", 4, "triv"),
        ("Ga@p=3", 4, "natural"),
        ("Ga@p=5", 3, "sym(2, natural)"),
        ("Gm@p=2", 4, "sum(detpow(1), detpow(-2))"),
        ("GL:1@p=3", 3, "natural"),
        ("U:2@p=2", 2, "natural"),
        ("U:3@p=2", 1, "natural"),
        ("M:1@p=2", 4, "natural"),
        ("GL:2@p=2", 1, "natural"),
        ("SL:2@p=3", 1, "natural"),
        ("M:2@p=3", 1, "natural"),
    ];
    for (gt, d, et) in cases {
        let group = g(gt);
        let c = truncation(&group, d);
        let m = c.express(&fin(et, &group)).unwrap();
        let n_max = if c.dim() > 12 { 2 } else { 3 };
        let x = cobar_complex(&c, &m, n_max).unwrap();
        assert!(x.is_complex(), "{gt} d={d} {et}");
    }
}

#[test]
fn first_cohomology_counts_primitives() {
    let ga = g("Ga@p=2");
    let c = truncation(&ga, 5);
    let h = h_dims(&c, &fin("triv", &ga), 2);
    assert_eq!(h[0], 1);
    assert_eq!(h[1], 3);
    assert_eq!(2usize.pow(h[1] as u32), primitive_count(&c));
    for d in [1u32, 2, 4, 8] {
        let c = truncation(&ga, d);
        let h = h_dims(&c, &fin("triv", &ga), 2);
        assert_eq!(2usize.pow(h[1] as u32), primitive_count(&c), "d={d}");
        assert_eq!(h[1] as u32, d.ilog2() + 1);
    }
}

#[test]
fn zeroth_cohomology_is_the_fixed_point_space() {
    for (gt, d, et) in [
        ("Ga@p=2", 3, "sum(natural, twist(1, natural))"),
        ("GL:2@p=3", 1, "natural"),
        ("U:3@p=2", 1, "natural"),
        ("Gm@p=3", 2, "regular(2)"),
        ("Ga@p=3", 4, "regular(4)"),
    ] {
        let group = g(gt);
        let m = fin(et, &group);
        let c = truncation(&group, d.max(m.max_filtration_degree()));
        let unit = XSpace::span(group.field(), &[group.one()]);
        let fixed = restrict(&m, Level::Space(&unit)).unwrap().subspace.dim();
        assert_eq!(h_dims(&c, &m, 1)[0], fixed, "{gt} {et}");
    }
}

#[test]
fn inclusions_of_truncations_are_chain_maps() {
    let ga = g("Ga@p=3");
    let m = fin("natural", &ga);
    let mut prev_h1 = 0;
    for d in 1..5u32 {
        let (small, big) = (truncation(&ga, d), truncation(&ga, d + 1));
        let (ms, mb) = (small.express(&m).unwrap(), big.express(&m).unwrap());
        let (xs, xb) = (
            cobar_complex(&small, &ms, 2).unwrap(),
            cobar_complex(&big, &mb, 2).unwrap(),
        );
        let incl: Vec<Vec<(usize, u32)>> = small
            .basis()
            .iter()
            .map(|e| {
                big.coordinates(e)
                    .unwrap()
                    .into_iter()
                    .enumerate()
                    .filter(|x| x.1 != 0)
                    .collect()
            })
            .collect();
        // iota^n on M (x) C^n: identity on M, inclusion on each factor.
        let iota = |n: u32| -> SparseMatrix {
            let f = ga.field();
            let (ks, kb) = (small.dim(), big.dim());
            let rows = (0..m.dim() * ks.pow(n))
                .map(|idx| {
                    let mut digits = Vec::new();
                    let mut r = idx;
                    for _ in 0..n {
                        digits.push(r % ks);
                        r /= ks;
                    }
                    digits.reverse();
                    let mut acc: Vec<(usize, u32)> = vec![(r, 1)];
                    for a in digits {
                        let mut next = std::collections::BTreeMap::new();
                        for &(base, v) in &acc {
                            for &(b, w) in &incl[a] {
                                let e = next.entry(base * kb + b).or_insert(0);
                                *e = f.mul_add(*e, v, w);
                            }
                        }
                        acc = next.into_iter().filter(|e: &(usize, u32)| e.1 != 0).collect();
                    }
                    acc
                })
                .collect();
            SparseMatrix::new(f, m.dim() * kb.pow(n), rows)
        };
        for n in 0..2u32 {
            let lhs = xs.differentials[n as usize].mul(&iota(n + 1)).unwrap();
            let rhs = iota(n).mul(&xb.differentials[n as usize]).unwrap();
            assert_eq!(lhs, rhs, "d={d} n={n}");
        }
        let h1 =
            cohomology_dims(&cobar_complex(&small, &small.express(&fin("triv", &ga)).unwrap(), 2).unwrap()).dims[1];
        assert!(h1 >= prev_h1);
        prev_h1 = h1;
    }
}

/// Every linear `s : M (x) C -> M` checked for being a comodule retraction.
fn brute_force_splits(c: &FiniteCoalgebra, m: &CComodule) -> bool {
    let f = c.group().field();
    let (k, n) = (c.dim(), m.dim());
    let cells = k * n * n;
    let p = f.p() as usize;
    assert!(p.pow(cells as u32) <= 1 << 16);
    (0..p.pow(cells as u32)).any(|code| {
        let mut rest = code;
        let mut s = vec![vec![0u32; n]; n * k];
        for row in s.iter_mut() {
            for x in row.iter_mut() {
                *x = (rest % p) as u32;
                rest /= p;
            }
        }
        let at = |j: usize, a: usize| &s[j * k + a];
        let comodule_map = (0..n).all(|j| {
            (0..k).all(|a| {
                let mut lhs = vec![vec![0u32; k]; n];
                for &(b, cc, v) in c.structure(a) {
                    for l in 0..n {
                        lhs[l][cc] = f.mul_add(lhs[l][cc], v, at(j, b)[l]);
                    }
                }
                let mut rhs = vec![vec![0u32; k]; n];
                for (i, &x) in at(j, a).iter().enumerate() {
                    for &(l, cc, v) in &m.kappa[i] {
                        rhs[l][cc] = f.mul_add(rhs[l][cc], x, v);
                    }
                }
                lhs == rhs
            })
        });
        let retraction = (0..n).all(|i| {
            let mut out = vec![0u32; n];
            for &(j, a, v) in &m.kappa[i] {
                for l in 0..n {
                    out[l] = f.mul_add(out[l], v, at(j, a)[l]);
                }
            }
            (0..n).all(|l| out[l] == (l == i) as u32)
        });
        comodule_map && retraction
    })
}

#[test]
fn injectivity_examples() {
    let ga = g("Ga@p=2");
    let c1 = truncation(&ga, 1);
    assert!(injective_test(&c1, &c1.regular()).unwrap().injective);
    let triv = c1.express(&fin("triv", &ga)).unwrap();
    let r = injective_test(&c1, &triv).unwrap();
    assert!(!r.injective);
    assert!(!brute_force_splits(&c1, &triv));
    let unit = FiniteCoalgebra::new(ga.clone(), XSpace::span(ga.field(), &[ga.one()])).unwrap();
    let t0 = unit.express(&fin("triv", &ga)).unwrap();
    assert!(injective_test(&unit, &t0).unwrap().injective);
    assert!(brute_force_splits(&unit, &t0));
}

#[test]
fn splitting_system_agrees_with_brute_force() {
    let cases = [
        ("Ga@p=2", 1, "natural"),
        ("Ga@p=2", 1, "sum(triv, triv)"),
        ("Gm@p=2", 1, "detpow(1)"),
        ("Ga@p=3", 1, "triv"),
        ("Ga@p=2", 2, "triv"),
    ];
    for (gt, d, et) in cases {
        let group = g(gt);
        let c = truncation(&group, d);
        let m = c.express(&fin(et, &group)).unwrap();
        assert_eq!(
            injective_test(&c, &m).unwrap().injective,
            brute_force_splits(&c, &m),
            "{gt} d={d} {et}"
        );
    }
}

#[test]
fn coefficients_outside_the_coalgebra_are_named() {
    let ga = g("Ga@p=2");
    let c = truncation(&ga, 1);
    match c.express(&fin("twist(1, natural)", &ga)) {
        Err(Error::CoefficientOutside(msg)) => assert!(msg.contains("t^2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_subcoalgebras_are_rejected() {
    let ga = g("Ga@p=3");
    let x = XSpace::span(ga.field(), &[ga.one(), ga.pow(&ga.generator(0), 2)]);
    assert!(matches!(
        FiniteCoalgebra::new(ga.clone(), x),
        Err(Error::NotSubcoalgebra(_))
    ));
    let y = XSpace::span(ga.field(), &[ga.generator(0)]);
    assert!(matches!(FiniteCoalgebra::new(ga, y), Err(Error::NotSubcoalgebra(_))));
}

#[test]
fn resource_limits() {
    let gl = g("GL:2@p=2");
    let c = truncation(&gl, 1);
    let m = c.express(&fin("natural", &gl)).unwrap();
    assert!(matches!(cobar_complex(&c, &m, 4), Err(Error::Resource { .. })));
    let c3 = truncation(&gl, 4);
    let m3 = c3.express(&fin("natural", &gl)).unwrap();
    assert!(matches!(cobar_complex(&c3, &m3, 3), Err(Error::Resource { .. })));
    let big = XSpace::canonical(&g("GL:3@p=2"), 5);
    assert!(matches!(
        FiniteCoalgebra::new(g("GL:3@p=2"), big),
        Err(Error::Resource { .. })
    ));
}

#[test]
fn profiles_of_the_regular_stream_and_the_trivial_module() {
    let ga = g("Ga@p=2");
    let reg = Stream::new(ga.clone(), crate::comod::StreamKind::Regular).unwrap();
    let prof = injectivity_profile(Source::Stream(&reg), 4).unwrap();
    assert!(prof.iter().all(|r| r.injective));
    let triv = fin("triv", &ga);
    let prof = injectivity_profile(Source::Finite(&triv), 3).unwrap();
    assert!(prof[0].injective);
    assert!(prof[1..].iter().all(|r| !r.injective));
}

#[test]
fn translation_invariants_fail_somewhere() {
    let ga = g("Ga@p=2");
    let s = Stream::new(ga, crate::comod::StreamKind::TranslationInvariants).unwrap();
    let prof = injectivity_profile(Source::Stream(&s), 4).unwrap();
    assert!(prof.iter().any(|r| !r.injective));
}

#[test]
fn catalog_truncations_are_cofree_over_themselves() {
    for (gt, d) in [
        ("Ga@p=3", 4),
        ("Gm@p=2", 3),
        ("GL:1@p=5", 2),
        ("U:2@p=2", 2),
        ("GL:2@p=3", 1),
        ("SL:2@p=2", 1),
        ("M:2@p=2", 1),
    ] {
        let group = g(gt);
        let c = truncation(&group, d);
        assert!(injective_test(&c, &c.regular()).unwrap().injective, "{gt} d={d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn injectivity_respects_direct_sums(a in 0usize..4, b in 0usize..4, d in 1u32..3) {
        let ga = g("Ga@p=2");
        let c = truncation(&ga, d);
        let pool = ["triv", "natural", "regular(1)", "sum(triv, natural)"];
        let ma = c.express(&fin(pool[a], &ga)).unwrap();
        let mb = c.express(&fin(pool[b], &ga)).unwrap();
        let sum = injective_test(&c, &ma.direct_sum(&mb)).unwrap().injective;
        let each = injective_test(&c, &ma).unwrap().injective && injective_test(&c, &mb).unwrap().injective;
        prop_assert_eq!(sum, each);
    }
}
