mod common;

use std::collections::BTreeMap;

use common::{modules, random_morphism, random_series, random_tensor, same_group_pairs};
use gfrob_core::braided::{
    braidize, circ_product, is_braided, pair, pullback, restrict_invariants, restrict_untwisted,
};
use gfrob_core::groupoid::{
    all_tuples, arrows_from, braid_gen_action, components, compose_arrows, diagonal_tuple,
    g_degree, gen_arrow, hom, reflect_arrow, reflect_tuple,
};
use gfrob_core::module::TensorElement;
use gfrob_core::{cyclic_group, qi, symmetric_group, FiniteGroup, MultiPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        cyclic_group(2).unwrap(),
        cyclic_group(3).unwrap(),
        symmetric_group(3).unwrap(),
    ]
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    let term = (-4i64..=4, 0u32..3, 0u32..3, 0u32..2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        ts.into_iter()
            .map(|(c, a, b, d)| MultiPoly::monomial(qi(c), &[("x", a), ("y", b), ("z", d)]))
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, MultiPoly::zero());
        prop_assert_eq!((&p * &q).diff("x"), &(&p.diff("x") * &q) + &(&p * &q.diff("x")));
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), &q + &MultiPoly::var("y"));
        prop_assert_eq!((&p * &r).substitute(&map), &p.substitute(&map) * &r.substitute(&map));
    }

    #[test]
    fn braidization_axioms(m in 0usize..11, n in 1usize..=4, seed in any::<u64>()) {
        let h = &modules()[m].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_tensor(&mut rng, h.dim(), n, 4);
        let b = braidize(h, &v).unwrap();
        prop_assert!(is_braided(h, &b).unwrap());
        prop_assert_eq!(&braidize(h, &b).unwrap(), &b);
        for i in 1..n {
            for inverse in [false, true] {
                let moved = h.braid_act(i, &v, inverse).unwrap();
                prop_assert_eq!(&braidize(h, &moved).unwrap(), &b);
            }
        }
        // Braided input is fixed.
        prop_assert_eq!(braidize(h, &b).unwrap(), b);
    }

    #[test]
    fn braidization_is_associative(m in 0usize..11, sizes in (1usize..=2, 1usize..=2, 0usize..=1), seed in any::<u64>()) {
        let h = &modules()[m].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, mut c) = sizes;
        if a + b + c > 4 {
            c = 0;
        }
        let v = random_tensor(&mut rng, h.dim(), a, 2);
        let w = random_tensor(&mut rng, h.dim(), b, 2);
        let z = random_tensor(&mut rng, h.dim(), c, 2);
        let left = braidize(h, &braidize(h, &v.tensor(&w)).unwrap().tensor(&z)).unwrap();
        let right = braidize(h, &v.tensor(&braidize(h, &w.tensor(&z)).unwrap())).unwrap();
        let flat = braidize(h, &v.tensor(&w).tensor(&z)).unwrap();
        prop_assert_eq!(&left, &flat);
        prop_assert_eq!(&right, &flat);
    }

    #[test]
    fn braidization_is_functorial(k in 0usize..64, n in 1usize..=3, seed in any::<u64>()) {
        let pairs = same_group_pairs();
        let (i, j) = pairs[k % pairs.len()];
        let (src, tgt) = (&modules()[i].1, &modules()[j].1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_morphism(&mut rng, src, tgt);
        let v = random_tensor(&mut rng, src.dim(), n, 4);
        prop_assert_eq!(braidize(tgt, &phi.push_tensor(&v)).unwrap(), phi.push_tensor(&braidize(src, &v).unwrap()));
        // Dually, pulling back a braided form gives a braided form.
        let x = braidize(&tgt.dual(), &random_tensor(&mut rng, tgt.dim(), n, 4)).unwrap();
        prop_assert!(is_braided(&src.dual(), &phi.pull_tensor(&x)).unwrap());
    }

    #[test]
    fn braidization_duality(m in 0usize..11, n in 1usize..=4, seed in any::<u64>()) {
        let h = &modules()[m].1;
        let d = h.dual();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_tensor(&mut rng, h.dim(), n, 5);
        let v = random_tensor(&mut rng, h.dim(), n, 5);
        prop_assert_eq!(pair(&braidize(&d, &x).unwrap(), &v).unwrap(), pair(&x, &braidize(h, &v).unwrap()).unwrap());
    }

    #[test]
    fn generator_reflection_identity(m in 0usize..11, n in 2usize..=4, seed in any::<u64>()) {
        let h = &modules()[m].1;
        let d = h.dual();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_tensor(&mut rng, h.dim(), n, 5);
        let v = random_tensor(&mut rng, h.dim(), n, 5);
        for i in 1..n {
            let lhs = pair(&d.braid_act(i, &x, false).unwrap(), &v).unwrap();
            let rhs = pair(&x, &h.braid_act(n - i, &v, false).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn braid_relations_on_tensors(m in 0usize..11, n in 2usize..=4, seed in any::<u64>()) {
        let h = &modules()[m].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_tensor(&mut rng, h.dim(), n, 4);
        let act = |i: usize, t: &TensorElement| h.braid_act(i, t, false).unwrap();
        for i in 1..n {
            prop_assert_eq!(&h.braid_act(i, &act(i, &v), true).unwrap(), &v);
            if i + 1 < n {
                prop_assert_eq!(act(i, &act(i + 1, &act(i, &v))), act(i + 1, &act(i, &act(i + 1, &v))));
            }
            for j in i + 2..n {
                prop_assert_eq!(act(i, &act(j, &v)), act(j, &act(i, &v)));
            }
            for el in h.group().elements() {
                prop_assert_eq!(h.diagonal_act(el, &act(i, &v)).unwrap(), act(i, &h.diagonal_act(el, &v).unwrap()));
            }
        }
    }

    #[test]
    fn arrows_act_like_generator_words(m in 0usize..11, n in 2usize..=4, word in prop::collection::vec((1usize..4, any::<bool>()), 1..6), seed in any::<u64>()) {
        let h = &modules()[m].1;
        let g = h.group();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..h.dim())).collect();
        let mut v = TensorElement::basis(idx.clone());
        let mut t = h.tuple_degree(&idx);
        let mut arrow = gfrob_core::GroupoidArrow::identity(g, &t);
        for (i, inverse) in word {
            let i = 1 + (i - 1) % (n - 1);
            let step = if inverse {
                gfrob_core::groupoid::gen_arrow_inverse(g, i, &t).unwrap()
            } else {
                gen_arrow(g, i, &t).unwrap()
            };
            arrow = compose_arrows(g, &step, &arrow).unwrap();
            v = h.braid_act(i, &v, inverse).unwrap();
            t = braid_gen_action(g, i, &t, inverse).unwrap();
        }
        prop_assert_eq!(arrow.target(g), t);
        prop_assert_eq!(h.arrow_act(&arrow, &TensorElement::basis(idx)).unwrap(), v);
    }

    #[test]
    fn series_products(m in 0usize..11, seed in any::<u64>()) {
        let h = &modules()[m].1;
        let d = h.dual();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_series(&mut rng, &d, 3);
        let y = random_series(&mut rng, &d, 3);
        let xy = circ_product(&x, &y).unwrap();
        let rx = restrict_untwisted(&x).unwrap().series;
        let ry = restrict_untwisted(&y).unwrap().series;
        prop_assert_eq!(restrict_untwisted(&xy).unwrap().series, circ_product(&rx, &ry).unwrap());
        prop_assert!(restrict_invariants(&xy).is_ok());
        let one = gfrob_core::braided::BraidedSeries::one(d.clone(), 3);
        prop_assert_eq!(circ_product(&x, &one).unwrap(), x);
    }
}

/// Braided-commutativity of ∘ in the form `B(v ⊗ w) = B(Φ(v ⊗ w))`, with Φ
/// moving the block `w` across `v` by generators.
#[test]
fn braided_commutativity_of_juxtaposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, h) in modules() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let v = random_tensor(&mut rng, h.dim(), a, 3);
            let w = random_tensor(&mut rng, h.dim(), b, 3);
            let mut t = v.tensor(&w);
            for k in 0..b {
                for i in (k + 1..=a + k).rev() {
                    t = h.braid_act(i, &t, false).unwrap();
                }
            }
            assert_eq!(
                braidize(h, &t).unwrap(),
                braidize(h, &v.tensor(&w)).unwrap()
            );
        }
    }
}

#[test]
fn pullback_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (i, j) in same_group_pairs() {
        let (src, tgt) = (&modules()[i].1, &modules()[j].1);
        let phi = random_morphism(&mut rng, src, tgt);
        let x = random_series(&mut rng, &tgt.dual(), 3);
        let y = random_series(&mut rng, &tgt.dual(), 3);
        let lhs = pullback(&phi, &circ_product(&x, &y).unwrap()).unwrap();
        let rhs = circ_product(&pullback(&phi, &x).unwrap(), &pullback(&phi, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn braid_relations_on_tuples() {
    for g in groups() {
        for n in 2..=4 {
            for t in all_tuples(g.order(), n) {
                let act = |i, t: &_| braid_gen_action(&g, i, t, false).unwrap();
                for i in 1..n {
                    assert_eq!(braid_gen_action(&g, i, &act(i, &t), true).unwrap(), t);
                    if i + 1 < n {
                        assert_eq!(
                            act(i, &act(i + 1, &act(i, &t))),
                            act(i + 1, &act(i, &act(i + 1, &t)))
                        );
                    }
                    for j in i + 2..n {
                        assert_eq!(act(i, &act(j, &t)), act(j, &act(i, &t)));
                    }
                    for el in g.elements() {
                        assert_eq!(
                            diagonal_tuple(&g, el, &act(i, &t)),
                            act(i, &diagonal_tuple(&g, el, &t))
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn component_counting() {
    for g in groups() {
        for n in 1..=4 {
            let comps = components(&g, n).unwrap();
            let total: usize = comps.iter().map(|c| c.size()).sum();
            assert_eq!(total, g.order().pow(n as u32));
            for c in &comps {
                assert_eq!(c.n_c, c.size() * c.m_c);
                assert!(c.hom_counts.values().all(|&k| k == c.m_c));
                assert!(c.members.iter().all(|m| g_degree(&g, m) == c.g_degree));
                for el in g.elements() {
                    let moved = gfrob_core::groupoid::diagonal_g_action(&g, el, c).unwrap();
                    assert_eq!(moved.g_degree, g.conj(el, c.g_degree));
                }
            }
        }
    }
}

#[test]
fn arrows_form_a_groupoid_and_reflection_is_a_bijection() {
    for g in groups() {
        for n in 2..=3 {
            for t in all_tuples(g.order(), n) {
                let arrows = arrows_from(&g, &t).unwrap();
                for a in &arrows {
                    let back = compose_arrows(&g, &a.inverse(&g), a).unwrap();
                    assert!(back.is_identity(&g));
                    let r = reflect_arrow(&g, a);
                    assert_eq!(r.source(), &reflect_tuple(&g, &a.target(&g)));
                    assert_eq!(r.target(&g), reflect_tuple(&g, &t));
                    assert_eq!(&reflect_arrow(&g, &r), a);
                }
                // |hom(γ, γ')| = |hom(r(γ'), r(γ))|.
                for a in arrows.iter().step_by(3) {
                    let target = a.target(&g);
                    let forward = hom(&g, &t, &target).unwrap().len();
                    let backward = hom(&g, &reflect_tuple(&g, &target), &reflect_tuple(&g, &t))
                        .unwrap()
                        .len();
                    assert_eq!(forward, backward);
                }
            }
        }
    }
}
