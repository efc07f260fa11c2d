use gfrob_core::frobenius::{
    check_gfa, check_isomorphism, check_pre_gfm, decompose_z2_potential, gfa_from_cubic,
    subalgebras, wdvv_check,
};
use gfrob_core::reference::{phi_a3, phi_a5, phi_d3, phi_d4};
use gfrob_core::singularity::*;
use gfrob_core::{q, qi, MultiPoly, Rational};

fn poly(terms: &[(Rational, &[(&str, u32)])]) -> MultiPoly {
    terms
        .iter()
        .map(|(c, f)| MultiPoly::monomial(c.clone(), f))
        .sum()
}

fn t(i: usize) -> MultiPoly {
    MultiPoly::var(&t_name(i))
}

fn a(i: usize) -> MultiPoly {
    MultiPoly::var(&a_name(i))
}

#[test]
fn chart_for_a5_matches_table() {
    let c = flat_coordinates(5).unwrap();
    let h = q(1, 2);
    assert_eq!(c.a_of_t[4], -&t(4));
    assert_eq!(c.a_of_t[3], -&t(3));
    assert_eq!(c.a_of_t[2], &(-&t(2)) + &t(4).pow(2).scale(&q(3, 2)));
    assert_eq!(c.a_of_t[1], &(-&t(1)) + &(&t(3) * &t(4)).scale(&qi(2)));
    let a0 = poly(&[
        (qi(-1), &[("t_0", 1)]),
        (h.clone(), &[("t_3", 2)]),
        (qi(1), &[("t_2", 1), ("t_4", 1)]),
        (q(-1, 3), &[("t_4", 3)]),
    ]);
    assert_eq!(c.a_of_t[0], a0);
    assert_eq!(c.t_of_a[2], &(-&a(2)) + &a(4).pow(2).scale(&q(3, 2)));
    assert_eq!(c.t_of_a[1], &(-&a(1)) + &(&a(3) * &a(4)).scale(&qi(2)));
    let t0 = poly(&[
        (qi(-1), &[("a_0", 1)]),
        (h, &[("a_3", 2)]),
        (qi(1), &[("a_2", 1), ("a_4", 1)]),
        (q(-7, 6), &[("a_4", 3)]),
    ]);
    assert_eq!(c.t_of_a[0], t0);
    for n in [3, 4, 5, 6] {
        let c = flat_coordinates(n).unwrap();
        assert!(c.round_trip(), "n={n}");
        assert!(c.is_triangular(), "n={n}");
    }
}

/// The chart solves `F(z(w)) = w^{n+1}/(n+1)` up to `O(1/w)`: checked by
/// substituting a truncated Laurent series and reading off coefficients.
#[test]
fn chart_solves_the_laurent_equation() {
    for n in [2usize, 3, 4, 5] {
        let c = flat_coordinates(n).unwrap();
        // With u = 1/w and z = w(1 + S), S = Σ t_j u^{n+1-j}:
        // u^{n+1} F(z) = (1+S)^{n+1}/(n+1) + Σ a_i u^{n+1-i} (1+S)^i.
        let s: MultiPoly = (0..n)
            .map(|j| &t(j) * &MultiPoly::var("u").pow((n + 1 - j) as u32))
            .sum();
        let one_s = &MultiPoly::one() + &s;
        let mut g = one_s
            .pow(n as u32 + 1)
            .scale(&Rational::new(1.into(), (n as i64 + 1).into()));
        for i in 0..n {
            g = &g
                + &(&(&c.a_of_t[i] * &MultiPoly::var("u").pow((n + 1 - i) as u32))
                    * &one_s.pow(i as u32));
        }
        // Coefficients of u^0 .. u^{n+1} are w^{n+1} .. w^0.
        assert_eq!(
            g.coeff_of("u", 0).trim(),
            MultiPoly::constant(Rational::new(1.into(), (n as i64 + 1).into()))
        );
        for k in 1..=n + 1 {
            assert!(g.coeff_of("u", k as u32).trim().is_zero(), "n={n} u^{k}");
        }
    }
}

#[test]
fn potentials_match_published_values() {
    assert_eq!(potential_a(3).unwrap(), phi_a3());
    assert_eq!(potential_a(5).unwrap(), phi_a5());
    assert_eq!(potential_d(3).unwrap(), phi_d3());
    assert_eq!(potential_d(4).unwrap(), phi_d4());
}

#[test]
fn potential_degree_bound_and_restrictions() {
    for n in 2..=6 {
        assert!(potential_a(n).unwrap().total_degree().unwrap() <= n as u32 + 2);
    }
    for n in 3..=4 {
        let d = potential_d(n).unwrap();
        let b = potential_b(n - 1).unwrap();
        assert_eq!(d.set_zero(&[T_STAR]), b);
    }
}

#[test]
fn wdvv_and_unit_for_singularity_potentials() {
    for n in 3..=5 {
        let fm = frobenius_manifold_a(n).unwrap();
        assert!(fm.wdvv().unwrap().passed(), "A_{n}");
        for i in 0..n {
            for j in 0..n {
                let lhs = fm
                    .potential
                    .diff_many(&["t_0", &fm.coords[i], &fm.coords[j]]);
                assert_eq!(lhs, MultiPoly::constant(-fm.metric[(i, j)].clone()));
            }
        }
    }
    for n in 3..=4 {
        let fm = frobenius_manifold_d(n).unwrap();
        assert!(fm.wdvv().unwrap().passed(), "D_{n}");
        let k = fm.coords.len();
        for i in 0..k {
            for j in 0..k {
                let lhs = fm
                    .potential
                    .diff_many(&["t_0", &fm.coords[i], &fm.coords[j]]);
                assert_eq!(lhs, MultiPoly::constant(-fm.metric[(i, j)].clone()));
            }
        }
    }
}

#[test]
fn perturbed_a5_fails_wdvv() {
    let phi = &phi_a5() + &poly(&[(q(1, 6) - q(1, 5), &[("t_3", 4), ("t_4", 1)])]);
    let coords: Vec<String> = (0..5).map(t_name).collect();
    let rep = wdvv_check(&phi, &coords, &metric_a(5)).unwrap();
    assert!(!rep.passed());
    assert!(!rep.violations.is_empty());
}

#[test]
fn origin_algebra_is_the_milnor_ring() {
    // ∂_{t_i} ↦ -z^i at the origin: the product there is minus the ring product.
    for n in 2..=5 {
        let fm = frobenius_manifold_a(n).unwrap();
        let c = fm.algebra_at_origin().unwrap();
        let ring = milnor_ring(Kind::A, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want: Vec<Rational> = ring.structure[i][j].iter().map(|x| -x).collect();
                assert_eq!(c[i][j], want);
            }
        }
        assert_eq!(ring.metric(), fm.metric);
    }
}

#[test]
fn z2_algebras_pass_axioms() {
    for n in 3..=6 {
        let alg = z2_frobenius_algebra(n).unwrap();
        let r = check_gfa(&alg);
        assert!(r.passed(), "n={n}: {r:?}");
        let (he, hg) = subalgebras(&alg).unwrap();
        assert!(he.check().passed());
        assert!(hg.check().passed());
        let d = milnor_ring(Kind::D, n).unwrap();
        let t = invariants_to_d(n, &hg.basis);
        let iso = check_isomorphism(
            &hg.structure,
            &hg.metric,
            &hg.unit,
            &d.structure,
            &d.metric(),
            &d.unit(),
            &t,
        );
        assert!(iso.passed(), "n={n}: {iso:?}");
        let a = milnor_ring(Kind::A, 2 * n - 3).unwrap();
        let t = untwisted_to_a(n, &he.basis);
        let iso = check_isomorphism(
            &he.structure,
            &he.metric,
            &he.unit,
            &a.structure,
            &a.metric(),
            &a.unit(),
            &t,
        );
        assert!(iso.passed(), "n={n}: {iso:?}");
    }
}

#[test]
fn z2_algebra_with_wrong_sign_fails() {
    let mut alg = z2_frobenius_algebra(4).unwrap();
    let last = alg.dim() - 1;
    for x in alg.structure[last][last].iter_mut() {
        *x = -x.clone();
    }
    assert!(!check_gfa(&alg).passed());
}

#[test]
fn assembled_manifold_reproduces_the_algebra() {
    for n in 3..=4 {
        let z2 = z2_frobenius_manifold(n).unwrap();
        let rep = z2.check();
        assert!(rep.passed(), "n={n}: {rep:?}");
        let alg = z2_frobenius_algebra(n).unwrap();
        assert_eq!(z2.module, alg.module);
        assert_eq!(z2.manifold.metric, alg.metric);
        // Route 1: ∘ at the origin with ∂ ↦ -basis.
        assert_eq!(origin_algebra_in_ring_basis(&z2).unwrap(), alg.structure);
        // Route 2: the cubic braided form, scaled by 6 and sign-flipped, through gfa_from_cubic.
        let series = gfrob_core::braided::series_from_polynomial(
            &z2.module.dual(),
            &z2.manifold.coords,
            &z2.manifold.potential.homogeneous_part(3),
            3,
        )
        .unwrap();
        let y3 = series.part(3).scale(&qi(-6));
        let rebuilt = gfa_from_cubic(&z2.module, &z2.manifold.metric, &y3, &alg.unit).unwrap();
        assert_eq!(rebuilt, alg);
        // Y³_g = t_0 t_*² / 2.
        assert_eq!(
            z2.y_g.homogeneous_part(3),
            poly(&[(q(1, 2), &[("t_0", 1), ("t_*", 2)])])
        );
        let (yi, yv, yg) =
            decompose_z2_potential(&z2.module, &z2.manifold.coords, &z2.manifold.potential)
                .unwrap();
        assert_eq!(
            (yi, yv, yg),
            (z2.y_i.clone(), z2.y_v.clone(), z2.y_g.clone())
        );
        assert!(check_pre_gfm(
            &z2.module,
            &z2.manifold.metric,
            &z2.manifold.coords,
            &z2.manifold.potential
        )
        .passed());
    }
    let z2 = z2_frobenius_manifold(3).unwrap();
    assert_eq!(
        z2.y_g,
        poly(&[
            (q(1, 2), &[("t_0", 1), ("t_*", 2)]),
            (q(-1, 4), &[("t_2", 2), ("t_*", 2)])
        ])
    );
}

#[test]
fn perturbed_twisted_term_breaks_invariant_wdvv() {
    let z2 = z2_frobenius_manifold(3).unwrap();
    let bad = &z2.manifold.potential + &poly(&[(qi(1), &[("t_2", 1), ("t_*", 4)])]);
    let rep = check_pre_gfm(&z2.module, &z2.manifold.metric, &z2.manifold.coords, &bad);
    assert!(rep.is_pass("wdvv_untwisted"));
    assert!(!rep.is_pass("wdvv_invariant"));
}

#[test]
fn residue_pairing_is_invariant() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5 {
        let mut random = |deg: usize| -> MultiPoly {
            (0..=deg)
                .map(|k| {
                    let mut m = MultiPoly::monomial(qi(rng.gen_range(-3..=3)), &[("z", k as u32)]);
                    if rng.gen_bool(0.3) {
                        m = &m * &a(rng.gen_range(0..n));
                    }
                    m
                })
                .sum()
        };
        for _ in 0..5 {
            let (f, g, h) = (random(n), random(n - 1), random(2));
            let fg = jacobi_multiply(n, &f, &g).unwrap();
            let gh = jacobi_multiply(n, &g, &h).unwrap();
            assert_eq!(
                residue_pair(n, &fg, &h).unwrap(),
                residue_pair(n, &f, &gh).unwrap()
            );
            assert_eq!(
                jacobi_multiply(n, &fg, &h).unwrap(),
                jacobi_multiply(n, &f, &gh).unwrap()
            );
            assert_eq!(
                jacobi_multiply(n, &f, &g).unwrap(),
                jacobi_multiply(n, &g, &f).unwrap()
            );
            assert_eq!(jacobi_multiply(n, &fg, &MultiPoly::one()).unwrap(), fg);
        }
    }
}
