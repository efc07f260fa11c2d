//! Built-in regression fixtures: closed forms and small examples with known
//! answers, each recorded as a named check.

use std::collections::BTreeSet;

use gfrob_core::braided::{br_basis, braidize, is_braided, series_from_polynomial};
use gfrob_core::frobenius::{
    check_gfa, check_isomorphism, check_metric, decompose_z2_potential, gfa_from_cubic,
    sector_restrictions, subalgebras, wdvv_check,
};
use gfrob_core::groupoid::{components, g_degree, gen_arrow};
use gfrob_core::module::TensorElement;
use gfrob_core::reference;
use gfrob_core::singularity::*;
use gfrob_core::{cyclic_group, q, qi, symmetric_group, GTuple, MultiPoly, Report};

type Step = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Step {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: gfrob_core::Error) -> String {
    e.to_string()
}

fn record(r: &mut Report, name: &str, f: impl FnOnce() -> Step) {
    match f() {
        Ok(()) => r.pass(name),
        Err(w) => r.fail(name, w),
    }
}

fn t(i: usize) -> MultiPoly {
    MultiPoly::var(&t_name(i))
}

pub fn run() -> Report {
    let mut r = Report::new();

    record(&mut r, "cyclic_group_2", || {
        let g = cyclic_group(2).map_err(err)?;
        ensure(
            g.order() == 2 && g.is_abelian() && g.identity() == 0,
            || "Z/2Z is not (e, g)".into(),
        )
    });

    record(&mut r, "generator_arrows_z2", || {
        let g = cyclic_group(2).map_err(err)?;
        let a = gen_arrow(&g, 1, &GTuple(vec![0, 1])).map_err(err)?;
        ensure(a.gpart() == [0, 0] && a.perm() == [1, 0], || {
            format!("b_1 at (e,g): {a:?}")
        })?;
        let b = gen_arrow(&g, 1, &GTuple(vec![1, 0])).map_err(err)?;
        ensure(b.gpart() == [0, 1] && b.perm() == [1, 0], || {
            format!("b_1 at (g,e): {b:?}")
        })
    });

    record(&mut r, "component_counts", || {
        for g in [
            cyclic_group(2).map_err(err)?,
            cyclic_group(3).map_err(err)?,
            symmetric_group(3).map_err(err)?,
        ] {
            for n in 1..=3 {
                for c in components(&g, n).map_err(err)? {
                    ensure(c.n_c == c.size() * c.m_c, || {
                        format!("|G|={} n={n}: n_C != |C| m_C", g.order())
                    })?;
                    ensure(
                        c.members.iter().all(|m| g_degree(&g, m) == c.g_degree),
                        || format!("|G|={} n={n}: G-degree not constant", g.order()),
                    )?;
                }
            }
        }
        Ok(())
    });

    record(&mut r, "diagonal_action_commutes_with_braiding", || {
        let h = z2_module(3).map_err(err)?;
        for idx in [vec![0, 1, 3], vec![3, 1, 1], vec![2, 3, 0]] {
            let v = TensorElement::basis(idx);
            for i in 1..3 {
                let lhs = h
                    .diagonal_act(1, &h.braid_act(i, &v, false).map_err(err)?)
                    .map_err(err)?;
                let rhs = h
                    .braid_act(i, &h.diagonal_act(1, &v).map_err(err)?, false)
                    .map_err(err)?;
                ensure(lhs == rhs, || format!("b_{i} on {v:?}"))?;
            }
        }
        Ok(())
    });

    record(&mut r, "z2_module_sectors", || {
        for n in 3..=6 {
            let h = z2_module(n).map_err(err)?;
            ensure(h.report().is_valid() && h.is_self_invariant(), || {
                format!("n={n}: invalid module")
            })?;
            let d = h.z2_decompose().map_err(err)?;
            ensure(d.invariant.len() + d.twisted.len() == n, || {
                format!("n={n}: dim H^G != n")
            })?;
            ensure(d.variant.len() == n - 2, || {
                format!("n={n}: dim H_v != n-2")
            })?;
        }
        Ok(())
    });

    record(&mut r, "braidize_fixes_braided_tensors", || {
        let h = z2_module(4).map_err(err)?;
        let b = braidize(&h, &TensorElement::basis(vec![1, 5, 5])).map_err(err)?;
        ensure(is_braided(&h, &b).map_err(err)?, || {
            "projection is not braided".into()
        })?;
        ensure(braidize(&h, &b).map_err(err)? == b, || {
            "braided input moved".into()
        })
    });

    record(&mut r, "z2_forms_avoid_mixed_sectors", || {
        let h = z2_module(3).map_err(err)?.dual();
        let (v, g): (BTreeSet<usize>, BTreeSet<usize>) = ([2].into(), [3].into());
        for f in br_basis(&h, 2).map_err(err)? {
            for idx in f.tensor.terms().keys() {
                let mixed = idx.iter().any(|i| v.contains(i)) && idx.iter().any(|i| g.contains(i));
                ensure(!mixed, || format!("basis form uses {idx:?}"))?;
            }
        }
        Ok(())
    });

    record(&mut r, "z2_metric", || {
        for n in 3..=6 {
            let alg = z2_frobenius_algebra(n).map_err(err)?;
            let rep = check_metric(&alg.module, &alg.metric);
            ensure(rep.passed(), || {
                format!("n={n}: {:?}", rep.failures().next())
            })?;
            let last = alg.dim() - 1;
            ensure(alg.metric[(last, last)] == qi(-1), || {
                format!("n={n}: η(y,y) != -1")
            })?;
        }
        Ok(())
    });

    record(&mut r, "a3_third_derivative", || {
        let d = reference::phi_a3().diff_many(&["t_0", "t_0", "t_2"]);
        ensure(d == MultiPoly::constant(qi(-1)), || format!("got {d}"))
    });

    record(&mut r, "wdvv_a3", || {
        let rep = wdvv_check(
            &reference::phi_a3(),
            &(0..3).map(t_name).collect::<Vec<_>>(),
            &metric_a(3),
        )
        .map_err(err)?;
        ensure(rep.passed(), || format!("{:?}", rep.violations.first()))
    });

    record(&mut r, "z2_algebra_axioms", || {
        for n in 3..=6 {
            let rep = check_gfa(&z2_frobenius_algebra(n).map_err(err)?);
            ensure(rep.passed(), || {
                format!("n={n}: {:?}", rep.failures().next())
            })?;
        }
        Ok(())
    });

    record(&mut r, "z2_algebra_n3", || {
        let alg = z2_frobenius_algebra(3).map_err(err)?;
        ensure(alg.dim() == 4, || format!("dim {}", alg.dim()))?;
        // Basis 1, z², z, y: y·y = -z².
        ensure(
            alg.basis_product(3, 3) == vec![qi(0), qi(-1), qi(0), qi(0)],
            || format!("y·y = {:?}", alg.basis_product(3, 3)),
        )
    });

    record(&mut r, "z2_sector_isomorphisms", || {
        for n in 3..=6 {
            let alg = z2_frobenius_algebra(n).map_err(err)?;
            let (he, hg) = subalgebras(&alg).map_err(err)?;
            let d = milnor_ring(Kind::D, n).map_err(err)?;
            let iso = check_isomorphism(
                &hg.structure,
                &hg.metric,
                &hg.unit,
                &d.structure,
                &d.metric(),
                &d.unit(),
                &invariants_to_d(n, &hg.basis),
            );
            ensure(iso.passed(), || {
                format!("n={n}: H^G vs D_{n}: {:?}", iso.failures().next())
            })?;
            let a = milnor_ring(Kind::A, 2 * n - 3).map_err(err)?;
            let iso = check_isomorphism(
                &he.structure,
                &he.metric,
                &he.unit,
                &a.structure,
                &a.metric(),
                &a.unit(),
                &untwisted_to_a(n, &he.basis),
            );
            ensure(iso.passed(), || {
                format!("n={n}: H_e vs A_{}: {:?}", 2 * n - 3, iso.failures().next())
            })?;
        }
        Ok(())
    });

    record(&mut r, "milnor_rings", || {
        let a3 = milnor_ring(Kind::A, 3).map_err(err)?;
        ensure(a3.counit == vec![qi(0), qi(0), qi(1)], || {
            format!("A_3 counit {:?}", a3.counit)
        })?;
        let d4 = milnor_ring(Kind::D, 4).map_err(err)?;
        // Basis 1, x, x², y.
        ensure(
            d4.structure[3][3] == vec![qi(0), qi(0), qi(-1), qi(0)],
            || "D_4: y·y != -x²".into(),
        )?;
        ensure(d4.structure[1][3] == vec![qi(0); 4], || {
            "D_4: x·y != 0".into()
        })
    });

    record(&mut r, "flat_metric_is_constant", || {
        for n in 3..=4 {
            let chart = flat_coordinates(n).map_err(err)?;
            for row in flat_metric_polynomials(&chart) {
                ensure(row.iter().all(MultiPoly::is_constant), || {
                    format!("A_{n}: metric depends on t")
                })?;
            }
        }
        Ok(())
    });

    record(&mut r, "flat_coordinate_tables", || {
        let c3 = flat_coordinates(3).map_err(err)?;
        ensure(c3.a_of_t == reference::a3_parameters(), || {
            format!("A_3: {:?}", c3.a_of_t)
        })?;
        let c5 = flat_coordinates(5).map_err(err)?;
        ensure(c5.a_of_t == reference::a5_parameters(), || {
            format!("A_5: {:?}", c5.a_of_t)
        })?;
        ensure(c5.t_of_a == reference::a5_flat_coordinates(), || {
            format!("A_5 inverse: {:?}", c5.t_of_a)
        })
    });

    record(&mut r, "potentials", || {
        let cases = [
            ("A_3", potential_a(3), reference::phi_a3()),
            ("A_5", potential_a(5), reference::phi_a5()),
            ("D_3", potential_d(3), reference::phi_d3()),
            ("D_4", potential_d(4), reference::phi_d4()),
        ];
        for (name, got, want) in cases {
            let got = got.map_err(err)?;
            ensure(got == want, || format!("{name}: {got}"))?;
        }
        for n in 2..=6 {
            let d = potential_a(n).map_err(err)?.total_degree().unwrap_or(0);
            ensure(d <= n as u32 + 2, || format!("A_{n}: degree {d}"))?;
        }
        Ok(())
    });

    record(&mut r, "z2_manifolds", || {
        for n in 3..=4 {
            let z2 = z2_frobenius_manifold(n).map_err(err)?;
            let m = &z2.manifold;
            let rep = z2.check();
            ensure(rep.passed(), || {
                format!("n={n}: {:?}", rep.failures().next())
            })?;
            let (fe, fg) =
                sector_restrictions(&z2.module, &m.metric, &m.coords, &m.potential).map_err(err)?;
            ensure(fe.potential == potential_a(2 * n - 3).map_err(err)?, || {
                format!("n={n}: untwisted part {}", fe.potential)
            })?;
            ensure(fg.potential == potential_d(n).map_err(err)?, || {
                format!("n={n}: invariant part {}", fg.potential)
            })?;
            let parts = decompose_z2_potential(&z2.module, &m.coords, &m.potential).map_err(err)?;
            ensure(
                parts == (z2.y_i.clone(), z2.y_v.clone(), z2.y_g.clone()),
                || format!("n={n}: decomposition differs"),
            )?;
        }
        let z2 = z2_frobenius_manifold(3).map_err(err)?;
        let want = &(&t(0) * &MultiPoly::var(T_STAR).pow(2)).scale(&q(1, 2))
            - &(&t(2).pow(2) * &MultiPoly::var(T_STAR).pow(2)).scale(&q(1, 4));
        ensure(z2.y_g == want, || format!("n=3 twisted part {}", z2.y_g))
    });

    record(&mut r, "twisted_cubic_term", || {
        for n in 3..=6 {
            let z2 = z2_frobenius_manifold(n).map_err(err)?;
            ensure(
                z2.y_g.homogeneous_part(3) == reference::twisted_cubic(),
                || format!("n={n}: {}", z2.y_g.homogeneous_part(3)),
            )?;
        }
        Ok(())
    });

    record(&mut r, "cubic_terms_rebuild_algebra", || {
        for n in 3..=4 {
            let z2 = z2_frobenius_manifold(n).map_err(err)?;
            let m = &z2.manifold;
            let alg = z2_frobenius_algebra(n).map_err(err)?;
            let series = series_from_polynomial(
                &z2.module.dual(),
                &m.coords,
                &m.potential.homogeneous_part(3),
                3,
            )
            .map_err(err)?;
            let y3 = series.part(3).scale(&qi(-6));
            let rebuilt = gfa_from_cubic(&z2.module, &m.metric, &y3, &alg.unit).map_err(err)?;
            ensure(rebuilt == alg, || format!("n={n}: rebuilt algebra differs"))?;
        }
        Ok(())
    });

    r
}
