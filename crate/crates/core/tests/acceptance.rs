//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{modules, random_morphism, random_series, random_tensor, same_group_pairs};
use gfrob_core::braided::{
    br_basis, braidize, circ_product, count_monomials_avoiding, is_braided, pair,
    restrict_invariants, restrict_untwisted, series_from_polynomial,
};
use gfrob_core::frobenius::{
    check_gfa, check_isomorphism, check_pre_gfm, gfa_from_cubic, subalgebras, wdvv_check,
};
use gfrob_core::groupoid::components;
use gfrob_core::module::GradedModule;
use gfrob_core::reference;
use gfrob_core::singularity::*;
use gfrob_core::{q, qi, FiniteGroup, MultiPoly, Rational, Report};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn names(r: &Report) -> Vec<&str> {
    r.failures().map(|c| c.name.as_str()).collect()
}

fn flat_coordinates_match_tables() -> Outcome {
    let c3 = flat_coordinates(3).map_err(|e| e.to_string())?;
    ensure(c3.a_of_t == reference::a3_parameters(), || {
        format!("A_3 chart: {:?}", c3.a_of_t)
    })?;
    let c5 = flat_coordinates(5).map_err(|e| e.to_string())?;
    ensure(c5.a_of_t == reference::a5_parameters(), || {
        format!("A_5 chart: {:?}", c5.a_of_t)
    })?;
    ensure(c5.t_of_a == reference::a5_flat_coordinates(), || {
        format!("A_5 inverse: {:?}", c5.t_of_a)
    })?;
    ensure(c3.round_trip() && c5.round_trip(), || {
        "charts do not invert".into()
    })?;
    Ok("A_3 and A_5 charts and inverse equal the tables".into())
}

fn potentials_match() -> Outcome {
    let cases: [(&str, MultiPoly, MultiPoly); 4] = [
        (
            "A_3",
            potential_a(3).map_err(|e| e.to_string())?,
            reference::phi_a3(),
        ),
        (
            "A_5",
            potential_a(5).map_err(|e| e.to_string())?,
            reference::phi_a5(),
        ),
        (
            "D_3",
            potential_d(3).map_err(|e| e.to_string())?,
            reference::phi_d3(),
        ),
        (
            "D_4",
            potential_d(4).map_err(|e| e.to_string())?,
            reference::phi_d4(),
        ),
    ];
    let mut terms = 0;
    for (name, got, want) in &cases {
        ensure(got == want, || format!("{name}: got {got}"))?;
        terms += got.num_terms();
    }
    Ok(format!("4 potentials, {terms} monomials equal"))
}

fn wdvv_holds() -> Outcome {
    let mut checked = 0;
    for (n, phi) in [(3, reference::phi_a3()), (5, reference::phi_a5())] {
        let metric = milnor_ring(Kind::A, n).map_err(|e| e.to_string())?.metric();
        let coords: Vec<String> = (0..n).map(t_name).collect();
        let rep = wdvv_check(&phi, &coords, &metric).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || {
            format!("A_{n}: {:?}", rep.violations.first())
        })?;
        checked += rep.checked;
    }
    for (n, phi) in [(3, reference::phi_d3()), (4, reference::phi_d4())] {
        let rep = wdvv_check(&phi, &coords_d(n), &metric_d(n)).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || {
            format!("D_{n}: {:?}", rep.violations.first())
        })?;
        checked += rep.checked;
    }
    let bump = MultiPoly::monomial(q(1, 30), &[("t_3", 4), ("t_4", 1)]);
    let perturbed = &reference::phi_a5() + &bump;
    let coords: Vec<String> = (0..5).map(t_name).collect();
    let rep = wdvv_check(&perturbed, &coords, &metric_a(5)).map_err(|e| e.to_string())?;
    let witness = rep
        .violations
        .first()
        .ok_or("perturbed A_5 potential passed")?;
    Ok(format!(
        "{checked} index tuples clean; perturbed A_5 fails at {:?}",
        witness.indices
    ))
}

fn z2_algebras_check() -> Outcome {
    for n in 3..=6 {
        let alg = z2_frobenius_algebra(n).map_err(|e| e.to_string())?;
        let rep = check_gfa(&alg);
        ensure(rep.passed(), || format!("n={n}: {:?}", names(&rep)))?;
        let (_, hg) = subalgebras(&alg).map_err(|e| e.to_string())?;
        let d = milnor_ring(Kind::D, n).map_err(|e| e.to_string())?;
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
        ensure(iso.passed(), || {
            format!("n={n}: H^G vs D_{n}: {:?}", names(&iso))
        })?;
    }
    Ok("n=3..6 pass every axiom; H^G is the D_n ring with its pairing".into())
}

fn z2_manifolds_reproduce_algebras() -> Outcome {
    for n in 3..=4 {
        let z2 = z2_frobenius_manifold(n).map_err(|e| e.to_string())?;
        let m = &z2.manifold;
        let rep = check_pre_gfm(&z2.module, &m.metric, &m.coords, &m.potential);
        ensure(rep.passed(), || format!("n={n}: {:?}", names(&rep)))?;
        let alg = z2_frobenius_algebra(n).map_err(|e| e.to_string())?;
        let cubic = m.potential.homogeneous_part(3);
        let series = series_from_polynomial(&z2.module.dual(), &m.coords, &cubic, 3)
            .map_err(|e| e.to_string())?;
        // 6 × the cubic part is ∂³Φ; the sign accounts for ∂ ↦ −basis.
        let y3 = series.part(3).scale(&qi(-6));
        let rebuilt =
            gfa_from_cubic(&z2.module, &m.metric, &y3, &alg.unit).map_err(|e| e.to_string())?;
        ensure(rebuilt == alg, || format!("n={n}: rebuilt algebra differs"))?;
    }
    Ok("n=3,4 pass and rebuild the algebra exactly".into())
}

fn braidization_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = [0usize; 5];
    for (name, h) in modules() {
        let d = h.dual();
        for n in 1..=4 {
            for _ in 0..25 {
                let v = random_tensor(&mut rng, h.dim(), n, 4);
                let b = braidize(h, &v).map_err(|e| e.to_string())?;
                ensure(braidize(h, &b).map_err(|e| e.to_string())? == b, || {
                    format!("{name}: not idempotent")
                })?;
                ensure(is_braided(h, &b).map_err(|e| e.to_string())?, || {
                    format!("{name}: not braided")
                })?;
                for i in 1..n {
                    let moved = h.braid_act(i, &v, i % 2 == 0).map_err(|e| e.to_string())?;
                    ensure(braidize(h, &moved).map_err(|e| e.to_string())? == b, || {
                        format!("{name}: not orbit-constant")
                    })?;
                }
                counts[0] += 1;
                let x = random_tensor(&mut rng, h.dim(), n, 5);
                let lhs = pair(&braidize(&d, &x).map_err(|e| e.to_string())?, &v)
                    .map_err(|e| e.to_string())?;
                let rhs = pair(&x, &b).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("{name}: duality fails in degree {n}")
                })?;
                counts[1] += 1;
            }
        }
        for (a, b) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
            for _ in 0..3 {
                let v = random_tensor(&mut rng, h.dim(), a, 3);
                let w = random_tensor(&mut rng, h.dim(), b, 3);
                let flat = braidize(h, &v.tensor(&w)).map_err(|e| e.to_string())?;
                let left = braidize(h, &braidize(h, &v).map_err(|e| e.to_string())?.tensor(&w))
                    .map_err(|e| e.to_string())?;
                let right = braidize(h, &v.tensor(&braidize(h, &w).map_err(|e| e.to_string())?))
                    .map_err(|e| e.to_string())?;
                ensure(left == flat && right == flat, || {
                    format!("{name}: not associative for ({a},{b})")
                })?;
                counts[2] += 1;
            }
        }
    }
    for (i, j) in same_group_pairs() {
        let (src, tgt) = (&modules()[i].1, &modules()[j].1);
        for n in 1..=4 {
            let phi = random_morphism(&mut rng, src, tgt);
            let v = random_tensor(&mut rng, src.dim(), n, 4);
            let lhs = braidize(tgt, &phi.push_tensor(&v)).map_err(|e| e.to_string())?;
            let rhs = phi.push_tensor(&braidize(src, &v).map_err(|e| e.to_string())?);
            ensure(lhs == rhs, || {
                format!("{} -> {}: not functorial", modules()[i].0, modules()[j].0)
            })?;
            counts[3] += 1;
        }
    }
    let mut groups: Vec<FiniteGroup> = Vec::new();
    for (_, h) in modules() {
        if !groups.contains(h.group()) {
            groups.push(h.group().clone());
        }
    }
    for g in &groups {
        for n in 1..=4 {
            for c in components(g, n).map_err(|e| e.to_string())? {
                ensure(c.n_c == c.size() * c.m_c, || {
                    format!("|G|={} n={n}: n_C != |C| m_C", g.order())
                })?;
                counts[4] += 1;
            }
        }
    }
    ensure(counts[1] >= 1000, || {
        format!("only {} duality pairs", counts[1])
    })?;
    Ok(format!(
        "{} projections, {} duality pairs, {} associativity, {} functoriality, {} components over {} groups",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4],
        groups.len()
    ))
}

fn z2_presentation() -> Outcome {
    let mut lines = Vec::new();
    for n in 3..=4 {
        let h = z2_module(n).map_err(|e| e.to_string())?.dual();
        let g = 1;
        let variant: BTreeSet<usize> = (0..h.dim())
            .filter(|&i| h.degree(i) == 0 && h.rho(g)[(i, i)] == -Rational::one())
            .collect();
        let twisted: BTreeSet<usize> = h.indices_of_degree(g).into_iter().collect();
        let mut dims = Vec::new();
        for k in 0..=4 {
            let got = br_basis(&h, k).map_err(|e| e.to_string())?.len();
            let want = count_monomials_avoiding(h.dim(), k, &variant, &twisted);
            ensure(got == want, || {
                format!("n={n} k={k}: br_basis {got}, monomials {want}")
            })?;
            dims.push(got);
        }
        lines.push(format!("n={n} dims {dims:?}"));
    }
    Ok(lines.join(", "))
}

fn symmetric(
    h: &GradedModule,
    parts: &[gfrob_core::module::TensorElement],
) -> Result<bool, String> {
    for p in parts {
        if !is_braided(h, p).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn restrictions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut trials = 0;
    for (name, h) in modules() {
        let d = h.dual();
        for truncation in 1..=4 {
            for _ in 0..2 {
                let x = random_series(&mut rng, &d, truncation);
                let y = random_series(&mut rng, &d, truncation);
                let xy = circ_product(&x, &y).map_err(|e| e.to_string())?;
                let rx = restrict_untwisted(&x).map_err(|e| e.to_string())?.series;
                let ry = restrict_untwisted(&y).map_err(|e| e.to_string())?.series;
                let rxy = restrict_untwisted(&xy).map_err(|e| e.to_string())?.series;
                let prod = circ_product(&rx, &ry).map_err(|e| e.to_string())?;
                ensure(rxy == prod, || {
                    format!("{name} N={truncation}: restriction not multiplicative")
                })?;
                for s in [&x, &xy] {
                    let inv = restrict_invariants(s).map_err(|e| e.to_string())?;
                    let sym =
                        symmetric(&GradedModule::trivial(inv.basis.len()), inv.series.parts())?;
                    ensure(sym, || {
                        format!("{name} N={truncation}: invariant restriction not symmetric")
                    })?;
                }
                trials += 1;
            }
        }
    }
    Ok(format!("{trials} random series pairs, 0 failures"))
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            name: "flat coordinates",
            limit: Some(Duration::from_secs(1)),
            run: flat_coordinates_match_tables,
        },
        Criterion {
            name: "potentials",
            limit: Some(Duration::from_secs(10)),
            run: potentials_match,
        },
        Criterion {
            name: "wdvv",
            limit: Some(Duration::from_secs(30)),
            run: wdvv_holds,
        },
        Criterion {
            name: "z2 frobenius algebra",
            limit: Some(Duration::from_secs(5)),
            run: z2_algebras_check,
        },
        Criterion {
            name: "z2 manifold round trip",
            limit: None,
            run: z2_manifolds_reproduce_algebras,
        },
        Criterion {
            name: "braidization properties",
            limit: None,
            run: braidization_suite,
        },
        Criterion {
            name: "z2 braided ring presentation",
            limit: None,
            run: z2_presentation,
        },
        Criterion {
            name: "restriction morphisms",
            limit: None,
            run: restrictions,
        },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {} {}: PASS ({elapsed:.2?}) {detail}",
                k + 1,
                c.name
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {} {}: FAIL ({elapsed:.2?}) {why}", k + 1, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
