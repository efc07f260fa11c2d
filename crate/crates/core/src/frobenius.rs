//! Metrics, WDVV, G-Frobenius algebras and (pre-)G-Frobenius manifolds.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::braided::{
    is_braided, pair, restrict_invariants, restrict_untwisted, series_from_polynomial,
    series_to_polynomial,
};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::groupoid::g_degree;
use crate::matrix::{bilinear, Matrix};
use crate::module::{GradedModule, TensorElement};
use crate::poly::MultiPoly;
use crate::rational::{to_short, Rational};
use crate::report::Report;

/// Structure constants `c[a][b][l]`: `e_a · e_b = Σ_l c[a][b][l] e_l`.
pub type Structure = Vec<Vec<Vec<Rational>>>;

fn fmt_vec(v: &[Rational]) -> String {
    format!(
        "[{}]",
        v.iter().map(to_short).collect::<Vec<_>>().join(", ")
    )
}

/// `B^T η B` for the columns `B` of `basis`.
pub fn restrict_metric(eta: &Matrix, basis: &[Vec<Rational>]) -> Matrix {
    let b = Matrix::from_columns(eta.rows(), basis);
    b.transpose().mul(eta).mul(&b)
}

/// Symmetry, G-invariance, grading, blockwise nondegeneracy, and
/// nondegeneracy of the restrictions to `H_e` and `H^G`.
pub fn check_metric(h: &GradedModule, eta: &Matrix) -> Report {
    let mut r = Report::new();
    let n = h.dim();
    if eta.rows() != n || eta.cols() != n {
        r.fail(
            "shape",
            format!("{}x{} matrix for dimension {n}", eta.rows(), eta.cols()),
        );
        return r;
    }
    r.pass("shape");
    match (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| eta[(i, j)] != eta[(j, i)])
    {
        None => r.pass("symmetric"),
        Some((i, j)) => r.fail("symmetric", format!("({i}, {j})")),
    }
    let g = h.group();
    match g
        .elements()
        .find(|&el| h.rho(el).transpose().mul(eta).mul(h.rho(el)) != *eta)
    {
        None => r.pass("g_invariant"),
        Some(el) => r.fail("g_invariant", format!("element {el}")),
    }
    let bad = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !eta[(i, j)].is_zero() && g.mul(h.degree(i), h.degree(j)) != g.identity());
    match bad {
        None => r.pass("grading"),
        Some((i, j)) => r.fail(
            "grading",
            format!(
                "η({i}, {j}) pairs degrees {} and {}",
                h.degree(i),
                h.degree(j)
            ),
        ),
    }
    let mut block_fail = None;
    for m in g.elements() {
        let rows = h.indices_of_degree(m);
        let cols = h.indices_of_degree(g.inv(m));
        if rows.len() != cols.len() || eta.select(&rows, &cols).rank() < rows.len() {
            block_fail = Some(m);
            break;
        }
    }
    match block_fail {
        None => r.pass("nondegenerate_blocks"),
        Some(m) => r.fail(
            "nondegenerate_blocks",
            format!("H_{m} -> (H_{m}^-1)* is not an isomorphism"),
        ),
    }
    for (name, basis) in [
        ("eta_e_nondegenerate", h.untwisted_basis()),
        ("eta_G_nondegenerate", h.invariants_basis()),
    ] {
        let m = restrict_metric(eta, &basis);
        if m.rank() == basis.len() {
            r.pass(name);
        } else {
            r.fail(name, format!("rank {} < {}", m.rank(), basis.len()));
        }
    }
    r
}

/// Third partials `Y_{abc}` for all ordered triples (symmetric storage).
fn third_partials(y: &MultiPoly, coords: &[String]) -> Vec<Vec<Vec<MultiPoly>>> {
    let n = coords.len();
    let firsts: Vec<MultiPoly> = coords.iter().map(|c| y.diff(c)).collect();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|a| (a..n).flat_map(move |b| (b..n).map(move |c| (a, b, c))))
        .collect();
    let values: Vec<MultiPoly> = triples
        .par_iter()
        .map(|&(a, b, c)| firsts[a].diff(&coords[b]).diff(&coords[c]).trim())
        .collect();
    let mut out = vec![vec![vec![MultiPoly::zero(); n]; n]; n];
    for (&(a, b, c), v) in triples.iter().zip(values) {
        for (i, j, k) in [
            (a, b, c),
            (a, c, b),
            (b, a, c),
            (b, c, a),
            (c, a, b),
            (c, b, a),
        ] {
            out[i][j][k] = v.clone();
        }
    }
    out
}

/// One failing index tuple of the WDVV system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvViolation {
    pub indices: [usize; 4],
    pub residual: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvReport {
    pub coords: Vec<String>,
    pub checked: usize,
    pub total_violations: usize,
    /// The first violations in lexicographic order of `(a, b, c, d)`.
    pub violations: Vec<WdvvViolation>,
}

/// Witnesses kept in a [`WdvvReport`].
pub const MAX_WITNESSES: usize = 16;

impl WdvvReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        match self.violations.first() {
            None => r.pass("wdvv"),
            Some(v) => {
                let [a, b, c, d] = v.indices;
                let names = |i: usize| self.coords[i].clone();
                r.fail(
                    "wdvv",
                    format!(
                        "{} of {} tuples fail; first ({}, {}, {}, {}) with residual {}",
                        self.total_violations,
                        self.checked,
                        names(a),
                        names(b),
                        names(c),
                        names(d),
                        v.residual
                    ),
                );
            }
        }
        r
    }
}

/// Checks `Σ_{k,l} Y_{abk} g^{kl} Y_{lcd} = Σ_{k,l} Y_{bck} g^{kl} Y_{lad}` for
/// every `(a, b, c, d)` as an identity of polynomials, i.e. associativity of ∘_Y.
pub fn wdvv_check(y: &MultiPoly, coords: &[String], eta: &Matrix) -> Result<WdvvReport> {
    let n = coords.len();
    if eta.rows() != n || eta.cols() != n {
        return Err(Error::DegenerateMetric(format!(
            "{}x{} metric for {n} coordinates",
            eta.rows(),
            eta.cols()
        )));
    }
    let ginv = eta.inverse()?;
    let yy = third_partials(y, coords);
    // M[a][b][l] = Σ_k Y_{abk} g^{kl}: the structure functions of ∘_Y.
    let m: Vec<Vec<Vec<MultiPoly>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|l| {
                            (0..n)
                                .filter(|&k| !ginv[(k, l)].is_zero())
                                .map(|k| yy[a][b][k].scale(&ginv[(k, l)]))
                                .sum::<MultiPoly>()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let tuples: Vec<[usize; 4]> = (0..n)
        .flat_map(|a| {
            (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d])))
        })
        .collect();
    let mut bad: Vec<WdvvViolation> = tuples
        .par_iter()
        .filter_map(|&[a, b, c, d]| {
            let lhs: MultiPoly = (0..n).map(|l| &m[a][b][l] * &yy[l][c][d]).sum();
            let rhs: MultiPoly = (0..n).map(|l| &m[b][c][l] * &yy[l][a][d]).sum();
            let residual = (&lhs - &rhs).trim();
            (!residual.is_zero()).then_some(WdvvViolation {
                indices: [a, b, c, d],
                residual,
            })
        })
        .collect();
    bad.sort_by_key(|v| v.indices);
    let total_violations = bad.len();
    bad.truncate(MAX_WITNESSES);
    Ok(WdvvReport {
        coords: coords.to_vec(),
        checked: tuples.len(),
        total_violations,
        violations: bad,
    })
}

/// Structure constants of `∂_a ∘ ∂_b = Y_{abk} g^{kl} ∂_l` at a point.
pub fn mult_from_potential(
    y: &MultiPoly,
    coords: &[String],
    eta: &Matrix,
    point: &BTreeMap<String, Rational>,
) -> Result<Structure> {
    let n = coords.len();
    let ginv = eta.inverse()?;
    let yy = third_partials(y, coords);
    let mut vals = vec![vec![vec![Rational::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                vals[a][b][k] = yy[a][b][k].eval(point)?;
            }
        }
    }
    Ok(contract(&vals, &ginv))
}

/// `c[a][b][l] = Σ_k t[a][b][k] g^{kl}`.
fn contract(t: &[Vec<Vec<Rational>>], ginv: &Matrix) -> Structure {
    let n = t.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|l| {
                            (0..n)
                                .filter(|&k| !t[a][b][k].is_zero())
                                .map(|k| &t[a][b][k] * &ginv[(k, l)])
                                .sum()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// The origin of the named coordinates.
pub fn origin(coords: &[String]) -> BTreeMap<String, Rational> {
    coords
        .iter()
        .map(|c| (c.clone(), Rational::zero()))
        .collect()
}

/// Product of two vectors under structure constants.
pub fn multiply(c: &Structure, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
    let n = c.len();
    let mut out = vec![Rational::zero(); n];
    for a in 0..n {
        if v[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if w[b].is_zero() {
                continue;
            }
            let f = &v[a] * &w[b];
            for l in 0..n {
                if !c[a][b][l].is_zero() {
                    out[l] += &f * &c[a][b][l];
                }
            }
        }
    }
    out
}

/// The unique `u` with `u · e_a = e_a` for all `a`, if there is one.
pub fn unit_of(c: &Structure) -> Option<Vec<Rational>> {
    let n = c.len();
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for a in 0..n {
        for l in 0..n {
            rows.push((0..n).map(|k| c[k][a][l].clone()).collect());
            rhs.push(if a == l {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
    }
    Matrix::from_rows(rows).ok()?.solve(&rhs)
}

fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    crate::module::unit(n, i)
}

/// `((H, ρ), η, ·, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFrobeniusAlgebra {
    pub module: GradedModule,
    pub metric: Matrix,
    pub structure: Structure,
    pub unit: Vec<Rational>,
}

impl GFrobeniusAlgebra {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn multiply(&self, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        multiply(&self.structure, v, w)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> Vec<Rational> {
        self.structure[a][b].clone()
    }

    /// The trilinear form `η(v_1 · v_2, v_3)` as a tensor on `H*`
    /// (entry `[c, b, a]` holds the value on `(e_a, e_b, e_c)`).
    pub fn cubic_form(&self) -> TensorElement {
        let n = self.dim();
        let mut t = TensorElement::zero(3);
        for a in 0..n {
            for b in 0..n {
                let p = &self.structure[a][b];
                for c in 0..n {
                    let v = bilinear(&self.metric, p, &unit_vec(n, c));
                    t.add_term(vec![c, b, a], v);
                }
            }
        }
        t
    }
}

/// Defines `v_1 · v_2` through `η(v_1 · v_2, v_3) = Y3(v_1, v_2, v_3)`.
pub fn gfa_from_cubic(
    module: &GradedModule,
    metric: &Matrix,
    y3: &TensorElement,
    unit: &[Rational],
) -> Result<GFrobeniusAlgebra> {
    let n = module.dim();
    if y3.n() != 3 {
        return Err(Error::DegreeMismatch(format!(
            "cubic form of degree {}",
            y3.n()
        )));
    }
    let dual = module.dual();
    if !is_braided(&dual, y3)? {
        return Err(Error::NotBraided("cubic form".into()));
    }
    let grp = module.group();
    if let Some(idx) = y3
        .terms()
        .keys()
        .find(|idx| g_degree(grp, &dual.tuple_degree(idx)) != grp.identity())
    {
        return Err(Error::GDegreeViolation(format!("term {idx:?}")));
    }
    let ginv = metric.inverse()?;
    let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (idx, c) in y3.terms() {
        // Y3(e_a, e_b, e_c) is stored at [c, b, a].
        t[idx[2]][idx[1]][idx[0]] = c.clone();
    }
    let structure = contract(&t, &ginv);
    let alg = GFrobeniusAlgebra {
        module: module.clone(),
        metric: metric.clone(),
        structure,
        unit: unit.to_vec(),
    };
    for v in 0..n {
        for w in 0..n {
            let lhs = bilinear(
                metric,
                &alg.multiply(unit, &unit_vec(n, v)),
                &unit_vec(n, w),
            );
            if lhs != metric[(v, w)] {
                return Err(Error::UnitFails(format!(
                    "η(1·e_{v}, e_{w}) = {} != {}",
                    to_short(&lhs),
                    to_short(&metric[(v, w)])
                )));
            }
        }
    }
    Ok(alg)
}

/// Axioms (1)–(5) of a G-Frobenius algebra plus associativity and unitality.
/// The trace axiom is not checked.
pub fn check_gfa(alg: &GFrobeniusAlgebra) -> Report {
    let mut r = Report::new();
    let h = &alg.module;
    let n = h.dim();
    let g = h.group();
    let e = |i: usize| unit_vec(n, i);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();

    if h.is_self_invariant() {
        r.pass("self_invariant");
    } else {
        r.fail("self_invariant", "some γ acts nontrivially on H_γ");
    }
    let metric = check_metric(h, &alg.metric);
    match metric.failures().next() {
        None => r.pass("metric"),
        Some(c) => r.fail(
            "metric",
            format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()),
        ),
    }

    let equivariance = g.elements().find_map(|el| {
        pairs.iter().find_map(|&(a, b)| {
            let lhs = alg.multiply(&h.act_vector(el, &e(a)), &h.act_vector(el, &e(b)));
            let rhs = h.act_vector(el, &alg.basis_product(a, b));
            (lhs != rhs).then(|| format!("γ={el}, (e_{a}, e_{b})"))
        })
    });
    record(&mut r, "equivariance", equivariance);

    let grading = pairs.iter().find_map(|&(a, b)| {
        let want = g.mul(h.degree(a), h.degree(b));
        let p = alg.basis_product(a, b);
        (0..n)
            .find(|&l| !p[l].is_zero() && h.degree(l) != want)
            .map(|l| format!("e_{a}·e_{b} has a component on e_{l}"))
    });
    record(&mut r, "grading", grading);

    let braided = pairs.iter().find_map(|&(a, b)| {
        let lhs = alg.basis_product(a, b);
        let rhs = alg.multiply(&h.act_vector(g.inv(h.degree(a)), &e(b)), &e(a));
        (lhs != rhs).then(|| format!("(e_{a}, e_{b}): {} != {}", fmt_vec(&lhs), fmt_vec(&rhs)))
    });
    record(&mut r, "braided_commutativity", braided);

    let invariance = pairs.iter().find_map(|&(a, b)| {
        (0..n).find_map(|c| {
            let lhs = bilinear(&alg.metric, &alg.basis_product(a, b), &e(c));
            let rhs = bilinear(&alg.metric, &e(a), &alg.basis_product(b, c));
            (lhs != rhs).then(|| format!("(e_{a}, e_{b}, e_{c})"))
        })
    });
    record(&mut r, "metric_invariance", invariance);

    let unit_fixed = g
        .elements()
        .find(|&el| h.act_vector(el, &alg.unit) != alg.unit)
        .map(|el| format!("γ={el}"));
    let unit_degree = (0..n)
        .find(|&i| !alg.unit[i].is_zero() && h.degree(i) != g.identity())
        .map(|i| format!("unit has a component on e_{i} outside H_e"));
    record(&mut r, "unit_invariant", unit_fixed.or(unit_degree));

    let assoc = pairs.iter().find_map(|&(a, b)| {
        (0..n).find_map(|c| {
            let lhs = alg.multiply(&alg.basis_product(a, b), &e(c));
            let rhs = alg.multiply(&e(a), &alg.basis_product(b, c));
            (lhs != rhs).then(|| format!("(e_{a}, e_{b}, e_{c})"))
        })
    });
    record(&mut r, "associativity", assoc);

    let unital = (0..n).find_map(|a| {
        let l = alg.multiply(&alg.unit, &e(a));
        let rt = alg.multiply(&e(a), &alg.unit);
        (l != e(a) || rt != e(a)).then(|| format!("e_{a}"))
    });
    record(&mut r, "unit", unital);
    r
}

fn record(r: &mut Report, name: &str, failure: Option<String>) {
    match failure {
        None => r.pass(name),
        Some(w) => r.fail(name, w),
    }
}

/// A commutative Frobenius algebra on a subspace, in a chosen basis of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    /// Basis vectors in the coordinates of the ambient space.
    pub basis: Vec<Vec<Rational>>,
    pub metric: Matrix,
    pub structure: Structure,
    pub unit: Vec<Rational>,
}

impl FrobeniusAlgebra {
    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    pub fn multiply(&self, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        multiply(&self.structure, v, w)
    }

    /// Associativity, commutativity, invariance of the metric, unit and nondegeneracy.
    pub fn check(&self) -> Report {
        let n = self.dim();
        let e = |i: usize| unit_vec(n, i);
        let mut r = Report::new();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .collect();
        let assoc = triples.iter().find(|&&(a, b, c)| {
            self.multiply(&self.structure[a][b], &e(c))
                != self.multiply(&e(a), &self.structure[b][c])
        });
        record(&mut r, "associativity", assoc.map(|t| format!("{t:?}")));
        let comm = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.structure[a][b] != self.structure[b][a]);
        record(&mut r, "commutativity", comm.map(|t| format!("{t:?}")));
        let inv = triples.iter().find(|&&(a, b, c)| {
            bilinear(&self.metric, &self.structure[a][b], &e(c))
                != bilinear(&self.metric, &e(a), &self.structure[b][c])
        });
        record(&mut r, "metric_invariance", inv.map(|t| format!("{t:?}")));
        let unit = (0..n).find(|&a| self.multiply(&self.unit, &e(a)) != e(a));
        record(&mut r, "unit", unit.map(|a| format!("e_{a}")));
        let rank = self.metric.rank();
        record(
            &mut r,
            "nondegenerate",
            (rank < n).then(|| format!("rank {rank} < {n}")),
        );
        r
    }
}

/// Restriction of the multiplication, metric and unit to a subalgebra spanned by `basis`.
pub fn restrict_algebra(
    alg: &GFrobeniusAlgebra,
    basis: Vec<Vec<Rational>>,
) -> Result<FrobeniusAlgebra> {
    let n = alg.dim();
    let k = basis.len();
    let b = Matrix::from_columns(n, &basis);
    let coords = |v: &[Rational]| {
        b.solve(v)
            .ok_or_else(|| Error::DegreeMismatch("subspace is not closed under the product".into()))
    };
    let mut structure = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            structure[i][j] = coords(&alg.multiply(&basis[i], &basis[j]))?;
        }
    }
    let unit = coords(&alg.unit)?;
    let metric = restrict_metric(&alg.metric, &basis);
    Ok(FrobeniusAlgebra {
        basis,
        metric,
        structure,
        unit,
    })
}

/// Frobenius algebras on `H_e` and on `H^G`.
pub fn subalgebras(alg: &GFrobeniusAlgebra) -> Result<(FrobeniusAlgebra, FrobeniusAlgebra)> {
    let he = restrict_algebra(alg, alg.module.untwisted_basis())?;
    let hg = restrict_algebra(alg, alg.module.invariants_basis())?;
    Ok((he, hg))
}

/// Checks that the linear map `t` (columns are images of basis vectors) is a
/// unital algebra isomorphism preserving the metric.
pub fn check_isomorphism(
    source: &Structure,
    source_metric: &Matrix,
    source_unit: &[Rational],
    target: &Structure,
    target_metric: &Matrix,
    target_unit: &[Rational],
    t: &Matrix,
) -> Report {
    let n = source.len();
    let mut r = Report::new();
    record(
        &mut r,
        "bijective",
        (t.rows() != t.cols() || t.rank() != n).then(|| "map is not invertible".to_string()),
    );
    let mult = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| t.apply(&source[a][b]) != multiply(target, &t.column(a), &t.column(b)));
    record(
        &mut r,
        "multiplicative",
        mult.map(|(a, b)| format!("(e_{a}, e_{b})")),
    );
    record(
        &mut r,
        "metric",
        (t.transpose().mul(target_metric).mul(t) != *source_metric)
            .then(|| "metric not preserved".to_string()),
    );
    record(
        &mut r,
        "unit",
        (t.apply(source_unit) != target_unit).then(|| "unit not preserved".to_string()),
    );
    r
}

/// Flat coordinates, a constant metric in them, and a polynomial potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusManifold {
    pub coords: Vec<String>,
    pub metric: Matrix,
    pub potential: MultiPoly,
}

impl FrobeniusManifold {
    pub fn wdvv(&self) -> Result<WdvvReport> {
        wdvv_check(&self.potential, &self.coords, &self.metric)
    }

    /// Structure constants of ∘ at the origin.
    pub fn algebra_at_origin(&self) -> Result<Structure> {
        mult_from_potential(
            &self.potential,
            &self.coords,
            &self.metric,
            &origin(&self.coords),
        )
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }
}

fn subspace_names(coords: &[String], basis: &[Vec<Rational>], fallback: &str) -> Vec<String> {
    basis
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match nz.as_slice() {
                [i] if v[*i].is_one() => coords[*i].clone(),
                _ => format!("{fallback}_{k}"),
            }
        })
        .collect()
}

/// Restrictions `(Y_e, η_e)` and `(Y^G, η^G)` of a potential on `H*`.
pub fn sector_restrictions(
    h: &GradedModule,
    eta: &Matrix,
    coords: &[String],
    y: &MultiPoly,
) -> Result<(FrobeniusManifold, FrobeniusManifold)> {
    let truncation = y.total_degree().unwrap_or(0).max(3) as usize;
    let series = series_from_polynomial(&h.dual(), coords, y, truncation)?
        .with_g_filter(h.group().identity())?;
    let ue = restrict_untwisted(&series)?;
    let ui = restrict_invariants(&series)?;
    let build = |basis: Vec<Vec<Rational>>, s, fallback| {
        let names = subspace_names(coords, &basis, fallback);
        FrobeniusManifold {
            potential: series_to_polynomial(s, &names),
            metric: restrict_metric(eta, &basis),
            coords: names,
        }
    };
    Ok((
        build(ue.basis, &ue.series, "u"),
        build(ui.basis, &ui.series, "w"),
    ))
}

/// Pre-G-Frobenius manifold: `Y` braided of G-degree e and both `Y_e` and
/// `Y^G` satisfy WDVV for the restricted metrics.
pub fn check_pre_gfm(h: &GradedModule, eta: &Matrix, coords: &[String], y: &MultiPoly) -> Report {
    let mut r = Report::new();
    record(
        &mut r,
        "self_invariant",
        (!h.is_self_invariant()).then(|| "module is not self-invariant".to_string()),
    );
    let metric = check_metric(h, eta);
    record(
        &mut r,
        "metric",
        metric
            .failures()
            .next()
            .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
    );
    if !metric.is_pass("shape") {
        return r;
    }
    let (fe, fg) = match sector_restrictions(h, eta, coords, y) {
        Ok(x) => {
            r.pass("braided_potential");
            x
        }
        Err(err) => {
            r.fail("braided_potential", err.to_string());
            return r;
        }
    };
    for (name, f) in [("wdvv_untwisted", fe), ("wdvv_invariant", fg)] {
        match f.wdvv() {
            Ok(w) => record(
                &mut r,
                name,
                w.to_report()
                    .failures()
                    .next()
                    .and_then(|c| c.witness.clone()),
            ),
            Err(err) => r.fail(name, err.to_string()),
        }
    }
    r
}

/// Output of [`assemble_z2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Manifold {
    /// Basis ordered as `H_i`, then `H_v`, then `H_g`.
    pub module: GradedModule,
    pub manifold: FrobeniusManifold,
    pub sizes: (usize, usize, usize),
    pub y_i: MultiPoly,
    pub y_v: MultiPoly,
    pub y_g: MultiPoly,
}

impl Z2Manifold {
    pub fn check(&self) -> Report {
        check_pre_gfm(
            &self.module,
            &self.manifold.metric,
            &self.manifold.coords,
            &self.manifold.potential,
        )
    }
}

fn linear_substitution(
    coords: &[String],
    basis: &Matrix,
    names: &[String],
) -> BTreeMap<String, MultiPoly> {
    coords
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let v: MultiPoly = (0..basis.cols())
                .filter(|&r| !basis[(j, r)].is_zero())
                .map(|r| MultiPoly::var(&names[r]).scale(&basis[(j, r)]))
                .sum();
            (c.clone(), v)
        })
        .collect()
}

/// Glues an untwisted manifold and an invariant manifold that agree on a shared
/// subspace `H_i` (embedded by the columns of `iota_e` and `iota_g`) into a
/// pre-Z/2Z-Frobenius manifold on `H_i ⊕ H_v ⊕ H_g`. The complements are the
/// metric-orthogonal complements of `H_i`.
pub fn assemble_z2(
    fe: &FrobeniusManifold,
    fg: &FrobeniusManifold,
    iota_e: &Matrix,
    iota_g: &Matrix,
) -> Result<Z2Manifold> {
    let k = iota_e.cols();
    if iota_g.cols() != k || iota_e.rows() != fe.coords.len() || iota_g.rows() != fg.coords.len() {
        return Err(Error::RestrictionMismatch(
            "embedding shapes do not fit".into(),
        ));
    }
    if iota_e.rank() != k || iota_g.rank() != k {
        return Err(Error::RestrictionMismatch(
            "embeddings are not injective".into(),
        ));
    }
    let cols = |m: &Matrix| (0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>();
    let s_names = subspace_names(&fe.coords, &cols(iota_e), "s");

    let pe = fe
        .potential
        .substitute(&linear_substitution(&fe.coords, iota_e, &s_names));
    let pg = fg
        .potential
        .substitute(&linear_substitution(&fg.coords, iota_g, &s_names));
    if pe != pg {
        return Err(Error::RestrictionMismatch(format!(
            "potentials differ by {}",
            (&pe - &pg).trim()
        )));
    }
    let eta_i = iota_e.transpose().mul(&fe.metric).mul(iota_e);
    if eta_i != iota_g.transpose().mul(&fg.metric).mul(iota_g) {
        return Err(Error::RestrictionMismatch(
            "metrics differ on the shared subspace".into(),
        ));
    }
    if eta_i.rank() != k {
        return Err(Error::BlockDegreeViolation(
            "metric is degenerate on the shared subspace".into(),
        ));
    }

    let v_basis = iota_e.transpose().mul(&fe.metric).nullspace();
    let g_basis = iota_g.transpose().mul(&fg.metric).nullspace();
    let v_names = subspace_names(&fe.coords, &v_basis, "v");
    let g_names = subspace_names(&fg.coords, &g_basis, "g");
    let mut coords = s_names.clone();
    coords.extend(v_names.iter().cloned());
    coords.extend(g_names.iter().cloned());
    if coords.iter().collect::<BTreeSet<_>>().len() != coords.len() {
        return Err(Error::BadIndex(format!(
            "coordinate names collide: {coords:?}"
        )));
    }

    let mut be_cols = cols(iota_e);
    be_cols.extend(v_basis.iter().cloned());
    let mut bg_cols = cols(iota_g);
    bg_cols.extend(g_basis.iter().cloned());
    let be = Matrix::from_columns(fe.coords.len(), &be_cols);
    let bg = Matrix::from_columns(fg.coords.len(), &bg_cols);
    let names_e: Vec<String> = s_names.iter().chain(&v_names).cloned().collect();
    let names_g: Vec<String> = s_names.iter().chain(&g_names).cloned().collect();
    let ye = fe
        .potential
        .substitute(&linear_substitution(&fe.coords, &be, &names_e));
    let yg = fg
        .potential
        .substitute(&linear_substitution(&fg.coords, &bg, &names_g));

    let v_refs: Vec<&str> = v_names.iter().map(String::as_str).collect();
    let y_i = ye.set_zero(&v_refs);
    let y_v = (&ye - &y_i).trim();
    let y_g = (&yg - &y_i).trim();
    if let Some(bad) = odd_in(&y_g, &g_names) {
        return Err(Error::GDegreeViolation(format!(
            "term {bad} is odd in the twisted coordinates"
        )));
    }

    let eta_v = restrict_metric(&fe.metric, &v_basis);
    let eta_g = restrict_metric(&fg.metric, &g_basis);
    let (dv, dg) = (v_basis.len(), g_basis.len());
    let dim = k + dv + dg;
    let mut metric = Matrix::zeros(dim, dim);
    for (off, block) in [(0, &eta_i), (k, &eta_v), (k + dv, &eta_g)] {
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                metric[(off + i, off + j)] = block[(i, j)].clone();
            }
        }
    }
    let mut degrees = vec![0; k + dv];
    degrees.extend(std::iter::repeat_n(1, dg));
    let signs: Vec<Rational> = (0..dim)
        .map(|i| {
            if (k..k + dv).contains(&i) {
                -Rational::one()
            } else {
                Rational::one()
            }
        })
        .collect();
    let module = GradedModule::z2(degrees, Matrix::diagonal(&signs))?;
    let potential = (&(&y_i + &y_v) + &y_g).trim();
    let truncation = potential.total_degree().unwrap_or(0).max(3) as usize;
    series_from_polynomial(&module.dual(), &coords, &potential, truncation)?;
    Ok(Z2Manifold {
        module,
        manifold: FrobeniusManifold {
            coords,
            metric,
            potential,
        },
        sizes: (k, dv, dg),
        y_i,
        y_v,
        y_g,
    })
}

fn odd_in(p: &MultiPoly, names: &[String]) -> Option<String> {
    let idx: Vec<usize> = p
        .vars()
        .iter()
        .enumerate()
        .filter(|(_, v)| names.contains(v))
        .map(|(i, _)| i)
        .collect();
    p.terms()
        .find(|(e, _)| idx.iter().map(|&i| e[i]).sum::<u32>() % 2 == 1)
        .map(|(e, c)| {
            MultiPoly::from_terms(p.vars(), [(e.clone(), c.clone())])
                .map(|m| m.to_string())
                .unwrap_or_default()
        })
}

/// Splits a potential on a self-invariant Z/2Z module whose `H_i`, `H_v`, `H_g`
/// bases are coordinate vectors into `(Y_i, Y_v, Y_g)`.
pub fn decompose_z2_potential(
    h: &GradedModule,
    coords: &[String],
    y: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly, MultiPoly)> {
    let d = h.z2_decompose()?;
    let names = |basis: &[Vec<Rational>]| -> Result<Vec<String>> {
        let n = subspace_names(coords, basis, "");
        if n.iter().any(|s| s.starts_with('_')) {
            return Err(Error::NotZ2(
                "sector bases are not coordinate vectors".into(),
            ));
        }
        Ok(n)
    };
    let v = names(&d.variant)?;
    let g = names(&d.twisted)?;
    let vs: Vec<&str> = v.iter().map(String::as_str).collect();
    let gs: Vec<&str> = g.iter().map(String::as_str).collect();
    let without_g = y.set_zero(&gs);
    let y_i = without_g.set_zero(&vs);
    let y_v = (&without_g - &y_i).trim();
    let y_g = (y - &without_g).trim();
    Ok((y_i, y_v, y_g))
}

/// G-degree of the support of a tensor on `H*`, if homogeneous.
pub fn tensor_g_degree(dual: &GradedModule, t: &TensorElement) -> Option<Elem> {
    let degs: BTreeSet<Elem> = t
        .terms()
        .keys()
        .map(|idx| g_degree(dual.group(), &dual.tuple_degree(idx)))
        .collect();
    (degs.len() == 1).then(|| *degs.first().unwrap())
}

/// `x(v)` for a cubic form on three vectors.
pub fn eval_cubic(
    y3: &TensorElement,
    a: &[Rational],
    b: &[Rational],
    c: &[Rational],
) -> Result<Rational> {
    let v = TensorElement::from_vector(a)
        .tensor(&TensorElement::from_vector(b))
        .tensor(&TensorElement::from_vector(c));
    pair(y3, &v)
}
