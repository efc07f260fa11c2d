//! Milnor rings and Frobenius manifolds of the A_n and D_n singularities.
//!
//! The A_n unfolding is `F = z^{n+1}/(n+1) + Σ_{i<n} a_i z^i` with parameters
//! named `a_0, …, a_{n-1}`; flat coordinates are named `t_0, …, t_{n-1}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{
    assemble_z2, FrobeniusAlgebra, FrobeniusManifold, GFrobeniusAlgebra, Structure, Z2Manifold,
};
use crate::matrix::Matrix;
use crate::module::GradedModule;
use crate::poly::MultiPoly;
use crate::rational::{qi, Rational};

/// Name of the extra D_n flat coordinate.
pub const T_STAR: &str = "t_*";

pub fn t_name(i: usize) -> String {
    format!("t_{i}")
}

pub fn a_name(i: usize) -> String {
    format!("a_{i}")
}

fn t_names(n: usize) -> Vec<String> {
    (0..n).map(t_name).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    A,
    D,
}

/// `C[z]/(z^n)` or `C[x, y]/(y² + x^{n-2}, xy)` with its counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorRing {
    pub kind: Kind,
    pub n: usize,
    /// Monomial names of the basis.
    pub basis: Vec<String>,
    pub counit: Vec<Rational>,
    pub structure: Structure,
}

impl MilnorRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of `z^i` (A) or `x^i y^j` (D) in the monomial basis.
    pub fn reduce_monomial(&self, i: u32, j: u32) -> Vec<Rational> {
        let n = self.n as u32;
        let mut out = vec![Rational::zero(); self.dim()];
        match self.kind {
            Kind::A => {
                if j == 0 && i < n {
                    out[i as usize] = Rational::one();
                }
            }
            Kind::D => {
                // y² = -x^{n-2}, xy = 0, x^{n-1} = 0.
                let (mut i, mut j, mut sign) = (i, j, Rational::one());
                while j >= 2 {
                    i += n - 2;
                    j -= 2;
                    sign = -sign;
                }
                match (i, j) {
                    (0, 1) => out[self.dim() - 1] = sign,
                    (i, 0) if i <= n - 2 => out[i as usize] = sign,
                    _ => {}
                }
            }
        }
        out
    }

    /// Normal form of a polynomial in `z` (A) or `x`, `y` (D).
    pub fn reduce(&self, p: &MultiPoly) -> Result<Vec<Rational>> {
        let allowed: &[&str] = match self.kind {
            Kind::A => &["z"],
            Kind::D => &["x", "y"],
        };
        if let Some(v) = p.vars().iter().find(|v| !allowed.contains(&v.as_str())) {
            if p.degree_in(v).unwrap_or(0) > 0 {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        let pos = |name: &str| p.vars().iter().position(|v| v == name);
        let (iv, jv) = match self.kind {
            Kind::A => (pos("z"), None),
            Kind::D => (pos("x"), pos("y")),
        };
        let mut out = vec![Rational::zero(); self.dim()];
        for (e, c) in p.terms() {
            let i = iv.map_or(0, |k| e[k]);
            let j = jv.map_or(0, |k| e[k]);
            for (o, r) in out.iter_mut().zip(self.reduce_monomial(i, j)) {
                *o += c * r;
            }
        }
        Ok(out)
    }

    /// `ε(e_a e_b)`.
    pub fn metric(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = crate::matrix::dot(&self.counit, &self.structure[a][b]);
            }
        }
        m
    }

    /// Coordinates of `1`.
    pub fn unit(&self) -> Vec<Rational> {
        crate::module::unit(self.dim(), 0)
    }

    pub fn to_algebra(&self) -> FrobeniusAlgebra {
        let n = self.dim();
        FrobeniusAlgebra {
            basis: (0..n).map(|i| crate::module::unit(n, i)).collect(),
            metric: self.metric(),
            structure: self.structure.clone(),
            unit: self.unit(),
        }
    }
}

/// Milnor ring of `A_n` (`n ≥ 2`) or `D_n` (`n ≥ 3`).
pub fn milnor_ring(kind: Kind, n: usize) -> Result<MilnorRing> {
    let (basis, exps): (Vec<String>, Vec<(u32, u32)>) = match kind {
        Kind::A if n >= 2 => (0..n).map(|i| (format!("z^{i}"), (i as u32, 0))).unzip(),
        Kind::D if n >= 3 => (0..n - 1)
            .map(|i| (format!("x^{i}"), (i as u32, 0)))
            .chain([("y".to_string(), (0, 1))])
            .unzip(),
        _ => return Err(Error::BadIndex(format!("no Milnor ring {kind:?}_{n}"))),
    };
    let mut ring = MilnorRing {
        kind,
        n,
        basis,
        counit: Vec::new(),
        structure: Vec::new(),
    };
    let top = match kind {
        Kind::A => n - 1,
        Kind::D => n - 2,
    };
    ring.counit = crate::module::unit(ring.dim(), top);
    ring.structure = exps
        .iter()
        .map(|&(i1, j1)| {
            exps.iter()
                .map(|&(i2, j2)| ring.reduce_monomial(i1 + i2, j1 + j2))
                .collect()
        })
        .collect();
    Ok(ring)
}

/// `F'(z) = z^n + Σ i a_i z^{i-1}` for the A_n unfolding.
pub fn unfolding_derivative(n: usize) -> MultiPoly {
    let mut p = MultiPoly::monomial(Rational::one(), &[("z", n as u32)]);
    for i in 1..n {
        p = &p + &MultiPoly::monomial(qi(i as i64), &[(&a_name(i), 1), ("z", i as u32 - 1)]);
    }
    p
}

/// `F(z) = z^{n+1}/(n+1) + Σ a_i z^i`.
pub fn unfolding(n: usize) -> MultiPoly {
    let mut p = MultiPoly::monomial(
        Rational::new(1.into(), (n as i64 + 1).into()),
        &[("z", n as u32 + 1)],
    );
    for i in 0..n {
        p = &p + &MultiPoly::monomial(Rational::one(), &[(&a_name(i), 1), ("z", i as u32)]);
    }
    p
}

/// `f g mod F'` in `Q[a][z]`.
pub fn jacobi_multiply(n: usize, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let (_, r) = (f * g).div_rem_monic("z", &unfolding_derivative(n))?;
    Ok(r.trim())
}

/// Sum of the residues of `f g / F'`: the `z^{n-1}` coefficient of `f g mod F'`.
pub fn residue_pair(n: usize, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    Ok(jacobi_multiply(n, f, g)?.coeff_of("z", n as u32 - 1).trim())
}

/// Coordinates change between the unfolding parameters and flat coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingChart {
    pub n: usize,
    /// `a_i` as a polynomial in `t_0, …, t_{n-1}`.
    pub a_of_t: Vec<MultiPoly>,
    /// `t_i` as a polynomial in `a_0, …, a_{n-1}`.
    pub t_of_a: Vec<MultiPoly>,
}

impl UnfoldingChart {
    pub fn a_substitution(&self) -> BTreeMap<String, MultiPoly> {
        self.a_of_t
            .iter()
            .enumerate()
            .map(|(i, p)| (a_name(i), p.clone()))
            .collect()
    }

    pub fn t_substitution(&self) -> BTreeMap<String, MultiPoly> {
        self.t_of_a
            .iter()
            .enumerate()
            .map(|(i, p)| (t_name(i), p.clone()))
            .collect()
    }

    /// Both compositions are the identity.
    pub fn round_trip(&self) -> bool {
        let ts = self.t_substitution();
        let as_ = self.a_substitution();
        (0..self.n).all(|i| {
            self.a_of_t[i].substitute(&ts) == MultiPoly::var(&a_name(i))
                && self.t_of_a[i].substitute(&as_) == MultiPoly::var(&t_name(i))
        })
    }

    /// Each `a_i` is `-t_i` plus terms in `t_{i+2}, …, t_{n-1}` only.
    pub fn is_triangular(&self) -> bool {
        (0..self.n).all(|i| {
            let rest = &self.a_of_t[i] + &MultiPoly::var(&t_name(i));
            let allowed: Vec<String> = (i + 2..self.n).map(t_name).collect();
            rest.trim().vars().iter().all(|v| allowed.contains(v))
        })
    }
}

/// Truncated power series in `u` with polynomial coefficients.
fn series_mul(a: &[MultiPoly], b: &[MultiPoly], order: usize) -> Vec<MultiPoly> {
    (0..=order)
        .map(|k| {
            (0..=k)
                .filter(|&i| !a[i].is_zero() && !b[k - i].is_zero())
                .map(|i| &a[i] * &b[k - i])
                .sum()
        })
        .collect()
}

/// `P[m][k] = [u^k] (1 + S)^m` with `S = Σ_j t_j u^{n+1-j}`, for `m, k ≤ n+1`.
fn laurent_powers(n: usize) -> Vec<Vec<MultiPoly>> {
    let order = n + 1;
    let mut one_plus_s = vec![MultiPoly::zero(); order + 1];
    one_plus_s[0] = MultiPoly::one();
    for j in 0..n {
        one_plus_s[n + 1 - j] = MultiPoly::var(&t_name(j));
    }
    let mut powers = vec![{
        let mut p = vec![MultiPoly::zero(); order + 1];
        p[0] = MultiPoly::one();
        p
    }];
    for m in 1..=order {
        let next = series_mul(&powers[m - 1], &one_plus_s, order);
        powers.push(next);
    }
    powers
}

/// Solves `F(z(w)) = w^{n+1}/(n+1)` for `z = w + t_{n-1}/w + … + t_0/w^n + O(w^{-n-1})`
/// order by order, in both directions.
pub fn flat_coordinates(n: usize) -> Result<UnfoldingChart> {
    if n < 2 {
        return Err(Error::BadIndex(format!("A_{n} needs n >= 2")));
    }
    let p = laurent_powers(n);
    let inv = Rational::new(1.into(), (n as i64 + 1).into());
    // Coefficient of w^j in F(z(w)) - w^{n+1}/(n+1):
    //   Σ_{m=j}^{n-1} a_m P[m][m-j] + P[n+1][n+1-j]/(n+1) = 0.
    let mut a_of_t = vec![MultiPoly::zero(); n];
    for j in (0..n).rev() {
        let mut rhs = -&p[n + 1][n + 1 - j].scale(&inv);
        for m in j + 1..n {
            rhs = &rhs - &(&a_of_t[m] * &p[m][m - j]);
        }
        a_of_t[j] = rhs.trim();
    }
    let mut t_of_a = vec![MultiPoly::zero(); n];
    let mut known: BTreeMap<String, MultiPoly> = BTreeMap::new();
    for j in (0..n).rev() {
        // P[n+1][n+1-j] = (n+1) t_j + (terms in t_k, k > j).
        let tj = MultiPoly::var(&t_name(j));
        let mut rest = (&p[n + 1][n + 1 - j].scale(&inv) - &tj).trim();
        for m in j + 1..n {
            rest = &rest + &(&MultiPoly::var(&a_name(m)) * &p[m][m - j]);
        }
        let value = (&(-&MultiPoly::var(&a_name(j))) - &rest.substitute(&known)).trim();
        known.insert(t_name(j), value.clone());
        t_of_a[j] = value;
    }
    Ok(UnfoldingChart { n, a_of_t, t_of_a })
}

/// Elements of `Q[t][z]/(F')` as coefficient vectors of `1, z, …, z^{n-1}`.
struct JacobiRing {
    n: usize,
    /// Normal forms of `z^k` for `k ≤ 2n-2`.
    powers: Vec<Vec<MultiPoly>>,
}

impl JacobiRing {
    /// `F'` with the unfolding parameters replaced by `coeffs[i] = a_i`.
    fn new(n: usize, coeffs: &[MultiPoly]) -> Self {
        // z^n = -Σ_{i≥1} i a_i z^{i-1}.
        let zn: Vec<MultiPoly> = (0..n)
            .map(|k| {
                if k + 1 < n {
                    coeffs[k + 1].scale(&-qi(k as i64 + 1))
                } else {
                    MultiPoly::zero()
                }
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(2 * n - 1);
        for k in 0..n {
            let mut v = vec![MultiPoly::zero(); n];
            v[k] = MultiPoly::one();
            powers.push(v);
        }
        for _ in n..=2 * n - 2 {
            let prev = powers.last().unwrap();
            let top = prev[n - 1].clone();
            let mut next = vec![MultiPoly::zero(); n];
            next[1..n].clone_from_slice(&prev[..n - 1]);
            if !top.is_zero() {
                for k in 0..n {
                    next[k] = (&next[k] + &(&top * &zn[k])).trim();
                }
            }
            powers.push(next);
        }
        JacobiRing { n, powers }
    }

    fn mul(&self, f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.n];
        for (i, fi) in f.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, gj) in g.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let c = fi * gj;
                for (o, r) in out.iter_mut().zip(&self.powers[i + j]) {
                    if !r.is_zero() {
                        *o = &*o + &(&c * r);
                    }
                }
            }
        }
        out.into_iter().map(|p| p.trim()).collect()
    }

    /// Coefficient of `z^{n-1}` in `f g`.
    fn pair(&self, f: &[MultiPoly], g: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, fi) in f.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, gj) in g.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let r = &self.powers[i + j][self.n - 1];
                if !r.is_zero() {
                    out = &out + &(&(fi * gj) * r);
                }
            }
        }
        out.trim()
    }
}

/// The vector fields `∂_{t_a} F = Σ_i ∂a_i/∂t_a z^i` and the Jacobi ring along the chart.
fn flat_frame(chart: &UnfoldingChart) -> (JacobiRing, Vec<Vec<MultiPoly>>) {
    let n = chart.n;
    let ring = JacobiRing::new(n, &chart.a_of_t);
    let frame = (0..n)
        .map(|a| {
            chart
                .a_of_t
                .iter()
                .map(|ai| ai.diff(&t_name(a)).trim())
                .collect()
        })
        .collect();
    (ring, frame)
}

/// `η(∂_{t_a}F, ∂_{t_b}F)` as polynomials in `t`.
pub fn flat_metric_polynomials(chart: &UnfoldingChart) -> Vec<Vec<MultiPoly>> {
    let (ring, frame) = flat_frame(chart);
    let n = chart.n;
    (0..n)
        .map(|a| (0..n).map(|b| ring.pair(&frame[a], &frame[b])).collect())
        .collect()
}

/// `Y_{abc}(t) = η(∂_a F · ∂_b F, ∂_c F)` for `a ≤ b ≤ c`.
pub fn third_derivatives_a(chart: &UnfoldingChart) -> BTreeMap<(usize, usize, usize), MultiPoly> {
    let (ring, frame) = flat_frame(chart);
    let n = chart.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let products: BTreeMap<(usize, usize), Vec<MultiPoly>> = pairs
        .par_iter()
        .map(|&(a, b)| ((a, b), ring.mul(&frame[a], &frame[b])))
        .collect();
    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(a, b)| (b..n).map(move |c| (a, b, c)))
        .collect();
    triples
        .par_iter()
        .map(|&(a, b, c)| ((a, b, c), ring.pair(&products[&(a, b)], &frame[c])))
        .collect()
}

fn sorted3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Integrates totally symmetric third derivatives to the potential without
/// terms of degree below three, after checking the mixed partials.
pub fn integrate_third_derivatives(
    coords: &[String],
    y: &BTreeMap<(usize, usize, usize), MultiPoly>,
) -> Result<MultiPoly> {
    let n = coords.len();
    let get = |a, b, c| {
        y.get(&sorted3(a, b, c))
            .cloned()
            .unwrap_or_else(MultiPoly::zero)
    };
    let quads: Vec<[usize; 4]> = (0..n)
        .flat_map(|a| {
            (a..n).flat_map(move |b| (b..n).flat_map(move |c| (c..n).map(move |d| [a, b, c, d])))
        })
        .collect();
    let bad = quads.par_iter().find_any(|&&[a, b, c, d]| {
        let base = get(a, b, c).diff(&coords[d]);
        base != get(a, b, d).diff(&coords[c])
            || base != get(a, c, d).diff(&coords[b])
            || base != get(b, c, d).diff(&coords[a])
    });
    if let Some(q) = bad {
        return Err(Error::IntegrabilityFailure(format!(
            "mixed partials differ at {q:?}"
        )));
    }
    // Σ_{a,b,c} t_a t_b t_c ∂_a∂_b∂_c Φ = Σ_d d(d-1)(d-2) Φ_d.
    let mut euler = MultiPoly::zero();
    for (&(a, b, c), p) in y {
        let mult = if a == b && b == c {
            1
        } else if a == b || b == c {
            3
        } else {
            6
        };
        let mono =
            MultiPoly::var(&coords[a]) * MultiPoly::var(&coords[b]) * MultiPoly::var(&coords[c]);
        euler = &euler + &(&mono * p).scale(&qi(mult));
    }
    let euler = euler.trim();
    let top = euler.total_degree().unwrap_or(0);
    let mut phi = MultiPoly::zero();
    for d in 3..=top {
        let k = (d * (d - 1) * (d - 2)) as i64;
        phi = &phi
            + &euler
                .homogeneous_part(d)
                .scale(&Rational::new(1.into(), k.into()));
    }
    let phi = phi.trim();
    for (&(a, b, c), p) in y {
        if phi.diff(&coords[a]).diff(&coords[b]).diff(&coords[c]) != *p {
            return Err(Error::IntegrabilityFailure(format!(
                "third derivative ({a}, {b}, {c}) not recovered"
            )));
        }
    }
    Ok(phi)
}

/// `η_{ij} = δ_{i+j, n-1}` on `t_0, …, t_{n-1}`.
pub fn metric_a(n: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = Rational::one();
    }
    m
}

/// The potential `Φ_{A_n}` in flat coordinates.
pub fn potential_a(n: usize) -> Result<MultiPoly> {
    let chart = flat_coordinates(n)?;
    integrate_third_derivatives(&t_names(n), &third_derivatives_a(&chart))
}

pub fn frobenius_manifold_a(n: usize) -> Result<FrobeniusManifold> {
    Ok(FrobeniusManifold {
        coords: t_names(n),
        metric: metric_a(n),
        potential: potential_a(n)?,
    })
}

fn zero_odd(p: &MultiPoly, n: usize) -> MultiPoly {
    let odd: Vec<String> = (1..n).step_by(2).map(t_name).collect();
    let refs: Vec<&str> = odd.iter().map(String::as_str).collect();
    p.set_zero(&refs)
}

/// `Φ_{B_m}`: `Φ_{A_{2m-1}}` restricted to `t_{odd} = 0`.
pub fn potential_b(m: usize) -> Result<MultiPoly> {
    if m < 2 {
        return Err(Error::BadIndex(format!("B_{m} needs m >= 2")));
    }
    Ok(zero_odd(&potential_a(2 * m - 1)?, 2 * m - 1))
}

/// Coordinates `t_0, t_2, …, t_{2n-4}, t_*` of `D_n`.
pub fn coords_d(n: usize) -> Vec<String> {
    (0..n - 1)
        .map(|i| t_name(2 * i))
        .chain([T_STAR.to_string()])
        .collect()
}

/// `Φ_{D_n} = (Φ_{A_{2n-3}} - a_0(t) t_*² / 2)` restricted to `t_{odd} = 0`.
pub fn potential_d(n: usize) -> Result<MultiPoly> {
    if n < 3 {
        return Err(Error::BadIndex(format!("D_{n} needs n >= 3")));
    }
    let m = 2 * n - 3;
    let chart = flat_coordinates(m)?;
    let phi = integrate_third_derivatives(&t_names(m), &third_derivatives_a(&chart))?;
    let extra = (&chart.a_of_t[0]
        * &MultiPoly::monomial(Rational::new((-1).into(), 2.into()), &[(T_STAR, 2)]))
        .trim();
    Ok(zero_odd(&(&phi + &extra), m))
}

/// `η(t_{2i}, t_{2j}) = δ_{i+j, n-2}`, `η(t_*, t_*) = -1`.
pub fn metric_d(n: usize) -> Matrix {
    let k = n - 1;
    let mut m = Matrix::zeros(n, n);
    for i in 0..k {
        m[(i, k - 1 - i)] = Rational::one();
    }
    m[(k, k)] = -Rational::one();
    m
}

pub fn frobenius_manifold_d(n: usize) -> Result<FrobeniusManifold> {
    Ok(FrobeniusManifold {
        coords: coords_d(n),
        metric: metric_d(n),
        potential: potential_d(n)?,
    })
}

/// The self-invariant Z/2Z module of `C[z, y]/(z^{2n-3}, yz, y² + z^{2n-4})` on the basis
/// `1, z², …, z^{2n-4}, z, z³, …, z^{2n-5}, y`: even powers are invariant, odd powers
/// change sign, `y` spans the twisted sector.
pub fn z2_module(n: usize) -> Result<GradedModule> {
    let (ni, nv) = (n - 1, n - 2);
    let mut degrees = vec![0; ni + nv];
    degrees.push(1);
    let signs: Vec<Rational> = (0..ni + nv + 1)
        .map(|i| {
            if (ni..ni + nv).contains(&i) {
                -Rational::one()
            } else {
                Rational::one()
            }
        })
        .collect();
    GradedModule::z2(degrees, Matrix::diagonal(&signs))
}

/// Exponent of `z` for each basis vector of [`z2_module`], `None` for `y`.
pub fn z2_basis_exponents(n: usize) -> Vec<Option<usize>> {
    (0..n - 1)
        .map(|i| Some(2 * i))
        .chain((0..n - 2).map(|i| Some(2 * i + 1)))
        .chain([None])
        .collect()
}

pub fn z2_frobenius_algebra(n: usize) -> Result<GFrobeniusAlgebra> {
    if n < 3 {
        return Err(Error::BadIndex(format!(
            "the Z/2Z algebra needs n >= 3, got {n}"
        )));
    }
    let module = z2_module(n)?;
    let exps = z2_basis_exponents(n);
    let dim = exps.len();
    let top = 2 * n - 4;
    let index_of = |e: usize| exps.iter().position(|&x| x == Some(e)).unwrap();
    let y = dim - 1;
    let mut structure = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    let mut metric = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            match (exps[a], exps[b]) {
                (Some(i), Some(j)) => {
                    if i + j <= top {
                        structure[a][b][index_of(i + j)] = Rational::one();
                    }
                    if i + j == top {
                        metric[(a, b)] = Rational::one();
                    }
                }
                (Some(0), None) | (None, Some(0)) => structure[a][b][y] = Rational::one(),
                (None, None) => {
                    structure[a][b][index_of(top)] = -Rational::one();
                    metric[(a, b)] = -Rational::one();
                }
                _ => {}
            }
        }
    }
    let unit = crate::module::unit(dim, 0);
    Ok(GFrobeniusAlgebra {
        module,
        metric,
        structure,
        unit,
    })
}

/// Matrix sending a basis of `H^G` (given in [`z2_module`] coordinates) to the
/// `D_n` Milnor basis via `z^{2i} ↦ x^i`, `y ↦ y`.
pub fn invariants_to_d(n: usize, basis: &[Vec<Rational>]) -> Matrix {
    let exps = z2_basis_exponents(n);
    let mut t = Matrix::zeros(n, basis.len());
    for (col, v) in basis.iter().enumerate() {
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            match exps[i] {
                Some(e) if e % 2 == 0 => t[(e / 2, col)] += c,
                None => t[(n - 1, col)] += c,
                Some(_) => {}
            }
        }
    }
    t
}

/// Matrix sending a basis of `H_e` to the `A_{2n-3}` Milnor basis via `z^i ↦ z^i`.
pub fn untwisted_to_a(n: usize, basis: &[Vec<Rational>]) -> Matrix {
    let exps = z2_basis_exponents(n);
    let mut t = Matrix::zeros(2 * n - 3, basis.len());
    for (col, v) in basis.iter().enumerate() {
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if let Some(e) = exps[i] {
                t[(e, col)] += c;
            }
        }
    }
    t
}

/// Assembles `Φ_{A_{2n-3}}` and `Φ_{D_n}` over their common `B_{n-1}` subspace
/// `{t_0, t_2, …, t_{2n-4}}`.
pub fn z2_frobenius_manifold(n: usize) -> Result<Z2Manifold> {
    if n < 3 {
        return Err(Error::BadIndex(format!(
            "the Z/2Z manifold needs n >= 3, got {n}"
        )));
    }
    let fe = frobenius_manifold_a(2 * n - 3)?;
    let fg = frobenius_manifold_d(n)?;
    let k = n - 1;
    let iota = |rows: usize, idx: &dyn Fn(usize) -> usize| {
        let cols: Vec<Vec<Rational>> = (0..k).map(|j| crate::module::unit(rows, idx(j))).collect();
        Matrix::from_columns(rows, &cols)
    };
    let iota_e = iota(fe.coords.len(), &|j| 2 * j);
    let iota_g = iota(fg.coords.len(), &|j| j);
    assemble_z2(&fe, &fg, &iota_e, &iota_g)
}

/// The algebra at the origin of an assembled manifold, read off from its cubic
/// terms under `∂_{t_i} ↦ -z^i`, `∂_{t_*} ↦ -y`: the structure constants of
/// `∘` at the origin with the sign flipped.
pub fn origin_algebra_in_ring_basis(z2: &Z2Manifold) -> Result<Structure> {
    let c = z2.manifold.algebra_at_origin()?;
    Ok(c.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| v.into_iter().map(|x| -x).collect())
                .collect()
        })
        .collect())
}
