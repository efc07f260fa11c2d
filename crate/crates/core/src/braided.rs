//! Braided tensors and forms: braidization, the ∘-product, the reversed
//! dual pairing and restrictions to the untwisted and invariant sectors.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::groupoid::{check_size, components, GTuple};
use crate::matrix::{Matrix, SparseEliminator};
use crate::module::{pull_tensor_linear, GradedModule, ModuleMorphism, TensorElement};
use crate::poly::MultiPoly;
use crate::rational::{qi, Rational};

/// Projects onto braid-invariant tensors: each homogeneous part `v_γ` goes
/// to `(1/|A_γ|) Σ_{a ∈ A_γ} a·v_γ`, evaluated as
/// `(1/|A_γ|) Σ_{γ'} r_{γ'}·(Σ_{s ∈ Aut(γ)} s·v_γ)`.
pub fn braidize(h: &GradedModule, v: &TensorElement) -> Result<TensorElement> {
    if v.n() <= 1 {
        return Ok(v.clone());
    }
    check_size(h.group(), v.n())?;
    let parts: Vec<(GTuple, TensorElement)> = v.homogeneous_parts(h).into_iter().collect();
    let pieces: Result<Vec<TensorElement>> = parts
        .par_iter()
        .map(|(el, part)| {
            let split = h.arrow_cache().split_from(el)?;
            let mut fixed = TensorElement::zero(v.n());
            for s in &split.automorphisms {
                fixed.add_assign(&h.arrow_act_unchecked(s, part));
            }
            let mut acc = TensorElement::zero(v.n());
            for r in &split.representatives {
                acc.add_assign(&h.arrow_act_unchecked(r, &fixed));
            }
            let total = split.representatives.len() * split.automorphisms.len();
            Ok(acc.scale(&Rational::new(One::one(), (total as i64).into())))
        })
        .collect();
    Ok(pieces?
        .into_iter()
        .fold(TensorElement::zero(v.n()), |mut acc, p| {
            acc.add_assign(&p);
            acc
        }))
}

/// The same projection summed arrow by arrow over `A_γ`.
pub fn braidize_direct(h: &GradedModule, v: &TensorElement) -> Result<TensorElement> {
    if v.n() <= 1 {
        return Ok(v.clone());
    }
    check_size(h.group(), v.n())?;
    let mut out = TensorElement::zero(v.n());
    for (el, part) in v.homogeneous_parts(h) {
        let arrows = h.arrow_cache().arrows_from(&el)?;
        let mut acc = TensorElement::zero(v.n());
        for a in arrows.iter() {
            acc.add_assign(&h.arrow_act_unchecked(a, &part));
        }
        out.add_assign(&acc.scale(&Rational::new(One::one(), (arrows.len() as i64).into())));
    }
    Ok(out)
}

/// Fixed by every generator `b_i`.
pub fn is_braided(h: &GradedModule, v: &TensorElement) -> Result<bool> {
    for i in 1..v.n() {
        if &h.braid_act(i, v, false)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis element of `Br^n` supported on one groupoid component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedForm {
    pub component: GTuple,
    pub g_degree: Elem,
    pub tensor: TensorElement,
}

fn index_tuples(dim: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    crate::groupoid::all_tuples(dim.max(1), n)
        .filter(move |_| dim > 0)
        .map(|t| t.0)
}

/// Basis of `(H^{⊗n})^{B_n}` as the joint kernel of `b_i - 1`, computed
/// separately on each component.
pub fn br_basis(h: &GradedModule, n: usize) -> Result<Vec<BraidedForm>> {
    let g = h.group();
    check_size(g, n)?;
    let comps = components(g, n)?;
    let mut by_component: BTreeMap<GTuple, Vec<Vec<usize>>> = BTreeMap::new();
    let mut owner: BTreeMap<GTuple, GTuple> = BTreeMap::new();
    for c in &comps {
        for m in &c.members {
            owner.insert(m.clone(), c.basepoint().clone());
        }
    }
    for idx in index_tuples(h.dim(), n) {
        by_component
            .entry(owner[&h.tuple_degree(&idx)].clone())
            .or_default()
            .push(idx);
    }
    let work: Vec<(GTuple, Vec<Vec<usize>>)> = by_component.into_iter().collect();
    let per_component: Result<Vec<Vec<BraidedForm>>> = work
        .par_iter()
        .map(|(base, tuples)| kernel_forms(h, base, tuples, n))
        .collect();
    Ok(per_component?.into_iter().flatten().collect())
}

/// Kernel of the stacked `b_i - 1` restricted to the index tuples of one component.
fn kernel_forms(
    h: &GradedModule,
    base: &GTuple,
    tuples: &[Vec<usize>],
    n: usize,
) -> Result<Vec<BraidedForm>> {
    let pos: BTreeMap<&Vec<usize>, usize> =
        tuples.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for i in 1..n {
        let mut mat: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); tuples.len()];
        for (k, t) in tuples.iter().enumerate() {
            let image = h.braid_act(i, &TensorElement::basis(t.clone()), false)?;
            for (idx, c) in image.terms() {
                *mat[pos[idx]].entry(k).or_insert_with(Rational::zero) += c;
            }
            *mat[k].entry(k).or_insert_with(Rational::zero) -= Rational::one();
        }
        rows.extend(mat);
    }
    let mut elim = SparseEliminator::new(tuples.len());
    for r in rows {
        elim.push(r);
    }
    let g_degree = crate::groupoid::g_degree(h.group(), base);
    Ok(elim
        .nullspace()
        .into_iter()
        .map(|v| {
            let tensor = TensorElement::from_terms(
                n,
                v.into_iter()
                    .enumerate()
                    .map(|(k, c)| (tuples[k].clone(), c)),
            )
            .expect("degree n");
            BraidedForm {
                component: base.clone(),
                g_degree,
                tensor,
            }
        })
        .collect())
}

/// Truncated formal sum of braided tensors of degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedSeries {
    module: GradedModule,
    truncation: usize,
    parts: Vec<TensorElement>,
    g_filter: Option<Elem>,
}

impl BraidedSeries {
    /// Checks that part `d` has tensor degree `d` and is braided.
    pub fn new(
        module: GradedModule,
        truncation: usize,
        mut parts: Vec<TensorElement>,
    ) -> Result<Self> {
        if parts.len() > truncation + 1 {
            return Err(Error::DegreeMismatch(format!(
                "{} parts for truncation {truncation}",
                parts.len()
            )));
        }
        for d in parts.len()..=truncation {
            parts.push(TensorElement::zero(d));
        }
        for (d, p) in parts.iter().enumerate() {
            if p.n() != d {
                return Err(Error::DegreeMismatch(format!(
                    "part {d} has tensor degree {}",
                    p.n()
                )));
            }
            if !is_braided(&module, p)? {
                return Err(Error::NotBraided(format!("part of degree {d}")));
            }
        }
        Ok(BraidedSeries {
            module,
            truncation,
            parts,
            g_filter: None,
        })
    }

    pub fn zero(module: GradedModule, truncation: usize) -> Self {
        let parts = (0..=truncation).map(TensorElement::zero).collect();
        BraidedSeries {
            module,
            truncation,
            parts,
            g_filter: None,
        }
    }

    /// The unit: scalar 1 in degree 0.
    pub fn one(module: GradedModule, truncation: usize) -> Self {
        let mut s = Self::zero(module, truncation);
        s.parts[0] = TensorElement::scalar(Rational::one());
        s
    }

    /// Restricts support to components of the given G-degree.
    pub fn with_g_filter(mut self, g: Elem) -> Result<Self> {
        let grp = self.module.group();
        for p in &self.parts {
            for idx in p.terms().keys() {
                let deg = crate::groupoid::g_degree(grp, &self.module.tuple_degree(idx));
                if deg != g {
                    return Err(Error::DegreeMismatch(format!(
                        "term {idx:?} has G-degree {deg}, expected {g}"
                    )));
                }
            }
        }
        self.g_filter = Some(g);
        Ok(self)
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn g_filter(&self) -> Option<Elem> {
        self.g_filter
    }

    pub fn parts(&self) -> &[TensorElement] {
        &self.parts
    }

    pub fn part(&self, d: usize) -> &TensorElement {
        &self.parts[d]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(TensorElement::is_zero)
    }

    pub fn add(&self, other: &BraidedSeries) -> Result<BraidedSeries> {
        same_space(self, other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.add(b))
            .collect();
        let g_filter = if self.g_filter == other.g_filter {
            self.g_filter
        } else {
            None
        };
        Ok(BraidedSeries {
            module: self.module.clone(),
            truncation: self.truncation,
            parts,
            g_filter,
        })
    }

    /// Multiplies the degree-`d` part by `a^d`.
    pub fn rescale(&self, a: &Rational) -> BraidedSeries {
        let mut s = self.clone();
        let mut f = Rational::one();
        for p in &mut s.parts {
            *p = p.scale(&f);
            f *= a;
        }
        s
    }

    fn with_parts(&self, module: GradedModule, parts: Vec<TensorElement>) -> BraidedSeries {
        BraidedSeries {
            module,
            truncation: self.truncation,
            parts,
            g_filter: self.g_filter,
        }
    }
}

fn same_space(a: &BraidedSeries, b: &BraidedSeries) -> Result<()> {
    if a.truncation != b.truncation || a.module != b.module {
        return Err(Error::ModuleMismatch);
    }
    Ok(())
}

/// `(X ∘ Y)_d = B_d(Σ_{p+q=d} X_p ⊗ Y_q)`, truncated.
pub fn circ_product(x: &BraidedSeries, y: &BraidedSeries) -> Result<BraidedSeries> {
    same_space(x, y)?;
    let parts: Result<Vec<TensorElement>> = (0..=x.truncation)
        .into_par_iter()
        .map(|d| {
            let mut acc = TensorElement::zero(d);
            for p in 0..=d {
                acc = acc.add(&x.parts[p].tensor(&y.parts[d - p]));
            }
            braidize(&x.module, &acc)
        })
        .collect();
    let g_filter = match (x.g_filter, y.g_filter) {
        (Some(a), Some(b)) => Some(x.module.group().mul(a, b)),
        _ => None,
    };
    Ok(BraidedSeries {
        module: x.module.clone(),
        truncation: x.truncation,
        parts: parts?,
        g_filter,
    })
}

/// `x(v) = Σ x[i_1..i_n] v[i_n..i_1]`: the n-th dual factor meets the first vector.
pub fn pair(x: &TensorElement, v: &TensorElement) -> Result<Rational> {
    if x.n() != v.n() {
        return Err(Error::DegreeMismatch(format!(
            "form of degree {} on a tensor of degree {}",
            x.n(),
            v.n()
        )));
    }
    let rev = v.reversed();
    let (small, large) = if x.num_terms() <= rev.num_terms() {
        (x, &rev)
    } else {
        (&rev, x)
    };
    Ok(small
        .terms()
        .iter()
        .map(|(idx, c)| c * large.get(idx))
        .sum())
}

/// Pulls a series on `H*` back along `φ: K -> H` to a series on `K*`.
pub fn pullback(phi: &ModuleMorphism, x: &BraidedSeries) -> Result<BraidedSeries> {
    if x.module != phi.target().dual() {
        return Err(Error::ModuleMismatch);
    }
    let parts = x.parts.iter().map(|p| phi.pull_tensor(p)).collect();
    Ok(x.with_parts(phi.source().dual(), parts))
}

/// A restricted series together with the basis of the subspace it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// Basis vectors of the subspace, in coordinates of `H`.
    pub basis: Vec<Vec<Rational>>,
    /// Symmetric series over the trivial group on that subspace.
    pub series: BraidedSeries,
}

/// Restriction of a series on `H*` to `H_e`, an algebra map onto symmetric forms.
pub fn restrict_untwisted(x: &BraidedSeries) -> Result<Restriction> {
    let h = x.module.dual();
    let e = h.group().identity();
    let he = h.indices_of_degree(e);
    let sub = GradedModule::new(
        h.group_arc().clone(),
        vec![e; he.len()],
        h.action().iter().map(|m| m.select(&he, &he)).collect(),
    )?;
    let basis = h.untwisted_basis();
    let inclusion = ModuleMorphism::new(sub, h, Matrix::from_columns(x.module.dim(), &basis))?;
    let pulled = pullback(&inclusion, x)?;
    let series = BraidedSeries::new(GradedModule::trivial(he.len()), x.truncation, pulled.parts)?;
    Ok(Restriction { basis, series })
}

/// Linear restriction of a series on `H*` to the invariants `H^G`; the
/// result is symmetric (checked) but the map is not multiplicative in general.
pub fn restrict_invariants(x: &BraidedSeries) -> Result<Restriction> {
    let h = x.module.dual();
    let basis = h.invariants_basis();
    let inclusion = Matrix::from_columns(h.dim(), &basis);
    let parts = x
        .parts
        .iter()
        .map(|p| pull_tensor_linear(&inclusion, p))
        .collect();
    let series = BraidedSeries::new(GradedModule::trivial(basis.len()), x.truncation, parts)?;
    Ok(Restriction { basis, series })
}

/// Distinct orderings of a multiset, lexicographic.
pub fn arrangements(mut items: Vec<usize>) -> Vec<Vec<usize>> {
    items.sort_unstable();
    let mut out = vec![items.clone()];
    loop {
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return out;
        };
        let j = (i..items.len())
            .rev()
            .find(|&j| items[j] > items[i - 1])
            .unwrap();
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(qi).fold(Rational::one(), |a, b| a * b)
}

/// Symmetric tensors whose evaluation at `(t, …, t)` is the polynomial.
///
/// A monomial `c·t^e` of degree `d` is spread evenly over the distinct
/// orderings of its index multiset, so `Σ_d X_d(t, …, t) = p(t)` and the
/// ∘-product of symmetric series matches polynomial multiplication.
pub fn series_from_polynomial(
    module: &GradedModule,
    coords: &[String],
    p: &MultiPoly,
    truncation: usize,
) -> Result<BraidedSeries> {
    if coords.len() != module.dim() {
        return Err(Error::DegreeMismatch(format!(
            "{} coordinates for dimension {}",
            coords.len(),
            module.dim()
        )));
    }
    let slot: BTreeMap<&str, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let p = p.trim();
    let var_slots: Vec<usize> = p
        .vars()
        .iter()
        .map(|v| {
            slot.get(v.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownVariable(v.clone()))
        })
        .collect::<Result<_>>()?;
    let mut parts: Vec<TensorElement> = (0..=truncation).map(TensorElement::zero).collect();
    for (exp, c) in p.terms() {
        let d: u32 = exp.iter().sum();
        if d as usize > truncation {
            return Err(Error::DegreeMismatch(format!(
                "monomial of degree {d} beyond truncation {truncation}"
            )));
        }
        let mut items = Vec::new();
        let mut weight = Rational::one();
        for (k, &e) in exp.iter().enumerate() {
            items.extend(std::iter::repeat_n(var_slots[k], e as usize));
            weight *= factorial(e);
        }
        let share = c * weight / factorial(d);
        for idx in arrangements(items) {
            parts[d as usize].add_term(idx, share.clone());
        }
    }
    BraidedSeries::new(module.clone(), truncation, parts)
}

/// `Σ_d X_d(t, …, t)` as a polynomial in the named coordinates.
pub fn series_to_polynomial(x: &BraidedSeries, coords: &[String]) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for part in &x.parts {
        for (idx, c) in part.terms() {
            let factors: Vec<(&str, u32)> = idx.iter().map(|&i| (coords[i].as_str(), 1)).collect();
            out = &out + &MultiPoly::monomial(c.clone(), &factors);
        }
    }
    out
}

/// Number of degree-`k` monomials in `dim` commuting variables avoiding
/// every product of a variable from `left` with one from `right`.
pub fn count_monomials_avoiding(
    dim: usize,
    k: usize,
    left: &BTreeSet<usize>,
    right: &BTreeSet<usize>,
) -> usize {
    fn rec(
        start: usize,
        dim: usize,
        k: usize,
        l: bool,
        r: bool,
        left: &BTreeSet<usize>,
        right: &BTreeSet<usize>,
    ) -> usize {
        if k == 0 {
            return 1;
        }
        (start..dim)
            .map(|v| {
                let (l2, r2) = (l || left.contains(&v), r || right.contains(&v));
                if l2 && r2 {
                    0
                } else {
                    rec(v, dim, k - 1, l2, r2, left, right)
                }
            })
            .sum()
    }
    rec(0, dim, k, false, false, left, right)
}
