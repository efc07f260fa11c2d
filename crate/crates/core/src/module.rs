//! G-graded G-modules, tensor powers and the braiding action on them.
//!
//! Every basis vector is homogeneous. `action[γ]` is the matrix of `ρ(γ)`
//! in column convention: `ρ(γ) e_j = Σ_r action[γ][r][j] e_r`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::groupoid::{ArrowCache, GTuple, GroupoidArrow};
use crate::matrix::Matrix;
use crate::rational::Rational;

type SparseColumns = Vec<Vec<(usize, Rational)>>;

#[derive(Clone)]
pub struct GradedModule {
    group: Arc<FiniteGroup>,
    degrees: Vec<Elem>,
    action: Vec<Matrix>,
    columns: Arc<Vec<SparseColumns>>,
    cache: Arc<ArrowCache>,
}

/// Outcome of [`validate_module`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport {
    pub homomorphism: bool,
    pub respects_grading: bool,
    pub self_invariant: bool,
    pub problems: Vec<String>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.homomorphism && self.respects_grading
    }
}

/// Checks the shape, the homomorphism property and the block-mapping
/// property `ρ(γ) H_m ⊆ H_{γ m γ^{-1}}`; reports self-invariance separately.
pub fn validate_module(group: &FiniteGroup, degrees: &[Elem], action: &[Matrix]) -> ModuleReport {
    let dim = degrees.len();
    let mut problems = Vec::new();
    if action.len() != group.order() {
        problems.push(format!(
            "{} action matrices for a group of order {}",
            action.len(),
            group.order()
        ));
    }
    if let Some(d) = degrees.iter().find(|&&d| d >= group.order()) {
        problems.push(format!("degree {d} is not a group element"));
    }
    if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        problems.push(format!("action matrices must be {dim}x{dim}"));
    }
    if !problems.is_empty() {
        return ModuleReport {
            homomorphism: false,
            respects_grading: false,
            self_invariant: false,
            problems,
        };
    }

    let mut homomorphism = action[group.identity()] == Matrix::identity(dim);
    if !homomorphism {
        problems.push("ρ(e) is not the identity".into());
    }
    'outer: for a in group.elements() {
        for b in group.elements() {
            if action[group.mul(a, b)] != action[a].mul(&action[b]) {
                problems.push(format!("ρ({a}·{b}) != ρ({a})ρ({b})"));
                homomorphism = false;
                break 'outer;
            }
        }
    }

    let mut respects_grading = true;
    for el in group.elements() {
        for j in 0..dim {
            let want = group.conj(el, degrees[j]);
            if let Some(r) = (0..dim).find(|&r| !action[el][(r, j)].is_zero() && degrees[r] != want)
            {
                problems.push(format!(
                    "ρ({el}) maps basis vector {j} onto {r} of the wrong degree"
                ));
                respects_grading = false;
            }
        }
    }

    let self_invariant = (0..dim).all(|j| {
        let m = &action[degrees[j]];
        (0..dim).all(|r| {
            m[(r, j)]
                == if r == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
        })
    });
    ModuleReport {
        homomorphism,
        respects_grading,
        self_invariant,
        problems,
    }
}

fn sparse_columns(m: &Matrix) -> SparseColumns {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&r| !m[(r, j)].is_zero())
                .map(|r| (r, m[(r, j)].clone()))
                .collect()
        })
        .collect()
}

impl GradedModule {
    /// Validated construction; `action` lists `ρ(γ)` for every element in index order.
    pub fn new(group: Arc<FiniteGroup>, degrees: Vec<Elem>, action: Vec<Matrix>) -> Result<Self> {
        let report = validate_module(&group, &degrees, &action);
        if !report.is_valid() {
            return Err(Error::InvalidAction(report.problems.join("; ")));
        }
        let cache = Arc::new(ArrowCache::new(group.clone()));
        Ok(Self::assemble(group, degrees, action, cache))
    }

    fn assemble(
        group: Arc<FiniteGroup>,
        degrees: Vec<Elem>,
        action: Vec<Matrix>,
        cache: Arc<ArrowCache>,
    ) -> Self {
        let columns = Arc::new(action.iter().map(sparse_columns).collect());
        GradedModule {
            group,
            degrees,
            action,
            columns,
            cache,
        }
    }

    /// `dim`-dimensional module over the trivial group.
    pub fn trivial(dim: usize) -> Self {
        let g = Arc::new(FiniteGroup::trivial());
        Self::new(g, vec![0; dim], vec![Matrix::identity(dim)]).expect("trivial module")
    }

    /// Module over a group of order 2 given by degrees and `ρ(g)`.
    pub fn z2(degrees: Vec<Elem>, rho_g: Matrix) -> Result<Self> {
        let g = Arc::new(crate::group::cyclic_group(2)?);
        let dim = degrees.len();
        Self::new(g, degrees, vec![Matrix::identity(dim), rho_g])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Elem] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> Elem {
        self.degrees[i]
    }

    pub fn rho(&self, el: Elem) -> &Matrix {
        &self.action[el]
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub(crate) fn arrow_cache(&self) -> &ArrowCache {
        &self.cache
    }

    pub fn report(&self) -> ModuleReport {
        validate_module(&self.group, &self.degrees, &self.action)
    }

    /// `γ` acts trivially on `H_γ` for every `γ`.
    pub fn is_self_invariant(&self) -> bool {
        self.report().self_invariant
    }

    /// Degree tuple of a basis-index tuple.
    pub fn tuple_degree(&self, idx: &[usize]) -> GTuple {
        GTuple(idx.iter().map(|&i| self.degrees[i]).collect())
    }

    /// Basis indices of degree `m`.
    pub fn indices_of_degree(&self, m: Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == m).collect()
    }

    /// Dual module: `(H*)_m = (H_{m^{-1}})*` and `ρ*(γ) = ρ(γ^{-1})^T`.
    pub fn dual(&self) -> GradedModule {
        let g = &self.group;
        let degrees = self.degrees.iter().map(|&m| g.inv(m)).collect();
        let action = g
            .elements()
            .map(|el| self.action[g.inv(el)].transpose())
            .collect();
        Self::assemble(self.group.clone(), degrees, action, self.cache.clone())
    }

    /// Basis of the joint fixed space `H^G`.
    pub fn invariants_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut rows = Vec::new();
        for el in self.group.elements() {
            let d = self.action[el].sub(&Matrix::identity(n));
            rows.extend(d.to_rows());
        }
        if rows.is_empty() {
            return Matrix::identity(n).to_rows();
        }
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    }

    /// Basis of `H_e` (unit vectors of degree e).
    pub fn untwisted_basis(&self) -> Vec<Vec<Rational>> {
        self.indices_of_degree(self.group.identity())
            .into_iter()
            .map(|i| unit(self.dim(), i))
            .collect()
    }

    /// `H_e = H_i ⊕ H_v` (±1 eigenspaces of `ρ(g)` on `H_e`) and `H_g`.
    pub fn z2_decompose(&self) -> Result<Z2Decomposition> {
        if self.group.order() != 2 {
            return Err(Error::NotZ2(format!(
                "group has order {}",
                self.group.order()
            )));
        }
        if !self.is_self_invariant() {
            return Err(Error::NotZ2("g does not act trivially on H_g".into()));
        }
        let e = self.group.identity();
        let g = 1 - e;
        let n = self.dim();
        let he = self.indices_of_degree(e);
        let rho = self.rho(g).select(&he, &he);
        let k = he.len();
        let lift = |v: Vec<Rational>| {
            let mut out = vec![Rational::zero(); n];
            for (c, &i) in v.into_iter().zip(&he) {
                out[i] = c;
            }
            out
        };
        let fixed = rho
            .sub(&Matrix::identity(k))
            .nullspace()
            .into_iter()
            .map(lift)
            .collect();
        let negated = rho
            .add(&Matrix::identity(k))
            .nullspace()
            .into_iter()
            .map(lift)
            .collect();
        let twisted = self
            .indices_of_degree(g)
            .into_iter()
            .map(|i| unit(n, i))
            .collect();
        Ok(Z2Decomposition {
            invariant: fixed,
            variant: negated,
            twisted,
        })
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Bases of `H_i`, `H_v` and `H_g` for a self-invariant module over Z/2Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Decomposition {
    pub invariant: Vec<Vec<Rational>>,
    pub variant: Vec<Vec<Rational>>,
    pub twisted: Vec<Vec<Rational>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.degrees == other.degrees && self.action == other.action
    }
}

impl Eq for GradedModule {}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("group_order", &self.group.order())
            .field("degrees", &self.degrees)
            .field("action", &self.action)
            .finish()
    }
}

/// Sparse element of `H^{⊗n}` in the tensor basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    n: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl TensorElement {
    pub fn zero(n: usize) -> Self {
        TensorElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `c` in degree 0.
    pub fn scalar(c: Rational) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), c);
        t
    }

    pub fn basis(idx: Vec<usize>) -> Self {
        let mut t = Self::zero(idx.len());
        t.add_term(idx, Rational::one());
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Rational)>>(
        n: usize,
        terms: I,
    ) -> Result<Self> {
        let mut t = Self::zero(n);
        for (idx, c) in terms {
            if idx.len() != n {
                return Err(Error::DegreeMismatch(format!(
                    "index tuple {idx:?} in tensor degree {n}"
                )));
            }
            t.add_term(idx, c);
        }
        Ok(t)
    }

    /// From a vector of `H` (degree 1).
    pub fn from_vector(v: &[Rational]) -> Self {
        let mut t = Self::zero(1);
        for (i, c) in v.iter().enumerate() {
            t.add_term(vec![i], c.clone());
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    pub fn get(&self, idx: &[usize]) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        assert_eq!(self.n, other.n, "tensor degree mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> TensorElement {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        TensorElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Juxtaposition `self ⊗ other`.
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero(self.n + other.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, x * y);
            }
        }
        out
    }

    /// Splits by the degree tuple of each index tuple.
    pub fn homogeneous_parts(&self, h: &GradedModule) -> BTreeMap<GTuple, TensorElement> {
        let mut out: BTreeMap<GTuple, TensorElement> = BTreeMap::new();
        for (idx, c) in &self.terms {
            out.entry(h.tuple_degree(idx))
                .or_insert_with(|| Self::zero(self.n))
                .add_term(idx.clone(), c.clone());
        }
        out
    }

    /// Reverses the order of the tensor factors.
    pub fn reversed(&self) -> TensorElement {
        TensorElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().rev().copied().collect(), v.clone()))
                .collect(),
        }
    }

    /// Transposes the slots: output slot `perm[j]` holds input slot `j`.
    pub fn permute_slots(&self, perm: &[usize]) -> TensorElement {
        let mut out = Self::zero(self.n);
        for (idx, c) in &self.terms {
            let mut new = vec![0; self.n];
            for (j, &p) in perm.iter().enumerate() {
                new[p] = idx[j];
            }
            out.add_term(new, c.clone());
        }
        out
    }
}

/// Applies `slots[j]` (sparse columns of a linear map, or identity for `None`)
/// to tensor factor `j`, then permutes slots by `perm` if given.
pub(crate) fn apply_slotwise(
    v: &TensorElement,
    slots: &[Option<&SparseColumns>],
    perm: Option<&[usize]>,
) -> TensorElement {
    let n = v.n;
    let mut out = TensorElement::zero(n);
    let mut choices: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (idx, c) in &v.terms {
        for j in 0..n {
            choices[j] = match slots[j] {
                Some(cols) => cols[idx[j]].clone(),
                None => vec![(idx[j], Rational::one())],
            };
        }
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pos = vec![0usize; n];
        'odometer: loop {
            let mut coef = c.clone();
            let mut new = vec![0; n];
            for j in 0..n {
                let (r, x) = &choices[j][pos[j]];
                coef *= x;
                new[perm.map_or(j, |p| p[j])] = *r;
            }
            out.add_term(new, coef);
            for k in (0..n).rev() {
                pos[k] += 1;
                if pos[k] < choices[k].len() {
                    continue 'odometer;
                }
                pos[k] = 0;
            }
            break;
        }
    }
    out
}

impl GradedModule {
    fn cols(&self, el: Elem) -> &SparseColumns {
        &self.columns[el]
    }

    fn check_tensor_indices(&self, v: &TensorElement) -> Result<()> {
        if let Some(bad) = v.terms.keys().flatten().find(|&&i| i >= self.dim()) {
            return Err(Error::BadIndex(format!(
                "basis index {bad} for a module of dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }

    /// Braiding on factors `i, i+1` (1-based): `v ⊗ w ↦ (g·w) ⊗ v` for `v` of
    /// degree `g`; the inverse is `v ⊗ w ↦ w ⊗ (h^{-1}·v)` with `h = deg w`.
    pub fn braid_act(&self, i: usize, v: &TensorElement, inverse: bool) -> Result<TensorElement> {
        if i == 0 || i >= v.n {
            return Err(Error::IndexOutOfRange { index: i, n: v.n });
        }
        self.check_tensor_indices(v)?;
        let (a, b) = (i - 1, i);
        let mut out = TensorElement::zero(v.n);
        for (idx, c) in &v.terms {
            let mut new = idx.clone();
            let (moved, stays, into) = if inverse {
                let h = self.degrees[idx[b]];
                (idx[a], idx[b], self.group.inv(h))
            } else {
                (idx[b], idx[a], self.degrees[idx[a]])
            };
            for (r, x) in &self.cols(into)[moved] {
                if inverse {
                    new[a] = stays;
                    new[b] = *r;
                } else {
                    new[a] = *r;
                    new[b] = stays;
                }
                out.add_term(new.clone(), c * x);
            }
        }
        Ok(out)
    }

    /// Acts by an arrow: `ρ(gpart[j])` on slot `j`, then slot `j` moves to `perm[j]`.
    pub fn arrow_act(&self, a: &GroupoidArrow, v: &TensorElement) -> Result<TensorElement> {
        self.check_tensor_indices(v)?;
        if a.len() != v.n {
            return Err(Error::DegreeMismatch(format!(
                "arrow on {} factors, tensor of degree {}",
                a.len(),
                v.n
            )));
        }
        if let Some(idx) = v
            .terms
            .keys()
            .find(|idx| &self.tuple_degree(idx) != a.source())
        {
            return Err(Error::DegreeMismatch(format!(
                "term {idx:?} has degree {:?}, arrow source is {:?}",
                self.tuple_degree(idx).0,
                a.source().0
            )));
        }
        Ok(self.arrow_act_unchecked(a, v))
    }

    pub(crate) fn arrow_act_unchecked(
        &self,
        a: &GroupoidArrow,
        v: &TensorElement,
    ) -> TensorElement {
        let e = self.group.identity();
        let slots: Vec<Option<&SparseColumns>> = a
            .gpart()
            .iter()
            .map(|&g| if g == e { None } else { Some(self.cols(g)) })
            .collect();
        apply_slotwise(v, &slots, Some(a.perm()))
    }

    /// `ρ(g)` in every slot.
    pub fn diagonal_act(&self, g: Elem, v: &TensorElement) -> Result<TensorElement> {
        self.check_tensor_indices(v)?;
        let slots = vec![Some(self.cols(g)); v.n];
        Ok(apply_slotwise(v, &slots, None))
    }

    /// `ρ(γ)` applied to a vector.
    pub fn act_vector(&self, el: Elem, v: &[Rational]) -> Vec<Rational> {
        self.action[el].apply(v)
    }
}

/// A linear map `K -> H` that preserves degrees and commutes with the action.
/// `matrix` is `dim H × dim K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: GradedModule,
    target: GradedModule,
    matrix: Matrix,
    columns: SparseColumns,
}

impl ModuleMorphism {
    pub fn new(source: GradedModule, target: GradedModule, matrix: Matrix) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::InvalidMorphism(
                "modules over different groups".into(),
            ));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for j in 0..source.dim() {
            for r in 0..target.dim() {
                if !matrix[(r, j)].is_zero() && target.degree(r) != source.degree(j) {
                    return Err(Error::InvalidMorphism(format!(
                        "entry ({r}, {j}) joins different degrees"
                    )));
                }
            }
        }
        for el in source.group().elements() {
            if target.rho(el).mul(&matrix) != matrix.mul(source.rho(el)) {
                return Err(Error::InvalidMorphism(format!(
                    "not equivariant under element {el}"
                )));
            }
        }
        let columns = sparse_columns(&matrix.transpose());
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
            columns,
        })
    }

    pub fn identity(h: &GradedModule) -> Self {
        Self::new(h.clone(), h.clone(), Matrix::identity(h.dim())).expect("identity is a morphism")
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `φ^{⊗n}` on a tensor over `K`.
    pub fn push_tensor(&self, v: &TensorElement) -> TensorElement {
        let cols = sparse_columns(&self.matrix);
        apply_slotwise(v, &vec![Some(&cols); v.n()], None)
    }

    /// `(φ^*)^{⊗n}`: a tensor on `H*` pulled back to a tensor on `K*`.
    pub fn pull_tensor(&self, x: &TensorElement) -> TensorElement {
        apply_slotwise(x, &vec![Some(&self.columns); x.n()], None)
    }
}

/// `(φ^*)^{⊗n}` for an arbitrary linear map given as `dim H × dim K` matrix.
pub(crate) fn pull_tensor_linear(matrix: &Matrix, x: &TensorElement) -> TensorElement {
    let cols = sparse_columns(&matrix.transpose());
    apply_slotwise(x, &vec![Some(&cols); x.n()], None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;
    use crate::groupoid::{compose_arrows, gen_arrow};
    use crate::rational::qi;

    fn diag(v: &[i64]) -> Matrix {
        Matrix::diagonal(&v.iter().map(|&x| qi(x)).collect::<Vec<_>>())
    }

    /// Basis (1, z, y) with z in H_v and y in H_g.
    fn small_z2() -> GradedModule {
        GradedModule::z2(vec![0, 0, 1], diag(&[1, -1, 1])).unwrap()
    }

    #[test]
    fn validation() {
        let h = small_z2();
        assert!(h.is_self_invariant());
        let bad = GradedModule::z2(vec![0, 0, 1], diag(&[1, -1, -1])).unwrap();
        assert!(!bad.is_self_invariant());
        assert!(matches!(
            GradedModule::z2(
                vec![0, 1],
                Matrix::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]).unwrap()
            ),
            Err(Error::InvalidAction(_))
        ));
        assert!(GradedModule::z2(vec![0], diag(&[2])).is_err());
        assert!(GradedModule::trivial(3).is_self_invariant());
    }

    #[test]
    fn dual_regrades() {
        let z3 = Arc::new(cyclic_group(3).unwrap());
        let h = GradedModule::new(z3, vec![0, 1], vec![Matrix::identity(2); 3]).unwrap();
        let d = h.dual();
        assert_eq!(d.degrees(), &[0, 2]);
        assert_eq!(d.dual(), h);
    }

    #[test]
    fn braiding_examples() {
        let h = small_z2();
        let yz = TensorElement::basis(vec![2, 1]);
        let out = h.braid_act(1, &yz, false).unwrap();
        assert_eq!(out, TensorElement::basis(vec![1, 2]).scale(&qi(-1)));
        assert_eq!(h.braid_act(1, &out, true).unwrap(), yz);
        let zy = TensorElement::basis(vec![1, 2]);
        assert_eq!(
            h.braid_act(1, &zy, false).unwrap(),
            TensorElement::basis(vec![2, 1])
        );
        assert!(matches!(
            h.braid_act(2, &zy, false),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn arrows_match_generators() {
        let h = small_z2();
        let g = h.group().clone();
        let v = TensorElement::basis(vec![1, 2]);
        let t = h.tuple_degree(&[1, 2]);
        let a1 = gen_arrow(&g, 1, &t).unwrap();
        let a2 = gen_arrow(&g, 1, &a1.target(&g)).unwrap();
        let direct = h
            .arrow_act(&compose_arrows(&g, &a2, &a1).unwrap(), &v)
            .unwrap();
        let stepwise = h
            .braid_act(1, &h.braid_act(1, &v, false).unwrap(), false)
            .unwrap();
        assert_eq!(direct, stepwise);
        assert_eq!(direct, v.scale(&qi(-1)));
        assert!(matches!(
            h.arrow_act(&a2, &v),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn diagonal_and_decomposition() {
        let h = small_z2();
        let zz = TensorElement::basis(vec![1, 1]);
        assert_eq!(h.diagonal_act(1, &zz).unwrap(), zz);
        let d = h.z2_decompose().unwrap();
        assert_eq!(d.invariant, vec![unit(3, 0)]);
        assert_eq!(d.variant, vec![unit(3, 1)]);
        assert_eq!(d.twisted, vec![unit(3, 2)]);
        assert_eq!(h.invariants_basis(), vec![unit(3, 0), unit(3, 2)]);
        assert!(GradedModule::trivial(2).z2_decompose().is_err());
    }

    #[test]
    fn morphisms_are_validated() {
        let h = small_z2();
        assert!(ModuleMorphism::new(h.clone(), h.clone(), diag(&[2, 3, 4])).is_ok());
        let mixing = Matrix::from_rows(vec![
            vec![qi(1), qi(1), qi(0)],
            vec![qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), qi(1)],
        ])
        .unwrap();
        assert!(matches!(
            ModuleMorphism::new(h.clone(), h, mixing),
            Err(Error::InvalidMorphism(_))
        ));
    }
}
