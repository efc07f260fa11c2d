//! The braid groupoid on `G^n`.
//!
//! Objects are n-tuples of group elements. The standard generator `b_i`
//! (1-based, braiding strands `i` and `i+1`) acts by
//! `(.., a, b, ..) -> (.., a b a^{-1}, a, ..)`. Every braid realizes an
//! element of `G^n ⋊ S_n` at a given source tuple; those realized elements
//! are the arrows. Arrow action convention: conjugate slot `j` by
//! `gpart[j]`, then move slot `j` to slot `perm[j]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::size_limit;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTuple(pub Vec<Elem>);

impl GTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.0
    }
}

impl From<Vec<Elem>> for GTuple {
    fn from(v: Vec<Elem>) -> Self {
        GTuple(v)
    }
}

/// An element `(gpart, perm)` of `G^n ⋊ S_n` attached to its source tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidArrow {
    source: GTuple,
    gpart: Vec<Elem>,
    perm: Vec<usize>,
}

fn check_gen(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// Action of `b_i` (or `b_i^{-1}`) on a tuple; `i` is 1-based.
pub fn braid_gen_action(g: &FiniteGroup, i: usize, t: &GTuple, inverse: bool) -> Result<GTuple> {
    check_gen(i, t.len())?;
    let mut out = t.0.clone();
    let (a, b) = (t.0[i - 1], t.0[i]);
    if inverse {
        out[i - 1] = b;
        out[i] = g.conj(g.inv(b), a);
    } else {
        out[i - 1] = g.conj(a, b);
        out[i] = a;
    }
    Ok(GTuple(out))
}

/// Ordered product of the entries.
pub fn g_degree(g: &FiniteGroup, t: &GTuple) -> Elem {
    g.product(t.0.iter().copied())
}

/// Componentwise conjugation `h γ_j h^{-1}`.
pub fn diagonal_tuple(g: &FiniteGroup, h: Elem, t: &GTuple) -> GTuple {
    GTuple(t.0.iter().map(|&x| g.conj(h, x)).collect())
}

/// `(γ_1, …, γ_n) -> (γ_n^{-1}, …, γ_1^{-1})`.
pub fn reflect_tuple(g: &FiniteGroup, t: &GTuple) -> GTuple {
    GTuple(t.0.iter().rev().map(|&x| g.inv(x)).collect())
}

impl GroupoidArrow {
    /// Builds an arrow from raw parts, checking shapes.
    pub fn new(source: GTuple, gpart: Vec<Elem>, perm: Vec<usize>) -> Result<Self> {
        let n = source.len();
        let mut seen = vec![false; n];
        if gpart.len() != n || perm.len() != n {
            return Err(Error::BadIndex(
                "arrow parts must have the tuple length".into(),
            ));
        }
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadIndex(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(GroupoidArrow {
            source,
            gpart,
            perm,
        })
    }

    pub fn identity(g: &FiniteGroup, t: &GTuple) -> Self {
        let n = t.len();
        GroupoidArrow {
            source: t.clone(),
            gpart: vec![g.identity(); n],
            perm: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &GTuple {
        &self.source
    }

    pub fn gpart(&self) -> &[Elem] {
        &self.gpart
    }

    /// `perm[j]` is the slot that slot `j` moves to.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn is_identity(&self, g: &FiniteGroup) -> bool {
        self.gpart.iter().all(|&x| x == g.identity())
            && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn target(&self, g: &FiniteGroup) -> GTuple {
        let mut out = vec![g.identity(); self.len()];
        for j in 0..self.len() {
            out[self.perm[j]] = g.conj(self.gpart[j], self.source.0[j]);
        }
        GTuple(out)
    }

    /// Inverse arrow, from `target` back to `source`.
    pub fn inverse(&self, g: &FiniteGroup) -> Self {
        let n = self.len();
        let mut gpart = vec![g.identity(); n];
        let mut perm = vec![0; n];
        for j in 0..n {
            let k = self.perm[j];
            perm[k] = j;
            gpart[k] = g.inv(self.gpart[j]);
        }
        GroupoidArrow {
            source: self.target(g),
            gpart,
            perm,
        }
    }
}

/// The arrow `b_{i,t} = (e, …, γ_i at slot i+1, …, e) × (i, i+1)`.
pub fn gen_arrow(g: &FiniteGroup, i: usize, t: &GTuple) -> Result<GroupoidArrow> {
    check_gen(i, t.len())?;
    let mut a = GroupoidArrow::identity(g, t);
    a.gpart[i] = t.0[i - 1];
    a.perm.swap(i - 1, i);
    Ok(a)
}

/// The arrow realized by `b_i^{-1}` at `t`.
pub fn gen_arrow_inverse(g: &FiniteGroup, i: usize, t: &GTuple) -> Result<GroupoidArrow> {
    let pre = braid_gen_action(g, i, t, true)?;
    Ok(gen_arrow(g, i, &pre)?.inverse(g))
}

/// `a2 ∘ a1`: perm `σ∘τ`, gpart `c_j = a_{τ(j)} b_j`.
pub fn compose_arrows(
    g: &FiniteGroup,
    a2: &GroupoidArrow,
    a1: &GroupoidArrow,
) -> Result<GroupoidArrow> {
    if a1.target(g) != a2.source {
        return Err(Error::SourceTargetMismatch);
    }
    Ok(compose_unchecked(g, a2, a1))
}

fn compose_unchecked(g: &FiniteGroup, a2: &GroupoidArrow, a1: &GroupoidArrow) -> GroupoidArrow {
    let n = a1.len();
    let gpart = (0..n)
        .map(|j| g.mul(a2.gpart[a1.perm[j]], a1.gpart[j]))
        .collect();
    let perm = (0..n).map(|j| a2.perm[a1.perm[j]]).collect();
    GroupoidArrow {
        source: a1.source.clone(),
        gpart,
        perm,
    }
}

/// Reflection functor on arrows: an arrow `γ -> γ'` goes to `r(γ') -> r(γ)`.
/// On `G^n ⋊ S_n` this is `ρ a^{-1} ρ` with `ρ` the slot reversal, which
/// sends `b_{i,γ}` to `b_{n-i, r(b_i γ)}`.
pub fn reflect_arrow(g: &FiniteGroup, a: &GroupoidArrow) -> GroupoidArrow {
    let n = a.len();
    let rev = |m: usize| n - 1 - m;
    let mut inv_perm = vec![0; n];
    for (j, &p) in a.perm.iter().enumerate() {
        inv_perm[p] = j;
    }
    let perm = (0..n).map(|m| rev(inv_perm[rev(m)])).collect();
    let gpart = (0..n).map(|m| g.inv(a.gpart[inv_perm[rev(m)]])).collect();
    GroupoidArrow {
        source: reflect_tuple(g, &a.target(g)),
        gpart,
        perm,
    }
}

/// Guard on `|G|^n · n!`.
pub fn check_size(g: &FiniteGroup, n: usize) -> Result<()> {
    let mut size: u128 = 1;
    for k in 1..=n as u128 {
        size = size.saturating_mul(k).saturating_mul(g.order() as u128);
    }
    let limit = size_limit() as u128;
    if size > limit {
        return Err(Error::SizeLimit {
            what: format!("|G|^{n}·{n}!"),
            size,
            limit,
        });
    }
    Ok(())
}

/// All arrows with source `t`, by breadth-first closure under the
/// generators and their inverses.
pub fn arrows_from(g: &FiniteGroup, t: &GTuple) -> Result<Vec<GroupoidArrow>> {
    check_size(g, t.len())?;
    let n = t.len();
    let start = GroupoidArrow::identity(g, t);
    let mut seen: HashSet<GroupoidArrow> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        let s = a.target(g);
        for i in 1..n {
            for step in [gen_arrow(g, i, &s)?, gen_arrow_inverse(g, i, &s)?] {
                let c = compose_unchecked(g, &step, &a);
                if !seen.contains(&c) {
                    seen.insert(c.clone());
                    queue.push_back(c);
                }
            }
        }
    }
    let mut out: Vec<GroupoidArrow> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A connected component of the groupoid, seen from its least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub members: BTreeSet<GTuple>,
    /// `A_γ` for the basepoint γ (the least member).
    pub arrows_from_basepoint: Vec<GroupoidArrow>,
    /// `|hom(basepoint, γ')|` for every member γ'.
    pub hom_counts: BTreeMap<GTuple, usize>,
    pub n_c: usize,
    pub m_c: usize,
    pub g_degree: Elem,
}

impl Component {
    pub fn basepoint(&self) -> &GTuple {
        self.members.first().expect("components are non-empty")
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, t: &GTuple) -> bool {
        self.members.contains(t)
    }
}

/// Component of `t`, with arrow counts `n_C = |A_γ|` and `m_C = |hom(γ, γ')|`.
pub fn enumerate_component(g: &FiniteGroup, t: &GTuple) -> Result<Component> {
    let first = arrows_from(g, t)?;
    let members: BTreeSet<GTuple> = first.iter().map(|a| a.target(g)).collect();
    let base = members.first().unwrap().clone();
    let arrows = if &base == t {
        first
    } else {
        arrows_from(g, &base)?
    };
    let mut hom_counts: BTreeMap<GTuple, usize> = BTreeMap::new();
    for a in &arrows {
        *hom_counts.entry(a.target(g)).or_default() += 1;
    }
    let degrees: BTreeSet<Elem> = members.iter().map(|m| g_degree(g, m)).collect();
    debug_assert_eq!(degrees.len(), 1, "G-degree is constant on components");
    Ok(Component {
        n_c: arrows.len(),
        m_c: hom_counts[&base],
        g_degree: g_degree(g, &base),
        members,
        arrows_from_basepoint: arrows,
        hom_counts,
    })
}

/// Every component of the groupoid on `G^n`, ordered by basepoint.
pub fn components(g: &FiniteGroup, n: usize) -> Result<Vec<Component>> {
    check_size(g, n)?;
    let mut out = Vec::new();
    let mut seen: HashSet<GTuple> = HashSet::new();
    for t in all_tuples(g.order(), n) {
        if seen.contains(&t) {
            continue;
        }
        let c = enumerate_component(g, &t)?;
        seen.extend(c.members.iter().cloned());
        out.push(c);
    }
    out.sort_by(|a, b| a.basepoint().cmp(b.basepoint()));
    Ok(out)
}

/// Arrows from `a` to `b` (empty when they lie in different components).
pub fn hom(g: &FiniteGroup, a: &GTuple, b: &GTuple) -> Result<Vec<GroupoidArrow>> {
    Ok(arrows_from(g, a)?
        .into_iter()
        .filter(|x| &x.target(g) == b)
        .collect())
}

/// Component of `h·γ` for the basepoint γ of `c`.
pub fn diagonal_g_action(g: &FiniteGroup, h: Elem, c: &Component) -> Result<Component> {
    enumerate_component(g, &diagonal_tuple(g, h, c.basepoint()))
}

/// Lexicographic enumeration of `{0..order}^n`.
pub fn all_tuples(order: usize, n: usize) -> impl Iterator<Item = GTuple> {
    let total = order.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut k| {
        let mut v = vec![0; n];
        for slot in (0..n).rev() {
            v[slot] = k % order;
            k /= order;
        }
        GTuple(v)
    })
}

/// Thread-safe cache of `A_γ` keyed by source tuple. Filling one member
/// fills its whole component by transport along a connecting arrow.
#[derive(Debug)]
pub struct ArrowCache {
    group: Arc<FiniteGroup>,
    map: RwLock<HashMap<GTuple, Arc<Vec<GroupoidArrow>>>>,
    splits: RwLock<HashMap<GTuple, Arc<ArrowSplit>>>,
}

/// `A_γ` factored as `hom(γ, γ') = r_{γ'} ∘ Aut(γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSplit {
    /// One arrow `r_{γ'}` into each member `γ'` of the component.
    pub representatives: Vec<GroupoidArrow>,
    /// `hom(γ, γ)`.
    pub automorphisms: Vec<GroupoidArrow>,
}

impl ArrowCache {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        ArrowCache {
            group,
            map: RwLock::new(HashMap::new()),
            splits: RwLock::new(HashMap::new()),
        }
    }

    pub fn split_from(&self, t: &GTuple) -> Result<Arc<ArrowSplit>> {
        if let Some(hit) = self.splits.read().unwrap().get(t) {
            return Ok(hit.clone());
        }
        let g = &*self.group;
        let mut seen: HashSet<GTuple> = HashSet::new();
        let mut split = ArrowSplit {
            representatives: Vec::new(),
            automorphisms: Vec::new(),
        };
        for a in self.arrows_from(t)?.iter() {
            let target = a.target(g);
            if &target == t {
                split.automorphisms.push(a.clone());
            }
            if seen.insert(target) {
                split.representatives.push(a.clone());
            }
        }
        let split = Arc::new(split);
        self.splits
            .write()
            .unwrap()
            .entry(t.clone())
            .or_insert_with(|| split.clone());
        Ok(split)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn arrows_from(&self, t: &GTuple) -> Result<Arc<Vec<GroupoidArrow>>> {
        if let Some(hit) = self.map.read().unwrap().get(t) {
            return Ok(hit.clone());
        }
        let g = &*self.group;
        let base = arrows_from(g, t)?;
        let mut fill: Vec<(GTuple, Arc<Vec<GroupoidArrow>>)> = Vec::new();
        let mut done: HashSet<GTuple> = HashSet::new();
        for q in &base {
            let target = q.target(g);
            if !done.insert(target.clone()) {
                continue;
            }
            // A_{γ'} = { a ∘ q^{-1} : a ∈ A_γ } for any q: γ -> γ'.
            let back = q.inverse(g);
            let mut moved: Vec<GroupoidArrow> = base
                .iter()
                .map(|a| compose_unchecked(g, a, &back))
                .collect();
            moved.sort();
            fill.push((target, Arc::new(moved)));
        }
        let mut map = self.map.write().unwrap();
        for (k, v) in fill {
            map.entry(k).or_insert(v);
        }
        Ok(map[t].clone())
    }
}
