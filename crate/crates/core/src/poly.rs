//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are named symbols kept in lexicographic order; every term is a
//! dense exponent vector over that ordered list. Operations between
//! polynomials on different variable sets first align both to the union.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_neg, to_short, Rational};

#[derive(Clone, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `coef * Π name^exp`. Repeated names multiply.
    pub fn monomial(coef: Rational, factors: &[(&str, u32)]) -> Self {
        let vars: Vec<String> = factors
            .iter()
            .map(|(n, _)| n.to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut exp = vec![0; vars.len()];
        for (n, e) in factors {
            let i = vars.binary_search_by(|v| v.as_str().cmp(n)).unwrap();
            exp[i] += e;
        }
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        MultiPoly { vars, terms }
    }

    /// Builds from explicit exponent vectors over `vars` (any order, no duplicates).
    pub fn from_terms<I>(vars: &[String], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let sorted: Vec<String> = vars
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if sorted.len() != vars.len() {
            return Err(Error::Parse("duplicate variable name".into()));
        }
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| sorted.binary_search(v).unwrap())
            .collect();
        let mut out = MultiPoly {
            vars: sorted,
            terms: BTreeMap::new(),
        };
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} for {} variables",
                    exp.len(),
                    vars.len()
                )));
            }
            let mut e = vec![0; vars.len()];
            for (i, x) in exp.into_iter().enumerate() {
                e[perm[i]] = x;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses over a sorted superset of the current variables.
    fn aligned(&self, vars: &[String]) -> MultiPoly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    ne[map[i]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        if a == b {
            return a.to_vec();
        }
        a.iter()
            .chain(b)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Adds variables (with exponent zero) so the polynomial is expressed over them.
    pub fn extend_vars(&self, extra: &[String]) -> MultiPoly {
        let vars = Self::union_vars(&self.vars, extra);
        self.aligned(&vars)
    }

    /// Drops variables that occur in no term.
    pub fn trim(&self) -> MultiPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        let vars = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (used.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        MultiPoly { vars, terms }
    }

    pub fn scale(&self, s: &Rational) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let Some(i) = self.var_index(var) else {
            return if self.is_zero() { None } else { Some(0) };
        };
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Total-degree `d` part.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: &str, k: u32) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return if k == 0 {
                self.clone()
            } else {
                MultiPoly::zero()
            };
        };
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne[i] = 0;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Formal partial derivative. Differentiating by an absent variable gives zero.
    pub fn diff(&self, var: &str) -> MultiPoly {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        let Some(i) = self.var_index(var) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Iterated partial derivative along `vars` in order.
    pub fn diff_many(&self, vars: &[&str]) -> MultiPoly {
        vars.iter().fold(self.clone(), |p, v| p.diff(v))
    }

    /// Replaces `var` by `value`.
    pub fn subst(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), value.clone());
        self.substitute(&map)
    }

    /// Simultaneous substitution; variables not in `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let replaced: Vec<Option<&MultiPoly>> = self.vars.iter().map(|v| map.get(v)).collect();
        if replaced.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut kept_vars: Vec<String> = Vec::new();
        for (v, r) in self.vars.iter().zip(&replaced) {
            if r.is_none() {
                kept_vars.push(v.clone());
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.vars.len()];
        let mut out = MultiPoly {
            vars: kept_vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut kept_exp = Vec::with_capacity(kept_vars.len());
            let mut factor = MultiPoly::constant(c.clone());
            for (i, &x) in e.iter().enumerate() {
                match replaced[i] {
                    None => kept_exp.push(x),
                    Some(val) if x > 0 => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(MultiPoly::one());
                        }
                        while cache.len() <= x as usize {
                            let next = cache.last().unwrap() * val;
                            cache.push(next);
                        }
                        factor = &factor * &cache[x as usize];
                    }
                    Some(_) => {}
                }
            }
            let mut mono = MultiPoly {
                vars: kept_vars.clone(),
                terms: BTreeMap::new(),
            };
            mono.add_term(kept_exp, Rational::one());
            out = &out + &(&mono * &factor);
        }
        out
    }

    /// Sets every listed variable to zero and drops it.
    pub fn set_zero(&self, vars: &[&str]) -> MultiPoly {
        let map = vars
            .iter()
            .map(|v| (v.to_string(), MultiPoly::zero()))
            .collect();
        self.substitute(&map).trim()
    }

    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match point.get(v) {
                Some(x) => vals.push(x.clone()),
                None if self.terms.keys().all(|e| e[i] == 0) => vals.push(Rational::zero()),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in vals.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Division by a polynomial monic in `var`, treating every other variable
    /// as part of the coefficient ring. Returns `(quotient, remainder)` with
    /// `degree_in(var, remainder) < degree_in(var, modulus)`.
    pub fn div_rem_monic(&self, var: &str, modulus: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let n = modulus.degree_in(var).unwrap_or(0);
        if modulus.var_index(var).is_none() || n == 0 {
            return Err(Error::UnknownVariable(var.to_string()));
        }
        if !modulus.coeff_of(var, n).trim().is_one() {
            return Err(Error::BadIndex(format!("modulus is not monic in {var}")));
        }
        let vars = Self::union_vars(&self.vars, &modulus.vars);
        let modulus = modulus.aligned(&vars);
        let vi = vars.binary_search_by(|v| v.as_str().cmp(var)).unwrap();
        let mut rem = self.aligned(&vars);
        let mut quo = MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        loop {
            let d = rem.terms.keys().map(|e| e[vi]).max().unwrap_or(0);
            if rem.is_zero() || d < n {
                break;
            }
            let mut lead = MultiPoly {
                vars: vars.clone(),
                terms: BTreeMap::new(),
            };
            for (e, c) in rem.terms.iter().filter(|(e, _)| e[vi] == d) {
                let mut ne = e.clone();
                ne[vi] -= n;
                lead.add_term(ne, c.clone());
            }
            rem = &rem - &(&lead * &modulus);
            quo = &quo + &lead;
        }
        Ok((quo, rem))
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Canonical text: terms in exponent order, `coef*var^k` factors.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let neg = is_neg(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&to_short(&abs)),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => {
                    out.push_str(&to_short(&abs));
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
        out
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        self.trim().terms_by_name() == other.trim().terms_by_name()
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    fn terms_by_name(&self) -> BTreeMap<Vec<(String, u32)>, Rational> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let key = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| (self.vars[i].clone(), x))
                    .collect();
                (key, c.clone())
            })
            .collect()
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = MultiPoly::union_vars(&self.vars, &rhs.vars);
        let mut out = self.aligned(&vars);
        let rhs = rhs.aligned(&vars);
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = MultiPoly::union_vars(&self.vars, &rhs.vars);
        let a = self.aligned(&vars);
        let b = rhs.aligned(&vars);
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        iter.fold(MultiPoly::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn t(i: usize) -> MultiPoly {
        MultiPoly::var(&format!("t_{i}"))
    }

    #[test]
    fn power_rule() {
        let p = MultiPoly::monomial(qi(1), &[("t_0", 2), ("t_2", 1)]);
        assert_eq!(
            p.diff("t_0"),
            MultiPoly::monomial(qi(2), &[("t_0", 1), ("t_2", 1)])
        );
        assert!(MultiPoly::constant(q(3, 7)).diff("t_5").is_zero());
    }

    #[test]
    fn third_derivative_of_a3_potential() {
        let phi = MultiPoly::monomial(q(-1, 2), &[("t_0", 2), ("t_2", 1)])
            + MultiPoly::monomial(q(-1, 2), &[("t_0", 1), ("t_1", 2)])
            + MultiPoly::monomial(q(-1, 4), &[("t_1", 2), ("t_2", 2)])
            + MultiPoly::monomial(q(-1, 60), &[("t_2", 5)]);
        assert_eq!(
            phi.diff_many(&["t_0", "t_0", "t_2"]),
            MultiPoly::constant(qi(-1))
        );
    }

    #[test]
    fn equality_ignores_unused_variables() {
        let a = t(0).extend_vars(&["t_9".to_string()]);
        assert_eq!(a, t(0));
        assert_ne!(t(0), t(1));
    }

    #[test]
    fn substitution_is_simultaneous() {
        // (t_0 + t_1)[t_0 -> t_1, t_1 -> t_0] = t_1 + t_0
        let p = &t(0) + &(&t(1) * &t(1));
        let mut m = BTreeMap::new();
        m.insert("t_0".to_string(), t(1));
        m.insert("t_1".to_string(), t(0));
        assert_eq!(p.substitute(&m), &t(1) + &(&t(0) * &t(0)));
    }

    #[test]
    fn monic_division() {
        // z^3 mod z^3 + 2 k_2 z + k_1
        let z = MultiPoly::var("z");
        let m = &(&z.pow(3) + &MultiPoly::monomial(qi(2), &[("k_2", 1), ("z", 1)]))
            + &MultiPoly::var("k_1");
        let (qq, r) = z.pow(3).div_rem_monic("z", &m).unwrap();
        assert_eq!(qq, MultiPoly::one());
        assert_eq!(
            r,
            -&(&MultiPoly::monomial(qi(2), &[("k_2", 1), ("z", 1)]) + &MultiPoly::var("k_1"))
        );
    }

    #[test]
    fn text_form() {
        let p = MultiPoly::monomial(q(-1, 2), &[("t_0", 2), ("t_2", 1)])
            + MultiPoly::monomial(qi(3), &[]);
        assert_eq!(p.to_text(), "-1/2*t_0^2*t_2 + 3");
    }
}
