//! Finite groups given by multiplication tables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Index of a group element in its multiplication table.
pub type Elem = usize;

/// Largest table accepted by [`symmetric_group`] (|S_6| = 720).
pub const MAX_SYMMETRIC_ORDER: usize = 720;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<Elem>>,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates the group axioms by exhaustion.
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NotAGroup(format!(
                "row {i} has length {} != {n}",
                row.len()
            )));
        }
        if let Some(bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        cyclic_group(1).expect("order 1")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `g m g^{-1}`.
    #[inline]
    pub fn conj(&self, g: Elem, m: Elem) -> Elem {
        self.mul(self.mul(g, m), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Ordered product of a sequence.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// Conjugacy classes, each sorted, listed by smallest member. The class
    /// of the identity comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        let mut order: Vec<Elem> = vec![self.identity];
        order.extend(self.elements().filter(|&x| x != self.identity));
        for m in order {
            if seen[m] {
                continue;
            }
            let class: BTreeSet<Elem> = self.elements().map(|g| self.conj(g, m)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }
}

/// Z/nZ with element `k` standing for `g^k`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::NotAGroup("cyclic group of order 0".into()));
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroup::from_table(table)
}

/// S_n on permutations of `0..n`, listed in lexicographic order (identity first).
/// Composition is `(s * t)(i) = s(t(i))`.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    symmetric_group_with_perms(n).map(|(g, _)| g)
}

/// Like [`symmetric_group`], also returning the permutation of each element.
pub fn symmetric_group_with_perms(n: usize) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    let order: u128 = (1..=n as u128).product();
    if n == 0 || order > MAX_SYMMETRIC_ORDER as u128 {
        return Err(Error::SizeLimit {
            what: format!("symmetric group S_{n}"),
            size: order,
            limit: MAX_SYMMETRIC_ORDER as u128,
        });
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                    index(&st)
                })
                .collect()
        })
        .collect();
    Ok((FiniteGroup::from_table(table)?, perms))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_z2() {
        let t = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(t.conjugacy_classes(), vec![vec![0]]);
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.identity(), 0);
        assert!(z2.is_abelian());
        assert_eq!(z2.conjugacy_classes(), vec![vec![0], vec![1]]);
        assert_eq!(cyclic_group(2).unwrap(), z2);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NotAGroup(_))
        ));
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1]]).is_err());
        // Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(
            matches!(FiniteGroup::from_table(t), Err(Error::NotAGroup(m)) if m.contains("associativity"))
        );
    }

    #[test]
    fn s3_classes() {
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn symmetric_guard() {
        assert!(symmetric_group(6).is_ok());
        assert!(matches!(symmetric_group(7), Err(Error::SizeLimit { .. })));
    }
}
