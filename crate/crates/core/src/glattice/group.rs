use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Largest supported group order. The application needs (Z/2)^2 and its
/// subgroups; the cap keeps the cochain spaces of the cohomology engine small.
pub const MAX_GROUP_ORDER: usize = 16;

/// A finite group given by its full multiplication table.
///
/// Elements are indices into `names`; the table is validated on construction
/// (associativity, identity, inverses). Groups are plain values: two groups
/// are the same group only if their tables and element names agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Build and validate a group from its multiplication table.
    /// `mul[i][j]` is the index of `names[i] * names[j]`.
    pub fn from_mul_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Domain("a group needs at least the identity".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::Resource(format!(
                "group order {n} exceeds the supported maximum {MAX_GROUP_ORDER}"
            )));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("multiplication table must be order x order".into()));
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::Domain("multiplication table entry out of range".into()));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        let at = |i: usize, j: usize| flat[i * n + j];

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Invariant("no two-sided identity element".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| at(g, h) == identity && at(h, g) == identity) {
                return Err(Error::Invariant(format!("element {} has no inverse", names[g])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Invariant(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, mul: flat, identity })
    }

    pub fn trivial() -> Self {
        FiniteGroup { names: vec!["1".into()], mul: vec![0], identity: 0 }
    }

    /// Cyclic group of order `n`, elements named 1, g, g^2, ...
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cyclic group of order zero".into()));
        }
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_mul_table(names, mul)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity).expect("validated group")
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order())
    }

    /// The closure of a subset under multiplication, as a sorted element set.
    fn close(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(self.identity);
        loop {
            let mut grew = false;
            let current: Vec<usize> = set.iter().copied().collect();
            for &a in &current {
                for &b in &current {
                    if set.insert(self.mul(a, b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn subgroup_from_set(&self, set: &BTreeSet<usize>) -> Subgroup {
        let embedding: Vec<usize> = set.iter().copied().collect();
        let pos = |g: usize| embedding.iter().position(|&e| e == g).expect("closed set");
        let names = embedding.iter().map(|&g| self.names[g].clone()).collect();
        let mul = embedding
            .iter()
            .map(|&a| embedding.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let group = FiniteGroup::from_mul_table(names, mul).expect("closed subset of a group");
        let is_cyclic = group.is_cyclic();
        Subgroup { group, embedding, is_cyclic }
    }

    /// All subgroups, each with its inclusion into `self`, ordered by
    /// (order, element set).
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut worklist: Vec<BTreeSet<usize>> = vec![self.close(&BTreeSet::new())];
        found.insert(worklist[0].clone());
        while let Some(set) = worklist.pop() {
            for g in self.elements() {
                if set.contains(&g) {
                    continue;
                }
                let mut seed = set.clone();
                seed.insert(g);
                let closed = self.close(&seed);
                if found.insert(closed.clone()) {
                    worklist.push(closed);
                }
            }
        }
        let mut sets: Vec<BTreeSet<usize>> = found.into_iter().collect();
        sets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        sets.iter().map(|s| self.subgroup_from_set(s)).collect()
    }

    /// The cyclic subgroup generated by one element.
    pub fn cyclic_subgroup(&self, g: usize) -> Subgroup {
        let mut set = BTreeSet::new();
        set.insert(g);
        self.subgroup_from_set(&self.close(&set))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_set(&self.close(&BTreeSet::new()))
    }

    pub fn full_subgroup(&self) -> Subgroup {
        let all: BTreeSet<usize> = self.elements().collect();
        self.subgroup_from_set(&all)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

/// A subgroup presented as its own group together with the inclusion map:
/// element `i` of the subgroup is element `embedding[i]` of the parent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
    pub is_cyclic: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glattice::klein_four;

    /// Independent subgroup count: filter all subsets for closure under
    /// multiplication and inverses. Only usable for small orders.
    fn subgroup_count_by_subset_enumeration(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 8, "oracle is exponential");
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & (1 << g.identity()) == 0 {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = members.iter().all(|&a| {
                members.iter().all(|&b| mask & (1 << g.mul(a, b)) != 0)
                    && mask & (1 << g.inv(a)) != 0
            });
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn klein_four_structure() {
        let g = klein_four();
        assert_eq!(g.order(), 4);
        for x in g.elements() {
            assert_eq!(g.mul(x, x), g.identity(), "every element squares to 1");
        }
        let sa = 1;
        let sb = 2;
        let sab = 3;
        assert_eq!(g.mul(sa, sb), sab);
        assert_eq!(g.mul(sb, sa), sab);
        assert_eq!(g.name(0), "1");
        assert_eq!(g.name(sab), "sab");
    }

    #[test]
    fn klein_four_subgroups() {
        let g = klein_four();
        let subs = g.subgroups();
        assert_eq!(subs.len(), 5);
        assert_eq!(subs.len(), subgroup_count_by_subset_enumeration(&g));
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4]);
        assert_eq!(subs.iter().filter(|s| s.is_cyclic).count(), 4, "only the full group is non-cyclic");
    }

    #[test]
    fn trivial_group_subgroups() {
        assert_eq!(FiniteGroup::trivial().subgroups().len(), 1);
    }

    #[test]
    fn cyclic_four_subgroups() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let subs = g.subgroups();
        assert_eq!(subs.len(), subgroup_count_by_subset_enumeration(&g));
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| s.is_cyclic));
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for g in [klein_four(), FiniteGroup::cyclic(6).unwrap()] {
            for sub in g.subgroups() {
                let h = &sub.group;
                for a in h.elements() {
                    for b in h.elements() {
                        assert_eq!(
                            sub.embedding[h.mul(a, b)],
                            g.mul(sub.embedding[a], sub.embedding[b])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        // Left identity only.
        let r = FiniteGroup::from_mul_table(
            vec!["1".into(), "x".into()],
            vec![vec![0, 1], vec![1, 0]],
        );
        assert!(r.is_ok(), "Z/2 is fine");
        let r = FiniteGroup::from_mul_table(
            vec!["1".into(), "x".into()],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(r.is_err(), "non-group table must be rejected");
        let r = FiniteGroup::from_mul_table(vec!["1".into()], vec![vec![3]]);
        assert!(r.is_err(), "out of range entry");
    }

    #[test]
    fn order_cap_enforced() {
        let n = MAX_GROUP_ORDER + 1;
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        assert!(matches!(FiniteGroup::from_mul_table(names, mul), Err(Error::Resource(_))));
    }

    #[test]
    fn element_orders() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(3), 2);
        assert!(g.is_cyclic());
        assert!(!klein_four().is_cyclic());
    }
}
