//! Finite groups given by Cayley tables.
//!
//! Elements are the dense indices `0..order`. A [`FiniteGroup`] is only ever
//! built through [`FiniteGroup::from_cayley`], which checks the group axioms
//! eagerly; everything downstream relies on them.

use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<usize>),
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    // Row-major: cayley[a * order + b] = ab.
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square Cayley table and computes identity and inverses.
    ///
    /// Checks run in the order shape, identity, inverses, associativity, so
    /// the reported error is the first failing axiom.
    pub fn from_cayley(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::MalformedTable("table is empty".into()));
        }
        if order > MAX_ELEMENTS {
            return Err(GroupError::TooLarge { order, max: MAX_ELEMENTS });
        }
        let mut cayley = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::MalformedTable(format!(
                    "row {a} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::MalformedTable(format!(
                        "entry [{a}][{b}] = {v} is out of range 0..{order}"
                    )));
                }
            }
            cayley.extend_from_slice(row);
        }
        let mul = |a: usize, b: usize| cayley[a * order + b];

        let identity =
            (0..order).find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a)).ok_or(GroupError::NoIdentity)?;

        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv =
                (0..order).find(|&b| mul(a, b) == identity && mul(b, a) == identity).ok_or(GroupError::NoInverse(a))?;
            inverse.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }

        Ok(FiniteGroup { order, cayley, identity, inverse })
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, cayley: vec![0], identity: 0, inverse: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.order)
    }

    /// The Cayley table as nested rows.
    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.cayley.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Order of the element `a`, i.e. the least `k >= 1` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `generators`.
    ///
    /// Closure under products suffices: in a finite group every inverse is a
    /// positive power.
    pub fn subgroup_closure(&self, generators: &[usize]) -> Result<Subset, GroupError> {
        for &g in generators {
            self.check_element(g)?;
        }
        let mut closed = Subset::singleton(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in generators {
                let ag = self.mul(a, g);
                if !closed.contains(ag) {
                    closed.insert(ag);
                    frontier.push(ag);
                }
            }
        }
        Ok(closed)
    }

    pub fn is_subgroup(&self, elems: Subset) -> bool {
        elems.contains(self.identity)
            && elems.iter().all(|a| {
                self.inv(a) < self.order
                    && elems.contains(self.inv(a))
                    && elems.iter().all(|b| elems.contains(self.mul(a, b)))
            })
    }

    /// Restricts the table to a subgroup, re-indexing its elements densely in
    /// increasing order. Returns the subgroup and its embedding into `self`.
    pub fn restrict(&self, elems: Subset) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if elems.iter().any(|a| a >= self.order) || !self.is_subgroup(elems) {
            return Err(GroupError::NotASubgroup(elems.to_vec()));
        }
        let embedding = elems.to_vec();
        let local = |g: usize| embedding.binary_search(&g).expect("closed under product");
        let rows: Vec<Vec<usize>> =
            embedding.iter().map(|&a| embedding.iter().map(|&b| local(self.mul(a, b))).collect()).collect();
        let sub = FiniteGroup::from_cayley(&rows)?;
        Ok((sub, embedding))
    }

    /// A generating set of minimum size (searched up to size 3, greedy beyond).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let all = self.all();
        if self.order == 1 {
            return Vec::new();
        }
        let generates = |gens: &[usize]| self.subgroup_closure(gens).map(|s| s == all).unwrap_or(false);
        let n = self.order;
        for a in 0..n {
            if generates(&[a]) {
                return vec![a];
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if generates(&[a, b]) {
                    return vec![a, b];
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if generates(&[a, b, c]) {
                        return vec![a, b, c];
                    }
                }
            }
        }
        let mut gens = Vec::new();
        let mut reached = Subset::singleton(self.identity);
        for a in 0..n {
            if !reached.contains(a) {
                gens.push(a);
                reached = self.subgroup_closure(&gens).expect("in range");
            }
        }
        gens
    }

    fn check_element(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { element: g, order: self.order })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_cayley(&rows).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_cayley(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        assert_eq!(g, FiniteGroup::trivial());
    }

    #[test]
    fn z2_is_an_involution() {
        let g = FiniteGroup::from_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn identity_need_not_be_zero() {
        let g = FiniteGroup::from_cayley(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(matches!(FiniteGroup::from_cayley(&[]), Err(GroupError::MalformedTable(_))));
        assert!(matches!(FiniteGroup::from_cayley(&[vec![0, 1], vec![1]]), Err(GroupError::MalformedTable(_))));
        assert!(matches!(FiniteGroup::from_cayley(&[vec![0, 2], vec![1, 0]]), Err(GroupError::MalformedTable(_))));
    }

    #[test]
    fn rejects_non_groups() {
        // Constant table: no identity.
        assert_eq!(FiniteGroup::from_cayley(&[vec![0, 0], vec![0, 0]]), Err(GroupError::NoIdentity));
        // Identity 0, but 1*1 = 1 so 1 has no inverse.
        assert_eq!(FiniteGroup::from_cayley(&[vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        // Latin square with identity and inverses that is not associative:
        // the loop of order 5 with 1*1 = 2, 1*2 = 3, ...
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley(&loop5), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn closure_of_cyclic_generators() {
        let z6 = z(6);
        assert_eq!(z6.subgroup_closure(&[]).unwrap(), Subset::singleton(0));
        assert_eq!(z6.subgroup_closure(&[2]).unwrap().to_vec(), vec![0, 2, 4]);
        assert_eq!(z6.subgroup_closure(&[2, 3]).unwrap(), z6.all());
        assert!(z6.subgroup_closure(&[6]).is_err());
    }

    #[test]
    fn restrict_reindexes_densely() {
        let z6 = z(6);
        let (sub, emb) = z6.restrict(Subset::from_iter([0, 3])).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(emb, vec![0, 3]);
        assert_eq!(sub.mul(1, 1), 0);
        assert!(z6.restrict(Subset::from_iter([0, 1])).is_err());
    }

    #[test]
    fn generating_sets_are_small() {
        assert_eq!(z(1).small_generating_set(), Vec::<usize>::new());
        assert_eq!(z(6).small_generating_set(), vec![1]);
        assert_eq!(z(6).element_order(2), 3);
    }
}
