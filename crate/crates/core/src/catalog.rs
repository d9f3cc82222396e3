//! Named small groups, built from permutations or modular arithmetic.
//!
//! Permutations compose right to left: `(p * q)(i) = p(q(i))`. Labels use
//! 1-based cycle notation with `e` for the identity.

use crate::group::FiniteGroup;
use crate::subset::MAX_ELEMENTS;

/// A permutation of `0..n` as its image vector.
pub type Permutation = Vec<usize>;

/// A group realized by permutations of a point set, elements sorted
/// lexicographically by image vector.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: FiniteGroup,
    pub elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closes `generators` (all of the same degree) under composition.
    pub fn generated_by(degree: usize, generators: &[Permutation]) -> Self {
        let identity: Permutation = (0..degree).collect();
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for s in generators {
                let p = compose(s, &elements[i]);
                if !elements.contains(&p) {
                    elements.push(p);
                    assert!(elements.len() <= MAX_ELEMENTS, "permutation group too large");
                }
            }
            i += 1;
        }
        elements.sort();
        let index = |p: &Permutation| elements.binary_search(p).expect("closed");
        let rows: Vec<Vec<usize>> =
            elements.iter().map(|p| elements.iter().map(|q| index(&compose(p, q))).collect()).collect();
        let group = FiniteGroup::from_cayley(&rows).expect("permutations form a group");
        PermutationGroup { group, elements }
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }

    /// Element index of the permutation written in 1-based cycle notation,
    /// e.g. `"(12)"` or `"(123)"`.
    pub fn element(&self, cycles: &str) -> Option<usize> {
        let degree = self.elements[0].len();
        self.index_of(&parse_cycles(degree, cycles)?)
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|p| cycle_notation(p)).collect()
    }
}

pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Permutation = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

fn parse_cycles(degree: usize, s: &str) -> Option<Permutation> {
    let mut p: Permutation = (0..degree).collect();
    let s = s.trim();
    if s == "e" {
        return Some(p);
    }
    for cycle in s.split(')').filter(|c| !c.trim().is_empty()) {
        let points: Vec<usize> = cycle
            .trim()
            .strip_prefix('(')?
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?;
        if points.iter().any(|&d| d == 0 || d > degree) {
            return None;
        }
        for (k, &a) in points.iter().enumerate() {
            p[a - 1] = points[(k + 1) % points.len()] - 1;
        }
    }
    Some(p)
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_cayley(&rows).expect("cyclic group")
}

/// Direct product with elements `(a, b)` indexed as `a * |right| + b`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> FiniteGroup {
    let m = right.order();
    let n = left.order() * m;
    let rows: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).map(|y| left.mul(x / m, y / m) * m + right.mul(x % m, y % m)).collect()).collect();
    FiniteGroup::from_cayley(&rows).expect("direct product of groups")
}

pub fn symmetric(n: usize) -> PermutationGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Permutation = (0..n).collect();
        swap.swap(0, 1);
        gens.push(swap);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    PermutationGroup::generated_by(n, &gens)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermutationGroup {
    let rotation: Permutation = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Permutation = (0..n).map(|i| (n - i) % n).collect();
    PermutationGroup::generated_by(n, &[rotation, reflection])
}

/// Quaternion group Q8 in its regular representation.
pub fn quaternion() -> FiniteGroup {
    // Elements 1, i, j, k, -1, -i, -j, -k as (sign, unit), index = 4 * sign + unit.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = UNIT[a % 4][b % 4];
                    4 * ((s + a / 4 + b / 4) % 2) + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(&rows).expect("quaternion group")
}

/// Looks up a group by name: `trivial`, `zN`, `v4`, `sN`, `dN` (order 2N),
/// `q8`, or a product such as `z2xz4`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let name = name.trim().to_ascii_lowercase();
    if name.contains('x') {
        let mut factors = name.split('x').map(by_name);
        let first = factors.next()??;
        return factors.try_fold(first, |acc, f| Some(direct_product(&acc, &f?)));
    }
    let number = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
    match name.as_str() {
        "trivial" | "1" => return Some(FiniteGroup::trivial()),
        "v4" | "klein" => return Some(direct_product(&cyclic(2), &cyclic(2))),
        "q8" => return Some(quaternion()),
        _ => {}
    }
    if let Some(n) = number("z").filter(|&n| (1..=MAX_ELEMENTS).contains(&n)) {
        return Some(cyclic(n));
    }
    if let Some(n) = number("s").filter(|&n| (1..=4).contains(&n)) {
        return Some(symmetric(n).group);
    }
    if let Some(n) = number("d").filter(|&n| (3..=32).contains(&n)) {
        return Some(dihedral(n).group);
    }
    None
}

/// One representative of every isomorphism class of groups of order
/// `<= max_order`, for `max_order <= 8`.
pub fn small_groups(max_order: usize) -> Vec<(&'static str, FiniteGroup)> {
    assert!(max_order <= 8, "catalog only covers orders up to 8");
    const NAMES: [(&str, usize); 14] = [
        ("trivial", 1),
        ("z2", 2),
        ("z3", 3),
        ("z4", 4),
        ("v4", 4),
        ("z5", 5),
        ("z6", 6),
        ("s3", 6),
        ("z7", 7),
        ("z8", 8),
        ("z2xz4", 8),
        ("z2xz2xz2", 8),
        ("d4", 8),
        ("q8", 8),
    ];
    NAMES
        .iter()
        .filter(|(_, order)| *order <= max_order)
        .map(|&(name, _)| (name, by_name(name).expect("catalog name")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_has_three_involutions() {
        // Oracle: compose permutations directly instead of going through the table.
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let identity: Permutation = vec![0, 1, 2];
        let involutions = perms.iter().filter(|p| **p != identity && compose(p, p) == identity).count();
        assert_eq!(involutions, 3);

        let s3 = symmetric(3);
        assert_eq!(s3.group.order(), 6);
        let order_two = s3.group.elements().filter(|&a| s3.group.element_order(a) == 2).count();
        assert_eq!(order_two, involutions);
        for (a, p) in s3.elements.iter().enumerate() {
            for (b, q) in s3.elements.iter().enumerate() {
                assert_eq!(s3.elements[s3.group.mul(a, b)], compose(p, q));
            }
        }
    }

    #[test]
    fn cycle_notation_round_trips() {
        let s3 = symmetric(3);
        for (i, label) in s3.labels().iter().enumerate() {
            assert_eq!(s3.element(label), Some(i), "{label}");
        }
        assert_eq!(cycle_notation(&[1, 2, 0]), "(123)");
        assert_eq!(s3.element("(1 2)"), s3.element("(12)"));
        assert_eq!(s3.element("(14)"), None);
    }

    #[test]
    fn s3_subgroups_from_cycle_generators() {
        let s3 = symmetric(3);
        let c3 = s3.element("(123)").unwrap();
        let t = s3.element("(12)").unwrap();
        assert_eq!(s3.group.subgroup_closure(&[c3]).unwrap().len(), 3);
        assert_eq!(s3.group.subgroup_closure(&[t, c3]).unwrap().len(), 6);
    }

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = small_groups(8).iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        // The two order-4 and five order-8 representatives are pairwise distinguished
        // by their element-order profile.
        let profile = |g: &FiniteGroup| {
            let mut v: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
            v.sort();
            v
        };
        let groups = small_groups(8);
        for (i, (_, a)) in groups.iter().enumerate() {
            for (_, b) in &groups[i + 1..] {
                if a.order() == b.order() {
                    let abelian =
                        |g: &FiniteGroup| g.elements().all(|x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)));
                    assert!(profile(a) != profile(b) || abelian(a) != abelian(b));
                }
            }
        }
        assert_eq!(by_name("d3").unwrap().order(), 6);
        assert!(by_name("nonsense").is_none());
    }
}
