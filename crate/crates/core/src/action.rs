//! Binary actions and ordinary actions of a finite group on a finite carrier.

use std::sync::Arc;

use crate::binop::BinaryOp;
use crate::group::{FiniteGroup, GroupError};
use crate::subset::{Subset, MAX_ELEMENTS};
use crate::TheoremViolation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("entry g={g} x={x} y={y} is {value}, out of range for carrier {carrier}")]
    EntryOutOfRange { g: usize, x: usize, y: usize, value: usize, carrier: usize },
    #[error("identity axiom violated at x={x} y={y}: e(x, y) = {got}")]
    AxiomTwoViolated { x: usize, y: usize, got: usize },
    #[error("composition axiom violated at g={g} h={h} x={x} y={y}: (gh)(x, y) = {lhs} but g(x, h(x, y)) = {rhs}")]
    AxiomOneViolated { g: usize, h: usize, x: usize, y: usize, lhs: usize, rhs: usize },
    #[error("ordinary action identity axiom violated at x={x}")]
    OrdinaryIdentityViolated { x: usize },
    #[error("ordinary action composition axiom violated at g={g} h={h} x={x}")]
    OrdinaryCompositionViolated { g: usize, h: usize, x: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(#[from] GroupError),
    #[error("map is not biequivariant: {0}")]
    NotBiequivariant(MapViolation),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

/// A tuple `(g, h, x, x', x'')` at which `g(h(x,x'), h(x,x'')) != h(x, g(x',x''))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributivityViolation {
    pub g: usize,
    pub h: usize,
    pub x: usize,
    pub x1: usize,
    pub x2: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl std::fmt::Display for DistributivityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "g={} h={} x={} x'={} x''={}: g(h(x,x'),h(x,x'')) = {} but h(x,g(x',x'')) = {}",
            self.g, self.h, self.x, self.x1, self.x2, self.lhs, self.rhs
        )
    }
}

/// A triple `(g, x, x')` at which a carrier map fails `f(g(x,x')) = g(f(x),f(x'))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapViolation {
    pub g: usize,
    pub x: usize,
    pub y: usize,
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "g={} x={} x'={}", self.g, self.x, self.y)
    }
}

/// A validated binary action; `get(g, x, y)` is `g(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryAction {
    group: Arc<FiniteGroup>,
    carrier: usize,
    // index (g * carrier + x) * carrier + y
    table: Vec<usize>,
}

impl BinaryAction {
    /// Validates a nested table `table[g][x][y]`.
    pub fn new(group: Arc<FiniteGroup>, table: &[Vec<Vec<usize>>]) -> Result<Self, ActionError> {
        if table.len() != group.order() {
            return Err(ActionError::ShapeMismatch(format!(
                "table has {} slices for a group of order {}",
                table.len(),
                group.order()
            )));
        }
        let carrier = table.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(group.order() * carrier * carrier);
        for (g, slice) in table.iter().enumerate() {
            if slice.len() != carrier {
                return Err(ActionError::ShapeMismatch(format!(
                    "slice {g} has {} rows, expected {carrier}",
                    slice.len()
                )));
            }
            for (x, row) in slice.iter().enumerate() {
                if row.len() != carrier {
                    return Err(ActionError::ShapeMismatch(format!(
                        "slice {g} row {x} has length {}, expected {carrier}",
                        row.len()
                    )));
                }
                flat.extend_from_slice(row);
            }
        }
        Self::from_flat(group, carrier, flat)
    }

    /// Validates a flat table indexed `(g * carrier + x) * carrier + y`.
    ///
    /// The identity axiom is checked before the composition axiom; each reports
    /// its lexicographically first violation.
    pub fn from_flat(group: Arc<FiniteGroup>, carrier: usize, table: Vec<usize>) -> Result<Self, ActionError> {
        if carrier == 0 || carrier > MAX_ELEMENTS {
            return Err(ActionError::ShapeMismatch(format!("carrier size {carrier} must be in 1..={MAX_ELEMENTS}")));
        }
        let n = carrier;
        if table.len() != group.order() * n * n {
            return Err(ActionError::ShapeMismatch(format!(
                "table has {} entries, expected {}",
                table.len(),
                group.order() * n * n
            )));
        }
        if let Some(i) = table.iter().position(|&v| v >= n) {
            return Err(ActionError::EntryOutOfRange {
                g: i / (n * n),
                x: i / n % n,
                y: i % n,
                value: table[i],
                carrier: n,
            });
        }
        let a = BinaryAction { group, carrier, table };
        let e = a.group.identity();
        for x in 0..n {
            for y in 0..n {
                let got = a.get(e, x, y);
                if got != y {
                    return Err(ActionError::AxiomTwoViolated { x, y, got });
                }
            }
        }
        for g in a.group.elements() {
            for h in a.group.elements() {
                let gh = a.group.mul(g, h);
                for x in 0..n {
                    for y in 0..n {
                        let lhs = a.get(gh, x, y);
                        let rhs = a.get(g, x, a.get(h, x, y));
                        if lhs != rhs {
                            return Err(ActionError::AxiomOneViolated { g, h, x, y, lhs, rhs });
                        }
                    }
                }
            }
        }
        Ok(a)
    }

    /// The action `g(x, y) = y` of any group.
    pub fn trivial(group: Arc<FiniteGroup>, carrier: usize) -> Self {
        let table = (0..group.order() * carrier).flat_map(|_| 0..carrier).collect();
        Self::from_flat(group, carrier, table).expect("trivial action satisfies the axioms")
    }

    /// Embeds an ordinary action as `g(x, y) = g y`.
    pub fn from_ordinary(o: &OrdinaryAction) -> Self {
        let n = o.carrier;
        let table =
            o.group.elements().flat_map(|g| (0..n).flat_map(move |_| (0..n).map(move |y| o.get(g, y)))).collect();
        Self::from_flat(o.group.clone(), n, table).expect("embedding of an ordinary action is a binary action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn get(&self, g: usize, x: usize, y: usize) -> usize {
        self.table[(g * self.carrier + x) * self.carrier + y]
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }

    pub fn nested_table(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.carrier;
        self.table.chunks(n * n).map(|slice| slice.chunks(n).map(<[usize]>::to_vec).collect()).collect()
    }

    /// The operation `alpha_g`.
    pub fn slice(&self, g: usize) -> BinaryOp {
        let nn = self.carrier * self.carrier;
        BinaryOp::from_flat(self.carrier, self.table[g * nn..(g + 1) * nn].to_vec())
    }

    /// First violation of distributivity in lexicographic `(g, h, x, x', x'')` order.
    pub fn distributivity_violation(&self) -> Option<DistributivityViolation> {
        let n = self.carrier;
        for g in self.group.elements() {
            for h in self.group.elements() {
                for x in 0..n {
                    for x1 in 0..n {
                        let hx1 = self.get(h, x, x1);
                        for x2 in 0..n {
                            let lhs = self.get(g, hx1, self.get(h, x, x2));
                            let rhs = self.get(h, x, self.get(g, x1, x2));
                            if lhs != rhs {
                                return Some(DistributivityViolation { g, h, x, x1, x2, lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_violation().is_none()
    }

    /// The ordinary action `alpha_t(g, x) = g(t, x)`.
    pub fn induced_action(&self, t: usize) -> Result<OrdinaryAction, ActionError> {
        if t >= self.carrier {
            return Err(ActionError::ShapeMismatch(format!("point {t} out of range for carrier {}", self.carrier)));
        }
        let n = self.carrier;
        let table = self.group.elements().flat_map(|g| (0..n).map(move |x| self.get(g, t, x))).collect();
        OrdinaryAction::from_flat(self.group.clone(), n, table)
            .map_err(|e| TheoremViolation::new("induced actions are actions", format!("point {t}: {e}")).into())
    }

    /// The slices `g -> alpha_g`, re-checking `alpha_g * alpha_h = alpha_gh`.
    pub fn morphism_to_monoid(&self) -> Result<Vec<BinaryOp>, TheoremViolation> {
        let slices: Vec<BinaryOp> = self.group.elements().map(|g| self.slice(g)).collect();
        for g in self.group.elements() {
            for h in self.group.elements() {
                let product = slices[g].star(&slices[h]).expect("same carrier");
                if product != slices[self.group.mul(g, h)] {
                    return Err(TheoremViolation::new("g -> alpha_g is a homomorphism", format!("g={g} h={h}")));
                }
            }
        }
        Ok(slices)
    }

    /// Relabels the carrier by the bijection `sigma`: the result `b` satisfies
    /// `b(g, sigma x, sigma y) = sigma(a(g, x, y))`.
    pub fn relabel(&self, sigma: &[usize]) -> BinaryAction {
        let n = self.carrier;
        debug_assert_eq!(sigma.len(), n);
        let mut table = vec![0; self.table.len()];
        for g in self.group.elements() {
            for x in 0..n {
                for y in 0..n {
                    table[(g * n + sigma[x]) * n + sigma[y]] = sigma[self.get(g, x, y)];
                }
            }
        }
        BinaryAction { group: self.group.clone(), carrier: n, table }
    }

    /// First violation of `f(g(x,y)) = g(f(x), f(y))` for `f: self -> other`,
    /// in lexicographic `(g, x, y)` order.
    pub fn biequivariance_violation(
        &self,
        other: &BinaryAction,
        f: &[usize],
    ) -> Result<Option<MapViolation>, ActionError> {
        if self.group != other.group {
            return Err(ActionError::ShapeMismatch("actions are over different groups".into()));
        }
        check_map(f, self.carrier, other.carrier)?;
        let n = self.carrier;
        for g in self.group.elements() {
            for x in 0..n {
                for y in 0..n {
                    if f[self.get(g, x, y)] != other.get(g, f[x], f[y]) {
                        return Ok(Some(MapViolation { g, x, y }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_biequivariant(&self, other: &BinaryAction, f: &[usize]) -> Result<bool, ActionError> {
        Ok(self.biequivariance_violation(other, f)?.is_none())
    }

    /// All biequivariant maps `self -> other` in lexicographic order.
    pub fn biequivariant_maps(&self, other: &BinaryAction) -> Result<Vec<Vec<usize>>, ActionError> {
        if self.group != other.group {
            return Err(ActionError::ShapeMismatch("actions are over different groups".into()));
        }
        Ok(all_maps(self.carrier, other.carrier)
            .filter(|f| matches!(self.biequivariance_violation(other, f), Ok(None)))
            .collect())
    }

    /// Checks that a biequivariant `f` is equivariant from `alpha_t` to
    /// `beta_f(t)` for every point `t`.
    pub fn check_biequivariance_implies_equivariance(
        &self,
        other: &BinaryAction,
        f: &[usize],
    ) -> Result<(), ActionError> {
        if let Some(v) = self.biequivariance_violation(other, f)? {
            return Err(ActionError::NotBiequivariant(v));
        }
        for t in 0..self.carrier {
            let source = self.induced_action(t)?;
            let target = other.induced_action(f[t])?;
            if let Some((g, x)) = source.equivariance_violation(&target, f)? {
                return Err(TheoremViolation::new(
                    "biequivariant maps are equivariant for induced actions",
                    format!("t={t} g={g} x={x}"),
                )
                .into());
            }
        }
        Ok(())
    }
}

/// A left action `table[g][x] = g x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinaryAction {
    group: Arc<FiniteGroup>,
    carrier: usize,
    table: Vec<usize>,
}

impl OrdinaryAction {
    pub fn new(group: Arc<FiniteGroup>, table: &[Vec<usize>]) -> Result<Self, ActionError> {
        if table.len() != group.order() {
            return Err(ActionError::ShapeMismatch(format!(
                "table has {} rows for a group of order {}",
                table.len(),
                group.order()
            )));
        }
        let carrier = table.first().map_or(0, Vec::len);
        if let Some(g) = table.iter().position(|r| r.len() != carrier) {
            return Err(ActionError::ShapeMismatch(format!("row {g} has the wrong length")));
        }
        Self::from_flat(group, carrier, table.concat())
    }

    pub fn from_flat(group: Arc<FiniteGroup>, carrier: usize, table: Vec<usize>) -> Result<Self, ActionError> {
        let n = carrier;
        if n == 0 || n > MAX_ELEMENTS || table.len() != group.order() * n {
            return Err(ActionError::ShapeMismatch(format!(
                "ordinary action table of {} entries for group order {} and carrier {n}",
                table.len(),
                group.order()
            )));
        }
        if let Some(i) = table.iter().position(|&v| v >= n) {
            return Err(ActionError::EntryOutOfRange { g: i / n, x: i % n, y: i % n, value: table[i], carrier: n });
        }
        let o = OrdinaryAction { group, carrier, table };
        let e = o.group.identity();
        if let Some(x) = (0..n).find(|&x| o.get(e, x) != x) {
            return Err(ActionError::OrdinaryIdentityViolated { x });
        }
        for g in o.group.elements() {
            for h in o.group.elements() {
                let gh = o.group.mul(g, h);
                if let Some(x) = (0..n).find(|&x| o.get(gh, x) != o.get(g, o.get(h, x))) {
                    return Err(ActionError::OrdinaryCompositionViolated { g, h, x });
                }
            }
        }
        Ok(o)
    }

    pub fn trivial(group: Arc<FiniteGroup>, carrier: usize) -> Self {
        let table = (0..group.order()).flat_map(|_| 0..carrier).collect();
        Self::from_flat(group, carrier, table).expect("trivial action")
    }

    /// Left translation of the group on itself.
    pub fn left_translation(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let table = (0..n).flat_map(|g| (0..n).map(|x| group.mul(g, x)).collect::<Vec<_>>()).collect();
        Self::from_flat(group, n, table).expect("left translation is an action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn get(&self, g: usize, x: usize) -> usize {
        self.table[g * self.carrier + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.carrier).map(<[usize]>::to_vec).collect()
    }

    /// The permutation of the carrier by which `g` acts.
    pub fn row(&self, g: usize) -> &[usize] {
        &self.table[g * self.carrier..(g + 1) * self.carrier]
    }

    /// First `(g, x)` with `f(g x) != g f(x)`.
    pub fn equivariance_violation(
        &self,
        other: &OrdinaryAction,
        f: &[usize],
    ) -> Result<Option<(usize, usize)>, ActionError> {
        if self.group != other.group {
            return Err(ActionError::ShapeMismatch("actions are over different groups".into()));
        }
        check_map(f, self.carrier, other.carrier)?;
        for g in self.group.elements() {
            for x in 0..self.carrier {
                if f[self.get(g, x)] != other.get(g, f[x]) {
                    return Ok(Some((g, x)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_equivariant(&self, other: &OrdinaryAction, f: &[usize]) -> Result<bool, ActionError> {
        Ok(self.equivariance_violation(other, f)?.is_none())
    }
}

/// The action `h(x, y) = x h x^-1 y` of a subgroup `H` on its ambient group.
///
/// The acting group is `H` re-indexed densely; `embedding[i]` is the element
/// of the ambient group that local element `i` stands for.
#[derive(Debug, Clone)]
pub struct ConjugationCosetAction {
    pub action: BinaryAction,
    pub embedding: Vec<usize>,
}

impl ConjugationCosetAction {
    pub fn new(ambient: &FiniteGroup, subgroup: Subset) -> Result<Self, ActionError> {
        let (sub, embedding) = ambient.restrict(subgroup)?;
        let n = ambient.order();
        let mut table = Vec::with_capacity(sub.order() * n * n);
        for &h in &embedding {
            for x in 0..n {
                let conj = ambient.mul(ambient.mul(x, h), ambient.inv(x));
                table.extend((0..n).map(|y| ambient.mul(conj, y)));
            }
        }
        let action = BinaryAction::from_flat(Arc::new(sub), n, table)
            .map_err(|e| TheoremViolation::new("conjugation-coset construction is a binary action", e.to_string()))?;
        Ok(ConjugationCosetAction { action, embedding })
    }

    /// The left coset `x H` as a carrier subset.
    pub fn left_coset(&self, ambient: &FiniteGroup, x: usize) -> Subset {
        self.embedding.iter().map(|&h| ambient.mul(x, h)).collect()
    }
}

fn check_map(f: &[usize], domain: usize, codomain: usize) -> Result<(), ActionError> {
    if f.len() != domain {
        return Err(ActionError::ShapeMismatch(format!("map has {} entries for a carrier of size {domain}", f.len())));
    }
    if let Some(&v) = f.iter().find(|&&v| v >= codomain) {
        return Err(ActionError::ShapeMismatch(format!("map value {v} out of range for codomain of size {codomain}")));
    }
    Ok(())
}

/// Every map `0..domain -> 0..codomain` in lexicographic order.
pub fn all_maps(domain: usize, codomain: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (codomain as u64).checked_pow(domain as u32).expect("too many maps");
    (0..total).map(move |mut code| {
        let mut f = vec![0; domain];
        for slot in f.iter_mut().rev() {
            *slot = (code % codomain as u64) as usize;
            code /= codomain as u64;
        }
        f
    })
}
