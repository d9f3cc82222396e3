//! Bi-invariant sets, orbits and orbit spaces.
//!
//! For subsets `K` of the group and `A`, `B` of the carrier,
//! `K(A, B) = { g(a, b) : g in K, a in A, b in B }`. A set is bi-invariant when
//! `G(A, A) = A`, and the orbit of `x` is the least bi-invariant set containing
//! it. For distributive actions the orbit is `G(x, x)` and orbits partition
//! the carrier; for other actions orbits may overlap without coinciding, and
//! no orbit space is built.

use serde::Serialize;

use crate::action::{ActionError, BinaryAction};
use crate::subset::Subset;
use crate::TheoremViolation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("action is not distributive ({0}); use minimal_bi_invariant instead")]
    NotDistributive(String),
    #[error("map is not biequivariant: {0}")]
    NotBiequivariant(String),
    #[error("index {index} out of range 0..{bound}")]
    OutOfRange { index: usize, bound: usize },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

pub fn k_set(a: &BinaryAction, k: Subset, left: Subset, right: Subset) -> Subset {
    let mut out = Subset::EMPTY;
    for g in k.iter().filter(|&g| g < a.group().order()) {
        for x in left.iter() {
            for y in right.iter() {
                out.insert(a.get(g, x, y));
            }
        }
    }
    out
}

/// `G(A, A)`.
pub fn g_image(a: &BinaryAction, set: Subset) -> Subset {
    k_set(a, a.group().all(), set, set)
}

pub fn is_bi_invariant(a: &BinaryAction, set: Subset) -> bool {
    g_image(a, set) == set
}

/// Least bi-invariant set containing `x`.
pub fn minimal_bi_invariant(a: &BinaryAction, x: usize) -> Subset {
    *minimal_bi_invariant_trace(a, x).last().expect("trace is non-empty")
}

/// The iterates `{x}, G(S,S), G(G(S,S),G(S,S)), ...` up to and including the
/// first repeated value. Since `e(s, s') = s'`, every step contains the last.
pub fn minimal_bi_invariant_trace(a: &BinaryAction, x: usize) -> Vec<Subset> {
    let mut trace = vec![Subset::singleton(x)];
    loop {
        let current = *trace.last().unwrap();
        let next = g_image(a, current);
        if next == current {
            return trace;
        }
        trace.push(next);
    }
}

fn require_distributive(a: &BinaryAction) -> Result<(), OrbitError> {
    match a.distributivity_violation() {
        Some(v) => Err(OrbitError::NotDistributive(v.to_string())),
        None => Ok(()),
    }
}

fn check_point(a: &BinaryAction, x: usize) -> Result<(), OrbitError> {
    if x < a.carrier() {
        Ok(())
    } else {
        Err(OrbitError::OutOfRange { index: x, bound: a.carrier() })
    }
}

/// `G(x, x)`, the orbit of `x` in a distributive action.
pub fn orbit(a: &BinaryAction, x: usize) -> Result<Subset, OrbitError> {
    check_point(a, x)?;
    require_distributive(a)?;
    Ok(orbit_unchecked(a, x))
}

fn orbit_unchecked(a: &BinaryAction, x: usize) -> Subset {
    a.group().elements().map(|g| a.get(g, x, x)).collect()
}

/// The partition of a distributive carrier into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSpace {
    carrier: usize,
    classes: Vec<Subset>,
    projection: Vec<usize>,
}

impl OrbitSpace {
    /// Builds the orbit partition, re-checking that orbits are disjoint or
    /// equal and that every class is the orbit of each of its members.
    pub fn new(a: &BinaryAction) -> Result<Self, OrbitError> {
        require_distributive(a)?;
        let n = a.carrier();
        let orbits: Vec<Subset> = (0..n).map(|x| orbit_unchecked(a, x)).collect();
        for x in 0..n {
            for y in x + 1..n {
                let (ox, oy) = (orbits[x], orbits[y]);
                if ox != oy && !ox.is_disjoint(oy) {
                    return Err(TheoremViolation::new(
                        "distributive orbits are disjoint or equal",
                        format!("x={x} orbit {ox}, x'={y} orbit {oy}"),
                    )
                    .into());
                }
            }
        }
        let mut classes: Vec<Subset> = Vec::new();
        let mut projection = vec![usize::MAX; n];
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = orbits[x];
            if let Some(y) = class.iter().find(|&y| orbits[y] != class) {
                return Err(TheoremViolation::new(
                    "an orbit is the orbit of each of its points",
                    format!("x={x} orbit {class}, but {y} has orbit {}", orbits[y]),
                )
                .into());
            }
            for y in class.iter() {
                projection[y] = classes.len();
            }
            classes.push(class);
        }
        Ok(OrbitSpace { carrier: n, classes, projection })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    /// Classes ordered by smallest member.
    pub fn classes(&self) -> &[Subset] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `pi(x)`, the class index of `x`.
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `pi(A)` as a set of class indices.
    pub fn image(&self, set: Subset) -> Subset {
        set.iter().map(|x| self.projection[x]).collect()
    }

    /// `pi^-1(C)` for a set of class indices `C`.
    pub fn preimage(&self, classes: Subset) -> Subset {
        classes.iter().fold(Subset::EMPTY, |acc, c| acc.union(self.classes[c]))
    }

    pub fn report(&self) -> OrbitReport {
        OrbitReport {
            classes: self.classes.iter().map(|c| c.to_vec()).collect(),
            projection: self.projection.clone(),
            distributive: true,
        }
    }
}

/// Serialized orbit report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct OrbitReport {
    pub classes: Vec<Vec<usize>>,
    pub projection: Vec<usize>,
    pub distributive: bool,
}

impl OrbitReport {
    /// Report for any action: the orbit partition when distributive, otherwise
    /// the distinct least bi-invariant sets (which may overlap) with each point
    /// projected to the index of its own set.
    pub fn for_action(a: &BinaryAction) -> Result<Self, OrbitError> {
        if a.is_distributive() {
            return Ok(OrbitSpace::new(a)?.report());
        }
        let minimal: Vec<Subset> = (0..a.carrier()).map(|x| minimal_bi_invariant(a, x)).collect();
        let mut distinct = minimal.clone();
        distinct.sort_by_key(|s| (s.first(), s.mask()));
        distinct.dedup();
        let projection = minimal.iter().map(|s| distinct.iter().position(|d| d == s).unwrap()).collect();
        Ok(OrbitReport { classes: distinct.iter().map(|c| c.to_vec()).collect(), projection, distributive: false })
    }
}

/// The diagonal map `x -> g(x, x)` of a distributive action, checked to be a
/// bijection inverted by the diagonal map of `g^-1`.
pub fn delta(a: &BinaryAction, g: usize) -> Result<Vec<usize>, OrbitError> {
    if g >= a.group().order() {
        return Err(OrbitError::OutOfRange { index: g, bound: a.group().order() });
    }
    require_distributive(a)?;
    Ok(delta_checked(a, g)?)
}

pub(crate) fn delta_checked(a: &BinaryAction, g: usize) -> Result<Vec<usize>, TheoremViolation> {
    let n = a.carrier();
    let forward: Vec<usize> = (0..n).map(|x| a.get(g, x, x)).collect();
    let gi = a.group().inv(g);
    let backward: Vec<usize> = (0..n).map(|x| a.get(gi, x, x)).collect();
    for x in 0..n {
        if backward[forward[x]] != x || forward[backward[x]] != x {
            return Err(TheoremViolation::new(
                "diagonal maps are bijections inverted by the inverse element",
                format!("g={g} x={x}"),
            ));
        }
    }
    Ok(forward)
}

/// The map `f*` on orbit classes induced by a biequivariant `f`.
pub fn induced_quotient_map(a: &BinaryAction, b: &BinaryAction, f: &[usize]) -> Result<Vec<usize>, OrbitError> {
    let source = OrbitSpace::new(a)?;
    let target = OrbitSpace::new(b)?;
    induced_quotient_map_between(a, b, &source, &target, f)
}

fn induced_quotient_map_between(
    a: &BinaryAction,
    b: &BinaryAction,
    source: &OrbitSpace,
    target: &OrbitSpace,
    f: &[usize],
) -> Result<Vec<usize>, OrbitError> {
    if let Some(v) = a.biequivariance_violation(b, f)? {
        return Err(OrbitError::NotBiequivariant(v.to_string()));
    }
    let mut out = Vec::with_capacity(source.class_count());
    for class in source.classes() {
        let rep = class.first().expect("classes are non-empty");
        let image = target.project(f[rep]);
        if let Some(x) = class.iter().find(|&x| target.project(f[x]) != image) {
            return Err(TheoremViolation::new(
                "induced map on orbit spaces is well defined",
                format!("points {rep} and {x} of one class land in different classes"),
            )
            .into());
        }
        out.push(image);
    }
    Ok(out)
}

/// Two composable biequivariant maps `X --first--> Y --second--> Z`.
#[derive(Debug, Clone, Copy)]
pub struct MapChain<'a> {
    pub spaces: [&'a BinaryAction; 3],
    pub first: &'a [usize],
    pub second: &'a [usize],
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorReport {
    /// Each checked chain as `(first, second)`.
    pub chains: Vec<(Vec<usize>, Vec<usize>)>,
    pub identity_checks: usize,
}

/// Checks `pi(1) = 1` on every space and `pi(g o f) = g* o f*` on every chain.
pub fn functor_laws_check(chains: &[MapChain<'_>]) -> Result<FunctorReport, OrbitError> {
    let mut report = FunctorReport::default();
    for chain in chains {
        let [x, y, z] = chain.spaces;
        let spaces = [OrbitSpace::new(x)?, OrbitSpace::new(y)?, OrbitSpace::new(z)?];
        for (action, space) in chain.spaces.iter().zip(&spaces) {
            let identity: Vec<usize> = (0..action.carrier()).collect();
            let induced = induced_quotient_map_between(action, action, space, space, &identity)?;
            if induced.iter().enumerate().any(|(c, &d)| c != d) {
                return Err(TheoremViolation::new("pi(1) = 1", format!("{induced:?}")).into());
            }
            report.identity_checks += 1;
        }
        let f_star = induced_quotient_map_between(x, y, &spaces[0], &spaces[1], chain.first)?;
        let g_star = induced_quotient_map_between(y, z, &spaces[1], &spaces[2], chain.second)?;
        let composite: Vec<usize> = chain.first.iter().map(|&p| chain.second[p]).collect();
        let composite_star = induced_quotient_map_between(x, z, &spaces[0], &spaces[2], &composite)?;
        let star_composite: Vec<usize> = f_star.iter().map(|&c| g_star[c]).collect();
        if composite_star != star_composite {
            return Err(TheoremViolation::new(
                "pi(g f) = g* f*",
                format!("f={:?} g={:?}: {composite_star:?} vs {star_composite:?}", chain.first, chain.second),
            )
            .into());
        }
        report.chains.push((chain.first.to_vec(), chain.second.to_vec()));
    }
    Ok(report)
}
