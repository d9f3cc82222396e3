//! Finite topological spaces and the topological statements about orbit
//! spaces, checked on finite models.
//!
//! A finite space is Hausdorff exactly when it is discrete, so every check
//! reports whether its hypotheses were met. A check whose hypotheses hold
//! must succeed and returns [`TheoremViolation`] otherwise; any other outcome
//! is only recorded. Compactness and local compactness are always true on
//! finite spaces and are reported as degenerate.

use serde::Serialize;

use crate::action::BinaryAction;
use crate::orbits::{delta_checked, g_image, OrbitError, OrbitSpace};
use crate::subset::{Subset, MAX_ELEMENTS};
use crate::TheoremViolation;

/// Largest carrier for which [`all_topologies`] enumerates.
pub const MAX_ENUMERATED_TOPOLOGY: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("open sets must include the empty set and the whole carrier")]
    MissingEmptyOrFull,
    #[error("union of open sets {0} and {1} is not open")]
    NotClosedUnderUnion(Subset, Subset),
    #[error("intersection of open sets {0} and {1} is not open")]
    NotClosedUnderIntersection(Subset, Subset),
    #[error("subset {set} is out of range for a carrier of size {size}")]
    OutOfRange { set: Subset, size: usize },
    #[error("carrier sizes differ: action has {action}, topology has {topology}")]
    ShapeMismatch { action: usize, topology: usize },
    #[error("{0} is not open")]
    NotOpen(Subset),
    #[error("{0} is not closed")]
    NotClosed(Subset),
    #[error("action is not continuous: preimage of open set {0} is not open")]
    NotContinuous(Subset),
    #[error("carrier size {0} is not supported (must be 1..=64)")]
    BadSize(usize),
    #[error("carrier size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteTopology {
    size: usize,
    // sorted, deduplicated
    opens: Vec<Subset>,
}

impl FiniteTopology {
    /// Validates and normalizes an open-set family.
    pub fn new(size: usize, opens: impl IntoIterator<Item = Subset>) -> Result<Self, TopologyError> {
        if size == 0 || size > MAX_ELEMENTS {
            return Err(TopologyError::BadSize(size));
        }
        let full = Subset::full(size);
        let mut opens: Vec<Subset> = opens.into_iter().collect();
        if let Some(&set) = opens.iter().find(|s| !s.is_subset_of(full)) {
            return Err(TopologyError::OutOfRange { set, size });
        }
        opens.sort();
        opens.dedup();
        if opens.binary_search(&Subset::EMPTY).is_err() || opens.binary_search(&full).is_err() {
            return Err(TopologyError::MissingEmptyOrFull);
        }
        for (i, &u) in opens.iter().enumerate() {
            for &v in &opens[i + 1..] {
                if opens.binary_search(&u.union(v)).is_err() {
                    return Err(TopologyError::NotClosedUnderUnion(u, v));
                }
            }
        }
        for (i, &u) in opens.iter().enumerate() {
            for &v in &opens[i + 1..] {
                if opens.binary_search(&u.intersection(v)).is_err() {
                    return Err(TopologyError::NotClosedUnderIntersection(u, v));
                }
            }
        }
        Ok(FiniteTopology { size, opens })
    }

    pub fn discrete(size: usize) -> Self {
        FiniteTopology { size, opens: Subset::all(size).collect() }
    }

    pub fn indiscrete(size: usize) -> Self {
        let mut opens = vec![Subset::EMPTY, Subset::full(size)];
        opens.dedup();
        FiniteTopology { size, opens }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn is_open(&self, set: Subset) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn is_closed(&self, set: Subset) -> bool {
        set.is_subset_of(Subset::full(self.size)) && self.is_open(set.complement(self.size))
    }

    /// Closed sets in increasing mask order.
    pub fn closed_sets(&self) -> Vec<Subset> {
        let mut closed: Vec<Subset> = self.opens.iter().map(|u| u.complement(self.size)).collect();
        closed.sort();
        closed
    }

    /// Largest open subset of `set`.
    pub fn interior(&self, set: Subset) -> Subset {
        self.opens.iter().filter(|u| u.is_subset_of(set)).fold(Subset::EMPTY, |acc, &u| acc.union(u))
    }

    /// Smallest closed superset of `set`.
    pub fn closure(&self, set: Subset) -> Subset {
        self.interior(set.complement(self.size)).complement(self.size)
    }

    /// Smallest open set containing `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> Subset {
        self.opens.iter().filter(|u| u.contains(x)).fold(Subset::full(self.size), |acc, &u| acc.intersection(u))
    }

    /// Distinct points have disjoint neighbourhoods.
    pub fn is_hausdorff(&self) -> bool {
        let nbhd: Vec<Subset> = (0..self.size).map(|x| self.minimal_neighbourhood(x)).collect();
        (0..self.size).all(|x| (x + 1..self.size).all(|y| nbhd[x].is_disjoint(nbhd[y])))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.size).all(|x| self.is_open(Subset::singleton(x)))
    }

    /// Every open cover has a finite subcover; constant on finite spaces.
    pub fn is_compact(&self) -> bool {
        true
    }

    /// Every point has a neighbourhood with compact closure; constant on finite spaces.
    pub fn is_locally_compact(&self) -> bool {
        (0..self.size).all(|x| self.closure(self.minimal_neighbourhood(x)).contains(x))
    }

    /// Openness of `W` in `X x X`, given as a membership predicate on pairs.
    fn is_open_in_square(&self, member: impl Fn(usize, usize) -> bool) -> bool {
        let nbhd: Vec<Subset> = (0..self.size).map(|x| self.minimal_neighbourhood(x)).collect();
        (0..self.size).all(|x| {
            (0..self.size).all(|y| !member(x, y) || nbhd[x].iter().all(|x2| nbhd[y].iter().all(|y2| member(x2, y2))))
        })
    }

    /// `f^-1(V)` is open for every open `V`.
    pub fn is_continuous_map(&self, f: &[usize]) -> bool {
        self.opens.iter().all(|&v| {
            let pre: Subset = (0..self.size).filter(|&x| v.contains(f[x])).collect();
            self.is_open(pre)
        })
    }
}

/// All topologies on `0..size` in sorted order, for `size <= 5`.
///
/// Finite topologies correspond to preorders; the open sets of a preorder
/// are its up-closed sets.
pub fn all_topologies(size: usize) -> Result<Vec<FiniteTopology>, TopologyError> {
    if size > MAX_ENUMERATED_TOPOLOGY {
        return Err(TopologyError::CapExceeded { size, cap: MAX_ENUMERATED_TOPOLOGY });
    }
    if size == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> =
        (0..size).flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for code in 0u64..1 << pairs.len() {
        // up[i] = set of j with i <= j
        let mut up: Vec<Subset> = (0..size).map(Subset::singleton).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if code >> bit & 1 == 1 {
                up[i].insert(j);
            }
        }
        let transitive = (0..size).all(|i| up[i].iter().all(|j| up[j].is_subset_of(up[i])));
        if !transitive {
            continue;
        }
        let opens = Subset::all(size).filter(|s| s.iter().all(|i| up[i].is_subset_of(*s))).collect();
        out.push(FiniteTopology { size, opens });
    }
    out.sort();
    Ok(out)
}

/// A binary action together with a topology on its carrier. The acting group
/// is discrete.
#[derive(Debug, Clone)]
pub struct TopologicalBinaryGSpace {
    action: BinaryAction,
    topology: FiniteTopology,
    discontinuity: Option<Subset>,
}

/// Result of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    pub hypotheses_met: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub closed: bool,
    pub proper: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientPropertyCheck {
    pub hausdorff: bool,
    pub compact: bool,
    pub locally_compact: bool,
    /// Compactness is constant on finite spaces; the flags carry no information.
    pub compactness_degenerate: bool,
    /// Whether the source is Hausdorff, so that `hausdorff` was asserted.
    pub hausdorff_asserted: bool,
}

/// The orbit space with its quotient topology.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub orbits: OrbitSpace,
    pub topology: FiniteTopology,
}

/// One line of a probe report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ProbeRecord {
    pub model: String,
    pub check: String,
    pub outcome: bool,
    pub hypotheses_met: bool,
}

impl TopologicalBinaryGSpace {
    pub fn new(action: BinaryAction, topology: FiniteTopology) -> Result<Self, TopologyError> {
        if action.carrier() != topology.size() {
            return Err(TopologyError::ShapeMismatch { action: action.carrier(), topology: topology.size() });
        }
        let discontinuity = find_discontinuity(&action, &topology);
        Ok(TopologicalBinaryGSpace { action, topology, discontinuity })
    }

    pub fn action(&self) -> &BinaryAction {
        &self.action
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    /// First open set (in mask order) whose preimage under the action is not
    /// open in `G x X x X`.
    pub fn discontinuity_witness(&self) -> Option<Subset> {
        self.discontinuity
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuity.is_none()
    }

    pub fn is_hausdorff(&self) -> bool {
        self.topology.is_hausdorff()
    }

    fn require_continuous(&self) -> Result<(), TopologyError> {
        match self.discontinuity {
            Some(v) => Err(TopologyError::NotContinuous(v)),
            None => Ok(()),
        }
    }

    fn require_distributive(&self) -> Result<(), TopologyError> {
        match self.action.distributivity_violation() {
            Some(v) => Err(OrbitError::NotDistributive(v.to_string()).into()),
            None => Ok(()),
        }
    }

    fn outcome(
        check: &'static str,
        holds: bool,
        hypotheses_met: bool,
        witness: impl Fn() -> String,
    ) -> Result<CheckOutcome, TopologyError> {
        if hypotheses_met && !holds {
            return Err(TheoremViolation::new(check, witness()).into());
        }
        Ok(CheckOutcome { holds, hypotheses_met })
    }

    /// `G(U, U)` is open for open `U`; asserted on Hausdorff carriers.
    pub fn check_guu_open(&self, u: Subset) -> Result<CheckOutcome, TopologyError> {
        self.require_continuous()?;
        if !self.topology.is_open(u) {
            return Err(TopologyError::NotOpen(u));
        }
        let image = g_image(&self.action, u);
        Self::outcome("G(U,U) is open", self.topology.is_open(image), self.is_hausdorff(), || {
            format!("U={u} G(U,U)={image}")
        })
    }

    /// `G(A, A)` is closed for closed `A`; asserted on Hausdorff carriers.
    pub fn check_gaa_closed(&self, a: Subset) -> Result<CheckOutcome, TopologyError> {
        self.require_continuous()?;
        if !self.topology.is_closed(a) {
            return Err(TopologyError::NotClosed(a));
        }
        let image = g_image(&self.action, a);
        Self::outcome("G(A,A) is closed", self.topology.is_closed(image), self.is_hausdorff(), || {
            format!("A={a} G(A,A)={image}")
        })
    }

    /// `KA = { g(a, a) : g in K, a in A }` is closed for closed `A`.
    ///
    /// Asserted on every continuous distributive model: `KA` is a finite union
    /// of the images `g A` under the diagonal homeomorphisms, whose
    /// continuity is checked here as well.
    pub fn check_ka_closed(&self, k: Subset, a: Subset) -> Result<CheckOutcome, TopologyError> {
        self.require_continuous()?;
        self.require_distributive()?;
        if !self.topology.is_closed(a) {
            return Err(TopologyError::NotClosed(a));
        }
        let mut ka = Subset::EMPTY;
        for g in k.iter().filter(|&g| g < self.action.group().order()) {
            let d = delta_checked(&self.action, g)?;
            let dinv = delta_checked(&self.action, self.action.group().inv(g))?;
            if !self.topology.is_continuous_map(&d) || !self.topology.is_continuous_map(&dinv) {
                return Err(TheoremViolation::new(
                    "diagonal maps of a continuous action are homeomorphisms",
                    format!("g={g}"),
                )
                .into());
            }
            ka = ka.union(a.iter().map(|x| d[x]).collect());
        }
        Self::outcome("KA is closed", self.topology.is_closed(ka), true, || format!("K={k} A={a} KA={ka}"))
    }

    /// Quotient topology on the orbit classes: a set of classes is open iff
    /// its preimage is open.
    pub fn quotient_topology(&self) -> Result<QuotientSpace, TopologyError> {
        self.require_continuous()?;
        let orbits = OrbitSpace::new(&self.action)?;
        let opens = Subset::all(orbits.class_count())
            .filter(|&c| self.topology.is_open(orbits.preimage(c)))
            .collect::<Vec<_>>();
        let topology = FiniteTopology::new(orbits.class_count(), opens)
            .map_err(|e| TheoremViolation::new("quotient topology is a topology", e.to_string()))?;
        Ok(QuotientSpace { orbits, topology })
    }

    /// `pi` is closed; proper means closed with compact fibres, so on finite
    /// carriers proper is the same as closed. Asserted on every continuous
    /// distributive model.
    pub fn check_projection_closed_proper(&self) -> Result<ProjectionCheck, TopologyError> {
        let q = self.quotient_topology()?;
        let failure = self.topology.closed_sets().into_iter().find(|&a| !q.topology.is_closed(q.orbits.image(a)));
        if let Some(a) = failure {
            return Err(TheoremViolation::new(
                "orbit projection is closed",
                format!("A={a} pi(A)={}", q.orbits.image(a)),
            )
            .into());
        }
        // Fibres are finite, hence compact.
        let fibres_compact = q.orbits.classes().iter().all(|_| self.topology.is_compact());
        Ok(ProjectionCheck { closed: true, proper: fibres_compact })
    }

    /// Hausdorffness (asserted when the carrier is Hausdorff) and compactness
    /// of the orbit space.
    pub fn check_quotient_hausdorff_compact(&self) -> Result<QuotientPropertyCheck, TopologyError> {
        let q = self.quotient_topology()?;
        let hausdorff = q.topology.is_hausdorff();
        let hausdorff_asserted = self.is_hausdorff();
        if hausdorff_asserted && !hausdorff {
            return Err(TheoremViolation::new("orbit space is Hausdorff", "quotient not Hausdorff").into());
        }
        let compact = q.topology.is_compact();
        let locally_compact = q.topology.is_locally_compact();
        if compact != self.topology.is_compact() || locally_compact != self.topology.is_locally_compact() {
            return Err(TheoremViolation::new(
                "orbit space is (locally) compact iff the carrier is",
                "compactness differs",
            )
            .into());
        }
        Ok(QuotientPropertyCheck {
            hausdorff,
            compact,
            locally_compact,
            compactness_degenerate: true,
            hausdorff_asserted,
        })
    }

    /// Runs every applicable check and returns one record per check.
    ///
    /// Checks over families of sets (all opens, all closed sets, all group
    /// subsets) are aggregated: the outcome is true when every instance holds.
    pub fn probe(&self, model: &str) -> Result<Vec<ProbeRecord>, TopologyError> {
        let record = |check: &str, outcome: bool, hypotheses_met: bool| ProbeRecord {
            model: model.to_string(),
            check: check.to_string(),
            outcome,
            hypotheses_met,
        };
        let mut out = vec![record("continuous", self.is_continuous(), true)];
        if !self.is_continuous() {
            return Ok(out);
        }
        let hausdorff = self.is_hausdorff();
        let mut guu = true;
        for &u in self.topology.opens() {
            guu &= self.check_guu_open(u)?.holds;
        }
        out.push(record("guu_open", guu, hausdorff));
        let closed = self.topology.closed_sets();
        let mut gaa = true;
        for &a in &closed {
            gaa &= self.check_gaa_closed(a)?.holds;
        }
        out.push(record("gaa_closed", gaa, hausdorff));
        let distributive = self.action.is_distributive();
        out.push(record("distributive", distributive, true));
        if !distributive {
            return Ok(out);
        }
        let order = self.action.group().order();
        let group_subsets: Vec<Subset> = if order <= 8 {
            Subset::all(order).collect()
        } else {
            (0..order).map(Subset::singleton).chain([self.action.group().all()]).collect()
        };
        let mut ka = true;
        for &k in &group_subsets {
            for &a in &closed {
                ka &= self.check_ka_closed(k, a)?.holds;
            }
        }
        out.push(record("ka_closed", ka, true));
        let p = self.check_projection_closed_proper()?;
        out.push(record("projection_closed", p.closed, true));
        out.push(record("projection_proper", p.proper, true));
        let q = self.check_quotient_hausdorff_compact()?;
        out.push(record("quotient_hausdorff", q.hausdorff, q.hausdorff_asserted));
        out.push(record("quotient_compact", q.compact, true));
        out.push(record("quotient_locally_compact", q.locally_compact, true));
        Ok(out)
    }
}

impl QuotientSpace {
    /// No class set outside the quotient topology has an open preimage, so no
    /// finer topology keeps the projection continuous.
    pub fn is_finest(&self, source: &FiniteTopology) -> bool {
        Subset::all(self.orbits.class_count())
            .filter(|c| !self.topology.is_open(*c))
            .all(|c| !source.is_open(self.orbits.preimage(c)))
    }
}

fn find_discontinuity(action: &BinaryAction, topology: &FiniteTopology) -> Option<Subset> {
    topology.opens().iter().copied().find(|&v| {
        action.group().elements().any(|g| !topology.is_open_in_square(|x, y| v.contains(action.get(g, x, y))))
    })
}
