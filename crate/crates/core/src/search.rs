//! Exhaustive enumeration of the binary actions of a group on a carrier.
//!
//! Since `(f * phi)(t, -) = f(t, -) o phi(t, -)`, the composition axiom says
//! that for every fixed first argument `t` the rows `alpha_g(t, -)` form an
//! ordinary action of `G` on the carrier. The search therefore fills the
//! table one row `t` at a time: it picks a permutation for every generator
//! (non-permutations never appear), derives all other group elements through
//! `alpha_gh = alpha_g * alpha_h` and rejects the row when a relation of `G`
//! fails. With `require_distributive` the distributive law is checked on every
//! tuple whose rows are all assigned, as soon as they are.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::action::BinaryAction;
use crate::catalog::{compose, permutations, Permutation};
use crate::group::FiniteGroup;
use crate::orbits::{is_bi_invariant, minimal_bi_invariant};
use crate::subset::Subset;
use crate::TheoremViolation;

/// Largest carrier for which relabellings are enumerated in [`canonicalize`].
pub const MAX_CANONICAL_CARRIER: usize = 8;
/// Largest carrier scanned for non-bi-invariant unions.
pub const MAX_UNION_SCAN_CARRIER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search budget exceeded after {nodes} nodes; {} actions found so far", partial.raw_count)]
    BudgetExceeded { nodes: u64, partial: Box<EnumerationResult> },
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub group: Arc<FiniteGroup>,
    pub carrier_size: usize,
    pub require_distributive: bool,
    pub dedupe: bool,
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl EnumerationTask {
    pub fn new(group: Arc<FiniteGroup>, carrier_size: usize) -> Self {
        EnumerationTask {
            group,
            carrier_size,
            require_distributive: false,
            dedupe: false,
            node_budget: 100_000_000,
            time_budget: Duration::from_secs(600),
        }
    }

    pub fn distributive(mut self, yes: bool) -> Self {
        self.require_distributive = yes;
        self
    }

    pub fn dedupe(mut self, yes: bool) -> Self {
        self.dedupe = yes;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    /// Sorted by table. Canonical representatives only when deduplicating.
    pub actions: Vec<BinaryAction>,
    pub raw_count: usize,
    pub canonical_count: usize,
    pub distributive_count: usize,
    pub exhaustive: bool,
    pub witnesses: WitnessReport,
}

impl EnumerationResult {
    pub fn summary(&self) -> EnumerationSummary {
        EnumerationSummary {
            raw_count: self.raw_count,
            canonical_count: self.canonical_count,
            distributive_count: self.distributive_count,
            exhaustive: self.exhaustive,
            witnesses: self.witnesses.clone(),
        }
    }
}

/// The summary record written after the action lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct EnumerationSummary {
    pub raw_count: usize,
    pub canonical_count: usize,
    pub distributive_count: usize,
    pub exhaustive: bool,
    pub witnesses: WitnessReport,
}

/// Points whose least bi-invariant sets overlap without being equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct IntersectingOrbits {
    pub action_index: usize,
    pub table: Vec<Vec<Vec<usize>>>,
    pub x: usize,
    pub orbit_x: Vec<usize>,
    pub y: usize,
    pub orbit_y: Vec<usize>,
}

/// Two bi-invariant sets whose union is not bi-invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct NonBiInvariantUnion {
    pub action_index: usize,
    pub table: Vec<Vec<Vec<usize>>>,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub union_image: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct WitnessReport {
    pub intersecting_orbits: Option<IntersectingOrbits>,
    pub non_bi_invariant_union: Option<NonBiInvariantUnion>,
    /// False when some action's carrier was too large for the union scan.
    pub union_scan_complete: bool,
}

/// For every row `t`, the ordinary actions it may carry: each candidate holds
/// `image[g * n + x] = g(t, x)`.
pub fn row_candidates(group: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    let generators = group.small_generating_set();
    let perms = permutations(n);
    let identity: Permutation = (0..n).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<&Permutation> = Vec::with_capacity(generators.len());
    assign_generators(group, &generators, &perms, &identity, &mut chosen, &mut out);
    out
}

fn assign_generators<'p>(
    group: &FiniteGroup,
    generators: &[usize],
    perms: &'p [Permutation],
    identity: &Permutation,
    chosen: &mut Vec<&'p Permutation>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = chosen.len();
    if depth == generators.len() {
        if let Some(row) = extend_homomorphism(group, generators, chosen, identity) {
            out.push(row);
        }
        return;
    }
    let order = group.element_order(generators[depth]);
    for p in perms {
        // The image of a generator must satisfy its order relation.
        let mut power = p.clone();
        for _ in 1..order {
            power = compose(p, &power);
        }
        if power != *identity {
            continue;
        }
        chosen.push(p);
        assign_generators(group, generators, perms, identity, chosen, out);
        chosen.pop();
    }
}

/// Extends generator images along the Cayley graph, checking every edge.
fn extend_homomorphism(
    group: &FiniteGroup,
    generators: &[usize],
    images: &[&Permutation],
    identity: &Permutation,
) -> Option<Vec<usize>> {
    let n = identity.len();
    let mut image: Vec<Option<Permutation>> = vec![None; group.order()];
    image[group.identity()] = Some(identity.clone());
    let mut queue = vec![group.identity()];
    let mut head = 0;
    while head < queue.len() {
        let k = queue[head];
        head += 1;
        for (&s, &sigma) in generators.iter().zip(images) {
            let sk = group.mul(s, k);
            let candidate = compose(sigma, image[k].as_ref().unwrap());
            match &image[sk] {
                Some(existing) if *existing != candidate => return None,
                Some(_) => {}
                None => {
                    image[sk] = Some(candidate);
                    queue.push(sk);
                }
            }
        }
    }
    let mut flat = Vec::with_capacity(group.order() * n);
    for p in image {
        flat.extend(p?);
    }
    Some(flat)
}

struct Searcher<'a> {
    group: &'a FiniteGroup,
    n: usize,
    candidates: &'a [Vec<usize>],
    require_distributive: bool,
    nodes: &'a AtomicU64,
    stopped: &'a AtomicBool,
    node_budget: u64,
    deadline: Instant,
}

impl Searcher<'_> {
    #[inline]
    fn value(&self, rows: &[usize], g: usize, x: usize, y: usize) -> usize {
        self.candidates[rows[x]][g * self.n + y]
    }

    fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.node_budget || (count.is_multiple_of(1024) && Instant::now() > self.deadline) {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Distributivity on all tuples whose rows are among `0..=t` and that use row `t`.
    fn consistent(&self, rows: &[usize]) -> bool {
        if !self.require_distributive {
            return true;
        }
        let t = rows.len() - 1;
        let order = self.group.order();
        for g in 0..order {
            for h in 0..order {
                for x in 0..=t {
                    for x1 in 0..=t {
                        let y1 = self.value(rows, h, x, x1);
                        if y1 > t || x.max(x1).max(y1) != t {
                            continue;
                        }
                        for x2 in 0..self.n {
                            let lhs = self.value(rows, g, y1, self.value(rows, h, x, x2));
                            let rhs = self.value(rows, h, x, self.value(rows, g, x1, x2));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn descend(&self, rows: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rows.len() == self.n {
            out.push(rows.clone());
            return;
        }
        for c in 0..self.candidates.len() {
            if !self.tick() {
                return;
            }
            rows.push(c);
            if self.consistent(rows) {
                self.descend(rows, out);
            }
            rows.pop();
        }
    }

    fn table(&self, rows: &[usize]) -> Vec<usize> {
        let n = self.n;
        let mut table = vec![0; self.group.order() * n * n];
        for g in 0..self.group.order() {
            for x in 0..n {
                for y in 0..n {
                    table[(g * n + x) * n + y] = self.value(rows, g, x, y);
                }
            }
        }
        table
    }
}

/// Enumerates every binary action of `task.group` on `task.carrier_size`
/// points (only distributive ones when requested), sorted by table.
///
/// Branches over the first row run in parallel; the merged output is sorted,
/// so results do not depend on the schedule.
pub fn enumerate_actions(task: &EnumerationTask) -> Result<EnumerationResult, SearchError> {
    let n = task.carrier_size;
    if n == 0 {
        return Err(SearchError::InvalidTask("carrier size must be at least 1".into()));
    }
    if n > MAX_CANONICAL_CARRIER {
        return Err(SearchError::InvalidTask(format!(
            "carrier size {n} exceeds the supported maximum {MAX_CANONICAL_CARRIER}"
        )));
    }
    if task.node_budget == 0 || task.time_budget.is_zero() {
        return Err(SearchError::InvalidTask("budgets must be positive".into()));
    }
    let group = task.group.as_ref();
    let candidates = row_candidates(group, n);
    let nodes = AtomicU64::new(0);
    let stopped = AtomicBool::new(false);
    let searcher = Searcher {
        group,
        n,
        candidates: &candidates,
        require_distributive: task.require_distributive,
        nodes: &nodes,
        stopped: &stopped,
        node_budget: task.node_budget,
        deadline: Instant::now() + task.time_budget,
    };

    let mut row_choices: Vec<Vec<usize>> = (0..candidates.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            if searcher.tick() {
                let mut rows = vec![first];
                if searcher.consistent(&rows) {
                    searcher.descend(&mut rows, &mut out);
                }
            }
            out
        })
        .collect();
    row_choices.sort();

    let mut actions = Vec::with_capacity(row_choices.len());
    for rows in &row_choices {
        let action = BinaryAction::from_flat(task.group.clone(), n, searcher.table(rows))
            .map_err(|e| TheoremViolation::new("enumerated tables are binary actions", e.to_string()))?;
        if task.require_distributive {
            if let Some(v) = action.distributivity_violation() {
                return Err(TheoremViolation::new("enumerated actions are distributive", v.to_string()).into());
            }
        }
        actions.push(action);
    }
    actions.sort_by(|a, b| a.as_flat().cmp(b.as_flat()));

    let raw_count = actions.len();
    let distributive_count = actions.iter().filter(|a| a.is_distributive()).count();
    let canonical: BTreeSet<Vec<usize>> = actions.par_iter().map(|a| canonicalize(a).as_flat().to_vec()).collect();
    let canonical_count = canonical.len();
    let witnesses = mine_counterexamples(&actions);
    let actions = if task.dedupe {
        canonical
            .into_iter()
            .map(|t| BinaryAction::from_flat(task.group.clone(), n, t).expect("relabelled actions are actions"))
            .collect()
    } else {
        actions
    };

    let result = EnumerationResult {
        actions,
        raw_count,
        canonical_count,
        distributive_count,
        exhaustive: !stopped.load(Ordering::Relaxed),
        witnesses,
    };
    if result.exhaustive {
        Ok(result)
    } else {
        Err(SearchError::BudgetExceeded { nodes: nodes.load(Ordering::Relaxed), partial: Box::new(result) })
    }
}

/// Lexicographically least relabelling of `a` by a carrier bijection.
///
/// Two actions have the same canonical form exactly when some bijection is a
/// biequimorphism between them.
pub fn canonicalize(a: &BinaryAction) -> BinaryAction {
    let n = a.carrier();
    assert!(n <= MAX_CANONICAL_CARRIER, "carrier too large to canonicalize");
    permutations(n)
        .iter()
        .map(|sigma| a.relabel(sigma))
        .min_by(|x, y| x.as_flat().cmp(y.as_flat()))
        .expect("at least one permutation")
}

/// Scans `actions` in order for the first pair of points with overlapping,
/// unequal least bi-invariant sets, and for the first pair of bi-invariant
/// sets (by mask) whose union is not bi-invariant.
pub fn mine_counterexamples(actions: &[BinaryAction]) -> WitnessReport {
    let mut report = WitnessReport { union_scan_complete: true, ..Default::default() };
    for (index, a) in actions.iter().enumerate() {
        if report.intersecting_orbits.is_none() {
            report.intersecting_orbits = intersecting_orbits(a).map(|(x, ox, y, oy)| IntersectingOrbits {
                action_index: index,
                table: a.nested_table(),
                x,
                orbit_x: ox.to_vec(),
                y,
                orbit_y: oy.to_vec(),
            });
        }
        if report.non_bi_invariant_union.is_none() {
            if a.carrier() > MAX_UNION_SCAN_CARRIER {
                report.union_scan_complete = false;
            } else if let Some((first, second, image)) = non_bi_invariant_union(a) {
                report.non_bi_invariant_union = Some(NonBiInvariantUnion {
                    action_index: index,
                    table: a.nested_table(),
                    first: first.to_vec(),
                    second: second.to_vec(),
                    union_image: image.to_vec(),
                });
            }
        }
        if report.intersecting_orbits.is_some() && report.non_bi_invariant_union.is_some() {
            break;
        }
    }
    report
}

fn intersecting_orbits(a: &BinaryAction) -> Option<(usize, Subset, usize, Subset)> {
    let minimal: Vec<Subset> = (0..a.carrier()).map(|x| minimal_bi_invariant(a, x)).collect();
    for x in 0..a.carrier() {
        for y in x + 1..a.carrier() {
            if minimal[x] != minimal[y] && !minimal[x].is_disjoint(minimal[y]) {
                return Some((x, minimal[x], y, minimal[y]));
            }
        }
    }
    None
}

fn non_bi_invariant_union(a: &BinaryAction) -> Option<(Subset, Subset, Subset)> {
    let invariant: Vec<Subset> = Subset::all(a.carrier()).filter(|&s| is_bi_invariant(a, s)).collect();
    for (i, &s) in invariant.iter().enumerate() {
        for &t in &invariant[i + 1..] {
            let u = s.union(t);
            if !is_bi_invariant(a, u) {
                return Some((s, t, crate::orbits::g_image(a, u)));
            }
        }
    }
    None
}
