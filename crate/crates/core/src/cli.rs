//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when an input fails validation or a check
//! fails (the witness is printed), 2 on usage and I/O errors. Text reports go
//! to standard output; `--out` writes the machine-readable JSON form.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::action::{ActionError, BinaryAction, ConjugationCosetAction};
use crate::binop::{invertible_group, BinopError, DEFAULT_INVERTIBLE_CAP};
use crate::io::{self, ActionFile, BinaryOpFile, IoError, NamedGroup, OrdinaryActionFile, TopologyFile};
use crate::orbits::{OrbitError, OrbitReport, OrbitSpace};
use crate::search::{enumerate_actions, EnumerationResult, EnumerationTask, SearchError};
use crate::subset::Subset;
use crate::topology::{all_topologies, ProbeRecord, TopologicalBinaryGSpace, TopologyError};
use crate::TheoremViolation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "BINACT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "binact", version, about = "Binary actions of finite groups on finite sets")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an action, group, binary operation or topology file.
    Validate(ValidateArgs),
    /// Check the distributive law of an action.
    Distributive(ActionArgs),
    /// Orbits (or least bi-invariant sets) of an action.
    Orbits(OutArgs),
    /// Orbit space with the quotient topology.
    Quotient(QuotientArgs),
    /// Composition and inversion of binary operations.
    Monoid(MonoidArgs),
    /// Enumerate all actions of a group on a carrier.
    Enumerate(EnumerateArgs),
    /// Check the topological statements on one or all topologies.
    TopologyCheck(TopologyCheckArgs),
    /// Search for overlapping orbits and non-bi-invariant unions.
    Witnesses(WitnessArgs),
    /// The ordinary action obtained by fixing the first argument.
    Induce(InduceArgs),
    /// Embed an ordinary action as g(x, y) = g y.
    Embed(EmbedArgs),
    /// The action h(x, y) = x h x^-1 y of a subgroup on its group.
    Conjugation(ConjugationArgs),
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    /// Action file.
    #[arg(long)]
    pub action: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long)]
    pub action: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ValidateArgs {
    #[arg(long)]
    pub action: Option<PathBuf>,
    /// Group file or catalog name.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub op: Option<PathBuf>,
    #[arg(long)]
    pub topology: Option<PathBuf>,
    /// Ordinary action file.
    #[arg(long)]
    pub ordinary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[arg(long)]
    pub action: PathBuf,
    /// Topology file; the discrete topology when omitted.
    #[arg(long)]
    pub topology: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonoidArgs {
    /// Operation to invert, or the left factor of a composition.
    #[arg(long, required_unless_present = "invertible_count")]
    pub op: Option<PathBuf>,
    /// Right factor: prints op * with.
    #[arg(long, requires = "op")]
    pub with: Option<PathBuf>,
    /// Count the invertible operations on this many points.
    #[arg(long, conflicts_with = "op")]
    pub invertible_count: Option<usize>,
    /// Cap for --invertible-count.
    #[arg(long, default_value_t = DEFAULT_INVERTIBLE_CAP)]
    pub cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Group file or catalog name (trivial, zN, v4, sN, dN, q8, products like z2xz2).
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub carrier: usize,
    #[arg(long, default_value_t = 100_000_000)]
    pub node_budget: u64,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 600)]
    pub time_budget: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Only distributive actions.
    #[arg(long)]
    pub distributive: bool,
    /// Keep one canonical representative per biequimorphism class.
    #[arg(long)]
    pub dedupe: bool,
    /// Write JSON lines (one action per line, then the summary).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TopologyCheckArgs {
    #[arg(long)]
    pub action: PathBuf,
    #[arg(long, conflicts_with = "all_topologies")]
    pub topology: Option<PathBuf>,
    /// Check every topology on the carrier (at most 5 points).
    #[arg(long)]
    pub all_topologies: bool,
    /// With --all-topologies, include non-Hausdorff topologies as probes.
    #[arg(long)]
    pub probe_non_hausdorff: bool,
    /// Write probe records as JSON lines.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    #[arg(long)]
    pub action: PathBuf,
    #[arg(long)]
    pub point: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Ordinary action file.
    #[arg(long)]
    pub ordinary: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConjugationArgs {
    /// Ambient group file or catalog name.
    #[arg(long)]
    pub group: String,
    /// Subgroup generators, comma separated indices or labels such as (123).
    #[arg(long, default_value = "")]
    pub generators: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What went wrong, sorted into exit codes.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(IoError),
    #[error("{0}")]
    Check(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_validation() {
            Failure::Check(e.to_string())
        } else {
            Failure::Io(e)
        }
    }
}

macro_rules! check_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Check(e.to_string())
            }
        }
    )*};
}
check_failure!(ActionError, OrbitError, TopologyError, BinopError, SearchError, TheoremViolation);

/// Runs the CLI on `argv` (including the program name), returning the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = String::new();
    let result = with_thread_pool(|| dispatch(&config.command, &mut stdout));
    print!("{stdout}");
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            println!("FAILED: {msg}");
            EXIT_FAILED
        }
    }
}

fn with_thread_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0);
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn dispatch(command: &Command, out: &mut String) -> Result<i32, Failure> {
    match command {
        Command::Validate(args) => validate(args, out),
        Command::Distributive(args) => distributive(args, out),
        Command::Orbits(args) => orbits(args, out),
        Command::Quotient(args) => quotient(args, out),
        Command::Monoid(args) => monoid(args, out),
        Command::Enumerate(args) => enumerate(args, out),
        Command::TopologyCheck(args) => topology_check(args, out),
        Command::Witnesses(args) => witnesses(args, out),
        Command::Induce(args) => induce(args, out),
        Command::Embed(args) => embed(args, out),
        Command::Conjugation(args) => conjugation(args, out),
    }
}

fn write_out(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        io::write_text(p, contents)?;
    }
    Ok(())
}

/// Renders rows as left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let mut line = |cells: Vec<&str>| {
        let rendered: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        s.push_str(rendered.join("  ").trim_end());
        s.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    s
}

fn validate(args: &ValidateArgs, out: &mut String) -> Result<i32, Failure> {
    if let Some(path) = &args.action {
        let (group, action) = io::load_action(path)?;
        let _ = writeln!(
            out,
            "group {} of order {}, carrier of size {}",
            group.name,
            group.group.order(),
            action.carrier()
        );
        out.push_str("binary action axioms (identity, composition): OK\n");
    }
    if let Some(group_ref) = &args.group {
        let g = io::resolve_group(group_ref)?;
        let _ = writeln!(out, "group {} of order {}: OK", g.name, g.group.order());
    }
    if let Some(path) = &args.op {
        let op = io::load_op(path)?;
        let _ = writeln!(out, "binary operation on {} points: OK", op.size());
    }
    if let Some(path) = &args.topology {
        let t = io::load_topology(path)?;
        let _ = writeln!(
            out,
            "topology on {} points with {} open sets: OK (hausdorff: {})",
            t.size(),
            t.opens().len(),
            t.is_hausdorff()
        );
    }
    if let Some(path) = &args.ordinary {
        let (g, o) = io::load_ordinary(path)?;
        let _ = writeln!(out, "ordinary action of {} on {} points: OK", g.name, o.carrier());
    }
    Ok(EXIT_OK)
}

fn distributive(args: &ActionArgs, out: &mut String) -> Result<i32, Failure> {
    let (_, action) = io::load_action(&args.action)?;
    match action.distributivity_violation() {
        None => {
            out.push_str("distributive: yes\n");
            Ok(EXIT_OK)
        }
        Some(v) => Err(Failure::Check(format!("distributive: no; {v}"))),
    }
}

fn orbits(args: &OutArgs, out: &mut String) -> Result<i32, Failure> {
    let (_, action) = io::load_action(&args.action)?;
    let report = OrbitReport::for_action(&action)?;
    if report.distributive {
        let _ = writeln!(out, "distributive: yes, {} orbits", report.classes.len());
    } else {
        let _ = writeln!(
            out,
            "distributive: no; no orbit space. {} distinct least bi-invariant sets",
            report.classes.len()
        );
    }
    let rows: Vec<Vec<String>> = report
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.len().to_string(), format!("{c:?}")])
        .collect();
    out.push_str(&table(&["class", "size", "members"], &rows));
    write_out(args.out.as_deref(), &io::to_pretty_json(&report))?;
    Ok(EXIT_OK)
}

#[derive(serde::Serialize)]
struct QuotientReport {
    classes: Vec<Vec<usize>>,
    projection: Vec<usize>,
    topology: TopologyFile,
    projection_closed: bool,
    projection_proper: bool,
    hausdorff: bool,
    hausdorff_asserted: bool,
    compact: bool,
    locally_compact: bool,
}

fn load_topology_or_discrete(path: Option<&Path>, size: usize) -> Result<crate::FiniteTopology, Failure> {
    match path {
        Some(p) => Ok(io::load_topology(p)?),
        None => Ok(crate::FiniteTopology::discrete(size)),
    }
}

fn quotient(args: &QuotientArgs, out: &mut String) -> Result<i32, Failure> {
    let (_, action) = io::load_action(&args.action)?;
    let topology = load_topology_or_discrete(args.topology.as_deref(), action.carrier())?;
    let space = TopologicalBinaryGSpace::new(action, topology)?;
    let q = space.quotient_topology()?;
    let p = space.check_projection_closed_proper()?;
    let h = space.check_quotient_hausdorff_compact()?;
    let report = QuotientReport {
        classes: q.orbits.classes().iter().map(|c| c.to_vec()).collect(),
        projection: q.orbits.projection().to_vec(),
        topology: TopologyFile::from_topology(&q.topology),
        projection_closed: p.closed,
        projection_proper: p.proper,
        hausdorff: h.hausdorff,
        hausdorff_asserted: h.hausdorff_asserted,
        compact: h.compact,
        locally_compact: h.locally_compact,
    };
    let _ = writeln!(out, "{} orbits", report.classes.len());
    let opens: Vec<String> = q.topology.opens().iter().map(Subset::to_string).collect();
    let _ = writeln!(out, "quotient open sets: {}", opens.join(" "));
    let rows = vec![
        vec!["projection closed".into(), p.closed.to_string(), "asserted".into()],
        vec!["projection proper".into(), p.proper.to_string(), "asserted".into()],
        vec![
            "quotient hausdorff".into(),
            h.hausdorff.to_string(),
            if h.hausdorff_asserted { "asserted" } else { "recorded" }.into(),
        ],
        vec!["quotient compact".into(), h.compact.to_string(), "degenerate".into()],
        vec!["quotient locally compact".into(), h.locally_compact.to_string(), "degenerate".into()],
    ];
    out.push_str(&table(&["check", "holds", "mode"], &rows));
    write_out(args.out.as_deref(), &io::to_pretty_json(&report))?;
    Ok(EXIT_OK)
}

fn monoid(args: &MonoidArgs, out: &mut String) -> Result<i32, Failure> {
    if let Some(n) = args.invertible_count {
        let group = invertible_group(n, args.cap)?;
        let _ = writeln!(out, "invertible binary operations on {n} points: {}", group.len());
        return Ok(EXIT_OK);
    }
    let path = args.op.as_ref().ok_or_else(|| Failure::Usage("--op is required".into()))?;
    let f = io::load_op(path)?;
    if let Some(with) = &args.with {
        let phi = io::load_op(with)?;
        let product = f.star(&phi)?;
        let _ = writeln!(out, "op * with = {:?}", product.rows());
        write_out(args.out.as_deref(), &io::to_pretty_json(&BinaryOpFile::from_op(&product)))?;
        return Ok(EXIT_OK);
    }
    let inverse = f.try_invert()?;
    let _ = writeln!(out, "invertible: yes\ninverse = {:?}", inverse.rows());
    write_out(args.out.as_deref(), &io::to_pretty_json(&BinaryOpFile::from_op(&inverse)))?;
    Ok(EXIT_OK)
}

fn run_search(args: &SearchArgs, distributive: bool, dedupe: bool) -> Result<(NamedGroup, EnumerationResult), Failure> {
    let group = io::resolve_group(&args.group)?;
    let mut task = EnumerationTask::new(group.group.clone(), args.carrier).distributive(distributive).dedupe(dedupe);
    task.node_budget = args.node_budget;
    task.time_budget = Duration::from_secs(args.time_budget);
    match enumerate_actions(&task) {
        Ok(r) => Ok((group, r)),
        Err(SearchError::InvalidTask(m)) => Err(Failure::Usage(m)),
        Err(e) => Err(e.into()),
    }
}

fn enumerate(args: &EnumerateArgs, out: &mut String) -> Result<i32, Failure> {
    let (group, result) = run_search(&args.search, args.distributive, args.dedupe)?;
    let summary = result.summary();
    let rows = vec![
        vec!["raw_count".into(), summary.raw_count.to_string()],
        vec!["canonical_count".into(), summary.canonical_count.to_string()],
        vec!["distributive_count".into(), summary.distributive_count.to_string()],
    ];
    let _ = writeln!(out, "group {} acting on {} points", group.name, args.search.carrier);
    out.push_str(&table(&["quantity", "value"], &rows));
    if let Some(path) = &args.out {
        let mut lines = String::new();
        for a in &result.actions {
            lines.push_str(&serde_json::to_string(&ActionFile::from_action(&group, a)).expect("serializable"));
            lines.push('\n');
        }
        lines.push_str(&serde_json::to_string(&summary).expect("serializable"));
        lines.push('\n');
        io::write_text(path, &lines)?;
    }
    Ok(EXIT_OK)
}

fn witnesses(args: &WitnessArgs, out: &mut String) -> Result<i32, Failure> {
    let (_, result) = run_search(&args.search, false, false)?;
    let w = &result.witnesses;
    match &w.intersecting_orbits {
        Some(i) => {
            let _ = writeln!(
                out,
                "intersecting orbits: action #{} table {:?}: [{}] = {:?}, [{}] = {:?}",
                i.action_index, i.table, i.x, i.orbit_x, i.y, i.orbit_y
            );
        }
        None => out.push_str("intersecting orbits: none at this scale\n"),
    }
    match &w.non_bi_invariant_union {
        Some(u) => {
            let _ = writeln!(
                out,
                "non-bi-invariant union: action #{} table {:?}: {:?} and {:?} are bi-invariant, G(A,A) of their union is {:?}",
                u.action_index, u.table, u.first, u.second, u.union_image
            );
        }
        None => out.push_str("non-bi-invariant union: none at this scale\n"),
    }
    write_out(args.out.as_deref(), &io::to_pretty_json(w))?;
    Ok(EXIT_OK)
}

fn topology_check(args: &TopologyCheckArgs, out: &mut String) -> Result<i32, Failure> {
    let (_, action) = io::load_action(&args.action)?;
    let topologies = if args.all_topologies {
        all_topologies(action.carrier())?.into_iter().filter(|t| args.probe_non_hausdorff || t.is_hausdorff()).collect()
    } else {
        vec![load_topology_or_discrete(args.topology.as_deref(), action.carrier())?]
    };
    let mut records: Vec<ProbeRecord> = Vec::new();
    for (i, t) in topologies.into_iter().enumerate() {
        let opens: Vec<String> = t.opens().iter().map(Subset::to_string).collect();
        let model = format!("topology#{i} {}", opens.join(" "));
        let space = TopologicalBinaryGSpace::new(action.clone(), t)?;
        records.extend(space.probe(&model)?);
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.model.clone(),
                r.check.clone(),
                r.outcome.to_string(),
                if r.hypotheses_met { "asserted" } else { "recorded" }.into(),
            ]
        })
        .collect();
    out.push_str(&table(&["model", "check", "outcome", "mode"], &rows));
    let mut lines = String::new();
    for r in &records {
        lines.push_str(&serde_json::to_string(r).expect("serializable"));
        lines.push('\n');
    }
    write_out(args.out.as_deref(), &lines)?;
    Ok(EXIT_OK)
}

fn induce(args: &InduceArgs, out: &mut String) -> Result<i32, Failure> {
    let (group, action) = io::load_action(&args.action)?;
    let o = action.induced_action(args.point)?;
    let rows: Vec<Vec<String>> =
        o.rows().iter().enumerate().map(|(g, r)| vec![group.label(g), format!("{r:?}")]).collect();
    out.push_str(&table(&["g", "x -> g x"], &rows));
    write_out(args.out.as_deref(), &io::to_pretty_json(&OrdinaryActionFile::from_action(&group, &o)))?;
    Ok(EXIT_OK)
}

fn embed(args: &EmbedArgs, out: &mut String) -> Result<i32, Failure> {
    let (group, o) = io::load_ordinary(&args.ordinary)?;
    let action = BinaryAction::from_ordinary(&o);
    let _ = writeln!(
        out,
        "embedded binary action on {} points, distributive: {}",
        action.carrier(),
        action.is_distributive()
    );
    write_out(args.out.as_deref(), &io::to_pretty_json(&ActionFile::from_action(&group, &action)))?;
    Ok(EXIT_OK)
}

fn conjugation(args: &ConjugationArgs, out: &mut String) -> Result<i32, Failure> {
    let ambient = io::resolve_group(&args.group)?;
    let mut generators = Vec::new();
    for token in args.generators.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let g = ambient
            .parse_element(token)
            .ok_or_else(|| Failure::Usage(format!("unknown element {token:?} of group {}", ambient.name)))?;
        generators.push(g);
    }
    let subgroup = ambient.group.subgroup_closure(&generators).map_err(|e| Failure::Usage(e.to_string()))?;
    let coset = ConjugationCosetAction::new(&ambient.group, subgroup)?;
    let labels = ambient.labels.as_ref().map(|l| coset.embedding.iter().map(|&g| l[g].clone()).collect());
    let acting = NamedGroup {
        name: format!("{} in {}", format_subgroup(&ambient, &coset.embedding), ambient.name),
        group: coset.action.group_arc().clone(),
        labels,
    };
    let space = OrbitSpace::new(&coset.action)?;
    let _ = writeln!(
        out,
        "subgroup of order {} acting on {} points: {} orbits",
        coset.embedding.len(),
        ambient.group.order(),
        space.class_count()
    );
    write_out(args.out.as_deref(), &io::to_pretty_json(&ActionFile::from_action(&acting, &coset.action)))?;
    Ok(EXIT_OK)
}

fn format_subgroup(group: &NamedGroup, elements: &[usize]) -> String {
    let labels: Vec<String> = elements.iter().map(|&g| group.label(g)).collect();
    format!("{{{}}}", labels.join(","))
}
