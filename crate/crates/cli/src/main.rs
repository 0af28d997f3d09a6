use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use edgepart::bounds::{class_bounds, known_value, BoundPair};
use edgepart::construct::construct;
use edgepart::cover::{
    cover_runs, cover_to_partition, estimate_cover_probability, exact_cover_probability, random_c4_cover,
};
use edgepart::hardness::{
    build_gstar, cherry_orchard_spec, extend_coloring, extract_coloring, gadget_color_property,
    three_edge_coloring, validate_gadget_shape, Gadget,
};
use edgepart::io::{parse_edge_list, partition_from_json, partition_to_dot, partition_to_edge_list, partition_to_json, partition_value};
use edgepart::solver::{ChiOutcome, SearchBudget, Solver};
use edgepart::{complete_graph, verify_partition, ClassSpec, Error};

/// Largest table size solved without an explicit budget.
const TABLE_UNBUDGETED_MAX: usize = 5;

#[derive(Parser)]
#[command(name = "edgepart", version, about = "Forbidden-subgraph bipartite edge partitions")]
struct Cli {
    /// Worker threads for parallel work (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a partition of K_n for a registered class.
    Construct {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a partition file.
    Verify {
        #[arg(long)]
        partition: PathBuf,
        /// Check against this class instead of the file's own.
        #[arg(long)]
        class: Option<String>,
    },
    /// Compute the exact minimum number of templates for a host graph.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        class: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Include wall time in the statistics.
        #[arg(long)]
        timing: bool,
    },
    /// Lower and upper bounds for K_n.
    Bounds {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
    },
    /// Cross-check formulas, constructions, solver and bounds for every class.
    Table {
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Random C4-free cover of K_n by projective plane incidence graphs.
    #[command(name = "cover-c4")]
    CoverC4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        /// Throw limit; defaults to ceil(10 sqrt(n) ln n).
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent runs on streams 0..runs.
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Estimate the single-throw cover probability of one edge instead.
        #[arg(long)]
        trials: Option<u64>,
        /// Write the resulting partition (single run only).
        #[arg(long)]
        emit_partition: Option<PathBuf>,
    },
    /// Gadget checks and the cubic-graph reduction.
    #[command(subcommand)]
    Gadget(GadgetCommand),
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Check a gadget's shape and coloring property.
    Verify { file: PathBuf },
    /// Build G* from a cubic graph and lift a 3-edge-coloring to it.
    Reduce {
        #[arg(long)]
        cubic: PathBuf,
        /// Gadget file; the bundled bird gadget when omitted.
        #[arg(long)]
        gadget: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Node limit for the search.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Time limit in seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Prune branches that no remaining edges can repair.
    #[arg(long)]
    repair_prune: bool,
}

impl SearchArgs {
    fn budgeted(&self) -> bool {
        self.budget_nodes.is_some() || self.budget_secs.is_some()
    }

    fn solver(&self) -> Result<Solver, Failure> {
        let time_limit = match self.budget_secs {
            Some(s) if !(s.is_finite() && s > 0.0) => return Err(Failure::usage("--budget-secs must be positive")),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(Solver {
            budget: SearchBudget {
                max_nodes: self.budget_nodes,
                time_limit,
            },
            repair_prune: self.repair_prune,
            parallel: false,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edgelist,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidState(_) | Error::InternalInconsistency(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Construct { class, n, out, format } => cmd_construct(&class, n, out.as_deref(), format),
        Command::Verify { partition, class } => cmd_verify(&partition, class.as_deref()),
        Command::Solve { graph, class, search, timing } => cmd_solve(&graph, &class, &search, timing),
        Command::Bounds { class, n } => cmd_bounds(&class, n),
        Command::Table { nmax, search, json } => cmd_table(nmax, &search, json),
        Command::CoverC4 { n, q, kmax, seed, runs, trials, emit_partition } => {
            cmd_cover(n, q, kmax, seed, runs, trials, emit_partition.as_deref())
        }
        Command::Gadget(GadgetCommand::Verify { file }) => cmd_gadget_verify(&file),
        Command::Gadget(GadgetCommand::Reduce { cubic, gadget, out }) => {
            cmd_gadget_reduce(&cubic, gadget.as_deref(), out.as_deref())
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn parse_class(name: &str) -> Result<ClassSpec, Failure> {
    name.parse().map_err(|e: Error| Failure::usage(format!("bad class name {name:?}: {e}")))
}

fn registered_class(name: &str) -> Result<ClassSpec, Failure> {
    let spec = parse_class(name)?;
    if !spec.is_registered() {
        return Err(Failure::usage(format!("class {spec} is not one of the registered classes")));
    }
    Ok(spec)
}

fn cmd_construct(class: &str, n: usize, out: Option<&Path>, format: Format) -> CmdResult {
    let spec = registered_class(class)?;
    let p = construct(&spec, n)?;
    let report = verify_partition(&p, &spec);
    if !report.valid {
        return Err(Failure::domain(format!("construction failed verification: {}", to_json(&report))));
    }
    let text = match format {
        Format::Json => partition_to_json(&p, &spec),
        Format::Dot => partition_to_dot(&p),
        Format::Edgelist => partition_to_edge_list(&p),
    };
    emit(out, &text)?;
    eprintln!("{spec} n={n}: {} templates", p.len());
    match known_value(&spec, n) {
        Some(v) if v != p.len() => {
            eprintln!("mismatch: known value is {v}, construction has {}", p.len());
            Ok(1)
        }
        _ => Ok(0),
    }
}

fn cmd_verify(path: &Path, class: Option<&str>) -> CmdResult {
    let (p, own) = partition_from_json(&read(path)?)?;
    let spec = match class {
        Some(name) => parse_class(name)?,
        None => own,
    };
    let report = verify_partition(&p, &spec);
    print!("{}", to_json(&report));
    Ok(if report.valid { 0 } else { 1 })
}

fn cmd_solve(path: &Path, class: &str, search: &SearchArgs, timing: bool) -> CmdResult {
    let g = parse_edge_list(&read(path)?)?;
    let spec = parse_class(class)?;
    match search.solver()?.chi_prime(&g, &spec)? {
        ChiOutcome::Solved(r) => {
            let mut stats = serde_json::to_value(r.stats).expect("serializable");
            if timing {
                stats["elapsed_ms"] = json!(r.stats.elapsed.as_millis() as u64);
            }
            let doc = json!({
                "chi": r.chi,
                "witness": partition_value(&r.witness, &spec),
                "stats": stats,
            });
            print!("{}", to_json(&doc));
            Ok(0)
        }
        ChiOutcome::BudgetExhausted { proven_lower, stats } => {
            let doc = json!({
                "status": "budget-exhausted",
                "proven_lower": proven_lower,
                "stats": stats,
            });
            print!("{}", to_json(&doc));
            Ok(3)
        }
    }
}

#[derive(Serialize)]
struct BoundsDoc {
    class: String,
    n: usize,
    #[serde(flatten)]
    bounds: BoundPair,
    known_value: Option<usize>,
}

fn cmd_bounds(class: &str, n: usize) -> CmdResult {
    let spec = registered_class(class)?;
    let bounds = class_bounds(&spec, n)?;
    let doc = BoundsDoc {
        class: spec.name(),
        n,
        known_value: known_value(&spec, n),
        bounds,
    };
    print!("{}", to_json(&doc));
    Ok(0)
}

#[derive(Serialize)]
struct TableRow {
    class: String,
    n: usize,
    formula: Option<usize>,
    construction: Option<usize>,
    solver: Option<usize>,
    lower: usize,
    upper: Option<usize>,
    problems: Vec<String>,
}

fn table_row(spec: &ClassSpec, n: usize, solver: &Solver) -> Result<TableRow, Failure> {
    let host = complete_graph(n)?;
    let bounds = class_bounds(spec, n)?;
    let formula = known_value(spec, n);
    let construction = match construct(spec, n) {
        Ok(p) => {
            if !verify_partition(&p, spec).valid {
                return Err(Failure::domain(format!("construction {spec} n={n} failed verification")));
            }
            Some(p.len())
        }
        Err(Error::UnsupportedClass(_) | Error::UnsupportedParameter(_) | Error::InvalidArgument(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let solved = match solver.chi_prime(&host, spec)? {
        ChiOutcome::Solved(r) => Some(r.chi),
        ChiOutcome::BudgetExhausted { .. } => None,
    };
    let mut problems = Vec::new();
    if let (Some(f), Some(s)) = (formula, solved) {
        if f != s {
            problems.push(format!("formula {f} != solver {s}"));
        }
    }
    if let (Some(f), Some(c)) = (formula, construction) {
        if f != c {
            problems.push(format!("formula {f} != construction {c}"));
        }
    }
    if let (Some(c), Some(s)) = (construction, solved) {
        if c < s {
            problems.push(format!("construction {c} below solver {s}"));
        }
    }
    if let Some(s) = solved {
        if s < bounds.lower || bounds.upper.is_some_and(|u| s > u) {
            problems.push(format!("solver {s} outside bounds"));
        }
    }
    Ok(TableRow {
        class: spec.name(),
        n,
        formula,
        construction,
        solver: solved,
        lower: bounds.lower,
        upper: bounds.upper,
        problems,
    })
}

fn cell(v: Option<usize>, missing: &str) -> String {
    v.map_or_else(|| missing.to_string(), |x| x.to_string())
}

fn cmd_table(nmax: usize, search: &SearchArgs, as_json: bool) -> CmdResult {
    if nmax < 2 {
        return Err(Failure::usage("--nmax must be at least 2"));
    }
    if nmax > TABLE_UNBUDGETED_MAX && !search.budgeted() {
        return Err(Failure::usage(format!(
            "--nmax above {TABLE_UNBUDGETED_MAX} needs --budget-nodes or --budget-secs"
        )));
    }
    let solver = search.solver()?;
    let cells: Vec<(ClassSpec, usize)> = ClassSpec::registry()
        .into_iter()
        .flat_map(|s| (2..=nmax).map(move |n| (s.clone(), n)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|(s, n)| table_row(s, *n, &solver))
        .collect::<Result<Vec<_>, _>>()?;

    if as_json {
        print!("{}", to_json(&rows));
    } else {
        println!("{:<14} {:>3} {:>8} {:>8} {:>8} {:>10}  notes", "class", "n", "formula", "constr", "solver", "bounds");
        for r in &rows {
            let bounds = format!("[{}, {}]", r.lower, cell(r.upper, "-"));
            println!(
                "{:<14} {:>3} {:>8} {:>8} {:>8} {:>10}  {}",
                r.class,
                r.n,
                cell(r.formula, "—"),
                cell(r.construction, "—"),
                cell(r.solver, "budget"),
                bounds,
                r.problems.join("; ")
            );
        }
    }
    let bad = rows.iter().filter(|r| !r.problems.is_empty()).count();
    if bad > 0 {
        eprintln!("{bad} row(s) disagree");
        return Ok(1);
    }
    Ok(0)
}

fn default_kmax(n: usize) -> usize {
    let n = n as f64;
    (10.0 * n.sqrt() * n.ln()).ceil() as usize
}

fn cmd_cover(
    n: usize,
    q: usize,
    kmax: Option<usize>,
    seed: u64,
    runs: usize,
    trials: Option<u64>,
    emit_partition: Option<&Path>,
) -> CmdResult {
    if let Some(trials) = trials {
        let estimate = estimate_cover_probability(n, q, trials, seed)?;
        let exact = exact_cover_probability(q)?;
        let doc = json!({
            "n": n,
            "q": q,
            "seed": seed,
            "trials": trials,
            "hits": *estimate.numer() * trials / *estimate.denom(),
            "estimate": *estimate.numer() as f64 / *estimate.denom() as f64,
            "exact": format!("{}/{}", exact.numer(), exact.denom()),
        });
        print!("{}", to_json(&doc));
        return Ok(0);
    }
    let k_max = kmax.unwrap_or_else(|| default_kmax(n));
    if runs == 0 {
        return Err(Failure::usage("--runs must be at least 1"));
    }
    if runs > 1 {
        if emit_partition.is_some() {
            return Err(Failure::usage("--emit-partition needs a single run"));
        }
        let all = cover_runs(n, q, k_max, seed, runs)?;
        print!("{}", to_json(&all));
        return Ok(if all.iter().all(|r| r.covered) { 0 } else { 1 });
    }
    let run = random_c4_cover(n, q, k_max, seed)?;
    print!("{}", to_json(&run));
    if !run.covered {
        eprintln!("not covered after {} throws", run.throws_used);
        return Ok(1);
    }
    if let Some(path) = emit_partition {
        let p = cover_to_partition(&run)?;
        let spec: ClassSpec = "C4".parse().expect("valid class");
        let report = verify_partition(&p, &spec);
        if !report.valid {
            return Err(Failure::domain(format!("cover partition failed verification: {}", to_json(&report))));
        }
        emit(Some(path), &partition_to_json(&p, &spec))?;
    }
    Ok(0)
}

fn load_gadget(path: Option<&Path>) -> Result<Gadget, Failure> {
    match path {
        Some(p) => Ok(Gadget::from_json(&read(p)?)?),
        None => Ok(Gadget::bird()),
    }
}

fn cmd_gadget_verify(path: &Path) -> CmdResult {
    let gadget = load_gadget(Some(path))?;
    let shape = validate_gadget_shape(&gadget);
    let report = if shape.is_empty() { Some(gadget_color_property(&gadget)?) } else { None };
    let certifies = report.as_ref().is_some_and(|r| r.certifies());
    let doc = json!({
        "shape_violations": shape,
        "coloring": report,
        "certifies": certifies,
    });
    print!("{}", to_json(&doc));
    Ok(if certifies { 0 } else { 1 })
}

fn cmd_gadget_reduce(cubic: &Path, gadget: Option<&Path>, out: Option<&Path>) -> CmdResult {
    let g = parse_edge_list(&read(cubic)?)?;
    let gadget = load_gadget(gadget)?;
    let gstar = build_gstar(&g, &gadget)?;
    let report = gadget_color_property(&gadget)?;
    if !report.certifies() {
        return Err(Failure::domain("gadget does not have the required coloring property"));
    }
    let Some(coloring) = three_edge_coloring(&g)? else {
        eprintln!("the cubic graph has no 3-edge-coloring, so G* has no 3-template cherry-orchard partition");
        return Ok(1);
    };
    let p = extend_coloring(&gstar, &coloring, &report)?;
    let spec = cherry_orchard_spec();
    let verdict = verify_partition(&p, &spec);
    if !verdict.valid {
        return Err(Failure::domain(format!("lifted partition failed verification: {}", to_json(&verdict))));
    }
    if extract_coloring(&gstar, &p)? != coloring {
        return Err(Failure::domain("coloring did not survive the round trip"));
    }
    emit(out, &partition_to_json(&p, &spec))?;
    eprintln!(
        "G* has {} vertices and {} edges; 3 cherry-orchard templates",
        gstar.graph.n(),
        gstar.graph.edge_count()
    );
    Ok(0)
}
