//! Command-line front end: instance files in, one JSON result line out.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use movekit::connectivity::connectivity_solve;
use movekit::format::{instance_to_json, parse_edge_list, parse_instance, GraphFile};
use movekit::fpt::{solve_fpt, FptOptions};
use movekit::generators::{csp_to_movement, domset_to_facility, domset_to_steiner, CspInstance};
use movekit::oracle::{oracle_solve, oracle_solve_member, OracleLimits, OracleOutcome};
use movekit::properties::{Property, PropertyKind};
use movekit::rng::SplitMix64;
use movekit::steiner::steiner_planar_solve;
use movekit::{ColorKind, ColorTable, CostSpec, Error, Instance, MulticoloredGraph, Pebble, Problem, Solution};

pub mod corpus;

#[derive(Parser, Debug)]
#[command(name = "movekit", version, about = "Minimum-movement pebble problems on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Solve an instance file by exhaustive search.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        max_plans: u128,
    },
    /// Print the minimal pattern catalog of a problem.
    Patterns {
        #[arg(long)]
        problem: String,
        /// Problem parameters as a JSON object.
        #[arg(long, default_value = "{}")]
        params: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Emit the movement instance of a binary CSP (JSON file or random).
    GenCsp {
        #[arg(long, conflicts_with_all = ["variables", "domain"])]
        csp: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        variables: usize,
        #[arg(long, default_value_t = 2)]
        domain: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "connectivity")]
        problem: String,
    },
    /// Emit the facility-location instance of a dominating-set question.
    GenDomsetFacility {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        d: usize,
        /// Let every vertex dominate itself.
        #[arg(long)]
        closed: bool,
    },
    /// Emit the Steiner instance of a dominating-set question.
    GenDomsetSteiner {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        closed: bool,
    },
    /// Solve the built-in corpus with the automatic solver and the oracle.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
    },
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
    solver: SolverChoice,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Objective::Total)]
    objective: Objective,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Auto,
    Fpt,
    Convolution,
    SteinerPlanar,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Total,
    MaxSteps,
}

/// Exit code, standard output, and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(message: String) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: message }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub id: usize,
    pub to: usize,
}

/// The single-line result record.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: &'static str,
    pub cost: Option<u64>,
    pub plan: Vec<Move>,
    pub witness: Vec<usize>,
    pub seed: u64,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    fn solved(s: &Solution, cost: u64, seed: u64, trials: u64) -> Report {
        Report {
            status: "optimal",
            cost: Some(cost),
            plan: s.plan.targets.iter().enumerate().map(|(id, &to)| Move { id, to }).collect(),
            witness: s.witness.clone(),
            seed,
            trials,
            message: None,
        }
    }

    fn failed(e: &Error, seed: u64, trials: u64) -> Report {
        let status = if exit_code(e) == 1 { "infeasible" } else { "error" };
        Report { status, cost: None, plan: vec![], witness: vec![], seed, trials, message: Some(e.to_string()) }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible | Error::BudgetExceeded { .. } => 1,
        Error::TooLarge { .. } | Error::LimitExceeded { .. } => 3,
        _ => 2,
    }
}

/// Solver the automatic choice resolves to.
pub fn pick_solver(inst: &Instance) -> movekit::Result<SolverChoice> {
    let prop = Property::for_instance(inst)?;
    let obnoxious = !inst.pebbles_of_kind(ColorKind::Obnoxious).is_empty();
    Ok(match prop.kind {
        PropertyKind::Connectivity { collocated: true } if !obnoxious && inst.l >= inst.k() => SolverChoice::Convolution,
        PropertyKind::Steiner if inst.planar && !obnoxious => SolverChoice::SteinerPlanar,
        _ if !prop.closed_under_edge_addition() => SolverChoice::Oracle,
        _ => SolverChoice::Fpt,
    })
}

/// Runs one solver; returns the solution and the number of randomized trials spent.
pub fn solve_with(inst: &Instance, solver: SolverChoice, epsilon: f64, seed: u64) -> movekit::Result<(Solution, u64)> {
    let options = FptOptions { epsilon, seed, ..FptOptions::default() };
    match solver {
        SolverChoice::Auto => solve_with(inst, pick_solver(inst)?, epsilon, seed),
        SolverChoice::Fpt => {
            let catalog = Property::for_instance(inst)?.catalog(inst.k(), inst.l)?;
            let report = solve_fpt(inst, &catalog, &options)?;
            let trials = report.labelings;
            Ok((report.into_solution()?, trials))
        }
        SolverChoice::Convolution => Ok((connectivity_solve(inst)?, 0)),
        SolverChoice::SteinerPlanar => {
            let report = steiner_planar_solve(inst, &options)?;
            let trials = report.labelings;
            Ok((report.into_solution()?, trials))
        }
        SolverChoice::Oracle => oracle(inst, OracleLimits::default()).map(|s| (s, 0)),
    }
}

fn oracle(inst: &Instance, limits: OracleLimits) -> movekit::Result<Solution> {
    let prop = Property::for_instance(inst)?;
    let outcome = if prop.closed_under_edge_addition() {
        oracle_solve(inst, &prop.catalog(inst.k(), inst.l)?, limits)?
    } else {
        oracle_solve_member(inst, &prop, limits)?
    };
    match outcome {
        OracleOutcome::Solved(s) => Ok(s),
        OracleOutcome::Infeasible => Err(Error::Infeasible),
        OracleOutcome::OverBudget { optimum, budget } => Err(Error::BudgetExceeded { optimum: optimum.raw(), budget }),
    }
}

fn stationary(inst: &Instance, p: usize) -> bool {
    let at = inst.pebbles[p].at;
    inst.cost_row(p).iter().enumerate().all(|(v, c)| v == at || c.is_inf())
}

/// Same instance with every non-stationary pebble limited to `d` free steps and no budget.
pub fn with_step_bound(inst: &Instance, d: u32) -> movekit::Result<Instance> {
    let pebbles = (0..inst.pebbles.len())
        .map(|p| {
            let cost = if stationary(inst, p) { inst.pebbles[p].cost.clone() } else { CostSpec::Steps(d) };
            Pebble { cost, ..inst.pebbles[p].clone() }
        })
        .collect();
    Instance::new(inst.graph.clone(), inst.colors.clone(), pebbles, inst.l, None, inst.problem.clone(), inst.planar)
}

/// Least step bound `d ∈ [0, n]` admitting a solution, found by binary search.
pub fn solve_max_steps(inst: &Instance, solver: SolverChoice, epsilon: f64, seed: u64) -> movekit::Result<(Solution, u64, u64)> {
    let n = inst.n() as u32;
    let probes = (f64::from(n) + 1.0).log2().ceil().max(1.0);
    let eps = epsilon / probes;
    let mut trials = 0;
    let mut probe = |d: u32| -> movekit::Result<Option<Solution>> {
        match solve_with(&with_step_bound(inst, d)?, solver, eps, seed) {
            Ok((s, t)) => {
                trials += t;
                Ok(Some(s))
            }
            Err(Error::Infeasible) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let mut best = probe(n)?.ok_or(Error::Infeasible)?;
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Some(s) => {
                best = s;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok((best, u64::from(hi), trials))
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Outcome> {
    parse_instance(&read(path)?).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn report_outcome(result: movekit::Result<(Solution, u64, u64)>, seed: u64) -> Outcome {
    match result {
        Ok((s, cost, trials)) => Outcome::ok(Report::solved(&s, cost, seed, trials).to_line() + "\n"),
        Err(e) => {
            let code = exit_code(&e);
            Outcome { code, stdout: Report::failed(&e, seed, 0).to_line() + "\n", stderr: e.to_string() }
        }
    }
}

fn check_threads() -> Result<(), Outcome> {
    match std::env::var("MOVEKIT_THREADS") {
        Ok(v) if v.trim().parse::<usize>().is_err() => {
            Err(Outcome::usage(format!("MOVEKIT_THREADS must be a nonnegative integer, got {v:?}")))
        }
        _ => Ok(()),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::usage(text) };
        }
    };
    if let Err(out) = check_threads() {
        return out;
    }
    match dispatch(cli.command) {
        Ok(out) | Err(out) => out,
    }
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    Ok(match command {
        Command::Solve(a) => {
            let inst = load(&a.instance)?;
            let result = match a.objective {
                Objective::Total => {
                    solve_with(&inst, a.solver, a.epsilon, a.seed).map(|(s, t)| (s.clone(), s.cost.raw(), t))
                }
                Objective::MaxSteps => solve_max_steps(&inst, a.solver, a.epsilon, a.seed),
            };
            report_outcome(result, a.seed)
        }
        Command::Oracle { instance, max_plans } => {
            let inst = load(&instance)?;
            report_outcome(oracle(&inst, OracleLimits { max_plans }).map(|s| (s.clone(), s.cost.raw(), 0)), 0)
        }
        Command::Patterns { problem, params, k, l } => patterns(&problem, &params, k, l)?,
        Command::GenCsp { csp, variables, domain, seed, problem } => {
            let csp = match csp {
                Some(path) => serde_json::from_str::<CspInstance>(&read(&path)?)
                    .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
                    .and_then(|c| CspInstance::new(c.variables, c.domain, c.constraints).map_err(|e| Outcome::usage(e.to_string())))?,
                None => CspInstance::random(&mut SplitMix64::new(seed), variables, domain, 0.6, 0.35),
            };
            let colors = ColorTable::of(&[("red", ColorKind::Main)]);
            let mut f = MulticoloredGraph::new(csp.primal_graph(), 1);
            f.counts = vec![vec![1]; csp.variables];
            let inst = csp_to_movement(&csp, &f, &colors, Problem::new(&problem)).map_err(|e| Outcome::usage(e.to_string()))?;
            Outcome::ok(instance_to_json(&inst) + "\n")
        }
        Command::GenDomsetFacility { graph, k, d, closed } => {
            let g = parse_edge_list(&read(&graph)?).map_err(|e| Outcome::usage(format!("{}: {e}", graph.display())))?;
            Outcome::ok(instance_to_json(&domset_to_facility(&g, k, d, closed)) + "\n")
        }
        Command::GenDomsetSteiner { graph, k, closed } => {
            let g = parse_edge_list(&read(&graph)?).map_err(|e| Outcome::usage(format!("{}: {e}", graph.display())))?;
            Outcome::ok(instance_to_json(&domset_to_steiner(&g, k, closed)) + "\n")
        }
        Command::Selftest { seed, epsilon } => corpus::selftest(seed, epsilon),
    })
}

#[derive(Serialize)]
struct PatternPebble {
    color: String,
    at: usize,
}

#[derive(Serialize)]
struct PatternLine {
    graph: GraphFile,
    pebbles: Vec<PatternPebble>,
}

fn patterns(name: &str, params: &str, k: usize, l: usize) -> Result<Outcome, Outcome> {
    let params: serde_json::Map<String, serde_json::Value> =
        serde_json::from_str(params).map_err(|e| Outcome::usage(format!("--params: {e}")))?;
    let problem = Problem { name: name.to_string(), params };
    let colors = Property::default_colors(&problem);
    let catalog = Property::from_problem(&problem, &colors)
        .and_then(|p| p.catalog(k, l))
        .map_err(|e| Outcome { code: exit_code(&e), stdout: String::new(), stderr: e.to_string() })?;
    let mut out = String::new();
    for f in &catalog.patterns {
        let line = PatternLine {
            graph: GraphFile { n: f.n(), edges: f.graph.edges().into_iter().map(|(u, v)| [u, v]).collect() },
            pebbles: (0..f.n())
                .flat_map(|v| {
                    (0..colors.len()).flat_map(move |c| std::iter::repeat_n((c, v), f.counts[v][c] as usize))
                })
                .map(|(c, at)| PatternPebble { color: colors.get(c).name.clone(), at })
                .collect(),
        };
        out.push_str(&serde_json::to_string(&line).expect("pattern serializes"));
        out.push('\n');
    }
    Ok(Outcome::ok(out))
}
