//! Built-in instances for `selftest`.

use serde::Serialize;

use movekit::format::parse_instance;
use movekit::generators::{csp_to_movement, domset_to_facility, domset_to_steiner, Constraint, CspInstance};
use movekit::random::{planar_steiner_instance, small_instance, FAMILIES};
use movekit::rng::SplitMix64;
use movekit::{ColorKind, ColorTable, Graph, Instance, MulticoloredGraph, Problem};

use crate::{exit_code, pick_solver, solve_with, Outcome, SolverChoice};

pub const P5_COLLOCATED: &str = r#"{"graph":{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4]]},
"colors":[{"name":"red","kind":"main"}],
"pebbles":[{"id":0,"color":"red","at":0,"cost":{"kind":"distance"}},
{"id":1,"color":"red","at":2,"cost":{"kind":"distance"}},
{"id":2,"color":"red","at":4,"cost":{"kind":"distance"}}],
"problem":{"name":"connectivity","params":{"collocated":true}},"l":3}"#;

/// Named instances covering every solver route.
pub fn corpus() -> Vec<(String, Instance)> {
    let mut out = vec![("p5-collocated".to_string(), parse_instance(P5_COLLOCATED).expect("valid literal"))];
    for (f, family) in FAMILIES.iter().enumerate() {
        for seed in 0..6u64 {
            let inst = small_instance(&mut SplitMix64::keyed(seed, &[f as u64]), *family);
            out.push((format!("{family:?}-{seed}").to_lowercase(), inst));
        }
    }
    for seed in 0..4u64 {
        let inst = small_instance(&mut SplitMix64::keyed(seed, &[99]), FAMILIES[1]);
        let k = inst.k();
        let inst = Instance::new(inst.graph, inst.colors, inst.pebbles, k, None, inst.problem, false).expect("valid");
        out.push((format!("collocated-exact-{seed}"), inst));
    }
    for seed in 0..6u64 {
        out.push((format!("planar-steiner-{seed}"), planar_steiner_instance(&mut SplitMix64::new(seed), 7)));
    }
    let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid");
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).expect("valid");
    out.push(("domset-facility-triangle".into(), domset_to_facility(&triangle, 1, 0, true)));
    out.push(("domset-facility-edgeless".into(), domset_to_facility(&Graph::new(2), 1, 0, true)));
    out.push(("domset-steiner-star".into(), domset_to_steiner(&star, 1, true)));
    let csp = CspInstance::new(2, 2, vec![Constraint { vars: (0, 1), allowed: vec![(0, 1)] }]).expect("valid");
    let mut f = MulticoloredGraph::new(csp.primal_graph(), 1);
    f.counts = vec![vec![1]; 2];
    let colors = ColorTable::of(&[("red", ColorKind::Main)]);
    out.push(("csp-edge".into(), csp_to_movement(&csp, &f, &colors, Problem::new("connectivity")).expect("valid")));
    out
}

#[derive(Serialize)]
struct Line<'a> {
    name: &'a str,
    solver: String,
    status: &'static str,
    cost: Option<u64>,
    trials: u64,
    oracle_status: &'static str,
    oracle_cost: Option<u64>,
}

fn status(r: &movekit::Result<(movekit::Solution, u64)>) -> &'static str {
    match r {
        Ok(_) => "optimal",
        Err(e) if exit_code(e) == 1 => "infeasible",
        Err(_) => "error",
    }
}

/// Solves every corpus instance with the automatic solver and the oracle; one JSON line each,
/// then a summary. Exit code 1 if any status disagrees.
pub fn selftest(seed: u64, epsilon: f64) -> Outcome {
    let mut stdout = String::new();
    let (mut agree, mut total) = (0, 0);
    for (name, inst) in corpus() {
        let solver = pick_solver(&inst).map_or("error".to_string(), |s| format!("{s:?}").to_lowercase());
        let got = solve_with(&inst, SolverChoice::Auto, epsilon, seed);
        let truth = solve_with(&inst, SolverChoice::Oracle, epsilon, seed);
        let line = Line {
            name: &name,
            solver,
            status: status(&got),
            cost: got.as_ref().ok().map(|(s, _)| s.cost.raw()),
            trials: got.as_ref().map_or(0, |(_, t)| *t),
            oracle_status: status(&truth),
            oracle_cost: truth.as_ref().ok().map(|(s, _)| s.cost.raw()),
        };
        total += 1;
        agree += usize::from(line.status == line.oracle_status);
        stdout.push_str(&serde_json::to_string(&line).expect("line serializes"));
        stdout.push('\n');
    }
    stdout.push_str(&format!("{{\"instances\":{total},\"status_agreement\":{agree}}}\n"));
    Outcome { code: if agree == total { 0 } else { 1 }, stdout, stderr: String::new() }
}
