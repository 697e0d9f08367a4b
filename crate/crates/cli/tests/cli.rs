use std::path::PathBuf;
use std::process::Command;

use movekit_cli::corpus::P5_COLLOCATED;
use movekit_cli::run;
use serde_json::Value;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("movekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(line: &str) -> Value {
    serde_json::from_str(line.trim()).unwrap()
}

#[test]
fn convolution_on_the_path() {
    let p5 = scratch("p5.json", P5_COLLOCATED);
    let out = run(["movekit", "solve", "--instance", p5.to_str().unwrap(), "--solver", "convolution"]);
    assert_eq!(out.code, 0);
    let v = json(&out.stdout);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["cost"], 2);
    assert_eq!(out.stdout.matches('\n').count(), 1);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["cost", "plan", "seed", "status", "trials", "witness"]);
    assert!(out.stdout.starts_with("{\"status\":\"optimal\",\"cost\":2,\"plan\":"));
}

#[test]
fn least_step_bound_on_the_path() {
    let p5 = scratch("p5-steps.json", P5_COLLOCATED);
    for solver in ["auto", "fpt", "oracle"] {
        let out = run(["movekit", "solve", "--instance", p5.to_str().unwrap(), "--objective", "max-steps", "--solver", solver]);
        assert_eq!(out.code, 0, "{solver}");
        assert_eq!(json(&out.stdout)["cost"], 1, "{solver}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let bad = scratch("bogus.json", &P5_COLLOCATED.replace("\"connectivity\"", "\"bogus\""));
    let out = run(["movekit", "solve", "--instance", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bogus"));
    let field = scratch("field.json", &P5_COLLOCATED.replace("\"l\":3", "\"l\":3,\"extra\":1"));
    let out = run(["movekit", "solve", "--instance", field.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("extra"));
    assert_eq!(run(["movekit", "solve"]).code, 2);
    assert_eq!(run(["movekit", "patterns", "--problem", "bogus", "--k", "1", "--l", "1"]).code, 2);
}

#[test]
fn infeasible_and_limit_exit_codes() {
    let stuck = scratch("stuck.json", &P5_COLLOCATED.replace("{\"kind\":\"distance\"}", "{\"kind\":\"steps\",\"max\":0}"));
    let out = run(["movekit", "solve", "--instance", stuck.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out.stdout)["status"], "infeasible");
    let out = run(["movekit", "oracle", "--instance", stuck.to_str().unwrap(), "--max-plans", "0"]);
    assert_eq!(out.code, 3);
    let budget = scratch("budget.json", &P5_COLLOCATED.replace("\"l\":3", "\"l\":3,\"budget\":1"));
    let out = run(["movekit", "solve", "--instance", budget.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(json(&out.stdout)["message"].as_str().unwrap().contains("budget"));
}

#[test]
fn patterns_lists_trees() {
    let out = run(["movekit", "patterns", "--problem", "connectivity", "--k", "4", "--l", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 2);
    let out = run(["movekit", "patterns", "--problem", "st-d-connectivity", "--params", "{\"d\":2}", "--k", "2", "--l", "4"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().all(|l| json(l)["pebbles"].as_array().is_some()));
}

#[test]
fn generators_emit_solvable_instances() {
    let triangle = scratch("triangle.txt", "3 3\n0 1\n1 2\n0 2\n");
    let out = run(["movekit", "gen-domset-facility", "--graph", triangle.to_str().unwrap(), "--k", "1", "--d", "1"]);
    assert_eq!(out.code, 0);
    let inst = movekit::format::parse_instance(&out.stdout).unwrap();
    assert_eq!(inst.n(), 13);
    let closed = run(["movekit", "gen-domset-steiner", "--graph", triangle.to_str().unwrap(), "--k", "1", "--closed"]);
    let file = scratch("steiner.json", &closed.stdout);
    let solved = run(["movekit", "solve", "--instance", file.to_str().unwrap(), "--solver", "oracle"]);
    assert_eq!(json(&solved.stdout)["cost"], 0);
    let csp = run(["movekit", "gen-csp", "--variables", "3", "--domain", "2", "--seed", "4"]);
    assert_eq!(csp.code, 0);
    assert_eq!(movekit::format::parse_instance(&csp.stdout).unwrap().n(), 3 * 2 + 3);
}

#[test]
fn binary_output_is_repeatable() {
    let p5 = scratch("p5-bin.json", P5_COLLOCATED);
    let exe = env!("CARGO_BIN_EXE_movekit");
    let runs: Vec<_> = (0..2)
        .map(|_| Command::new(exe).args(["solve", "--instance", p5.to_str().unwrap(), "--solver", "fpt", "--seed", "7"]).output().unwrap())
        .collect();
    assert!(runs[0].status.success());
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let bad = Command::new(exe).args(["solve", "--instance", p5.to_str().unwrap()]).env("MOVEKIT_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
