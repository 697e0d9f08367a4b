//! Seeded random graphs and instances for tests and benchmarks.

use crate::cost::Cost;
use crate::graph::Graph;
use crate::model::{ColorKind, ColorTable, CostSpec, Instance, Pebble, Problem};
use crate::rng::SplitMix64;

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(rng: &mut SplitMix64, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random spanning tree plus `extra` random edges.
pub fn random_connected_graph(rng: &mut SplitMix64, n: usize, extra: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(rng.below_usize(v), v);
    }
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 100 * (extra + 1) {
        attempts += 1;
        let (a, b) = (rng.below_usize(n), rng.below_usize(n));
        if a != b && g.add_edge(a, b) {
            added += 1;
        }
    }
    g
}

/// Random cost specification for a pebble starting at `at`; staying put is always free.
pub fn random_cost(rng: &mut SplitMix64, n: usize, at: usize) -> CostSpec {
    match rng.below(5) {
        0 | 1 => CostSpec::Distance,
        2 => CostSpec::Steps(1 + rng.below(2) as u32),
        3 => CostSpec::Moved,
        _ => CostSpec::Table(
            (0..n)
                .map(|v| match v == at {
                    true => Cost::ZERO,
                    false if rng.chance(0.2) => Cost::INF,
                    false => Cost::new(rng.below(5)),
                })
                .collect(),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Distinct,
    Collocated,
    Matching,
    Facility,
    Separation,
}

pub const FAMILIES: [Family; 5] = [Family::Distinct, Family::Collocated, Family::Matching, Family::Facility, Family::Separation];

fn table() -> ColorTable {
    ColorTable::of(&[("red", ColorKind::Main), ("blue", ColorKind::Facility), ("gray", ColorKind::Obnoxious)])
}

/// Small instance of a solver family: at most 6 vertices, 4 pebbles, and `l ≤ 4`.
pub fn small_instance(rng: &mut SplitMix64, family: Family) -> Instance {
    let n = 2 + rng.below_usize(5);
    let p = 0.3 + 0.4 * rng.unit();
    let graph = random_graph(rng, n, p);
    let (mains, others, other_color, problem) = match family {
        Family::Distinct => (1 + rng.below_usize(4), 0, 1, Problem::new("connectivity")),
        Family::Collocated => (1 + rng.below_usize(4), 0, 1, Problem::new("connectivity").with("collocated", true)),
        Family::Matching => (2 + 2 * rng.below_usize(2), 0, 1, Problem::new("matching")),
        Family::Facility => {
            let k = 1 + rng.below_usize(2);
            (k, rng.below_usize(5 - k), 1, Problem::new("facility-location"))
        }
        Family::Separation => {
            let k = 1 + rng.below_usize(2);
            (k, rng.below_usize(5 - k), 2, Problem::new("separation").with("o", rng.below(2)))
        }
    };
    let l = 1 + rng.below_usize(4);
    let mut pebbles = vec![];
    for id in 0..mains {
        let at = rng.below_usize(n);
        pebbles.push(Pebble { id, color: 0, at, cost: random_cost(rng, n, at) });
    }
    // Obnoxious pebbles share one table-free specification so the equal-cost condition holds.
    let shared = match random_cost(rng, n, 0) {
        CostSpec::Table(_) => CostSpec::Distance,
        spec => spec,
    };
    for id in mains..mains + others {
        let at = rng.below_usize(n);
        let cost = if other_color == 2 { shared.clone() } else { random_cost(rng, n, at) };
        pebbles.push(Pebble { id, color: other_color, at, cost });
    }
    Instance::new(graph, table(), pebbles, l, None, problem, false).expect("generated instance is valid")
}

/// Random stacked triangulation on `n` vertices with each edge kept with probability `keep`,
/// vertex labels shuffled. Always planar.
pub fn random_planar_graph(rng: &mut SplitMix64, n: usize, keep: f64) -> Graph {
    let mut full = Graph::new(n);
    let mut faces: Vec<[usize; 3]> = vec![];
    for v in 1..n.min(3) {
        for u in 0..v {
            full.add_edge(u, v);
        }
    }
    if n >= 3 {
        faces.push([0, 1, 2]);
        faces.push([0, 1, 2]);
    }
    for v in 3..n {
        let f = faces.swap_remove(rng.below_usize(faces.len()));
        for &u in &f {
            full.add_edge(u, v);
        }
        faces.extend([[f[0], f[1], v], [f[0], f[2], v], [f[1], f[2], v]]);
    }
    let mut label: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut label);
    let mut g = Graph::new(n);
    for (a, b) in full.edges() {
        if rng.chance(keep) {
            g.add_edge(label[a], label[b]);
        }
    }
    g
}

/// Planar Steiner instance with at most `max_n` vertices, stationary red terminals, and at
/// most three blue connectors. `l` is the vertex count, so only the connectors limit solutions.
pub fn planar_steiner_instance(rng: &mut SplitMix64, max_n: usize) -> Instance {
    let n = 2 + rng.below_usize(max_n.max(2) - 1);
    let keep = 0.5 + 0.4 * rng.unit();
    let graph = random_planar_graph(rng, n, keep);
    let reds = 1 + rng.below_usize(4);
    let blues = rng.below_usize(4);
    let mut pebbles = vec![];
    for id in 0..reds {
        pebbles.push(Pebble { id, color: 0, at: rng.below_usize(n), cost: CostSpec::Steps(0) });
    }
    for id in reds..reds + blues {
        let at = rng.below_usize(n);
        pebbles.push(Pebble { id, color: 1, at, cost: random_cost(rng, n, at) });
    }
    let colors = ColorTable::of(&[("red", ColorKind::Main), ("blue", ColorKind::Facility)]);
    Instance::new(graph, colors, pebbles, n, None, Problem::new("steiner"), true).expect("generated instance is valid")
}

/// Collocated connectivity instance on a sparse connected graph with `n` vertices and `k`
/// distance-cost pebbles, `l = k`.
pub fn scaling_instance(rng: &mut SplitMix64, n: usize, k: usize) -> Instance {
    let graph = random_connected_graph(rng, n, n);
    let pebbles = (0..k).map(|id| Pebble { id, color: 0, at: rng.below_usize(n), cost: CostSpec::Distance }).collect();
    let colors = ColorTable::of(&[("red", ColorKind::Main)]);
    Instance::new(graph, colors, pebbles, k, None, Problem::new("connectivity").with("collocated", true), false)
        .expect("generated instance is valid")
}
