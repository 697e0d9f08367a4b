//! Hardness reductions as instance generators, with brute-force deciders for the source problems.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{ColorKind, ColorTable, CostSpec, Instance, MulticoloredGraph, Pebble, Problem};
use crate::rng::SplitMix64;

/// A binary constraint: the pair `(vars.0, vars.1)` may take the value pairs in `allowed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub vars: (usize, usize),
    pub allowed: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspInstance {
    pub variables: usize,
    pub domain: usize,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(variables: usize, domain: usize, constraints: Vec<Constraint>) -> Result<CspInstance> {
        let mut pairs = BTreeSet::new();
        for c in &constraints {
            let (a, b) = c.vars;
            if a == b || a >= variables || b >= variables {
                return Err(Error::InvalidInstance(format!("constraint on ({a}, {b}) is not a pair of distinct variables")));
            }
            if !pairs.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInstance(format!("second constraint on ({a}, {b})")));
            }
            if c.allowed.iter().any(|&(x, y)| x >= domain || y >= domain) {
                return Err(Error::InvalidInstance(format!("constraint on ({a}, {b}) uses a value outside the domain")));
            }
        }
        Ok(CspInstance { variables, domain, constraints })
    }

    /// Graph on the variables with an edge per constraint.
    pub fn primal_graph(&self) -> Graph {
        let mut g = Graph::new(self.variables);
        for c in &self.constraints {
            g.add_edge(c.vars.0, c.vars.1);
        }
        g
    }

    /// Random CSP: each pair constrained with probability `density`, each value pair allowed
    /// with probability `allow`.
    pub fn random(rng: &mut SplitMix64, variables: usize, domain: usize, density: f64, allow: f64) -> CspInstance {
        let mut constraints = vec![];
        for a in 0..variables {
            for b in a + 1..variables {
                if rng.chance(density) {
                    let allowed = (0..domain)
                        .flat_map(|x| (0..domain).map(move |y| (x, y)))
                        .filter(|_| rng.chance(allow))
                        .collect::<Vec<_>>();
                    constraints.push(Constraint { vars: (a, b), allowed });
                }
            }
        }
        CspInstance { variables, domain, constraints }
    }
}

pub const CSP_BRUTE_LIMIT: u128 = 10_000_000;

/// Whether some assignment satisfies every constraint.
pub fn csp_brute(csp: &CspInstance) -> Result<bool> {
    let space = (csp.domain as u128).checked_pow(csp.variables as u32).unwrap_or(u128::MAX);
    if space > CSP_BRUTE_LIMIT {
        return Err(Error::LimitExceeded { size: space, limit: CSP_BRUTE_LIMIT });
    }
    if csp.domain == 0 {
        return Ok(csp.variables == 0);
    }
    let mut values = vec![0usize; csp.variables];
    loop {
        let ok = csp.constraints.iter().all(|c| c.allowed.contains(&(values[c.vars.0], values[c.vars.1])));
        if ok {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == csp.variables {
                return Ok(false);
            }
            values[i] += 1;
            if values[i] < csp.domain {
                break;
            }
            values[i] = 0;
            i += 1;
        }
    }
}

/// Movement instance that is one-step solvable iff the CSP is satisfiable.
///
/// Vertex `i * domain + j` stands for "variable `i` takes value `j`"; the pebble that `pattern`
/// places `t`-th sits on its own vertex after those, adjacent to every value vertex of its
/// variable. Pattern vertex `i` is variable `i`.
pub fn csp_to_movement(csp: &CspInstance, pattern: &MulticoloredGraph, colors: &ColorTable, problem: Problem) -> Result<Instance> {
    if pattern.n() != csp.variables || pattern.graph.edges() != csp.primal_graph().edges() {
        return Err(Error::PrimalMismatch("pattern graph differs from the primal graph".into()));
    }
    let main = colors.of_kind(ColorKind::Main);
    let mut owners = vec![];
    for v in 0..pattern.n() {
        let mut here = 0;
        for c in 0..colors.len() {
            let count = pattern.count(c, v);
            if count > 0 && !main.contains(&c) {
                return Err(Error::PrimalMismatch(format!("pattern vertex {v} holds a non-main pebble")));
            }
            here += count;
            owners.extend(std::iter::repeat_n((v, c), count as usize));
        }
        if here == 0 {
            return Err(Error::PrimalMismatch(format!("pattern vertex {v} holds no pebble")));
        }
    }
    let d = csp.domain;
    let base = csp.variables * d;
    let mut g = Graph::new(base + owners.len());
    for (i, &(var, _)) in owners.iter().enumerate() {
        for j in 0..d {
            g.add_edge(base + i, var * d + j);
        }
    }
    for c in &csp.constraints {
        for &(x, y) in &c.allowed {
            g.add_edge(c.vars.0 * d + x, c.vars.1 * d + y);
        }
    }
    let pebbles = owners
        .iter()
        .enumerate()
        .map(|(i, &(_, color))| Pebble { id: i, color, at: base + i, cost: CostSpec::Steps(1) })
        .collect();
    Instance::new(g, colors.clone(), pebbles, csp.variables, None, problem, false)
}

fn red_blue() -> ColorTable {
    ColorTable::of(&[("red", ColorKind::Main), ("blue", ColorKind::Facility)])
}

/// Facility-location instance from a dominating-set question.
///
/// Vertex 0 is the hub holding `k` blue pebbles, `1 + i` is `b_i`, and `1 + n + i` is `c_i`,
/// which holds a red pebble. Each ordered adjacent pair `(i, j)` gets a path with `d` interior
/// vertices from `b_i` to `c_j`. With `closed`, every `i` also gets a path from `b_i` to `c_i`,
/// so one-step solvability matches ordinary domination; without it, each vertex must have a
/// chosen neighbour.
pub fn domset_to_facility(source: &Graph, k: usize, d: usize, closed: bool) -> Instance {
    let n = source.n();
    let mut pairs: Vec<(usize, usize)> = source.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    if closed {
        pairs.extend((0..n).map(|i| (i, i)));
    }
    pairs.sort_unstable();
    let mut g = Graph::new(1 + 2 * n + d * pairs.len());
    for i in 0..n {
        g.add_edge(0, 1 + i);
    }
    let mut next = 1 + 2 * n;
    for &(i, j) in &pairs {
        let mut prev = 1 + i;
        for _ in 0..d {
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1 + n + j);
    }
    let mut pebbles: Vec<Pebble> = (0..n).map(|i| Pebble { id: i, color: 0, at: 1 + n + i, cost: CostSpec::Steps(1) }).collect();
    pebbles.extend((0..k).map(|b| Pebble { id: n + b, color: 1, at: 0, cost: CostSpec::Steps(1) }));
    let problem = Problem::new("facility-location").with("distance", d as u64).with("distinct", false);
    let l = g.n();
    Instance::new(g, red_blue(), pebbles, l, None, problem, false).expect("construction is valid")
}

/// Steiner instance from a dominating-set question.
///
/// Vertex 0 is the hub holding `k` blue pebbles, `1 + i` is `a_i`, and `1 + n + i` is `b_i`,
/// which holds a stationary red pebble. The `a` vertices form a clique and `a_i ~ b_j` for
/// adjacent `i, j` (and for `i = j` when `closed`).
pub fn domset_to_steiner(source: &Graph, k: usize, closed: bool) -> Instance {
    let n = source.n();
    let mut g = Graph::new(1 + 2 * n);
    for i in 0..n {
        g.add_edge(0, 1 + i);
        for j in i + 1..n {
            g.add_edge(1 + i, 1 + j);
        }
        if closed {
            g.add_edge(1 + i, 1 + n + i);
        }
    }
    for (i, j) in source.edges() {
        g.add_edge(1 + i, 1 + n + j);
        g.add_edge(1 + j, 1 + n + i);
    }
    let mut pebbles: Vec<Pebble> = (0..n).map(|i| Pebble { id: i, color: 0, at: 1 + n + i, cost: CostSpec::Steps(0) }).collect();
    pebbles.extend((0..k).map(|b| Pebble { id: n + b, color: 1, at: 0, cost: CostSpec::Steps(1) }));
    let l = g.n();
    Instance::new(g, red_blue(), pebbles, l, None, Problem::new("steiner"), false).expect("construction is valid")
}

pub const DOMSET_BRUTE_LIMIT: usize = 24;

/// Whether at most `k` vertices dominate the graph. Closed domination counts a vertex as
/// dominating itself; open (total) domination needs a chosen neighbour.
pub fn has_dominating_set(g: &Graph, k: usize, closed: bool) -> Result<bool> {
    let n = g.n();
    if n > DOMSET_BRUTE_LIMIT {
        return Err(Error::TooLarge { n, limit: DOMSET_BRUTE_LIMIT });
    }
    let reach: Vec<u32> = (0..n)
        .map(|v| {
            let around = g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u);
            if closed { around | 1 << v } else { around }
        })
        .collect();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok((0u32..1 << n).any(|set| {
        set.count_ones() as usize <= k && (0..n).filter(|&v| set >> v & 1 == 1).fold(0, |m, v| m | reach[v]) == full
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_solve_member, OracleLimits};
    use crate::properties::Property;

    fn one_step(inst: &Instance) -> bool {
        let prop = Property::for_instance(inst).unwrap();
        oracle_solve_member(inst, &prop, OracleLimits::default()).unwrap().solution().is_some()
    }

    fn edge_pattern() -> (MulticoloredGraph, ColorTable) {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let mut f = MulticoloredGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), 1);
        f.counts = vec![vec![1], vec![1]];
        (f, colors)
    }

    #[test]
    fn two_variable_csp() {
        let (f, colors) = edge_pattern();
        let csp = CspInstance::new(2, 2, vec![Constraint { vars: (0, 1), allowed: vec![(0, 1)] }]).unwrap();
        let inst = csp_to_movement(&csp, &f, &colors, Problem::new("connectivity")).unwrap();
        assert_eq!(inst.n(), 6);
        assert!(csp_brute(&csp).unwrap());
        assert!(one_step(&inst));
        let empty = CspInstance::new(2, 2, vec![Constraint { vars: (0, 1), allowed: vec![] }]).unwrap();
        assert!(!csp_brute(&empty).unwrap());
        assert!(!one_step(&csp_to_movement(&empty, &f, &colors, Problem::new("connectivity")).unwrap()));
    }

    #[test]
    fn primal_mismatch() {
        let (f, colors) = edge_pattern();
        let csp = CspInstance::new(2, 2, vec![]).unwrap();
        assert!(matches!(csp_to_movement(&csp, &f, &colors, Problem::new("connectivity")), Err(Error::PrimalMismatch(_))));
    }

    #[test]
    fn csp_brute_cases() {
        assert!(csp_brute(&CspInstance::new(3, 2, vec![]).unwrap()).unwrap());
        let xor = vec![(0, 1), (1, 0)];
        let chain = |third: Vec<(usize, usize)>| {
            CspInstance::new(
                3,
                2,
                vec![
                    Constraint { vars: (0, 1), allowed: xor.clone() },
                    Constraint { vars: (1, 2), allowed: xor.clone() },
                    Constraint { vars: (0, 2), allowed: third },
                ],
            )
            .unwrap()
        };
        // x0 != x1 and x1 != x2 force x0 == x2.
        assert!(csp_brute(&chain(vec![(0, 0), (1, 1)])).unwrap());
        assert!(!csp_brute(&chain(xor.clone())).unwrap());
        assert!(matches!(csp_brute(&CspInstance::new(24, 2, vec![]).unwrap()), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn facility_construction() {
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(domset_to_facility(&triangle, 1, 1, false).n(), 13);
        assert!(one_step(&domset_to_facility(&triangle, 1, 0, true)));
        assert!(!one_step(&domset_to_facility(&triangle, 1, 0, false)));
        assert!(one_step(&domset_to_facility(&triangle, 2, 0, false)));
        let pair = Graph::new(2);
        assert!(!one_step(&domset_to_facility(&pair, 1, 0, true)));
        assert!(!has_dominating_set(&pair, 1, true).unwrap());
    }

    #[test]
    fn steiner_construction() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(one_step(&domset_to_steiner(&star, 1, true)));
        assert!(one_step(&domset_to_steiner(&p3, 1, true)));
        assert!(!one_step(&domset_to_steiner(&two_k2, 1, true)));
        assert!(has_dominating_set(&star, 1, true).unwrap());
        assert!(!has_dominating_set(&star, 1, false).unwrap());
        assert!(!one_step(&domset_to_steiner(&star, 1, false)));
        assert!(!has_dominating_set(&two_k2, 3, false).unwrap());
        assert!(has_dominating_set(&two_k2, 4, false).unwrap());
    }
}
