//! Exhaustive reference solver for tiny instances.

use std::collections::HashMap;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::model::{dominates, ColorKind, Instance, MovementPlan, MulticoloredGraph, Solution};
use crate::properties::{PatternCatalog, Property};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_plans: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_plans: 10_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Solved(Solution),
    /// No plan and witness satisfy the property at any cost.
    Infeasible,
    /// Feasible, but the optimum exceeds the instance budget.
    OverBudget { optimum: Cost, budget: u64 },
}

impl OracleOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            OracleOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn cost(&self) -> Option<Cost> {
        self.solution().map(|s| s.cost)
    }
}

/// Optimal solution by exhaustion, accepting witnesses that dominate a catalog pattern.
pub fn oracle_solve(instance: &Instance, catalog: &PatternCatalog, limits: OracleLimits) -> Result<OracleOutcome> {
    let spanning = catalog.closed_under_edge_addition;
    search(instance, limits, |g| {
        catalog
            .patterns
            .iter()
            .filter(|p| p.n() == g.n())
            .any(|p| dominates(g, p, &instance.colors, spanning).found())
    })
}

/// Optimal solution by exhaustion, accepting witnesses whose induced graph satisfies `property`.
pub fn oracle_solve_member(instance: &Instance, property: &Property, limits: OracleLimits) -> Result<OracleOutcome> {
    search(instance, limits, |g| property.member(g))
}

/// Number of plans with finite cost.
pub fn plan_space(instance: &Instance) -> u128 {
    (0..instance.pebbles.len())
        .map(|p| instance.cost_row(p).iter().filter(|c| c.is_finite()).count() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b))
}

fn search(instance: &Instance, limits: OracleLimits, accept: impl Fn(&MulticoloredGraph) -> bool) -> Result<OracleOutcome> {
    let space = plan_space(instance);
    if space > limits.max_plans {
        return Err(Error::LimitExceeded { size: space, limit: limits.max_plans });
    }
    let np = instance.pebbles.len();
    let options: Vec<Vec<usize>> = (0..np)
        .map(|p| (0..instance.n()).filter(|&v| instance.cost(p, v).is_finite()).collect())
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Ok(OracleOutcome::Infeasible);
    }
    let is_main: Vec<bool> = (0..np).map(|p| instance.kind_of(p) == ColorKind::Main).collect();
    let mut cache: HashMap<Vec<Vec<u32>>, Option<Vec<usize>>> = HashMap::new();
    let mut best: Option<Solution> = None;
    let mut digits = vec![0usize; np];
    loop {
        let targets: Vec<usize> = digits.iter().zip(&options).map(|(&d, o)| o[d]).collect();
        let cost: Cost = targets.iter().enumerate().map(|(p, &v)| instance.cost(p, v)).sum();
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            let plan = MovementPlan { targets };
            let config = instance.configuration(&plan);
            let witness = cache
                .entry(config.counts.clone())
                .or_insert_with(|| find_witness(instance, &plan, &config, &is_main, &accept))
                .clone();
            if let Some(witness) = witness {
                best = Some(Solution { plan, witness, cost });
                if cost == Cost::ZERO {
                    break;
                }
            }
        }
        // Odometer with the first pebble most significant, so plans come in lexicographic order.
        let mut i = np;
        loop {
            if i == 0 {
                return Ok(finish(instance, best));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(finish(instance, best))
}

fn finish(instance: &Instance, best: Option<Solution>) -> OracleOutcome {
    match (best, instance.budget) {
        (None, _) => OracleOutcome::Infeasible,
        (Some(s), Some(b)) if s.cost > Cost::new(b) => OracleOutcome::OverBudget { optimum: s.cost, budget: b },
        (Some(s), _) => OracleOutcome::Solved(s),
    }
}

/// Smallest witness (by size, then lexicographically) containing every main pebble.
fn find_witness(
    instance: &Instance,
    plan: &MovementPlan,
    config: &MulticoloredGraph,
    is_main: &[bool],
    accept: &impl Fn(&MulticoloredGraph) -> bool,
) -> Option<Vec<usize>> {
    let mut required: Vec<usize> =
        plan.targets.iter().zip(is_main).filter(|(_, &m)| m).map(|(&v, _)| v).collect();
    required.sort_unstable();
    required.dedup();
    if required.len() > instance.l {
        return None;
    }
    let mut optional: Vec<usize> = plan.targets.clone();
    optional.sort_unstable();
    optional.dedup();
    optional.retain(|v| required.binary_search(v).is_err());
    let room = (instance.l - required.len()).min(optional.len());
    for extra in 0..=room {
        let mut chosen: Vec<usize> = (0..extra).collect();
        loop {
            let mut s = required.clone();
            s.extend(chosen.iter().map(|&i| optional[i]));
            s.sort_unstable();
            if accept(&config.induced(&s)) {
                return Some(s);
            }
            if !next_combination(&mut chosen, optional.len()) {
                break;
            }
        }
    }
    None
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::model::{ColorTable, CostSpec, Pebble, Problem};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn instance(graph: Graph, at: &[usize], cost: CostSpec, l: usize, problem: Problem, budget: Option<u64>) -> Instance {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let pebbles = at.iter().enumerate().map(|(id, &a)| Pebble { id, color: 0, at: a, cost: cost.clone() }).collect();
        Instance::new(graph, colors, pebbles, l, budget, problem, false).unwrap()
    }

    #[test]
    fn collocated_path() {
        let inst = instance(path(5), &[0, 2, 4], CostSpec::Distance, 3, Problem::new("connectivity").with("collocated", true), None);
        let prop = Property::for_instance(&inst).unwrap();
        let cat = prop.catalog(3, 3).unwrap();
        let out = oracle_solve(&inst, &cat, OracleLimits::default()).unwrap();
        assert_eq!(out.cost(), Some(Cost::new(2)));
        assert_eq!(oracle_solve_member(&inst, &prop, OracleLimits::default()).unwrap().cost(), Some(Cost::new(2)));
    }

    #[test]
    fn dispersion_one_step() {
        let inst = instance(path(3), &[0, 1], CostSpec::Steps(1), 2, Problem::new("dispersion"), None);
        let cat = Property::for_instance(&inst).unwrap().catalog(2, 2).unwrap();
        let out = oracle_solve(&inst, &cat, OracleLimits::default()).unwrap();
        let s = out.solution().unwrap();
        assert_eq!(s.cost, Cost::ZERO);
        assert_eq!(s.plan.targets, vec![0, 2]);
    }

    #[test]
    fn budget_distinct_from_infeasible() {
        let problem = Problem::new("connectivity").with("collocated", true);
        let inst = instance(path(5), &[0, 2, 4], CostSpec::Distance, 3, problem.clone(), Some(1));
        let cat = Property::for_instance(&inst).unwrap().catalog(3, 3).unwrap();
        assert_eq!(
            oracle_solve(&inst, &cat, OracleLimits::default()).unwrap(),
            OracleOutcome::OverBudget { optimum: Cost::new(2), budget: 1 }
        );
        let stuck = instance(path(5), &[0, 2, 4], CostSpec::Steps(0), 3, problem, None);
        assert_eq!(oracle_solve(&stuck, &cat, OracleLimits::default()).unwrap(), OracleOutcome::Infeasible);
    }

    #[test]
    fn plan_space_limit() {
        let inst = instance(path(5), &[0, 2, 4], CostSpec::Distance, 3, Problem::new("connectivity"), None);
        let cat = Property::for_instance(&inst).unwrap().catalog(3, 3).unwrap();
        assert!(matches!(
            oracle_solve(&inst, &cat, OracleLimits { max_plans: 100 }),
            Err(Error::LimitExceeded { size: 125, .. })
        ));
    }
}
