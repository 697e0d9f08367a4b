//! Steiner connectivity on planar graphs, parameterized by the number of connector pebbles.
//!
//! Adjacent terminals are merged first. A vertex seeing many terminals forces a connector
//! onto it or onto the one vertex sharing many of those terminals, which bounds a search
//! tree of height k; once no such vertex exists the terminal count is bounded and the
//! randomized pattern solver finishes the job.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::fpt::{solve_fpt, FptOptions, FptReport};
use crate::graph::Graph;
use crate::model::{verify_with, ColorKind, CostSpec, Instance, Pebble, Solution};
use crate::properties::{Property, PropertyKind};

/// Result of merging red components. Vertex `x` of `instance` stands for `members[x]` of the
/// input, and pebble `p` for input pebble `origin[p]`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub instance: Instance,
    pub members: Vec<Vec<usize>>,
    pub origin: Vec<usize>,
}

fn stationary(instance: &Instance, p: usize) -> bool {
    let at = instance.pebbles[p].at;
    instance.cost_row(p).iter().enumerate().all(|(v, c)| v == at || c.is_inf())
}

/// Merges every connected component of red-occupied vertices into one vertex carrying one
/// red pebble. Other pebbles pay the cheapest cost over a merged vertex's members.
pub fn contract_reds(instance: &Instance) -> Result<Contraction> {
    let n = instance.n();
    let reds = instance.pebbles_of_kind(ColorKind::Main);
    if let Some(&p) = reds.iter().find(|&&p| !stationary(instance, p)) {
        return Err(Error::NonStationaryReds(p));
    }
    let mut red_at = vec![false; n];
    for &p in &reds {
        red_at[instance.pebbles[p].at] = true;
    }
    let mut map = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = vec![];
    for v in 0..n {
        if map[v] != usize::MAX {
            continue;
        }
        let x = members.len();
        let mut group = vec![v];
        map[v] = x;
        if red_at[v] {
            let mut stack = vec![v];
            while let Some(a) = stack.pop() {
                for &b in instance.graph.neighbors(a) {
                    if red_at[b] && map[b] == usize::MAX {
                        map[b] = x;
                        group.push(b);
                        stack.push(b);
                    }
                }
            }
            group.sort_unstable();
        }
        members.push(group);
    }
    let mut graph = Graph::new(members.len());
    for (a, b) in instance.graph.edges() {
        if map[a] != map[b] {
            graph.add_edge(map[a], map[b]);
        }
    }
    let mut seen_red = vec![false; members.len()];
    let mut pebbles = vec![];
    let mut origin = vec![];
    for (p, peb) in instance.pebbles.iter().enumerate() {
        let x = map[peb.at];
        let row: Vec<Cost> = if instance.kind_of(p) == ColorKind::Main {
            if seen_red[x] {
                continue;
            }
            seen_red[x] = true;
            (0..members.len()).map(|y| if y == x { Cost::ZERO } else { Cost::INF }).collect()
        } else {
            members.iter().map(|m| m.iter().map(|&v| instance.cost(p, v)).min().unwrap_or(Cost::INF)).collect()
        };
        pebbles.push(Pebble { id: pebbles.len(), color: peb.color, at: x, cost: CostSpec::Table(row) });
        origin.push(p);
    }
    let contracted = Instance::new(
        graph,
        instance.colors.clone(),
        pebbles,
        instance.l,
        instance.budget,
        instance.problem.clone(),
        instance.planar,
    )?;
    Ok(Contraction { instance: contracted, members, origin })
}

/// Search statistics plus the best solution found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SteinerReport {
    pub solution: Option<Solution>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Deepest branching level reached.
    pub max_depth: usize,
    pub labelings: u64,
}

impl SteinerReport {
    pub fn into_solution(self) -> Result<Solution> {
        self.solution.ok_or(Error::Infeasible)
    }
}

/// Working state: a contracted instance plus its maps back to the input.
struct Branch {
    work: Contraction,
    fixed: Vec<(usize, usize)>,
}

/// Cheapest plan found, in input pebble and vertex terms.
struct Found {
    cost: Cost,
    targets: Vec<(usize, usize)>,
    witness: Vec<usize>,
}

pub fn steiner_planar_solve(instance: &Instance, options: &FptOptions) -> Result<SteinerReport> {
    let prop = Property::for_instance(instance)?;
    if prop.kind != PropertyKind::Steiner {
        return Err(Error::WrongProblem(format!("planar Steiner solver does not handle {}", instance.problem.name)));
    }
    if !instance.planar {
        return Err(Error::WrongProblem("planar Steiner solver needs an instance flagged planar".into()));
    }
    let (v, e) = (instance.n(), instance.graph.edge_count());
    if v >= 3 && e > 3 * v - 6 {
        return Err(Error::NotPlanarSanity { vertices: v, edges: e });
    }
    if !instance.pebbles_of_kind(ColorKind::Obnoxious).is_empty() {
        return Err(Error::WrongProblem("planar Steiner solver does not handle obnoxious pebbles".into()));
    }
    let start = contract_reds(instance)?;
    let mut report = SteinerReport::default();
    let found = search(instance, Branch { work: start, fixed: vec![] }, options, &mut report)?;
    let Some(found) = found else { return Ok(report) };
    let mut plan = instance.initial_plan();
    for &(p, v) in &found.targets {
        plan.targets[p] = v;
    }
    let unbudgeted = instance.without_budget();
    let cost = match verify_with(&unbudgeted, &plan, &found.witness, |g| prop.member(g)) {
        Ok(c) => c,
        Err(_) => return Ok(report),
    };
    if let Some(b) = instance.budget {
        if cost > Cost::new(b) {
            return Err(Error::BudgetExceeded { optimum: cost.raw(), budget: b });
        }
    }
    report.solution = Some(Solution { plan, witness: found.witness, cost });
    Ok(report)
}

fn red_vertices(w: &Instance) -> Vec<bool> {
    let mut red = vec![false; w.n()];
    for p in w.pebbles_of_kind(ColorKind::Main) {
        red[w.pebbles[p].at] = true;
    }
    red
}

fn search(input: &Instance, branch: Branch, options: &FptOptions, report: &mut SteinerReport) -> Result<Option<Found>> {
    report.nodes += 1;
    report.max_depth = report.max_depth.max(branch.fixed.len());
    let w = &branch.work.instance;
    let red = red_vertices(w);
    let red_count = red.iter().filter(|&&r| r).count();
    let blues = w.pebbles_of_kind(ColorKind::Facility);
    let k = blues.len();
    let terminals = || -> Vec<usize> {
        let mut s: Vec<usize> = (0..w.n()).filter(|&x| red[x]).flat_map(|x| branch.work.members[x].clone()).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    if red_count == 0 {
        return Ok(None);
    }
    if red_count == 1 {
        return Ok(Some(Found { cost: Cost::ZERO, targets: branch.fixed.clone(), witness: terminals() }));
    }
    if k == 0 {
        return Ok(None);
    }
    let red_nbrs = |x: usize| -> Vec<usize> { w.graph.neighbors(x).iter().copied().filter(|&y| red[y]).collect() };
    let heavy = (0..w.n())
        .map(|x| (red_nbrs(x).len(), x))
        .filter(|&(c, _)| c > 2 * k * k)
        .max_by_key(|&(c, x)| (c, std::cmp::Reverse(x)));
    let Some((_, v)) = heavy else {
        if red_count > 2 * k * k * k {
            return Ok(None);
        }
        return delegate(input, &branch, red_count, k, options, report);
    };
    let around_v = red_nbrs(v);
    let partner = (0..w.n())
        .filter(|&x| x != v)
        .map(|x| (red_nbrs(x).iter().filter(|y| around_v.contains(y)).count(), x))
        .filter(|&(c, _)| c > 2 * k)
        .max_by_key(|&(c, x)| (c, std::cmp::Reverse(x)))
        .map(|(_, x)| x);
    let targets: Vec<usize> = std::iter::once(v).chain(partner).collect();
    let mut best: Option<Found> = None;
    for &p in &blues {
        for &t in &targets {
            let step = w.cost(p, t);
            if step.is_inf() {
                continue;
            }
            let child = fix(&branch, p, t)?;
            if let Some(mut f) = search(input, child, options, report)? {
                f.cost += step;
                if best.as_ref().is_none_or(|b| f.cost < b.cost) {
                    best = Some(f);
                }
            }
        }
    }
    Ok(best)
}

/// Moves blue pebble `p` to `t`, makes it a stationary red pebble, and contracts again.
fn fix(branch: &Branch, p: usize, t: usize) -> Result<Branch> {
    let w = &branch.work.instance;
    let red = w.colors.of_kind(ColorKind::Main)[0];
    let mut pebbles = w.pebbles.clone();
    let row = (0..w.n()).map(|y| if y == t { Cost::ZERO } else { Cost::INF }).collect();
    pebbles[p] = Pebble { id: p, color: red, at: t, cost: CostSpec::Table(row) };
    let recolored = Instance::new(w.graph.clone(), w.colors.clone(), pebbles, w.l, w.budget, w.problem.clone(), w.planar)?;
    let next = contract_reds(&recolored)?;
    let members = next
        .members
        .iter()
        .map(|group| {
            let mut m: Vec<usize> = group.iter().flat_map(|&x| branch.work.members[x].clone()).collect();
            m.sort_unstable();
            m
        })
        .collect();
    let origin = next.origin.iter().map(|&q| branch.work.origin[q]).collect();
    let [vertex] = branch.work.members[t][..] else {
        return Err(Error::InvalidInstance("branch target is a merged vertex".into()));
    };
    let mut fixed = branch.fixed.clone();
    fixed.push((branch.work.origin[p], vertex));
    Ok(Branch { work: Contraction { instance: next.instance, members, origin }, fixed })
}

/// Solves the bounded remainder with the pattern solver and maps the answer back.
fn delegate(
    input: &Instance,
    branch: &Branch,
    red_count: usize,
    k: usize,
    options: &FptOptions,
    report: &mut SteinerReport,
) -> Result<Option<Found>> {
    let w = &branch.work.instance;
    let l = red_count + k;
    let sub = Instance::new(w.graph.clone(), w.colors.clone(), w.pebbles.clone(), l, None, w.problem.clone(), w.planar)?;
    let catalog = Property::for_instance(&sub)?.catalog(red_count, l)?;
    let seed = options.seed ^ (branch.fixed.len() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let FptReport { solution, labelings, .. } = solve_fpt(&sub, &catalog, &FptOptions { seed, ..*options })?;
    report.labelings += labelings;
    let Some(s) = solution else { return Ok(None) };
    let mut targets = branch.fixed.clone();
    for p in w.pebbles_of_kind(ColorKind::Facility) {
        let x = s.plan.targets[p];
        if x == w.pebbles[p].at {
            continue;
        }
        let orig = branch.work.origin[p];
        let v = *branch.work.members[x].iter().min_by_key(|&&v| (input.cost(orig, v), v)).expect("nonempty group");
        targets.push((orig, v));
    }
    let mut witness: Vec<usize> = s.witness.iter().flat_map(|&x| branch.work.members[x].iter().copied()).collect();
    witness.sort_unstable();
    witness.dedup();
    Ok(Some(Found { cost: s.cost, targets, witness }))
}
