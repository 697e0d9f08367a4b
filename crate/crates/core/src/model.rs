//! Multicolored graphs, pebbles, instances, plans and solution checking.

use std::collections::HashMap;

use serde_json::{Map, Value};

use crate::cost::{Cost, MAX_FINITE};
use crate::error::{Error, Result, VerifyError};
use crate::graph::{Graph, UNREACHABLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorKind {
    Main,
    Facility,
    Obnoxious,
}

impl ColorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ColorKind::Main => "main",
            ColorKind::Facility => "facility",
            ColorKind::Obnoxious => "obnoxious",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Color {
    pub name: String,
    pub kind: ColorKind,
}

/// Colors indexed by position; pebble counts are stored in this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColorTable {
    colors: Vec<Color>,
}

impl ColorTable {
    pub fn new(colors: Vec<Color>) -> Result<ColorTable> {
        for (i, c) in colors.iter().enumerate() {
            if c.name.is_empty() {
                return Err(Error::InvalidInstance(format!("colors[{i}].name: empty")));
            }
            if colors[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::InvalidInstance(format!("colors[{i}].name: duplicate {:?}", c.name)));
            }
        }
        Ok(ColorTable { colors })
    }

    /// Shorthand for tests and generators: `&[("red", Main), ...]`.
    pub fn of(colors: &[(&str, ColorKind)]) -> ColorTable {
        ColorTable::new(colors.iter().map(|&(n, k)| Color { name: n.to_string(), kind: k }).collect())
            .expect("valid color table")
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, c: usize) -> &Color {
        &self.colors[c]
    }

    pub fn kind(&self, c: usize) -> ColorKind {
        self.colors[c].kind
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|c| c.name == name)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn of_kind(&self, kind: ColorKind) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.kind(c) == kind).collect()
    }
}

/// A graph whose vertices carry per-color pebble counts (`counts[v][c]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MulticoloredGraph {
    pub graph: Graph,
    pub counts: Vec<Vec<u32>>,
}

impl MulticoloredGraph {
    pub fn new(graph: Graph, colors: usize) -> MulticoloredGraph {
        let n = graph.n();
        MulticoloredGraph { graph, counts: vec![vec![0; colors]; n] }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn count(&self, c: usize, v: usize) -> u32 {
        self.counts[v][c]
    }

    pub fn total_pebbles(&self) -> u32 {
        self.counts.iter().flatten().sum()
    }

    pub fn count_of_kind(&self, table: &ColorTable, kind: ColorKind) -> u32 {
        self.counts
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| table.kind(c) == kind).map(|(_, &x)| x).sum::<u32>())
            .sum()
    }

    pub fn induced(&self, vertices: &[usize]) -> MulticoloredGraph {
        MulticoloredGraph {
            graph: self.graph.induced(vertices),
            counts: vertices.iter().map(|&v| self.counts[v].clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CostSpec {
    /// Hop distance from the start vertex.
    Distance,
    /// Free within `max` hops, impossible beyond.
    Steps(u32),
    /// Zero at the start vertex, one anywhere else.
    Moved,
    /// Explicit per-vertex cost.
    Table(Vec<Cost>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pebble {
    pub id: usize,
    pub color: usize,
    pub at: usize,
    pub cost: CostSpec,
}

/// Cost of moving `pebble` to `vertex`, from scratch.
pub fn cost_of(pebble: &Pebble, graph: &Graph, vertex: usize) -> Cost {
    match &pebble.cost {
        CostSpec::Table(values) => values[vertex],
        CostSpec::Moved => Cost::new(u64::from(vertex != pebble.at)),
        spec => spec_cost(spec, pebble.at, graph.bfs(pebble.at)[vertex], vertex),
    }
}

fn spec_cost(spec: &CostSpec, at: usize, hops: u32, vertex: usize) -> Cost {
    match spec {
        CostSpec::Distance if hops == UNREACHABLE => Cost::INF,
        CostSpec::Distance => Cost::new(u64::from(hops)),
        CostSpec::Steps(d) if hops <= *d => Cost::ZERO,
        CostSpec::Steps(_) => Cost::INF,
        CostSpec::Moved => Cost::new(u64::from(vertex != at)),
        CostSpec::Table(values) => values[vertex],
    }
}

/// Property identifier plus free-form parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub params: Map<String, Value>,
}

impl Problem {
    pub fn new(name: &str) -> Problem {
        Problem { name: name.to_string(), params: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Problem {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// A movement problem instance. Immutable once built; pebble costs are tabulated up front.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub colors: ColorTable,
    pub pebbles: Vec<Pebble>,
    pub l: usize,
    pub budget: Option<u64>,
    pub problem: Problem,
    pub planar: bool,
    costs: Vec<Vec<Cost>>,
}

impl Instance {
    pub fn new(
        graph: Graph,
        colors: ColorTable,
        mut pebbles: Vec<Pebble>,
        l: usize,
        budget: Option<u64>,
        problem: Problem,
        planar: bool,
    ) -> Result<Instance> {
        let n = graph.n();
        if colors.of_kind(ColorKind::Main).is_empty() {
            return Err(Error::InvalidInstance("colors: no main color".into()));
        }
        if l == 0 {
            return Err(Error::InvalidInstance("l: must be positive".into()));
        }
        if let Some(b) = budget {
            if b > MAX_FINITE {
                return Err(Error::InvalidInstance(format!("budget: {b} exceeds 2^40")));
            }
        }
        pebbles.sort_by_key(|p| p.id);
        for (i, p) in pebbles.iter().enumerate() {
            if p.id != i {
                return Err(Error::InvalidInstance(format!("pebbles: ids must be 0..{}, missing {i}", pebbles.len())));
            }
            if p.color >= colors.len() {
                return Err(Error::InvalidInstance(format!("pebbles[{i}].color: unknown color index {}", p.color)));
            }
            if p.at >= n {
                return Err(Error::InvalidInstance(format!("pebbles[{i}].at: vertex {} out of range", p.at)));
            }
            if let CostSpec::Table(values) = &p.cost {
                if values.len() != n {
                    return Err(Error::InvalidInstance(format!(
                        "pebbles[{i}].cost.values: length {} but graph has {n} vertices",
                        values.len()
                    )));
                }
                if let Some(v) = values.iter().filter_map(|c| c.finite()).find(|&v| v > MAX_FINITE) {
                    return Err(Error::InvalidInstance(format!("pebbles[{i}].cost.values: {v} exceeds 2^40")));
                }
            }
        }
        let mut bfs_cache: HashMap<usize, Vec<u32>> = HashMap::new();
        let costs = pebbles
            .iter()
            .map(|p| match &p.cost {
                CostSpec::Table(values) => values.clone(),
                spec => {
                    let dist = bfs_cache.entry(p.at).or_insert_with(|| graph.bfs(p.at));
                    (0..n).map(|v| spec_cost(spec, p.at, dist[v], v)).collect()
                }
            })
            .collect();
        Ok(Instance { graph, colors, pebbles, l, budget, problem, planar, costs })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn cost(&self, pebble: usize, vertex: usize) -> Cost {
        self.costs[pebble][vertex]
    }

    /// Cost row of one pebble over all vertices.
    pub fn cost_row(&self, pebble: usize) -> &[Cost] {
        &self.costs[pebble]
    }

    pub fn kind_of(&self, pebble: usize) -> ColorKind {
        self.colors.kind(self.pebbles[pebble].color)
    }

    pub fn pebbles_of_kind(&self, kind: ColorKind) -> Vec<usize> {
        (0..self.pebbles.len()).filter(|&p| self.kind_of(p) == kind).collect()
    }

    /// Number of main pebbles, the parameter k.
    pub fn k(&self) -> usize {
        self.pebbles_of_kind(ColorKind::Main).len()
    }

    pub fn initial_plan(&self) -> MovementPlan {
        MovementPlan { targets: self.pebbles.iter().map(|p| p.at).collect() }
    }

    /// Multicolored graph after applying `plan`.
    pub fn configuration(&self, plan: &MovementPlan) -> MulticoloredGraph {
        let mut g = MulticoloredGraph::new(self.graph.clone(), self.colors.len());
        for (p, &to) in plan.targets.iter().enumerate() {
            g.counts[to][self.pebbles[p].color] += 1;
        }
        g
    }

    /// The initial multicolored graph.
    pub fn initial_configuration(&self) -> MulticoloredGraph {
        self.configuration(&self.initial_plan())
    }

    /// Same instance with no cost budget.
    pub fn without_budget(&self) -> Instance {
        Instance { budget: None, ..self.clone() }
    }

    /// Same instance with every cost specification replaced.
    pub fn with_costs(&self, spec: CostSpec) -> Result<Instance> {
        let pebbles = self.pebbles.iter().map(|p| Pebble { cost: spec.clone(), ..p.clone() }).collect();
        Instance::new(
            self.graph.clone(),
            self.colors.clone(),
            pebbles,
            self.l,
            self.budget,
            self.problem.clone(),
            self.planar,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MovementPlan {
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub plan: MovementPlan,
    pub witness: Vec<usize>,
    pub cost: Cost,
}

/// Saturating sum of per-pebble costs.
pub fn plan_cost(instance: &Instance, plan: &MovementPlan) -> Cost {
    plan.targets.iter().enumerate().map(|(p, &v)| instance.cost(p, v)).sum()
}

/// Outcome of a domination test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domination {
    /// Vertex counts differ.
    NotComparable,
    Absent,
    /// `phi[v]` is the candidate vertex matched to pattern vertex `v`.
    Found(Vec<usize>),
}

impl Domination {
    pub fn found(&self) -> bool {
        matches!(self, Domination::Found(_))
    }
}

fn counts_fit(table: &ColorTable, have: &[u32], want: &[u32]) -> bool {
    have.iter().zip(want).enumerate().all(|(c, (&h, &w))| match table.kind(c) {
        ColorKind::Main => h == w,
        ColorKind::Facility => h >= w,
        ColorKind::Obnoxious => h <= w,
    })
}

/// Whether `candidate` dominates `pattern`: a bijection with equal main counts,
/// facility surplus, obnoxious deficit, and edges mapped into edges
/// (`spanning`) or matched exactly.
pub fn dominates(
    candidate: &MulticoloredGraph,
    pattern: &MulticoloredGraph,
    table: &ColorTable,
    spanning: bool,
) -> Domination {
    let n = pattern.n();
    if candidate.n() != n {
        return Domination::NotComparable;
    }
    if spanning && candidate.graph.edge_count() < pattern.graph.edge_count()
        || !spanning && candidate.graph.edge_count() != pattern.graph.edge_count()
    {
        return Domination::Absent;
    }
    let options: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let dv = pattern.graph.degree(v);
            (0..n)
                .filter(|&w| {
                    let dw = candidate.graph.degree(w);
                    (if spanning { dw >= dv } else { dw == dv })
                        && counts_fit(table, &candidate.counts[w], &pattern.counts[v])
                })
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Domination::Absent;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (options[v].len(), std::cmp::Reverse(pattern.graph.degree(v)), v));
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(0, &order, &options, pattern, candidate, spanning, &mut phi, &mut used) {
        Domination::Found(phi)
    } else {
        Domination::Absent
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    depth: usize,
    order: &[usize],
    options: &[Vec<usize>],
    pattern: &MulticoloredGraph,
    candidate: &MulticoloredGraph,
    spanning: bool,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &options[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| {
            let pe = pattern.graph.has_edge(v, x);
            let ce = candidate.graph.has_edge(w, phi[x]);
            if spanning {
                !pe || ce
            } else {
                pe == ce
            }
        });
        if !consistent {
            continue;
        }
        phi[v] = w;
        used[w] = true;
        if assign(depth + 1, order, options, pattern, candidate, spanning, phi, used) {
            return true;
        }
        used[w] = false;
    }
    phi[v] = usize::MAX;
    false
}

/// Checks everything except the property itself and returns the post-move
/// graph induced on the sorted witness.
fn check_shape(instance: &Instance, plan: &MovementPlan, witness: &[usize]) -> std::result::Result<(Cost, MulticoloredGraph), VerifyError> {
    let n = instance.n();
    if plan.targets.len() != instance.pebbles.len() {
        return Err(VerifyError::Malformed(format!(
            "plan covers {} pebbles, instance has {}",
            plan.targets.len(),
            instance.pebbles.len()
        )));
    }
    if let Some(&v) = plan.targets.iter().find(|&&v| v >= n) {
        return Err(VerifyError::Malformed(format!("target {v} out of range")));
    }
    let mut s = witness.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != witness.len() || s.last().is_some_and(|&v| v >= n) {
        return Err(VerifyError::Malformed("witness has repeated or out-of-range vertices".into()));
    }
    if s.len() > instance.l {
        return Err(VerifyError::WitnessTooLarge { size: s.len(), limit: instance.l });
    }
    for p in instance.pebbles_of_kind(ColorKind::Main) {
        if s.binary_search(&plan.targets[p]).is_err() {
            return Err(VerifyError::MainPebbleOutsideWitness(p));
        }
    }
    let cost = plan_cost(instance, plan);
    if cost.is_inf() {
        return Err(VerifyError::InfiniteCost);
    }
    let induced = instance.configuration(plan).induced(&s);
    Ok((cost, induced))
}

fn check_budget(instance: &Instance, cost: Cost) -> std::result::Result<Cost, VerifyError> {
    match instance.budget {
        Some(b) if cost > Cost::new(b) => Err(VerifyError::CostBudgetExceeded { cost: cost.to_string(), budget: b }),
        _ => Ok(cost),
    }
}

/// Verifies a plan and witness against a list of patterns; returns the plan cost.
pub fn verify_solution(
    instance: &Instance,
    plan: &MovementPlan,
    witness: &[usize],
    patterns: &[MulticoloredGraph],
    spanning: bool,
) -> std::result::Result<Cost, VerifyError> {
    let (cost, induced) = check_shape(instance, plan, witness)?;
    let ok = patterns
        .iter()
        .filter(|p| p.n() == induced.n())
        .any(|p| dominates(&induced, p, &instance.colors, spanning).found());
    if !ok {
        return Err(VerifyError::NoDominatedPattern);
    }
    check_budget(instance, cost)
}

/// Like [`verify_solution`] but decides the property with a membership test on the induced graph.
pub fn verify_with(
    instance: &Instance,
    plan: &MovementPlan,
    witness: &[usize],
    member: impl Fn(&MulticoloredGraph) -> bool,
) -> std::result::Result<Cost, VerifyError> {
    let (cost, induced) = check_shape(instance, plan, witness)?;
    if !member(&induced) {
        return Err(VerifyError::NoDominatedPattern);
    }
    check_budget(instance, cost)
}
