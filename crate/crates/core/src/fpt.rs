//! Randomized FPT solver over minimal patterns.
//!
//! For every pattern `F0` and every correct obnoxious-relocation scheme, labelings of
//! pebbles and vertices turn the movement problem into a min-cost embedding of `F0`,
//! solved by the colorful DP. Without obnoxious pebbles the vertex labels are not
//! needed, so main labels are enumerated exactly (up to automorphisms of `F0`) and
//! the embedding is found by color coding.

use crate::canon::automorphisms;
use crate::cost::Cost;
use crate::embedding::{
    candidate_product, colorful_embedding_dp, exhaustive_embedding, min_cost_embedding_with, nice_decomposition,
    trial_count, EmbedCostTable, Embedding,
};
use crate::error::{Error, Result};
use crate::model::{verify_solution, ColorKind, ColorTable, Instance, MovementPlan, MulticoloredGraph, Solution};
use crate::properties::PatternCatalog;
use crate::rng::SplitMix64;
use crate::treewidth::NiceTreeDecomposition;

/// Obnoxious relocation counts `e[c][i][j]` for the colors in `colors`; `i`, `j` are 0-based pattern vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    pub l0: usize,
    pub colors: Vec<usize>,
    pub e: Vec<u32>,
}

impl Scheme {
    pub fn empty(l0: usize) -> Scheme {
        Scheme { l0, colors: vec![], e: vec![] }
    }

    /// Entry for the `ci`-th scheme color.
    pub fn get(&self, ci: usize, i: usize, j: usize) -> u32 {
        self.e[(ci * self.l0 + i) * self.l0 + j]
    }

    /// Pebbles of the `ci`-th color that leave or stay at the image of `i`.
    pub fn out_of(&self, ci: usize, i: usize) -> u32 {
        (0..self.l0).map(|j| self.get(ci, i, j)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }
}

/// All correct schemes for the obnoxious colors of `colors`, entries bounded by `d`.
pub fn enumerate_schemes(f0: &MulticoloredGraph, colors: &ColorTable, d: u32) -> Vec<Scheme> {
    schemes_for(f0, &colors.of_kind(ColorKind::Obnoxious), d)
}

fn schemes_for(f0: &MulticoloredGraph, obnoxious: &[usize], d: u32) -> Vec<Scheme> {
    let l0 = f0.n();
    // One block per (color, column j): every vector over i with sum at most n_F0(c, v_j).
    let mut blocks: Vec<Vec<Vec<u32>>> = vec![];
    for &c in obnoxious {
        for j in 0..l0 {
            let cap = f0.count(c, j).min(d);
            let mut options = vec![];
            bounded_vectors(l0, cap, &mut vec![], &mut options);
            blocks.push(options);
        }
    }
    let mut out = vec![];
    let mut pick = vec![0usize; blocks.len()];
    loop {
        let mut e = vec![0u32; obnoxious.len() * l0 * l0];
        for (b, &choice) in pick.iter().enumerate() {
            let (ci, j) = (b / l0.max(1), b % l0.max(1));
            for (i, &x) in blocks[b][choice].iter().enumerate() {
                e[(ci * l0 + i) * l0 + j] = x;
            }
        }
        out.push(Scheme { l0, colors: obnoxious.to_vec(), e });
        let mut b = blocks.len();
        loop {
            if b == 0 {
                return out;
            }
            b -= 1;
            pick[b] += 1;
            if pick[b] < blocks[b].len() {
                break;
            }
            pick[b] = 0;
        }
    }
}

fn bounded_vectors(len: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let used: u32 = prefix.iter().sum();
    for x in 0..=cap - used {
        prefix.push(x);
        bounded_vectors(len, cap, prefix, out);
        prefix.pop();
    }
}

/// Labels for one trial. Pebble labels are `1..=l0` for main and facility pebbles and 0
/// for unlabeled ones. Vertex labels are `0..=l0`; `None` lifts the vertex-label requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub pebbles: Vec<usize>,
    pub vertices: Option<Vec<usize>>,
}

/// Obnoxious pebbles of one color starting at one vertex must share a cost specification.
pub fn check_equal_costs(instance: &Instance) -> Result<()> {
    let obn = instance.pebbles_of_kind(ColorKind::Obnoxious);
    for (x, &a) in obn.iter().enumerate() {
        for &b in &obn[x + 1..] {
            let (pa, pb) = (&instance.pebbles[a], &instance.pebbles[b]);
            if pa.color == pb.color && pa.at == pb.at && instance.cost_row(a) != instance.cost_row(b) {
                return Err(Error::MovementCostAsymmetry { a, b });
            }
        }
    }
    Ok(())
}

/// Obnoxious pebbles grouped by (scheme color, start vertex), in id order.
fn obnoxious_at(instance: &Instance, scheme: &Scheme) -> Vec<Vec<Vec<usize>>> {
    let mut at = vec![vec![vec![]; instance.n()]; scheme.colors.len()];
    for (p, peb) in instance.pebbles.iter().enumerate() {
        if let Some(ci) = scheme.colors.iter().position(|&c| c == peb.color) {
            at[ci][peb.at].push(p);
        }
    }
    at
}

/// Cheapest vertex with vertex label `j` for pebble `p`, smallest index on ties.
fn nearest_labeled(instance: &Instance, p: usize, vertices: Option<&[usize]>, j: usize) -> Option<(Cost, usize)> {
    let labels = vertices?;
    (0..instance.n())
        .filter(|&w| labels[w] == j)
        .map(|w| (instance.cost(p, w), w))
        .filter(|(c, _)| c.is_finite())
        .min()
}

/// Pebbles of `kind` and color `c` carrying label `i + 1`.
fn labeled(instance: &Instance, labeling: &Labeling, c: usize, i: usize) -> Vec<usize> {
    (0..instance.pebbles.len())
        .filter(|&p| instance.pebbles[p].color == c && labeling.pebbles[p] == i + 1)
        .collect()
}

/// Embedding cost table for one pattern, scheme, and labeling.
pub fn build_cost_table(instance: &Instance, f0: &MulticoloredGraph, scheme: &Scheme, labeling: &Labeling) -> Result<EmbedCostTable> {
    check_equal_costs(instance)?;
    Ok(cost_table(instance, f0, scheme, labeling, &obnoxious_at(instance, scheme)))
}

fn cost_table(
    instance: &Instance,
    f0: &MulticoloredGraph,
    scheme: &Scheme,
    labeling: &Labeling,
    obn: &[Vec<Vec<usize>>],
) -> EmbedCostTable {
    let n = instance.n();
    let table = &instance.colors;
    let vertices = labeling.vertices.as_deref();
    let rows = (0..f0.n())
        .map(|i| {
            let mut row = vec![Cost::ZERO; n];
            if let Some(labels) = vertices {
                for (u, c) in row.iter_mut().enumerate() {
                    if labels[u] != i + 1 {
                        *c = Cost::INF;
                    }
                }
            }
            for c in 0..table.len() {
                let kind = table.kind(c);
                if kind == ColorKind::Obnoxious {
                    continue;
                }
                let mine = labeled(instance, labeling, c, i);
                let need = f0.count(c, i) as usize;
                if kind == ColorKind::Main && mine.len() != need || mine.len() < need {
                    return vec![Cost::INF; n];
                }
                if need == 0 {
                    continue;
                }
                for (u, slot) in row.iter_mut().enumerate() {
                    if slot.is_inf() {
                        continue;
                    }
                    let mut values: Vec<Cost> = mine.iter().map(|&p| instance.cost(p, u)).collect();
                    values.sort_unstable();
                    *slot += values[..need].iter().copied().sum::<Cost>();
                }
            }
            for (ci, by_vertex) in obn.iter().enumerate() {
                let out = scheme.out_of(ci, i);
                for (u, slot) in row.iter_mut().enumerate() {
                    if slot.is_inf() {
                        continue;
                    }
                    let here = &by_vertex[u];
                    let have = here.len() as u32;
                    if out > have {
                        *slot = Cost::INF;
                        continue;
                    }
                    let Some(&rep) = here.first() else { continue };
                    let t = |j: usize| nearest_labeled(instance, rep, vertices, j).map_or(Cost::INF, |(c, _)| c);
                    let mut extra = instance.cost(rep, u).times(u64::from(scheme.get(ci, i, i)));
                    for j in (0..f0.n()).filter(|&j| j != i) {
                        let e = scheme.get(ci, i, j);
                        if e > 0 {
                            extra += t(j + 1).times(u64::from(e));
                        }
                    }
                    if have > out {
                        extra += t(0).times(u64::from(have - out));
                    }
                    *slot += extra;
                }
            }
            row
        })
        .collect();
    EmbedCostTable::new(rows)
}

/// Movement plan and witness realizing embedding `phi` under the labeling and scheme.
pub fn reconstruct_plan(
    instance: &Instance,
    f0: &MulticoloredGraph,
    scheme: &Scheme,
    labeling: &Labeling,
    phi: &[usize],
) -> (MovementPlan, Vec<usize>) {
    let mut plan = instance.initial_plan();
    let table = &instance.colors;
    let vertices = labeling.vertices.as_deref();
    for (i, &u) in phi.iter().enumerate() {
        for c in 0..table.len() {
            let mine = labeled(instance, labeling, c, i);
            match table.kind(c) {
                ColorKind::Main => {
                    for p in mine {
                        plan.targets[p] = u;
                    }
                }
                ColorKind::Facility => {
                    let mut ranked: Vec<(Cost, usize)> = mine.iter().map(|&p| (instance.cost(p, u), p)).collect();
                    ranked.sort_unstable();
                    for &(_, p) in ranked.iter().take(f0.count(c, i) as usize) {
                        plan.targets[p] = u;
                    }
                }
                ColorKind::Obnoxious => {}
            }
        }
    }
    let obn = obnoxious_at(instance, scheme);
    for (i, &u) in phi.iter().enumerate() {
        for (ci, by_vertex) in obn.iter().enumerate() {
            let mut here = by_vertex[u].iter().copied();
            for _ in 0..scheme.get(ci, i, i) {
                here.next();
            }
            for j in (0..phi.len()).filter(|&j| j != i) {
                for _ in 0..scheme.get(ci, i, j) {
                    if let Some(p) = here.next() {
                        if let Some((_, w)) = nearest_labeled(instance, p, vertices, j + 1) {
                            plan.targets[p] = w;
                        }
                    }
                }
            }
            for p in here {
                if let Some((_, w)) = nearest_labeled(instance, p, vertices, 0) {
                    plan.targets[p] = w;
                }
            }
        }
    }
    let mut witness = phi.to_vec();
    witness.sort_unstable();
    // Pebbles the embedding does not place go to their cheapest vertex, obnoxious ones outside the witness.
    let selected: Vec<bool> = plan.targets.iter().zip(&instance.pebbles).map(|(&t, p)| t != p.at).collect();
    for (p, peb) in instance.pebbles.iter().enumerate() {
        let free = match table.kind(peb.color) {
            ColorKind::Main => false,
            ColorKind::Facility => !selected[p] && !phi.contains(&peb.at),
            ColorKind::Obnoxious => !phi.contains(&peb.at),
        };
        if free {
            let allowed = |w: &usize| table.kind(peb.color) != ColorKind::Obnoxious || witness.binary_search(w).is_err();
            let stay = (instance.cost(p, peb.at), 0usize, peb.at);
            let best = (0..instance.n()).filter(allowed).map(|w| (instance.cost(p, w), usize::from(w != peb.at), w)).min();
            if let Some(b) = best.filter(|b| *b < stay) {
                plan.targets[p] = b.2;
            }
        }
    }
    (plan, witness)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FptOptions {
    /// Overall failure probability.
    pub epsilon: f64,
    pub seed: u64,
    /// Cap on random labelings per (pattern, scheme) pair.
    pub max_labelings: u64,
}

impl Default for FptOptions {
    fn default() -> Self {
        FptOptions { epsilon: 0.01, seed: 0, max_labelings: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptReport {
    pub solution: Option<Solution>,
    /// Cost tables built.
    pub labelings: u64,
    /// Colorful DP runs, including color-coding repetitions.
    pub dp_runs: u64,
    /// Some (pattern, scheme) pair hit `max_labelings`, weakening the probability bound.
    pub capped: bool,
}

impl FptReport {
    pub fn into_solution(self) -> Result<Solution> {
        self.solution.ok_or(Error::Infeasible)
    }
}

struct Prepared<'a> {
    index: usize,
    f0: &'a MulticoloredGraph,
    nice: NiceTreeDecomposition,
}

struct Search<'a> {
    instance: &'a Instance,
    unbudgeted: Instance,
    catalog: &'a PatternCatalog,
    best: Option<Solution>,
    floor: Cost,
    labelings: u64,
    dp_runs: u64,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.best.as_ref().is_some_and(|b| b.cost <= self.floor)
    }

    fn offer(&mut self, f0: &MulticoloredGraph, scheme: &Scheme, labeling: &Labeling, e: &Embedding) {
        let (plan, witness) = reconstruct_plan(self.instance, f0, scheme, labeling, &e.phi);
        let cost = crate::model::plan_cost(self.instance, &plan);
        if self.best.as_ref().is_some_and(|b| cost >= b.cost) {
            return;
        }
        if let Ok(cost) = verify_solution(&self.unbudgeted, &plan, &witness, &self.catalog.patterns, true) {
            self.best = Some(Solution { plan, witness, cost });
        }
    }
}

/// Randomized solver over `catalog`; requires a property closed under edge addition.
pub fn solve_fpt(instance: &Instance, catalog: &PatternCatalog, options: &FptOptions) -> Result<FptReport> {
    if !catalog.closed_under_edge_addition {
        return Err(Error::WrongProblem(format!("{} is not closed under edge addition", instance.problem.name)));
    }
    if !(options.epsilon > 0.0 && options.epsilon < 1.0) {
        return Err(Error::InvalidInstance(format!("failure probability {} not in (0,1)", options.epsilon)));
    }
    check_equal_costs(instance)?;
    let n = instance.n();
    let present: Vec<usize> = instance
        .colors
        .of_kind(ColorKind::Obnoxious)
        .into_iter()
        .filter(|&c| instance.pebbles.iter().any(|p| p.color == c))
        .collect();
    let mut prepared = vec![];
    for (index, f0) in catalog.patterns.iter().enumerate() {
        if f0.n() <= n.min(instance.l) && f0.n() > 0 {
            prepared.push(Prepared { index, f0, nice: nice_decomposition(&f0.graph)? });
        }
    }
    let floor: Cost = instance
        .pebbles_of_kind(ColorKind::Main)
        .iter()
        .map(|&p| instance.cost_row(p).iter().copied().min().unwrap_or(Cost::INF))
        .sum();
    let mut search = Search {
        instance,
        unbudgeted: instance.without_budget(),
        catalog,
        best: None,
        floor,
        labelings: 0,
        dp_runs: 0,
    };
    let capped = if present.is_empty() {
        exact_labels(&mut search, &prepared, options)?
    } else {
        random_labels(&mut search, &prepared, &present, catalog.max_pebbles, options)?
    };
    if let (Some(best), Some(budget)) = (&search.best, instance.budget) {
        if best.cost > Cost::new(budget) {
            return Err(Error::BudgetExceeded { optimum: best.cost.raw(), budget });
        }
    }
    Ok(FptReport { solution: search.best, labelings: search.labelings, dp_runs: search.dp_runs, capped })
}

/// Facility pebbles a pattern selects.
fn facility_demand(instance: &Instance, f0: &MulticoloredGraph) -> u32 {
    instance.colors.of_kind(ColorKind::Facility).iter().map(|&c| (0..f0.n()).map(|i| f0.count(c, i)).sum::<u32>()).sum()
}

/// Main-pebble label assignments matching the main counts of `f0`, one per automorphism orbit.
fn main_assignments(instance: &Instance, f0: &MulticoloredGraph) -> Vec<Vec<usize>> {
    fn go(instance: &Instance, mains: &[usize], cap: &mut [Vec<u32>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&p) = mains.get(cur.len()) else {
            out.push(cur.clone());
            return;
        };
        let c = instance.pebbles[p].color;
        for i in 0..cap.len() {
            if cap[i][c] > 0 {
                cap[i][c] -= 1;
                cur.push(i);
                go(instance, mains, cap, cur, out);
                cur.pop();
                cap[i][c] += 1;
            }
        }
    }
    let mains = instance.pebbles_of_kind(ColorKind::Main);
    let mut cap: Vec<Vec<u32>> = f0.counts.clone();
    let mut all = vec![];
    go(instance, &mains, &mut cap, &mut vec![], &mut all);
    let autos = automorphisms(f0);
    all.retain(|sigma| autos.iter().all(|pi| *sigma <= sigma.iter().map(|&i| pi[i]).collect::<Vec<_>>()));
    all
}

const FACILITY_ENUMERATION_LIMIT: u64 = 4096;

/// Facility label vectors (labels `1..=l0`, aligned with `facility`) to try.
fn facility_labelings(facility: usize, demand: u32, l0: usize, key: &[u64], options: &FptOptions) -> (Vec<Vec<usize>>, bool) {
    if demand == 0 || facility == 0 {
        return (vec![vec![0; facility]], false);
    }
    let space = (l0 as u64).checked_pow(facility as u32).unwrap_or(u64::MAX);
    if space <= FACILITY_ENUMERATION_LIMIT {
        let mut out = vec![];
        let mut cur = vec![1usize; facility];
        loop {
            out.push(cur.clone());
            let mut x = facility;
            loop {
                if x == 0 {
                    return (out, false);
                }
                x -= 1;
                cur[x] += 1;
                if cur[x] <= l0 {
                    break;
                }
                cur[x] = 1;
            }
        }
    }
    let wanted = ((2.0 / options.epsilon).ln() * (l0 as f64).powi(demand as i32)).ceil();
    let count = if wanted >= options.max_labelings as f64 { options.max_labelings } else { wanted as u64 };
    let mut rng = SplitMix64::keyed(options.seed, key);
    let draws = (0..count).map(|_| (0..facility).map(|_| 1 + rng.below_usize(l0)).collect()).collect();
    (draws, wanted > options.max_labelings as f64)
}

/// No obnoxious pebbles: vertex labels are dropped, main labels enumerated, embeddings by color coding.
fn exact_labels(search: &mut Search, prepared: &[Prepared], options: &FptOptions) -> Result<bool> {
    let instance = search.instance;
    let np = instance.pebbles.len();
    let facility = instance.pebbles_of_kind(ColorKind::Facility);
    let mains = instance.pebbles_of_kind(ColorKind::Main);
    let mut work = vec![];
    let mut capped = false;
    for pat in prepared {
        let sigmas = main_assignments(instance, pat.f0);
        let demand = facility_demand(instance, pat.f0);
        let (taus, cap) = facility_labelings(facility.len(), demand, pat.f0.n(), &[pat.index as u64, u64::MAX], options);
        capped |= cap;
        work.push((sigmas, taus));
    }
    let calls: u64 = work.iter().map(|(s, t)| (s.len() * t.len()) as u64).sum();
    let inner_eps = options.epsilon / (2.0 * calls.max(1) as f64);
    let scheme = Scheme::empty(0);
    for (pat, (sigmas, taus)) in prepared.iter().zip(&work) {
        let f0 = pat.f0;
        let scheme = Scheme { l0: f0.n(), ..scheme.clone() };
        let inner_trials = trial_count(f0.n(), inner_eps);
        for (si, sigma) in sigmas.iter().enumerate() {
            for (ti, tau) in taus.iter().enumerate() {
                if search.done() {
                    return Ok(capped);
                }
                let mut pebbles = vec![0usize; np];
                for (&p, &i) in mains.iter().zip(sigma) {
                    pebbles[p] = i + 1;
                }
                for (&p, &i) in facility.iter().zip(tau) {
                    pebbles[p] = i;
                }
                let labeling = Labeling { pebbles, vertices: None };
                let costs = cost_table(instance, f0, &scheme, &labeling, &[]);
                search.labelings += 1;
                if (0..f0.n()).any(|i| costs.row(i).iter().all(|c| c.is_inf())) {
                    continue;
                }
                let best = if candidate_product(&f0.graph, &instance.graph, &costs) <= u128::from(inner_trials) {
                    exhaustive_embedding(&f0.graph, &instance.graph, &costs)
                } else {
                    let seed = SplitMix64::keyed(options.seed, &[pat.index as u64, si as u64, ti as u64]).next_u64();
                    let out = min_cost_embedding_with(&f0.graph, &pat.nice, &instance.graph, &costs, inner_eps, seed)?;
                    search.dp_runs += out.trials;
                    out.best
                };
                if let Some(e) = best {
                    search.offer(f0, &scheme, &labeling, &e);
                }
            }
        }
    }
    Ok(capped)
}

/// Success probability of one random labeling, with labels drawn from `1..=l0` and `0..=l0`.
pub fn labeling_probability(l0: usize, obnoxious_colors: usize, labeled_pebbles: usize) -> f64 {
    let l0 = l0 as f64;
    (l0 + 1.0).powi(-((l0 as i32) * (1 + obnoxious_colors as i32))) * l0.powi(-(labeled_pebbles as i32))
}

/// Obnoxious pebbles present: random pebble and vertex labels, one exact colorful DP per labeling.
fn random_labels(
    search: &mut Search,
    prepared: &[Prepared],
    present: &[usize],
    d: u32,
    options: &FptOptions,
) -> Result<bool> {
    let instance = search.instance;
    let n = instance.n();
    let labeled: Vec<usize> = (0..instance.pebbles.len()).filter(|&p| instance.kind_of(p) != ColorKind::Obnoxious).collect();
    let mut capped = false;
    for pat in prepared {
        let f0 = pat.f0;
        let l0 = f0.n();
        let demand = facility_demand(instance, f0) as usize;
        let p_hat = labeling_probability(l0, present.len(), instance.k() + demand);
        let wanted = ((2.0 / options.epsilon).ln() / p_hat).ceil();
        let trials = if wanted >= options.max_labelings as f64 { options.max_labelings } else { wanted as u64 };
        capped |= wanted > options.max_labelings as f64;
        for (si, scheme) in schemes_for(f0, present, d).iter().enumerate() {
            let obn = obnoxious_at(instance, scheme);
            for t in 0..trials {
                if search.done() {
                    return Ok(capped);
                }
                let mut rng = SplitMix64::keyed(options.seed, &[pat.index as u64, si as u64, t]);
                let vertices: Vec<usize> = (0..n).map(|_| rng.below_usize(l0 + 1)).collect();
                let mut pebbles = vec![0usize; instance.pebbles.len()];
                for &p in &labeled {
                    pebbles[p] = 1 + rng.below_usize(l0);
                }
                let host: Vec<usize> = vertices.iter().map(|&x| if x == 0 { l0 } else { x - 1 }).collect();
                let labeling = Labeling { pebbles, vertices: Some(vertices) };
                let costs = cost_table(instance, f0, scheme, &labeling, &obn);
                search.labelings += 1;
                if (0..l0).any(|i| costs.row(i).iter().all(|c| c.is_inf())) {
                    continue;
                }
                search.dp_runs += 1;
                if let Some(e) = colorful_embedding_dp(&f0.graph, &pat.nice, &instance.graph, &host, &costs)? {
                    search.offer(f0, scheme, &labeling, &e);
                }
            }
        }
    }
    Ok(capped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::model::{CostSpec, Pebble, Problem};
    use crate::properties::Property;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn pebbles(list: &[(usize, usize)], cost: CostSpec) -> Vec<Pebble> {
        list.iter().enumerate().map(|(id, &(color, at))| Pebble { id, color, at, cost: cost.clone() }).collect()
    }

    fn solve(inst: &Instance) -> Result<FptReport> {
        let prop = Property::for_instance(inst).unwrap();
        let cat = prop.catalog(inst.k(), inst.l).unwrap();
        solve_fpt(inst, &cat, &FptOptions { seed: 7, ..FptOptions::default() })
    }

    #[test]
    fn scheme_counts() {
        let table = ColorTable::of(&[("red", ColorKind::Main), ("gray", ColorKind::Obnoxious)]);
        let mut f0 = MulticoloredGraph::new(Graph::new(1), 2);
        f0.counts[0] = vec![1, 1];
        assert_eq!(enumerate_schemes(&f0, &table, 2).len(), 2);
        let plain = ColorTable::of(&[("red", ColorKind::Main)]);
        assert_eq!(enumerate_schemes(&f0, &plain, 2), vec![Scheme { l0: 1, colors: vec![], e: vec![] }]);
        let mut pair = MulticoloredGraph::new(path(2), 2);
        pair.counts = vec![vec![1, 1], vec![1, 0]];
        let all = enumerate_schemes(&pair, &table, 3);
        // Column 0 allows (0,0), (1,0), (0,1); column 1 allows only zeros.
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|s| (0..2).map(|i| s.get(0, i, 1)).sum::<u32>() == 0));
    }

    #[test]
    fn single_pebble_table() {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let inst = Instance::new(path(4), colors, pebbles(&[(0, 0)], CostSpec::Distance), 1, None, Problem::new("connectivity"), false)
            .unwrap();
        let mut f0 = MulticoloredGraph::new(Graph::new(1), 1);
        f0.counts[0] = vec![1];
        let labeling = Labeling { pebbles: vec![1], vertices: Some(vec![1, 0, 1, 1]) };
        let t = build_cost_table(&inst, &f0, &Scheme::empty(1), &labeling).unwrap();
        assert_eq!(t.row(0), &[Cost::ZERO, Cost::INF, Cost::new(2), Cost::new(3)]);
    }

    #[test]
    fn asymmetric_obnoxious_rejected() {
        let colors = ColorTable::of(&[("red", ColorKind::Main), ("gray", ColorKind::Obnoxious)]);
        let mut ps = pebbles(&[(0, 0), (1, 2), (1, 2)], CostSpec::Distance);
        ps[2].cost = CostSpec::Moved;
        let inst = Instance::new(path(4), colors, ps, 1, None, Problem::new("connectivity"), false).unwrap();
        assert_eq!(check_equal_costs(&inst), Err(Error::MovementCostAsymmetry { a: 1, b: 2 }));
    }

    #[test]
    fn facility_shortage_is_infinite() {
        let colors = ColorTable::of(&[("red", ColorKind::Main), ("blue", ColorKind::Facility)]);
        let ps = pebbles(&[(0, 0), (1, 1)], CostSpec::Distance);
        let inst = Instance::new(path(3), colors, ps, 1, None, Problem::new("facility-location"), false).unwrap();
        let mut f0 = MulticoloredGraph::new(Graph::new(1), 2);
        f0.counts[0] = vec![1, 2];
        let labeling = Labeling { pebbles: vec![1, 1], vertices: None };
        let t = build_cost_table(&inst, &f0, &Scheme::empty(1), &labeling).unwrap();
        assert!(t.row(0).iter().all(|c| c.is_inf()));
    }

    #[test]
    fn collocated_path_costs_two() {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let problem = Problem::new("connectivity").with("collocated", true);
        let inst =
            Instance::new(path(5), colors, pebbles(&[(0, 0), (0, 2), (0, 4)], CostSpec::Distance), 3, None, problem, false).unwrap();
        let s = solve(&inst).unwrap().into_solution().unwrap();
        assert_eq!(s.cost, Cost::new(2));
    }

    #[test]
    fn already_solved_costs_zero() {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let inst = Instance::new(path(4), colors, pebbles(&[(0, 1), (0, 2)], CostSpec::Distance), 2, None, Problem::new("connectivity"), false)
            .unwrap();
        let s = solve(&inst).unwrap().into_solution().unwrap();
        assert_eq!((s.cost, s.plan.targets), (Cost::ZERO, vec![1, 2]));
    }

    #[test]
    fn facility_without_facilities_is_infeasible() {
        let colors = Property::default_colors(&Problem::new("facility-location"));
        let inst = Instance::new(path(3), colors, pebbles(&[(0, 0)], CostSpec::Distance), 1, None, Problem::new("facility-location"), false)
            .unwrap();
        assert_eq!(solve(&inst).unwrap().solution, None);
    }

    #[test]
    fn obnoxious_pebble_is_pushed_out() {
        let problem = Problem::new("separation").with("o", 0);
        let colors = Property::default_colors(&problem);
        let gray = colors.index_of("gray").unwrap();
        let ps = pebbles(&[(0, 0), (0, 2), (gray, 0), (gray, 2)], CostSpec::Distance);
        let inst = Instance::new(path(4), colors, ps, 3, None, problem, false).unwrap();
        let s = solve(&inst).unwrap().solution.unwrap();
        assert_eq!(s.cost, Cost::new(2));
        let moved = s.plan.targets[2] != 0 || s.plan.targets[0] != 0;
        assert!(moved);
    }

    #[test]
    fn budget_exceeded() {
        let colors = ColorTable::of(&[("red", ColorKind::Main)]);
        let problem = Problem::new("connectivity").with("collocated", true);
        let inst = Instance::new(path(5), colors, pebbles(&[(0, 0), (0, 2), (0, 4)], CostSpec::Distance), 3, Some(1), problem, false)
            .unwrap();
        assert_eq!(solve(&inst), Err(Error::BudgetExceeded { optimum: 2, budget: 1 }));
    }
}
