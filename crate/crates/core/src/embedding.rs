//! Minimum-cost colorful subgraph embedding over a nice tree decomposition,
//! and the color-coding wrapper that drives it with random host labelings.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;
use crate::treewidth::{exact_decomposition, make_nice, NiceTreeDecomposition, NodeKind};

/// Largest table the DP will allocate for one node.
const MAX_TABLE: usize = 1 << 26;
const NONE: u32 = u32::MAX;

/// `cost(v, u)`: price of sending pattern vertex `v` to host vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedCostTable {
    rows: Vec<Vec<Cost>>,
}

impl EmbedCostTable {
    pub fn new(rows: Vec<Vec<Cost>>) -> EmbedCostTable {
        EmbedCostTable { rows }
    }

    pub fn uniform(pattern: usize, host: usize, c: Cost) -> EmbedCostTable {
        EmbedCostTable { rows: vec![vec![c; host]; pattern] }
    }

    pub fn get(&self, v: usize, u: usize) -> Cost {
        self.rows[v][u]
    }

    pub fn set(&mut self, v: usize, u: usize, c: Cost) {
        self.rows[v][u] = c;
    }

    pub fn row(&self, v: usize) -> &[Cost] {
        &self.rows[v]
    }

    /// Total cost of a full assignment.
    pub fn total(&self, phi: &[usize]) -> Cost {
        phi.iter().enumerate().map(|(v, &u)| self.rows[v][u]).sum()
    }

    /// Sum of row minima; no embedding is cheaper.
    pub fn lower_bound(&self) -> Cost {
        self.rows.iter().map(|r| r.iter().copied().min().unwrap_or(Cost::INF)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Embedding {
    pub cost: Cost,
    /// `phi[v]` is the host vertex of pattern vertex `v`.
    pub phi: Vec<usize>,
}

struct Table {
    radix: Vec<usize>,
    npsi: usize,
    cost: Vec<Cost>,
    back: Vec<u32>,
}

impl Table {
    fn new(radix: Vec<usize>, labels: usize) -> Result<Table> {
        let npsi = radix.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).unwrap_or(usize::MAX);
        let size = npsi.saturating_mul(1 << labels);
        if size > MAX_TABLE {
            return Err(Error::LimitExceeded { size: size as u128, limit: MAX_TABLE as u128 });
        }
        Ok(Table { radix, npsi, cost: vec![Cost::INF; size], back: vec![NONE; size] })
    }

    fn decode(&self, mut psi: usize, digits: &mut [usize]) {
        for (d, &r) in digits.iter_mut().zip(&self.radix) {
            *d = psi % r;
            psi /= r;
        }
    }

    fn encode(&self, digits: &[usize]) -> usize {
        let mut idx = 0;
        for (d, &r) in digits.iter().zip(&self.radix).rev() {
            idx = idx * r + d;
        }
        idx
    }

    fn at(&self, mask: usize, psi: usize) -> usize {
        mask * self.npsi + psi
    }
}

/// Finds the cheapest embedding of `f` into `g` that is a subgraph map and
/// colorful under `labels` (host labels in `0..f.n()`; other values exclude the vertex).
/// Returns `Ok(None)` when no such embedding has finite cost.
pub fn colorful_embedding_dp(
    f: &Graph,
    nice: &NiceTreeDecomposition,
    g: &Graph,
    labels: &[usize],
    costs: &EmbedCostTable,
) -> Result<Option<Embedding>> {
    let k = f.n();
    if k == 0 {
        return Ok(Some(Embedding { cost: Cost::ZERO, phi: vec![] }));
    }
    if k > 20 {
        return Err(Error::TooLarge { n: k, limit: 20 });
    }
    if labels.len() != g.n() {
        return Err(Error::InvalidGraph(format!("{} labels for {} host vertices", labels.len(), g.n())));
    }
    let full = (1usize << k) - 1;
    let cand: Vec<Vec<usize>> = (0..k)
        .map(|v| (0..g.n()).filter(|&u| labels[u] < k && costs.get(v, u).is_finite()).collect())
        .collect();
    if cand.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let sizes: Vec<u32> = nice.subtree_vertices().iter().map(|vs| vs.len() as u32).collect();
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    let mut digits = vec![0usize; k + 1];
    let mut sub = vec![0usize; k + 1];
    let mut hosts = vec![0usize; k + 1];

    for (u, node) in nice.nodes.iter().enumerate() {
        let bag = &node.bag;
        let radix: Vec<usize> = bag.iter().map(|&v| cand[v].len()).collect();
        let mut t = Table::new(radix, k)?;
        let want = sizes[u];
        match node.kind {
            NodeKind::Leaf => {
                for psi in 0..t.npsi {
                    t.decode(psi, &mut digits[..bag.len()]);
                    let mut mask = 0usize;
                    let mut c = Cost::ZERO;
                    let mut ok = true;
                    for (i, &v) in bag.iter().enumerate() {
                        let h = cand[v][digits[i]];
                        hosts[i] = h;
                        let bit = 1 << labels[h];
                        if mask & bit != 0 {
                            ok = false;
                            break;
                        }
                        mask |= bit;
                        c = c + costs.get(v, h);
                        for j in 0..i {
                            if f.has_edge(v, bag[j]) && !g.has_edge(h, hosts[j]) {
                                ok = false;
                            }
                        }
                    }
                    if ok {
                        let i = t.at(mask, psi);
                        t.cost[i] = c;
                    }
                }
            }
            NodeKind::Introduce(v) => {
                let child = &tables[node.children[0]];
                let q = bag.iter().position(|&x| x == v).unwrap();
                let masks: Vec<usize> = (0..=full).filter(|m| m.count_ones() == want - 1).collect();
                for psi in 0..t.npsi {
                    t.decode(psi, &mut digits[..bag.len()]);
                    let h = cand[v][digits[q]];
                    let adjacent = bag.iter().enumerate().all(|(i, &w)| {
                        i == q || !f.has_edge(v, w) || g.has_edge(h, cand[w][digits[i]])
                    });
                    if !adjacent {
                        continue;
                    }
                    let mut n = 0;
                    for (i, &d) in digits[..bag.len()].iter().enumerate() {
                        if i != q {
                            sub[n] = d;
                            n += 1;
                        }
                    }
                    let cpsi = child.encode(&sub[..n]);
                    let bit = 1 << labels[h];
                    let add = costs.get(v, h);
                    for &m in &masks {
                        if m & bit != 0 {
                            continue;
                        }
                        let cc = child.cost[child.at(m, cpsi)];
                        if cc.is_finite() {
                            let i = t.at(m | bit, psi);
                            t.cost[i] = cc + add;
                        }
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child = &tables[node.children[0]];
                let q = nice.nodes[node.children[0]].bag.iter().position(|&x| x == v).unwrap();
                let cb = bag.len() + 1;
                let masks: Vec<usize> = (0..=full).filter(|m| m.count_ones() == want).collect();
                for cpsi in 0..child.npsi {
                    child.decode(cpsi, &mut digits[..cb]);
                    let mut n = 0;
                    for (i, &d) in digits[..cb].iter().enumerate() {
                        if i != q {
                            sub[n] = d;
                            n += 1;
                        }
                    }
                    let psi = t.encode(&sub[..n]);
                    let dq = digits[q] as u32;
                    for &m in &masks {
                        let cc = child.cost[child.at(m, cpsi)];
                        if cc.is_inf() {
                            continue;
                        }
                        let i = t.at(m, psi);
                        if cc < t.cost[i] || cc == t.cost[i] && dq < t.back[i] {
                            t.cost[i] = cc;
                            t.back[i] = dq;
                        }
                    }
                }
            }
            NodeKind::Join => {
                let (a, b) = (&tables[node.children[0]], &tables[node.children[1]]);
                let (sa, sb) = (sizes[node.children[0]], sizes[node.children[1]]);
                let masks: Vec<usize> = (0..=full).filter(|m| m.count_ones() == sa).collect();
                let extra = sb - bag.len() as u32;
                for psi in 0..t.npsi {
                    t.decode(psi, &mut digits[..bag.len()]);
                    let mut l0 = 0usize;
                    let mut cu = Cost::ZERO;
                    for (i, &v) in bag.iter().enumerate() {
                        let h = cand[v][digits[i]];
                        l0 |= 1 << labels[h];
                        cu = cu + costs.get(v, h);
                    }
                    for &m1 in &masks {
                        let c1 = a.cost[a.at(m1, psi)];
                        if c1.is_inf() {
                            continue;
                        }
                        let rest = full & !m1;
                        let mut s = rest;
                        loop {
                            if s.count_ones() == extra {
                                let c2 = b.cost[b.at(l0 | s, psi)];
                                if c2.is_finite() {
                                    let val = (c1 + c2).minus(cu);
                                    let i = t.at(m1 | s, psi);
                                    if val < t.cost[i] || val == t.cost[i] && (m1 as u32) < t.back[i] {
                                        t.cost[i] = val;
                                        t.back[i] = m1 as u32;
                                    }
                                }
                            }
                            if s == 0 {
                                break;
                            }
                            s = (s - 1) & rest;
                        }
                    }
                }
            }
        }
        tables.push(t);
    }

    let root = nice.root();
    let rt = &tables[root];
    let mut best: Option<(Cost, usize)> = None;
    for psi in 0..rt.npsi {
        let c = rt.cost[rt.at(full, psi)];
        if c.is_finite() && best.is_none_or(|(b, _)| c < b) {
            best = Some((c, psi));
        }
    }
    let Some((cost, psi)) = best else { return Ok(None) };

    let mut phi = vec![usize::MAX; k];
    let mut stack = vec![(root, full, psi)];
    while let Some((u, mask, psi)) = stack.pop() {
        let node = &nice.nodes[u];
        let t = &tables[u];
        let bag = &node.bag;
        t.decode(psi, &mut digits[..bag.len()]);
        for (i, &v) in bag.iter().enumerate() {
            phi[v] = cand[v][digits[i]];
        }
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let child = &tables[node.children[0]];
                let sub: Vec<usize> =
                    bag.iter().zip(&digits).filter(|(&w, _)| w != v).map(|(_, &d)| d).collect();
                let bit = 1 << labels[phi[v]];
                stack.push((node.children[0], mask & !bit, child.encode(&sub)));
            }
            NodeKind::Forget(v) => {
                let child = &tables[node.children[0]];
                let cbag = &nice.nodes[node.children[0]].bag;
                let dq = t.back[t.at(mask, psi)] as usize;
                let mut it = digits[..bag.len()].iter();
                let full_digits: Vec<usize> =
                    cbag.iter().map(|&w| if w == v { dq } else { *it.next().unwrap() }).collect();
                stack.push((node.children[0], mask, child.encode(&full_digits)));
            }
            NodeKind::Join => {
                let m1 = t.back[t.at(mask, psi)] as usize;
                let l0: usize = bag.iter().map(|&v| 1usize << labels[phi[v]]).fold(0, |a, b| a | b);
                stack.push((node.children[0], m1, psi));
                stack.push((node.children[1], l0 | (mask & !m1), psi));
            }
        }
    }
    debug_assert_eq!(costs.total(&phi), cost);
    Ok(Some(Embedding { cost, phi }))
}

/// Nice decomposition of a pattern graph with minimum width.
pub fn nice_decomposition(f: &Graph) -> Result<NiceTreeDecomposition> {
    make_nice(&exact_decomposition(f)?, f)
}

/// Number of color-coding trials for failure probability `epsilon`.
pub fn trial_count(pattern_size: usize, epsilon: f64) -> u64 {
    ((pattern_size as f64).exp() * (1.0 / epsilon).ln()).ceil().max(1.0) as u64
}

/// Uniform host labeling in `0..k` for trial `trial`.
pub fn random_labels(k: usize, host: usize, seed: u64, trial: u64) -> Vec<usize> {
    let mut rng = SplitMix64::stream(seed, trial);
    (0..host).map(|_| rng.below_usize(k.max(1))).collect()
}

/// Cheapest injective subgraph map by backtracking; ties go to the lexicographically smallest map.
/// Meant for hosts and patterns small enough that enumeration beats color coding.
pub fn exhaustive_embedding(f: &Graph, g: &Graph, costs: &EmbedCostTable) -> Option<Embedding> {
    let k = f.n();
    let cand: Vec<Vec<usize>> = (0..k).map(|v| (0..g.n()).filter(|&u| costs.get(v, u).is_finite()).collect()).collect();
    let mut phi = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];
    let mut best: Option<Embedding> = None;
    extend(f, g, costs, &cand, 0, Cost::ZERO, &mut phi, &mut used, &mut best);
    best
}

/// Number of maps [`exhaustive_embedding`] may visit.
pub fn candidate_product(f: &Graph, g: &Graph, costs: &EmbedCostTable) -> u128 {
    (0..f.n())
        .map(|v| (0..g.n()).filter(|&u| costs.get(v, u).is_finite()).count() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    f: &Graph,
    g: &Graph,
    costs: &EmbedCostTable,
    cand: &[Vec<usize>],
    v: usize,
    acc: Cost,
    phi: &mut [usize],
    used: &mut [bool],
    best: &mut Option<Embedding>,
) {
    if best.as_ref().is_some_and(|b| acc > b.cost) {
        return;
    }
    if v == f.n() {
        if best.as_ref().is_none_or(|b| acc < b.cost) {
            *best = Some(Embedding { cost: acc, phi: phi.to_vec() });
        }
        return;
    }
    for &u in &cand[v] {
        if used[u] || f.neighbors(v).iter().any(|&w| w < v && !g.has_edge(u, phi[w])) {
            continue;
        }
        phi[v] = u;
        used[u] = true;
        extend(f, g, costs, cand, v + 1, acc + costs.get(v, u), phi, used, best);
        used[u] = false;
    }
    phi[v] = usize::MAX;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedOutcome {
    pub best: Option<Embedding>,
    pub trials: u64,
}

/// Color coding: repeats the colorful DP under independent random host labelings
/// and keeps the cheapest embedding (ties toward the lexicographically smallest).
pub fn min_cost_embedding(f: &Graph, g: &Graph, costs: &EmbedCostTable, epsilon: f64, seed: u64) -> Result<EmbedOutcome> {
    let nice = nice_decomposition(f)?;
    min_cost_embedding_with(f, &nice, g, costs, epsilon, seed)
}

pub fn min_cost_embedding_with(
    f: &Graph,
    nice: &NiceTreeDecomposition,
    g: &Graph,
    costs: &EmbedCostTable,
    epsilon: f64,
    seed: u64,
) -> Result<EmbedOutcome> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInstance(format!("failure probability {epsilon} not in (0,1)")));
    }
    if f.n() > g.n() {
        return Ok(EmbedOutcome { best: None, trials: 0 });
    }
    let trials = trial_count(f.n(), epsilon);
    let mut best: Option<Embedding> = None;
    for t in 0..trials {
        let labels = random_labels(f.n(), g.n(), seed, t);
        if let Some(e) = colorful_embedding_dp(f, nice, g, &labels, costs)? {
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
    }
    Ok(EmbedOutcome { best, trials })
}
