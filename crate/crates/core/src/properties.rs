//! Property plugins: membership predicates and catalogs of edge-deletion-minimal patterns.

use std::collections::{BTreeMap, VecDeque};

use serde_json::Value;

use crate::canon::{canonical_form, canonical_key};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{ColorKind, ColorTable, Instance, MulticoloredGraph, Problem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    Connectivity { collocated: bool },
    Matching,
    /// `few_pebbles`: the connectors are a second main color; otherwise a facility color.
    StConnectivity { few_pebbles: bool },
    Steiner,
    StDConnectivity { d: usize },
    FacilityLocation { distance: usize, distinct: bool },
    Separation { o: u32 },
    Dispersion,
}

pub const PROBLEM_NAMES: [&str; 8] = [
    "connectivity",
    "matching",
    "st-connectivity",
    "steiner",
    "st-d-connectivity",
    "facility-location",
    "separation",
    "dispersion",
];

/// A property bound to a color table.
#[derive(Clone, Debug)]
pub struct Property {
    pub kind: PropertyKind,
    pub colors: ColorTable,
    main: Vec<usize>,
    red: usize,
    blue: Option<usize>,
    obnoxious: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCatalog {
    pub patterns: Vec<MulticoloredGraph>,
    /// Largest total pebble count over the patterns.
    pub max_pebbles: u32,
    pub treewidth_bound: usize,
    pub closed_under_edge_addition: bool,
    /// Set when the parameters admit no pattern at all.
    pub empty_reason: Option<String>,
}

impl PatternCatalog {
    /// Catalog holding one pattern, matched as a spanning subgraph.
    pub fn single(pattern: MulticoloredGraph) -> Result<PatternCatalog> {
        let treewidth_bound = crate::treewidth::treewidth(&pattern.graph)?;
        Ok(PatternCatalog {
            max_pebbles: pattern.total_pebbles(),
            patterns: vec![pattern],
            treewidth_bound,
            closed_under_edge_addition: true,
            empty_reason: None,
        })
    }
}

fn param_bool(problem: &Problem, key: &str, default: bool) -> Result<bool> {
    match problem.params.get(key) {
        None => Ok(default),
        Some(Value::Bool(b)) => Ok(*b),
        Some(v) => Err(Error::InvalidInstance(format!("problem.params.{key}: expected boolean, got {v}"))),
    }
}

fn param_uint(problem: &Problem, key: &str, default: Option<u64>) -> Result<u64> {
    match problem.params.get(key) {
        None => default.ok_or_else(|| Error::InvalidInstance(format!("problem.params.{key}: required"))),
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Error::InvalidInstance(format!("problem.params.{key}: expected nonnegative integer, got {v}"))),
    }
}

fn check_params(problem: &Problem, allowed: &[&str]) -> Result<()> {
    match problem.params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::InvalidInstance(format!("problem.params.{k}: unknown parameter for {}", problem.name))),
        None => Ok(()),
    }
}

impl Property {
    pub fn from_problem(problem: &Problem, colors: &ColorTable) -> Result<Property> {
        let main = colors.of_kind(ColorKind::Main);
        let facility = colors.of_kind(ColorKind::Facility);
        let obnoxious = colors.of_kind(ColorKind::Obnoxious);
        let Some(&red) = main.first() else {
            return Err(Error::InvalidInstance("colors: no main color".into()));
        };
        let need_facility = |what: &str| {
            facility.first().copied().map(Some).ok_or_else(|| {
                Error::InvalidInstance(format!("colors: {what} needs a facility color"))
            })
        };
        let single_main = |name: &str| {
            if main.len() == 1 {
                Ok(())
            } else {
                Err(Error::InvalidInstance(format!("colors: {name} expects exactly one main color, found {}", main.len())))
            }
        };
        let (kind, blue) = match problem.name.as_str() {
            "connectivity" => {
                check_params(problem, &["collocated"])?;
                single_main("connectivity")?;
                (PropertyKind::Connectivity { collocated: param_bool(problem, "collocated", false)? }, None)
            }
            "matching" => {
                check_params(problem, &[])?;
                single_main("matching")?;
                (PropertyKind::Matching, None)
            }
            "st-connectivity" => {
                check_params(problem, &["variant"])?;
                let few = match problem.params.get("variant") {
                    None => main.len() == 2,
                    Some(Value::String(s)) if s == "few-pebbles" => true,
                    Some(Value::String(s)) if s == "bounded-length" => false,
                    Some(v) => {
                        return Err(Error::InvalidInstance(format!(
                            "problem.params.variant: expected \"few-pebbles\" or \"bounded-length\", got {v}"
                        )))
                    }
                };
                if few {
                    if main.len() != 2 {
                        return Err(Error::InvalidInstance(format!(
                            "colors: few-pebbles st-connectivity expects two main colors, found {}",
                            main.len()
                        )));
                    }
                    (PropertyKind::StConnectivity { few_pebbles: true }, Some(main[1]))
                } else {
                    single_main("st-connectivity")?;
                    (PropertyKind::StConnectivity { few_pebbles: false }, need_facility("st-connectivity")?)
                }
            }
            "steiner" => {
                check_params(problem, &[])?;
                single_main("steiner")?;
                (PropertyKind::Steiner, need_facility("steiner")?)
            }
            "st-d-connectivity" => {
                check_params(problem, &["d"])?;
                single_main("st-d-connectivity")?;
                let d = param_uint(problem, "d", None)?;
                if d == 0 {
                    return Err(Error::InvalidInstance("problem.params.d: must be at least 1".into()));
                }
                (PropertyKind::StDConnectivity { d: d as usize }, need_facility("st-d-connectivity")?)
            }
            "facility-location" => {
                check_params(problem, &["distance", "distinct"])?;
                single_main("facility-location")?;
                let distance = param_uint(problem, "distance", Some(0))? as usize;
                let distinct = param_bool(problem, "distinct", true)?;
                (PropertyKind::FacilityLocation { distance, distinct }, need_facility("facility-location")?)
            }
            "separation" => {
                check_params(problem, &["o"])?;
                single_main("separation")?;
                let o = param_uint(problem, "o", Some(0))?;
                let o = u32::try_from(o).map_err(|_| Error::InvalidInstance("problem.params.o: too large".into()))?;
                (PropertyKind::Separation { o }, None)
            }
            "dispersion" => {
                check_params(problem, &[])?;
                single_main("dispersion")?;
                (PropertyKind::Dispersion, None)
            }
            other => return Err(Error::UnsupportedProblem(other.to_string())),
        };
        Ok(Property { kind, colors: colors.clone(), main, red, blue, obnoxious })
    }

    pub fn for_instance(instance: &Instance) -> Result<Property> {
        Property::from_problem(&instance.problem, &instance.colors)
    }

    /// Colors used when no instance supplies a table: red main, blue facility
    /// (a second main color for few-pebbles st-connectivity) and gray obnoxious.
    pub fn default_colors(problem: &Problem) -> ColorTable {
        let few = problem.name == "st-connectivity"
            && problem.params.get("variant").and_then(Value::as_str) == Some("few-pebbles");
        let blue = if few { ColorKind::Main } else { ColorKind::Facility };
        ColorTable::of(&[("red", ColorKind::Main), ("blue", blue), ("gray", ColorKind::Obnoxious)])
    }

    pub fn closed_under_edge_addition(&self) -> bool {
        !matches!(self.kind, PropertyKind::Dispersion)
    }

    pub fn treewidth_bound(&self) -> usize {
        match self.kind {
            PropertyKind::Connectivity { .. }
            | PropertyKind::Matching
            | PropertyKind::StConnectivity { .. }
            | PropertyKind::Steiner => 1,
            PropertyKind::StDConnectivity { .. } => 2,
            PropertyKind::FacilityLocation { .. } | PropertyKind::Separation { .. } | PropertyKind::Dispersion => 0,
        }
    }

    fn mains(&self, g: &MulticoloredGraph, v: usize) -> u32 {
        self.main.iter().map(|&c| g.counts[v][c]).sum()
    }

    fn blues(&self, g: &MulticoloredGraph, v: usize) -> u32 {
        self.blue.map_or(0, |c| g.counts[v][c])
    }

    fn obnoxious_at(&self, g: &MulticoloredGraph, v: usize) -> u32 {
        self.obnoxious.iter().map(|&c| g.counts[v][c]).sum()
    }

    /// The two terminals: exactly two red pebbles on distinct vertices, no other main pebbles
    /// besides connectors of the few-pebbles variant.
    fn terminals(&self, g: &MulticoloredGraph) -> Option<(usize, usize)> {
        let reds: Vec<usize> = (0..g.n()).filter(|&v| g.counts[v][self.red] > 0).collect();
        let others = self.main.iter().filter(|&&c| c != self.red && Some(c) != self.blue);
        if reds.len() != 2
            || reds.iter().any(|&v| g.counts[v][self.red] != 1)
            || others.into_iter().any(|&c| (0..g.n()).any(|v| g.counts[v][c] > 0))
        {
            return None;
        }
        Some((reds[0], reds[1]))
    }

    /// Membership in the property's graph family.
    pub fn member(&self, g: &MulticoloredGraph) -> bool {
        let n = g.n();
        match self.kind {
            PropertyKind::Connectivity { collocated } => {
                n > 0
                    && g.graph.is_connected()
                    && (0..n).all(|v| {
                        let m = self.mains(g, v);
                        if collocated {
                            m >= 1
                        } else {
                            m == 1
                        }
                    })
            }
            PropertyKind::Matching => {
                (0..n).all(|v| self.mains(g, v) == 1) && has_perfect_matching(&g.graph)
            }
            PropertyKind::StConnectivity { .. } => {
                self.terminals(g).is_some_and(|(s, t)| self.disjoint_paths(g, s, t, 1) >= 1)
            }
            PropertyKind::StDConnectivity { d } => {
                self.terminals(g).is_some_and(|(s, t)| self.disjoint_paths(g, s, t, d) >= d)
            }
            PropertyKind::Steiner => {
                let terminals: Vec<usize> = (0..n).filter(|&v| self.mains(g, v) > 0).collect();
                let Some(&first) = terminals.first() else { return false };
                let usable: Vec<bool> = (0..n).map(|v| self.mains(g, v) > 0 || self.blues(g, v) > 0).collect();
                let seen = reach(&g.graph, first, |v| usable[v]);
                terminals.iter().all(|&v| seen[v])
            }
            PropertyKind::FacilityLocation { distance, distinct } => (0..n).all(|v| {
                let m = self.mains(g, v);
                if m == 0 {
                    return true;
                }
                if distinct && m > 1 {
                    return false;
                }
                let dist = g.graph.bfs(v);
                (0..n).any(|w| self.blues(g, w) > 0 && dist[w] as usize <= distance)
            }),
            PropertyKind::Separation { o } => {
                (0..n).all(|v| self.mains(g, v) == 0 || self.obnoxious_at(g, v) <= o)
            }
            PropertyKind::Dispersion => g.graph.edge_count() == 0 && (0..n).all(|v| self.mains(g, v) <= 1),
        }
    }

    /// Internally vertex-disjoint s–t paths whose interior vertices hold connectors, capped at `cap`.
    fn disjoint_paths(&self, g: &MulticoloredGraph, s: usize, t: usize, cap: usize) -> usize {
        let n = g.n();
        // Node 2v is v's entry, 2v+1 its exit; interior vertices have unit capacity.
        let size = 2 * n;
        let mut capm = vec![vec![0u32; size]; size];
        for v in 0..n {
            if v == s || v == t {
                capm[2 * v][2 * v + 1] = cap as u32;
            } else if self.blues(g, v) > 0 {
                capm[2 * v][2 * v + 1] = 1;
            }
            for &u in g.graph.neighbors(v) {
                capm[2 * v + 1][2 * u] = 1;
            }
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < cap {
            let mut prev = vec![usize::MAX; size];
            prev[src] = src;
            let mut queue = VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                for y in 0..size {
                    if prev[y] == usize::MAX && capm[x][y] > 0 {
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if prev[dst] == usize::MAX {
                break;
            }
            let mut y = dst;
            while y != src {
                let x = prev[y];
                capm[x][y] -= 1;
                capm[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }

    /// Edge-deletion-minimal patterns with `k` main pebbles on at most `l` vertices.
    pub fn catalog(&self, k: usize, l: usize) -> Result<PatternCatalog> {
        let nc = self.colors.len();
        let mut found: BTreeMap<Vec<u64>, MulticoloredGraph> = BTreeMap::new();
        let mut add = |g: MulticoloredGraph| {
            let key = canonical_key(&g);
            found.entry(key).or_insert_with(|| canonical_form(&g));
        };
        let mut empty_reason = None;
        let red = self.red;
        let k32 = k as u32;
        match self.kind {
            PropertyKind::Connectivity { collocated: false } => {
                if k <= l {
                    for t in enumerate_trees(k) {
                        add(with_counts(t, nc, &[(red, vec![1; k])]));
                    }
                }
            }
            PropertyKind::Connectivity { collocated: true } => {
                for j in 1..=k.min(l) {
                    for t in enumerate_trees(j) {
                        for comp in compositions(k32, j, 1) {
                            add(with_counts(t.clone(), nc, &[(red, comp)]));
                        }
                    }
                }
            }
            PropertyKind::Matching => {
                if k % 2 == 1 {
                    empty_reason = Some(format!("matching needs an even number of main pebbles, got {k}"));
                } else if k <= l {
                    let edges: Vec<(usize, usize)> = (0..k / 2).map(|i| (2 * i, 2 * i + 1)).collect();
                    add(with_counts(Graph::from_edges(k, &edges)?, nc, &[(red, vec![1; k])]));
                }
            }
            PropertyKind::StConnectivity { few_pebbles: false } => {
                if k == 2 && l >= 2 {
                    for a in 0..=l - 2 {
                        add(self.theta(&[a], nc));
                    }
                }
            }
            PropertyKind::StDConnectivity { d } => {
                if k == 2 && l >= 2 {
                    for lens in multisets_bounded(d, l - 2) {
                        if lens.iter().filter(|&&a| a == 0).count() <= 1 {
                            add(self.theta(&lens, nc));
                        }
                    }
                }
            }
            PropertyKind::StConnectivity { few_pebbles: true } => {
                let blue = self.blue.expect("connector color");
                if k >= 2 && l >= 2 {
                    let b = k32 - 2;
                    for a in 0..=(l - 2).min(b as usize) {
                        for m in 0..=(l - 2 - a).min(b as usize - a) {
                            let j = a + 2 + m;
                            let mut edges: Vec<(usize, usize)> = Vec::new();
                            let path: Vec<usize> = std::iter::once(0).chain(2..2 + a).chain(std::iter::once(1)).collect();
                            for w in path.windows(2) {
                                edges.push((w[0], w[1]));
                            }
                            let graph = Graph::from_edges(j, &edges)?;
                            let base: Vec<u32> = (0..j).map(|v| u32::from(v >= 2)).collect();
                            let spare = b - (a + m) as u32;
                            for extra in compositions(spare, j, 0) {
                                let blues: Vec<u32> = base.iter().zip(&extra).map(|(x, y)| x + y).collect();
                                let mut reds = vec![0; j];
                                reds[0] = 1;
                                reds[1] = 1;
                                add(with_counts(graph.clone(), nc, &[(red, reds), (blue, blues)]));
                            }
                        }
                    }
                }
            }
            PropertyKind::Steiner => {
                let blue = self.blue.expect("connector color");
                // `r` terminal vertices share the k red pebbles; the other j - r are connectors.
                for r in 1..=k.min(l) {
                    let spreads = compositions(k32, r, 1);
                    for j in r..=l {
                        for t in enumerate_trees(j) {
                            let inner: Vec<usize> = (0..j).filter(|&v| t.degree(v) >= 2).collect();
                            if inner.len() < j - r {
                                continue;
                            }
                            for chosen in combinations(&inner, j - r) {
                                let blues: Vec<u32> = (0..j).map(|v| u32::from(chosen.contains(&v))).collect();
                                let terminals: Vec<usize> = (0..j).filter(|&v| blues[v] == 0).collect();
                                for spread in &spreads {
                                    let mut reds = vec![0; j];
                                    for (&v, &c) in terminals.iter().zip(spread) {
                                        reds[v] = c;
                                    }
                                    add(with_counts(t.clone(), nc, &[(red, reds), (blue, blues.clone())]));
                                }
                            }
                        }
                    }
                }
            }
            PropertyKind::FacilityLocation { distance, distinct } => {
                if distance > 0 {
                    return Err(Error::UnsupportedProblem(format!(
                        "facility-location patterns for distance {distance}; only distance 0 has a catalog"
                    )));
                }
                let blue = self.blue.expect("facility color");
                let parts: Vec<Vec<u32>> = if distinct {
                    if k <= l { vec![vec![1; k]] } else { vec![] }
                } else {
                    (1..=k.min(l)).flat_map(|j| partitions(k32, j)).collect()
                };
                for p in parts {
                    let j = p.len();
                    add(with_counts(Graph::new(j), nc, &[(red, p), (blue, vec![1; j])]));
                }
            }
            PropertyKind::Separation { o } => {
                for j in 1..=k.min(l) {
                    for p in partitions(k32, j) {
                        let per_vertex = compositions(o, self.obnoxious.len(), 0);
                        let mut choice = vec![0usize; j];
                        loop {
                            let mut g = with_counts(Graph::new(j), nc, &[(red, p.clone())]);
                            for (v, &c) in choice.iter().enumerate() {
                                for (&col, &x) in self.obnoxious.iter().zip(&per_vertex[c]) {
                                    g.counts[v][col] = x;
                                }
                            }
                            add(g);
                            if !advance(&mut choice, per_vertex.len()) {
                                break;
                            }
                        }
                    }
                }
            }
            PropertyKind::Dispersion => {
                if k <= l {
                    add(with_counts(Graph::new(k), nc, &[(red, vec![1; k])]));
                }
            }
        }
        let mut patterns: Vec<MulticoloredGraph> = found.into_values().collect();
        patterns.sort_by_key(|p| (p.n(), canonical_key(p)));
        if patterns.is_empty() && empty_reason.is_none() {
            empty_reason = Some(format!("no pattern with {k} main pebbles fits on {l} vertices"));
        }
        Ok(PatternCatalog {
            max_pebbles: patterns.iter().map(MulticoloredGraph::total_pebbles).max().unwrap_or(0),
            patterns,
            treewidth_bound: self.treewidth_bound(),
            closed_under_edge_addition: self.closed_under_edge_addition(),
            empty_reason,
        })
    }

    /// Terminals 0 and 1 joined by paths with the given interior lengths; interiors hold one connector.
    fn theta(&self, lens: &[usize], nc: usize) -> MulticoloredGraph {
        let j = 2 + lens.iter().sum::<usize>();
        let mut graph = Graph::new(j);
        let mut next = 2;
        for &a in lens {
            let path: Vec<usize> = std::iter::once(0).chain(next..next + a).chain(std::iter::once(1)).collect();
            for w in path.windows(2) {
                graph.add_edge(w[0], w[1]);
            }
            next += a;
        }
        let mut reds = vec![0; j];
        reds[0] = 1;
        reds[1] = 1;
        let blues: Vec<u32> = (0..j).map(|v| u32::from(v >= 2)).collect();
        with_counts(graph, nc, &[(self.red, reds), (self.blue.expect("connector color"), blues)])
    }
}

fn with_counts(graph: Graph, ncolors: usize, layers: &[(usize, Vec<u32>)]) -> MulticoloredGraph {
    let mut g = MulticoloredGraph::new(graph, ncolors);
    for (c, values) in layers {
        for (v, &x) in values.iter().enumerate() {
            g.counts[v][*c] = x;
        }
    }
    g
}

fn reach(graph: &Graph, from: usize, usable: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; graph.n()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        for &u in graph.neighbors(v) {
            if !seen[u] && usable(u) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

fn has_perfect_matching(graph: &Graph) -> bool {
    fn go(graph: &Graph, used: &mut [bool]) -> bool {
        let Some(v) = used.iter().position(|&u| !u) else { return true };
        used[v] = true;
        for &u in graph.neighbors(v) {
            if !used[u] {
                used[u] = true;
                if go(graph, used) {
                    return true;
                }
                used[u] = false;
            }
        }
        used[v] = false;
        false
    }
    graph.n() % 2 == 0 && go(graph, &mut vec![false; graph.n()])
}

/// Odometer step over `choice[i] in 0..radix`; false after the last combination.
fn advance(choice: &mut [usize], radix: usize) -> bool {
    for c in choice.iter_mut() {
        *c += 1;
        if *c < radix {
            return true;
        }
        *c = 0;
    }
    false
}

/// Sequences of `parts` values, each at least `min`, summing to `total`.
pub fn compositions(total: u32, parts: usize, min: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let reserve = min * (parts as u32 - 1);
        if left < min + reserve {
            return;
        }
        for x in min..=left - reserve {
            cur.push(x);
            go(left - x, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts as u64 * u64::from(min) <= u64::from(total) || parts == 0 {
        go(total, parts, min, &mut Vec::new(), &mut out);
    }
    out
}

/// Non-increasing sequences of `parts` positive values summing to `total`.
pub fn partitions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    compositions(total, parts, 1).into_iter().filter(|p| p.windows(2).all(|w| w[0] >= w[1])).collect()
}

/// Non-increasing sequences of `len` nonnegative values with sum at most `bound`.
fn multisets_bounded(len: usize, bound: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for x in 0..=max.min(left) {
            cur.push(x);
            go(len - 1, x, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, bound, bound, &mut Vec::new(), &mut out);
    out
}

fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if items.len() < r {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], r - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Non-isomorphic trees on `j` vertices, grown leaf by leaf and deduplicated.
pub fn enumerate_trees(j: usize) -> Vec<Graph> {
    if j == 0 {
        return vec![];
    }
    let mut level: BTreeMap<Vec<u64>, MulticoloredGraph> = BTreeMap::new();
    let single = MulticoloredGraph::new(Graph::new(1), 0);
    level.insert(canonical_key(&single), single);
    for size in 2..=j {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..size - 1 {
                let mut g = Graph::new(size);
                for (a, b) in t.graph.edges() {
                    g.add_edge(a, b);
                }
                g.add_edge(v, size - 1);
                let m = MulticoloredGraph::new(g, 0);
                next.entry(canonical_key(&m)).or_insert_with(|| canonical_form(&m));
            }
        }
        level = next;
    }
    level.into_values().map(|m| m.graph).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prop(name: &str) -> Property {
        let p = Problem::new(name);
        Property::from_problem(&p, &Property::default_colors(&p)).unwrap()
    }

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|j| enumerate_trees(j).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn connectivity_three() {
        let cat = prop("connectivity").catalog(3, 3).unwrap();
        assert_eq!(cat.patterns.len(), 1);
        assert_eq!(cat.patterns[0].graph.edge_count(), 2);
    }

    #[test]
    fn matching_four_and_odd() {
        let cat = prop("matching").catalog(4, 4).unwrap();
        assert_eq!(cat.patterns.len(), 1);
        assert_eq!(cat.patterns[0].graph.edge_count(), 2);
        let odd = prop("matching").catalog(3, 4).unwrap();
        assert!(odd.patterns.is_empty() && odd.empty_reason.is_some());
    }

    #[test]
    fn facility_two() {
        let cat = prop("facility-location").catalog(2, 2).unwrap();
        assert_eq!(cat.patterns.len(), 1);
        let p = &cat.patterns[0];
        assert_eq!(p.graph.edge_count(), 0);
        assert!(p.counts.iter().all(|c| c[0] == 1 && c[1] == 1));
    }

    #[test]
    fn unknown_problem() {
        let p = Problem::new("grid");
        assert!(matches!(
            Property::from_problem(&p, &Property::default_colors(&p)),
            Err(Error::UnsupportedProblem(_))
        ));
    }

    #[test]
    fn st_d_paths() {
        let p = Problem::new("st-d-connectivity").with("d", 2);
        let prop = Property::from_problem(&p, &Property::default_colors(&p)).unwrap();
        let cat = prop.catalog(2, 4).unwrap();
        // interior lengths (a, b) with a ≥ b, a + b ≤ 2, at most one direct edge
        assert_eq!(cat.patterns.len(), 3);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 2, 1).len(), 3);
        assert_eq!(compositions(2, 3, 0).len(), 6);
        assert_eq!(partitions(5, 2), vec![vec![3, 2], vec![4, 1]]);
    }
}
