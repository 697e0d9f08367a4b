//! Exact tree decompositions of small graphs and conversion to nice form.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_VERTEX_LIMIT: usize = 15;

/// Bags hung on a rooted tree given by parent links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the tree shape and the three covering conditions.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let t = self.bags.len();
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.parent.len() != t {
            return bad(format!("tree: {} parent links for {t} bags", self.parent.len()));
        }
        if t == 0 {
            return if graph.n() == 0 { Ok(()) } else { bad("vertex coverage: no bags".into()) };
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            return bad(format!("tree: {roots} roots"));
        }
        for (u, p) in self.parent.iter().enumerate() {
            let mut seen = 0;
            let mut cur = *p;
            while let Some(x) = cur {
                if x >= t {
                    return bad(format!("tree: node {u} has parent {x} out of range"));
                }
                seen += 1;
                if seen > t {
                    return bad(format!("tree: cycle through node {u}"));
                }
                cur = self.parent[x];
            }
        }
        let n = graph.n();
        let mut holders = vec![Vec::new(); n];
        for (u, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad(format!("bag {u} holds vertex {v} out of range"));
                }
                holders[v].push(u);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return bad(format!("vertex coverage: vertex {v} is in no bag"));
            }
            // Occurrence nodes are connected iff exactly one of them has its parent outside the set.
            let tops = hs.iter().filter(|&&u| self.parent[u].is_none_or(|p| !self.bags[p].contains(&v))).count();
            if tops != 1 {
                return bad(format!("connectivity: bags holding vertex {v} form {tops} subtrees"));
            }
        }
        for (a, b) in graph.edges() {
            if !self.bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
                return bad(format!("edge coverage: edge ({a},{b}) is in no bag"));
            }
        }
        Ok(())
    }
}

/// Vertices outside `eliminated ∪ {v}` reachable from `v` through `eliminated`.
fn q_set(graph: &Graph, eliminated: u32, v: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut out = 0u32;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            let bit = 1u32 << w;
            if seen & bit != 0 {
                continue;
            }
            seen |= bit;
            if eliminated & bit != 0 {
                stack.push(w);
            } else {
                out |= bit;
            }
        }
    }
    out
}

/// Minimum-width elimination ordering by dynamic programming over eliminated sets.
pub fn optimal_elimination_order(graph: &Graph, limit: usize) -> Result<Vec<usize>> {
    let n = graph.n();
    if n > limit || n > 25 {
        return Err(Error::TooLarge { n, limit: limit.min(25) });
    }
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = vec![u32::MAX; 1usize << n];
    best[0] = 0;
    for s in 1..=full {
        let mut m = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let w = best[prev as usize].max(q_set(graph, prev, v).count_ones());
            m = m.min(w);
        }
        best[s as usize] = m;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        loop {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            if best[prev as usize].max(q_set(graph, prev, v).count_ones()) == best[s as usize] {
                order.push(v);
                s = prev;
                break;
            }
        }
    }
    order.reverse();
    Ok(order)
}

/// Decomposition induced by an elimination ordering.
pub fn decomposition_from_order(graph: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = graph.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut eliminated = 0u32;
    for (i, &v) in order.iter().enumerate() {
        let q = q_set(graph, eliminated, v);
        let mut bag: Vec<usize> = (0..n).filter(|&w| q >> w & 1 == 1).collect();
        parent[i] = bag.iter().map(|&w| pos[w]).min();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        eliminated |= 1 << v;
    }
    // Join the per-component roots under the last one.
    if let Some(last) = n.checked_sub(1) {
        for p in parent.iter_mut().take(last) {
            if p.is_none() {
                *p = Some(last);
            }
        }
    }
    TreeDecomposition { bags, parent }
}

/// Minimum-width tree decomposition for graphs up to `limit` vertices.
pub fn exact_decomposition_with_limit(graph: &Graph, limit: usize) -> Result<TreeDecomposition> {
    let order = optimal_elimination_order(graph, limit)?;
    Ok(decomposition_from_order(graph, &order))
}

pub fn exact_decomposition(graph: &Graph) -> Result<TreeDecomposition> {
    exact_decomposition_with_limit(graph, DEFAULT_VERTEX_LIMIT)
}

pub fn treewidth(graph: &Graph) -> Result<usize> {
    Ok(exact_decomposition(graph)?.width())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nice decomposition stored children-first; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn as_plain(&self) -> TreeDecomposition {
        let mut parent = vec![None; self.nodes.len()];
        for (u, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(u);
            }
        }
        TreeDecomposition { bags: self.nodes.iter().map(|x| x.bag.clone()).collect(), parent }
    }

    /// Vertices appearing in the subtree of each node.
    pub fn subtree_vertices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let mut vs = node.bag.clone();
            for &c in &node.children {
                vs.extend_from_slice(&out[c]);
            }
            vs.sort_unstable();
            vs.dedup();
            out.push(vs);
        }
        out
    }

    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.nodes.is_empty() {
            return bad("tree: no nodes".into());
        }
        for (u, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= u) {
                return bad(format!("order: node {u} precedes a child"));
            }
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("bag {u} is not sorted and distinct"));
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let ok = match (node.kind, node.children.len()) {
                (NodeKind::Leaf, 0) => true,
                (NodeKind::Introduce(v), 1) => {
                    node.bag.contains(&v) && !child_bag(0).contains(&v) && node.bag.len() == child_bag(0).len() + 1
                        && child_bag(0).iter().all(|w| node.bag.contains(w))
                }
                (NodeKind::Forget(v), 1) => {
                    !node.bag.contains(&v) && child_bag(0).contains(&v) && node.bag.len() + 1 == child_bag(0).len()
                        && node.bag.iter().all(|w| child_bag(0).contains(w))
                }
                (NodeKind::Join, 2) => child_bag(0) == &node.bag && child_bag(1) == &node.bag,
                _ => false,
            };
            if !ok {
                return bad(format!("node kind: node {u} is not a valid {:?}", node.kind));
            }
        }
        let plain = self.as_plain();
        plain.validate(graph)?;
        if graph.n() > 0 && self.nodes[self.root()].bag.len() != 1 {
            return bad("root: bag must hold exactly one vertex".into());
        }
        Ok(())
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Chain of forgets then introduces from node `from` to `target`.
    fn morph(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.nodes[from].bag.clone();
        let mut bag = current.clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            bag.retain(|&w| w != v);
            from = self.push(NodeKind::Forget(v), bag.clone(), vec![from]);
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            let i = bag.binary_search(&v).unwrap_err();
            bag.insert(i, v);
            from = self.push(NodeKind::Introduce(v), bag.clone(), vec![from]);
        }
        from
    }

    fn build(&mut self, td: &TreeDecomposition, children: &[Vec<usize>], u: usize) -> usize {
        let bag = &td.bags[u];
        let mut tops = Vec::new();
        for &c in &children[u] {
            let top = self.build(td, children, c);
            tops.push(self.morph(top, bag));
        }
        if tops.is_empty() {
            let start = bag.first().map(|&v| vec![v]).unwrap_or_default();
            let leaf = self.push(NodeKind::Leaf, start, vec![]);
            return self.morph(leaf, bag);
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            acc = self.push(NodeKind::Join, bag.clone(), vec![acc, t]);
        }
        acc
    }
}

/// Converts a valid decomposition into nice form of the same width.
pub fn make_nice(td: &TreeDecomposition, graph: &Graph) -> Result<NiceTreeDecomposition> {
    td.validate(graph)?;
    let mut td = td.clone();
    for bag in &mut td.bags {
        bag.sort_unstable();
        bag.dedup();
    }
    let t = td.bags.len();
    let mut children = vec![Vec::new(); t];
    let mut root = 0;
    for (u, p) in td.parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(u),
            None => root = u,
        }
    }
    let mut b = NiceBuilder { nodes: Vec::new() };
    let top = b.build(&td, &children, root);
    let bag = b.nodes[top].bag.clone();
    if bag.len() > 1 {
        b.morph(top, &bag[..1]);
    }
    let nice = NiceTreeDecomposition { nodes: b.nodes };
    nice.validate(graph)?;
    debug_assert_eq!(nice.width(), td.width());
    Ok(nice)
}
