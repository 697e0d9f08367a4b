use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Hop distance marker for unreachable vertices.
pub const UNREACHABLE: u32 = u32::MAX;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an endpoint >= {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(j);
                true
            }
            Err(_) => false,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Component index per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}
