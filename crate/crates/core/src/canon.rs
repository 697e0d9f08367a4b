//! Canonical labelings of small multicolored graphs by color refinement
//! with individualization.

use crate::model::MulticoloredGraph;

/// Rank-compresses signatures into class ids that depend only on the signatures.
fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut uniq = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect()
}

fn class_count(cls: &[usize]) -> usize {
    cls.iter().max().map_or(0, |m| m + 1)
}

fn refine(g: &MulticoloredGraph, mut cls: Vec<usize>) -> Vec<usize> {
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<usize> = g.graph.neighbors(v).iter().map(|&u| cls[u]).collect();
                nb.sort_unstable();
                (cls[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        if class_count(&next) == class_count(&cls) {
            return next;
        }
        cls = next;
    }
}

fn encode(g: &MulticoloredGraph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut key = vec![n as u64];
    for &v in order {
        key.extend(g.counts[v].iter().map(|&c| u64::from(c)));
    }
    let mut word = 0u64;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            word = word << 1 | u64::from(g.graph.has_edge(order[i], order[j]));
            bits += 1;
            if bits == 64 {
                key.push(word);
                word = 0;
                bits = 0;
            }
        }
    }
    key.push(word);
    key
}

fn search(g: &MulticoloredGraph, cls: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = g.n();
    if class_count(&cls) == n {
        let mut order = vec![0; n];
        for (v, &c) in cls.iter().enumerate() {
            order[c] = v;
        }
        let key = encode(g, &order);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, order));
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &cls {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).unwrap();
    for v in (0..n).filter(|&v| cls[v] == target) {
        let split: Vec<usize> =
            cls.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(c == target && u != v)).collect();
        search(g, refine(g, rank(&split)), best);
    }
}

/// `order[i]` is the vertex placed at canonical position `i`.
pub fn canonical_order(g: &MulticoloredGraph) -> Vec<usize> {
    canonical(g).1
}

/// Key equal for two graphs exactly when they are isomorphic (colors and counts included).
pub fn canonical_key(g: &MulticoloredGraph) -> Vec<u64> {
    canonical(g).0
}

fn canonical(g: &MulticoloredGraph) -> (Vec<u64>, Vec<usize>) {
    if g.n() == 0 {
        return (vec![0, 0], vec![]);
    }
    let init: Vec<(Vec<u32>, usize)> = (0..g.n()).map(|v| (g.counts[v].clone(), g.graph.degree(v))).collect();
    let mut best = None;
    search(g, refine(g, rank(&init)), &mut best);
    best.unwrap()
}

/// The isomorphic copy of `g` laid out in canonical order.
pub fn canonical_form(g: &MulticoloredGraph) -> MulticoloredGraph {
    let order = canonical_order(g);
    g.induced(&order)
}

pub fn isomorphic(a: &MulticoloredGraph, b: &MulticoloredGraph) -> bool {
    a.n() == b.n() && canonical_key(a) == canonical_key(b)
}

/// All automorphisms of `g` as vertex permutations, identity first.
pub fn automorphisms(g: &MulticoloredGraph) -> Vec<Vec<usize>> {
    fn extend(g: &MulticoloredGraph, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = perm.len();
        if v == g.n() {
            out.push(perm.clone());
            return;
        }
        for w in 0..g.n() {
            if used[w] || g.counts[w] != g.counts[v] || g.graph.degree(w) != g.graph.degree(v) {
                continue;
            }
            if (0..v).any(|u| g.graph.has_edge(u, v) != g.graph.has_edge(perm[u], w)) {
                continue;
            }
            used[w] = true;
            perm.push(w);
            extend(g, perm, used, out);
            perm.pop();
            used[w] = false;
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.n()], &mut out);
    out.sort();
    out
}
