use movekit::embedding::{colorful_embedding_dp, min_cost_embedding, nice_decomposition, EmbedCostTable};
use movekit::graph::Graph;
use movekit::random::{random_connected_graph, random_graph};
use movekit::rng::SplitMix64;
use movekit::Cost;
use proptest::prelude::*;

struct Case {
    f: Graph,
    g: Graph,
    costs: EmbedCostTable,
    labels: Vec<usize>,
}

fn random_costs(rng: &mut SplitMix64, k: usize, n: usize) -> EmbedCostTable {
    EmbedCostTable::new(
        (0..k).map(|_| (0..n).map(|_| if rng.chance(0.15) { Cost::INF } else { Cost::new(rng.below(10)) }).collect()).collect(),
    )
}

fn case(seed: u64) -> Case {
    let mut rng = SplitMix64::new(seed);
    let k = 1 + rng.below_usize(4);
    let n = k + rng.below_usize(8 - k);
    let extra = rng.below_usize(3);
    let f = random_connected_graph(&mut rng, k, extra);
    let p = 0.3 + 0.5 * rng.unit();
    let g = random_graph(&mut rng, n, p);
    let costs = random_costs(&mut rng, k, n);
    let labels = (0..n).map(|_| rng.below_usize(k + 1)).collect();
    Case { f, g, costs, labels }
}

/// Cheapest injective subgraph map by trying every one; `labels` restricts to colorful maps.
fn brute(f: &Graph, g: &Graph, costs: &EmbedCostTable, labels: Option<&[usize]>) -> Cost {
    fn go(f: &Graph, g: &Graph, costs: &EmbedCostTable, labels: Option<&[usize]>, phi: &mut Vec<usize>, best: &mut Cost) {
        let v = phi.len();
        if v == f.n() {
            if let Some(lab) = labels {
                let mut seen = vec![false; f.n()];
                for &u in phi.iter() {
                    if lab[u] >= f.n() || seen[lab[u]] {
                        return;
                    }
                    seen[lab[u]] = true;
                }
            }
            let total: Cost = phi.iter().enumerate().map(|(v, &u)| costs.get(v, u)).sum();
            *best = (*best).min(total);
            return;
        }
        for u in 0..g.n() {
            if phi.contains(&u) || f.neighbors(v).iter().any(|&w| w < v && !g.has_edge(phi[w], u)) {
                continue;
            }
            phi.push(u);
            go(f, g, costs, labels, phi, best);
            phi.pop();
        }
    }
    let mut best = Cost::INF;
    go(f, g, costs, labels, &mut vec![], &mut best);
    best
}

fn dp(c: &Case) -> Cost {
    let nice = nice_decomposition(&c.f).unwrap();
    match colorful_embedding_dp(&c.f, &nice, &c.g, &c.labels, &c.costs).unwrap() {
        None => Cost::INF,
        Some(e) => {
            assert_eq!(e.cost, c.costs.total(&e.phi));
            for (a, b) in c.f.edges() {
                assert!(c.g.has_edge(e.phi[a], e.phi[b]));
            }
            let mut labs: Vec<usize> = e.phi.iter().map(|&u| c.labels[u]).collect();
            labs.sort_unstable();
            assert_eq!(labs, (0..c.f.n()).collect::<Vec<_>>());
            e.cost
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_matches_colorful_enumeration(seed in any::<u64>()) {
        let c = case(seed);
        prop_assert_eq!(dp(&c), brute(&c.f, &c.g, &c.costs, Some(&c.labels)));
    }

    #[test]
    fn raising_a_cost_never_helps(seed in any::<u64>(), v in 0usize..4, u in 0usize..7, by in 1u64..10) {
        let mut c = case(seed);
        let before = dp(&c);
        let (v, u) = (v % c.f.n(), u % c.g.n());
        c.costs.set(v, u, c.costs.get(v, u) + Cost::new(by));
        prop_assert!(dp(&c) >= before);
    }

    #[test]
    fn host_relabeling_keeps_optimum(seed in any::<u64>()) {
        let c = case(seed);
        let mut perm: Vec<usize> = (0..c.g.n()).collect();
        SplitMix64::new(seed ^ 1).shuffle(&mut perm);
        let g = Graph::from_edges(c.g.n(), &c.g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect::<Vec<_>>()).unwrap();
        let mut labels = vec![0; c.g.n()];
        let mut rows = vec![vec![Cost::INF; c.g.n()]; c.f.n()];
        for u in 0..c.g.n() {
            labels[perm[u]] = c.labels[u];
            for (v, row) in rows.iter_mut().enumerate() {
                row[perm[u]] = c.costs.get(v, u);
            }
        }
        let moved = Case { f: c.f.clone(), g, costs: EmbedCostTable::new(rows), labels };
        prop_assert_eq!(dp(&moved), dp(&c));
    }
}

#[test]
fn color_coding_finds_optimum() {
    let (mut hits, mut runs) = (0, 0);
    let mut seed = 0u64;
    while runs < 200 {
        seed += 1;
        let mut rng = SplitMix64::new(seed);
        let extra = rng.below_usize(2);
        let f = random_connected_graph(&mut rng, 3, extra);
        let n = 3 + rng.below_usize(5);
        let g = random_graph(&mut rng, n, 0.6);
        let costs = random_costs(&mut rng, 3, n);
        let truth = brute(&f, &g, &costs, None);
        if truth.is_inf() {
            continue;
        }
        runs += 1;
        let out = min_cost_embedding(&f, &g, &costs, 0.01, seed).unwrap();
        let got = out.best.map_or(Cost::INF, |e| e.cost);
        assert!(got >= truth);
        hits += usize::from(got == truth);
    }
    assert!(hits >= 194, "{hits}/200");
}
