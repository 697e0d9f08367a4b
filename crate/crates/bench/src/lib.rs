//! Fixtures shared by the benchmark targets.

use movekit::connectivity::SubsetFunction;
use movekit::embedding::EmbedCostTable;
use movekit::random::{random_connected_graph, random_graph};
use movekit::rng::SplitMix64;
use movekit::{Cost, Graph};

/// Pair of subset functions on `k` elements with values in `0..=31` and some infinities.
pub fn subset_pair(k: usize, seed: u64) -> (SubsetFunction, SubsetFunction) {
    let mut rng = SplitMix64::new(seed);
    let mut draw = || {
        let values = (0..1usize << k).map(|_| if rng.chance(0.1) { Cost::INF } else { Cost::new(rng.below(32)) }).collect();
        SubsetFunction::new(k, values).expect("length matches k")
    };
    (draw(), draw())
}

pub struct EmbedCase {
    pub pattern: Graph,
    pub host: Graph,
    pub costs: EmbedCostTable,
    pub labels: Vec<usize>,
}

/// Tree pattern on `k` vertices, random host on `n` vertices with edge probability `p`.
pub fn embed_case(k: usize, n: usize, p: f64, seed: u64) -> EmbedCase {
    let mut rng = SplitMix64::new(seed);
    let pattern = random_connected_graph(&mut rng, k, 0);
    let host = random_graph(&mut rng, n, p);
    let costs = EmbedCostTable::new((0..k).map(|_| (0..n).map(|_| Cost::new(rng.below(20))).collect()).collect());
    let labels = (0..n).map(|_| rng.below_usize(k)).collect();
    EmbedCase { pattern, host, costs, labels }
}
