use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use movekit::connectivity::{connectivity_solve_with, conv_fast, conv_naive, ConvMode};
use movekit::embedding::{colorful_embedding_dp, nice_decomposition};
use movekit::fpt::{solve_fpt, FptOptions};
use movekit::properties::Property;
use movekit::random::{scaling_instance, small_instance, FAMILIES};
use movekit::rng::SplitMix64;
use movekit_bench::{embed_case, subset_pair};

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution");
    for k in [6, 8, 10] {
        let (f, g) = subset_pair(k, k as u64);
        group.bench_with_input(BenchmarkId::new("naive", k), &k, |b, _| b.iter(|| conv_naive(black_box(&f), black_box(&g))));
        group.bench_with_input(BenchmarkId::new("fast", k), &k, |b, _| b.iter(|| conv_fast(black_box(&f), black_box(&g), 31).unwrap()));
    }
    group.finish();
}

fn embedding(c: &mut Criterion) {
    let mut group = c.benchmark_group("colorful_dp");
    for n in [20, 50, 100] {
        let case = embed_case(5, n, 0.2, n as u64);
        let nice = nice_decomposition(&case.pattern).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| colorful_embedding_dp(&case.pattern, &nice, &case.host, &case.labels, &case.costs).unwrap())
        });
    }
    group.finish();
}

fn connectivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("connectivity_n200");
    group.sample_size(10);
    for k in [6, 8, 10] {
        let inst = scaling_instance(&mut SplitMix64::new(8), 200, k);
        // Fast mode pays for the cost range squared; it is only affordable at small k here.
        let modes: &[ConvMode] = if k <= 6 { &[ConvMode::Naive, ConvMode::Fast] } else { &[ConvMode::Naive] };
        for &mode in modes {
            let id = BenchmarkId::new(format!("{mode:?}").to_lowercase(), k);
            group.bench_with_input(id, &k, |b, _| b.iter(|| connectivity_solve_with(&inst, mode).unwrap()));
        }
    }
    group.finish();
}

fn fpt(c: &mut Criterion) {
    let mut group = c.benchmark_group("fpt_small");
    for (f, family) in FAMILIES.iter().enumerate() {
        let instances: Vec<_> = (0..20u64)
            .map(|seed| {
                let inst = small_instance(&mut SplitMix64::keyed(seed, &[f as u64]), *family);
                let catalog = Property::for_instance(&inst).unwrap().catalog(inst.k(), inst.l).unwrap();
                (inst, catalog)
            })
            .collect();
        group.bench_function(format!("{family:?}").to_lowercase(), |b| {
            b.iter(|| {
                for (seed, (inst, catalog)) in instances.iter().enumerate() {
                    black_box(solve_fpt(inst, catalog, &FptOptions { seed: seed as u64, ..Default::default() }).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, convolution, embedding, connectivity, fpt);
criterion_main!(benches);
