use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dcindex::{Config, Index, Mode};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn workload(n: usize, sigma: u32, queries: usize) -> (Index, Vec<Vec<u32>>) {
    let mut rng = StdRng::seed_from_u64(42);
    let text: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
    let idx = Index::build(&text, sigma, &Config::default()).unwrap();
    let pats = (0..queries)
        .map(|k| {
            let len = rng.gen_range(1..=64);
            if k % 2 == 0 {
                let s = rng.gen_range(0..n - len);
                text[s..s + len].to_vec()
            } else {
                (0..len).map(|_| rng.gen_range(0..sigma)).collect()
            }
        })
        .collect();
    (idx, pats)
}

fn batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_batch");
    for (n, sigma) in [(100_000usize, 4u32), (1_000_000, 4)] {
        let (idx, pats) = workload(n, sigma, 4096);
        g.throughput(Throughput::Elements(pats.len() as u64));
        for mode in [Mode::Sequential, Mode::Parallel] {
            g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), n), &pats, |b, pats| {
                b.iter(|| black_box(idx.count_batch(pats, mode)))
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("locate_batch");
    let (idx, pats) = workload(100_000, 4, 1024);
    g.throughput(Throughput::Elements(pats.len() as u64));
    for mode in [Mode::Sequential, Mode::Parallel] {
        g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), 100_000), &pats, |b, pats| {
            b.iter(|| black_box(idx.locate_batch(pats, mode)))
        });
    }
    g.finish();
}

fn build(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(7);
    let text: Vec<u32> = (0..200_000).map(|_| rng.gen_range(0..4)).collect();
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    // construction sorts in parallel when the feature is on
    g.bench_function("n=200000", |b| b.iter(|| black_box(Index::build(&text, 4, &Config::default()).unwrap())));
    g.finish();
}

criterion_group!(benches, batch, build);
criterion_main!(benches);
