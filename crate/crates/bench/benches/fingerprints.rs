use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hdfp_bench::molecules;
use hdfp_core::morgan::morgan_encode;
use hdfp_core::{Encoder, EncoderConfig, MorganConfig};
use std::hint::black_box;

fn encode(c: &mut Criterion) {
    let mols = molecules(200);
    let mut group = c.benchmark_group("encode");
    group.throughput(Throughput::Elements(mols.len() as u64));
    for dim in [64, 1024] {
        let enc = Encoder::new(EncoderConfig::default().with_dim(dim)).unwrap();
        group.bench_with_input(BenchmarkId::new("hdf", dim), &dim, |b, _| {
            b.iter(|| {
                for g in &mols {
                    black_box(enc.encode(g).unwrap());
                }
            })
        });
        let cfg = MorganConfig::new(2, dim).unwrap();
        group.bench_with_input(BenchmarkId::new("morgan", dim), &dim, |b, _| {
            b.iter(|| {
                for g in &mols {
                    black_box(morgan_encode(&cfg, g).unwrap());
                }
            })
        });
    }
    group.bench_function("hdf-stepwise/1024", |b| {
        let enc = Encoder::new(EncoderConfig::default()).unwrap();
        b.iter(|| {
            for g in &mols[..20] {
                black_box(enc.encode_stepwise(g).unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, encode);
criterion_main!(benches);
