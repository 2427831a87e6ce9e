use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lopsp::apply::apply_lopsp;
use lopsp::bary::barycentric_subdivision;
use lopsp::canon::canonical_form;
use lopsp::{catalog, fixtures, verify};

fn apply_ops(c: &mut Criterion) {
    let hosts = [fixtures::cube(), fixtures::dodecahedron(), fixtures::torus_q3()];
    let mut group = c.benchmark_group("apply");
    for name in ["identity", "dual", "kis", "truncation", "chamfer", "gyro"] {
        let op = catalog::by_name(name).unwrap();
        for g in &hosts {
            let id = format!("{name}/{}", g.name().unwrap_or("?"));
            group.bench_with_input(BenchmarkId::from_parameter(id), g, |b, g| {
                b.iter(|| apply_lopsp(black_box(&op), black_box(g), None))
            });
        }
    }
    group.finish();
}

fn map_algorithms(c: &mut Criterion) {
    let big = apply_lopsp(&catalog::gyro(), &fixtures::dodecahedron(), None).result;
    c.bench_function("barycentric/gyro-dodecahedron", |b| b.iter(|| barycentric_subdivision(black_box(&big))));
    c.bench_function("canonical_form/gyro-dodecahedron", |b| b.iter(|| canonical_form(black_box(&big))));
    c.bench_function("separator3/gyro-dodecahedron", |b| b.iter(|| black_box(&big).separator(3)));
}

fn corpus(c: &mut Criterion) {
    let spec = verify::CorpusSpec { max_vertices: 8, ..Default::default() };
    c.bench_function("corpus/8-vertices", |b| b.iter(|| verify::corpus_generate(black_box(&spec))));
}

criterion_group!(benches, apply_ops, map_algorithms, corpus);
criterion_main!(benches);
