//! Criterion benchmarks for the lopsp workspace; see `benches/`.
