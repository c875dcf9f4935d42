//! Criterion benchmarks for esebound; see `benches/`.
