//! Criterion benchmarks for `spinlab-core`; see `benches/`.
