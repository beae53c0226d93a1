//! Criterion benchmarks for `cvdc-core`; see the `benches/` directory.
