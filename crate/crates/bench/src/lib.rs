//! Criterion benchmarks for `vbf-core`; see `benches/`.
