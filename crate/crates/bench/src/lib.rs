//! Criterion benchmarks for rrpi-core live in `benches/`.
