//! Criterion benchmarks for the genhermite kernels live in `benches/`.
