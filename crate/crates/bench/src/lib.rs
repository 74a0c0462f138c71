//! Criterion benchmarks for the face-count engines; see `benches/`.
