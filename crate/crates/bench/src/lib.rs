//! Criterion benchmarks for the kakimizu toolkit live under `benches/`.
