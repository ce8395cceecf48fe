//! Criterion benchmarks for the pathcx engine; see `benches/`.
