//! Criterion benchmarks for `genericgb`; see `benches/`.
