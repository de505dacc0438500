//! Benchmarks for matchkit; see `benches/`.
