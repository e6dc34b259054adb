//! Benchmarks for csrig live in `benches/`.
