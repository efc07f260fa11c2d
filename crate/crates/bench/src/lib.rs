//! Benchmarks for gfrob-core live in `benches/`.
