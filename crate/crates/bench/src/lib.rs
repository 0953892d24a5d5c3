//! Benchmarks for `lcy-core`; see `benches/`.
