//! Benchmarks for the qsmoments engines live in `benches/`.
