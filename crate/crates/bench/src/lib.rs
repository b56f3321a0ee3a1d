//! Benchmark-only crate; see `benches/machines.rs`.
