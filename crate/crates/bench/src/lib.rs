//! Criterion benchmarks for `barrow-core`; see `benches/kernels.rs`.
//!
//! ```text
//! cargo bench -p barrow-bench
//! ```
