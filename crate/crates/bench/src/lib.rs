//! Benchmarks for root finding, table building and rendering.
//!
//! Run with `cargo bench -p eigenflow-bench`.
