//! Seeded fuzzing, stratified sampling, tightness search and grid scans.
//!
//! Everything here is a pure function of its configuration and seed. Work is
//! spread over rayon, but results are always merged in sample (or cell) order.

pub mod fuzz;
pub mod sampling;
pub mod scan;
pub mod search;

pub use fuzz::{
    corpus_sample, fuzz, fuzz_with_workers, sample_rng, CorpusSample, FuzzConfig, FuzzReport,
    RegionMix, SlackStats, Witness,
};
pub use sampling::{equilateral, sample_point, sample_triangle, Stratum, TriangleShape};
pub use scan::{cell_center, grid_scan, BBox, ScanGrid, ScanRow};
pub use search::{slack_at, tightness_search, SearchOptions, SearchResult};
