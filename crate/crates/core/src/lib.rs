//! Batch forensics for large tweet archives.
//!
//! The crate is organized around one pass over newline-delimited tweet
//! archives: [`corpus`] streams and validates records, [`botdetect`] turns
//! per-user snapshots into a ten-feature logistic-regression bot classifier,
//! [`stats`] holds the self-contained numeric kernels (Welch's t, Mann-Whitney
//! U, Pearson, rank-frequency), and [`analytics`] reproduces the corpus-level
//! characterization (timelines, rank tables, group comparisons, follower
//! deltas, dormancy flags). [`synth`] generates seeded synthetic corpora used
//! by the test suites and the `gen-fixture` CLI command.

pub mod analytics;
pub mod botdetect;
pub mod corpus;
pub mod rng;
pub mod stats;
pub mod synth;
pub mod time;
