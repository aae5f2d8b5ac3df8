//! Verification front end for the `klts-core` kernels: the seeded property
//! suite, named benchmark scenarios and linearization tables.

pub mod cli;
pub mod config;
pub mod error;
pub mod fd;
pub mod report;
pub mod sample;
pub mod scenario;
pub mod suite;
pub mod table;
