//! Command-line front end: manifests, computations and verification reports.
pub mod commands;
pub mod manifest;
