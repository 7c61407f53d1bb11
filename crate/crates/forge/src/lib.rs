//! Std companion to `seidel-forge-core`: rayon drivers, JSON formats, the
//! reference tables used by `--check-paper`, the verification suite and the
//! command-line front end.

pub mod checks;
pub mod cli;
pub mod fixtures;
pub mod formats;
pub mod parallel;
