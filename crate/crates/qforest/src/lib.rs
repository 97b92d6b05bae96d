//! Command-line front end, file formats and multi-threaded execution for
//! [`qforest_core`].
//!
//! The core crate describes every exhaustive count as a job split into
//! prefix shards; [`parallel::Parallel`] runs those shards on a rayon pool
//! and sums the tallies, so results are identical for any thread count.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;
pub mod verify;
