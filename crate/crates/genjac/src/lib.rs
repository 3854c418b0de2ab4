//! Parameter files, experiments, cost benchmark and command line for
//! generalized Jacobians over [`genjac_core`].

pub mod bench;
pub mod cli;
pub mod experiments;
pub mod formats;
