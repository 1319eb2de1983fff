//! Time-varying simulated annealing on `[0,1]^d` driven by `(t,s)_R`-sequences.
//!
//! The input stream of the chain interpolates between i.i.d. uniforms (`R = 0`)
//! and a fully deterministic digital sequence (`R = inf`). Proposals are drawn
//! through coordinate-wise inverse Rosenblatt transforms of truncated
//! Student-t or ASA kernels whose scales shrink over time, and acceptance uses
//! the Metropolis rule at temperature `T_n`.
//!
//! Modules:
//! - [`sequences`]: digit tables, `(t,s)_R` drivers, net verification, block indices.
//! - [`kernels`]: scale schedules, proposal kernels, hypothesis checkers.
//! - [`annealer`]: cooling schedules and the chain itself.
//! - [`objectives`]: benchmark objectives with known maxima.
//! - [`harness`]: experiment configuration, replication runner, verification suites.

pub mod annealer;
pub(crate) mod asymptotics;
pub mod error;
pub mod harness;
pub mod kernels;
pub mod objectives;
pub mod quadrature;
pub mod sequences;

pub use error::{Error, Result};
