//! Simulation of a quantum learning machine: a parameterized unitary device,
//! a single-shot measurement and a feedback loop that adjusts the unitary's
//! parameters from a sliding window of success/failure records.
//!
//! The machine is trained on Deutsch's task (decide whether a one-bit boolean
//! function is constant or balanced) and the [`lab`] module runs the
//! Monte-Carlo experiments around it: survival curves, fidelity versus memory
//! size and the scaling of the characteristic learning constant.

pub mod deutsch;
pub mod error;
pub mod lab;
pub mod learning;
pub mod linalg;
pub mod su;

pub use error::{Error, Result};
