//! Planar multi-finger grasping with joint-torque feedback.
//!
//! The crate bundles four layers:
//!
//! * [`sim`] — a deterministic planar rigid-body simulator with penalty
//!   contacts, PD position control, and per-joint sensed actuator torque;
//! * [`env`] — a Markov decision process over the simulator that exposes
//!   torque/proprioception observations (never the object pose), shaped
//!   rewards, and grasp terminal logic;
//! * [`learn`] — dense networks with hand-rolled reverse-mode gradients,
//!   Adam, and Soft Actor-Critic with twin critics and entropy tuning;
//! * [`harness`] — seeded training schedules, evaluation protocols, and the
//!   ablation/robustness sweeps, all reproducible bit-for-bit from one seed.

pub mod defaults;
pub mod env;
pub mod harness;
pub mod learn;
pub mod math;
pub mod rng;
pub mod scene;
pub mod sim;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration, scene, or grasp specification.
    #[error("configuration error: {0}")]
    Config(String),
    /// Simulation produced a non-finite state; the episode must be aborted.
    #[error("simulation diverged: {0}")]
    SimDiverged(String),
    /// Training produced a non-finite loss or gradient.
    #[error("training error: {0}")]
    Training(String),
    /// Recorded data failed to reproduce on replay.
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
