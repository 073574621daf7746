//! Discrete-event simulator and protocol library for federated learning with
//! a dynamically elected ("flying") aggregation master.
//!
//! The crate models a fully connected network of heterogeneous edge devices
//! placed on a 2-D plane. Each federated-learning round samples participants,
//! broadcasts the model, elects the next aggregation master under one of
//! eleven selection strategies (random, least-distance, least-stress via
//! gossip, proof-of-work, exhaustive oracles, or a fixed server), trains
//! locally, and uploads for aggregation — producing both the model trajectory
//! and a per-round wall-clock ledger. Every stochastic draw is keyed to
//! labeled RNG streams so runs are bit-reproducible and selection strategies
//! can be compared under common random numbers.

pub mod config;
pub mod consensus;
pub mod data;
pub mod device;
mod error;
pub mod experiment;
pub mod gev;
pub mod latency;
pub mod nn;
pub mod orchestrator;
pub mod rng;
pub mod selection;
pub mod topology;

pub use error::{Error, Result};
