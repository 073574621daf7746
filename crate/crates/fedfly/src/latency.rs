//! Distance-calibrated link latency sampling with common random numbers.
//!
//! Every model transfer between `src` and `dst` in a given round draws one
//! GEV latency keyed by `(round, src, dst)`. The draw is a pure function of
//! the key, memoized per run, so every candidate master evaluated in the same
//! round observes identical network conditions.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gev::{gev_quantile, GevParams};
use crate::rng::RngStream;
use crate::topology::{distance, DeviceId, Placement};

/// Floor applied to sampled latencies; the heavy-tail GEV support can dip
/// below zero when the location is small.
pub const MIN_LATENCY_MS: f64 = 0.01;

/// Calibration mapping plane distance to the latency distribution.
#[derive(Debug, Clone, Copy)]
pub struct GevCalib {
    /// Propagation milliseconds per plane unit.
    pub ms_per_unit: f64,
    pub shape: f64,
    pub scale: f64,
}

impl Default for GevCalib {
    fn default() -> Self {
        Self {
            ms_per_unit: 0.02,
            shape: 0.7367,
            scale: 2.0676,
        }
    }
}

/// Latency distribution for a link of length `d`: shared shape and scale,
/// location proportional to distance.
pub fn expected_link_latency(calib: &GevCalib, d: f64) -> GevParams {
    assert!(d >= 0.0);
    GevParams {
        shape: calib.shape,
        scale: calib.scale,
        location: calib.ms_per_unit * d,
    }
}

/// Per-run latency table owning the memoized keyed draws.
///
/// One run owns one table; parallel runs each own their own.
pub struct LinkLatencyTable {
    calib: GevCalib,
    placement: Placement,
    stream: RngStream,
    memo: RefCell<HashMap<(u64, DeviceId, DeviceId), f64>>,
}

impl LinkLatencyTable {
    /// `stream` must be the run's "latency" stream.
    pub fn new(calib: GevCalib, placement: Placement, stream: RngStream) -> Self {
        Self {
            calib,
            placement,
            stream,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn calib(&self) -> &GevCalib {
        &self.calib
    }

    /// One-way latency draw for `(round, src, dst)`, memoized.
    pub fn link_latency(&self, round: u64, src: DeviceId, dst: DeviceId) -> Result<f64> {
        if src == dst {
            return Err(Error::SelfLink(src));
        }
        let key = (round, src, dst);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return Ok(v);
        }
        let d = distance(&self.placement, src, dst)?;
        let params = expected_link_latency(&self.calib, d);
        let u = self.stream.keyed_open01(&[round, src as u64, dst as u64]);
        let v = gev_quantile(&params, u)?.max(MIN_LATENCY_MS);
        self.memo.borrow_mut().insert(key, v);
        Ok(v)
    }

    /// Deterministic expected latency for control-plane messages (gossip
    /// stress values, puzzle solutions, declarations). These payloads are a
    /// few bytes; modeling them with the propagation component keeps protocol
    /// overhead independent of the heavy model-transfer tail.
    pub fn expected_latency(&self, src: DeviceId, dst: DeviceId) -> Result<f64> {
        if src == dst {
            return Ok(0.0);
        }
        let d = distance(&self.placement, src, dst)?;
        Ok((self.calib.ms_per_unit * d).max(MIN_LATENCY_MS))
    }
}
