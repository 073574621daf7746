//! Master-selection strategies: who aggregates next round.
//!
//! Random and least-distance selections are modeled with zero coordination
//! overhead; least-stress gets its elapsed time from the gossip protocol and
//! proof-of-work from the solution race (see `consensus`). The optimal
//! variants are oracles that exhaustively evaluate candidate round times.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::topology::{distance, DeviceId, Placement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SelectionAlgorithm {
    Fixed,
    RandomK,
    RandomN,
    LeastDistanceK,
    LeastDistanceN,
    LeastStressK,
    LeastStressN,
    PowK,
    PowN,
    OptimalK,
    OptimalN,
}

impl SelectionAlgorithm {
    pub const ALL: [SelectionAlgorithm; 11] = [
        SelectionAlgorithm::Fixed,
        SelectionAlgorithm::RandomK,
        SelectionAlgorithm::RandomN,
        SelectionAlgorithm::LeastDistanceK,
        SelectionAlgorithm::LeastDistanceN,
        SelectionAlgorithm::LeastStressK,
        SelectionAlgorithm::LeastStressN,
        SelectionAlgorithm::PowK,
        SelectionAlgorithm::PowN,
        SelectionAlgorithm::OptimalK,
        SelectionAlgorithm::OptimalN,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SelectionAlgorithm::Fixed => "fixed",
            SelectionAlgorithm::RandomK => "random_k",
            SelectionAlgorithm::RandomN => "random_n",
            SelectionAlgorithm::LeastDistanceK => "least_distance_k",
            SelectionAlgorithm::LeastDistanceN => "least_distance_n",
            SelectionAlgorithm::LeastStressK => "least_stress_k",
            SelectionAlgorithm::LeastStressN => "least_stress_n",
            SelectionAlgorithm::PowK => "pow_k",
            SelectionAlgorithm::PowN => "pow_n",
            SelectionAlgorithm::OptimalK => "optimal_k",
            SelectionAlgorithm::OptimalN => "optimal_n",
        }
    }

    /// Whether candidates come from the participant set (K) rather than the
    /// whole network (N).
    pub fn is_k_variant(&self) -> bool {
        matches!(
            self,
            SelectionAlgorithm::RandomK
                | SelectionAlgorithm::LeastDistanceK
                | SelectionAlgorithm::LeastStressK
                | SelectionAlgorithm::PowK
                | SelectionAlgorithm::OptimalK
        )
    }
}

impl std::fmt::Display for SelectionAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SelectionAlgorithm::ALL
            .iter()
            .find(|a| a.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidRange {
                field: "selection_algorithm".to_string(),
                message: format!("unknown algorithm `{s}`"),
            })
    }
}

/// Result of one master election.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionOutcome {
    pub master: DeviceId,
    pub selection_elapsed_ms: f64,
    pub messages: u64,
}

impl SelectionOutcome {
    pub fn free(master: DeviceId) -> Self {
        Self {
            master,
            selection_elapsed_ms: 0.0,
            messages: 0,
        }
    }
}

/// The set a strategy elects from: participants for K-variants, the whole
/// network for N-variants, the preselected server for Fixed.
pub fn candidate_set(
    algo: SelectionAlgorithm,
    participants: &[DeviceId],
    n_devices: usize,
    fixed_server: DeviceId,
) -> Vec<DeviceId> {
    match algo {
        SelectionAlgorithm::Fixed => vec![fixed_server],
        a if a.is_k_variant() => {
            let mut c = participants.to_vec();
            c.sort_unstable();
            c
        }
        _ => (0..n_devices).collect(),
    }
}

/// Uniform choice among candidates.
pub fn select_random(candidates: &[DeviceId], stream: &mut RngStream) -> Result<SelectionOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let idx = stream.next_below(candidates.len());
    Ok(SelectionOutcome::free(candidates[idx]))
}

/// Candidate with the smallest sum of distances to the participants; ties go
/// to the smallest device id.
pub fn select_least_distance(
    candidates: &[DeviceId],
    participants: &[DeviceId],
    placement: &Placement,
) -> Result<SelectionOutcome> {
    if candidates.is_empty() || participants.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut best: Option<(f64, DeviceId)> = None;
    for &c in candidates {
        let mut sum = 0.0;
        for &k in participants {
            sum += distance(placement, c, k)?;
        }
        best = match best {
            Some((bs, bid)) if (bs, bid) <= (sum, c) => Some((bs, bid)),
            _ => Some((sum, c)),
        };
    }
    let (_, master) = best.unwrap();
    Ok(SelectionOutcome::free(master))
}

/// Candidate with the smallest stress; ties go to the smallest device id.
///
/// This is the oracle path used for testing; the gossip protocol produces the
/// same master plus its coordination cost.
pub fn select_least_stress(candidates: &[DeviceId], stress: &[f64]) -> Result<SelectionOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut best: Option<(f64, DeviceId)> = None;
    for &c in candidates {
        let s = *stress.get(c).ok_or(Error::MissingStress(c))?;
        best = match best {
            Some((bs, bid)) if (bs, bid) <= (s, c) => Some((bs, bid)),
            _ => Some((s, c)),
        };
    }
    let (_, master) = best.unwrap();
    Ok(SelectionOutcome::free(master))
}

/// Candidate minimizing the round-time oracle; ties go to the smallest id.
pub fn select_optimal<F: Fn(DeviceId) -> f64>(
    candidates: &[DeviceId],
    time_oracle: F,
) -> Result<SelectionOutcome> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut best: Option<(f64, DeviceId)> = None;
    for &c in candidates {
        let t = time_oracle(c);
        best = match best {
            Some((bt, bid)) if (bt, bid) <= (t, c) => Some((bt, bid)),
            _ => Some((t, c)),
        };
    }
    let (_, master) = best.unwrap();
    Ok(SelectionOutcome::free(master))
}
