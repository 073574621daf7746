//! Executable consensus for flying-master election.
//!
//! Two protocols are simulated over the latency model with full message
//! accounting: gossip min-consensus over stress values, and the
//! proof-of-work solve/verify/declare race. The candidate graph is fully
//! connected, so gossip converges in a single broadcast wave.

use sha2::{Digest, Sha256};

use crate::device::{pow_solve_time, DeviceState, DeviceType};
use crate::error::{Error, Result};
use crate::nn::ModelParams;
use crate::rng::RngStream;
use crate::selection::SelectionOutcome;
use crate::topology::DeviceId;

/// Cost of checking one submitted solution; verification is a single hash.
pub const VERIFY_COST_MS: f64 = 0.1;

/// Per-node gossip state after the broadcast wave.
#[derive(Debug, Clone, PartialEq)]
pub struct GossipState {
    pub node_id: DeviceId,
    pub best_value: f64,
    pub best_id: DeviceId,
    pub woken: bool,
}

/// One-wave gossip min-consensus over `(stress, id)`.
///
/// Every candidate wakes after `interval_ms`, broadcasts its `(stress, id)`
/// to all other candidates, and keeps the lexicographic minimum of what it
/// saw. Elapsed time is the interval plus the slowest pairwise one-way
/// latency; message count is `|C| * (|C| - 1)`.
pub fn run_gossip_min<F: Fn(DeviceId, DeviceId) -> f64>(
    candidates: &[DeviceId],
    stress: &[f64],
    link_latency: F,
    interval_ms: f64,
) -> Result<(SelectionOutcome, Vec<GossipState>)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    for &c in candidates {
        if stress.get(c).is_none() {
            return Err(Error::MissingStress(c));
        }
    }

    let mut states: Vec<GossipState> = candidates
        .iter()
        .map(|&c| GossipState {
            node_id: c,
            best_value: stress[c],
            best_id: c,
            woken: true,
        })
        .collect();

    let mut max_latency: f64 = 0.0;
    for &src in candidates {
        for state in states.iter_mut() {
            if state.node_id == src {
                continue;
            }
            max_latency = max_latency.max(link_latency(src, state.node_id));
            if (stress[src], src) < (state.best_value, state.best_id) {
                state.best_value = stress[src];
                state.best_id = src;
            }
        }
    }

    let first = (states[0].best_value, states[0].best_id);
    debug_assert!(
        states.iter().all(|s| (s.best_value, s.best_id) == first),
        "gossip states disagree after one wave on a complete graph"
    );

    let count = candidates.len() as u64;
    let outcome = SelectionOutcome {
        master: first.1,
        selection_elapsed_ms: interval_ms + max_latency,
        messages: count * (count - 1),
    };
    Ok((outcome, states))
}

/// Proof-of-work instance bound to `(round, model digest)`; the solving
/// device's id enters the preimage at solve time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Puzzle {
    pub round: u64,
    pub model_digest: [u8; 32],
    /// Required number of leading zero bits.
    pub difficulty: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solution {
    pub device_id: DeviceId,
    pub nonce: u64,
}

/// Build the round's puzzle from the current model parameters.
pub fn make_puzzle(round: u64, params: &ModelParams, difficulty: u32) -> Puzzle {
    assert!(difficulty >= 1);
    let digest: [u8; 32] = Sha256::digest(params.to_le_bytes()).into();
    Puzzle {
        round,
        model_digest: digest,
        difficulty,
    }
}

fn attempt_hash(puzzle: &Puzzle, device_id: DeviceId, nonce: u64) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(puzzle.model_digest);
    hasher.update(puzzle.round.to_le_bytes());
    hasher.update((device_id as u64).to_le_bytes());
    hasher.update(nonce.to_le_bytes());
    hasher.finalize().into()
}

fn leading_zero_bits(hash: &[u8; 32]) -> u32 {
    let mut count = 0;
    for &byte in hash {
        let lz = byte.leading_zeros();
        count += lz;
        if lz < 8 {
            break;
        }
    }
    count
}

/// Search nonces in order; returns the smallest valid nonce below
/// `max_attempts`.
pub fn solve_puzzle(puzzle: &Puzzle, device_id: DeviceId, max_attempts: u64) -> Result<Solution> {
    assert!(max_attempts >= 1);
    for nonce in 0..max_attempts {
        if leading_zero_bits(&attempt_hash(puzzle, device_id, nonce)) >= puzzle.difficulty {
            return Ok(Solution { device_id, nonce });
        }
    }
    Err(Error::NotFound(max_attempts))
}

/// Recompute a single hash and check the leading-zero condition.
pub fn verify_solution(puzzle: &Puzzle, device_id: DeviceId, nonce: u64) -> bool {
    leading_zero_bits(&attempt_hash(puzzle, device_id, nonce)) >= puzzle.difficulty
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowEventKind {
    Solved,
    SolutionSent,
    Verified,
    Declared,
    Halted,
}

impl PowEventKind {
    pub fn name(&self) -> &'static str {
        match self {
            PowEventKind::Solved => "solved",
            PowEventKind::SolutionSent => "solution_sent",
            PowEventKind::Verified => "verified",
            PowEventKind::Declared => "declared",
            PowEventKind::Halted => "halted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowEvent {
    pub kind: PowEventKind,
    pub time_ms: f64,
    pub src: DeviceId,
    pub dst: Option<DeviceId>,
}

/// Deterministic proof-of-work race given each candidate's solve time.
///
/// A candidate completes once its solution has made the round trip to every
/// other candidate (send, verify, reply). The earliest completion wins (ties
/// to the smallest id) and declares itself to all candidates and
/// participants; everyone else halts on receipt. Solutions found after a
/// node's declaration receipt are suppressed.
pub fn run_pow_race<F: Fn(DeviceId, DeviceId) -> f64>(
    candidates: &[DeviceId],
    participants: &[DeviceId],
    solve_time: &dyn Fn(DeviceId) -> f64,
    link_latency: F,
    verify_cost_ms: f64,
) -> Result<(SelectionOutcome, Vec<PowEvent>)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }

    let completion = |c: DeviceId| -> f64 {
        let solve = solve_time(c);
        let verification: f64 = candidates
            .iter()
            .filter(|&&v| v != c)
            .map(|&v| link_latency(c, v) + verify_cost_ms + link_latency(v, c))
            .fold(0.0, f64::max);
        solve + verification
    };

    let (winner, winner_done) = candidates
        .iter()
        .map(|&c| (c, completion(c)))
        .min_by(|a, b| (a.1, a.0).partial_cmp(&(b.1, b.0)).unwrap())
        .unwrap();

    let mut recipients: Vec<DeviceId> = candidates
        .iter()
        .chain(participants.iter())
        .copied()
        .filter(|&d| d != winner)
        .collect();
    recipients.sort_unstable();
    recipients.dedup();

    let mut events = Vec::new();
    let mut messages: u64 = 0;
    let winner_solve = solve_time(winner);
    events.push(PowEvent {
        kind: PowEventKind::Solved,
        time_ms: winner_solve,
        src: winner,
        dst: None,
    });
    for &v in candidates.iter().filter(|&&v| v != winner) {
        events.push(PowEvent {
            kind: PowEventKind::SolutionSent,
            time_ms: winner_solve,
            src: winner,
            dst: Some(v),
        });
        events.push(PowEvent {
            kind: PowEventKind::Verified,
            time_ms: winner_solve + link_latency(winner, v) + verify_cost_ms,
            src: v,
            dst: Some(winner),
        });
        messages += 2; // solution out, verified back
    }
    events.push(PowEvent {
        kind: PowEventKind::Declared,
        time_ms: winner_done,
        src: winner,
        dst: None,
    });

    // Declaration receipt halts every other node.
    let mut halt_at = std::collections::HashMap::new();
    let mut elapsed = winner_done;
    for &r in &recipients {
        let at = winner_done + link_latency(winner, r);
        halt_at.insert(r, at);
        elapsed = elapsed.max(at);
        messages += 1;
    }

    // Losing candidates that solved before their halt still sent solutions.
    for &c in candidates.iter().filter(|&&c| c != winner) {
        let solve = solve_time(c);
        let receipt = halt_at[&c];
        if solve < receipt {
            events.push(PowEvent {
                kind: PowEventKind::Solved,
                time_ms: solve,
                src: c,
                dst: None,
            });
            for &v in candidates.iter().filter(|&&v| v != c) {
                events.push(PowEvent {
                    kind: PowEventKind::SolutionSent,
                    time_ms: solve,
                    src: c,
                    dst: Some(v),
                });
                messages += 1;
                // Verifiers still running when the solution lands reply.
                let arrival = solve + link_latency(c, v);
                let verifier_halt = halt_at.get(&v).copied().unwrap_or(winner_done);
                if v == winner || arrival < verifier_halt {
                    events.push(PowEvent {
                        kind: PowEventKind::Verified,
                        time_ms: arrival + verify_cost_ms,
                        src: v,
                        dst: Some(c),
                    });
                    messages += 1;
                }
            }
        }
    }

    for (&node, &at) in &halt_at {
        events.push(PowEvent {
            kind: PowEventKind::Halted,
            time_ms: at,
            src: node,
            dst: None,
        });
    }

    events.sort_by(|a, b| {
        a.time_ms
            .partial_cmp(&b.time_ms)
            .unwrap()
            .then(a.src.cmp(&b.src))
    });

    Ok((
        SelectionOutcome {
            master: winner,
            selection_elapsed_ms: elapsed,
            messages,
        },
        events,
    ))
}

/// Proof-of-work election with stochastic solve times drawn from the device
/// model (`pow` stream, keyed per candidate).
pub fn run_pow_election<F: Fn(DeviceId, DeviceId) -> f64>(
    candidates: &[DeviceId],
    participants: &[DeviceId],
    states: &[DeviceState],
    catalog: &[DeviceType],
    difficulty: u32,
    link_latency: F,
    stream: &RngStream,
) -> Result<(SelectionOutcome, Vec<PowEvent>)> {
    let solve_times: std::collections::HashMap<DeviceId, f64> = candidates
        .iter()
        .map(|&c| {
            let st = &states[c];
            let mut s = stream.keyed(&[c as u64]);
            let t = pow_solve_time(&catalog[st.type_index], st.occupancy, difficulty, &mut s);
            (c, t)
        })
        .collect();
    run_pow_race(
        candidates,
        participants,
        &|c| solve_times[&c],
        link_latency,
        VERIFY_COST_MS,
    )
}

/// Format an event trace as CSV (`election_id,kind,time_ms,src,dst`).
pub fn event_trace_csv(election_id: u64, events: &[PowEvent]) -> String {
    let mut out = String::from("election_id,kind,time_ms,src,dst\n");
    for e in events {
        let dst = e.dst.map(|d| d.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{election_id},{},{:.6},{},{dst}\n",
            e.kind.name(),
            e.time_ms,
            e.src
        ));
    }
    out
}
