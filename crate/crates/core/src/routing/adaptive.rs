//! Adaptive routing over ring circulants.
//!
//! A route of signed displacement `T` (with `T ≡ S mod n`) costs at least
//! `min(⌊T/s2⌋ + T mod s2, ⌊T/s2⌋ + 1 + s2 − T mod s2)` hops: either
//! undershoot with long chords and finish with unit steps, or overshoot by one
//! chord and walk back. The router evaluates this for the forward residual
//! and the backward residual, each unwrapped up to `max_cycles` extra laps of
//! the ring, and takes the first step of the cheapest candidate.

use serde::Serialize;

use super::config::{AdaptiveMode, LeftSeed, RouterConfig};
use crate::error::{Error, Result};
use crate::topology::NodeId;

/// Best candidate of each direction, as computed by `Step_Cycles`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub best_right: usize,
    pub step_right: i64,
    pub best_left: usize,
    pub step_left: i64,
}

impl CandidateSet {
    /// Left wins ties.
    pub fn step(&self) -> i64 {
        if self.best_right < self.best_left {
            self.step_right
        } else {
            self.step_left
        }
    }

    pub fn best(&self) -> usize {
        self.best_right.min(self.best_left)
    }
}

/// `(undershoot, overshoot)` hop counts for displacement `t`.
pub(crate) fn route_lengths(t: usize, s2: usize) -> (usize, usize) {
    let (q, r) = (t / s2, t % s2);
    (q + r, q + 1 + s2 - r)
}

/// Scans one direction. Only the unwrapped undershoot with a nonzero
/// remainder starts with a unit step; every other candidate starts with a
/// chord. Later candidates must be strictly shorter to replace earlier ones.
fn scan(seed: usize, cfg: &RouterConfig, max_cycles: usize) -> (usize, i64) {
    let (s1, s2) = (cfg.s1() as i64, cfg.s2());
    let (under, over) = route_lengths(seed, s2);
    let (mut best, mut step) = if seed.is_multiple_of(s2) {
        (under, s2 as i64)
    } else if under < over {
        (under, s1)
    } else {
        (over, s2 as i64)
    };
    for m in 1..=max_cycles {
        let (under, over) = route_lengths(seed + m * cfg.n(), s2);
        for len in [under, over] {
            if len < best {
                best = len;
                step = s2 as i64;
            }
        }
    }
    (best, step)
}

/// Candidate evaluation for `start < end`.
pub fn step_candidates(start: NodeId, end: NodeId, cfg: &RouterConfig, mode: &AdaptiveMode) -> Result<CandidateSet> {
    cfg.check_node(start)?;
    cfg.check_node(end)?;
    if start >= end {
        return Err(Error::invalid(format!(
            "step_cycles needs start < end, got {start} -> {end}"
        )));
    }
    let s = end - start;
    let left_seed = match mode.seed() {
        LeftSeed::AsPrinted => s + cfg.n(),
        LeftSeed::Corrected => cfg.n() - s,
    };
    let (best_right, step_right) = scan(s, cfg, mode.max_cycles());
    let (best_left, step_left) = scan(left_seed, cfg, mode.max_cycles());
    Ok(CandidateSet { best_right, step_right, best_left, step_left: -step_left })
}

/// Signed step (one of ±s1, ±s2) that starts the best route from `start`
/// to `end`, for `start < end`.
pub fn step_cycles(start: NodeId, end: NodeId, cfg: &RouterConfig, mode: &AdaptiveMode) -> Result<i64> {
    step_candidates(start, end, cfg, mode).map(|c| c.step())
}

/// One hop of adaptive routing. The pair is ordered so the candidate search
/// always sees the smaller label first; the step is mirrored when it is not.
pub fn adaptive_step(current: NodeId, dest: NodeId, cfg: &RouterConfig, mode: &AdaptiveMode) -> NodeId {
    let delta = match current.cmp(&dest) {
        std::cmp::Ordering::Equal => return current,
        std::cmp::Ordering::Greater => -step_cycles(dest, current, cfg, mode).expect("ordered pair"),
        std::cmp::Ordering::Less => step_cycles(current, dest, cfg, mode).expect("ordered pair"),
    };
    cfg.shift(current, delta)
}
