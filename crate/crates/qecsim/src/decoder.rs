//! Minimum-weight matching of detection events.
//!
//! Defects are matched pairwise or to one of the two spatial boundaries.
//! Every edge has unit weight: a step in space, a step in time, or the
//! diagonal step `(j, t) → (j + 1, t + 1)` left by a data flip between the
//! two CNOT rounds, which stabilizer `j` sees one round before `j + 1`. Up to
//! [`EXACT_MATCHING_LIMIT`] defects the optimum is found by dynamic
//! programming over subsets; above it a greedy nearest-first matching is
//! used.

use crate::SyndromeHistory;

/// Largest defect count matched exactly.
pub const EXACT_MATCHING_LIMIT: usize = 12;

/// A change of a stabilizer outcome between two consecutive rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Defect {
    pub stabilizer: usize,
    pub round: usize,
}

/// Detection events, in round-major order; round 0 is compared with the
/// all-`+1` initial state.
pub fn detection_events(history: &SyndromeHistory) -> Vec<Defect> {
    let mut out = Vec::new();
    for t in 0..history.rounds() {
        for j in 0..history.stabilizers() {
            let prev = t > 0 && history.get(j, t - 1);
            if history.get(j, t) != prev {
                out.push(Defect { stabilizer: j, round: t });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Match {
    Boundary(usize, Side),
    Pair(usize, usize),
}

/// Shortest path between two defects in the unit-weight space-time graph.
pub fn pair_weight(a: Defect, b: Defect) -> usize {
    let ds = b.stabilizer as i64 - a.stabilizer as i64;
    let dt = b.round as i64 - a.round as i64;
    if ds * dt > 0 {
        ds.abs().max(dt.abs()) as usize
    } else {
        (ds.abs() + dt.abs()) as usize
    }
}

fn boundary(d: usize, a: Defect) -> (usize, Side) {
    let left = a.stabilizer + 1;
    let right = d - 1 - a.stabilizer;
    if left <= right {
        (left, Side::Left)
    } else {
        (right, Side::Right)
    }
}

fn exact(d: usize, defects: &[Defect]) -> Vec<Match> {
    let n = defects.len();
    let full = (1usize << n) - 1;
    let mut cost = vec![usize::MAX; 1 << n];
    let mut choice = vec![Match::Pair(0, 0); 1 << n];
    cost[0] = 0;
    for mask in 1..=full {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let (bw, side) = boundary(d, defects[i]);
        let mut best = (cost[rest] + bw, Match::Boundary(i, side));
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            let c = cost[rest & !(1 << j)] + pair_weight(defects[i], defects[j]);
            if c < best.0 {
                best = (c, Match::Pair(i, j));
            }
        }
        cost[mask] = best.0;
        choice[mask] = best.1;
    }
    let mut out = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let m = choice[mask];
        mask &= match m {
            Match::Boundary(i, _) => !(1 << i),
            Match::Pair(i, j) => !((1 << i) | (1 << j)),
        };
        out.push(m);
    }
    out
}

fn greedy(d: usize, defects: &[Defect]) -> Vec<Match> {
    let mut open: Vec<usize> = (0..defects.len()).collect();
    let mut out = Vec::new();
    while !open.is_empty() {
        let mut best: Option<(usize, Match)> = None;
        for (a, &i) in open.iter().enumerate() {
            let (bw, side) = boundary(d, defects[i]);
            if best.is_none_or(|b| bw < b.0) {
                best = Some((bw, Match::Boundary(i, side)));
            }
            for &j in &open[a + 1..] {
                let w = pair_weight(defects[i], defects[j]);
                if best.is_none_or(|b| w < b.0) {
                    best = Some((w, Match::Pair(i, j)));
                }
            }
        }
        let (_, m) = best.expect("open set is non-empty");
        match m {
            Match::Boundary(i, _) => open.retain(|&k| k != i),
            Match::Pair(i, j) => open.retain(|&k| k != i && k != j),
        }
        out.push(m);
    }
    out
}

/// Data-qubit phase-flip correction inferred from `history`.
pub fn decode(history: &SyndromeHistory) -> Vec<bool> {
    let d = history.distance();
    let defects = detection_events(history);
    let matches = if defects.len() <= EXACT_MATCHING_LIMIT { exact(d, &defects) } else { greedy(d, &defects) };
    let mut correction = vec![false; d];
    let mut flip = |range: std::ops::Range<usize>| {
        for q in range {
            correction[q] ^= true;
        }
    };
    for m in matches {
        match m {
            Match::Boundary(i, Side::Left) => flip(0..defects[i].stabilizer + 1),
            Match::Boundary(i, Side::Right) => flip(defects[i].stabilizer + 1..d),
            Match::Pair(i, j) => {
                let (a, b) = (defects[i].stabilizer, defects[j].stabilizer);
                flip(a.min(b) + 1..a.max(b) + 1);
            }
        }
    }
    correction
}
