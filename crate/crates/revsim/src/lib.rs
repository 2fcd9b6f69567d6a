//! Reversible classical circuits over the computational basis.
//!
//! Circuits are streams of [`GateEvent`]s consumed by a [`GateSink`]. Three
//! sinks are provided: the exact bit-level [`Simulator`], the streaming
//! [`Counter`] and the [`Recorder`]. Builders drive a [`Circuit`], which owns
//! wire allocation and supports recording a section of the stream as a
//! [`Tape`] that can later be replayed in reverse.

mod circuit;
mod counts;
mod gate;
mod sink;

pub use circuit::{Circuit, QRegister, Tape};
pub use counts::{lookup_counts, unload_fixup_counts, GateCounts, Tally};
pub use gate::{Ctrl, GateEvent, Note, Wire};
pub use sink::{Counter, GateSink, Recorder, Simulator};

use num_bigint::BigUint;
use std::collections::BTreeMap;

/// Errors detected while simulating a gate stream.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    /// A wire was used while not live.
    #[error("wire {0} used before allocation or after release")]
    UseBeforeAlloc(Wire),
    /// A wire was allocated while already live.
    #[error("wire {0} allocated twice")]
    DoubleAlloc(Wire),
    /// A released wire did not hold zero.
    #[error("wire {0} released while holding 1")]
    DirtyFree(Wire),
    /// The same wire appears twice in one gate.
    #[error("wire {0} appears twice in one gate")]
    Aliased(Wire),
    /// An input or output index is out of range or reused.
    #[error("classical index {0} invalid")]
    BadIndex(u32),
    /// A register read referenced a wire absent from the state.
    #[error("wire {0} missing from state")]
    MissingWire(Wire),
}

/// Runs `events` on the given initial assignment and returns the final
/// assignment of every live wire.
pub fn simulate<'a, I>(events: I, initial: &BTreeMap<Wire, bool>) -> Result<BTreeMap<Wire, bool>, SimError>
where
    I: IntoIterator<Item = &'a GateEvent>,
{
    let mut sim = Simulator::new();
    for (&w, &b) in initial {
        sim.preset(w, b);
    }
    for ev in events {
        sim.emit(ev);
    }
    sim.finish()?;
    Ok(sim.live_assignment())
}

/// Tallies a materialized event stream.
pub fn count<'a, I>(events: I) -> GateCounts
where
    I: IntoIterator<Item = &'a GateEvent>,
{
    let mut counter = Counter::new();
    for ev in events {
        counter.emit(ev);
    }
    counter.counts()
}

/// Reads `reg` little-endian from an assignment.
pub fn read_register(state: &BTreeMap<Wire, bool>, reg: &QRegister) -> Result<BigUint, SimError> {
    let mut value = BigUint::default();
    for (i, w) in reg.iter().enumerate() {
        match state.get(&w) {
            Some(true) => value.set_bit(i as u64, true),
            Some(false) => {}
            None => return Err(SimError::MissingWire(w)),
        }
    }
    Ok(value)
}

/// Line-oriented text rendering of a stream, one gate per line.
pub fn dump<'a, I>(events: I) -> String
where
    I: IntoIterator<Item = &'a GateEvent>,
{
    let mut out = String::new();
    for ev in events {
        out.push_str(&ev.to_string());
        out.push('\n');
    }
    out
}
