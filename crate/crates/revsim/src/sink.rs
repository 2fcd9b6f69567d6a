use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::counts::unload_fixup_counts;
use crate::{GateCounts, GateEvent, Note, QRegister, SimError, Tally, Wire};

/// Consumer of a gate stream.
pub trait GateSink {
    /// Processes one event.
    fn emit(&mut self, ev: &GateEvent);

    /// Whether recorded tapes must hold the full event list. Sinks returning
    /// false implement the summary methods below instead.
    fn keeps_events(&self) -> bool {
        true
    }

    /// Opens a summary frame.
    fn begin_frame(&mut self) {}

    /// Closes the innermost summary frame.
    fn end_frame(&mut self) -> Option<Tally> {
        None
    }

    /// Accounts for the reversal of a summarized section.
    fn replay_tally_inverse(&mut self, _tally: &Tally) {
        unreachable!("sink keeps events; tapes are replayed event by event")
    }

    /// Adds a precomputed tally in place of explicit events; `rev` is the cost
    /// of the same section reversed. Sinks without gate accounting ignore it.
    fn charge(&mut self, _fwd: &GateCounts, _rev: &GateCounts) {}
}

/// Exact computational-basis simulator.
///
/// The first error poisons the simulator: later events are ignored and the
/// error is reported by [`Simulator::finish`].
#[derive(Debug, Clone, Default)]
pub struct Simulator {
    bits: Vec<bool>,
    live: Vec<bool>,
    inputs: Vec<bool>,
    outputs: BTreeMap<u32, bool>,
    error: Option<SimError>,
}

impl Simulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Simulator whose [`GateEvent::Input`] events read from `inputs`.
    pub fn with_inputs(inputs: Vec<bool>) -> Self {
        Self { inputs, ..Self::default() }
    }

    fn ensure(&mut self, w: Wire) {
        if w.index() >= self.bits.len() {
            self.bits.resize(w.index() + 1, false);
            self.live.resize(w.index() + 1, false);
        }
    }

    fn is_live(&self, w: Wire) -> bool {
        self.live.get(w.index()).copied().unwrap_or(false)
    }

    /// Declares `w` live with the given value, outside of any stream.
    pub fn preset(&mut self, w: Wire, bit: bool) {
        self.ensure(w);
        self.live[w.index()] = true;
        self.bits[w.index()] = bit;
    }

    /// Overwrites the value of a live wire.
    pub fn poke(&mut self, w: Wire, bit: bool) {
        assert!(self.is_live(w), "poke on dead wire {w}");
        self.bits[w.index()] = bit;
    }

    /// Value of a live wire.
    pub fn peek(&self, w: Wire) -> bool {
        assert!(self.is_live(w), "peek on dead wire {w}");
        self.bits[w.index()]
    }

    /// Little-endian value of a register.
    pub fn read(&self, reg: &QRegister) -> BigUint {
        let mut v = BigUint::default();
        for (i, w) in reg.iter().enumerate() {
            if self.peek(w) {
                v.set_bit(i as u64, true);
            }
        }
        v
    }

    /// Writes `value` into a register of live wires; excess high bits are an error.
    pub fn write(&mut self, reg: &QRegister, value: &BigUint) {
        assert!(value.bits() as usize <= reg.len(), "value {value} does not fit {} wires", reg.len());
        for (i, w) in reg.iter().enumerate() {
            self.poke(w, value.bit(i as u64));
        }
    }

    /// Convenience for [`Simulator::write`] with machine integers.
    pub fn write_u64(&mut self, reg: &QRegister, value: u64) {
        self.write(reg, &BigUint::from(value));
    }

    /// Convenience for [`Simulator::read`] with machine integers.
    pub fn read_u64(&self, reg: &QRegister) -> u64 {
        let v = self.read(reg);
        v.to_u64_digits().first().copied().unwrap_or(0)
    }

    /// Output bits recorded by measurements, keyed by index.
    pub fn outputs(&self) -> &BTreeMap<u32, bool> {
        &self.outputs
    }

    /// Number of live wires.
    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    /// Assignment of every live wire.
    pub fn live_assignment(&self) -> BTreeMap<Wire, bool> {
        (0..self.bits.len())
            .filter(|&i| self.live[i])
            .map(|i| (Wire(i as u32), self.bits[i]))
            .collect()
    }

    /// First error encountered, if any.
    pub fn error(&self) -> Option<&SimError> {
        self.error.as_ref()
    }

    /// Reports the first error encountered.
    pub fn finish(&self) -> Result<(), SimError> {
        match &self.error {
            Some(e) => Err(e.clone()),
            None => Ok(()),
        }
    }

    fn check(&self, ev: &GateEvent) -> Result<(), SimError> {
        let wires = ev.wires();
        for (i, w) in wires.iter().enumerate() {
            if wires[..i].contains(w) {
                return Err(SimError::Aliased(*w));
            }
        }
        match ev {
            GateEvent::Alloc(w) | GateEvent::Input { wire: w, .. } => {
                if self.is_live(*w) {
                    return Err(SimError::DoubleAlloc(*w));
                }
            }
            _ => {
                for w in wires {
                    if !self.is_live(w) {
                        return Err(SimError::UseBeforeAlloc(w));
                    }
                }
            }
        }
        Ok(())
    }

    fn apply(&mut self, ev: &GateEvent) -> Result<(), SimError> {
        self.check(ev)?;
        let b = |s: &Self, w: Wire| s.bits[w.index()];
        match ev {
            GateEvent::X(w) => self.bits[w.index()] ^= true,
            GateEvent::Cnot { control, target } => {
                if b(self, *control) {
                    self.bits[target.index()] ^= true;
                }
            }
            GateEvent::MultiCnot { control, targets } => {
                if b(self, *control) {
                    for t in targets.iter() {
                        self.bits[t.index()] ^= true;
                    }
                }
            }
            GateEvent::Toffoli { c1, c2, target } => {
                if c1.fires(b(self, c1.wire)) && c2.fires(b(self, c2.wire)) {
                    self.bits[target.index()] ^= true;
                }
            }
            GateEvent::CSwap { control, a, b: bw } => {
                if b(self, *control) {
                    self.bits.swap(a.index(), bw.index());
                }
            }
            GateEvent::Alloc(w) => {
                self.ensure(*w);
                self.live[w.index()] = true;
                self.bits[w.index()] = false;
            }
            GateEvent::Free(w) => {
                if b(self, *w) {
                    return Err(SimError::DirtyFree(*w));
                }
                self.live[w.index()] = false;
            }
            GateEvent::Input { wire, index } => {
                let bit = *self.inputs.get(*index as usize).ok_or(SimError::BadIndex(*index))?;
                self.ensure(*wire);
                self.live[wire.index()] = true;
                self.bits[wire.index()] = bit;
            }
            GateEvent::Measure { wire, index } => {
                if self.outputs.insert(*index, b(self, *wire)).is_some() {
                    return Err(SimError::BadIndex(*index));
                }
                self.live[wire.index()] = false;
                self.bits[wire.index()] = false;
            }
            GateEvent::ClassicalNote(_) => {}
        }
        Ok(())
    }
}

impl GateSink for Simulator {
    fn emit(&mut self, ev: &GateEvent) {
        if self.error.is_some() {
            return;
        }
        if let Err(e) = self.apply(ev) {
            self.error = Some(e);
        }
    }
}

/// Sink collecting the stream into memory.
#[derive(Debug, Clone, Default)]
pub struct Recorder {
    pub events: Vec<GateEvent>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }
}

impl GateSink for Recorder {
    fn emit(&mut self, ev: &GateEvent) {
        self.events.push(ev.clone());
    }
}

#[derive(Debug, Clone, Default)]
struct Frame {
    fwd: GateCounts,
    rev: GateCounts,
    live_start: u64,
    peak: u64,
}

/// Streaming gate counter.
///
/// Gates inside a lookup bracket marked `cheap` are not tallied; the closing
/// note charges the measurement-based unload cost instead. Tapes recorded
/// against a counter are summaries, so reversing a section costs O(1).
#[derive(Debug, Clone, Default)]
pub struct Counter {
    counts: GateCounts,
    live: u64,
    peak: u64,
    bracket: Option<bool>,
    frames: Vec<Frame>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current tallies, with `alloc_high_water` set to the observed peak.
    pub fn counts(&self) -> GateCounts {
        GateCounts { alloc_high_water: self.peak, ..self.counts }
    }

    /// Wires currently live.
    pub fn live(&self) -> u64 {
        self.live
    }

    fn set_live(&mut self, live: u64) {
        self.live = live;
        self.peak = self.peak.max(live);
        for f in &mut self.frames {
            f.peak = f.peak.max(live);
        }
    }

    fn add(&mut self, fwd: &GateCounts, rev: &GateCounts) {
        let fwd = if self.bracket == Some(true) { GateCounts::default() } else { *fwd };
        let rev = if self.bracket == Some(false) { GateCounts::default() } else { *rev };
        self.counts += fwd;
        for f in &mut self.frames {
            f.fwd += fwd;
            f.rev += rev;
        }
    }
}

impl GateSink for Counter {
    fn emit(&mut self, ev: &GateEvent) {
        match ev {
            GateEvent::ClassicalNote(Note::LookupBegin { address_width, cheap }) => {
                assert!(self.bracket.is_none(), "nested lookup brackets");
                if !*cheap {
                    let fix = unload_fixup_counts(*address_width);
                    for f in &mut self.frames {
                        f.rev += fix;
                    }
                }
                self.bracket = Some(*cheap);
            }
            GateEvent::ClassicalNote(Note::LookupEnd { address_width, cheap }) => {
                assert_eq!(self.bracket, Some(*cheap), "unbalanced lookup bracket");
                self.bracket = None;
                if *cheap {
                    let fix = unload_fixup_counts(*address_width);
                    self.counts += fix;
                    for f in &mut self.frames {
                        f.fwd += fix;
                    }
                }
            }
            _ => {
                let fwd = GateCounts::of_event(ev);
                let rev = match ev {
                    GateEvent::Input { .. } | GateEvent::Measure { .. } => {
                        assert!(self.frames.is_empty(), "input/measure inside a recorded section");
                        GateCounts::default()
                    }
                    _ => GateCounts::of_event(&ev.inverse()),
                };
                self.add(&fwd, &rev);
                match ev {
                    GateEvent::Alloc(_) | GateEvent::Input { .. } => self.set_live(self.live + 1),
                    GateEvent::Free(_) | GateEvent::Measure { .. } => self.set_live(self.live - 1),
                    _ => {}
                }
            }
        }
    }

    fn keeps_events(&self) -> bool {
        false
    }

    fn begin_frame(&mut self) {
        assert!(self.bracket.is_none(), "recorded section starts inside a lookup");
        self.frames.push(Frame { live_start: self.live, peak: self.live, ..Frame::default() });
    }

    fn end_frame(&mut self) -> Option<Tally> {
        assert!(self.bracket.is_none(), "recorded section ends inside a lookup");
        let f = self.frames.pop().expect("end_frame without begin_frame");
        if let Some(parent) = self.frames.last_mut() {
            parent.peak = parent.peak.max(f.peak);
        }
        Some(Tally { fwd: f.fwd, rev: f.rev, live_start: f.live_start, peak: f.peak, live_end: self.live })
    }

    fn replay_tally_inverse(&mut self, t: &Tally) {
        assert!(self.bracket.is_none(), "reversal inside a lookup");
        self.counts += t.rev;
        for f in &mut self.frames {
            f.fwd += t.rev;
            f.rev += t.fwd;
        }
        let peak = self.live + t.peak - t.live_end;
        self.peak = self.peak.max(peak);
        for f in &mut self.frames {
            f.peak = f.peak.max(peak);
        }
        self.live = self.live + t.live_start - t.live_end;
    }

    fn charge(&mut self, fwd: &GateCounts, rev: &GateCounts) {
        self.add(fwd, rev);
    }
}
