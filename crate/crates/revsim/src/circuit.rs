use std::collections::BTreeSet;

use crate::{Ctrl, GateCounts, GateEvent, GateSink, Note, Tally, Wire};

/// Ordered list of wires, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QRegister {
    wires: Vec<Wire>,
}

impl QRegister {
    /// Register over the given wires; duplicates are rejected.
    pub fn new(wires: Vec<Wire>) -> Self {
        let unique: BTreeSet<_> = wires.iter().collect();
        assert_eq!(unique.len(), wires.len(), "duplicate wire in register");
        Self { wires }
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    /// Wire holding bit `i`.
    pub fn bit(&self, i: usize) -> Wire {
        self.wires[i]
    }

    /// Most significant wire.
    pub fn msb(&self) -> Wire {
        *self.wires.last().expect("empty register")
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn iter(&self) -> impl Iterator<Item = Wire> + '_ {
        self.wires.iter().copied()
    }

    /// Sub-register over bit positions `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> QRegister {
        QRegister { wires: self.wires[range].to_vec() }
    }

    /// `self` followed by `hi` as more significant bits.
    pub fn concat(&self, hi: &QRegister) -> QRegister {
        let mut wires = self.wires.clone();
        wires.extend_from_slice(&hi.wires);
        QRegister::new(wires)
    }

    /// `self` with `w` appended as the new most significant bit.
    pub fn with_msb(&self, w: Wire) -> QRegister {
        let mut wires = self.wires.clone();
        wires.push(w);
        QRegister::new(wires)
    }

    /// `self` with `w` inserted as the new least significant bit.
    pub fn with_lsb(&self, w: Wire) -> QRegister {
        let mut wires = vec![w];
        wires.extend_from_slice(&self.wires);
        QRegister::new(wires)
    }
}

impl From<Vec<Wire>> for QRegister {
    fn from(wires: Vec<Wire>) -> Self {
        QRegister::new(wires)
    }
}

/// A recorded section of a stream, replayable in reverse.
#[derive(Debug, Clone)]
pub struct Tape {
    body: TapeBody,
    net_alloc: Vec<Wire>,
    net_freed: Vec<Wire>,
}

#[derive(Debug, Clone)]
enum TapeBody {
    Events(Vec<GateEvent>),
    Summary(Tally),
}

impl Tape {
    /// Wires allocated by the section and still live at its end.
    pub fn net_alloc(&self) -> &[Wire] {
        &self.net_alloc
    }

    /// Wires live before the section and released by it.
    pub fn net_freed(&self) -> &[Wire] {
        &self.net_freed
    }

    /// Recorded events, when the sink keeps them.
    pub fn events(&self) -> Option<&[GateEvent]> {
        match &self.body {
            TapeBody::Events(e) => Some(e),
            TapeBody::Summary(_) => None,
        }
    }

    /// Summary tally, when the sink summarizes.
    pub fn tally(&self) -> Option<&Tally> {
        match &self.body {
            TapeBody::Summary(t) => Some(t),
            TapeBody::Events(_) => None,
        }
    }
}

#[derive(Debug, Default)]
struct Frame {
    events: Vec<GateEvent>,
    allocated: BTreeSet<Wire>,
    freed: BTreeSet<Wire>,
}

/// Circuit builder: owns wire allocation and forwards events to a sink.
///
/// Released wires are recycled smallest-first, so the allocation pattern is
/// a deterministic function of the builder calls and independent of the sink.
#[derive(Debug)]
pub struct Circuit<S: GateSink> {
    sink: S,
    free: BTreeSet<Wire>,
    next: u32,
    frames: Vec<Frame>,
    capturing: usize,
}

impl<S: GateSink> Circuit<S> {
    pub fn new(sink: S) -> Self {
        Self { sink, free: BTreeSet::new(), next: 0, frames: Vec::new(), capturing: 0 }
    }

    pub fn sink(&self) -> &S {
        &self.sink
    }

    pub fn sink_mut(&mut self) -> &mut S {
        &mut self.sink
    }

    pub fn into_sink(self) -> S {
        assert!(self.frames.is_empty(), "circuit dropped while recording");
        self.sink
    }

    fn keeps_events(&self) -> bool {
        self.capturing > 0 || self.sink.keeps_events()
    }

    fn push(&mut self, ev: GateEvent) {
        if self.capturing == 0 {
            self.sink.emit(&ev);
        }
        let keep = self.keeps_events();
        if let Some(frame) = self.frames.last_mut() {
            match &ev {
                GateEvent::Alloc(w) => {
                    if !frame.freed.remove(w) {
                        frame.allocated.insert(*w);
                    }
                }
                GateEvent::Free(w)
                    if !frame.allocated.remove(w) => {
                        frame.freed.insert(*w);
                    }
                _ => {}
            }
            if keep {
                frame.events.push(ev);
            }
        }
    }

    fn take_wire(&mut self) -> Wire {
        match self.free.pop_first() {
            Some(w) => w,
            None => {
                let w = Wire(self.next);
                self.next += 1;
                w
            }
        }
    }

    fn claim(&mut self, w: Wire) {
        if !self.free.remove(&w) {
            assert!(w.0 >= self.next, "wire {w} is already live");
            for i in self.next..w.0 {
                self.free.insert(Wire(i));
            }
            self.next = w.0 + 1;
        }
    }

    /// Allocates one zeroed wire.
    pub fn alloc(&mut self) -> Wire {
        let w = self.take_wire();
        self.push(GateEvent::Alloc(w));
        w
    }

    /// Allocates a specific wire, which must not be live.
    pub fn alloc_specific(&mut self, w: Wire) {
        self.claim(w);
        self.push(GateEvent::Alloc(w));
    }

    /// Allocates a zeroed register of `n` wires.
    pub fn alloc_reg(&mut self, n: usize) -> QRegister {
        QRegister::new((0..n).map(|_| self.alloc()).collect())
    }

    /// Releases a wire that must hold zero.
    pub fn free(&mut self, w: Wire) {
        self.push(GateEvent::Free(w));
        assert!(self.free.insert(w), "wire {w} released twice");
    }

    /// Releases every wire of a register, most significant first.
    pub fn free_reg(&mut self, reg: &QRegister) {
        for w in reg.wires().iter().rev() {
            self.free(*w);
        }
    }

    /// Allocates a wire holding classical input bit `index`.
    pub fn input(&mut self, index: u32) -> Wire {
        let w = self.take_wire();
        self.push(GateEvent::Input { wire: w, index });
        w
    }

    /// Measures and releases a wire as output bit `index`.
    pub fn measure(&mut self, w: Wire, index: u32) {
        self.push(GateEvent::Measure { wire: w, index });
        assert!(self.free.insert(w), "wire {w} released twice");
    }

    pub fn x(&mut self, w: Wire) {
        self.push(GateEvent::X(w));
    }

    pub fn cnot(&mut self, control: Wire, target: Wire) {
        self.push(GateEvent::Cnot { control, target });
    }

    /// Single-control multi-target NOT; an empty target list emits nothing
    /// and a single target emits a plain CNOT.
    pub fn multi_cnot(&mut self, control: Wire, targets: &[Wire]) {
        match targets {
            [] => {}
            [t] => self.cnot(control, *t),
            _ => self.push(GateEvent::MultiCnot { control, targets: targets.into() }),
        }
    }

    pub fn toffoli(&mut self, c1: impl Into<Ctrl>, c2: impl Into<Ctrl>, target: Wire) {
        self.push(GateEvent::Toffoli { c1: c1.into(), c2: c2.into(), target });
    }

    pub fn cswap(&mut self, control: Wire, a: Wire, b: Wire) {
        self.push(GateEvent::CSwap { control, a, b });
    }

    pub fn note(&mut self, note: Note) {
        self.push(GateEvent::ClassicalNote(note));
    }

    /// Forwards a precomputed tally to the sink (see [`GateSink::charge`]).
    pub fn charge(&mut self, fwd: &GateCounts, rev: &GateCounts) {
        assert_eq!(self.capturing, 0, "charges cannot be inverted by capture");
        self.sink.charge(fwd, rev);
    }

    /// Runs `f` while recording its emitted section.
    pub fn record<R>(&mut self, f: impl FnOnce(&mut Self) -> R) -> (R, Tape) {
        self.record_frame(f, false)
    }

    fn record_frame<R>(&mut self, f: impl FnOnce(&mut Self) -> R, detached: bool) -> (R, Tape) {
        let summarize = self.capturing == 0 && !self.sink.keeps_events();
        self.frames.push(Frame::default());
        if summarize {
            self.sink.begin_frame();
        }
        let out = f(self);
        let tally = if summarize { self.sink.end_frame() } else { None };
        let frame = self.frames.pop().expect("frame stack underflow");
        if let Some(parent) = self.frames.last_mut().filter(|_| !detached) {
            for w in &frame.allocated {
                if !parent.freed.remove(w) {
                    parent.allocated.insert(*w);
                }
            }
            for w in &frame.freed {
                if !parent.allocated.remove(w) {
                    parent.freed.insert(*w);
                }
            }
            parent.events.extend(frame.events.iter().cloned());
        }
        let body = match tally {
            Some(t) => TapeBody::Summary(t),
            None => TapeBody::Events(frame.events),
        };
        let tape = Tape {
            body,
            net_alloc: frame.allocated.into_iter().collect(),
            net_freed: frame.freed.into_iter().collect(),
        };
        (out, tape)
    }

    /// Emits the reverse of a recorded section: wires it allocated are
    /// released and wires it released are allocated again.
    pub fn replay_inverse(&mut self, tape: &Tape) {
        match &tape.body {
            TapeBody::Events(events) => {
                for ev in events.iter().rev() {
                    let inv = ev.inverse();
                    match inv {
                        GateEvent::Alloc(w) => {
                            self.claim(w);
                            self.push(inv);
                        }
                        GateEvent::Free(w) => {
                            self.push(inv);
                            assert!(self.free.insert(w), "wire {w} released twice");
                        }
                        other => self.push(other),
                    }
                }
            }
            TapeBody::Summary(tally) => {
                assert_eq!(self.capturing, 0, "summary tapes cannot be replayed inside a capture");
                self.sink.replay_tally_inverse(tally);
                for &w in &tape.net_alloc {
                    assert!(self.free.insert(w), "wire {w} released twice");
                }
                for &w in &tape.net_freed {
                    self.claim(w);
                }
                if let Some(frame) = self.frames.last_mut() {
                    for w in &tape.net_alloc {
                        if !frame.allocated.remove(w) {
                            frame.freed.insert(*w);
                        }
                    }
                    for w in &tape.net_freed {
                        if !frame.freed.remove(w) {
                            frame.allocated.insert(*w);
                        }
                    }
                }
            }
        }
    }

    /// Emits the inverse of the section `f` would emit, without emitting the
    /// section itself. The allocator ends in the state the inverse leaves it.
    pub fn inverse_of<R>(&mut self, f: impl FnOnce(&mut Self) -> R) -> R {
        self.capturing += 1;
        let (out, tape) = self.record_frame(f, true);
        self.capturing -= 1;
        self.replay_inverse(&tape);
        out
    }
}
