use std::ops::{Add, AddAssign};

use crate::GateEvent;

/// Gate tallies of a stream.
///
/// `logical_depth` counts sequential logical slots: one per CNOT-type
/// operation, one per Toffoli, one per preparation and one per measurement.
/// X gates and releases are free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GateCounts {
    pub toffoli: u64,
    /// CNOT pairs; a multi-target CNOT with `k` targets contributes `k`.
    pub cnot_pairs: u64,
    /// CNOT-type operations; every CNOT or multi-target CNOT contributes one.
    pub multi_cnot_ops: u64,
    pub x: u64,
    pub cswap: u64,
    /// Ancilla preparations (allocations and inputs).
    pub preps: u64,
    pub measurements: u64,
    /// Peak number of simultaneously live wires.
    pub alloc_high_water: u64,
    pub logical_depth: u64,
}

impl GateCounts {
    /// Tally of a single event, ignoring liveness.
    pub fn of_event(ev: &GateEvent) -> GateCounts {
        let mut c = GateCounts::default();
        match ev {
            GateEvent::X(_) => c.x = 1,
            GateEvent::Cnot { .. } => {
                c.multi_cnot_ops = 1;
                c.cnot_pairs = 1;
            }
            GateEvent::MultiCnot { targets, .. } => {
                c.multi_cnot_ops = 1;
                c.cnot_pairs = targets.len() as u64;
            }
            GateEvent::Toffoli { .. } => c.toffoli = 1,
            GateEvent::CSwap { .. } => {
                c.cswap = 1;
                c.toffoli = 1;
                c.cnot_pairs = 2;
                c.multi_cnot_ops = 2;
            }
            GateEvent::Alloc(_) | GateEvent::Input { .. } => c.preps = 1,
            GateEvent::Measure { .. } => c.measurements = 1,
            GateEvent::Free(_) | GateEvent::ClassicalNote(_) => {}
        }
        c.logical_depth = c.multi_cnot_ops + c.toffoli + c.preps + c.measurements;
        c
    }

    /// Every additive field multiplied by `k`; the high-water mark is kept.
    pub fn scaled(&self, k: u64) -> GateCounts {
        GateCounts {
            toffoli: self.toffoli * k,
            cnot_pairs: self.cnot_pairs * k,
            multi_cnot_ops: self.multi_cnot_ops * k,
            x: self.x * k,
            cswap: self.cswap * k,
            preps: self.preps * k,
            measurements: self.measurements * k,
            alloc_high_water: self.alloc_high_water,
            logical_depth: self.logical_depth * k,
        }
    }
}

/// Sums additive fields; the high-water mark becomes the maximum of both.
impl AddAssign for GateCounts {
    fn add_assign(&mut self, o: GateCounts) {
        self.toffoli += o.toffoli;
        self.cnot_pairs += o.cnot_pairs;
        self.multi_cnot_ops += o.multi_cnot_ops;
        self.x += o.x;
        self.cswap += o.cswap;
        self.preps += o.preps;
        self.measurements += o.measurements;
        self.alloc_high_water = self.alloc_high_water.max(o.alloc_high_water);
        self.logical_depth += o.logical_depth;
    }
}

impl Add for GateCounts {
    type Output = GateCounts;
    fn add(mut self, o: GateCounts) -> GateCounts {
        self += o;
        self
    }
}

/// Closed-form tally of a unary-iteration table lookup over `address_width`
/// bits whose leaves contribute `leaf_ops` CNOT-type operations and
/// `leaf_pairs` CNOT pairs in total.
pub fn lookup_counts(address_width: u32, leaf_ops: u64, leaf_pairs: u64) -> GateCounts {
    let mut c = GateCounts { multi_cnot_ops: leaf_ops, cnot_pairs: leaf_pairs, ..Default::default() };
    if address_width >= 1 {
        let internal = (1u64 << address_width) - 2;
        c.toffoli = 2 * internal;
        c.multi_cnot_ops += internal;
        c.cnot_pairs += internal;
        c.x = 2;
        c.preps = u64::from(address_width) - 1;
    }
    c.logical_depth = c.multi_cnot_ops + c.toffoli + c.preps;
    c
}

/// Cost charged for a measurement-based unload over `address_width` bits: the
/// value register is measured in the X basis at no gate cost and the phase
/// fixup is a lookup over `ceil(address_width / 2)` bits with one
/// single-target operation per leaf.
pub fn unload_fixup_counts(address_width: u32) -> GateCounts {
    let h = address_width.div_ceil(2);
    let leaves = 1u64 << h;
    lookup_counts(h, leaves, leaves)
}

/// Summary of a recorded stream section, sufficient to account for its
/// reversal without materializing events.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    /// Cost of the section as emitted.
    pub fwd: GateCounts,
    /// Cost of the reversed section.
    pub rev: GateCounts,
    /// Live wires when the section started.
    pub live_start: u64,
    /// Peak live wires during the section.
    pub peak: u64,
    /// Live wires when the section ended.
    pub live_end: u64,
}
