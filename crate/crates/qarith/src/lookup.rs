//! Table lookup by unary iteration over the address register, most
//! significant address bit first.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use revsim::{lookup_counts, Circuit, GateCounts, Ctrl, GateSink, Note, QRegister, Wire};

use crate::{bit, check_width, QarithError, Result};

/// Classical table addressed by a quantum register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookupTable {
    address_width: usize,
    value_width: usize,
    entries: Vec<BigUint>,
}

impl LookupTable {
    /// Validates that there are `2^address_width` entries, each below
    /// `2^value_width`.
    pub fn new(address_width: usize, value_width: usize, entries: Vec<BigUint>) -> Result<Self> {
        if entries.len() != 1usize << address_width {
            return Err(QarithError::Width(format!(
                "table over {address_width} address bits needs {} entries, got {}",
                1usize << address_width,
                entries.len()
            )));
        }
        let bound = BigUint::one() << value_width;
        if let Some(e) = entries.iter().find(|e| **e >= bound) {
            return Err(QarithError::Domain(format!("entry {e} does not fit in {value_width} bits")));
        }
        Ok(Self { address_width, value_width, entries })
    }

    pub fn address_width(&self) -> usize {
        self.address_width
    }

    pub fn value_width(&self) -> usize {
        self.value_width
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// Number of nonzero entries and total number of set bits.
    pub fn leaf_weight(&self) -> (u64, u64) {
        let ops = self.entries.iter().filter(|e| !e.is_zero()).count() as u64;
        let pairs = self.entries.iter().map(|e| e.count_ones()).sum();
        (ops, pairs)
    }
}

/// Direction of a lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LookupMode {
    /// `|k>|0> -> |k>|T[k]>`.
    Load,
    /// `|k>|T[k]> -> |k>|0>`; counted as a measurement-based uncomputation.
    Unload,
}

impl LookupMode {
    fn cheap(self) -> bool {
        self == LookupMode::Unload
    }
}

struct Walk<'a> {
    table: &'a LookupTable,
    addr: &'a [Wire],
    target: &'a [Wire],
    scratch: Vec<Wire>,
}

impl Walk<'_> {
    fn leaf<S: GateSink>(&self, c: &mut Circuit<S>, ctrl: Option<Wire>, index: usize) {
        let value = &self.table.entries[index];
        let targets: Vec<Wire> = (0..self.target.len()).filter(|&i| bit(value, i)).map(|i| self.target[i]).collect();
        match ctrl {
            None => targets.iter().for_each(|&t| c.x(t)),
            Some(w) => c.multi_cnot(w, &targets),
        }
    }

    /// Visits address bits `level - 1 ..= 0` below a node whose control is
    /// `ctrl` and whose index prefix is `prefix`.
    fn node<S: GateSink>(&self, c: &mut Circuit<S>, ctrl: Wire, level: usize, prefix: usize) {
        if level == 0 {
            self.leaf(c, Some(ctrl), prefix);
            return;
        }
        let k = self.addr[level - 1];
        let a = self.scratch[level - 1];
        c.toffoli(ctrl, k, a);
        self.node(c, a, level - 1, prefix | (1 << (level - 1)));
        c.cnot(ctrl, a);
        self.node(c, a, level - 1, prefix);
        c.toffoli(ctrl, Ctrl::neg(k), a);
    }

    fn run<S: GateSink>(&self, c: &mut Circuit<S>) {
        let w = self.addr.len();
        if w == 0 {
            self.leaf(c, None, 0);
            return;
        }
        let top = self.addr[w - 1];
        self.node(c, top, w - 1, 1 << (w - 1));
        c.x(top);
        self.node(c, top, w - 1, 0);
        c.x(top);
    }
}

/// XORs `T[k]` into `target`, bracketed by lookup notes so that counting
/// sinks can price unloads by the measurement-based scheme.
pub fn build_lookup<S: GateSink>(
    c: &mut Circuit<S>,
    table: &LookupTable,
    addr: &QRegister,
    target: &QRegister,
    mode: LookupMode,
) -> Result<()> {
    check_width("lookup address", addr.len(), table.address_width)?;
    check_width("lookup target", target.len(), table.value_width)?;
    let w = table.address_width;
    let note_width = w as u32;
    c.note(Note::LookupBegin { address_width: note_width, cheap: mode.cheap() });
    let scratch: Vec<Wire> = (0..w.saturating_sub(1)).map(|_| c.alloc()).collect();
    let walk = Walk { table, addr: addr.wires(), target: target.wires(), scratch };
    walk.run(c);
    for &a in walk.scratch.iter().rev() {
        c.free(a);
    }
    c.note(Note::LookupEnd { address_width: note_width, cheap: mode.cheap() });
    Ok(())
}

/// Charges a lookup over `address_width` bits with the given leaf weight
/// without emitting its gates. The bracket notes and scratch wires are still
/// emitted, so liveness and the unload pricing match [`build_lookup`].
pub fn lookup_closed_form<S: GateSink>(
    c: &mut Circuit<S>,
    address_width: usize,
    leaf_ops: u64,
    leaf_pairs: u64,
    mode: LookupMode,
) {
    let w = address_width as u32;
    c.note(Note::LookupBegin { address_width: w, cheap: mode.cheap() });
    let scratch: Vec<Wire> = (0..address_width.saturating_sub(1)).map(|_| c.alloc()).collect();
    for &a in scratch.iter().rev() {
        c.free(a);
    }
    c.note(Note::LookupEnd { address_width: w, cheap: mode.cheap() });
    let full = lookup_counts(w, leaf_ops, leaf_pairs);
    let gates = GateCounts { preps: 0, logical_depth: full.logical_depth - full.preps, ..full };
    match mode {
        LookupMode::Load => c.charge(&gates, &GateCounts::default()),
        LookupMode::Unload => c.charge(&GateCounts::default(), &gates),
    }
}
