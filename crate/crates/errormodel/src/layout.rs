//! Physical-qubit accounting of the processor layout.
//!
//! Logical qubits are horizontal rows of `d` data and `d − 1` ancilla cat
//! qubits. Horizontal routing rows interleave them and two side buses give
//! all-to-all access. Each factory holds five rows at the factory distance:
//! three magic-state qubits, one GHZ ancilla row and one routing row.

/// Sizes entering the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct LayoutSpec {
    pub nb_log: u64,
    pub nb_factories: u64,
    /// Code distance of the computation.
    pub d: u64,
}

/// Itemized physical-qubit totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct LayoutBreakdown {
    /// Data and ancilla qubits of the logical rows.
    pub logical: u64,
    /// Number of horizontal routing rows.
    pub routing_lines: u64,
    /// Qubits in the horizontal routing rows.
    pub routing: u64,
    /// Qubits in both side buses.
    pub side_routing: u64,
    /// Qubits inside the factories.
    pub factories: u64,
    pub total: u64,
}

/// Rows per factory, counted in logical-row equivalents.
pub const ROWS_PER_FACTORY: u64 = 5;

fn row(d: u64) -> u64 {
    (2 * d).saturating_sub(1)
}

/// Physical qubits of a layout whose factories run at distance `d_f`.
pub fn layout_qubits(spec: LayoutSpec, d_f: u64) -> LayoutBreakdown {
    let LayoutSpec { nb_log, nb_factories, d } = spec;
    let logical = nb_log * row(d);
    let routing_lines = (nb_log + nb_factories).div_ceil(2) + 1;
    let routing = routing_lines * row(d);
    let side_routing = 2 * (3 * (nb_log + routing_lines + 4 * nb_factories) - 1);
    let factories = nb_factories * ROWS_PER_FACTORY * row(d_f);
    LayoutBreakdown {
        logical,
        routing_lines,
        routing,
        side_routing,
        factories,
        total: logical + routing + side_routing + factories,
    }
}

/// Logical qubits of the full circuit on an `n`-bit field with elliptic-curve
/// windows of width `w_e`.
pub fn logical_qubit_count(n: u64, w_e: u64) -> u64 {
    9 * n + w_e + 4
}
