use std::fmt;

/// Dense wire identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wire(pub u32);

impl Wire {
    /// Index usable for dense storage.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A control wire with its polarity; negative controls fire on zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ctrl {
    pub wire: Wire,
    pub positive: bool,
}

impl Ctrl {
    /// Control firing on one.
    pub fn pos(wire: Wire) -> Self {
        Self { wire, positive: true }
    }

    /// Control firing on zero.
    pub fn neg(wire: Wire) -> Self {
        Self { wire, positive: false }
    }

    /// Whether the control fires for the given bit.
    pub fn fires(self, bit: bool) -> bool {
        bit == self.positive
    }
}

impl From<Wire> for Ctrl {
    fn from(wire: Wire) -> Self {
        Ctrl::pos(wire)
    }
}

impl fmt::Display for Ctrl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { '+' } else { '-' }, self.wire)
    }
}

/// Classical annotations carried through the stream at zero gate cost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Note {
    /// Start of a table lookup; `cheap` marks a measurement-based unload.
    LookupBegin { address_width: u32, cheap: bool },
    /// End of the bracket opened by the matching [`Note::LookupBegin`].
    LookupEnd { address_width: u32, cheap: bool },
    /// Semiclassical Fourier transform over `bits` measured index qubits.
    SemiclassicalQft { bits: u32 },
    /// Free-form label.
    Label(String),
}

impl Note {
    /// The annotation seen when the stream is reversed.
    pub fn inverse(&self) -> Note {
        match *self {
            Note::LookupBegin { address_width, cheap } => Note::LookupEnd { address_width, cheap: !cheap },
            Note::LookupEnd { address_width, cheap } => Note::LookupBegin { address_width, cheap: !cheap },
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |cheap: bool| if cheap { "cheap" } else { "full" };
        match self {
            Note::LookupBegin { address_width, cheap } => write!(f, "lookup_begin {address_width} {}", kind(*cheap)),
            Note::LookupEnd { address_width, cheap } => write!(f, "lookup_end {address_width} {}", kind(*cheap)),
            Note::SemiclassicalQft { bits } => write!(f, "semiclassical_qft {bits}"),
            Note::Label(s) => write!(f, "label {s}"),
        }
    }
}

/// One element of a reversible-circuit stream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GateEvent {
    X(Wire),
    Cnot { control: Wire, target: Wire },
    /// One control driving several targets in a single logical operation.
    MultiCnot { control: Wire, targets: Box<[Wire]> },
    Toffoli { c1: Ctrl, c2: Ctrl, target: Wire },
    /// Fredkin gate: swaps `a` and `b` when `control` is one.
    CSwap { control: Wire, a: Wire, b: Wire },
    /// Brings a wire to life in state zero.
    Alloc(Wire),
    /// Retires a wire, asserting that it holds zero.
    Free(Wire),
    /// Brings a wire to life holding classical input bit `index`.
    Input { wire: Wire, index: u32 },
    /// Retires a wire, recording its value as output bit `index`.
    Measure { wire: Wire, index: u32 },
    ClassicalNote(Note),
}

impl GateEvent {
    /// The event undoing this one. Input and measurement have no inverse.
    pub fn inverse(&self) -> GateEvent {
        match self {
            GateEvent::Alloc(w) => GateEvent::Free(*w),
            GateEvent::Free(w) => GateEvent::Alloc(*w),
            GateEvent::ClassicalNote(n) => GateEvent::ClassicalNote(n.inverse()),
            GateEvent::Input { .. } | GateEvent::Measure { .. } => {
                panic!("input and measurement events are not invertible")
            }
            other => other.clone(),
        }
    }

    /// Wires touched by the event, in operand order.
    pub fn wires(&self) -> Vec<Wire> {
        match self {
            GateEvent::X(w) | GateEvent::Alloc(w) | GateEvent::Free(w) => vec![*w],
            GateEvent::Input { wire, .. } | GateEvent::Measure { wire, .. } => vec![*wire],
            GateEvent::Cnot { control, target } => vec![*control, *target],
            GateEvent::MultiCnot { control, targets } => {
                let mut v = vec![*control];
                v.extend(targets.iter().copied());
                v
            }
            GateEvent::Toffoli { c1, c2, target } => vec![c1.wire, c2.wire, *target],
            GateEvent::CSwap { control, a, b } => vec![*control, *a, *b],
            GateEvent::ClassicalNote(_) => vec![],
        }
    }
}

impl fmt::Display for GateEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateEvent::X(w) => write!(f, "x {w}"),
            GateEvent::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            GateEvent::MultiCnot { control, targets } => {
                write!(f, "mcnot {control} ->")?;
                for t in targets.iter() {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            GateEvent::Toffoli { c1, c2, target } => write!(f, "ccx {c1} {c2} {target}"),
            GateEvent::CSwap { control, a, b } => write!(f, "cswap {control} {a} {b}"),
            GateEvent::Alloc(w) => write!(f, "alloc {w}"),
            GateEvent::Free(w) => write!(f, "free {w}"),
            GateEvent::Input { wire, index } => write!(f, "input {wire} {index}"),
            GateEvent::Measure { wire, index } => write!(f, "measure {wire} {index}"),
            GateEvent::ClassicalNote(n) => write!(f, "note {n}"),
        }
    }
}
