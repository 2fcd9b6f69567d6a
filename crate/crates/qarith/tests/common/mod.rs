#![allow(dead_code)]

use numtheory::ModulusContext;
use revsim::{Circuit, QRegister, Simulator};

pub type Sim = Circuit<Simulator>;

pub fn sim() -> Sim {
    Circuit::new(Simulator::new())
}

pub fn ctx(p: u64) -> ModulusContext {
    ModulusContext::from_u64(p).unwrap()
}

pub fn reg(c: &mut Sim, n: usize, value: u64) -> QRegister {
    let r = c.alloc_reg(n);
    c.sink_mut().write_u64(&r, value);
    r
}

pub fn read(c: &Sim, r: &QRegister) -> u64 {
    c.sink().read_u64(r)
}

/// Asserts the simulation raised no error and exactly `live` wires remain.
pub fn assert_clean(c: &Sim, live: usize) {
    c.sink().finish().unwrap();
    assert_eq!(c.sink().live_count(), live, "residual ancillas");
}
