//! Multiple-controlled NOT built from a ladder of Toffoli gates.

use revsim::{Circuit, Ctrl, GateSink, Wire};

use crate::{QarithError, Result};

/// Flips `target` iff every control matches its polarity.
///
/// With `k >= 3` controls the ladder uses `k - 1` ancillas, `2(k - 1)`
/// Toffoli gates and one CNOT onto the target.
pub(crate) fn mcx<S: GateSink>(c: &mut Circuit<S>, controls: &[Ctrl], target: Wire) {
    match controls.len() {
        0 => c.x(target),
        1 => {
            let ctl = controls[0];
            if !ctl.positive {
                c.x(ctl.wire);
            }
            c.cnot(ctl.wire, target);
            if !ctl.positive {
                c.x(ctl.wire);
            }
        }
        2 => c.toffoli(controls[0], controls[1], target),
        k => {
            let mut ladder = Vec::with_capacity(k - 1);
            let first = c.alloc();
            c.toffoli(controls[0], controls[1], first);
            ladder.push(first);
            for &ctl in &controls[2..] {
                let w = c.alloc();
                c.toffoli(*ladder.last().expect("nonempty ladder"), ctl, w);
                ladder.push(w);
            }
            c.cnot(*ladder.last().expect("nonempty ladder"), target);
            for (i, &ctl) in controls[2..].iter().enumerate().rev() {
                let w = ladder[i + 1];
                c.toffoli(ladder[i], ctl, w);
                c.free(w);
            }
            c.toffoli(controls[0], controls[1], first);
            c.free(first);
        }
    }
}

/// Public entry point: `k` controls with per-control polarity and one target.
pub fn build_multi_ctrl_not<S: GateSink>(c: &mut Circuit<S>, controls: &[Ctrl], target: Wire) -> Result<()> {
    if controls.iter().any(|ctl| ctl.wire == target) {
        return Err(QarithError::Width("target overlaps a control".into()));
    }
    mcx(c, controls, target);
    Ok(())
}
