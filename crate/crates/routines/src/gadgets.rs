use msd_circuit::{Circuit, Macro, MagicKind, Op, Parity, QubitId, Role};
use msd_pauli::Gate;

use crate::build::B;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// Toffoli, then the `|101⟩` sign as CCZ and CZ.
    Left,
    /// Four `Y(±π/4)` rotations around three CNOTs.
    Right,
}

/// `Y(±π/4)` on `d`, consuming one `|H⟩`.
///
/// `V = H·S†` takes `|H⟩` to `T|+⟩` and `Y` to `Z`, which turns the
/// rotation into the usual phase teleportation; the minus sign uses
/// `H·S` on the data instead. A `Y` on the `|H⟩` reaches `d` as a `Y` and
/// never flips the measurement.
pub(crate) fn y_gadget(b: &mut B, d: QubitId, plus: bool) {
    let a = b.magic(MagicKind::H, Role::MagicInput);
    b.g(Gate::rot_z(a, -1));
    b.g(Gate::H(a));
    b.g(Gate::rot_z(d, if plus { -1 } else { 1 }));
    b.g(Gate::H(d));
    b.cnot(d, a);
    let m = b.mz(a);
    b.g(Gate::H(d));
    b.g(Gate::rot_z(d, if plus { 1 } else { -1 }));
    b.when(Parity::bit(m), Gate::rot_y(d, if plus { 1 } else { -1 }));
}

/// Right expansion acting on a target that already holds `Y(π/4)` applied
/// to its initial state, i.e. everything after the first rotation.
pub(crate) fn margolus_tail(b: &mut B, c1: QubitId, c2: QubitId, t: QubitId, gadgets: bool) {
    let rot = |b: &mut B, plus: bool| {
        if gadgets {
            y_gadget(b, t, plus);
        } else {
            b.op(Op::Macro(Macro::YQuarter { q: t, plus }));
        }
    };
    b.cnot(c2, t);
    rot(b, true);
    b.cnot(c1, t);
    rot(b, false);
    b.cnot(c2, t);
    rot(b, false);
}

/// Margolus-Toffoli on inputs `(control-1, control-2, target)`. Both
/// expansions equal Toffoli with an extra sign on `|c1=1, c2=0, t=1⟩`.
pub fn margolus(expansion: Expansion) -> Circuit {
    let mut b = B::new();
    let c1 = b.input(Role::Control1);
    let c2 = b.input(Role::Control2);
    let t = b.input(Role::Target);
    match expansion {
        Expansion::Left => {
            b.op(Op::Macro(Macro::Toffoli { c1, c2, target: t }));
            b.op(Op::Macro(Macro::Ccz(c1, c2, t)));
            b.g(Gate::Cz(c1, t));
        }
        Expansion::Right => {
            b.op(Op::Macro(Macro::YQuarter { q: t, plus: true }));
            margolus_tail(&mut b, c1, c2, t, false);
        }
    }
    b.finish(vec![c1, c2, t])
}

/// `Y(±π/4)` on one data input via one `|H⟩`.
pub fn indirect_y_rotation(plus: bool) -> Circuit {
    let mut b = B::new();
    let d = b.input(Role::Data);
    y_gadget(&mut b, d, plus);
    b.finish(vec![d])
}
