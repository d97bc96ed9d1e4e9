use msd_circuit::{Circuit, MagicKind, Op, Parity, QubitId, Role};
use msd_pauli::Gate;

use crate::build::B;
use crate::gadgets::margolus_tail;
use crate::RoutineError;

/// Margolus onto a fresh target. The target is prepared directly as `|H⟩`,
/// which is the first `Y(π/4)` applied to `|0⟩`, so each target costs four
/// `|H⟩` states in total.
fn margolus_onto_fresh(b: &mut B, c1: QubitId, c2: QubitId) -> QubitId {
    let t = b.magic(MagicKind::H, Role::Target);
    margolus_tail(b, c1, c2, t, true);
    t
}

/// Distills a Toffoli state from `4·o` `|H⟩` states. `o` targets share the
/// two controls; every extra target is checked against the first and
/// measured out.
pub fn h_to_toffoli(o: usize) -> Result<Circuit, RoutineError> {
    if o < 2 {
        return Err(RoutineError::TooFewTargets(o));
    }
    let mut b = B::new();
    let c1 = b.plus(Role::Control1);
    let c2 = b.plus(Role::Control2);
    let targets: Vec<QubitId> = (0..o).map(|_| margolus_onto_fresh(&mut b, c1, c2)).collect();
    for &t in &targets[1..] {
        b.cnot(targets[0], t);
        let m = b.mz(t);
        b.reject_if(Parity::bit(m));
    }
    Ok(b.finish(vec![c1, c2, targets[0]]))
}

/// Toffoli state from four `|H⟩` with no checking.
pub fn toffoli_state_prep_4h() -> Circuit {
    let mut b = B::new();
    let c1 = b.plus(Role::Control1);
    let c2 = b.plus(Role::Control2);
    let t = margolus_onto_fresh(&mut b, c1, c2);
    b.finish(vec![c1, c2, t])
}

/// Shor's gate teleportation: Toffoli on data `(x, y, z)` using resource
/// `r = (a, b, c)`. The data are measured out; the result lives on `r`.
pub(crate) fn shor(b: &mut B, data: [QubitId; 3], r: [QubitId; 3]) {
    let [x, y, z] = data;
    let [ra, rb, rc] = r;
    b.cnot(ra, x);
    b.cnot(rb, y);
    b.cnot(z, rc);
    let m1 = Parity::bit(b.mz(x));
    let m2 = Parity::bit(b.mz(y));
    let m3 = Parity::bit(b.mx(z));
    // the CNOT from b runs before b is fixed, which also clears the m1·m2 term
    b.when(m1.clone(), Gate::Cnot { control: rb, target: rc });
    b.when(m2.clone(), Gate::X(rb));
    b.when(m1, Gate::X(ra));
    b.when(m2, Gate::Cnot { control: ra, target: rc });
    b.when(m3.clone(), Gate::Cz(ra, rb));
    b.when(m3, Gate::Z(rc));
}

/// Toffoli gate on three data inputs using a prepared Toffoli state.
pub fn indirect_toffoli() -> Circuit {
    let mut b = B::new();
    let data = [b.input(Role::Data), b.input(Role::Data), b.input(Role::Data)];
    let r = b.toffoli_resource();
    shor(&mut b, data, r);
    b.finish(r.to_vec())
}

/// As [`indirect_toffoli`] with the resource supplied as inputs, ready to
/// be composed after a routine that outputs a Toffoli state. Inputs are the
/// three data qubits followed by the resource.
pub fn indirect_toffoli_open() -> Circuit {
    let mut b = B::new();
    let data = [b.input(Role::Data), b.input(Role::Data), b.input(Role::Data)];
    let r = [b.input(Role::Control1), b.input(Role::Control2), b.input(Role::Target)];
    shor(&mut b, data, r);
    b.finish(r.to_vec())
}

/// Which qubit of the Toffoli state the distillation protects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Protect {
    Target,
    Control1,
    Control2,
}

/// Two Toffoli states in, one out. Both resources implement the Toffoli
/// gates of the two-target check; their target-X faults are caught by the
/// parity measurement.
///
/// The control variants turn each resource with a Hadamard pair so that the
/// chosen control plays the target, run the same circuit, and turn back.
pub fn toffoli_distill(which: Protect) -> Circuit {
    // position (within a resource) of the qubit acting as target, and the
    // one swapped with it
    let (tpos, other) = match which {
        Protect::Target => (2, 2),
        Protect::Control1 => (0, 2),
        Protect::Control2 => (1, 2),
    };
    let mut b = B::new();
    let resource = |b: &mut B| -> [QubitId; 3] {
        let r = b.toffoli_resource();
        if tpos != other {
            b.g(Gate::H(r[tpos]));
            b.g(Gate::H(r[other]));
        }
        // role order: the swapped pair trade places
        let mut role = r;
        role.swap(tpos, other);
        role
    };
    let r1 = resource(&mut b);
    let r2 = resource(&mut b);
    let x = b.plus(Role::Data);
    let y = b.plus(Role::Data);
    let z1 = b.zero(Role::Data);
    shor(&mut b, [x, y, z1], r1);
    let z2 = b.zero(Role::Data);
    shor(&mut b, [r1[0], r1[1], z2], r2);
    b.cnot(r1[2], r2[2]);
    let m = b.mz(r2[2]);
    b.reject_if(Parity::bit(m));
    let mut out = [r2[0], r2[1], r1[2]];
    if tpos != other {
        b.g(Gate::H(out[tpos]));
        b.g(Gate::H(out[other]));
        out.swap(tpos, other);
    }
    b.finish(out.to_vec())
}

/// Moves an unencoded state into the code by teleportation through an
/// encoded Bell pair whose second half is decoded. Ops on bare qubits are
/// flagged unencoded.
pub fn state_injection() -> Circuit {
    let mut b = B::new();
    let psi = b.input(Role::Data);
    let e = b.c.declare(Role::Data);
    b.op_with(Op::PrepPlus(e), Some("encoded"), false);
    let f = b.c.declare(Role::Ancilla);
    b.op_with(Op::PrepZero(f), Some("encoded"), false);
    b.op(Op::Gate(Gate::Cnot { control: e, target: f }));
    b.op_with(Op::Decode(f), Some("D"), false);
    b.op_with(Op::Gate(Gate::Cnot { control: psi, target: f }), None, true);
    let m1 = b.c.next_bit();
    b.op_with(Op::MeasureZ { qubit: f, bit: m1 }, None, true);
    let m2 = b.c.next_bit();
    b.op_with(Op::MeasureX { qubit: psi, bit: m2 }, None, true);
    b.when(Parity::bit(m1), Gate::X(e));
    b.when(Parity::bit(m2), Gate::Z(e));
    b.finish(vec![e])
}
