//! Two `|H⟩` states checked in the four-qubit code by measuring the
//! transversal Hadamard, controlled from an ancilla.

use msd_circuit::{Circuit, MagicKind, Parity, Role};
use msd_pauli::Gate;

use crate::bh::synthesize;
use crate::build::B;
use crate::gadgets::y_gadget;

/// X images of the four unencoded qubits: `X̄1 = X1X2`, `X̄2 = X1X3`,
/// `X4`, and the stabilizer `XXXX`.
const ENCODER: [[bool; 4]; 4] = [
    [true, true, false, false],
    [true, false, true, false],
    [false, false, false, true],
    [true, true, true, true],
];

/// Ten `|H⟩` in, two out. Two are encoded; eight pay for the four
/// controlled Hadamards, each `Y(-π/4)·CZ·Y(π/4)`.
pub fn ten_to_two() -> Circuit {
    let m: Vec<Vec<bool>> = ENCODER.iter().map(|r| r.to_vec()).collect();
    let net = synthesize(&m).expect("encoder is invertible");
    let mut b = B::new();
    let q = [
        b.magic(MagicKind::H, Role::MagicInput),
        b.magic(MagicKind::H, Role::MagicInput),
        b.zero(Role::Ancilla),
        b.plus(Role::Ancilla),
    ];
    for &(c, t) in &net {
        b.cnot(q[c], q[t]);
    }
    let anc = b.plus(Role::Ancilla);
    for &t in &q {
        y_gadget(&mut b, t, false);
        b.g(Gate::Cz(anc, t));
        y_gadget(&mut b, t, true);
    }
    let m = b.mx(anc);
    b.reject_if(Parity::bit(m));
    for &(c, t) in net.iter().rev() {
        b.cnot(q[c], q[t]);
    }
    let z = b.mz(q[2]);
    b.reject_if(Parity::bit(z));
    let x = b.mx(q[3]);
    b.reject_if(Parity::bit(x));
    b.finish(vec![q[0], q[1]])
}
