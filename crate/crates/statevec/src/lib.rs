//! Dense state-vector oracle.
//!
//! Qubits join the vector when prepared and leave it when measured, so the
//! width tracks the number of live qubits rather than the circuit size.
//! Every measurement forks the run; discards prune branches and book their
//! mass as rejected. This is the ground truth the Pauli-frame engine and the
//! routine constructors are checked against.

mod sim;
mod state;

pub use sim::{
    channel_equivalent, conditional, probes, simulate, unitary_equivalent, Branch, Simulation, Simulator,
};
pub use state::{gate_matrix, macro_matrix, magic_state, pauli_matrix, Density, StateVector, C};

use msd_circuit::{Circuit, CircuitError, Instr, Op};
use msd_pauli::{Gate, Letter, QubitId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("{needed} live qubits exceed the cap of {cap}")]
    QubitCap { needed: usize, cap: usize },
    #[error("qubit q{0} is not in the state")]
    MissingQubit(QubitId),
    #[error("state qubits do not match")]
    QubitSetMismatch,
    #[error("input state does not match the circuit's declared inputs")]
    InputMismatch,
    #[error("circuit contains measurements")]
    NotUnitary,
    #[error("no branch was accepted")]
    NothingAccepted,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Copy of `c` with Pauli gates inserted right after the given op indices.
pub fn with_faults(c: &Circuit, faults: &[(usize, QubitId, Letter)]) -> Result<Circuit, SimError> {
    let mut out = Circuit::new();
    for d in c.decls() {
        out.declare_with_id(d.id, d.role, d.input)?;
    }
    for (i, ins) in c.ops().iter().enumerate() {
        out.push(ins.clone())?;
        for &(_, q, l) in faults.iter().filter(|f| f.0 == i) {
            let g = match l {
                Letter::I => continue,
                Letter::X => Gate::X(q),
                Letter::Y => Gate::Y(q),
                Letter::Z => Gate::Z(q),
            };
            out.push(Instr {
                op: Op::Gate(g),
                label: Some("fault".into()),
                unencoded: false,
            })?;
        }
    }
    out.set_outputs(c.outputs().to_vec())?;
    Ok(out)
}
