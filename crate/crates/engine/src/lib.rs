//! Fault-pattern enumeration.
//!
//! Every faultable magic preparation is a site. A pattern picks the faulty
//! sites; the engine injects the model Pauli after each one, pushes a
//! sign-free frame through the Clifford remainder, and records whether the
//! run is accepted and what is left on the outputs. Summing
//! `p^w (1-p)^(k-w)` over records gives exact polynomials in `p`.

mod dense;
mod distill;
mod enumerate;
mod frame;
mod poly;

pub use dense::{dense_enumerate, snap, DenseEnumeration, DenseRecord};
pub use distill::{class_model, toffoli_distill_distribution, ClassDistribution};
pub use enumerate::{
    binomial, enumerate, enumerate_sequential, enumerate_with, fault_sites, patterns_up_to, propagate_pattern,
    Enumeration, FaultModel, Options, OutcomeRecord, Propagator, Site,
};
pub use frame::{Compiled, Propagated};
pub use poly::{Poly, Q};

use msd_circuit::CircuitError;
use msd_pauli::{Gate, PauliError, QubitId};
use msd_statevec::SimError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("op {op} is not Clifford; expand macros before propagating")]
    NonClifford { op: usize },
    #[error("op {op}: a flipped condition would apply the non-Pauli {gate}")]
    FlippedClifford { op: usize, gate: Gate },
    #[error("op {op}: conditioned {gate} does not preserve the frame")]
    FrameDependentCorrection { op: usize, gate: Gate },
    #[error("{k} fault sites exceed the cap of {cap}")]
    TooManySites { k: usize, cap: usize },
    #[error("pattern {pattern:#b} has sites beyond the {k} available")]
    PatternOutOfRange { pattern: u64, k: usize },
    #[error("record set has {have} records, expected {expected}")]
    Incomplete { have: usize, expected: usize },
    #[error("unknown qubit q{0}")]
    UnknownQubit(QubitId),
    #[error("class {0:?} is not a product of Z on controls and X on target")]
    ClassOutsideModel(String),
    #[error("ideal states do not match the outputs")]
    OutputMismatch,
    #[error("{0} is not close to a small rational")]
    NotRational(f64),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}
