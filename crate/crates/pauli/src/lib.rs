//! Pauli-group algebra with exact phases, plus the Clifford conjugation
//! rules that every error-propagation pass in the workspace relies on.
//!
//! A [`PauliString`] is `i^k` times a tensor product of letters over an
//! explicit, sorted set of qubit ids. The id set is part of the value: two
//! strings can only be multiplied when they are defined on the same ids.
//! Ids are stable integers handed out by circuits, never positions.

mod gate;
mod letter;
mod string;

pub use gate::Gate;
pub use letter::{Letter, Phase};
pub use string::PauliString;

/// Stable qubit identifier.
pub type QubitId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PauliError {
    #[error("qubit sets differ: {left:?} vs {right:?}")]
    QubitSetMismatch {
        left: Vec<QubitId>,
        right: Vec<QubitId>,
    },
    #[error("qubit {0} is not in the string's qubit set")]
    MissingQubit(QubitId),
    #[error("two-qubit gate uses qubit {0} twice")]
    RepeatedOperand(QubitId),
    #[error("cannot parse Pauli string {0:?}")]
    Parse(String),
}
