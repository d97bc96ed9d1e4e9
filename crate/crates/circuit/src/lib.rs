//! Circuit model: Clifford gates, magic-state preparations, Pauli-basis
//! measurements, parity-conditioned Clifford corrections and
//! post-selection.
//!
//! Circuits are plain values. [`Circuit::push`] validates each op against
//! the qubit lifecycle (unprepared, live, measured) as it is added, so a
//! constructed circuit is always well formed. Non-Clifford gates appear only
//! as [`Macro`] ops; the Pauli-frame engine refuses them and the dense
//! simulator applies them directly.
//!
//! The text format is documented in the repository README.

mod circuit;
mod text;

pub use circuit::{Circuit, ComposeMap, MagicSite};
pub use msd_pauli::{Gate, QubitId};
pub use text::{parse, serialize, ParseError};

use std::fmt;

/// Index of a classical bit written by a measurement.
pub type BitId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MagicKind {
    /// `cos(π/8)|0⟩ + sin(π/8)|1⟩`
    H,
    /// `(|0⟩ + e^{iπ/4}|1⟩)/√2`
    PiOver4,
    /// `(|000⟩+|100⟩+|010⟩+|111⟩)/2`, target last
    Toffoli,
}

impl MagicKind {
    pub fn arity(self) -> usize {
        match self {
            MagicKind::Toffoli => 3,
            _ => 1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            MagicKind::H => "H",
            MagicKind::PiOver4 => "PI4",
            MagicKind::Toffoli => "TOFFOLI",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Control1,
    Control2,
    Target,
    Ancilla,
    MagicInput,
    Data,
}

impl Role {
    pub fn token(self) -> &'static str {
        match self {
            Role::Control1 => "control-1",
            Role::Control2 => "control-2",
            Role::Target => "target",
            Role::Ancilla => "ancilla",
            Role::MagicInput => "magic-input",
            Role::Data => "data",
        }
    }

    pub fn from_token(s: &str) -> Option<Role> {
        Some(match s {
            "control-1" => Role::Control1,
            "control-2" => Role::Control2,
            "target" => Role::Target,
            "ancilla" => Role::Ancilla,
            "magic-input" => Role::MagicInput,
            "data" => Role::Data,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitDecl {
    pub id: QubitId,
    pub role: Role,
    /// Supplied from outside instead of prepared by the circuit.
    pub input: bool,
}

/// XOR of measurement bits, optionally negated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Parity {
    pub bits: Vec<BitId>,
    pub negate: bool,
}

impl Parity {
    pub fn bit(b: BitId) -> Parity {
        Parity { bits: vec![b], negate: false }
    }

    pub fn of(bits: impl IntoIterator<Item = BitId>) -> Parity {
        Parity { bits: bits.into_iter().collect(), negate: false }
    }

    pub fn negated(mut self) -> Parity {
        self.negate = !self.negate;
        self
    }

    pub fn eval(&self, value: impl Fn(BitId) -> bool) -> bool {
        self.bits.iter().fold(self.negate, |acc, &b| acc ^ value(b))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negate {
            f.write_str("!")?;
        }
        if self.bits.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.bits.iter().map(|b| format!("m{b}")).collect();
        f.write_str(&terms.join("^"))
    }
}

/// Non-Clifford composites. The dense simulator applies them as unitaries;
/// the routines crate expands them into the working gate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Macro {
    Toffoli { c1: QubitId, c2: QubitId, target: QubitId },
    Ccz(QubitId, QubitId, QubitId),
    /// Toffoli with an extra sign on `|c1=1, c2=0, t=1⟩`.
    Margolus { c1: QubitId, c2: QubitId, target: QubitId },
    /// `Y(±π/4) = exp(∓iπY/8)`; `plus` selects the sign.
    YQuarter { q: QubitId, plus: bool },
}

impl Macro {
    pub fn qubits(&self) -> Vec<QubitId> {
        match *self {
            Macro::Toffoli { c1, c2, target } | Macro::Margolus { c1, c2, target } => vec![c1, c2, target],
            Macro::Ccz(a, b, c) => vec![a, b, c],
            Macro::YQuarter { q, .. } => vec![q],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Gate(Gate),
    PrepZero(QubitId),
    PrepPlus(QubitId),
    PrepMagic { kind: MagicKind, qubits: Vec<QubitId> },
    MeasureZ { qubit: QubitId, bit: BitId },
    MeasureX { qubit: QubitId, bit: BitId },
    Conditioned { parity: Parity, gate: Gate },
    /// Rejects the run when `parity` evaluates to `value`.
    Discard { parity: Parity, value: bool },
    Macro(Macro),
    /// Decoding of an encoded block onto a bare qubit. Functionally the
    /// identity; it exists so injection circuits can be costed.
    Decode(QubitId),
}

impl Op {
    /// Qubits the op acts on.
    pub fn qubits(&self) -> Vec<QubitId> {
        match self {
            Op::Gate(g) | Op::Conditioned { gate: g, .. } => g.qubits(),
            Op::PrepZero(q) | Op::PrepPlus(q) | Op::Decode(q) => vec![*q],
            Op::PrepMagic { qubits, .. } => qubits.clone(),
            Op::MeasureZ { qubit, .. } | Op::MeasureX { qubit, .. } => vec![*qubit],
            Op::Discard { .. } => vec![],
            Op::Macro(m) => m.qubits(),
        }
    }

    pub fn is_preparation(&self) -> bool {
        matches!(self, Op::PrepZero(_) | Op::PrepPlus(_) | Op::PrepMagic { .. })
    }
}

/// An op with its annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instr {
    pub op: Op,
    pub label: Option<String>,
    /// Performed on bare (unencoded) qubits; weighted zero by the cost model.
    pub unencoded: bool,
}

impl From<Op> for Instr {
    fn from(op: Op) -> Instr {
        Instr { op, label: None, unencoded: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("unknown qubit q{0}")]
    DanglingQubit(QubitId),
    #[error("unknown classical bit m{0}")]
    DanglingBit(BitId),
    #[error("qubit q{0} used before preparation")]
    Unprepared(QubitId),
    #[error("qubit q{0} used after measurement")]
    UsedAfterMeasurement(QubitId),
    #[error("qubit q{0} prepared twice")]
    AlreadyPrepared(QubitId),
    #[error("classical bit m{0} written twice")]
    BitReused(BitId),
    #[error("op repeats qubit q{0}")]
    RepeatedOperand(QubitId),
    #[error("{kind} preparation takes {expected} qubits")]
    MagicArity { kind: &'static str, expected: usize },
    #[error("qubit q{0} declared twice")]
    DuplicateQubit(QubitId),
    #[error("output q{0} is not live at the end of the circuit")]
    DeadOutput(QubitId),
    #[error("wiring maps two qubits onto q{0}")]
    WiringCollision(QubitId),
    #[error("wiring source q{0} is not an input of the appended circuit")]
    NotAnInput(QubitId),
    #[error("wiring target q{0} is not an output of the base circuit")]
    NotAnOutput(QubitId),
    #[error("role mismatch wiring q{from} ({from_role}) onto q{to} ({to_role})")]
    RoleMismatch {
        from: QubitId,
        from_role: &'static str,
        to: QubitId,
        to_role: &'static str,
    },
}
