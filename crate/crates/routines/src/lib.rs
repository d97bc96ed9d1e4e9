//! Circuit constructors, expanded to Clifford gates plus magic-state
//! preparations wherever the routine is meant to be analysed.
//!
//! Qubit conventions: a Toffoli state is `Σ|a, b, ab⟩/2` with the target
//! last, and `Y(θ) = exp(-iθY/2)` so `|H⟩ = Y(π/4)|0⟩`.

mod bh;
mod build;
mod expand;
mod gadgets;
mod mek;
mod toffoli;

pub use bh::{
    bravyi_haah, fourteen_to_two, is_triorthogonal, parse_rows, synthesize, twenty_six_to_six, Bits, FOURTEEN,
    TWENTY_SIX,
};
pub use expand::expand_macros;
pub use gadgets::{indirect_y_rotation, margolus, Expansion};
pub use mek::ten_to_two;
pub use toffoli::{
    h_to_toffoli, indirect_toffoli, indirect_toffoli_open, state_injection, toffoli_distill, toffoli_state_prep_4h,
    Protect,
};

use msd_circuit::{Circuit, CircuitError, Macro, Role};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoutineError {
    #[error("h-to-toffoli needs at least two targets, got {0}")]
    TooFewTargets(usize),
    #[error("matrix is not triorthogonal")]
    NotTriorthogonal,
    #[error("matrix rows are linearly dependent")]
    DependentRows,
    #[error("no Clifford expansion for {0:?}")]
    NoExpansion(Macro),
    #[error("unknown routine {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A named routine with the quoted values it is expected to reproduce.
#[derive(Clone, Debug)]
pub struct RoutineDescriptor {
    pub name: &'static str,
    pub summary: &'static str,
    pub circuit: Circuit,
    pub magic_inputs: usize,
    pub output_roles: Vec<Role>,
    /// Quoted location count, if one is published for this circuit.
    pub quoted_locations: Option<u32>,
    /// Quoted leading coefficient of the marginal output error at `p²`.
    pub quoted_marginal_p2: Option<u32>,
}

fn describe(
    name: &'static str,
    summary: &'static str,
    circuit: Circuit,
    quoted_locations: Option<u32>,
    quoted_marginal_p2: Option<u32>,
) -> RoutineDescriptor {
    let output_roles = circuit.outputs().iter().map(|&q| circuit.role(q).expect("declared")).collect();
    RoutineDescriptor {
        name,
        summary,
        magic_inputs: circuit.magic_count(),
        output_roles,
        circuit,
        quoted_locations,
        quoted_marginal_p2,
    }
}

pub const NAMES: [&str; 15] = [
    "h-to-toffoli",
    "h-to-toffoli-3",
    "toffoli-4h",
    "indirect-toffoli",
    "indirect-toffoli-open",
    "injection",
    "y-rotation-plus",
    "y-rotation-minus",
    "margolus-left",
    "margolus-right",
    "distill-target",
    "distill-control-1",
    "distill-control-2",
    "fourteen-to-two",
    "twenty-six-to-six",
];

/// Every named routine, plus `ten-to-two`.
pub fn registry() -> Vec<RoutineDescriptor> {
    NAMES
        .iter()
        .chain(std::iter::once(&"ten-to-two"))
        .map(|n| lookup(n).expect("registered"))
        .collect()
}

pub fn lookup(name: &str) -> Result<RoutineDescriptor, RoutineError> {
    if let Some(o) = name.strip_prefix("h-to-toffoli-").and_then(|s| s.parse::<usize>().ok()) {
        let c = h_to_toffoli(o)?;
        return Ok(describe("h-to-toffoli-o", "Toffoli state from 4o |H>, o targets", c, None, None));
    }
    Ok(match name {
        "h-to-toffoli" => describe(
            "h-to-toffoli",
            "Toffoli state from 8 |H>, two checked targets",
            h_to_toffoli(2)?,
            Some(36),
            None,
        ),
        "toffoli-4h" => describe("toffoli-4h", "unchecked Toffoli state from 4 |H>", toffoli_state_prep_4h(), Some(23), None),
        "indirect-toffoli" => describe("indirect-toffoli", "Toffoli gate from a prepared Toffoli state", indirect_toffoli(), None, None),
        "indirect-toffoli-open" => describe(
            "indirect-toffoli-open",
            "Toffoli gate with the resource state as input",
            indirect_toffoli_open(),
            Some(15),
            None,
        ),
        "injection" => describe("injection", "state injection into the code", state_injection(), Some(5), None),
        "y-rotation-plus" => describe("y-rotation-plus", "Y(+pi/4) from one |H>", indirect_y_rotation(true), None, None),
        "y-rotation-minus" => describe("y-rotation-minus", "Y(-pi/4) from one |H>", indirect_y_rotation(false), None, None),
        "margolus-left" => describe("margolus-left", "Margolus as Toffoli, CCZ, CZ", margolus(Expansion::Left), None, None),
        "margolus-right" => describe("margolus-right", "Margolus from four Y(pi/4) rotations", margolus(Expansion::Right), None, None),
        "distill-target" => describe("distill-target", "two Toffoli states to one, target protected", toffoli_distill(Protect::Target), None, None),
        "distill-control-1" => describe(
            "distill-control-1",
            "two Toffoli states to one, control-1 protected",
            toffoli_distill(Protect::Control1),
            None,
            None,
        ),
        "distill-control-2" => describe(
            "distill-control-2",
            "two Toffoli states to one, control-2 protected",
            toffoli_distill(Protect::Control2),
            None,
            None,
        ),
        "fourteen-to-two" => describe("fourteen-to-two", "14 |e^(i pi/4)> to 2", fourteen_to_two(), Some(78), Some(7)),
        "twenty-six-to-six" => describe("twenty-six-to-six", "26 |e^(i pi/4)> to 6", twenty_six_to_six(), Some(192), None),
        "ten-to-two" => describe("ten-to-two", "10 |H> to 2 in the four-qubit code", ten_to_two(), Some(80), Some(9)),
        other => return Err(RoutineError::Unknown(other.to_string())),
    })
}
