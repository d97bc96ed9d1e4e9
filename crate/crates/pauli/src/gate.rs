use std::fmt;

use crate::{Letter, PauliError, PauliString, Phase, QubitId};

/// The Clifford working set. Rotation angles are `k·π/2` with `k` mod 4;
/// `RotY { k }` is `exp(-i k π/4 Y)` and likewise for `RotZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(QubitId),
    S(QubitId),
    X(QubitId),
    Y(QubitId),
    Z(QubitId),
    RotY { q: QubitId, k: u8 },
    RotZ { q: QubitId, k: u8 },
    Cnot { control: QubitId, target: QubitId },
    Cz(QubitId, QubitId),
}

type Image = (Phase, Letter);

impl Gate {
    pub fn rot_y(q: QubitId, k: i32) -> Gate {
        Gate::RotY { q, k: k.rem_euclid(4) as u8 }
    }

    pub fn rot_z(q: QubitId, k: i32) -> Gate {
        Gate::RotZ { q, k: k.rem_euclid(4) as u8 }
    }

    pub fn qubits(&self) -> Vec<QubitId> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::RotY { q, .. } | Gate::RotZ { q, .. } => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. } | Gate::Cz(..))
    }

    /// Inverse gate, up to global phase.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::RotZ { q, k: 3 },
            Gate::RotY { q, k } => Gate::RotY { q, k: (4 - k) % 4 },
            Gate::RotZ { q, k } => Gate::RotZ { q, k: (4 - k) % 4 },
            g => g,
        }
    }

    /// The gate as a Pauli (up to phase), if it is one.
    pub fn as_pauli(&self) -> Option<(QubitId, Letter)> {
        match *self {
            Gate::X(q) => Some((q, Letter::X)),
            Gate::Y(q) | Gate::RotY { q, k: 2 } => Some((q, Letter::Y)),
            Gate::Z(q) | Gate::RotZ { q, k: 2 } => Some((q, Letter::Z)),
            Gate::RotY { q, k: 0 } | Gate::RotZ { q, k: 0 } => Some((q, Letter::I)),
            _ => None,
        }
    }

    /// Images of `X` and `Z` for one-qubit gates.
    fn one_qubit_images(&self) -> (Image, Image) {
        use Letter::*;
        let img = |p: u8, l: Letter| (Phase::new(p), l);
        match *self {
            Gate::H(_) => (img(0, Z), img(0, X)),
            Gate::S(_) | Gate::RotZ { k: 1, .. } => (img(0, Y), img(0, Z)),
            Gate::RotZ { k: 3, .. } => (img(2, Y), img(0, Z)),
            Gate::X(_) => (img(0, X), img(2, Z)),
            Gate::Y(_) | Gate::RotY { k: 2, .. } => (img(2, X), img(2, Z)),
            Gate::Z(_) | Gate::RotZ { k: 2, .. } => (img(2, X), img(0, Z)),
            Gate::RotY { k: 1, .. } => (img(2, Z), img(0, X)),
            Gate::RotY { k: 3, .. } => (img(0, Z), img(2, X)),
            Gate::RotY { .. } | Gate::RotZ { .. } => (img(0, X), img(0, Z)),
            Gate::Cnot { .. } | Gate::Cz(..) => unreachable!("two-qubit gate"),
        }
    }

    /// `g · p · g†`.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString, PauliError> {
        let ops = self.qubits();
        if ops.len() == 2 && ops[0] == ops[1] {
            return Err(PauliError::RepeatedOperand(ops[0]));
        }
        for &q in &ops {
            if !p.contains(q) {
                return Err(PauliError::MissingQubit(q));
            }
        }
        let mut out = p.clone();
        for &q in &ops {
            out.set_letter(q, Letter::I)?;
        }
        if ops.len() == 1 {
            let q = ops[0];
            let (ix, iz) = self.one_qubit_images();
            let l = p.letter(q).expect("checked");
            apply_letter(&mut out, l, |gen_x| {
                let (ph, a) = if gen_x { ix } else { iz };
                (ph, vec![(q, a)])
            })?;
        } else {
            let (a, b) = (ops[0], ops[1]);
            // each generator image as a list of (qubit, letter) with phase
            let image = |q_is_a: bool, gen_x: bool| -> (Phase, Vec<(QubitId, Letter)>) {
                use Letter::*;
                let (one, other) = if q_is_a { (a, b) } else { (b, a) };
                match (*self, q_is_a, gen_x) {
                    (Gate::Cnot { .. }, true, true) => (Phase::ONE, vec![(a, X), (b, X)]),
                    (Gate::Cnot { .. }, true, false) => (Phase::ONE, vec![(a, Z)]),
                    (Gate::Cnot { .. }, false, true) => (Phase::ONE, vec![(b, X)]),
                    (Gate::Cnot { .. }, false, false) => (Phase::ONE, vec![(a, Z), (b, Z)]),
                    (Gate::Cz(..), _, true) => (Phase::ONE, vec![(one, X), (other, Z)]),
                    (Gate::Cz(..), _, false) => (Phase::ONE, vec![(one, Z)]),
                    _ => unreachable!("one-qubit gate"),
                }
            };
            let la = p.letter(a).expect("checked");
            let lb = p.letter(b).expect("checked");
            apply_letter(&mut out, la, |gx| image(true, gx))?;
            apply_letter(&mut out, lb, |gx| image(false, gx))?;
        }
        Ok(out)
    }
}

/// Multiplies `out` on the right by the image of `letter`, using
/// `Y = i·X·Z` and the images of the `X` and `Z` generators.
fn apply_letter<F>(out: &mut PauliString, letter: Letter, image: F) -> Result<(), PauliError>
where
    F: Fn(bool) -> (Phase, Vec<(QubitId, Letter)>),
{
    let mut push = |(ph, factors): (Phase, Vec<(QubitId, Letter)>)| -> Result<(), PauliError> {
        out.set_phase(out.phase() * ph);
        for (q, l) in factors {
            out.mul_letter(q, l)?;
        }
        Ok(())
    };
    match letter {
        Letter::I => {}
        Letter::X => push(image(true))?,
        Letter::Z => push(image(false))?,
        Letter::Y => {
            push((Phase::I, Vec::new()))?;
            push(image(true))?;
            push(image(false))?;
        }
    }
    Ok(())
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H q{q}"),
            Gate::S(q) => write!(f, "S q{q}"),
            Gate::X(q) => write!(f, "X q{q}"),
            Gate::Y(q) => write!(f, "Y q{q}"),
            Gate::Z(q) => write!(f, "Z q{q}"),
            Gate::RotY { q, k } => write!(f, "RY {k} q{q}"),
            Gate::RotZ { q, k } => write!(f, "RZ {k} q{q}"),
            Gate::Cnot { control, target } => write!(f, "CNOT q{control} q{target}"),
            Gate::Cz(a, b) => write!(f, "CZ q{a} q{b}"),
        }
    }
}
