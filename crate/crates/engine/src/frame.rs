//! Sign-free Pauli frame propagation over a compiled circuit.

use std::collections::BTreeMap;

use msd_circuit::{Circuit, Op};
use msd_pauli::{Gate, Letter, PauliString, QubitId};

use crate::EngineError;

type Table1 = [Letter; 4];
type Table2 = [[(Letter, Letter); 4]; 4];

fn idx(l: Letter) -> usize {
    l as usize
}

#[derive(Clone, Debug)]
enum Action {
    One { q: usize, t: Table1 },
    Two { a: usize, b: usize, t: Table2 },
}

#[derive(Clone, Debug)]
enum Step {
    Nop,
    Apply(Action),
    Measure { q: usize, bit: usize, flips_on_x: bool },
    Conditioned { bits: Vec<usize>, action: Action, pauli: Option<(usize, Letter)>, gate: Gate },
    Discard { bits: Vec<usize> },
    NonClifford,
}

/// A circuit lowered to position-indexed frame steps.
#[derive(Clone, Debug)]
pub struct Compiled {
    steps: Vec<Step>,
    pos: BTreeMap<QubitId, usize>,
    outputs: Vec<QubitId>,
    nbits: usize,
}

fn action(g: &Gate, pos: &BTreeMap<QubitId, usize>) -> Result<Action, EngineError> {
    let qs = g.qubits();
    let p = |q: QubitId| pos.get(&q).copied().ok_or(EngineError::UnknownQubit(q));
    if qs.len() == 1 {
        let mut t = [Letter::I; 4];
        for l in Letter::ALL {
            let img = g.conjugate(&PauliString::from_factors(Default::default(), [(qs[0], l)]))?;
            t[idx(l)] = img.letter(qs[0]).expect("same qubit");
        }
        Ok(Action::One { q: p(qs[0])?, t })
    } else {
        let mut t = [[(Letter::I, Letter::I); 4]; 4];
        for la in Letter::ALL {
            for lb in Letter::ALL {
                let img = g.conjugate(&PauliString::from_factors(Default::default(), [(qs[0], la), (qs[1], lb)]))?;
                t[idx(la)][idx(lb)] = (img.letter(qs[0]).expect("a"), img.letter(qs[1]).expect("b"));
            }
        }
        Ok(Action::Two { a: p(qs[0])?, b: p(qs[1])?, t })
    }
}

impl Action {
    fn apply(&self, f: &mut [Letter]) {
        match *self {
            Action::One { q, t } => f[q] = t[idx(f[q])],
            Action::Two { a, b, ref t } => {
                let (x, y) = t[idx(f[a])][idx(f[b])];
                f[a] = x;
                f[b] = y;
            }
        }
    }

    /// Whether conjugation leaves the frame unchanged up to sign.
    fn preserves(&self, f: &[Letter]) -> bool {
        match *self {
            Action::One { q, t } => t[idx(f[q])] == f[q],
            Action::Two { a, b, ref t } => t[idx(f[a])][idx(f[b])] == (f[a], f[b]),
        }
    }
}

/// Result of one propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagated {
    pub accepted: bool,
    /// Letters on the outputs, sign dropped.
    pub residual: PauliString,
    /// Which measurement bits were flipped.
    pub flips: Vec<bool>,
}

impl Compiled {
    pub fn new(c: &Circuit) -> Result<Compiled, EngineError> {
        let pos: BTreeMap<QubitId, usize> = c.qubit_ids().into_iter().enumerate().map(|(i, q)| (q, i)).collect();
        let nbits = c.next_bit() as usize;
        let mut steps = Vec::with_capacity(c.ops().len());
        for ins in c.ops() {
            let p = |q: &QubitId| pos[q];
            steps.push(match &ins.op {
                Op::Gate(g) => Step::Apply(action(g, &pos)?),
                Op::PrepZero(_) | Op::PrepPlus(_) | Op::PrepMagic { .. } | Op::Decode(_) => Step::Nop,
                Op::MeasureZ { qubit, bit } => Step::Measure {
                    q: p(qubit),
                    bit: *bit as usize,
                    flips_on_x: true,
                },
                Op::MeasureX { qubit, bit } => Step::Measure {
                    q: p(qubit),
                    bit: *bit as usize,
                    flips_on_x: false,
                },
                Op::Conditioned { parity, gate } => Step::Conditioned {
                    bits: parity.bits.iter().map(|&b| b as usize).collect(),
                    action: action(gate, &pos)?,
                    pauli: gate.as_pauli().map(|(q, l)| (pos[&q], l)),
                    gate: *gate,
                },
                Op::Discard { parity, .. } => Step::Discard {
                    bits: parity.bits.iter().map(|&b| b as usize).collect(),
                },
                Op::Macro(_) => Step::NonClifford,
            });
        }
        Ok(Compiled {
            steps,
            pos,
            outputs: c.outputs().to_vec(),
            nbits,
        })
    }

    pub fn position(&self, q: QubitId) -> Option<usize> {
        self.pos.get(&q).copied()
    }

    /// Runs the frame with `inject[i]` multiplied in right after op `i`.
    /// Injections must be sorted by op index.
    pub fn propagate(&self, inject: &[(usize, Vec<(usize, Letter)>)]) -> Result<Propagated, EngineError> {
        let mut f = vec![Letter::I; self.pos.len()];
        let mut flips = vec![false; self.nbits];
        let mut accepted = true;
        let mut next = 0;
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Nop => {}
                Step::Apply(a) => a.apply(&mut f),
                Step::Measure { q, bit, flips_on_x } => {
                    let l = f[*q];
                    flips[*bit] = if *flips_on_x { l.has_x() } else { l.has_z() };
                    f[*q] = Letter::I;
                }
                Step::Conditioned { bits, action, pauli, gate } => {
                    let flipped = bits.iter().fold(false, |acc, &b| acc ^ flips[b]);
                    if flipped {
                        match pauli {
                            Some((q, l)) => f[*q] = f[*q].mul(*l).1,
                            None => return Err(EngineError::FlippedClifford { op: i, gate: *gate }),
                        }
                    } else if !action.preserves(&f) {
                        return Err(EngineError::FrameDependentCorrection { op: i, gate: *gate });
                    }
                }
                Step::Discard { bits } => {
                    // ideal runs accept, so any net flip rejects
                    if bits.iter().fold(false, |acc, &b| acc ^ flips[b]) {
                        accepted = false;
                    }
                }
                Step::NonClifford => return Err(EngineError::NonClifford { op: i }),
            }
            while next < inject.len() && inject[next].0 == i {
                for &(q, l) in &inject[next].1 {
                    f[q] = f[q].mul(l).1;
                }
                next += 1;
            }
        }
        let residual = PauliString::from_factors(
            Default::default(),
            self.outputs.iter().map(|q| (*q, f[self.pos[q]])),
        );
        Ok(Propagated {
            accepted,
            residual,
            flips,
        })
    }
}
