use std::collections::BTreeMap;

use msd_circuit::{BitId, Circuit, Op};
use msd_pauli::{Gate, QubitId};

use crate::state::{magic_state, Density, StateVector, C};
use crate::SimError;

/// One surviving measurement branch.
#[derive(Clone, Debug)]
pub struct Branch {
    /// Probability of reaching this branch.
    pub probability: f64,
    /// Normalized state of the qubits still live.
    pub state: StateVector,
    pub bits: BTreeMap<BitId, bool>,
}

#[derive(Clone, Debug, Default)]
pub struct Simulation {
    pub accepted: Vec<Branch>,
    /// Probability mass pruned by discards.
    pub rejected: f64,
}

impl Simulation {
    pub fn acceptance(&self) -> f64 {
        self.accepted.iter().map(|b| b.probability).sum()
    }

    /// Output density summed over accepted branches, weighted by branch
    /// probability (not renormalized).
    pub fn output_density(&self, outputs: &[QubitId]) -> Result<Density, SimError> {
        let mut rho = Density::zeros(1 << outputs.len());
        for b in &self.accepted {
            rho.add_scaled(&b.state.reduced_density(outputs)?, b.probability);
        }
        Ok(rho)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Simulator {
    /// Largest number of simultaneously live qubits.
    pub cap: usize,
    /// Branches lighter than this are dropped (their mass counts as neither
    /// accepted nor rejected).
    pub prune: f64,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator { cap: 14, prune: 1e-14 }
    }
}

impl Simulator {
    /// Runs `c` on `input`, which must hold exactly the circuit's input
    /// qubits. `None` starts every input in `|0⟩`.
    pub fn run(&self, c: &Circuit, input: Option<&StateVector>) -> Result<Simulation, SimError> {
        let inputs = c.inputs();
        let start = match input {
            Some(s) => {
                let mut a = s.qubits().to_vec();
                let mut b = inputs.clone();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Err(SimError::InputMismatch);
                }
                s.clone()
            }
            None => StateVector::basis(&inputs.iter().map(|&q| (q, false)).collect::<Vec<_>>()),
        };
        self.check_cap(start.qubits().len())?;
        let mut branches = vec![Branch {
            probability: 1.0,
            state: start,
            bits: BTreeMap::new(),
        }];
        let mut rejected = 0.0;
        for ins in c.ops() {
            let mut next = Vec::with_capacity(branches.len());
            for mut b in branches {
                match &ins.op {
                    Op::Gate(g) => b.state.apply_gate(g)?,
                    Op::Macro(m) => b.state.apply_macro(m)?,
                    Op::Decode(_) => {}
                    Op::PrepZero(q) => self.prep(&mut b.state, &[*q], &[C::new(1.0, 0.0), C::new(0.0, 0.0)])?,
                    Op::PrepPlus(q) => {
                        let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                        self.prep(&mut b.state, &[*q], &[h, h])?
                    }
                    Op::PrepMagic { kind, qubits } => self.prep(&mut b.state, qubits, &magic_state(*kind))?,
                    Op::MeasureZ { qubit, bit } | Op::MeasureX { qubit, bit } => {
                        if matches!(ins.op, Op::MeasureX { .. }) {
                            b.state.apply_gate(&Gate::H(*qubit))?;
                        }
                        for v in [false, true] {
                            let mut s = b.state.clone();
                            let p = s.collapse(*qubit, v)?;
                            let prob = b.probability * p;
                            if prob > self.prune {
                                let mut bits = b.bits.clone();
                                bits.insert(*bit, v);
                                next.push(Branch {
                                    probability: prob,
                                    state: s,
                                    bits,
                                });
                            }
                        }
                        continue;
                    }
                    Op::Conditioned { parity, gate } => {
                        if parity.eval(|x| b.bits[&x]) {
                            b.state.apply_gate(gate)?;
                        }
                    }
                    Op::Discard { parity, value } => {
                        if parity.eval(|x| b.bits[&x]) == *value {
                            rejected += b.probability;
                            continue;
                        }
                    }
                }
                next.push(b);
            }
            branches = next;
        }
        Ok(Simulation {
            accepted: branches,
            rejected,
        })
    }

    fn check_cap(&self, n: usize) -> Result<(), SimError> {
        if n > self.cap {
            Err(SimError::QubitCap { needed: n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn prep(&self, s: &mut StateVector, qs: &[QubitId], local: &[C]) -> Result<(), SimError> {
        self.check_cap(s.qubits().len() + qs.len())?;
        s.push_qubits(qs, local);
        Ok(())
    }
}

pub fn simulate(c: &Circuit, input: Option<&StateVector>) -> Result<Simulation, SimError> {
    Simulator::default().run(c, input)
}

/// Columns of the map from computational-basis inputs to the final state,
/// with outputs first and any other live qubits after.
fn isometry(c: &Circuit) -> Result<Vec<Vec<C>>, SimError> {
    if !c.is_unitary() {
        return Err(SimError::NotUnitary);
    }
    let inputs = c.inputs();
    let mut order = c.outputs().to_vec();
    order.extend(c.live_at_end().into_iter().filter(|q| !c.outputs().contains(q)));
    let mut cols = Vec::with_capacity(1 << inputs.len());
    for l in 0..1usize << inputs.len() {
        let bits: Vec<_> = inputs.iter().enumerate().map(|(t, &q)| (q, l >> t & 1 == 1)).collect();
        let sim = simulate(c, Some(&StateVector::basis(&bits)))?;
        let out = sim.accepted[0].state.permuted(&order)?;
        cols.push(out.amplitudes().to_vec());
    }
    Ok(cols)
}

/// True iff the two measurement-free circuits induce the same map up to a
/// global phase, by max-entry distance after normalizing each by its first
/// nonzero entry.
pub fn unitary_equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool, SimError> {
    if a.inputs().len() != b.inputs().len() || a.outputs().len() != b.outputs().len() {
        return Err(SimError::InputMismatch);
    }
    let ua = isometry(a)?;
    let ub = isometry(b)?;
    if ua[0].len() != ub[0].len() {
        return Ok(false);
    }
    let flat = |u: &Vec<Vec<C>>| -> Vec<C> { u.iter().flatten().copied().collect() };
    let (fa, fb) = (flat(&ua), flat(&ub));
    let pivot = match fa.iter().position(|x| x.norm() > tol) {
        Some(i) => i,
        None => return Ok(fb.iter().all(|x| x.norm() <= tol)),
    };
    if fb[pivot].norm() <= tol {
        return Ok(false);
    }
    let (na, nb) = (fa[pivot] / fa[pivot].norm(), fb[pivot] / fb[pivot].norm());
    Ok(fa.iter().zip(&fb).all(|(x, y)| (x / na - y / nb).norm() <= tol))
}

/// The four one-qubit probe states `|0⟩, |1⟩, |+⟩, |+i⟩`.
pub fn probes() -> [[C; 2]; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (o, z) = (C::new(1.0, 0.0), C::new(0.0, 0.0));
    [[o, z], [z, o], [C::new(h, 0.0), C::new(h, 0.0)], [C::new(h, 0.0), C::new(0.0, h)]]
}

/// Compares conditional output channels on every product of probe states.
/// Inputs and outputs are matched by declaration order.
pub fn channel_equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Result<bool, SimError> {
    let (ia, ib) = (a.inputs(), b.inputs());
    if ia.len() != ib.len() || a.outputs().len() != b.outputs().len() {
        return Err(SimError::InputMismatch);
    }
    let pr = probes();
    for l in 0..4usize.pow(ia.len() as u32) {
        let pick = |t: usize| pr[l / 4usize.pow(t as u32) % 4];
        let sa = StateVector::product(&ia.iter().enumerate().map(|(t, &q)| (q, pick(t))).collect::<Vec<_>>());
        let sb = StateVector::product(&ib.iter().enumerate().map(|(t, &q)| (q, pick(t))).collect::<Vec<_>>());
        let ra = conditional(a, &sa)?;
        let rb = conditional(b, &sb)?;
        if ra.max_diff(&rb) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Output density on accepted branches, renormalized by acceptance.
pub fn conditional(c: &Circuit, input: &StateVector) -> Result<Density, SimError> {
    let sim = simulate(c, Some(input))?;
    let acc = sim.acceptance();
    if acc <= 0.0 {
        return Err(SimError::NothingAccepted);
    }
    let mut rho = Density::zeros(1 << c.outputs().len());
    rho.add_scaled(&sim.output_density(c.outputs())?, 1.0 / acc);
    Ok(rho)
}
