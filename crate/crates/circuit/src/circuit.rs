use std::collections::{BTreeMap, BTreeSet};

use crate::{BitId, CircuitError, Instr, MagicKind, Op, QubitDecl, QubitId, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Life {
    Unprepared,
    Live,
    Measured,
}

/// An ordered op list over declared qubits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    decls: Vec<QubitDecl>,
    ops: Vec<Instr>,
    outputs: Vec<QubitId>,
    life: BTreeMap<QubitId, Life>,
    bits: BTreeSet<BitId>,
}

/// Where the qubits and bits of an appended circuit ended up.
#[derive(Clone, Debug, Default)]
pub struct ComposeMap {
    pub qubits: BTreeMap<QubitId, QubitId>,
    pub bit_offset: BitId,
}

/// One magic-state preparation, in op order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicSite {
    pub op_index: usize,
    pub kind: MagicKind,
    pub qubits: Vec<QubitId>,
}

impl Circuit {
    pub fn new() -> Circuit {
        Circuit::default()
    }

    fn next_id(&self) -> QubitId {
        self.decls.iter().map(|d| d.id + 1).max().unwrap_or(0)
    }

    pub fn next_bit(&self) -> BitId {
        self.bits.iter().next_back().map_or(0, |b| b + 1)
    }

    /// Declares a fresh qubit that the circuit will prepare itself.
    pub fn declare(&mut self, role: Role) -> QubitId {
        let id = self.next_id();
        self.declare_with_id(id, role, false).expect("fresh id");
        id
    }

    /// Declares a fresh qubit supplied from outside.
    pub fn declare_input(&mut self, role: Role) -> QubitId {
        let id = self.next_id();
        self.declare_with_id(id, role, true).expect("fresh id");
        id
    }

    pub fn declare_with_id(&mut self, id: QubitId, role: Role, input: bool) -> Result<(), CircuitError> {
        if self.life.contains_key(&id) {
            return Err(CircuitError::DuplicateQubit(id));
        }
        self.decls.push(QubitDecl { id, role, input });
        self.life.insert(id, if input { Life::Live } else { Life::Unprepared });
        Ok(())
    }

    pub fn decls(&self) -> &[QubitDecl] {
        &self.decls
    }

    pub fn qubit_ids(&self) -> Vec<QubitId> {
        self.decls.iter().map(|d| d.id).collect()
    }

    pub fn decl(&self, q: QubitId) -> Option<&QubitDecl> {
        self.decls.iter().find(|d| d.id == q)
    }

    pub fn role(&self, q: QubitId) -> Option<Role> {
        self.decl(q).map(|d| d.role)
    }

    pub fn inputs(&self) -> Vec<QubitId> {
        self.decls.iter().filter(|d| d.input).map(|d| d.id).collect()
    }

    pub fn ops(&self) -> &[Instr] {
        &self.ops
    }

    pub fn outputs(&self) -> &[QubitId] {
        &self.outputs
    }

    pub fn num_bits(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn magic_sites(&self) -> Vec<MagicSite> {
        self.ops
            .iter()
            .enumerate()
            .filter_map(|(i, ins)| match &ins.op {
                Op::PrepMagic { kind, qubits } => Some(MagicSite {
                    op_index: i,
                    kind: *kind,
                    qubits: qubits.clone(),
                }),
                _ => None,
            })
            .collect()
    }

    pub fn magic_count(&self) -> usize {
        self.magic_sites().len()
    }

    /// True when the circuit has no measurements or post-selection.
    pub fn is_unitary(&self) -> bool {
        self.ops.iter().all(|i| {
            !matches!(
                i.op,
                Op::MeasureZ { .. } | Op::MeasureX { .. } | Op::Conditioned { .. } | Op::Discard { .. }
            )
        })
    }

    fn life(&self, q: QubitId) -> Result<Life, CircuitError> {
        self.life.get(&q).copied().ok_or(CircuitError::DanglingQubit(q))
    }

    fn require_live(&self, q: QubitId) -> Result<(), CircuitError> {
        match self.life(q)? {
            Life::Live => Ok(()),
            Life::Unprepared => Err(CircuitError::Unprepared(q)),
            Life::Measured => Err(CircuitError::UsedAfterMeasurement(q)),
        }
    }

    fn require_distinct(qs: &[QubitId]) -> Result<(), CircuitError> {
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return Err(CircuitError::RepeatedOperand(*a));
            }
        }
        Ok(())
    }

    fn require_bits(&self, bits: &[BitId]) -> Result<(), CircuitError> {
        match bits.iter().find(|b| !self.bits.contains(b)) {
            Some(b) => Err(CircuitError::DanglingBit(*b)),
            None => Ok(()),
        }
    }

    fn check(&self, op: &Op) -> Result<(), CircuitError> {
        let qs = op.qubits();
        Self::require_distinct(&qs)?;
        match op {
            Op::PrepZero(_) | Op::PrepPlus(_) | Op::PrepMagic { .. } => {
                if let Op::PrepMagic { kind, qubits } = op {
                    if qubits.len() != kind.arity() {
                        return Err(CircuitError::MagicArity {
                            kind: kind.token(),
                            expected: kind.arity(),
                        });
                    }
                }
                for &q in &qs {
                    match self.life(q)? {
                        Life::Unprepared => {}
                        Life::Live => return Err(CircuitError::AlreadyPrepared(q)),
                        Life::Measured => return Err(CircuitError::UsedAfterMeasurement(q)),
                    }
                }
            }
            Op::MeasureZ { qubit, bit } | Op::MeasureX { qubit, bit } => {
                self.require_live(*qubit)?;
                if self.bits.contains(bit) {
                    return Err(CircuitError::BitReused(*bit));
                }
                if self.outputs.contains(qubit) {
                    return Err(CircuitError::DeadOutput(*qubit));
                }
            }
            Op::Conditioned { parity, .. } | Op::Discard { parity, .. } => {
                self.require_bits(&parity.bits)?;
                for &q in &qs {
                    self.require_live(q)?;
                }
            }
            Op::Gate(_) | Op::Macro(_) | Op::Decode(_) => {
                for &q in &qs {
                    self.require_live(q)?;
                }
            }
        }
        Ok(())
    }

    /// Validates and appends in place.
    pub fn push(&mut self, instr: impl Into<Instr>) -> Result<(), CircuitError> {
        let instr = instr.into();
        self.check(&instr.op)?;
        match &instr.op {
            Op::MeasureZ { qubit, bit } | Op::MeasureX { qubit, bit } => {
                self.life.insert(*qubit, Life::Measured);
                self.bits.insert(*bit);
            }
            op if op.is_preparation() => {
                for q in op.qubits() {
                    self.life.insert(q, Life::Live);
                }
            }
            _ => {}
        }
        self.ops.push(instr);
        Ok(())
    }

    /// Value-semantics append: returns the extended circuit.
    pub fn append(&self, instr: impl Into<Instr>) -> Result<Circuit, CircuitError> {
        let mut c = self.clone();
        c.push(instr)?;
        Ok(c)
    }

    pub fn push_labeled(&mut self, op: Op, label: &str) -> Result<(), CircuitError> {
        self.push(Instr {
            op,
            label: Some(label.to_string()),
            unencoded: false,
        })
    }

    pub fn gate(&mut self, g: msd_pauli::Gate) -> Result<(), CircuitError> {
        self.push(Op::Gate(g))
    }

    pub fn measure_z(&mut self, qubit: QubitId) -> Result<BitId, CircuitError> {
        let bit = self.next_bit();
        self.push(Op::MeasureZ { qubit, bit })?;
        Ok(bit)
    }

    pub fn measure_x(&mut self, qubit: QubitId) -> Result<BitId, CircuitError> {
        let bit = self.next_bit();
        self.push(Op::MeasureX { qubit, bit })?;
        Ok(bit)
    }

    pub fn set_outputs(&mut self, outputs: Vec<QubitId>) -> Result<(), CircuitError> {
        Self::require_distinct(&outputs)?;
        for &q in &outputs {
            match self.life(q)? {
                Life::Measured => return Err(CircuitError::DeadOutput(q)),
                Life::Unprepared => return Err(CircuitError::Unprepared(q)),
                Life::Live => {}
            }
        }
        self.outputs = outputs;
        Ok(())
    }

    /// Qubits live at the end of the circuit.
    pub fn live_at_end(&self) -> Vec<QubitId> {
        self.decls
            .iter()
            .filter(|d| self.life[&d.id] == Life::Live)
            .map(|d| d.id)
            .collect()
    }

    /// Re-checks every op from scratch.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut fresh = Circuit::new();
        for d in &self.decls {
            fresh.declare_with_id(d.id, d.role, d.input)?;
        }
        for ins in &self.ops {
            fresh.push(ins.clone())?;
        }
        fresh.set_outputs(self.outputs.clone())
    }

    /// Appends `other`, wiring each `(other_input, self_output)` pair.
    /// Unwired qubits of `other` are renumbered to fresh ids.
    pub fn compose(&self, other: &Circuit, wiring: &[(QubitId, QubitId)]) -> Result<Circuit, CircuitError> {
        self.compose_with_map(other, wiring).map(|(c, _)| c)
    }

    pub fn compose_with_map(
        &self,
        other: &Circuit,
        wiring: &[(QubitId, QubitId)],
    ) -> Result<(Circuit, ComposeMap), CircuitError> {
        let mut map = BTreeMap::new();
        let mut used = BTreeSet::new();
        for &(from, to) in wiring {
            let d = other.decl(from).ok_or(CircuitError::DanglingQubit(from))?;
            if !d.input {
                return Err(CircuitError::NotAnInput(from));
            }
            if !self.outputs.contains(&to) {
                return Err(CircuitError::NotAnOutput(to));
            }
            if !used.insert(to) || map.contains_key(&from) {
                return Err(CircuitError::WiringCollision(to));
            }
            let to_role = self.role(to).expect("output is declared");
            if d.role != to_role {
                return Err(CircuitError::RoleMismatch {
                    from,
                    from_role: d.role.token(),
                    to,
                    to_role: to_role.token(),
                });
            }
            map.insert(from, to);
        }
        let mut out = self.clone();
        let mut next = out.next_id();
        for d in &other.decls {
            if map.contains_key(&d.id) {
                continue;
            }
            map.insert(d.id, next);
            out.declare_with_id(next, d.role, d.input)?;
            next += 1;
        }
        let bit_offset = out.next_bit();
        let rq = |q: QubitId| map[&q];
        for ins in &other.ops {
            let op = remap_op(&ins.op, &rq, bit_offset);
            out.push(Instr {
                op,
                label: ins.label.clone(),
                unencoded: ins.unencoded,
            })?;
        }
        let mut outputs: Vec<QubitId> = self.outputs.iter().copied().filter(|q| !used.contains(q)).collect();
        for &q in &other.outputs {
            let m = rq(q);
            if !outputs.contains(&m) {
                outputs.push(m);
            }
        }
        out.outputs.clear();
        out.set_outputs(outputs)?;
        Ok((out, ComposeMap { qubits: map, bit_offset }))
    }
}

/// Renames qubits and shifts bits in one op.
pub(crate) fn remap_op(op: &Op, rq: &dyn Fn(QubitId) -> QubitId, bit_offset: BitId) -> Op {
    use crate::{Macro, Parity};
    use msd_pauli::Gate;
    let g = |g: &Gate| -> Gate {
        match *g {
            Gate::H(q) => Gate::H(rq(q)),
            Gate::S(q) => Gate::S(rq(q)),
            Gate::X(q) => Gate::X(rq(q)),
            Gate::Y(q) => Gate::Y(rq(q)),
            Gate::Z(q) => Gate::Z(rq(q)),
            Gate::RotY { q, k } => Gate::RotY { q: rq(q), k },
            Gate::RotZ { q, k } => Gate::RotZ { q: rq(q), k },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: rq(control),
                target: rq(target),
            },
            Gate::Cz(a, b) => Gate::Cz(rq(a), rq(b)),
        }
    };
    let p = |p: &Parity| Parity {
        bits: p.bits.iter().map(|b| b + bit_offset).collect(),
        negate: p.negate,
    };
    match op {
        Op::Gate(x) => Op::Gate(g(x)),
        Op::PrepZero(q) => Op::PrepZero(rq(*q)),
        Op::PrepPlus(q) => Op::PrepPlus(rq(*q)),
        Op::PrepMagic { kind, qubits } => Op::PrepMagic {
            kind: *kind,
            qubits: qubits.iter().map(|q| rq(*q)).collect(),
        },
        Op::MeasureZ { qubit, bit } => Op::MeasureZ {
            qubit: rq(*qubit),
            bit: bit + bit_offset,
        },
        Op::MeasureX { qubit, bit } => Op::MeasureX {
            qubit: rq(*qubit),
            bit: bit + bit_offset,
        },
        Op::Conditioned { parity, gate } => Op::Conditioned {
            parity: p(parity),
            gate: g(gate),
        },
        Op::Discard { parity, value } => Op::Discard {
            parity: p(parity),
            value: *value,
        },
        Op::Macro(m) => Op::Macro(match *m {
            Macro::Toffoli { c1, c2, target } => Macro::Toffoli {
                c1: rq(c1),
                c2: rq(c2),
                target: rq(target),
            },
            Macro::Margolus { c1, c2, target } => Macro::Margolus {
                c1: rq(c1),
                c2: rq(c2),
                target: rq(target),
            },
            Macro::Ccz(a, b, c) => Macro::Ccz(rq(a), rq(b), rq(c)),
            Macro::YQuarter { q, plus } => Macro::YQuarter { q: rq(q), plus },
        }),
        Op::Decode(q) => Op::Decode(rq(*q)),
    }
}
