use msd_circuit::{Circuit, Macro, Op};

use crate::build::B;
use crate::gadgets::{margolus_tail, y_gadget};
use crate::RoutineError;

/// Replaces Margolus and `Y(±π/4)` macros by Clifford gates and `|H⟩`
/// gadgets. Toffoli and CCZ have no expansion here.
pub fn expand_macros(c: &Circuit) -> Result<Circuit, RoutineError> {
    let mut b = B::new();
    for d in c.decls() {
        b.c.declare_with_id(d.id, d.role, d.input)?;
    }
    let bit_shift = |b: &B, bit: u32| -> u32 { bit.max(b.c.next_bit()) };
    let mut bit_map = std::collections::BTreeMap::new();
    for ins in c.ops() {
        match &ins.op {
            Op::Macro(Macro::YQuarter { q, plus }) => y_gadget(&mut b, *q, *plus),
            Op::Macro(Macro::Margolus { c1, c2, target }) => {
                y_gadget(&mut b, *target, true);
                margolus_tail(&mut b, *c1, *c2, *target, true);
            }
            Op::Macro(m) => return Err(RoutineError::NoExpansion(*m)),
            Op::MeasureZ { qubit, bit } | Op::MeasureX { qubit, bit } => {
                // gadgets allocate bits of their own, so renumber
                let nb = bit_shift(&b, *bit);
                bit_map.insert(*bit, nb);
                let op = if matches!(ins.op, Op::MeasureZ { .. }) {
                    Op::MeasureZ { qubit: *qubit, bit: nb }
                } else {
                    Op::MeasureX { qubit: *qubit, bit: nb }
                };
                b.op_with(op, ins.label.as_deref(), ins.unencoded);
            }
            Op::Conditioned { parity, gate } => {
                let parity = remap(parity, &bit_map);
                b.op_with(Op::Conditioned { parity, gate: *gate }, ins.label.as_deref(), ins.unencoded);
            }
            Op::Discard { parity, value } => {
                let parity = remap(parity, &bit_map);
                b.op_with(Op::Discard { parity, value: *value }, ins.label.as_deref(), ins.unencoded);
            }
            op => b.op_with(op.clone(), ins.label.as_deref(), ins.unencoded),
        }
    }
    Ok(b.finish(c.outputs().to_vec()))
}

fn remap(p: &msd_circuit::Parity, m: &std::collections::BTreeMap<u32, u32>) -> msd_circuit::Parity {
    msd_circuit::Parity {
        bits: p.bits.iter().map(|b| m[b]).collect(),
        negate: p.negate,
    }
}
