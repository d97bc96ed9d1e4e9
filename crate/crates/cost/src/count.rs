use std::collections::{BTreeMap, HashMap};

use msd_circuit::{Circuit, Op};
use serde::Serialize;

use crate::rules::{Category, CostRules};
use crate::{ser_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Charge {
    pub count: u64,
    pub weight: u32,
}

impl Charge {
    pub fn locations(&self) -> u64 {
        self.count * u64::from(self.weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    #[serde(serialize_with = "ser_rational")]
    pub total: Rational,
    pub breakdown: BTreeMap<Category, Charge>,
    pub magic_states: usize,
    pub outputs: usize,
    /// `total / outputs`, or the total when there are no outputs.
    #[serde(serialize_with = "ser_rational")]
    pub per_output: Rational,
}

fn classify(op: &Op) -> Option<(Category, u64)> {
    Some(match op {
        Op::PrepMagic { qubits, .. } => (Category::MagicPrep, qubits.len() as u64),
        Op::PrepZero(_) | Op::PrepPlus(_) => (Category::DataPrep, 1),
        Op::Gate(g) if g.is_two_qubit() => (Category::TwoQubit, 1),
        Op::Gate(_) => (Category::OneQubit, 1),
        Op::Conditioned { gate, .. } if gate.is_two_qubit() => (Category::ConditionedTwoQubit, 1),
        Op::Conditioned { .. } => (Category::ConditionedOneQubit, 1),
        Op::Macro(m) => (Category::Macro, m.qubits().len() as u64),
        Op::MeasureZ { .. } | Op::MeasureX { .. } => (Category::Measurement, 1),
        Op::Decode(_) => (Category::Decode, 1),
        Op::Discard { .. } => return None,
    })
}

/// Waiting qubit-steps under an as-soon-as-possible schedule. Every op
/// with qubits takes one step; conditioned ops wait for their bits.
pub fn idle_steps(c: &Circuit) -> u64 {
    let mut ready: HashMap<_, u64> = HashMap::new();
    let mut bit_ready: HashMap<_, u64> = HashMap::new();
    let mut first: HashMap<_, u64> = HashMap::new();
    let mut last: HashMap<_, u64> = HashMap::new();
    let mut busy: HashMap<_, u64> = HashMap::new();
    let mut ended = Vec::new();
    for q in c.inputs() {
        first.insert(q, 1);
    }
    let mut depth = 0;
    for ins in c.ops() {
        let qs = ins.op.qubits();
        if qs.is_empty() {
            continue;
        }
        let mut step = qs.iter().map(|q| ready.get(q).copied().unwrap_or(0)).max().unwrap_or(0);
        if let Op::Conditioned { parity, .. } = &ins.op {
            step = parity.bits.iter().map(|b| bit_ready.get(b).copied().unwrap_or(0)).fold(step, u64::max);
        }
        step += 1;
        depth = depth.max(step);
        for &q in &qs {
            ready.insert(q, step);
            first.entry(q).or_insert(step);
            last.insert(q, step);
            *busy.entry(q).or_insert(0) += 1;
        }
        if let Op::MeasureZ { qubit, bit } | Op::MeasureX { qubit, bit } = ins.op {
            bit_ready.insert(bit, step);
            ended.push(qubit);
        }
    }
    // qubits still live wait until the end
    for q in c.live_at_end() {
        last.insert(q, depth);
    }
    first
        .iter()
        .map(|(q, &f)| {
            let l = last.get(q).copied().unwrap_or(f);
            (l + 1).saturating_sub(f).saturating_sub(busy.get(q).copied().unwrap_or(0))
        })
        .sum()
}

/// Locations in `c` under `r`. Deterministic, and independent of op order
/// unless idle steps are weighted.
pub fn count_locations(c: &Circuit, r: &CostRules) -> CostReport {
    let mut breakdown: BTreeMap<Category, Charge> = BTreeMap::new();
    let mut add = |cat: Category, n: u64| {
        let e = breakdown.entry(cat).or_insert(Charge {
            count: 0,
            weight: r.weight(cat),
        });
        e.count += n;
    };
    for ins in c.ops() {
        if let Some((cat, n)) = classify(&ins.op) {
            add(if ins.unencoded { Category::Unencoded } else { cat }, n);
        }
    }
    if r.idle != 0 {
        add(Category::Idle, idle_steps(c));
    }
    let total: u64 = breakdown.values().map(Charge::locations).sum();
    let total = Rational::from_integer(total as i64);
    let outputs = c.outputs().len();
    CostReport {
        total,
        breakdown,
        magic_states: c.magic_count(),
        outputs,
        per_output: if outputs == 0 { total } else { total / outputs as i64 },
    }
}
