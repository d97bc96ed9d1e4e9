//! Per-Toffoli arithmetic: routine locations per output, four one-qubit
//! magic states per Toffoli state, the unchecked Toffoli-state preparation,
//! the teleported Toffoli gate and, optionally, state injection.

use std::collections::BTreeMap;
use std::fmt;

use msd_circuit::Role;
use msd_routines::{indirect_toffoli_open, lookup, state_injection, toffoli_state_prep_4h, RoutineDescriptor};
use serde::Serialize;

use crate::count::count_locations;
use crate::rules::CostRules;
use crate::{ser_rational, CostError, Rational};

/// One-qubit magic states consumed per Toffoli state.
pub const H_PER_TOFFOLI: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    ToffoliState,
    ToffoliGate,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::ToffoliState => "toffoli-state",
            Target::ToffoliGate => "toffoli-gate",
        })
    }
}

/// Location counts the pipeline is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCounts {
    pub routines: BTreeMap<String, Rational>,
    pub toffoli_prep: Rational,
    pub gate_overhead: Rational,
    pub injection: Rational,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Routines that feed the table, in row order.
pub const TABLE_ROUTINES: [&str; 4] = ["ten-to-two", "fourteen-to-two", "twenty-six-to-six", "h-to-toffoli"];

impl BaseCounts {
    /// Counts quoted alongside the published circuits.
    pub fn quoted() -> BaseCounts {
        let routines = [("ten-to-two", 80), ("fourteen-to-two", 78), ("twenty-six-to-six", 192), ("h-to-toffoli", 36)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), int(v)))
            .collect();
        BaseCounts {
            routines,
            toffoli_prep: int(23),
            gate_overhead: int(15),
            injection: int(5),
        }
    }

    /// Counts of the circuits built here.
    pub fn reconstructed(rules: &CostRules) -> BaseCounts {
        let n = |c: &msd_circuit::Circuit| count_locations(c, rules).total;
        let routines = TABLE_ROUTINES
            .iter()
            .map(|&k| (k.to_string(), n(&lookup(k).expect("registered").circuit)))
            .collect();
        BaseCounts {
            routines,
            toffoli_prep: n(&toffoli_state_prep_4h()),
            gate_overhead: n(&indirect_toffoli_open()),
            injection: n(&state_injection()),
        }
    }

    /// Name and value of every count, for reporting.
    pub fn entries(&self) -> Vec<(String, Rational)> {
        let mut v: Vec<_> = TABLE_ROUTINES
            .iter()
            .filter_map(|&k| self.routines.get(k).map(|x| (k.to_string(), *x)))
            .collect();
        v.push(("toffoli-4h".into(), self.toffoli_prep));
        v.push(("indirect-toffoli-open".into(), self.gate_overhead));
        v.push(("injection".into(), self.injection));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineCost {
    pub routine: String,
    pub target: Target,
    pub include_injection: bool,
    #[serde(serialize_with = "ser_rational")]
    pub total: Rational,
    pub terms: Vec<Term>,
}

fn outputs_toffoli(d: &RoutineDescriptor) -> bool {
    d.output_roles.contains(&Role::Target)
}

/// Improved states per run: Toffoli states count once per three qubits.
fn states_out(d: &RoutineDescriptor) -> i64 {
    let n = d.output_roles.len() as i64;
    if outputs_toffoli(d) {
        n / 3
    } else {
        n
    }
}

/// Input magic states per Toffoli state.
pub fn state_cost(d: &RoutineDescriptor) -> Rational {
    let per = Rational::new(d.magic_inputs as i64, states_out(d));
    if outputs_toffoli(d) {
        per
    } else {
        per * H_PER_TOFFOLI
    }
}

pub fn pipeline_cost(
    d: &RoutineDescriptor,
    target: Target,
    include_injection: bool,
    base: &BaseCounts,
) -> Result<PipelineCost, CostError> {
    let loc = *base
        .routines
        .get(d.name)
        .ok_or_else(|| CostError::UnknownRoutine(d.name.to_string()))?;
    let mut terms = Vec::new();
    let mut term = |label: &str, value: Rational| terms.push(Term { label: label.into(), value });
    let n = states_out(d);
    let inputs_per = Rational::new(d.magic_inputs as i64, n);
    let mult = if outputs_toffoli(d) { 1 } else { H_PER_TOFFOLI };
    term("routine", loc / n * mult);
    if !outputs_toffoli(d) {
        term("toffoli-4h", base.toffoli_prep);
    }
    if target == Target::ToffoliGate {
        term("indirect-toffoli", base.gate_overhead);
    }
    if include_injection {
        term("injection", base.injection * inputs_per * mult);
    }
    let total = terms.iter().map(|t| t.value).sum();
    Ok(PipelineCost {
        routine: d.name.to_string(),
        target,
        include_injection,
        total,
        terms,
    })
}
