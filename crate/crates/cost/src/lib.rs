//! Location counting and the per-Toffoli cost tables.
//!
//! A location is one qubit busy for one step. Rules assign a weight to each
//! op category; one-qubit Cliffords and measurements are free by default.
//! Counts stay exact: per-output costs are rationals.

mod count;
mod pipeline;
mod rules;
mod table;

pub use count::{count_locations, idle_steps, Charge, CostReport};
pub use pipeline::{pipeline_cost, state_cost, BaseCounts, PipelineCost, Target, Term, H_PER_TOFFOLI, TABLE_ROUTINES};
pub use rules::{Category, CostRules};
pub use table::{agrees, output_error, table_one, table_routines, BaseRow, Cell, ErrorCell, Leading, Row, Status, TableReport};

use num_rational::Ratio;
use serde::Serializer;

pub type Rational = Ratio<i64>;

#[derive(Debug, thiserror::Error)]
pub enum CostError {
    #[error("unknown routine {0:?}")]
    UnknownRoutine(String),
    #[error("cost rules: {0}")]
    Rules(String),
    #[error(transparent)]
    Routine(#[from] msd_routines::RoutineError),
    #[error(transparent)]
    Engine(#[from] msd_engine::EngineError),
}

/// Rounds half away from zero to `decimals` places.
pub fn render_rational(q: Rational, decimals: usize) -> String {
    let scale = 10i64.pow(decimals as u32);
    let s = q * scale;
    let half = Rational::new(1, 2);
    let r = if s >= 0.into() { (s + half).floor() } else { (s - half).ceil() };
    let n = r.to_integer();
    if decimals == 0 {
        return n.to_string();
    }
    let sign = if n < 0 { "-" } else { "" };
    let a = n.unsigned_abs();
    format!("{sign}{}.{:0w$}", a / scale as u64, a % scale as u64, w = decimals)
}

pub(crate) fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub(crate) fn ser_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}
