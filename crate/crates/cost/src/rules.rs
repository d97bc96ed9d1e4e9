use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CostError;

/// What an op is charged as.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    /// Per prepared qubit.
    MagicPrep,
    DataPrep,
    OneQubit,
    TwoQubit,
    ConditionedOneQubit,
    ConditionedTwoQubit,
    /// Toffoli, CCZ, Margolus and Y(±π/4) macros, per qubit touched.
    Macro,
    Measurement,
    Decode,
    /// Qubit-steps spent waiting, from an as-soon-as-possible schedule.
    Idle,
    /// Any op flagged as acting on bare qubits. It is charged here and
    /// nowhere else.
    Unencoded,
}

impl Category {
    pub const ALL: [Category; 11] = [
        Category::MagicPrep,
        Category::DataPrep,
        Category::OneQubit,
        Category::TwoQubit,
        Category::ConditionedOneQubit,
        Category::ConditionedTwoQubit,
        Category::Macro,
        Category::Measurement,
        Category::Decode,
        Category::Idle,
        Category::Unencoded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::MagicPrep => "magic-prep",
            Category::DataPrep => "data-prep",
            Category::OneQubit => "one-qubit",
            Category::TwoQubit => "two-qubit",
            Category::ConditionedOneQubit => "conditioned-one-qubit",
            Category::ConditionedTwoQubit => "conditioned-two-qubit",
            Category::Macro => "macro",
            Category::Measurement => "measurement",
            Category::Decode => "decode",
            Category::Idle => "idle",
            Category::Unencoded => "unencoded",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Locations charged per op in each category.
///
/// Loaded from TOML with kebab-case keys; missing keys keep the defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct CostRules {
    pub magic_prep: u32,
    pub data_prep: u32,
    pub one_qubit: u32,
    pub two_qubit: u32,
    pub conditioned_one_qubit: u32,
    pub conditioned_two_qubit: u32,
    pub macro_per_qubit: u32,
    pub measurement: u32,
    pub decode: u32,
    pub idle: u32,
    pub unencoded: u32,
}

impl Default for CostRules {
    /// Weights that reproduce the quoted counts for the H-to-Toffoli
    /// routine (36), the Toffoli gate overhead (15) and injection (5).
    fn default() -> Self {
        CostRules {
            magic_prep: 1,
            data_prep: 1,
            one_qubit: 0,
            two_qubit: 2,
            conditioned_one_qubit: 0,
            conditioned_two_qubit: 3,
            macro_per_qubit: 1,
            measurement: 0,
            decode: 1,
            idle: 0,
            unencoded: 0,
        }
    }
}

impl CostRules {
    /// Preparation of data qubits free and conditioned two-qubit gates
    /// priced like unconditioned ones.
    pub fn literal() -> CostRules {
        CostRules {
            data_prep: 0,
            conditioned_two_qubit: 2,
            ..CostRules::default()
        }
    }

    pub fn preset(name: &str) -> Option<CostRules> {
        match name {
            "default" => Some(CostRules::default()),
            "literal" => Some(CostRules::literal()),
            _ => None,
        }
    }

    pub fn weight(&self, c: Category) -> u32 {
        match c {
            Category::MagicPrep => self.magic_prep,
            Category::DataPrep => self.data_prep,
            Category::OneQubit => self.one_qubit,
            Category::TwoQubit => self.two_qubit,
            Category::ConditionedOneQubit => self.conditioned_one_qubit,
            Category::ConditionedTwoQubit => self.conditioned_two_qubit,
            Category::Macro => self.macro_per_qubit,
            Category::Measurement => self.measurement,
            Category::Decode => self.decode,
            Category::Idle => self.idle,
            Category::Unencoded => self.unencoded,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<CostRules, CostError> {
        toml::from_str(s).map_err(|e| CostError::Rules(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<CostRules, CostError> {
        let s = std::fs::read_to_string(path).map_err(|e| CostError::Rules(format!("{}: {e}", path.display())))?;
        CostRules::from_toml_str(&s)
    }
}
