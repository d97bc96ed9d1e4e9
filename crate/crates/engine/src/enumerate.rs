use std::collections::BTreeMap;

use msd_circuit::{Circuit, MagicKind};
use msd_pauli::{Letter, PauliString, QubitId};

use crate::frame::Compiled;
use crate::poly::Poly;
use crate::EngineError;

/// Which Pauli each kind of faulty magic state suffers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaultModel {
    pub h: Letter,
    pub pi4: Letter,
}

impl Default for FaultModel {
    fn default() -> Self {
        FaultModel {
            h: Letter::Y,
            pi4: Letter::Z,
        }
    }
}

/// A one-qubit magic preparation that may be faulty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    pub op_index: usize,
    pub qubit: QubitId,
    pub letter: Letter,
}

/// Faultable sites in op order. Toffoli preparations are not sites here;
/// their faults are classes, handled by the distillation analysis.
pub fn fault_sites(c: &Circuit, model: FaultModel) -> Vec<Site> {
    c.magic_sites()
        .into_iter()
        .filter_map(|s| {
            let letter = match s.kind {
                MagicKind::H => model.h,
                MagicKind::PiOver4 => model.pi4,
                MagicKind::Toffoli => return None,
            };
            Some(Site {
                op_index: s.op_index,
                qubit: s.qubits[0],
                letter,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeRecord {
    /// Bit `i` set means site `i` is faulty.
    pub pattern: u64,
    pub accepted: bool,
    /// Letters on the outputs, sign dropped.
    pub residual: PauliString,
}

impl OutcomeRecord {
    pub fn weight(&self) -> usize {
        self.pattern.count_ones() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.residual.weight() == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub model: FaultModel,
    /// Largest number of sites accepted for enumeration.
    pub cap: usize,
    /// Enumerate only patterns of at most this weight.
    pub max_weight: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            model: FaultModel::default(),
            cap: 32,
            max_weight: None,
        }
    }
}

/// All records for one circuit, ordered by pattern.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub k: usize,
    pub outputs: Vec<QubitId>,
    pub max_weight: Option<usize>,
    pub records: Vec<OutcomeRecord>,
}

/// Prepared propagation context shared across patterns.
pub struct Propagator {
    compiled: Compiled,
    sites: Vec<Site>,
    positions: Vec<usize>,
}

impl Propagator {
    pub fn new(c: &Circuit, model: FaultModel) -> Result<Propagator, EngineError> {
        let compiled = Compiled::new(c)?;
        let sites = fault_sites(c, model);
        let positions = sites.iter().map(|s| compiled.position(s.qubit).expect("declared")).collect();
        Ok(Propagator {
            compiled,
            sites,
            positions,
        })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn run(&self, pattern: u64) -> Result<OutcomeRecord, EngineError> {
        if self.sites.len() < 64 && pattern >> self.sites.len() != 0 {
            return Err(EngineError::PatternOutOfRange {
                pattern,
                k: self.sites.len(),
            });
        }
        let inject: Vec<(usize, Vec<(usize, msd_pauli::Letter)>)> = (0..self.sites.len())
            .filter(|i| pattern >> i & 1 == 1)
            .map(|i| (self.sites[i].op_index, vec![(self.positions[i], self.sites[i].letter)]))
            .collect();
        let r = self.compiled.propagate(&inject)?;
        Ok(OutcomeRecord {
            pattern,
            accepted: r.accepted,
            residual: r.residual,
        })
    }
}

/// Injects the flagged faults, propagates, and classifies the outcome.
pub fn propagate_pattern(c: &Circuit, pattern: u64) -> Result<OutcomeRecord, EngineError> {
    Propagator::new(c, FaultModel::default())?.run(pattern)
}

/// Patterns of weight at most `w` over `k` sites, ascending.
pub fn patterns_up_to(k: usize, w: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, k: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        out.push(acc);
        if left == 0 {
            return;
        }
        for i in start..k {
            rec(i + 1, k, left - 1, acc | 1 << i, out);
        }
    }
    rec(0, k, w, 0, &mut out);
    out.sort_unstable();
    out
}

pub fn enumerate(c: &Circuit) -> Result<Enumeration, EngineError> {
    enumerate_with(c, &Options::default())
}

pub fn enumerate_with(c: &Circuit, opts: &Options) -> Result<Enumeration, EngineError> {
    let prop = Propagator::new(c, opts.model)?;
    let k = prop.sites.len();
    let patterns: Vec<u64> = match opts.max_weight {
        Some(w) if w < k => patterns_up_to(k, w),
        _ => {
            if k > opts.cap || k >= 64 {
                return Err(EngineError::TooManySites { k, cap: opts.cap });
            }
            (0..1u64 << k).collect()
        }
    };
    let records = run_all(&prop, &patterns)?;
    Ok(Enumeration {
        k,
        outputs: c.outputs().to_vec(),
        max_weight: opts.max_weight.filter(|&w| w < k),
        records,
    })
}

#[cfg(feature = "parallel")]
fn run_all(prop: &Propagator, patterns: &[u64]) -> Result<Vec<OutcomeRecord>, EngineError> {
    use rayon::prelude::*;
    // indexed collect keeps pattern order regardless of scheduling
    patterns.par_iter().map(|&p| prop.run(p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(prop: &Propagator, patterns: &[u64]) -> Result<Vec<OutcomeRecord>, EngineError> {
    patterns.iter().map(|&p| prop.run(p)).collect()
}

/// Sequential enumeration regardless of features, for comparison.
pub fn enumerate_sequential(c: &Circuit, opts: &Options) -> Result<Enumeration, EngineError> {
    let prop = Propagator::new(c, opts.model)?;
    let k = prop.sites.len();
    if k > opts.cap || k >= 64 {
        return Err(EngineError::TooManySites { k, cap: opts.cap });
    }
    let records = (0..1u64 << k).map(|p| prop.run(p)).collect::<Result<_, _>>()?;
    Ok(Enumeration {
        k,
        outputs: c.outputs().to_vec(),
        max_weight: None,
        records,
    })
}

impl Enumeration {
    fn check(&self) -> Result<(), EngineError> {
        let expected: usize = match self.max_weight {
            None => 1usize << self.k,
            Some(w) => (0..=w).map(|i| binomial(self.k, i)).sum(),
        };
        if self.records.len() != expected {
            return Err(EngineError::Incomplete {
                have: self.records.len(),
                expected,
            });
        }
        Ok(())
    }

    /// Σ over selected records of `p^w (1-p)^(k-w)`; truncated to the
    /// enumerated weight when the enumeration is partial.
    fn weigh(&self, keep: impl Fn(&OutcomeRecord) -> bool) -> Result<Poly, EngineError> {
        self.check()?;
        let mut by_weight = vec![0i128; self.k + 1];
        for r in self.records.iter().filter(|r| keep(r)) {
            by_weight[r.weight()] += 1;
        }
        let total: Poly = by_weight
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(w, &n)| Poly::bernoulli(w, self.k).scale(n.into()))
            .sum();
        Ok(match self.max_weight {
            Some(w) => total.truncate(w),
            None => total,
        })
    }

    pub fn acceptance_polynomial(&self) -> Result<Poly, EngineError> {
        self.weigh(|r| r.accepted)
    }

    pub fn rejection_polynomial(&self) -> Result<Poly, EngineError> {
        self.weigh(|r| !r.accepted)
    }

    /// Joint probability of acceptance with a nontrivial residual.
    pub fn joint_error_polynomial(&self) -> Result<Poly, EngineError> {
        self.weigh(|r| r.accepted && !r.is_trivial())
    }

    /// Accepted probability split by residual letters (in output order).
    pub fn class_distribution(&self) -> Result<BTreeMap<String, Poly>, EngineError> {
        let mut classes: BTreeMap<String, ()> = BTreeMap::new();
        for r in self.records.iter().filter(|r| r.accepted) {
            classes.insert(r.residual.letters_in_order(&self.outputs), ());
        }
        classes
            .into_keys()
            .map(|cls| {
                let p = self.weigh(|r| r.accepted && r.residual.letters_in_order(&self.outputs) == cls)?;
                Ok((cls, p))
            })
            .collect()
    }

    /// Per output, the joint probability of acceptance with a nontrivial
    /// letter on that output.
    pub fn marginal_error_polynomials(&self) -> Result<Vec<Poly>, EngineError> {
        self.outputs
            .iter()
            .map(|&q| self.weigh(|r| r.accepted && r.residual.letter(q).is_some_and(|l| l != Letter::I)))
            .collect()
    }

    /// Accepted records of the given weight with trivial residual.
    pub fn trivial_accepted_at(&self, w: usize) -> usize {
        self.records
            .iter()
            .filter(|r| r.accepted && r.weight() == w && r.is_trivial())
            .count()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
