//! Pattern enumeration through the state-vector oracle, for routines whose
//! corrections depend on faults in ways a Pauli frame cannot follow.

use msd_circuit::Circuit;
use msd_statevec::{simulate, with_faults, C};

use crate::enumerate::{binomial, fault_sites, patterns_up_to, FaultModel};
use crate::poly::{Poly, Q};
use crate::EngineError;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseRecord {
    pub pattern: u64,
    pub acceptance: Q,
    /// Per output, the joint probability of acceptance and a wrong output
    /// (one minus fidelity with the ideal one-qubit state).
    pub output_error: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct DenseEnumeration {
    pub k: usize,
    pub max_weight: Option<usize>,
    pub records: Vec<DenseRecord>,
}

/// Nearest fraction with denominator at most 2^16, if it is within 1e-11.
pub fn snap(x: f64) -> Option<Q> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > 1 << 16 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-12 || r - a < 1e-12 {
            break;
        }
        r = 1.0 / (r - a);
    }
    let q = Q::new(h1, k1);
    ((h1 as f64 / k1 as f64) - x).abs().lt(&1e-11).then_some(q)
}

/// Simulates every pattern of weight at most `max_weight` (all patterns
/// when `None`). `ideal[j]` is the intended state of output `j`.
pub fn dense_enumerate(
    c: &Circuit,
    model: FaultModel,
    ideal: &[[C; 2]],
    max_weight: Option<usize>,
) -> Result<DenseEnumeration, EngineError> {
    let sites = fault_sites(c, model);
    let k = sites.len();
    let outputs = c.outputs();
    if ideal.len() != outputs.len() {
        return Err(EngineError::OutputMismatch);
    }
    let patterns = patterns_up_to(k, max_weight.unwrap_or(k).min(k));
    let mut records = Vec::with_capacity(patterns.len());
    for pattern in patterns {
        let faults: Vec<_> = (0..k)
            .filter(|i| pattern >> i & 1 == 1)
            .map(|i| (sites[i].op_index, sites[i].qubit, sites[i].letter))
            .collect();
        let sim = simulate(&with_faults(c, &faults)?, None)?;
        let mut err = vec![0.0; outputs.len()];
        for b in &sim.accepted {
            for (j, &q) in outputs.iter().enumerate() {
                let rho = b.state.reduced_density(&[q])?;
                err[j] += b.probability * (1.0 - rho.expectation(&ideal[j]));
            }
        }
        let s = |x: f64| snap(x).ok_or(EngineError::NotRational(x));
        records.push(DenseRecord {
            pattern,
            acceptance: s(sim.acceptance())?,
            output_error: err.into_iter().map(s).collect::<Result<_, _>>()?,
        });
    }
    Ok(DenseEnumeration {
        k,
        max_weight: max_weight.filter(|&w| w < k),
        records,
    })
}

impl DenseEnumeration {
    fn weigh(&self, value: impl Fn(&DenseRecord) -> Q) -> Poly {
        let total: Poly = self
            .records
            .iter()
            .map(|r| Poly::bernoulli(r.pattern.count_ones() as usize, self.k).scale(value(r)))
            .sum();
        match self.max_weight {
            Some(w) => total.truncate(w),
            None => total,
        }
    }

    pub fn expected_records(&self) -> usize {
        match self.max_weight {
            None => 1 << self.k,
            Some(w) => (0..=w).map(|i| binomial(self.k, i)).sum(),
        }
    }

    pub fn acceptance_polynomial(&self) -> Poly {
        self.weigh(|r| r.acceptance)
    }

    pub fn marginal_error_polynomials(&self) -> Vec<Poly> {
        let n = self.records.first().map_or(0, |r| r.output_error.len());
        (0..n).map(|j| self.weigh(|r| r.output_error[j])).collect()
    }
}
