use std::fmt::Write;

use msd_circuit::Role;
use msd_cost::{Category, CostReport};
use msd_engine::{dense_enumerate, enumerate_with, DenseEnumeration, EngineError, Enumeration, FaultModel, Options, Poly, Q};
use msd_routines::RoutineDescriptor;
use msd_statevec::magic_state;
use serde_json::{json, Value};

fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        json!(*q.numer() as i64)
    } else {
        json!(q.to_string())
    }
}

/// Coefficients lowest degree first, plus the readable form.
pub fn coeffs_json(p: &Poly) -> Value {
    json!({
        "coefficients": p.coeffs().iter().map(q_json).collect::<Vec<_>>(),
        "expression": p.to_string(),
    })
}

pub fn coeffs_text(p: &Poly) -> String {
    let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let cs = if cs.is_empty() { "0".to_string() } else { cs.join(" ") };
    format!("[{cs}]  {p}")
}

/// Result of enumerating a routine: by Pauli frame when every correction
/// stays Clifford under faults, densely otherwise.
pub enum Analysis {
    Frame(Enumeration),
    Dense(DenseEnumeration),
}

pub fn enumeration_report(d: &RoutineDescriptor, max_weight: Option<usize>) -> Result<Analysis, EngineError> {
    let opts = Options {
        max_weight,
        ..Default::default()
    };
    match enumerate_with(&d.circuit, &opts) {
        Ok(e) => Ok(Analysis::Frame(e)),
        Err(EngineError::FlippedClifford { .. }) if !d.output_roles.contains(&Role::Target) => {
            // one-qubit outputs: compare each with the magic state it distils
            let kind = d.circuit.magic_sites()[0].kind;
            let s = magic_state(kind);
            let ideal = vec![[s[0], s[1]]; d.output_roles.len()];
            Ok(Analysis::Dense(dense_enumerate(&d.circuit, FaultModel::default(), &ideal, max_weight)?))
        }
        Err(e) => Err(e),
    }
}

fn bits(pattern: u64, k: usize) -> String {
    (0..k).map(|i| if pattern >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn scope(k: usize, max_weight: Option<usize>) -> String {
    match max_weight {
        None => format!("{k} fault sites, all {} patterns", 1u128 << k),
        Some(w) => format!("{k} fault sites, patterns of weight <= {w} (exact through p^{w})"),
    }
}

fn roles(d: &RoutineDescriptor) -> Vec<&'static str> {
    d.output_roles.iter().map(|r| r.token()).collect()
}

impl Analysis {
    fn k(&self) -> usize {
        match self {
            Analysis::Frame(e) => e.k,
            Analysis::Dense(e) => e.k,
        }
    }

    fn max_weight(&self) -> Option<usize> {
        match self {
            Analysis::Frame(e) => e.max_weight,
            Analysis::Dense(e) => e.max_weight,
        }
    }

    fn engine(&self) -> &'static str {
        match self {
            Analysis::Frame(_) => "frame",
            Analysis::Dense(_) => "dense",
        }
    }

    fn header(&self, d: &RoutineDescriptor) -> Value {
        json!({
            "routine": d.name,
            "engine": self.engine(),
            "sites": self.k(),
            "max_weight": self.max_weight(),
            "outputs": roles(d),
        })
    }

    fn header_text(&self, d: &RoutineDescriptor) -> String {
        format!(
            "routine {} ({} engine): {}\noutputs: {}\n",
            d.name,
            self.engine(),
            scope(self.k(), self.max_weight()),
            roles(d).join(" ")
        )
    }

    pub fn records_json(&self, d: &RoutineDescriptor) -> Value {
        let k = self.k();
        let records: Vec<Value> = match self {
            Analysis::Frame(e) => e
                .records
                .iter()
                .map(|r| {
                    json!({
                        "pattern": bits(r.pattern, k),
                        "weight": r.weight(),
                        "accepted": r.accepted,
                        "residual": r.accepted.then(|| r.residual.letters_in_order(&e.outputs)),
                    })
                })
                .collect(),
            Analysis::Dense(e) => e
                .records
                .iter()
                .map(|r| {
                    json!({
                        "pattern": bits(r.pattern, k),
                        "weight": r.pattern.count_ones(),
                        "acceptance": q_json(&r.acceptance),
                        "output_error": r.output_error.iter().map(q_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        };
        let mut v = self.header(d);
        v["records"] = json!(records);
        v
    }

    pub fn records_text(&self, d: &RoutineDescriptor) -> String {
        let k = self.k();
        let mut s = self.header_text(d);
        match self {
            Analysis::Frame(e) => {
                for r in &e.records {
                    let res = if r.accepted {
                        r.residual.letters_in_order(&e.outputs)
                    } else {
                        "rejected".into()
                    };
                    let _ = writeln!(s, "{} {} {res}", bits(r.pattern, k), r.weight());
                }
            }
            Analysis::Dense(e) => {
                for r in &e.records {
                    let errs: Vec<String> = r.output_error.iter().map(|q| q.to_string()).collect();
                    let _ = writeln!(s, "{} {} {} {}", bits(r.pattern, k), r.pattern.count_ones(), r.acceptance, errs.join(" "));
                }
            }
        }
        s
    }

    /// Named polynomials: acceptance, rejection and joint error where the
    /// frame engine applies, and one marginal per output.
    fn named_polys(&self) -> Result<Vec<(String, Poly)>, EngineError> {
        let mut out = Vec::new();
        match self {
            Analysis::Frame(e) => {
                out.push(("acceptance".into(), e.acceptance_polynomial()?));
                out.push(("rejection".into(), e.rejection_polynomial()?));
                out.push(("error".into(), e.joint_error_polynomial()?));
                for (i, m) in e.marginal_error_polynomials()?.into_iter().enumerate() {
                    out.push((format!("marginal-{i}"), m));
                }
            }
            Analysis::Dense(e) => {
                out.push(("acceptance".into(), e.acceptance_polynomial()));
                for (i, m) in e.marginal_error_polynomials().into_iter().enumerate() {
                    out.push((format!("marginal-{i}"), m));
                }
            }
        }
        Ok(out)
    }

    pub fn polynomials(&self, d: &RoutineDescriptor) -> Result<(Value, String), EngineError> {
        let polys = self.named_polys()?;
        let mut v = self.header(d);
        let mut t = self.header_text(d);
        for (name, p) in &polys {
            v[name.as_str()] = coeffs_json(p);
            let label = match name.as_str() {
                "acceptance" => "a(p)".to_string(),
                "rejection" => "1-a(p)".to_string(),
                "error" => "e(p)a(p)".to_string(),
                m => {
                    let i: usize = m.trim_start_matches("marginal-").parse().expect("index");
                    format!("marginal {}", d.output_roles[i].token())
                }
            };
            let _ = writeln!(t, "{label:<20} {}", coeffs_text(p));
        }
        Ok((v, t))
    }

    pub fn classes(&self, d: &RoutineDescriptor) -> Result<Option<(Value, String)>, EngineError> {
        let Analysis::Frame(e) = self else {
            return Ok(None);
        };
        let classes = e.class_distribution()?;
        let mut v = self.header(d);
        v["classes"] = classes.iter().map(|(k, p)| (k.clone(), coeffs_json(p))).collect::<serde_json::Map<_, _>>().into();
        let mut t = self.header_text(d);
        for (k, p) in &classes {
            let _ = writeln!(t, "{k:<8} {}", coeffs_text(p));
        }
        Ok(Some((v, t)))
    }
}

pub fn count_text(d: &RoutineDescriptor, rep: &CostReport) -> String {
    let mut t = format!("routine {}\n", d.name);
    for c in Category::ALL {
        if let Some(ch) = rep.breakdown.get(&c) {
            let _ = writeln!(t, "  {:<24} {:>4} x {:<2} = {}", c.name(), ch.count, ch.weight, ch.locations());
        }
    }
    let _ = writeln!(t, "total {} locations, {} per output", rep.total, rep.per_output);
    if let Some(q) = d.quoted_locations {
        let note = if rep.total == msd_cost::Rational::from_integer(i64::from(q)) { "reproduced" } else { "not reproduced" };
        let _ = writeln!(t, "quoted {q} ({note})");
    }
    t
}
