//! Command-line front end. `run` takes the argument list and returns the
//! exit code with everything that would be printed, so tests can drive it
//! without a subprocess.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 the request was
//! rejected (bad arguments, unknown routine, unreadable rules file, or a
//! routine the requested analysis cannot handle).

mod identities;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use msd_circuit::serialize;
use msd_cost::{count_locations, table_one, CostRules};
use msd_engine::{class_model, toffoli_distill_distribution, Poly};
use msd_routines::{lookup, toffoli_distill, Protect, RoutineDescriptor, NAMES};
use serde_json::{json, Value};

pub use identities::{frame_cross_check, identity_suite, Check, TOLERANCE};
pub use report::{coeffs_json, coeffs_text, enumeration_report, Analysis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Target,
    #[value(name = "control-1")]
    Control1,
    #[value(name = "control-2")]
    Control2,
}

#[derive(Parser, Debug)]
#[command(name = "msd", version, about = "Magic-state distillation workbench")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(clap::Args, Debug)]
struct RoutineArg {
    /// Registered routine name (see `export --help` for the list).
    routine: String,
    /// Number of checked targets; only for h-to-toffoli.
    #[arg(long = "o")]
    o: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct RulesArg {
    /// TOML file of category weights; unspecified categories keep the
    /// defaults.
    #[arg(long, conflicts_with = "preset")]
    rules: Option<PathBuf>,
    /// Built-in weights: `default` or `literal`.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check every circuit identity against the state-vector oracle.
    VerifyIdentities {
        /// Also replay every fault pattern of h-to-toffoli densely.
        #[arg(long)]
        cross_check: bool,
    },
    /// List every fault pattern with its acceptance and residual.
    Enumerate {
        #[command(flatten)]
        r: RoutineArg,
        /// Only patterns of at most this many faults.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Acceptance, rejection and error polynomials.
    Polynomials {
        #[command(flatten)]
        r: RoutineArg,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Accepted probability split by residual error class.
    Classes {
        #[command(flatten)]
        r: RoutineArg,
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Toffoli-state distillation with every nontrivial input class at p.
    DistillToffoli {
        /// Which qubit the routine protects; all three when omitted.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
    },
    /// Costs and output errors next to the published comparison table.
    Table1 {
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Print a routine in the circuit text format.
    Export {
        #[command(flatten)]
        r: RoutineArg,
    },
    /// Location count of one routine.
    Count {
        #[command(flatten)]
        r: RoutineArg,
        #[command(flatten)]
        rules: RulesArg,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Every name `lookup` accepts, `h-to-toffoli-N` aside.
pub fn routine_names() -> Vec<&'static str> {
    NAMES.iter().copied().chain(std::iter::once("ten-to-two")).collect()
}

fn known(name: &str) -> bool {
    routine_names().contains(&name)
        || name
            .strip_prefix("h-to-toffoli-")
            .is_some_and(|n| n.parse::<usize>().is_ok_and(|o| o >= 2))
}

/// Resolves the routine before any computation happens.
fn resolve(r: &RoutineArg) -> Result<RoutineDescriptor, Outcome> {
    if !known(&r.routine) {
        return Err(Outcome::usage(format!(
            "unknown routine {:?}; known: {}",
            r.routine,
            routine_names().join(", ")
        )));
    }
    let name = match r.o {
        None => r.routine.clone(),
        Some(o) if r.routine == "h-to-toffoli" && o >= 2 => format!("h-to-toffoli-{o}"),
        Some(o) if r.routine == "h-to-toffoli" => return Err(Outcome::usage(format!("--o must be at least 2, got {o}"))),
        Some(_) => return Err(Outcome::usage("--o only applies to h-to-toffoli")),
    };
    lookup(&name).map_err(Outcome::usage)
}

fn rules_from(a: &RulesArg) -> Result<CostRules, Outcome> {
    match (&a.rules, &a.preset) {
        (Some(path), _) => CostRules::load(path).map_err(Outcome::usage),
        (None, Some(p)) => CostRules::preset(p).ok_or_else(|| Outcome::usage(format!("unknown preset {p:?}"))),
        (None, None) => Ok(CostRules::default()),
    }
}

fn emit(format: Format, value: &Value, text: String) -> Outcome {
    Outcome::ok(match format {
        Format::Json => serde_json::to_string_pretty(value).expect("json") + "\n",
        Format::Text => text,
    })
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let f = cli.format;
    match cli.verb {
        Verb::VerifyIdentities { cross_check } => verify(f, cross_check),
        Verb::Enumerate { r, max_weight } => analysed(&r, max_weight, |a, d| {
            let v = a.records_json(d);
            let t = a.records_text(d);
            emit(f, &v, t)
        }),
        Verb::Polynomials { r, max_weight } => analysed(&r, max_weight, |a, d| match a.polynomials(d) {
            Ok((v, t)) => emit(f, &v, t),
            Err(e) => Outcome::usage(format!("{}: {e}", d.name)),
        }),
        Verb::Classes { r, max_weight } => analysed(&r, max_weight, |a, d| match a.classes(d) {
            Ok(Some((v, t))) => emit(f, &v, t),
            Ok(None) => Outcome::usage(format!("{}: classes need the Pauli-frame engine", d.name)),
            Err(e) => Outcome::usage(format!("{}: {e}", d.name)),
        }),
        Verb::DistillToffoli { variant } => distill(f, variant),
        Verb::Table1 { rules } => match rules_from(&rules).and_then(|r| table_one(&r).map_err(Outcome::usage)) {
            Ok(t) => emit(f, &serde_json::to_value(&t).expect("json"), t.to_string()),
            Err(o) => o,
        },
        Verb::Export { r } => match resolve(&r) {
            Ok(d) => {
                let text = serialize(&d.circuit);
                emit(f, &json!({ "routine": d.name, "circuit": text }), text)
            }
            Err(o) => o,
        },
        Verb::Count { r, rules } => match resolve(&r).and_then(|d| rules_from(&rules).map(|ru| (d, ru))) {
            Ok((d, ru)) => {
                let rep = count_locations(&d.circuit, &ru);
                let mut v = serde_json::to_value(&rep).expect("json");
                v["routine"] = json!(d.name);
                v["quoted"] = json!(d.quoted_locations);
                emit(f, &v, report::count_text(&d, &rep))
            }
            Err(o) => o,
        },
    }
}

fn analysed(r: &RoutineArg, max_weight: Option<usize>, then: impl FnOnce(&Analysis, &RoutineDescriptor) -> Outcome) -> Outcome {
    let d = match resolve(r) {
        Ok(d) => d,
        Err(o) => return o,
    };
    match enumeration_report(&d, max_weight) {
        Ok(a) => then(&a, &d),
        Err(e) => Outcome::usage(format!("{}: {e}", d.name)),
    }
}

fn verify(f: Format, cross_check: bool) -> Outcome {
    let mut checks = identity_suite();
    if cross_check {
        let c = lookup("h-to-toffoli").expect("registered").circuit;
        let passed = matches!(frame_cross_check(&c), Ok((_, ref bad)) if bad.is_empty());
        checks.push(Check {
            name: "frame-cross-check",
            claim: "every h-to-toffoli fault pattern replays identically on the state vector",
            passed,
        });
    }
    let all = checks.iter().all(|c| c.passed);
    let v = json!({
        "tolerance": TOLERANCE,
        "passed": all,
        "checks": checks.iter().map(|c| json!({ "name": c.name, "claim": c.claim, "passed": c.passed })).collect::<Vec<_>>(),
    });
    let mut t = String::new();
    for c in &checks {
        t += &format!("{} {:<20} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.claim);
    }
    let mut out = emit(f, &v, t);
    if !all {
        out.code = EXIT_VERIFY;
    }
    out
}

const NONTRIVIAL: [&str; 7] = ["IIX", "IZI", "IZX", "ZII", "ZIX", "ZZI", "ZZX"];

fn distill(f: Format, variant: Option<Variant>) -> Outcome {
    let variants = match variant {
        Some(v) => vec![v],
        None => vec![Variant::Target, Variant::Control1, Variant::Control2],
    };
    let input = class_model(&NONTRIVIAL.iter().map(|k| (*k, Poly::p())).collect::<Vec<_>>());
    let mut values = Vec::new();
    let mut text = String::from("input: each of the 7 nontrivial classes at p\n");
    for v in variants {
        let (protect, pos, name) = match v {
            Variant::Target => (Protect::Target, 2, "target"),
            Variant::Control1 => (Protect::Control1, 0, "control-1"),
            Variant::Control2 => (Protect::Control2, 1, "control-2"),
        };
        let out = match toffoli_distill_distribution(&input, &toffoli_distill(protect)) {
            Ok(o) => o,
            Err(e) => return Outcome::usage(e),
        };
        let hit = |k: &str| k.as_bytes()[pos] != b'I';
        let sum = |keep: &dyn Fn(&str) -> bool| -> Poly {
            out.iter().filter(|(k, _)| keep(k)).map(|(_, p)| p.clone()).sum()
        };
        let protected = sum(&|k| hit(k));
        let other = sum(&|k| !hit(k) && k != "III");
        let accepted: Poly = out.values().cloned().sum();
        values.push(json!({
            "variant": name,
            "protected": coeffs_json(&protected),
            "unprotected": coeffs_json(&other),
            "acceptance": coeffs_json(&accepted),
            "classes": out.iter().map(|(k, p)| (k.clone(), coeffs_json(p))).collect::<serde_json::Map<_, _>>(),
        }));
        text += &format!("\nvariant {name}\n");
        text += &format!("  protected error    {}\n", coeffs_text(&protected));
        text += &format!("  unprotected error  {}\n", coeffs_text(&other));
        text += &format!("  acceptance         {}\n", coeffs_text(&accepted));
        for (k, p) in &out {
            text += &format!("  {k}  {}\n", coeffs_text(p));
        }
    }
    emit(f, &json!({ "input": "uniform", "variants": values }), text)
}
