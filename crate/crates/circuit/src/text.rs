//! Line-oriented text format, one op per line.
//!
//! ```text
//! # Y(+π/4) on q0 using one |H⟩
//! QUBIT q0 data input
//! QUBIT q1 magic-input
//! PREP_MAGIC H q1
//! H q1 @gadget
//! CNOT q0 q1
//! MEASURE_Z q1 -> m0
//! IF m0 THEN RY 1 q0
//! OUTPUT q0
//! ```
//!
//! A leading `~` marks an op as unencoded, a trailing `@name` attaches a
//! label. Qubits first seen in a preparation are declared implicitly.

use std::fmt::Write as _;

use msd_pauli::Gate;

use crate::{BitId, Circuit, CircuitError, Instr, Macro, MagicKind, Op, Parity, QubitId, Role};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn serialize(c: &Circuit) -> String {
    let mut s = String::new();
    for d in c.decls() {
        let _ = write!(s, "QUBIT q{} {}", d.id, d.role.token());
        if d.input {
            s.push_str(" input");
        }
        s.push('\n');
    }
    for ins in c.ops() {
        if ins.unencoded {
            s.push('~');
        }
        s.push_str(&op_text(&ins.op));
        if let Some(l) = &ins.label {
            let _ = write!(s, " @{l}");
        }
        s.push('\n');
    }
    if !c.outputs().is_empty() {
        s.push_str("OUTPUT");
        for q in c.outputs() {
            let _ = write!(s, " q{q}");
        }
        s.push('\n');
    }
    s
}

fn op_text(op: &Op) -> String {
    match op {
        Op::Gate(g) => g.to_string(),
        Op::PrepZero(q) => format!("PREP_ZERO q{q}"),
        Op::PrepPlus(q) => format!("PREP_PLUS q{q}"),
        Op::PrepMagic { kind, qubits } => {
            let qs: Vec<String> = qubits.iter().map(|q| format!("q{q}")).collect();
            format!("PREP_MAGIC {} {}", kind.token(), qs.join(" "))
        }
        Op::MeasureZ { qubit, bit } => format!("MEASURE_Z q{qubit} -> m{bit}"),
        Op::MeasureX { qubit, bit } => format!("MEASURE_X q{qubit} -> m{bit}"),
        Op::Conditioned { parity, gate } => format!("IF {parity} THEN {gate}"),
        Op::Discard { parity, value } => format!("DISCARD {parity} {}", u8::from(*value)),
        Op::Macro(Macro::Toffoli { c1, c2, target }) => format!("TOFFOLI q{c1} q{c2} q{target}"),
        Op::Macro(Macro::Margolus { c1, c2, target }) => format!("MARGOLUS q{c1} q{c2} q{target}"),
        Op::Macro(Macro::Ccz(a, b, c)) => format!("CCZ q{a} q{b} q{c}"),
        Op::Macro(Macro::YQuarter { q, plus }) => {
            format!("YQUARTER {} q{q}", if *plus { '+' } else { '-' })
        }
        Op::Decode(q) => format!("DECODE q{q}"),
    }
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str, line: usize, base_col: usize) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    items.push((base_col + s, &text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            items.push((base_col + s, &text[s..]));
        }
        Tokens {
            items,
            pos: 0,
            line,
            end_col: base_col + text.len(),
        }
    }

    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: col,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let t = self
            .items
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.err(self.end_col, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|t| t.1)
    }

    fn qubit(&mut self) -> Result<QubitId, ParseError> {
        let (col, t) = self.next("qubit")?;
        t.strip_prefix('q')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| self.err(col, format!("bad qubit {t:?}")))
    }

    fn bit(&mut self) -> Result<BitId, ParseError> {
        let (col, t) = self.next("bit")?;
        parse_bit(t).ok_or_else(|| self.err(col, format!("bad bit {t:?}")))
    }

    fn int(&mut self) -> Result<i32, ParseError> {
        let (col, t) = self.next("integer")?;
        t.parse().map_err(|_| self.err(col, format!("bad integer {t:?}")))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (col, t) = self.next(kw)?;
        if t == kw {
            Ok(())
        } else {
            Err(self.err(col, format!("expected {kw}, found {t:?}")))
        }
    }

    fn parity(&mut self) -> Result<Parity, ParseError> {
        let (col, t) = self.next("parity")?;
        let (negate, body) = match t.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if body == "0" {
            return Ok(Parity { bits: vec![], negate });
        }
        let bits = body
            .split('^')
            .map(parse_bit)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| self.err(col, format!("bad parity {t:?}")))?;
        Ok(Parity { bits, negate })
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some((col, t)) => Err(self.err(*col, format!("unexpected token {t:?}"))),
        }
    }
}

fn parse_bit(t: &str) -> Option<BitId> {
    t.strip_prefix('m').and_then(|n| n.parse().ok())
}

fn parse_gate(tk: &mut Tokens<'_>) -> Result<Gate, ParseError> {
    let (col, name) = tk.next("gate")?;
    Ok(match name {
        "H" => Gate::H(tk.qubit()?),
        "S" => Gate::S(tk.qubit()?),
        "X" => Gate::X(tk.qubit()?),
        "Y" => Gate::Y(tk.qubit()?),
        "Z" => Gate::Z(tk.qubit()?),
        "RY" => {
            let k = tk.int()?;
            Gate::rot_y(tk.qubit()?, k)
        }
        "RZ" => {
            let k = tk.int()?;
            Gate::rot_z(tk.qubit()?, k)
        }
        "CNOT" => Gate::Cnot {
            control: tk.qubit()?,
            target: tk.qubit()?,
        },
        "CZ" => Gate::Cz(tk.qubit()?, tk.qubit()?),
        other => return Err(tk.err(col, format!("unknown gate {other:?}"))),
    })
}

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut c = Circuit::new();
    let mut outputs: Option<(usize, Vec<QubitId>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let mut rest = &body[lead..];
        let mut col = lead + 1;
        let unencoded = rest.starts_with('~');
        if unencoded {
            rest = &rest[1..];
            col += 1;
        }
        let (rest, label) = match rest.find('@') {
            Some(at) => {
                let l = rest[at + 1..].trim();
                if l.is_empty() || l.contains(char::is_whitespace) {
                    return Err(ParseError {
                        line,
                        column: col + at,
                        message: "labels are single tokens".into(),
                    });
                }
                (&rest[..at], Some(l.to_string()))
            }
            None => (rest, None),
        };
        let mut tk = Tokens::new(rest, line, col);
        let (kcol, kw) = tk.next("op")?;
        let op = match kw {
            "QUBIT" => {
                let q = tk.qubit()?;
                let (rcol, r) = tk.next("role")?;
                let role = Role::from_token(r).ok_or_else(|| tk.err(rcol, format!("unknown role {r:?}")))?;
                let input = match tk.peek() {
                    Some("input") => {
                        tk.pos += 1;
                        true
                    }
                    _ => false,
                };
                tk.done()?;
                c.declare_with_id(q, role, input).map_err(|e| tk.err(kcol, e.to_string()))?;
                continue;
            }
            "OUTPUT" => {
                let mut qs = Vec::new();
                while tk.peek().is_some() {
                    qs.push(tk.qubit()?);
                }
                outputs = Some((line, qs));
                continue;
            }
            "PREP_ZERO" => Op::PrepZero(tk.qubit()?),
            "PREP_PLUS" => Op::PrepPlus(tk.qubit()?),
            "PREP_MAGIC" => {
                let (mcol, m) = tk.next("magic kind")?;
                let kind = match m {
                    "H" => MagicKind::H,
                    "PI4" => MagicKind::PiOver4,
                    "TOFFOLI" => MagicKind::Toffoli,
                    _ => return Err(tk.err(mcol, format!("unknown magic kind {m:?}"))),
                };
                let mut qubits = Vec::new();
                for _ in 0..kind.arity() {
                    qubits.push(tk.qubit()?);
                }
                Op::PrepMagic { kind, qubits }
            }
            "MEASURE_Z" | "MEASURE_X" => {
                let qubit = tk.qubit()?;
                tk.keyword("->")?;
                let bit = tk.bit()?;
                if kw == "MEASURE_Z" {
                    Op::MeasureZ { qubit, bit }
                } else {
                    Op::MeasureX { qubit, bit }
                }
            }
            "IF" => {
                let parity = tk.parity()?;
                tk.keyword("THEN")?;
                Op::Conditioned {
                    parity,
                    gate: parse_gate(&mut tk)?,
                }
            }
            "DISCARD" => {
                let parity = tk.parity()?;
                let v = tk.int()?;
                if v != 0 && v != 1 {
                    return Err(tk.err(kcol, "discard value must be 0 or 1"));
                }
                Op::Discard { parity, value: v == 1 }
            }
            "TOFFOLI" | "MARGOLUS" | "CCZ" => {
                let (a, b, t) = (tk.qubit()?, tk.qubit()?, tk.qubit()?);
                Op::Macro(match kw {
                    "TOFFOLI" => Macro::Toffoli { c1: a, c2: b, target: t },
                    "MARGOLUS" => Macro::Margolus { c1: a, c2: b, target: t },
                    _ => Macro::Ccz(a, b, t),
                })
            }
            "YQUARTER" => {
                let (scol, s) = tk.next("sign")?;
                let plus = match s {
                    "+" => true,
                    "-" => false,
                    _ => return Err(tk.err(scol, "sign must be + or -")),
                };
                Op::Macro(Macro::YQuarter { q: tk.qubit()?, plus })
            }
            "DECODE" => Op::Decode(tk.qubit()?),
            _ => {
                tk.pos -= 1;
                Op::Gate(parse_gate(&mut tk)?)
            }
        };
        tk.done()?;
        if op.is_preparation() {
            let role = if matches!(op, Op::PrepMagic { .. }) {
                Role::MagicInput
            } else {
                Role::Ancilla
            };
            for q in op.qubits() {
                if c.decl(q).is_none() {
                    c.declare_with_id(q, role, false).map_err(|e| tk.err(kcol, e.to_string()))?;
                }
            }
        }
        c.push(Instr { op, label, unencoded })
            .map_err(|e: CircuitError| tk.err(kcol, e.to_string()))?;
    }
    if let Some((line, qs)) = outputs {
        c.set_outputs(qs).map_err(|e| ParseError {
            line,
            column: 1,
            message: e.to_string(),
        })?;
    }
    Ok(c)
}
