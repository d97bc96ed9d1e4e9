use std::collections::BTreeMap;
use std::fmt;

use crate::{Letter, PauliError, Phase, QubitId};

/// `i^k` times a tensor product of letters over an explicit qubit set.
///
/// Identity factors are stored, so the qubit set is exactly the key set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: Phase,
    factors: BTreeMap<QubitId, Letter>,
}

impl PauliString {
    pub fn identity<I: IntoIterator<Item = QubitId>>(qubits: I) -> Self {
        PauliString {
            phase: Phase::ONE,
            factors: qubits.into_iter().map(|q| (q, Letter::I)).collect(),
        }
    }

    pub fn from_factors<I: IntoIterator<Item = (QubitId, Letter)>>(phase: Phase, factors: I) -> Self {
        PauliString {
            phase,
            factors: factors.into_iter().collect(),
        }
    }

    /// Single non-trivial letter on `q`, identity on the rest of `qubits`.
    pub fn single<I: IntoIterator<Item = QubitId>>(qubits: I, q: QubitId, letter: Letter) -> Self {
        let mut p = PauliString::identity(qubits);
        p.factors.insert(q, letter);
        p
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        self.factors.keys().copied()
    }

    pub fn factors(&self) -> impl Iterator<Item = (QubitId, Letter)> + '_ {
        self.factors.iter().map(|(&q, &l)| (q, l))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, q: QubitId) -> bool {
        self.factors.contains_key(&q)
    }

    /// Letter on `q`, or `None` when `q` is outside the qubit set.
    pub fn letter(&self, q: QubitId) -> Option<Letter> {
        self.factors.get(&q).copied()
    }

    pub fn set_letter(&mut self, q: QubitId, letter: Letter) -> Result<(), PauliError> {
        match self.factors.get_mut(&q) {
            Some(slot) => {
                *slot = letter;
                Ok(())
            }
            None => Err(PauliError::MissingQubit(q)),
        }
    }

    /// Adds `q` to the qubit set with an identity factor (no-op if present).
    pub fn extend_identity(&mut self, q: QubitId) {
        self.factors.entry(q).or_insert(Letter::I);
    }

    /// Removes `q` from the qubit set, returning its letter.
    pub fn remove(&mut self, q: QubitId) -> Option<Letter> {
        self.factors.remove(&q)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.factors.values().filter(|l| !l.is_identity()).count()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.weight() == 0
    }

    pub fn same_qubits(&self, other: &PauliString) -> bool {
        self.factors.len() == other.factors.len() && self.factors.keys().eq(other.factors.keys())
    }

    fn check_same(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.same_qubits(other) {
            Ok(())
        } else {
            Err(PauliError::QubitSetMismatch {
                left: self.qubits().collect(),
                right: other.qubits().collect(),
            })
        }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.phase *= other.phase;
        for (q, b) in other.factors() {
            let slot = out.factors.get_mut(&q).expect("same qubit set");
            let (k, c) = slot.mul(b);
            out.phase *= k;
            *slot = c;
        }
        Ok(out)
    }

    /// In-place right multiplication by `letter` on `q`.
    pub fn mul_letter(&mut self, q: QubitId, letter: Letter) -> Result<(), PauliError> {
        let slot = self.factors.get_mut(&q).ok_or(PauliError::MissingQubit(q))?;
        let (k, c) = slot.mul(letter);
        self.phase *= k;
        *slot = c;
        Ok(())
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_same(other)?;
        let anti = self
            .factors
            .values()
            .zip(other.factors.values())
            .filter(|(a, b)| !a.commutes_with(**b))
            .count();
        Ok(anti % 2 == 0)
    }

    /// Same letters with phase `+1`.
    pub fn unsigned(&self) -> PauliString {
        PauliString {
            phase: Phase::ONE,
            factors: self.factors.clone(),
        }
    }

    /// Restriction to `qubits` (in the given set), phase dropped.
    pub fn restrict(&self, qubits: &[QubitId]) -> Result<PauliString, PauliError> {
        let mut factors = BTreeMap::new();
        for &q in qubits {
            let l = self.letter(q).ok_or(PauliError::MissingQubit(q))?;
            factors.insert(q, l);
        }
        Ok(PauliString {
            phase: Phase::ONE,
            factors,
        })
    }

    /// Letters only, in ascending qubit order, e.g. `"XIZ"`.
    pub fn letters_string(&self) -> String {
        self.factors.values().map(|l| l.as_char()).collect()
    }

    /// Letters in the order of `qubits`; missing qubits read as `I`.
    pub fn letters_in_order(&self, qubits: &[QubitId]) -> String {
        qubits
            .iter()
            .map(|q| self.letter(*q).unwrap_or(Letter::I).as_char())
            .collect()
    }

    /// Parses `"+XIZ"`, `"-iY"`, `"ZZ"` onto qubits `0..n`.
    pub fn parse(text: &str) -> Result<PauliString, PauliError> {
        let err = || PauliError::Parse(text.to_string());
        let (phase, body) = if let Some(rest) = text.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = text.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = text.strip_prefix('+') {
            (Phase::ONE, rest)
        } else if let Some(rest) = text.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else {
            (Phase::ONE, text)
        };
        if body.is_empty() {
            return Err(err());
        }
        let mut factors = BTreeMap::new();
        for (i, c) in body.chars().enumerate() {
            factors.insert(i as QubitId, Letter::from_char(c).ok_or_else(err)?);
        }
        Ok(PauliString { phase, factors })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase, self.letters_string())
    }
}
