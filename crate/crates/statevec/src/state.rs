use num_complex::Complex64;

use msd_circuit::{Macro, MagicKind};
use msd_pauli::{Gate, Letter, PauliString, QubitId};

use crate::SimError;

pub type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

/// Amplitudes over an explicit qubit list. The qubit at position `j` is
/// bit `j` of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: Vec<QubitId>,
    amps: Vec<C>,
}

impl Default for StateVector {
    fn default() -> Self {
        StateVector::empty()
    }
}

impl StateVector {
    /// The zero-qubit state `1`.
    pub fn empty() -> StateVector {
        StateVector {
            qubits: vec![],
            amps: vec![ONE],
        }
    }

    pub fn from_amplitudes(qubits: Vec<QubitId>, amps: Vec<C>) -> StateVector {
        assert_eq!(amps.len(), 1 << qubits.len(), "amplitude count");
        StateVector { qubits, amps }
    }

    /// Tensor product of one-qubit states.
    pub fn product(parts: &[(QubitId, [C; 2])]) -> StateVector {
        let mut s = StateVector::empty();
        for &(q, v) in parts {
            s.push_qubits(&[q], &v);
        }
        s
    }

    /// Computational basis state.
    pub fn basis(bits: &[(QubitId, bool)]) -> StateVector {
        let parts: Vec<_> = bits
            .iter()
            .map(|&(q, b)| (q, if b { [ZERO, ONE] } else { [ONE, ZERO] }))
            .collect();
        StateVector::product(&parts)
    }

    pub fn qubits(&self) -> &[QubitId] {
        &self.qubits
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn pos(&self, q: QubitId) -> Result<usize, SimError> {
        self.qubits
            .iter()
            .position(|&x| x == q)
            .ok_or(SimError::MissingQubit(q))
    }

    /// Appends fresh qubits in the given joint state (local bit `t` is `qs[t]`).
    pub fn push_qubits(&mut self, qs: &[QubitId], local: &[C]) {
        assert_eq!(local.len(), 1 << qs.len());
        let mut out = Vec::with_capacity(self.amps.len() * local.len());
        for &l in local {
            out.extend(self.amps.iter().map(|&a| a * l));
        }
        self.amps = out;
        self.qubits.extend_from_slice(qs);
    }

    /// Applies a `2^k × 2^k` row-major matrix to `qs`.
    pub fn apply_matrix(&mut self, qs: &[QubitId], m: &[C]) -> Result<(), SimError> {
        let k = qs.len();
        let dim = 1usize << k;
        assert_eq!(m.len(), dim * dim);
        let pos: Vec<usize> = qs.iter().map(|&q| self.pos(q)).collect::<Result<_, _>>()?;
        let mask: usize = pos.iter().map(|p| 1 << p).sum();
        let offsets: Vec<usize> = (0..dim)
            .map(|l| (0..k).filter(|t| l >> t & 1 == 1).map(|t| 1 << pos[t]).sum())
            .collect();
        let mut buf = vec![ZERO; dim];
        for base in 0..self.amps.len() {
            if base & mask != 0 {
                continue;
            }
            for (l, &o) in offsets.iter().enumerate() {
                buf[l] = self.amps[base | o];
            }
            for (r, &o) in offsets.iter().enumerate() {
                self.amps[base | o] = (0..dim).map(|c| m[r * dim + c] * buf[c]).sum();
            }
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<(), SimError> {
        let (qs, m) = gate_matrix(g);
        self.apply_matrix(&qs, &m)
    }

    pub fn apply_macro(&mut self, m: &Macro) -> Result<(), SimError> {
        let (qs, mat) = macro_matrix(m);
        self.apply_matrix(&qs, &mat)
    }

    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<(), SimError> {
        for (q, l) in p.factors() {
            if let Some(g) = letter_gate(q, l) {
                self.apply_gate(&g)?;
            }
        }
        Ok(())
    }

    /// Probability of reading `bit` on `q` in the Z basis.
    pub fn probability(&self, q: QubitId, bit: bool) -> Result<f64, SimError> {
        let p = self.pos(q)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> p & 1 == 1) == bit)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects `q` onto `bit`, removes it, and renormalizes.
    /// Returns the outcome probability; a zero-probability outcome leaves
    /// an all-zero vector.
    pub fn collapse(&mut self, q: QubitId, bit: bool) -> Result<f64, SimError> {
        let p = self.pos(q)?;
        let low = (1usize << p) - 1;
        let half = self.amps.len() / 2;
        let want = usize::from(bit) << p;
        let mut out = Vec::with_capacity(half);
        for j in 0..half {
            let i = (j & low) | ((j & !low) << 1) | want;
            out.push(self.amps[i]);
        }
        let prob: f64 = out.iter().map(|a| a.norm_sqr()).sum();
        if prob > 0.0 {
            let s = 1.0 / prob.sqrt();
            out.iter_mut().for_each(|a| *a *= s);
        }
        self.amps = out;
        self.qubits.remove(p);
        Ok(prob)
    }

    /// Reorders to `order`, which must be a permutation of the qubit list.
    pub fn permuted(&self, order: &[QubitId]) -> Result<StateVector, SimError> {
        if order.len() != self.qubits.len() {
            return Err(SimError::QubitSetMismatch);
        }
        let src: Vec<usize> = order.iter().map(|&q| self.pos(q)).collect::<Result<_, _>>()?;
        let mut amps = vec![ZERO; self.amps.len()];
        for (j, a) in amps.iter_mut().enumerate() {
            let i: usize = src.iter().enumerate().map(|(t, &p)| (j >> t & 1) << p).sum();
            *a = self.amps[i];
        }
        Ok(StateVector {
            qubits: order.to_vec(),
            amps,
        })
    }

    /// Reduced density matrix on `keep` (in that order), traced over the rest.
    pub fn reduced_density(&self, keep: &[QubitId]) -> Result<Density, SimError> {
        let mut order = keep.to_vec();
        order.extend(self.qubits.iter().filter(|q| !keep.contains(q)));
        let s = self.permuted(&order)?;
        let d = 1usize << keep.len();
        let rest = s.amps.len() / d;
        let mut m = vec![ZERO; d * d];
        for r in 0..rest {
            let block = &s.amps[r * d..(r + 1) * d];
            for i in 0..d {
                for j in 0..d {
                    m[i * d + j] += block[i] * block[j].conj();
                }
            }
        }
        Ok(Density { dim: d, m })
    }

    /// `|⟨a|b⟩|²` after aligning qubit order.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64, SimError> {
        let o = other.permuted(&self.qubits)?;
        let ip: C = self.amps.iter().zip(&o.amps).map(|(a, b)| a.conj() * b).sum();
        Ok(ip.norm_sqr())
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Density {
    pub dim: usize,
    pub m: Vec<C>,
}

impl Density {
    pub fn zeros(dim: usize) -> Density {
        Density {
            dim,
            m: vec![ZERO; dim * dim],
        }
    }

    pub fn add_scaled(&mut self, other: &Density, w: f64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.m.iter_mut().zip(&other.m) {
            *a += b * w;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.m[i * self.dim + i].re).sum()
    }

    pub fn max_diff(&self, other: &Density) -> f64 {
        self.m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `⟨ψ|ρ|ψ⟩` for a state on the same qubits in the same order.
    pub fn expectation(&self, psi: &[C]) -> f64 {
        let d = self.dim;
        let mut acc = ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += psi[i].conj() * self.m[i * d + j] * psi[j];
            }
        }
        acc.re
    }
}

fn letter_gate(q: QubitId, l: Letter) -> Option<Gate> {
    match l {
        Letter::I => None,
        Letter::X => Some(Gate::X(q)),
        Letter::Y => Some(Gate::Y(q)),
        Letter::Z => Some(Gate::Z(q)),
    }
}

/// Operands and row-major matrix of a gate. The first operand is local bit 0.
pub fn gate_matrix(g: &Gate) -> (Vec<QubitId>, Vec<C>) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let i = C::i();
    let m1 = |q, m: [C; 4]| (vec![q], m.to_vec());
    match *g {
        Gate::H(q) => m1(q, [re(h), re(h), re(h), re(-h)]),
        Gate::S(q) => m1(q, [ONE, ZERO, ZERO, i]),
        Gate::X(q) => m1(q, [ZERO, ONE, ONE, ZERO]),
        Gate::Y(q) => m1(q, [ZERO, -i, i, ZERO]),
        Gate::Z(q) => m1(q, [ONE, ZERO, ZERO, -ONE]),
        Gate::RotY { q, k } => {
            let t = f64::from(k) * std::f64::consts::FRAC_PI_4;
            let (c, s) = (t.cos(), t.sin());
            m1(q, [re(c), re(-s), re(s), re(c)])
        }
        Gate::RotZ { q, k } => {
            let t = f64::from(k) * std::f64::consts::FRAC_PI_4;
            m1(q, [C::from_polar(1.0, -t), ZERO, ZERO, C::from_polar(1.0, t)])
        }
        Gate::Cnot { control, target } => {
            // local bit 0 = control
            let mut m = vec![ZERO; 16];
            for l in 0..4usize {
                let out = if l & 1 == 1 { l ^ 2 } else { l };
                m[out * 4 + l] = ONE;
            }
            (vec![control, target], m)
        }
        Gate::Cz(a, b) => {
            let mut m = vec![ZERO; 16];
            for l in 0..4 {
                m[l * 4 + l] = if l == 3 { -ONE } else { ONE };
            }
            (vec![a, b], m)
        }
    }
}

fn diag_or_perm(n: usize, f: impl Fn(usize) -> (usize, C)) -> Vec<C> {
    let d = 1 << n;
    let mut m = vec![ZERO; d * d];
    for l in 0..d {
        let (out, ph) = f(l);
        m[out * d + l] = ph;
    }
    m
}

pub fn macro_matrix(m: &Macro) -> (Vec<QubitId>, Vec<C>) {
    match *m {
        Macro::Toffoli { c1, c2, target } => (
            vec![c1, c2, target],
            diag_or_perm(3, |l| (if l & 3 == 3 { l ^ 4 } else { l }, ONE)),
        ),
        Macro::Ccz(a, b, c) => (
            vec![a, b, c],
            diag_or_perm(3, |l| (l, if l == 7 { -ONE } else { ONE })),
        ),
        Macro::Margolus { c1, c2, target } => (
            vec![c1, c2, target],
            diag_or_perm(3, |l| {
                let out = if l & 3 == 3 { l ^ 4 } else { l };
                // c1 = 1, c2 = 0, t = 1
                (out, if out == 0b101 { -ONE } else { ONE })
            }),
        ),
        Macro::YQuarter { q, plus } => {
            let t = std::f64::consts::PI / 8.0;
            let s = if plus { t.sin() } else { -t.sin() };
            (vec![q], vec![re(t.cos()), re(-s), re(s), re(t.cos())])
        }
    }
}

/// Ideal magic state on `qs` (local bit `t` is `qs[t]`).
pub fn magic_state(kind: MagicKind) -> Vec<C> {
    match kind {
        MagicKind::H => {
            let t = std::f64::consts::PI / 8.0;
            vec![re(t.cos()), re(t.sin())]
        }
        MagicKind::PiOver4 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            vec![re(h), C::from_polar(h, std::f64::consts::FRAC_PI_4)]
        }
        MagicKind::Toffoli => {
            // |a b t⟩ with a = bit 0, b = bit 1, t = bit 2
            let mut v = vec![ZERO; 8];
            for l in [0b000, 0b001, 0b010, 0b111] {
                v[l] = re(0.5);
            }
            v
        }
    }
}

/// Dense matrix of a Pauli string in the order of `qubits` (bit 0 first).
pub fn pauli_matrix(p: &PauliString, qubits: &[QubitId]) -> Result<Vec<C>, SimError> {
    let n = qubits.len();
    let mut cols = Vec::with_capacity(1 << n);
    for l in 0..1usize << n {
        let bits: Vec<(QubitId, bool)> = qubits.iter().enumerate().map(|(t, &q)| (q, l >> t & 1 == 1)).collect();
        let mut s = StateVector::basis(&bits);
        s.apply_pauli(p)?;
        cols.push(s.amps);
    }
    let (a, b) = p.phase().to_complex_parts();
    let ph = C::new(a, b);
    let d = 1 << n;
    let mut m = vec![ZERO; d * d];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..d {
            m[r * d + c] = col[r] * ph;
        }
    }
    Ok(m)
}
