use msd_circuit::{parse, Circuit, Op, Role};
use msd_pauli::{Gate, Letter, PauliString, Phase};
use msd_statevec::{
    channel_equivalent, gate_matrix, pauli_matrix, simulate, unitary_equivalent, with_faults, Simulator, StateVector, C,
};
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn matmul(a: &[C], b: &[C], d: usize) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum();
        }
    }
    out
}

fn dagger(a: &[C], d: usize) -> Vec<C> {
    let mut out = a.to_vec();
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = a[j * d + i].conj();
        }
    }
    out
}

/// Embeds a gate on (0,1) or (0) into the 2-qubit space as a dense matrix.
fn gate_on_two(g: &Gate) -> Vec<C> {
    let mut cols = Vec::new();
    for l in 0..4usize {
        let mut s = StateVector::basis(&[(0, l & 1 == 1), (1, l & 2 == 2)]);
        s.apply_gate(g).unwrap();
        cols.push(s.amplitudes().to_vec());
    }
    let mut m = vec![C::new(0.0, 0.0); 16];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..4 {
            m[r * 4 + c] = col[r];
        }
    }
    m
}

fn all_gates() -> Vec<Gate> {
    let mut v = vec![
        Gate::H(0),
        Gate::S(0),
        Gate::X(0),
        Gate::Y(0),
        Gate::Z(0),
        Gate::H(1),
        Gate::S(1),
        Gate::Cnot { control: 0, target: 1 },
        Gate::Cnot { control: 1, target: 0 },
        Gate::Cz(0, 1),
    ];
    for k in 0..4 {
        v.push(Gate::rot_y(0, k));
        v.push(Gate::rot_z(1, k));
    }
    v
}

#[test]
fn dense_conjugation_matches_pauli_rules() {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    for g in all_gates() {
        let u = gate_on_two(&g);
        let ud = dagger(&u, 4);
        for &a in &letters {
            for &b in &letters {
                for ph in 0..4 {
                    let p = PauliString::from_factors(Phase::new(ph), [(0, a), (1, b)]);
                    let dense = matmul(&matmul(&u, &pauli_matrix(&p, &[0, 1]).unwrap(), 4), &ud, 4);
                    let rule = pauli_matrix(&g.conjugate(&p).unwrap(), &[0, 1]).unwrap();
                    let diff = dense.iter().zip(&rule).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                    assert!(diff < 1e-12, "{g} on {p}: {diff}");
                }
            }
        }
    }
}

#[test]
fn gate_matrices_are_unitary() {
    for g in all_gates() {
        let (qs, m) = gate_matrix(&g);
        let d = 1 << qs.len();
        let p = matmul(&m, &dagger(&m, d), d);
        for i in 0..d {
            for j in 0..d {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p[i * d + j] - C::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn empty_circuit_on_zero() {
    let c = parse("QUBIT q0 data input\nOUTPUT q0\n").unwrap();
    let sim = simulate(&c, None).unwrap();
    assert_eq!(sim.accepted.len(), 1);
    assert!((sim.accepted[0].probability - 1.0).abs() < TOL);
    assert_eq!(sim.accepted[0].state, StateVector::basis(&[(0, false)]));
}

#[test]
fn toffoli_on_plus_plus_zero_gives_toffoli_state() {
    let c = parse(
        "PREP_PLUS q0\nPREP_PLUS q1\nPREP_ZERO q2\nTOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n",
    )
    .unwrap();
    let direct = parse("PREP_MAGIC TOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n").unwrap();
    let a = simulate(&c, None).unwrap();
    let b = simulate(&direct, None).unwrap();
    assert_eq!(a.accepted.len(), 1);
    assert!(a.accepted[0].state.fidelity(&b.accepted[0].state).unwrap() > 1.0 - TOL);
}

#[test]
fn identity_and_margolus_distinctions() {
    let id = parse("QUBIT q0 data input\nOUTPUT q0\n").unwrap();
    let hh = parse("QUBIT q0 data input\nH q0\nH q0\nOUTPUT q0\n").unwrap();
    assert!(unitary_equivalent(&id, &hh, TOL).unwrap());

    let head = "QUBIT q0 control-1 input\nQUBIT q1 control-2 input\nQUBIT q2 target input\n";
    let tof = parse(&format!("{head}TOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n")).unwrap();
    let mar = parse(&format!("{head}MARGOLUS q0 q1 q2\nOUTPUT q0 q1 q2\n")).unwrap();
    assert!(!unitary_equivalent(&tof, &mar, TOL).unwrap());
    // the difference is exactly a sign on |c1=1, c2=0, t=1⟩
    let fixed = parse(&format!(
        "{head}MARGOLUS q0 q1 q2\nX q1\nCCZ q0 q1 q2\nX q1\nOUTPUT q0 q1 q2\n"
    ))
    .unwrap();
    assert!(unitary_equivalent(&tof, &fixed, TOL).unwrap());

    let mut s = StateVector::basis(&[(0, true), (1, true), (2, false)]);
    s.apply_macro(&msd_circuit::Macro::Margolus { c1: 0, c2: 1, target: 2 }).unwrap();
    assert_eq!(s, StateVector::basis(&[(0, true), (1, true), (2, true)]));
}

#[test]
fn measurements_branch_and_discards_book_mass() {
    let c = parse("PREP_PLUS q0\nPREP_ZERO q1\nCNOT q0 q1\nMEASURE_Z q0 -> m0\nDISCARD m0 1\nOUTPUT q1\n").unwrap();
    let sim = simulate(&c, None).unwrap();
    assert_eq!(sim.accepted.len(), 1);
    assert!((sim.accepted[0].probability - 0.5).abs() < TOL);
    assert!((sim.rejected - 0.5).abs() < TOL);
    assert_eq!(sim.accepted[0].state.qubits(), &[1]);
}

#[test]
fn qubit_cap_is_enforced() {
    let mut c = Circuit::new();
    for _ in 0..5 {
        let q = c.declare(Role::Ancilla);
        c.push(Op::PrepZero(q)).unwrap();
    }
    let sim = Simulator { cap: 4, prune: 0.0 };
    assert!(sim.run(&c, None).is_err());
    assert!(Simulator { cap: 5, prune: 0.0 }.run(&c, None).is_ok());
}

#[test]
fn feedforward_teleportation_is_identity_channel() {
    // one-bit X teleportation: q0 -> q1
    let tele = parse(
        "QUBIT q0 data input\nPREP_PLUS q1\nCNOT q1 q0\nMEASURE_Z q0 -> m0\nIF m0 THEN X q1\nOUTPUT q1\n",
    )
    .unwrap();
    let id = parse("QUBIT q0 data input\nOUTPUT q0\n").unwrap();
    assert!(channel_equivalent(&tele, &id, TOL).unwrap());
    let wrong = parse("QUBIT q0 data input\nS q0\nOUTPUT q0\n").unwrap();
    assert!(!channel_equivalent(&tele, &wrong, TOL).unwrap());
}

#[test]
fn fault_insertion_adds_paulis() {
    let c = parse("PREP_ZERO q0\nOUTPUT q0\n").unwrap();
    let f = with_faults(&c, &[(0, 0, Letter::X)]).unwrap();
    let sim = simulate(&f, None).unwrap();
    assert_eq!(sim.accepted[0].state, StateVector::basis(&[(0, true)]));
}

fn arb_op() -> impl Strategy<Value = (u8, u32, u32, bool)> {
    (0..6u8, 0..4u32, 0..4u32, any::<bool>())
}

proptest! {
    #[test]
    fn branches_are_normalized_and_complete(ops in prop::collection::vec(arb_op(), 0..25)) {
        let mut c = Circuit::new();
        let qs: Vec<_> = (0..4).map(|_| c.declare(Role::Data)).collect();
        c.push(Op::PrepZero(qs[0])).unwrap();
        c.push(Op::PrepPlus(qs[1])).unwrap();
        c.push(Op::PrepMagic { kind: msd_circuit::MagicKind::H, qubits: vec![qs[2]] }).unwrap();
        c.push(Op::PrepMagic { kind: msd_circuit::MagicKind::PiOver4, qubits: vec![qs[3]] }).unwrap();
        let mut live = qs.clone();
        for (k, a, b, flag) in ops {
            if live.len() < 2 { break; }
            let x = live[a as usize % live.len()];
            let y = live[b as usize % live.len()];
            match k {
                0 => c.gate(Gate::H(x)).unwrap(),
                1 => c.gate(Gate::S(x)).unwrap(),
                2 if x != y => c.gate(Gate::Cnot { control: x, target: y }).unwrap(),
                3 => c.push(Op::Macro(msd_circuit::Macro::YQuarter { q: x, plus: flag })).unwrap(),
                4 => {
                    let m = if flag { c.measure_z(x) } else { c.measure_x(x) }.unwrap();
                    live.retain(|&q| q != x);
                    let t = live[0];
                    c.push(Op::Conditioned { parity: msd_circuit::Parity::bit(m), gate: Gate::Z(t) }).unwrap();
                }
                _ => {}
            }
        }
        let sim = simulate(&c, None).unwrap();
        let total: f64 = sim.accepted.iter().map(|b| b.probability).sum::<f64>() + sim.rejected;
        prop_assert!((total - 1.0).abs() < 1e-10);
        for b in &sim.accepted {
            prop_assert!((b.state.norm_sqr() - 1.0).abs() < 1e-12);
            prop_assert!(b.probability >= 0.0 && b.probability <= 1.0 + 1e-12);
        }
    }
}
