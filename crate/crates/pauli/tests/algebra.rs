use msd_pauli::{Gate, Letter, PauliError, PauliString, Phase};
use num_complex::Complex64 as C;
use proptest::prelude::*;

type M = Vec<Vec<C>>;

fn letter_matrix(l: Letter) -> M {
    let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
    match l {
        Letter::I => vec![vec![o, z], vec![z, o]],
        Letter::X => vec![vec![z, o], vec![o, z]],
        Letter::Y => vec![vec![z, -i], vec![i, z]],
        Letter::Z => vec![vec![o, z], vec![z, -o]],
    }
}

fn kron(a: &M, b: &M) -> M {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![C::new(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn dense(p: &PauliString) -> M {
    let mut acc: M = vec![vec![C::new(1.0, 0.0)]];
    for (_, l) in p.factors() {
        acc = kron(&acc, &letter_matrix(l));
    }
    let (re, im) = p.phase().to_complex_parts();
    let ph = C::new(re, im);
    acc.iter().map(|r| r.iter().map(|x| x * ph).collect()).collect()
}

fn close(a: &M, b: &M) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < 1e-12)
}

#[test]
fn involution_gives_identity() {
    let x = PauliString::parse("X").unwrap();
    assert_eq!(x.mul(&x).unwrap(), PauliString::parse("+I").unwrap());
}

#[test]
fn x_times_z_is_minus_i_y() {
    let x = PauliString::parse("X").unwrap();
    let z = PauliString::parse("Z").unwrap();
    let p = x.mul(&z).unwrap();
    assert_eq!(p.to_string(), "-iY");
}

#[test]
fn two_qubit_product_matches_matrix_oracle() {
    let a = PauliString::parse("XZ").unwrap();
    let b = PauliString::parse("ZZ").unwrap();
    let p = a.mul(&b).unwrap();
    assert_eq!(p.letters_string(), "YI");
    // X·Z = -iY on the first factor, Z·Z = I on the second
    assert_eq!(p.phase(), Phase::MINUS_I);
    assert!(close(&dense(&p), &matmul(&dense(&a), &dense(&b))));
}

#[test]
fn mismatched_qubit_sets_are_rejected() {
    let a = PauliString::parse("XZ").unwrap();
    let b = PauliString::parse("X").unwrap();
    assert!(matches!(a.mul(&b), Err(PauliError::QubitSetMismatch { .. })));
}

#[test]
fn products_agree_with_matrices_exhaustively() {
    for a in all_strings(2) {
        for b in all_strings(2) {
            let p = a.mul(&b).unwrap();
            assert!(close(&dense(&p), &matmul(&dense(&a), &dense(&b))), "{a} * {b}");
        }
    }
}

#[test]
fn weight_zero_iff_signed_identity() {
    for p in all_strings(2) {
        let is_id = p.letters_string().chars().all(|c| c == 'I');
        assert_eq!(p.weight() == 0, is_id);
    }
}

#[test]
fn cnot_copies_x_from_control() {
    let p = PauliString::parse("XI").unwrap();
    let out = Gate::Cnot { control: 0, target: 1 }.conjugate(&p).unwrap();
    assert_eq!(out.to_string(), "+XX");
}

#[test]
fn hadamard_negates_y() {
    let p = PauliString::parse("Y").unwrap();
    assert_eq!(Gate::H(0).conjugate(&p).unwrap().to_string(), "-Y");
}

#[test]
fn cz_appends_z_to_partner_of_y() {
    let p = PauliString::parse("IY").unwrap();
    let out = Gate::Cz(0, 1).conjugate(&p).unwrap();
    assert_eq!(out.letters_string(), "ZY");
    assert!(out.phase().is_real());
}

#[test]
fn conjugation_needs_operands_in_domain() {
    let p = PauliString::parse("X").unwrap();
    assert_eq!(Gate::H(3).conjugate(&p), Err(PauliError::MissingQubit(3)));
    let p2 = PauliString::parse("XX").unwrap();
    assert!(Gate::Cz(1, 1).conjugate(&p2).is_err());
}

fn all_strings(n: usize) -> Vec<PauliString> {
    let mut out = vec![];
    let total = 4usize.pow(n as u32);
    for phase in 0..4u8 {
        for idx in 0..total {
            let factors = (0..n).map(|q| (q as u32, Letter::ALL[(idx >> (2 * q)) & 3]));
            out.push(PauliString::from_factors(Phase::new(phase), factors));
        }
    }
    out
}

fn all_gates() -> Vec<Gate> {
    let mut g = vec![Gate::H(0), Gate::S(0), Gate::X(0), Gate::Y(0), Gate::Z(0)];
    for k in 0..4 {
        g.push(Gate::RotY { q: 0, k });
        g.push(Gate::RotZ { q: 0, k });
    }
    g.push(Gate::H(1));
    g.push(Gate::RotY { q: 1, k: 1 });
    g.push(Gate::Cnot { control: 0, target: 1 });
    g.push(Gate::Cnot { control: 1, target: 0 });
    g.push(Gate::Cz(0, 1));
    g.push(Gate::Cz(1, 0));
    g
}

#[test]
fn conjugation_is_a_homomorphism() {
    let strings = all_strings(2);
    for g in all_gates() {
        for a in &strings {
            for b in strings.iter().step_by(3) {
                let lhs = g.conjugate(&a.mul(b).unwrap()).unwrap();
                let rhs = g.conjugate(a).unwrap().mul(&g.conjugate(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{g} on {a}, {b}");
            }
        }
    }
}

#[test]
fn inverse_undoes_conjugation() {
    for g in all_gates() {
        for p in all_strings(2) {
            let back = g.inverse().conjugate(&g.conjugate(&p).unwrap()).unwrap();
            assert_eq!(back, p, "{g}");
        }
    }
}

#[test]
fn conjugation_preserves_hermiticity_and_commutation() {
    let strings = all_strings(2);
    for g in all_gates() {
        for a in strings.iter().filter(|p| p.phase().is_real()) {
            assert!(g.conjugate(a).unwrap().phase().is_real());
            for b in strings.iter().filter(|p| p.phase() == Phase::ONE) {
                let before = a.commutes_with(b).unwrap();
                let after = g.conjugate(a).unwrap().commutes_with(&g.conjugate(b).unwrap()).unwrap();
                assert_eq!(before, after);
            }
        }
    }
}

#[test]
fn pauli_gates_report_their_letter() {
    assert_eq!(Gate::RotY { q: 4, k: 2 }.as_pauli(), Some((4, Letter::Y)));
    assert_eq!(Gate::S(0).as_pauli(), None);
}

fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
    (0u8..4, proptest::collection::vec(0usize..4, n)).prop_map(|(ph, ls)| {
        PauliString::from_factors(
            Phase::new(ph),
            ls.into_iter().enumerate().map(|(q, l)| (q as u32, Letter::ALL[l])),
        )
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in arb_string(6), b in arb_string(6), c in arb_string(6)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commuting_strings_multiply_symmetrically(a in arb_string(5), b in arb_string(5)) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        if a.commutes_with(&b).unwrap() {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab.phase(), ba.phase() * Phase::MINUS_ONE);
        }
    }

    #[test]
    fn text_round_trip(a in arb_string(7)) {
        prop_assert_eq!(PauliString::parse(&a.to_string()).unwrap(), a);
    }
}
