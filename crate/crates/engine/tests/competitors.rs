use msd_circuit::MagicKind;
use msd_engine::*;
use msd_routines::{fourteen_to_two, ten_to_two, twenty_six_to_six};
use msd_statevec::magic_state;

fn truncated(c: &msd_circuit::Circuit, w: usize) -> Enumeration {
    enumerate_with(
        c,
        &Options {
            max_weight: Some(w),
            ..Default::default()
        },
    )
    .unwrap()
}

#[test]
fn fourteen_to_two_marginal_is_seven() {
    let e = truncated(&fourteen_to_two(), 2);
    for m in e.marginal_error_polynomials().unwrap() {
        assert_eq!(m, Poly::from_ints(&[0, 0, 7]));
    }
    // 7 undetected weight-2 patterns, each hitting both outputs
    assert_eq!(e.joint_error_polynomial().unwrap(), Poly::from_ints(&[0, 0, 7]));
}

#[test]
fn fourteen_to_two_full_enumeration_agrees_with_truncation() {
    let full = enumerate(&fourteen_to_two()).unwrap();
    assert_eq!(full.records.len(), 1 << 14);
    let part = truncated(&fourteen_to_two(), 3);
    assert_eq!(full.acceptance_polynomial().unwrap().truncate(3), part.acceptance_polynomial().unwrap());
    let a = full.acceptance_polynomial().unwrap();
    let rej = full.rejection_polynomial().unwrap();
    assert_eq!(a + rej, Poly::one());
}

#[test]
fn fourteen_to_two_undetected_patterns_are_code_words() {
    // a Z pattern is accepted iff it has no G0 syndrome; the smallest
    // accepted nontrivial ones have weight 2
    let e = truncated(&fourteen_to_two(), 2);
    let accepted_w1 = e.records.iter().filter(|r| r.weight() == 1 && r.accepted).count();
    assert_eq!(accepted_w1, 0);
    let accepted_w2 = e.records.iter().filter(|r| r.weight() == 2 && r.accepted).count();
    assert_eq!(accepted_w2, 7);
}

#[test]
fn twenty_six_to_six_marginal() {
    let e = truncated(&twenty_six_to_six(), 2);
    assert_eq!(e.k, 26);
    assert_eq!(e.records.len(), 1 + 26 + 325);
    for m in e.marginal_error_polynomials().unwrap() {
        assert_eq!(m, Poly::from_ints(&[0, 0, 19]));
    }
    assert_eq!(e.joint_error_polynomial().unwrap(), Poly::from_ints(&[0, 0, 41]));
}

#[test]
fn ten_to_two_needs_dense_simulation() {
    let err = enumerate(&ten_to_two()).unwrap_err();
    assert!(matches!(err, EngineError::FlippedClifford { .. }), "{err}");
}

/// The transversal Hadamard of the four-qubit code is the logical
/// `SWAP·(H⊗H)`, so one faulty encoded input leaves the antisymmetric
/// combination, which passes the check half the time.
#[test]
fn ten_to_two_marginal_has_a_linear_term() {
    let h = magic_state(MagicKind::H);
    let ideal = [[h[0], h[1]], [h[0], h[1]]];
    let d = dense_enumerate(&ten_to_two(), FaultModel::default(), &ideal, Some(2)).unwrap();
    assert_eq!(d.records.len(), d.expected_records());
    assert_eq!(d.acceptance_polynomial(), Poly::from_ints(&[1, -9, 49]));
    for m in d.marginal_error_polynomials() {
        assert_eq!(m, Poly::new(vec![Q::from(0), Q::new(1, 2), Q::new(9, 2)]));
    }
}

#[test]
fn snap_recovers_small_fractions() {
    assert_eq!(snap(0.5), Some(Q::new(1, 2)));
    assert_eq!(snap(-0.375), Some(Q::new(-3, 8)));
    assert_eq!(snap(1.0 / 3.0), Some(Q::new(1, 3)));
    assert_eq!(snap(std::f64::consts::PI), None);
}
