use msd_circuit::Circuit;
use msd_engine::*;
use msd_routines::{fourteen_to_two, h_to_toffoli, toffoli_state_prep_4h};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i128..20, 0..6).prop_map(|v| Poly::from_ints(&v))
}

fn inject(c: &Circuit, cc: &Compiled, pattern: u64) -> Vec<(usize, Vec<(usize, msd_pauli::Letter)>)> {
    fault_sites(c, FaultModel::default())
        .iter()
        .enumerate()
        .filter(|(i, _)| pattern >> i & 1 == 1)
        .map(|(_, s)| (s.op_index, vec![(cc.position(s.qubit).unwrap(), s.letter)]))
        .collect()
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn eval_is_a_homomorphism(a in poly(), b in poly(), n in -5i128..5, d in 1i128..5) {
        let x = Q::new(n, d);
        prop_assert_eq!((&a * &b).eval(x), a.eval(x) * b.eval(x));
        prop_assert_eq!((&a + &b).eval(x), a.eval(x) + b.eval(x));
    }

    #[test]
    fn bernoulli_terms_sum_to_one(k in 0usize..10) {
        let total: Poly = (0..=k).map(|w| Poly::bernoulli(w, k).scale((binomial(k, w) as i128).into())).sum();
        prop_assert_eq!(total, Poly::one());
    }

    /// The frame map is linear over GF(2): residuals multiply and flips add.
    #[test]
    fn propagation_is_linear(a in 0u64..256, b in 0u64..256) {
        let c = h_to_toffoli(2).unwrap();
        let cc = Compiled::new(&c).unwrap();
        let ra = cc.propagate(&inject(&c, &cc, a)).unwrap();
        let rb = cc.propagate(&inject(&c, &cc, b)).unwrap();
        let rab = cc.propagate(&inject(&c, &cc, a ^ b)).unwrap();
        prop_assert_eq!(rab.residual, ra.residual.mul(&rb.residual).unwrap().unsigned());
        let x: Vec<bool> = ra.flips.iter().zip(&rb.flips).map(|(p, q)| p ^ q).collect();
        prop_assert_eq!(rab.flips, x);
    }
}

#[test]
fn truncation_agrees_with_full_enumeration() {
    let c = fourteen_to_two();
    let full = enumerate(&c).unwrap();
    for w in 0..5 {
        let part = enumerate_with(&c, &Options { max_weight: Some(w), ..Default::default() }).unwrap();
        assert_eq!(part.acceptance_polynomial().unwrap(), full.acceptance_polynomial().unwrap().truncate(w));
        assert_eq!(part.joint_error_polynomial().unwrap(), full.joint_error_polynomial().unwrap().truncate(w));
    }
}

#[test]
fn class_mass_is_acceptance_and_mass_is_conserved() {
    for c in [h_to_toffoli(2).unwrap(), h_to_toffoli(3).unwrap(), toffoli_state_prep_4h()] {
        let e = enumerate(&c).unwrap();
        let a = e.acceptance_polynomial().unwrap();
        let classes: Poly = e.class_distribution().unwrap().into_values().sum();
        assert_eq!(classes, a);
        assert_eq!(a + e.rejection_polynomial().unwrap(), Poly::one());
    }
}

#[test]
fn no_fault_pattern_is_accepted_and_trivial() {
    for c in [h_to_toffoli(2).unwrap(), fourteen_to_two()] {
        let r = Propagator::new(&c, FaultModel::default()).unwrap().run(0).unwrap();
        assert!(r.accepted);
        assert!(r.is_trivial());
    }
}

#[test]
fn enumeration_errors() {
    let c = h_to_toffoli(2).unwrap();
    let p = Propagator::new(&c, FaultModel::default()).unwrap();
    assert!(matches!(p.run(1 << 8), Err(EngineError::PatternOutOfRange { .. })));
    let capped = Options { cap: 4, ..Default::default() };
    assert!(matches!(enumerate_with(&c, &capped), Err(EngineError::TooManySites { k: 8, cap: 4 })));
    let toff = msd_circuit::parse("QUBIT q0 data input\nQUBIT q1 data input\nQUBIT q2 data input\nTOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n").unwrap();
    assert!(matches!(Compiled::new(&toff).and_then(|cc| cc.propagate(&[])), Err(EngineError::NonClifford { .. })));
}

#[test]
fn patterns_up_to_counts() {
    assert_eq!(patterns_up_to(5, 2).len(), 1 + 5 + 10);
    assert_eq!(patterns_up_to(4, 4).len(), 16);
    assert!(patterns_up_to(6, 3).iter().all(|p| p.count_ones() <= 3));
}

#[test]
fn display_is_readable() {
    assert_eq!(Poly::from_ints(&[1, -8, 56]).to_string(), "1 - 8p + 56p^2");
    assert_eq!(Poly::zero().to_string(), "0");
    let half = Poly::new(vec![Q::new(1, 2), Q::new(-1, 2), Q::new(9, 2)]);
    assert_eq!(half.to_string(), "1/2 - (1/2)p + (9/2)p^2");
}
