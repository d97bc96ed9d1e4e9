//! Exhaustive checks of the two-target H-to-Toffoli routine, with the
//! state-vector oracle as the reference for every fault pattern.

use std::collections::BTreeMap;

use msd_circuit::{Circuit, MagicKind};
use msd_engine::*;
use msd_pauli::Letter;
use msd_routines::{h_to_toffoli, toffoli_state_prep_4h};
use msd_statevec::{magic_state, simulate, with_faults, StateVector};

fn routine(o: usize) -> Circuit {
    h_to_toffoli(o).unwrap()
}

/// `(1-p)^(k-w) p^w` summed with multiplicity `n[w]`, built by hand.
fn by_weight(k: usize, n: &[(usize, i128)]) -> Poly {
    let q = Poly::one() - Poly::p();
    n.iter().map(|&(w, c)| (q.pow(k - w) * Poly::p().pow(w)).scale(c.into())).sum()
}

#[test]
fn acceptance_and_error_coefficients() {
    let e = enumerate(&routine(2)).unwrap();
    assert_eq!(e.k, 8);
    assert_eq!(e.records.len(), 256);
    let a = e.acceptance_polynomial().unwrap();
    let ea = e.joint_error_polynomial().unwrap();
    assert_eq!(a.to_ints().unwrap(), vec![1, -8, 56, -224, 560, -896, 896, -512, 128]);
    assert_eq!(ea.to_ints().unwrap(), vec![0, 0, 28, -168, 476, -784, 784, -448, 112]);
}

#[test]
fn acceptance_closed_form() {
    let e = enumerate(&routine(2)).unwrap();
    let two_p = Poly::p().scale(2.into());
    let closed = (Poly::one() + (Poly::one() - two_p).pow(8)).scale(Q::new(1, 2));
    assert_eq!(e.acceptance_polynomial().unwrap(), closed);
}

#[test]
fn trivial_patterns_by_weight() {
    let e = enumerate(&routine(2)).unwrap();
    assert_eq!(e.trivial_accepted_at(4), 14);
    let trivial: Vec<_> = (0..=8).map(|w| e.trivial_accepted_at(w)).collect();
    assert_eq!(trivial, [1, 0, 0, 0, 14, 0, 0, 0, 1]);
    // the joint error is whatever acceptance the trivial patterns do not cover
    let t = by_weight(8, &[(0, 1), (4, 14), (8, 1)]);
    assert_eq!(e.joint_error_polynomial().unwrap(), e.acceptance_polynomial().unwrap() - t);
}

#[test]
fn seven_classes_equally_likely() {
    let e = enumerate(&routine(2)).unwrap();
    let classes = e.class_distribution().unwrap();
    let group: Vec<String> = ["I", "Z"]
        .iter()
        .flat_map(|a| ["I", "Z"].iter().flat_map(move |b| ["I", "X"].iter().map(move |c| format!("{a}{b}{c}"))))
        .collect();
    assert_eq!(classes.keys().cloned().collect::<Vec<_>>(), {
        let mut g = group.clone();
        g.sort();
        g
    });
    let first = &classes["IIX"];
    for (k, p) in &classes {
        if k != "III" {
            assert_eq!(p.coeff(0), Q::from(0), "{k}");
            assert_eq!(p.coeff(1), Q::from(0), "{k}");
            assert_eq!(p.coeff(2), Q::from(4), "{k}");
            assert_eq!(p, first, "{k}");
        }
    }
    let sum: Poly = classes.values().cloned().sum();
    assert_eq!(sum, e.acceptance_polynomial().unwrap());
}

#[test]
fn parallel_and_sequential_agree() {
    let c = routine(2);
    let a = enumerate(&c).unwrap();
    let b = enumerate_sequential(&c, &Options::default()).unwrap();
    assert_eq!(a.records, b.records);
}

/// Every one of the 256 patterns, replayed densely: acceptance must be 0
/// or 1 as the frame says, and the accepted state must be the ideal one
/// hit by the frame's residual.
#[test]
fn frame_matches_state_vector_on_every_pattern() {
    let c = routine(2);
    let prop = Propagator::new(&c, FaultModel::default()).unwrap();
    let sites = prop.sites().to_vec();
    let tof = StateVector::from_amplitudes(c.outputs().to_vec(), magic_state(MagicKind::Toffoli));
    for pattern in 0..256u64 {
        let rec = prop.run(pattern).unwrap();
        let faults: Vec<_> = (0..8)
            .filter(|i| pattern >> i & 1 == 1)
            .map(|i| (sites[i].op_index, sites[i].qubit, sites[i].letter))
            .collect();
        let sim = simulate(&with_faults(&c, &faults).unwrap(), None).unwrap();
        let acc = sim.acceptance();
        let want = if rec.accepted { 1.0 } else { 0.0 };
        assert!((acc - want).abs() < 1e-10, "pattern {pattern:08b}: acceptance {acc}");
        if !rec.accepted {
            continue;
        }
        let mut expect = tof.clone();
        expect.apply_pauli(&rec.residual).unwrap();
        let amps: Vec<_> = expect.permuted(c.outputs()).unwrap().amplitudes().to_vec();
        let f = sim.output_density(c.outputs()).unwrap().expectation(&amps) / acc;
        assert!(f > 1.0 - 1e-10, "pattern {pattern:08b}: fidelity {f}");
    }
}

#[test]
fn single_fault_in_unchecked_prep_leaves_y_on_target() {
    let c = toffoli_state_prep_4h();
    let e = enumerate(&c).unwrap();
    let singles: BTreeMap<u64, String> = e
        .records
        .iter()
        .filter(|r| r.weight() == 1)
        .map(|r| (r.pattern, r.residual.letters_in_order(&e.outputs)))
        .collect();
    assert_eq!(singles.len(), 4);
    for (p, cls) in &singles {
        assert!(cls.ends_with('Y'), "pattern {p:b}: {cls}");
    }
    // the directly prepared target and the last rotation hit the controls differently
    assert_eq!(singles[&0b0001], "ZIY");
    assert_eq!(singles[&0b1000], "IIY");
}

#[test]
fn three_targets_push_target_errors_to_third_order() {
    let e = enumerate(&routine(3)).unwrap();
    assert_eq!(e.records.len(), 1 << 12);
    let c3 = e.class_distribution().unwrap();
    let c2 = enumerate(&routine(2)).unwrap().class_distribution().unwrap();
    for (k, p) in &c3 {
        if k.ends_with(['X', 'Y']) {
            assert_eq!(p.truncate(2), Poly::zero(), "{k}");
            assert_ne!(p.coeff(3), Q::from(0), "{k}");
        }
    }
    let z_only = |m: &BTreeMap<String, Poly>| -> Q {
        m.iter()
            .filter(|(k, _)| k.ends_with('I') && k.as_str() != "III")
            .map(|(_, p)| p.coeff(2))
            .sum()
    };
    assert_eq!(z_only(&c2), Q::from(12));
    assert_eq!(z_only(&c3), Q::from(18));
    // the checked targets agree iff all four-site parities agree
    let q = (Poly::one() - Poly::p().scale(2.into())).pow(4);
    let closed = (Poly::one() + q.pow(2).scale(3.into())).scale(Q::new(1, 4));
    assert_eq!(e.acceptance_polynomial().unwrap(), closed);
}

#[test]
fn odd_target_count_leaves_y_even_count_x() {
    for (o, letter) in [(2, Letter::X), (3, Letter::Y), (4, Letter::X)] {
        let c = routine(o);
        let e = enumerate(&c).unwrap();
        let target = c.outputs()[2];
        for r in e.records.iter().filter(|r| r.accepted) {
            let l = r.residual.letter(target).unwrap_or(Letter::I);
            assert!(l == Letter::I || l == letter, "o = {o}: {l:?}");
            for &ctl in &c.outputs()[..2] {
                assert!(matches!(r.residual.letter(ctl).unwrap_or(Letter::I), Letter::I | Letter::Z));
            }
        }
    }
}

#[test]
fn four_targets_acceptance_closed_form() {
    let e = enumerate(&routine(4)).unwrap();
    let q = (Poly::one() - Poly::p().scale(2.into())).pow(4);
    // all four parities equal: ((1+q)^4 + (1-q)^4) / 16
    let closed = ((Poly::one() + q.clone()).pow(4) + (Poly::one() - q).pow(4)).scale(Q::new(1, 16));
    assert_eq!(e.acceptance_polynomial().unwrap(), closed);
}
