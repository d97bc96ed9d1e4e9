use msd_circuit::{parse, Circuit, Gate, Instr};
use msd_cost::*;
use msd_routines::{h_to_toffoli, indirect_toffoli_open, lookup, state_injection, toffoli_state_prep_4h};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

#[test]
fn quoted_counts_under_default_rules() {
    let rules = CostRules::default();
    assert_eq!(count_locations(&h_to_toffoli(2).unwrap(), &rules).total, int(36));
    assert_eq!(count_locations(&indirect_toffoli_open(), &rules).total, int(15));
    assert_eq!(count_locations(&state_injection(), &rules).total, int(5));
}

#[test]
fn h_to_toffoli_breakdown() {
    let rep = count_locations(&h_to_toffoli(2).unwrap(), &CostRules::default());
    let n = |c: Category| rep.breakdown.get(&c).map_or(0, |x| x.count);
    assert_eq!(n(Category::MagicPrep), 8);
    assert_eq!(n(Category::DataPrep), 2);
    // three per Margolus tail, three gadgets per tail, one parity check
    assert_eq!(n(Category::TwoQubit), 13);
    assert_eq!(rep.magic_states, 8);
    assert_eq!(rep.per_output, r(36, 3));
}

#[test]
fn literal_rules_miss_the_quoted_counts() {
    let rules = CostRules::literal();
    assert_eq!(count_locations(&h_to_toffoli(2).unwrap(), &rules).total, int(34));
    assert_eq!(count_locations(&indirect_toffoli_open(), &rules).total, int(12));
}

#[test]
fn unchecked_prep_is_not_reproduced() {
    // the quoted count is 23; the Clifford expansion here costs less
    let n = count_locations(&toffoli_state_prep_4h(), &CostRules::default()).total;
    assert_eq!(n, int(18));
    assert_ne!(n, int(23));
}

#[test]
fn empty_circuit_costs_nothing() {
    let rep = count_locations(&Circuit::new(), &CostRules::default());
    assert_eq!(rep.total, int(0));
    assert!(rep.breakdown.is_empty());
}

#[test]
fn injection_charges_only_encoded_ops() {
    let rules = CostRules {
        unencoded: 1,
        ..CostRules::default()
    };
    let rep = count_locations(&state_injection(), &rules);
    assert_eq!(rep.breakdown[&Category::Unencoded].count, 3);
    assert_eq!(rep.total, int(8));
}

#[test]
fn idle_steps_follow_schedule() {
    let c = parse(
        "QUBIT q0 data input\nQUBIT q1 data input\nQUBIT q2 data input\n\
         CNOT q0 q1\nCNOT q1 q2\nCNOT q0 q2\nOUTPUT q0 q1 q2\n",
    )
    .unwrap();
    // q0 waits at step 2, q1 at step 3, q2 at step 1
    assert_eq!(idle_steps(&c), 3);
    let rules = CostRules {
        idle: 1,
        ..CostRules::default()
    };
    assert_eq!(count_locations(&c, &rules).total, int(9));
    // free by default
    assert_eq!(count_locations(&c, &CostRules::default()).total, int(6));
}

#[test]
fn rules_from_toml() {
    let rules = CostRules::from_toml_str("data-prep = 0\nconditioned-two-qubit = 2\n").unwrap();
    assert_eq!(rules, CostRules::literal());
    assert!(CostRules::from_toml_str("bogus = 1").is_err());
    assert_eq!(CostRules::from_toml_str("").unwrap(), CostRules::default());
    assert_eq!(CostRules::preset("literal"), Some(CostRules::literal()));
}

#[test]
fn state_costs() {
    let sc = |n: &str| state_cost(&lookup(n).unwrap());
    assert_eq!(sc("h-to-toffoli"), int(8));
    assert_eq!(sc("ten-to-two"), int(20));
    assert_eq!(sc("fourteen-to-two"), int(28));
    assert_eq!(sc("twenty-six-to-six"), r(52, 3));
    assert_eq!(render_rational(r(52, 3), 2), "17.33");
}

#[test]
fn pipeline_on_quoted_counts() {
    let b = BaseCounts::quoted();
    let cost = |n: &str, t: Target, inj: bool| pipeline_cost(&lookup(n).unwrap(), t, inj, &b).unwrap().total;
    assert_eq!(cost("h-to-toffoli", Target::ToffoliState, false), int(36));
    assert_eq!(cost("h-to-toffoli", Target::ToffoliGate, false), int(51));
    assert_eq!(cost("h-to-toffoli", Target::ToffoliGate, true), int(91));
    assert_eq!(cost("ten-to-two", Target::ToffoliState, false), int(183));
    assert_eq!(cost("ten-to-two", Target::ToffoliGate, true), int(298));
    assert_eq!(cost("fourteen-to-two", Target::ToffoliState, false), int(179));
    assert_eq!(cost("fourteen-to-two", Target::ToffoliGate, true), int(334));
    assert_eq!(cost("twenty-six-to-six", Target::ToffoliState, false), int(151));
    assert_eq!(cost("twenty-six-to-six", Target::ToffoliGate, true), r(758, 3));
    assert_eq!(render_rational(r(758, 3), 1), "252.7");
    // 32 per output without injection, 53.7 with
    assert_eq!(r(192, 6), int(32));
    assert_eq!(render_rational(r(192, 6) + r(5 * 26, 6), 1), "53.7");
}

#[test]
fn unknown_routine_is_an_error() {
    let mut d = lookup("injection").unwrap();
    d.name = "injection";
    assert!(matches!(
        pipeline_cost(&d, Target::ToffoliState, false, &BaseCounts::quoted()),
        Err(CostError::UnknownRoutine(_))
    ));
}

#[test]
fn rounding() {
    assert_eq!(render_rational(r(1, 2), 0), "1");
    assert_eq!(render_rational(r(-1, 2), 0), "-1");
    assert_eq!(render_rational(r(-7, 3), 2), "-2.33");
    assert_eq!(render_rational(int(8), 2), "8.00");
    assert!(agrees(r(52, 3), "17.33"));
    assert!(agrees(r(52, 3), "17.3"));
    assert!(!agrees(r(52, 3), "17.4"));
}

proptest! {
    #[test]
    fn injection_is_additive(i in 0usize..4, gate in any::<bool>()) {
        let b = BaseCounts::quoted();
        let d = lookup(TABLE_ROUTINES[i]).unwrap();
        let t = if gate { Target::ToffoliGate } else { Target::ToffoliState };
        let without = pipeline_cost(&d, t, false, &b).unwrap();
        let with = pipeline_cost(&d, t, true, &b).unwrap();
        let inj = with.terms.iter().find(|x| x.label == "injection").unwrap().value;
        prop_assert_eq!(without.total + inj, with.total);
    }

    /// Without idle weighting the count only sees the multiset of ops.
    #[test]
    fn order_does_not_matter(gates in prop::collection::vec((0u8..4, 0u32..4, 0u32..4), 0..30)) {
        let build = |gs: &mut dyn Iterator<Item = &(u8, u32, u32)>| {
            let mut c = Circuit::new();
            for _ in 0..4 {
                c.declare_input(msd_circuit::Role::Data);
            }
            for &(k, a, b) in gs {
                let b = if a == b { (b + 1) % 4 } else { b };
                let g = match k {
                    0 => Gate::H(a),
                    1 => Gate::S(a),
                    2 => Gate::Cnot { control: a, target: b },
                    _ => Gate::Cz(a, b),
                };
                c.push(Instr { op: msd_circuit::Op::Gate(g), label: None, unencoded: false }).unwrap();
            }
            c.set_outputs(vec![0, 1, 2, 3]).unwrap();
            c
        };
        let fwd = build(&mut gates.iter());
        let rev = build(&mut gates.iter().rev());
        let rules = CostRules::default();
        prop_assert_eq!(count_locations(&fwd, &rules), count_locations(&rev, &rules));
    }
}

#[test]
fn table_report() {
    let t = table_one(&CostRules::default()).unwrap();
    let row = |n: &str| t.rows.iter().find(|r| r.routine == n).unwrap().clone();
    let h = row("h-to-toffoli");
    assert_eq!(h.state_cost.status, Status::Matched);
    assert_eq!(h.toffoli_state.status, Status::Matched);
    assert_eq!(h.toffoli_gate.status, Status::Matched);
    assert_eq!(h.output_error.status, Status::Matched);
    let f = row("fourteen-to-two");
    assert_eq!(f.output_error.per_toffoli, Some(Leading { order: 2, coeff: int(28) }));
    assert_eq!(f.toffoli_state.from_published_bases, Some(int(179)));
    let s = row("twenty-six-to-six");
    assert_eq!(s.output_error.marginal, Some(Leading { order: 2, coeff: int(19) }));
    assert_eq!(s.output_error.status, Status::Matched);
    assert_eq!(s.toffoli_gate.from_published_bases, Some(r(758, 3)));
    let m = row("ten-to-two");
    assert_eq!(m.output_error.marginal, Some(Leading { order: 1, coeff: r(1, 2) }));
    assert_eq!(m.output_error.status, Status::Divergent);
    let prep = t.bases.iter().find(|b| b.name == "toffoli-4h").unwrap();
    assert!(!prep.reproduced);
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["rows"][2]["toffoli_gate"]["from_published_bases"], "758/3");
}
