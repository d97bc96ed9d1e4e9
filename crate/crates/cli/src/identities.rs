//! The circuit identities the constructors rely on, each checked against
//! the state-vector oracle.

use msd_circuit::{parse, Circuit, MagicKind};
use msd_engine::{EngineError, FaultModel, Propagator};
use msd_routines::{
    expand_macros, indirect_toffoli, indirect_toffoli_open, indirect_y_rotation, margolus, toffoli_state_prep_4h,
    Expansion,
};
use msd_statevec::{channel_equivalent, magic_state, simulate, unitary_equivalent, with_faults, SimError, StateVector};

pub const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
}

fn fixed(text: &str) -> Circuit {
    parse(text).expect("built-in circuit text")
}

const THREE_INPUTS: &str = "QUBIT q0 control-1 input\nQUBIT q1 control-2 input\nQUBIT q2 target input\n";

fn margolus_macro() -> Circuit {
    fixed(&format!("{THREE_INPUTS}MARGOLUS q0 q1 q2\nOUTPUT q0 q1 q2\n"))
}

fn toffoli_macro() -> Circuit {
    fixed(&format!("{THREE_INPUTS}TOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n"))
}

fn toffoli_state() -> Circuit {
    fixed("PREP_MAGIC TOFFOLI q0 q1 q2\nOUTPUT q0 q1 q2\n")
}

fn margolus_left() -> Result<bool, SimError> {
    unitary_equivalent(&margolus(Expansion::Left), &margolus_macro(), TOLERANCE)
}

fn margolus_right() -> Result<bool, SimError> {
    let right = margolus(Expansion::Right);
    let gadgets = expand_macros(&right).expect("rotations expand");
    Ok(unitary_equivalent(&right, &margolus_macro(), TOLERANCE)?
        && channel_equivalent(&gadgets, &margolus_macro(), TOLERANCE)?)
}

fn y_rotation() -> Result<bool, SimError> {
    for plus in [true, false] {
        let sign = if plus { '+' } else { '-' };
        let direct = fixed(&format!("QUBIT q0 data input\nYQUARTER {sign} q0\nOUTPUT q0\n"));
        if !channel_equivalent(&indirect_y_rotation(plus), &direct, TOLERANCE)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn teleported_toffoli() -> Result<bool, SimError> {
    if !channel_equivalent(&indirect_toffoli(), &toffoli_macro(), TOLERANCE)? {
        return Ok(false);
    }
    // the open form, fed by a freshly prepared resource
    let prep = toffoli_state_prep_4h();
    let open = indirect_toffoli_open();
    let wiring: Vec<_> = open.inputs()[3..].iter().copied().zip(prep.outputs().iter().copied()).collect();
    let fed = prep.compose(&open, &wiring).expect("wiring matches");
    channel_equivalent(&fed, &toffoli_macro(), TOLERANCE)
}

fn margolus_prep() -> Result<bool, SimError> {
    let via_margolus = fixed("PREP_PLUS q0\nPREP_PLUS q1\nPREP_ZERO q2\nMARGOLUS q0 q1 q2\nOUTPUT q0 q1 q2\n");
    let expanded = expand_macros(&via_margolus).expect("margolus expands");
    Ok(channel_equivalent(&via_margolus, &toffoli_state(), TOLERANCE)?
        && channel_equivalent(&expanded, &toffoli_state(), TOLERANCE)?
        && channel_equivalent(&toffoli_state_prep_4h(), &toffoli_state(), TOLERANCE)?)
}

fn target_swap() -> Result<bool, SimError> {
    // Hadamards on control-1 and the target make control-1 the new target
    let swapped = fixed("PREP_MAGIC TOFFOLI q0 q1 q2\nH q0\nH q2\nOUTPUT q1 q2 q0\n");
    let unswapped = fixed("PREP_MAGIC TOFFOLI q0 q1 q2\nOUTPUT q1 q2 q0\n");
    Ok(channel_equivalent(&swapped, &toffoli_state(), TOLERANCE)?
        && !channel_equivalent(&unswapped, &toffoli_state(), TOLERANCE)?)
}

type Claim = (&'static str, &'static str, fn() -> Result<bool, SimError>);

const SUITE: [Claim; 6] = [
    ("margolus-left", "Toffoli, CCZ fix-up and CZ equal the Margolus gate", margolus_left),
    ("margolus-right", "four Y(pi/4) rotations and Cliffords equal the Margolus gate", margolus_right),
    ("y-rotation", "one |H> and Cliffords apply Y(+-pi/4)", y_rotation),
    ("teleported-toffoli", "a Toffoli state and Cliffords apply a Toffoli gate", teleported_toffoli),
    ("margolus-prep", "a Margolus gate on |+,+,0> prepares the Toffoli state", margolus_prep),
    ("target-swap", "Hadamards on a control and the target move the target role", target_swap),
];

/// Runs every identity. A simulator error counts as a failure.
pub fn identity_suite() -> Vec<Check> {
    SUITE
        .iter()
        .map(|&(name, claim, f)| Check {
            name,
            claim,
            passed: f().unwrap_or(false),
        })
        .collect()
}

/// Patterns where the frame engine and a dense replay disagree, out of
/// all `2^k`. Acceptance must agree exactly and accepted outputs must be
/// the ideal state hit by the frame's residual.
pub fn frame_cross_check(c: &Circuit) -> Result<(usize, Vec<u64>), EngineError> {
    let prop = Propagator::new(c, FaultModel::default())?;
    let sites = prop.sites().to_vec();
    let k = sites.len();
    let ideal = StateVector::from_amplitudes(c.outputs().to_vec(), magic_state(MagicKind::Toffoli));
    let mut bad = Vec::new();
    for pattern in 0..1u64 << k {
        let rec = prop.run(pattern)?;
        let faults: Vec<_> = (0..k)
            .filter(|i| pattern >> i & 1 == 1)
            .map(|i| (sites[i].op_index, sites[i].qubit, sites[i].letter))
            .collect();
        let sim = simulate(&with_faults(c, &faults)?, None)?;
        let acc = sim.acceptance();
        let ok = if rec.accepted {
            let mut want = ideal.clone();
            want.apply_pauli(&rec.residual)?;
            let amps = want.permuted(c.outputs())?.amplitudes().to_vec();
            (acc - 1.0).abs() < TOLERANCE
                && sim.output_density(c.outputs())?.expectation(&amps) / acc > 1.0 - TOLERANCE
        } else {
            acc.abs() < TOLERANCE
        };
        if !ok {
            bad.push(pattern);
        }
    }
    Ok((1 << k, bad))
}
