use std::collections::BTreeMap;

use msd_circuit::{Circuit, MagicKind};
use msd_pauli::Letter;

use crate::frame::Compiled;
use crate::poly::Poly;
use crate::EngineError;

/// Probability of each residual class, keyed by letters in output order.
pub type ClassDistribution = BTreeMap<String, Poly>;

fn parse_class(s: &str) -> Result<[Letter; 3], EngineError> {
    let ls: Vec<Letter> = s.chars().filter_map(Letter::from_char).collect();
    let ok = ls.len() == 3
        && s.len() == 3
        && matches!(ls[0], Letter::I | Letter::Z)
        && matches!(ls[1], Letter::I | Letter::Z)
        && matches!(ls[2], Letter::I | Letter::X);
    if ok {
        Ok([ls[0], ls[1], ls[2]])
    } else {
        Err(EngineError::ClassOutsideModel(s.to_string()))
    }
}

/// Exact output class distribution of a routine whose Toffoli-state
/// resources are drawn independently from `input`.
///
/// Each resource suffers the class Pauli right after its preparation. The
/// input classes must be products of Z on the two controls and X on the
/// target; anything else needs twirling first.
pub fn toffoli_distill_distribution(input: &ClassDistribution, routine: &Circuit) -> Result<ClassDistribution, EngineError> {
    let classes: Vec<([Letter; 3], &Poly)> = input
        .iter()
        .map(|(k, p)| parse_class(k).map(|c| (c, p)))
        .collect::<Result<_, _>>()?;
    let compiled = Compiled::new(routine)?;
    let sites: Vec<_> = routine
        .magic_sites()
        .into_iter()
        .filter(|s| s.kind == MagicKind::Toffoli)
        .collect();
    let r = sites.len();
    let combos = classes.len().pow(r as u32);
    let outputs = routine.outputs().to_vec();
    let mut out: ClassDistribution = BTreeMap::new();
    for mut n in 0..combos {
        let mut weight = Poly::one();
        let mut inject = Vec::with_capacity(r);
        for s in &sites {
            let (cls, p) = &classes[n % classes.len()];
            n /= classes.len();
            weight = &weight * p;
            let letters = s
                .qubits
                .iter()
                .zip(cls)
                .filter(|(_, l)| **l != Letter::I)
                .map(|(q, l)| (compiled.position(*q).expect("declared"), *l))
                .collect();
            inject.push((s.op_index, letters));
        }
        if weight.is_zero() {
            continue;
        }
        let res = compiled.propagate(&inject)?;
        if !res.accepted {
            continue;
        }
        let key = res.residual.letters_in_order(&outputs);
        let e = out.entry(key).or_insert_with(Poly::zero);
        *e = &*e + &weight;
    }
    Ok(out)
}

/// Input distribution with each class at its given probability and the
/// identity class taking the rest.
pub fn class_model(errors: &[(&str, Poly)]) -> ClassDistribution {
    let mut m = ClassDistribution::new();
    let mut rest = Poly::one();
    for (k, p) in errors {
        rest = &rest - p;
        m.insert(k.to_string(), p.clone());
    }
    m.insert("III".to_string(), rest);
    m
}
