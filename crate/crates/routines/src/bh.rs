//! Triorthogonal-matrix distillation of `|e^{iπ/4}⟩` states.
//!
//! With `G = [G1; G0]` triorthogonal, the `n` noisy inputs are rotated by a
//! CNOT network into `(u, v, s)` with `z = (u, v, s)·B`, `B = [G1; G0; R]`.
//! Measuring `s` leaves phases that Clifford corrections remove, after which
//! `u` holds the outputs and `v` should read `+` in the X basis. A Z error
//! `e` leaves syndrome `G0·e` and residual `Z^{G1·e}`.

use msd_circuit::{Circuit, MagicKind, Parity, QubitId, Role};
use msd_pauli::Gate;

use crate::build::B;
use crate::RoutineError;

pub type Bits = Vec<bool>;

pub fn parse_rows(rows: &[&str]) -> Vec<Bits> {
    rows.iter().map(|r| r.bytes().map(|c| c == b'1').collect()).collect()
}

fn weight(r: &[bool]) -> usize {
    r.iter().filter(|&&x| x).count()
}

fn and(a: &[bool], b: &[bool]) -> Bits {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

/// Checks the weight conditions: rows of `g1` odd, rows of `g0` even, all
/// pairs and triples of rows overlapping evenly.
pub fn is_triorthogonal(g1: &[Bits], g0: &[Bits]) -> bool {
    let rows: Vec<&Bits> = g1.iter().chain(g0).collect();
    let n = rows.len();
    if g1.iter().any(|r| weight(r).is_multiple_of(2)) || g0.iter().any(|r| weight(r) % 2 == 1) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            let ab = and(rows[a], rows[b]);
            if weight(&ab) % 2 == 1 {
                return false;
            }
            for c in &rows[b + 1..] {
                if weight(&and(&ab, c)) % 2 == 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Extends `rows` with unit vectors to a basis. `None` if `rows` are dependent.
fn complete(rows: &[Bits], n: usize) -> Option<Vec<Bits>> {
    let mut basis: Vec<Bits> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let reduce = |v: &mut Bits, basis: &[Bits], pivots: &[usize]| {
        for (b, &p) in basis.iter().zip(pivots) {
            if v[p] {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
    };
    let mut out = Vec::new();
    let add = |v: &Bits, basis: &mut Vec<Bits>, pivots: &mut Vec<usize>| -> bool {
        let mut w = v.clone();
        reduce(&mut w, basis, pivots);
        match w.iter().position(|&x| x) {
            Some(p) => {
                // keep basis reduced on the new pivot
                for b in basis.iter_mut() {
                    if b[p] {
                        b.iter_mut().zip(&w).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push(w);
                pivots.push(p);
                true
            }
            None => false,
        }
    };
    for r in rows {
        if !add(r, &mut basis, &mut pivots) {
            return None;
        }
        out.push(r.clone());
    }
    for i in 0..n {
        let e: Bits = (0..n).map(|j| j == i).collect();
        if add(&e, &mut basis, &mut pivots) {
            out.push(e);
        }
    }
    Some(out)
}

fn inverse(m: &[Bits]) -> Option<Vec<Bits>> {
    let n = m.len();
    let mut a: Vec<Bits> = m.to_vec();
    let mut inv: Vec<Bits> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col])?;
        a.swap(col, piv);
        inv.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] {
                let (ar, ir) = (a[col].clone(), inv[col].clone());
                a[r].iter_mut().zip(&ar).for_each(|(x, y)| *x ^= y);
                inv[r].iter_mut().zip(&ir).for_each(|(x, y)| *x ^= y);
            }
        }
    }
    Some(inv)
}

/// CNOTs `(control, target)` on wires `0..n` taking wire functions from the
/// identity to the columns of `m`: after the network wire `j` holds
/// `Σ_i z_i m[i][j]`. Each CNOT adds the control column into the target
/// column, so reducing `m` to the identity and replaying in reverse works.
pub fn synthesize(m: &[Bits]) -> Option<Vec<(usize, usize)>> {
    let n = m.len();
    let mut a: Vec<Bits> = m.to_vec();
    let mut ops = Vec::new();
    let add_col = |a: &mut Vec<Bits>, c: usize, t: usize| {
        for row in a.iter_mut() {
            row[t] ^= row[c];
        }
    };
    for i in 0..n {
        if !a[i][i] {
            let j = (i + 1..n).find(|&j| a[i][j])?;
            add_col(&mut a, j, i);
            ops.push((j, i));
        }
        for j in 0..n {
            if j != i && a[i][j] {
                add_col(&mut a, i, j);
                ops.push((i, j));
            }
        }
    }
    ops.reverse();
    Some(ops)
}

/// Distillation from a triorthogonal `[g1; g0]`; outputs one state per row
/// of `g1`.
pub fn bravyi_haah(g1: &[Bits], g0: &[Bits]) -> Result<Circuit, RoutineError> {
    if !is_triorthogonal(g1, g0) {
        return Err(RoutineError::NotTriorthogonal);
    }
    let n = g1.first().or(g0.first()).map_or(0, Vec::len);
    let rows: Vec<Bits> = g1.iter().chain(g0).cloned().collect();
    let full = complete(&rows, n).ok_or(RoutineError::DependentRows)?;
    let m = inverse(&full).expect("completed basis is invertible");
    let cnots = synthesize(&m).expect("invertible");
    let (k, r) = (g1.len(), rows.len());

    let mut b = B::new();
    let q: Vec<QubitId> = (0..n).map(|_| b.magic(MagicKind::PiOver4, Role::MagicInput)).collect();
    for (c, t) in cnots {
        b.cnot(q[c], q[t]);
    }
    // after the network q[j] holds coordinate j of (u, v, s)
    let s_bits: Vec<_> = (r..n).map(|j| b.mz(q[j])).collect();
    // c = s·R, column by column
    let c_par: Vec<Parity> = (0..n)
        .map(|i| Parity::of((r..n).filter(|&j| full[j][i]).map(|j| s_bits[j - r])))
        .collect();
    for (a, ga) in rows.iter().enumerate() {
        for i in (0..n).filter(|&i| ga[i]) {
            if !c_par[i].bits.is_empty() {
                b.when(c_par[i].clone(), Gate::S(q[a]));
            }
        }
        let w = weight(ga);
        let fixed = if a < k { (w - 1) / 2 } else { w / 2 };
        if fixed % 4 != 0 {
            b.g(Gate::rot_z(q[a], -(fixed as i32)));
        }
    }
    for a in 0..r {
        for bb in a + 1..r {
            let both = and(&rows[a], &rows[bb]);
            let mut bits = Vec::new();
            for i in (0..n).filter(|&i| both[i]) {
                bits.extend(c_par[i].bits.iter().copied());
            }
            // a bit appearing twice cancels
            bits.sort_unstable();
            let mut uniq: Vec<_> = Vec::new();
            for x in bits {
                if uniq.last() == Some(&x) {
                    uniq.pop();
                } else {
                    uniq.push(x);
                }
            }
            if !uniq.is_empty() {
                b.when(Parity::of(uniq), Gate::Cz(q[a], q[bb]));
            }
            if (weight(&both) / 2) % 2 == 1 {
                b.g(Gate::Cz(q[a], q[bb]));
            }
        }
    }
    for &v in &q[k..r] {
        let m = b.mx(v);
        b.reject_if(Parity::bit(m));
    }
    Ok(b.finish(q[..k].to_vec()))
}

/// Rows `G1` then `G0` of the 14-qubit matrix.
pub const FOURTEEN: [&str; 5] = [
    "00000001111111",
    "11111110000000",
    "00011110001111",
    "01100110110011",
    "10101011010101",
];

/// Rows `G1` (six) then `G0` (three) of a 26-qubit matrix, found by a
/// SAT search over the weight conditions.
pub const TWENTY_SIX: [&str; 9] = [
    "11100000000000000001011001",
    "00011100000000000011111111",
    "00000011100000000010100110",
    "00000000011100000001011001",
    "00000000000011100001011001",
    "00000000000000011111111111",
    "11010110101111001110001101",
    "11001111001111011011110000",
    "01110111010110101100010111",
];

pub fn fourteen_to_two() -> Circuit {
    let rows = parse_rows(&FOURTEEN);
    bravyi_haah(&rows[..2], &rows[2..]).expect("fixed matrix is valid")
}

pub fn twenty_six_to_six() -> Circuit {
    let rows = parse_rows(&TWENTY_SIX);
    bravyi_haah(&rows[..6], &rows[6..]).expect("fixed matrix is valid")
}
