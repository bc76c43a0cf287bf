//! Symmetries of p-canonical coefficients: inversion, Cartan matrix automorphisms and
//! right star operations.

use crate::coxeter::{Elem, ElementTable, Gcm};

/// Non-trivial permutations `σ` of the generators with `a_{σ(i)σ(j)} = a_{ij}`.
pub fn diagram_automorphisms(gcm: &Gcm) -> Vec<Vec<usize>> {
    let n = gcm.rank();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(gcm: &Gcm, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        let k = perm.len();
        if k == n {
            if perm.iter().enumerate().any(|(i, p)| i != *p) {
                out.push(perm.clone());
            }
            return;
        }
        for c in 0..n {
            if used[c] || (0..k).any(|j| gcm.entry(c, perm[j]) != gcm.entry(k, j) || gcm.entry(perm[j], c) != gcm.entry(j, k)) {
                continue;
            }
            if gcm.entry(c, c) != gcm.entry(k, k) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            rec(gcm, perm, used, out);
            perm.pop();
            used[c] = false;
        }
    }
    rec(gcm, &mut perm, &mut used, &mut out);
    out
}

pub fn apply_automorphism(table: &ElementTable, sigma: &[usize], x: Elem) -> Option<Elem> {
    let w: Vec<u8> = table.word(x).iter().map(|s| sigma[*s as usize] as u8).collect();
    table.from_word(&w)
}

/// Whether star operations for a pair of order `m` may be used at characteristic `p`.
/// Order 3 always; order 4 for `p >= 3`; order 6 for `p >= 6`, or `p >= 5` when `liberal`.
pub fn star_is_good(m: u32, p: u64, liberal: bool) -> bool {
    let big = |k: u64| p == 0 || p >= k;
    match m {
        3 => true,
        4 => big(3),
        6 => big(if liberal { 5 } else { 6 }),
        _ => false,
    }
}

/// Position in the right dihedral string: `(k, d)` where `w = u v` with `u` minimal in
/// `w W_{s,t}`, `k = l(v)` and `d` the unique right descent of `w` among `s`, `t`.
fn string_position(table: &ElementTable, w: Elem, s: usize, t: usize) -> Option<(usize, usize)> {
    let ds = table.is_right_descent(w, s);
    let dt = table.is_right_descent(w, t);
    if ds == dt {
        return None;
    }
    let first = if ds { s } else { t };
    let mut v = w;
    let mut k = 0;
    loop {
        let d = if table.is_right_descent(v, s) {
            s
        } else if table.is_right_descent(v, t) {
            t
        } else {
            break;
        };
        v = table.right_mul(v, d)?;
        k += 1;
    }
    Some((k, first))
}

/// Right star operation with respect to `{s, t}`. For order 3 this is the classical involution
/// on the domain; for larger orders only the top of each string moves, one step down.
pub fn star(table: &ElementTable, w: Elem, s: usize, t: usize) -> Option<Elem> {
    let m = table.sys().m(s, t)? as usize;
    let (k, d) = string_position(table, w, s, t)?;
    let other = if d == s { t } else { s };
    match (m, k) {
        (3, 1) => table.right_mul(w, other),
        (3, 2) => table.right_mul(w, d),
        (m, k) if m > 3 && k == m - 1 => table.right_mul(w, d),
        _ => None,
    }
}
