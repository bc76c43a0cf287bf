//! Hecke algebra and antispherical module over `Z[v, v^-1]`, with the
//! Kazhdan-Lusztig basis computed by the classical recursion.

use crate::arith::Laurent;
use crate::coxeter::{Elem, ElementTable, Parabolic};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("element is not a minimal coset representative")]
    NotMinimalRep,
    #[error("product leaves the enumerated range")]
    OutOfRange,
}

/// Finite linear combination of basis elements indexed by group elements.
/// Which basis is meant is up to the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    terms: BTreeMap<Elem, Laurent>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: Elem) -> Self {
        Self::term(x, Laurent::one())
    }

    pub fn term(x: Elem, c: Laurent) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &c);
        h
    }

    pub fn add_term(&mut self, x: Elem, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(x).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn coeff(&self, x: Elem) -> Laurent {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Elem, &Laurent)> {
        self.terms.iter().map(|(x, c)| (*x, c))
    }

    pub fn support(&self) -> Vec<Elem> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (x, c) in other.terms() {
            self.add_term(x, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = Self::zero();
        for (x, d) in self.terms() {
            out.add_term(x, &(d * c));
        }
        out
    }

    /// Largest element of the support in enumeration order.
    pub fn top(&self) -> Option<(Elem, &Laurent)> {
        self.terms.iter().next_back().map(|(x, c)| (*x, c))
    }
}

fn quad() -> Laurent {
    // v^-1 - v
    Laurent::from_terms([(-1, 1), (1, -1)])
}

/// Right multiplication of a standard-basis element by `delta_s`.
pub fn mult_delta_s(t: &ElementTable, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
    let mut out = HeckeElt::zero();
    for (x, c) in h.terms() {
        let xs = t.right_mul(x, s).ok_or(HeckeError::OutOfRange)?;
        if t.length(xs) > t.length(x) {
            out.add_term(xs, c);
        } else {
            out.add_term(x, &(c * &quad()));
            out.add_term(xs, c);
        }
    }
    Ok(out)
}

/// Left multiplication of a standard-basis element by `delta_s`.
pub fn left_mult_delta_s(t: &ElementTable, s: usize, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
    let mut out = HeckeElt::zero();
    for (x, c) in h.terms() {
        let sx = t.left_mul(s, x).ok_or(HeckeError::OutOfRange)?;
        if t.length(sx) > t.length(x) {
            out.add_term(sx, c);
        } else {
            out.add_term(x, &(c * &quad()));
            out.add_term(sx, c);
        }
    }
    Ok(out)
}

/// Right multiplication by `delta_s^{-1} = delta_s + (v - v^-1)`.
fn mult_delta_s_inv(t: &ElementTable, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
    let mut out = mult_delta_s(t, h, s)?;
    out.add_assign(&h.scale(&(-&quad())));
    Ok(out)
}

/// Product of two standard-basis elements.
pub fn mult(t: &ElementTable, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, HeckeError> {
    let mut out = HeckeElt::zero();
    for (y, c) in b.terms() {
        let mut part = a.scale(c);
        for &s in t.word(y) {
            part = mult_delta_s(t, &part, s as usize)?;
        }
        out.add_assign(&part);
    }
    Ok(out)
}

/// Kazhdan-Lusztig involution on a standard-basis element.
pub fn bar(t: &ElementTable, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
    let mut out = HeckeElt::zero();
    for (x, c) in h.terms() {
        let mut part = HeckeElt::term(Elem::ID, c.bar());
        for &s in t.word(x) {
            part = mult_delta_s_inv(t, &part, s as usize)?;
        }
        out.add_assign(&part);
    }
    Ok(out)
}

/// Subtract multiples of known canonical elements so that every non-top
/// coefficient lies in `v Z[v]`; `canon(y)` returns the canonical element at `y`.
fn correct<F: Fn(Elem) -> HeckeElt>(mut h: HeckeElt, top: Elem, canon: F) -> HeckeElt {
    let ys: Vec<Elem> = h.support().into_iter().rev().collect();
    for y in ys {
        if y == top {
            continue;
        }
        let c = h.coeff(y);
        let mut gamma = Laurent::zero();
        for (d, k) in c.terms() {
            if d <= 0 {
                gamma.add_term(d, k);
                if d < 0 {
                    gamma.add_term(-d, k);
                }
            }
        }
        if !gamma.is_zero() {
            h = h.sub(&canon(y).scale(&gamma));
        }
    }
    h
}

/// Kazhdan-Lusztig basis and mu-coefficients for every element of a table.
#[derive(Debug)]
pub struct KlData {
    table: Arc<ElementTable>,
    b: Vec<HeckeElt>,
}

impl KlData {
    pub fn new(table: Arc<ElementTable>) -> Result<Self, HeckeError> {
        let mut b: Vec<HeckeElt> = Vec::with_capacity(table.len());
        for w in table.elems() {
            if w == Elem::ID {
                b.push(HeckeElt::basis(w));
                continue;
            }
            let s = *table.word(w).last().unwrap() as usize;
            let ws = table.right_mul(w, s).unwrap();
            let prev = &b[ws.idx()];
            let mut h = mult_delta_s(&table, prev, s)?;
            h.add_assign(&prev.scale(&Laurent::v()));
            let h = correct(h, w, |y| b[y.idx()].clone());
            b.push(h);
        }
        Ok(KlData { table, b })
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    /// `b_w` in the standard basis.
    pub fn canonical(&self, w: Elem) -> &HeckeElt {
        &self.b[w.idx()]
    }

    /// Kazhdan-Lusztig polynomial `h_{y,w}`.
    pub fn h(&self, y: Elem, w: Elem) -> Laurent {
        self.b[w.idx()].coeff(y)
    }

    pub fn mu(&self, y: Elem, w: Elem) -> i64 {
        self.h(y, w).coeff(1)
    }

    /// Nonzero `mu(y, w)` for `y < w`.
    pub fn mu_row(&self, w: Elem) -> Vec<(Elem, i64)> {
        self.b[w.idx()]
            .terms()
            .filter(|(y, _)| *y != w)
            .map(|(y, c)| (y, c.coeff(1)))
            .filter(|(_, m)| *m != 0)
            .collect()
    }

    /// Canonical-basis coordinates of a standard-basis element.
    pub fn to_canonical(&self, h: &HeckeElt) -> HeckeElt {
        let mut rest = h.clone();
        let mut out = HeckeElt::zero();
        while let Some((y, c)) = rest.top() {
            let c = c.clone();
            out.add_term(y, &c);
            rest = rest.sub(&self.b[y.idx()].scale(&c));
        }
        out
    }

    /// Standard-basis coordinates of a canonical-basis element.
    pub fn from_canonical(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (y, c) in h.terms() {
            out.add_assign(&self.b[y.idx()].scale(c));
        }
        out
    }

    /// `h b_s` for `h` in canonical coordinates, by the mu-formula.
    pub fn canonical_mult_bs(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
        let t = &self.table;
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let xs = t.right_mul(x, s).ok_or(HeckeError::OutOfRange)?;
            if t.length(xs) < t.length(x) {
                out.add_term(x, &(c * &Laurent::quantum_two()));
                continue;
            }
            out.add_term(xs, c);
            for (y, m) in self.mu_row(x) {
                if t.is_right_descent(y, s) {
                    out.add_term(y, &c.scale(m));
                }
            }
        }
        Ok(out)
    }

    /// `b_s h` for `h` in canonical coordinates.
    pub fn canonical_left_mult_bs(&self, s: usize, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let t = &self.table;
        let inv = |h: &HeckeElt| -> Result<HeckeElt, HeckeError> {
            let mut out = HeckeElt::zero();
            for (x, c) in h.terms() {
                out.add_term(t.inverse(x).ok_or(HeckeError::OutOfRange)?, c);
            }
            Ok(out)
        };
        inv(&self.canonical_mult_bs(&inv(h)?, s)?)
    }

    /// `b_{s_1} ... b_{s_k}` in canonical coordinates.
    pub fn bott_samelson(&self, word: &[u8]) -> Result<HeckeElt, HeckeError> {
        let mut h = HeckeElt::basis(Elem::ID);
        for &s in word {
            h = self.canonical_mult_bs(&h, s as usize)?;
        }
        Ok(h)
    }
}

/// Antispherical module `L(-v) (x)_{H_I} H` with basis `1 (x) delta_x`, `x` minimal.
#[derive(Debug)]
pub struct Antispherical {
    table: Arc<ElementTable>,
    par: Parabolic,
    reps: Vec<Elem>,
    d: BTreeMap<Elem, HeckeElt>,
}

impl Antispherical {
    pub fn new(table: Arc<ElementTable>, par: Parabolic) -> Result<Self, HeckeError> {
        let reps: Vec<Elem> = table.elems().filter(|x| table.is_minimal(*x, &par)).collect();
        let mut a = Antispherical {
            table,
            par,
            reps,
            d: BTreeMap::new(),
        };
        for &x in &a.reps.clone() {
            let dx = if x == Elem::ID {
                HeckeElt::basis(x)
            } else {
                let s = *a.table.word(x).last().unwrap() as usize;
                let xs = a.table.right_mul(x, s).unwrap();
                let prev = a.d[&xs].clone();
                let mut h = a.mult_delta_s(&prev, s)?;
                h.add_assign(&prev.scale(&Laurent::v()));
                correct(h, x, |y| a.d[&y].clone())
            };
            a.d.insert(x, dx);
        }
        Ok(a)
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn parabolic(&self) -> &Parabolic {
        &self.par
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn is_rep(&self, x: Elem) -> bool {
        self.d.contains_key(&x)
    }

    /// `(1 (x) delta_x) delta_s`, extended linearly.
    pub fn mult_delta_s(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
        let t = &self.table;
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let xs = t.right_mul(x, s).ok_or(HeckeError::OutOfRange)?;
            if t.length(xs) < t.length(x) {
                out.add_term(x, &(c * &quad()));
                out.add_term(xs, c);
            } else if t.is_minimal(xs, &self.par) {
                out.add_term(xs, c);
            } else {
                out.add_term(x, &(c * &Laurent::monomial(-1, 1)));
            }
        }
        Ok(out)
    }

    /// Image of a standard-basis Hecke element under `h -> 1 (x) h`.
    pub fn project(&self, h: &HeckeElt) -> HeckeElt {
        let t = &self.table;
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let mut y = x;
            let mut k = 0;
            while let Some(s) = self.par.gens().into_iter().find(|s| t.is_left_descent(*s, y)) {
                y = t.left_mul(s, y).unwrap();
                k += 1;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            out.add_term(y, &c.shift(k).scale(sign));
        }
        out
    }

    pub fn bar(&self, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (x, c) in h.terms() {
            let mut part = HeckeElt::term(Elem::ID, c.bar());
            for &s in self.table.word(x) {
                let mut next = self.mult_delta_s(&part, s as usize)?;
                next.add_assign(&part.scale(&(-&quad())));
                part = next;
            }
            out.add_assign(&part);
        }
        Ok(out)
    }

    /// Canonical element `d_x` in the standard basis.
    pub fn canonical(&self, x: Elem) -> Result<&HeckeElt, HeckeError> {
        self.d.get(&x).ok_or(HeckeError::NotMinimalRep)
    }

    /// Antispherical Kazhdan-Lusztig polynomial `n_{y,x}`.
    pub fn n(&self, y: Elem, x: Elem) -> Laurent {
        self.d.get(&x).map(|h| h.coeff(y)).unwrap_or_default()
    }

    pub fn to_canonical(&self, h: &HeckeElt) -> HeckeElt {
        let mut rest = h.clone();
        let mut out = HeckeElt::zero();
        while let Some((y, c)) = rest.top() {
            let c = c.clone();
            out.add_term(y, &c);
            rest = rest.sub(&self.d[&y].scale(&c));
        }
        out
    }

    pub fn from_canonical(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (y, c) in h.terms() {
            out.add_assign(&self.d[&y].scale(c));
        }
        out
    }

    /// `h b_s` for `h` in canonical coordinates.
    pub fn canonical_mult_bs(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
        let std = self.from_canonical(h);
        let mut prod = self.mult_delta_s(&std, s)?;
        prod.add_assign(&std.scale(&Laurent::v()));
        Ok(self.to_canonical(&prod))
    }
}

/// Either the Hecke algebra or an antispherical module, behind one interface.
#[derive(Debug)]
pub enum KlOracle {
    Hecke(KlData),
    Anti(Antispherical),
}

impl KlOracle {
    pub fn new(table: Arc<ElementTable>, par: Option<Parabolic>) -> Result<Self, HeckeError> {
        Ok(match par {
            None => KlOracle::Hecke(KlData::new(table)?),
            Some(p) => KlOracle::Anti(Antispherical::new(table, p)?),
        })
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        match self {
            KlOracle::Hecke(k) => k.table(),
            KlOracle::Anti(a) => a.table(),
        }
    }

    /// Basis labels in enumeration order.
    pub fn elements(&self) -> Vec<Elem> {
        match self {
            KlOracle::Hecke(k) => k.table().elems().collect(),
            KlOracle::Anti(a) => a.reps().to_vec(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        match self {
            KlOracle::Hecke(_) => true,
            KlOracle::Anti(a) => a.is_rep(x),
        }
    }

    /// `h_{y,x}`, or its antispherical analogue.
    pub fn h(&self, y: Elem, x: Elem) -> Laurent {
        match self {
            KlOracle::Hecke(k) => k.h(y, x),
            KlOracle::Anti(a) => a.n(y, x),
        }
    }

    pub fn canonical_mult_bs(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
        match self {
            KlOracle::Hecke(k) => k.canonical_mult_bs(h, s),
            KlOracle::Anti(a) => a.canonical_mult_bs(h, s),
        }
    }

    pub fn from_canonical(&self, h: &HeckeElt) -> HeckeElt {
        match self {
            KlOracle::Hecke(k) => k.from_canonical(h),
            KlOracle::Anti(a) => a.from_canonical(h),
        }
    }

    pub fn to_canonical(&self, h: &HeckeElt) -> HeckeElt {
        match self {
            KlOracle::Hecke(k) => k.to_canonical(h),
            KlOracle::Anti(a) => a.to_canonical(h),
        }
    }
}

#[cfg(test)]
mod tests;
