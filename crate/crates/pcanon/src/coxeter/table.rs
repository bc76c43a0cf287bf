use super::{CoxElt, CoxeterError, CoxeterSystem, Parabolic, Root};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Index of an element in an [`ElementTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ID: Elem = Elem(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// All elements up to a length limit, with multiplication by generators,
/// inverses, Bruhat ideals and twist data precomputed.
#[derive(Debug)]
pub struct ElementTable {
    sys: Arc<CoxeterSystem>,
    limit: Option<usize>,
    elts: Vec<CoxElt>,
    index: HashMap<Vec<i64>, Elem>,
    right: Vec<Vec<Option<Elem>>>,
    left: Vec<Vec<Option<Elem>>>,
    inverse: Vec<Option<Elem>>,
    below: Vec<Vec<u64>>,
    cols: Vec<Vec<Vec<i64>>>,
}

impl ElementTable {
    pub fn new(sys: Arc<CoxeterSystem>, limit: Option<usize>, cap: usize) -> Result<Self, CoxeterError> {
        let elts = sys.enumerate(limit, None, cap)?;
        let n = sys.rank();
        let index: HashMap<Vec<i64>, Elem> = elts
            .iter()
            .enumerate()
            .map(|(i, e)| (e.mat().to_vec(), Elem(i as u32)))
            .collect();
        let lookup = |x: &CoxElt| index.get(x.mat()).copied();
        let mut right = Vec::with_capacity(elts.len());
        let mut left = Vec::with_capacity(elts.len());
        let mut inverse = Vec::with_capacity(elts.len());
        let mut cols = Vec::with_capacity(elts.len());
        for x in &elts {
            let mut r = Vec::with_capacity(n);
            let mut l = Vec::with_capacity(n);
            for s in 0..n {
                let g = sys.gen(s)?;
                r.push(lookup(&sys.multiply(x, &g)?));
                l.push(lookup(&sys.multiply(&g, x)?));
            }
            right.push(r);
            left.push(l);
            inverse.push(lookup(&sys.inverse(x)?));
            let m = x.mat();
            cols.push((0..n).map(|j| (0..n).map(|i| m[i * n + j]).collect()).collect());
        }
        let words = elts.len().div_ceil(64);
        let mut below: Vec<Vec<u64>> = Vec::with_capacity(elts.len());
        for (i, x) in elts.iter().enumerate() {
            let mut bits = vec![0u64; words];
            if i == 0 {
                bits[0] |= 1;
            } else {
                let s = *x.word().last().unwrap() as usize;
                let ws = right[i][s].expect("shorter element present").idx();
                for (k, item) in below[ws].iter().enumerate() {
                    bits[k] |= item;
                }
                for y in 0..elts.len() {
                    if below[ws][y / 64] >> (y % 64) & 1 == 1 {
                        if let Some(ys) = right[y][s] {
                            bits[ys.idx() / 64] |= 1 << (ys.idx() % 64);
                        }
                    }
                }
            }
            below.push(bits);
        }
        Ok(ElementTable {
            sys,
            limit,
            elts,
            index,
            right,
            left,
            inverse,
            below,
            cols,
        })
    }

    pub fn sys(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.elts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elts.is_empty()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.elts.len() as u32).map(Elem)
    }

    pub fn elt(&self, x: Elem) -> &CoxElt {
        &self.elts[x.idx()]
    }

    pub fn word(&self, x: Elem) -> &[u8] {
        self.elts[x.idx()].word()
    }

    pub fn length(&self, x: Elem) -> usize {
        self.elts[x.idx()].len()
    }

    pub fn lookup(&self, x: &CoxElt) -> Option<Elem> {
        self.index.get(x.mat()).copied()
    }

    pub fn from_word(&self, word: &[u8]) -> Option<Elem> {
        let mut x = Elem::ID;
        for &s in word {
            x = self.right[x.idx()][s as usize]?;
        }
        Some(x)
    }

    pub fn right_mul(&self, x: Elem, s: usize) -> Option<Elem> {
        self.right[x.idx()][s]
    }

    pub fn left_mul(&self, s: usize, x: Elem) -> Option<Elem> {
        self.left[x.idx()][s]
    }

    /// `x y`, when it lies within the table.
    pub fn mul(&self, x: Elem, y: Elem) -> Option<Elem> {
        let mut z = x;
        for &s in self.word(y) {
            z = self.right[z.idx()][s as usize]?;
        }
        Some(z)
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.inverse[x.idx()]
    }

    pub fn is_right_descent(&self, x: Elem, s: usize) -> bool {
        let n = self.rank();
        let m = self.elt(x).mat();
        (0..n).any(|i| m[i * n + s] < 0)
    }

    pub fn right_descents(&self, x: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|s| self.is_right_descent(x, *s)).collect()
    }

    pub fn is_left_descent(&self, s: usize, x: Elem) -> bool {
        match self.left_mul(s, x) {
            Some(y) => self.length(y) < self.length(x),
            None => false,
        }
    }

    pub fn left_descents(&self, x: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|s| self.is_left_descent(*s, x)).collect()
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.below[y.idx()][x.idx() / 64] >> (x.idx() % 64) & 1 == 1
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// Elements below `y` in enumeration order.
    pub fn ideal(&self, y: Elem) -> Vec<Elem> {
        self.elems().filter(|x| self.leq(*x, y)).collect()
    }

    /// Columns of the action matrix: `x(alpha_j)` as coordinate vectors.
    pub fn twist_cols(&self, x: Elem) -> &[Vec<i64>] {
        &self.cols[x.idx()]
    }

    pub fn act_on_root(&self, x: Elem, beta: &[i64]) -> Vec<i64> {
        let cols = &self.cols[x.idx()];
        let n = self.rank();
        let mut out = vec![0; n];
        for (j, b) in beta.iter().enumerate() {
            for i in 0..n {
                out[i] += cols[j][i] * b;
            }
        }
        out
    }

    pub fn is_minimal(&self, x: Elem, par: &Parabolic) -> bool {
        par.gens().iter().all(|s| !self.is_left_descent(*s, x))
    }

    /// `x(alpha_s)` as a root.
    pub fn root_image(&self, x: Elem, s: usize) -> Root {
        Root {
            coords: self.cols[x.idx()][s].clone(),
        }
    }

    /// Word as a digit string, `id` for the identity.
    pub fn word_string(&self, x: Elem) -> String {
        word_string(self.word(x))
    }

    pub fn parse_word(&self, s: &str) -> Option<Elem> {
        self.from_word(&parse_word(s)?)
    }
}

pub fn word_string(w: &[u8]) -> String {
    if w.is_empty() {
        "id".into()
    } else {
        w.iter().map(|s| char::from(b'0' + s)).collect()
    }
}

pub fn parse_word(s: &str) -> Option<Vec<u8>> {
    let s = s.trim();
    if s == "id" {
        return Some(vec![]);
    }
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as u8))
        .collect()
}
