//! The standard category: morphisms between direct sums of standard objects,
//! stored as sparse matrices with frames labelling rows and columns.

mod action;

pub use action::{Action, Survivors};

use crate::arith::{ArithError, Coeff, RatFunc};
use crate::coxeter::{Elem, ElementTable};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StdError {
    #[error("frame mismatch in composition")]
    FrameMismatch,
    #[error("nonzero entry at ({0}, {1}) between distinct standard objects")]
    StructuralZero(usize, usize),
    #[error("index out of range")]
    Dimension,
    #[error("frame element leaves the enumerated range")]
    OutOfRange,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Morphism `dom -> cod`; `cols[j]` lists the nonzero `(row, value)` pairs of column `j`,
/// sorted by row.
#[derive(Clone, Debug, PartialEq)]
pub struct StdMor<C> {
    dom: Vec<Elem>,
    cod: Vec<Elem>,
    cols: Vec<Vec<(u32, C)>>,
    deg: i32,
}

impl<C: Coeff> StdMor<C> {
    pub fn new(dom: Vec<Elem>, cod: Vec<Elem>, mut cols: Vec<Vec<(u32, C)>>, deg: i32) -> Result<Self, StdError> {
        if cols.len() != dom.len() {
            return Err(StdError::Dimension);
        }
        for (j, col) in cols.iter_mut().enumerate() {
            col.retain(|(_, c)| !c.is_zero());
            col.sort_by_key(|(i, _)| *i);
            for w in col.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(StdError::Dimension);
                }
            }
            for (i, _) in col.iter() {
                let i = *i as usize;
                if i >= cod.len() {
                    return Err(StdError::Dimension);
                }
                if cod[i] != dom[j] {
                    return Err(StdError::StructuralZero(i, j));
                }
            }
        }
        Ok(StdMor { dom, cod, cols, deg })
    }

    pub fn from_dense(dom: Vec<Elem>, cod: Vec<Elem>, rows: Vec<Vec<C>>, deg: i32) -> Result<Self, StdError> {
        if rows.len() != cod.len() || rows.iter().any(|r| r.len() != dom.len()) {
            return Err(StdError::Dimension);
        }
        let mut cols = vec![Vec::new(); dom.len()];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    cols[j].push((i as u32, c));
                }
            }
        }
        Self::new(dom, cod, cols, deg)
    }

    pub fn identity(frame: Vec<Elem>) -> Self {
        let cols = (0..frame.len()).map(|j| vec![(j as u32, C::one())]).collect();
        StdMor {
            dom: frame.clone(),
            cod: frame,
            cols,
            deg: 0,
        }
    }

    pub fn zero(dom: Vec<Elem>, cod: Vec<Elem>, deg: i32) -> Self {
        let cols = vec![Vec::new(); dom.len()];
        StdMor { dom, cod, cols, deg }
    }

    pub fn dom(&self) -> &[Elem] {
        &self.dom
    }

    pub fn cod(&self) -> &[Elem] {
        &self.cod
    }

    pub fn deg(&self) -> i32 {
        self.deg
    }

    pub fn with_deg(mut self, deg: i32) -> Self {
        self.deg = deg;
        self
    }

    pub fn nrows(&self) -> usize {
        self.cod.len()
    }

    pub fn ncols(&self) -> usize {
        self.dom.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, C)] {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[Vec<(u32, C)>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        match self.cols[j].binary_search_by_key(&(i as u32), |(r, _)| *r) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Row `i` as `(column, value)` pairs.
    pub fn row(&self, i: usize) -> Vec<(u32, C)> {
        let mut out = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            if let Ok(k) = col.binary_search_by_key(&(i as u32), |(r, _)| *r) {
                out.push((j as u32, col[k].1.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<C>> {
        let mut rows = vec![vec![C::zero(); self.ncols()]; self.nrows()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i as usize][j] = c.clone();
            }
        }
        rows
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &StdMor<C>) -> Result<StdMor<C>, StdError> {
        if self.dom != g.cod {
            return Err(StdError::FrameMismatch);
        }
        let cols = g
            .cols
            .iter()
            .map(|gcol| {
                let mut acc: BTreeMap<u32, C> = BTreeMap::new();
                for (k, gk) in gcol {
                    for (i, fik) in &self.cols[*k as usize] {
                        let t = fik.mul(gk);
                        match acc.get_mut(i) {
                            Some(a) => *a = a.add(&t),
                            None => {
                                acc.insert(*i, t);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        Ok(StdMor {
            dom: g.dom.clone(),
            cod: self.cod.clone(),
            cols,
            deg: self.deg + g.deg,
        })
    }

    fn zip(&self, other: &StdMor<C>, f: impl Fn(&C, &C) -> C) -> Result<StdMor<C>, StdError> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(StdError::FrameMismatch);
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<u32, C> = a.iter().cloned().collect();
                for (i, c) in b {
                    let z = C::zero();
                    let cur = acc.get(i).unwrap_or(&z);
                    let v = f(cur, c);
                    acc.insert(*i, v);
                }
                for (i, c) in a {
                    if !b.iter().any(|(k, _)| k == i) {
                        acc.insert(*i, f(c, &C::zero()));
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        Ok(StdMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols,
            deg: self.deg,
        })
    }

    pub fn add(&self, other: &StdMor<C>) -> Result<StdMor<C>, StdError> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &StdMor<C>) -> Result<StdMor<C>, StdError> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &C) -> StdMor<C> {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(i, x)| (*i, x.mul(c))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        StdMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols,
            deg: self.deg,
        }
    }

    /// Entries on each column scaled by a per-column factor.
    pub fn scale_cols(&self, f: &[C]) -> StdMor<C> {
        let cols = self
            .cols
            .iter()
            .zip(f)
            .map(|(col, c)| col.iter().map(|(i, x)| (*i, x.mul(c))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        StdMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols,
            deg: self.deg,
        }
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> StdMor<C> {
        let mut pos = vec![u32::MAX; self.nrows()];
        for (k, r) in rows.iter().enumerate() {
            pos[*r] = k as u32;
        }
        let new_cols = cols
            .iter()
            .map(|j| {
                let mut c: Vec<(u32, C)> = self.cols[*j]
                    .iter()
                    .filter(|(i, _)| pos[*i as usize] != u32::MAX)
                    .map(|(i, x)| (pos[*i as usize], x.clone()))
                    .collect();
                c.sort_by_key(|(i, _)| *i);
                c
            })
            .collect();
        StdMor {
            dom: cols.iter().map(|j| self.dom[*j]).collect(),
            cod: rows.iter().map(|i| self.cod[*i]).collect(),
            cols: new_cols,
            deg: self.deg,
        }
    }

    /// Image in the quotient killing every standard object strictly below `w`.
    pub fn loc_quotient(&self, table: &ElementTable, w: Elem) -> StdMor<C> {
        let keep = |f: &[Elem]| -> Vec<usize> { (0..f.len()).filter(|&i| !table.lt(f[i], w)).collect() };
        self.restrict(&keep(&self.cod), &keep(&self.dom))
    }

    pub fn transpose(&self) -> StdMor<C> {
        let mut cols = vec![Vec::new(); self.nrows()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                cols[*i as usize].push((j as u32, c.clone()));
            }
        }
        StdMor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            cols,
            deg: self.deg,
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D, ArithError>) -> Result<StdMor<D>, StdError> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for col in &self.cols {
            let mut c = Vec::with_capacity(col.len());
            for (i, x) in col {
                let y = f(x)?;
                if !y.is_zero() {
                    c.push((*i, y));
                }
            }
            cols.push(c);
        }
        Ok(StdMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            cols,
            deg: self.deg,
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&StdMor<C>]) -> StdMor<C> {
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        let mut cols = Vec::new();
        let deg = parts.first().map_or(0, |p| p.deg);
        for p in parts {
            let off = cod.len() as u32;
            dom.extend_from_slice(&p.dom);
            cod.extend_from_slice(&p.cod);
            for col in &p.cols {
                cols.push(col.iter().map(|(i, c)| (i + off, c.clone())).collect());
            }
        }
        StdMor { dom, cod, cols, deg }
    }

    /// Columns placed side by side; all parts share a codomain.
    pub fn hcat(parts: &[&StdMor<C>]) -> Result<StdMor<C>, StdError> {
        let cod = parts.first().map_or(Vec::new(), |p| p.cod.clone());
        let mut dom = Vec::new();
        let mut cols = Vec::new();
        for p in parts {
            if p.cod != cod {
                return Err(StdError::FrameMismatch);
            }
            dom.extend_from_slice(&p.dom);
            cols.extend(p.cols.iter().cloned());
        }
        let deg = parts.first().map_or(0, |p| p.deg);
        Ok(StdMor { dom, cod, cols, deg })
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.cols.iter().flatten().map(|(_, c)| c.size_bits()).max().unwrap_or(0)
    }

    /// Deterministic text form: frames as words, entries as coefficient text.
    pub fn to_text(&self, table: &ElementTable) -> String {
        let frame = |f: &[Elem]| f.iter().map(|x| table.word_string(*x)).collect::<Vec<_>>().join(" ");
        let mut s = format!("deg {}\ndom {}\ncod {}\n", self.deg, frame(&self.dom), frame(&self.cod));
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                s.push_str(&format!("{} {} {}\n", i, j, c.to_text()));
            }
        }
        s
    }

    pub fn from_text(table: &ElementTable, s: &str) -> Option<StdMor<C>> {
        let mut lines = s.lines();
        let deg = lines.next()?.strip_prefix("deg ")?.trim().parse().ok()?;
        let frame = |l: &str, tag: &str| -> Option<Vec<Elem>> {
            l.strip_prefix(tag)?.split_whitespace().map(|w| table.parse_word(w)).collect()
        };
        let dom = frame(lines.next()?, "dom")?;
        let cod = frame(lines.next()?, "cod")?;
        let mut cols = vec![Vec::new(); dom.len()];
        for l in lines {
            let mut it = l.splitn(3, ' ');
            let i: u32 = it.next()?.parse().ok()?;
            let j: usize = it.next()?.parse().ok()?;
            let c = C::from_text(it.next()?)?;
            cols.get_mut(j)?.push((i, c));
        }
        StdMor::new(dom, cod, cols, deg).ok()
    }
}

/// Twisted Kronecker product: block `(i, j)` is `f[i][j]` times `g` twisted by `cod(f)[i]`.
pub fn tensor<C: Coeff>(
    f: &StdMor<C>,
    g: &StdMor<C>,
    mul: impl Fn(Elem, Elem) -> Option<Elem>,
    twist: impl Fn(Elem, &C) -> Result<C, ArithError>,
) -> Result<StdMor<C>, StdError> {
    let prod = |a: &[Elem], b: &[Elem]| -> Result<Vec<Elem>, StdError> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(mul(*x, *y).ok_or(StdError::OutOfRange)?);
            }
        }
        Ok(out)
    };
    let dom = prod(&f.dom, &g.dom)?;
    let cod = prod(&f.cod, &g.cod)?;
    let (gr, gc) = (g.nrows() as u32, g.ncols());
    let mut cols = vec![Vec::new(); dom.len()];
    for (j, fcol) in f.cols.iter().enumerate() {
        for (i, fij) in fcol {
            let x = f.cod[*i as usize];
            for (b, gcol) in g.cols.iter().enumerate() {
                for (a, gab) in gcol {
                    cols[j * gc + b].push((i * gr + a, fij.mul(&twist(x, gab)?)));
                }
            }
        }
    }
    StdMor::new(dom, cod, cols, f.deg + g.deg)
}

/// [`tensor`] in the adjoint realisation of an element table.
pub fn tensor_adjoint(table: &ElementTable, f: &StdMor<RatFunc>, g: &StdMor<RatFunc>) -> Result<StdMor<RatFunc>, StdError> {
    tensor(f, g, |x, y| table.mul(x, y), |x, c| Ok(c.twist(table.twist_cols(x))))
}

#[cfg(test)]
mod tests;
