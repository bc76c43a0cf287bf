//! Exact linear algebra on framed matrices: echelon forms, block inverses,
//! idempotent splitting and incremental independence tests.

use crate::arith::{Coeff, PModular, RatFunc};
use crate::coxeter::Elem;
use crate::stdcat::{StdError, StdMor};
use std::collections::BTreeMap;

fn pick_pivot<C: Coeff>(rows: &[Vec<C>], from: usize, col: usize) -> Option<usize> {
    let mut best: Option<(usize, (bool, u64))> = None;
    for (r, row) in rows.iter().enumerate().skip(from) {
        let c = &row[col];
        if c.is_zero() {
            continue;
        }
        let key = (c.as_constant().is_none(), c.size_bits());
        if best.as_ref().is_none_or(|(_, k)| key < *k) {
            best = Some((r, key));
        }
    }
    best.map(|b| b.0)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<C: Coeff>(rows: &mut Vec<Vec<C>>) -> Result<Vec<usize>, StdError> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = pick_pivot(rows, rank, c) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv()?;
        rows[rank] = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..rows.len() {
            if r == rank || rows[r][c].is_zero() {
                continue;
            }
            let f = rows[r][c].clone();
            for k in 0..ncols {
                if !rows[rank][k].is_zero() {
                    let t = rows[r][k].sub(&f.mul(&rows[rank][k]));
                    rows[r][k] = t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Ok(pivots)
}

/// Indices of a frame grouped by element, each group in increasing order.
pub fn frame_groups(frame: &[Elem]) -> BTreeMap<Elem, Vec<usize>> {
    let mut g: BTreeMap<Elem, Vec<usize>> = BTreeMap::new();
    for (i, x) in frame.iter().enumerate() {
        g.entry(*x).or_default().push(i);
    }
    g
}

fn dense_block<C: Coeff>(m: &StdMor<C>, rows: &[usize], cols: &[usize]) -> Vec<Vec<C>> {
    let sub = m.restrict(rows, cols);
    sub.to_dense()
}

/// Inverse of an endomorphism, computed block by block.
pub fn invert<C: Coeff>(m: &StdMor<C>) -> Result<StdMor<C>, StdError> {
    if m.dom() != m.cod() {
        return Err(StdError::FrameMismatch);
    }
    let n = m.ncols();
    let mut cols: Vec<Vec<(u32, C)>> = vec![Vec::new(); n];
    for idx in frame_groups(m.dom()).values() {
        let k = idx.len();
        let block = dense_block(m, idx, idx);
        let mut aug: Vec<Vec<C>> = block
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..k).map(|j| if i == j { C::one() } else { C::zero() }));
                row
            })
            .collect();
        let piv = rref(&mut aug)?;
        if piv.len() != k || piv.iter().enumerate().any(|(a, b)| a != *b) {
            return Err(StdError::Arith(crate::arith::ArithError::DivisionByZero));
        }
        for (a, row) in aug.iter().enumerate() {
            for b in 0..k {
                let v = &row[k + b];
                if !v.is_zero() {
                    cols[idx[b]].push((idx[a] as u32, v.clone()));
                }
            }
        }
    }
    StdMor::new(m.dom().to_vec(), m.cod().to_vec(), cols, -m.deg())
}

/// Splitting of an idempotent: `(i, p)` with `i ∘ p = e` and `p ∘ i = id`.
pub fn split_idempotent<C: Coeff>(e: &StdMor<C>) -> Result<(StdMor<C>, StdMor<C>), StdError> {
    let frame = e.dom().to_vec();
    let mut picks: Vec<(usize, Vec<(usize, C)>)> = Vec::new();
    for idx in frame_groups(&frame).values() {
        let block = dense_block(e, idx, idx);
        let k = idx.len();
        let mut t: Vec<Vec<C>> = (0..k).map(|j| (0..k).map(|i| block[i][j].clone()).collect()).collect();
        let piv = rref(&mut t)?;
        for (row, p) in t.into_iter().zip(piv) {
            let col = row
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| (idx[a], c))
                .collect();
            picks.push((idx[p], col));
        }
    }
    picks.sort_by_key(|p| p.0);
    let small: Vec<Elem> = picks.iter().map(|p| frame[p.0]).collect();
    let icols = picks
        .iter()
        .map(|(_, col)| col.iter().map(|(a, c)| (*a as u32, c.clone())).collect())
        .collect();
    let i = StdMor::new(small.clone(), frame.clone(), icols, 0)?;
    let rows: Vec<usize> = picks.iter().map(|p| p.0).collect();
    let all: Vec<usize> = (0..frame.len()).collect();
    let mut p = e.restrict(&rows, &all);
    p = p.with_deg(0);
    Ok((i, p))
}

/// True when `c` is a polynomial with `p`-integral coefficients.
pub fn in_r_o(c: &RatFunc, pm: &PModular) -> bool {
    c.den().is_empty() && c.num().terms().iter().all(|(_, q)| pm.is_integral(q))
}

/// Incremental echelon basis of vectors over the fraction field, remembering how each
/// basis vector is expressed through the inserted independent vectors.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(Vec<RatFunc>, usize, Vec<RatFunc>)>,
    kept: usize,
}

pub enum Insert {
    Independent,
    /// Coefficients of the vector in terms of the previously kept ones.
    Dependent(Vec<RatFunc>),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.kept
    }

    pub fn is_empty(&self) -> bool {
        self.kept == 0
    }

    pub fn insert(&mut self, u: &[RatFunc]) -> Result<Insert, StdError> {
        let mut v = u.to_vec();
        let mut coef = vec![RatFunc::zero(); self.kept];
        for (e, q, t) in &self.rows {
            let lam = v[*q].clone();
            if lam.is_zero() {
                continue;
            }
            for (k, x) in e.iter().enumerate() {
                if !x.is_zero() {
                    v[k] = v[k].sub(&lam.mul(x));
                }
            }
            for (k, x) in t.iter().enumerate() {
                if !x.is_zero() {
                    coef[k] = coef[k].add(&lam.mul(x));
                }
            }
        }
        let piv = (0..v.len())
            .filter(|k| !v[*k].is_zero())
            .min_by_key(|k| (v[*k].as_constant().is_none(), *k));
        match piv {
            None => Ok(Insert::Dependent(coef)),
            Some(q) => {
                let inv = v[q].inv()?;
                let e: Vec<RatFunc> = v.iter().map(|x| x.mul(&inv)).collect();
                let mut t: Vec<RatFunc> = coef.iter().map(|x| x.neg().mul(&inv)).collect();
                t.push(inv);
                for (_, _, tt) in self.rows.iter_mut() {
                    tt.push(RatFunc::zero());
                }
                self.rows.push((e, q, t));
                self.kept += 1;
                Ok(Insert::Independent)
            }
        }
    }
}
