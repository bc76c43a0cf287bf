//! Localised light leaves of a Bott-Samelson object, retaining only the data needed
//! for local intersection pairings.

use super::rex::RexMoves;
use super::IntersectionError;
use crate::arith::{is_integer, Coeff};
use crate::coxeter::{Elem, ElementTable};
use crate::localisation::{lambda_object, one_colour_generators, BSMor, BraidStore, IdCache};
use crate::stdcat::{Action, StdMor};
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Last row of the down leaf and last column of the up leaf of one subexpression,
/// restricted to the positions of the word's frame carrying the end point.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafData<C> {
    pub bits: u64,
    pub deg: i32,
    pub down: Vec<C>,
    pub up: Vec<C>,
}

#[derive(Clone, Debug)]
pub struct LLPack<C> {
    pub word: Vec<u8>,
    pub leaves: BTreeMap<Elem, Vec<LeafData<C>>>,
}

struct Leaf<C> {
    bits: u64,
    end: Elem,
    deg: i32,
    down: StdMor<C>,
    up: StdMor<C>,
}

struct Builder<'a, C> {
    table: &'a ElementTable,
    act: &'a Action<C>,
    rex: RexMoves<'a, C>,
    ids: &'a IdCache,
    gens: Vec<[BSMor; 4]>,
}

impl<C: Coeff> Builder<'_, C> {
    fn extend(&self, leaf: &Leaf<C>, k: usize, s: usize) -> Result<[Leaf<C>; 2], IntersectionError> {
        let t = self.table;
        let [startdot, enddot, split, merge] = &self.gens[s];
        let ids = self.ids.get(t, &[s as u8])?;
        let y = leaf.end;
        let r = t.word(y).to_vec();
        let fr = lambda_object(t, &r)?;
        let td = self.act.act_mor(&leaf.down, &ids)?;
        let tu = self.act.act_mor(&leaf.up, &ids)?;
        let ys = t.right_mul(y, s).ok_or(crate::stdcat::StdError::OutOfRange)?;
        let rs = [&r[..], &[s as u8]].concat();
        let bit = 1u64 << k;
        if t.length(ys) > t.length(y) {
            let ws = t.word(ys);
            Ok([
                Leaf {
                    bits: leaf.bits,
                    end: y,
                    deg: leaf.deg + 1,
                    down: self.act.act_id(&fr, enddot)?.compose(&td)?,
                    up: tu.compose(&self.act.act_id(&fr, startdot)?)?,
                },
                Leaf {
                    bits: leaf.bits | bit,
                    end: ys,
                    deg: leaf.deg,
                    down: self.rex.get(&rs, ws)?.compose(&td)?,
                    up: tu.compose(&self.rex.get(ws, &rs)?)?,
                },
            ])
        } else {
            let u = t.word(ys).to_vec();
            let fu = lambda_object(t, &u)?;
            let us = [&u[..], &[s as u8]].concat();
            let md = self
                .act
                .act_id(&fu, merge)?
                .compose(&self.act.act_mor(&self.rex.get(&r, &us)?, &ids)?)?
                .compose(&td)?;
            let mu = tu
                .compose(&self.act.act_mor(&self.rex.get(&us, &r)?, &ids)?)?
                .compose(&self.act.act_id(&fu, split)?)?;
            Ok([
                Leaf {
                    bits: leaf.bits,
                    end: y,
                    deg: leaf.deg - 1,
                    down: self.rex.get(&us, &r)?.compose(&md)?,
                    up: mu.compose(&self.rex.get(&r, &us)?)?,
                },
                Leaf {
                    bits: leaf.bits | bit,
                    end: ys,
                    deg: leaf.deg,
                    down: self.act.act_id(&fu, enddot)?.compose(&md)?,
                    up: mu.compose(&self.act.act_id(&fu, startdot)?)?,
                },
            ])
        }
    }
}

/// Light leaves for `word`, built prefix by prefix; end points carry their lex-least reduced word.
pub fn build_light_leaves<C: Coeff>(
    table: &ElementTable,
    act: &Action<C>,
    store: &BraidStore,
    ids: &IdCache,
    word: &[u8],
) -> Result<LLPack<C>, IntersectionError> {
    let gens = (0..table.rank())
        .map(|s| one_colour_generators(table, s))
        .collect::<Result<Vec<_>, _>>()?;
    let b = Builder {
        table,
        act,
        rex: RexMoves::new(table, act, store, ids),
        ids,
        gens,
    };
    let id: StdMor<C> = StdMor::identity(vec![Elem::ID]);
    let mut leaves = vec![Leaf {
        bits: 0,
        end: Elem::ID,
        deg: 0,
        down: id.clone(),
        up: id,
    }];
    for (k, &s) in word.iter().enumerate() {
        let next: Vec<[Leaf<C>; 2]> = leaves
            .par_iter()
            .map(|l| b.extend(l, k, s as usize))
            .collect::<Result<_, _>>()?;
        leaves = next.into_iter().flatten().collect();
    }
    let frame = lambda_object(table, word)?;
    let mut out: BTreeMap<Elem, Vec<LeafData<C>>> = BTreeMap::new();
    for l in leaves {
        let pos: Vec<u32> = (0..frame.len() as u32).filter(|j| frame[*j as usize] == l.end).collect();
        let pick = |line: &[(u32, C)]| -> Vec<C> {
            pos.iter()
                .map(|j| line.iter().find(|(k, _)| k == j).map(|(_, c)| c.clone()).unwrap_or_else(C::zero))
                .collect()
        };
        let down = pick(&l.down.row(l.down.nrows() - 1));
        let up = pick(l.up.col(l.up.ncols() - 1));
        out.entry(l.end).or_default().push(LeafData {
            bits: l.bits,
            deg: l.deg,
            down,
            up,
        });
    }
    Ok(LLPack {
        word: word.to_vec(),
        leaves: out,
    })
}

impl<C: Coeff> LLPack<C> {
    /// Degrees `d` for which `y` has both an up leaf of degree `d` and a down leaf of degree `-d`.
    pub fn degrees(&self, y: Elem) -> Vec<i32> {
        let ls = self.leaves.get(&y).map(Vec::as_slice).unwrap_or(&[]);
        let mut ds: Vec<i32> = ls.iter().map(|l| l.deg).filter(|d| ls.iter().any(|m| m.deg == -d)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Pairing of down leaves of degree `-d` (rows) with up leaves of degree `d` (columns).
    pub fn pairing(&self, table: &ElementTable, y: Elem, d: i32) -> Result<Vec<Vec<BigRational>>, IntersectionError> {
        let ls = self.leaves.get(&y).map(Vec::as_slice).unwrap_or(&[]);
        let mut rows = Vec::new();
        for a in ls.iter().filter(|l| l.deg == -d) {
            let mut row = Vec::new();
            for b in ls.iter().filter(|l| l.deg == d) {
                let mut acc = C::zero();
                for (x, z) in a.down.iter().zip(&b.up) {
                    if !x.is_zero() && !z.is_zero() {
                        acc = acc.add(&x.mul(z));
                    }
                }
                match acc.as_constant() {
                    Some(q) if is_integer(&q) => row.push(q),
                    _ => {
                        return Err(IntersectionError::NonIntegerEntry(
                            crate::coxeter::word_string(&self.word),
                            table.word_string(y),
                            acc.to_text(),
                        ))
                    }
                }
            }
            rows.push(row);
        }
        Ok(rows)
    }
}
