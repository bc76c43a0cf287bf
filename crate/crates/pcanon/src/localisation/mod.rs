//! Localisation of Bott-Samelson morphisms: generator matrices, braid matrices
//! and the relation checks that validate them.

mod braid;

pub use braid::{verify_relations, BraidStore, Provenance, RelationReport};

use crate::arith::{ArithError, RatFunc};
use crate::coxeter::{Elem, ElementTable};
use crate::stdcat::{Action, StdError, StdMor};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocError {
    #[error("generators {0} and {1} satisfy no braid relation")]
    NoBraidRelation(usize, usize),
    #[error("no verified braid matrix for generators {0}, {1}")]
    MissingBraidMatrix(usize, usize),
    #[error("braid matrix for {0}, {1} failed verification: {2}")]
    Rejected(usize, usize, String),
    #[error("bad braid matrix file: {0}")]
    Import(String),
    #[error("word mismatch in composition")]
    WordMismatch,
    #[error(transparent)]
    Std(#[from] StdError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A morphism of Bott-Samelson objects, remembered through its localised matrix.
#[derive(Clone, Debug)]
pub struct BSMor {
    id: u64,
    dom_word: Vec<u8>,
    cod_word: Vec<u8>,
    image: Arc<StdMor<RatFunc>>,
}

impl BSMor {
    pub fn new(table: &ElementTable, dom_word: Vec<u8>, cod_word: Vec<u8>, image: StdMor<RatFunc>) -> Result<Self, LocError> {
        if image.dom() != lambda_object(table, &dom_word)? || image.cod() != lambda_object(table, &cod_word)? {
            return Err(StdError::FrameMismatch.into());
        }
        Ok(BSMor {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            dom_word,
            cod_word,
            image: Arc::new(image),
        })
    }

    pub fn identity(table: &ElementTable, word: &[u8]) -> Result<Self, LocError> {
        let f = lambda_object(table, word)?;
        Self::new(table, word.to_vec(), word.to_vec(), StdMor::identity(f))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dom_word(&self) -> &[u8] {
        &self.dom_word
    }

    pub fn cod_word(&self) -> &[u8] {
        &self.cod_word
    }

    pub fn image(&self) -> &StdMor<RatFunc> {
        &self.image
    }

    pub fn deg(&self) -> i32 {
        self.image.deg()
    }

    /// `self ∘ g`.
    pub fn compose(&self, table: &ElementTable, g: &BSMor) -> Result<BSMor, LocError> {
        if self.dom_word != g.cod_word {
            return Err(LocError::WordMismatch);
        }
        let img = self.image.compose(&g.image)?;
        Self::new(table, g.dom_word.clone(), self.cod_word.clone(), img)
    }

    /// `self ⊗ g`.
    pub fn tensor(&self, act: &Action<RatFunc>, g: &BSMor) -> Result<BSMor, LocError> {
        let img = act.act_mor(&self.image, g)?;
        let cat = |a: &[u8], b: &[u8]| [a, b].concat();
        Self::new(act.table(), cat(&self.dom_word, &g.dom_word), cat(&self.cod_word, &g.cod_word), img)
    }

    /// Vertical mirror image, via the local duality factors.
    pub fn flip(&self, table: &ElementTable) -> Result<BSMor, LocError> {
        let da = duality_roots(table, &self.dom_word)?;
        let db = duality_roots(table, &self.cod_word)?;
        let t = self.image.transpose();
        let mut cols = Vec::with_capacity(t.ncols());
        for (b, col) in t.cols().iter().enumerate() {
            let mut c = Vec::with_capacity(col.len());
            for (a, f) in col {
                c.push((*a, div_roots(&mul_roots(f, &db[b]), &da[*a as usize])?));
            }
            cols.push(c);
        }
        let img = StdMor::new(t.dom().to_vec(), t.cod().to_vec(), cols, t.deg())?;
        Self::new(table, self.cod_word.clone(), self.dom_word.clone(), img)
    }
}

/// Identity morphisms by word, shared so that cached action blocks are reused.
#[derive(Debug, Default)]
pub struct IdCache {
    ids: RwLock<HashMap<Vec<u8>, BSMor>>,
}

impl IdCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, table: &ElementTable, word: &[u8]) -> Result<BSMor, LocError> {
        if let Some(b) = self.ids.read().unwrap().get(word) {
            return Ok(b.clone());
        }
        let b = BSMor::identity(table, word)?;
        Ok(self.ids.write().unwrap().entry(word.to_vec()).or_insert(b).clone())
    }
}

/// Frame of `B_word`: all subexpressions, first letter most significant.
pub fn lambda_object(table: &ElementTable, word: &[u8]) -> Result<Vec<Elem>, LocError> {
    let mut cur = vec![Elem::ID];
    for &s in word {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for y in cur {
            next.push(y);
            next.push(table.right_mul(y, s as usize).ok_or(StdError::OutOfRange)?);
        }
        cur = next;
    }
    Ok(cur)
}

/// Per subexpression, the roots (element before the position)(alpha of the letter), one per position.
pub fn duality_roots(table: &ElementTable, word: &[u8]) -> Result<Vec<Vec<Vec<i64>>>, LocError> {
    let mut cur = vec![(Elem::ID, Vec::new())];
    for &s in word {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (y, mut d) in cur {
            d.push(table.root_image(y, s as usize).coords);
            next.push((y, d.clone()));
            next.push((table.right_mul(y, s as usize).ok_or(StdError::OutOfRange)?, d));
        }
        cur = next;
    }
    Ok(cur.into_iter().map(|p| p.1).collect())
}

/// Products of [`duality_roots`].
pub fn duality_factors(table: &ElementTable, word: &[u8]) -> Result<Vec<RatFunc>, LocError> {
    Ok(duality_roots(table, word)?
        .iter()
        .map(|rs| rs.iter().fold(RatFunc::one(), |acc, r| acc.mul(&RatFunc::linear(r))))
        .collect())
}

/// `f` divided by each root in turn, so that cancellation happens factor by factor.
pub fn div_roots(f: &RatFunc, roots: &[Vec<i64>]) -> Result<RatFunc, LocError> {
    let mut out = f.clone();
    for r in roots {
        out = out.mul(&RatFunc::linear(r).inv()?);
    }
    Ok(out)
}

fn mul_roots(f: &RatFunc, roots: &[Vec<i64>]) -> RatFunc {
    roots.iter().fold(f.clone(), |acc, r| acc.mul(&RatFunc::linear(r)))
}

fn simple(table: &ElementTable, s: usize) -> RatFunc {
    let mut c = vec![0; table.rank()];
    c[s] = 1;
    RatFunc::linear(&c)
}

pub fn startdot(table: &ElementTable, s: usize) -> Result<BSMor, LocError> {
    let f = lambda_object(table, &[s as u8])?;
    let img = StdMor::new(vec![Elem::ID], f, vec![vec![(0, RatFunc::one())]], 1)?;
    BSMor::new(table, vec![], vec![s as u8], img)
}

pub fn enddot(table: &ElementTable, s: usize) -> Result<BSMor, LocError> {
    let f = lambda_object(table, &[s as u8])?;
    let img = StdMor::new(f, vec![Elem::ID], vec![vec![(0, simple(table, s))], vec![]], 1)?;
    BSMor::new(table, vec![s as u8], vec![], img)
}

pub fn split(table: &ElementTable, s: usize) -> Result<BSMor, LocError> {
    let a = simple(table, s).inv()?;
    let f1 = lambda_object(table, &[s as u8])?;
    let f2 = lambda_object(table, &[s as u8, s as u8])?;
    let cols = vec![vec![(0, a.clone()), (3, a.neg())], vec![(1, a.clone()), (2, a.neg())]];
    let img = StdMor::new(f1, f2, cols, -1)?;
    BSMor::new(table, vec![s as u8], vec![s as u8, s as u8], img)
}

pub fn merge(table: &ElementTable, s: usize) -> Result<BSMor, LocError> {
    let f1 = lambda_object(table, &[s as u8])?;
    let f2 = lambda_object(table, &[s as u8, s as u8])?;
    let one = RatFunc::one();
    let cols = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![(1, one.clone())], vec![(0, one)]];
    let img = StdMor::new(f2, f1, cols, -1)?;
    BSMor::new(table, vec![s as u8, s as u8], vec![s as u8], img)
}

/// Alternating word of length `m` starting with `s`.
pub fn alternating(s: usize, t: usize, m: usize) -> Vec<u8> {
    (0..m).map(|i| if i % 2 == 0 { s as u8 } else { t as u8 }).collect()
}

/// Product of the positive roots of the dihedral subsystem generated by `s`, `t`.
pub fn dihedral_root_product(table: &ElementTable, s: usize, t: usize, m: usize) -> Result<RatFunc, LocError> {
    let d = duality_factors(table, &alternating(s, t, m))?;
    Ok(d.last().unwrap().clone())
}

/// The `2m`-valent vertex from the alternating word starting at `s` to the one starting at `t`:
/// entry `Pi / D_f` between equal frame elements, where `D_f` is the duality factor of the target.
pub fn braid_closed_form(table: &ElementTable, s: usize, t: usize) -> Result<BSMor, LocError> {
    let m = table.sys().m(s, t).ok_or(LocError::NoBraidRelation(s, t))? as usize;
    let dw = alternating(s, t, m);
    let cw = alternating(t, s, m);
    let df = lambda_object(table, &dw)?;
    let cf = lambda_object(table, &cw)?;
    let dc = duality_roots(table, &cw)?;
    let pi = dihedral_root_product(table, s, t, m)?;
    let mut cols = Vec::with_capacity(df.len());
    for x in &df {
        let mut col = Vec::new();
        for (i, y) in cf.iter().enumerate() {
            if y == x {
                col.push((i as u32, div_roots(&pi, &dc[i])?));
            }
        }
        cols.push(col);
    }
    let img = StdMor::new(df, cf, cols, 0)?;
    BSMor::new(table, dw, cw, img)
}

/// All four one-colour generators for `s`: startdot, enddot, split, merge.
pub fn one_colour_generators(table: &ElementTable, s: usize) -> Result<[BSMor; 4], LocError> {
    Ok([startdot(table, s)?, enddot(table, s)?, split(table, s)?, merge(table, s)?])
}

/// Tensor product of a list of morphisms.
pub fn tensor_all(act: &Action<RatFunc>, parts: &[BSMor]) -> Result<BSMor, LocError> {
    let table = act.table();
    let mut acc = BSMor::identity(table, &[])?;
    for p in parts {
        acc = acc.tensor(act, p)?;
    }
    Ok(acc)
}

/// Check that every entry is a constant multiple of a product of the given linear forms and their inverses.
pub fn entries_use_only(f: &StdMor<RatFunc>, roots: &[RatFunc]) -> bool {
    let allowed: Vec<_> = roots.iter().map(|r| r.num().primitive_part().1).collect();
    f.cols().iter().flatten().all(|(_, c)| c.den().iter().all(|(p, _)| allowed.contains(p)))
}

#[cfg(test)]
mod tests;
