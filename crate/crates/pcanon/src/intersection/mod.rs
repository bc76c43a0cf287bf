//! The simpler algorithm: ranks of local intersection forms between light leaves of
//! Bott-Samelson objects, subtracted inductively, with symmetries and bounds.

pub mod leaves;
pub mod rex;
pub mod symmetry;
mod table;

pub use leaves::{build_light_leaves, LLPack, LeafData};
pub use table::{Column, EntryProvenance, KnownMask, PCanTable};

use crate::arith::{ArithError, Laurent, PModular, RatFunc};
use crate::coxeter::{Elem, ElementTable};
use crate::hecke::{HeckeElt, HeckeError, KlData};
use crate::localisation::{BraidStore, IdCache, LocError};
use crate::stdcat::{Action, StdError};
use log::{debug, warn};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IntersectionError {
    #[error("no braid-move path from {0} to {1}")]
    NoRexPath(String, String),
    #[error("intersection form for {0} at {1} has a non-integer entry {2}")]
    NonIntegerEntry(String, String, String),
    #[error("negative multiplicity for {0} in {1}")]
    NegativeCoefficient(String, String),
    #[error("conflicting known values for ({0}, {1})")]
    ConflictingKnownValue(String, String),
    #[error("integrity check failed for {0}: {1}")]
    Integrity(String, String),
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error(transparent)]
    Std(#[from] StdError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    EvalOnes,
}

#[derive(Clone, Copy, Debug)]
pub struct SimpleConfig {
    pub mode: Mode,
    pub symmetries: bool,
    pub stars: bool,
    /// Treat order 6 star operations as good for `p = 5`.
    pub liberal_order_six: bool,
    /// Compute ranks even where a value is already known, and compare.
    pub verify_known: bool,
    /// Columns longer than this are neither computed nor kept.
    pub max_length: Option<usize>,
}

impl Default for SimpleConfig {
    fn default() -> Self {
        SimpleConfig {
            mode: Mode::EvalOnes,
            symmetries: true,
            stars: true,
            liberal_order_six: false,
            verify_known: false,
            max_length: None,
        }
    }
}

pub enum AnyPack {
    Symbolic(LLPack<RatFunc>),
    Eval(LLPack<BigRational>),
}

impl AnyPack {
    pub fn degrees(&self, y: Elem) -> Vec<i32> {
        match self {
            AnyPack::Symbolic(p) => p.degrees(y),
            AnyPack::Eval(p) => p.degrees(y),
        }
    }

    pub fn pairing(&self, table: &ElementTable, y: Elem, d: i32) -> Result<Vec<Vec<BigRational>>, IntersectionError> {
        match self {
            AnyPack::Symbolic(p) => p.pairing(table, y, d),
            AnyPack::Eval(p) => p.pairing(table, y, d),
        }
    }

    pub fn count(&self, y: Elem) -> usize {
        match self {
            AnyPack::Symbolic(p) => p.leaves.get(&y).map_or(0, Vec::len),
            AnyPack::Eval(p) => p.leaves.get(&y).map_or(0, Vec::len),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SimpleStats {
    pub ranks: usize,
    pub known_used: usize,
    pub transported: usize,
}

pub struct Simple {
    table: Arc<ElementTable>,
    kl: KlData,
    pm: PModular,
    store: BraidStore,
    sym: Action<RatFunc>,
    eval: Action<BigRational>,
    ids: IdCache,
    autos: Vec<Vec<usize>>,
    config: SimpleConfig,
    out: PCanTable,
    pub stats: SimpleStats,
}

impl Simple {
    pub fn new(table: Arc<ElementTable>, pm: PModular, store: BraidStore, config: SimpleConfig) -> Result<Self, IntersectionError> {
        let kl = KlData::new(table.clone())?;
        let autos = symmetry::diagram_automorphisms(table.sys().gcm());
        if config.liberal_order_six && pm.p() == 5 {
            warn!("treating order 6 star operations as good at p = 5");
        }
        Ok(Simple {
            sym: Action::hecke(table.clone()),
            eval: Action::hecke(table.clone()),
            table,
            kl,
            pm,
            store,
            ids: IdCache::new(),
            autos,
            config,
            out: PCanTable::new(),
            stats: SimpleStats::default(),
        })
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn result(&self) -> &PCanTable {
        &self.out
    }

    pub fn into_result(self) -> PCanTable {
        self.out
    }

    fn name(&self, x: Elem) -> String {
        self.table.word_string(x)
    }

    pub fn pack(&self, word: &[u8], mode: Mode) -> Result<AnyPack, IntersectionError> {
        Ok(match mode {
            Mode::Symbolic => AnyPack::Symbolic(build_light_leaves(&self.table, &self.sym, &self.store, &self.ids, word)?),
            Mode::EvalOnes => AnyPack::Eval(build_light_leaves(&self.table, &self.eval, &self.store, &self.ids, word)?),
        })
    }

    /// Computes columns in length order, stopping after `limit` newly computed ones; columns
    /// filled by symmetry are not recomputed. Returns whether every column is done.
    pub fn run<E: From<IntersectionError>>(
        &mut self,
        limit: Option<usize>,
        mut on_done: impl FnMut(Elem, &Column) -> Result<(), E>,
    ) -> Result<bool, E> {
        let elems: Vec<Elem> = self.table.elems().collect();
        let mut done = 0;
        for w in elems {
            if self.out.has_column(w) || self.config.max_length.is_some_and(|l| self.table.length(w) > l) {
                continue;
            }
            if limit.is_some_and(|l| done >= l) {
                return Ok(false);
            }
            let col = self.column(w)?;
            self.install(w, col.clone(), None)?;
            on_done(w, &col)?;
            done += 1;
            if self.config.symmetries {
                for (v, c) in self.transport(w, &col)? {
                    on_done(v, &c)?;
                }
            }
        }
        Ok(true)
    }

    /// Registers a column loaded from a checkpoint.
    pub fn insert_column(&mut self, w: Elem, col: Column) {
        self.out.set_column(w, col);
    }

    fn install(&mut self, w: Elem, col: Column, prov: Option<EntryProvenance>) -> Result<bool, IntersectionError> {
        let col: Column = match prov {
            Some(p) => col.into_iter().map(|(x, (c, _))| (x, (c, p))).collect(),
            None => col,
        };
        if let Some(old) = self.out.column(w) {
            let vals = |c: &Column| -> Vec<(Elem, Laurent)> {
                c.iter().filter(|e| !e.1 .0.is_zero()).map(|(x, e)| (*x, e.0.clone())).collect()
            };
            if vals(old) != vals(&col) {
                return Err(IntersectionError::ConflictingKnownValue("*".into(), self.name(w)));
            }
            return Ok(false);
        }
        self.out.set_column(w, col);
        Ok(true)
    }

    fn transport(&mut self, w: Elem, col: &Column) -> Result<Vec<(Elem, Column)>, IntersectionError> {
        let t = self.table.clone();
        let map = |f: &dyn Fn(Elem) -> Option<Elem>| -> Option<(Elem, Column)> {
            let mut c = Column::new();
            for (x, e) in col {
                c.insert(f(*x)?, e.clone());
            }
            Some((f(w)?, c))
        };
        let mut targets: Vec<(Elem, Column, EntryProvenance)> = Vec::new();
        if let Some((v, c)) = map(&|x| t.inverse(x)) {
            targets.push((v, c, EntryProvenance::InverseSymmetry));
        }
        for sigma in &self.autos {
            let f = |x: Elem| symmetry::apply_automorphism(&t, sigma, x);
            if let Some((v, c)) = map(&f) {
                targets.push((v, c, EntryProvenance::DiagramSymmetry));
            }
            let g = |x: Elem| t.inverse(x).and_then(|y| symmetry::apply_automorphism(&t, sigma, y));
            if let Some((v, c)) = map(&g) {
                targets.push((v, c, EntryProvenance::DiagramSymmetry));
            }
        }
        let mut added = Vec::new();
        for (v, c, p) in targets {
            if v != w && self.install(v, c, Some(p))? {
                self.stats.transported += 1;
                added.push((v, self.out.column(v).unwrap().clone()));
            }
        }
        Ok(added)
    }

    /// Bounds from the products `pb_{ws} b_s` and `b_s pb_{sw}`, and star-operation values.
    fn mask(&self, w: Elem) -> Result<KnownMask, IntersectionError> {
        let t = &self.table;
        let mut mask = KnownMask::new();
        let mut products = Vec::new();
        for s in t.right_descents(w) {
            let ws = t.right_mul(w, s).unwrap();
            if let Some(c) = self.out.character(ws) {
                products.push(self.kl.canonical_mult_bs(&c, s)?);
            }
        }
        for s in t.left_descents(w) {
            let sw = t.left_mul(s, w).unwrap();
            if let Some(c) = self.out.character(sw) {
                products.push(self.kl.canonical_left_mult_bs(s, &c)?);
            }
        }
        for x in t.ideal(w) {
            let mut bound: Option<Laurent> = None;
            for p in &products {
                let c = p.coeff(x);
                bound = Some(match bound {
                    None => c,
                    Some(b) => Laurent::from_terms(
                        b.terms().map(|(d, v)| (d, v.min(c.coeff(d)))).filter(|(_, v)| *v > 0),
                    ),
                });
            }
            if let Some(b) = bound {
                mask.set_bound(x, b);
            }
        }
        if self.config.stars {
            let n = t.rank();
            for s in 0..n {
                for u in s + 1..n {
                    let Some(m) = t.sys().m(s, u) else { continue };
                    if !symmetry::star_is_good(m, self.pm.p(), self.config.liberal_order_six) {
                        continue;
                    }
                    let Some(ws) = symmetry::star(t, w, s, u) else { continue };
                    let Some(col) = self.out.column(ws) else { continue };
                    for x in t.ideal(w) {
                        if x == w {
                            continue;
                        }
                        if let Some(xs) = symmetry::star(t, x, s, u) {
                            let v = col.get(&xs).map(|e| e.0.clone()).unwrap_or_else(Laurent::zero);
                            if !mask.set_known(x, v) {
                                return Err(IntersectionError::ConflictingKnownValue(self.name(x), self.name(w)));
                            }
                        }
                    }
                }
            }
        }
        Ok(mask)
    }

    /// The column `pm_{-,w}` by the subtraction scheme over the lex-least reduced word of `w`.
    pub fn column(&mut self, w: Elem) -> Result<Column, IntersectionError> {
        let t = self.table.clone();
        let word = t.word(w).to_vec();
        let lambda0 = self.kl.bott_samelson(&word)?;
        let mut lambda = lambda0.clone();
        let mask = self.mask(w)?;
        let mut xs: Vec<Elem> = t.ideal(w).into_iter().filter(|x| *x != w).collect();
        xs.sort_by_key(|x| std::cmp::Reverse((t.length(*x), *x)));
        let mut pack: Option<AnyPack> = None;
        let mut prov: BTreeMap<Elem, EntryProvenance> = BTreeMap::new();
        let mut mults: Vec<(Elem, Laurent)> = Vec::new();
        for x in xs {
            let c = lambda.coeff(x);
            if c.is_zero() {
                continue;
            }
            let mut mu = Laurent::zero();
            let mut how = EntryProvenance::KnownZero;
            for (d, cd) in c.terms().collect::<Vec<_>>() {
                let known = mask.known(x, d);
                let need_rank = known.is_none() || self.config.verify_known;
                let rank = if need_rank {
                    if pack.is_none() {
                        pack = Some(self.pack(&word, self.config.mode)?);
                    }
                    let p = pack.as_ref().unwrap();
                    let rows = p.pairing(&t, x, d)?;
                    self.stats.ranks += 1;
                    Some(self.pm.rank(&rows)? as i64)
                } else {
                    None
                };
                let md = match known {
                    Some((k, from_bound)) => {
                        self.stats.known_used += 1;
                        if !from_bound && how == EntryProvenance::KnownZero {
                            how = EntryProvenance::BoundForced;
                        }
                        let forced = cd - k;
                        if rank.is_some_and(|r| r != forced) {
                            return Err(IntersectionError::ConflictingKnownValue(self.name(x), self.name(w)));
                        }
                        forced
                    }
                    None => {
                        how = EntryProvenance::Computed;
                        rank.unwrap()
                    }
                };
                if md < 0 || md > cd {
                    return Err(IntersectionError::NegativeCoefficient(self.name(x), self.name(w)));
                }
                if md != 0 {
                    mu.add_term(d, md);
                }
            }
            prov.insert(x, how);
            if !mu.is_zero() {
                let pb = self.out.character(x).ok_or_else(|| IntersectionError::Integrity(self.name(w), format!("missing column {}", self.name(x))))?;
                lambda = lambda.sub(&pb.scale(&mu));
                mults.push((x, mu));
            }
        }
        self.check_column(w, &lambda0, &lambda, &mults, &mask)?;
        debug!("{}: {} subtractions", self.name(w), mults.len());
        let mut col = Column::new();
        for (x, c) in lambda.terms() {
            let p = if x == w { EntryProvenance::Computed } else { prov.get(&x).copied().unwrap_or(EntryProvenance::Computed) };
            col.insert(x, (c.clone(), p));
        }
        for (x, p) in prov {
            col.entry(x).or_insert((Laurent::zero(), p));
        }
        Ok(col)
    }

    fn check_column(
        &self,
        w: Elem,
        lambda0: &HeckeElt,
        lambda: &HeckeElt,
        mults: &[(Elem, Laurent)],
        mask: &KnownMask,
    ) -> Result<(), IntersectionError> {
        let bad = |m: String| IntersectionError::Integrity(self.name(w), m);
        if lambda.coeff(w) != Laurent::one() {
            return Err(bad("top coefficient".into()));
        }
        let mut total = lambda.clone();
        for (x, mu) in mults {
            total = total.add(&self.out.character(*x).unwrap().scale(mu));
        }
        if &total != lambda0 {
            return Err(bad("multiplicities do not recover the Bott-Samelson character".into()));
        }
        for (x, c) in lambda.terms() {
            if !c.is_bar_invariant() || !c.has_nonnegative_coeffs() {
                return Err(IntersectionError::NegativeCoefficient(self.name(x), self.name(w)));
            }
            if let Some(b) = mask.bound(x) {
                if c.terms().any(|(d, v)| v > b.coeff(d)) {
                    return Err(bad(format!("coefficient at {} exceeds its bound", self.name(x))));
                }
            }
        }
        for (x, v) in mask.known_polys() {
            if lambda.coeff(x) != *v {
                return Err(IntersectionError::ConflictingKnownValue(self.name(x), self.name(w)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
