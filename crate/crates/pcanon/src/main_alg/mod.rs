//! Element-by-element construction of a model of the Hecke (or antispherical)
//! category in the standard category, yielding p-canonical characters.

pub mod linalg;
mod serial;

use crate::arith::{ArithError, Laurent, PModular, RatFunc};
use crate::coxeter::{Elem, ElementTable, Parabolic};
use crate::hecke::{HeckeElt, HeckeError, KlOracle};
use crate::localisation::{enddot, merge, split, startdot, BSMor, BraidStore, IdCache, LocError};
use crate::stdcat::{Action, StdError, StdMor};
use linalg::{in_r_o, invert, split_idempotent, Echelon, Insert};
use log::debug;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub use serial::{element_from_text, element_to_text};

type Mor = StdMor<RatFunc>;

#[derive(Debug, Error)]
pub enum MainError {
    #[error("missing data for {0}")]
    MissingDependency(String),
    #[error("intersection form entry is not a constant in O at {0}: {1}")]
    NonConstantEntry(String, String),
    #[error("no unit pivot despite nonzero rank at {0}")]
    NoUnitPivot(String),
    #[error("integrity check failed at {0}: {1}")]
    Integrity(String, String),
    #[error("character mismatch at {0}: {1}")]
    CharacterMismatch(String, String),
    #[error(transparent)]
    Std(#[from] StdError),
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Everything remembered about one processed element.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementData {
    pub w: Elem,
    pub t: Vec<Elem>,
    pub s0: Option<usize>,
    pub incl: BTreeMap<usize, Mor>,
    pub proj: BTreeMap<usize, Mor>,
    /// `TLL_up(T_x, T_w)` keyed by `x`.
    pub up: BTreeMap<Elem, Vec<Mor>>,
    /// `TLL_down(T_w, T_x)` keyed by `x`.
    pub down: BTreeMap<Elem, Vec<Mor>>,
    /// p-canonical element in canonical-basis coordinates.
    pub character: HeckeElt,
    /// Summands `(x, d)` split off from `T_{ws0} B_{s0}`.
    pub peels: Vec<(Elem, i32)>,
    /// Number of leaves per target whose images are independent; later leaves are
    /// kept only to span the integral image.
    pub core_up: BTreeMap<Elem, usize>,
    pub core_down: BTreeMap<Elem, usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct MainConfig {
    pub prune: bool,
    /// Elements longer than this are left unprocessed.
    pub max_length: Option<usize>,
}

impl Default for MainConfig {
    fn default() -> Self {
        MainConfig {
            prune: true,
            max_length: None,
        }
    }
}

struct Gens {
    startdot: BSMor,
    enddot: BSMor,
    split: BSMor,
    merge: BSMor,
}

pub struct Pipeline {
    table: Arc<ElementTable>,
    action: Action<RatFunc>,
    oracle: KlOracle,
    pm: PModular,
    store: BraidStore,
    gens: Vec<Gens>,
    ids: IdCache,
    data: BTreeMap<Elem, ElementData>,
    config: MainConfig,
}

/// Leaves produced by translation, each tagged with its source (up) or target (down).
struct Translated {
    ups: Vec<(Elem, Mor)>,
    downs: Vec<(Elem, Mor)>,
}

struct Split {
    i: Mor,
    p: Mor,
    peels: Vec<(Elem, i32)>,
    character: HeckeElt,
    leaves: Translated,
}

fn last_col(m: &Mor) -> Vec<(u32, RatFunc)> {
    m.col(m.ncols() - 1).to_vec()
}

fn last_row(m: &Mor) -> Vec<(u32, RatFunc)> {
    m.row(m.nrows() - 1)
}

impl Pipeline {
    pub fn new(
        table: Arc<ElementTable>,
        par: Option<Parabolic>,
        pm: PModular,
        store: BraidStore,
        config: MainConfig,
    ) -> Result<Self, MainError> {
        let action = match &par {
            None => Action::hecke(table.clone()),
            Some(p) => Action::antispherical(table.clone(), p.clone()),
        };
        let oracle = KlOracle::new(table.clone(), par)?;
        let gens = (0..table.rank())
            .map(|s| {
                Ok(Gens {
                    startdot: startdot(&table, s)?,
                    enddot: enddot(&table, s)?,
                    split: split(&table, s)?,
                    merge: merge(&table, s)?,
                })
            })
            .collect::<Result<Vec<_>, LocError>>()?;
        Ok(Pipeline {
            table,
            action,
            oracle,
            pm,
            store,
            gens,
            ids: IdCache::new(),
            data: BTreeMap::new(),
            config,
        })
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn oracle(&self) -> &KlOracle {
        &self.oracle
    }

    pub fn pm(&self) -> PModular {
        self.pm
    }

    pub fn data(&self, w: Elem) -> Option<&ElementData> {
        self.data.get(&w)
    }

    pub fn completed(&self) -> impl Iterator<Item = &ElementData> {
        self.data.values()
    }

    /// Elements of the model in processing order.
    pub fn elements(&self) -> Vec<Elem> {
        self.oracle.elements()
    }

    /// Registers data loaded from a checkpoint.
    pub fn insert(&mut self, d: ElementData) {
        self.data.insert(d.w, d);
    }

    fn name(&self, w: Elem) -> String {
        self.table.word_string(w)
    }

    fn get(&self, w: Elem) -> Result<&ElementData, MainError> {
        self.data.get(&w).ok_or_else(|| MainError::MissingDependency(self.name(w)))
    }

    fn id_word(&self, word: &[u8]) -> Result<BSMor, MainError> {
        Ok(self.ids.get(&self.table, word)?)
    }

    fn act(&self, f: &Mor, psi: &BSMor) -> Result<Mor, MainError> {
        Ok(self.action.act_mor(f, psi)?)
    }

    fn act_id(&self, frame: &[Elem], psi: &BSMor) -> Result<Mor, MainError> {
        Ok(self.action.act_id(frame, psi)?)
    }

    fn incl(&self, x: Elem, s: usize) -> Result<&Mor, MainError> {
        self.get(x)?
            .incl
            .get(&s)
            .ok_or_else(|| MainError::MissingDependency(format!("inclusion {} {s}", self.name(x))))
    }

    fn proj(&self, x: Elem, s: usize) -> Result<&Mor, MainError> {
        self.get(x)?
            .proj
            .get(&s)
            .ok_or_else(|| MainError::MissingDependency(format!("projection {} {s}", self.name(x))))
    }

    /// Processes elements of the model in order, skipping those already present, stopping
    /// after `limit` new elements. Returns whether every element is done.
    pub fn run<E: From<MainError>>(
        &mut self,
        limit: Option<usize>,
        mut on_done: impl FnMut(&ElementData) -> Result<(), E>,
    ) -> Result<bool, E> {
        let mut done = 0;
        for w in self.elements() {
            if self.data.contains_key(&w) || self.config.max_length.is_some_and(|l| self.table.length(w) > l) {
                continue;
            }
            if limit.is_some_and(|l| done >= l) {
                return Ok(false);
            }
            let d = self.process(w)?;
            on_done(&d)?;
            self.data.insert(w, d);
            done += 1;
        }
        Ok(true)
    }

    /// Builds the data of `w` from the data of smaller elements.
    pub fn process(&self, w: Elem) -> Result<ElementData, MainError> {
        if w == Elem::ID {
            let id: Mor = StdMor::identity(vec![Elem::ID]);
            return Ok(ElementData {
                w,
                t: vec![Elem::ID],
                s0: None,
                incl: BTreeMap::new(),
                proj: BTreeMap::new(),
                up: BTreeMap::from([(Elem::ID, vec![id.clone()])]),
                down: BTreeMap::from([(Elem::ID, vec![id])]),
                character: HeckeElt::basis(Elem::ID),
                peels: Vec::new(),
                core_up: BTreeMap::from([(Elem::ID, 1)]),
                core_down: BTreeMap::from([(Elem::ID, 1)]),
            });
        }
        let descents = self.table.right_descents(w);
        let s0 = *self.table.word(w).last().unwrap() as usize;
        let mut splits: BTreeMap<usize, Split> = BTreeMap::new();
        for &s in &descents {
            splits.insert(s, self.split_for(w, s)?);
        }
        let ch0 = splits[&s0].character.clone();
        for (s, sp) in &splits {
            if sp.character != ch0 {
                return Err(MainError::CharacterMismatch(self.name(w), format!("descents {s0} and {s} disagree")));
            }
        }
        let mut incl = BTreeMap::new();
        let mut proj = BTreeMap::new();
        let t0 = splits[&s0].i.dom().to_vec();
        for &s in &descents {
            if s == s0 {
                incl.insert(s, splits[&s].i.clone());
                proj.insert(s, splits[&s].p.clone());
                continue;
            }
            let fwd = self.phi(w, s0, s, &splits)?;
            let back = self.phi(w, s, s0, &splits)?;
            if back.compose(&fwd)? != StdMor::identity(t0.clone()) {
                return Err(MainError::Integrity(self.name(w), format!("braiding isomorphisms {s0},{s} not inverse")));
            }
            let i = splits[&s].i.compose(&fwd)?;
            let p = back.compose(&splits[&s].p)?;
            if p.compose(&i)? != StdMor::identity(t0.clone()) {
                return Err(MainError::Integrity(self.name(w), format!("p∘i ≠ id for descent {s}")));
            }
            incl.insert(s, i);
            proj.insert(s, p);
        }
        let main = splits.remove(&s0).unwrap();
        let (i0, p0) = (&incl[&s0], &proj[&s0]);
        let mut up: BTreeMap<Elem, Vec<Mor>> = BTreeMap::new();
        for (x, u) in &main.leaves.ups {
            let t = if *x == w { p0.compose(u)?.compose(i0)? } else { p0.compose(u)? };
            up.entry(*x).or_default().push(t);
        }
        let mut down: BTreeMap<Elem, Vec<Mor>> = BTreeMap::new();
        for (x, d) in &main.leaves.downs {
            let t = if *x == w { p0.compose(d)?.compose(i0)? } else { d.compose(i0)? };
            down.entry(*x).or_default().push(t);
        }
        let data = ElementData {
            w,
            t: t0,
            s0: Some(s0),
            incl,
            proj,
            up,
            down,
            character: ch0,
            peels: main.peels,
            core_up: BTreeMap::new(),
            core_down: BTreeMap::new(),
        };
        let data = if self.config.prune { self.prune(data)? } else { data };
        self.check_element(&data)?;
        debug!(
            "{}: |T|={} leaves up={} down={}",
            self.name(w),
            data.t.len(),
            data.up.values().map(Vec::len).sum::<usize>(),
            data.down.values().map(Vec::len).sum::<usize>()
        );
        Ok(data)
    }

    fn translate(&self, w: Elem, s: usize) -> Result<Translated, MainError> {
        let t = &self.table;
        let v = t.right_mul(w, s).unwrap();
        let vd = self.get(v)?;
        let g = &self.gens[s];
        let ids = self.id_word(&[s as u8])?;
        let mut downs = Vec::new();
        for (&x, leaves) in &vd.down {
            let tx = &self.get(x)?.t;
            let xs = t.right_mul(x, s).ok_or(StdError::OutOfRange)?;
            let ascent = t.length(xs) > t.length(x);
            for a in leaves {
                let ab = self.act(a, &ids)?;
                if ascent {
                    downs.push((x, self.act_id(tx, &g.enddot)?.compose(&ab)?));
                    if x == v {
                        downs.push((w, ab));
                    } else if self.oracle.contains(xs) {
                        downs.push((xs, self.proj(xs, s)?.compose(&ab)?));
                    }
                } else {
                    let txs = &self.get(xs)?.t;
                    let m = self
                        .act_id(txs, &g.merge)?
                        .compose(&self.act(self.incl(x, s)?, &ids)?)?
                        .compose(&ab)?;
                    downs.push((x, self.proj(x, s)?.compose(&m)?));
                    downs.push((xs, self.act_id(txs, &g.enddot)?.compose(&m)?));
                }
            }
        }
        let mut ups = Vec::new();
        for (&x, leaves) in &vd.up {
            let tx = &self.get(x)?.t;
            let xs = t.right_mul(x, s).ok_or(StdError::OutOfRange)?;
            let ascent = t.length(xs) > t.length(x);
            for b in leaves {
                let bb = self.act(b, &ids)?;
                if ascent {
                    ups.push((x, bb.compose(&self.act_id(tx, &g.startdot)?)?));
                    if x == v {
                        ups.push((w, bb));
                    } else if self.oracle.contains(xs) {
                        ups.push((xs, bb.compose(self.incl(xs, s)?)?));
                    }
                } else {
                    let txs = &self.get(xs)?.t;
                    let m = bb
                        .compose(&self.act(self.proj(x, s)?, &ids)?)?
                        .compose(&self.act_id(txs, &g.split)?)?;
                    ups.push((x, m.compose(self.incl(x, s)?)?));
                    ups.push((xs, m.compose(&self.act_id(txs, &g.startdot)?)?));
                }
            }
        }
        Ok(Translated { ups, downs })
    }

    /// Translate, reduce and split for one descent.
    fn split_for(&self, w: Elem, s: usize) -> Result<Split, MainError> {
        let v = self.table.right_mul(w, s).unwrap();
        let leaves = self.translate(w, s)?;
        let ambient = self.action.act_object(&self.get(v)?.t, &[s as u8])?;
        let (e, peels) = self.reduce(w, &ambient, &leaves)?;
        if e.compose(&e)? != e {
            return Err(MainError::Integrity(self.name(w), "E is not idempotent".into()));
        }
        let (i, p) = split_idempotent(&e)?;
        if p.compose(&i)? != StdMor::identity(i.dom().to_vec()) || i.compose(&p)? != e {
            return Err(MainError::Integrity(self.name(w), "idempotent splitting failed".into()));
        }
        if i.dom().last() != Some(&w) {
            return Err(MainError::Integrity(self.name(w), "top summand not last".into()));
        }
        let mut ch = self.oracle.canonical_mult_bs(&self.get(v)?.character, s)?;
        for (x, d) in &peels {
            ch = ch.sub(&self.get(*x)?.character.scale(&Laurent::monomial(1, *d)));
        }
        Ok(Split {
            i,
            p,
            peels,
            character: ch,
            leaves,
        })
    }

    fn reduce(&self, w: Elem, ambient: &[Elem], leaves: &Translated) -> Result<(Mor, Vec<(Elem, i32)>), MainError> {
        let t = &self.table;
        let mut e: Mor = StdMor::identity(ambient.to_vec());
        let mut peels = Vec::new();
        let mut xs: Vec<Elem> = leaves.ups.iter().map(|p| p.0).filter(|x| *x != w).collect();
        xs.sort_by_key(|x| std::cmp::Reverse((t.length(*x), *x)));
        xs.dedup();
        for x in xs {
            let ins: Vec<&Mor> = leaves.ups.iter().filter(|p| p.0 == x).map(|p| &p.1).collect();
            let outs: Vec<&Mor> = leaves.downs.iter().filter(|p| p.0 == x).map(|p| &p.1).collect();
            let mut degs: Vec<i32> = ins.iter().map(|m| m.deg()).filter(|d| outs.iter().any(|o| o.deg() == -d)).collect();
            degs.sort_by_key(|d| (d.abs(), *d));
            degs.dedup();
            for d in degs {
                let ins_d: Vec<&Mor> = ins.iter().copied().filter(|m| m.deg() == d).collect();
                let outs_d: Vec<&Mor> = outs.iter().copied().filter(|m| m.deg() == -d).collect();
                loop {
                    let where_ = || format!("{} peeling {} in degree {d}", self.name(w), self.name(x));
                    let form = self.form(&e, &outs_d, &ins_d, &where_)?;
                    let values: Vec<Vec<_>> = form.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect();
                    if self.pm.rank(&values)? == 0 {
                        break;
                    }
                    let (oi, ij) = (0..form.len())
                        .flat_map(|i| (0..ins_d.len()).map(move |j| (i, j)))
                        .find(|(i, j)| form[*i][*j].1)
                        .ok_or_else(|| MainError::NoUnitPivot(where_()))?;
                    let e_in = e.compose(ins_d[ij])?;
                    let out_e = outs_d[oi].compose(&e)?;
                    let c = out_e.compose(ins_d[ij])?;
                    let cinv = invert(&c)?;
                    let piece = e_in.compose(&cinv)?.compose(&out_e)?;
                    e = e.sub(&piece)?;
                    peels.push((x, d));
                }
            }
        }
        Ok((e, peels))
    }

    /// Local intersection form at the last entries, with unit flags.
    #[allow(clippy::type_complexity)]
    fn form(
        &self,
        e: &Mor,
        outs: &[&Mor],
        ins: &[&Mor],
        where_: &dyn Fn() -> String,
    ) -> Result<Vec<Vec<(num_rational::BigRational, bool)>>, MainError> {
        let ecols: Vec<BTreeMap<u32, RatFunc>> = ins
            .iter()
            .map(|m| {
                let mut acc: BTreeMap<u32, RatFunc> = BTreeMap::new();
                for (k, c) in last_col(m) {
                    for (i, x) in e.col(k as usize) {
                        let t = x.mul(&c);
                        let slot = acc.entry(*i).or_insert_with(RatFunc::zero);
                        *slot = slot.add(&t);
                    }
                }
                acc
            })
            .collect();
        let mut rows = Vec::with_capacity(outs.len());
        for o in outs {
            let r = last_row(o);
            let mut row = Vec::with_capacity(ins.len());
            for col in &ecols {
                let mut acc = RatFunc::zero();
                for (k, c) in &r {
                    if let Some(x) = col.get(k) {
                        acc = acc.add(&c.mul(x));
                    }
                }
                let v = self.pm.o_scalar(&acc).map_err(|err| MainError::NonConstantEntry(where_(), err.to_string()))?;
                row.push(v);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Isomorphism between the splittings for descents `a` and `b` through the braid vertex.
    fn phi(&self, w: Elem, a: usize, b: usize, splits: &BTreeMap<usize, Split>) -> Result<Mor, MainError> {
        let t = &self.table;
        let m = t.sys().m(a, b).ok_or(LocError::NoBraidRelation(a, b))? as usize;
        let mut f = splits[&a].i.clone();
        let mut y = t.right_mul(w, a).unwrap();
        let mut word = vec![a as u8];
        for k in 1..m {
            let c = if k % 2 == 1 { b } else { a };
            f = self.act(self.incl(y, c)?, &self.id_word(&word)?)?.compose(&f)?;
            y = t.right_mul(y, c).unwrap();
            word.insert(0, c as u8);
        }
        let other = if word[0] as usize == a { b } else { a };
        let psi = self.store.get(t, word[0] as usize, other)?;
        if psi.dom_word() != word.as_slice() {
            return Err(MainError::Integrity(self.name(w), "braid word mismatch".into()));
        }
        f = self.act_id(&self.get(y)?.t, psi)?.compose(&f)?;
        let mut word = psi.cod_word().to_vec();
        for _ in 0..m - 1 {
            let c = word.remove(0) as usize;
            let yc = t.right_mul(y, c).unwrap();
            f = self.act(self.proj(yc, c)?, &self.id_word(&word)?)?.compose(&f)?;
            y = yc;
        }
        Ok(splits[&b].p.compose(&f)?)
    }

    fn image(&self, tw: &[Elem], x: Elem, m: &Mor, up: bool) -> Vec<RatFunc> {
        let idx: Vec<usize> = (0..tw.len()).filter(|i| tw[*i] == x).collect();
        let line = if up { last_col(m) } else { last_row(m) };
        idx.iter()
            .map(|i| {
                line.iter()
                    .find(|(k, _)| *k as usize == *i)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(RatFunc::zero)
            })
            .collect()
    }

    /// Keeps, per target, leaves whose local images span the image lattice over `R_O`.
    fn prune(&self, mut data: ElementData) -> Result<ElementData, MainError> {
        for up in [true, false] {
            let mut cores = BTreeMap::new();
            let sets = if up { &mut data.up } else { &mut data.down };
            for (x, leaves) in sets.iter_mut() {
                let mut order: Vec<usize> = (0..leaves.len()).collect();
                order.sort_by_key(|i| (leaves[*i].deg(), *i));
                let images: Vec<Vec<RatFunc>> = leaves.iter().map(|l| self.image(&data.t, *x, l, up)).collect();
                let mut core: Vec<usize> = Vec::new();
                let mut extra: Vec<usize> = Vec::new();
                for i in order {
                    if images[i].iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let mut ech = Echelon::new();
                    for k in &core {
                        ech.insert(&images[*k])?;
                    }
                    let Insert::Dependent(c) = ech.insert(&images[i])? else {
                        core.push(i);
                        continue;
                    };
                    if c.iter().all(|q| in_r_o(q, &self.pm)) {
                        continue;
                    }
                    let deg = leaves[i].deg();
                    let swap = (0..core.len()).find(|&j| {
                        let cj = &c[j];
                        leaves[core[j]].deg() == deg
                            && cj.as_constant().is_some()
                            && !cj.is_zero()
                            && !in_r_o(cj, &self.pm)
                            && c.iter().all(|q| q.div(cj).map(|r| in_r_o(&r, &self.pm)).unwrap_or(false))
                    });
                    match swap {
                        Some(j) => core[j] = i,
                        None => extra.push(i),
                    }
                }
                core.sort_unstable();
                extra.sort_unstable();
                cores.insert(*x, core.len());
                *leaves = core.iter().chain(&extra).map(|k| leaves[*k].clone()).collect();
            }
            sets.retain(|_, v| !v.is_empty());
            cores.retain(|_, n| *n > 0);
            if up {
                data.core_up = cores;
            } else {
                data.core_down = cores;
            }
        }
        Ok(data)
    }

    /// `sum_y pm_{y,w} h_{x,y}`.
    pub fn p_h(&self, x: Elem, character: &HeckeElt) -> Laurent {
        let mut out = Laurent::zero();
        for (y, m) in character.terms() {
            out += &(m * &self.oracle.h(x, y));
        }
        out
    }

    fn check_element(&self, d: &ElementData) -> Result<(), MainError> {
        let w = d.w;
        let name = self.name(w);
        if d.t.last() != Some(&w) || d.character.coeff(w) != Laurent::one() {
            return Err(MainError::Integrity(name, "top term".into()));
        }
        for (x, c) in d.character.terms() {
            if !c.is_bar_invariant() || !c.has_nonnegative_coeffs() || !self.table.leq(x, w) {
                return Err(MainError::CharacterMismatch(name, format!("coefficient at {} is {c}", self.name(x))));
            }
        }
        for x in self.table.ideal(w) {
            if !self.oracle.contains(x) {
                continue;
            }
            let ph = self.p_h(x, &d.character);
            let count = d.t.iter().filter(|y| **y == x).count() as i64;
            if ph.eval_one() != count {
                return Err(MainError::Integrity(name, format!("multiplicity of {} in T is {count}, expected {}", self.name(x), ph)));
            }
            if self.config.prune {
                for (set, core, what) in [(&d.up, &d.core_up, "up"), (&d.down, &d.core_down, "down")] {
                    let n = core.get(&x).copied().unwrap_or(0);
                    let got = Laurent::graded_rank(set.get(&x).into_iter().flatten().take(n).map(|m| m.deg()));
                    if got != ph {
                        return Err(MainError::CharacterMismatch(
                            name,
                            format!("graded rank of {what} leaves at {} is {got}, expected {ph}", self.name(x)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Columns `pm_{x,w}` of every processed element.
    pub fn table_columns(&self) -> BTreeMap<Elem, HeckeElt> {
        self.data.iter().map(|(w, d)| (*w, d.character.clone())).collect()
    }

    pub fn coeff_bits(&self) -> u64 {
        self.data
            .values()
            .flat_map(|d| d.up.values().chain(d.down.values()).flatten())
            .map(|m| m.max_entry_bits())
            .max()
            .unwrap_or(0)
    }
}
