use super::{
    alternating, braid_closed_form, dihedral_root_product, enddot, entries_use_only, lambda_object, merge,
    split, startdot, tensor_all, BSMor, LocError,
};
use crate::arith::RatFunc;
use crate::coxeter::{Elem, ElementTable};
use crate::stdcat::{Action, StdMor};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Builtin,
    Derived,
    Imported,
}

/// Verified braid matrices, both orientations of every finite pair.
#[derive(Clone, Debug, Default)]
pub struct BraidStore {
    entries: BTreeMap<(usize, usize), (BSMor, Provenance)>,
}

/// One line per relation checked.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub items: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    fn push(&mut self, name: String, ok: bool) {
        self.items.push((name, ok));
    }
}

impl BraidStore {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Closed-form matrices for every pair; orders 4 and 6 only when `derive` is set.
    pub fn build(table: &Arc<ElementTable>, derive: bool) -> Result<Self, LocError> {
        let mut store = Self::empty();
        let n = table.rank();
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                let prov = match table.sys().m(s, t) {
                    Some(2) | Some(3) => Provenance::Builtin,
                    Some(4) | Some(6) if derive => Provenance::Derived,
                    _ => continue,
                };
                store.entries.insert((s, t), (braid_closed_form(table, s, t)?, prov));
            }
        }
        let report = verify_relations(table, &store)?;
        if !report.passed() {
            return Err(LocError::Rejected(0, 0, report.failures().join(", ")));
        }
        Ok(store)
    }

    pub fn get(&self, table: &ElementTable, s: usize, t: usize) -> Result<&BSMor, LocError> {
        if table.sys().m(s, t).is_none() {
            return Err(LocError::NoBraidRelation(s, t));
        }
        self.entries
            .get(&(s, t))
            .map(|e| &e.0)
            .ok_or(LocError::MissingBraidMatrix(s, t))
    }

    pub fn provenance(&self, s: usize, t: usize) -> Option<Provenance> {
        self.entries.get(&(s, t)).map(|e| e.1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &BSMor)> {
        self.entries.iter().map(|((s, t), (b, _))| (*s, *t, b))
    }

    /// Reads `braid s t m` followed by `row col entry` lines; the reverse orientation is
    /// obtained by flipping. Rejected unless all relations pass.
    pub fn import(&mut self, table: &Arc<ElementTable>, text: &str) -> Result<(), LocError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head: Vec<&str> = lines.next().ok_or(LocError::Import("empty file".into()))?.split_whitespace().collect();
        let bad = |m: &str| LocError::Import(m.to_string());
        if head.len() != 4 || head[0] != "braid" {
            return Err(bad("expected header `braid s t m`"));
        }
        let s: usize = head[1].parse().map_err(|_| bad("bad generator"))?;
        let t: usize = head[2].parse().map_err(|_| bad("bad generator"))?;
        let m: usize = head[3].parse().map_err(|_| bad("bad order"))?;
        if s >= table.rank() || t >= table.rank() || table.sys().m(s, t) != Some(m as u32) {
            return Err(bad("order does not match the Cartan matrix"));
        }
        let dw = alternating(s, t, m);
        let cw = alternating(t, s, m);
        let df = lambda_object(table, &dw)?;
        let cf = lambda_object(table, &cw)?;
        let mut cols = vec![Vec::new(); df.len()];
        for l in lines {
            let mut it = l.splitn(3, char::is_whitespace);
            let i: u32 = it.next().and_then(|x| x.parse().ok()).ok_or(bad(l))?;
            let j: usize = it.next().and_then(|x| x.parse().ok()).ok_or(bad(l))?;
            let f = it.next().and_then(|x| RatFunc::from_text(x.trim())).ok_or(bad(l))?;
            cols.get_mut(j).ok_or(bad(l))?.push((i, f));
        }
        let img = StdMor::new(df, cf, cols, 0)?;
        let psi = BSMor::new(table, dw, cw, img)?;
        let rev = psi.flip(table)?;
        let mut trial = self.clone();
        trial.entries.insert((s, t), (psi, Provenance::Imported));
        trial.entries.insert((t, s), (rev, Provenance::Imported));
        let report = verify_relations(table, &trial)?;
        if !report.passed() {
            return Err(LocError::Rejected(s, t, report.failures().join(", ")));
        }
        *self = trial;
        Ok(())
    }

    pub fn export(&self, table: &ElementTable, s: usize, t: usize) -> Result<String, LocError> {
        let psi = self.get(table, s, t)?;
        let m = psi.dom_word().len();
        let mut out = format!("braid {s} {t} {m}\n");
        for (j, col) in psi.image().cols().iter().enumerate() {
            for (i, f) in col {
                out.push_str(&format!("{i} {j} {}\n", f.to_text()));
            }
        }
        Ok(out)
    }
}

/// Checks the one-colour relations for every generator and the normalisation,
/// spider, duality and inverse-on-top conditions for every stored braid matrix.
pub fn verify_relations(table: &Arc<ElementTable>, store: &BraidStore) -> Result<RelationReport, LocError> {
    let mut report = RelationReport::default();
    for s in 0..table.rank() {
        let gens = [startdot(table, s)?, enddot(table, s)?, split(table, s)?, merge(table, s)?];
        check_one_colour(table, s, &gens, &mut report)?;
    }
    for (s, t, psi) in store.pairs() {
        check_braid(table, store, s, t, psi, &mut report)?;
    }
    Ok(report)
}

/// Relations among `[startdot, enddot, split, merge]` for one colour.
pub fn check_one_colour(
    table: &Arc<ElementTable>,
    s: usize,
    gens: &[BSMor; 4],
    report: &mut RelationReport,
) -> Result<(), LocError> {
    let act = Action::<RatFunc>::hecke(table.clone());
    let [sd, ed, sp, mg] = gens;
    let id = BSMor::identity(table, &[s as u8])?;
    let t = table.as_ref();
    let eq = |a: &BSMor, b: &BSMor| a.image() == b.image();
    let mut alpha = vec![0; t.rank()];
    alpha[s] = 1;
    let barbell = ed.compose(t, sd)?;
    let want = StdMor::new(vec![Elem::ID], vec![Elem::ID], vec![vec![(0, RatFunc::linear(&alpha))]], 2)?;
    report.push(format!("barbell {s}"), barbell.image() == &want);
    let u1 = mg.compose(t, &sd.tensor(&act, &id)?)?;
    let u2 = mg.compose(t, &id.tensor(&act, sd)?)?;
    report.push(format!("unit {s}"), eq(&u1, &id) && eq(&u2, &id));
    let c1 = ed.tensor(&act, &id)?.compose(t, sp)?;
    let c2 = id.tensor(&act, ed)?.compose(t, sp)?;
    report.push(format!("counit {s}"), eq(&c1, &id) && eq(&c2, &id));
    let needle = mg.compose(t, sp)?;
    report.push(format!("needle {s}"), needle.image().is_zero());
    let a1 = mg.compose(t, &mg.tensor(&act, &id)?)?;
    let a2 = mg.compose(t, &id.tensor(&act, mg)?)?;
    report.push(format!("associativity {s}"), eq(&a1, &a2));
    let c1 = sp.tensor(&act, &id)?.compose(t, sp)?;
    let c2 = id.tensor(&act, sp)?.compose(t, sp)?;
    report.push(format!("coassociativity {s}"), eq(&c1, &c2));
    let f1 = id.tensor(&act, mg)?.compose(t, &sp.tensor(&act, &id)?)?;
    let f2 = sp.compose(t, mg)?;
    let f3 = mg.tensor(&act, &id)?.compose(t, &id.tensor(&act, sp)?)?;
    report.push(format!("frobenius {s}"), eq(&f1, &f2) && eq(&f2, &f3));
    Ok(())
}

fn check_braid(
    table: &Arc<ElementTable>,
    store: &BraidStore,
    s: usize,
    t: usize,
    psi: &BSMor,
    report: &mut RelationReport,
) -> Result<(), LocError> {
    let act = Action::<RatFunc>::hecke(table.clone());
    let tb = table.as_ref();
    let m = psi.dom_word().len();
    let img = psi.image();
    let name = |what: &str| format!("{what} {s}{t}");
    report.push(name("degree"), psi.deg() == 0);
    let top = img.get(img.nrows() - 1, img.ncols() - 1);
    report.push(name("normalisation"), top == RatFunc::one());
    let starts: Vec<BSMor> = psi.dom_word().iter().map(|&u| startdot(tb, u as usize)).collect::<Result<_, _>>()?;
    let ends: Vec<BSMor> = psi.cod_word().iter().map(|&u| enddot(tb, u as usize)).collect::<Result<_, _>>()?;
    let closed = tensor_all(&act, &ends)?.compose(tb, &psi.compose(tb, &tensor_all(&act, &starts)?)?)?;
    let pi = dihedral_root_product(tb, s, t, m)?;
    report.push(name("spider"), closed.image().get(0, 0) == pi);
    let mut roots = Vec::with_capacity(m);
    let mut x = Elem::ID;
    for &u in psi.dom_word() {
        roots.push(RatFunc::linear(&tb.root_image(x, u as usize).coords));
        x = tb.right_mul(x, u as usize).ok_or(crate::stdcat::StdError::OutOfRange)?;
    }
    report.push(name("denominators"), entries_use_only(img, &roots));
    if let Ok(rev) = store.get(tb, t, s) {
        report.push(name("duality"), psi.flip(tb)?.image() == rev.image());
        let both = rev.compose(tb, psi)?;
        let w0 = *both.image().dom().last().unwrap();
        let corner = both.image().loc_quotient(tb, w0);
        report.push(name("inverse on top"), corner == StdMor::identity(corner.dom().to_vec()));
    }
    Ok(())
}
