use super::{StdError, StdMor};
use crate::arith::{Coeff, RatFunc};
use crate::coxeter::{Elem, ElementTable, Parabolic};
use crate::localisation::BSMor;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Subexpressions of a word that survive when acting on a single standard
/// object, with their original indices (first letter most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivors {
    pub idx: Vec<u32>,
    pub elems: Vec<Elem>,
}

type Block<C> = Vec<Vec<(u32, C)>>;

/// Right action of Bott-Samelson morphisms on the standard category, either
/// the ordinary one or the antispherical one for a parabolic subgroup.
#[derive(Debug)]
pub struct Action<C> {
    table: Arc<ElementTable>,
    par: Option<Parabolic>,
    kill: Vec<usize>,
    frames: RwLock<HashMap<(Elem, Vec<u8>), Arc<Survivors>>>,
    blocks: RwLock<HashMap<(u64, Elem), Arc<Block<C>>>>,
}

impl<C: Coeff> Action<C> {
    pub fn hecke(table: Arc<ElementTable>) -> Self {
        Action {
            table,
            par: None,
            kill: Vec::new(),
            frames: RwLock::default(),
            blocks: RwLock::default(),
        }
    }

    pub fn antispherical(table: Arc<ElementTable>, par: Parabolic) -> Self {
        let kill = par.gens();
        Action {
            table,
            par: Some(par),
            kill,
            frames: RwLock::default(),
            blocks: RwLock::default(),
        }
    }

    pub fn table(&self) -> &Arc<ElementTable> {
        &self.table
    }

    pub fn parabolic(&self) -> Option<&Parabolic> {
        self.par.as_ref()
    }

    pub fn admits(&self, x: Elem) -> bool {
        match &self.par {
            None => true,
            Some(p) => self.table.is_minimal(x, p),
        }
    }

    /// Specialisation applied after twisting: kills the parabolic simple roots.
    pub fn specialise(&self, f: &RatFunc) -> Result<RatFunc, StdError> {
        if self.kill.is_empty() {
            Ok(f.clone())
        } else {
            Ok(f.kill_vars(&self.kill)?)
        }
    }

    pub fn survivors(&self, x: Elem, word: &[u8]) -> Result<Arc<Survivors>, StdError> {
        let key = (x, word.to_vec());
        if let Some(s) = self.frames.read().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let mut cur = vec![(0u32, x)];
        for &s in word {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for (i, y) in cur {
                let ys = self.table.right_mul(y, s as usize).ok_or(StdError::OutOfRange)?;
                if !self.admits(ys) {
                    continue;
                }
                next.push((2 * i, y));
                next.push((2 * i + 1, ys));
            }
            cur = next;
        }
        let surv = Arc::new(Survivors {
            idx: cur.iter().map(|p| p.0).collect(),
            elems: cur.iter().map(|p| p.1).collect(),
        });
        self.frames.write().unwrap().insert(key, surv.clone());
        Ok(surv)
    }

    /// Frame of `X · B_word`.
    pub fn act_object(&self, frame: &[Elem], word: &[u8]) -> Result<Vec<Elem>, StdError> {
        let mut out = Vec::new();
        for x in frame {
            out.extend_from_slice(&self.survivors(*x, word)?.elems);
        }
        Ok(out)
    }

    fn block(&self, psi: &BSMor, x: Elem) -> Result<Arc<Block<C>>, StdError> {
        if let Some(b) = self.blocks.read().unwrap().get(&(psi.id(), x)) {
            return Ok(b.clone());
        }
        let sd = self.survivors(x, psi.dom_word())?;
        let sc = self.survivors(x, psi.cod_word())?;
        let pos: HashMap<u32, u32> = sc.idx.iter().enumerate().map(|(a, i)| (*i, a as u32)).collect();
        let cols = self.table.twist_cols(x);
        let img = psi.image();
        let mut block = Vec::with_capacity(sd.idx.len());
        for &j in &sd.idx {
            let mut col = Vec::new();
            for (i, f) in img.col(j as usize) {
                if let Some(&a) = pos.get(i) {
                    let g = self.specialise(&f.twist(cols))?;
                    let c = C::from_ratfunc(&g)?;
                    if !c.is_zero() {
                        col.push((a, c));
                    }
                }
            }
            block.push(col);
        }
        let block = Arc::new(block);
        self.blocks.write().unwrap().insert((psi.id(), x), block.clone());
        Ok(block)
    }

    /// `F · psi`, the horizontal composite of `F` with a Bott-Samelson morphism on the right.
    pub fn act_mor(&self, f: &StdMor<C>, psi: &BSMor) -> Result<StdMor<C>, StdError> {
        let mut dom = Vec::new();
        let mut dom_off = Vec::with_capacity(f.ncols() + 1);
        for x in f.dom() {
            dom_off.push(dom.len() as u32);
            dom.extend_from_slice(&self.survivors(*x, psi.dom_word())?.elems);
        }
        let mut cod = Vec::new();
        let mut cod_off = Vec::with_capacity(f.nrows());
        for x in f.cod() {
            cod_off.push(cod.len() as u32);
            cod.extend_from_slice(&self.survivors(*x, psi.cod_word())?.elems);
        }
        let mut cols: Vec<Vec<(u32, C)>> = vec![Vec::new(); dom.len()];
        for (j, fcol) in f.cols().iter().enumerate() {
            if fcol.is_empty() {
                continue;
            }
            let block = self.block(psi, f.dom()[j])?;
            for (b, bcol) in block.iter().enumerate() {
                let out = &mut cols[(dom_off[j] + b as u32) as usize];
                for (i, fij) in fcol {
                    for (a, c) in bcol {
                        let v = if fij.is_one() { c.clone() } else { fij.mul(c) };
                        out.push((cod_off[*i as usize] + a, v));
                    }
                }
            }
        }
        StdMor::new(dom, cod, cols, f.deg() + psi.deg())
    }

    /// `1_X · psi`.
    pub fn act_id(&self, frame: &[Elem], psi: &BSMor) -> Result<StdMor<C>, StdError> {
        self.act_mor(&StdMor::identity(frame.to_vec()), psi)
    }

    pub fn cached_blocks(&self) -> usize {
        self.blocks.read().unwrap().len()
    }
}
