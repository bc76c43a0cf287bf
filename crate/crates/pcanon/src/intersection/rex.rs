//! Rex moves: paths of braid moves between reduced expressions and their morphisms.

use super::IntersectionError;
use crate::arith::Coeff;
use crate::coxeter::ElementTable;
use crate::localisation::{alternating, lambda_object, BraidStore, IdCache};
use crate::stdcat::{Action, StdMor};
use std::collections::{HashMap, VecDeque};
use std::sync::RwLock;

/// One braid move: at position `i`, replace the alternating word starting with `s` by the one starting with `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub i: usize,
    pub s: usize,
    pub t: usize,
    pub m: usize,
}

pub fn moves(table: &ElementTable, word: &[u8]) -> Vec<(Move, Vec<u8>)> {
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(1) {
        let (s, t) = (word[i] as usize, word[i + 1] as usize);
        if s == t {
            continue;
        }
        let Some(m) = table.sys().m(s, t).map(|m| m as usize) else {
            continue;
        };
        if i + m > word.len() || word[i..i + m] != alternating(s, t, m)[..] {
            continue;
        }
        let mut next = word.to_vec();
        next[i..i + m].copy_from_slice(&alternating(t, s, m));
        out.push((Move { i, s, t, m }, next));
    }
    out
}

/// Shortest path of braid moves, found by breadth-first search with moves tried left to right.
pub fn path(table: &ElementTable, from: &[u8], to: &[u8]) -> Result<Vec<Move>, IntersectionError> {
    if from == to {
        return Ok(Vec::new());
    }
    let mut prev: HashMap<Vec<u8>, (Vec<u8>, Move)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for (mv, next) in moves(table, &w) {
            if next == from || prev.contains_key(&next) {
                continue;
            }
            prev.insert(next.clone(), (w.clone(), mv));
            if next == to {
                let mut out = Vec::new();
                let mut cur = next;
                while cur != from {
                    let (p, mv) = prev[&cur].clone();
                    out.push(mv);
                    cur = p;
                }
                out.reverse();
                return Ok(out);
            }
            queue.push_back(next);
        }
    }
    Err(IntersectionError::NoRexPath(
        crate::coxeter::word_string(from),
        crate::coxeter::word_string(to),
    ))
}

/// Cached localised rex-move morphisms `B_from -> B_to`.
pub struct RexMoves<'a, C> {
    table: &'a ElementTable,
    act: &'a Action<C>,
    store: &'a BraidStore,
    ids: &'a IdCache,
    cache: RwLock<HashMap<(Vec<u8>, Vec<u8>), StdMor<C>>>,
}

impl<'a, C: Coeff> RexMoves<'a, C> {
    pub fn new(table: &'a ElementTable, act: &'a Action<C>, store: &'a BraidStore, ids: &'a IdCache) -> Self {
        RexMoves {
            table,
            act,
            store,
            ids,
            cache: RwLock::default(),
        }
    }

    pub fn get(&self, from: &[u8], to: &[u8]) -> Result<StdMor<C>, IntersectionError> {
        let key = (from.to_vec(), to.to_vec());
        if let Some(f) = self.cache.read().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let mut f: StdMor<C> = StdMor::identity(lambda_object(self.table, from)?);
        let mut word = from.to_vec();
        for mv in path(self.table, from, to)? {
            let psi = self.store.get(self.table, mv.s, mv.t)?;
            let head = lambda_object(self.table, &word[..mv.i])?;
            let tail = self.ids.get(self.table, &word[mv.i + mv.m..])?;
            let step = self.act.act_mor(&self.act.act_id(&head, psi)?, &tail)?;
            f = step.compose(&f)?;
            word[mv.i..mv.i + mv.m].copy_from_slice(&alternating(mv.t, mv.s, mv.m));
        }
        self.cache.write().unwrap().insert(key, f.clone());
        Ok(f)
    }
}
