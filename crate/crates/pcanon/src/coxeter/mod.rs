//! Coxeter systems from generalised Cartan matrices in the adjoint realisation.

mod gcm;
mod table;

pub use gcm::Gcm;
pub use table::{parse_word, word_string, Elem, ElementTable};

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid generalised Cartan matrix: {0}")]
    InvalidGcm(String),
    #[error("unknown preset {0}")]
    UnknownPreset(String),
    #[error("elements come from different Coxeter systems")]
    MixedSystems,
    #[error("enumeration exceeds the cap of {0} elements")]
    Overflow(usize),
    #[error("infinite group needs a length limit")]
    NeedsLimit,
    #[error("element is not a minimal coset representative")]
    NotMinimalRep,
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

/// Integer square matrix, row-major.
pub type Mat = Vec<i64>;

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Mat {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn identity(n: usize) -> Mat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Element of a Coxeter system: action matrix on the root lattice plus its
/// lexicographically least reduced word.
#[derive(Clone, Debug)]
pub struct CoxElt {
    sys: u64,
    mat: Mat,
    word: Vec<u8>,
}

impl PartialEq for CoxElt {
    fn eq(&self, other: &Self) -> bool {
        self.sys == other.sys && self.mat == other.mat
    }
}

impl Eq for CoxElt {}

impl std::hash::Hash for CoxElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl CoxElt {
    pub fn mat(&self) -> &[i64] {
        &self.mat
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Integer root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn simple(n: usize, s: usize) -> Root {
        let mut coords = vec![0; n];
        coords[s] = 1;
        Root { coords }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| *c >= 0) && self.coords.iter().any(|c| *c > 0)
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.coords.iter().all(|c| *c >= 0) || self.coords.iter().all(|c| *c <= 0)
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Parabolic subset `I` of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Parabolic {
    mask: Vec<bool>,
}

impl Parabolic {
    pub fn new(n: usize, gens: &[usize]) -> Result<Self, CoxeterError> {
        let mut mask = vec![false; n];
        for &g in gens {
            if g >= n {
                return Err(CoxeterError::BadGenerator(g));
            }
            mask[g] = true;
        }
        Ok(Parabolic { mask })
    }

    pub fn empty(n: usize) -> Self {
        Parabolic {
            mask: vec![false; n],
        }
    }

    pub fn contains(&self, s: usize) -> bool {
        self.mask.get(s).copied().unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|b| *b)
    }

    pub fn gens(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|s| self.mask[*s]).collect()
    }

    /// Root lies in `Phi_I`: support contained in `I`.
    pub fn in_phi_i(&self, beta: &Root) -> bool {
        beta.coords
            .iter()
            .enumerate()
            .all(|(i, c)| *c == 0 || self.contains(i))
    }
}

/// Trichotomy for `x s` with `x` a minimal coset representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicStep {
    Ascend(CoxElt),
    Descend(CoxElt),
    Exit(usize),
}

/// Coxeter system with its adjoint realisation.
#[derive(Debug)]
pub struct CoxeterSystem {
    id: u64,
    gcm: Gcm,
    gens: Vec<Mat>,
}

impl CoxeterSystem {
    pub fn new(gcm: Gcm) -> Arc<Self> {
        let n = gcm.rank();
        let gens = (0..n)
            .map(|s| {
                let mut m = identity(n);
                for j in 0..n {
                    m[s * n + j] -= gcm.entry(s, j);
                }
                m
            })
            .collect();
        Arc::new(CoxeterSystem {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            gcm,
            gens,
        })
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn m(&self, s: usize, t: usize) -> Option<u32> {
        self.gcm.m(s, t)
    }

    pub fn gen_matrix(&self, s: usize) -> &[i64] {
        &self.gens[s]
    }

    /// Coroot of `s` paired with `lambda`.
    pub fn pairing(&self, s: usize, lambda: &[i64]) -> i64 {
        (0..self.rank()).map(|j| self.gcm.entry(s, j) * lambda[j]).sum()
    }

    fn check(&self, x: &CoxElt) -> Result<(), CoxeterError> {
        if x.sys == self.id {
            Ok(())
        } else {
            Err(CoxeterError::MixedSystems)
        }
    }

    fn apply(&self, mat: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| mat[i * n + j] * v[j]).sum())
            .collect()
    }

    fn column(&self, mat: &[i64], s: usize) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| mat[i * n + s]).collect()
    }

    fn col_negative(&self, mat: &[i64], s: usize) -> bool {
        let n = self.rank();
        (0..n).any(|i| mat[i * n + s] < 0)
    }

    fn mat_of_word(&self, word: &[u8]) -> Mat {
        let n = self.rank();
        let mut m = identity(n);
        for &s in word {
            m = mat_mul(n, &m, &self.gens[s as usize]);
        }
        m
    }

    /// Element with the given matrix; computes its lex-least reduced word.
    fn from_mat(&self, mat: Mat) -> CoxElt {
        let n = self.rank();
        let mut any = Vec::new();
        let mut m = mat.clone();
        while let Some(s) = (0..n).find(|s| self.col_negative(&m, *s)) {
            any.push(s as u8);
            m = mat_mul(n, &m, &self.gens[s]);
        }
        any.reverse();
        let mut inv = self.mat_of_word(&any.iter().rev().copied().collect::<Vec<_>>());
        let mut word = Vec::with_capacity(any.len());
        while let Some(s) = (0..n).find(|s| self.col_negative(&inv, *s)) {
            word.push(s as u8);
            inv = mat_mul(n, &inv, &self.gens[s]);
        }
        CoxElt {
            sys: self.id,
            mat,
            word,
        }
    }

    pub fn identity(&self) -> CoxElt {
        CoxElt {
            sys: self.id,
            mat: identity(self.rank()),
            word: vec![],
        }
    }

    pub fn gen(&self, s: usize) -> Result<CoxElt, CoxeterError> {
        if s >= self.rank() {
            return Err(CoxeterError::BadGenerator(s));
        }
        Ok(CoxElt {
            sys: self.id,
            mat: self.gens[s].clone(),
            word: vec![s as u8],
        })
    }

    pub fn from_word(&self, word: &[u8]) -> Result<CoxElt, CoxeterError> {
        if let Some(&s) = word.iter().find(|s| **s as usize >= self.rank()) {
            return Err(CoxeterError::BadGenerator(s as usize));
        }
        Ok(self.from_mat(self.mat_of_word(word)))
    }

    pub fn multiply(&self, u: &CoxElt, v: &CoxElt) -> Result<CoxElt, CoxeterError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.from_mat(mat_mul(self.rank(), &u.mat, &v.mat)))
    }

    pub fn inverse(&self, u: &CoxElt) -> Result<CoxElt, CoxeterError> {
        self.check(u)?;
        let w: Vec<u8> = u.word.iter().rev().copied().collect();
        self.from_word(&w)
    }

    pub fn length(&self, u: &CoxElt) -> Result<usize, CoxeterError> {
        self.check(u)?;
        Ok(u.len())
    }

    pub fn right_descents(&self, u: &CoxElt) -> Result<Vec<usize>, CoxeterError> {
        self.check(u)?;
        Ok((0..self.rank())
            .filter(|s| self.col_negative(&u.mat, *s))
            .collect())
    }

    pub fn left_descents(&self, u: &CoxElt) -> Result<Vec<usize>, CoxeterError> {
        let inv = self.inverse(u)?;
        self.right_descents(&inv)
    }

    pub fn act_on_root(&self, u: &CoxElt, beta: &Root) -> Result<Root, CoxeterError> {
        self.check(u)?;
        Ok(Root {
            coords: self.apply(&u.mat, &beta.coords),
        })
    }

    pub fn chosen_rex(&self, u: &CoxElt) -> Vec<u8> {
        u.word.clone()
    }

    /// Bruhat order via the lifting property along a reduced word of `y`.
    pub fn bruhat_leq(&self, x: &CoxElt, y: &CoxElt) -> Result<bool, CoxeterError> {
        self.check(x)?;
        self.check(y)?;
        let n = self.rank();
        let mut xm = x.mat.clone();
        let mut xl = x.len();
        for &s in y.word.iter().rev() {
            let s = s as usize;
            if xl == 0 {
                return Ok(true);
            }
            if self.col_negative(&xm, s) {
                xm = mat_mul(n, &xm, &self.gens[s]);
                xl -= 1;
            }
        }
        Ok(xl == 0)
    }

    /// True when `x` is the minimal representative of its coset `W_I x`.
    pub fn is_minimal(&self, x: &CoxElt, par: &Parabolic) -> Result<bool, CoxeterError> {
        let left = self.left_descents(x)?;
        Ok(left.iter().all(|s| !par.contains(*s)))
    }

    pub fn parabolic_step(
        &self,
        x: &CoxElt,
        s: usize,
        par: &Parabolic,
    ) -> Result<ParabolicStep, CoxeterError> {
        if !self.is_minimal(x, par)? {
            return Err(CoxeterError::NotMinimalRep);
        }
        let beta = Root {
            coords: self.column(&x.mat, s),
        };
        if par.in_phi_i(&beta) {
            let t = beta
                .coords
                .iter()
                .position(|c| *c != 0)
                .expect("nonzero root");
            return Ok(ParabolicStep::Exit(t));
        }
        let xs = self.multiply(x, &self.gen(s)?)?;
        Ok(if beta.is_positive() {
            ParabolicStep::Ascend(xs)
        } else {
            ParabolicStep::Descend(xs)
        })
    }

    /// All elements of length at most `limit` (whole group when `None`), sorted by
    /// length then lex word; restricted to minimal coset representatives when
    /// `par` is given.
    pub fn enumerate(
        &self,
        limit: Option<usize>,
        par: Option<&Parabolic>,
        cap: usize,
    ) -> Result<Vec<CoxElt>, CoxeterError> {
        let n = self.rank();
        let mut seen: HashSet<Mat> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].mat.clone());
        let mut frontier = vec![0usize];
        let mut len = 0;
        while !frontier.is_empty() && limit.is_none_or(|l| len < l) {
            let mut next = Vec::new();
            for &i in &frontier {
                for s in 0..n {
                    if self.col_negative(&out[i].mat, s) {
                        continue;
                    }
                    let m = mat_mul(n, &out[i].mat, &self.gens[s]);
                    if seen.insert(m.clone()) {
                        next.push(self.from_mat(m));
                    }
                }
            }
            if seen.len() > cap {
                return Err(CoxeterError::Overflow(cap));
            }
            next.sort_by(|a, b| a.word.cmp(&b.word));
            let start = out.len();
            out.extend(next);
            frontier = (start..out.len()).collect();
            len += 1;
        }
        if limit.is_none() && !frontier.is_empty() {
            return Err(CoxeterError::NeedsLimit);
        }
        if let Some(par) = par {
            let mut keep = Vec::new();
            for x in out {
                if self.is_minimal(&x, par)? {
                    keep.push(x);
                }
            }
            out = keep;
        }
        Ok(out)
    }

    /// Roots `w(alpha_s)` for `l(w) <= limit`; positive ones first, sorted.
    pub fn roots_up_to(&self, limit: Option<usize>, cap: usize) -> Result<Vec<Root>, CoxeterError> {
        let n = self.rank();
        let mut set: BTreeSet<Root> = BTreeSet::new();
        for w in self.enumerate(limit, None, cap)? {
            for s in 0..n {
                set.insert(Root {
                    coords: self.column(&w.mat, s),
                });
            }
        }
        let (mut pos, neg): (Vec<Root>, Vec<Root>) = set.into_iter().partition(|r| r.is_positive());
        pos.sort_by(|a, b| {
            let ha: i64 = a.coords.iter().sum();
            let hb: i64 = b.coords.iter().sum();
            ha.cmp(&hb).then_with(|| b.coords.cmp(&a.coords))
        });
        let mut neg: Vec<Root> = neg;
        neg.sort();
        pos.extend(neg);
        Ok(pos)
    }

    /// Generator permutations preserving the Cartan matrix (including the identity).
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            if (0..n).all(|i| (0..n).all(|j| self.gcm.entry(p[i], p[j]) == self.gcm.entry(i, j))) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    /// Image of an element under a generator permutation.
    pub fn apply_automorphism(&self, x: &CoxElt, perm: &[usize]) -> Result<CoxElt, CoxeterError> {
        self.check(x)?;
        let w: Vec<u8> = x.word.iter().map(|s| perm[*s as usize] as u8).collect();
        self.from_word(&w)
    }

    /// Right star operation for the pair `{s, t}`: writing `w = x u` with `x`
    /// minimal in `w W_{st}`, `u` lies on the dihedral string of elements whose
    /// reduced word starts with the same letter; the star reverses that string.
    pub fn star_partner(&self, w: &CoxElt, s: usize, t: usize) -> Result<Option<CoxElt>, CoxeterError> {
        self.check(w)?;
        let Some(m) = self.m(s, t) else {
            return Ok(None);
        };
        if !matches!(m, 3 | 4 | 6) {
            return Ok(None);
        }
        let desc = self.right_descents(w)?;
        let ds = desc.contains(&s);
        let dt = desc.contains(&t);
        if ds == dt {
            return Ok(None);
        }
        let n = self.rank();
        let mut x = w.mat.clone();
        let mut u_rev: Vec<u8> = Vec::new();
        loop {
            if self.col_negative(&x, s) {
                x = mat_mul(n, &x, &self.gens[s]);
                u_rev.push(s as u8);
            } else if self.col_negative(&x, t) {
                x = mat_mul(n, &x, &self.gens[t]);
                u_rev.push(t as u8);
            } else {
                break;
            }
        }
        let k = u_rev.len();
        let first = *u_rev.last().expect("nonempty");
        let other = if first as usize == s { t as u8 } else { s as u8 };
        let target = m as usize - k;
        let mut word: Vec<u8> = Vec::new();
        for i in 0..target {
            word.push(if i % 2 == 0 { first } else { other });
        }
        let mut full = self.from_mat(x).word;
        full.extend(word);
        Ok(Some(self.from_word(&full)?))
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Words of elements reachable by a braid move, for rex-move searches.
pub fn braid_neighbours(sys: &CoxeterSystem, word: &[u8]) -> Vec<(usize, Vec<u8>)> {
    let mut out = Vec::new();
    let n = sys.rank();
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let Some(m) = sys.m(s, t) else { continue };
            let m = m as usize;
            if word.len() < m {
                continue;
            }
            for pos in 0..=word.len() - m {
                let ok = (0..m).all(|i| word[pos + i] as usize == if i % 2 == 0 { s } else { t });
                if ok {
                    let mut w = word.to_vec();
                    for i in 0..m {
                        w[pos + i] = if i % 2 == 0 { t as u8 } else { s as u8 };
                    }
                    out.push((pos, w));
                }
            }
        }
    }
    out
}

/// Shortest sequence of braid moves from `from` to `to` (both reduced words of the
/// same element), as `(position, word after move)` steps.
pub fn rex_path(sys: &CoxeterSystem, from: &[u8], to: &[u8]) -> Option<Vec<(usize, Vec<u8>)>> {
    if from == to {
        return Some(vec![]);
    }
    let mut prev: HashMap<Vec<u8>, (Vec<u8>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    prev.insert(from.to_vec(), (vec![], usize::MAX));
    while let Some(w) = queue.pop_front() {
        for (pos, nw) in braid_neighbours(sys, &w) {
            if prev.contains_key(&nw) {
                continue;
            }
            prev.insert(nw.clone(), (w.clone(), pos));
            if nw == to {
                let mut path = Vec::new();
                let mut cur = nw;
                while cur != from {
                    let (p, pos) = prev[&cur].clone();
                    path.push((pos, cur));
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(nw);
        }
    }
    None
}

#[cfg(test)]
mod tests;
