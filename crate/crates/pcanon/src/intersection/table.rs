use crate::arith::Laurent;
use crate::coxeter::{Elem, ElementTable};
use crate::hecke::HeckeElt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryProvenance {
    Computed,
    InverseSymmetry,
    DiagramSymmetry,
    BoundForced,
    KnownZero,
}

impl EntryProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryProvenance::Computed => "computed",
            EntryProvenance::InverseSymmetry => "inverse-symmetry",
            EntryProvenance::DiagramSymmetry => "diagram-symmetry",
            EntryProvenance::BoundForced => "bound-forced",
            EntryProvenance::KnownZero => "known-zero",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            EntryProvenance::Computed,
            EntryProvenance::InverseSymmetry,
            EntryProvenance::DiagramSymmetry,
            EntryProvenance::BoundForced,
            EntryProvenance::KnownZero,
        ]
        .into_iter()
        .find(|p| p.as_str() == s)
    }
}

impl fmt::Display for EntryProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Column = BTreeMap<Elem, (Laurent, EntryProvenance)>;

/// `pm_{x,w}` by column `w`, with provenance per entry. Zero entries may be stored explicitly.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PCanTable {
    columns: BTreeMap<Elem, Column>,
}

impl PCanTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_characters(chars: &BTreeMap<Elem, HeckeElt>, prov: EntryProvenance) -> Self {
        let columns = chars
            .iter()
            .map(|(w, h)| (*w, h.terms().map(|(x, c)| (x, (c.clone(), prov))).collect()))
            .collect();
        PCanTable { columns }
    }

    pub fn set_column(&mut self, w: Elem, col: Column) {
        self.columns.insert(w, col);
    }

    pub fn has_column(&self, w: Elem) -> bool {
        self.columns.contains_key(&w)
    }

    pub fn column(&self, w: Elem) -> Option<&Column> {
        self.columns.get(&w)
    }

    pub fn columns(&self) -> impl Iterator<Item = (Elem, &Column)> {
        self.columns.iter().map(|(w, c)| (*w, c))
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn get(&self, x: Elem, w: Elem) -> Laurent {
        self.columns
            .get(&w)
            .and_then(|c| c.get(&x))
            .map(|e| e.0.clone())
            .unwrap_or_else(Laurent::zero)
    }

    /// `pb_w` in the canonical basis.
    pub fn character(&self, w: Elem) -> Option<HeckeElt> {
        let col = self.columns.get(&w)?;
        let mut h = HeckeElt::zero();
        for (x, (c, _)) in col {
            h.add_term(*x, c);
        }
        Some(h)
    }

    pub fn characters(&self) -> BTreeMap<Elem, HeckeElt> {
        self.columns.keys().map(|w| (*w, self.character(*w).unwrap())).collect()
    }

    /// Equality of values, ignoring provenance and explicit zeros.
    pub fn same_values(&self, other: &PCanTable) -> bool {
        self.characters() == other.characters()
    }

    /// Nonzero entries in emission order: `w` then `x`, each by length and then word.
    pub fn rows<'a>(&'a self, table: &'a ElementTable) -> Vec<(Elem, Elem, &'a Laurent, EntryProvenance)> {
        let key = |x: &Elem| (table.length(*x), table.word(*x).to_vec());
        let mut ws: Vec<Elem> = self.columns.keys().copied().collect();
        ws.sort_by_key(key);
        let mut out = Vec::new();
        for w in ws {
            let col = &self.columns[&w];
            let mut xs: Vec<Elem> = col.iter().filter(|(_, e)| !e.0.is_zero()).map(|(x, _)| *x).collect();
            xs.sort_by_key(key);
            for x in xs {
                let (c, p) = &col[&x];
                out.push((w, x, c, *p));
            }
        }
        out
    }
}

/// Known coefficients and upper bounds for the column being computed.
#[derive(Clone, Debug, Default)]
pub struct KnownMask {
    known: BTreeMap<Elem, Laurent>,
    bounds: BTreeMap<Elem, Laurent>,
}

impl KnownMask {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a fully known polynomial; returns false if it conflicts with an earlier one.
    pub fn set_known(&mut self, x: Elem, value: Laurent) -> bool {
        match self.known.get(&x) {
            Some(v) => *v == value,
            None => {
                self.known.insert(x, value);
                true
            }
        }
    }

    pub fn set_bound(&mut self, x: Elem, bound: Laurent) {
        self.bounds.insert(x, bound);
    }

    pub fn bound(&self, x: Elem) -> Option<&Laurent> {
        self.bounds.get(&x)
    }

    /// Known value of `pm^d_{x,w}`, counting a zero bound as known.
    pub fn known(&self, x: Elem, d: i32) -> Option<(i64, bool)> {
        if let Some(v) = self.known.get(&x) {
            return Some((v.coeff(d), false));
        }
        match self.bounds.get(&x) {
            Some(b) if b.coeff(d) == 0 => Some((0, true)),
            _ => None,
        }
    }

    pub fn known_polys(&self) -> impl Iterator<Item = (Elem, &Laurent)> {
        self.known.iter().map(|(x, v)| (*x, v))
    }
}
