use super::RunError;
use crate::arith::Laurent;
use crate::coxeter::{Elem, ElementTable};
use crate::hecke::KlOracle;
use crate::intersection::{EntryProvenance, PCanTable};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub w: String,
    pub x: String,
    /// `(degree, coefficient)` pairs of `pm_{x,w}`, by increasing degree.
    pub m: Vec<(i32, i64)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<Vec<(i32, i64)>>,
    pub provenance: EntryProvenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub cartan: Vec<Vec<i64>>,
    pub p: u64,
    pub parabolic: Vec<usize>,
    pub algorithm: String,
    pub records: Vec<OutputRecord>,
}

fn pairs(l: &Laurent) -> Vec<(i32, i64)> {
    l.terms().collect()
}

/// `ph_{x,w} = sum_y pm_{y,w} h_{x,y}`.
pub fn p_h(oracle: &KlOracle, table: &PCanTable, x: Elem, w: Elem) -> Laurent {
    let mut out = Laurent::zero();
    if let Some(col) = table.column(w) {
        for (y, (m, _)) in col {
            if !m.is_zero() {
                out += &(m * &oracle.h(x, *y));
            }
        }
    }
    out
}

/// Records for the columns in `only` (all columns if empty), in emission order.
pub fn records(
    table: &ElementTable,
    pcan: &PCanTable,
    oracle: Option<&KlOracle>,
    only: &[Elem],
) -> Vec<OutputRecord> {
    let keep = |w: Elem| only.is_empty() || only.contains(&w);
    let mut out = Vec::new();
    match oracle {
        None => {
            for (w, x, c, p) in pcan.rows(table) {
                if keep(w) {
                    out.push(OutputRecord {
                        w: table.word_string(w),
                        x: table.word_string(x),
                        m: pairs(c),
                        h: None,
                        provenance: p,
                    });
                }
            }
        }
        Some(oracle) => {
            let key = |x: &Elem| (table.length(*x), table.word(*x).to_vec());
            let mut ws: Vec<Elem> = pcan.columns().map(|(w, _)| w).filter(|w| keep(*w)).collect();
            ws.sort_by_key(key);
            for w in ws {
                let col = pcan.column(w).unwrap();
                let diag = col.get(&w).map(|e| e.1).unwrap_or(EntryProvenance::Computed);
                let mut xs: Vec<Elem> = table.ideal(w).into_iter().filter(|x| oracle.contains(*x)).collect();
                xs.sort_by_key(key);
                for x in xs {
                    let m = pcan.get(x, w);
                    let h = p_h(oracle, pcan, x, w);
                    if m.is_zero() && h.is_zero() {
                        continue;
                    }
                    out.push(OutputRecord {
                        w: table.word_string(w),
                        x: table.word_string(x),
                        m: pairs(&m),
                        h: Some(pairs(&h)),
                        provenance: col.get(&x).map(|e| e.1).unwrap_or(diag),
                    });
                }
            }
        }
    }
    out
}

fn pair_text(v: &[(i32, i64)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(",")
}

pub fn to_tsv(records: &[OutputRecord]) -> String {
    let with_h = records.iter().any(|r| r.h.is_some());
    let mut s = String::from(if with_h { "w\tx\tpm\tph\tprovenance\n" } else { "w\tx\tpm\tprovenance\n" });
    for r in records {
        s.push_str(&r.w);
        s.push('\t');
        s.push_str(&r.x);
        s.push('\t');
        s.push_str(&pair_text(&r.m));
        if let Some(h) = &r.h {
            s.push('\t');
            s.push_str(&pair_text(h));
        }
        s.push('\t');
        s.push_str(r.provenance.as_str());
        s.push('\n');
    }
    s
}

pub fn to_json(out: &Output) -> Result<String, RunError> {
    Ok(serde_json::to_string_pretty(out)? + "\n")
}

pub fn from_json(text: &str) -> Result<Output, RunError> {
    Ok(serde_json::from_str(text)?)
}
