//! Configuration, orchestration, checkpoints and output.

pub mod checkpoint;
pub mod config;
pub mod emit;

pub use checkpoint::Checkpoint;
pub use config::{Algorithm, Format, GcmSource, ModeArg, RunConfig, Verify};
pub use emit::{from_json, to_json, to_tsv, Output, OutputRecord};

use crate::arith::{ArithError, Laurent, PModular};
use crate::coxeter::{parse_word, CoxeterError, CoxeterSystem, Elem, ElementTable, Gcm, Parabolic};
use crate::hecke::{bar, mult_delta_s, HeckeElt, HeckeError, KlData, KlOracle};
use crate::intersection::{EntryProvenance, IntersectionError, PCanTable, Simple, SimpleConfig};
use crate::localisation::{verify_relations, BraidStore, LocError};
use crate::main_alg::{MainConfig, MainError, Pipeline};
use log::info;
use serde_json::json;
use std::fs;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("checkpoint version {0} is not supported")]
    VersionMismatch(String),
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("relation check failed: {0}")]
    Relations(String),
    #[error("oracle self-check failed: {0}")]
    Oracle(String),
    #[error("algorithms disagree:\n{0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Loc(#[from] LocError),
    #[error(transparent)]
    Main(#[from] MainError),
    #[error(transparent)]
    Intersection(#[from] IntersectionError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug)]
pub struct RunSummary {
    pub complete: bool,
    pub table: Option<PCanTable>,
    pub records: Vec<OutputRecord>,
    /// Rendered output in the configured format, when complete.
    pub rendered: Option<String>,
    pub computed: usize,
}

/// Everything derived from the configuration before any algorithm runs.
pub struct Setup {
    pub table: Arc<ElementTable>,
    pub parabolic: Option<Parabolic>,
    pub pm: PModular,
    pub store: BraidStore,
    pub only: Vec<Elem>,
    /// Columns are computed up to this length; the table itself may reach further.
    pub max_length: Option<usize>,
    imports: Vec<String>,
}

pub fn load_gcm(src: &GcmSource) -> Result<Gcm, RunError> {
    Ok(match src {
        GcmSource::Preset(name) => Gcm::preset(name)?,
        GcmSource::File(path) => Gcm::parse(&fs::read_to_string(path)?)?,
    })
}

pub fn setup(config: &RunConfig) -> Result<Setup, RunError> {
    config.validate()?;
    let gcm = load_gcm(&config.gcm)?;
    let n = gcm.rank();
    let words: Vec<Vec<u8>> = config
        .elements
        .iter()
        .map(|w| parse_word(w).ok_or_else(|| RunError::Config(format!("bad word {w}"))))
        .collect::<Result<_, _>>()?;
    let limit = match (config.length_limit, words.iter().map(Vec::len).max()) {
        (Some(l), Some(m)) if m > l => return Err(RunError::Config("requested element exceeds the length limit".into())),
        (Some(l), _) => Some(l),
        (None, m) => m,
    };
    let sys = CoxeterSystem::new(gcm);
    let longest_braid = (0..n)
        .flat_map(|a| (0..n).filter_map(move |b| (a != b).then_some((a, b))))
        .filter_map(|(a, b)| sys.m(a, b))
        .max()
        .unwrap_or(2) as usize;
    let table = Arc::new(ElementTable::new(sys, limit.map(|l| l.max(longest_braid)), config.cap)?);
    let only = words
        .iter()
        .map(|w| {
            table
                .from_word(w)
                .filter(|x| table.length(*x) == w.len())
                .ok_or_else(|| RunError::Config(format!("{} is not a reduced word", crate::coxeter::word_string(w))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let parabolic = if config.parabolic.is_empty() {
        None
    } else {
        Some(Parabolic::new(n, &config.parabolic)?)
    };
    let pm = if config.p == 0 { PModular::zero_char() } else { PModular::new(config.p)? };
    let mut store = BraidStore::build(&table, config.derive_braids)?;
    let mut imports = Vec::new();
    for path in &config.braid_imports {
        let text = fs::read_to_string(path)?;
        store.import(&table, &text)?;
        imports.push(checkpoint::sha256_hex(text.as_bytes()));
    }
    if let Some(dir) = &config.braid_export {
        fs::create_dir_all(dir)?;
        for s in 0..n {
            for t in 0..n {
                if s != t && table.sys().m(s, t).is_some_and(|m| m > 2) {
                    if let Ok(text) = store.export(&table, s, t) {
                        fs::write(dir.join(format!("braid_{s}_{t}.txt")), text)?;
                    }
                }
            }
        }
    }
    Ok(Setup {
        table,
        parabolic,
        pm,
        store,
        only,
        imports,
        max_length: limit,
    })
}

/// Checks the canonical basis against standard-basis multiplication and bar invariance.
pub fn oracle_self_check(table: &Arc<ElementTable>) -> Result<(), RunError> {
    let kl = KlData::new(table.clone())?;
    for w in table.elems() {
        let b = kl.canonical(w);
        if bar(table, b)? != *b {
            return Err(RunError::Oracle(format!("b_{} is not bar invariant", table.word_string(w))));
        }
        if table.limit().is_some_and(|l| table.length(w) >= l) {
            continue;
        }
        for s in 0..table.rank() {
            if table.right_mul(w, s).is_none() {
                continue;
            }
            let direct = mult_delta_s(table, b, s)?.add(&b.scale(&Laurent::v()));
            let via = kl.from_canonical(&kl.canonical_mult_bs(&HeckeElt::basis(w), s)?);
            if direct != via {
                return Err(RunError::Oracle(format!("b_{} b_{s} disagrees", table.word_string(w))));
            }
        }
    }
    Ok(())
}

fn fingerprint(config: &RunConfig, s: &Setup, which: &str) -> String {
    let v = json!({
        "cartan": s.table.sys().gcm().rows(),
        "p": config.p,
        "parabolic": config.parabolic,
        "limit": s.max_length,
        "algorithm": which,
        "mode": config.simple_mode() == crate::intersection::Mode::Symbolic,
        "prune": config.prune,
        "symmetries": config.symmetries,
        "stars": config.stars,
        "liberal": config.liberal_order_six,
        "derive": config.derive_braids,
        "imports": s.imports,
    });
    checkpoint::sha256_hex(v.to_string().as_bytes())
}

fn run_main(config: &RunConfig, s: &Setup) -> Result<(bool, PCanTable, usize), RunError> {
    let mut pl = Pipeline::new(
        s.table.clone(),
        s.parabolic.clone(),
        s.pm,
        s.store.clone(),
        MainConfig {
            prune: config.prune,
            max_length: s.max_length,
        },
    )?;
    let mut ckpt = match &config.checkpoint {
        Some(dir) => Some(Checkpoint::open(&dir.join("main"), &fingerprint(config, s, "main"))?),
        None => None,
    };
    if let Some(c) = &ckpt {
        for d in c.load_elements(&s.table)? {
            pl.insert(d);
        }
        info!("resumed {} elements from checkpoint", c.len());
    }
    let mut computed = 0;
    let table = s.table.clone();
    let complete = pl.run(config.stop_after, |d| -> Result<(), RunError> {
        computed += 1;
        let leaves = d.up.values().chain(d.down.values()).flatten();
        let (dims, bits) = leaves.fold((0, 0), |(a, b), m| (a.max(m.nrows().max(m.ncols())), b.max(m.max_entry_bits())));
        info!(
            "{}: |T| = {}, peak leaf dimension {dims}, coefficient bits {bits}",
            table.word_string(d.w),
            d.t.len()
        );
        if let Some(c) = ckpt.as_mut() {
            c.save_element(&table, d)?;
        }
        Ok(())
    })?;
    Ok((complete, PCanTable::from_characters(&pl.table_columns(), EntryProvenance::Computed), computed))
}

fn run_simple(config: &RunConfig, s: &Setup) -> Result<(bool, PCanTable, usize), RunError> {
    let sc = SimpleConfig {
        mode: config.simple_mode(),
        symmetries: config.symmetries,
        stars: config.stars,
        liberal_order_six: config.liberal_order_six,
        verify_known: config.verify == Verify::Full,
        max_length: s.max_length,
    };
    let mut simple = Simple::new(s.table.clone(), s.pm, s.store.clone(), sc)?;
    let mut ckpt = match &config.checkpoint {
        Some(dir) => Some(Checkpoint::open(&dir.join("simple"), &fingerprint(config, s, "simple"))?),
        None => None,
    };
    if let Some(c) = &ckpt {
        for (w, col) in c.load_columns(&s.table)? {
            simple.insert_column(w, col);
        }
        info!("resumed {} columns from checkpoint", c.len());
    }
    let mut computed = 0;
    let table = s.table.clone();
    let complete = simple.run(config.stop_after, |w, col| -> Result<(), RunError> {
        computed += 1;
        info!("{}: {} entries", table.word_string(w), col.len());
        if let Some(c) = ckpt.as_mut() {
            c.save_column(&table, w, col)?;
        }
        Ok(())
    })?;
    info!(
        "ranks computed {}, known values used {}, columns by symmetry {}",
        simple.stats.ranks, simple.stats.known_used, simple.stats.transported
    );
    Ok((complete, simple.into_result(), computed))
}

/// Lines describing every column on which two tables differ.
pub fn diff(table: &ElementTable, a: &PCanTable, b: &PCanTable) -> Vec<String> {
    let ca = a.characters();
    let cb = b.characters();
    let mut ws: Vec<Elem> = ca.keys().chain(cb.keys()).copied().collect();
    ws.sort();
    ws.dedup();
    let show = |h: Option<&HeckeElt>| match h {
        None => "missing".to_string(),
        Some(h) => h
            .terms()
            .map(|(x, c)| format!("{}:{}", table.word_string(x), c.to_pairs()))
            .collect::<Vec<_>>()
            .join(" "),
    };
    ws.into_iter()
        .filter(|w| ca.get(w) != cb.get(w))
        .map(|w| format!("{}\tmain {}\tsimple {}", table.word_string(w), show(ca.get(&w)), show(cb.get(&w))))
        .collect()
}

pub fn run(config: &RunConfig) -> Result<RunSummary, RunError> {
    let s = setup(config)?;
    if config.verify == Verify::Full {
        let report = verify_relations(&s.table, &s.store)?;
        if !report.passed() {
            return Err(RunError::Relations(report.failures().join(", ")));
        }
        oracle_self_check(&s.table)?;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.threads).build()?;
    let (complete, table, computed) = pool.install(|| -> Result<_, RunError> {
        match config.algorithm {
            Algorithm::Main => run_main(config, &s),
            Algorithm::Simple => run_simple(config, &s),
            Algorithm::Both => {
                let (c1, a, n1) = run_main(config, &s)?;
                let (c2, b, n2) = run_simple(config, &s)?;
                if c1 && c2 {
                    let d = diff(&s.table, &a, &b);
                    if !d.is_empty() {
                        return Err(RunError::Mismatch(d.join("\n")));
                    }
                }
                Ok((c1 && c2, b, n1 + n2))
            }
        }
    })?;
    if !complete {
        return Ok(RunSummary {
            complete,
            table: Some(table),
            records: Vec::new(),
            rendered: None,
            computed,
        });
    }
    let oracle = if config.with_h {
        Some(KlOracle::new(s.table.clone(), s.parabolic.clone())?)
    } else {
        None
    };
    let records = emit::records(&s.table, &table, oracle.as_ref(), &s.only);
    let rendered = match config.format {
        Format::Tsv => to_tsv(&records),
        Format::Json => to_json(&Output {
            cartan: s.table.sys().gcm().rows().to_vec(),
            p: config.p,
            parabolic: config.parabolic.clone(),
            algorithm: format!("{:?}", config.algorithm).to_lowercase(),
            records: records.clone(),
        })?,
    };
    if let Some(path) = &config.output {
        write_atomic(path, &rendered)?;
    }
    Ok(RunSummary {
        complete,
        table: Some(table),
        records,
        rendered: Some(rendered),
        computed,
    })
}

fn write_atomic(path: &Path, text: &str) -> Result<(), RunError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, path)?;
    Ok(())
}
