//! Line-based text form of [`ElementData`], used for checkpoints.

use super::{ElementData, Mor};
use crate::arith::Laurent;
use crate::coxeter::{Elem, ElementTable};
use crate::hecke::HeckeElt;
use crate::stdcat::StdMor;
use std::collections::BTreeMap;

pub fn element_to_text(table: &ElementTable, d: &ElementData) -> String {
    let name = |x: Elem| table.word_string(x);
    let mut out = format!("@element {}\n", name(d.w));
    match d.s0 {
        Some(s) => out.push_str(&format!("@s0 {s}\n")),
        None => out.push_str("@s0 -\n"),
    }
    let t: Vec<String> = d.t.iter().map(|x| name(*x)).collect();
    out.push_str(&format!("@t {}\n", t.join(" ")));
    for (x, c) in d.character.terms() {
        out.push_str(&format!("@char {} {}\n", name(x), c.to_pairs()));
    }
    for (x, k) in &d.peels {
        out.push_str(&format!("@peel {} {k}\n", name(*x)));
    }
    for (tag, cores) in [("coreup", &d.core_up), ("coredown", &d.core_down)] {
        for (x, n) in cores {
            out.push_str(&format!("@{tag} {} {n}\n", name(*x)));
        }
    }
    let mut mor = |tag: &str, key: String, m: &Mor| {
        out.push_str(&format!("@{tag} {key}\n"));
        out.push_str(&m.to_text(table));
    };
    for (s, m) in &d.incl {
        mor("incl", s.to_string(), m);
    }
    for (s, m) in &d.proj {
        mor("proj", s.to_string(), m);
    }
    for (x, ms) in &d.up {
        for m in ms {
            mor("up", name(*x), m);
        }
    }
    for (x, ms) in &d.down {
        for m in ms {
            mor("down", name(*x), m);
        }
    }
    out.push_str("@end\n");
    out
}

enum Slot {
    Incl(usize),
    Proj(usize),
    Up(Elem),
    Down(Elem),
}

/// Parses one element block as written by [`element_to_text`].
pub fn element_from_text(table: &ElementTable, text: &str) -> Option<ElementData> {
    let mut d = ElementData {
        w: Elem::ID,
        t: Vec::new(),
        s0: None,
        incl: BTreeMap::new(),
        proj: BTreeMap::new(),
        up: BTreeMap::new(),
        down: BTreeMap::new(),
        character: HeckeElt::zero(),
        peels: Vec::new(),
        core_up: BTreeMap::new(),
        core_down: BTreeMap::new(),
    };
    let mut pending: Option<(Slot, String)> = None;
    let mut seen_end = false;
    let flush = |d: &mut ElementData, p: Option<(Slot, String)>| -> Option<()> {
        let Some((slot, body)) = p else { return Some(()) };
        let m: Mor = StdMor::from_text(table, &body)?;
        match slot {
            Slot::Incl(s) => {
                d.incl.insert(s, m);
            }
            Slot::Proj(s) => {
                d.proj.insert(s, m);
            }
            Slot::Up(x) => d.up.entry(x).or_default().push(m),
            Slot::Down(x) => d.down.entry(x).or_default().push(m),
        }
        Some(())
    };
    for line in text.lines() {
        let Some(rest) = line.strip_prefix('@') else {
            let (_, body) = pending.as_mut()?;
            body.push_str(line);
            body.push('\n');
            continue;
        };
        flush(&mut d, pending.take())?;
        let (tag, arg) = rest.split_once(' ').unwrap_or((rest, ""));
        match tag {
            "element" => d.w = table.parse_word(arg)?,
            "s0" => d.s0 = if arg == "-" { None } else { Some(arg.parse().ok()?) },
            "t" => d.t = arg.split_whitespace().map(|w| table.parse_word(w)).collect::<Option<_>>()?,
            "char" => {
                let (x, c) = arg.split_once(' ')?;
                d.character.add_term(table.parse_word(x)?, &Laurent::parse_pairs(c)?);
            }
            "peel" => {
                let (x, k) = arg.split_once(' ')?;
                d.peels.push((table.parse_word(x)?, k.parse().ok()?));
            }
            "coreup" | "coredown" => {
                let (x, n) = arg.split_once(' ')?;
                let map = if tag == "coreup" { &mut d.core_up } else { &mut d.core_down };
                map.insert(table.parse_word(x)?, n.parse().ok()?);
            }
            "incl" => pending = Some((Slot::Incl(arg.parse().ok()?), String::new())),
            "proj" => pending = Some((Slot::Proj(arg.parse().ok()?), String::new())),
            "up" => pending = Some((Slot::Up(table.parse_word(arg)?), String::new())),
            "down" => pending = Some((Slot::Down(table.parse_word(arg)?), String::new())),
            "end" => seen_end = true,
            _ => return None,
        }
    }
    flush(&mut d, pending)?;
    seen_end.then_some(d)
}
