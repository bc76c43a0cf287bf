use super::*;
use crate::coxeter::{CoxeterSystem, Gcm};
use crate::main_alg::{MainConfig, MainError, Pipeline};

fn table(name: &str) -> Arc<ElementTable> {
    let sys = CoxeterSystem::new(Gcm::preset(name).unwrap());
    Arc::new(ElementTable::new(sys, None, 10_000).unwrap())
}

fn pm(p: u64) -> PModular {
    if p == 0 {
        PModular::zero_char()
    } else {
        PModular::new(p).unwrap()
    }
}

fn simple(t: &Arc<ElementTable>, p: u64, config: SimpleConfig) -> Simple {
    Simple::new(t.clone(), pm(p), BraidStore::build(t, true).unwrap(), config).unwrap()
}

fn run_simple(name: &str, p: u64, config: SimpleConfig) -> PCanTable {
    let mut s = simple(&table(name), p, config);
    s.run(None, |_, _| Ok::<_, IntersectionError>(())).unwrap();
    s.into_result()
}

fn run_main(name: &str, p: u64) -> PCanTable {
    let t = table(name);
    let mut pl = Pipeline::new(t.clone(), None, pm(p), BraidStore::build(&t, true).unwrap(), MainConfig::default()).unwrap();
    pl.run(None, |_| Ok::<_, MainError>(())).unwrap();
    PCanTable::from_characters(&pl.table_columns(), EntryProvenance::Computed)
}

fn identity_table(t: &ElementTable) -> BTreeMap<Elem, HeckeElt> {
    t.elems().map(|w| (w, HeckeElt::basis(w))).collect()
}

#[test]
fn rex_paths() {
    let t = table("A2");
    let p = rex::path(&t, &[0, 1, 0], &[1, 0, 1]).unwrap();
    assert_eq!(p, vec![rex::Move { i: 0, s: 0, t: 1, m: 3 }]);
    assert!(rex::path(&t, &[0, 1], &[1, 0]).is_err());
    let t = table("A3");
    let p = rex::path(&t, &[0, 2, 1, 0], &[2, 1, 0, 1]).unwrap();
    assert_eq!(p.len(), 2);
}

#[test]
fn one_generator_leaves() {
    let t = table("A2");
    let s = simple(&t, 0, SimpleConfig::default());
    for mode in [Mode::Symbolic, Mode::EvalOnes] {
        let p = s.pack(&[0], mode).unwrap();
        let g = t.parse_word("0").unwrap();
        assert_eq!(p.count(Elem::ID), 1);
        assert_eq!(p.count(g), 1);
        assert_eq!(p.degrees(Elem::ID), Vec::<i32>::new());
        assert_eq!(p.pairing(&t, g, 0).unwrap(), vec![vec![BigRational::from_integer(1.into())]]);
    }
    let AnyPack::Eval(p) = s.pack(&[0], Mode::EvalOnes).unwrap() else { unreachable!() };
    assert_eq!(p.leaves[&Elem::ID][0].deg, 1);
}

#[test]
fn sts_pairing() {
    let t = table("A2");
    let s = simple(&t, 0, SimpleConfig::default());
    let g = t.parse_word("0").unwrap();
    let w = t.parse_word("010").unwrap();
    for mode in [Mode::Symbolic, Mode::EvalOnes] {
        let p = s.pack(&[0, 1, 0], mode).unwrap();
        assert_eq!(p.count(g), 2);
        let total: usize = t.elems().map(|y| p.count(y)).sum();
        assert_eq!(total, 8);
        let m = p.pairing(&t, g, 0).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 1);
        assert!(m[0][0] == BigRational::from_integer(1.into()) || m[0][0] == BigRational::from_integer((-1).into()));
        assert_eq!(p.pairing(&t, w, 0).unwrap(), vec![vec![BigRational::from_integer(1.into())]]);
    }
}

#[test]
fn modes_agree_on_all_cells() {
    let t = table("A3");
    let s = simple(&t, 0, SimpleConfig::default());
    for w in t.elems().filter(|w| t.length(*w) <= 4) {
        let word = t.word(w).to_vec();
        let a = s.pack(&word, Mode::Symbolic).unwrap();
        let b = s.pack(&word, Mode::EvalOnes).unwrap();
        for y in t.ideal(w) {
            for d in a.degrees(y) {
                assert_eq!(a.pairing(&t, y, d).unwrap(), b.pairing(&t, y, d).unwrap());
            }
        }
    }
}

#[test]
fn characteristic_zero_is_identity() {
    for name in ["A2", "A3", "B2"] {
        let t = table(name);
        let got = run_simple(name, 0, SimpleConfig::default());
        assert_eq!(got.characters(), identity_table(&t), "{name}");
    }
}

#[test]
fn agrees_with_main_algorithm() {
    for (name, p) in [("A2", 2), ("A3", 2), ("A3", 3), ("B2", 2), ("B2", 3), ("G2", 2), ("G2", 3)] {
        let a = run_simple(name, p, SimpleConfig::default());
        let b = run_main(name, p);
        assert!(a.same_values(&b), "{name} p = {p}");
    }
}

#[test]
fn symmetries_and_stars_are_consistent() {
    let checked = SimpleConfig {
        verify_known: true,
        ..SimpleConfig::default()
    };
    let plain = SimpleConfig {
        symmetries: false,
        stars: false,
        ..SimpleConfig::default()
    };
    for (name, p) in [("A3", 2), ("B2", 3), ("G2", 7), ("B3", 3)] {
        let a = run_simple(name, p, checked);
        let b = run_simple(name, p, plain);
        assert!(a.same_values(&b), "{name} p = {p}");
    }
}

#[test]
fn symmetry_sources() {
    let t = table("A3");
    assert_eq!(symmetry::diagram_automorphisms(t.sys().gcm()), vec![vec![2, 1, 0]]);
    assert!(symmetry::diagram_automorphisms(table("B2").sys().gcm()).is_empty());
    assert!(!symmetry::star_is_good(6, 5, false));
    assert!(symmetry::star_is_good(6, 5, true));
    assert!(symmetry::star_is_good(6, 7, false));
    assert!(!symmetry::star_is_good(4, 2, false));
    assert!(symmetry::star_is_good(3, 2, false));
    let a2 = table("A2");
    let e = |w: &str| a2.parse_word(w).unwrap();
    assert_eq!(symmetry::star(&a2, e("0"), 0, 1), Some(e("01")));
    assert_eq!(symmetry::star(&a2, e("01"), 0, 1), Some(e("0")));
    assert_eq!(symmetry::star(&a2, e("010"), 0, 1), None);
    let res = run_simple("A3", 2, SimpleConfig::default());
    assert!(res.columns().any(|(_, c)| c.values().any(|e| e.1 == EntryProvenance::InverseSymmetry)));
    assert!(res.columns().any(|(_, c)| c.values().any(|e| e.1 == EntryProvenance::DiagramSymmetry)));
}

#[test]
fn bounds_force_zero() {
    let t = table("A2");
    let mut s = simple(&t, 0, SimpleConfig { stars: false, ..SimpleConfig::default() });
    s.run(None, |_, _| Ok::<_, IntersectionError>(())).unwrap();
    let mut fresh = simple(&t, 0, SimpleConfig { stars: false, ..SimpleConfig::default() });
    for w in t.elems().filter(|w| t.length(*w) < 3) {
        fresh.out.set_column(w, s.result().column(w).unwrap().clone());
    }
    let w = t.parse_word("010").unwrap();
    let mask = fresh.mask(w).unwrap();
    assert_eq!(mask.known(t.parse_word("1").unwrap(), 0), Some((0, true)));
    assert_eq!(mask.known(t.parse_word("0").unwrap(), 0), Some((0, true)));
    assert_eq!(mask.bound(w), Some(&Laurent::one()));
    assert_eq!(mask.known(w, 0), None);
}
