use super::*;
use crate::coxeter::{CoxeterSystem, Gcm};

fn table(name: &str) -> Arc<ElementTable> {
    let sys = CoxeterSystem::new(Gcm::preset(name).unwrap());
    Arc::new(ElementTable::new(sys, Some(12), 10_000).unwrap())
}

fn frame(t: &ElementTable, ws: &[&str]) -> Vec<Elem> {
    ws.iter().map(|w| t.parse_word(w).unwrap()).collect()
}

fn lin(c: &[i64]) -> RatFunc {
    RatFunc::linear(c)
}

#[test]
fn objects() {
    let t = table("A2");
    assert_eq!(lambda_object(&t, &[0]).unwrap(), frame(&t, &["id", "0"]));
    assert_eq!(lambda_object(&t, &[]).unwrap(), vec![Elem::ID]);
    assert_eq!(
        lambda_object(&t, &[0, 1, 0]).unwrap(),
        frame(&t, &["id", "0", "1", "10", "0", "id", "01", "010"])
    );
}

#[test]
fn a2_braid_matrix() {
    let t = table("A2");
    let psi = braid_closed_form(&t, 0, 1).unwrap();
    let (a, b) = (lin(&[1, 0]), lin(&[0, 1]));
    let p = a.add(&b).div(&b).unwrap();
    let q = a.neg().div(&b).unwrap();
    let one = RatFunc::one();
    let mut want = vec![vec![RatFunc::zero(); 8]; 8];
    for (i, j, v) in [
        (0, 0, &p), (0, 5, &p), (1, 2, &p), (2, 1, &one), (2, 4, &one), (3, 6, &one),
        (4, 2, &q), (5, 0, &q), (5, 5, &q), (6, 3, &one), (7, 7, &one),
    ] {
        want[i][j] = v.clone();
    }
    assert_eq!(psi.image().to_dense(), want);
    assert_eq!(psi.deg(), 0);
    assert_eq!(p.eval_ones().unwrap(), num_rational::BigRational::from_integer(2.into()));
    assert_eq!(q.eval_ones().unwrap(), num_rational::BigRational::from_integer((-1).into()));
}

#[test]
fn commuting_braid_is_permutation() {
    let t = table("A3");
    let psi = braid_closed_form(&t, 0, 2).unwrap();
    let m = psi.image();
    assert_eq!(m.nnz(), 4);
    assert!(m.cols().iter().flatten().all(|(_, c)| c.is_one()));
    assert_eq!(m.cod(), frame(&t, &["id", "0", "2", "20"]));
}

#[test]
fn infinite_order_has_no_braid() {
    let sys = CoxeterSystem::new(Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap());
    let t = Arc::new(ElementTable::new(sys, Some(4), 100).unwrap());
    assert_eq!(braid_closed_form(&t, 0, 1).unwrap_err(), LocError::NoBraidRelation(0, 1));
    let store = BraidStore::build(&t, true).unwrap();
    assert_eq!(store.get(&t, 0, 1).unwrap_err(), LocError::NoBraidRelation(0, 1));
}

#[test]
fn relations_hold() {
    for name in ["A2", "A3", "B2", "C3", "G2", "A~2"] {
        let t = table(name);
        let store = BraidStore::build(&t, true).unwrap();
        let report = verify_relations(&t, &store).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.failures());
        assert!(report.items.len() >= 7 * t.rank());
    }
}

#[test]
fn higher_orders_need_derivation() {
    let t = table("B2");
    let store = BraidStore::build(&t, false).unwrap();
    assert_eq!(store.get(&t, 0, 1).unwrap_err(), LocError::MissingBraidMatrix(0, 1));
    let store = BraidStore::build(&t, true).unwrap();
    assert_eq!(store.provenance(0, 1), Some(Provenance::Derived));
    let t = table("A2");
    assert_eq!(BraidStore::build(&t, false).unwrap().provenance(1, 0), Some(Provenance::Builtin));
}

#[test]
fn spider_is_root_product() {
    let t = table("A2");
    let pi = dihedral_root_product(&t, 0, 1, 3).unwrap();
    assert_eq!(pi, lin(&[1, 0]).mul(&lin(&[0, 1])).mul(&lin(&[1, 1])));
}

#[test]
fn barbell_and_needle() {
    let t = table("A2");
    let [sd, ed, sp, mg] = one_colour_generators(&t, 1).unwrap();
    assert_eq!(ed.compose(&t, &sd).unwrap().image().to_dense(), vec![vec![lin(&[0, 1])]]);
    assert!(mg.compose(&t, &sp).unwrap().image().is_zero());
    assert_eq!((sd.deg(), ed.deg(), sp.deg(), mg.deg()), (1, 1, -1, -1));
}

#[test]
fn faulty_startdot_detected() {
    let t = table("A2");
    let f = lambda_object(&t, &[0]).unwrap();
    let img = StdMor::new(vec![Elem::ID], f, vec![vec![(0, RatFunc::from_int(2))]], 1).unwrap();
    let bad = BSMor::new(&t, vec![], vec![0], img).unwrap();
    let gens = [bad, enddot(&t, 0).unwrap(), split(&t, 0).unwrap(), merge(&t, 0).unwrap()];
    let mut report = RelationReport::default();
    braid::check_one_colour(&t, 0, &gens, &mut report).unwrap();
    let fails = report.failures();
    assert!(fails.contains(&"unit 0"));
    assert!(fails.contains(&"barbell 0"));
    assert!(!fails.contains(&"needle 0"));
}

#[test]
fn flips() {
    let t = table("G2");
    for s in 0..2 {
        let [sd, ed, sp, mg] = one_colour_generators(&t, s).unwrap();
        assert_eq!(sd.flip(&t).unwrap().image(), ed.image());
        assert_eq!(sp.flip(&t).unwrap().image(), mg.image());
        assert_eq!(mg.flip(&t).unwrap().image(), sp.image());
    }
}

/// Bend the first source strand up to the left and the last target strand down to the right.
fn rotate(t: &Arc<ElementTable>, psi: &BSMor) -> BSMor {
    let act = Action::<RatFunc>::hecke(t.clone());
    let dw = psi.dom_word();
    let cw = psi.cod_word();
    let (s, last) = (dw[0] as usize, *cw.last().unwrap() as usize);
    let cup = split(t, s).unwrap().compose(t, &startdot(t, s).unwrap()).unwrap();
    let cap = enddot(t, last).unwrap().compose(t, &merge(t, last).unwrap()).unwrap();
    let id = |w: &[u8]| BSMor::identity(t, w).unwrap();
    let bent = id(&[s as u8]).tensor(&act, psi).unwrap().compose(t, &cup.tensor(&act, &id(&dw[1..])).unwrap()).unwrap();
    let step = bent.tensor(&act, &id(&[last as u8])).unwrap();
    let close = id(&[&[s as u8][..], &cw[..cw.len() - 1]].concat()).tensor(&act, &cap).unwrap();
    close.compose(t, &step).unwrap()
}

#[test]
fn braid_rotation() {
    for name in ["A2", "B2", "G2"] {
        let t = table(name);
        let st = braid_closed_form(&t, 0, 1).unwrap();
        let ts = braid_closed_form(&t, 1, 0).unwrap();
        assert_eq!(rotate(&t, &st).image(), ts.image(), "{name}");
        assert_eq!(rotate(&t, &ts).image(), st.image(), "{name}");
        assert_eq!(st.flip(&t).unwrap().image(), ts.image());
    }
}

#[test]
fn denominators_stay_dihedral() {
    let t = table("A3");
    for (s, u) in [(0, 1), (1, 2), (0, 2)] {
        let psi = braid_closed_form(&t, s, u).unwrap();
        let mut roots = Vec::new();
        let mut c = vec![0; 3];
        c[s] = 1;
        roots.push(lin(&c));
        c[u] = 1;
        roots.push(lin(&c));
        c[s] = 0;
        roots.push(lin(&c));
        assert!(entries_use_only(psi.image(), &roots));
    }
}

#[test]
fn import_round_trip() {
    let t = table("B2");
    let built = BraidStore::build(&t, true).unwrap();
    let text = built.export(&t, 0, 1).unwrap();
    let mut store = BraidStore::empty();
    store.import(&t, &text).unwrap();
    assert_eq!(store.provenance(1, 0), Some(Provenance::Imported));
    assert_eq!(store.get(&t, 1, 0).unwrap().image(), built.get(&t, 1, 0).unwrap().image());
    let lines: Vec<&str> = text.lines().collect();
    let mut changed: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
    let last = changed.len() - 1;
    changed[last] = format!("{} 2@0.0", lines[last].rsplit_once(' ').unwrap().0);
    let mut store = BraidStore::empty();
    assert!(matches!(store.import(&t, &changed.join("\n")), Err(LocError::Rejected(..))));
    assert!(store.import(&t, "braid 0 1 3\n").is_err());
}
