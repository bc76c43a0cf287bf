use super::*;
use crate::arith::RatFunc;
use crate::coxeter::{CoxeterSystem, Gcm, Parabolic};
use crate::localisation::{braid_closed_form, merge, split, startdot, enddot, BSMor};
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::Arc;

fn table(name: &str) -> Arc<ElementTable> {
    let sys = CoxeterSystem::new(Gcm::preset(name).unwrap());
    Arc::new(ElementTable::new(sys, None, 10_000).unwrap())
}

fn e(t: &ElementTable, w: &str) -> Elem {
    t.parse_word(w).unwrap()
}

fn frame(t: &ElementTable, ws: &[&str]) -> Vec<Elem> {
    ws.iter().map(|w| e(t, w)).collect()
}

fn lin(c: &[i64]) -> RatFunc {
    RatFunc::linear(c)
}

/// Permutation action of S3 on three variables: 0 swaps the first two, 1 the last two.
fn perm_cols(t: &ElementTable, x: Elem) -> Vec<Vec<i64>> {
    let gens = [[1usize, 0, 2], [0, 2, 1]];
    let mut img = [0usize, 1, 2];
    for &s in t.word(x).iter().rev() {
        img = [gens[s as usize][img[0]], gens[s as usize][img[1]], gens[s as usize][img[2]]];
    }
    img.iter()
        .map(|&k| (0..3).map(|i| i64::from(i == k)).collect())
        .collect()
}

#[test]
fn worked_tensor_example() {
    let t = table("A2");
    let (x, y, z) = (lin(&[1, 0, 0]), lin(&[0, 1, 0]), lin(&[0, 0, 1]));
    let phi = StdMor::new(
        frame(&t, &["01", "0", "01"]),
        frame(&t, &["01", "0"]),
        vec![vec![(0, x.clone())], vec![(1, y.clone())], vec![(0, z.clone())]],
        0,
    )
    .unwrap();
    let psi = StdMor::new(frame(&t, &["1", "0"]), frame(&t, &["0", "01"]), vec![vec![], vec![(0, x.add(&z))]], 0).unwrap();
    assert_eq!(phi.compose(&psi), Err(StdError::FrameMismatch));
    assert_eq!(psi.compose(&phi), Err(StdError::FrameMismatch));
    let got = tensor(&phi, &psi, |a, b| t.mul(a, b), |w, c| Ok(c.twist(&perm_cols(&t, w)))).unwrap();
    assert_eq!(got.dom(), frame(&t, &["0", "010", "01", "id", "0", "010"]));
    assert_eq!(got.cod(), frame(&t, &["010", "10", "id", "1"]));
    let mut want = vec![vec![RatFunc::zero(); 6]; 4];
    want[0][1] = x.mul(&x.add(&y));
    want[0][5] = z.mul(&x.add(&y));
    want[2][3] = y.mul(&y.add(&z));
    assert_eq!(got.to_dense(), want);
}

#[test]
fn structural_zero_rejected() {
    let t = table("A2");
    let r = StdMor::new(frame(&t, &["0"]), frame(&t, &["1"]), vec![vec![(0, RatFunc::one())]], 0);
    assert_eq!(r, Err(StdError::StructuralZero(0, 0)));
}

#[test]
fn identity_is_neutral() {
    let t = table("A2");
    let f = StdMor::new(frame(&t, &["0", "1"]), frame(&t, &["1", "0", "0"]), vec![vec![(1, lin(&[1, 2])), (2, RatFunc::from_int(3))], vec![(0, lin(&[0, 1]))]], 2).unwrap();
    assert_eq!(f.compose(&StdMor::identity(f.dom().to_vec())).unwrap(), f);
    assert_eq!(StdMor::identity(f.cod().to_vec()).compose(&f).unwrap(), f);
}

#[test]
fn local_quotient_examples() {
    let t = table("A2");
    let f: StdMor<RatFunc> = StdMor::identity(frame(&t, &["id", "0", "1", "010"]));
    let q = f.loc_quotient(&t, e(&t, "0"));
    assert_eq!(q.dom(), frame(&t, &["0", "1", "010"]));
    assert_eq!(f.loc_quotient(&t, Elem::ID), f);
    let small: StdMor<RatFunc> = StdMor::identity(frame(&t, &["id", "0"]));
    assert_eq!(small.loc_quotient(&t, e(&t, "010")).nrows(), 0);
}

#[test]
fn bott_samelson_frames() {
    let t = table("A2");
    let act = Action::<RatFunc>::hecke(t.clone());
    let f = act.act_object(&[Elem::ID], &[0, 1, 0]).unwrap();
    assert_eq!(f, frame(&t, &["id", "0", "1", "10", "0", "id", "01", "010"]));
    assert!(act.act_object(&[], &[0]).unwrap().is_empty());
}

fn anti_a2() -> (Arc<ElementTable>, Action<RatFunc>) {
    let t = table("A2");
    let act = Action::antispherical(t.clone(), Parabolic::new(2, &[1]).unwrap());
    (t, act)
}

#[test]
fn antispherical_objects() {
    let (t, act) = anti_a2();
    let s = e(&t, "0");
    let sv = act.survivors(s, &[0, 1, 0]).unwrap();
    assert_eq!(sv.idx, vec![0, 1]);
    assert_eq!(sv.elems, frame(&t, &["0", "id"]));
    assert_eq!(act.act_object(&[s], &[1, 0, 1]).unwrap(), frame(&t, &["0", "01"]));
    assert!(act.act_object(&[e(&t, "01")], &[0]).unwrap().is_empty());
}

#[test]
fn antispherical_braid_vanishes() {
    let (t, act) = anti_a2();
    let s = e(&t, "0");
    let psi = braid_closed_form(&t, 0, 1).unwrap();
    let got = act.act_id(&[s], &psi).unwrap();
    assert_eq!(got.dom(), frame(&t, &["0", "id"]));
    assert_eq!(got.cod(), frame(&t, &["0", "01"]));
    assert!(got.is_zero());
}

#[test]
fn antispherical_startdot() {
    let (t, act) = anti_a2();
    let got = act.act_id(&[Elem::ID], &startdot(&t, 0).unwrap()).unwrap();
    assert_eq!(got.cod(), frame(&t, &["id", "0"]));
    assert_eq!(got.to_dense(), vec![vec![RatFunc::one()], vec![RatFunc::zero()]]);
}

#[test]
fn antispherical_action_is_functorial() {
    let (t, act) = anti_a2();
    let gens = |s| {
        (
            startdot(&t, s).unwrap(),
            enddot(&t, s).unwrap(),
            split(&t, s).unwrap(),
            merge(&t, s).unwrap(),
        )
    };
    let (sd, ed, sp, mg) = gens(0);
    let pairs: Vec<(BSMor, BSMor)> = vec![(sd.clone(), ed.clone()), (sp.clone(), mg.clone()), (mg.clone(), sp.clone()), (sd.clone(), sp.clone())];
    for x in ["id", "0", "01"] {
        let x = e(&t, x);
        for (a, b) in &pairs {
            let ba = b.compose(&t, a).unwrap();
            let lhs = act.act_id(&[x], &ba).unwrap();
            let rhs = act.act_id(&[x], b).unwrap().compose(&act.act_id(&[x], a).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn action_matches_tensor() {
    let t = table("A2");
    let act = Action::<RatFunc>::hecke(t.clone());
    let f = StdMor::new(frame(&t, &["0", "1"]), frame(&t, &["1", "0"]), vec![vec![(1, lin(&[1, 2]))], vec![(0, lin(&[0, 1]))]], 0).unwrap();
    for psi in [split(&t, 0).unwrap(), braid_closed_form(&t, 1, 0).unwrap()] {
        let a = act.act_mor(&f, &psi).unwrap();
        let b = tensor_adjoint(&t, &f, psi.image()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn eval_mode_agrees() {
    let t = table("B2");
    let sym = Action::<RatFunc>::hecke(t.clone());
    let num = Action::<BigRational>::hecke(t.clone());
    let psi = braid_closed_form(&t, 0, 1).unwrap();
    let x = e(&t, "10");
    let a = sym.act_id(&[x], &psi).unwrap().map(|c| c.eval_ones()).unwrap();
    let b = num.act_id(&[x], &psi).unwrap();
    assert_eq!(a, b);
}

#[test]
fn text_round_trip() {
    let t = table("A2");
    let f = braid_closed_form(&t, 0, 1).unwrap().image().clone();
    let s = f.to_text(&t);
    assert_eq!(StdMor::<RatFunc>::from_text(&t, &s).unwrap(), f);
}

fn arb_mor(t: &ElementTable, dom: Vec<Elem>, cod: Vec<Elem>, seed: &[i64]) -> StdMor<RatFunc> {
    let mut k = 0;
    let mut cols = vec![Vec::new(); dom.len()];
    for (j, x) in dom.iter().enumerate() {
        for (i, y) in cod.iter().enumerate() {
            if x == y {
                let a = seed[k % seed.len()];
                let b = seed[(k + 1) % seed.len()];
                k += 2;
                cols[j].push((i as u32, lin(&[a, b]).add(&RatFunc::from_int(a - b))));
            }
        }
    }
    let _ = t;
    StdMor::new(dom, cod, cols, 0).unwrap()
}

fn arb_frame(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..6, 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn interchange_law(
        a in arb_frame(3), b in arb_frame(3), c in arb_frame(3),
        d in arb_frame(2), e2 in arb_frame(2), f in arb_frame(2),
        seed in prop::collection::vec(-3i64..4, 1..8),
    ) {
        let t = table("A2");
        let fr = |v: &[u32]| v.iter().map(|i| Elem(*i)).collect::<Vec<_>>();
        let f1 = arb_mor(&t, fr(&b), fr(&c), &seed);
        let f2 = arb_mor(&t, fr(&a), fr(&b), &seed[1..].iter().chain(&seed[..1]).copied().collect::<Vec<_>>());
        let g1 = arb_mor(&t, fr(&e2), fr(&f), &seed);
        let g2 = arb_mor(&t, fr(&d), fr(&e2), &seed);
        let lhs = tensor_adjoint(&t, &f1.compose(&f2).unwrap(), &g1.compose(&g2).unwrap()).unwrap();
        let rhs = tensor_adjoint(&t, &f1, &g1).unwrap().compose(&tensor_adjoint(&t, &f2, &g2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_is_functor(
        a in arb_frame(5), b in arb_frame(5), c in arb_frame(5), w in 0u32..6,
        seed in prop::collection::vec(-3i64..4, 1..8),
    ) {
        let t = table("A2");
        let fr = |v: &[u32]| v.iter().map(|i| Elem(*i)).collect::<Vec<_>>();
        let f = arb_mor(&t, fr(&b), fr(&c), &seed);
        let g = arb_mor(&t, fr(&a), fr(&b), &seed);
        let w = Elem(w);
        let lhs = f.compose(&g).unwrap().loc_quotient(&t, w);
        let rhs = f.loc_quotient(&t, w).compose(&g.loc_quotient(&t, w)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_associative(a in arb_frame(2), b in arb_frame(2), c in arb_frame(2), seed in prop::collection::vec(-3i64..4, 1..8)) {
        let t = table("A2");
        let fr = |v: &[u32]| v.iter().map(|i| Elem(*i)).collect::<Vec<_>>();
        let f = arb_mor(&t, fr(&a), fr(&a), &seed);
        let g = arb_mor(&t, fr(&b), fr(&b), &seed);
        let h = arb_mor(&t, fr(&c), fr(&c), &seed);
        let l = tensor_adjoint(&t, &tensor_adjoint(&t, &f, &g).unwrap(), &h).unwrap();
        let r = tensor_adjoint(&t, &f, &tensor_adjoint(&t, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
