use super::*;
use crate::coxeter::{CoxeterSystem, Gcm};
use proptest::prelude::*;

fn table(name: &str) -> Arc<ElementTable> {
    let sys = CoxeterSystem::new(Gcm::preset(name).unwrap());
    Arc::new(ElementTable::new(sys, None, 100_000).unwrap())
}

fn kl(name: &str) -> KlData {
    KlData::new(table(name)).unwrap()
}

#[test]
fn longest_a2_is_sum_over_group() {
    let k = kl("A2");
    let t = k.table();
    let sts = t.from_word(&[0, 1, 0]).unwrap();
    for y in t.elems() {
        let l = 3 - t.length(y) as i32;
        assert_eq!(k.h(y, sts), Laurent::monomial(1, l));
    }
}

#[test]
fn bott_samelson_sts() {
    let k = kl("A2");
    let t = k.table();
    let h = k.bott_samelson(&[0, 1, 0]).unwrap();
    let mut want = HeckeElt::basis(t.from_word(&[0, 1, 0]).unwrap());
    want.add_term(t.from_word(&[0]).unwrap(), &Laurent::one());
    assert_eq!(h, want);
}

fn check_characterisation(k: &KlData) {
    let t = k.table();
    for w in t.elems() {
        let b = k.canonical(w);
        assert_eq!(&bar(t, b).unwrap(), b);
        assert_eq!(b.coeff(w), Laurent::one());
        for (y, c) in b.terms() {
            assert!(t.leq(y, w));
            if y != w {
                assert!(c.min_degree().unwrap() >= 1);
                assert!(c.has_nonnegative_coeffs());
                let parity = (t.length(w) - t.length(y)) as i32 % 2;
                assert!(c.terms().all(|(d, _)| d.rem_euclid(2) == parity));
            }
        }
    }
}

#[test]
fn canonical_basis_characterised() {
    for name in ["A2", "A3", "B2", "B3", "G2"] {
        check_characterisation(&kl(name));
    }
}

#[test]
fn a3_singular_elements() {
    let k = kl("A3");
    let t = k.table();
    let bad: Vec<String> = t
        .elems()
        .filter(|w| {
            let h = k.h(Elem::ID, *w);
            h != Laurent::monomial(1, t.length(*w) as i32)
        })
        .map(|w| t.word_string(w))
        .collect();
    assert_eq!(bad.len(), 2);
    let x = t.from_word(&[1, 0, 2, 1]).unwrap();
    assert_eq!(k.h(Elem::ID, x), Laurent::from_terms([(4, 1), (2, 1)]));
    let y = t.from_word(&[0, 1, 2, 1, 0]).unwrap();
    assert_eq!(k.h(Elem::ID, y), Laurent::from_terms([(5, 1), (3, 1)]));
}

#[test]
fn to_from_canonical_roundtrip() {
    let k = kl("B3");
    let t = k.table();
    for w in t.elems() {
        let h = k.canonical(w);
        assert_eq!(k.to_canonical(h), HeckeElt::basis(w));
        let s = HeckeElt::basis(w);
        assert_eq!(k.from_canonical(&k.to_canonical(&s)), s);
    }
}

#[test]
fn mu_formula_matches_standard_route() {
    for name in ["A3", "B3", "G2"] {
        let k = kl(name);
        let t = k.table();
        for w in t.elems() {
            for s in 0..t.rank() {
                let h = HeckeElt::basis(w);
                let fast = k.canonical_mult_bs(&h, s).unwrap();
                let std = k.from_canonical(&h);
                let mut slow = mult_delta_s(t, &std, s).unwrap();
                slow.add_assign(&std.scale(&Laurent::v()));
                assert_eq!(fast, k.to_canonical(&slow), "{} {}", t.word_string(w), s);
                let left = k.canonical_left_mult_bs(s, &h).unwrap();
                let mut bs = HeckeElt::basis(t.from_word(&[s as u8]).unwrap());
                bs.add_term(Elem::ID, &Laurent::v());
                let slow = mult(t, &bs, &std).unwrap();
                assert_eq!(left, k.to_canonical(&slow));
            }
        }
    }
}

#[test]
fn structure_constants_positive() {
    let k = kl("A3");
    let t = k.table();
    for x in t.elems().step_by(5) {
        for y in t.elems().step_by(3) {
            let p = mult(t, k.canonical(x), k.canonical(y)).unwrap();
            for (_, c) in k.to_canonical(&p).terms() {
                assert!(c.has_nonnegative_coeffs());
            }
        }
    }
}

#[test]
fn project_kills_parabolic_generator() {
    let t = table("A2");
    let a = Antispherical::new(t.clone(), Parabolic::new(2, &[1]).unwrap()).unwrap();
    let mut bt = HeckeElt::basis(t.from_word(&[1]).unwrap());
    bt.add_term(Elem::ID, &Laurent::v());
    assert!(a.project(&bt).is_zero());
    assert_eq!(a.reps().len(), 3);
}

#[test]
fn antispherical_canonical_is_projection() {
    for (name, gens) in [("A3", vec![0]), ("A3", vec![0, 2]), ("B3", vec![1, 2]), ("G2", vec![1])] {
        let t = table(name);
        let k = KlData::new(t.clone()).unwrap();
        let a = Antispherical::new(t.clone(), Parabolic::new(t.rank(), &gens).unwrap()).unwrap();
        for x in t.elems() {
            let p = a.project(k.canonical(x));
            if a.is_rep(x) {
                assert_eq!(&p, a.canonical(x).unwrap());
                assert_eq!(&a.bar(&p).unwrap(), &p);
            } else {
                assert!(p.is_zero());
            }
        }
        for x in a.reps() {
            for s in 0..t.rank() {
                let h = HeckeElt::basis(*x);
                let got = a.canonical_mult_bs(&h, s).unwrap();
                let mut bs = HeckeElt::basis(t.from_word(&[s as u8]).unwrap());
                bs.add_term(Elem::ID, &Laurent::v());
                let want = a.to_canonical(&a.project(&mult(&t, k.canonical(*x), &bs).unwrap()));
                assert_eq!(got, want);
            }
        }
    }
}

fn arb_elt(n: usize) -> impl Strategy<Value = Vec<(u32, i32, i64)>> {
    prop::collection::vec((0..n as u32, -3i32..4, -3i64..4), 0..5)
}

fn build(v: &[(u32, i32, i64)]) -> HeckeElt {
    let mut h = HeckeElt::zero();
    for &(x, d, c) in v {
        h.add_term(Elem(x), &Laurent::monomial(c, d));
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn bar_is_involutive_ring_map(a in arb_elt(24), b in arb_elt(24)) {
        let t = table("A3");
        let (a, b) = (build(&a), build(&b));
        prop_assert_eq!(bar(&t, &bar(&t, &a).unwrap()).unwrap(), a.clone());
        let ab = mult(&t, &a, &b).unwrap();
        prop_assert_eq!(bar(&t, &ab).unwrap(), mult(&t, &bar(&t, &a).unwrap(), &bar(&t, &b).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_associative(a in arb_elt(12), b in arb_elt(12), c in arb_elt(12)) {
        let t = table("G2");
        let (a, b, c) = (build(&a), build(&b), build(&c));
        let l = mult(&t, &mult(&t, &a, &b).unwrap(), &c).unwrap();
        let r = mult(&t, &a, &mult(&t, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
