use super::*;
use std::collections::HashSet;

fn sys(name: &str) -> Arc<CoxeterSystem> {
    CoxeterSystem::new(Gcm::preset(name).unwrap())
}

fn w(s: &CoxeterSystem, word: &[u8]) -> CoxElt {
    s.from_word(word).unwrap()
}

#[test]
fn a2_lengths_and_descents() {
    let a2 = sys("A2");
    let sts = w(&a2, &[0, 1, 0]);
    assert_eq!(a2.length(&sts).unwrap(), 3);
    assert_eq!(a2.right_descents(&sts).unwrap(), vec![0, 1]);
    let id = a2.identity();
    assert_eq!(a2.length(&id).unwrap(), 0);
    assert!(a2.right_descents(&id).unwrap().is_empty());
    assert!(a2.multiply(&sts, &sts).unwrap().is_identity());
    assert_eq!(w(&a2, &[1, 0, 1]), sts);
}

#[test]
fn mixed_systems_rejected() {
    let a = sys("A2");
    let b = sys("A2");
    assert_eq!(
        a.multiply(&a.gen(0).unwrap(), &b.gen(0).unwrap()),
        Err(CoxeterError::MixedSystems)
    );
}

#[test]
fn generators_are_reflections() {
    for name in ["A3", "B3", "C3", "G2", "A~2"] {
        let s = sys(name);
        let n = s.rank();
        for g in 0..n {
            let x = s.gen(g).unwrap();
            assert!(s.multiply(&x, &x).unwrap().is_identity());
            let r = s.act_on_root(&x, &Root::simple(n, g)).unwrap();
            assert_eq!(r, Root::simple(n, g).neg());
            for t in 0..n {
                let e = Root::simple(n, t);
                assert_eq!(s.pairing(g, &e.coords), s.gcm().entry(g, t));
            }
        }
    }
}

#[test]
fn enumeration_counts_and_order() {
    let a2 = sys("A2");
    let all = a2.enumerate(None, None, 1000).unwrap();
    let lens: Vec<usize> = all.iter().map(|x| x.len()).collect();
    assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
    assert_eq!(all[5].word(), &[0, 1, 0]);
    for (name, size) in [("A3", 24), ("B3", 48), ("C3", 48), ("G2", 12), ("B2", 8)] {
        assert_eq!(sys(name).enumerate(None, None, 10_000).unwrap().len(), size, "{name}");
    }
    assert_eq!(a2.enumerate(Some(0), None, 10).unwrap().len(), 1);
    assert_eq!(sys("A~2").enumerate(None, None, 100), Err(CoxeterError::Overflow(100)));
    assert!(sys("A3").enumerate(None, None, 5).is_err());
}

#[test]
fn minimal_coset_representatives() {
    let a2 = sys("A2");
    let par = Parabolic::new(2, &[1]).unwrap();
    let reps = a2.enumerate(None, Some(&par), 100).unwrap();
    let words: Vec<Vec<u8>> = reps.iter().map(|x| x.word().to_vec()).collect();
    assert_eq!(words, vec![vec![], vec![0], vec![0, 1]]);
}

#[test]
fn parabolic_step_examples() {
    let a2 = sys("A2");
    let par = Parabolic::new(2, &[1]).unwrap();
    let s = w(&a2, &[0]);
    assert_eq!(
        a2.parabolic_step(&s, 1, &par).unwrap(),
        ParabolicStep::Ascend(w(&a2, &[0, 1]))
    );
    assert_eq!(
        a2.parabolic_step(&a2.identity(), 1, &par).unwrap(),
        ParabolicStep::Exit(1)
    );
    assert_eq!(
        a2.parabolic_step(&w(&a2, &[0, 1]), 1, &par).unwrap(),
        ParabolicStep::Descend(s)
    );
    assert_eq!(
        a2.parabolic_step(&w(&a2, &[1]), 0, &par),
        Err(CoxeterError::NotMinimalRep)
    );
}

#[test]
fn parabolic_step_agrees_with_brute_force() {
    for (name, gens) in [("A3", vec![0]), ("B3", vec![1, 2]), ("G2", vec![1]), ("A~2", vec![1, 2])] {
        let s = sys(name);
        let par = Parabolic::new(s.rank(), &gens).unwrap();
        let reps = s.enumerate(Some(6), Some(&par), 10_000).unwrap();
        let rep_set: HashSet<CoxElt> = reps.iter().cloned().collect();
        for x in &reps {
            for g in 0..s.rank() {
                let xs = s.multiply(x, &s.gen(g).unwrap()).unwrap();
                let got = s.parabolic_step(x, g, &par).unwrap();
                let minimal = s.is_minimal(&xs, &par).unwrap();
                match got {
                    ParabolicStep::Exit(t) => {
                        assert!(!minimal);
                        let tx = s.multiply(&s.gen(t).unwrap(), x).unwrap();
                        assert_eq!(tx, xs);
                        assert!(par.contains(t));
                    }
                    ParabolicStep::Ascend(y) => {
                        assert!(minimal && y.len() == x.len() + 1 && y == xs);
                    }
                    ParabolicStep::Descend(y) => {
                        assert!(minimal && y.len() + 1 == x.len() && y == xs);
                        assert!(rep_set.contains(&y));
                    }
                }
            }
        }
    }
}

#[test]
fn length_sign_matches_root_sign() {
    for name in ["A3", "B3", "G2", "A~2"] {
        let s = sys(name);
        for x in s.enumerate(Some(6), None, 10_000).unwrap() {
            for g in 0..s.rank() {
                let xs = s.multiply(&x, &s.gen(g).unwrap()).unwrap();
                let r = s.act_on_root(&x, &Root::simple(s.rank(), g)).unwrap();
                assert!(r.is_sign_coherent());
                if r.is_positive() {
                    assert_eq!(xs.len(), x.len() + 1);
                } else {
                    assert_eq!(xs.len() + 1, x.len());
                }
            }
        }
    }
}

#[test]
fn parabolic_factorisation_is_bijective() {
    let s = sys("A3");
    let par = Parabolic::new(3, &[0, 2]).unwrap();
    let all = s.enumerate(None, None, 1000).unwrap();
    let reps = s.enumerate(None, Some(&par), 1000).unwrap();
    let wi: Vec<CoxElt> = all
        .iter()
        .filter(|x| x.word().iter().all(|g| par.contains(*g as usize)))
        .cloned()
        .collect();
    let mut seen = HashSet::new();
    for u in &wi {
        for v in &reps {
            let uv = s.multiply(u, v).unwrap();
            assert_eq!(uv.len(), u.len() + v.len());
            assert!(seen.insert(uv));
        }
    }
    assert_eq!(seen.len(), all.len());
}

#[test]
fn chosen_rex_reproduces_matrix_and_is_lex_least() {
    for name in ["A3", "B3", "G2"] {
        let s = sys(name);
        let all = s.enumerate(None, None, 1000).unwrap();
        for x in &all {
            assert_eq!(&w(&s, &s.chosen_rex(x)), x);
        }
        // lex-least among all reduced words, by brute force over words of that length
        let n = s.rank() as u8;
        for x in all.iter().filter(|x| x.len() <= 4) {
            let l = x.len();
            let mut best: Option<Vec<u8>> = None;
            let total = (n as usize).pow(l as u32);
            for code in 0..total {
                let mut c = code;
                let mut word = vec![0u8; l];
                for i in (0..l).rev() {
                    word[i] = (c % n as usize) as u8;
                    c /= n as usize;
                }
                if &w(&s, &word) == x && best.as_ref().is_none_or(|b| &word < b) {
                    best = Some(word);
                }
            }
            assert_eq!(best.unwrap(), x.word());
        }
    }
    let a2 = sys("A2");
    let all = a2.enumerate(None, None, 100).unwrap();
    assert_eq!(a2.chosen_rex(&all[5]), vec![0, 1, 0]);
}

/// Bruhat order generated by `x < x t` for reflections `t` with length increase.
fn bruhat_oracle(s: &CoxeterSystem, all: &[CoxElt]) -> HashSet<(usize, usize)> {
    let mut refl = HashSet::new();
    for x in all {
        for g in 0..s.rank() {
            let xi = s.inverse(x).unwrap();
            let t = s.multiply(&s.multiply(x, &s.gen(g).unwrap()).unwrap(), &xi).unwrap();
            refl.insert(t);
        }
    }
    let idx = |y: &CoxElt| all.iter().position(|z| z == y).unwrap();
    let mut rel: HashSet<(usize, usize)> = (0..all.len()).map(|i| (i, i)).collect();
    for (i, x) in all.iter().enumerate() {
        for t in &refl {
            let y = s.multiply(x, t).unwrap();
            if y.len() > x.len() {
                rel.insert((i, idx(&y)));
            }
        }
    }
    loop {
        let mut added = false;
        let cur: Vec<(usize, usize)> = rel.iter().copied().collect();
        for &(a, b) in &cur {
            for &(c, d) in &cur {
                if b == c && rel.insert((a, d)) {
                    added = true;
                }
            }
        }
        if !added {
            return rel;
        }
    }
}

#[test]
fn bruhat_matches_reflection_order() {
    for name in ["A2", "A3", "B2"] {
        let s = sys(name);
        let all = s.enumerate(None, None, 1000).unwrap();
        let rel = bruhat_oracle(&s, &all);
        let table = ElementTable::new(s.clone(), None, 1000).unwrap();
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let expect = rel.contains(&(i, j));
                assert_eq!(s.bruhat_leq(x, y).unwrap(), expect, "{name} {:?} {:?}", x.word(), y.word());
                assert_eq!(table.leq(Elem(i as u32), Elem(j as u32)), expect);
            }
        }
    }
    let a2 = sys("A2");
    let sx = w(&a2, &[0]);
    assert!(a2.bruhat_leq(&sx, &w(&a2, &[1, 0])).unwrap());
    assert!(a2.bruhat_leq(&sx, &w(&a2, &[0, 1])).unwrap());
    assert!(!a2.bruhat_leq(&sx, &w(&a2, &[1])).unwrap());
}

#[test]
fn roots_of_small_types() {
    let a2 = sys("A2");
    let roots = a2.roots_up_to(None, 100).unwrap();
    let pos: Vec<Vec<i64>> = roots.iter().filter(|r| r.is_positive()).map(|r| r.coords.clone()).collect();
    assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    assert_eq!(roots.len(), 6);
    let par = Parabolic::new(2, &[1]).unwrap();
    assert!(!par.in_phi_i(&Root { coords: vec![1, 1] }));
    assert!(par.in_phi_i(&Root { coords: vec![0, -1] }));
    assert!(!Root { coords: vec![-1, 0] }.is_positive());
    for (name, count) in [("B3", 18), ("G2", 12), ("A3", 12)] {
        assert_eq!(sys(name).roots_up_to(None, 1000).unwrap().len(), count);
    }
}

#[test]
fn diagram_automorphisms() {
    let a3 = sys("A3");
    let auts = a3.diagram_automorphisms();
    assert!(auts.contains(&vec![2, 1, 0]));
    assert_eq!(auts.len(), 2);
    let b2 = CoxeterSystem::new(Gcm::new(vec![vec![2, -2], vec![-1, 2]]).unwrap());
    assert_eq!(b2.diagram_automorphisms(), vec![vec![0, 1]]);
    assert_eq!(sys("A~2").diagram_automorphisms().len(), 6);
}

#[test]
fn star_operations() {
    let a2 = sys("A2");
    let s = w(&a2, &[0]);
    let star = a2.star_partner(&s, 0, 1).unwrap().unwrap();
    assert_eq!(star.word(), &[0, 1]);
    assert_eq!(a2.star_partner(&star, 0, 1).unwrap().unwrap(), s);
    assert_eq!(a2.star_partner(&a2.identity(), 0, 1).unwrap(), None);
    assert_eq!(a2.star_partner(&w(&a2, &[0, 1, 0]), 0, 1).unwrap(), None);
    // classical description for m = 3: the unique element of {ws, wt} with one descent
    let a3 = sys("A3");
    for x in a3.enumerate(None, None, 100).unwrap() {
        for (p, q) in [(0usize, 1usize), (1, 2)] {
            let got = a3.star_partner(&x, p, q).unwrap();
            let d = a3.right_descents(&x).unwrap();
            if d.contains(&p) == d.contains(&q) {
                assert!(got.is_none());
                continue;
            }
            let cands: Vec<CoxElt> = [p, q]
                .iter()
                .map(|g| a3.multiply(&x, &a3.gen(*g).unwrap()).unwrap())
                .filter(|y| {
                    let dy = a3.right_descents(y).unwrap();
                    dy.contains(&p) != dy.contains(&q)
                })
                .collect();
            assert_eq!(cands.len(), 1);
            assert_eq!(got.unwrap(), cands[0]);
        }
    }
    // involution for m = 4 and 6
    for name in ["B2", "G2"] {
        let s2 = sys(name);
        for x in s2.enumerate(None, None, 100).unwrap() {
            if let Some(y) = s2.star_partner(&x, 0, 1).unwrap() {
                assert_eq!(s2.star_partner(&y, 0, 1).unwrap().unwrap(), x);
            }
        }
    }
}

#[test]
fn rex_paths_connect_reduced_words() {
    let a3 = sys("A3");
    let path = rex_path(&a3, &[0, 1, 0, 2, 1, 0], &[2, 1, 0, 2, 1, 2]).unwrap();
    assert!(!path.is_empty());
    assert_eq!(path.last().unwrap().1, vec![2, 1, 0, 2, 1, 2]);
    assert_eq!(rex_path(&a3, &[0, 2], &[2, 0]).unwrap().len(), 1);
}

#[test]
fn table_agrees_with_system() {
    let s = sys("B3");
    let t = ElementTable::new(s.clone(), None, 1000).unwrap();
    assert_eq!(t.len(), 48);
    for x in t.elems() {
        let cx = t.elt(x);
        assert_eq!(t.from_word(cx.word()), Some(x));
        let inv = t.inverse(x).unwrap();
        assert_eq!(t.mul(x, inv), Some(Elem::ID));
        assert_eq!(t.right_descents(x), s.right_descents(cx).unwrap());
        assert_eq!(t.left_descents(x), s.left_descents(cx).unwrap());
        for g in 0..3 {
            let beta = Root::simple(3, g);
            assert_eq!(t.act_on_root(x, &beta.coords), s.act_on_root(cx, &beta).unwrap().coords);
        }
    }
    let aff = ElementTable::new(sys("A~2"), Some(4), 10_000).unwrap();
    assert_eq!(aff.len(), 1 + 3 + 6 + 9 + 12);
}
