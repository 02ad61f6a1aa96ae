//! Library results checked against naive reference computations.

mod common;

use std::collections::BTreeSet;

use common::*;
use submin_core::lang::{least_rotation, SubshiftTable};
use submin_core::*;

#[test]
fn growth_agrees_with_iteration() {
    let mut disagreements = Vec::new();
    for s in random_thousand() {
        let oracle: LetterSet = s.letters().filter(|&a| oracle_growing(&s, a)).collect();
        match classify_letters(&s) {
            Ok(cls) if cls.growing == oracle => {}
            Err(Error::NotASubstitution) if oracle.is_empty() => {}
            other => disagreements.push((s.to_string(), format!("{:?}", other.map(|c| c.growing)))),
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn isolation_agrees_with_scanning() {
    let mut checked = 0;
    for s in random_thousand() {
        let Ok(cls) = classify_letters(&s) else {
            continue;
        };
        for a in cls.growing.iter() {
            let st = isolation(&s, &cls, a);
            assert_eq!(
                st.left_isolated,
                scanned_isolated(&s, cls.growing, a, false),
                "{s} left {}",
                s.symbol(a)
            );
            assert_eq!(
                st.right_isolated,
                scanned_isolated(&s, cls.growing, a, true),
                "{s} right {}",
                s.symbol(a)
            );
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn isolation_witness_is_literal() {
    for s in random_thousand() {
        let Ok(cls) = classify_letters(&s) else {
            continue;
        };
        for a in cls.growing.iter() {
            let st = isolation(&s, &cls, a);
            let (Some(side), Some(n), Some(pad)) = (st.witness_side, st.witness_n, st.witness_pad)
            else {
                continue;
            };
            let w = naive_power(&s, &[a], n);
            let (edge, rest): (Vec<Letter>, &[Letter]) = match side {
                Side::Left => (w[pad.len()..].to_vec(), &w[..pad.len()]),
                Side::Right => (
                    w[..w.len() - pad.len()].iter().rev().copied().collect(),
                    &w[w.len() - pad.len()..],
                ),
            };
            assert!(!pad.is_empty());
            assert_eq!(rest, &pad[..], "{s}");
            assert!(rest.iter().all(|&b| !cls.is_growing(b)));
            assert_eq!(edge[0], a, "{s}");
        }
    }
}

/// Largest bounded pad next to the edge growing letter of `σⁿ(a)`, `n ≤ 16`.
fn oracle_e_s(s: &Substitution, growing: LetterSet) -> usize {
    let mut best = 0;
    for a in growing.iter() {
        for n in 1..=16 {
            for reversed in [false, true] {
                let pad = EdgeStream::new(s, a, n, reversed)
                    .take_while(|&b| !growing.contains(b))
                    .count();
                best = best.max(pad);
            }
        }
    }
    best
}

#[test]
fn e_s_agrees_with_scanning_on_tame_inputs() {
    let mut tame_seen = 0;
    for s in random_thousand()
        .into_iter()
        .chain(corpus().into_iter().map(|(_, s)| s))
    {
        let Ok(cls) = classify_letters(&s) else {
            continue;
        };
        let consts = stable_constants(&s, &cls);
        let t = tameness(&s, &cls, &consts).unwrap();
        if t.tame {
            assert_eq!(t.e_s, Some(oracle_e_s(&s, cls.growing)), "{s}");
            tame_seen += 1;
        }
    }
    assert!(tame_seen > 100);
}

#[test]
fn stable_words_agree_with_iteration() {
    for s in random_thousand() {
        let Ok(cls) = classify_letters(&s) else {
            continue;
        };
        let c = stable_constants(&s, &cls);
        for a in cls.bounded.iter() {
            let w = c.stable_word[&a].clone();
            assert_eq!(Word::from(naive_power(&s, &[a], c.n_s)), w, "{s}");
            assert_eq!(Word::from(naive_power(&s, &w, c.p_s)), w, "{s}");
            assert!(w.len() <= c.k_s);
        }
    }
}

#[test]
fn bounded_language_agrees_with_expanded_factors() {
    let k = 4;
    for s in random_thousand().into_iter().take(400) {
        let lang = bounded_language(&s, k);
        let mut brute = BTreeSet::new();
        for a in s.letters() {
            let mut w = vec![a];
            for _ in 0..40 {
                factors_upto(&w, k, &mut brute);
                if w.len() > 4000 {
                    break;
                }
                w = naive_power(&s, &w, 1);
            }
        }
        assert_eq!(lang.words, brute, "{s}");
    }
}

#[test]
fn worked_expansions() {
    let tm = fixture("thue_morse");
    let chacon = fixture("chacon");
    let b = ExpansionBudget::default();
    let zero = tm.letter('0').unwrap();
    assert_eq!(tm.render(&expand(&tm, zero, 2, b).unwrap()), "0110");
    assert_eq!(
        chacon.render(&expand(&chacon, zero, 2, b).unwrap()),
        "0010001010010"
    );
    let by_hand = |s: &Substitution, t: &str| -> String {
        t.chars()
            .map(|c| s.render(s.image(s.letter(c).unwrap())))
            .collect()
    };
    assert_eq!(by_hand(&tm, "01"), "0110");
    assert_eq!(by_hand(&chacon, "0010"), "0010001010010");
}

#[test]
fn thue_morse_complexity_against_long_prefix() {
    let tm = fixture("thue_morse");
    let zero = tm.letter('0').unwrap();
    let prefix = naive_power(&tm, &[zero], 14);
    let mut brute = BTreeSet::new();
    factors_upto(&prefix, 4, &mut brute);
    let counts: Vec<usize> = (1..=4)
        .map(|k| brute.iter().filter(|w| w.len() == k).count())
        .collect();
    assert_eq!(counts, vec![2, 4, 6, 10]);
    let p = complexity_profile(&tm, 4, 24).unwrap();
    assert_eq!(p.counts, counts);
    assert_eq!(p.stabilized_at, None);
}

#[test]
fn thue_morse_return_bound_against_scan() {
    let tm = fixture("thue_morse");
    let zero = tm.letter('0').unwrap();
    let one = tm.letter('1').unwrap();
    let seg = naive_power(&tm, &[zero], 13);
    let brute = (1..=seg.len())
        .find(|&w| {
            seg.windows(w)
                .all(|win| win.contains(&zero) && win.contains(&one))
        })
        .unwrap();
    assert_eq!(brute, 3);
    assert_eq!(lang::return_bound(&seg, &[zero]), Some(3));
}

#[test]
fn periodic_tables_match_orbit_factors() {
    // X = {a^∞, b^∞}
    let s = fixture("swap");
    let t = subshift_table(&s, 3, 12).unwrap();
    let got: Vec<String> = t.words.iter().map(|w| s.render(w)).collect();
    assert_eq!(got, ["aaa", "bbb"]);
    let p = complexity_profile(&s, 4, 24).unwrap();
    let orbits: Vec<String> = p.orbits.unwrap().iter().map(|w| s.render(w)).collect();
    assert_eq!(orbits, ["a", "b"]);
}

#[test]
fn subshift_table_of_single_orbit_is_its_factors() {
    for u in ["ab", "aba", "abc", "aab"] {
        let s = build_periodic_substitution(u).unwrap();
        let w = s.word(u).unwrap();
        let periodic: Vec<Letter> = w.iter().copied().cycle().take(40).collect();
        for k in 1..=5 {
            let mut brute = BTreeSet::new();
            factors_upto(&periodic, k, &mut brute);
            brute.retain(|f| f.len() == k);
            let t = SubshiftTable::from_language(&bounded_language(&s, 24), k);
            assert_eq!(t.words, brute, "{u} k={k}");
        }
        let p = complexity_profile(&s, 6, 24).unwrap();
        let orbits = p.orbits.unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0], least_rotation(&w));
    }
}
