//! The reachability relation `a → b`, minimal growing letters, the set map `s`
//! on subsets of `A_l`, and a bounded check of the bi-extendability conditions.

use std::collections::HashMap;

use crate::error::Result;
use crate::expand::{Expander, ExpansionBudget};
use crate::graph::transitive_closure;
use crate::growth::LetterClassification;
use crate::lang;
use crate::substitution::Substitution;
use crate::word::{positions, Letter, LetterSet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachReport {
    /// `arrow[a]` = every `b` with `a → b` (paths of length ≥ 1).
    pub arrow: Vec<LetterSet>,
    pub circ: LetterSet,
    pub circ_l: LetterSet,
    pub min_l: LetterSet,
    /// Mutual-reachability classes of `A_min,l`, ordered by smallest member.
    pub classes: Vec<LetterSet>,
    pub r: usize,
}

impl ReachReport {
    pub fn arrow(&self, a: Letter, b: Letter) -> bool {
        self.arrow[a.index()].contains(b)
    }

    /// `a > b`: `b` is a descendant of `a`.
    pub fn is_descendant(&self, a: Letter, b: Letter) -> bool {
        self.arrow(a, b) && !self.arrow(b, a)
    }

    /// Letters reachable from `a` in zero or more steps.
    pub fn reach_closed(&self, a: Letter) -> LetterSet {
        self.arrow[a.index()].union(LetterSet::singleton(a))
    }
}

pub fn reachability(sub: &Substitution, cls: &LetterClassification) -> ReachReport {
    let arrow = transitive_closure(&sub.successors());
    let circ: LetterSet = sub
        .letters()
        .filter(|a| arrow[a.index()].contains(*a))
        .collect();
    let circ_l = circ.intersection(cls.growing);
    let min_l: LetterSet = cls
        .growing
        .iter()
        .filter(|&a| {
            arrow[a.index()]
                .intersection(cls.growing)
                .iter()
                .all(|b| arrow[b.index()].contains(a))
        })
        .collect();
    let mut classes = Vec::new();
    let mut left = min_l;
    while let Some(a) = left.first() {
        let class = arrow[a.index()]
            .intersection(min_l)
            .union(LetterSet::singleton(a));
        left = left.difference(class);
        classes.push(class);
    }
    let r = classes.len();
    ReachReport {
        arrow,
        circ,
        circ_l,
        min_l,
        classes,
        r,
    }
}

/// `s(F) = ⋃_{a∈F} Lett(σ(a)) ∩ A_l`.
pub fn set_map(sub: &Substitution, cls: &LetterClassification, f: LetterSet) -> LetterSet {
    sub.image_letters(f).intersection(cls.growing)
}

/// Eventually periodic orbit of a set of growing letters under `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetTrajectory {
    pub start: LetterSet,
    pub preperiod: usize,
    pub cycle: Vec<LetterSet>,
    pub period: usize,
    /// `s⁰(start), …, s^{preperiod-1}(start)`.
    pub prefix: Vec<LetterSet>,
}

impl SetTrajectory {
    /// `sⁿ(start)`.
    pub fn at(&self, n: usize) -> LetterSet {
        if n < self.preperiod {
            self.prefix[n]
        } else {
            self.cycle[(n - self.preperiod) % self.period]
        }
    }
}

pub fn set_trajectory(
    sub: &Substitution,
    cls: &LetterClassification,
    start: LetterSet,
) -> SetTrajectory {
    let mut seen: HashMap<LetterSet, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut cur = start;
    loop {
        if let Some(&i) = seen.get(&cur) {
            let cycle = states.split_off(i);
            return SetTrajectory {
                start,
                preperiod: i,
                period: cycle.len(),
                cycle,
                prefix: states,
            };
        }
        seen.insert(cur, states.len());
        states.push(cur);
        cur = set_map(sub, cls, cur);
    }
}

/// A condition with the letter that witnesses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witnessed {
    pub holds: bool,
    pub witness: Option<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLReport {
    pub cond1: Witnessed,
    pub cond2: Witnessed,
    pub k: usize,
    pub horizon: usize,
    /// Whether the pruned table agrees with `L(σ)` on all lengths `≤ k`.
    pub cond3_bounded: bool,
    pub cond3_counterexample: Option<Word>,
    /// Longest `w` seen with `e w e ≺ σⁿ(e)`, `e ∉ Lett(w)`, over the scanned `n`.
    pub ewe_gap_max: Option<usize>,
    pub n_scanned: usize,
}

pub fn damanik_lenz_check(
    sub: &Substitution,
    cls: &LetterClassification,
    k: usize,
    n_max: usize,
    horizon: usize,
    budget: ExpansionBudget,
) -> Result<DLReport> {
    let reach = reachability(sub, cls);
    let e1 = cls.growing.first();
    let cond1 = Witnessed {
        holds: e1.is_some(),
        witness: e1,
    };
    let e2 = cls
        .growing
        .iter()
        .find(|&e| reach.reach_closed(e) == sub.alphabet());
    let cond2 = Witnessed {
        holds: e2.is_some(),
        witness: e2,
    };

    let horizon = horizon.max(k + 2);
    let language = lang::bounded_language(sub, horizon);
    let mut counterexample = None;
    for j in 1..=k {
        let table = lang::SubshiftTable::from_language(&language, j);
        if let Some(w) = language.words_of_len(j).find(|w| !table.words.contains(*w)) {
            counterexample = Some(w.clone());
            break;
        }
    }

    let mut ewe_gap_max = None;
    let mut n_scanned = 0;
    if let Some(e) = e2.or(e1) {
        let mut ex = Expander::new(sub, budget);
        for n in 1..=n_max {
            let Ok(w) = ex.expand(e, n) else { break };
            n_scanned = n;
            let pos = positions(&w, &[e]);
            let gap = pos.windows(2).map(|p| p[1] - p[0] - 1).max();
            if let Some(g) = gap {
                ewe_gap_max = Some(ewe_gap_max.map_or(g, |m: usize| m.max(g)));
            }
        }
    }

    Ok(DLReport {
        cond1,
        cond2,
        k,
        horizon,
        cond3_bounded: counterexample.is_none(),
        cond3_counterexample: counterexample,
        ewe_gap_max,
        n_scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::classify_letters;

    fn setup(t: &str) -> (Substitution, LetterClassification) {
        let s = Substitution::parse(t).unwrap();
        let c = classify_letters(&s).unwrap();
        (s, c)
    }

    fn set(s: &Substitution, letters: &str) -> LetterSet {
        letters.chars().map(|c| s.letter(c).unwrap()).collect()
    }

    #[test]
    fn two_independent_blocks() {
        let (s, c) = setup("a -> aa\nb -> bb");
        let r = reachability(&s, &c);
        assert_eq!(r.min_l, set(&s, "ab"));
        assert_eq!(r.classes, vec![set(&s, "a"), set(&s, "b")]);
        assert_eq!(r.r, 2);
    }

    #[test]
    fn thue_morse_single_class() {
        let (s, c) = setup("0 -> 01\n1 -> 10");
        let r = reachability(&s, &c);
        assert_eq!(r.min_l, set(&s, "01"));
        assert_eq!(r.classes, vec![set(&s, "01")]);
        assert_eq!(r.r, 1);
    }

    #[test]
    fn single_point_min_l() {
        let (s, c) = setup("0 -> 01\n1 -> 1");
        let r = reachability(&s, &c);
        assert_eq!(r.min_l, set(&s, "0"));
        assert_eq!(r.r, 1);
        assert!(r.circ.contains(s.letter('1').unwrap()));
        assert_eq!(r.circ_l, set(&s, "0"));
    }

    #[test]
    fn descendants() {
        let (s, c) = setup("a -> aa\nd -> da");
        let r = reachability(&s, &c);
        let (a, d) = (s.letter('a').unwrap(), s.letter('d').unwrap());
        assert!(r.is_descendant(d, a));
        assert!(!r.is_descendant(a, d));
        assert!(!r.is_descendant(a, a));
        assert_eq!(r.min_l, set(&s, "a"));
    }

    #[test]
    fn trajectories() {
        let (s, c) = setup("a -> bb\nb -> aa");
        let t = set_trajectory(&s, &c, set(&s, "a"));
        assert_eq!((t.preperiod, t.period), (0, 2));
        assert_eq!(t.cycle, vec![set(&s, "a"), set(&s, "b")]);

        let (s, c) = setup("0 -> 01\n1 -> 10");
        let t = set_trajectory(&s, &c, set(&s, "0"));
        assert_eq!((t.preperiod, t.period), (1, 1));
        assert_eq!(t.cycle, vec![set(&s, "01")]);

        let (s, c) = setup("0 -> 0010\n1 -> 1");
        let t = set_trajectory(&s, &c, set(&s, "0"));
        assert_eq!((t.preperiod, t.period), (0, 1));
        assert_eq!(t.cycle, vec![set(&s, "0")]);
    }

    #[test]
    fn dl_single_point() {
        let (s, c) = setup("0 -> 01\n1 -> 1");
        let r = damanik_lenz_check(&s, &c, 1, 6, 24, ExpansionBudget::default()).unwrap();
        assert!(r.cond1.holds);
        assert_eq!(r.cond1.witness, s.letter('0'));
        assert!(r.cond2.holds);
        assert!(!r.cond3_bounded);
        assert_eq!(s.render(r.cond3_counterexample.as_ref().unwrap()), "0");
    }

    #[test]
    fn dl_thue_morse() {
        let (s, c) = setup("0 -> 01\n1 -> 10");
        let r = damanik_lenz_check(&s, &c, 3, 6, 24, ExpansionBudget::default()).unwrap();
        assert!(r.cond1.holds && r.cond2.holds && r.cond3_bounded);
        // TM has no three consecutive equal letters, so e w e gaps are at most 2
        assert_eq!(r.ewe_gap_max, Some(2));
    }

    #[test]
    fn dl_disconnected() {
        let (s, c) = setup("a -> aa\nb -> bb");
        let r = damanik_lenz_check(&s, &c, 2, 4, 24, ExpansionBudget::default()).unwrap();
        assert!(r.cond1.holds);
        assert!(!r.cond2.holds);
    }
}
