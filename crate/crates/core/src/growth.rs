//! Growing letters `A_l`, bounded letters `A_s`, and the stabilization constants
//! of the bounded part.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{bfs_order, shortest_cycle, transitive_closure};
use crate::substitution::Substitution;
use crate::word::{Letter, LetterSet, Word};

/// Certificate that a letter grows: `target` is reachable from it and
/// `target ∈ Lett(σⁿ(target))` with `|σⁿ(target)| ≥ 2`, `n = power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthWitness {
    pub target: Letter,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterClassification {
    pub growing: LetterSet,
    pub bounded: LetterSet,
    pub witness: BTreeMap<Letter, GrowthWitness>,
}

impl LetterClassification {
    pub fn is_growing(&self, a: Letter) -> bool {
        self.growing.contains(a)
    }

    /// Position and identity of the first growing letter in `w`.
    pub fn first_growing(&self, w: &[Letter]) -> Option<(usize, Letter)> {
        w.iter()
            .enumerate()
            .find(|(_, a)| self.growing.contains(**a))
            .map(|(i, &a)| (i, a))
    }

    pub fn last_growing(&self, w: &[Letter]) -> Option<(usize, Letter)> {
        w.iter()
            .enumerate()
            .rev()
            .find(|(_, a)| self.growing.contains(**a))
            .map(|(i, &a)| (i, a))
    }
}

/// Partition the alphabet into growing and bounded letters.
///
/// A letter grows iff it reaches (in zero or more steps) a letter `c` lying on a
/// cycle of the letter graph with `|σ(c)| ≥ 2`. This is the same as asking for
/// some reachable `b` and `n ∈ [1, |A|]` with `b ∈ Lett(σⁿ(b))` and `|σⁿ(b)| ≥ 2`:
/// if every letter along a return path `b → … → b` had a one-letter image then
/// `σⁿ(b) = b` exactly, so the extra length has to be emitted on the cycle, and
/// a simple cycle has length at most `|A|`.
pub fn classify_letters(sub: &Substitution) -> Result<LetterClassification> {
    let succ = sub.successors();
    let closure = transitive_closure(&succ);
    let expanding: LetterSet = sub
        .letters()
        .filter(|&c| closure[c.index()].contains(c) && sub.image(c).len() >= 2)
        .collect();

    let mut growing = LetterSet::EMPTY;
    let mut witness = BTreeMap::new();
    for a in sub.letters() {
        if let Some(&target) = bfs_order(&succ, a).iter().find(|c| expanding.contains(**c)) {
            let power = shortest_cycle(&succ, target).expect("expanding letters lie on a cycle");
            growing.insert(a);
            witness.insert(a, GrowthWitness { target, power });
        }
    }
    if growing.is_empty() {
        return Err(Error::NotASubstitution);
    }
    Ok(LetterClassification {
        growing,
        bounded: sub.alphabet().difference(growing),
        witness,
    })
}

/// Stabilization data for the bounded letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableConstants {
    pub n_s: usize,
    pub p_s: usize,
    pub k_s: usize,
    pub stable_word: BTreeMap<Letter, Word>,
    /// Least preperiod and least period of `σⁿ(a)` per bounded letter.
    pub per_letter: BTreeMap<Letter, (usize, usize)>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `(preperiod, period)` of the word sequence `σⁿ(a)`, `n = 0, 1, …`.
/// Only terminates for bounded letters.
fn word_cycle(sub: &Substitution, a: Letter) -> (usize, usize, Vec<Word>) {
    let mut seen: HashMap<Word, usize> = HashMap::new();
    let mut iterates = Vec::new();
    let mut cur = Word::single(a);
    loop {
        if let Some(&i) = seen.get(&cur) {
            return (i, iterates.len() - i, iterates);
        }
        seen.insert(cur.clone(), iterates.len());
        let next = sub.apply(&cur);
        iterates.push(cur);
        cur = next;
    }
}

/// `n_s`, `p_s`, `k_s` and the stable words `w(a) = σ^{n_s}(a)`.
///
/// `n_s` is the least valid preperiod, but at least 1. With no bounded letters the
/// constants degenerate to `n_s = p_s = 1`, `k_s = 0`.
pub fn stable_constants(sub: &Substitution, cls: &LetterClassification) -> StableConstants {
    let mut per_letter = BTreeMap::new();
    let mut n_s = 1;
    let mut p_s = 1;
    let mut iterates = BTreeMap::new();
    for a in cls.bounded.iter() {
        let (pre, per, its) = word_cycle(sub, a);
        n_s = n_s.max(pre);
        p_s = lcm(p_s, per);
        per_letter.insert(a, (pre, per));
        iterates.insert(a, (pre, per, its));
    }
    let stable_word: BTreeMap<Letter, Word> = iterates
        .into_iter()
        .map(|(a, (pre, per, its))| {
            let idx = if n_s < its.len() {
                n_s
            } else {
                pre + (n_s - pre) % per
            };
            (a, its[idx].clone())
        })
        .collect();
    let k_s = stable_word.values().map(|w| w.len()).max().unwrap_or(0);
    StableConstants {
        n_s,
        p_s,
        k_s,
        stable_word,
        per_letter,
    }
}
