#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use submin_core::sample::random_sample;
use submin_core::{Letter, LetterSet, Substitution, Word};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every fixture as `(file name, substitution)`, sorted by name.
pub fn corpus() -> Vec<(String, Substitution)> {
    let mut out: Vec<(String, Substitution)> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sub"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, Substitution::parse(&text).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn fixture(name: &str) -> Substitution {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.sub"))).unwrap();
    Substitution::parse(&text).unwrap()
}

/// The seeded sample shared by the differential tests.
pub fn random_thousand() -> Vec<Substitution> {
    random_sample(42, 1000, 4, 4)
}

pub fn sub(text: &str) -> Substitution {
    Substitution::parse(text).unwrap()
}

/// `σⁿ(w)` by repeated naive application, no caching or budgets.
pub fn naive_power(s: &Substitution, w: &[Letter], n: usize) -> Vec<Letter> {
    let mut cur = w.to_vec();
    for _ in 0..n {
        cur = cur
            .iter()
            .flat_map(|&a| s.image(a).iter().copied())
            .collect();
    }
    cur
}

/// Growth by iterating `σⁿ(a)`: a repeated word means bounded, a word longer
/// than `10·|A|·max|σ(b)|` means growing.
pub fn oracle_growing(s: &Substitution, a: Letter) -> bool {
    let limit = 10 * s.len() * s.max_image_len();
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut cur = vec![a];
    loop {
        if cur.len() > limit {
            return true;
        }
        if !seen.insert(cur.clone()) {
            return false;
        }
        cur = naive_power(s, &cur, 1);
    }
}

/// Streams the letters of `σⁿ(a)` from the left (or from the right when
/// `reversed`) without materializing the word.
pub struct EdgeStream<'s> {
    sub: &'s Substitution,
    stack: Vec<(Letter, usize)>,
    reversed: bool,
}

impl<'s> EdgeStream<'s> {
    pub fn new(sub: &'s Substitution, a: Letter, n: usize, reversed: bool) -> Self {
        EdgeStream {
            sub,
            stack: vec![(a, n)],
            reversed,
        }
    }
}

impl Iterator for EdgeStream<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        while let Some((a, n)) = self.stack.pop() {
            if n == 0 {
                return Some(a);
            }
            let img = self.sub.image(a);
            if self.reversed {
                self.stack.extend(img.iter().map(|&b| (b, n - 1)));
            } else {
                self.stack.extend(img.iter().rev().map(|&b| (b, n - 1)));
            }
        }
        None
    }
}

/// Isolation by scanning: the edge growing letter of some `σⁿ(a)`,
/// `1 ≤ n ≤ 2(|A|+2)`, is `a` itself behind a nonempty bounded pad.
pub fn scanned_isolated(s: &Substitution, growing: LetterSet, a: Letter, reversed: bool) -> bool {
    (1..=2 * (s.len() + 2)).any(|n| {
        EdgeStream::new(s, a, n, reversed)
            .enumerate()
            .find(|(_, b)| growing.contains(*b))
            .is_some_and(|(pad, b)| b == a && pad > 0)
    })
}

/// Every factor of length `1..=k` of `w`.
pub fn factors_upto(w: &[Letter], k: usize, into: &mut BTreeSet<Word>) {
    for i in 0..w.len() {
        for j in i + 1..=(i + k).min(w.len()) {
            into.insert(Word::from(&w[i..j]));
        }
    }
}

/// Is `u` a rotation of `v`?
pub fn same_rotation_class(u: &str, v: &str) -> bool {
    u.len() == v.len() && format!("{v}{v}").contains(u)
}
