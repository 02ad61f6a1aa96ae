//! Bounded languages, the pruned subshift table, factor complexity with a
//! finite-orbit resolver, and desk-scale recurrence measurements.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::ops::Bound;

use crate::error::{Error, Result};
use crate::expand::ExpansionBudget;
use crate::fixpoint::Point;
use crate::par;
use crate::substitution::Substitution;
use crate::word::{positions, Letter, Word};

/// `L(σ) ∩ A^{≤k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub k: usize,
    pub words: BTreeSet<Word>,
    pub saturated: bool,
}

fn zeros(n: usize) -> Word {
    Word::from(vec![Letter::from_index(0); n])
}

impl BoundedLanguage {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn words_of_len(&self, j: usize) -> impl Iterator<Item = &Word> {
        self.words
            .range((Bound::Included(zeros(j)), Bound::Excluded(zeros(j + 1))))
    }

    pub fn count_of_len(&self, j: usize) -> usize {
        self.words_of_len(j).count()
    }
}

/// Least fixed point of `S ↦ S ∪ {factors of σ(u) of length ≤ k : u ∈ S}`
/// started from the single letters.
///
/// Every factor of length `≤ k` of `σ(w)` already lies inside `σ(u)` for some
/// factor `u` of `w` with `|u| ≤ k`, because images are nonempty. So the
/// accumulation reaches every short factor of every `σⁿ(a)`.
pub fn bounded_language(sub: &Substitution, k: usize) -> BoundedLanguage {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut work: Vec<Vec<Letter>> = Vec::new();
    for a in sub.letters() {
        seen.insert(vec![a]);
        work.push(vec![a]);
    }
    while let Some(u) = work.pop() {
        let img = sub.apply(&u);
        // a factor needs u only if it starts in σ(u₀) and ends in σ(u_last);
        // otherwise a shorter factor of u already produced it
        let first = sub.image(u[0]).len();
        let last_from = img.len() - sub.image(u[u.len() - 1]).len();
        for i in 0..first {
            let lo = if u.len() == 1 {
                i + 1
            } else {
                (last_from + 1).max(i + 1)
            };
            for j in lo..=(i + k).min(img.len()) {
                let f = &img[i..j];
                if !seen.contains(f) {
                    seen.insert(f.to_vec());
                    work.push(f.to_vec());
                }
            }
        }
    }
    BoundedLanguage {
        k,
        words: seen.into_iter().map(Word::from).collect(),
        saturated: true,
    }
}

/// Outer approximation of `L(X_σ) ∩ A^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubshiftTable {
    pub k: usize,
    pub horizon: usize,
    pub words: BTreeSet<Word>,
    /// Every word has exactly one right extension inside the table. All points
    /// of `X_σ` are then periodic.
    pub exact_if_periodic: bool,
}

impl SubshiftTable {
    /// Keep the `k`-words that sit in the middle of a horizon word with context
    /// `⌊(horizon − k)/2⌋` on each side, then prune words lacking a left or right
    /// extension until nothing changes.
    pub fn from_language(language: &BoundedLanguage, k: usize) -> SubshiftTable {
        let horizon = language.k;
        assert!(
            k >= 1 && horizon >= k,
            "table length must be within the horizon"
        );
        let ctx = (horizon - k) / 2;
        let mut words: BTreeSet<Word> = language
            .words_of_len(2 * ctx + k)
            .map(|z| Word::from(&z[ctx..ctx + k]))
            .collect();
        loop {
            let prefixes: HashSet<&[Letter]> = words.iter().map(|w| &w[..k - 1]).collect();
            let suffixes: HashSet<&[Letter]> = words.iter().map(|w| &w[1..]).collect();
            let keep: BTreeSet<Word> = words
                .iter()
                .filter(|w| prefixes.contains(&w[1..]) && suffixes.contains(&w[..k - 1]))
                .cloned()
                .collect();
            if keep.len() == words.len() {
                break;
            }
            words = keep;
        }
        let mut ext: HashMap<&[Letter], usize> = HashMap::new();
        for w in &words {
            *ext.entry(&w[..k - 1]).or_default() += 1;
        }
        let exact_if_periodic = !words.is_empty() && ext.values().all(|&c| c == 1);
        SubshiftTable {
            k,
            horizon,
            words,
            exact_if_periodic,
        }
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.contains(&Word::from(w))
    }
}

pub fn subshift_table(sub: &Substitution, k: usize, horizon: usize) -> Result<SubshiftTable> {
    if k == 0 || horizon < k + 2 {
        return Err(Error::PreconditionFailed(format!(
            "subshift table needs k ≥ 1 and horizon ≥ k + 2 (k = {k}, horizon = {horizon})"
        )));
    }
    Ok(SubshiftTable::from_language(
        &bounded_language(sub, horizon),
        k,
    ))
}

/// Default horizon for tables of length `k`.
pub fn default_horizon(k: usize) -> usize {
    (4 * k).max(24)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub horizon: usize,
    /// `counts[k-1]` = number of table words of length `k`.
    pub counts: Vec<usize>,
    pub stabilized_at: Option<usize>,
    /// Primitive periodic words (least rotation) of every periodic point that
    /// can lie in `X_σ`, present only on stabilization.
    pub orbits: Option<Vec<Word>>,
}

/// Least rotation of `w`, by letter index.
pub fn least_rotation(w: &[Letter]) -> Word {
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            Word::from(r)
        })
        .min()
        .unwrap_or_default()
}

/// Whether every factor of length `≤ language.k` of the bi-infinite word `w^∞`
/// belongs to the bounded language.
pub fn periodic_word_in_language(w: &[Letter], language: &BoundedLanguage) -> bool {
    if w.is_empty() {
        return false;
    }
    let h = language.k;
    let reps = h / w.len() + 2;
    let long = w.repeat(reps);
    long.windows(h.min(long.len()))
        .take(w.len())
        .all(|z| language.contains(&Word::from(z)))
}

/// Cycles of the right-extension graph of a table whose words all have a unique
/// right extension. Vertices are the `(k−1)`-prefixes; each cycle spells a
/// primitive periodic word.
fn extension_cycles(table: &SubshiftTable) -> Vec<Word> {
    let k = table.k;
    let next: HashMap<&[Letter], &[Letter]> =
        table.words.iter().map(|w| (&w[..k - 1], &w[1..])).collect();
    debug_assert!(k >= 2);
    let mut done: HashSet<&[Letter]> = HashSet::new();
    let mut cycles = BTreeSet::new();
    for start in next.keys() {
        if done.contains(start) {
            continue;
        }
        let mut path: Vec<&[Letter]> = Vec::new();
        let mut index: HashMap<&[Letter], usize> = HashMap::new();
        let mut v: &[Letter] = start;
        loop {
            if done.contains(v) {
                break;
            }
            if let Some(&i) = index.get(v) {
                let spelled: Word = path[i..].iter().map(|u| u[0]).collect();
                cycles.insert(least_rotation(&spelled));
                break;
            }
            index.insert(v, path.len());
            path.push(v);
            match next.get(v) {
                Some(u) => v = u,
                None => break,
            }
        }
        done.extend(path);
    }
    cycles.into_iter().collect()
}

/// `p̂(1..k_max)` from the subshift tables, plus periodicity resolution.
///
/// Stabilization at `k` means every `k`-word of the `(k+1)`-table has exactly one
/// right extension. Every point of `X_σ` is then a bi-infinite path in a
/// functional graph, hence periodic and spelled by one of its cycles. Cycles
/// whose powers leave `L(σ)` within the horizon are discarded.
pub fn complexity_profile(
    sub: &Substitution,
    k_max: usize,
    horizon: usize,
) -> Result<ComplexityProfile> {
    if k_max < 2 || horizon < k_max + 2 {
        return Err(Error::PreconditionFailed(format!(
            "complexity profile needs k_max ≥ 2 and horizon ≥ k_max + 2 (k_max = {k_max}, horizon = {horizon})"
        )));
    }
    complexity_profile_from(&bounded_language(sub, horizon), k_max)
}

/// As [`complexity_profile`], on a language computed at the horizon.
pub fn complexity_profile_from(
    language: &BoundedLanguage,
    k_max: usize,
) -> Result<ComplexityProfile> {
    let horizon = language.k;
    if k_max < 2 || horizon < k_max + 2 {
        return Err(Error::PreconditionFailed(format!(
            "complexity profile needs k_max ≥ 2 and horizon ≥ k_max + 2 (k_max = {k_max}, horizon = {horizon})"
        )));
    }
    let ks: Vec<usize> = (1..=k_max).collect();
    let tables = par::map(&ks, |&k| SubshiftTable::from_language(language, k));
    let counts = tables.iter().map(|t| t.words.len()).collect();

    let stabilized_at = (1..k_max).find(|&k| tables[k].exact_if_periodic);
    let orbits = stabilized_at.map(|k| {
        let mut cycles = extension_cycles(&tables[k]);
        cycles.retain(|w| periodic_word_in_language(w, language));
        cycles
    });
    Ok(ComplexityProfile {
        horizon,
        counts,
        stabilized_at,
        orbits,
    })
}

/// Least window length `W` such that every length-`W` window of `segment`
/// contains `w`; `None` if `w` never occurs.
pub fn return_bound(segment: &[Letter], w: &[Letter]) -> Option<usize> {
    let pos = positions(segment, w);
    let (&first, &last) = (pos.first()?, pos.last()?);
    let inner = pos
        .windows(2)
        .map(|p| p[1] - p[0] - 1 + w.len())
        .max()
        .unwrap_or(0);
    Some(inner.max(first + w.len()).max(segment.len() - last))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub k: usize,
    pub window: usize,
    pub uniformly_recurrent_observed: bool,
    pub worst_word: Option<Word>,
    /// `None` when the worst word never occurs in the segment.
    pub worst_gap: Option<usize>,
    pub words_checked: usize,
    pub segment_length: usize,
}

/// Check that every table word of length `k` occurs in every `window`-long
/// stretch of `x[−m, m]`.
pub fn uniform_recurrence_check(
    sub: &Substitution,
    point: &Point,
    k: usize,
    window: usize,
    m: usize,
    horizon: usize,
    budget: ExpansionBudget,
) -> Result<RecurrenceReport> {
    if window > 2 * m {
        return Err(Error::PreconditionFailed(format!(
            "window {window} exceeds the scanned segment 2·{m}"
        )));
    }
    let segment = point.window(sub, -(m as i64), m as i64, budget)?;
    let table = subshift_table(sub, k, horizon.max(k + 2))?;
    let bounds: Vec<(Word, Option<usize>)> = table
        .words
        .iter()
        .map(|w| (w.clone(), return_bound(&segment, w)))
        .collect();
    let worst = bounds
        .iter()
        .max_by_key(|(_, b)| b.map_or(usize::MAX, |x| x))
        .cloned();
    let (worst_word, worst_gap) = match worst {
        Some((w, g)) => (Some(w), g),
        None => (None, Some(0)),
    };
    Ok(RecurrenceReport {
        k,
        window,
        uniformly_recurrent_observed: worst_gap.is_some_and(|g| g <= window),
        worst_word,
        worst_gap,
        words_checked: bounds.len(),
        segment_length: segment.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepetitivityEstimate {
    /// `R(k)`, `None` if some table word is missing from the segment.
    pub table: BTreeMap<usize, Option<usize>>,
    pub ratio_max: Option<f64>,
}

pub fn repetitivity_estimate(
    sub: &Substitution,
    point: &Point,
    k_max: usize,
    m: usize,
    horizon: usize,
    budget: ExpansionBudget,
) -> Result<RepetitivityEstimate> {
    let segment = point.window(sub, -(m as i64), m as i64, budget)?;
    let language = bounded_language(sub, horizon.max(k_max + 2));
    let mut table = BTreeMap::new();
    let mut ratio_max: Option<f64> = None;
    for k in 1..=k_max {
        let t = SubshiftTable::from_language(&language, k);
        let r = t
            .words
            .iter()
            .map(|w| return_bound(&segment, w))
            .try_fold(0usize, |acc, b| b.map(|b| acc.max(b)));
        if let Some(r) = r {
            let ratio = r as f64 / k as f64;
            ratio_max = Some(ratio_max.map_or(ratio, |m| m.max(ratio)));
        }
        table.insert(k, r);
    }
    Ok(RepetitivityEstimate { table, ratio_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(t: &str) -> Substitution {
        Substitution::parse(t).unwrap()
    }

    fn rendered<'a>(s: &Substitution, it: impl IntoIterator<Item = &'a Word>) -> Vec<String> {
        it.into_iter().map(|w| s.render(w)).collect()
    }

    #[test]
    fn language_of_single_point() {
        let s = sub("0 -> 01\n1 -> 1");
        let l = bounded_language(&s, 2);
        assert_eq!(rendered(&s, &l.words), vec!["0", "1", "01", "11"]);
    }

    #[test]
    fn language_of_disjoint_blocks() {
        let s = sub("a -> aa\nb -> bb");
        let l = bounded_language(&s, 2);
        assert_eq!(rendered(&s, &l.words), vec!["a", "b", "aa", "bb"]);
    }

    #[test]
    fn language_of_thue_morse() {
        let s = sub("0 -> 01\n1 -> 10");
        let l = bounded_language(&s, 2);
        assert_eq!(
            rendered(&s, &l.words),
            vec!["0", "1", "00", "01", "10", "11"]
        );
    }

    #[test]
    fn tables() {
        let s = sub("0 -> 01\n1 -> 1");
        let t = subshift_table(&s, 1, 8).unwrap();
        assert_eq!(rendered(&s, &t.words), vec!["1"]);

        let s = sub("a -> bb\nb -> aa");
        let t = subshift_table(&s, 3, 12).unwrap();
        assert_eq!(rendered(&s, &t.words), vec!["aaa", "bbb"]);

        let s = sub("0 -> 01\n1 -> 10");
        let t = subshift_table(&s, 2, 10).unwrap();
        assert_eq!(rendered(&s, &t.words), vec!["00", "01", "10", "11"]);
        assert!(subshift_table(&s, 2, 3).is_err());
    }

    #[test]
    fn complexity_examples() {
        let s = sub("0 -> 01\n1 -> 1");
        let p = complexity_profile(&s, 4, 24).unwrap();
        assert_eq!(p.counts, vec![1, 1, 1, 1]);
        assert_eq!(p.stabilized_at, Some(1));
        assert_eq!(rendered(&s, p.orbits.as_ref().unwrap()), vec!["1"]);

        let s = sub("a -> bb\nb -> aa");
        let p = complexity_profile(&s, 4, 24).unwrap();
        assert_eq!(p.counts, vec![2, 2, 2, 2]);
        assert_eq!(p.stabilized_at, Some(1));
        assert_eq!(rendered(&s, p.orbits.as_ref().unwrap()), vec!["a", "b"]);

        let s = sub("0 -> 01\n1 -> 10");
        let p = complexity_profile(&s, 4, 24).unwrap();
        assert_eq!(p.counts, vec![2, 4, 6, 10]);
        assert_eq!(p.stabilized_at, None);
        assert!(p.orbits.is_none());
    }

    #[test]
    fn periodic_three_cycle() {
        let s = sub("a -> aba\nb -> aba");
        let p = complexity_profile(&s, 6, 24).unwrap();
        let orbits = rendered(&s, p.orbits.as_ref().unwrap());
        assert_eq!(orbits, vec!["aab"]);
    }

    #[test]
    fn rotations() {
        let s = sub("a -> ab\nb -> ba\nc -> c");
        assert_eq!(s.render(&least_rotation(&s.word("bab").unwrap())), "abb");
        assert_eq!(s.render(&least_rotation(&s.word("cab").unwrap())), "abc");
    }

    #[test]
    fn return_bounds() {
        let s = sub("a -> ab\nb -> ba");
        let seg = s.word("abbabaab").unwrap();
        assert_eq!(return_bound(&seg, &s.word("a").unwrap()), Some(3));
        assert_eq!(return_bound(&seg, &s.word("bb").unwrap()), Some(7));
        assert_eq!(return_bound(&seg, &s.word("aaa").unwrap()), None);
    }
}
