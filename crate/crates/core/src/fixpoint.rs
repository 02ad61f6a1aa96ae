//! σ-periodic two-sided points, their windows, the periodic word forced by an
//! isolated letter, interior occurrences and the bounded-gap constant `d′`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::expand::{Expander, ExpansionBudget};
use crate::growth::{lcm, LetterClassification, StableConstants};
use crate::lprim::LPrimitivityReport;
use crate::reach::{set_trajectory, ReachReport};
use crate::substitution::Substitution;
use crate::tame::{edge_trajectory, gap, isolation, TamenessReport};
use crate::word::{Letter, LetterSet, Word};

/// `b₀ . w₀ c₀` with `σ^p(b₀) = U b₀`, `σ^p(w₀) = w₀`, `σ^p(c₀) = c₀ V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixpointSeed {
    pub left_letter: Letter,
    pub middle: Word,
    pub right_letter: Letter,
    pub p: usize,
}

/// A point of the subshift that can be windowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    /// `x₀ = lim σ^{kp}(b₀ . w₀ c₀)`.
    Fixed(FixpointSeed),
    /// `w^∞` with `w` at index 0.
    Periodic(Word),
}

impl Point {
    /// `x[s, t]`.
    pub fn window(
        &self,
        sub: &Substitution,
        s: i64,
        t: i64,
        budget: ExpansionBudget,
    ) -> Result<Word> {
        match self {
            Point::Fixed(seed) => window(sub, seed, s, t, budget),
            Point::Periodic(w) => {
                if s > t || w.is_empty() {
                    return Ok(Word::new());
                }
                let n = w.len() as i64;
                Ok((s..=t).map(|i| w[i.rem_euclid(n) as usize]).collect())
            }
        }
    }
}

fn edge_letter(
    sub: &Substitution,
    cls: &LetterClassification,
    b: Letter,
    last: bool,
) -> (Letter, Word) {
    let img = sub.image(b);
    if last {
        let (i, c) = cls
            .last_growing(img)
            .expect("growing letters have growing images");
        (c, Word::from(&img[i + 1..]))
    } else {
        let (i, c) = cls
            .first_growing(img)
            .expect("growing letters have growing images");
        (c, Word::from(&img[..i]))
    }
}

/// Leftmost pair of adjacent growing letters `b w c` in `v`.
fn adjacent_pair(cls: &LetterClassification, v: &[Letter]) -> Option<(Letter, Word, Letter)> {
    let idx: Vec<usize> = (0..v.len()).filter(|&i| cls.is_growing(v[i])).collect();
    idx.windows(2)
        .next()
        .map(|p| (v[p[0]], Word::from(&v[p[0] + 1..p[1]]), v[p[1]]))
}

/// Seed of a σ-periodic point, following the junction of two adjacent growing
/// letters under σ until the (last letter, junction word, first letter) state
/// repeats.
pub fn find_seed(
    sub: &Substitution,
    cls: &LetterClassification,
    reach: &ReachReport,
    tame: &TamenessReport,
    budget: ExpansionBudget,
) -> Result<FixpointSeed> {
    if !tame.tame {
        return Err(Error::NotTame);
    }
    let a = reach
        .min_l
        .first()
        .or_else(|| cls.growing.first())
        .ok_or(Error::NotASubstitution)?;
    let traj = set_trajectory(sub, cls, LetterSet::singleton(a));
    let mut ex = Expander::new(sub, budget);
    let mut found = None;
    for i in 0.. {
        let n = traj.preperiod + i * traj.period;
        let v = ex.expand(a, n)?;
        if let Some(pair) = adjacent_pair(cls, &v) {
            found = Some(pair);
            break;
        }
    }
    let (b, w, c) = found.expect("loop exits with a pair or an error");

    let limit = 4 * (sub.len() + 1) * sub.max_image_len().pow(2) * (w.len() + 1) * 64;
    let mut seen: HashMap<(Letter, Word, Letter), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut state = (b, w, c);
    loop {
        if let Some(&i) = seen.get(&state) {
            let (left_letter, middle, right_letter) = states.swap_remove(i);
            return Ok(FixpointSeed {
                left_letter,
                middle,
                right_letter,
                p: seen.len() - i,
            });
        }
        if state.1.len() > limit || states.len() > 1 << 16 {
            return Err(Error::PadDivergence(format!(
                "junction word did not stabilize within {limit} letters"
            )));
        }
        seen.insert(state.clone(), states.len());
        let (beta, junction, gamma) = &state;
        let (beta2, suffix) = edge_letter(sub, cls, *beta, true);
        let (gamma2, prefix) = edge_letter(sub, cls, *gamma, false);
        let mut j = suffix;
        j.extend_from_slice(&sub.apply(junction));
        j.extend_from_slice(&prefix);
        states.push(state);
        state = (beta2, j, gamma2);
    }
}

/// First `len` letters of `σⁿ(a)`, materializing only those.
fn power_prefix(ex: &mut Expander, a: Letter, n: usize, len: u64, out: &mut Word) {
    if len == 0 {
        return;
    }
    if n == 0 {
        out.push(a);
        return;
    }
    let sub = ex.substitution();
    let mut left = len;
    for &b in sub.image(a).iter() {
        let take = ex.length(b, n - 1).min(left);
        power_prefix(ex, b, n - 1, take, out);
        left -= take;
        if left == 0 {
            break;
        }
    }
}

/// Last `len` letters of `σⁿ(a)`, in reverse order.
fn power_suffix_rev(ex: &mut Expander, a: Letter, n: usize, len: u64, out: &mut Word) {
    if len == 0 {
        return;
    }
    if n == 0 {
        out.push(a);
        return;
    }
    let sub = ex.substitution();
    let mut left = len;
    for &b in sub.image(a).iter().rev() {
        let take = ex.length(b, n - 1).min(left);
        power_suffix_rev(ex, b, n - 1, take, out);
        left -= take;
        if left == 0 {
            break;
        }
    }
}

/// Least `k ≥ 1` with `|σ^{kp}(a)| ≥ need`, within the power budget.
fn turns_for(ex: &mut Expander, a: Letter, p: usize, need: u64) -> Result<usize> {
    let max_power = ex.budget().max_power;
    let mut k = 1;
    while ex.length(a, k * p) < need {
        k += 1;
        if k * p > max_power {
            return Err(Error::BudgetExceeded(format!(
                "window needs power beyond max_power {max_power}"
            )));
        }
    }
    Ok(k)
}

/// `x₀[s, t]`. Index 0 is the first letter of `w₀ c₀`; `b₀` sits at `−1`.
pub fn window(
    sub: &Substitution,
    seed: &FixpointSeed,
    s: i64,
    t: i64,
    budget: ExpansionBudget,
) -> Result<Word> {
    window_at_depth(sub, seed, s, t, 0, budget)
}

/// As [`window`], built from `extra` more applications of `σ^p` than needed.
pub fn window_at_depth(
    sub: &Substitution,
    seed: &FixpointSeed,
    s: i64,
    t: i64,
    extra: usize,
    budget: ExpansionBudget,
) -> Result<Word> {
    if s > t {
        return Err(Error::PreconditionFailed(format!(
            "empty window [{s}, {t}]"
        )));
    }
    let span = (t - s + 1) as u64;
    if span > budget.max_length as u64 {
        return Err(Error::BudgetExceeded(format!(
            "window of {span} letters exceeds max_length {}",
            budget.max_length
        )));
    }
    let mut ex = Expander::new(sub, budget);
    let p = seed.p;
    let w0 = seed.middle.len() as u64;

    let mut right = Word::new();
    if t >= 0 {
        let need = (t as u64 + 1).saturating_sub(w0);
        right.extend_from_slice(&seed.middle[..(t as usize + 1).min(seed.middle.len())]);
        if need > 0 {
            let k = turns_for(&mut ex, seed.right_letter, p, need)? + extra;
            power_prefix(&mut ex, seed.right_letter, k * p, need, &mut right);
        }
    }
    let mut left = Word::new();
    if s < 0 {
        let need = (-s) as u64;
        let k = turns_for(&mut ex, seed.left_letter, p, need)? + extra;
        power_suffix_rev(&mut ex, seed.left_letter, k * p, need, &mut left);
        left.reverse();
    }
    // left covers [s, -1] (or nothing), right covers [0, t] (or nothing)
    let lo = s.max(0) as usize;
    let hi = t.max(-1);
    let mut out = Word::with_capacity(span as usize);
    if s < 0 {
        let end = if t < 0 {
            left.len() - (-1 - t) as usize
        } else {
            left.len()
        };
        out.extend_from_slice(&left[..end]);
    }
    if hi >= 0 {
        out.extend_from_slice(&right[lo..=hi as usize]);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicWitness {
    /// Nonempty bounded word with `wᵏ ∈ L(σ)` for every `k`.
    pub word: Word,
    pub origin: Letter,
    pub n0: usize,
}

/// For an isolated letter `a` with pad `P` after `n₀` steps,
/// `σ^{(k+1)n₀}(a)` contains `wᵏ P` next to `a`, where `w = σ^{n₀}(P)`.
pub fn periodic_word_from_isolation(
    sub: &Substitution,
    cls: &LetterClassification,
    consts: &StableConstants,
    a: Letter,
) -> Result<PeriodicWitness> {
    let status = isolation(sub, cls, a);
    let (Some(side), Some(turn)) = (status.witness_side, status.witness_n) else {
        return Err(Error::NotIsolated(sub.symbol(a)));
    };
    let n0 = lcm(lcm(consts.n_s, consts.p_s), turn);
    let pad = edge_trajectory(sub, cls, a, side).pad(sub, n0);
    Ok(PeriodicWitness {
        word: sub.apply_n(&pad, n0),
        origin: a,
        n0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorWitness {
    pub letter: Letter,
    pub n: usize,
    pub left_ctx: Word,
    pub right_ctx: Word,
}

/// First `n ≤ n_max` with `σⁿ(c) = u c v`, `u` and `v` nonempty.
pub fn interior_pump(
    sub: &Substitution,
    cls: &LetterClassification,
    c: Letter,
    n_max: usize,
    budget: ExpansionBudget,
) -> Result<Option<InteriorWitness>> {
    if !cls.is_growing(c) {
        return Err(Error::PreconditionFailed(format!(
            "interior pump needs a growing letter, {} is bounded",
            sub.symbol(c)
        )));
    }
    let mut ex = Expander::new(sub, budget);
    for n in 1..=n_max {
        let w = match ex.expand(c, n) {
            Ok(w) => w,
            Err(e) if n == 1 => return Err(e),
            Err(_) => break,
        };
        if w.len() >= 3 {
            if let Some(i) = (1..w.len() - 1).find(|&i| w[i] == c) {
                return Ok(Some(InteriorWitness {
                    letter: c,
                    n,
                    left_ctx: Word::from(&w[..i]),
                    right_ctx: Word::from(&w[i + 1..]),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedGapReport {
    pub p_prime: usize,
    pub l: usize,
    pub d: usize,
    pub d_prime: usize,
}

pub fn bounded_gap_constants(
    sub: &Substitution,
    cls: &LetterClassification,
    consts: &StableConstants,
    lprim: &LPrimitivityReport,
    tame: &TamenessReport,
    seed: &FixpointSeed,
    budget: ExpansionBudget,
) -> Result<BoundedGapReport> {
    let (Some(witness), Some(e_s)) = (lprim.witness_n, tame.e_s) else {
        return Err(Error::PreconditionFailed(
            "bounded gaps need a tame and l-primitive substitution".into(),
        ));
    };
    let p_prime = witness.div_ceil(seed.p) * seed.p;
    let mut ex = Expander::new(sub, budget);
    let l = sub
        .letters()
        .map(|a| ex.length(a, p_prime))
        .max()
        .unwrap_or(0);
    let l = usize::try_from(l).unwrap_or(usize::MAX);
    let d = gap(sub, cls, consts, Some(e_s), 1, budget)?
        .bound
        .expect("bound is present when e_s is");
    Ok(BoundedGapReport {
        p_prime,
        l,
        d,
        d_prime: d.saturating_add(2 * l),
    })
}
