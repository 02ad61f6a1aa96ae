//! Left/right isolation of growing letters, tameness, the pad bound `e_s`, the
//! long form of `σⁿ(a)` and the gap function.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::{Expander, ExpansionBudget};
use crate::growth::{LetterClassification, StableConstants};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One step of an edge trajectory: from `letter`, the next edge letter of
/// `σ(letter)` and the bounded word `emission` between it and the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeStep {
    pub letter: Letter,
    pub emission: Word,
}

/// Iteration of "first (or last) growing letter of `σ(b)`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTrajectory {
    pub side: Side,
    pub start: Letter,
    /// `path[i].letter` is the edge letter of `σⁱ(start)`.
    pub path: Vec<EdgeStep>,
    pub preperiod: usize,
    pub cycle_length: usize,
}

impl EdgeTrajectory {
    /// Edge letter of `σⁿ(start)`.
    pub fn letter_at(&self, n: usize) -> Letter {
        self.step_at(n).letter
    }

    fn step_at(&self, n: usize) -> &EdgeStep {
        if n < self.path.len() {
            &self.path[n]
        } else {
            &self.path[self.preperiod + (n - self.preperiod) % self.cycle_length]
        }
    }

    pub fn cycle(&self) -> &[EdgeStep] {
        &self.path[self.preperiod..]
    }

    /// The bounded pad between the boundary and the edge letter of `σⁿ(start)`:
    /// `l_s(n, a)` on the left, `r_s(n, a)` on the right.
    pub fn pad(&self, sub: &Substitution, n: usize) -> Word {
        let mut pad = Word::new();
        for i in 0..n {
            let e = &self.step_at(i).emission;
            pad = match self.side {
                Side::Left => sub.apply(&pad).concat(e),
                Side::Right => e.concat(&sub.apply(&pad)),
            };
        }
        pad
    }
}

fn edge_step(sub: &Substitution, cls: &LetterClassification, b: Letter, side: Side) -> EdgeStep {
    let img = sub.image(b);
    let (i, letter) = match side {
        Side::Left => cls.first_growing(img),
        Side::Right => cls.last_growing(img),
    }
    .expect("the image of a growing letter contains a growing letter");
    let emission = match side {
        Side::Left => Word::from(&img[..i]),
        Side::Right => Word::from(&img[i + 1..]),
    };
    EdgeStep { letter, emission }
}

pub fn edge_trajectory(
    sub: &Substitution,
    cls: &LetterClassification,
    a: Letter,
    side: Side,
) -> EdgeTrajectory {
    assert!(
        cls.is_growing(a),
        "edge trajectories start at a growing letter"
    );
    let mut index: HashMap<Letter, usize> = HashMap::new();
    let mut path: Vec<EdgeStep> = Vec::new();
    let mut cur = a;
    loop {
        if let Some(&i) = index.get(&cur) {
            let cycle_length = path.len() - i;
            return EdgeTrajectory {
                side,
                start: a,
                path,
                preperiod: i,
                cycle_length,
            };
        }
        index.insert(cur, path.len());
        let step = edge_step(sub, cls, cur, side);
        let next = step.letter;
        // store the state's own letter with the emission it produces
        path.push(EdgeStep {
            letter: cur,
            emission: step.emission,
        });
        cur = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationStatus {
    pub letter: Letter,
    pub left_isolated: bool,
    pub right_isolated: bool,
    pub witness_side: Option<Side>,
    pub witness_n: Option<usize>,
    pub witness_pad: Option<Word>,
}

impl IsolationStatus {
    pub fn isolated(&self) -> bool {
        self.left_isolated || self.right_isolated
    }
}

/// `a` is isolated on a side iff it lies on the cycle of its own edge trajectory
/// and some emission on that cycle is nonempty. One full turn of the cycle then
/// puts a nonempty bounded pad next to a literal `a`.
fn isolated_on(traj: &EdgeTrajectory) -> bool {
    traj.preperiod == 0 && traj.cycle().iter().any(|s| !s.emission.is_empty())
}

pub fn isolation(sub: &Substitution, cls: &LetterClassification, a: Letter) -> IsolationStatus {
    let left = edge_trajectory(sub, cls, a, Side::Left);
    let right = edge_trajectory(sub, cls, a, Side::Right);
    let left_isolated = isolated_on(&left);
    let right_isolated = isolated_on(&right);
    let witness = if left_isolated {
        Some(&left)
    } else if right_isolated {
        Some(&right)
    } else {
        None
    };
    IsolationStatus {
        letter: a,
        left_isolated,
        right_isolated,
        witness_side: witness.map(|t| t.side),
        witness_n: witness.map(|t| t.cycle_length),
        witness_pad: witness.map(|t| t.pad(sub, t.cycle_length)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamenessReport {
    pub statuses: BTreeMap<Letter, IsolationStatus>,
    pub tame: bool,
    pub e_s_minus: Option<usize>,
    pub e_s_plus: Option<usize>,
    pub e_s: Option<usize>,
}

impl TamenessReport {
    pub fn isolated_letters(&self) -> impl Iterator<Item = &IsolationStatus> {
        self.statuses.values().filter(|s| s.isolated())
    }
}

/// Largest pad `|l_s(n,a)|` (or `|r_s(n,a)|`) over all `n`, by iterating the
/// state (pad, edge letter) until it repeats.
fn max_pad(
    sub: &Substitution,
    cls: &LetterClassification,
    consts: &StableConstants,
    a: Letter,
    side: Side,
) -> Result<usize> {
    let limit = 2 * (sub.len() + 1) * sub.max_image_len() * consts.k_s.max(1);
    let mut seen: HashSet<(Word, Letter)> = HashSet::new();
    let mut pad = Word::new();
    let mut letter = a;
    let mut best = 0;
    while seen.insert((pad.clone(), letter)) {
        best = best.max(pad.len());
        if pad.len() > limit {
            return Err(Error::PadDivergence(format!(
                "{side:?} pad of {} exceeds {limit} letters on a tame input",
                sub.symbol(a)
            )));
        }
        let step = edge_step(sub, cls, letter, side);
        pad = match side {
            Side::Left => sub.apply(&pad).concat(&step.emission),
            Side::Right => step.emission.concat(&sub.apply(&pad)),
        };
        letter = step.letter;
    }
    Ok(best)
}

pub fn tameness(
    sub: &Substitution,
    cls: &LetterClassification,
    consts: &StableConstants,
) -> Result<TamenessReport> {
    let statuses: BTreeMap<Letter, IsolationStatus> = cls
        .growing
        .iter()
        .map(|a| (a, isolation(sub, cls, a)))
        .collect();
    let tame = statuses.values().all(|s| !s.isolated());
    let (mut e_s_minus, mut e_s_plus, mut e_s) = (None, None, None);
    if tame {
        let mut minus = 0;
        let mut plus = 0;
        for a in cls.growing.iter() {
            minus = minus.max(max_pad(sub, cls, consts, a, Side::Left)?);
            plus = plus.max(max_pad(sub, cls, consts, a, Side::Right)?);
        }
        e_s_minus = Some(minus);
        e_s_plus = Some(plus);
        e_s = Some(minus.max(plus));
    }
    Ok(TamenessReport {
        statuses,
        tame,
        e_s_minus,
        e_s_plus,
        e_s,
    })
}

/// `σⁿ(a) = l_s · a₀ w₁ a₁ ⋯ w_j a_j · r_s` with `aᵢ ∈ A_l` and bounded `wᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongFormDecomposition {
    pub leading_pad: Word,
    pub letters: Vec<Letter>,
    /// `gaps[i]` sits between `letters[i]` and `letters[i+1]`.
    pub gaps: Vec<Word>,
    pub trailing_pad: Word,
    pub j: usize,
}

impl LongFormDecomposition {
    pub fn reconcat(&self) -> Word {
        let mut out = self.leading_pad.clone();
        for (i, &a) in self.letters.iter().enumerate() {
            out.push(a);
            if let Some(g) = self.gaps.get(i) {
                out.extend_from_slice(g);
            }
        }
        out.extend_from_slice(&self.trailing_pad);
        out
    }
}

pub fn decompose(cls: &LetterClassification, w: &[Letter]) -> LongFormDecomposition {
    let idx: Vec<usize> = (0..w.len()).filter(|&i| cls.is_growing(w[i])).collect();
    let (Some(&first), Some(&last)) = (idx.first(), idx.last()) else {
        return LongFormDecomposition {
            leading_pad: Word::from(w),
            letters: Vec::new(),
            gaps: Vec::new(),
            trailing_pad: Word::new(),
            j: 0,
        };
    };
    LongFormDecomposition {
        leading_pad: Word::from(&w[..first]),
        letters: idx.iter().map(|&i| w[i]).collect(),
        gaps: idx
            .windows(2)
            .map(|p| Word::from(&w[p[0] + 1..p[1]]))
            .collect(),
        trailing_pad: Word::from(&w[last + 1..]),
        j: idx.len() - 1,
    }
}

pub fn long_form(
    sub: &Substitution,
    cls: &LetterClassification,
    a: Letter,
    n: usize,
    budget: ExpansionBudget,
) -> Result<LongFormDecomposition> {
    let mut ex = Expander::new(sub, budget);
    Ok(decompose(cls, &ex.expand(a, n)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub n: usize,
    pub per_letter: BTreeMap<Letter, usize>,
    pub gap_n: usize,
    /// `k_s·gap(n) + 2·e_s`, present when `e_s` is known.
    pub bound: Option<usize>,
}

/// `gap(n,a) = max_i |σ^{n_s}(w(n,a,i))|` and `gap(n) = max_a gap(n,a)`.
pub fn gap(
    sub: &Substitution,
    cls: &LetterClassification,
    consts: &StableConstants,
    e_s: Option<usize>,
    n: usize,
    budget: ExpansionBudget,
) -> Result<GapReport> {
    if n == 0 {
        return Err(Error::PreconditionFailed("gap needs n ≥ 1".into()));
    }
    let mut ex = Expander::new(sub, budget);
    let mut per_letter = BTreeMap::new();
    for a in cls.growing.iter() {
        let w = ex.expand(a, n)?;
        let form = decompose(cls, &w);
        let g = form
            .gaps
            .iter()
            .map(|g| ex.word_length(g, consts.n_s) as usize)
            .max()
            .unwrap_or(0);
        per_letter.insert(a, g);
    }
    let gap_n = per_letter.values().copied().max().unwrap_or(0);
    Ok(GapReport {
        n,
        per_letter,
        gap_n,
        bound: e_s.map(|e| consts.k_s * gap_n + 2 * e),
    })
}
