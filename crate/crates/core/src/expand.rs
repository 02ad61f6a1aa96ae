//! Budgeted, memoized computation of `σⁿ(a)`.

use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

/// Upper bounds on what an expansion may materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionBudget {
    pub max_length: usize,
    pub max_power: usize,
}

impl Default for ExpansionBudget {
    fn default() -> Self {
        ExpansionBudget {
            max_length: 1_000_000,
            max_power: 64,
        }
    }
}

impl ExpansionBudget {
    pub fn new(max_length: usize, max_power: usize) -> Result<ExpansionBudget> {
        if max_length == 0 || max_power == 0 {
            return Err(Error::PreconditionFailed(
                "expansion budget bounds must be positive".into(),
            ));
        }
        Ok(ExpansionBudget {
            max_length,
            max_power,
        })
    }
}

/// An expansion session. Words are cached by `(letter, power)`; anything longer
/// than the budget is reported as [`Error::BudgetExceeded`], never truncated.
///
/// Sessions are single-threaded; give each thread its own.
pub struct Expander<'s> {
    sub: &'s Substitution,
    budget: ExpansionBudget,
    // lengths[n][a] = |σⁿ(a)|, saturating
    lengths: Vec<Vec<u64>>,
    cache: HashMap<(Letter, usize), Rc<Word>>,
}

impl<'s> Expander<'s> {
    pub fn new(sub: &'s Substitution, budget: ExpansionBudget) -> Expander<'s> {
        Expander {
            sub,
            budget,
            lengths: vec![vec![1; sub.len()]],
            cache: HashMap::new(),
        }
    }

    pub fn substitution(&self) -> &'s Substitution {
        self.sub
    }

    pub fn budget(&self) -> ExpansionBudget {
        self.budget
    }

    /// `|σⁿ(a)|`, saturating at `u64::MAX`. Never materializes anything.
    pub fn length(&mut self, a: Letter, n: usize) -> u64 {
        while self.lengths.len() <= n {
            let prev = self.lengths.last().unwrap();
            let next = self
                .sub
                .letters()
                .map(|b| {
                    self.sub
                        .image(b)
                        .iter()
                        .fold(0u64, |acc, c| acc.saturating_add(prev[c.index()]))
                })
                .collect();
            self.lengths.push(next);
        }
        self.lengths[n][a.index()]
    }

    pub fn word_length(&mut self, w: &[Letter], n: usize) -> u64 {
        w.iter()
            .fold(0u64, |acc, &a| acc.saturating_add(self.length(a, n)))
    }

    fn check(&mut self, len: u64, n: usize) -> Result<()> {
        if n > self.budget.max_power {
            return Err(Error::BudgetExceeded(format!(
                "power {n} exceeds max_power {}",
                self.budget.max_power
            )));
        }
        if len > self.budget.max_length as u64 {
            return Err(Error::BudgetExceeded(format!(
                "length {len} exceeds max_length {}",
                self.budget.max_length
            )));
        }
        Ok(())
    }

    /// `σⁿ(a)`; `σ⁰(a) = a`.
    pub fn expand(&mut self, a: Letter, n: usize) -> Result<Rc<Word>> {
        let len = self.length(a, n);
        self.check(len, n)?;
        Ok(self.build(a, n))
    }

    fn build(&mut self, a: Letter, n: usize) -> Rc<Word> {
        if let Some(w) = self.cache.get(&(a, n)) {
            return Rc::clone(w);
        }
        let w = if n == 0 {
            Word::single(a)
        } else {
            let mut out = Word::with_capacity(self.lengths[n][a.index()] as usize);
            let sub = self.sub;
            for &b in sub.image(a).iter() {
                let part = self.build(b, n - 1);
                out.extend_from_slice(&part);
            }
            out
        };
        let w = Rc::new(w);
        self.cache.insert((a, n), Rc::clone(&w));
        w
    }

    /// `σⁿ(w)` for a word.
    pub fn expand_word(&mut self, w: &[Letter], n: usize) -> Result<Word> {
        let len = self.word_length(w, n);
        self.check(len, n)?;
        let mut out = Word::with_capacity(len as usize);
        for &a in w {
            let part = self.build(a, n);
            out.extend_from_slice(&part);
        }
        Ok(out)
    }
}

/// `σⁿ(a)` under `budget`, in a throwaway session.
pub fn expand(sub: &Substitution, a: Letter, n: usize, budget: ExpansionBudget) -> Result<Word> {
    let mut ex = Expander::new(sub, budget);
    ex.expand(a, n).map(|w| (*w).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(t: &str) -> Substitution {
        Substitution::parse(t).unwrap()
    }

    #[test]
    fn thue_morse_square() {
        let s = sub("0 -> 01\n1 -> 10");
        let w = expand(&s, s.letter('0').unwrap(), 2, ExpansionBudget::default()).unwrap();
        assert_eq!(s.render(&w), "0110");
    }

    #[test]
    fn chacon_square() {
        let s = sub("0 -> 0010\n1 -> 1");
        let w = expand(&s, s.letter('0').unwrap(), 2, ExpansionBudget::default()).unwrap();
        assert_eq!(s.render(&w), "0010001010010");
    }

    #[test]
    fn zeroth_power_is_identity() {
        let s = sub("a -> ab\nb -> ba");
        for a in s.letters() {
            let w = expand(&s, a, 0, ExpansionBudget::default()).unwrap();
            assert_eq!(&w[..], &[a]);
        }
    }

    #[test]
    fn budget_is_enforced_not_truncated() {
        let s = sub("0 -> 01\n1 -> 10");
        let tight = ExpansionBudget::new(8, 64).unwrap();
        let zero = s.letter('0').unwrap();
        assert_eq!(expand(&s, zero, 3, tight).unwrap().len(), 8);
        assert!(matches!(
            expand(&s, zero, 4, tight),
            Err(Error::BudgetExceeded(_))
        ));
        let shallow = ExpansionBudget::new(1 << 20, 2).unwrap();
        assert!(matches!(
            expand(&s, zero, 3, shallow),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(ExpansionBudget::new(0, 1).is_err());
    }

    #[test]
    fn lengths_saturate() {
        let s = sub("a -> aaaa");
        let mut ex = Expander::new(&s, ExpansionBudget::default());
        assert_eq!(ex.length(s.letter('a').unwrap(), 40), u64::MAX);
        assert_eq!(ex.length(s.letter('a').unwrap(), 3), 64);
    }

    #[test]
    fn expand_word_concatenates() {
        let s = sub("a -> ab\nb -> a");
        let mut ex = Expander::new(&s, ExpansionBudget::default());
        let w = s.word("ab").unwrap();
        assert_eq!(s.render(&ex.expand_word(&w, 3).unwrap()), "abaababa");
    }
}
