//! The substitution data model and the `.sub` text format.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};
use crate::word::{Letter, LetterSet, Word, MAX_ALPHABET};

/// A map `σ : A → A⁺`, extended to words by concatenation.
///
/// Letters are numbered in the order their rules appear in the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    symbols: Vec<char>,
    images: Vec<Word>,
}

fn reserved(c: char) -> bool {
    c.is_whitespace() || c == '#' || c == '-' || c == '>'
}

impl Substitution {
    /// Build from `(letter, image)` pairs; images are validated like parsed ones.
    pub fn from_rules<S: AsRef<str>>(rules: &[(char, S)]) -> Result<Substitution> {
        let text: String = rules
            .iter()
            .map(|(c, img)| format!("{c} -> {}\n", img.as_ref()))
            .collect();
        parse_substitution(&text)
    }

    /// Parse the `.sub` text format.
    pub fn parse(text: &str) -> Result<Substitution> {
        parse_substitution(text)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> LetterSet {
        LetterSet::full(self.len())
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(Letter::from_index)
    }

    #[inline]
    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a.index()]
    }

    pub fn symbol(&self, a: Letter) -> char {
        self.symbols[a.index()]
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .map(Letter::from_index)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Parse a word over this alphabet.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.letter(c)
                    .ok_or(Error::UnknownLetter { line: 0, letter: c })
            })
            .collect()
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.symbol(a)).collect()
    }

    /// Members of `s` as a string, in alphabet order.
    pub fn render_set(&self, s: LetterSet) -> String {
        s.iter().map(|a| self.symbol(a)).collect()
    }

    pub fn render_set_list(&self, s: LetterSet) -> Vec<String> {
        s.iter().map(|a| self.symbol(a).to_string()).collect()
    }

    /// `σ(w)`.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Word::with_capacity(w.len() * self.max_image_len());
        for &a in w {
            out.extend_from_slice(self.image(a));
        }
        out
    }

    /// `σⁿ(w)` without any budget. Callers are responsible for keeping `n` small.
    pub fn apply_n(&self, w: &[Letter], n: usize) -> Word {
        let mut cur = Word::from(w);
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }

    /// One-step letter graph: `succ[a] = Lett(σ(a))`.
    pub fn successors(&self) -> Vec<LetterSet> {
        self.images.iter().map(|w| w.letters()).collect()
    }

    /// `Lett(σ(w))` for a set of letters `w`.
    pub fn image_letters(&self, s: LetterSet) -> LetterSet {
        s.iter().fold(LetterSet::EMPTY, |acc, a| {
            acc.union(self.image(a).letters())
        })
    }

    /// `Lett(σⁿ(a))`, computed on letter sets.
    pub fn letters_after(&self, a: Letter, n: usize) -> LetterSet {
        let mut s = LetterSet::singleton(a);
        for _ in 0..n {
            s = self.image_letters(s);
        }
        s
    }

    /// Letters with a rule that never occur on any right-hand side.
    pub fn unused_letters(&self) -> LetterSet {
        let used = self
            .images
            .iter()
            .fold(LetterSet::EMPTY, |acc, w| acc.union(w.letters()));
        self.alphabet().difference(used)
    }

    /// Restriction of `σ` to `keep`, which must be closed under `σ`.
    /// Letters are renumbered in the original order.
    pub fn restrict(&self, keep: LetterSet) -> Result<Substitution> {
        if !self.image_letters(keep).is_subset(keep) {
            return Err(Error::PreconditionFailed(format!(
                "letter set {:?} is not closed under the substitution",
                self.render_set(keep)
            )));
        }
        let rules: Vec<(char, String)> = keep
            .iter()
            .map(|a| (self.symbol(a), self.render(self.image(a))))
            .collect();
        Substitution::from_rules(&rules)
    }
}

impl FromStr for Substitution {
    type Err = Error;
    fn from_str(s: &str) -> Result<Substitution> {
        parse_substitution(s)
    }
}

/// Canonical form: one `x -> w` rule per line in alphabet order.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.letters() {
            writeln!(f, "{} -> {}", self.symbol(a), self.render(self.image(a)))?;
        }
        Ok(())
    }
}

/// Parse a `.sub` file: one `<letter> -> <word>` rule per line, `#` comments,
/// blank lines ignored.
pub fn parse_substitution(text: &str) -> Result<Substitution> {
    let mut symbols: Vec<char> = Vec::new();
    let mut raw: Vec<(usize, String)> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |kind| Error::Parse {
            line: line_no,
            kind,
        };
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content
            .split_once("->")
            .ok_or_else(|| err(ParseErrorKind::MissingArrow))?;
        let lhs = lhs.trim();
        let mut chars = lhs.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) if !reserved(c) => c,
            _ => return Err(err(ParseErrorKind::BadLetter(lhs.to_string()))),
        };
        if symbols.contains(&c) {
            return Err(err(ParseErrorKind::DuplicateRule(c)));
        }
        let rhs = rhs.trim();
        if rhs.is_empty() {
            return Err(err(ParseErrorKind::EmptyImage(c)));
        }
        if let Some(bad) = rhs.chars().find(|&ch| reserved(ch)) {
            return Err(err(ParseErrorKind::BadImage(bad)));
        }
        symbols.push(c);
        if symbols.len() > MAX_ALPHABET {
            return Err(err(ParseErrorKind::AlphabetTooLarge(MAX_ALPHABET)));
        }
        raw.push((line_no, rhs.to_string()));
    }

    if symbols.is_empty() {
        return Err(Error::Parse {
            line: 0,
            kind: ParseErrorKind::NoRules,
        });
    }

    let mut images = Vec::with_capacity(raw.len());
    for (line, rhs) in raw {
        let img = rhs
            .chars()
            .map(|ch| {
                symbols
                    .iter()
                    .position(|&s| s == ch)
                    .map(Letter::from_index)
                    .ok_or(Error::UnknownLetter { line, letter: ch })
            })
            .collect::<Result<Word>>()?;
        images.push(img);
    }
    Ok(Substitution { symbols, images })
}
