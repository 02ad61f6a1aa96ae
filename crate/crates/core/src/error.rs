use thiserror::Error;

/// What went wrong on a particular line of a `.sub` file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `<letter> -> <word>`")]
    MissingArrow,
    #[error("left-hand side must be exactly one letter, found {0:?}")]
    BadLetter(String),
    #[error("duplicate rule for {0:?}")]
    DuplicateRule(char),
    #[error("empty image for {0:?}")]
    EmptyImage(char),
    #[error("image contains a separator or reserved character {0:?}")]
    BadImage(char),
    #[error("alphabet exceeds {0} letters")]
    AlphabetTooLarge(usize),
    #[error("no rules")]
    NoRules,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("line {line}: letter {letter:?} is used in an image but has no rule")]
    UnknownLetter { line: usize, letter: char },
    #[error("not a substitution: no letter has unbounded images")]
    NotASubstitution,
    #[error("expansion budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("substitution is not tame")]
    NotTame,
    #[error("letter {0:?} is neither left nor right isolated")]
    NotIsolated(char),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("pad growth diverged on a tame input: {0}")]
    PadDivergence(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
