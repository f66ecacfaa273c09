use alloc::string::String;

use thiserror::Error;

use crate::word::{Letter, Word};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {0} is not part of the alphabet {1}")]
    LetterNotInAlphabet(Letter, &'static str),
    #[error("operands use different alphabets ({0} vs {1})")]
    MixedAlphabets(&'static str, &'static str),
    #[error("operands are truncated at different weights ({0} vs {1})")]
    WeightMismatch(usize, usize),
    #[error("no image given for letter {0}")]
    UnmappedLetter(Letter),
    #[error("expected a series with only weight-one terms")]
    NonLinear,
    #[error("cannot parse `{0}` as a word")]
    WordParse(String),
    #[error("cannot parse `{0}` as a composition")]
    CompositionParse(String),
    #[error("word {0} does not end with X1 and has no composition")]
    NoComposition(Word),
    #[error("{0} is not convergent (must start with X0 and end with X1)")]
    NotConvergent(Word),
    #[error("composition must be non-empty with a first entry at least 2")]
    DivergentComposition,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("coefficient of the empty word is not a relation")]
    EmptyWord,
    #[error("empty monomial has no dual relation")]
    EmptyMonomial,
    #[error("{0} is not a B4 monomial")]
    NotB4(Word),
    #[error("rewrite budget of {budget} steps exceeded while reducing {word}")]
    RewriteBudget { word: Word, budget: usize },
    #[error("integer overflow in structure coefficients of {0}")]
    Overflow(Word),
    #[error("bar tensor is not homogeneous")]
    NonHomogeneous,
    #[error("bar tensor is not integrable (fails at cut {0})")]
    NotIntegrable(usize),
    #[error("relation must be in MZV form for numeric evaluation")]
    SymbolicForm,
    #[error("letter {0} has no 1-form on M0,5")]
    NoForm(Letter),
    #[error("generators not available for degree {0}")]
    MissingGenerators(usize),
}
