//! Letters, alphabets, words and compositions.
//!
//! Words print as dot-joined letters (`X0.X1`) and the empty word prints as
//! `1`; [`Word::from_str`] accepts exactly that format.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A generator of one of the free algebras in play.
///
/// The declaration order is the letter order used everywhere (word
/// comparison, `B4` enumeration): `X0 < X1 < Xinf` and
/// `X24 < X34 < X45 < X12 < X23 < X51`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X0,
    X1,
    XInf,
    X24,
    X34,
    X45,
    X12,
    X23,
    X51,
}

impl Letter {
    pub const ALL: [Letter; 9] = [
        Letter::X0,
        Letter::X1,
        Letter::XInf,
        Letter::X24,
        Letter::X34,
        Letter::X45,
        Letter::X12,
        Letter::X23,
        Letter::X51,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Letter::X0 => "X0",
            Letter::X1 => "X1",
            Letter::XInf => "Xinf",
            Letter::X24 => "X24",
            Letter::X34 => "X34",
            Letter::X45 => "X45",
            Letter::X12 => "X12",
            Letter::X23 => "X23",
            Letter::X51 => "X51",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }

    /// Letters of the kernel of `f4`: `X24`, `X34`, `X45`.
    pub fn is_kernel(self) -> bool {
        matches!(self, Letter::X24 | Letter::X34 | Letter::X45)
    }

    /// `X12` or `X23`.
    pub fn is_top(self) -> bool {
        matches!(self, Letter::X12 | Letter::X23)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Letter::ALL
            .iter()
            .copied()
            .find(|l| l.name() == s || (*l == Letter::XInf && s == "X∞"))
            .ok_or_else(|| Error::WordParse(s.to_string()))
    }
}

/// A fixed finite set of letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    mask: u16,
    name: &'static str,
}

impl Alphabet {
    /// `{X0, X1}`.
    pub const AX: Alphabet = Alphabet::new(&[Letter::X0, Letter::X1], "AX");
    /// `{X0, X1, Xinf}`, only used before substituting `Xinf = -X0 - X1`.
    pub const AX_INF: Alphabet =
        Alphabet::new(&[Letter::X0, Letter::X1, Letter::XInf], "AX+Xinf");
    /// `{X24, X34, X45, X12, X23}`.
    pub const AB: Alphabet = Alphabet::new(
        &[Letter::X24, Letter::X34, Letter::X45, Letter::X12, Letter::X23],
        "AB",
    );
    /// `AB` plus the input-only letter `X51`.
    pub const AB51: Alphabet = Alphabet::new(
        &[
            Letter::X24,
            Letter::X34,
            Letter::X45,
            Letter::X12,
            Letter::X23,
            Letter::X51,
        ],
        "AB+X51",
    );

    const PREDECLARED: [Alphabet; 4] = [Self::AX, Self::AX_INF, Self::AB, Self::AB51];

    pub const fn new(letters: &[Letter], name: &'static str) -> Self {
        let mut mask = 0u16;
        let mut i = 0;
        while i < letters.len() {
            mask |= 1 << (letters[i] as u16);
            i += 1;
        }
        Alphabet { mask, name }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.mask & l.bit() != 0
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| self.contains(l))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        Letter::ALL.iter().copied().filter(move |&l| self.contains(l))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.mask & !other.mask == 0
    }

    /// The smallest predeclared alphabet containing every letter of `words`.
    pub fn smallest_containing<'a>(words: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut mask = 0u16;
        for w in words {
            for &l in w.letters() {
                mask |= l.bit();
            }
        }
        Self::PREDECLARED
            .iter()
            .copied()
            .find(|a| mask & !a.mask == 0)
            .ok_or(Error::MixedAlphabets("AX", "AB"))
    }

    pub(crate) fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&l| !self.contains(l)) {
            Some(&l) => Err(Error::LetterNotInAlphabet(l, self.name)),
            None => Ok(()),
        }
    }
}

/// A finite sequence of letters. Ordered by weight first, then
/// lexicographically with the [`Letter`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letter(l: Letter) -> Self {
        Word(alloc::vec![l])
    }

    /// `l` repeated `n` times.
    pub fn power(l: Letter, n: usize) -> Self {
        Word(alloc::vec![l; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `X1` letters.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::X1).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Starts with `X0` and ends with `X1`.
    pub fn is_convergent(&self) -> bool {
        self.first() == Some(Letter::X0) && self.last() == Some(Letter::X1)
    }

    /// `X0^k` or `X1^k` with `k >= 1`.
    pub fn is_pure_power_ax(&self) -> bool {
        match self.first() {
            Some(l @ (Letter::X0 | Letter::X1)) => self.0.iter().all(|&m| m == l),
            _ => false,
        }
    }

    /// Letterwise swap `X0 <-> X1`.
    pub fn theta(&self) -> Result<Word> {
        self.0
            .iter()
            .map(|&l| match l {
                Letter::X0 => Ok(Letter::X1),
                Letter::X1 => Ok(Letter::X0),
                other => Err(Error::LetterNotInAlphabet(other, "AX")),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn reverse(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Every factorisation `self = u·v`, with the cut moving left to right.
    pub fn deconcatenations(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.0.len()).map(move |i| (self.slice(0, i), self.slice(i, self.0.len())))
    }

    /// All words of length `n` over `alphabet`, in increasing order.
    pub fn all_of_weight(alphabet: &Alphabet, n: usize) -> Vec<Word> {
        let letters: Vec<Letter> = alphabet.letters().collect();
        let mut out = alloc::vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * letters.len());
            for w in &out {
                for &l in &letters {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `n` over `alphabet`.
    pub fn all_up_to_weight(alphabet: &Alphabet, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| Word::all_of_weight(alphabet, k)).collect()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<&[Letter]> for Word {
    fn from(ls: &[Letter]) -> Self {
        Word(ls.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(l.name())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.split('.')
            .map(|p| p.trim().parse::<Letter>().map_err(|_| Error::WordParse(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A tuple `(k1, ..., kp)` of positive integers indexing a multiple zeta
/// value. Encoded as the word `X0^(k1-1) X1 ... X0^(kp-1) X1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::CompositionParse(
                parts.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `k1 >= 2`. The empty composition (the constant 1) counts as convergent.
    pub fn is_convergent(&self) -> bool {
        self.0.first().is_none_or(|&k| k >= 2)
    }

    pub fn to_word(&self) -> Word {
        let mut v = Vec::with_capacity(self.weight());
        for &k in &self.0 {
            v.extend(core::iter::repeat_n(Letter::X0, k as usize - 1));
            v.push(Letter::X1);
        }
        Word(v)
    }

    /// Inverse of [`Composition::to_word`]; `w` must be empty or end in `X1`.
    pub fn from_word(w: &Word) -> Result<Self> {
        Alphabet::AX.check(w)?;
        if !w.is_empty() && w.last() != Some(Letter::X1) {
            return Err(Error::NoComposition(w.clone()));
        }
        let mut parts = Vec::new();
        let mut run = 0u32;
        for &l in w.letters() {
            if l == Letter::X0 {
                run += 1;
            } else {
                parts.push(run + 1);
                run = 0;
            }
        }
        Ok(Composition(parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<core::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::CompositionParse(String::from(s)))?;
        if parts.is_empty() {
            return Err(Error::CompositionParse(String::from(s)));
        }
        Composition::new(parts).map_err(|_| Error::CompositionParse(String::from(s)))
    }
}

/// Shorthand for tests and examples: `w("X0.X1")`.
///
/// Panics on malformed input.
pub fn w(s: &str) -> Word {
    s.parse().expect("malformed word literal")
}
