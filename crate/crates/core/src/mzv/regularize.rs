//! Shuffle regularization with `ζ⧢(X0) = ζ⧢(X1) = 0`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::coeff::Rational;
use crate::error::Result;
use crate::series::shuffle_words;
use crate::word::{Alphabet, Letter, Word};

/// `constant + Σ c_w ζ(w)` over convergent words `w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MzvLinearCombo {
    pub constant: Rational,
    terms: BTreeMap<Word, Rational>,
}

impl MzvLinearCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        MzvLinearCombo { constant: c, terms: BTreeMap::new() }
    }

    pub fn word(w: Word) -> Self {
        debug_assert!(w.is_convergent());
        MzvLinearCombo { constant: Rational::zero(), terms: BTreeMap::from([(w, Rational::one())]) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    /// `|constant| + Σ |c_w|`.
    pub fn norm1(&self) -> Rational {
        let abs = |q: &Rational| if q < &Rational::zero() { -q.clone() } else { q.clone() };
        self.terms.values().fold(abs(&self.constant), |a, c| a + abs(c))
    }

    pub fn add_scaled(&mut self, other: &MzvLinearCombo, c: &Rational) {
        if c.is_zero() {
            return;
        }
        self.constant += &other.constant * c;
        for (w, x) in &other.terms {
            let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
            *e += x * c;
            if e.is_zero() {
                self.terms.remove(w);
            }
        }
    }
}

impl fmt::Display for MzvLinearCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*z({w})")?;
            first = false;
        }
        Ok(())
    }
}

/// Memoizing regularizer.
#[derive(Debug, Default, Clone)]
pub struct Regularizer {
    memo: BTreeMap<Word, MzvLinearCombo>,
}

impl Regularizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// `ζ⧢(w)` as a combination of convergent words.
    pub fn regularize(&mut self, w: &Word) -> Result<MzvLinearCombo> {
        Alphabet::AX.check(w)?;
        Ok(self.reg(w))
    }

    fn reg(&mut self, w: &Word) -> MzvLinearCombo {
        if w.is_empty() {
            return MzvLinearCombo::constant(Rational::one());
        }
        if w.is_convergent() {
            return MzvLinearCombo::word(w.clone());
        }
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        // 0 = ζ⧢(x ⧢ rest) where x is the offending extremal letter; solve
        // for the coefficient of w.
        let (x, rest) = if w.first() == Some(Letter::X1) {
            (Word::letter(Letter::X1), w.slice(1, w.weight()))
        } else {
            (Word::letter(Letter::X0), w.slice(0, w.weight() - 1))
        };
        let sh = shuffle_words(&x, &rest);
        let m = Rational::from_integer(sh[w].into());
        let mut out = MzvLinearCombo::zero();
        let others: Vec<(Word, u64)> = sh.into_iter().filter(|(u, _)| u != w).collect();
        for (u, k) in others {
            let r = self.reg(&u);
            out.add_scaled(&r, &(-Rational::from_integer(k.into()) / &m));
        }
        self.memo.insert(w.clone(), out.clone());
        out
    }
}

/// `ζ⧢(w)` over convergent words.
pub fn shuffle_regularize(w: &Word) -> Result<MzvLinearCombo> {
    Regularizer::new().regularize(w)
}
