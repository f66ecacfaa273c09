//! Weight-truncated non-commutative series with coefficients in [`CoeffExpr`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::coeff::{CoeffExpr, Rational};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// A finite sum `Σ c_W W` over one alphabet, with every `W` of weight at most
/// `max_weight`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCSeries {
    alphabet: Alphabet,
    max_weight: usize,
    terms: BTreeMap<Word, CoeffExpr>,
}

impl NCSeries {
    pub fn zero(alphabet: Alphabet, max_weight: usize) -> Self {
        NCSeries { alphabet, max_weight, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet, max_weight: usize) -> Self {
        let mut s = Self::zero(alphabet, max_weight);
        s.terms.insert(Word::empty(), CoeffExpr::one());
        s
    }

    /// `c · w`, or zero when `w` is above the truncation weight.
    pub fn monomial(alphabet: Alphabet, max_weight: usize, w: Word, c: CoeffExpr) -> Result<Self> {
        let mut s = Self::zero(alphabet, max_weight);
        s.add_term(w, c)?;
        Ok(s)
    }

    /// Builds a series from `(word, coefficient)` pairs.
    pub fn from_terms(
        alphabet: Alphabet,
        max_weight: usize,
        terms: impl IntoIterator<Item = (Word, CoeffExpr)>,
    ) -> Result<Self> {
        let mut s = Self::zero(alphabet, max_weight);
        for (w, c) in terms {
            s.add_term(w, c)?;
        }
        Ok(s)
    }

    /// `Σ_l c_l · l`.
    pub fn linear(
        alphabet: Alphabet,
        max_weight: usize,
        terms: impl IntoIterator<Item = (Letter, Rational)>,
    ) -> Result<Self> {
        Self::from_terms(
            alphabet,
            max_weight,
            terms.into_iter().map(|(l, c)| (Word::letter(l), CoeffExpr::constant(c))),
        )
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CoeffExpr)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, CoeffExpr> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> CoeffExpr {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, w: &Word) -> Option<&CoeffExpr> {
        self.terms.get(w)
    }

    /// Adds `c · w`; words above the truncation weight are dropped.
    pub fn add_term(&mut self, w: Word, c: CoeffExpr) -> Result<()> {
        self.alphabet.check(&w)?;
        if w.weight() > self.max_weight || c.is_zero() {
            return Ok(());
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &NCSeries) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::MixedAlphabets(self.alphabet.name(), other.alphabet.name()));
        }
        if self.max_weight != other.max_weight {
            return Err(Error::WeightMismatch(self.max_weight, other.max_weight));
        }
        Ok(())
    }

    pub fn add(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCSeries) -> Result<NCSeries> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> NCSeries {
        let mut out = Self::zero(self.alphabet, self.max_weight);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, x)| (w.clone(), x.scale(c))).collect();
        }
        out
    }

    pub fn scale_expr(&self, c: &CoeffExpr) -> NCSeries {
        let mut out = Self::zero(self.alphabet, self.max_weight);
        for (w, x) in &self.terms {
            let y = x * c;
            if !y.is_zero() {
                out.terms.insert(w.clone(), y);
            }
        }
        out
    }

    /// Concatenation (Cauchy) product truncated at `max_weight`.
    pub fn mul(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<Word, CoeffExpr> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > self.max_weight {
                    continue;
                }
                *acc.entry(u.concat(v)).or_default() += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(NCSeries { alphabet: self.alphabet, max_weight: self.max_weight, terms: acc })
    }

    /// `exp(x) = Σ xⁿ/n!` for a series `x` with only weight-one terms.
    pub fn exp(&self) -> Result<NCSeries> {
        if self.terms.keys().any(|w| w.weight() != 1) {
            return Err(Error::NonLinear);
        }
        let mut out = Self::one(self.alphabet, self.max_weight);
        let mut power = Self::one(self.alphabet, self.max_weight);
        for n in 1..=self.max_weight {
            power = power.mul(self)?.scale(&Rational::new(1.into(), (n as i64).into()));
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Applies the algebra morphism sending each letter `l` to `map(l)`, a
    /// linear series over `target`. The result is truncated at the same weight.
    pub fn substitute_letters(
        &self,
        target: Alphabet,
        map: &dyn Fn(Letter) -> Option<NCSeries>,
    ) -> Result<NCSeries> {
        let mut images: BTreeMap<Letter, NCSeries> = BTreeMap::new();
        for w in self.terms.keys() {
            for &l in w.letters() {
                if images.contains_key(&l) {
                    continue;
                }
                let img = map(l).ok_or(Error::UnmappedLetter(l))?;
                if img.alphabet != target {
                    return Err(Error::MixedAlphabets(img.alphabet.name(), target.name()));
                }
                if img.terms.keys().any(|w| w.weight() != 1) {
                    return Err(Error::NonLinear);
                }
                let img = NCSeries { max_weight: self.max_weight, ..img };
                images.insert(l, img);
            }
        }
        let mut out = Self::zero(target, self.max_weight);
        for (w, c) in &self.terms {
            let mut prod = Self::one(target, self.max_weight);
            for l in w.letters() {
                prod = prod.mul(&images[l])?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.add(&prod.scale_expr(c))?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&CoeffExpr) -> CoeffExpr) -> NCSeries {
        let mut out = Self::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(w.clone(), d);
            }
        }
        out
    }

    /// Shuffle product of two series, truncated at `max_weight`.
    pub fn shuffle(&self, other: &NCSeries) -> Result<NCSeries> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.alphabet, self.max_weight);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > self.max_weight {
                    continue;
                }
                let ab = a * b;
                for (w, m) in shuffle_words(u, v) {
                    out.add_term(w, ab.scale(&Rational::from_integer(m.into())))?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for NCSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{w}")?;
        }
        Ok(())
    }
}

/// The shuffle `v ⧢ w` as a map from words to multiplicities.
pub fn shuffle_words(v: &Word, w: &Word) -> BTreeMap<Word, u64> {
    // table[i][j] = v[i..] ⧢ w[j..]
    let (a, b) = (v.letters(), w.letters());
    let mut table: Vec<Vec<BTreeMap<Vec<Letter>, u64>>> =
        alloc::vec![alloc::vec![BTreeMap::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            let mut cell = BTreeMap::new();
            if i == a.len() {
                cell.insert(b[j..].to_vec(), 1);
            } else if j == b.len() {
                cell.insert(a[i..].to_vec(), 1);
            } else {
                for (rest, m) in &table[i + 1][j] {
                    let mut x = Vec::with_capacity(rest.len() + 1);
                    x.push(a[i]);
                    x.extend_from_slice(rest);
                    *cell.entry(x).or_insert(0) += m;
                }
                for (rest, m) in &table[i][j + 1] {
                    let mut x = Vec::with_capacity(rest.len() + 1);
                    x.push(b[j]);
                    x.extend_from_slice(rest);
                    *cell.entry(x).or_insert(0) += m;
                }
            }
            table[i][j] = cell;
        }
    }
    core::mem::take(&mut table[0][0])
        .into_iter()
        .map(|(x, m)| (Word::new(x), m))
        .collect()
}

/// `v ⧢ w` as a series over the smallest predeclared alphabet holding both.
pub fn shuffle(v: &Word, w: &Word) -> Result<NCSeries> {
    let alphabet = Alphabet::smallest_containing([v, w])?;
    let max_weight = v.weight() + w.weight();
    let mut out = NCSeries::zero(alphabet, max_weight);
    for (x, m) in shuffle_words(v, w) {
        out.add_term(x, CoeffExpr::constant(Rational::from_integer(m.into())))?;
    }
    Ok(out)
}

/// Outcome of [`grouplike_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct GrouplikeReport {
    pub passed: bool,
    pub pairs_checked: usize,
    pub worst_violation: f64,
    pub worst_pair: Option<(Word, Word)>,
}

/// Checks the shuffle relations `a(V) a(W) = Σ_{U ∈ V⧢W} a(U)` for every pair
/// with `|V| + |W| <= max_weight`, with coefficients evaluated by `eval`.
pub fn grouplike_check(
    a: &NCSeries,
    eval: &dyn Fn(&CoeffExpr) -> f64,
    tol: f64,
) -> GrouplikeReport {
    let n = a.max_weight();
    let words = Word::all_up_to_weight(&a.alphabet(), n);
    let values: BTreeMap<&Word, f64> = words
        .iter()
        .map(|w| (w, a.coeff_ref(w).map_or(0.0, eval)))
        .collect();
    let mut report =
        GrouplikeReport { passed: true, pairs_checked: 0, worst_violation: 0.0, worst_pair: None };
    for v in &words {
        for w in &words {
            if v.weight() + w.weight() > n || v > w {
                continue;
            }
            let rhs: f64 = shuffle_words(v, w)
                .iter()
                .map(|(u, m)| *m as f64 * values[u])
                .sum();
            let err = (values[v] * values[w] - rhs).abs();
            report.pairs_checked += 1;
            if !(err <= report.worst_violation) {
                report.worst_violation = err;
                report.worst_pair = Some((v.clone(), w.clone()));
            }
        }
    }
    report.passed = report.worst_violation <= tol;
    report
}
