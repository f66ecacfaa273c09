//! Rewriting in the enveloping algebra of the 5-strand sphere braid Lie
//! algebra, presented on `X12, X23, X34, X45, X24` (and `X51`, eliminated on
//! input), into the basis `B4` of monomials `U·V`, `U ∈ {X24,X34,X45}*`,
//! `V ∈ {X12,X23}*`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::coeff::{CoeffExpr, Rational};
use crate::error::{Error, Result};
use crate::series::NCSeries;
use crate::word::{Alphabet, Letter, Word};

use Letter::{X12, X23, X24, X34, X45, X51};

/// Integer linear combination of words.
pub type LinComb = BTreeMap<Word, i64>;

/// Which reducible pair [`relcom_step`] rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Is `w` a `B4` monomial (no `X12`/`X23` before an `X24`/`X34`/`X45`, no `X51`)?
pub fn is_b4(w: &Word) -> bool {
    let mut seen_top = false;
    for &l in w.letters() {
        if l.is_top() {
            seen_top = true;
        } else if l.is_kernel() {
            if seen_top {
                return false;
            }
        } else {
            return false;
        }
    }
    true
}

/// A `B4` monomial `u·v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct B4Monomial(Word);

impl B4Monomial {
    pub fn new(w: Word) -> Result<Self> {
        if is_b4(&w) {
            Ok(B4Monomial(w))
        } else {
            Err(Error::NotB4(w))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    fn split(&self) -> usize {
        self.0.letters().iter().take_while(|l| l.is_kernel()).count()
    }

    /// The part over `{X24, X34, X45}`.
    pub fn u(&self) -> Word {
        self.0.slice(0, self.split())
    }

    /// The part over `{X12, X23}`.
    pub fn v(&self) -> Word {
        self.0.slice(self.split(), self.0.weight())
    }
}

impl core::fmt::Display for B4Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.fmt(f)
    }
}

/// All `B4` monomials of the given degree, in increasing lexicographic order
/// for `X24 < X34 < X45 < X12 < X23`.
pub fn enumerate_b4(degree: usize) -> Vec<B4Monomial> {
    Word::all_of_weight(&Alphabet::AB, degree)
        .into_iter()
        .filter(is_b4)
        .map(B4Monomial)
        .collect()
}

/// Termination measure: for each `X12`/`X23`, the number of letters to its
/// right, summed. Every rewrite either moves a top letter one step right or
/// replaces it by a kernel letter, so it strictly decreases.
pub fn measure(w: &Word) -> usize {
    let n = w.weight();
    w.letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_top())
        .map(|(i, _)| n - 1 - i)
        .sum()
}

fn rule(a: Letter, b: Letter) -> Option<&'static [(i64, [Letter; 2])]> {
    Some(match (a, b) {
        (X12, X34) => &[(1, [X34, X12])],
        (X12, X45) => &[(1, [X45, X12])],
        (X23, X45) => &[(1, [X45, X23])],
        (X12, X24) => &[
            (1, [X34, X24]),
            (1, [X45, X24]),
            (-1, [X24, X34]),
            (-1, [X24, X45]),
            (1, [X24, X12]),
        ],
        (X23, X24) => &[(1, [X24, X34]), (-1, [X34, X24]), (1, [X24, X23])],
        (X23, X34) => &[(1, [X34, X24]), (-1, [X24, X34]), (1, [X34, X23])],
        _ => return None,
    })
}

/// One commutation rewrite at the leftmost (or rightmost) reducible adjacent
/// pair. `None` when `w` is already a `B4` monomial.
pub fn relcom_step(w: &Word, strategy: Strategy) -> Option<LinComb> {
    let ls = w.letters();
    let mut positions = (0..ls.len().saturating_sub(1)).filter(|&i| rule(ls[i], ls[i + 1]).is_some());
    let i = match strategy {
        Strategy::Leftmost => positions.next()?,
        Strategy::Rightmost => positions.next_back()?,
    };
    let mut out = LinComb::new();
    for (c, pair) in rule(ls[i], ls[i + 1])? {
        let mut v = Vec::with_capacity(ls.len());
        v.extend_from_slice(&ls[..i]);
        v.extend_from_slice(pair);
        v.extend_from_slice(&ls[i + 2..]);
        let e = out.entry(Word::new(v)).or_insert(0);
        *e += c;
    }
    out.retain(|_, c| *c != 0);
    Some(out)
}

/// Replaces every `X51` by `X23 + X24 + X34`.
pub fn expand_x51_word(w: &Word) -> LinComb {
    let mut acc: LinComb = BTreeMap::from([(Word::empty(), 1)]);
    for &l in w.letters() {
        let images: &[Letter] = if l == X51 { &[X23, X24, X34] } else { &[l] };
        let mut next = LinComb::new();
        for (u, c) in &acc {
            for &m in images {
                let mut x = u.clone();
                x.push(m);
                *next.entry(x).or_insert(0) += c;
            }
        }
        acc = next;
    }
    acc
}

/// [`expand_x51_word`] applied termwise; the result is over `AB`.
pub fn expand_x51(a: &NCSeries) -> Result<NCSeries> {
    let mut out = NCSeries::zero(Alphabet::AB, a.max_weight());
    for (w, c) in a.terms() {
        Alphabet::AB51.check(w)?;
        for (x, m) in expand_x51_word(w) {
            out.add_term(x, c.scale(&Rational::from_integer(m.into())))?;
        }
    }
    Ok(out)
}

/// Default budget of rewrite steps for an input word of weight `n`.
pub fn default_budget(n: usize) -> usize {
    let fact: usize = (1..=n).product();
    10 * fact
}

/// Observer invoked as `(input, output_terms)` on every rewrite step.
pub type StepHook<'a> = &'a mut dyn FnMut(&Word, &LinComb);

/// `B4` expansion of a single word (with `X51` allowed), as integer
/// coefficients.
pub fn normal_form_word(
    w: &Word,
    strategy: Strategy,
    budget: usize,
    mut hook: Option<StepHook<'_>>,
) -> Result<LinComb> {
    Alphabet::AB51.check(w)?;
    // Largest measure first: rewriting never produces a word of measure at
    // least the current one, so every word is rewritten at most once.
    let mut pending: BTreeMap<(usize, Word), i64> = BTreeMap::new();
    let mut done = LinComb::new();
    for (x, c) in expand_x51_word(w) {
        if is_b4(&x) {
            add_checked(&mut done, x, c, w)?;
        } else {
            pending.insert((measure(&x), x), c);
        }
    }
    let mut steps = 0usize;
    while let Some(((_, x), c)) = pending.pop_last() {
        if c == 0 {
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::RewriteBudget { word: w.clone(), budget });
        }
        let out = relcom_step(&x, strategy).expect("pending words are reducible");
        if let Some(h) = hook.as_mut() {
            h(&x, &out);
        }
        for (y, d) in out {
            let cd = c.checked_mul(d).ok_or_else(|| Error::Overflow(w.clone()))?;
            if is_b4(&y) {
                add_checked(&mut done, y, cd, w)?;
            } else {
                let e = pending.entry((measure(&y), y)).or_insert(0);
                *e = e.checked_add(cd).ok_or_else(|| Error::Overflow(w.clone()))?;
            }
        }
    }
    done.retain(|_, c| *c != 0);
    Ok(done)
}

fn add_checked(map: &mut LinComb, x: Word, c: i64, src: &Word) -> Result<()> {
    let e = map.entry(x).or_insert(0);
    *e = e.checked_add(c).ok_or_else(|| Error::Overflow(src.clone()))?;
    Ok(())
}

/// The structure coefficients `l_{b,w}` with `w = Σ_b l_{b,w} b`.
pub fn l_coefficients(w: &Word) -> Result<BTreeMap<B4Monomial, i64>> {
    Ok(normal_form_word(w, Strategy::Leftmost, default_budget(w.weight()), None)?
        .into_iter()
        .map(|(b, c)| (B4Monomial(b), c))
        .collect())
}

/// Normal form of a series over `AB` or `AB+X51`; the result is over `AB`
/// and supported on `B4`.
pub fn normal_form(a: &NCSeries) -> Result<NCSeries> {
    normal_form_with(a, Strategy::Leftmost)
}

pub fn normal_form_with(a: &NCSeries, strategy: Strategy) -> Result<NCSeries> {
    let mut out = NCSeries::zero(Alphabet::AB, a.max_weight());
    for (w, c) in a.terms() {
        for (b, m) in normal_form_word(w, strategy, default_budget(w.weight()), None)? {
            out.add_term(b, c.scale(&Rational::from_integer(m.into())))?;
        }
    }
    Ok(out)
}

/// The algebra morphism `f4`: `X24, X34, X45 ↦ 0`, `X12 ↦ X0`, `X23 ↦ X1`
/// (hence `X51 ↦ X1`).
pub fn f4_projection(a: &NCSeries) -> Result<NCSeries> {
    let mut out = NCSeries::zero(Alphabet::AX, a.max_weight());
    for (w, c) in a.terms() {
        Alphabet::AB51.check(w)?;
        if let Some(x) = f4_word(w) {
            out.add_term(x, c.clone())?;
        }
    }
    Ok(out)
}

/// Image of a single word under `f4`, `None` for zero.
pub fn f4_word(w: &Word) -> Option<Word> {
    w.letters()
        .iter()
        .map(|&l| match l {
            X12 => Some(Letter::X0),
            X23 | X51 => Some(Letter::X1),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(Word::new)
}

/// The matrix `(l_{b,W})` for one degree: rows are `B4` monomials in
/// canonical order, columns are all words over `AB` of that degree.
#[derive(Debug, Clone)]
pub struct LTable {
    degree: usize,
    basis: Vec<B4Monomial>,
    rows: BTreeMap<B4Monomial, BTreeMap<Word, i64>>,
}

impl LTable {
    pub fn new(degree: usize) -> Result<Self> {
        let basis = enumerate_b4(degree);
        let mut rows: BTreeMap<B4Monomial, BTreeMap<Word, i64>> =
            basis.iter().map(|b| (b.clone(), BTreeMap::new())).collect();
        for w in Word::all_of_weight(&Alphabet::AB, degree) {
            for (b, c) in l_coefficients(&w)? {
                rows.get_mut(&b).expect("normal form lies in B4").insert(w.clone(), c);
            }
        }
        Ok(LTable { degree, basis, rows })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[B4Monomial] {
        &self.basis
    }

    /// `W ↦ l_{b,W}` over the words `W` with a non-zero coefficient.
    pub fn row(&self, b: &B4Monomial) -> Option<&BTreeMap<Word, i64>> {
        self.rows.get(b)
    }
}

/// Convenience: a series `Σ c_w w` over `AB51` at the weight of its longest word.
pub fn series_of_words(words: &[(Word, i64)]) -> Result<NCSeries> {
    let n = words.iter().map(|(w, _)| w.weight()).max().unwrap_or(0);
    NCSeries::from_terms(
        Alphabet::AB51,
        n,
        words
            .iter()
            .map(|(w, c)| (w.clone(), CoeffExpr::constant(Rational::from_integer((*c).into())))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn comb(terms: &[(&str, i64)]) -> LinComb {
        terms.iter().map(|(s, c)| (w(s), *c)).collect()
    }

    #[test]
    fn x51_expansion() {
        assert_eq!(expand_x51_word(&w("X51")), comb(&[("X23", 1), ("X24", 1), ("X34", 1)]));
        assert_eq!(
            expand_x51_word(&w("X12.X51")),
            comb(&[("X12.X23", 1), ("X12.X24", 1), ("X12.X34", 1)])
        );
        assert_eq!(expand_x51_word(&w("X51.X51")).len(), 9);
    }

    #[test]
    fn single_rewrites() {
        assert_eq!(
            relcom_step(&w("X23.X24"), Strategy::Leftmost).unwrap(),
            comb(&[("X24.X34", 1), ("X34.X24", -1), ("X24.X23", 1)])
        );
        assert_eq!(
            relcom_step(&w("X12.X24"), Strategy::Leftmost).unwrap(),
            comb(&[
                ("X34.X24", 1),
                ("X45.X24", 1),
                ("X24.X34", -1),
                ("X24.X45", -1),
                ("X24.X12", 1)
            ])
        );
        assert_eq!(relcom_step(&w("X24.X12"), Strategy::Leftmost), None);
    }

    #[test]
    fn normal_forms() {
        let nf = |s: &str| normal_form_word(&w(s), Strategy::Leftmost, 1000, None).unwrap();
        assert_eq!(nf("X51"), comb(&[("X23", 1), ("X24", 1), ("X34", 1)]));
        assert_eq!(
            nf("X23.X34"),
            comb(&[("X34.X24", 1), ("X24.X34", -1), ("X34.X23", 1)])
        );
        for d in 0..=3 {
            for b in enumerate_b4(d) {
                assert_eq!(nf(&b.to_string()), comb(&[(&b.to_string(), 1)]));
            }
        }
    }

    #[test]
    fn b4_counts() {
        let counts: Vec<usize> = (0..=3).map(|d| enumerate_b4(d).len()).collect();
        assert_eq!(counts, [1, 5, 19, 65]);
        let d1: Vec<String> = enumerate_b4(1).iter().map(|b| b.to_string()).collect();
        assert_eq!(d1, ["X24", "X34", "X45", "X12", "X23"]);
    }

    #[test]
    fn monomial_parts() {
        let b = B4Monomial::new(w("X34.X24.X12")).unwrap();
        assert_eq!(b.u(), w("X34.X24"));
        assert_eq!(b.v(), w("X12"));
        assert!(B4Monomial::new(w("X12.X24")).is_err());
    }

    #[test]
    fn projection() {
        let s = series_of_words(&[(w("X12.X23"), 1)]).unwrap();
        assert_eq!(f4_projection(&s).unwrap().coeff(&w("X0.X1")), CoeffExpr::one());
        assert!(f4_projection(&series_of_words(&[(w("X24"), 1)]).unwrap()).unwrap().is_zero());
        assert_eq!(f4_word(&w("X51")), Some(w("X1")));
    }

    #[test]
    fn measure_decreases_on_known_counterexample_to_kernel_count() {
        let x = w("X23.X12.X24");
        for (y, _) in relcom_step(&x, Strategy::Leftmost).unwrap() {
            assert!(measure(&y) < measure(&x));
        }
    }

    use alloc::string::String;
}
