//! The commutative coefficient ring: polynomials over `Q` in the symbols
//! `PI`, `MU` and `ZS[w]` (one per word `w` over `{X0, X1}`).
//!
//! `ZS[w]` stands for the associator coefficient `Z_w` in symbolic form and
//! for the regularized value `ζ⧢(w)` once a relation has been converted to
//! MZV form; `PI` stands for `iπ` and `MU` for `μ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::word::Word;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formal indeterminates. Declaration order gives `PI < MU < ZS[w]`, and
/// `ZS` symbols follow the word order (weight, then lexicographic).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Pi,
    Mu,
    Zs(Word),
}

impl Symbol {
    /// Grading: `|w|` for `ZS[w]`, one for `PI` and `MU`.
    pub fn weight(&self) -> usize {
        match self {
            Symbol::Pi | Symbol::Mu => 1,
            Symbol::Zs(w) => w.weight(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pi => f.write_str("PI"),
            Symbol::Mu => f.write_str("MU"),
            Symbol::Zs(w) => write!(f, "ZS[{w}]"),
        }
    }
}

/// A product of symbol powers, kept sorted by symbol with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Monomial(alloc::vec![(s, 1)])
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|(s, e)| s.weight() * *e as usize).sum()
    }

    pub fn power_of(&self, s: &Symbol) -> u32 {
        self.0.iter().find(|(t, _)| t == s).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Expanded list of factors with repetition, e.g. `ZS[X0]^2` gives two entries.
    pub fn expanded(&self) -> impl Iterator<Item = &Symbol> {
        self.0
            .iter()
            .flat_map(|(s, e)| core::iter::repeat_n(s, *e as usize))
    }

    pub fn from_factors(factors: impl IntoIterator<Item = Symbol>) -> Monomial {
        factors
            .into_iter()
            .fold(Monomial::one(), |m, s| m.mul(&Monomial::symbol(s)))
    }
}

/// An exact multivariate polynomial with rational coefficients.
///
/// Zero is the empty term map; terms iterate in monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct CoeffExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl CoeffExpr {
    pub fn zero() -> Self {
        CoeffExpr::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CoeffExpr { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Rational::one(), Monomial::symbol(s))
    }

    /// `ZS[w]`, with the convention `ZS[∅] = 1`.
    pub fn zs(w: Word) -> Self {
        if w.is_empty() {
            Self::one()
        } else {
            Self::symbol(Symbol::Zs(w))
        }
    }

    pub fn pi() -> Self {
        Self::symbol(Symbol::Pi)
    }

    pub fn mu() -> Self {
        Self::symbol(Symbol::Mu)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term when the expression has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
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
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoeffExpr {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Is every term of grading `weight`?
    pub fn is_homogeneous(&self, weight: usize) -> bool {
        self.terms.keys().all(|m| m.weight() == weight)
    }

    /// Ring morphism fixing the rationals: each symbol is replaced by
    /// `f(symbol)` when that is `Some`, and kept otherwise.
    pub fn substitute(&self, f: impl Fn(&Symbol) -> Option<CoeffExpr>) -> CoeffExpr {
        let mut cache: BTreeMap<Symbol, CoeffExpr> = BTreeMap::new();
        let mut out = CoeffExpr::zero();
        for (m, c) in &self.terms {
            let mut acc = CoeffExpr::constant(c.clone());
            for (s, e) in m.factors() {
                let img = cache
                    .entry(s.clone())
                    .or_insert_with(|| f(s).unwrap_or_else(|| CoeffExpr::symbol(s.clone())));
                acc = &acc * &img.pow(*e);
            }
            out += acc;
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> CoeffExpr {
        CoeffExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Symbols occurring in the expression.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| s))
    }

    /// Is `self = c · other` for some non-zero rational `c`? Returns `c`.
    pub fn proportional_to(&self, other: &CoeffExpr) -> Option<Rational> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::one());
        }
        let (m0, c0) = other.terms.iter().next()?;
        let ratio = self.terms.get(m0)? / c0;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Renders with a custom symbol printer. Terms are joined with ` + ` /
    /// ` - ` and an explicit `*` between factors.
    pub fn render(&self, sym: &dyn Fn(&Symbol) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(format!("{a}"));
            }
            for (s, e) in m.factors() {
                if *e == 1 {
                    parts.push(sym(s));
                } else {
                    parts.push(format!("{}^{e}", sym(s)));
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|s| format!("{s}")))
    }
}

impl From<Rational> for CoeffExpr {
    fn from(c: Rational) -> Self {
        CoeffExpr::constant(c)
    }
}

impl AddAssign<CoeffExpr> for CoeffExpr {
    fn add_assign(&mut self, rhs: CoeffExpr) {
        for (m, c) in rhs.terms {
            self.add_term(c, m);
        }
    }
}

impl AddAssign<&CoeffExpr> for CoeffExpr {
    fn add_assign(&mut self, rhs: &CoeffExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl Add for &CoeffExpr {
    type Output = CoeffExpr;
    fn add(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoeffExpr {
    type Output = CoeffExpr;
    fn add(mut self, rhs: CoeffExpr) -> CoeffExpr {
        self += rhs;
        self
    }
}

impl Neg for &CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        CoeffExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        -&self
    }
}

impl Sub for &CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl Sub for CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: CoeffExpr) -> CoeffExpr {
        &self - &rhs
    }
}

impl Mul for &CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut out = CoeffExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }
}

impl Mul for CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: CoeffExpr) -> CoeffExpr {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn zs(s: &str) -> CoeffExpr {
        CoeffExpr::zs(w(s))
    }

    #[test]
    fn ring_basics() {
        let a = zs("X0") + zs("X1");
        let b = zs("X0") - zs("X1");
        let p = &a * &b;
        let expected = &zs("X0").pow(2) - &zs("X1").pow(2);
        assert_eq!(p, expected);
        assert!((&a - &a).is_zero());
        assert_eq!(zs("1"), CoeffExpr::one());
    }

    #[test]
    fn canonical_symbol_order() {
        assert!(Symbol::Pi < Symbol::Mu);
        assert!(Symbol::Mu < Symbol::Zs(w("X0")));
        assert!(Symbol::Zs(w("X1")) < Symbol::Zs(w("X0.X0")));
        let m = Monomial::from_factors([Symbol::Zs(w("X0")), Symbol::Pi, Symbol::Zs(w("X0"))]);
        assert_eq!(m.factors()[0], (Symbol::Pi, 1));
        assert_eq!(m.factors()[1], (Symbol::Zs(w("X0")), 2));
    }

    #[test]
    fn substitution_is_a_ring_morphism() {
        let e = &CoeffExpr::mu() * &zs("X0.X1") + CoeffExpr::mu().pow(2);
        let s = e.substitute(|s| match s {
            Symbol::Mu => Some(CoeffExpr::pi().scale(&int(2))),
            _ => None,
        });
        let expected =
            &CoeffExpr::pi().scale(&int(2)) * &zs("X0.X1") + CoeffExpr::pi().pow(2).scale(&int(4));
        assert_eq!(s, expected);
    }

    #[test]
    fn rendering() {
        let e = zs("X0").pow(2).scale(&int(2)) - &zs("X1") * &zs("X0");
        assert_eq!(e.to_string(), "-ZS[X0]*ZS[X1] + 2*ZS[X0]^2");
        assert_eq!(CoeffExpr::zero().to_string(), "0");
        assert_eq!(CoeffExpr::constant(rat(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn proportionality() {
        let a = zs("X0") - zs("X1");
        let b = a.scale(&int(-2));
        assert_eq!(b.proportional_to(&a), Some(int(-2)));
        assert_eq!((zs("X0") + zs("X1")).proportional_to(&a), None);
    }
}
