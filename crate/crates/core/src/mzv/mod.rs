//! Shuffle-regularized multiple zeta values: exact regularization and a
//! numeric oracle.
//!
//! The oracle splits the iterated integral of a convergent word `w` at a
//! point `t` (by default `1/2`):
//!
//! ```text
//! ζ(w) = Σ_{w = UV} Li_{rev θ U}(1 - t) · Li_V(t)
//! ```
//!
//! where both factors are multiple polylogarithm series with geometric decay
//! and all terms positive. Arithmetic is binary fixed point on big integers.

pub mod real;
pub mod regularize;

use alloc::collections::BTreeMap;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

pub use real::Real;
pub use regularize::{shuffle_regularize, MzvLinearCombo, Regularizer};

use crate::coeff::{CoeffExpr, Rational, Symbol};
use crate::error::{Error, Result};
use crate::relations::{Form, Relation};
use crate::series::shuffle_words;
use crate::word::{Composition, Word};

/// Default number of significant decimal digits carried internally.
pub const DEFAULT_DIGITS: u32 = 40;

/// Extra bits carried on top of the requested precision.
const GUARD_BITS: u32 = 32;

/// Bits needed for `digits` decimal digits (plus guard bits).
pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) < 3.33
    digits * 333 / 100 + 1 + GUARD_BITS
}

/// Decimal digits needed to resolve `tol`, never below [`DEFAULT_DIGITS`].
pub fn digits_for_tol(tol: f64) -> u32 {
    let mut d = 0u32;
    let mut t = tol;
    while t < 1.0 && d < 1000 {
        t *= 10.0;
        d += 1;
    }
    DEFAULT_DIGITS.max(d + 10)
}

/// Smallest `N` with `2 (N + weight)^depth <= 2^(N - bits)`, the cut-off
/// for series evaluated at `1/2`.
pub fn truncation(bits: u32, weight: usize, depth: usize) -> u64 {
    truncation_at(&Rational::new(1.into(), 2.into()), bits, weight, depth)
}

/// Smallest `N` with `(N + weight)^depth z^N / (1 - z) <= 2^-bits` for
/// `0 < z < 1`.
pub fn truncation_at(z: &Rational, bits: u32, weight: usize, depth: usize) -> u64 {
    let (p, q) = (z.numer(), z.denom());
    let mut n = 1u64;
    let mut pn = p.clone();
    let mut qn = q.clone();
    loop {
        // (N+w)^d p^N 2^bits <= q^(N-1) (q - p)
        let lhs = (BigInt::from(n + weight as u64).pow(depth as u32) * &pn) << bits;
        let rhs = &qn / q * (q - p);
        if lhs <= rhs {
            return n;
        }
        n += 1;
        pn *= p;
        qn *= q;
    }
}

/// `Li_w(z) = Σ_{n1 > ... > nq >= 1} z^n1 / (n1^m1 ... nq^mq)` for a word
/// `w = X0^(m1-1) X1 ... X0^(mq-1) X1` (or the empty word, giving one) and
/// rational `0 < z < 1`.
pub fn polylog(w: &Word, z: &Rational, bits: u32) -> Result<Real> {
    let comp = Composition::from_word(w)?;
    let m = comp.parts();
    let q = m.len();
    if q == 0 {
        return Ok(Real::one(bits));
    }
    let n_max = truncation_at(z, bits, w.weight(), q);
    let zb = Real::from_rational(z, bits);
    let mut zn = Real::one(bits);
    // prefix[j] = Σ_{k < n} a_j(k); a_j(n) = prefix[j+1] / n^m_j.
    let mut prefix: alloc::vec::Vec<Real> = alloc::vec![Real::zero(bits); q + 1];
    let mut a: alloc::vec::Vec<Real> = alloc::vec![Real::zero(bits); q];
    let mut sum = Real::zero(bits);
    for n in 1..=n_max {
        let nb = BigInt::from(n);
        for j in (0..q).rev() {
            let den = Pow::pow(&nb, m[j]);
            a[j] = if j == q - 1 {
                Real::recip(&den, bits)
            } else {
                prefix[j + 1].div_int(&den)
            };
        }
        for j in 0..q {
            prefix[j] += &a[j];
        }
        zn = &zn * &zb;
        sum += &(&a[0] * &zn);
    }
    Ok(sum)
}

/// `Li_w(1/2)`.
pub fn polylog_half(w: &Word, bits: u32) -> Result<Real> {
    polylog(w, &Rational::new(1.into(), 2.into()), bits)
}

/// Numeric values of multiple zeta values, indexed by convergent words.
pub trait ZetaOracle {
    /// Fixed-point precision of the returned values.
    fn bits(&self) -> u32;

    /// `ζ(w)` for a convergent word.
    fn zeta(&self, w: &Word) -> Result<Real>;

    /// `π` at the oracle's precision.
    fn pi(&self) -> Real {
        Real::pi(self.bits())
    }
}

/// `ζ(w)` by splitting the iterated integral at `t`, given sources of
/// `Li_·(1 - t)` (`left`) and `Li_·(t)` (`right`) values:
/// `ζ(w) = Σ_{w = UV} Li_{rev θ U}(1 - t) · Li_V(t)`.
pub fn zeta_by_split(
    w: &Word,
    left: &mut dyn FnMut(&Word) -> Result<Real>,
    right: &mut dyn FnMut(&Word) -> Result<Real>,
) -> Result<Real> {
    if !w.is_convergent() {
        return Err(Error::NotConvergent(w.clone()));
    }
    let mut total: Option<Real> = None;
    for (u, v) in w.deconcatenations() {
        let term = &left(&u.theta()?.reverse())? * &right(&v)?;
        total = Some(match total {
            None => term,
            Some(t) => &t + &term,
        });
    }
    Ok(total.expect("at least one deconcatenation"))
}

/// Single-threaded oracle with memoized polylogarithm and zeta values.
///
/// At the default split point `1/2`, `ζ(w)` and `ζ(rev θ w)` are assembled
/// from the same products; other split points break that symmetry.
#[derive(Debug)]
pub struct MzvEngine {
    bits: u32,
    split: Rational,
    li: RefCell<BTreeMap<(Word, bool), Real>>,
    zeta: RefCell<BTreeMap<Word, Real>>,
    pi: Real,
}

impl MzvEngine {
    /// An engine carrying `digits` significant decimal digits.
    pub fn with_digits(digits: u32) -> Self {
        Self::with_split(digits, Rational::new(1.into(), 2.into()))
    }

    /// An engine splitting at `t`; `0 < t < 1` with both `t` and `1 - t`
    /// far enough from one for fast convergence (`1/3` or `1/2`, say).
    pub fn with_split(digits: u32, t: Rational) -> Self {
        assert!(t > Rational::zero() && t < Rational::one(), "split point outside (0, 1)");
        let bits = digits_to_bits(digits);
        MzvEngine {
            bits,
            split: t,
            li: RefCell::new(BTreeMap::new()),
            zeta: RefCell::new(BTreeMap::new()),
            pi: Real::pi(bits),
        }
    }

    pub fn split(&self) -> &Rational {
        &self.split
    }

    fn li(&self, w: &Word, complement: bool) -> Result<Real> {
        let key = (w.clone(), complement);
        if let Some(x) = self.li.borrow().get(&key) {
            return Ok(x.clone());
        }
        let z = if complement { Rational::one() - &self.split } else { self.split.clone() };
        let x = polylog(w, &z, self.bits)?;
        self.li.borrow_mut().insert(key, x.clone());
        Ok(x)
    }
}

impl Default for MzvEngine {
    fn default() -> Self {
        Self::with_digits(DEFAULT_DIGITS)
    }
}

impl ZetaOracle for MzvEngine {
    fn bits(&self) -> u32 {
        self.bits
    }

    fn zeta(&self, w: &Word) -> Result<Real> {
        if let Some(x) = self.zeta.borrow().get(w) {
            return Ok(x.clone());
        }
        let x = zeta_by_split(w, &mut |u| self.li(u, true), &mut |u| self.li(u, false))?;
        self.zeta.borrow_mut().insert(w.clone(), x.clone());
        Ok(x)
    }

    fn pi(&self) -> Real {
        self.pi.clone()
    }
}

/// `ζ(k)` to within `tol`.
pub fn mzv_numeric(k: &Composition, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositiveTolerance);
    }
    if k.depth() == 0 || !k.is_convergent() {
        return Err(Error::DivergentComposition);
    }
    let engine = MzvEngine::with_digits(digits_for_tol(tol));
    Ok(engine.zeta(&k.to_word())?.to_f64())
}

/// Value of an exact regularized combination.
pub fn evaluate_combo(c: &MzvLinearCombo, oracle: &dyn ZetaOracle) -> Result<Real> {
    let bits = oracle.bits();
    let mut acc = Real::from_rational(&c.constant, bits);
    for (w, q) in c.terms() {
        acc += &oracle.zeta(w)?.mul_rational(q);
    }
    Ok(acc)
}

/// `ζ⧢(w)` numerically.
pub fn zsha_value(w: &Word, reg: &mut Regularizer, oracle: &dyn ZetaOracle) -> Result<Real> {
    evaluate_combo(&reg.regularize(w)?, oracle)
}

/// `ζ⧢(w)` to within `tol`.
pub fn zsha_numeric(w: &Word, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositiveTolerance);
    }
    let combo = shuffle_regularize(w)?;
    // The combination's 1-norm multiplies the per-value error.
    let norm = combo.norm1();
    let scale = num_traits::ToPrimitive::to_f64(&norm).unwrap_or(1.0).max(1.0);
    let engine = MzvEngine::with_digits(digits_for_tol(tol / scale));
    Ok(evaluate_combo(&combo, &engine)?.to_f64())
}

/// A complex number `re + i·im` in fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn modulus(&self) -> Real {
        let (a, b) = (self.re.mantissa(), self.im.mantissa());
        Real::from_mantissa((a * a + b * b).sqrt(), self.re.bits())
    }
}

/// Value of an MZV-form expression with `PI = iπ` and `ZS[w] = ζ⧢(w)`.
pub fn evaluate_expr(
    e: &CoeffExpr,
    reg: &mut Regularizer,
    oracle: &dyn ZetaOracle,
) -> Result<Complex> {
    let bits = oracle.bits();
    let pi = oracle.pi();
    let mut values: BTreeMap<&Word, Real> = BTreeMap::new();
    let mut re = Real::zero(bits);
    let mut im = Real::zero(bits);
    for (m, c) in e.terms() {
        let mut v = Real::from_rational(c, bits);
        let mut pi_power = 0u32;
        for (s, k) in m.factors() {
            match s {
                Symbol::Pi => pi_power = *k,
                Symbol::Mu => return Err(Error::SymbolicForm),
                Symbol::Zs(w) => {
                    if !values.contains_key(w) {
                        values.insert(w, zsha_value(w, reg, oracle)?);
                    }
                    for _ in 0..*k {
                        v = &v * &values[w];
                    }
                }
            }
        }
        for _ in 0..pi_power {
            v = &v * &pi;
        }
        match pi_power % 4 {
            0 => re += &v,
            1 => im += &v,
            2 => re += &-&v,
            _ => im += &-&v,
        }
    }
    Ok(Complex { re, im })
}

/// Outcome of [`evaluate_relation`].
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub value: Complex,
    /// `|lhs|` as a float.
    pub residual: f64,
    pub passed: bool,
}

/// Evaluates `lhs` numerically; passes when `|lhs| <= tol`.
pub fn evaluate_relation(
    r: &Relation,
    tol: f64,
    reg: &mut Regularizer,
    oracle: &dyn ZetaOracle,
) -> Result<Residual> {
    if r.form == Form::Symbolic {
        return Err(Error::SymbolicForm);
    }
    let value = evaluate_expr(&r.lhs, reg, oracle)?;
    let residual = value.modulus().to_f64();
    Ok(Residual { value, residual, passed: residual <= tol })
}

/// Checks `ζ(w) = ζ(rev θ w)` numerically. An [`MzvEngine`] split at `1/2`
/// satisfies this by construction; split elsewhere for an actual test.
pub fn duality_check(w: &Word, tol: f64, oracle: &dyn ZetaOracle) -> Result<bool> {
    let dual = w.theta()?.reverse();
    for x in [w, &dual] {
        if !x.is_convergent() {
            return Err(Error::NotConvergent(x.clone()));
        }
    }
    let d = (&oracle.zeta(w)? - &oracle.zeta(&dual)?).abs().to_f64();
    Ok(d <= tol)
}

/// Canonical form of a polynomial in the `ZS` symbols modulo the shuffle
/// relations: each monomial `ZS[w1]...ZS[wk]` becomes `ζ⧢(w1 ⧢ ... ⧢ wk)`,
/// regularized. Two expressions agree as MZV identities forced by shuffle
/// multiplicativity iff their normal forms agree.
pub fn shuffle_normal_form(e: &CoeffExpr, reg: &mut Regularizer) -> Result<MzvLinearCombo> {
    let mut out = MzvLinearCombo::zero();
    for (m, c) in e.terms() {
        let mut words: BTreeMap<Word, Rational> = BTreeMap::from([(Word::empty(), Rational::one())]);
        for s in m.expanded() {
            let x = match s {
                Symbol::Zs(x) => x,
                _ => return Err(Error::SymbolicForm),
            };
            let mut next: BTreeMap<Word, Rational> = BTreeMap::new();
            for (u, a) in &words {
                for (v, k) in shuffle_words(u, x) {
                    let e = next.entry(v).or_insert_with(Rational::zero);
                    *e += a * Rational::from_integer(k.into());
                }
            }
            words = next;
        }
        for (u, a) in words {
            out.add_scaled(&reg.regularize(&u)?, &(a * c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    const ZETA3: f64 = 1.202_056_903_159_594_3;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn known_values() {
        let pi = core::f64::consts::PI;
        assert!((mzv_numeric(&comp("2"), 1e-12).unwrap() - pi * pi / 6.0).abs() < 1e-12);
        assert!((mzv_numeric(&comp("3"), 1e-12).unwrap() - ZETA3).abs() < 1e-12);
        let d = mzv_numeric(&comp("2,1"), 1e-12).unwrap() - mzv_numeric(&comp("3"), 1e-12).unwrap();
        assert!(d.abs() < 1e-10);
        assert_eq!(mzv_numeric(&comp("1,2"), 1e-12), Err(Error::DivergentComposition));
        assert_eq!(mzv_numeric(&comp("2"), 0.0), Err(Error::NonPositiveTolerance));
    }

    #[test]
    fn high_precision_zeta_two() {
        let e = MzvEngine::with_digits(60);
        let z2 = e.zeta(&w("X0.X1")).unwrap();
        let pi = e.pi();
        let want = (&pi * &pi).div_int(&BigInt::from(6));
        let diff = (&z2 - &want).abs();
        // 60 digits ~ 200 bits
        assert!(diff.mantissa().bits() < (e.bits() - 195) as u64, "{:?}", diff);
    }

    #[test]
    fn zsha_examples() {
        assert_eq!(zsha_numeric(&w("X0"), 1e-12).unwrap(), 0.0);
        assert!((zsha_numeric(&w("X1.X0.X0"), 1e-12).unwrap() - ZETA3).abs() < 1e-12);
        let z21 = mzv_numeric(&comp("2,1"), 1e-12).unwrap();
        assert!((zsha_numeric(&w("X0.X1.X1"), 1e-12).unwrap() - z21).abs() < 1e-14);
    }

    #[test]
    fn duality_examples() {
        let e = MzvEngine::with_split(DEFAULT_DIGITS, Rational::new(1.into(), 3.into()));
        assert!(duality_check(&w("X0.X0.X1"), 1e-12, &e).unwrap());
        assert!(duality_check(&w("X0.X1"), 1e-12, &e).unwrap());
        assert!(duality_check(&w("X1.X0"), 1e-12, &e).is_err());
    }

    #[test]
    fn shuffle_normal_form_detects_products() {
        let mut reg = Regularizer::new();
        let a = &CoeffExpr::zs(w("X0.X1")) * &CoeffExpr::zs(w("X0.X1"));
        let b = CoeffExpr::zs(w("X0.X1.X0.X1")).scale(&Rational::from_integer(2.into()))
            + CoeffExpr::zs(w("X0.X0.X1.X1")).scale(&Rational::from_integer(4.into()));
        assert_eq!(shuffle_normal_form(&a, &mut reg).unwrap(), shuffle_normal_form(&b, &mut reg).unwrap());
    }
}
