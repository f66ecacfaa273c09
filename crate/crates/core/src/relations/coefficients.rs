//! The coefficients `C2,W`, `C3,W` and `C5,W` of the 2-cycle, hexagon and
//! pentagon products, each computed by a closed formula and by expanding the
//! product of truncated series.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::expand_x51;
use crate::coeff::{CoeffExpr, Rational};
use crate::error::{Error, Result};
use crate::series::NCSeries;
use crate::word::{Alphabet, Letter, Word};

/// `k!` as a rational.
fn factorial(k: usize) -> Rational {
    Rational::from_integer((1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Every way to cut `0..n` into `parts` consecutive (possibly empty) ranges,
/// as the `parts - 1` cut positions, in lexicographic order.
pub fn splittings(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in start..=n {
            cur.push(c);
            rec(c, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, parts.saturating_sub(1), &mut Vec::new(), &mut out);
    out
}

/// The pieces of `w` for a list of cut positions.
pub fn cut(w: &Word, cuts: &[usize]) -> Vec<Word> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0;
    for &c in cuts {
        out.push(w.slice(prev, c));
        prev = c;
    }
    out.push(w.slice(prev, w.weight()));
    out
}

/// `C2,W = Σ_{U1 U2 = W} ZS[U1] ZS[θ(U2)]`.
pub fn c2_coefficient(w: &Word) -> Result<CoeffExpr> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Alphabet::AX.check(w)?;
    let mut out = CoeffExpr::zero();
    for (u1, u2) in w.deconcatenations() {
        out += &CoeffExpr::zs(u1) * &CoeffExpr::zs(u2.theta()?);
    }
    Ok(out)
}

/// One element `(V1, k1, ..., Vp, kp)` of `decx(W, Xi)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecX {
    pub parts: Vec<(Word, usize)>,
}

impl DecX {
    /// `V1 Xi^k1 ... Vp Xi^kp`.
    pub fn reconstruct(&self, xi: Letter) -> Word {
        let mut out = Word::empty();
        for (v, k) in &self.parts {
            out = out.concat(v).concat(&Word::power(xi, *k));
        }
        out
    }

    /// `|V1| + ... + |Vp|`.
    pub fn v_weight(&self) -> usize {
        self.parts.iter().map(|(v, _)| v.weight()).sum()
    }

    /// The word `a^|V1| b^k1 ... a^|Vp| b^kp`.
    pub fn pattern(&self, a: Letter, b: Letter) -> Word {
        let mut ls = Vec::new();
        for (v, k) in &self.parts {
            ls.extend(core::iter::repeat_n(a, v.weight()));
            ls.extend(core::iter::repeat_n(b, *k));
        }
        Word::new(ls)
    }
}

/// All tuples `(V1, k1, ..., Vp, kp)` with `W = V1 Xi^k1 ... Vp Xi^kp`,
/// `V2..Vp` non-empty, `k1..k(p-1) > 0` and `kp >= 0`.
pub fn decx(w: &Word, xi: Letter) -> Vec<DecX> {
    fn rec(w: &[Letter], xi: Letter, pos: usize, cur: &mut Vec<(Word, usize)>, out: &mut Vec<DecX>) {
        let n = w.len();
        let min_q = if cur.is_empty() { pos } else { pos + 1 };
        for q in min_q..=n {
            let v = Word::from_letters(&w[pos..q]);
            let run = w[q..].iter().take_while(|&&l| l == xi).count();
            if q + run == n {
                cur.push((v.clone(), run));
                out.push(DecX { parts: cur.clone() });
                cur.pop();
            }
            for k in 1..=run {
                if q + k < n {
                    cur.push((v.clone(), k));
                    rec(w, xi, q + k, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(w.letters(), xi, 0, &mut Vec::new(), &mut out);
    out
}

/// Coefficient of `W` in `Φ(X∞, X0)` (`xi = X0`) or `Φ(X1, X∞)` (`xi = X1`)
/// after substituting `X∞ = -X0 - X1`.
pub fn phi_inf_coefficient(w: &Word, xi: Letter) -> CoeffExpr {
    let (a, b) = match xi {
        Letter::X0 => (Letter::X0, Letter::X1),
        _ => (Letter::X1, Letter::X0),
    };
    let mut out = CoeffExpr::zero();
    for d in decx(w, xi) {
        out += CoeffExpr::zs(d.pattern(a, b)).scale(&sign(d.v_weight()));
    }
    out
}

/// Coefficient of `W` in `exp(μ/2 · X)` for `X = X0`, `X1` or `X∞ = -X0-X1`.
pub fn exp_coefficient(w: &Word, x: Letter) -> CoeffExpr {
    let n = w.weight();
    let ok = match x {
        Letter::XInf => true,
        l => w.letters().iter().all(|&m| m == l),
    };
    if !ok {
        return CoeffExpr::zero();
    }
    let s = if x == Letter::XInf { sign(n) } else { Rational::one() };
    let c = s / (factorial(n) * Rational::from_integer(BigInt::from(2).pow(n as u32)));
    CoeffExpr::mu().pow(n as u32).scale(&c)
}

/// `C3,W` by the six-fold splitting formula, with `MU` symbolic.
pub fn c3_coefficient(w: &Word) -> Result<CoeffExpr> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Alphabet::AX.check(w)?;
    let n = w.weight();
    let mut cache: BTreeMap<(usize, usize, u8), CoeffExpr> = BTreeMap::new();
    let mut factor = |slot: u8, i: usize, j: usize| -> CoeffExpr {
        cache
            .entry((i, j, slot))
            .or_insert_with(|| {
                let u = w.slice(i, j);
                match slot {
                    0 => exp_coefficient(&u, Letter::X0),
                    1 => phi_inf_coefficient(&u, Letter::X0),
                    2 => exp_coefficient(&u, Letter::XInf),
                    3 => phi_inf_coefficient(&u, Letter::X1),
                    4 => exp_coefficient(&u, Letter::X1),
                    _ => CoeffExpr::zs(u),
                }
            })
            .clone()
    };
    let mut out = CoeffExpr::zero();
    for cuts in splittings(n, 6) {
        let mut bounds = Vec::with_capacity(7);
        bounds.push(0);
        bounds.extend_from_slice(&cuts);
        bounds.push(n);
        let mut prod = CoeffExpr::one();
        for slot in 0..6u8 {
            let f = factor(slot, bounds[slot as usize], bounds[slot as usize + 1]);
            prod = &prod * &f;
            if prod.is_zero() {
                break;
            }
        }
        out += prod;
    }
    Ok(out)
}

/// `Φ(a, b) = Σ_{|w| <= n} ZS[w] w(a, b)` over `alphabet`, where `w(a, b)`
/// replaces `X0` by `a` and `X1` by `b`.
pub fn generic_associator(a: Letter, b: Letter, alphabet: Alphabet, max_weight: usize) -> Result<NCSeries> {
    let mut out = NCSeries::zero(alphabet, max_weight);
    for w in Word::all_up_to_weight(&Alphabet::AX, max_weight) {
        let img = Word::new(
            w.letters()
                .iter()
                .map(|&l| if l == Letter::X0 { a } else { b })
                .collect(),
        );
        out.add_term(img, CoeffExpr::zs(w))?;
    }
    Ok(out)
}

/// All `C3,W` with `|W| <= max_weight`, by expanding
/// `e^{μ/2 X0} Φ(X∞,X0) e^{μ/2 X∞} Φ(X1,X∞) e^{μ/2 X1} Φ(X0,X1)` and then
/// substituting `X∞ = -X0 - X1`.
pub fn c3_via_product(max_weight: usize) -> Result<BTreeMap<Word, CoeffExpr>> {
    let al = Alphabet::AX_INF;
    let n = max_weight;
    let half_mu = CoeffExpr::mu().scale(&Rational::new(1.into(), 2.into()));
    let e = |l: Letter| NCSeries::monomial(al, n, Word::letter(l), half_mu.clone())?.exp();
    let factors = [
        e(Letter::X0)?,
        generic_associator(Letter::XInf, Letter::X0, al, n)?,
        e(Letter::XInf)?,
        generic_associator(Letter::X1, Letter::XInf, al, n)?,
        e(Letter::X1)?,
        generic_associator(Letter::X0, Letter::X1, al, n)?,
    ];
    let mut prod = NCSeries::one(al, n);
    for f in &factors {
        prod = prod.mul(f)?;
    }
    let minus_one = -Rational::one();
    let sub = prod.substitute_letters(Alphabet::AX, &|l| {
        let terms: Vec<(Letter, Rational)> = match l {
            Letter::XInf => alloc::vec![(Letter::X0, minus_one.clone()), (Letter::X1, minus_one.clone())],
            Letter::X0 | Letter::X1 => alloc::vec![(l, Rational::one())],
            _ => return None,
        };
        NCSeries::linear(Alphabet::AX, n, terms).ok()
    })?;
    Ok(sub.into_terms())
}

/// `ρi(w)`, or `None` when some letter is sent to zero.
pub fn rho(i: usize, w: &Word) -> Option<Word> {
    use Letter::{X0, X1, X12, X23, X24, X34, X45};
    w.letters()
        .iter()
        .map(|&l| match (i, l) {
            (1, X12) => Some(X0),
            (1, X23) => Some(X1),
            (2, X34) => Some(X0),
            (2, X45) => Some(X1),
            (3, X12) => Some(X1),
            (3, X23 | X34 | X24) => Some(X0),
            (4, X23) => Some(X0),
            (4, X34) => Some(X1),
            (5, X23 | X34 | X24) => Some(X1),
            (5, X45) => Some(X0),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(Word::new)
}

/// Binomial coefficient, used for the splitting-count check.
pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The non-vanishing 5-part splittings of `w` as `(ρ1(U1), ..., ρ5(U5))`.
pub fn rho_splittings(w: &Word) -> Vec<[Word; 5]> {
    let n = w.weight();
    let all = splittings(n, 5);
    debug_assert_eq!(all.len(), binomial(n + 4, 4));
    let mut out = Vec::new();
    'outer: for cuts in all {
        let pieces = cut(w, &cuts);
        let mut imgs: [Word; 5] = Default::default();
        for (i, p) in pieces.iter().enumerate() {
            match rho(i + 1, p) {
                Some(x) => imgs[i] = x,
                None => continue 'outer,
            }
        }
        out.push(imgs);
    }
    out
}

/// `C5,W = Σ_{U1...U5 = W} Π ZS[ρi(Ui)]` with `ZS[0] = 0`.
pub fn c5_coefficient(w: &Word) -> Result<CoeffExpr> {
    Alphabet::AB.check(w)?;
    let mut out = CoeffExpr::zero();
    for imgs in rho_splittings(w) {
        let mut prod = CoeffExpr::one();
        for x in imgs {
            prod = &prod * &CoeffExpr::zs(x);
        }
        out += prod;
    }
    Ok(out)
}

/// All `C5,W` for words over `AB` with `|W| <= max_weight`, by expanding
/// `Φ(X12,X23) Φ(X34,X45) Φ(X51,X12) Φ(X23,X34) Φ(X45,X51)` with
/// `X51 = X23 + X24 + X34`.
pub fn c5_via_product(max_weight: usize) -> Result<BTreeMap<Word, CoeffExpr>> {
    use Letter::{X12, X23, X34, X45, X51};
    let n = max_weight;
    let pairs = [(X12, X23), (X34, X45), (X51, X12), (X23, X34), (X45, X51)];
    let mut prod = NCSeries::one(Alphabet::AB, n);
    for (a, b) in pairs {
        let f = expand_x51(&generic_associator(a, b, Alphabet::AB51, n)?)?;
        prod = prod.mul(&f)?;
    }
    Ok(prod.into_terms())
}
