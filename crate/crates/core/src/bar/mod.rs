//! The bar construction on `M0,5` in the coordinates `(x, y)` where the five
//! holomorphic 1-forms are
//!
//! ```text
//! ω12 = dx/x   ω23 = dx/(x-1)   ω34 = dy/(y-1)   ω45 = dy/y
//! ω24 = (y dx + x dy)/(xy-1)
//! ```
//!
//! A bar tensor `[ω_a|ω_b|...]` is stored as the word `Xa Xb ...` over `AB`.

pub mod rational;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

pub use rational::{Poly2, RatFn};

use crate::braid::{enumerate_b4, B4Monomial, LTable};
use crate::coeff::{int, CoeffExpr, Rational};
use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Span};
use crate::mzv::{evaluate_expr, Complex, Regularizer, ZetaOracle};
use crate::series::shuffle_words;
use crate::word::{Alphabet, Letter, Word};

/// `f_x dx + f_y dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form1 {
    pub fx: RatFn,
    pub fy: RatFn,
}

/// The explicit form attached to a letter of `AB`.
pub fn form_of(letter: Letter) -> Result<Form1> {
    let one = int(1);
    Ok(match letter {
        Letter::X12 => Form1 { fx: RatFn::simple(one, 0), fy: RatFn::zero() },
        Letter::X23 => Form1 { fx: RatFn::simple(one, 1), fy: RatFn::zero() },
        Letter::X34 => Form1 { fx: RatFn::zero(), fy: RatFn::simple(one, 3) },
        Letter::X45 => Form1 { fx: RatFn::zero(), fy: RatFn::simple(one, 2) },
        Letter::X24 => Form1 {
            fx: RatFn::new(Poly2::y(), [0, 0, 0, 0, 1]),
            fy: RatFn::new(Poly2::x(), [0, 0, 0, 0, 1]),
        },
        other => return Err(Error::NoForm(other)),
    })
}

/// Coefficient of `dx ∧ dy` in `a ∧ b`.
pub fn wedge(a: &Form1, b: &Form1) -> RatFn {
    a.fx.mul(&b.fy).sub(&a.fy.mul(&b.fx))
}

/// Two-digit label of a letter of `AB` (`X24 ↦ "24"`).
pub fn label(l: Letter) -> &'static str {
    match l {
        Letter::X12 => "12",
        Letter::X23 => "23",
        Letter::X24 => "24",
        Letter::X34 => "34",
        Letter::X45 => "45",
        Letter::X51 => "51",
        other => other.name(),
    }
}

/// Position in the ordered basis `(ω34, ω45, ω24, ω12, ω23)` of `H¹(M0,5)`.
pub fn h1_index(l: Letter) -> Option<u8> {
    match l {
        Letter::X34 => Some(0),
        Letter::X45 => Some(1),
        Letter::X24 => Some(2),
        Letter::X12 => Some(3),
        Letter::X23 => Some(4),
        _ => None,
    }
}

/// Base-5 coordinate of a tensor word in the `H¹` basis order.
fn coordinate(w: &Word) -> u64 {
    w.letters()
        .iter()
        .fold(0u64, |acc, &l| acc * 5 + h1_index(l).expect("bar words are over AB") as u64)
}

/// A rational linear combination of tensor words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BarTensor {
    terms: BTreeMap<Word, Rational>,
}

impl BarTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `[ω_{l1}|...|ω_{ln}]` for `w = l1...ln`.
    pub fn word(w: Word) -> Result<Self> {
        Alphabet::AB.check(&w)?;
        Ok(BarTensor { terms: BTreeMap::from([(w, Rational::one())]) })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Result<Self> {
        let mut t = Self::zero();
        for (w, c) in terms {
            Alphabet::AB.check(&w)?;
            t.add_term(w, c);
        }
        Ok(t)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
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

    /// The common tensor length, if all terms have the same one.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.weight());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &BarTensor) -> BarTensor {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BarTensor {
        let mut out = BarTensor::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &BarTensor) -> BarTensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn shuffle(&self, other: &BarTensor) -> BarTensor {
        let mut out = BarTensor::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (x, m) in shuffle_words(u, v) {
                    out.add_term(x, &ab * Rational::from_integer(m.into()));
                }
            }
        }
        out
    }

    fn coordinates(&self) -> SparseVec<u64> {
        self.terms.iter().map(|(w, c)| (coordinate(w), c.clone())).collect()
    }

    /// Terms ordered by their numeric labels (`12 < 23 < 24 < 34 < 45`).
    pub fn sorted_terms(&self) -> Vec<(&Word, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| w.letters().iter().map(|&l| label(l)).collect::<Vec<_>>());
        v
    }

    /// `[w12|w23]`-style rendering of one tensor word.
    pub fn symbol(w: &Word) -> String {
        let parts: Vec<String> = w.letters().iter().map(|&l| alloc::format!("w{}", label(l))).collect();
        alloc::format!("[{}]", parts.join("|"))
    }
}

impl fmt::Display for BarTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{} {}", c.abs(), BarTensor::symbol(w))?;
        }
        Ok(())
    }
}

/// Checks the integrability condition at every cut. On failure returns the
/// first failing cut position, counted from the right (position 1 is the
/// rightmost pair).
pub fn integrability_check(t: &BarTensor) -> Result<core::result::Result<(), usize>> {
    if t.is_zero() {
        return Ok(Ok(()));
    }
    let m = t.degree().ok_or(Error::NonHomogeneous)?;
    let forms: BTreeMap<Letter, Form1> = Alphabet::AB
        .letters()
        .map(|l| form_of(l).map(|f| (l, f)))
        .collect::<Result<_>>()?;
    let mut wedges: BTreeMap<(Letter, Letter), RatFn> = BTreeMap::new();
    for pos in 1..m {
        let left = m - 1 - pos;
        // untouched slots -> Σ c · wedge
        let mut groups: BTreeMap<(Word, Word), RatFn> = BTreeMap::new();
        for (w, c) in t.terms() {
            let ls = w.letters();
            let key = (w.slice(0, left), w.slice(left + 2, m));
            let pair = (ls[left], ls[left + 1]);
            let wv = wedges
                .entry(pair)
                .or_insert_with(|| wedge(&forms[&pair.0], &forms[&pair.1]))
                .scale(c);
            let g = groups.entry(key).or_default();
            *g = g.add(&wv);
        }
        if groups.values().any(|g| !g.is_zero()) {
            return Ok(Err(pos));
        }
    }
    Ok(Ok(()))
}

/// `b* = Σ_W l_{b,W} ω_W` from a precomputed table of the right degree.
pub fn dual_from_table(b: &B4Monomial, table: &LTable) -> BarTensor {
    let mut t = BarTensor::zero();
    for (w, c) in table.row(b).into_iter().flatten() {
        t.add_term(w.clone(), Rational::from_integer((*c).into()));
    }
    t
}

/// `b* = Σ_W l_{b,W} ω_W`.
pub fn dual_basis_element(b: &B4Monomial) -> Result<BarTensor> {
    if b.degree() == 0 {
        return Err(Error::EmptyMonomial);
    }
    Ok(dual_from_table(b, &LTable::new(b.degree())?))
}

/// The edges of the pentagon path `γ = p35 ∘ p52 ∘ p24 ∘ p41 ∘ p13`; the
/// discriminant is the index `i` of the matching `ρi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GammaEdge {
    P35 = 1,
    P52 = 2,
    P24 = 3,
    P41 = 4,
    P13 = 5,
}

impl GammaEdge {
    pub const ALL: [GammaEdge; 5] =
        [GammaEdge::P35, GammaEdge::P52, GammaEdge::P24, GammaEdge::P41, GammaEdge::P13];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// `Reg(ω, I)` for the five forms (rows `ω12, ω23, ω24, ω34, ω45`) along the
/// five edges (columns `p35, p52, p24, p41, p13`).
const REG: [[Option<Letter>; 5]; 5] = {
    use Letter::{X0, X1};
    [
        [Some(X0), None, Some(X1), None, None],
        [Some(X1), None, Some(X0), Some(X0), Some(X1)],
        [None, None, Some(X0), None, Some(X1)],
        [None, Some(X0), Some(X0), Some(X1), Some(X1)],
        [None, Some(X1), None, None, Some(X0)],
    ]
};

/// Regularized restriction of `ω_letter` to an edge of `γ`: `Some(X0)` for
/// `dt/t`, `Some(X1)` for `dt/(t-1)`, `None` for zero.
pub fn reg_restrict(letter: Letter, edge: GammaEdge) -> Option<Letter> {
    let row = match letter {
        Letter::X12 => 0,
        Letter::X23 => 1,
        Letter::X24 => 2,
        Letter::X34 => 3,
        Letter::X45 => 4,
        _ => return None,
    };
    REG[row][edge.index() - 1]
}

/// `∫_I Reg(ω_U, I) = (-1)^depth ζ⧢(Reg U)` along one edge.
fn edge_integral(u: &Word, edge: GammaEdge) -> CoeffExpr {
    let mut x = Word::empty();
    for &l in u.letters() {
        match reg_restrict(l, edge) {
            Some(y) => x.push(y),
            None => return CoeffExpr::zero(),
        }
    }
    let sign = x.depth() % 2 == 1;
    let z = CoeffExpr::zs(x);
    if sign {
        -z
    } else {
        z
    }
}

/// `∫_γ Reg(t)` in MZV form, composing the edge integrals along
/// `γ = p35 ∘ p52 ∘ p24 ∘ p41 ∘ p13` by Chen's formula.
pub fn iterated_integral_gamma(t: &BarTensor) -> Result<CoeffExpr> {
    let mut out = CoeffExpr::zero();
    for (w, c) in t.terms() {
        Alphabet::AB.check(w)?;
        // along[k][i]: integral of the suffix of w starting at i over edges k..
        let n = w.weight();
        let mut along: Vec<Vec<CoeffExpr>> = alloc::vec![Vec::new(); 6];
        along[5] = (0..=n).map(|i| if i == n { CoeffExpr::one() } else { CoeffExpr::zero() }).collect();
        for k in (0..5).rev() {
            let edge = GammaEdge::ALL[k];
            along[k] = (0..=n)
                .map(|i| {
                    let mut acc = CoeffExpr::zero();
                    for j in i..=n {
                        let rest = &along[k + 1][j];
                        if rest.is_zero() {
                            continue;
                        }
                        let here = edge_integral(&w.slice(i, j), edge);
                        if !here.is_zero() {
                            acc += &here * rest;
                        }
                    }
                    acc
                })
                .collect();
        }
        out += along[0][0].scale(c);
    }
    Ok(out)
}

/// Numeric value of [`iterated_integral_gamma`].
pub fn iterated_integral_gamma_value(
    t: &BarTensor,
    reg: &mut Regularizer,
    oracle: &dyn ZetaOracle,
) -> Result<Complex> {
    evaluate_expr(&iterated_integral_gamma(t)?, reg, oracle)
}

/// Multiplicative generators of the bar construction by degree, given as
/// `B4` monomials whose duals generate under the shuffle product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    by_degree: BTreeMap<usize, Vec<B4Monomial>>,
}

impl GeneratorSet {
    /// From explicit lists; degree `d` is read off each monomial.
    pub fn from_monomials(ms: impl IntoIterator<Item = B4Monomial>) -> Self {
        let mut by_degree: BTreeMap<usize, Vec<B4Monomial>> = BTreeMap::new();
        for m in ms {
            by_degree.entry(m.degree()).or_default().push(m);
        }
        GeneratorSet { by_degree }
    }

    /// The reference generator sets: all of degree one, four in degree two and
    /// ten in degree three.
    pub fn tables() -> Self {
        let words = [
            "X24", "X34", "X45", "X12", "X23",
            "X24.X45", "X24.X34", "X34.X45", "X12.X23",
            "X34.X24.X24", "X12.X23.X23", "X34.X45.X45", "X45.X24.X24", "X12.X12.X23",
            "X34.X34.X45", "X24.X45.X45", "X24.X34.X34", "X24.X45.X34", "X24.X34.X45",
        ];
        Self::from_monomials(words.iter().map(|s| {
            B4Monomial::new(s.parse().expect("valid literal")).expect("B4 literal")
        }))
    }

    pub fn degree(&self, d: usize) -> &[B4Monomial] {
        self.by_degree.get(&d).map_or(&[], |v| v.as_slice())
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.keys().next_back().copied().unwrap_or(0)
    }

    pub fn all(&self) -> impl Iterator<Item = &B4Monomial> {
        self.by_degree.values().flatten()
    }
}

/// Duals of all `B4` monomials of degrees `1..=n`.
#[derive(Debug, Clone)]
pub struct DualBasis {
    duals: BTreeMap<usize, Vec<(B4Monomial, BarTensor)>>,
}

impl DualBasis {
    pub fn new(n: usize) -> Result<Self> {
        let mut duals = BTreeMap::new();
        for d in 1..=n {
            let table = LTable::new(d)?;
            let v: Vec<_> = table
                .basis()
                .iter()
                .map(|b| (b.clone(), dual_from_table(b, &table)))
                .collect();
            duals.insert(d, v);
        }
        Ok(DualBasis { duals })
    }

    pub fn max_degree(&self) -> usize {
        self.duals.keys().next_back().copied().unwrap_or(0)
    }

    pub fn degree(&self, d: usize) -> &[(B4Monomial, BarTensor)] {
        self.duals.get(&d).map_or(&[], |v| v.as_slice())
    }

    pub fn dual(&self, b: &B4Monomial) -> Option<&BarTensor> {
        self.degree(b.degree()).iter().find(|(c, _)| c == b).map(|(_, t)| t)
    }
}

/// Greedy choice of generators through degree `n`: scan `B4` in canonical
/// order and keep `b` when `b*` is not in the span of shuffles of lower-degree
/// elements and of the generators already kept.
pub fn multiplicative_generators(n: usize, duals: &DualBasis) -> Result<GeneratorSet> {
    if duals.max_degree() < n {
        return Err(Error::MissingGenerators(n));
    }
    let mut chosen = Vec::new();
    for d in 1..=n {
        let mut span: Span<u64> = Span::new();
        let mut tag = 0;
        for i in 1..=d / 2 {
            for (bi, (_, x)) in duals.degree(i).iter().enumerate() {
                for (bj, (_, y)) in duals.degree(d - i).iter().enumerate() {
                    if i == d - i && bj < bi {
                        continue;
                    }
                    span.insert(&x.shuffle(y).coordinates(), tag);
                    tag += 1;
                }
            }
        }
        for (b, t) in duals.degree(d) {
            if span.insert(&t.coordinates(), tag) {
                chosen.push(b.clone());
            }
            tag += 1;
        }
    }
    Ok(GeneratorSet::from_monomials(chosen))
}

/// The generators of [`multiplicative_generators`] for degree `d` only.
pub fn generators_of_degree(d: usize) -> Result<Vec<B4Monomial>> {
    let duals = DualBasis::new(d)?;
    Ok(multiplicative_generators(d, &duals)?.degree(d).to_vec())
}

/// A polynomial in generator duals under the shuffle product: each key is a
/// sorted list of generators, read as their shuffle product.
pub type ShufflePoly = BTreeMap<Vec<B4Monomial>, Rational>;

/// Monomials (multisets of generators) of total degree `d`.
fn generator_monomials(gens: &GeneratorSet, d: usize) -> Vec<Vec<B4Monomial>> {
    let all: Vec<&B4Monomial> = gens.all().collect();
    let mut out = Vec::new();
    fn rec(
        all: &[&B4Monomial],
        start: usize,
        left: usize,
        cur: &mut Vec<B4Monomial>,
        out: &mut Vec<Vec<B4Monomial>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..all.len() {
            let g = all[i];
            if g.degree() <= left {
                cur.push(g.clone());
                rec(all, i, left - g.degree(), cur, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Shuffle product of the generator duals in `m`.
pub fn expand_monomial(m: &[B4Monomial], duals: &DualBasis) -> Result<BarTensor> {
    let mut acc = BarTensor::word(Word::empty())?;
    for g in m {
        let t = duals.dual(g).ok_or(Error::MissingGenerators(g.degree()))?;
        acc = acc.shuffle(t);
    }
    Ok(acc)
}

/// Substitutes the generator duals into `p` and expands.
pub fn expand_shuffle_poly(p: &ShufflePoly, duals: &DualBasis) -> Result<BarTensor> {
    let mut out = BarTensor::zero();
    for (m, c) in p {
        out = out.add(&expand_monomial(m, duals)?.scale(c));
    }
    Ok(out)
}

/// Writes an integrable tensor as a polynomial in generator duals.
pub fn express_in_generators(
    t: &BarTensor,
    gens: &GeneratorSet,
    duals: &DualBasis,
) -> Result<ShufflePoly> {
    let mut by_degree: BTreeMap<usize, BarTensor> = BTreeMap::new();
    for (w, c) in t.terms() {
        by_degree.entry(w.weight()).or_default().add_term(w.clone(), c.clone());
    }
    let mut out = ShufflePoly::new();
    for (d, part) in by_degree {
        if d == 0 {
            out.insert(Vec::new(), part.coefficient(&Word::empty()));
            continue;
        }
        if let Err(pos) = integrability_check(&part)? {
            return Err(Error::NotIntegrable(pos));
        }
        if gens.max_degree() < d || duals.max_degree() < d {
            return Err(Error::MissingGenerators(d));
        }
        let monomials = generator_monomials(gens, d);
        let mut span: Span<u64> = Span::new();
        for (i, m) in monomials.iter().enumerate() {
            span.insert(&expand_monomial(m, duals)?.coordinates(), i);
        }
        let comb = span.express(&part.coordinates()).ok_or(Error::MissingGenerators(d))?;
        for (i, c) in comb {
            out.insert(monomials[i].clone(), c);
        }
    }
    Ok(out)
}

/// Renders a shuffle polynomial as `c * g1* ⧢ g2* + ...`.
pub fn format_shuffle_poly(p: &ShufflePoly) -> String {
    if p.is_empty() {
        return String::from("0");
    }
    let mut parts = Vec::new();
    for (m, c) in p {
        let names: Vec<String> = m.iter().map(|g| alloc::format!("{g}*")).collect();
        let body = if names.is_empty() { String::from("1") } else { names.join(" ⧢ ") };
        parts.push(alloc::format!("{c} {body}"));
    }
    parts.join(" + ")
}

/// All `B4` monomials of degree `d`, for callers that only need the list.
pub fn basis(d: usize) -> Vec<B4Monomial> {
    enumerate_b4(d)
}
