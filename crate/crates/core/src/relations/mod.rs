//! Relations among associator coefficients coming from the 2-cycle, hexagon
//! and pentagon equations, and their multiple zeta value form.

pub mod coefficients;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::One;

pub use coefficients::{
    c2_coefficient, c3_coefficient, c3_via_product, c5_coefficient, c5_via_product, decx, rho,
    DecX,
};

use crate::braid::{enumerate_b4, LTable};
use crate::coeff::{int, CoeffExpr, Rational, Symbol};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Which associator equation a relation comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    TwoCycle,
    Hexagon,
    Pentagon,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TwoCycle, Family::Hexagon, Family::Pentagon];

    pub fn name(self) -> &'static str {
        match self {
            Family::TwoCycle => "two-cycle",
            Family::Hexagon => "hexagon",
            Family::Pentagon => "pentagon",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        Family::ALL.iter().copied().find(|x| x.name() == s).ok_or(())
    }
}

/// How the symbols of a relation are to be read.
///
/// In `Symbolic` form `ZS[w]` is the coefficient `Z_w` of a general
/// associator and `MU` is free. In the MZV forms `ZS[w]` is `ζ⧢(w)` and `PI`
/// is `iπ`; `MzvSimplified` has in addition `ζ⧢(X0^k) = ζ⧢(X1^k) = 0` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Form {
    Symbolic,
    Mzv,
    MzvSimplified,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Symbolic, Form::Mzv, Form::MzvSimplified];

    pub fn name(self) -> &'static str {
        match self {
            Form::Symbolic => "symbolic",
            Form::Mzv => "mzv",
            Form::MzvSimplified => "mzv-simplified",
        }
    }

    pub fn is_mzv(self) -> bool {
        self != Form::Symbolic
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Form {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        Form::ALL.into_iter().find(|x| x.name() == s).ok_or(())
    }
}

/// The identity `lhs = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    /// A word over `AX` for the 2-cycle and hexagon families, a `B4`
    /// monomial for the pentagon family.
    pub key: Word,
    pub form: Form,
    pub lhs: CoeffExpr,
}

impl Relation {
    pub fn weight(&self) -> usize {
        self.key.weight()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs.is_zero()
    }

    /// The grading check: `ZS[w]` has weight `|w|`, `PI` and `MU` weight one.
    pub fn is_homogeneous(&self) -> bool {
        self.lhs.is_homogeneous(self.weight())
    }

    /// Reads the relation as a statement about multiple zeta values:
    /// `ZS[w] ↦ (-1)^depth(w) ZS[w]` and `MU ↦ 2·PI`, then optionally
    /// `ZS[X0^k], ZS[X1^k] ↦ 0`. Relations already in MZV form only get the
    /// optional simplification.
    pub fn to_mzv_form(&self, simplify: bool) -> Relation {
        let lhs = match self.form {
            Form::Symbolic => mzv_substitution(&self.lhs),
            _ => self.lhs.clone(),
        };
        let (lhs, form) = if simplify {
            (simplify_pure_powers(&lhs), Form::MzvSimplified)
        } else if self.form == Form::MzvSimplified {
            (lhs, Form::MzvSimplified)
        } else {
            (lhs, Form::Mzv)
        };
        Relation { family: self.family, key: self.key.clone(), form, lhs }
    }
}

/// `ZS[w] ↦ (-1)^depth(w) ZS[w]`, `MU ↦ 2·PI`.
pub fn mzv_substitution(e: &CoeffExpr) -> CoeffExpr {
    e.substitute(|s| match s {
        Symbol::Mu => Some(CoeffExpr::pi().scale(&int(2))),
        Symbol::Zs(w) if w.depth() % 2 == 1 => Some(-CoeffExpr::zs(w.clone())),
        _ => None,
    })
}

/// `ζ⧢(X0^k) = ζ⧢(X1^k) = 0` for `k >= 1`.
pub fn simplify_pure_powers(e: &CoeffExpr) -> CoeffExpr {
    e.filter_terms(|m| {
        m.factors()
            .iter()
            .all(|(s, _)| !matches!(s, Symbol::Zs(w) if w.is_pure_power_ax()))
    })
}

/// `C2,W = 0` for every non-empty `W` over `AX` with `|W| <= max_weight`.
pub fn two_cycle_relations(max_weight: usize) -> Result<Vec<Relation>> {
    Word::all_up_to_weight(&Alphabet::AX, max_weight)
        .into_iter()
        .skip(1)
        .map(|key| {
            let lhs = c2_coefficient(&key)?;
            Ok(Relation { family: Family::TwoCycle, key, form: Form::Symbolic, lhs })
        })
        .collect()
}

/// `C3,W = 0` for every non-empty `W` over `AX` with `|W| <= max_weight`.
pub fn hexagon_relations(max_weight: usize) -> Result<Vec<Relation>> {
    Word::all_up_to_weight(&Alphabet::AX, max_weight)
        .into_iter()
        .skip(1)
        .map(|key| {
            let lhs = c3_coefficient(&key)?;
            Ok(Relation { family: Family::Hexagon, key, form: Form::Symbolic, lhs })
        })
        .collect()
}

/// `Σ_W l_{b,W} C5,W = 0` for every `B4` monomial `b` of degree `1..=max_weight`.
pub fn pentagon_relations(max_weight: usize) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for d in 1..=max_weight {
        out.extend(pentagon_relations_of_degree(d, &enumerate_b4(d).into_iter().map(|b| b.into_word()).collect::<Vec<_>>())?);
    }
    Ok(out)
}

/// Pentagon relations for the given keys, all `B4` monomials of degree `d`.
pub fn pentagon_relations_of_degree(d: usize, keys: &[Word]) -> Result<Vec<Relation>> {
    let table = LTable::new(d)?;
    let mut c5: BTreeMap<Word, CoeffExpr> = BTreeMap::new();
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        let b = crate::braid::B4Monomial::new(key.clone())?;
        if b.degree() != d {
            return Err(Error::NotB4(key.clone()));
        }
        let mut lhs = CoeffExpr::zero();
        for (w, l) in table.row(&b).into_iter().flatten() {
            if !c5.contains_key(w) {
                c5.insert(w.clone(), c5_coefficient(w)?);
            }
            lhs += c5[w].scale(&Rational::from_integer((*l).into()));
        }
        out.push(Relation { family: Family::Pentagon, key: key.clone(), form: Form::Symbolic, lhs });
    }
    Ok(out)
}

/// A single pentagon relation keyed by a `B4` monomial.
pub fn pentagon_relation(key: &Word) -> Result<Relation> {
    if key.is_empty() {
        return Err(Error::EmptyMonomial);
    }
    Ok(pentagon_relations_of_degree(key.weight(), core::slice::from_ref(key))?.remove(0))
}

/// Relations of one family up to `max_weight`, in symbolic form.
pub fn relations(family: Family, max_weight: usize) -> Result<Vec<Relation>> {
    match family {
        Family::TwoCycle => two_cycle_relations(max_weight),
        Family::Hexagon => hexagon_relations(max_weight),
        Family::Pentagon => pentagon_relations(max_weight),
    }
}

/// The `AX` word matching a word over `{X12, X23}` (`X12 ↦ X0`, `X23 ↦ X1`).
pub fn top_word_to_ax(w: &Word) -> Option<Word> {
    w.letters()
        .iter()
        .map(|&l| match l {
            Letter::X12 => Some(Letter::X0),
            Letter::X23 => Some(Letter::X1),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .map(Word::new)
}

/// `c · e` with the rational `c` chosen so that the first term has
/// coefficient one; a canonical representative up to scaling.
pub fn normalize(e: &CoeffExpr) -> CoeffExpr {
    match e.terms().next() {
        Some((_, c)) => e.scale(&(Rational::one() / c)),
        None => CoeffExpr::zero(),
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
    fn pentagon_degree_one() {
        let r = pentagon_relation(&w("X12")).unwrap();
        assert_eq!(r.lhs, zs("X0") + zs("X1"));
        assert_eq!(pentagon_relations(2).unwrap().len(), 5 + 19);
    }

    #[test]
    fn two_cycle_key_x0() {
        let r = &two_cycle_relations(1).unwrap()[0];
        assert_eq!(r.key, w("X0"));
        assert_eq!(r.lhs, zs("X0") + zs("X1"));
        assert_eq!(r.to_mzv_form(false).lhs, zs("X0") - zs("X1"));
    }

    #[test]
    fn table_2_row_x34_x45() {
        let r = pentagon_relation(&w("X34.X45")).unwrap().to_mzv_form(false);
        let want = zs("X0").pow(2).scale(&int(2)) - &zs("X1") * &zs("X0") - zs("X0.X1") - zs("X1.X0");
        assert!(r.lhs.proportional_to(&want).is_some(), "{}", r.lhs);
    }

    #[test]
    fn table_3_row_x24_x34_x45() {
        let r = pentagon_relation(&w("X24.X34.X45")).unwrap().to_mzv_form(true);
        let want = zs("X0.X1.X0") + zs("X1.X1.X0").scale(&int(2));
        assert!(r.lhs.proportional_to(&want).is_some(), "{}", r.lhs);
    }

    #[test]
    fn homogeneity() {
        for fam in Family::ALL {
            for r in relations(fam, 3).unwrap() {
                assert!(r.is_homogeneous(), "{} {}", fam, r.key);
            }
        }
    }

    #[test]
    fn hexagon_weight_two_forces_zeta_two() {
        // After MU = 2 iπ and ζ⧢ of weight one set to zero, the weight-two
        // hexagon relations pin ZS[X0.X1] = PI^2 / 6 (i.e. ζ(2) = π²/6).
        let rels: Vec<CoeffExpr> = hexagon_relations(2)
            .unwrap()
            .into_iter()
            .filter(|r| r.weight() == 2)
            .map(|r| r.to_mzv_form(true).lhs)
            .collect();
        // remaining unknowns: ZS[X0.X1], ZS[X1.X0]; eliminate ZS[X1.X0] = -ZS[X0.X1]
        let sub = |e: &CoeffExpr| {
            e.substitute(|s| match s {
                Symbol::Zs(x) if *x == w("X1.X0") => Some(-zs("X0.X1")),
                _ => None,
            })
        };
        let pi2 = CoeffExpr::pi().pow(2);
        let mut found = false;
        for r in &rels {
            let e = sub(r);
            if e.is_zero() {
                continue;
            }
            let target = zs("X0.X1") - pi2.scale(&Rational::new((-1).into(), 6.into()));
            assert!(e.proportional_to(&target).is_some(), "{e}");
            found = true;
        }
        assert!(found);
    }
}
