//! Serialized forms of relations, bar tensors and command reports.

use serde::{Deserialize, Serialize};

use azbk_core::bar::BarTensor;
use azbk_core::coeff::Monomial;
use azbk_core::relations::{Family, Form, Relation};
use azbk_core::{CoeffExpr, Rational, Symbol, Word};

use crate::CliError;

fn is_zero(n: &u32) -> bool {
    *n == 0
}

/// One monomial `coeff · (PI)^pi_power · MU^mu_power · Π ZS[factor]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub coeff: String,
    pub pi_power: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub mu_power: u32,
    pub factors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDto {
    pub family: String,
    pub weight: usize,
    pub key: String,
    pub form: String,
    pub term_count: usize,
    pub terms: Vec<TermDto>,
}

/// `coeff · word`, for bar tensors and `B4` expansions alike.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTermDto {
    pub coeff: String,
    pub word: String,
}

/// A bar tensor, optionally labelled by the `B4` monomial it is dual to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDto {
    pub key: String,
    pub degree: usize,
    pub term_count: usize,
    pub terms: Vec<WordTermDto>,
}

/// The `B4` expansion of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionDto {
    pub word: String,
    pub term_count: usize,
    pub terms: Vec<WordTermDto>,
}

/// A numeric value, truncated to `digits` decimals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDto {
    pub input: String,
    pub digits: usize,
    pub value: String,
}

/// Worst residual among the relations of one weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub weight: usize,
    pub relations: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub worst_key: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tol: f64,
    pub digits: u32,
    pub passed: bool,
    pub weights: Vec<WeightReport>,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tensors: Vec<TensorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyReport>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        OutputDocument { command: command.to_string(), ..Default::default() }
    }

    /// The relations, converted back to internal form.
    pub fn parse_relations(&self) -> Result<Vec<Relation>, CliError> {
        self.relations.iter().map(Relation::try_from).collect()
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| CliError::Input(format!("bad rational {s:?}")))
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("{e}")))
}

pub fn expr_to_terms(e: &CoeffExpr) -> Vec<TermDto> {
    e.terms()
        .map(|(m, c)| {
            let mut t = TermDto { coeff: c.to_string(), pi_power: 0, mu_power: 0, factors: Vec::new() };
            for s in m.expanded() {
                match s {
                    Symbol::Pi => t.pi_power += 1,
                    Symbol::Mu => t.mu_power += 1,
                    Symbol::Zs(w) => t.factors.push(w.to_string()),
                }
            }
            t
        })
        .collect()
}

pub fn terms_to_expr(terms: &[TermDto]) -> Result<CoeffExpr, CliError> {
    let mut out = CoeffExpr::zero();
    for t in terms {
        let mut symbols = Vec::new();
        symbols.extend(std::iter::repeat_n(Symbol::Pi, t.pi_power as usize));
        symbols.extend(std::iter::repeat_n(Symbol::Mu, t.mu_power as usize));
        for f in &t.factors {
            symbols.push(Symbol::Zs(parse_word(f)?));
        }
        out += CoeffExpr::term(parse_rational(&t.coeff)?, Monomial::from_factors(symbols));
    }
    Ok(out)
}

impl From<&Relation> for RelationDto {
    fn from(r: &Relation) -> Self {
        RelationDto {
            family: r.family.name().to_string(),
            weight: r.weight(),
            key: r.key.to_string(),
            form: r.form.name().to_string(),
            term_count: r.lhs.len(),
            terms: expr_to_terms(&r.lhs),
        }
    }
}

impl TryFrom<&RelationDto> for Relation {
    type Error = CliError;

    fn try_from(d: &RelationDto) -> Result<Self, CliError> {
        let family: Family =
            d.family.parse().map_err(|_| CliError::Input(format!("unknown family {:?}", d.family)))?;
        let form: Form =
            d.form.parse().map_err(|_| CliError::Input(format!("unknown form {:?}", d.form)))?;
        let key = parse_word(&d.key)?;
        if key.weight() != d.weight {
            return Err(CliError::Input(format!("weight {} does not match key {}", d.weight, d.key)));
        }
        Ok(Relation { family, key, form, lhs: terms_to_expr(&d.terms)? })
    }
}

impl TensorDto {
    pub fn new(key: impl Into<String>, t: &BarTensor) -> Self {
        let terms: Vec<WordTermDto> = t
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| WordTermDto { coeff: c.to_string(), word: w.to_string() })
            .collect();
        TensorDto { key: key.into(), degree: t.degree().unwrap_or(0), term_count: terms.len(), terms }
    }

    pub fn to_tensor(&self) -> Result<BarTensor, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((parse_word(&t.word)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        BarTensor::from_terms(terms).map_err(|e| CliError::Input(e.to_string()))
    }
}
