//! Command implementations. Each returns the rendered output and whether the
//! command succeeded (only `verify` can fail without an error).

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use azbk_core::bar::{dual_basis_element, multiplicative_generators, BarTensor, DualBasis, GeneratorSet};
use azbk_core::braid::{enumerate_b4, normal_form_word, default_budget, B4Monomial, Strategy};
use azbk_core::mzv::{digits_for_tol, evaluate_relation, zsha_value, Regularizer, ZetaOracle};
use azbk_core::relations::{pentagon_relation, relations, Family, Form, Relation};
use azbk_core::{Composition, Word};

use crate::doc::{
    OutputDocument, ReductionDto, RelationDto, TensorDto, ValueDto, VerifyReport, WeightReport, WordTermDto,
};
use crate::oracle::SharedMzv;
use crate::render::{combination_text, relation_text, tensor_text, LatexTables};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, success: true }
    }
}

pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;
pub const DEFAULT_MZV_TOL: f64 = 1e-12;

fn json(doc: &OutputDocument) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

pub fn check_max_weight(family: Family, max_weight: usize) -> Result<(), CliError> {
    let cap = if family == Family::Pentagon { 5 } else { 6 };
    if !(1..=cap).contains(&max_weight) {
        return Err(CliError::Usage(format!("--max-weight for {family} must be between 1 and {cap}")));
    }
    Ok(())
}

fn check_degree(degree: usize, allowed: std::ops::RangeInclusive<usize>) -> Result<(), CliError> {
    if !allowed.contains(&degree) {
        return Err(CliError::Usage(format!(
            "--degree must be between {} and {}",
            allowed.start(),
            allowed.end()
        )));
    }
    Ok(())
}

/// Internal precision: `AZBK_PRECISION` if given, else enough for `tol`.
pub fn precision(tol: f64, env: Option<&str>) -> Result<u32, CliError> {
    match env {
        Some(s) => match s.trim().parse::<u32>() {
            Ok(d) if (1..=10_000).contains(&d) => Ok(d),
            _ => Err(CliError::Usage(format!("AZBK_PRECISION must be a digit count, got {s:?}"))),
        },
        None => Ok(digits_for_tol(tol)),
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(())
}

fn in_form(rels: Vec<Relation>, form: Form) -> Vec<Relation> {
    match form {
        Form::Symbolic => rels,
        Form::Mzv => rels.iter().map(|r| r.to_mzv_form(false)).collect(),
        Form::MzvSimplified => rels.iter().map(|r| r.to_mzv_form(true)).collect(),
    }
}

fn emit_relations(command: &str, rels: &[Relation], format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(lines(rels.iter().map(relation_text))),
        Format::Json => {
            let mut doc = OutputDocument::new(command);
            doc.relations = rels.iter().map(RelationDto::from).collect();
            json(&doc)
        }
        Format::Latex => {
            let mut t = LatexTables::new();
            t.table(("Monomial", "Relation"), LatexTables::relation_rows(rels));
            Ok(t.finish())
        }
    }
}

pub fn cmd_relations(family: Family, max_weight: usize, form: Form, format: Format) -> Result<Output, CliError> {
    check_max_weight(family, max_weight)?;
    let rels = in_form(relations(family, max_weight)?, form);
    Ok(Output::ok(emit_relations("relations", &rels, format)?))
}

fn keyed(ms: &[B4Monomial]) -> Vec<Word> {
    ms.iter().map(|m| m.word().clone()).collect()
}

fn duals_of(keys: &[Word]) -> Result<Vec<(Word, BarTensor)>, CliError> {
    keys.iter()
        .map(|k| Ok((k.clone(), dual_basis_element(&B4Monomial::new(k.clone())?)?)))
        .collect()
}

fn emit_tensors(command: &str, rows: &[(Word, BarTensor)], format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(lines(rows.iter().map(|(k, t)| tensor_text(&k.to_string(), t)))),
        Format::Json => {
            let mut doc = OutputDocument::new(command);
            doc.tensors = rows.iter().map(|(k, t)| TensorDto::new(k.to_string(), t)).collect();
            json(&doc)
        }
        Format::Latex => {
            let mut t = LatexTables::new();
            t.table(("Monomial", "Dual"), LatexTables::tensor_rows(rows));
            Ok(t.finish())
        }
    }
}

/// The reference tables: degree one lists every relation, degree two the
/// relations of the four generators, degree three those of the ten
/// generators (with `ζ⧢(X0^k) = ζ⧢(X1^k) = 0` applied) and their duals.
pub fn cmd_tables(degree: usize, format: Format) -> Result<Output, CliError> {
    check_degree(degree, 1..=3)?;
    let keys = if degree == 1 { keyed(&enumerate_b4(1)) } else { keyed(GeneratorSet::tables().degree(degree)) };
    let form = if degree == 3 { Form::MzvSimplified } else { Form::Mzv };
    let rels: Vec<Relation> =
        keys.iter().map(pentagon_relation).collect::<Result<Vec<_>, _>>()?;
    let rels = in_form(rels, form);
    let duals = if degree == 3 { duals_of(&keys)? } else { Vec::new() };
    let text = match format {
        Format::Text => {
            let mut s = emit_relations("tables", &rels, format)?;
            if !duals.is_empty() {
                s.push('\n');
                s.push_str(&emit_tensors("tables", &duals, format)?);
            }
            s
        }
        Format::Json => {
            let mut doc = OutputDocument::new("tables");
            doc.relations = rels.iter().map(RelationDto::from).collect();
            doc.tensors = duals.iter().map(|(k, t)| TensorDto::new(k.to_string(), t)).collect();
            json(&doc)?
        }
        Format::Latex => {
            let mut t = LatexTables::new();
            t.table(("Monomial", "Relation"), LatexTables::relation_rows(&rels));
            if !duals.is_empty() {
                t.table(("Generator", "Dual"), LatexTables::tensor_rows(&duals));
            }
            t.finish()
        }
    };
    Ok(Output::ok(text))
}

/// What to verify: a generated family or relations read from a document.
pub enum VerifySource {
    Family(Family, usize),
    Document(Box<OutputDocument>),
}

struct Checked {
    key: Word,
    weight: usize,
    residual: f64,
    passed: bool,
}

/// Evaluates all relations on a pool of scoped threads sharing one oracle.
fn check_all(rels: &[Relation], tol: f64, oracle: &SharedMzv) -> Result<Vec<Checked>, CliError> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(rels.len()).max(1);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<Checked, CliError>)>> = Mutex::new(Vec::with_capacity(rels.len()));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let mut reg = Regularizer::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(r) = rels.get(i) else { break };
                    let out = evaluate_relation(r, tol, &mut reg, oracle)
                        .map(|res| Checked {
                            key: r.key.clone(),
                            weight: r.weight(),
                            residual: res.residual,
                            passed: res.passed,
                        })
                        .map_err(CliError::from);
                    results.lock().expect("poisoned").push((i, out));
                }
            });
        }
    });
    let mut results = results.into_inner().expect("poisoned");
    results.sort_by_key(|(i, _)| *i);
    results.into_iter().map(|(_, r)| r).collect()
}

pub fn cmd_verify(source: VerifySource, tol: f64, digits_env: Option<&str>, format: Format) -> Result<Output, CliError> {
    check_tol(tol)?;
    let digits = precision(tol, digits_env)?;
    let rels = match source {
        VerifySource::Family(family, max_weight) => {
            check_max_weight(family, max_weight)?;
            relations(family, max_weight)?
        }
        VerifySource::Document(doc) => {
            let rels = doc.parse_relations()?;
            if rels.is_empty() {
                return Err(CliError::Input("document contains no relations".to_string()));
            }
            rels
        }
    };
    // symbolic relations are read as statements about the KZ associator
    let rels: Vec<Relation> =
        rels.into_iter().map(|r| if r.form.is_mzv() { r } else { r.to_mzv_form(false) }).collect();
    let oracle = SharedMzv::with_digits(digits);
    let checked = check_all(&rels, tol, &oracle)?;

    let mut by_weight: BTreeMap<usize, WeightReport> = BTreeMap::new();
    for c in &checked {
        let e = by_weight.entry(c.weight).or_insert_with(|| WeightReport {
            weight: c.weight,
            relations: 0,
            failures: 0,
            worst_residual: 0.0,
            worst_key: c.key.to_string(),
        });
        e.relations += 1;
        if !c.passed {
            e.failures += 1;
        }
        if c.residual > e.worst_residual {
            e.worst_residual = c.residual;
            e.worst_key = c.key.to_string();
        }
    }
    let passed = checked.iter().all(|c| c.passed);
    let report = VerifyReport { tol, digits, passed, weights: by_weight.into_values().collect() };
    let text = match format {
        Format::Json => {
            let mut doc = OutputDocument::new("verify");
            doc.verify = Some(report);
            json(&doc)?
        }
        _ => {
            let mut out: Vec<String> = report
                .weights
                .iter()
                .map(|w| {
                    format!(
                        "weight {}: {} relations, {} failed, worst residual {:.3e} at {}",
                        w.weight, w.relations, w.failures, w.worst_residual, w.worst_key
                    )
                })
                .collect();
            let failed = checked.iter().filter(|c| !c.passed).count();
            out.push(if passed {
                format!("ok: {} relations within {tol:e}", checked.len())
            } else {
                format!("FAILED: {failed} of {} relations above {tol:e}", checked.len())
            });
            lines(out)
        }
    };
    Ok(Output { text, success: passed })
}

/// `B4` expansion of a word over `AB` and `X51`.
pub fn cmd_reduce(word: &str, format: Format) -> Result<Output, CliError> {
    let w: Word = word.parse()?;
    let terms: Vec<(Word, i64)> =
        normal_form_word(&w, Strategy::Leftmost, default_budget(w.weight()), None)?.into_iter().collect();
    let text = match format {
        Format::Text => combination_text(&w, &terms) + "\n",
        Format::Json => {
            let mut doc = OutputDocument::new("reduce");
            doc.reduction = Some(ReductionDto {
                word: w.to_string(),
                term_count: terms.len(),
                terms: terms
                    .iter()
                    .map(|(x, c)| WordTermDto { coeff: c.to_string(), word: x.to_string() })
                    .collect(),
            });
            json(&doc)?
        }
        Format::Latex => {
            let rhs: Vec<String> = terms
                .iter()
                .enumerate()
                .map(|(i, (x, c))| {
                    let sign = if *c < 0 { "-" } else if i == 0 { "" } else { "+" };
                    let abs = c.unsigned_abs();
                    let coeff = if abs == 1 { String::new() } else { abs.to_string() };
                    format!("{sign}{coeff}{}", crate::render::word_tex(x))
                })
                .collect();
            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" ") };
            format!("${} = {rhs}$\n", crate::render::word_tex(&w))
        }
    };
    Ok(Output::ok(text))
}

/// What to evaluate: a convergent composition or any word over `AX`.
pub enum MzvInput {
    Composition(String),
    Word(String),
}

/// Decimals printed for a tolerance: enough that truncation stays below it.
fn shown_digits(tol: f64) -> usize {
    let mut d = 0usize;
    let mut t = tol;
    while t < 1.0 && d < 1000 {
        t *= 10.0;
        d += 1;
    }
    d + 2
}

pub fn cmd_mzv(input: MzvInput, tol: f64, digits_env: Option<&str>, format: Format) -> Result<Output, CliError> {
    check_tol(tol)?;
    let digits = precision(tol, digits_env)?;
    let oracle = SharedMzv::with_digits(digits);
    let (label, value) = match &input {
        MzvInput::Composition(s) => {
            let k: Composition = s.parse()?;
            if !k.is_convergent() {
                return Err(CliError::Usage(format!("composition {s} is not convergent (first entry must be at least 2)")));
            }
            (format!("ζ({})", s.trim()), oracle.zeta(&k.to_word())?)
        }
        MzvInput::Word(s) => {
            let w: Word = s.parse()?;
            if !azbk_core::Alphabet::AX.contains_word(&w) {
                return Err(CliError::Usage(format!("--word must be over X0, X1, got {w}")));
            }
            (format!("ζ⧢({w})"), zsha_value(&w, &mut Regularizer::new(), &oracle)?)
        }
    };
    let shown = shown_digits(tol).min(digits as usize);
    let decimal = value.to_decimal(shown);
    let text = match format {
        Format::Json => {
            let mut doc = OutputDocument::new("mzv");
            doc.value = Some(ValueDto { input: label, digits: shown, value: decimal });
            json(&doc)?
        }
        Format::Text => format!("{decimal}\n"),
        Format::Latex => format!("${} = {decimal}\\ldots$\n", label.replace('ζ', "\\zeta").replace('⧢', "^{\\sqcup\\!\\sqcup}")),
    };
    Ok(Output::ok(text))
}

pub fn cmd_dual_basis(degree: usize, format: Format) -> Result<Output, CliError> {
    check_degree(degree, 1..=4)?;
    let rows = duals_of(&keyed(&enumerate_b4(degree)))?;
    Ok(Output::ok(emit_tensors("dual-basis", &rows, format)?))
}

/// Greedily chosen multiplicative generators of the given degree, with
/// their duals.
pub fn cmd_generators(degree: usize, format: Format) -> Result<Output, CliError> {
    check_degree(degree, 1..=3)?;
    let duals = DualBasis::new(degree)?;
    let gens = multiplicative_generators(degree, &duals)?;
    let rows: Vec<(Word, BarTensor)> = gens
        .degree(degree)
        .iter()
        .map(|g| (g.word().clone(), duals.dual(g).cloned().expect("dual of a basis element")))
        .collect();
    Ok(Output::ok(emit_tensors("generators", &rows, format)?))
}
