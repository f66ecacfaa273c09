//! Acceptance suite: one line per criterion, each with its own time limit.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use azbk_core::bar::{
    dual_basis_element, express_in_generators, expand_shuffle_poly, integrability_check,
    multiplicative_generators, BarTensor, DualBasis, GeneratorSet,
};
use azbk_core::braid::{
    enumerate_b4, f4_word, measure, normal_form_word, B4Monomial, LinComb, Strategy,
};
use azbk_core::mzv::{
    duality_check, evaluate_relation, zsha_value, MzvEngine, Regularizer, ZetaOracle,
};
use azbk_core::relations::coefficients::{
    c3_coefficient, c3_via_product, c5_coefficient, c5_via_product,
};
use azbk_core::relations::{
    pentagon_relation, pentagon_relations_of_degree, relations, top_word_to_ax,
    two_cycle_relations, Family, Relation,
};
use azbk_core::series::grouplike_check;
use azbk_core::{Alphabet, CoeffExpr, Composition, NCSeries, Rational, Word};

type Outcome = Result<String, String>;

fn w(s: &str) -> Word {
    s.parse().expect("word literal")
}

fn zs(s: &str) -> CoeffExpr {
    CoeffExpr::zs(w(s))
}

/// `Σ c · Π ZS[w]` from `(c, [w...])` rows.
fn poly(terms: &[(i64, &[&str])]) -> CoeffExpr {
    let mut out = CoeffExpr::zero();
    for (c, ws) in terms {
        let mut m = CoeffExpr::integer(*c);
        for s in *ws {
            m = &m * &zs(s);
        }
        out += m;
    }
    out
}

fn bar(terms: &[(i64, &str)]) -> BarTensor {
    BarTensor::from_terms(terms.iter().map(|(c, s)| (w(s), Rational::from_integer((*c).into()))))
        .expect("bar literal")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Worst numeric residual of `rels` (already in an MZV form).
fn worst_residual(rels: &[Relation], tol: f64, oracle: &MzvEngine) -> Result<(f64, String), String> {
    let mut reg = Regularizer::new();
    let mut worst = (0.0f64, String::new());
    for r in rels {
        let res = evaluate_relation(r, tol, &mut reg, oracle).map_err(err)?;
        if !(res.residual <= worst.0) {
            worst = (res.residual, r.key.to_string());
        }
    }
    Ok(worst)
}

fn matches_up_to_factor(rel: &Relation, want: &CoeffExpr) -> Result<(), String> {
    ensure(rel.lhs.proportional_to(want).is_some(), || {
        format!("{}: got {}, want {}", rel.key, rel.lhs, want)
    })
}

fn basis_counts() -> Outcome {
    let counts: Vec<usize> = (1..=3).map(|d| enumerate_b4(d).len()).collect();
    ensure(counts == [5, 19, 65], || format!("counts {counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn degree_one_relations() -> Outcome {
    let oracle = MzvEngine::default();
    let want = poly(&[(1, &["X0"]), (-1, &["X1"])]);
    let rels: Vec<Relation> = pentagon_relations_of_degree(
        1,
        &enumerate_b4(1).into_iter().map(B4Monomial::into_word).collect::<Vec<_>>(),
    )
    .map_err(err)?
    .into_iter()
    .map(|r| r.to_mzv_form(false))
    .collect();
    ensure(rels.len() == 5, || format!("{} rows", rels.len()))?;
    for r in &rels {
        matches_up_to_factor(r, &want)?;
    }
    let (res, key) = worst_residual(&rels, 1e-10, &oracle)?;
    ensure(res < 1e-10, || format!("residual {res:e} at {key}"))?;
    Ok(format!("5 rows, worst residual {res:.1e}"))
}

fn degree_2_generator_rows() -> Vec<(&'static str, CoeffExpr)> {
    vec![
        ("X24.X45", poly(&[(1, &["X0", "X1"]), (-1, &["X1", "X1"])])),
        (
            "X24.X34",
            poly(&[
                (-1, &["X0", "X0"]),
                (1, &["X1", "X0"]),
                (-2, &["X1", "X1"]),
                (1, &["X0.X0"]),
                (1, &["X0.X1"]),
                (1, &["X1.X0"]),
                (1, &["X1.X1"]),
            ]),
        ),
        (
            "X34.X45",
            poly(&[(2, &["X0", "X0"]), (-1, &["X1", "X0"]), (-1, &["X0.X1"]), (-1, &["X1.X0"])]),
        ),
        (
            "X12.X23",
            poly(&[
                (2, &["X0", "X0"]),
                (-2, &["X1", "X0"]),
                (1, &["X1", "X1"]),
                (-1, &["X0.X1"]),
                (-1, &["X1.X0"]),
            ]),
        ),
    ]
}

fn degree_3_generator_rows() -> Vec<(&'static str, CoeffExpr)> {
    vec![
        ("X34.X24.X24", poly(&[(-1, &["X0.X0.X1"]), (-1, &["X0.X1.X0"]), (-1, &["X1.X0.X0"])])),
        ("X12.X23.X23", poly(&[(1, &["X0.X1.X1"]), (-1, &["X1.X0.X0"])])),
        ("X34.X45.X45", poly(&[(1, &["X0.X1.X1"]), (-1, &["X1.X0.X0"])])),
        ("X45.X24.X24", poly(&[(1, &["X0.X1.X1"]), (-1, &["X1.X0.X0"])])),
        ("X12.X12.X23", poly(&[(1, &["X1.X1.X0"]), (-1, &["X0.X0.X1"])])),
        ("X34.X34.X45", poly(&[(1, &["X1.X1.X0"]), (-1, &["X0.X0.X1"])])),
        ("X24.X45.X45", poly(&[(1, &["X1.X1.X0"]), (-1, &["X1.X0.X0"])])),
        (
            "X24.X34.X34",
            poly(&[
                (1, &["X0.X0.X1"]),
                (1, &["X0.X1.X0"]),
                (-1, &["X0.X1.X1"]),
                (1, &["X1.X0.X0"]),
                (1, &["X1.X1.X0"]),
            ]),
        ),
        ("X24.X45.X34", poly(&[(1, &["X1.X0.X0"]), (1, &["X1.X0.X1"]), (1, &["X1.X1.X0"])])),
        ("X24.X34.X45", poly(&[(1, &["X0.X1.X0"]), (2, &["X1.X1.X0"])])),
    ]
}

fn generator_relations() -> Outcome {
    let oracle = MzvEngine::default();
    let mut all = Vec::new();
    for (rows, simplify) in [(degree_2_generator_rows(), false), (degree_3_generator_rows(), true)] {
        for (key, want) in rows {
            let r = pentagon_relation(&w(key)).map_err(err)?.to_mzv_form(simplify);
            matches_up_to_factor(&r, &want)?;
            all.push(r);
        }
    }
    let (res, key) = worst_residual(&all, 1e-8, &oracle)?;
    ensure(res < 1e-8, || format!("residual {res:e} at {key}"))?;
    Ok(format!("{} rows, worst residual {res:.1e}", all.len()))
}

fn generator_dual_rows() -> Vec<(&'static str, BarTensor)> {
    vec![
        (
            "X34.X24.X24",
            bar(&[
                (1, "X12.X24.X24"),
                (1, "X23.X12.X24"),
                (-1, "X23.X23.X24"),
                (1, "X23.X23.X34"),
                (-1, "X23.X24.X24"),
                (1, "X23.X34.X24"),
                (1, "X34.X24.X24"),
            ]),
        ),
        ("X12.X23.X23", bar(&[(1, "X12.X23.X23")])),
        ("X34.X45.X45", bar(&[(1, "X34.X45.X45")])),
        ("X45.X24.X24", bar(&[(1, "X12.X24.X24"), (1, "X45.X24.X24")])),
        ("X12.X12.X23", bar(&[(1, "X12.X12.X23")])),
        ("X34.X34.X45", bar(&[(1, "X34.X34.X45")])),
        ("X24.X45.X45", bar(&[(1, "X12.X12.X24"), (-1, "X12.X24.X45"), (1, "X24.X45.X45")])),
        (
            "X24.X34.X34",
            bar(&[
                (1, "X12.X12.X24"),
                (-1, "X12.X23.X24"),
                (1, "X12.X23.X34"),
                (-1, "X12.X24.X34"),
                (-1, "X23.X12.X24"),
                (1, "X23.X23.X24"),
                (-1, "X23.X23.X34"),
                (1, "X23.X24.X34"),
                (-1, "X23.X34.X34"),
                (1, "X24.X34.X34"),
            ]),
        ),
        (
            "X24.X45.X34",
            bar(&[
                (1, "X12.X12.X24"),
                (-1, "X12.X23.X24"),
                (1, "X12.X23.X34"),
                (-1, "X12.X24.X34"),
                (1, "X24.X45.X34"),
            ]),
        ),
        (
            "X24.X34.X45",
            bar(&[
                (1, "X12.X12.X24"),
                (-1, "X12.X24.X45"),
                (-1, "X23.X12.X24"),
                (1, "X23.X24.X45"),
                (-1, "X23.X34.X45"),
                (1, "X24.X34.X45"),
            ]),
        ),
    ]
}

fn generator_duals() -> Outcome {
    let rows = generator_dual_rows();
    for (key, want) in &rows {
        let b = B4Monomial::new(w(key)).map_err(err)?;
        let got = dual_basis_element(&b).map_err(err)?;
        ensure(&got == want, || format!("{key}: got {got}, want {want}"))?;
    }
    Ok(format!("{} rows", rows.len()))
}

fn dual_methods() -> Outcome {
    let n = 4;
    let via3 = c3_via_product(n).map_err(err)?;
    let keys3 = Word::all_up_to_weight(&Alphabet::AX, n);
    for k in keys3.iter().skip(1) {
        let a = c3_coefficient(k).map_err(err)?;
        let b = via3.get(k).cloned().unwrap_or_else(CoeffExpr::zero);
        ensure(a == b, || format!("C3 {k}: {a} vs {b}"))?;
    }
    let via5 = c5_via_product(n).map_err(err)?;
    let keys5 = Word::all_up_to_weight(&Alphabet::AB, n);
    for k in keys5.iter().skip(1) {
        let a = c5_coefficient(k).map_err(err)?;
        let b = via5.get(k).cloned().unwrap_or_else(CoeffExpr::zero);
        ensure(a == b, || format!("C5 {k}: {a} vs {b}"))?;
    }
    Ok(format!("{} C3 keys, {} C5 keys", keys3.len() - 1, keys5.len() - 1))
}

fn numeric_sweep() -> Outcome {
    let oracle = MzvEngine::default();
    let mut report = Vec::new();
    for (family, n) in [(Family::TwoCycle, 6), (Family::Hexagon, 5), (Family::Pentagon, 4)] {
        let rels: Vec<Relation> = relations(family, n)
            .map_err(err)?
            .into_iter()
            .map(|r| r.to_mzv_form(false))
            .collect();
        let (res, key) = worst_residual(&rels, 1e-8, &oracle)?;
        ensure(res < 1e-8, || format!("{family} residual {res:e} at {key}"))?;
        report.push(format!("{family} {}: {res:.1e}", rels.len()));
    }
    Ok(report.join(", "))
}

fn euler_duality() -> Outcome {
    // split away from 1/2 so that a word and its dual take different routes
    let oracle = MzvEngine::with_split(40, Rational::new(1.into(), 3.into()));
    let z21 = oracle.zeta(&Composition::new(vec![2, 1]).map_err(err)?.to_word()).map_err(err)?;
    let z3 = oracle.zeta(&Composition::new(vec![3]).map_err(err)?.to_word()).map_err(err)?;
    let diff = (&z21 - &z3).abs().to_f64();
    ensure(diff < 1e-10, || format!("|ζ(2,1) - ζ(3)| = {diff:e}"))?;
    let mut checked = 0;
    for x in Word::all_up_to_weight(&Alphabet::AX, 6) {
        if x.is_convergent() {
            ensure(duality_check(&x, 1e-9, &oracle).map_err(err)?, || format!("duality fails at {x}"))?;
            checked += 1;
        }
    }
    Ok(format!("|ζ(2,1)-ζ(3)| = {diff:.1e}, {checked} duality pairs"))
}

fn generators() -> Outcome {
    let duals = DualBasis::new(3).map_err(err)?;
    let gens = multiplicative_generators(3, &duals).map_err(err)?;
    let counts = [gens.degree(2).len(), gens.degree(3).len()];
    ensure(counts == [4, 10], || format!("counts {counts:?}"))?;
    for gs in [gens, GeneratorSet::tables()] {
        for d in 1..=3 {
            for (b, t) in duals.degree(d) {
                let p = express_in_generators(t, &gs, &duals).map_err(err)?;
                let back = expand_shuffle_poly(&p, &duals).map_err(err)?;
                ensure(&back == t, || format!("round trip fails for {b}"))?;
            }
        }
    }
    Ok(format!("counts {counts:?}, round trip over 89 duals"))
}

fn integrability() -> Outcome {
    let mut n = 0;
    for d in 1..=3 {
        for b in enumerate_b4(d) {
            let t = dual_basis_element(&b).map_err(err)?;
            ensure(integrability_check(&t).map_err(err)?.is_ok(), || format!("{b}* not integrable"))?;
            n += 1;
        }
    }
    let bad = bar(&[(1, "X12.X45")]);
    ensure(integrability_check(&bad).map_err(err)?.is_err(), || "[w12|w45] passes".into())?;
    let good = bar(&[(1, "X12.X45"), (1, "X45.X12")]);
    ensure(integrability_check(&good).map_err(err)?.is_ok(), || "symmetrized fails".into())?;
    Ok(format!("{n} duals integrable"))
}

fn restriction() -> Outcome {
    let n = 4;
    let two: BTreeMap<Word, Relation> = two_cycle_relations(n)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.key.clone(), r.to_mzv_form(true)))
        .collect();
    let mut count = 0;
    for key in Word::all_up_to_weight(&Alphabet::AB, n) {
        if key.is_empty() || top_word_to_ax(&key).is_none() {
            continue;
        }
        let ax = top_word_to_ax(&key).expect("checked");
        let p = pentagon_relation(&key).map_err(err)?.to_mzv_form(true);
        let t = &two[&ax];
        ensure(p.lhs == t.lhs, || format!("{key}: {} vs {}", p.lhs, t.lhs))?;
        count += 1;
    }
    Ok(format!("{count} keys"))
}

fn rewriting() -> Outcome {
    let words = Word::all_up_to_weight(&Alphabet::AB, 4);
    let project = |c: &LinComb| {
        let mut out: BTreeMap<Word, i64> = BTreeMap::new();
        for (x, k) in c {
            if let Some(y) = f4_word(x) {
                *out.entry(y).or_insert(0) += k;
            }
        }
        out.retain(|_, k| *k != 0);
        out
    };
    let mut steps = 0usize;
    for x in &words {
        let mut bad: Option<String> = None;
        let mut hook = |a: &Word, out: &LinComb| {
            steps += 1;
            for b in out.keys() {
                if measure(b) >= measure(a) && bad.is_none() {
                    bad = Some(format!("{a} -> {b}"));
                }
            }
        };
        let left = normal_form_word(x, Strategy::Leftmost, usize::MAX, Some(&mut hook)).map_err(err)?;
        let right = normal_form_word(x, Strategy::Rightmost, usize::MAX, Some(&mut hook)).map_err(err)?;
        if let Some(b) = bad {
            return Err(format!("measure does not decrease: {b}"));
        }
        ensure(left == right, || format!("strategies disagree on {x}"))?;
        let single = LinComb::from([(x.clone(), 1)]);
        ensure(project(&single) == project(&left), || format!("projection changes at {x}"))?;
    }
    Ok(format!("{} words, {steps} rewrite steps", words.len()))
}

fn grouplike() -> Outcome {
    let n = 5;
    let oracle = MzvEngine::default();
    let mut phi = NCSeries::zero(Alphabet::AX, n);
    for x in Word::all_up_to_weight(&Alphabet::AX, n) {
        let sign = if x.depth() % 2 == 0 { 1 } else { -1 };
        phi.add_term(x.clone(), CoeffExpr::zs(x).scale(&Rational::from_integer(sign.into())))
            .map_err(err)?;
    }
    let reg = RefCell::new(Regularizer::new());
    let eval = |e: &CoeffExpr| -> f64 {
        e.terms()
            .map(|(m, c)| {
                let mut v = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
                for s in m.expanded() {
                    match s {
                        azbk_core::Symbol::Zs(x) => {
                            v *= zsha_value(x, &mut reg.borrow_mut(), &oracle)
                                .map(|r| r.to_f64())
                                .unwrap_or(f64::NAN)
                        }
                        _ => v = f64::NAN,
                    }
                }
                v
            })
            .sum()
    };
    let report = grouplike_check(&phi, &eval, 1e-8);
    ensure(report.passed, || format!("worst {:e} at {:?}", report.worst_violation, report.worst_pair))?;
    Ok(format!("{} pairs, worst {:.1e}", report.pairs_checked, report.worst_violation))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("basis counts", 1, basis_counts),
        ("degree-1 relations", 1, degree_one_relations),
        ("generator relations", 10, generator_relations),
        ("generator duals", 5, generator_duals),
        ("dual-method oracle", 120, dual_methods),
        ("numeric sweep", 600, numeric_sweep),
        ("euler and duality", 60, euler_duality),
        ("generator counts", 60, generators),
        ("integrability", 5, integrability),
        ("pentagon restricts to two-cycle", 30, restriction),
        ("rewriting soundness", 60, rewriting),
        ("group-like", 120, grouplike),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match line {
            Ok(detail) => println!(
                "PASS {:>2} {name} ({:.2}s / {limit}s): {detail}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "FAIL {:>2} {name} ({:.2}s / {limit}s): {detail}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
