use std::collections::BTreeMap;

use azbk_core::braid::{
    default_budget, enumerate_b4, f4_word, is_b4, l_coefficients, measure, normal_form_word,
    LinComb, Strategy,
};
use azbk_core::{Alphabet, Word};

fn words_up_to(n: usize) -> Vec<Word> {
    Word::all_up_to_weight(&Alphabet::AB, n)
}

/// Applies `f4` to a linear combination of words over `AB`.
fn project(c: &LinComb) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    for (w, k) in c {
        if let Some(x) = f4_word(w) {
            *out.entry(x).or_insert(0) += k;
        }
    }
    out.retain(|_, k| *k != 0);
    out
}

#[test]
fn measure_strictly_decreases_on_every_step() {
    for w in words_up_to(4) {
        for strategy in [Strategy::Leftmost, Strategy::Rightmost] {
            let mut hook = |x: &Word, out: &LinComb| {
                for y in out.keys() {
                    assert!(measure(y) < measure(x), "{x} -> {y}");
                }
            };
            normal_form_word(&w, strategy, usize::MAX, Some(&mut hook)).unwrap();
        }
    }
}

#[test]
fn default_budget_suffices_through_weight_4() {
    let mut worst = BTreeMap::new();
    for w in Word::all_up_to_weight(&Alphabet::AB51, 4) {
        let mut steps = 0usize;
        let mut hook = |_: &Word, _: &LinComb| steps += 1;
        normal_form_word(&w, Strategy::Leftmost, usize::MAX, Some(&mut hook)).unwrap();
        let e = worst.entry(w.weight()).or_insert(0usize);
        *e = (*e).max(steps);
        assert!(steps <= default_budget(w.weight()), "{w}: {steps} steps");
    }
}

#[test]
fn leftmost_and_rightmost_agree() {
    for w in words_up_to(4) {
        let a = normal_form_word(&w, Strategy::Leftmost, usize::MAX, None).unwrap();
        let b = normal_form_word(&w, Strategy::Rightmost, usize::MAX, None).unwrap();
        assert_eq!(a, b, "{w}");
    }
}

#[test]
fn projection_commutes_with_normal_form() {
    for w in words_up_to(4) {
        let nf = normal_form_word(&w, Strategy::Leftmost, usize::MAX, None).unwrap();
        let lhs = project(&LinComb::from([(w.clone(), 1)]));
        assert_eq!(lhs, project(&nf), "{w}");
    }
}

#[test]
fn normal_forms_are_graded_and_in_b4() {
    for w in words_up_to(4) {
        for (b, _) in l_coefficients(&w).unwrap() {
            assert_eq!(b.degree(), w.weight());
            assert!(is_b4(b.word()));
        }
    }
}

#[test]
fn basis_is_fixed_through_degree_4() {
    for d in 0..=4 {
        for b in enumerate_b4(d) {
            let l = l_coefficients(b.word()).unwrap();
            assert_eq!(l.len(), 1);
            assert_eq!(l[&b], 1);
        }
    }
}

#[test]
fn x51_words_reduce() {
    let l = l_coefficients(&"X12.X51".parse().unwrap()).unwrap();
    // X12.X23 + X12.X24 + X12.X34 with X12.X24 and X12.X34 rewritten
    let got: BTreeMap<String, i64> = l.iter().map(|(b, c)| (b.to_string(), *c)).collect();
    let want: BTreeMap<String, i64> = [
        ("X12.X23", 1),
        ("X34.X24", 1),
        ("X45.X24", 1),
        ("X24.X34", -1),
        ("X24.X45", -1),
        ("X24.X12", 1),
        ("X34.X12", 1),
    ]
    .into_iter()
    .map(|(s, c)| (s.to_string(), c))
    .collect();
    assert_eq!(got, want);
}
