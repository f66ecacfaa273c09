use azbk_core::bar::{
    dual_basis_element, express_in_generators, integrability_check, iterated_integral_gamma,
    iterated_integral_gamma_value, multiplicative_generators, reg_restrict, BarTensor, DualBasis,
    GammaEdge, GeneratorSet,
};
use azbk_core::braid::{enumerate_b4, l_coefficients, B4Monomial};
use azbk_core::linalg::Span;
use azbk_core::mzv::{shuffle_normal_form, MzvEngine, Regularizer};
use azbk_core::relations::coefficients::c5_coefficient;
use azbk_core::relations::mzv_substitution;
use azbk_core::{Alphabet, Letter, Rational, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn b4(s: &str) -> B4Monomial {
    B4Monomial::new(w(s)).unwrap()
}

fn single(s: &str) -> BarTensor {
    BarTensor::word(w(s)).unwrap()
}

#[test]
fn bar_side_matches_algebra_side() {
    for x in Word::all_up_to_weight(&Alphabet::AB, 3).into_iter().skip(1) {
        let bar = iterated_integral_gamma(&BarTensor::word(x.clone()).unwrap()).unwrap();
        let alg = mzv_substitution(&c5_coefficient(&x).unwrap());
        assert_eq!(bar, alg, "{x}");
    }
}

#[test]
fn restriction_table() {
    assert_eq!(reg_restrict(Letter::X12, GammaEdge::P35), Some(Letter::X0));
    assert_eq!(reg_restrict(Letter::X23, GammaEdge::P35), Some(Letter::X1));
    for l in [Letter::X24, Letter::X34, Letter::X45] {
        assert_eq!(reg_restrict(l, GammaEdge::P35), None);
    }
    assert_eq!(reg_restrict(Letter::X12, GammaEdge::P13), None);
    assert_eq!(reg_restrict(Letter::X0, GammaEdge::P13), None);
}

#[test]
fn duality_pairing_and_rank() {
    for (d, dim) in [(1, 5), (2, 19), (3, 65)] {
        let basis = enumerate_b4(d);
        assert_eq!(basis.len(), dim);
        let mut span: Span<Word> = Span::new();
        let duals: Vec<BarTensor> = basis.iter().map(|b| dual_basis_element(b).unwrap()).collect();
        for (i, t) in duals.iter().enumerate() {
            span.insert(&t.terms().map(|(x, c)| (x.clone(), c.clone())).collect(), i);
        }
        assert_eq!(span.rank(), dim);
        for x in Word::all_of_weight(&Alphabet::AB, d) {
            let l = l_coefficients(&x).unwrap();
            for (b, t) in basis.iter().zip(&duals) {
                let want = Rational::from_integer(l.get(b).copied().unwrap_or(0).into());
                assert_eq!(t.coefficient(&x), want, "{b}, {x}");
            }
        }
    }
}

#[test]
fn worked_duals() {
    let d = dual_basis_element(&b4("X23.X12")).unwrap();
    assert_eq!(d, single("X23").shuffle(&single("X12")).sub(&single("X12.X23")));
    let d = dual_basis_element(&b4("X24.X23.X12")).unwrap();
    assert_eq!(d, single("X24").shuffle(&single("X23.X12")));
    let duals = DualBasis::new(3).unwrap();
    for g in GeneratorSet::tables().all() {
        let t = dual_basis_element(g).unwrap();
        let p = express_in_generators(&t, &GeneratorSet::tables(), &duals).unwrap();
        assert_eq!(p.len(), 1, "{g}");
        assert_eq!(p.keys().next().unwrap(), &vec![g.clone()]);
    }
}

#[test]
fn integrability_examples() {
    assert_eq!(integrability_check(&single("X12.X45")).unwrap(), Err(1));
    let sym = single("X12.X45").add(&single("X45.X12"));
    assert_eq!(integrability_check(&sym).unwrap(), Ok(()));
    assert_eq!(integrability_check(&single("X12.X23")).unwrap(), Ok(()));
    assert_eq!(integrability_check(&single("X45.X12.X23")).unwrap(), Err(2));
    let mixed = single("X12").add(&single("X12.X23"));
    assert!(integrability_check(&mixed).is_err());
    let duals = DualBasis::new(2).unwrap();
    let gens = GeneratorSet::tables();
    assert!(express_in_generators(&single("X12.X45"), &gens, &duals).is_err());
}

#[test]
fn greedy_generators_have_the_expected_counts() {
    let duals = DualBasis::new(3).unwrap();
    let gens = multiplicative_generators(3, &duals).unwrap();
    assert_eq!(gens.degree(1).len(), 5);
    assert_eq!(gens.degree(2).len(), 4);
    assert_eq!(gens.degree(3).len(), 10);
    assert!(multiplicative_generators(4, &duals).is_err());
}

#[test]
fn shuffle_values_multiply() {
    let engine = MzvEngine::default();
    let mut reg = Regularizer::new();
    let duals = DualBasis::new(2).unwrap();
    let all: Vec<&BarTensor> = (1..=2).flat_map(|d| duals.degree(d).iter().map(|(_, t)| t)).collect();
    for (i, f1) in all.iter().enumerate() {
        for f2 in &all[i..] {
            if f1.degree().unwrap() + f2.degree().unwrap() > 3 {
                continue;
            }
            let a = iterated_integral_gamma(f1).unwrap();
            let b = iterated_integral_gamma(f2).unwrap();
            let ab = iterated_integral_gamma(&f1.shuffle(f2)).unwrap();
            let diff = &(&a * &b) - &ab;
            assert!(shuffle_normal_form(&diff, &mut reg).unwrap().is_zero(), "{f1} ⧢ {f2}");
            let va = iterated_integral_gamma_value(f1, &mut reg, &engine).unwrap();
            let vb = iterated_integral_gamma_value(f2, &mut reg, &engine).unwrap();
            let vab = iterated_integral_gamma_value(&f1.shuffle(f2), &mut reg, &engine).unwrap();
            let re = &(&va.re * &vb.re) - &(&va.im * &vb.im);
            let im = &(&va.re * &vb.im) + &(&va.im * &vb.re);
            let err = (&re - &vab.re).abs().to_f64() + (&im - &vab.im).abs().to_f64();
            assert!(err < 1e-8, "{f1} ⧢ {f2}: {err:e}");
        }
    }
}

#[test]
fn text_form() {
    let t = dual_basis_element(&b4("X24.X45")).unwrap();
    assert_eq!(t.to_string(), "-1 [w12|w24] +1 [w24|w45]");
    assert_eq!(BarTensor::zero().to_string(), "0");
}
