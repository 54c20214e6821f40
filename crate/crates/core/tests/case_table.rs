//! The per-prime case table for `u~` against minimal-model reduction of
//! the twist itself.

mod common;

use std::collections::BTreeMap;

use common::{check_case_table, random_minimal_model, random_square_free, rng};
use twistperiod::{
    compute_up, compute_utilde, predict_twist_disc_valuation, CaseLabel, Model, Rational, Valuation,
};

#[test]
fn random_minimal_curves() {
    let mut r = rng(0x7157);
    let mut seen: BTreeMap<CaseLabel, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for _ in 0..600 {
        let m = random_minimal_model(&mut r, 20);
        for _ in 0..3 {
            let d = random_square_free(&mut r, 50);
            match check_case_table(&m, d) {
                Ok(labels) => labels
                    .into_iter()
                    .for_each(|l| *seen.entry(l).or_default() += 1),
                Err(e) => failures.push(e),
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures, first: {:?}",
        failures.len(),
        &failures[..failures.len().min(5)]
    );
    // every branch that can occur for these sizes is exercised
    for label in [CaseLabel::OddSmallLambda, CaseLabel::OddLargeLambda] {
        assert!(seen.contains_key(&label), "{label} never seen: {seen:?}");
    }
    assert!(
        seen.keys().filter(|l| l.as_str().starts_with('2')).count() >= 4,
        "{seen:?}"
    );
}

#[test]
fn curves_with_additive_reduction_at_two_and_three() {
    // curves chosen so that 2 and 3 divide the discriminant heavily
    let mut failures = Vec::new();
    let curves = [
        [0, 0, 0, -1, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, 0, -2],
        [0, 0, 0, -2, 0],
        [0, 0, 0, 4, 0],
        [0, 0, 1, 0, -7],
        [0, 0, 0, -3, 1],
        [0, 1, 0, -2, 0],
        [1, -1, 1, -20, 17],
    ];
    for a in curves {
        let Ok(m) = Model::from_ints(a) else { continue };
        let m = twistperiod::minimize(&m).unwrap().minimal;
        for d in [
            -15, -14, -11, -10, -7, -6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 21, 30,
            33, 35, 42,
        ] {
            if let Err(e) = check_case_table(&m, d) {
                failures.push(e);
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn worked_examples() {
    let e1 = Model::from_ints([0, -1, 0, -6883, 222137]).unwrap();
    let e2 = Model::from_ints([1, 0, 1, -173, 879]).unwrap();
    let c27 = Model::from_ints([0, 0, 1, 0, -7]).unwrap();
    assert_eq!(compute_utilde(&e1, 5).unwrap().utilde, Rational::from(5));
    assert_eq!(compute_utilde(&e2, -7).unwrap().utilde, Rational::from(7));
    let u = compute_utilde(&c27, -3).unwrap();
    assert_eq!(u.utilde, Rational::from(3));
    assert_eq!(compute_up(&c27, -3, 3).unwrap().0, Rational::from(3));
    assert!(predict_twist_disc_valuation(&e1, 5, 5).unwrap() < Valuation::Finite(6));
    // odd primes away from d contribute nothing
    assert_eq!(
        compute_up(&e1, 5, 7).unwrap(),
        (Rational::one(), CaseLabel::OddCoprime)
    );
}

#[test]
fn rare_two_adic_branches() {
    // found by exhaustive search; random sampling almost never lands here
    let cases = [
        ([0, -1, 0, -200, -400], -1, CaseLabel::TwoD3Shrink, 2),
        ([0, 1, 0, -193, -353], -30, CaseLabel::TwoD2Shrink18, 4),
    ];
    for (a, d, label, u) in cases {
        let m = Model::from_ints(a).unwrap();
        let result = compute_utilde(&m, d).unwrap();
        assert_eq!(result.get(2).unwrap().case, label);
        assert_eq!(result.utilde, Rational::from(u));
        check_case_table(&m, d).unwrap();
        assert!(
            twistperiod::verify_theorem(&m, d, 128, 1e-9)
                .unwrap()
                .passed
        );
    }
}
