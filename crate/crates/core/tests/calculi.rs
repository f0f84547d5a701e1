//! Worked examples on the shipped calculi through the public API.

use hopfcalc::linalg::rat;
use hopfcalc::verify::run_all;
use hopfcalc::wedge::{build_exterior, compute_braiding};
use hopfcalc::{dsl, CrossAlgebra, FodcData, WedgeOptions};

fn calculus(name: &str) -> FodcData {
    dsl::builtin(name).unwrap().calculus().unwrap()
}

#[test]
fn exterior_dimensions() {
    for (name, dims) in [("z2", vec![1, 1, 0]), ("z3", vec![1, 2, 1, 0]), ("s3", vec![1, 3, 4, 3, 1, 0])] {
        let ext = build_exterior(&calculus(name), dims.len() - 1).unwrap();
        assert_eq!(ext.dims(), dims, "{name}");
    }
}

#[test]
fn s3_braiding_is_a_permutation() {
    let sigma = compute_braiding(&calculus("s3")).sigma;
    assert_eq!((sigma.rows(), sigma.cols()), (9, 9));
    for r in 0..9 {
        let row = sigma.row(r);
        assert!(row.iter().all(|x| *x == rat(0) || *x == rat(1)));
        assert_eq!(row.iter().filter(|x| **x == rat(1)).count(), 1);
        assert_eq!(sigma.column(r).iter().filter(|x| **x == rat(1)).count(), 1);
    }
}

#[test]
fn z2_worked_examples() {
    let cp = CrossAlgebra::new(calculus("z2"), WedgeOptions::with_max_degree(2)).unwrap();
    let eval = |t: &str| dsl::print_normal(&dsl::parse_and_evaluate(t, &cp).unwrap(), &cp);
    assert_eq!(eval("d(e[g])"), "(e[e] - e[g]) * w[1]");
    assert_eq!(eval("w[1]*w[1]"), "0");
    assert_eq!(eval("w[1]*e[g]"), "e[e] * w[1]");
    assert_eq!(eval("gamma[1]*w[1] + w[1]*gamma[1]"), "u[g]");
}

#[test]
fn all_default_suites_pass() {
    for name in dsl::BUILTINS {
        for r in run_all(&calculus(name), 3) {
            assert!(r.passed(), "{name} {}: {:?}", r.name, r.failures().next());
        }
    }
}

#[test]
fn unknown_generator_is_rejected() {
    let mut spec = dsl::builtin("z3").unwrap();
    spec.generators = vec!["x".into()];
    assert!(spec.calculus().is_err());
    // Abelian: every subset without the identity is ad-invariant.
    spec.generators = vec!["c".into()];
    assert_eq!(spec.calculus().unwrap().n(), 1);
    spec.generators = vec!["e".into(), "c".into()];
    assert_eq!(spec.calculus().unwrap_err().to_string(), "identity in S");
}
