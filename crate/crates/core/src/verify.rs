//! Identity suites over a calculus, each exhaustive over basis elements.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{check_consistency, check_presentation, FodcData};
use crate::crossprod::{action_sign, gamma_word_pairing, CrossAlgebra, CrossElement, DualElement, DualTensor};
use crate::duality::check_covariance;
use crate::hopf::check_hopf_axioms;
use crate::linalg::{rat, Rational};
use crate::report::{format_rational, SuiteReport};
use crate::wedge::{check_d_squared, check_graded_bialgebra, check_graded_leibniz, GradedForm, WedgeOptions};

/// Suite names accepted by [`run_suites`], in report order.
pub const SUITES: [&str; 10] = [
    "hopf-axioms",
    "covariance",
    "consistency",
    "graded-bialgebra",
    "d-squared",
    "graded-leibniz",
    "contraction",
    "lie-d-commute",
    "dual-structure",
    "cartan",
];

/// Extra suite, not part of the default run: random cross products checked
/// against the action of their unordered factors on forms.
pub const ORACLE_SUITE: &str = "oracle";

fn finish(mut rep: SuiteReport, start: Instant) -> SuiteReport {
    rep.elapsed = start.elapsed();
    rep
}

/// `γ_i ▷ a = 0` and `γ_i ▷ da = χ_i ▷ a` for all `i` and basis functions `a`.
pub fn suite_contraction(cp: &CrossAlgebra) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("contraction");
    let w = cp.wedge();
    let calc = cp.calculus();
    let p = calc.paired();
    let show = |f: &GradedForm| w.format_form(f);
    for i in 0..calc.n() {
        for a in 0..p.alg().dim() {
            let av = p.alg().basis(a);
            let fa = w.function(&av);
            let label = format!("{},{}", i + 1, p.alg().atom(a));
            let lhs = cp.act(&cp.gamma(i), &fa);
            rep.compare("gamma-on-function", label.clone(), &lhs, &w.zero(), show);
            let lhs = cp.act(&cp.gamma(i), &w.exterior_derivative(&fa));
            let rhs = w.function(&p.left_act(calc.chi(i), &av).expect("same pairing"));
            rep.compare("gamma-on-differential", label, &lhs, &rhs, show);
        }
    }
    finish(rep, start)
}

/// `h ▷ dρ = d(h ▷ ρ)` for basis `h ∈ A*` and basis forms of degree below the maximum.
pub fn suite_lie_d_commute(cp: &CrossAlgebra) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("lie-d-commute");
    let w = cp.wedge();
    let dual = cp.dual_hopf();
    for x in 0..dual.dim() {
        let h = cp.from_dual_hopf(&dual.basis(x));
        for m in 0..w.layout().total() {
            if w.layout().degree_of(m) + 1 > w.max_degree() {
                continue;
            }
            let rho = w.monomial(m);
            let lhs = cp.act(&h, &w.exterior_derivative(&rho));
            let rhs = w.exterior_derivative(&cp.act(&h, &rho));
            let label = format!("{},{}", dual.atom(x), w.format_form(&rho));
            rep.compare("lie-commutes-with-d", label, &lhs, &rhs, |f| w.format_form(f));
        }
    }
    finish(rep, start)
}

/// `<θ ⊗ φ, x ⊗ y> = <θ, x><φ, y>`.
fn pair_tensor(cp: &CrossAlgebra, t: &DualTensor, x: &GradedForm, y: &GradedForm) -> Rational {
    let mut acc = Rational::zero();
    for ((l, r), c) in t {
        let a = cp.pair(&cp.dual_monomial(*l), x);
        if a.is_zero() {
            continue;
        }
        acc += c * a * cp.pair(&cp.dual_monomial(*r), y);
    }
    acc
}

/// `<θφ, ρ> = <θ, ρ_(1)> <φ, ρ_(2)>` through the form coproduct.
pub fn pair_product(cp: &CrossAlgebra, theta: &DualElement, phi: &DualElement, rho: &GradedForm) -> Rational {
    let w = cp.wedge();
    let mut acc = Rational::zero();
    for ((l, r), c) in w.graded_coproduct(rho).terms() {
        let a = cp.pair(theta, &w.monomial(*l));
        if a.is_zero() {
            continue;
        }
        acc += c * a * cp.pair(phi, &w.monomial(*r));
    }
    acc
}

/// Coproduct of `γ_i` against products of forms, the rewrite `γ_i h =
/// (r^j_i ▷ h) γ_j` as functionals, and the degree-2 pairing against
/// `δ_i^m δ_j^n - σ^{mn}_{ij}` together with its vanishing on `ker(I - σ)`.
pub fn suite_dual_structure(cp: &CrossAlgebra) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("dual-structure");
    let w = cp.wedge();
    let calc = cp.calculus();
    let p = calc.paired();
    let n = calc.n();
    let fl = w.layout();
    let q = |x: &Rational| format_rational(x);

    for i in 0..n {
        let delta = cp.gamma_coproduct(i);
        let label = format!("{}", i + 1);
        rep.compare("gamma-coproduct", label, &cp.dual_coproduct(&cp.gamma(i)), &delta, |t| cp.format_dual_tensor(t));
        for a in 0..fl.total() {
            for b in 0..fl.total() {
                if fl.degree_of(a) + fl.degree_of(b) != 1 {
                    continue;
                }
                let (x, y) = (w.monomial(a), w.monomial(b));
                let lhs = cp.pair(&cp.gamma(i), &w.wedge_multiply(&x, &y));
                let rhs = pair_tensor(cp, &delta, &x, &y);
                let label = format!("{},{},{}", i + 1, w.format_form(&x), w.format_form(&y));
                rep.compare("gamma-coproduct-pairing", label, &lhs, &rhs, q);
            }
        }
    }

    let dual = cp.dual_hopf();
    if w.max_degree() >= 1 {
        for i in 0..n {
            for x in 0..dual.dim() {
                let h = cp.from_dual_hopf(&dual.basis(x));
                let mut rewritten = cp.dual_zero();
                for j in 0..n {
                    let rh = p.act_on_dual_raw(calc.r(j, i).coeffs(), h_coeffs(cp, &h).as_slice());
                    let rh = cp.from_dual_hopf(&dual.element(rh).expect("dimension"));
                    rewritten = rewritten.add(&cp.dual_multiply(&rh, &cp.gamma(j)));
                }
                for m in fl.range(1) {
                    let rho = w.monomial(m);
                    let lhs = pair_product(cp, &cp.gamma(i), &h, &rho);
                    let rhs = cp.pair(&rewritten, &rho);
                    let label = format!("{},{},{}", i + 1, dual.atom(x), w.format_form(&rho));
                    rep.compare("gamma-past-dual", label, &lhs, &rhs, q);
                }
            }
        }
    }

    if w.max_degree() >= 2 {
        let sigma = &w.braiding().sigma;
        let alg = p.alg();
        let closed = |i: usize, j: usize, m: usize, k: usize| {
            let delta = if i == m && j == k { Rational::one() } else { Rational::zero() };
            delta - sigma.get(i * n + j, m * n + k)
        };
        for i in 0..n {
            for j in 0..n {
                let gg = cp.dual_multiply(&cp.gamma(i), &cp.gamma(j));
                for m in 0..n {
                    for k in 0..n {
                        let word = w.wedge_multiply(&w.omega(m), &w.omega(k));
                        for t in 0..alg.dim() {
                            let rho = w.wedge_multiply(&w.function(&alg.basis(t)), &word);
                            let lhs = cp.pair(&gg, &rho);
                            let rhs = &alg.counit_table()[t] * closed(i, j, m, k);
                            let label = format!("{},{},{},{},{}", i + 1, j + 1, m + 1, k + 1, alg.atom(t));
                            rep.compare("gamma-gamma-pairing", label, &lhs, &rhs, q);
                        }
                    }
                }
                for (kv, kernel) in w.braiding().relations().iter().enumerate() {
                    let mut lhs = Rational::zero();
                    for m in 0..n {
                        for k in 0..n {
                            lhs += &kernel[m * n + k] * closed(i, j, m, k);
                        }
                    }
                    let label = format!("{},{},k{}", i + 1, j + 1, kv + 1);
                    rep.compare("pairing-vanishes-on-relations", label, &lhs, &Rational::zero(), q);
                }
            }
        }
    }
    finish(rep, start)
}

fn h_coeffs(cp: &CrossAlgebra, h: &DualElement) -> Vec<Rational> {
    cp.as_vector_field(h).expect("degree-0 element")
}

/// `χ_i ▷ ρ = d(γ_i ▷ ρ) + γ_i ▷ dρ` for every basis form of degree below the
/// maximum, and the three separately computed terms of the degree-1 step on
/// `a db`: `γ_i ▷ (a db)`, `γ_i ▷ (da db)` and `χ_i ▷ (a db)`.
pub fn suite_cartan(cp: &CrossAlgebra) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new("cartan");
    let w = cp.wedge();
    let calc = cp.calculus();
    let p = calc.paired();
    let alg = p.alg();
    let n = calc.n();
    let show = |f: &GradedForm| w.format_form(f);
    for i in 0..n {
        let chi = cp.from_dual_hopf(calc.chi(i));
        let gamma = cp.gamma(i);
        for m in 0..w.layout().total() {
            if w.layout().degree_of(m) + 1 > w.max_degree() {
                continue;
            }
            let rho = w.monomial(m);
            let lhs = cp.act(&chi, &rho);
            let rhs = w
                .exterior_derivative(&cp.act(&gamma, &rho))
                .add(&cp.act(&gamma, &w.exterior_derivative(&rho)));
            rep.compare("cartan", format!("{},{}", i + 1, w.format_form(&rho)), &lhs, &rhs, show);
        }
    }
    if w.max_degree() < 2 {
        return finish(rep, start);
    }
    for i in 0..n {
        let chi_i = cp.from_dual_hopf(calc.chi(i));
        let gamma = cp.gamma(i);
        for a in 0..alg.dim() {
            let fa = w.function(&alg.basis(a));
            let da = w.exterior_derivative(&fa);
            for b in 0..alg.dim() {
                let fb = w.function(&alg.basis(b));
                let db = w.exterior_derivative(&fb);
                let label = format!("{},{},{}", i + 1, alg.atom(a), alg.atom(b));
                let chi_b = cp.act(&chi_i, &fb);
                // γ_i ▷ (a db) = a (χ_i ▷ b)
                let lhs = cp.act(&gamma, &w.wedge_multiply(&fa, &db));
                rep.compare("midstep-inner", label.clone(), &lhs, &w.wedge_multiply(&fa, &chi_b), show);
                // γ_i ▷ (da db) = -da (χ_i ▷ b) + (χ_j ▷ a)(f^j_i ▷ db)
                let mut twisted = w.zero();
                for j in 0..n {
                    let chi_j_a = cp.act(&cp.from_dual_hopf(calc.chi(j)), &fa);
                    let f_db = cp.act(&cp.from_dual_hopf(calc.f(j, i)), &db);
                    twisted = twisted.add(&w.wedge_multiply(&chi_j_a, &f_db));
                }
                let lhs = cp.act(&gamma, &w.wedge_multiply(&da, &db));
                let rhs = twisted.sub(&w.wedge_multiply(&da, &chi_b));
                rep.compare("midstep-differential", label.clone(), &lhs, &rhs, show);
                // χ_i ▷ (a db) = (χ_j ▷ a)(f^j_i ▷ db) + a d(χ_i ▷ b)
                let lhs = cp.act(&chi_i, &w.wedge_multiply(&fa, &db));
                let rhs = twisted.add(&w.wedge_multiply(&fa, &w.exterior_derivative(&chi_b)));
                rep.compare("midstep-lie", label, &lhs, &rhs, show);
            }
        }
    }
    finish(rep, start)
}

/// Random normal-ordered products `XY` compared with the composite action
/// `y -> X(Y(y))` on every basis form, where the factors act through
/// pairings evaluated directly from the form coproduct.
pub fn suite_oracle(cp: &CrossAlgebra, pairs: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rep = SuiteReport::new(ORACLE_SUITE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = cp.wedge();
    let ft = w.layout().total();
    let dt = cp.dual_layout().total();
    let mut memo = HashMap::new();
    let random_element = |rng: &mut ChaCha8Rng| {
        let mut x = CrossElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            x.add_term(rng.gen_range(0..ft), rng.gen_range(0..dt), rat(c));
        }
        x
    };
    for k in 0..pairs {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let xy = cp.cross_multiply(&x, &y);
        for m in 0..ft {
            let basis = w.monomial(m);
            let lhs = cp.apply(&xy, &basis);
            let inner = oracle_apply(cp, &y, &basis, &mut memo);
            let rhs = oracle_apply(cp, &x, &inner, &mut memo);
            let label = format!("{},{}", k + 1, w.format_form(&basis));
            rep.compare("product-acts-as-composite", label, &lhs, &rhs, |f| w.format_form(f));
        }
    }
    finish(rep, start)
}

fn oracle_apply(
    cp: &CrossAlgebra,
    x: &CrossElement,
    y: &GradedForm,
    memo: &mut HashMap<(Vec<usize>, usize), Rational>,
) -> GradedForm {
    let w = cp.wedge();
    let dl = cp.dual_layout();
    let fl = w.layout();
    let pair0 = cp.calculus().paired();
    let dual_dim = cp.dual_hopf().dim();
    let mut out = w.zero();
    for ((f, d), c) in x.terms() {
        let (k, xi, v) = dl.decode(*d);
        let word = cp.dual_words(k)[v].clone();
        let ux = crate::linalg::unit_vector(dual_dim, xi);
        let mut acted = w.zero();
        for (m, ym) in y.terms() {
            let deg = fl.degree_of(m);
            if deg < k {
                continue;
            }
            // <u_x γ^V, ρ> = <u_x, ρ_(1)> <γ^V, ρ_(2)>, then ρ_(1) <θ, ρ_(2)>.
            for ((l, r), cr) in w.monomial_coproduct_table(m).terms() {
                if fl.degree_of(*r) != k {
                    continue;
                }
                let mut val = Rational::zero();
                for ((l2, r2), c2) in w.monomial_coproduct_table(*r).terms() {
                    let (d2, t2, _) = fl.decode(*l2);
                    if d2 != 0 {
                        continue;
                    }
                    let p = pair0.pair_raw(&ux, &crate::linalg::unit_vector(fl.dim_a(), t2));
                    if p.is_zero() {
                        continue;
                    }
                    let g = gamma_word_pairing(w, &word, &w.monomial(*r2), memo);
                    val += c2 * p * g;
                }
                if !val.is_zero() {
                    acted.add_assign_scaled(&(ym * cr * val * action_sign(k, deg)), &w.monomial(*l));
                }
            }
        }
        out.add_assign_scaled(c, &w.wedge_multiply(&w.monomial(*f), &acted));
    }
    out
}

fn failed_build(name: &str, err: &crate::error::Error) -> SuiteReport {
    let mut rep = SuiteReport::new(name);
    rep.record("construction", "", err.to_string(), "", false);
    rep
}

/// Runs the named suites (all of [`SUITES`] when `names` is empty) and returns
/// the reports in the order of [`SUITES`], followed by the oracle suite when
/// requested. Suites run concurrently.
pub fn run_suites(calc: &FodcData, options: WedgeOptions, names: &[&str]) -> Vec<SuiteReport> {
    let wanted = |s: &str| names.is_empty() || names.contains(&s);
    let needs_cross = SUITES[3..].iter().any(|s| wanted(s)) || names.contains(&ORACLE_SUITE);
    let cross = if needs_cross { Some(CrossAlgebra::new(calc.clone(), options)) } else { None };
    let mut order: Vec<&str> = SUITES.iter().copied().filter(|s| wanted(s)).collect();
    if names.contains(&ORACLE_SUITE) {
        order.push(ORACLE_SUITE);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = order
            .iter()
            .map(|&name| {
                let cross = cross.as_ref();
                scope.spawn(move || run_one(name, calc, cross))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    })
}

pub fn run_all(calc: &FodcData, max_degree: usize) -> Vec<SuiteReport> {
    run_suites(calc, WedgeOptions::with_max_degree(max_degree), &[])
}

fn run_one(name: &str, calc: &FodcData, cross: Option<&crate::error::Result<CrossAlgebra>>) -> SuiteReport {
    let start = Instant::now();
    match name {
        "hopf-axioms" => {
            let mut rep = SuiteReport::new(name);
            for h in [calc.paired().alg(), calc.paired().dual()] {
                let mut r = check_hopf_axioms(h);
                for c in &mut r.cases {
                    c.label = format!("{}:{}", h.name(), c.label);
                }
                rep.merge(r);
            }
            finish(rep, start)
        }
        "covariance" => rename(check_covariance(calc.paired()), name),
        "consistency" => {
            let mut rep = check_consistency(calc);
            rep.merge(check_presentation(calc));
            rename(rep, name)
        }
        _ => match cross.expect("cross algebra requested") {
            Err(e) => failed_build(name, e),
            Ok(cp) => match name {
                "graded-bialgebra" => rename(check_graded_bialgebra(cp.wedge()), name),
                "d-squared" => rename(check_d_squared(cp.wedge()), name),
                "graded-leibniz" => rename(check_graded_leibniz(cp.wedge()), name),
                "contraction" => suite_contraction(cp),
                "lie-d-commute" => suite_lie_d_commute(cp),
                "dual-structure" => suite_dual_structure(cp),
                "cartan" => suite_cartan(cp),
                ORACLE_SUITE => suite_oracle(cp, 100, 1),
                other => unreachable!("unknown suite {other}"),
            },
        },
    }
}

fn rename(mut rep: SuiteReport, name: &str) -> SuiteReport {
    rep.name = name.to_string();
    rep
}
