//! First-order bicovariant calculus data.
//!
//! A calculus of dimension `n` over `A` is given by left-invariant 1-forms
//! `w^1..w^n` and three tables:
//!
//! * `r[i][j] = r^i_j` in `A`, the right coaction `w^i -> w^j (x) r^i_j`,
//! * `f[i][j] = f^i_j` in `A*`, the commutation `w^i a = (f^i_j ▷ a) w^j`,
//! * `chi[i]` in `A*`, the differential `da = (chi_i ▷ a) w^i`.
//!
//! One-forms are stored with functions to the left of the invariant forms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::duality::PairedHopf;
use crate::error::{Error, Result};
use crate::hopf::{function_hopf, Element, GroupTable, TensorElement};
use crate::linalg::{axpy, zeros, Rational};
use crate::report::SuiteReport;

/// `sum_i components[i] w^i`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub components: Vec<Element>,
}

impl OneForm {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Element::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }
}

/// Presentation `w^i = sum_k a_k d(b_k)`.
pub type Presentation = Vec<(Element, Element)>;

#[derive(Clone, Debug)]
pub struct FodcData {
    n: usize,
    paired: PairedHopf,
    labels: Vec<String>,
    r: Vec<Vec<Element>>,
    f: Vec<Vec<Element>>,
    chi: Vec<Element>,
    omega_presentation: Vec<Presentation>,
    group: Option<GroupTable>,
}

impl FodcData {
    /// Builds the calculus and rejects it unless every consistency relation
    /// and every presentation of `w^i` checks out.
    pub fn new(
        paired: PairedHopf,
        labels: Vec<String>,
        r: Vec<Vec<Element>>,
        f: Vec<Vec<Element>>,
        chi: Vec<Element>,
        omega_presentation: Vec<Presentation>,
    ) -> Result<Self> {
        let d = Self::new_unchecked(paired, labels, r, f, chi, omega_presentation);
        let rep = check_consistency(&d);
        if let Some(bad) = rep.failures().next() {
            return Err(Error::InconsistentCalculus(bad.relation.clone()));
        }
        if let Some(bad) = check_presentation(&d).failures().next() {
            return Err(Error::InconsistentCalculus(bad.relation.clone()));
        }
        Ok(d)
    }

    /// No validation. Meant for negative controls.
    pub fn new_unchecked(
        paired: PairedHopf,
        labels: Vec<String>,
        r: Vec<Vec<Element>>,
        f: Vec<Vec<Element>>,
        chi: Vec<Element>,
        omega_presentation: Vec<Presentation>,
    ) -> Self {
        let n = labels.len();
        FodcData { n, paired, labels, r, f, chi, omega_presentation, group: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn paired(&self) -> &PairedHopf {
        &self.paired
    }

    /// Group the calculus was built from, when there is one.
    pub fn group(&self) -> Option<&GroupTable> {
        self.group.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn r(&self, i: usize, j: usize) -> &Element {
        &self.r[i][j]
    }

    pub fn f(&self, i: usize, j: usize) -> &Element {
        &self.f[i][j]
    }

    pub fn chi(&self, i: usize) -> &Element {
        &self.chi[i]
    }

    pub fn omega_presentation(&self, i: usize) -> &Presentation {
        &self.omega_presentation[i]
    }

    /// Copy with the `r` table replaced, skipping validation.
    pub fn with_r_unchecked(&self, r: Vec<Vec<Element>>) -> FodcData {
        FodcData { r, ..self.clone() }
    }

    pub fn zero_form(&self) -> OneForm {
        OneForm { components: vec![self.paired.alg().zero(); self.n] }
    }

    /// `w^i a = (f^i_j ▷ a) w^j`
    pub fn omega_times_function(&self, i: usize, a: &Element) -> Result<OneForm> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i + 1, max: self.n });
        }
        (0..self.n)
            .map(|j| self.paired.left_act(&self.f[i][j], a))
            .collect::<Result<Vec<_>>>()
            .map(|components| OneForm { components })
    }

    /// `da = (chi_i ▷ a) w^i`
    pub fn differential(&self, a: &Element) -> Result<OneForm> {
        self.chi
            .iter()
            .map(|c| self.paired.left_act(c, a))
            .collect::<Result<Vec<_>>>()
            .map(|components| OneForm { components })
    }

    /// `a · rho`
    pub fn function_times(&self, a: &Element, rho: &OneForm) -> Result<OneForm> {
        let alg = self.paired.alg();
        rho.components
            .iter()
            .map(|c| alg.multiply(a, c))
            .collect::<Result<Vec<_>>>()
            .map(|components| OneForm { components })
    }

    /// `rho · a`, moving `a` to the left of every `w^i`.
    pub fn times_function(&self, rho: &OneForm, a: &Element) -> Result<OneForm> {
        let alg = self.paired.alg();
        let mut out = self.zero_form();
        for (i, c) in rho.components.iter().enumerate() {
            let moved = self.omega_times_function(i, a)?;
            for (j, m) in moved.components.iter().enumerate() {
                out.components[j] = out.components[j].add(&alg.multiply(c, m)?);
            }
        }
        Ok(out)
    }

    pub fn format_one_form(&self, rho: &OneForm) -> String {
        let alg = self.paired.alg();
        let parts: Vec<String> = rho
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({}) * w[{}]", alg.format(c), i + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Calculus on `Fun(G)` induced by a conjugation-closed subset
/// `S ⊆ G \ {e}`: basis `w^x` for `x ∈ S` in group order, `f^x_y =
/// delta_xy x`, `chi_x = x - e`, `r^x_y` the indicator of `{t : t^-1 y t =
/// x}`, and `w^x = sum_h e_h d e_{hx}`.
pub fn finite_group_calculus(g: &GroupTable, s: &[usize]) -> Result<FodcData> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if s.contains(&g.identity()) {
        return Err(Error::IdentityInSubset);
    }
    let mut s: Vec<usize> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    for &x in &s {
        for t in 0..g.order() {
            if !s.contains(&g.conjugate(x, t)) {
                return Err(Error::NotAdInvariant);
            }
        }
    }
    let paired = PairedHopf::canonical(function_hopf(g));
    let (alg, dual) = (paired.alg(), paired.dual());
    let n = s.len();
    let order = g.order();
    let r = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let coeffs = (0..order)
                        .map(|t| if g.conjugate(s[j], t) == s[i] { Rational::one() } else { Rational::zero() })
                        .collect();
                    alg.wrap(coeffs)
                })
                .collect()
        })
        .collect();
    let f = (0..n).map(|i| (0..n).map(|j| if i == j { dual.basis(s[i]) } else { dual.zero() }).collect()).collect();
    let chi = s.iter().map(|&x| dual.basis(x).sub(&dual.basis(g.identity()))).collect();
    let omega_presentation =
        s.iter().map(|&x| (0..order).map(|h| (alg.basis(h), alg.basis(g.mul(h, x)))).collect()).collect();
    let labels = s.iter().map(|&x| g.name(x).to_string()).collect();
    let mut d = FodcData::new(paired, labels, r, f, chi, omega_presentation)?;
    d.group = Some(g.clone());
    Ok(d)
}

/// Subset given by element names.
pub fn finite_group_calculus_named(g: &GroupTable, names: &[&str]) -> Result<FodcData> {
    let s = names
        .iter()
        .map(|n| g.index_of(n).ok_or_else(|| Error::UnknownElement(n.to_string())))
        .collect::<Result<Vec<_>>>()?;
    finite_group_calculus(g, &s)
}

fn tensor_of(pairs: impl IntoIterator<Item = (Element, Element)>) -> TensorElement {
    let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (l, r) in pairs {
        for (i, a) in l.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in r.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    *map.entry((i, j)).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
    }
    TensorElement::from_map(map)
}

/// Checks, exhaustively over indices and basis functions:
///
/// 1. `Δ(r^i_j) = r^k_j ⊗ r^i_k`
/// 2. `Δ(f^i_j) = f^i_k ⊗ f^k_j`
/// 3. `(f^j_i ▷ a) r^i_k = r^j_i (a ◁ f^i_k)`
/// 4. `ε(r^i_j) = ε(f^i_j) = δ^i_j`
/// 5. `Δ(χ_i) = χ_j ⊗ f^j_i + 1 ⊗ χ_i`
/// 6. `a ◁ χ_i = (χ_j ▷ a) r^j_i`
/// 7. `ε(χ_i) = 0`
pub fn check_consistency(d: &FodcData) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new("consistency");
    let p = &d.paired;
    let (alg, dual) = (p.alg(), p.dual());
    let n = d.n;
    let delta = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let fmt_rat = crate::report::format_rational;

    for i in 0..n {
        for j in 0..n {
            let label = format!("{},{}", i + 1, j + 1);
            let lhs = alg.coproduct_raw(d.r[i][j].coeffs());
            let rhs = tensor_of((0..n).map(|k| (d.r[k][j].clone(), d.r[i][k].clone())));
            rep.compare("r-coproduct", label.clone(), &lhs, &rhs, |t| alg.format_tensor(t));

            let lhs = dual.coproduct_raw(d.f[i][j].coeffs());
            let rhs = tensor_of((0..n).map(|k| (d.f[i][k].clone(), d.f[k][j].clone())));
            rep.compare("f-coproduct", label, &lhs, &rhs, |t| dual.format_tensor(t));
        }
    }
    for j in 0..n {
        for k in 0..n {
            for a in 0..alg.dim() {
                let av = alg.basis(a);
                let mut lhs = zeros(alg.dim());
                let mut rhs = zeros(alg.dim());
                for i in 0..n {
                    let fa = p.left_act_raw(d.f[j][i].coeffs(), av.coeffs());
                    lhs = add(&lhs, &alg.mul_raw(&fa, d.r[i][k].coeffs()));
                    let af = p.right_act_raw(av.coeffs(), d.f[i][k].coeffs());
                    rhs = add(&rhs, &alg.mul_raw(d.r[j][i].coeffs(), &af));
                }
                rep.compare("f-r-exchange", format!("{},{},{}", j + 1, k + 1, alg.atom(a)), &lhs, &rhs, |v| {
                    alg.format_raw(v)
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let label = format!("{},{}", i + 1, j + 1);
            let er = alg.counit_raw(d.r[i][j].coeffs());
            rep.compare("counit-r-f", format!("r:{label}"), &er, &delta(i, j), fmt_rat);
            let ef = dual.counit_raw(d.f[i][j].coeffs());
            rep.compare("counit-r-f", format!("f:{label}"), &ef, &delta(i, j), fmt_rat);
        }
    }
    for i in 0..n {
        let lhs = dual.coproduct_raw(d.chi[i].coeffs());
        let mut pairs: Vec<(Element, Element)> = (0..n).map(|j| (d.chi[j].clone(), d.f[j][i].clone())).collect();
        pairs.push((dual.one(), d.chi[i].clone()));
        let rhs = tensor_of(pairs);
        rep.compare("chi-coproduct", format!("{}", i + 1), &lhs, &rhs, |t| dual.format_tensor(t));
    }
    for i in 0..n {
        for a in 0..alg.dim() {
            let av = alg.basis(a);
            let lhs = p.right_act_raw(av.coeffs(), d.chi[i].coeffs());
            let mut rhs = zeros(alg.dim());
            for j in 0..n {
                let ca = p.left_act_raw(d.chi[j].coeffs(), av.coeffs());
                rhs = add(&rhs, &alg.mul_raw(&ca, d.r[j][i].coeffs()));
            }
            rep.compare("chi-right-action", format!("{},{}", i + 1, alg.atom(a)), &lhs, &rhs, |v| {
                alg.format_raw(v)
            });
        }
    }
    for i in 0..n {
        let e = dual.counit_raw(d.chi[i].coeffs());
        rep.compare("chi-counit", format!("{}", i + 1), &e, &Rational::zero(), fmt_rat);
    }
    rep.elapsed = start.elapsed();
    rep
}

fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let mut out = x.to_vec();
    axpy(&mut out, &Rational::one(), y);
    out
}

/// Checks `sum_k a_k d(b_k) = w^i` for every stored presentation.
pub fn check_presentation(d: &FodcData) -> SuiteReport {
    let mut rep = SuiteReport::new("omega-presentation");
    let alg = d.paired.alg();
    for i in 0..d.n {
        let mut acc = d.zero_form();
        let mut ok = true;
        for (a, b) in &d.omega_presentation[i] {
            match d.differential(b).and_then(|db| d.function_times(a, &db)) {
                Ok(term) => acc = acc.add(&term),
                Err(_) => ok = false,
            }
        }
        let mut expected = d.zero_form();
        expected.components[i] = alg.one();
        let pass = ok && acc == expected;
        rep.record(
            "omega-presentation",
            format!("{}", i + 1),
            d.format_one_form(&acc),
            d.format_one_form(&expected),
            pass,
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Matrix};

    fn z2() -> FodcData {
        finite_group_calculus_named(&GroupTable::cyclic(&["e", "g"]), &["g"]).unwrap()
    }

    fn z3() -> FodcData {
        finite_group_calculus_named(&GroupTable::cyclic(&["e", "c", "c2"]), &["c", "c2"]).unwrap()
    }

    fn s3() -> FodcData {
        finite_group_calculus_named(&GroupTable::symmetric3(), &["p12", "p13", "p23"]).unwrap()
    }

    #[test]
    fn z2_tables() {
        let d = z2();
        assert_eq!(d.n(), 1);
        let dual = d.paired().dual();
        assert_eq!(d.chi(0), &dual.basis(1).sub(&dual.basis(0)));
        assert_eq!(d.f(0, 0), &dual.basis(1));
        assert_eq!(d.r(0, 0), &d.paired().alg().one());
    }

    #[test]
    fn z3_r_is_diagonal_unit() {
        let d = z3();
        let alg = d.paired().alg();
        assert_eq!(d.n(), 2);
        assert_eq!(d.r(0, 0), &alg.one());
        assert_eq!(d.r(1, 1), &alg.one());
        assert!(d.r(0, 1).is_zero());
    }

    #[test]
    fn s3_r_supported_on_conjugators() {
        let d = s3();
        let g = d.group().unwrap().clone();
        for i in 0..3 {
            for j in 0..3 {
                for t in 0..6 {
                    let expect = g.conjugate(g.index_of(&d.labels()[j]).unwrap(), t)
                        == g.index_of(&d.labels()[i]).unwrap();
                    assert_eq!(d.r(i, j).coeff(t) == &rat(1), expect);
                }
            }
        }
    }

    #[test]
    fn all_relations_pass_on_examples() {
        for d in [z2(), z3(), s3()] {
            let rep = check_consistency(&d);
            assert!(rep.passed(), "{:?}", rep.failures().next());
            assert_eq!(rep.relations().len(), 7);
            assert!(check_presentation(&d).passed());
        }
    }

    #[test]
    fn trivial_r_breaks_chi_right_action_on_s3() {
        let d = s3();
        let alg = d.paired().alg();
        let r = (0..3).map(|i| (0..3).map(|j| if i == j { alg.one() } else { alg.zero() }).collect()).collect();
        let bad = d.with_r_unchecked(r);
        let rep = check_consistency(&bad);
        assert!(!rep.relation_passed("chi-right-action"));
        assert!(rep.relation_passed("chi-coproduct"));
    }

    #[test]
    fn subset_validation() {
        let g = GroupTable::symmetric3();
        assert_eq!(finite_group_calculus_named(&g, &["p12"]).unwrap_err(), Error::NotAdInvariant);
        assert_eq!(finite_group_calculus_named(&g, &["e", "p12"]).unwrap_err(), Error::IdentityInSubset);
        assert_eq!(finite_group_calculus(&g, &[]).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn commutation_examples() {
        let d = z2();
        let alg = d.paired().alg();
        assert_eq!(d.omega_times_function(0, &alg.one()).unwrap().components, vec![alg.one()]);
        assert_eq!(d.omega_times_function(0, &alg.basis(0)).unwrap().components, vec![alg.basis(1)]);

        let d = s3();
        let g = d.group().unwrap().clone();
        let alg = d.paired().alg();
        // w^x e_t = e_{t x^-1} w^x
        for (i, label) in d.labels().iter().enumerate() {
            let x = g.index_of(label).unwrap();
            for t in 0..6 {
                let out = d.omega_times_function(i, &alg.basis(t)).unwrap();
                for (j, c) in out.components.iter().enumerate() {
                    if j == i {
                        assert_eq!(c, &alg.basis(g.mul(t, g.inverse(x))));
                    } else {
                        assert!(c.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn differential_examples() {
        let d = z2();
        let alg = d.paired().alg();
        assert!(d.differential(&alg.one()).unwrap().is_zero());
        let de = d.differential(&alg.basis(0)).unwrap();
        assert_eq!(de.components, vec![alg.basis(1).sub(&alg.basis(0))]);
        let dg = d.differential(&alg.basis(1)).unwrap();
        assert_eq!(dg.components, vec![alg.basis(0).sub(&alg.basis(1))]);
    }

    #[test]
    fn leibniz_on_functions() {
        for d in [z2(), z3(), s3()] {
            let alg = d.paired().alg().clone();
            for a in 0..alg.dim() {
                for b in 0..alg.dim() {
                    let (av, bv) = (alg.basis(a), alg.basis(b));
                    let lhs = d.differential(&alg.multiply(&av, &bv).unwrap()).unwrap();
                    let da_b = d.times_function(&d.differential(&av).unwrap(), &bv).unwrap();
                    let a_db = d.function_times(&av, &d.differential(&bv).unwrap()).unwrap();
                    assert_eq!(lhs, da_b.add(&a_db));
                }
            }
        }
    }

    #[test]
    fn kernel_of_d_is_constants() {
        for d in [z2(), z3(), s3()] {
            let alg = d.paired().alg().clone();
            let dim = alg.dim();
            // Matrix of d: columns indexed by basis functions.
            let cols: Vec<Vec<Rational>> = (0..dim)
                .map(|a| {
                    d.differential(&alg.basis(a))
                        .unwrap()
                        .components
                        .iter()
                        .flat_map(|c| c.coeffs().to_vec())
                        .collect()
                })
                .collect();
            let m = Matrix::from_columns(&cols, d.n() * dim);
            let ker = m.kernel_basis();
            assert_eq!(ker.len(), 1);
            assert_eq!(ker[0], vec![rat(1); dim]);
        }
    }
}
