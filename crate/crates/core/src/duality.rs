//! Pairing between a Hopf algebra `A` and its dual `A*`, and the actions
//! built from it: `x ▷ a`, `a ◁ x`, the action of `A` on `A*`, and the left
//! adjoint action of `A*` on itself.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::{dual_hopf, Element, HopfData};
use crate::linalg::{axpy, dot, zeros, Matrix, Rational};
use crate::report::SuiteReport;

/// `A` together with `A*` and the matrix `pairing[i][j] = <e_i*, e_j>`.
#[derive(Clone, Debug)]
pub struct PairedHopf {
    alg: HopfData,
    dual: HopfData,
    pairing: Matrix,
}

impl PairedHopf {
    /// `A` with its full linear dual and the evaluation pairing.
    pub fn canonical(alg: HopfData) -> Self {
        let dual = dual_hopf(&alg);
        let pairing = Matrix::identity(alg.dim());
        PairedHopf { alg, dual, pairing }
    }

    /// Arbitrary pairing matrix, not checked. Negative controls use this.
    pub fn with_pairing(alg: HopfData, dual: HopfData, pairing: Matrix) -> Result<Self> {
        if pairing.rows() != dual.dim() || pairing.cols() != alg.dim() {
            return Err(Error::PairingMismatch);
        }
        Ok(PairedHopf { alg, dual, pairing })
    }

    pub fn alg(&self) -> &HopfData {
        &self.alg
    }

    pub fn dual(&self) -> &HopfData {
        &self.dual
    }

    pub fn pairing_matrix(&self) -> &Matrix {
        &self.pairing
    }

    fn check(&self, x: &Element, a: &Element) -> Result<()> {
        if x.algebra_id() != self.dual.id() || a.algebra_id() != self.alg.id() {
            return Err(Error::PairingMismatch);
        }
        Ok(())
    }

    pub fn pair(&self, x: &Element, a: &Element) -> Result<Rational> {
        self.check(x, a)?;
        Ok(self.pair_raw(x.coeffs(), a.coeffs()))
    }

    pub fn left_act(&self, x: &Element, a: &Element) -> Result<Element> {
        self.check(x, a)?;
        Ok(self.alg.wrap(self.left_act_raw(x.coeffs(), a.coeffs())))
    }

    pub fn right_act(&self, a: &Element, x: &Element) -> Result<Element> {
        self.check(x, a)?;
        Ok(self.alg.wrap(self.right_act_raw(a.coeffs(), x.coeffs())))
    }

    pub fn act_on_dual(&self, a: &Element, h: &Element) -> Result<Element> {
        self.check(h, a)?;
        Ok(self.dual.wrap(self.act_on_dual_raw(a.coeffs(), h.coeffs())))
    }

    pub fn adjoint_act(&self, h: &Element, theta: &Element) -> Result<Element> {
        if h.algebra_id() != self.dual.id() || theta.algebra_id() != self.dual.id() {
            return Err(Error::PairingMismatch);
        }
        Ok(self.dual.wrap(self.adjoint_act_raw(h.coeffs(), theta.coeffs())))
    }

    /// Values `<x, e_j>` for every basis vector of `A`.
    pub(crate) fn functional(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.alg.dim());
        for (i, c) in x.iter().enumerate() {
            axpy(&mut out, c, self.pairing.row(i));
        }
        out
    }

    pub(crate) fn pair_raw(&self, x: &[Rational], a: &[Rational]) -> Rational {
        dot(&self.functional(x), a)
    }

    /// `x ▷ a = a_(1) <x, a_(2)>`
    pub(crate) fn left_act_raw(&self, x: &[Rational], a: &[Rational]) -> Vec<Rational> {
        let fx = self.functional(x);
        let mut out = zeros(self.alg.dim());
        for (c, l, r) in self.alg.coproduct_raw(a).terms() {
            if !fx[*r].is_zero() {
                out[*l] += c * &fx[*r];
            }
        }
        out
    }

    /// `a ◁ x = a_(2) <x, a_(1)>`
    pub(crate) fn right_act_raw(&self, a: &[Rational], x: &[Rational]) -> Vec<Rational> {
        let fx = self.functional(x);
        let mut out = zeros(self.alg.dim());
        for (c, l, r) in self.alg.coproduct_raw(a).terms() {
            if !fx[*l].is_zero() {
                out[*r] += c * &fx[*l];
            }
        }
        out
    }

    /// `a ▷ h = h_(1) <h_(2), a>`
    pub(crate) fn act_on_dual_raw(&self, a: &[Rational], h: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.dual.dim());
        for (c, l, r) in self.dual.coproduct_raw(h).terms() {
            let p = dot(self.pairing.row(*r), a);
            if !p.is_zero() {
                out[*l] += c * p;
            }
        }
        out
    }

    /// `h ▷ θ = h_(1) θ S(h_(2))`
    pub(crate) fn adjoint_act_raw(&self, h: &[Rational], theta: &[Rational]) -> Vec<Rational> {
        let d = &self.dual;
        let mut out = zeros(d.dim());
        for (c, l, r) in d.coproduct_raw(h).terms() {
            let left = d.mul_raw(&crate::linalg::unit_vector(d.dim(), *l), theta);
            let s = d.antipode_matrix().column(*r);
            axpy(&mut out, c, &d.mul_raw(&left, &s));
        }
        out
    }
}

/// Checks `x ▷ (ab) = (x_(1) ▷ a)(x_(2) ▷ b)` for all basis `x`, `a`, `b`.
pub fn check_covariance(p: &PairedHopf) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new("covariance");
    let (a_alg, d_alg) = (p.alg(), p.dual());
    let unit = |n: usize, i: usize| crate::linalg::unit_vector(n, i);
    for x in 0..d_alg.dim() {
        let xv = unit(d_alg.dim(), x);
        let dx = d_alg.coproduct_raw(&xv);
        for a in 0..a_alg.dim() {
            for b in 0..a_alg.dim() {
                let av = unit(a_alg.dim(), a);
                let bv = unit(a_alg.dim(), b);
                let lhs = p.left_act_raw(&xv, &a_alg.mul_raw(&av, &bv));
                let mut rhs = zeros(a_alg.dim());
                for (c, l, r) in dx.terms() {
                    let la = p.left_act_raw(&unit(d_alg.dim(), *l), &av);
                    let rb = p.left_act_raw(&unit(d_alg.dim(), *r), &bv);
                    axpy(&mut rhs, c, &a_alg.mul_raw(&la, &rb));
                }
                let label = format!(
                    "{},{},{}",
                    d_alg.atom(x),
                    a_alg.atom(a),
                    a_alg.atom(b)
                );
                rep.compare("covariance", label, &lhs, &rhs, |v| a_alg.format_raw(v));
            }
        }
    }
    rep.elapsed = start.elapsed();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_hopf, GroupTable};
    use crate::linalg::rat;

    fn z2() -> PairedHopf {
        PairedHopf::canonical(function_hopf(&GroupTable::cyclic(&["e", "g"])))
    }

    #[test]
    fn group_element_translates_deltas() {
        let p = z2();
        let g = p.dual().basis(1);
        let ee = p.alg().basis(0);
        assert_eq!(p.left_act(&g, &ee).unwrap(), p.alg().basis(1));
        assert_eq!(p.right_act(&ee, &g).unwrap(), p.alg().basis(1));
    }

    #[test]
    fn unit_acts_trivially() {
        let p = z2();
        for a in 0..2 {
            let av = p.alg().basis(a);
            assert_eq!(p.left_act(&p.dual().one(), &av).unwrap(), av);
            assert_eq!(p.right_act(&av, &p.dual().one()).unwrap(), av);
        }
    }

    #[test]
    fn chi_acts_as_difference() {
        let p = z2();
        let chi = p.dual().basis(1).sub(&p.dual().basis(0));
        let out = p.left_act(&chi, &p.alg().basis(0)).unwrap();
        assert_eq!(out.coeffs(), &[rat(-1), rat(1)]);
    }

    #[test]
    fn functions_act_on_group_likes() {
        let p = z2();
        let g = p.dual().basis(1);
        assert!(p.act_on_dual(&p.alg().basis(0), &g).unwrap().is_zero());
        assert_eq!(p.act_on_dual(&p.alg().one(), &g).unwrap(), g);
    }

    #[test]
    fn adjoint_action_conjugates() {
        let s3 = GroupTable::symmetric3();
        let p = PairedHopf::canonical(function_hopf(&s3));
        let x = |n: &str| p.dual().basis(s3.index_of(n).unwrap());
        assert_eq!(p.adjoint_act(&x("p12"), &x("p13")).unwrap(), x("p23"));
        let theta = x("c123").add(&x("p12"));
        assert_eq!(p.adjoint_act(&p.dual().one(), &theta).unwrap(), theta);
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let p = z2();
        let a = p.alg().basis(0);
        assert_eq!(p.left_act(&a, &a).unwrap_err(), Error::PairingMismatch);
    }

    #[test]
    fn module_property_and_counit_identity() {
        let s3 = GroupTable::symmetric3();
        let p = PairedHopf::canonical(function_hopf(&s3));
        let n = s3.order();
        for x in 0..n {
            for y in 0..n {
                let xy = p.dual().multiply(&p.dual().basis(x), &p.dual().basis(y)).unwrap();
                for a in 0..n {
                    let av = p.alg().basis(a);
                    let lhs = p.left_act(&xy, &av).unwrap();
                    let inner = p.left_act(&p.dual().basis(y), &av).unwrap();
                    let rhs = p.left_act(&p.dual().basis(x), &inner).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            for a in 0..n {
                let act = p.left_act(&p.dual().basis(x), &p.alg().basis(a)).unwrap();
                assert_eq!(
                    p.alg().counit(&act).unwrap(),
                    p.pair(&p.dual().basis(x), &p.alg().basis(a)).unwrap()
                );
            }
        }
    }

    #[test]
    fn covariance_holds_and_corruption_is_caught() {
        for g in [GroupTable::cyclic(&["e", "c", "c2"]), GroupTable::symmetric3()] {
            assert!(check_covariance(&PairedHopf::canonical(function_hopf(&g))).passed());
        }
        let g = GroupTable::symmetric3();
        let a = function_hopf(&g);
        let d = dual_hopf(&a);
        // A row permutation only relabels the dual basis and stays covariant;
        // a row that evaluates at two points is no longer multiplicative.
        let mut m = Matrix::identity(6);
        m.set(1, 2, rat(1));
        let bad = PairedHopf::with_pairing(a, d, m).unwrap();
        assert!(!check_covariance(&bad).passed());
    }
}
