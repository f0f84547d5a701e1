//! The dual `(Γ^∧)*` spanned by `h γ_{i1}...γ_{ik}`, its pairing with forms,
//! and the cross-product algebra of forms and dual elements.
//!
//! Dual elements of degree `k` are stored over a basis `u_x γ^V` where `V`
//! runs over raw γ-words chosen greedily (lexicographic) so that their
//! pairings with `Λ^k` are independent. Any other γ-word is reduced to this
//! basis by solving against the pairing.
//!
//! Conventions:
//! * `<θφ, ρ> = <θ, ρ_(1)> <φ, ρ_(2)>` with no sign;
//! * `Δθ` is defined by `<Δθ, x ⊗ y> = <θ, xy>`;
//! * `θ ▷ ρ = (-1)^{|θ|(|ρ|-|θ|) + |θ|(|θ|-1)/2} ρ_(1) <θ, ρ_(2)>`, which makes
//!   `▷` a left module action and gives `γ_i ▷ da = χ_i ▷ a`;
//! * `θρ = Σ (-1)^{|θ_(2)||ρ|} (θ_(1) ▷ ρ) θ_(2)` is the rewrite into normal
//!   order, forms left of dual elements.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::calculus::FodcData;
use crate::error::{Error, Result};
use crate::hopf::{Element, HopfData};
use crate::linalg::{self, zeros, IncrementalBasis, Matrix, Rational};
use crate::report::linear_combination;
use crate::wedge::{format_grouped, format_word, raw_index, raw_word, FormLayout, GradedForm, Wedge, WedgeOptions};

type Sparse = Vec<(usize, Rational)>;

/// Element of `(Γ^∧)*`, dense over the dual monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement {
    coeffs: Vec<Rational>,
}

impl DualElement {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &DualElement) -> DualElement {
        DualElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &DualElement) -> DualElement {
        DualElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> DualElement {
        DualElement { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Element of `(Γ^∧)* ⊗ (Γ^∧)*` over pairs of dual monomials.
pub type DualTensor = BTreeMap<(usize, usize), Rational>;

/// Element of the cross product, normal ordered: `Σ c (form monomial)(dual monomial)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossElement {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl CrossElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, form: usize, dual: usize, c: Rational) {
        add_entry(&mut self.terms, (form, dual), c);
    }

    pub fn add(&self, other: &CrossElement) -> CrossElement {
        let mut out = self.clone();
        for ((f, d), c) in other.terms() {
            out.add_term(*f, *d, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CrossElement {
        let mut out = CrossElement::zero();
        if !c.is_zero() {
            for ((f, d), v) in self.terms() {
                out.add_term(*f, *d, v * c);
            }
        }
        out
    }

    pub fn sub(&self, other: &CrossElement) -> CrossElement {
        self.add(&other.scale(&-Rational::one()))
    }
}

fn add_entry<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Sign of the action `θ ▷ ρ` for `|θ| = k`, `|ρ| = m`.
pub fn action_sign(k: usize, m: usize) -> Rational {
    sign((k * (m - k) + k * k.saturating_sub(1) / 2) % 2 == 1)
}

/// Sparse coefficients keyed by (form monomial, dual monomial).
type SparsePairs = Vec<((usize, usize), Rational)>;

/// Forms, dual elements and their cross product for one calculus.
#[derive(Clone, Debug)]
pub struct CrossAlgebra {
    wedge: Wedge,
    dual_layout: FormLayout,
    /// Chosen γ-words per degree.
    dual_words: Vec<Vec<Vec<usize>>>,
    /// `gram[k][v][w] = <γ^{V_v}, w^{W_w}>`.
    gram: Vec<Matrix>,
    /// Coordinates of every raw γ-word of degree `k` in the chosen basis.
    gamma_reduce: Vec<Vec<Sparse>>,
    /// `pair0[x][t] = <u_x, e_t>`.
    pair0: Matrix,
    /// `dual_act[j][i]`: matrix of `h -> r^j_i ▷ h`.
    dual_act: Vec<Vec<Matrix>>,
    dual_products: Vec<Vec<Sparse>>,
    dual_coproducts: Vec<DualTensor>,
    /// `actions[θ][ρ] = θ ▷ ρ` on monomials.
    actions: Vec<Vec<Sparse>>,
    /// `swaps[θ][ρ] = θρ` in normal order.
    swaps: Vec<Vec<SparsePairs>>,
}

impl CrossAlgebra {
    pub fn new(calc: FodcData, options: WedgeOptions) -> Result<Self> {
        Self::from_wedge(Wedge::new(calc, options)?)
    }

    pub fn from_wedge(wedge: Wedge) -> Result<Self> {
        let calc = wedge.calculus().clone();
        let paired = calc.paired();
        let dual = paired.dual();
        let n = calc.n();
        let maxdeg = wedge.max_degree();
        let dims = wedge.exterior().dims();
        let dual_layout = FormLayout::new(dual.dim(), dims.clone());
        let pair0 = Matrix::from_rows(
            (0..dual.dim())
                .map(|x| paired.functional(&linalg::unit_vector(dual.dim(), x)))
                .collect(),
        );

        let mut memo = HashMap::new();
        let mut dual_words = vec![vec![vec![]]];
        let mut gram = vec![Matrix::identity(1)];
        let mut gamma_reduce = vec![vec![vec![(0, Rational::one())]]];
        for (k, &dim) in dims.iter().enumerate().take(maxdeg + 1).skip(1) {
            let raw_dim = n.pow(k as u32);
            let rows: Vec<Vec<Rational>> = (0..raw_dim)
                .map(|raw| {
                    let v = raw_word(n, k, raw);
                    (0..dim)
                        .map(|w| {
                            let form = wedge.invariant(k, w);
                            gamma_word_pairing(&wedge, &v, &form, &mut memo)
                        })
                        .collect()
                })
                .collect();
            let mut basis = IncrementalBasis::new();
            let mut chosen = Vec::new();
            for (raw, row) in rows.iter().enumerate() {
                if chosen.len() == dim {
                    break;
                }
                if basis.insert(row) {
                    chosen.push(raw);
                }
            }
            if chosen.len() != dim {
                return Err(Error::DegeneratePairing(k));
            }
            let g = Matrix::from_rows(chosen.iter().map(|&r| rows[r].clone()).collect());
            let reduce = if dim == 0 {
                vec![vec![]; raw_dim]
            } else {
                let inv = g.inverse().expect("independent rows");
                rows.iter()
                    .map(|row| {
                        let c = inv.transpose().mul_vec(row);
                        c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect()
            };
            dual_words.push(chosen.iter().map(|&r| raw_word(n, k, r)).collect());
            gram.push(g);
            gamma_reduce.push(reduce);
        }

        let dual_act = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let cols: Vec<Vec<Rational>> = (0..dual.dim())
                            .map(|h| paired.act_on_dual_raw(calc.r(j, i).coeffs(), &linalg::unit_vector(dual.dim(), h)))
                            .collect();
                        Matrix::from_columns(&cols, dual.dim())
                    })
                    .collect()
            })
            .collect();

        let mut cp = CrossAlgebra {
            wedge,
            dual_layout,
            dual_words,
            gram,
            gamma_reduce,
            pair0,
            dual_act,
            dual_products: Vec::new(),
            dual_coproducts: Vec::new(),
            actions: Vec::new(),
            swaps: Vec::new(),
        };
        let dt = cp.dual_layout.total();
        let ft = cp.wedge.layout().total();
        cp.dual_products = (0..dt).map(|a| (0..dt).map(|b| cp.monomial_dual_product(a, b)).collect()).collect();
        cp.actions = (0..dt).map(|a| (0..ft).map(|r| cp.monomial_action(a, r)).collect()).collect();
        let dual_of_forms = cp.dual_of_form_basis();
        cp.dual_coproducts = (0..dt).map(|a| cp.monomial_dual_coproduct(a, &dual_of_forms)).collect();
        cp.swaps = (0..dt).map(|a| (0..ft).map(|r| cp.monomial_swap(a, r)).collect()).collect();
        Ok(cp)
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn calculus(&self) -> &FodcData {
        self.wedge.calculus()
    }

    pub fn dual_hopf(&self) -> &HopfData {
        self.calculus().paired().dual()
    }

    pub fn dual_layout(&self) -> &FormLayout {
        &self.dual_layout
    }

    pub fn max_degree(&self) -> usize {
        self.wedge.max_degree()
    }

    /// Chosen γ-words spanning the dual of `Λ^k`.
    pub fn dual_words(&self, k: usize) -> &[Vec<usize>] {
        &self.dual_words[k]
    }

    // ---- dual elements ----

    pub fn dual_zero(&self) -> DualElement {
        DualElement { coeffs: zeros(self.dual_layout.total()) }
    }

    pub fn dual_monomial(&self, idx: usize) -> DualElement {
        DualElement { coeffs: linalg::unit_vector(self.dual_layout.total(), idx) }
    }

    pub fn dual_from_coeffs(&self, coeffs: Vec<Rational>) -> Result<DualElement> {
        if coeffs.len() != self.dual_layout.total() {
            return Err(Error::DimensionMismatch { expected: self.dual_layout.total(), found: coeffs.len() });
        }
        Ok(DualElement { coeffs })
    }

    /// Degree-0 dual element from `h ∈ A*`.
    pub fn from_dual_hopf(&self, h: &Element) -> DualElement {
        self.dual_from_raw(h.coeffs())
    }

    fn dual_from_raw(&self, h: &[Rational]) -> DualElement {
        let mut out = self.dual_zero();
        for (x, c) in h.iter().enumerate() {
            out.coeffs[self.dual_layout.index(0, x, 0)] = c.clone();
        }
        out
    }

    pub fn dual_one(&self) -> DualElement {
        self.from_dual_hopf(&self.dual_hopf().one())
    }

    /// `h γ^V` for an arbitrary raw γ-word, reduced.
    pub fn dual_word(&self, h: &Element, word: &[usize]) -> DualElement {
        let mut out = self.dual_zero();
        if word.len() > self.max_degree() {
            return out;
        }
        let k = word.len();
        let raw = raw_index(self.calculus().n(), word);
        for (x, c) in h.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (v, l) in &self.gamma_reduce[k][raw] {
                out.coeffs[self.dual_layout.index(k, x, *v)] += c * l;
            }
        }
        out
    }

    pub fn gamma(&self, i: usize) -> DualElement {
        self.dual_word(&self.dual_hopf().one(), &[i])
    }

    /// Degree-0 part as an element of `A*`, `None` when there are γ factors.
    pub fn as_vector_field(&self, h: &DualElement) -> Option<Vec<Rational>> {
        if h.terms().any(|(i, _)| self.dual_layout.degree_of(i) > 0) {
            return None;
        }
        Some((0..self.dual_hopf().dim()).map(|x| h.coeffs[self.dual_layout.index(0, x, 0)].clone()).collect())
    }

    fn monomial_pairing(&self, theta: usize, rho: usize) -> Rational {
        let (k, x, v) = self.dual_layout.decode(theta);
        let (m, t, w) = self.wedge.layout().decode(rho);
        if k != m {
            return Rational::zero();
        }
        self.pair0.get(x, t) * self.gram[k].get(v, w)
    }

    /// `<θ, ρ>`; zero between different degrees.
    pub fn pair(&self, theta: &DualElement, rho: &GradedForm) -> Rational {
        let mut acc = Rational::zero();
        for (a, c) in theta.terms() {
            for (b, d) in rho.terms() {
                let p = self.monomial_pairing(a, b);
                if !p.is_zero() {
                    acc += c * d * p;
                }
            }
        }
        acc
    }

    fn monomial_dual_product(&self, a: usize, b: usize) -> Sparse {
        let (k, x, v) = self.dual_layout.decode(a);
        let (l, y, w) = self.dual_layout.decode(b);
        if k + l > self.max_degree() {
            return vec![];
        }
        let n = self.calculus().n();
        let dual = self.dual_hopf();
        let dim = dual.dim();
        // γ_i h = (r^j_i ▷ h) γ_j, applied from the innermost γ outwards.
        let mut moved: Vec<(Vec<usize>, Vec<Rational>)> = vec![(vec![], linalg::unit_vector(dim, y))];
        for &letter in self.dual_words[k][v].iter().rev() {
            let mut next = Vec::new();
            for (word, h) in &moved {
                for j in 0..n {
                    let c = self.dual_act[j][letter].mul_vec(h);
                    if !linalg::is_zero_vec(&c) {
                        let mut nw = Vec::with_capacity(word.len() + 1);
                        nw.push(j);
                        nw.extend_from_slice(word);
                        next.push((nw, c));
                    }
                }
            }
            moved = next;
        }
        let ux = linalg::unit_vector(dim, x);
        let mut acc = BTreeMap::new();
        for (mut word, h) in moved {
            let prod = dual.mul_raw(&ux, &h);
            word.extend_from_slice(&self.dual_words[l][w]);
            let raw = raw_index(n, &word);
            for (vv, lambda) in &self.gamma_reduce[k + l][raw] {
                for (z, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        add_entry(&mut acc, self.dual_layout.index(k + l, z, *vv), lambda * c);
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    pub fn dual_multiply(&self, a: &DualElement, b: &DualElement) -> DualElement {
        let mut out = self.dual_zero();
        for (i, c) in a.terms() {
            for (j, d) in b.terms() {
                let cd = c * d;
                for (k, e) in &self.dual_products[i][j] {
                    out.coeffs[*k] += &cd * e;
                }
            }
        }
        out
    }

    /// For every form monomial `m_a`, the dual element `m_a^*` with
    /// `<m_a^*, m_b> = δ_ab`.
    fn dual_of_form_basis(&self) -> Vec<Sparse> {
        let fl = self.wedge.layout();
        let mut out = vec![Vec::new(); fl.total()];
        for k in 0..=self.max_degree() {
            let fr = fl.range(k);
            let dr = self.dual_layout.range(k);
            if fr.is_empty() {
                continue;
            }
            let p = Matrix::from_rows(
                dr.clone().map(|a| fr.clone().map(|b| self.monomial_pairing(a, b)).collect()).collect(),
            );
            let q = p.inverse().expect("pairing is nondegenerate");
            for (bi, b) in fr.clone().enumerate() {
                // m_b^* = Σ_c (P^{-1})[b][c] δ_c
                out[b] = dr
                    .clone()
                    .enumerate()
                    .filter_map(|(ci, c)| {
                        let v = q.get(bi, ci);
                        (!v.is_zero()).then(|| (c, v.clone()))
                    })
                    .collect();
            }
        }
        out
    }

    fn monomial_dual_coproduct(&self, lambda: usize, dual_of_forms: &[Sparse]) -> DualTensor {
        let k = self.dual_layout.degree_of(lambda);
        let fl = self.wedge.layout();
        let mut out = DualTensor::new();
        for j in 0..=k {
            for a in fl.range(j) {
                for b in fl.range(k - j) {
                    let mut val = Rational::zero();
                    for (m, c) in &self.wedge_products(a, b) {
                        let p = self.monomial_pairing(lambda, *m);
                        if !p.is_zero() {
                            val += c * p;
                        }
                    }
                    if val.is_zero() {
                        continue;
                    }
                    for (x, cx) in &dual_of_forms[a] {
                        for (y, cy) in &dual_of_forms[b] {
                            add_entry(&mut out, (*x, *y), &val * cx * cy);
                        }
                    }
                }
            }
        }
        out
    }

    fn wedge_products(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        self.wedge.monomial_product(a, b).to_vec()
    }

    pub fn dual_coproduct(&self, theta: &DualElement) -> DualTensor {
        let mut out = DualTensor::new();
        for (m, c) in theta.terms() {
            for ((l, r), v) in &self.dual_coproducts[m] {
                add_entry(&mut out, (*l, *r), c * v);
            }
        }
        out
    }

    /// `Δ(γ_i) = 1 ⊗ γ_i + Σ_j γ_j ⊗ f^j_i`, built from the tables directly.
    pub fn gamma_coproduct(&self, i: usize) -> DualTensor {
        let mut out = DualTensor::new();
        let one = self.dual_one();
        let outer = |out: &mut DualTensor, a: &DualElement, b: &DualElement| {
            for (x, c) in a.terms() {
                for (y, d) in b.terms() {
                    add_entry(out, (x, y), c * d);
                }
            }
        };
        outer(&mut out, &one, &self.gamma(i));
        for j in 0..self.calculus().n() {
            outer(&mut out, &self.gamma(j), &self.from_dual_hopf(self.calculus().f(j, i)));
        }
        out
    }

    /// `(x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'` on the dual side.
    pub fn dual_tensor_multiply(&self, a: &DualTensor, b: &DualTensor) -> DualTensor {
        let dl = &self.dual_layout;
        let mut out = DualTensor::new();
        for ((l1, r1), c1) in a {
            for ((l2, r2), c2) in b {
                let s = sign((dl.degree_of(*r1) * dl.degree_of(*l2)) % 2 == 1);
                let coef = c1 * c2 * s;
                for (l, lc) in &self.dual_products[*l1][*l2] {
                    for (r, rc) in &self.dual_products[*r1][*r2] {
                        add_entry(&mut out, (*l, *r), &coef * lc * rc);
                    }
                }
            }
        }
        out
    }

    pub fn dual_counit(&self, theta: &DualElement) -> Rational {
        // The counit of (Γ^∧)* evaluates at the unit form.
        self.pair(theta, &self.wedge.one())
    }

    fn monomial_action(&self, theta: usize, rho: usize) -> Sparse {
        let k = self.dual_layout.degree_of(theta);
        let m = self.wedge.layout().degree_of(rho);
        if k > m {
            return vec![];
        }
        let s = action_sign(k, m);
        let mut acc = BTreeMap::new();
        for ((l, r), c) in self.wedge.monomial_coproduct_table(rho).terms() {
            let p = self.monomial_pairing(theta, *r);
            if !p.is_zero() {
                add_entry(&mut acc, *l, &s * c * p);
            }
        }
        acc.into_iter().collect()
    }

    /// `θ ▷ ρ`.
    pub fn act(&self, theta: &DualElement, rho: &GradedForm) -> GradedForm {
        let mut acc = BTreeMap::new();
        for (a, c) in theta.terms() {
            for (b, d) in rho.terms() {
                let cd = c * d;
                for (i, v) in &self.actions[a][b] {
                    add_entry(&mut acc, *i, &cd * v);
                }
            }
        }
        self.wedge.from_sparse(&acc.into_iter().collect::<Vec<_>>())
    }

    /// `L_h ρ = h ▷ ρ` for a vector field `h` (no γ factors).
    pub fn lie_derivative_form(&self, h: &DualElement, rho: &GradedForm) -> Result<GradedForm> {
        self.as_vector_field(h).ok_or(Error::NotAVectorField)?;
        Ok(self.act(h, rho))
    }

    /// `L_h θ = h_(1) θ S(h_(2))`.
    pub fn lie_derivative_dual(&self, h: &DualElement, theta: &DualElement) -> Result<DualElement> {
        let hv = self.as_vector_field(h).ok_or(Error::NotAVectorField)?;
        Ok(self.adjoint(&hv, theta))
    }

    fn adjoint(&self, h: &[Rational], theta: &DualElement) -> DualElement {
        let dual = self.dual_hopf();
        let mut out = self.dual_zero();
        for (c, l, r) in dual.coproduct_raw(h).terms() {
            let left = self.dual_from_raw(&linalg::unit_vector(dual.dim(), *l));
            let right = self.dual_from_raw(&dual.antipode_matrix().column(*r));
            let term = self.dual_multiply(&self.dual_multiply(&left, theta), &right);
            out = out.add(&term.scale(c));
        }
        out
    }

    /// `L_h(ρθ) = (h_(1) ▷ ρ)(h_(2) ▷ θ)`.
    pub fn lie_derivative(&self, h: &DualElement, x: &CrossElement) -> Result<CrossElement> {
        let hv = self.as_vector_field(h).ok_or(Error::NotAVectorField)?;
        let dual = self.dual_hopf();
        let mut out = CrossElement::zero();
        for ((f, d), c) in x.terms() {
            let rho = self.wedge.monomial(*f);
            let theta = self.dual_monomial(*d);
            for (k, l, r) in dual.coproduct_raw(&hv).terms() {
                let h1 = self.dual_from_raw(&linalg::unit_vector(dual.dim(), *l));
                let a = self.act(&h1, &rho);
                let b = self.adjoint(&linalg::unit_vector(dual.dim(), *r), &theta);
                out = out.add(&self.outer(&a, &b).scale(&(c * k)));
            }
        }
        Ok(out)
    }

    /// `ι_i ρ = γ_i ▷ ρ`.
    pub fn inner_derivation(&self, i: usize, rho: &GradedForm) -> Result<GradedForm> {
        let n = self.calculus().n();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i + 1, max: n });
        }
        Ok(self.act(&self.gamma(i), rho))
    }

    // ---- cross elements ----

    /// `ρ · 1`.
    pub fn from_form(&self, rho: &GradedForm) -> CrossElement {
        let d1 = self.dual_one();
        self.outer(rho, &d1)
    }

    /// `1 · θ`.
    pub fn from_dual(&self, theta: &DualElement) -> CrossElement {
        self.outer(&self.wedge.one(), theta)
    }

    pub fn from_scalar(&self, c: &Rational) -> CrossElement {
        self.from_form(&self.wedge.one()).scale(c)
    }

    /// `ρ θ` already in normal order.
    pub fn outer(&self, rho: &GradedForm, theta: &DualElement) -> CrossElement {
        let mut out = CrossElement::zero();
        for (f, c) in rho.terms() {
            for (d, e) in theta.terms() {
                out.add_term(f, d, c * e);
            }
        }
        out
    }

    fn monomial_swap(&self, theta: usize, rho: usize) -> Vec<((usize, usize), Rational)> {
        let m = self.wedge.layout().degree_of(rho);
        let mut acc = BTreeMap::new();
        for ((t1, t2), c) in &self.dual_coproducts[theta] {
            let s = sign((self.dual_layout.degree_of(*t2) * m) % 2 == 1);
            for (f, v) in &self.actions[*t1][rho] {
                add_entry(&mut acc, (*f, *t2), &s * c * v);
            }
        }
        acc.into_iter().collect()
    }

    /// Product in normal order, rewriting `θρ' = Σ ± (θ_(1) ▷ ρ') θ_(2)`.
    pub fn cross_multiply(&self, x: &CrossElement, y: &CrossElement) -> CrossElement {
        let prods = |a: usize, b: usize| self.wedge_products(a, b);
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        let mut form_cache: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        for ((r1, t1), c1) in x.terms() {
            for ((r2, t2), c2) in y.terms() {
                let c12 = c1 * c2;
                for ((f, t), s) in &self.swaps[*t1][*r2] {
                    let fp = form_cache.entry((*r1, *f)).or_insert_with(|| prods(*r1, *f));
                    for (fi, fc) in fp.iter() {
                        for (di, dc) in &self.dual_products[*t][*t2] {
                            add_entry(&mut acc, (*fi, *di), &c12 * s * fc * dc);
                        }
                    }
                }
            }
        }
        CrossElement { terms: acc }
    }

    /// `ρθ` acting on forms as `y -> ρ ∧ (θ ▷ y)`.
    pub fn apply(&self, x: &CrossElement, y: &GradedForm) -> GradedForm {
        let mut out = self.wedge.zero();
        for ((f, d), c) in x.terms() {
            let a = self.act(&self.dual_monomial(*d), y);
            if a.is_zero() {
                continue;
            }
            let p = self.wedge.wedge_multiply(&self.wedge.monomial(*f), &a);
            out.add_assign_scaled(c, &p);
        }
        out
    }

    /// Form part when the element has no dual factors other than the unit.
    pub fn as_form(&self, x: &CrossElement) -> Option<GradedForm> {
        let one = self.dual_one();
        let mut out = self.wedge.zero();
        let mut by_form: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for ((f, d), c) in x.terms() {
            by_form.entry(*f).or_insert_with(|| zeros(self.dual_layout.total()))[*d] = c.clone();
        }
        for (f, coeffs) in by_form {
            let k = crate::wedge::proportional_to(&coeffs, one.coeffs())?;
            out.add_assign_scaled(&k, &self.wedge.monomial(f));
        }
        Some(out)
    }

    /// Dual part when the element has no form factors other than the unit.
    pub fn as_dual(&self, x: &CrossElement) -> Option<DualElement> {
        let unit = self.wedge.one();
        let mut out = self.dual_zero();
        let mut by_dual: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for ((f, d), c) in x.terms() {
            by_dual.entry(*d).or_insert_with(|| zeros(self.wedge.layout().total()))[*f] = c.clone();
        }
        for (d, coeffs) in by_dual {
            let k = crate::wedge::proportional_to(&coeffs, unit.coeffs())?;
            out.coeffs[d] += k;
        }
        Some(out)
    }

    // ---- printing ----

    fn dual_monomial_label(&self, idx: usize) -> String {
        let (k, x, v) = self.dual_layout.decode(idx);
        let dual = self.dual_hopf();
        let mut parts = Vec::new();
        if dual.basis(x) != dual.one() {
            parts.push(dual.atom(x));
        }
        let g = format_word("gamma", &self.dual_words[k][v]);
        if !g.is_empty() {
            parts.push(g);
        }
        parts.join("*")
    }

    pub fn format_dual(&self, theta: &DualElement) -> String {
        let dual = self.dual_hopf();
        let mut groups = Vec::new();
        for k in 0..=self.max_degree() {
            for v in 0..self.dual_layout.dim(k) {
                let func: Vec<Rational> =
                    (0..dual.dim()).map(|x| theta.coeffs[self.dual_layout.index(k, x, v)].clone()).collect();
                groups.push((func, format_word("gamma", &self.dual_words[k][v])));
            }
        }
        format_grouped(dual, groups)
    }

    pub fn format_dual_tensor(&self, t: &DualTensor) -> String {
        linear_combination(t.iter().map(|((l, r), c)| {
            (c.clone(), format!("{} ⊗ {}", self.format_dual(&self.dual_monomial(*l)), self.format_dual(&self.dual_monomial(*r))))
        }))
    }

    pub fn format_cross(&self, x: &CrossElement) -> String {
        let fl = self.wedge.layout();
        let alg = self.calculus().paired().alg();
        // Group by (form word, dual monomial) and collect the function part.
        let mut groups: BTreeMap<(usize, usize, usize), Vec<Rational>> = BTreeMap::new();
        for ((f, d), c) in x.terms() {
            let (deg, t, w) = fl.decode(*f);
            groups.entry((deg, w, *d)).or_insert_with(|| zeros(alg.dim()))[t] = c.clone();
        }
        let groups = groups
            .into_iter()
            .map(|((deg, w, d), func)| {
                let word = format_word("w", &self.wedge.exterior().degree(deg).words()[w]);
                let dual = self.dual_monomial_label(d);
                let rest = [word, dual].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" * ");
                (func, rest)
            })
            .collect();
        format_grouped(alg, groups)
    }
}

/// `<γ_{v1}...γ_{vk}, ρ>` by peeling one generator at a time off the graded
/// coproduct: `<γ_i φ, ρ> = <γ_i, ρ_(1)> <φ, ρ_(2)>`, `<γ_i, a w^j> = ε(a) δ_ij`.
pub fn gamma_word_pairing(
    wedge: &Wedge,
    word: &[usize],
    rho: &GradedForm,
    memo: &mut HashMap<(Vec<usize>, usize), Rational>,
) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in rho.terms() {
        let v = gamma_word_on_monomial(wedge, word, m, memo);
        if !v.is_zero() {
            acc += c * v;
        }
    }
    acc
}

fn gamma_word_on_monomial(
    wedge: &Wedge,
    word: &[usize],
    m: usize,
    memo: &mut HashMap<(Vec<usize>, usize), Rational>,
) -> Rational {
    let layout = wedge.layout();
    if layout.degree_of(m) != word.len() {
        return Rational::zero();
    }
    if word.is_empty() {
        return wedge.counit(&wedge.monomial(m));
    }
    if let Some(v) = memo.get(&(word.to_vec(), m)) {
        return v.clone();
    }
    let alg = wedge.calculus().paired().alg();
    let mut acc = Rational::zero();
    for ((l, r), c) in wedge.monomial_coproduct_table(m).terms() {
        let (dl, t, j) = layout.decode(*l);
        if dl != 1 || j != word[0] {
            continue;
        }
        let eps = &alg.counit_table()[t];
        if eps.is_zero() {
            continue;
        }
        let rest = gamma_word_on_monomial(wedge, &word[1..], *r, memo);
        if !rest.is_zero() {
            acc += c * eps * rest;
        }
    }
    memo.insert((word.to_vec(), m), acc.clone());
    acc
}

/// Closed form of `<γ_{u1}...γ_{uk}, w^{W}>` on raw words:
/// `Σ_p (-1)^{p-1} Σ_v <f^{W_1}_{v_1}...f^{W_{p-1}}_{v_{p-1}}, r^{W_p}_{u_1}>
/// G(u_2..u_k; v_1..v_{p-1} W_{p+1}..W_k)`, with `G(∅; ∅) = 1`.
pub fn gamma_word_closed_form(
    calc: &FodcData,
    u: &[usize],
    w: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), Rational>,
) -> Rational {
    if u.len() != w.len() {
        return Rational::zero();
    }
    if u.is_empty() {
        return Rational::one();
    }
    if let Some(v) = memo.get(&(u.to_vec(), w.to_vec())) {
        return v.clone();
    }
    let n = calc.n();
    let p = calc.paired();
    let dual = p.dual();
    let mut acc = Rational::zero();
    // prefixes: (v_1..v_{p-1}, f^{W_1}_{v_1}...f^{W_{p-1}}_{v_{p-1}})
    let mut prefixes: Vec<(Vec<usize>, Vec<Rational>)> = vec![(vec![], dual.one().into_coeffs())];
    for pos in 0..w.len() {
        let s = sign(pos % 2 == 1);
        for (v, prod) in &prefixes {
            let coef = p.pair_raw(prod, calc.r(w[pos], u[0]).coeffs());
            if coef.is_zero() {
                continue;
            }
            let mut rest = v.clone();
            rest.extend_from_slice(&w[pos + 1..]);
            let g = gamma_word_closed_form(calc, &u[1..], &rest, memo);
            if !g.is_zero() {
                acc += &s * coef * g;
            }
        }
        let mut next = Vec::new();
        for (v, prod) in &prefixes {
            for j in 0..n {
                let np = dual.mul_raw(prod, calc.f(w[pos], j).coeffs());
                if !linalg::is_zero_vec(&np) {
                    let mut nv = v.clone();
                    nv.push(j);
                    next.push((nv, np));
                }
            }
        }
        prefixes = next;
    }
    memo.insert((u.to_vec(), w.to_vec()), acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::finite_group_calculus_named;
    use crate::hopf::GroupTable;
    use crate::linalg::rat;

    fn z2() -> FodcData {
        finite_group_calculus_named(&GroupTable::cyclic(&["e", "g"]), &["g"]).unwrap()
    }

    fn z3() -> FodcData {
        finite_group_calculus_named(&GroupTable::cyclic(&["e", "c", "c2"]), &["c", "c2"]).unwrap()
    }

    fn s3() -> FodcData {
        finite_group_calculus_named(&GroupTable::symmetric3(), &["p12", "p13", "p23"]).unwrap()
    }

    fn cross(calc: FodcData, maxdeg: usize) -> CrossAlgebra {
        CrossAlgebra::new(calc, WedgeOptions::with_max_degree(maxdeg)).unwrap()
    }

    #[test]
    fn gamma_pairs_with_generators() {
        let c = cross(s3(), 2);
        let w = c.wedge();
        let alg = c.calculus().paired().alg().clone();
        for i in 0..3 {
            for j in 0..3 {
                for t in 0..alg.dim() {
                    let rho = w.wedge_multiply(&w.function(&alg.basis(t)), &w.omega(j));
                    let expected = if i == j { alg.counit_table()[t].clone() } else { rat(0) };
                    assert_eq!(c.pair(&c.gamma(i), &rho), expected);
                }
                assert_eq!(c.pair(&c.gamma(i), &w.function(&alg.basis(j))), rat(0));
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_recursive_pairing() {
        for (calc, maxdeg) in [(z3(), 2), (s3(), 4)] {
            let c = cross(calc.clone(), maxdeg);
            let n = calc.n();
            let mut m1 = HashMap::new();
            let mut m2 = HashMap::new();
            for k in 1..=maxdeg {
                for u in 0..n.pow(k as u32) {
                    let u = raw_word(n, k, u);
                    for w in 0..n.pow(k as u32) {
                        let w = raw_word(n, k, w);
                        let rec = gamma_word_pairing(c.wedge(), &u, &c.wedge().word_form(&w), &mut m1);
                        assert_eq!(rec, gamma_word_closed_form(&calc, &u, &w, &mut m2), "{u:?} {w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn z2_dual_examples() {
        let c = cross(z2(), 2);
        let d = c.dual_hopf().clone();
        let g = c.from_dual_hopf(&d.basis(1));
        let gamma = c.gamma(0);
        assert_eq!(c.dual_multiply(&gamma, &g), c.dual_multiply(&g, &gamma));
        assert!(c.dual_multiply(&gamma, &gamma).is_zero());
        assert_eq!(c.dual_multiply(&gamma, &c.dual_one()), gamma);
        let mut expected = DualTensor::new();
        add_entry(&mut expected, (c.dual_layout().index(0, 0, 0), c.dual_layout().index(1, 0, 0)), rat(1));
        add_entry(&mut expected, (c.dual_layout().index(1, 0, 0), c.dual_layout().index(0, 1, 0)), rat(1));
        assert_eq!(c.gamma_coproduct(0), expected);
        assert_eq!(c.dual_coproduct(&gamma), expected);
    }

    #[test]
    fn gamma_coproduct_matches_dual_coproduct() {
        for calc in [z3(), s3()] {
            let c = cross(calc, 3);
            for i in 0..c.calculus().n() {
                assert_eq!(c.gamma_coproduct(i), c.dual_coproduct(&c.gamma(i)));
            }
        }
    }

    #[test]
    fn inner_derivation_examples() {
        for calc in [z2(), s3()] {
            let c = cross(calc, 3);
            let w = c.wedge();
            let p = c.calculus().paired().clone();
            for i in 0..c.calculus().n() {
                for a in 0..p.alg().dim() {
                    let av = p.alg().basis(a);
                    assert!(c.inner_derivation(i, &w.function(&av)).unwrap().is_zero());
                    let da = w.exterior_derivative(&w.function(&av));
                    let expected = w.function(&p.left_act(c.calculus().chi(i), &av).unwrap());
                    assert_eq!(c.inner_derivation(i, &da).unwrap(), expected);
                }
            }
        }
        let c = cross(z2(), 2);
        let w = c.wedge();
        let eg = w.function(&c.calculus().paired().alg().basis(1));
        assert_eq!(c.inner_derivation(0, &w.wedge_multiply(&eg, &w.omega(0))).unwrap(), eg);
        assert!(c.inner_derivation(1, &eg).is_err());
    }

    #[test]
    fn lie_derivative_examples() {
        let c = cross(z2(), 2);
        let w = c.wedge();
        let chi = c.from_dual_hopf(c.calculus().chi(0));
        assert!(c.lie_derivative_form(&chi, &w.omega(0)).unwrap().is_zero());
        let x = w.omega(0).add(&w.function(&c.calculus().paired().alg().basis(1)));
        assert_eq!(c.lie_derivative_form(&c.dual_one(), &x).unwrap(), x);
        assert_eq!(c.lie_derivative_form(&c.gamma(0), &x), Err(Error::NotAVectorField));
        assert_eq!(c.lie_derivative_dual(&c.dual_one(), &c.gamma(0)).unwrap(), c.gamma(0));
    }

    #[test]
    fn action_is_a_module_action() {
        let c = cross(s3(), 4);
        let (dt, ft) = (c.dual_layout().total(), c.wedge().layout().total());
        for a in 0..dt {
            for b in (0..dt).step_by(5) {
                let ab = c.dual_multiply(&c.dual_monomial(a), &c.dual_monomial(b));
                for r in (0..ft).step_by(7) {
                    let rho = c.wedge().monomial(r);
                    let lhs = c.act(&ab, &rho);
                    let rhs = c.act(&c.dual_monomial(a), &c.act(&c.dual_monomial(b), &rho));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gamma_passes_functions() {
        let c = cross(z2(), 2);
        let eg = c.from_form(&c.wedge().function(&c.calculus().paired().alg().basis(1)));
        let g = c.from_dual(&c.gamma(0));
        let prod = c.cross_multiply(&g, &eg);
        assert_eq!(prod, c.cross_multiply(&eg, &g));
        assert_eq!(c.format_cross(&prod), "e[g] * gamma[1]");
    }

    #[test]
    fn gamma_omega_reorders_with_f() {
        let c = cross(s3(), 2);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = c.cross_multiply(&c.from_dual(&c.gamma(i)), &c.from_form(&c.wedge().omega(j)));
                let mut rhs = c.outer(&c.wedge().omega(j), &c.gamma(i)).scale(&rat(-1));
                rhs = rhs.add(&c.from_dual(&c.from_dual_hopf(c.calculus().f(j, i))));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cross_product_is_associative() {
        let c = cross(z3(), 2);
        let mut basis = Vec::new();
        for f in 0..c.wedge().layout().total() {
            for d in 0..c.dual_layout().total() {
                let mut x = CrossElement::zero();
                x.add_term(f, d, rat(1));
                basis.push(x);
            }
        }
        for x in basis.iter().step_by(3) {
            for y in basis.iter().step_by(2) {
                for z in basis.iter().step_by(5) {
                    let l = c.cross_multiply(&c.cross_multiply(x, y), z);
                    let r = c.cross_multiply(x, &c.cross_multiply(y, z));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn projections() {
        let c = cross(z2(), 2);
        let f = c.wedge().omega(0);
        assert_eq!(c.as_form(&c.from_form(&f)), Some(f));
        assert_eq!(c.as_dual(&c.from_dual(&c.gamma(0))), Some(c.gamma(0)));
        assert_eq!(c.as_form(&c.from_dual(&c.gamma(0))), None);
        assert_eq!(c.format_cross(&CrossElement::zero()), "0");
    }
}
