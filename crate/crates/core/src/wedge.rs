//! The graded algebra of forms `A ⊕ Γ ⊕ Γ² ⊕ ...` built from a first-order
//! calculus, with wedge product, exterior derivative and graded coproduct.
//!
//! Degree `d` is spanned by `a ⊗ w^I` where `I` runs over a basis of the
//! left-invariant part `Λ^d`. `Λ^2` is the word space modulo `ker(I - σ)`
//! with `σ^{mn}_{ij} = <f^m_j, r^n_i>`; higher degrees quotient by
//! `ker(I - σ)` placed in every pair of adjacent slots. Everything above
//! `max_degree` is dropped, which is the quotient by the ideal of forms of
//! higher degree.
//!
//! A form is a dense coefficient vector over all monomials `e_t w^I` of all
//! degrees; [`FormLayout`] fixes the indexing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::calculus::FodcData;
use crate::error::{Error, Result};
use crate::hopf::Element;
use crate::linalg::{self, axpy, complement_basis, independent_subset, zeros, Matrix, Rational};
use crate::report::{linear_combination, SuiteReport};

/// Which index order of `<f, r>` is used as the braiding. `Transposed`
/// exists only to show that the identity suites detect the wrong choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BraidingConvention {
    #[default]
    Standard,
    Transposed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WedgeOptions {
    pub max_degree: usize,
    pub braiding: BraidingConvention,
    /// Sign `(-1)^{|y||x'|}` when multiplying `(x ⊗ y)(x' ⊗ y')`. Turning it
    /// off is a negative control only.
    pub koszul: bool,
}

impl Default for WedgeOptions {
    fn default() -> Self {
        WedgeOptions { max_degree: 3, braiding: BraidingConvention::Standard, koszul: true }
    }
}

impl WedgeOptions {
    pub fn with_max_degree(max_degree: usize) -> Self {
        WedgeOptions { max_degree, ..Default::default() }
    }
}

/// `sigma[(i,j), (m,n)] = <f^m_j, r^n_i>`, pairs flattened as `i*n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braiding {
    pub n: usize,
    pub sigma: Matrix,
}

pub fn compute_braiding(d: &FodcData) -> Braiding {
    let n = d.n();
    let p = d.paired();
    let mut sigma = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for k in 0..n {
                    let v = p.pair_raw(d.f(m, j).coeffs(), d.r(k, i).coeffs());
                    sigma.set(i * n + j, m * n + k, v);
                }
            }
        }
    }
    Braiding { n, sigma }
}

impl Braiding {
    pub fn transposed(&self) -> Braiding {
        Braiding { n: self.n, sigma: self.sigma.transpose() }
    }

    /// Basis of `ker(I - σ)`, the degree-2 relations.
    pub fn relations(&self) -> Vec<Vec<Rational>> {
        Matrix::identity(self.n * self.n).sub(&self.sigma).kernel_basis()
    }
}

/// Chosen basis of one `Λ^d` plus the reduction of every raw word onto it.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    words: Vec<Vec<usize>>,
    relations: Vec<Vec<Rational>>,
    reduce: Vec<Vec<(usize, Rational)>>,
}

impl DegreeBasis {
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Basis of the relation subspace inside the raw word space.
    pub fn relations(&self) -> &[Vec<Rational>] {
        &self.relations
    }

    /// Coordinates of a raw word (by raw index) in the chosen basis.
    pub fn reduce(&self, raw: usize) -> &[(usize, Rational)] {
        &self.reduce[raw]
    }
}

#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    degrees: Vec<DegreeBasis>,
}

pub fn raw_index(n: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn raw_word(n: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; degree];
    for slot in w.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    w
}

impl ExteriorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, d: usize) -> &DegreeBasis {
        &self.degrees[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, DegreeBasis::dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeBasis::dim).collect()
    }

    /// Reduction of an arbitrary raw word; empty above the maximal degree.
    pub fn reduce_word(&self, word: &[usize]) -> &[(usize, Rational)] {
        match self.degrees.get(word.len()) {
            Some(b) => b.reduce(raw_index(self.n, word)),
            None => &[],
        }
    }
}

pub fn build_exterior(d: &FodcData, max_degree: usize) -> Result<ExteriorBasis> {
    build_exterior_from(&compute_braiding(d), max_degree)
}

pub fn build_exterior_from(braiding: &Braiding, max_degree: usize) -> Result<ExteriorBasis> {
    if max_degree < 1 {
        return Err(Error::DegreeTooSmall(1));
    }
    let n = braiding.n;
    let kernel = braiding.relations();
    let mut degrees = Vec::with_capacity(max_degree + 1);
    degrees.push(DegreeBasis { words: vec![vec![]], relations: vec![], reduce: vec![vec![(0, Rational::one())]] });
    degrees.push(DegreeBasis {
        words: (0..n).map(|i| vec![i]).collect(),
        relations: vec![],
        reduce: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
    });
    for deg in 2..=max_degree {
        let raw_dim = n.pow(deg as u32);
        if degrees[deg - 1].dim() == 0 {
            // The ideal already contains everything of this degree.
            degrees.push(DegreeBasis { words: vec![], relations: vec![], reduce: vec![vec![]; raw_dim] });
            continue;
        }
        let mut spanning = Vec::new();
        for slot in 0..=deg - 2 {
            let left_dim = n.pow(slot as u32);
            let right_dim = n.pow((deg - 2 - slot) as u32);
            for left in 0..left_dim {
                for k in &kernel {
                    for right in 0..right_dim {
                        let mut v = zeros(raw_dim);
                        for (pair, c) in k.iter().enumerate() {
                            if !c.is_zero() {
                                let idx = (left * n * n + pair) * right_dim + right;
                                v[idx] = c.clone();
                            }
                        }
                        spanning.push(v);
                    }
                }
            }
        }
        let relations = independent_subset(&spanning);
        let chosen = complement_basis(&relations, raw_dim)?;
        let mut columns = relations.clone();
        columns.extend(chosen.iter().map(|&k| linalg::unit_vector(raw_dim, k)));
        let inv = Matrix::from_columns(&columns, raw_dim).inverse().expect("relations and complement span");
        let offset = relations.len();
        let reduce = (0..raw_dim)
            .map(|raw| {
                (0..chosen.len())
                    .filter_map(|w| {
                        let c = inv.get(offset + w, raw);
                        (!c.is_zero()).then(|| (w, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let words = chosen.iter().map(|&k| raw_word(n, deg, k)).collect();
        degrees.push(DegreeBasis { words, relations, reduce });
    }
    Ok(ExteriorBasis { n, degrees })
}

/// Global indexing of monomials `e_t w^I`: degree blocks in increasing
/// order, inside a block `t * dim Λ^d + w`.
#[derive(Clone, Debug)]
pub struct FormLayout {
    dim_a: usize,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl FormLayout {
    pub fn new(dim_a: usize, dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += dim_a * d;
        }
        FormLayout { dim_a, dims, offsets, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn index(&self, degree: usize, t: usize, w: usize) -> usize {
        self.offsets[degree] + t * self.dims[degree] + w
    }

    /// `(degree, t, w)` of a global index.
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let degree = (0..self.dims.len())
            .find(|&d| self.range(d).contains(&idx))
            .expect("monomial index in range");
        let local = idx - self.offsets[degree];
        (degree, local / self.dims[degree], local % self.dims[degree])
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.decode(idx).0
    }

    pub fn range(&self, degree: usize) -> std::ops::Range<usize> {
        match self.offsets.get(degree) {
            Some(&o) => o..o + self.dim_a * self.dims[degree],
            None => self.total..self.total,
        }
    }
}

/// Element of the graded algebra of forms, dense over all monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    coeffs: Vec<Rational>,
}

impl GradedForm {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &GradedForm) -> GradedForm {
        GradedForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &GradedForm) -> GradedForm {
        GradedForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> GradedForm {
        GradedForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add_assign_scaled(&mut self, c: &Rational, other: &GradedForm) {
        axpy(&mut self.coeffs, c, &other.coeffs);
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Element of `Γ^∧ ⊗ Γ^∧`, canonical sparse map over monomial pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormTensor {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl FormTensor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: usize, right: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((left, right)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    /// Adds `c * x ⊗ y`.
    pub fn add_outer(&mut self, c: &Rational, x: &GradedForm, y: &GradedForm) {
        for (l, a) in x.terms() {
            for (r, b) in y.terms() {
                self.add_term(l, r, c * a * b);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

type Sparse = Vec<(usize, Rational)>;
/// Per degree and word: `(left word, right form, sign)` coproduct patterns.
type WordCoproducts = Vec<Vec<Vec<(Vec<usize>, GradedForm, Rational)>>>;

/// Forms of a calculus up to a fixed degree, with precomputed product,
/// derivative and coproduct tables on monomials.
#[derive(Clone, Debug)]
pub struct Wedge {
    calc: FodcData,
    options: WedgeOptions,
    braiding: Braiding,
    exterior: ExteriorBasis,
    layout: FormLayout,
    /// `act[i][k]`: matrix of `b -> f^i_k ▷ b`.
    act: Vec<Vec<Matrix>>,
    products: Vec<Vec<Sparse>>,
    derivative: Vec<GradedForm>,
    coproducts: Vec<FormTensor>,
}

impl Wedge {
    pub fn new(calc: FodcData, options: WedgeOptions) -> Result<Self> {
        let mut braiding = compute_braiding(&calc);
        if options.braiding == BraidingConvention::Transposed {
            braiding = braiding.transposed();
        }
        let exterior = build_exterior_from(&braiding, options.max_degree)?;
        let alg = calc.paired().alg().clone();
        let dim_a = alg.dim();
        let layout = FormLayout::new(dim_a, exterior.dims());
        let n = calc.n();
        let act = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let cols: Vec<Vec<Rational>> = (0..dim_a)
                            .map(|b| calc.paired().left_act_raw(calc.f(i, k).coeffs(), &linalg::unit_vector(dim_a, b)))
                            .collect();
                        Matrix::from_columns(&cols, dim_a)
                    })
                    .collect()
            })
            .collect();
        let mut w = Wedge {
            calc,
            options,
            braiding,
            exterior,
            layout,
            act,
            products: Vec::new(),
            derivative: Vec::new(),
            coproducts: Vec::new(),
        };
        w.products = (0..w.layout.total())
            .map(|x| (0..w.layout.total()).map(|y| w.compute_monomial_product(x, y)).collect())
            .collect();
        w.derivative = (0..w.layout.total()).map(|m| w.monomial_derivative(m)).collect();
        let word_coproducts: WordCoproducts = (0..=w.max_degree())
            .map(|deg| w.exterior.degree(deg).words().iter().map(|word| w.invariant_coproduct(word)).collect())
            .collect();
        w.coproducts = (0..w.layout.total()).map(|m| w.monomial_coproduct(m, &word_coproducts)).collect();
        Ok(w)
    }

    pub fn calculus(&self) -> &FodcData {
        &self.calc
    }

    pub fn options(&self) -> WedgeOptions {
        self.options
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn exterior(&self) -> &ExteriorBasis {
        &self.exterior
    }

    pub fn layout(&self) -> &FormLayout {
        &self.layout
    }

    pub fn max_degree(&self) -> usize {
        self.exterior.max_degree()
    }

    pub fn zero(&self) -> GradedForm {
        GradedForm { coeffs: zeros(self.layout.total()) }
    }

    pub fn monomial(&self, idx: usize) -> GradedForm {
        GradedForm { coeffs: linalg::unit_vector(self.layout.total(), idx) }
    }

    pub fn from_sparse(&self, terms: &[(usize, Rational)]) -> GradedForm {
        let mut f = self.zero();
        for (i, c) in terms {
            f.coeffs[*i] += c;
        }
        f
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<GradedForm> {
        if coeffs.len() != self.layout.total() {
            return Err(Error::DimensionMismatch { expected: self.layout.total(), found: coeffs.len() });
        }
        Ok(GradedForm { coeffs })
    }

    /// Degree-0 form from a function.
    pub fn function(&self, a: &Element) -> GradedForm {
        self.function_raw(a.coeffs())
    }

    pub(crate) fn function_raw(&self, a: &[Rational]) -> GradedForm {
        let mut f = self.zero();
        for (t, c) in a.iter().enumerate() {
            f.coeffs[self.layout.index(0, t, 0)] = c.clone();
        }
        f
    }

    pub fn one(&self) -> GradedForm {
        self.function(&self.calc.paired().alg().one())
    }

    /// `sum_t unit_t e_t w^w` for a basis word of `Λ^degree`.
    pub fn invariant(&self, degree: usize, w: usize) -> GradedForm {
        let mut f = self.zero();
        for (t, c) in self.calc.paired().alg().one().coeffs().iter().enumerate() {
            f.coeffs[self.layout.index(degree, t, w)] = c.clone();
        }
        f
    }

    /// The invariant generator `w^i`.
    pub fn omega(&self, i: usize) -> GradedForm {
        self.invariant(1, i)
    }

    /// Product of generators along a raw word, reduced.
    pub fn word_form(&self, word: &[usize]) -> GradedForm {
        word.iter().fold(self.one(), |acc, &i| self.wedge_multiply(&acc, &self.omega(i)))
    }

    /// Degree-`d` component.
    pub fn component(&self, x: &GradedForm, degree: usize) -> GradedForm {
        let mut f = self.zero();
        for i in self.layout.range(degree) {
            f.coeffs[i] = x.coeffs[i].clone();
        }
        f
    }

    /// Degree of a homogeneous nonzero form.
    pub fn homogeneous_degree(&self, x: &GradedForm) -> Option<usize> {
        let mut deg = None;
        for (i, _) in x.terms() {
            let d = self.layout.degree_of(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Degree-0 component as a function.
    pub fn function_part(&self, x: &GradedForm) -> Vec<Rational> {
        (0..self.layout.dim_a()).map(|t| x.coeffs[self.layout.index(0, t, 0)].clone()).collect()
    }

    /// `ε` on forms: the counit of `A` on degree 0, zero above.
    pub fn counit(&self, x: &GradedForm) -> Rational {
        self.calc.paired().alg().counit_raw(&self.function_part(x))
    }

    fn compute_monomial_product(&self, x: usize, y: usize) -> Sparse {
        let (dx, t, wi) = self.layout.decode(x);
        let (dy, s, wj) = self.layout.decode(y);
        if dx + dy > self.max_degree() {
            return vec![];
        }
        let n = self.calc.n();
        let alg = self.calc.paired().alg();
        let dim_a = alg.dim();
        let word_i = &self.exterior.degree(dx).words()[wi];
        let word_j = &self.exterior.degree(dy).words()[wj];
        // Move e_s to the left through w^I, one generator at a time.
        let mut moved: Vec<(Vec<usize>, Vec<Rational>)> = vec![(vec![], linalg::unit_vector(dim_a, s))];
        for &letter in word_i.iter().rev() {
            let mut next = Vec::new();
            for (k_word, b) in &moved {
                for k in 0..n {
                    let c = self.act[letter][k].mul_vec(b);
                    if !linalg::is_zero_vec(&c) {
                        let mut w = Vec::with_capacity(k_word.len() + 1);
                        w.push(k);
                        w.extend_from_slice(k_word);
                        next.push((w, c));
                    }
                }
            }
            moved = next;
        }
        let mut out = Vec::new();
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let et = linalg::unit_vector(dim_a, t);
        for (k_word, c) in moved {
            let func = alg.mul_raw(&et, &c);
            let mut word = k_word;
            word.extend_from_slice(word_j);
            for (w, lambda) in self.exterior.reduce_word(&word) {
                for (u, fu) in func.iter().enumerate() {
                    if !fu.is_zero() {
                        *acc.entry(self.layout.index(dx + dy, u, *w)).or_insert_with(Rational::zero) += lambda * fu;
                    }
                }
            }
        }
        out.extend(acc.into_iter().filter(|(_, c)| !c.is_zero()));
        out
    }

    pub fn wedge_multiply(&self, x: &GradedForm, y: &GradedForm) -> GradedForm {
        let mut out = self.zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let ab = a * b;
                for (k, c) in &self.products[i][j] {
                    out.coeffs[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn differential_of_function(&self, a: &[Rational]) -> GradedForm {
        let mut f = self.zero();
        if self.max_degree() < 1 {
            return f;
        }
        for i in 0..self.calc.n() {
            let c = self.calc.paired().left_act_raw(self.calc.chi(i).coeffs(), a);
            for (t, v) in c.into_iter().enumerate() {
                f.coeffs[self.layout.index(1, t, i)] = v;
            }
        }
        f
    }

    /// `d(w^i) = sum_k d(a_k) d(b_k)` from the presentation `w^i = sum a_k d b_k`.
    fn omega_derivative(&self, i: usize) -> GradedForm {
        let mut out = self.zero();
        for (a, b) in self.calc.omega_presentation(i) {
            let da = self.differential_of_function(a.coeffs());
            let db = self.differential_of_function(b.coeffs());
            out = out.add(&self.wedge_multiply(&da, &db));
        }
        out
    }

    fn monomial_derivative(&self, m: usize) -> GradedForm {
        let (deg, t, w) = self.layout.decode(m);
        if deg >= self.max_degree() {
            return self.zero();
        }
        let dim_a = self.layout.dim_a();
        let et = self.function_raw(&linalg::unit_vector(dim_a, t));
        let word = &self.exterior.degree(deg).words()[w];
        let inv = self.invariant(deg, w);
        let mut out = self.wedge_multiply(&self.differential_of_function(&linalg::unit_vector(dim_a, t)), &inv);
        // Graded Leibniz along the word: sum_p (-1)^p w^{<p} d(w^{i_p}) w^{>p}.
        for p in 0..word.len() {
            let prefix = self.word_form(&word[..p]);
            let suffix = self.word_form(&word[p + 1..]);
            let term = self.wedge_multiply(&self.wedge_multiply(&prefix, &self.omega_derivative(word[p])), &suffix);
            let term = self.wedge_multiply(&et, &term);
            let sign = if p % 2 == 0 { Rational::one() } else { -Rational::one() };
            out.add_assign_scaled(&sign, &term);
        }
        out
    }

    pub fn exterior_derivative(&self, x: &GradedForm) -> GradedForm {
        let mut out = self.zero();
        for (m, c) in x.terms() {
            out.add_assign_scaled(c, &self.derivative[m]);
        }
        out
    }

    fn koszul_sign(&self, a: usize, b: usize) -> Rational {
        if self.options.koszul && (a * b) % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    /// Coproduct of an invariant word `w^I = prod_p (1 ⊗ w^{i_p} + w^j ⊗ r^{i_p}_j)`
    /// as a list of `(left raw word, right form, sign)`; the left factor
    /// carries the unit function.
    fn invariant_coproduct(&self, word: &[usize]) -> Vec<(Vec<usize>, GradedForm, Rational)> {
        let n = self.calc.n();
        let mut partial: Vec<(Vec<usize>, GradedForm, usize, Rational)> =
            vec![(vec![], self.one(), 0, Rational::one())];
        for &i in word {
            let mut next = Vec::new();
            for (left, right, right_deg, sign) in &partial {
                // 1 ⊗ w^i
                next.push((left.clone(), self.wedge_multiply(right, &self.omega(i)), right_deg + 1, sign.clone()));
                // w^j ⊗ r^i_j; moving w^j past the right factor so far.
                let s = sign * self.koszul_sign(*right_deg, 1);
                for j in 0..n {
                    let r = self.calc.r(i, j);
                    if r.is_zero() {
                        continue;
                    }
                    let mut l = left.clone();
                    l.push(j);
                    let rf = self.wedge_multiply(right, &self.function(r));
                    if !rf.is_zero() {
                        next.push((l, rf, *right_deg, s.clone()));
                    }
                }
            }
            partial = next;
        }
        partial.into_iter().map(|(l, r, _, s)| (l, r, s)).collect()
    }

    fn monomial_coproduct(
        &self,
        m: usize,
        word_coproducts: &WordCoproducts,
    ) -> FormTensor {
        let (deg, t, w) = self.layout.decode(m);
        let alg = self.calc.paired().alg();
        let dim_a = alg.dim();
        let mut out = FormTensor::new();
        for (c, l, r) in alg.comult_table()[t].terms() {
            let er = self.function_raw(&linalg::unit_vector(dim_a, *r));
            for (left_word, right, sign) in &word_coproducts[deg][w] {
                let right = self.wedge_multiply(&er, right);
                if right.is_zero() {
                    continue;
                }
                let left_deg = left_word.len();
                for (lw, lambda) in self.exterior.reduce_word(left_word) {
                    let li = self.layout.index(left_deg, *l, *lw);
                    for (ri, b) in right.terms() {
                        out.add_term(li, ri, c * sign * lambda * b);
                    }
                }
            }
        }
        out
    }

    pub fn graded_coproduct(&self, x: &GradedForm) -> FormTensor {
        let mut out = FormTensor::new();
        for (m, c) in x.terms() {
            for ((l, r), v) in self.coproducts[m].terms() {
                out.add_term(*l, *r, c * v);
            }
        }
        out
    }

    /// Product table entry for two monomials.
    pub fn monomial_product(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.products[a][b]
    }

    pub fn monomial_coproduct_table(&self, m: usize) -> &FormTensor {
        &self.coproducts[m]
    }

    /// `(x ⊗ y)(x' ⊗ y') = (-1)^{|y||x'|} xx' ⊗ yy'`, truncated by total degree.
    pub fn tensor_multiply(&self, a: &FormTensor, b: &FormTensor) -> FormTensor {
        let mut out = FormTensor::new();
        for ((l1, r1), c1) in a.terms() {
            let (dl1, dr1) = (self.layout.degree_of(*l1), self.layout.degree_of(*r1));
            for ((l2, r2), c2) in b.terms() {
                let (dl2, dr2) = (self.layout.degree_of(*l2), self.layout.degree_of(*r2));
                if dl1 + dr1 + dl2 + dr2 > self.max_degree() {
                    continue;
                }
                let coef = c1 * c2 * self.koszul_sign(dr1, dl2);
                for (li, lc) in &self.products[*l1][*l2] {
                    for (ri, rc) in &self.products[*r1][*r2] {
                        out.add_term(*li, *ri, &coef * lc * rc);
                    }
                }
            }
        }
        out
    }

    pub fn format_form(&self, x: &GradedForm) -> String {
        let alg = self.calc.paired().alg();
        let mut groups = Vec::new();
        for deg in 0..=self.max_degree() {
            for w in 0..self.layout.dim(deg) {
                let func: Vec<Rational> =
                    (0..self.layout.dim_a()).map(|t| x.coeffs[self.layout.index(deg, t, w)].clone()).collect();
                let word = format_word("w", &self.exterior.degree(deg).words()[w]);
                groups.push((func, word));
            }
        }
        format_grouped(alg, groups)
    }

    pub fn format_tensor(&self, t: &FormTensor) -> String {
        linear_combination(t.terms().map(|((l, r), c)| {
            (c.clone(), format!("{} ⊗ {}", self.format_form(&self.monomial(*l)), self.format_form(&self.monomial(*r))))
        }))
    }
}

/// `w[1]*w[3]`; empty for the empty word.
pub fn format_word(symbol: &str, word: &[usize]) -> String {
    word.iter().map(|i| format!("{}[{}]", symbol, i + 1)).collect::<Vec<_>>().join("*")
}

/// Prints `sum_g func_g * rest_g`. A function part proportional to the unit
/// prints as a scalar, a single delta as `c*e[t]`, anything else as a
/// parenthesised sum.
pub(crate) fn format_grouped(alg: &crate::hopf::HopfData, groups: Vec<(Vec<Rational>, String)>) -> String {
    let unit = alg.one();
    let mut terms = Vec::new();
    let multi_groups = groups.iter().filter(|(f, _)| !linalg::is_zero_vec(f)).count() > 1;
    for (func, rest) in groups {
        if linalg::is_zero_vec(&func) {
            continue;
        }
        let join = |head: String| if rest.is_empty() { head } else { format!("{} * {}", head, rest) };
        if let Some(c) = proportional_to(&func, unit.coeffs()) {
            terms.push((c, rest.clone()));
            continue;
        }
        let support: Vec<usize> = (0..func.len()).filter(|&t| !func[t].is_zero()).collect();
        if support.len() == 1 {
            let t = support[0];
            terms.push((func[t].clone(), join(alg.atom(t))));
        } else {
            let sum = alg.format_raw(&func);
            let head = if rest.is_empty() && !multi_groups { sum } else { format!("({})", sum) };
            terms.push((Rational::one(), join(head)));
        }
    }
    linear_combination(terms)
}

/// `Some(c)` when `v = c * unit`.
pub(crate) fn proportional_to(v: &[Rational], unit: &[Rational]) -> Option<Rational> {
    let k = unit.iter().position(|u| !u.is_zero())?;
    let c = &v[k] / &unit[k];
    v.iter().zip(unit).all(|(a, u)| *a == &c * u).then_some(c)
}

/// Coassociativity, counit law and multiplicativity `Δ(xy) = Δ(x)Δ(y)` on
/// all basis monomials whose product stays within the maximal degree.
pub fn check_graded_bialgebra(w: &Wedge) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new("graded-bialgebra");
    let total = w.layout().total();
    let fmt_t = |t: &FormTensor| w.format_tensor(t);
    for m in 0..total {
        let x = w.monomial(m);
        let label = w.format_form(&x);
        let delta = w.graded_coproduct(&x);
        // (Δ ⊗ id)Δ and (id ⊗ Δ)Δ as triple maps
        let mut left: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut right: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for ((l, r), c) in delta.terms() {
            for ((a, b), d) in w.monomial_coproduct_table(*l).terms() {
                *left.entry((*a, *b, *r)).or_insert_with(Rational::zero) += c * d;
            }
            for ((a, b), d) in w.monomial_coproduct_table(*r).terms() {
                *right.entry((*l, *a, *b)).or_insert_with(Rational::zero) += c * d;
            }
        }
        left.retain(|_, c| !c.is_zero());
        right.retain(|_, c| !c.is_zero());
        let show = |t: &BTreeMap<(usize, usize, usize), Rational>| {
            linear_combination(t.iter().map(|((a, b, c), k)| {
                (
                    k.clone(),
                    format!(
                        "{} ⊗ {} ⊗ {}",
                        w.format_form(&w.monomial(*a)),
                        w.format_form(&w.monomial(*b)),
                        w.format_form(&w.monomial(*c))
                    ),
                )
            }))
        };
        rep.compare("coassociativity", label.clone(), &left, &right, show);

        let mut eps_left = w.zero();
        let mut eps_right = w.zero();
        for ((l, r), c) in delta.terms() {
            let el = w.counit(&w.monomial(*l));
            if !el.is_zero() {
                eps_left.coeffs[*r] += c * el;
            }
            let er = w.counit(&w.monomial(*r));
            if !er.is_zero() {
                eps_right.coeffs[*l] += c * er;
            }
        }
        rep.compare("counit-left", label.clone(), &eps_left, &x, |f| w.format_form(f));
        rep.compare("counit-right", label, &eps_right, &x, |f| w.format_form(f));
    }
    for a in 0..total {
        let da = w.layout().degree_of(a);
        for b in 0..total {
            if da + w.layout().degree_of(b) > w.max_degree() {
                continue;
            }
            let (x, y) = (w.monomial(a), w.monomial(b));
            let lhs = w.graded_coproduct(&w.wedge_multiply(&x, &y));
            let rhs = w.tensor_multiply(&w.graded_coproduct(&x), &w.graded_coproduct(&y));
            let label = format!("{} ; {}", w.format_form(&x), w.format_form(&y));
            rep.compare("multiplicativity", label, &lhs, &rhs, fmt_t);
        }
    }
    rep.elapsed = start.elapsed();
    rep
}

/// `d(d(x)) = 0` on every monomial of degree at most `max_degree - 2`
/// (higher ones vanish by truncation).
pub fn check_d_squared(w: &Wedge) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new("d-squared");
    for m in 0..w.layout().total() {
        let x = w.monomial(m);
        let dd = w.exterior_derivative(&w.exterior_derivative(&x));
        rep.compare("d-squared", w.format_form(&x), &dd, &w.zero(), |f| w.format_form(f));
    }
    rep.elapsed = start.elapsed();
    rep
}

/// `d(xy) = dx y + (-1)^{|x|} x dy` on basis monomials with `|x| + |y| < max_degree`.
pub fn check_graded_leibniz(w: &Wedge) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new("graded-leibniz");
    let total = w.layout().total();
    for a in 0..total {
        let da = w.layout().degree_of(a);
        for b in 0..total {
            if da + w.layout().degree_of(b) >= w.max_degree() {
                continue;
            }
            let (x, y) = (w.monomial(a), w.monomial(b));
            let lhs = w.exterior_derivative(&w.wedge_multiply(&x, &y));
            let mut rhs = w.wedge_multiply(&w.exterior_derivative(&x), &y);
            let sign = if da.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            rhs.add_assign_scaled(&sign, &w.wedge_multiply(&x, &w.exterior_derivative(&y)));
            let label = format!("{} ; {}", w.format_form(&x), w.format_form(&y));
            rep.compare("graded-leibniz", label, &lhs, &rhs, |f| w.format_form(f));
        }
    }
    rep.elapsed = start.elapsed();
    rep
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

    #[test]
    fn braiding_examples() {
        assert_eq!(compute_braiding(&z2()).sigma, Matrix::identity(1));
        let s = compute_braiding(&s3());
        assert_eq!(s.sigma.rows(), 9);
        for r in 0..9 {
            let row = s.sigma.row(r);
            assert!(row.iter().all(|x| *x == rat(0) || *x == rat(1)));
            assert_eq!(row.iter().filter(|x| **x == rat(1)).count(), 1);
        }
        // Z3 is abelian: σ is the flip of the two tensor slots.
        let s = compute_braiding(&z3());
        let mut flip = Matrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                flip.set(i * 2 + j, j * 2 + i, rat(1));
            }
        }
        assert_eq!(s.sigma, flip);
    }

    #[test]
    fn exterior_dimensions() {
        assert_eq!(build_exterior(&z2(), 3).unwrap().dims(), vec![1, 1, 0, 0]);
        assert_eq!(build_exterior(&z3(), 3).unwrap().dims(), vec![1, 2, 1, 0]);
        assert_eq!(build_exterior(&s3(), 5).unwrap().dims(), vec![1, 3, 4, 3, 1, 0]);
    }

    #[test]
    fn reduction_is_idempotent_on_basis_words() {
        let e = build_exterior(&s3(), 4).unwrap();
        for d in 0..=4 {
            for (k, w) in e.degree(d).words().iter().enumerate() {
                assert_eq!(e.reduce_word(w), &[(k, rat(1))]);
            }
        }
    }

    #[test]
    fn layout_roundtrip() {
        let l = FormLayout::new(3, vec![1, 2, 0, 1]);
        for idx in 0..l.total() {
            let (d, t, w) = l.decode(idx);
            assert_eq!(l.index(d, t, w), idx);
        }
        assert_eq!(l.degree_of(l.total() - 1), 3);
    }

    #[test]
    fn omega_times_function_matches_commutation() {
        for calc in [z2(), s3()] {
            let w = Wedge::new(calc.clone(), WedgeOptions::default()).unwrap();
            let alg = calc.paired().alg().clone();
            for i in 0..calc.n() {
                for b in 0..alg.dim() {
                    let lhs = w.wedge_multiply(&w.omega(i), &w.function(&alg.basis(b)));
                    let expected = calc.omega_times_function(i, &alg.basis(b)).unwrap();
                    let mut rhs = w.zero();
                    for (j, c) in expected.components.iter().enumerate() {
                        rhs = rhs.add(&w.wedge_multiply(&w.function(c), &w.omega(j)));
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn unit_is_neutral_and_z2_square_vanishes() {
        let w = Wedge::new(z2(), WedgeOptions::default()).unwrap();
        let x = w.omega(0).add(&w.function(&w.calculus().paired().alg().basis(1)));
        assert_eq!(w.wedge_multiply(&x, &w.one()), x);
        assert_eq!(w.wedge_multiply(&w.one(), &x), x);
        assert!(w.wedge_multiply(&w.omega(0), &w.omega(0)).is_zero());
        assert!(w.exterior_derivative(&w.omega(0)).is_zero());
    }

    #[test]
    fn derivative_of_functions_and_unit() {
        let w = Wedge::new(z2(), WedgeOptions::default()).unwrap();
        let alg = w.calculus().paired().alg().clone();
        assert!(w.exterior_derivative(&w.one()).is_zero());
        assert_eq!(w.format_form(&w.exterior_derivative(&w.function(&alg.basis(1)))), "(e[e] - e[g]) * w[1]");
    }

    #[test]
    fn coproduct_of_generator() {
        let w = Wedge::new(s3(), WedgeOptions::default()).unwrap();
        let calc = w.calculus().clone();
        for i in 0..3 {
            let mut expected = FormTensor::new();
            expected.add_outer(&rat(1), &w.one(), &w.omega(i));
            for j in 0..3 {
                expected.add_outer(&rat(1), &w.omega(j), &w.function(calc.r(i, j)));
            }
            assert_eq!(w.graded_coproduct(&w.omega(i)), expected);
        }
        let f = w.function(&calc.paired().alg().basis(2));
        let mut expected = FormTensor::new();
        for (c, l, r) in calc.paired().alg().comult_table()[2].terms() {
            expected.add_term(w.layout().index(0, *l, 0), w.layout().index(0, *r, 0), c.clone());
        }
        assert_eq!(w.graded_coproduct(&f), expected);
    }

    #[test]
    fn structure_checks_pass() {
        for calc in [z2(), z3()] {
            let w = Wedge::new(calc, WedgeOptions::default()).unwrap();
            assert!(check_d_squared(&w).passed());
            assert!(check_graded_leibniz(&w).passed());
            assert!(check_graded_bialgebra(&w).passed());
        }
        let w = Wedge::new(s3(), WedgeOptions::with_max_degree(2)).unwrap();
        assert!(check_graded_bialgebra(&w).passed());
    }

    #[test]
    fn dropping_koszul_breaks_multiplicativity() {
        let opts = WedgeOptions { koszul: false, ..WedgeOptions::with_max_degree(2) };
        let w = Wedge::new(z3(), opts).unwrap();
        assert!(!check_graded_bialgebra(&w).relation_passed("multiplicativity"));
    }

    #[test]
    fn wedge_is_associative_on_monomials() {
        let w = Wedge::new(z3(), WedgeOptions::default()).unwrap();
        let total = w.layout().total();
        for a in 0..total {
            for b in 0..total {
                for c in 0..total {
                    let (x, y, z) = (w.monomial(a), w.monomial(b), w.monomial(c));
                    let l = w.wedge_multiply(&w.wedge_multiply(&x, &y), &z);
                    let r = w.wedge_multiply(&x, &w.wedge_multiply(&y, &z));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
