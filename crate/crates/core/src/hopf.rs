//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! A [`HopfData`] stores multiplication, unit, comultiplication, counit and
//! antipode densely over a fixed basis. The finite-group constructors
//! [`function_hopf`] and [`group_hopf`] supply every concrete instance used
//! in this crate; [`dual_hopf`] transposes all structure constants.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, zeros, Matrix, Rational};
use crate::report::{format_rational, linear_combination, SuiteReport};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)
}

/// Multiplication table of a finite group, elements indexed `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses by exhaustion.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element list".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::NotAGroup(format!("duplicate element name `{a}`")));
            }
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not closed or not square".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("`{}` has no inverse", names[a])))?;
            inverse.push(inv);
        }
        Ok(GroupTable { names, mul, identity, inverse })
    }

    /// Z_n with elements named by `names` in the order `1, g, g^2, ...`.
    pub fn cyclic(names: &[&str]) -> Self {
        let n = names.len();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), mul).expect("cyclic group")
    }

    /// S_3 with elements `e, p12, p13, p23, c123, c132`, composed right to
    /// left: `(p q)(k) = p(q(k))`. `c123` sends 1 to 2, `c132` sends 1 to 3.
    pub fn symmetric3() -> Self {
        let perms: [(&str, [usize; 3]); 6] = [
            ("e", [0, 1, 2]),
            ("p12", [1, 0, 2]),
            ("p13", [2, 1, 0]),
            ("p23", [0, 2, 1]),
            ("c123", [1, 2, 0]),
            ("c132", [2, 0, 1]),
        ];
        let index = |p: [usize; 3]| perms.iter().position(|(_, q)| *q == p).unwrap();
        let mul = perms
            .iter()
            .map(|(_, p)| perms.iter().map(|(_, q)| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::new(perms.iter().map(|(s, _)| s.to_string()).collect(), mul).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `t^-1 y t`
    pub fn conjugate(&self, y: usize, t: usize) -> usize {
        self.mul(self.mul(self.inverse(t), y), t)
    }
}

/// Sweedler sum `sum c * e_left (x) e_right`, kept sorted by `(left, right)`
/// with no zero coefficients, so equality is term-list equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: Vec<(Rational, usize, usize)>,
}

impl TensorElement {
    pub fn from_map(map: BTreeMap<(usize, usize), Rational>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|((l, r), c)| (c, l, r)).collect();
        TensorElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, usize, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (c, l, r) in terms {
            *map.entry((l, r)).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(map)
    }

    pub fn terms(&self) -> &[(Rational, usize, usize)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Element of a specific Hopf algebra, as a coefficient vector over its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: u64,
    coeffs: Vec<Rational>,
}

impl Element {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.algebra, other.algebra);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Element { algebra: self.algebra, coeffs }
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.algebra, other.algebra);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Element { algebra: self.algebra, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element { algebra: self.algebra, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }
}

/// Structure constants of a finite-dimensional Hopf algebra.
///
/// The antipode matrix holds `S(e_j)` in column `j`.
#[derive(Clone, Debug)]
pub struct HopfData {
    id: u64,
    name: String,
    symbol: String,
    basis_names: Vec<String>,
    dim: usize,
    mult: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
    comult: Vec<TensorElement>,
    counit: Vec<Rational>,
    antipode: Matrix,
}

impl PartialEq for HopfData {
    /// Structure constants only; names and identity tags are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl HopfData {
    /// Assembles a Hopf algebra from raw tables without checking the axioms;
    /// use [`check_hopf_axioms`] on the result.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        name: impl Into<String>,
        symbol: impl Into<String>,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        comult: Vec<TensorElement>,
        counit: Vec<Rational>,
        antipode: Matrix,
    ) -> Self {
        let dim = basis_names.len();
        HopfData {
            id: fresh_id(),
            name: name.into(),
            symbol: symbol.into(),
            basis_names,
            dim,
            mult,
            unit,
            comult,
            counit,
            antipode,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Atom prefix used when printing basis elements, e.g. `e` in `e[g]`.
    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult_table(&self) -> &[Vec<Vec<Rational>>] {
        &self.mult
    }

    pub fn comult_table(&self) -> &[TensorElement] {
        &self.comult
    }

    pub fn counit_table(&self) -> &[Rational] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    /// Same tables under a new identity tag. Used to build deliberately
    /// corrupted variants for negative controls.
    pub fn with_antipode(&self, antipode: Matrix) -> HopfData {
        HopfData { id: fresh_id(), antipode, ..self.clone() }
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: coeffs.len() });
        }
        Ok(Element { algebra: self.id, coeffs })
    }

    pub(crate) fn wrap(&self, coeffs: Vec<Rational>) -> Element {
        debug_assert_eq!(coeffs.len(), self.dim);
        Element { algebra: self.id, coeffs }
    }

    pub fn basis(&self, i: usize) -> Element {
        self.wrap(crate::linalg::unit_vector(self.dim, i))
    }

    pub fn zero(&self) -> Element {
        self.wrap(zeros(self.dim))
    }

    pub fn one(&self) -> Element {
        self.wrap(self.unit.clone())
    }

    fn owns(&self, x: &Element) -> Result<()> {
        if x.algebra == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.wrap(self.mul_raw(&x.coeffs, &y.coeffs)))
    }

    pub fn coproduct(&self, x: &Element) -> Result<TensorElement> {
        self.owns(x)?;
        Ok(self.coproduct_raw(&x.coeffs))
    }

    pub fn counit(&self, x: &Element) -> Result<Rational> {
        self.owns(x)?;
        Ok(self.counit_raw(&x.coeffs))
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        self.owns(x)?;
        Ok(self.wrap(self.antipode.mul_vec(&x.coeffs)))
    }

    pub(crate) fn mul_raw(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zeros(self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy(&mut out, &(a * b), &self.mult[i][j]);
            }
        }
        out
    }

    pub(crate) fn coproduct_raw(&self, x: &[Rational]) -> TensorElement {
        TensorElement::from_terms(x.iter().enumerate().filter(|(_, c)| !c.is_zero()).flat_map(|(i, c)| {
            self.comult[i].terms.iter().map(move |(d, l, r)| (c * d, *l, *r))
        }))
    }

    pub(crate) fn counit_raw(&self, x: &[Rational]) -> Rational {
        crate::linalg::dot(&self.counit, x)
    }

    /// `2*e[g] - e[h]` style rendering.
    pub fn format(&self, x: &Element) -> String {
        self.format_raw(&x.coeffs)
    }

    pub(crate) fn format_raw(&self, x: &[Rational]) -> String {
        linear_combination(x.iter().enumerate().map(|(i, c)| (c.clone(), self.atom(i))))
    }

    pub fn atom(&self, i: usize) -> String {
        format!("{}[{}]", self.symbol, self.basis_names[i])
    }

    pub fn format_tensor(&self, t: &TensorElement) -> String {
        linear_combination(
            t.terms.iter().map(|(c, l, r)| (c.clone(), format!("{} ⊗ {}", self.atom(*l), self.atom(*r)))),
        )
    }
}

/// Functions on `G` in the delta basis: `e_x e_y = delta_xy e_x`, unit the
/// constant function 1, `Delta(e_x) = sum_{yz=x} e_y (x) e_z`,
/// `eps(e_x) = delta_{x,1}`, `S(e_x) = e_{x^-1}`.
pub fn function_hopf(g: &GroupTable) -> HopfData {
    let n = g.order();
    let mult = (0..n)
        .map(|x| (0..n).map(|y| if x == y { crate::linalg::unit_vector(n, x) } else { zeros(n) }).collect())
        .collect();
    let unit = vec![Rational::one(); n];
    let comult = (0..n)
        .map(|x| {
            TensorElement::from_terms(
                (0..n).flat_map(|y| (0..n).map(move |z| (y, z))).filter(|&(y, z)| g.mul(y, z) == x).map(
                    |(y, z)| (Rational::one(), y, z),
                ),
            )
        })
        .collect();
    let counit = (0..n).map(|x| if x == g.identity() { Rational::one() } else { Rational::zero() }).collect();
    let mut antipode = Matrix::zeros(n, n);
    for x in 0..n {
        antipode.set(g.inverse(x), x, Rational::one());
    }
    HopfData::from_tables("Fun(G)", "e", g.names().to_vec(), mult, unit, comult, counit, antipode)
}

/// Group algebra `kG`: `x y = (xy)`, `Delta(x) = x (x) x`, `eps(x) = 1`,
/// `S(x) = x^-1`.
pub fn group_hopf(g: &GroupTable) -> HopfData {
    let n = g.order();
    let mult = (0..n).map(|x| (0..n).map(|y| crate::linalg::unit_vector(n, g.mul(x, y))).collect()).collect();
    let unit = crate::linalg::unit_vector(n, g.identity());
    let comult = (0..n).map(|x| TensorElement::from_terms([(Rational::one(), x, x)])).collect();
    let counit = vec![Rational::one(); n];
    let mut antipode = Matrix::zeros(n, n);
    for x in 0..n {
        antipode.set(g.inverse(x), x, Rational::one());
    }
    HopfData::from_tables("kG", "u", g.names().to_vec(), mult, unit, comult, counit, antipode)
}

/// Linear dual on the dual basis `e_i*`. Multiplication is the transpose of
/// the comultiplication and vice versa; the unit is the counit functional,
/// the counit is evaluation at the unit, the antipode is transposed.
pub fn dual_hopf(h: &HopfData) -> HopfData {
    dual_hopf_with_symbol(h, if h.symbol == "e" { "u" } else { "e" })
}

pub fn dual_hopf_with_symbol(h: &HopfData, symbol: &str) -> HopfData {
    let n = h.dim;
    let mut mult = vec![vec![zeros(n); n]; n];
    for (k, t) in h.comult.iter().enumerate() {
        for (c, i, j) in &t.terms {
            mult[*i][*j][k] += c;
        }
    }
    let comult = (0..n)
        .map(|k| {
            TensorElement::from_terms(
                (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (h.mult[i][j][k].clone(), i, j)),
            )
        })
        .collect();
    HopfData::from_tables(
        format!("{}*", h.name),
        symbol,
        h.basis_names.clone(),
        mult,
        h.counit.clone(),
        comult,
        h.unit.clone(),
        h.antipode.transpose(),
    )
}

type Triple = BTreeMap<(usize, usize, usize), Rational>;

fn add_triple(map: &mut Triple, key: (usize, usize, usize), c: Rational) {
    let e = map.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

fn format_triple(h: &HopfData, t: &Triple) -> String {
    linear_combination(
        t.iter().map(|((a, b, c), k)| (k.clone(), format!("{} ⊗ {} ⊗ {}", h.atom(*a), h.atom(*b), h.atom(*c)))),
    )
}

/// Multiplies two tensors factorwise in `H (x) H`.
fn tensor_product(h: &HopfData, x: &TensorElement, y: &TensorElement) -> TensorElement {
    let mut map: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (c, a, b) in &x.terms {
        for (d, p, q) in &y.terms {
            let cd = c * d;
            for (l, lc) in h.mult[*a][*p].iter().enumerate() {
                if lc.is_zero() {
                    continue;
                }
                for (r, rc) in h.mult[*b][*q].iter().enumerate() {
                    if rc.is_zero() {
                        continue;
                    }
                    *map.entry((l, r)).or_insert_with(Rational::zero) += &cd * lc * rc;
                }
            }
        }
    }
    TensorElement::from_map(map)
}

/// Checks the Hopf axioms on all basis elements (sufficient by
/// multilinearity): associativity, unit law, coassociativity, counit law,
/// multiplicativity of the coproduct and counit, and the antipode law.
pub fn check_hopf_axioms(h: &HopfData) -> SuiteReport {
    let start = std::time::Instant::now();
    let mut rep = SuiteReport::new(format!("hopf-axioms {}", h.name));
    let n = h.dim;
    let fmt = |v: &Vec<Rational>| h.format_raw(v);
    let basis = |i: usize| crate::linalg::unit_vector(n, i);

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = h.mul_raw(&h.mult[i][j], &basis(k));
                let rhs = h.mul_raw(&basis(i), &h.mult[j][k]);
                rep.compare("associativity", format!("{},{},{}", i + 1, j + 1, k + 1), &lhs, &rhs, fmt);
            }
        }
    }
    for i in 0..n {
        let b = basis(i);
        let left = h.mul_raw(&h.unit, &b);
        rep.compare("unit-left", format!("{}", i + 1), &left, &b, fmt);
        let right = h.mul_raw(&b, &h.unit);
        rep.compare("unit-right", format!("{}", i + 1), &right, &b, fmt);
    }
    for i in 0..n {
        let mut left = Triple::new();
        let mut right = Triple::new();
        for (c, a, b) in &h.comult[i].terms {
            for (d, p, q) in &h.comult[*a].terms {
                add_triple(&mut left, (*p, *q, *b), c * d);
            }
            for (d, p, q) in &h.comult[*b].terms {
                add_triple(&mut right, (*a, *p, *q), c * d);
            }
        }
        rep.compare("coassociativity", format!("{}", i + 1), &left, &right, |t| format_triple(h, t));
    }
    for i in 0..n {
        let mut left = zeros(n);
        let mut right = zeros(n);
        for (c, a, b) in &h.comult[i].terms {
            left[*b] += c * &h.counit[*a];
            right[*a] += c * &h.counit[*b];
        }
        rep.compare("counit-left", format!("{}", i + 1), &left, &basis(i), fmt);
        rep.compare("counit-right", format!("{}", i + 1), &right, &basis(i), fmt);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = h.coproduct_raw(&h.mult[i][j]);
            let rhs = tensor_product(h, &h.comult[i], &h.comult[j]);
            rep.compare("coproduct-multiplicative", format!("{},{}", i + 1, j + 1), &lhs, &rhs, |t| {
                h.format_tensor(t)
            });
            let lhs = h.counit_raw(&h.mult[i][j]);
            let rhs = &h.counit[i] * &h.counit[j];
            rep.compare("counit-multiplicative", format!("{},{}", i + 1, j + 1), &lhs, &rhs, format_rational);
        }
    }
    let one_one = TensorElement::from_terms(
        h.unit.iter().enumerate().flat_map(|(a, c)| h.unit.iter().enumerate().map(move |(b, d)| (c * d, a, b))),
    );
    rep.compare("coproduct-unital", "", &h.coproduct_raw(&h.unit), &one_one, |t| h.format_tensor(t));
    rep.compare("counit-unital", "", &h.counit_raw(&h.unit), &Rational::one(), format_rational);
    for i in 0..n {
        let mut left = zeros(n);
        let mut right = zeros(n);
        for (c, a, b) in &h.comult[i].terms {
            let sa = h.antipode.column(*a);
            let sb = h.antipode.column(*b);
            axpy(&mut left, c, &h.mul_raw(&sa, &basis(*b)));
            axpy(&mut right, c, &h.mul_raw(&basis(*a), &sb));
        }
        let target: Vec<Rational> = h.unit.iter().map(|u| u * &h.counit[i]).collect();
        rep.compare("antipode-left", format!("{}", i + 1), &left, &target, fmt);
        rep.compare("antipode-right", format!("{}", i + 1), &right, &target, fmt);
    }
    rep.elapsed = start.elapsed();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn z2() -> GroupTable {
        GroupTable::cyclic(&["e", "g"])
    }

    #[test]
    fn rejects_non_group() {
        let err = GroupTable::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
        assert!(err.to_string().starts_with("not a group"));
    }

    #[test]
    fn s3_product_of_transpositions() {
        let g = GroupTable::symmetric3();
        let p12 = g.index_of("p12").unwrap();
        let p13 = g.index_of("p13").unwrap();
        // (12)(13): 1 -> 3 -> 3, so the 3-cycle sending 1 to 3.
        assert_eq!(g.name(g.mul(p12, p13)), "c132");
        let kg = group_hopf(&g);
        let prod = kg.multiply(&kg.basis(p12), &kg.basis(p13)).unwrap();
        assert_eq!(prod, kg.basis(g.index_of("c132").unwrap()));
    }

    #[test]
    fn z2_function_algebra_tables() {
        let a = function_hopf(&z2());
        let eg = a.basis(1);
        assert_eq!(a.multiply(&eg, &eg).unwrap(), eg);
        let d = a.coproduct(&eg).unwrap();
        assert_eq!(d, TensorElement::from_terms([(rat(1), 0, 1), (rat(1), 1, 0)]));
        assert_eq!(a.antipode(&eg).unwrap(), eg);
        assert_eq!(a.counit(&a.basis(0)).unwrap(), rat(1));
        let de = a.coproduct(&a.basis(0)).unwrap();
        assert_eq!(de, TensorElement::from_terms([(rat(1), 0, 0), (rat(1), 1, 1)]));
        assert_eq!(a.multiply(&a.one(), &eg).unwrap(), eg);
    }

    #[test]
    fn z2_group_algebra_tables() {
        let k = group_hopf(&z2());
        let g = k.basis(1);
        assert_eq!(k.multiply(&g, &g).unwrap(), k.basis(0));
        assert_eq!(k.coproduct(&g).unwrap(), TensorElement::from_terms([(rat(1), 1, 1)]));
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = function_hopf(&z2());
        let k = group_hopf(&z2());
        assert_eq!(a.multiply(&a.basis(0), &k.basis(0)).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn dual_of_functions_is_group_algebra() {
        for g in [z2(), GroupTable::cyclic(&["e", "c", "c2"]), GroupTable::symmetric3()] {
            let d = dual_hopf(&function_hopf(&g));
            assert_eq!(d, group_hopf(&g));
        }
    }

    #[test]
    fn dual_counit_reads_unit() {
        let a = function_hopf(&GroupTable::symmetric3());
        let d = dual_hopf(&a);
        for x in 0..a.dim() {
            assert_eq!(d.counit(&d.basis(x)).unwrap(), a.one().coeff(x).clone());
        }
    }

    #[test]
    fn double_dual_is_identity() {
        let a = function_hopf(&GroupTable::symmetric3());
        assert_eq!(dual_hopf(&dual_hopf(&a)), a);
    }

    #[test]
    fn axioms_hold_for_group_instances() {
        let s3 = GroupTable::symmetric3();
        assert!(check_hopf_axioms(&function_hopf(&s3)).passed());
        assert!(check_hopf_axioms(&group_hopf(&GroupTable::cyclic(&["e", "c", "c2"]))).passed());
    }

    #[test]
    fn identity_antipode_breaks_antipode_axiom() {
        let a = function_hopf(&GroupTable::cyclic(&["e", "c", "c2"]));
        let bad = a.with_antipode(Matrix::identity(3));
        let rep = check_hopf_axioms(&bad);
        assert!(!rep.relation_passed("antipode-left"));
        assert!(rep.relation_passed("associativity"));
        assert!(rep.relation_passed("coassociativity"));
    }
}
