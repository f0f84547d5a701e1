//! Exact rational scalars and the dense linear algebra the rest of the crate
//! is built on: rank, kernels, complements of subspaces and span solves.
//!
//! Everything here is exact. Pivoting is deterministic (first nonzero entry,
//! scanning rows top to bottom), so quotient bases chosen downstream are
//! reproducible run to run.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, at: usize) -> Vec<Rational> {
    let mut v = zeros(len);
    v[at] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector is returned unchanged.
pub fn normalize_primitive(v: &[Rational]) -> Vec<Rational> {
    let mut den = BigInt::one();
    for x in v {
        if !x.is_zero() {
            den = den.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let sign = if lead_negative { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], len: usize) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Fraction-free (Bareiss) forward elimination. Rows are first scaled to
    /// integers; the pivot in each column is the first nonzero entry at or
    /// below the current row. Returns the echelon rows and pivot columns.
    fn echelon_fraction_free(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut den = BigInt::one();
                for x in row {
                    if !x.is_zero() {
                        den = den.lcm(x.denom());
                    }
                }
                let scale = Rational::from_integer(den);
                row.iter().map(|x| (x * &scale).to_integer()).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon_fraction_free().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    ///
    /// One vector per free column, free columns in ascending order; each
    /// vector is primitive integral with a positive leading entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (ech, pivots) = self.echelon_fraction_free();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = zeros(self.cols);
            v[f] = Rational::one();
            for (row, &pc) in ech.iter().zip(&pivots).rev() {
                let mut acc = Rational::zero();
                for c in pc + 1..self.cols {
                    if !row[c].is_zero() && !v[c].is_zero() {
                        acc += Rational::from_integer(row[c].clone()) * &v[c];
                    }
                }
                v[pc] = -acc / Rational::from_integer(row[pc].clone());
            }
            out.push(normalize_primitive(&v));
        }
        out
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(unit_vector(n, r));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].recip();
            for x in a[c].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[c].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != c && !row[c].is_zero() {
                    let f = -row[c].clone();
                    axpy(row, &f, &pivot_row);
                }
            }
        }
        Some(Matrix::from_rows(a.into_iter().map(|row| row[n..].to_vec()).collect()))
    }
}

/// Vectors kept in a partially reduced echelon form, supporting cheap
/// independence tests as vectors are inserted one at a time.
#[derive(Clone, Debug, Default)]
pub struct IncrementalBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = -v[*p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Inserts `v`; returns false (and leaves the basis unchanged) when `v`
    /// already lies in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}

pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    let mut b = IncrementalBasis::new();
    vectors.iter().filter(|v| b.insert(v)).count()
}

/// Maximal independent subset of `vectors`, keeping the earliest ones.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut b = IncrementalBasis::new();
    vectors.iter().filter(|v| b.insert(v)).cloned().collect()
}

/// Free function form of [`Matrix::kernel_basis`].
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}

/// Lexicographically smallest set of standard-basis indices whose span is a
/// complement of `span(vectors)` in dimension `ambient_dim`.
pub fn complement_basis(vectors: &[Vec<Rational>], ambient_dim: usize) -> Result<Vec<usize>> {
    let mut b = IncrementalBasis::new();
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
        }
        if !b.insert(v) {
            return Err(Error::DependentInput);
        }
    }
    let mut chosen = Vec::new();
    for k in 0..ambient_dim {
        if b.len() == ambient_dim {
            break;
        }
        if b.insert(&unit_vector(ambient_dim, k)) {
            chosen.push(k);
        }
    }
    Ok(chosen)
}

/// Outcome of [`solve_in_span`]. A miss is an ordinary value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanSolution {
    Coefficients(Vec<Rational>),
    NotInSpan,
}

/// Coefficients `c` with `sum_k c[k] * vectors[k] == target`. The vectors
/// must be independent.
pub fn solve_in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> SpanSolution {
    let k = vectors.len();
    let n = target.len();
    // Augmented system: columns are the vectors, last column the target.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot);
            }
        }
        pivot_rows.push((c, r));
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return SpanSolution::NotInSpan;
    }
    let mut coeffs = zeros(k);
    for (c, row) in pivot_rows {
        coeffs[c] = a[row][k].clone();
    }
    SpanSolution::Coefficients(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        assert_eq!(Matrix::zeros(2, 2).kernel_basis(), vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn kernel_of_all_ones() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![v(&[1, -1])]);
    }

    #[test]
    fn kernel_with_fractions() {
        let m = Matrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3), rat(1)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(is_zero_vec(&m.mul_vec(x)));
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_basis(&[v(&[1, 0])], 2).unwrap(), vec![1]);
        assert_eq!(complement_basis(&[], 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(complement_basis(&[v(&[1, 1])], 2).unwrap(), vec![0]);
    }

    #[test]
    fn complement_rejects_dependent_input() {
        let err = complement_basis(&[v(&[1, 1]), v(&[2, 2])], 2).unwrap_err();
        assert_eq!(err.to_string(), "dependent input");
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_in_span(&[v(&[1, 0])], &v(&[1, 0])), SpanSolution::Coefficients(v(&[1])));
        assert_eq!(solve_in_span(&[v(&[1, 0])], &v(&[0, 1])), SpanSolution::NotInSpan);
        assert_eq!(
            solve_in_span(&[v(&[1, 1]), v(&[1, -1])], &v(&[2, 0])),
            SpanSolution::Coefficients(v(&[1, 1]))
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn incremental_basis_tracks_span() {
        let mut b = IncrementalBasis::new();
        assert!(b.insert(&v(&[1, 2, 3])));
        assert!(b.insert(&v(&[0, 1, 1])));
        assert!(!b.insert(&v(&[1, 3, 4])));
        assert!(b.contains(&v(&[2, 5, 7])));
        assert_eq!(b.len(), 2);
    }
}
