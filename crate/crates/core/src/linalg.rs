//! Exact linear algebra over ℤ, ℚ and 𝔽₂.
//!
//! Ranks and determinants are computed by fraction-free (Bareiss)
//! elimination on integer matrices; rational inputs are first scaled row by
//! row with positive integers, which changes neither the rank nor the sign of
//! the determinant. Symmetric rational matrices are diagonalized by
//! congruence with the Lagrange method.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::Sign as DetSign;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols: m, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Square submatrix on the index range `start..end` in both directions.
    pub fn principal_block(&self, start: usize, end: usize) -> Self {
        let k = end - start;
        Matrix::from_fn(k, k, |i, j| self.get(start + i, start + j).clone())
    }

    /// Simultaneous row and column permutation: entry `(i,j)` of the result
    /// is entry `(order[i], order[j])` of `self`.
    pub fn permute_symmetric(&self, order: &[usize]) -> Self {
        Matrix::from_fn(order.len(), order.len(), |i, j| self.get(order[i], order[j]).clone())
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)>
    where
        T: PartialEq,
    {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                T::zero()
            }
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Matrix product; panics on incompatible shapes.
    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Matrix { rows: self.rows, cols: rhs.cols, data: vec![T::zero(); self.rows * rhs.cols] };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = std::mem::replace(slot, T::zero()) + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "incompatible shapes for product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    pub fn sub_mat(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    pub fn add_mat(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn reduce_mod2(&self) -> Mod2Matrix {
        let mut m = Mod2Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j).is_odd() {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

impl RatMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Ok(IntMatrix::from_i64_rows(rows)?.to_rational())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    /// The integral matrix with the same entries, if every entry is an integer.
    pub fn to_integral(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(BigRational::to_integer))
    }

    /// Exact product computed on a common denominator, which is much
    /// cheaper than entrywise rational arithmetic.
    pub fn product(&self, rhs: &RatMatrix) -> RatMatrix {
        let (a, da) = self.common_denominator();
        let (b, db) = rhs.common_denominator();
        let den = da * db;
        a.mul_mat(&b).map(|x| BigRational::new(x.clone(), den.clone()))
    }

    /// Returns `(m, d)` with `self = m / d`, `d > 0` the lcm of all denominators.
    pub fn common_denominator(&self) -> (IntMatrix, BigInt) {
        let l = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        (self.map(|x| x.numer() * (&l / x.denom())), l)
    }

    /// Scales every row by the positive lcm of its denominators.
    fn clear_row_denominators(&self) -> IntMatrix {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            out.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        Matrix { rows: self.rows, cols: self.cols, data: out }
    }
}

/// Fraction-free Gaussian elimination in place. Returns the rank, the
/// number of row swaps performed and, when every column received a pivot,
/// the last pivot (which is ± the determinant for square input).
fn bareiss(m: &mut IntMatrix) -> (usize, usize, Option<BigInt>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                m.data.swap(p * cols + j, rank * cols + j);
            }
            swaps += 1;
        }
        let pivot = m.get(rank, c).clone();
        for i in rank + 1..rows {
            let lead = m.get(i, c).clone();
            for j in c + 1..cols {
                let v = (&pivot * m.get(i, j) - &lead * m.get(rank, j)) / &prev;
                *m.get_mut(i, j) = v;
            }
            *m.get_mut(i, c) = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let last = (rank == cols && rank > 0).then_some(prev);
    (rank, swaps, last)
}

pub fn int_rank(m: &IntMatrix) -> usize {
    bareiss(&mut m.clone()).0
}

/// Exact determinant of a square integer matrix. The 0×0 determinant is 1.
pub fn int_det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    let mut work = m.clone();
    let (rank, swaps, last) = bareiss(&mut work);
    if rank < m.rows {
        return Ok(BigInt::zero());
    }
    let det = last.expect("full rank square matrix has a last pivot");
    Ok(if swaps % 2 == 1 { -det } else { det })
}

pub fn rat_rank(m: &RatMatrix) -> usize {
    int_rank(&m.clear_row_denominators())
}

/// Dimension of the right kernel `{x : m·x = 0}` over ℚ.
pub fn rat_kernel_dim(m: &RatMatrix) -> usize {
    m.cols - rat_rank(m)
}

/// Sign of the exact determinant of a square rational matrix.
pub fn det_sign(m: &RatMatrix) -> Result<DetSign> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    // Row scaling by positive integers preserves the sign.
    Ok(int_det(&m.clear_row_denominators())?.sign())
}

/// Exact rational determinant.
pub fn rat_det(m: &RatMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let mut scale = BigInt::one();
    for i in 0..m.rows {
        scale *= m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    }
    Ok(BigRational::new(int_det(&m.clear_row_denominators())?, scale))
}

/// Matrix over the two-element field, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mod2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Mod2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Mod2Matrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mod2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_bits(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mod2Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &b) in r.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => return Err(Error::Parse(format!("bit entry {other} is not 0 or 1"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// `self + identity` (equal to `self − identity` in characteristic 2).
    pub fn add_identity(&self) -> Self {
        assert_eq!(self.rows, self.cols, "add_identity needs a square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.set(i, i, !v);
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut bits = self.bits.clone();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (word, mask) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&i| bits[i * w + word] & mask != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    bits.swap(p * w + k, rank * w + k);
                }
            }
            for i in 0..self.rows {
                if i != rank && bits[i * w + word] & mask != 0 {
                    for k in word..w {
                        let src = bits[rank * w + k];
                        bits[i * w + k] ^= src;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        write!(f, "Mod2[{}]", rows.join(" "))
    }
}

/// Dimension of the right kernel over 𝔽₂.
pub fn mod2_kernel_dim(m: &Mod2Matrix) -> usize {
    m.cols - m.rank()
}

/// Result of diagonalizing a symmetric matrix by congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruentDiagonalization {
    /// Invertible change of basis; its columns are the new basis vectors.
    pub p: RatMatrix,
    /// Diagonal of `pᵀ·q·p`, positive entries first.
    pub d: Vec<BigRational>,
}

impl CongruentDiagonalization {
    pub fn positive_count(&self) -> usize {
        self.d.iter().filter(|x| x.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.d.iter().filter(|x| x.is_negative()).count()
    }
}

/// Diagonalizes a symmetric nondegenerate matrix by congruence, processing
/// basis vectors in their natural order.
pub fn congruent_diagonalize(q: &RatMatrix) -> Result<CongruentDiagonalization> {
    let order: Vec<usize> = (0..q.rows()).collect();
    congruent_diagonalize_with_order(q, &order)
}

/// Lagrange diagonalization, taking the standard basis vectors in the given
/// pivot order. Each returned column is primitive integral with positive
/// leading entry.
pub fn congruent_diagonalize_with_order(q: &RatMatrix, order: &[usize]) -> Result<CongruentDiagonalization> {
    if !q.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", q.rows, q.cols)));
    }
    if let Some((row, col)) = q.first_asymmetry() {
        return Err(Error::Asymmetric { row, col });
    }
    let n = q.rows;
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::Dimension(format!("pivot order {order:?} is not a permutation of 0..{n}")));
    }

    let zero = BigRational::zero();
    let dot = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        x.iter()
            .zip(y)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(zero.clone(), |acc, (a, b)| acc + a * b)
    };

    let mut basis: Vec<Vec<BigRational>> = order
        .iter()
        .map(|&i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();

    for k in 0..n {
        let mut qk = q.mul_vec(&basis[k]);
        let mut norm = dot(&basis[k], &qk);
        if norm.is_zero() {
            // Lagrange completion: v_k ± v_j with b(v_k, v_j) ≠ 0.
            let pairing: Vec<BigRational> = (k + 1..n).map(|j| dot(&basis[j], &qk)).collect();
            let Some(off) = pairing.iter().position(|x| !x.is_zero()) else {
                return Err(Error::Singular(format!("basis vector {} lies in the radical", order[k])));
            };
            let j = k + 1 + off;
            let bkj = &pairing[off];
            let bjj = dot(&basis[j], &q.mul_vec(&basis[j]));
            let plus = BigRational::from_integer(2.into()) * bkj + &bjj;
            let sign = if plus.is_zero() { -BigRational::one() } else { BigRational::one() };
            let vj = basis[j].clone();
            for (a, b) in basis[k].iter_mut().zip(&vj) {
                *a += &sign * b;
            }
            qk = q.mul_vec(&basis[k]);
            norm = dot(&basis[k], &qk);
            debug_assert!(!norm.is_zero());
        }
        let vk = basis[k].clone();
        for v in basis.iter_mut().skip(k + 1) {
            let c = dot(v, &qk) / &norm;
            if c.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(&vk) {
                *a -= &c * b;
            }
        }
    }

    let mut columns: Vec<(Vec<BigRational>, BigRational)> = basis
        .into_iter()
        .map(|v| {
            let v = primitive_integral(v);
            let norm = dot(&v, &q.mul_vec(&v));
            (v, norm)
        })
        .collect();
    // Stable: positives first, original relative order otherwise kept.
    columns.sort_by_key(|(_, d)| d.is_negative());

    let p = Matrix::from_fn(n, n, |i, j| columns[j].0[i].clone());
    let d = columns.into_iter().map(|(_, d)| d).collect();
    Ok(CongruentDiagonalization { p, d })
}

/// Rescales a nonzero rational vector to a primitive integral vector whose
/// first nonzero entry is positive.
fn primitive_integral(v: Vec<BigRational>) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}
