//! Exact linear algebra over the integers.
//!
//! Everything here is fraction-free: determinants and ranks by Bareiss
//! elimination, characteristic polynomials by Berkowitz's division-free
//! algorithm. There is no floating point anywhere in this module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: r, cols: c, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Matrix of a permutation acting on coordinates: column `j` is `e_{p(j)}`.
    pub fn permutation(images: &[usize]) -> Self {
        let n = images.len();
        let mut m = IntMatrix::zeros(n, n);
        for (j, &i) in images.iter().enumerate() {
            m.entries[i * n + j] = BigInt::one();
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} * vector of {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// `I - M`.
    pub fn one_minus(&self) -> Result<IntMatrix> {
        self.require_square()?;
        IntMatrix::identity(self.rows).sub(self)
    }

    /// Entrywise reduction mod 2, as bit rows.
    pub fn mod2_bits(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.is_odd()).collect())
            .collect()
    }

    pub fn trace(&self) -> Result<BigInt> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let factor = row[k].clone();
                for j in k + 1..n {
                    let v = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = pivot.clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over the rationals, by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (top, bottom) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[c];
            for row in bottom.iter_mut() {
                let factor = row[c].clone();
                for j in c + 1..cols {
                    let v = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = pivot.clone();
            r += 1;
        }
        r
    }

    /// Characteristic polynomial `det(xI - M)` by Berkowitz's algorithm.
    ///
    /// Runs in checked `i128` first and falls back to big integers on overflow.
    pub fn charpoly(&self) -> Result<IntPoly> {
        self.require_square()?;
        let small: Option<Vec<i128>> = self
            .entries
            .iter()
            .map(|x| x.to_i128())
            .collect::<Option<Vec<_>>>()
            .and_then(|entries| berkowitz::<i128>(self.rows, &entries));
        let descending: Vec<BigInt> = match small {
            Some(c) => c.into_iter().map(BigInt::from).collect(),
            None => berkowitz::<BigInt>(self.rows, &self.entries).expect("big integers never overflow"),
        };
        Ok(IntPoly::new(descending.into_iter().rev().collect()))
    }

    /// Algebraic and geometric multiplicity of the eigenvalue 1.
    pub fn eig1_multiplicity(&self) -> Result<Eig1Multiplicity> {
        let chi = self.charpoly()?;
        let algebraic = chi.multiplicity_of_one();
        let geometric = self.rows - self.sub(&IntMatrix::identity(self.rows))?.rank();
        Ok(Eig1Multiplicity { algebraic, geometric })
    }

    /// Bareiss determinant of `I - M`.
    pub fn det_one_minus(&self) -> Result<BigInt> {
        self.one_minus()?.det()
    }
}

/// Eigenvalue-1 multiplicities of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eig1Multiplicity {
    pub algebraic: usize,
    pub geometric: usize,
}

trait CheckedRing: Clone {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_add(&self, o: &Self) -> Option<Self>;
    fn r_mul(&self, o: &Self) -> Option<Self>;
    fn r_neg(&self) -> Option<Self>;
}

impl CheckedRing for i128 {
    fn r_zero() -> Self {
        0
    }
    fn r_one() -> Self {
        1
    }
    fn r_add(&self, o: &Self) -> Option<Self> {
        i128::checked_add(*self, *o)
    }
    fn r_mul(&self, o: &Self) -> Option<Self> {
        i128::checked_mul(*self, *o)
    }
    fn r_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
}

impl CheckedRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn r_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn r_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Berkowitz: coefficients of `det(xI - A)` in descending degree.
fn berkowitz<T: CheckedRing>(n: usize, a: &[T]) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| &a[i * n + j];
    let mut poly = vec![T::r_one()];
    for k in 0..n {
        // A_{k+1} = [[A_k, S], [R, a_kk]] with A_k the leading k x k block.
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(T::r_one());
        toeplitz.push(at(k, k).r_neg()?);
        let mut v: Vec<T> = (0..k).map(|i| at(i, k).clone()).collect();
        for _ in 0..k {
            let rv = (0..k).try_fold(T::r_zero(), |acc, j| acc.r_add(&at(k, j).r_mul(&v[j])?))?;
            toeplitz.push(rv.r_neg()?);
            let mut next = Vec::with_capacity(k);
            for i in 0..k {
                next.push((0..k).try_fold(T::r_zero(), |acc, j| acc.r_add(&at(i, j).r_mul(&v[j])?))?);
            }
            v = next;
        }
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..=k + 1 {
            let mut acc = T::r_zero();
            for j in 0..poly.len().min(i + 1) {
                acc = acc.r_add(&toeplitz[i - j].r_mul(&poly[j])?)?;
            }
            next.push(acc);
        }
        poly = next;
    }
    Some(poly)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// JSON: array of rows, each an array of decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| x.parse::<BigInt>()).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IntMatrix::from_rows(&parsed).map_err(serde::de::Error::custom)
    }
}

/// Polynomial with big-integer coefficients, ascending degree, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by `(x - 1)`; `Some(quotient)` if exact.
    pub fn divide_by_x_minus_one(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            carry += &self.coeffs[i];
            if i == 0 {
                break;
            }
            q[i - 1] = carry.clone();
        }
        carry.is_zero().then(|| IntPoly::new(q))
    }

    /// Largest `k` with `(x - 1)^k` dividing this polynomial.
    pub fn multiplicity_of_one(&self) -> usize {
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.divide_by_x_minus_one() {
            k += 1;
            p = q;
        }
        k
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Coefficients reduced mod 2, ascending.
    pub fn mod2_bits(&self) -> Vec<bool> {
        self.coeffs.iter().map(|c| c.is_odd()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// JSON: decimal coefficient strings, ascending degree.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}
