//! Linear algebra over GF(2).
//!
//! Matrices are row-major with 64 columns per word; column `j` lives in word
//! `j / 64` at bit `j % 64`. Bits past the last column are always zero.
//!
//! Hex serialization: a row is the concatenation of its words, lowest-column
//! word first, each printed as 16 big-endian hex digits. Within a word bit
//! `j % 64` is the column, so column 0 is the least significant bit of the
//! last hex digit of the first word.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub mod meataxe;
pub mod poly;

pub use meataxe::{CompositionFactor, GF2Module, Meataxe};
pub use poly::GF2Poly;

/// Default element bound for matrix-group closures.
pub const DEFAULT_MATRIX_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut m = BitMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// From rows of 0/1 integers; any odd value is 1.
    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let bools: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) == 1).collect()).collect();
        BitMatrix::from_bools(&bools)
    }

    /// Companion matrix of a monic polynomial `x^n + c_{n-1} x^{n-1} + ... + c_0`.
    pub fn companion(p: &GF2Poly) -> Self {
        let n = p.degree().expect("nonzero polynomial");
        let mut m = BitMatrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, true);
        }
        for i in 0..n {
            if p.coeff(i) {
                m.set(i, n - 1, true);
            }
        }
        m
    }

    /// Permutation matrix with column `j` equal to `e_{images[j]}`.
    pub fn permutation(images: &[usize]) -> Self {
        let n = images.len();
        let mut m = BitMatrix::zeros(n, n);
        for (j, &i) in images.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }

    pub fn random<R: rand::Rng>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for w in m.data.iter_mut() {
            *w = rng.gen();
        }
        m.clear_tail();
        m
    }

    pub fn random_invertible<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = BitMatrix::random(n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    fn clear_tail(&mut self) {
        let extra = self.stride * 64 - self.cols;
        if extra > 0 && self.stride > 0 {
            let mask = u64::MAX >> extra;
            for r in 0..self.rows {
                self.data[r * self.stride + self.stride - 1] &= mask;
            }
        }
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] ^= 1 << (j % 64);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Packed storage, usable as a canonical hash key.
    pub fn words(&self) -> &[u64] {
        &self.data
    }

    pub fn from_row_words(rows: usize, cols: usize, words: Vec<Vec<u64>>) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for (i, w) in words.into_iter().enumerate() {
            m.row_words_mut(i).copy_from_slice(&w);
        }
        m.clear_tail();
        m
    }

    pub fn xor_rows(&mut self, target: usize, source: usize) {
        let s = self.stride;
        if target == source {
            self.row_words_mut(target).fill(0);
            return;
        }
        let (t, src) = if target < source {
            let (a, b) = self.data.split_at_mut(source * s);
            (&mut a[target * s..target * s + s], &b[..s])
        } else {
            let (a, b) = self.data.split_at_mut(target * s);
            (&mut b[..s], &a[source * s..source * s + s])
        };
        for (x, y) in t.iter_mut().zip(src) {
            *x ^= y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Ok(BitMatrix { data, ..self.clone() })
    }

    /// `M + I`.
    pub fn plus_identity(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m.flip(i, i);
        }
        Ok(m)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let os = other.stride;
        for i in 0..self.rows {
            let dst = i * os;
            for (wi, &w) in self.row_words(i).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let k = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let src = &other.data[k * os..(k + 1) * os];
                    for (x, y) in out.data[dst..dst + os].iter_mut().zip(src) {
                        *x ^= y;
                    }
                }
            }
        }
        out
    }

    /// Row vector (packed) times this matrix.
    pub(crate) fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.stride];
        for (wi, &w) in v.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let k = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                for (x, y) in out.iter_mut().zip(self.row_words(k)) {
                    *x ^= y;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BitMatrix {
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix (bounded search).
    pub fn order(&self, bound: u64) -> Option<u64> {
        let id = BitMatrix::identity(self.rows);
        let mut m = self.clone();
        for k in 1..=bound {
            if m == id {
                return Some(k);
            }
            m = m.mul_unchecked(self);
        }
        None
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis (as rows) of the right nullspace `{v : M v = 0}`.
    pub fn rank_nullspace(&self) -> (usize, BitMatrix) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    basis.set(k, p, true);
                }
            }
        }
        (pivots.len(), basis)
    }

    /// Rows `{v : v M = 0}`.
    pub fn left_nullspace(&self) -> BitMatrix {
        self.transpose().rank_nullspace().1
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::InvalidParameter("matrix is singular over GF(2)".into()));
        }
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if r.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Ok(inv)
    }

    /// `det(xI - M)` over GF(2), via reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Result<GF2Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms: row op r_i += r_k paired with column op c_k += c_i
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| h.get(i, j)) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for r in 0..n {
                    let (a, b) = (h.get(r, p), h.get(r, j + 1));
                    h.set(r, p, b);
                    h.set(r, j + 1, a);
                }
            }
            for i in j + 2..n {
                if h.get(i, j) {
                    h.xor_rows(i, j + 1);
                    for r in 0..n {
                        if h.get(r, i) {
                            h.flip(r, j + 1);
                        }
                    }
                }
            }
        }
        // p_m = (x + h_mm) p_{m-1} + sum_{i<m} h_im (prod_{k=i+1}^{m} h_{k,k-1}) p_{i-1}
        let mut polys = vec![GF2Poly::one()];
        for m in 0..n {
            let mut p = GF2Poly::x().mul(&polys[m]);
            if h.get(m, m) {
                p = p.add(&polys[m]);
            }
            let mut chain = true;
            for i in (0..m).rev() {
                chain &= h.get(i + 1, i);
                if !chain {
                    break;
                }
                if h.get(i, m) {
                    p = p.add(&polys[i]);
                }
            }
            polys.push(p);
        }
        Ok(polys.pop().expect("nonempty"))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &GF2Poly) -> BitMatrix {
        let n = self.rows;
        let mut acc = BitMatrix::zeros(n, n);
        if let Some(d) = p.degree() {
            for i in (0..=d).rev() {
                acc = acc.mul_unchecked(self);
                if p.coeff(i) {
                    for k in 0..n {
                        acc.flip(k, k);
                    }
                }
            }
        }
        acc
    }

    /// `Mᵀ J M = J`.
    pub fn preserves_form(&self, gram: &BitMatrix) -> Result<bool> {
        if !self.is_square() || !gram.is_square() || self.rows != gram.rows {
            return Err(Error::DimensionMismatch(format!(
                "form check on {}x{} with gram {}x{}",
                self.rows, self.cols, gram.rows, gram.cols
            )));
        }
        Ok(self.transpose().mul_unchecked(gram).mul_unchecked(self) == *gram)
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| !self.get(i, i)) && *self == self.transpose()
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| self.row_words(i).iter().map(|w| format!("{w:016x}")).collect::<String>())
            .collect()
    }

    pub fn from_hex_rows(rows: usize, cols: usize, hex: &[String]) -> Result<Self> {
        if hex.len() != rows {
            return Err(Error::Parse(format!("expected {rows} hex rows, got {}", hex.len())));
        }
        let stride = cols.div_ceil(64);
        let mut m = BitMatrix::zeros(rows, cols);
        for (i, h) in hex.iter().enumerate() {
            if h.len() != 16 * stride {
                return Err(Error::Parse(format!("row {i}: expected {} hex digits", 16 * stride)));
            }
            for k in 0..stride {
                let w = u64::from_str_radix(&h[16 * k..16 * k + 16], 16).map_err(|e| Error::Parse(e.to_string()))?;
                m.data[i * stride + k] = w;
            }
        }
        let before = m.data.clone();
        m.clear_tail();
        if before != m.data {
            return Err(Error::Parse("bits set beyond the last column".into()));
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BitMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("hex", &self.to_hex_rows())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            hex: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        BitMatrix::from_hex_rows(raw.rows, raw.cols, &raw.hex).map_err(serde::de::Error::custom)
    }
}

/// Breadth-first closure of a matrix group, deduplicating on packed words.
pub fn matrix_group_closure(generators: &[BitMatrix], bound: usize) -> Result<Vec<BitMatrix>> {
    let n = generators
        .first()
        .map(|g| g.rows())
        .ok_or_else(|| Error::InvalidParameter("closure needs at least one generator".into()))?;
    if let Some(bad) = generators.iter().find(|g| !g.is_square() || g.rows() != n) {
        return Err(Error::DimensionMismatch(format!("generator {}x{} in dimension {n}", bad.rows(), bad.cols())));
    }
    let id = BitMatrix::identity(n);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(id.words().to_vec());
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = g.mul_unchecked(&x);
            if seen.insert(y.words().to_vec()) {
                if elements.len() >= bound {
                    return Err(Error::ClosureOverflow { bound });
                }
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_nullspace_examples() {
        let (r, ns) = BitMatrix::identity(7).rank_nullspace();
        assert_eq!((r, ns.rows()), (7, 0));
        let (r, ns) = BitMatrix::zeros(5, 5).rank_nullspace();
        assert_eq!((r, ns.rows()), (0, 5));
        // transposition (1 2) on 9 points
        let mut images: Vec<usize> = (0..9).collect();
        images.swap(0, 1);
        let t = BitMatrix::permutation(&images).plus_identity().unwrap();
        let (r, ns) = t.rank_nullspace();
        assert!(ns.rows() >= 1);
        assert_eq!(r + ns.rows(), 9);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (rows, cols) in [(5, 9), (70, 70), (64, 130), (3, 1)] {
            let m = BitMatrix::random(rows, cols, &mut rng);
            let (r, ns) = m.rank_nullspace();
            assert_eq!(r + ns.rows(), cols);
            let prod = m.mul(&ns.transpose()).unwrap();
            assert_eq!(prod, BitMatrix::zeros(rows, ns.rows()));
        }
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(BitMatrix::identity(2).charpoly().unwrap(), GF2Poly::from_exponents(&[2, 0]));
        let p = GF2Poly::from_exponents(&[3, 1, 0]);
        assert_eq!(BitMatrix::companion(&p).charpoly().unwrap(), p);
        let p = GF2Poly::from_exponents(&[70, 9, 4, 1, 0]);
        assert_eq!(BitMatrix::companion(&p).charpoly().unwrap(), p);
        assert!(matches!(BitMatrix::zeros(2, 3).charpoly(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn charpoly_is_similarity_invariant_and_cayley_hamilton_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 17, 66] {
            let m = BitMatrix::random(n, n, &mut rng);
            let p = BitMatrix::random_invertible(n, &mut rng);
            let conj = p.mul(&m).unwrap().mul(&p.inverse().unwrap()).unwrap();
            let chi = m.charpoly().unwrap();
            assert_eq!(chi.degree(), Some(n));
            assert_eq!(conj.charpoly().unwrap(), chi);
            assert_eq!(m.eval_poly(&chi), BitMatrix::zeros(n, n));
        }
    }

    #[test]
    fn charpoly_at_one_detects_eigenvalue_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for k in 0..1000 {
            let n = 1 + k % 12;
            let m = BitMatrix::random(n, n, &mut rng);
            let at_one = m.charpoly().unwrap().eval_at_one();
            let nullity = m.plus_identity().unwrap().nullity();
            assert_eq!(!at_one, nullity >= 1, "{m:?}");
        }
    }

    #[test]
    fn inverse_and_pow() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = BitMatrix::random_invertible(20, &mut rng);
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), BitMatrix::identity(20));
        let c = BitMatrix::permutation(&[1, 2, 3, 4, 0]);
        assert_eq!(c.order(100), Some(5));
        assert_eq!(c.pow(5), BitMatrix::identity(5));
        assert!(BitMatrix::zeros(3, 3).inverse().is_err());
    }

    #[test]
    fn form_preservation() {
        let mut j = BitMatrix::zeros(4, 4);
        j.set(0, 1, true);
        j.set(1, 0, true);
        j.set(2, 3, true);
        j.set(3, 2, true);
        assert!(BitMatrix::identity(4).preserves_form(&j).unwrap());
        // swapping the two hyperbolic pairs preserves J
        let swap = BitMatrix::permutation(&[2, 3, 0, 1]);
        assert!(swap.preserves_form(&j).unwrap());
        // e0 -> e0 + e2 with everything else fixed is not symplectic for J
        let mut bad = BitMatrix::identity(4);
        bad.set(2, 0, true);
        assert!(!bad.preserves_form(&j).unwrap());
        assert!(BitMatrix::identity(3).preserves_form(&j).is_err());
    }

    #[test]
    fn hex_format() {
        let mut m = BitMatrix::zeros(2, 70);
        m.set(0, 0, true);
        m.set(0, 65, true);
        m.set(1, 4, true);
        let hex = m.to_hex_rows();
        assert_eq!(hex[0], "00000000000000010000000000000002");
        assert_eq!(hex[1], "00000000000000100000000000000000");
        assert_eq!(BitMatrix::from_hex_rows(2, 70, &hex).unwrap(), m);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<BitMatrix>(&json).unwrap(), m);
        let bad = vec!["ffffffffffffffffffffffffffffffff".to_string(); 2];
        assert!(BitMatrix::from_hex_rows(2, 70, &bad).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(matrix_group_closure(&[BitMatrix::identity(8)], 10).unwrap().len(), 1);
        // S_5 on F_2^5 via permutation matrices
        let a = BitMatrix::permutation(&[1, 0, 2, 3, 4]);
        let b = BitMatrix::permutation(&[1, 2, 3, 4, 0]);
        assert_eq!(matrix_group_closure(&[a.clone(), b.clone()], 1000).unwrap().len(), 120);
        assert!(matches!(matrix_group_closure(&[a, b], 50), Err(Error::ClosureOverflow { bound: 50 })));
    }
}
