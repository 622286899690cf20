//! Polynomials over GF(2), packed 64 coefficients per word.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial over GF(2); bit `i` of the packed vector is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Poly {
    words: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        GF2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        GF2Poly { words: vec![1] }
    }

    /// `x`.
    pub fn x() -> Self {
        GF2Poly { words: vec![2] }
    }

    /// `x + 1`.
    pub fn x_plus_one() -> Self {
        GF2Poly { words: vec![3] }
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = GF2Poly { words: vec![0; k / 64 + 1] };
        p.words[k / 64] |= 1 << (k % 64);
        p
    }

    /// From ascending coefficient bits.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        GF2Poly::from_words(words)
    }

    /// From exponents with coefficient 1, e.g. `[3, 1, 0]` is `x^3 + x + 1`.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = GF2Poly::zero();
        for &e in exps {
            p = p.add(&GF2Poly::monomial(e));
        }
        p
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        GF2Poly { words }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn bits(&self) -> Vec<bool> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    /// Value at `x = 1`, i.e. the parity of the number of terms.
    pub fn eval_at_one(&self) -> bool {
        self.words.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn add(&self, other: &GF2Poly) -> GF2Poly {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0))
            .collect();
        GF2Poly::from_words(words)
    }

    fn shifted(&self, k: usize) -> GF2Poly {
        if self.is_zero() {
            return GF2Poly::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs > 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        GF2Poly::from_words(words)
    }

    pub fn mul(&self, other: &GF2Poly) -> GF2Poly {
        if self.is_zero() || other.is_zero() {
            return GF2Poly::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len() + 1];
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                let k = i * 64 + b;
                let (ws, bs) = (k / 64, k % 64);
                for (j, &o) in other.words.iter().enumerate() {
                    words[j + ws] ^= o << bs;
                    if bs > 0 {
                        words[j + ws + 1] ^= o >> (64 - bs);
                    }
                }
            }
        }
        GF2Poly::from_words(words)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &GF2Poly) -> (GF2Poly, GF2Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = GF2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem = rem.add(&divisor.shifted(shift));
            quot = quot.add(&GF2Poly::monomial(shift));
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &GF2Poly) -> GF2Poly {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &GF2Poly) -> GF2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> GF2Poly {
        let bits = self.bits();
        let d: Vec<bool> = (1..bits.len()).map(|i| bits[i] && i % 2 == 1).collect();
        GF2Poly::from_bits(&d)
    }

    /// Square root of a polynomial with only even-degree terms.
    fn sqrt_even(&self) -> GF2Poly {
        let bits = self.bits();
        let half: Vec<bool> = bits.iter().step_by(2).copied().collect();
        GF2Poly::from_bits(&half)
    }

    fn mulmod(&self, other: &GF2Poly, modulus: &GF2Poly) -> GF2Poly {
        self.mul(other).rem(modulus)
    }

    /// Distinct monic irreducible factors, sorted by (degree, bits).
    pub fn irreducible_factors<R: Rng>(&self, rng: &mut R) -> Vec<GF2Poly> {
        let mut out = Vec::new();
        if self.degree().is_some_and(|d| d > 0) {
            self.collect_factors(rng, &mut out);
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        out.dedup();
        out
    }

    fn collect_factors<R: Rng>(&self, rng: &mut R, out: &mut Vec<GF2Poly>) {
        if self.degree().unwrap_or(0) == 0 {
            return;
        }
        let d = self.derivative();
        if d.is_zero() {
            self.sqrt_even().collect_factors(rng, out);
            return;
        }
        let g = self.gcd(&d);
        let squarefree = self.div_rem(&g).0;
        squarefree.ddf(rng, out);
        g.collect_factors(rng, out);
    }

    /// Distinct-degree factorization of a squarefree polynomial, splitting each
    /// equal-degree part with the trace map.
    fn ddf<R: Rng>(&self, rng: &mut R, out: &mut Vec<GF2Poly>) {
        let mut f = self.clone();
        let mut h = GF2Poly::x();
        let mut i = 1;
        while let Some(df) = f.degree() {
            if df < 2 * i {
                if df > 0 {
                    out.push(f);
                }
                return;
            }
            h = h.mulmod(&h, &f);
            let g = h.add(&GF2Poly::x()).gcd(&f);
            if g.degree().unwrap_or(0) > 0 {
                g.edf(i, rng, out);
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
    }

    fn edf<R: Rng>(&self, k: usize, rng: &mut R, out: &mut Vec<GF2Poly>) {
        let n = self.degree().expect("nonzero");
        if n == k {
            out.push(self.clone());
            return;
        }
        loop {
            let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let a = GF2Poly::from_bits(&bits);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut term = a.rem(self);
            let mut trace = term.clone();
            for _ in 1..k {
                term = term.mulmod(&term, self);
                trace = trace.add(&term);
            }
            let g = trace.gcd(self);
            if let Some(dg) = g.degree() {
                if dg > 0 && dg < n {
                    g.edf(k, rng, out);
                    self.div_rem(&g).0.edf(k, rng, out);
                    return;
                }
            }
        }
    }

    /// Hex of the integer whose bit `i` is the coefficient of `x^i`.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = format!("{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("bad GF(2) polynomial hex {s:?}")));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut words = Vec::new();
        for chunk in chars.rchunks(16) {
            let text: String = chunk.iter().collect();
            words.push(u64::from_str_radix(&text, 16).map_err(|e| Error::Parse(e.to_string()))?);
        }
        Ok(GF2Poly::from_words(words))
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}

impl Serialize for GF2Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for GF2Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GF2Poly::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arithmetic() {
        let p = GF2Poly::from_exponents(&[3, 1, 0]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "x^3 + x + 1");
        let sq = p.mul(&p);
        assert_eq!(sq, GF2Poly::from_exponents(&[6, 2, 0]));
        let (q, r) = sq.div_rem(&p);
        assert_eq!(q, p);
        assert!(r.is_zero());
        let big = GF2Poly::monomial(130).add(&GF2Poly::one());
        assert_eq!(big.degree(), Some(130));
        assert_eq!(big.mul(&GF2Poly::x()).degree(), Some(131));
    }

    #[test]
    fn hex_round_trip() {
        let p = GF2Poly::from_exponents(&[3, 1, 0]);
        assert_eq!(p.to_hex(), "b");
        let big = GF2Poly::from_exponents(&[100, 64, 3]);
        assert_eq!(GF2Poly::from_hex(&big.to_hex()).unwrap(), big);
        assert_eq!(GF2Poly::zero().to_hex(), "0");
    }

    #[test]
    fn factoring() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^19 + 1 = (x + 1)(x^18 + ... + 1) and the cyclotomic factor is irreducible
        // because 2 has order 18 mod 19.
        let p = GF2Poly::monomial(19).add(&GF2Poly::one());
        let f = p.irreducible_factors(&mut rng);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], GF2Poly::x_plus_one());
        assert_eq!(f[1].degree(), Some(18));

        // x^7 + 1 = (x+1)(x^3+x+1)(x^3+x^2+1)
        let p = GF2Poly::monomial(7).add(&GF2Poly::one());
        let f = p.irreducible_factors(&mut rng);
        let degs: Vec<usize> = f.iter().map(|g| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 3, 3]);

        // repeated factors collapse: (x+1)^4 x^2
        let p = GF2Poly::x_plus_one().mul(&GF2Poly::x_plus_one());
        let p = p.mul(&p).mul(&GF2Poly::x()).mul(&GF2Poly::x());
        assert_eq!(p.irreducible_factors(&mut rng), vec![GF2Poly::x(), GF2Poly::x_plus_one()]);
    }

    #[test]
    fn factors_reconstruct_squarefree_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let bits: Vec<bool> = (0..40).map(|_| rng.gen()).collect();
            let p = GF2Poly::from_bits(&bits);
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            let factors = p.irreducible_factors(&mut rng);
            for f in &factors {
                assert!(p.rem(f).is_zero());
                let again = f.irreducible_factors(&mut rng);
                assert_eq!(again, vec![f.clone()], "factor {f} is not irreducible");
            }
            // the radical has the same roots: p divides rad^deg(p)
            let rad = factors.iter().fold(GF2Poly::one(), |acc, f| acc.mul(f));
            let mut power = GF2Poly::one();
            for _ in 0..p.degree().unwrap() {
                power = power.mul(&rad).rem(&p);
            }
            assert!(power.is_zero());
        }
    }
}
