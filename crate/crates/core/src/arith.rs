//! Integer polynomials, prime fields and hyperelliptic point counts.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntPoly};
use crate::gf2::GF2Poly;
use crate::perm::{canonical_rep, Partition, PermGroup};
use crate::symplectic::SymplecticSpace;

pub type ZPoly = IntPoly;

/// Largest field size `p^k` accepted by [`curve_count`].
pub const POINT_COUNT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalleParams {
    pub a: i64,
    pub t: i64,
}

/// Evaluates `Σ c_i a^i` for small integer coefficients.
fn poly_in(a: &BigInt, coeffs: &[i64]) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * a + c)
}

/// The degree-9 two-parameter family with Galois group `AGL_2(3)`.
pub fn malle_g(params: &MalleParams) -> ZPoly {
    let a = BigInt::from(params.a);
    let t = BigInt::from(params.t);
    let c = |cs: &[i64]| poly_in(&a, cs);
    IntPoly::new(vec![
        c(&[0, 0, 0, 0, 0, 0, 1]),
        c(&[0, 0, 0, -36, 18, 6, -3]),
        c(&[0, 0, -324, 282, -57, -12, 3]) - &t * 3,
        c(&[0, -972, 1350, -604, 81, 6, -1]) + &t,
        c(&[-972, 2430, -1773, 516, -51]),
        c(&[1296, -1890, 903, -168, 9]),
        c(&[-675, 648, -195, 18]),
        c(&[171, -102, 15]),
        c(&[-21, 6]),
        BigInt::one(),
    ])
}

/// The irreducible factor `r(a, t)` of the family's discriminant.
pub fn malle_r(params: &MalleParams) -> BigInt {
    let a = BigInt::from(params.a);
    let t = BigInt::from(params.t);
    let t0 = poly_in(&a, &[0, 0, 26244, -49572, 49329, -34200, 17524, -6960, 2166, -520, 96, -12, 1]);
    let t1 = poly_in(&a, &[108, -108, 342, -272, 48, 12, -2]);
    t0 + t1 * &t + &t * &t
}

/// The closed form `-2^8 3^9 t^4 a^6 r(a,t)^3`.
pub fn malle_disc_formula(params: &MalleParams) -> BigInt {
    let a = BigInt::from(params.a);
    let t = BigInt::from(params.t);
    let r = malle_r(params);
    -(BigInt::from(256) * BigInt::from(19683) * t.pow(4) * a.pow(6) * r.pow(3))
}

pub fn derivative(f: &ZPoly) -> ZPoly {
    IntPoly::new(f.coeffs().iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

fn content(c: &[BigInt]) -> BigInt {
    c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Pseudo-remainder `prem(a, b)`, i.e. the remainder of `lc(b)^(deg a - deg b + 1) a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut e = r.len() - db;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        e -= 1;
    }
    if e > 0 {
        let k = lb.pow(e as u32);
        for x in r.iter_mut() {
            *x *= &k;
        }
    }
    r
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.coeffs().to_vec(), g.coeffs().to_vec());
    let ca = content(&a);
    let cb = content(&b);
    a.iter_mut().for_each(|x| *x /= &ca);
    b.iter_mut().for_each(|x| *x /= &cb);
    let deg = |v: &Vec<BigInt>| v.len() - 1;
    let t = ca.pow(deg(&b) as u32) * cb.pow(deg(&a) as u32);
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return s * t * b[0].pow(deg(&a) as u32);
    }
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let div = &gg * h.pow(delta as u32);
        a = b;
        b = r.into_iter().map(|x| x / &div).collect();
        gg = a.last().unwrap().clone();
        h = if delta == 0 { h } else { gg.pow(delta as u32) / h.pow(delta as u32 - 1) };
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let h = b[0].pow(da) / h.pow(da - 1);
            return s * t * h;
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant_sylvester(f: &ZPoly, g: &ZPoly) -> Result<BigInt> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Ok(BigInt::zero());
    };
    if m + n == 0 {
        return Ok(BigInt::one());
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for r in 0..n {
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            s.set(r, r + i, c.clone());
        }
    }
    for r in 0..m {
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            s.set(n + r, r + i, c.clone());
        }
    }
    s.det()
}

fn disc_sign(d: usize) -> BigInt {
    if (d * (d - 1) / 2) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn disc_resultant(f: &ZPoly) -> Result<BigInt> {
    let d = f.degree().filter(|&d| d >= 2).ok_or_else(|| Error::InvalidParameter("discriminant needs degree >= 2".into()))?;
    Ok(disc_sign(d) * resultant(f, &derivative(f)) / f.leading().unwrap())
}

/// Same as [`disc_resultant`] through a Sylvester determinant.
pub fn disc_sylvester(f: &ZPoly) -> Result<BigInt> {
    let d = f.degree().filter(|&d| d >= 2).ok_or_else(|| Error::InvalidParameter("discriminant needs degree >= 2".into()))?;
    Ok(disc_sign(d) * resultant_sylvester(f, &derivative(f))? / f.leading().unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactorization {
    pub sign: i8,
    /// `(prime, exponent)` for primes found by trial division.
    pub factors: Vec<(u64, u32)>,
    /// Part left after trial division up to `bound`, if not 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<String>,
}

/// Trial division of `n` by primes up to `bound`.
pub fn trial_factor(n: &BigInt, bound: u64) -> PrimeFactorization {
    let sign = match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    };
    let mut m = n.abs();
    let mut factors = Vec::new();
    if !m.is_zero() {
        let mut proven_prime = false;
        for p in primes_up_to(bound) {
            let bp = BigInt::from(p);
            if &bp * &bp > m {
                proven_prime = true;
                break;
            }
            let mut e = 0;
            while (&m % &bp).is_zero() {
                m /= &bp;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        if m > BigInt::one() && (proven_prime || m <= BigInt::from(bound)) {
            if let Some(q) = m.to_u64() {
                factors.push((q, 1));
            }
            m = BigInt::one();
        }
    }
    let cofactor = (!m.is_one() && !m.is_zero()).then(|| m.to_string());
    PrimeFactorization { sign, factors, cofactor }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::InvalidParameter(format!("{p} is not an odd word-size prime")));
    }
    Ok(())
}

/// Polynomial over `F_p`, ascending coefficients in `0..p`, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        c.iter_mut().for_each(|x| *x %= p);
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn reduce(f: &ZPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        FpPoly::new(p, f.coeffs().iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn mulp(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).copied().unwrap_or(0) + self.p - o.c.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn monic(&self) -> FpPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let li = self.inv(l);
                FpPoly::new(self.p, self.c.iter().map(|&x| self.mulp(x, li)).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        let dd = d.degree().ok_or_else(|| Error::InvalidParameter("division by zero polynomial".into()))?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let li = self.inv(d.c[dd]);
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = self.mulp(r[k], li);
            if coef == 0 {
                continue;
            }
            q[k - dd] = coef;
            for (i, &dc) in d.c.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = (r[idx] + self.p - self.mulp(coef, dc)) % self.p;
            }
        }
        r.truncate(dd);
        Ok((FpPoly::new(self.p, q), FpPoly::new(self.p, r)))
    }

    pub fn rem(&self, d: &FpPoly) -> Result<FpPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().enumerate().skip(1).map(|(i, &x)| self.mulp(x, i as u64 % self.p)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &c| (self.mulp(acc, x) + c) % self.p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> Result<FpPoly> {
        let mut result = FpPoly::one(self.p).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m)?;
            if e.bit(i) {
                result = result.mul(&base).rem(m)?;
            }
        }
        Ok(result)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(n) => {
                let f = self.monic();
                let dd = distinct_degree(&f).expect("nonzero modulus");
                dd.len() == 1 && dd[0].0 == n
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted by (degree, coefficients).
    pub fn factor_squarefree(&self, rng: &mut ChaCha8Rng) -> Result<Vec<FpPoly>> {
        if !self.is_squarefree() {
            return Err(Error::InvalidParameter("polynomial is not squarefree".into()));
        }
        let f = self.monic();
        let mut out = Vec::new();
        for (d, g) in distinct_degree(&f)? {
            equal_degree(&g, d, rng, &mut out)?;
        }
        out.sort_by(|a, b| (a.c.len(), a.c.iter().rev().collect::<Vec<_>>()).cmp(&(b.c.len(), b.c.iter().rev().collect())));
        Ok(out)
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let m = p as u128;
    let mut bb = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &FpPoly) -> Result<Vec<(usize, FpPoly)>> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest)?;
    let pe = BigUint::from(p);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((deg, rest.clone()));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(&pe, &rest)?;
        let g = rest.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            out.push((d, g.clone()));
            rest = rest.div_rem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) -> Result<()> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.monic());
        return Ok(());
    }
    let p = f.p;
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(&e, f)?.sub(&FpPoly::one(p));
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g)?.0;
            equal_degree(&g, d, rng, out)?;
            equal_degree(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Degrees of the irreducible factors of `f mod p`, descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationType {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl FactorizationType {
    pub fn cycle_type(&self) -> Result<Partition> {
        Partition::new(self.degrees.clone())
    }
}

/// Factorization pattern of `f mod p`. Non-squarefree reductions report
/// `squarefree = false` and the degrees of the squarefree part's factors
/// counted with multiplicity left unresolved (empty).
pub fn factor_mod_p(f: &ZPoly, p: u64, seed: u64) -> Result<FactorizationType> {
    Ok(factor_mod_p_full(f, p, seed)?.0)
}

/// [`factor_mod_p`] together with the monic factors (empty when not squarefree).
pub fn factor_mod_p_full(f: &ZPoly, p: u64, seed: u64) -> Result<(FactorizationType, Vec<FpPoly>)> {
    check_odd_prime(p)?;
    let fp = FpPoly::reduce(f, p);
    if fp.degree() != f.degree() {
        return Err(Error::BadPrime(p));
    }
    if !fp.is_squarefree() {
        return Ok((FactorizationType { degrees: Vec::new(), squarefree: false }, Vec::new()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let factors = fp.factor_squarefree(&mut rng)?;
    let mut degrees: Vec<usize> = factors.iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok((FactorizationType { degrees, squarefree: true }, factors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRow {
    pub p: u64,
    pub cycle_type: Vec<usize>,
    /// `nullity(M + I)` of the embedded Frobenius permutation.
    pub nullity: usize,
    pub eigenvalue_one: bool,
    pub in_group: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusScan {
    pub polynomial: ZPoly,
    pub pmax: u64,
    pub group: String,
    pub rows: Vec<FrobeniusRow>,
    pub bad_primes: Vec<u64>,
    pub all_eigenvalue_one: bool,
    pub all_in_group: bool,
    /// Cycle types seen, with counts.
    pub cycle_type_counts: Vec<(Vec<usize>, usize)>,
}

/// Frobenius cycle types of `f` at every prime up to `pmax`, pushed through
/// the symplectic embedding of the symmetric group on the roots.
pub fn frobenius_scan(f: &ZPoly, pmax: u64, group: &PermGroup, seed: u64) -> Result<FrobeniusScan> {
    let d = f.degree().ok_or_else(|| Error::InvalidParameter("zero polynomial".into()))?;
    if d != group.degree() {
        return Err(Error::DegreeMismatch { left: d, right: group.degree() });
    }
    let space = SymplecticSpace::new(d)?;
    let group_types: BTreeSet<Partition> = group.cycle_types()?.into_iter().collect();
    let primes = primes_up_to(pmax);
    let results = primes
        .par_iter()
        .map(|&p| {
            if p == 2 {
                return Ok(None);
            }
            let ft = match factor_mod_p(f, p, seed) {
                Ok(ft) if ft.squarefree => ft,
                Ok(_) | Err(Error::BadPrime(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let ct = ft.cycle_type()?;
            let m = space.embed(&canonical_rep(&ct))?;
            let nullity = m.plus_identity()?.nullity();
            Ok(Some(FrobeniusRow {
                p,
                in_group: group_types.contains(&ct),
                cycle_type: ft.degrees,
                nullity,
                eigenvalue_one: nullity > 0,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut bad_primes = Vec::new();
    for (&p, r) in primes.iter().zip(results) {
        match r {
            Some(row) => rows.push(row),
            None => bad_primes.push(p),
        }
    }
    let mut counts: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
    for r in &rows {
        *counts.entry(r.cycle_type.clone()).or_default() += 1;
    }
    Ok(FrobeniusScan {
        polynomial: f.clone(),
        pmax,
        group: group.name().to_string(),
        all_eigenvalue_one: rows.iter().all(|r| r.eigenvalue_one),
        all_in_group: rows.iter().all(|r| r.in_group),
        rows,
        bad_primes,
        cycle_type_counts: counts.into_iter().collect(),
    })
}

/// `F_{p^k}` as `F_p[x]/(m)` with `m` the least monic irreducible of degree `k`,
/// comparing coefficients from `x^(k-1)` down to `x^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqField {
    pub p: u64,
    pub k: usize,
    /// Ascending coefficients of the modulus, monic.
    pub modulus: Vec<u64>,
}

/// Field element: ascending coordinates, unused slots zero.
type Fq = [u64; 4];

impl FqField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        check_odd_prime(p)?;
        if !(1..=4).contains(&k) {
            return Err(Error::InvalidParameter(format!("extension degree {k} outside 1..=4")));
        }
        if k == 1 {
            return Ok(FqField { p, k, modulus: vec![0, 1] });
        }
        let total = p.checked_pow(k as u32).ok_or_else(|| Error::BudgetExceeded("field too large".into()))?;
        for code in 0..total {
            // digits of `code`, most significant first, are the coefficients of x^(k-1) .. x^0
            let mut c = vec![0u64; k + 1];
            let mut v = code;
            for slot in c.iter_mut().take(k) {
                *slot = v % p;
                v /= p;
            }
            c[k] = 1;
            let m = FpPoly::new(p, c.clone());
            if m.is_irreducible() {
                return Ok(FqField { p, k, modulus: c });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    fn element(&self, mut idx: u64) -> Fq {
        let mut e = [0u64; 4];
        for slot in e.iter_mut().take(self.k) {
            *slot = idx % self.p;
            idx /= self.p;
        }
        e
    }

    fn index(&self, e: &Fq) -> u64 {
        e[..self.k].iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_const(&self, mut e: Fq, c: u64) -> Fq {
        e[0] = (e[0] + c) % self.p;
        e
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let p = self.p as u128;
        let k = self.k;
        let mut r = [0u128; 7];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                r[i + j] += a[i] as u128 * b[j] as u128 % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = r[d] % p;
            if c != 0 {
                for i in 0..k {
                    r[d - k + i] += c * (p - self.modulus[i] as u128);
                }
            }
        }
        let mut out = [0u64; 4];
        for i in 0..k {
            out[i] = (r[i] % p) as u64;
        }
        out
    }
}

fn genus_of(f: &ZPoly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 3 && d % 2 == 1 => Ok((d - 1) / 2),
        _ => Err(Error::InvalidParameter("curve model needs odd degree >= 3".into())),
    }
}

fn check_good_prime(f: &ZPoly, p: u64) -> Result<()> {
    check_odd_prime(p)?;
    let fp = FpPoly::reduce(f, p);
    if fp.degree() != f.degree() || !fp.is_squarefree() {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// `#C(F_{p^k})` for the smooth model of `y^2 = f(x)` with `deg f` odd.
pub fn curve_count(f: &ZPoly, p: u64, k: usize) -> Result<u64> {
    genus_of(f)?;
    check_good_prime(f, p)?;
    let q = p.checked_pow(k as u32).filter(|&q| q <= POINT_COUNT_BUDGET).ok_or_else(|| {
        Error::BudgetExceeded(format!("{p}^{k} exceeds the point-count budget {POINT_COUNT_BUDGET}"))
    })?;
    let field = FqField::new(p, k)?;
    let mut square = vec![false; q as usize];
    for i in 0..q {
        let e = field.element(i);
        square[field.index(&field.mul(&e, &e)) as usize] = true;
    }
    let fc: Vec<u64> = FpPoly::reduce(f, p).coeffs().to_vec();
    let affine: u64 = (0..q)
        .into_par_iter()
        .map(|i| {
            let x = field.element(i);
            let mut acc = [0u64; 4];
            for &c in fc.iter().rev() {
                acc = field.add_const(field.mul(&acc, &x), c);
            }
            let v = field.index(&acc);
            if v == 0 {
                1
            } else if square[v as usize] {
                2
            } else {
                0
            }
        })
        .sum();
    Ok(affine + 1)
}

/// `|N - (q + 1)| <= 2 g sqrt(q)`, checked exactly.
pub fn weil_bound_holds(count: u64, q: u64, genus: usize) -> bool {
    let dev = (count as i128 - (q as i128 + 1)).unsigned_abs();
    dev * dev <= 4 * (genus as u128).pow(2) * q as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPolynomial {
    pub p: u64,
    pub genus: usize,
    /// `c_0 ..= c_{2g}`, `c_0 = 1`.
    pub coeffs: Vec<i64>,
    /// `#C(F_{p^k})` for `k = 1..=g`.
    pub counts: Vec<u64>,
}

impl LPolynomial {
    /// `#J(F_p) = P(1)`.
    pub fn jacobian_order(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus;
        (0..=g).all(|i| self.coeffs[2 * g - i] as i128 == (self.p as i128).pow((g - i) as u32) * self.coeffs[i] as i128)
    }

    /// `|c_i| <= C(2g, i) p^(i/2)`.
    pub fn coefficient_bounds_hold(&self) -> bool {
        let n = 2 * self.genus;
        let mut binom = 1u128;
        self.coeffs.iter().enumerate().all(|(i, &c)| {
            if i > 0 {
                binom = binom * (n - i + 1) as u128 / i as u128;
            }
            (c.unsigned_abs() as u128).pow(2) <= binom * binom * (self.p as u128).pow(i as u32)
        })
    }

    /// `x^(2g) P(1/x)` reduced mod 2.
    pub fn reversed_mod2(&self) -> GF2Poly {
        let n = 2 * self.genus;
        let exps: Vec<usize> = (0..=n).filter(|&i| self.coeffs[n - i] % 2 != 0).collect();
        GF2Poly::from_exponents(&exps)
    }
}

/// L-polynomial of `y^2 = f(x)` at a good prime, from point counts over
/// `F_{p^k}`, `k <= g`, by Newton's identities and the functional equation.
pub fn lpoly_from_counts(f: &ZPoly, p: u64) -> Result<LPolynomial> {
    let g = genus_of(f)?;
    check_good_prime(f, p)?;
    let counts = (1..=g).map(|k| curve_count(f, p, k)).collect::<Result<Vec<_>>>()?;
    let s: Vec<i128> = counts.iter().enumerate().map(|(i, &n)| (p as i128).pow(i as u32 + 1) + 1 - n as i128).collect();
    let mut c: Vec<i128> = vec![1];
    for k in 1..=g {
        let mut v = s[k - 1];
        for i in 1..k {
            v += c[i] * s[k - i - 1];
        }
        if v % k as i128 != 0 {
            return Err(Error::InvalidParameter(format!("point counts at p = {p} violate Newton integrality")));
        }
        c.push(-v / k as i128);
    }
    for j in g + 1..=2 * g {
        c.push((p as i128).pow((j - g) as u32) * c[2 * g - j]);
    }
    let coeffs = c
        .into_iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::BudgetExceeded("L-polynomial coefficient overflow".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(LPolynomial { p, genus: g, coeffs, counts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheck {
    pub p: u64,
    pub lpoly: LPolynomial,
    pub jacobian_order: i64,
    pub jacobian_even: bool,
    pub cycle_type: Vec<usize>,
    pub lpoly_reversed_mod2: GF2Poly,
    pub frobenius_charpoly: GF2Poly,
    /// `det(I + M) = 0` for the embedded Frobenius permutation.
    pub frobenius_eigenvalue_one: bool,
    pub charpolys_agree: bool,
    /// All three parity readings coincide.
    pub consistent: bool,
}

/// Compares `#J(F_p) mod 2`, the L-polynomial mod 2 and the embedded Frobenius.
pub fn parity_check(f: &ZPoly, p: u64, seed: u64) -> Result<ParityCheck> {
    let lpoly = lpoly_from_counts(f, p)?;
    let ft = factor_mod_p(f, p, seed)?;
    let ct = ft.cycle_type()?;
    let space = SymplecticSpace::new(f.degree().unwrap())?;
    let m = space.embed(&canonical_rep(&ct))?;
    let chi = m.charpoly()?;
    let frob_eig1 = !m.plus_identity()?.inverse().is_ok();
    let rev = lpoly.reversed_mod2();
    let jac = lpoly.jacobian_order();
    let jacobian_even = jac % 2 == 0;
    let charpolys_agree = rev == chi;
    Ok(ParityCheck {
        p,
        jacobian_order: jac,
        jacobian_even,
        cycle_type: ft.degrees,
        consistent: charpolys_agree && jacobian_even == frob_eig1 && frob_eig1 == !chi.eval_at_one(),
        lpoly_reversed_mod2: rev,
        frobenius_charpoly: chi,
        frobenius_eigenvalue_one: frob_eig1,
        charpolys_agree,
        lpoly,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscCheck {
    pub a: i64,
    pub t: i64,
    pub resultant: String,
    pub formula: String,
    pub equal: bool,
}

/// Discriminant of `g_{a,t}` by resultant against the closed form.
pub fn disc_check(params: &MalleParams) -> Result<DiscCheck> {
    let d = disc_resultant(&malle_g(params))?;
    let e = malle_disc_formula(params);
    Ok(DiscCheck { a: params.a, t: params.t, equal: d == e, resultant: d.to_string(), formula: e.to_string() })
}
