//! MeatAxe-style splitting over GF(2).
//!
//! Internally everything is in the row-vector convention: a module given by
//! column-acting matrices `M` is handled through `Mᵀ` acting on the right of
//! row vectors, and results are transposed back on the way out.
//!
//! Irreducibility uses Norton's criterion in the Holt-Rees form: pick a random
//! algebra element `θ`, a factor `p` of its characteristic polynomial, and spin
//! a vector of `ker p(θ)`. When the kernel has dimension `deg p`, spinning one
//! vector in the module and one in the dual decides the question.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BitMatrix, GF2Poly};
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_MAX_DIM: usize = 256;
pub const DEFAULT_ATTEMPTS: usize = 64;
pub const DEFAULT_WORD_LEN: usize = 8;

/// Dimension up to which absolute irreducibility is decided by solving
/// `XG = GX` directly; above it the commutant is computed from a spun basis.
const DIRECT_COMMUTANT_MAX: usize = 64;

/// A GF(2)-representation given by the matrices of a generating set,
/// acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GF2Module {
    dim: usize,
    generators: Vec<BitMatrix>,
}

impl GF2Module {
    pub fn new(dim: usize, generators: Vec<BitMatrix>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("module dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidParameter("module needs at least one generator".into()));
        }
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, module dimension {dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.rank() != dim {
                return Err(Error::InvalidParameter("generator is not invertible over GF(2)".into()));
            }
        }
        Ok(GF2Module { dim, generators })
    }

    pub fn trivial(dim: usize) -> Self {
        GF2Module { dim, generators: vec![BitMatrix::identity(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[BitMatrix] {
        &self.generators
    }

    /// Block-diagonal sum; both modules must have the same number of generators.
    pub fn direct_sum(&self, other: &GF2Module) -> Result<GF2Module> {
        if self.generators.len() != other.generators.len() {
            return Err(Error::DimensionMismatch("direct sum needs matching generator counts".into()));
        }
        let d = self.dim + other.dim;
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| {
                let mut m = BitMatrix::zeros(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(GF2Module { dim: d, generators: gens })
    }

    /// The same module in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &BitMatrix) -> Result<GF2Module> {
        let inv = p.inverse()?;
        let gens = self
            .generators
            .iter()
            .map(|g| inv.mul(g).and_then(|x| x.mul(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GF2Module { dim: self.dim, generators: gens })
    }

    fn row_form(&self) -> RowModule {
        RowModule { dim: self.dim, gens: self.generators.iter().map(BitMatrix::transpose).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionFactor {
    pub dim: usize,
    pub generators: Vec<BitMatrix>,
}

impl CompositionFactor {
    pub fn module(&self) -> GF2Module {
        GF2Module { dim: self.dim, generators: self.generators.clone() }
    }
}

#[derive(Clone, Debug)]
struct RowModule {
    dim: usize,
    gens: Vec<BitMatrix>,
}

impl RowModule {
    fn column_form(&self) -> GF2Module {
        GF2Module { dim: self.dim, generators: self.gens.iter().map(BitMatrix::transpose).collect() }
    }
}

/// Semi-echelon basis; vectors are reduced against rows in insertion order.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                xor_into(v, row);
            }
        }
    }

    /// Reduces `v` and returns the set of rows that were added.
    fn reduce_tracked(&self, v: &mut [u64]) -> Vec<u64> {
        let mut used = vec![0u64; self.rows.len().div_ceil(64).max(1)];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                xor_into(v, row);
                used[k / 64] |= 1 << (k % 64);
            }
        }
        used
    }

    /// Inserts an already reduced vector; returns false for zero.
    fn insert_reduced(&mut self, v: Vec<u64>) -> bool {
        match first_bit(&v) {
            Some(p) => {
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    fn is_pivot_mask(&self, dim: usize) -> Vec<bool> {
        let mut mask = vec![false; dim];
        for &p in &self.pivots {
            mask[p] = true;
        }
        mask
    }
}

fn xor_into(v: &mut [u64], w: &[u64]) {
    for (a, b) in v.iter_mut().zip(w) {
        *a ^= b;
    }
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Smallest subspace containing `seeds` and closed under right multiplication by `gens`.
fn spin(dim: usize, seeds: &[Vec<u64>], gens: &[BitMatrix]) -> Echelon {
    let mut ech = Echelon::new();
    for s in seeds {
        ech.insert(s.clone());
    }
    let mut head = 0;
    while head < ech.len() && ech.len() < dim {
        let b = ech.rows[head].clone();
        head += 1;
        for g in gens {
            let w = g.vec_mul(&b);
            ech.insert(w);
            if ech.len() == dim {
                break;
            }
        }
    }
    ech
}

/// Sub- and quotient modules for a proper nonzero invariant subspace.
fn split_along(m: &RowModule, sub: &Echelon) -> (RowModule, RowModule) {
    let k = sub.len();
    let nonpivots: Vec<usize> = {
        let mask = sub.is_pivot_mask(m.dim);
        (0..m.dim).filter(|&c| !mask[c]).collect()
    };
    let q = nonpivots.len();
    let stride = m.dim.div_ceil(64);
    let mut sub_gens = Vec::with_capacity(m.gens.len());
    let mut quot_gens = Vec::with_capacity(m.gens.len());
    for g in &m.gens {
        let mut s = BitMatrix::zeros(k, k);
        for (i, row) in sub.rows.iter().enumerate() {
            let mut img = g.vec_mul(row);
            let used = sub.reduce_tracked(&mut img);
            debug_assert!(img.iter().all(|&w| w == 0), "subspace is not invariant");
            for j in 0..k {
                if (used[j / 64] >> (j % 64)) & 1 == 1 {
                    s.set(i, j, true);
                }
            }
        }
        let mut t = BitMatrix::zeros(q, q);
        for (i, &c) in nonpivots.iter().enumerate() {
            let mut e = vec![0u64; stride];
            e[c / 64] |= 1 << (c % 64);
            let mut img = g.vec_mul(&e);
            sub.reduce(&mut img);
            for (j, &c2) in nonpivots.iter().enumerate() {
                if (img[c2 / 64] >> (c2 % 64)) & 1 == 1 {
                    t.set(i, j, true);
                }
            }
        }
        sub_gens.push(s);
        quot_gens.push(t);
    }
    (RowModule { dim: k, gens: sub_gens }, RowModule { dim: q, gens: quot_gens })
}

enum SplitOutcome {
    Irreducible { theta: BitMatrix, factor: GF2Poly },
    Split(Echelon),
}

/// Seeded MeatAxe engine.
#[derive(Clone, Debug)]
pub struct Meataxe {
    pub seed: u64,
    pub attempts: usize,
    pub max_word_len: usize,
    pub max_dim: usize,
}

impl Default for Meataxe {
    fn default() -> Self {
        Meataxe {
            seed: DEFAULT_SEED,
            attempts: DEFAULT_ATTEMPTS,
            max_word_len: DEFAULT_WORD_LEN,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl Meataxe {
    pub fn with_seed(seed: u64) -> Self {
        Meataxe { seed, ..Meataxe::default() }
    }

    fn check_dim(&self, m: &GF2Module) -> Result<()> {
        if m.dim > self.max_dim {
            return Err(Error::BudgetExceeded(format!(
                "module dimension {} exceeds MeatAxe bound {}",
                m.dim, self.max_dim
            )));
        }
        Ok(())
    }

    fn random_word<R: Rng>(&self, m: &RowModule, rng: &mut R) -> BitMatrix {
        let len = rng.gen_range(1..=self.max_word_len);
        let mut w = m.gens.choose(rng).expect("generators").clone();
        for _ in 1..len {
            w = w.mul_unchecked(m.gens.choose(rng).expect("generators"));
        }
        w
    }

    fn random_element<R: Rng>(&self, m: &RowModule, rng: &mut R) -> BitMatrix {
        let terms = rng.gen_range(2..=3);
        let mut theta = self.random_word(m, rng);
        for _ in 1..terms {
            theta = theta.add(&self.random_word(m, rng)).expect("same shape");
        }
        theta
    }

    fn try_split<R: Rng>(&self, m: &RowModule, rng: &mut R) -> Result<SplitOutcome> {
        let d = m.dim;
        if d == 1 {
            return Ok(SplitOutcome::Irreducible { theta: BitMatrix::identity(1), factor: GF2Poly::x_plus_one() });
        }
        let gens_t: Vec<BitMatrix> = m.gens.iter().map(BitMatrix::transpose).collect();
        for _ in 0..self.attempts {
            let theta = self.random_element(m, rng);
            let chi = theta.charpoly()?;
            let mut factors = chi.irreducible_factors(rng);
            factors.sort_by_key(|p| p.degree());
            for p in factors {
                let pt = theta.eval_poly(&p);
                let null = pt.left_nullspace();
                if null.rows() == 0 {
                    continue;
                }
                let v = null.row_words(0).to_vec();
                let sp = spin(d, &[v], &m.gens);
                if sp.len() < d {
                    return Ok(SplitOutcome::Split(sp));
                }
                if null.rows() != p.degree().unwrap_or(0) {
                    continue;
                }
                // dual: w with w p(θ)ᵀ = 0, spun under the transposed generators
                let dual_null = pt.rank_nullspace().1;
                let w = dual_null.row_words(0).to_vec();
                let dsp = spin(d, &[w], &gens_t);
                if dsp.len() < d {
                    let mut u = BitMatrix::zeros(dsp.len(), d);
                    for (i, row) in dsp.rows.iter().enumerate() {
                        for j in 0..d {
                            if (row[j / 64] >> (j % 64)) & 1 == 1 {
                                u.set(i, j, true);
                            }
                        }
                    }
                    let ann = u.rank_nullspace().1;
                    let mut ech = Echelon::new();
                    for i in 0..ann.rows() {
                        ech.insert(ann.row_words(i).to_vec());
                    }
                    return Ok(SplitOutcome::Split(ech));
                }
                return Ok(SplitOutcome::Irreducible { theta, factor: p });
            }
        }
        Err(Error::MeataxeExhausted { attempts: self.attempts, dim: d })
    }

    /// A proper nonzero submodule and the corresponding quotient, or `None`
    /// when the module is irreducible.
    pub fn split(&self, m: &GF2Module) -> Result<Option<(GF2Module, GF2Module)>> {
        self.check_dim(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let rm = m.row_form();
        match self.try_split(&rm, &mut rng)? {
            SplitOutcome::Irreducible { .. } => Ok(None),
            SplitOutcome::Split(ech) => {
                let (s, q) = split_along(&rm, &ech);
                Ok(Some((s.column_form(), q.column_form())))
            }
        }
    }

    pub fn is_irreducible(&self, m: &GF2Module) -> Result<bool> {
        Ok(self.split(m)?.is_none())
    }

    /// Composition factors, listed from the bottom of a composition series up.
    pub fn composition_factors(&self, m: &GF2Module) -> Result<Vec<CompositionFactor>> {
        self.check_dim(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        self.factors_rec(m.row_form(), &mut rng, &mut out)?;
        Ok(out)
    }

    fn factors_rec(&self, m: RowModule, rng: &mut ChaCha8Rng, out: &mut Vec<CompositionFactor>) -> Result<()> {
        match self.try_split(&m, rng)? {
            SplitOutcome::Irreducible { .. } => {
                let col = m.column_form();
                out.push(CompositionFactor { dim: col.dim, generators: col.generators });
            }
            SplitOutcome::Split(ech) => {
                let (s, q) = split_along(&m, &ech);
                self.factors_rec(s, rng, out)?;
                self.factors_rec(q, rng, out)?;
            }
        }
        Ok(())
    }

    /// Sorted composition factor dimensions.
    pub fn factor_dims(&self, m: &GF2Module) -> Result<Vec<usize>> {
        let mut dims: Vec<usize> = self.composition_factors(m)?.iter().map(|f| f.dim).collect();
        dims.sort_unstable();
        Ok(dims)
    }

    /// Whether an irreducible module stays irreducible over the algebraic
    /// closure, i.e. its endomorphism algebra is GF(2). Reducible input is
    /// rejected.
    pub fn is_absolutely_irreducible(&self, m: &GF2Module) -> Result<bool> {
        self.check_dim(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let rm = m.row_form();
        match self.try_split(&rm, &mut rng)? {
            SplitOutcome::Split(_) => Err(Error::Reducible),
            SplitOutcome::Irreducible { theta, factor } => {
                if m.dim <= DIRECT_COMMUTANT_MAX {
                    Ok(commutant_dimension(m) == 1)
                } else {
                    Ok(endomorphism_dimension(&rm, &theta, &factor) == 1)
                }
            }
        }
    }
}

/// Dimension of `{X : XG = GX for every generator G}`, by solving the
/// `d² x d²` linear system directly.
pub fn commutant_dimension(m: &GF2Module) -> usize {
    let d = m.dim;
    let n = d * d;
    let mut sys = BitMatrix::zeros(m.generators.len() * n, n);
    for (gi, g) in m.generators.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let eq = gi * n + i * d + j;
                // (XG)_ij = sum_k X_ik G_kj ; (GX)_ij = sum_k G_ik X_kj
                for k in 0..d {
                    if g.get(k, j) {
                        sys.flip(eq, i * d + k);
                    }
                    if g.get(i, k) {
                        sys.flip(eq, k * d + j);
                    }
                }
            }
        }
    }
    n - sys.rank()
}

/// Endomorphism algebra dimension of an irreducible row module. Any
/// endomorphism maps `v ∈ ker p(θ)` into `ker p(θ)`, and is fixed by the
/// image of `v`, so it suffices to test which images extend consistently.
fn endomorphism_dimension(m: &RowModule, theta: &BitMatrix, p: &GF2Poly) -> usize {
    let d = m.dim;
    let null = theta.eval_poly(p).left_nullspace();
    let v = null.row_words(0).to_vec();
    // spin v recording, for each new basis vector, the (parent, generator) that produced it
    let mut ech = Echelon::new();
    let mut raw: Vec<Vec<u64>> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    ech.insert(v.clone());
    raw.push(v);
    parent.push(None);
    let mut head = 0;
    while head < raw.len() && raw.len() < d {
        for (gi, g) in m.gens.iter().enumerate() {
            let w = g.vec_mul(&raw[head]);
            if ech.insert(w.clone()) {
                raw.push(w);
                parent.push(Some((head, gi)));
            }
        }
        head += 1;
    }
    debug_assert_eq!(raw.len(), d);
    // express each raw vector * generator in the raw basis: reduce in the
    // echelon basis, then convert echelon rows back to raw combinations
    let k = raw.len();
    let stride = k.div_ceil(64);
    let mut ech_in_raw: Vec<Vec<u64>> = Vec::with_capacity(k);
    {
        let mut e2 = Echelon::new();
        for (i, r) in raw.iter().enumerate() {
            let mut x = r.clone();
            let used = e2.reduce_tracked(&mut x);
            let mut comb = vec![0u64; stride];
            comb[i / 64] |= 1 << (i % 64);
            for j in 0..e2.len() {
                if (used[j / 64] >> (j % 64)) & 1 == 1 {
                    xor_into(&mut comb, &ech_in_raw[j]);
                }
            }
            e2.insert_reduced(x);
            ech_in_raw.push(comb);
        }
    }
    let mut relations: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for i in 0..k {
        for (gi, g) in m.gens.iter().enumerate() {
            let mut img = g.vec_mul(&raw[i]);
            let used = ech.reduce_tracked(&mut img);
            let mut comb = vec![0u64; stride];
            for j in 0..k {
                if (used[j / 64] >> (j % 64)) & 1 == 1 {
                    xor_into(&mut comb, &ech_in_raw[j]);
                }
            }
            relations.push((i, gi, comb));
        }
    }
    // for each candidate image n_j of v, propagate along the spanning tree and
    // record the defect of every relation
    let mut defects = BitMatrix::zeros(null.rows(), relations.len() * d);
    for c in 0..null.rows() {
        let mut img: Vec<Vec<u64>> = Vec::with_capacity(k);
        for i in 0..k {
            let x = match parent[i] {
                None => null.row_words(c).to_vec(),
                Some((par, gi)) => m.gens[gi].vec_mul(&img[par]),
            };
            img.push(x);
        }
        for (ri, (i, gi, comb)) in relations.iter().enumerate() {
            let mut lhs = m.gens[*gi].vec_mul(&img[*i]);
            for j in 0..k {
                if (comb[j / 64] >> (j % 64)) & 1 == 1 {
                    xor_into(&mut lhs, &img[j]);
                }
            }
            for b in 0..d {
                if (lhs[b / 64] >> (b % 64)) & 1 == 1 {
                    defects.set(c, ri * d + b, true);
                }
            }
        }
    }
    null.rows() - defects.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_module(gens: &[Vec<usize>]) -> GF2Module {
        let n = gens[0].len();
        GF2Module::new(n, gens.iter().map(|g| BitMatrix::permutation(g)).collect()).unwrap()
    }

    fn s_n(n: usize) -> GF2Module {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        perm_module(&[t, c])
    }

    #[test]
    fn trivial_module() {
        let mx = Meataxe::default();
        let m = GF2Module::trivial(1);
        assert_eq!(mx.factor_dims(&m).unwrap(), vec![1]);
        assert!(mx.is_absolutely_irreducible(&m).unwrap());
        assert_eq!(mx.factor_dims(&GF2Module::trivial(3)).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn permutation_modules() {
        let mx = Meataxe::default();
        // odd degree: trivial plus the irreducible sum-zero module
        assert_eq!(mx.factor_dims(&s_n(5)).unwrap(), vec![1, 4]);
        assert_eq!(mx.factor_dims(&s_n(7)).unwrap(), vec![1, 6]);
        // even degree: 1 < sum-zero, with an irreducible (n-2)-dim middle
        assert_eq!(mx.factor_dims(&s_n(4)).unwrap(), vec![1, 1, 2]);
        assert_eq!(mx.factor_dims(&s_n(6)).unwrap(), vec![1, 1, 4]);
    }

    #[test]
    fn factors_are_irreducible_and_sum_to_dimension() {
        let mx = Meataxe::default();
        let m = s_n(8);
        let factors = mx.composition_factors(&m).unwrap();
        assert_eq!(factors.iter().map(|f| f.dim).sum::<usize>(), 8);
        for f in &factors {
            assert!(mx.is_irreducible(&f.module()).unwrap());
        }
    }

    #[test]
    fn basis_change_and_direct_sum() {
        let mx = Meataxe::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = s_n(6);
        let p = BitMatrix::random_invertible(6, &mut rng);
        let conj = m.change_basis(&p).unwrap();
        assert_eq!(mx.factor_dims(&conj).unwrap(), mx.factor_dims(&m).unwrap());
        let sum = s_n(5).direct_sum(&s_n(4)).unwrap();
        assert_eq!(mx.factor_dims(&sum).unwrap(), vec![1, 1, 1, 2, 4]);
    }

    #[test]
    fn absolute_irreducibility() {
        let mx = Meataxe::default();
        // a 3-cycle acting on F_4 = F_2^2 by multiplication by a primitive cube root
        let w = BitMatrix::from_ints(&[vec![0, 1], vec![1, 1]]).unwrap();
        let m = GF2Module::new(2, vec![w]).unwrap();
        assert!(mx.is_irreducible(&m).unwrap());
        assert!(!mx.is_absolutely_irreducible(&m).unwrap());
        assert_eq!(commutant_dimension(&m), 2);
        // sum-zero module of S_5 is absolutely irreducible
        let (_, q) = mx.split(&s_n(5)).unwrap().unwrap();
        let four = if q.dim() == 4 { q } else { mx.split(&s_n(5)).unwrap().unwrap().0 };
        assert!(mx.is_absolutely_irreducible(&four).unwrap());
        assert!(matches!(mx.is_absolutely_irreducible(&s_n(5)), Err(Error::Reducible)));
    }

    #[test]
    fn endomorphism_route_matches_direct_solve() {
        let mx = Meataxe::default();
        let mut rng = ChaCha8Rng::seed_from_u64(mx.seed);
        let w = BitMatrix::from_ints(&[vec![0, 1], vec![1, 1]]).unwrap();
        let f4 = GF2Module::new(2, vec![w]).unwrap();
        for m in [f4, mx.composition_factors(&s_n(7)).unwrap().into_iter().find(|f| f.dim == 6).unwrap().module()] {
            let rm = m.row_form();
            let SplitOutcome::Irreducible { theta, factor } = mx.try_split(&rm, &mut rng).unwrap() else {
                panic!("expected irreducible");
            };
            assert_eq!(endomorphism_dimension(&rm, &theta, &factor), commutant_dimension(&m));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = Meataxe::with_seed(1).composition_factors(&s_n(6)).unwrap();
        let b = Meataxe::with_seed(1).composition_factors(&s_n(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GF2Module::new(2, vec![BitMatrix::zeros(2, 2)]).is_err());
        assert!(GF2Module::new(2, vec![BitMatrix::identity(3)]).is_err());
        let mx = Meataxe { max_dim: 4, ..Meataxe::default() };
        assert!(matches!(mx.factor_dims(&s_n(5)), Err(Error::BudgetExceeded(_))));
    }
}
