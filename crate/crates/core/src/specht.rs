//! Specht modules of the symmetric group over the integers.
//!
//! Letters are 1-based in every public interface and 0-based internally. A
//! permutation acts on a tableau by relabelling its entries, so
//! `σ·e_t = e_{σt}` and `M(σ)M(τ) = M(σ∘τ)`.
//!
//! Standard polytabloids, ordered lexicographically by column reading word,
//! form the basis. Single polytabloids are straightened by Garnir relations;
//! arbitrary tabloid vectors are decomposed by peeling off leading tabloids.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::gf2::{BitMatrix, GF2Module};
use crate::perm::{Partition, Permutation};

/// Bound on Garnir recursion depth; reaching it indicates a bug.
pub const GARNIR_DEPTH_LIMIT: usize = 4096;

/// Row and column geometry of a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Diagram {
    row_len: Vec<usize>,
    col_len: Vec<usize>,
    offset: Vec<usize>,
}

impl Diagram {
    fn new(shape: &Partition) -> Self {
        let row_len = shape.parts().to_vec();
        let col_len = shape.conjugate().parts().to_vec();
        let mut offset = Vec::with_capacity(row_len.len());
        let mut acc = 0;
        for &r in &row_len {
            offset.push(acc);
            acc += r;
        }
        Diagram { row_len, col_len, offset }
    }

    #[inline]
    fn pos(&self, i: usize, j: usize) -> usize {
        self.offset[i] + j
    }

    fn n(&self) -> usize {
        self.row_len.iter().sum()
    }
}

/// A bijective filling of a Young diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// From 1-based rows, e.g. `[[1,2,6,3],[4,5]]`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lens.is_empty() || lens.contains(&0) || lens.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("row lengths {lens:?} do not form a partition")));
        }
        let n: usize = lens.iter().sum();
        if n > 256 {
            return Err(Error::InvalidParameter(format!("tableau on {n} letters")));
        }
        let mut seen = vec![false; n];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("entries of {rows:?} are not a bijection onto 1..{n}")));
            }
            seen[x - 1] = true;
        }
        let shape = Partition::new(lens)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| (x - 1) as u8).collect()).collect();
        Ok(Tableau { shape, rows })
    }

    fn from_flat(shape: &Partition, diag: &Diagram, flat: &[u8]) -> Self {
        let rows = (0..diag.row_len.len()).map(|i| flat[diag.offset[i]..diag.offset[i] + diag.row_len[i]].to_vec()).collect();
        Tableau { shape: shape.clone(), rows }
    }

    fn flat(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().map(|&x| x as usize + 1).collect()).collect()
    }

    /// 1-based entry at row `i`, column `j` (0-based positions).
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[i][j] as usize + 1
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = (1..self.rows.len()).all(|i| (0..self.rows[i].len()).all(|j| self.rows[i - 1][j] < self.rows[i][j]));
        rows_ok && cols_ok
    }

    /// Entries read down each column, left to right (1-based).
    pub fn column_word(&self) -> Vec<usize> {
        let diag = Diagram::new(&self.shape);
        let mut w = Vec::with_capacity(self.n());
        for (j, &c) in diag.col_len.iter().enumerate() {
            for i in 0..c {
                w.push(self.rows[i][j] as usize + 1);
            }
        }
        w
    }

    pub fn act(&self, sigma: &Permutation) -> Result<Tableau> {
        if sigma.degree() != self.n() {
            return Err(Error::DegreeMismatch { left: sigma.degree(), right: self.n() });
        }
        Ok(self.act_unchecked(sigma))
    }

    fn act_unchecked(&self, sigma: &Permutation) -> Tableau {
        let rows = self.rows.iter().map(|r| r.iter().map(|&x| sigma.image(x as usize) as u8).collect()).collect();
        Tableau { shape: self.shape.clone(), rows }
    }

    pub fn tabloid(&self) -> Tabloid {
        Tabloid::from_rows(self.rows.clone())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        Tableau::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Row-equivalence class of a tableau: each row stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid {
    rows: Vec<Vec<u8>>,
}

impl Tabloid {
    fn from_rows(mut rows: Vec<Vec<u8>>) -> Self {
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        Tabloid { rows }
    }

    /// 1-based sorted rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().map(|&x| x as usize + 1).collect()).collect()
    }

    fn act(&self, sigma: &Permutation) -> Tabloid {
        Tabloid::from_rows(self.rows.iter().map(|r| r.iter().map(|&x| sigma.image(x as usize) as u8).collect()).collect())
    }

    /// Total order in which `{t}` is the largest tabloid of `e_t` for standard
    /// `t`: compare the rows holding the letters from the largest down.
    fn peel_key(&self) -> Vec<u8> {
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut row_of = vec![0u8; n];
        for (i, r) in self.rows.iter().enumerate() {
            for &x in r {
                row_of[x as usize] = i as u8;
            }
        }
        row_of.reverse();
        row_of
    }
}

/// Sparse integer combination of tabloids of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabloidVector {
    shape: Partition,
    terms: HashMap<Tabloid, BigInt>,
}

impl TabloidVector {
    pub fn zero(shape: Partition) -> Self {
        TabloidVector { shape, terms: HashMap::new() }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of tabloids with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Tabloid) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, t: Tabloid, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TabloidVector, c: &BigInt) -> Result<()> {
        if other.shape != self.shape {
            return Err(Error::DimensionMismatch(format!("tabloids of shapes {} and {}", self.shape, other.shape)));
        }
        for (t, x) in &other.terms {
            self.add_term(t.clone(), &(x * c));
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> TabloidVector {
        if c.is_zero() {
            return TabloidVector::zero(self.shape.clone());
        }
        TabloidVector { shape: self.shape.clone(), terms: self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect() }
    }

    pub fn act(&self, sigma: &Permutation) -> TabloidVector {
        TabloidVector { shape: self.shape.clone(), terms: self.terms.iter().map(|(t, x)| (t.act(sigma), x.clone())).collect() }
    }

    /// Terms sorted by tabloid.
    pub fn sorted_terms(&self) -> Vec<(&Tabloid, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

impl Serialize for TabloidVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            rows: Vec<Vec<usize>>,
            coeff: String,
        }
        #[derive(Serialize)]
        struct Raw<'a> {
            shape: &'a Partition,
            terms: Vec<Term>,
        }
        let terms = self.sorted_terms().into_iter().map(|(t, c)| Term { rows: t.rows(), coeff: c.to_string() }).collect();
        Raw { shape: &self.shape, terms }.serialize(s)
    }
}

fn permutation_parity(idx: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] > idx[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// `Σ_{γ in column group} sgn(γ) {γt}`.
pub fn polytabloid_expand(t: &Tableau) -> TabloidVector {
    let diag = Diagram::new(&t.shape);
    let mut out = TabloidVector::zero(t.shape.clone());
    let mut rows = t.rows.clone();
    fn rec(col: usize, diag: &Diagram, rows: &mut Vec<Vec<u8>>, sign: bool, out: &mut TabloidVector) {
        if col == diag.col_len.len() {
            let c = if sign { -BigInt::one() } else { BigInt::one() };
            out.add_term(Tabloid::from_rows(rows.clone()), &c);
            return;
        }
        let len = diag.col_len[col];
        let original: Vec<u8> = (0..len).map(|i| rows[i][col]).collect();
        let mut idx: Vec<usize> = (0..len).collect();
        loop {
            for (i, &k) in idx.iter().enumerate() {
                rows[i][col] = original[k];
            }
            rec(col + 1, diag, rows, sign ^ permutation_parity(&idx), out);
            if !next_permutation(&mut idx) {
                break;
            }
        }
        for (i, &x) in original.iter().enumerate() {
            rows[i][col] = x;
        }
    }
    rec(0, &diag, &mut rows, false, &mut out);
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All standard tableaux of `shape`, ordered lexicographically by column word.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let diag = Diagram::new(shape);
    let n = diag.n();
    let mut out = Vec::new();
    let mut filled = vec![0usize; diag.row_len.len()];
    let mut flat = vec![0u8; n];
    fn rec(letter: usize, n: usize, diag: &Diagram, filled: &mut Vec<usize>, flat: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if letter == n {
            out.push(flat.clone());
            return;
        }
        for i in 0..diag.row_len.len() {
            if filled[i] < diag.row_len[i] && (i == 0 || filled[i - 1] > filled[i]) {
                flat[diag.pos(i, filled[i])] = letter as u8;
                filled[i] += 1;
                rec(letter + 1, n, diag, filled, flat, out);
                filled[i] -= 1;
            }
        }
    }
    let mut flats = Vec::new();
    rec(0, n, &diag, &mut filled, &mut flat, &mut flats);
    out.extend(flats.iter().map(|f| Tableau::from_flat(shape, &diag, f)));
    out.sort_by_cached_key(Tableau::column_word);
    out
}

type Sparse = Arc<Vec<(u32, i64)>>;

fn add_sparse(acc: &mut BTreeMap<u32, i64>, v: &[(u32, i64)], c: i64) -> Result<()> {
    for &(k, x) in v {
        let term = x.checked_mul(c).ok_or_else(overflow)?;
        let e = acc.entry(k).or_insert(0);
        *e = e.checked_add(term).ok_or_else(overflow)?;
        if *e == 0 {
            acc.remove(&k);
        }
    }
    Ok(())
}

fn overflow() -> Error {
    Error::InvalidParameter("straightening coefficient overflow".into())
}

/// The Specht module of one shape: standard basis plus a straightening cache.
pub struct SpechtModule {
    shape: Partition,
    diag: Diagram,
    basis: Vec<Tableau>,
    index: HashMap<Vec<u8>, u32>,
    cache: Mutex<HashMap<Vec<u8>, Sparse>>,
}

impl fmt::Debug for SpechtModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpechtModule").field("shape", &self.shape).field("dim", &self.basis.len()).finish()
    }
}

impl SpechtModule {
    pub fn new(shape: &Partition) -> Result<Self> {
        if shape.n() > 256 {
            return Err(Error::InvalidParameter(format!("shape {shape} has more than 256 letters")));
        }
        let diag = Diagram::new(shape);
        let basis = standard_tableaux(shape);
        let index = basis.iter().enumerate().map(|(i, t)| (t.flat(), i as u32)).collect();
        Ok(SpechtModule { shape: shape.clone(), diag, basis, index, cache: Mutex::new(HashMap::new()) })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    /// Sorts each column (returning the parity) and orders equal-length
    /// columns by their top entry, which leaves `e_t` unchanged.
    fn normalize(&self, flat: &mut [u8]) -> bool {
        let d = &self.diag;
        let mut odd = false;
        for (j, &len) in d.col_len.iter().enumerate() {
            // insertion sort keeps the parity count simple
            for a in 1..len {
                let mut b = a;
                while b > 0 && flat[d.pos(b - 1, j)] > flat[d.pos(b, j)] {
                    flat.swap(d.pos(b - 1, j), d.pos(b, j));
                    odd = !odd;
                    b -= 1;
                }
            }
        }
        let ncols = d.col_len.len();
        let mut start = 0;
        while start < ncols {
            let len = d.col_len[start];
            let mut end = start;
            while end < ncols && d.col_len[end] == len {
                end += 1;
            }
            if end - start > 1 {
                let mut cols: Vec<Vec<u8>> = (start..end).map(|j| (0..len).map(|i| flat[d.pos(i, j)]).collect()).collect();
                cols.sort_unstable();
                for (k, col) in cols.iter().enumerate() {
                    for (i, &x) in col.iter().enumerate() {
                        flat[d.pos(i, start + k)] = x;
                    }
                }
            }
            start = end;
        }
        odd
    }

    /// First row descent of a normalized tableau: leftmost column, topmost row.
    fn pivot(&self, flat: &[u8]) -> Option<(usize, usize)> {
        let d = &self.diag;
        for j in 0..d.col_len.len().saturating_sub(1) {
            for i in 0..d.col_len[j + 1] {
                if flat[d.pos(i, j)] > flat[d.pos(i, j + 1)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn straighten_normal(&self, flat: &[u8], depth: usize) -> Result<Sparse> {
        if let Some(&k) = self.index.get(flat) {
            return Ok(Arc::new(vec![(k, 1)]));
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(flat) {
            return Ok(v.clone());
        }
        if depth > GARNIR_DEPTH_LIMIT {
            return Err(Error::StraighteningDepth(depth));
        }
        let (i, j) = self.pivot(flat).ok_or_else(|| {
            Error::InvalidParameter("normalized tableau without descent is not in the standard basis".into())
        })?;
        let d = &self.diag;
        let a_slots: Vec<usize> = (i..d.col_len[j]).map(|r| d.pos(r, j)).collect();
        let b_slots: Vec<usize> = (0..=i).map(|r| d.pos(r, j + 1)).collect();
        let slots: Vec<usize> = a_slots.iter().chain(&b_slots).copied().collect();
        let letters: Vec<u8> = slots.iter().map(|&p| flat[p]).collect();
        let na = a_slots.len();
        let total = slots.len();
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        // e_t = -Σ_{π ≠ id} sgn(π) e_{πt} over coset representatives of S_A × S_B
        let mut choose: Vec<usize> = (0..na).collect();
        loop {
            let is_identity = choose.iter().enumerate().all(|(k, &c)| k == c);
            if !is_identity {
                let mut in_a = vec![false; total];
                for &c in &choose {
                    in_a[c] = true;
                }
                let mut a_idx: Vec<usize> = (0..total).filter(|&k| in_a[k]).collect();
                let mut b_idx: Vec<usize> = (0..total).filter(|&k| !in_a[k]).collect();
                a_idx.sort_by_key(|&k| letters[k]);
                b_idx.sort_by_key(|&k| letters[k]);
                let order: Vec<usize> = a_idx.into_iter().chain(b_idx).collect();
                let mut next = flat.to_vec();
                for (slot, &k) in slots.iter().zip(&order) {
                    next[*slot] = letters[k];
                }
                let odd = permutation_parity(&order) ^ self.normalize(&mut next);
                let sub = self.straighten_normal(&next, depth + 1)?;
                add_sparse(&mut acc, &sub, if odd { 1 } else { -1 })?;
            }
            if !next_combination(&mut choose, total) {
                break;
            }
        }
        let v: Sparse = Arc::new(acc.into_iter().collect());
        self.cache.lock().expect("cache lock").insert(flat.to_vec(), v.clone());
        Ok(v)
    }

    fn check_tableau(&self, t: &Tableau) -> Result<()> {
        if t.shape != self.shape {
            return Err(Error::DimensionMismatch(format!("tableau of shape {} in module {}", t.shape, self.shape)));
        }
        Ok(())
    }

    /// Coordinates of `e_t` on the standard basis, sparse.
    pub fn straighten_sparse(&self, t: &Tableau) -> Result<Vec<(usize, i64)>> {
        self.check_tableau(t)?;
        let mut flat = t.flat();
        let odd = self.normalize(&mut flat);
        let v = self.straighten_normal(&flat, 0)?;
        Ok(v.iter().map(|&(k, x)| (k as usize, if odd { -x } else { x })).collect())
    }

    /// Coordinates of `e_t` on the standard basis.
    pub fn straighten_tableau(&self, t: &Tableau) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (k, x) in self.straighten_sparse(t)? {
            out[k] = BigInt::from(x);
        }
        Ok(out)
    }

    /// Coordinates of an element of the Specht submodule of `M^λ`, found by
    /// repeatedly removing the standard polytabloid of the leading tabloid.
    pub fn straighten_vector(&self, v: &TabloidVector) -> Result<Vec<BigInt>> {
        if v.shape != self.shape {
            return Err(Error::DimensionMismatch(format!("vector of shape {} in module {}", v.shape, self.shape)));
        }
        let mut rest = v.clone();
        let mut coords = vec![BigInt::zero(); self.dim()];
        while let Some(lead) = rest.terms.keys().max_by_key(|t| t.peel_key()).cloned() {
            let flat: Vec<u8> = lead.rows.iter().flatten().copied().collect();
            let k = *self.index.get(&flat).ok_or_else(|| {
                Error::InvalidParameter("tabloid vector does not lie in the Specht module".into())
            })? as usize;
            let c = rest.coeff(&lead);
            let e = polytabloid_expand(&self.basis[k]);
            rest.add_scaled(&e, &-&c)?;
            coords[k] += c;
        }
        Ok(coords)
    }

    /// Re-expands coordinates into tabloids.
    pub fn expand_coords(&self, coords: &[BigInt]) -> Result<TabloidVector> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for dimension {}", coords.len(), self.dim())));
        }
        let mut out = TabloidVector::zero(self.shape.clone());
        for (t, c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                out.add_scaled(&polytabloid_expand(t), c)?;
            }
        }
        Ok(out)
    }

    /// Matrix of `σ`: column `j` holds the coordinates of `e_{σ t_j}`.
    pub fn action_matrix(&self, sigma: &Permutation) -> Result<IntMatrix> {
        if sigma.degree() != self.n() {
            return Err(Error::DegreeMismatch { left: sigma.degree(), right: self.n() });
        }
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for (j, t) in self.basis.iter().enumerate() {
            for (i, x) in self.straighten_sparse(&t.act_unchecked(sigma))? {
                m.set(i, j, BigInt::from(x));
            }
        }
        Ok(m)
    }

    pub fn rep_matrices(&self, perms: &[Permutation]) -> Result<RepMatrices> {
        let matrices = perms.iter().map(|p| self.action_matrix(p)).collect::<Result<Vec<_>>>()?;
        Ok(RepMatrices {
            shape: self.shape.clone(),
            basis: self.basis.clone(),
            twisted: false,
            permutations: perms.to_vec(),
            matrices,
        })
    }

    /// Coordinates of `E_{σ,t}`.
    pub fn fixed_vector_coords(&self, sigma: &Permutation, t: &Tableau) -> Result<Vec<BigInt>> {
        self.check_tableau(t)?;
        if sigma.degree() != self.n() {
            return Err(Error::DegreeMismatch { left: sigma.degree(), right: self.n() });
        }
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        let mut cur = t.clone();
        for _ in 0..sigma.order() {
            let v: Vec<(u32, i64)> = self.straighten_sparse(&cur)?.into_iter().map(|(k, x)| (k as u32, x)).collect();
            add_sparse(&mut acc, &v, 1)?;
            cur = cur.act_unchecked(sigma);
        }
        let mut out = vec![BigInt::zero(); self.dim()];
        for (k, x) in acc {
            out[k as usize] = BigInt::from(x);
        }
        Ok(out)
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Representation matrices for a list of permutations, with the basis used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepMatrices {
    pub shape: Partition,
    pub basis: Vec<Tableau>,
    /// Whether the sign twist has been applied (matrices of the conjugate shape's module).
    pub twisted: bool,
    pub permutations: Vec<Permutation>,
    pub matrices: Vec<IntMatrix>,
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Tensor with the sign representation: odd permutations get negated matrices.
pub fn sign_twist(r: &RepMatrices) -> RepMatrices {
    let matrices = r
        .permutations
        .iter()
        .zip(&r.matrices)
        .map(|(p, m)| if p.sign() < 0 { m.neg() } else { m.clone() })
        .collect();
    RepMatrices { twisted: !r.twisted, matrices, ..r.clone() }
}

/// Entrywise reduction mod 2.
pub fn rep_mod2(r: &RepMatrices) -> Result<GF2Module> {
    let gens = r.matrices.iter().map(|m| BitMatrix::from_bools(&m.mod2_bits())).collect::<Result<Vec<_>>>()?;
    GF2Module::new(r.dim(), gens)
}

/// `E_{σ,t} = Σ_{j < ord σ} e_{σʲ t}` in the tabloid basis.
pub fn fixed_vector_e(sigma: &Permutation, t: &Tableau) -> Result<TabloidVector> {
    if sigma.degree() != t.n() {
        return Err(Error::DegreeMismatch { left: sigma.degree(), right: t.n() });
    }
    let mut out = TabloidVector::zero(t.shape.clone());
    let mut cur = t.clone();
    for _ in 0..sigma.order() {
        out.add_scaled(&polytabloid_expand(&cur), &BigInt::one())?;
        cur = cur.act_unchecked(sigma);
    }
    Ok(out)
}

/// The three module families that appear in the audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpechtFamily {
    /// `(n-2,1,1)`
    #[serde(rename = "n-2,1,1")]
    Hook,
    /// `(n-2,2)`
    #[serde(rename = "n-2,2")]
    TwoRow,
    /// `(n-2,2)'`, realised as the sign twist of `(n-2,2)`
    #[serde(rename = "n-2,2'")]
    TwoRowConjugate,
}

impl SpechtFamily {
    pub const ALL: [SpechtFamily; 3] = [SpechtFamily::Hook, SpechtFamily::TwoRow, SpechtFamily::TwoRowConjugate];

    pub fn tag(&self) -> &'static str {
        match self {
            SpechtFamily::Hook => "n-2,1,1",
            SpechtFamily::TwoRow => "n-2,2",
            SpechtFamily::TwoRowConjugate => "n-2,2'",
        }
    }

    /// The partition whose module is built directly (before any twist).
    pub fn base_shape(&self, n: usize) -> Result<Partition> {
        match self {
            SpechtFamily::Hook => Partition::hook_two(n),
            SpechtFamily::TwoRow | SpechtFamily::TwoRowConjugate => Partition::two_row(n),
        }
    }

    /// The partition the family denotes.
    pub fn shape(&self, n: usize) -> Result<Partition> {
        match self {
            SpechtFamily::TwoRowConjugate => Ok(Partition::two_row(n)?.conjugate()),
            _ => self.base_shape(n),
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, SpechtFamily::TwoRowConjugate)
    }
}

impl fmt::Display for SpechtFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tag())
    }
}

impl FromStr for SpechtFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        let t = t.replace('−', "-").replace('′', "'");
        match t.as_str() {
            "n-2,1,1" | "hook" => Ok(SpechtFamily::Hook),
            "n-2,2" | "two-row" => Ok(SpechtFamily::TwoRow),
            "n-2,2'" | "conjugate" | "two-row-conjugate" => Ok(SpechtFamily::TwoRowConjugate),
            _ => Err(Error::Parse(format!("unknown Specht family '{s}'"))),
        }
    }
}

/// Matrices of `perms` on the family's module at degree `n`.
pub fn family_matrices(module: &SpechtModule, family: SpechtFamily, perms: &[Permutation]) -> Result<RepMatrices> {
    let r = module.rep_matrices(perms)?;
    Ok(if family.is_twisted() { sign_twist(&r) } else { r })
}

/// A verified nonzero vector fixed by `σ`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedVector {
    pub permutation: Permutation,
    pub family: SpechtFamily,
    pub tableau: Tableau,
    /// How the tableau was chosen.
    pub case: String,
    /// True when the case rule did not apply and a basis search was used.
    pub fallback: bool,
    pub vector: TabloidVector,
    #[serde(serialize_with = "serialize_bigints")]
    pub coords: Vec<BigInt>,
    /// Number of nonzero coordinates on the standard basis.
    pub support: usize,
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

struct CycleData {
    fixed: Vec<usize>,
    /// Nontrivial cycles sorted by length, then first point; each starts at its smallest point.
    cycles: Vec<Vec<usize>>,
}

impl CycleData {
    fn new(sigma: &Permutation) -> Self {
        let mut fixed = Vec::new();
        let mut cycles = Vec::new();
        for c in sigma.cycles() {
            if c.len() == 1 {
                fixed.push(c[0]);
            } else {
                cycles.push(c);
            }
        }
        cycles.sort_by_key(|c| (c.len(), c[0]));
        CycleData { fixed, cycles }
    }

    fn smallest(&self) -> usize {
        self.cycles.first().map_or(0, Vec::len)
    }

    /// A letter outside the first cycle, moved by σ: the last point of the
    /// next even-length cycle if there is one, else of the next cycle. An odd
    /// cycle makes the alternating sum of the transposition case cancel.
    fn other_letter(&self) -> Option<usize> {
        let rest = self.cycles.get(1..)?;
        let c = rest.iter().find(|c| c.len() % 2 == 0).or(rest.first())?;
        c.last().copied()
    }
}

/// Tableau of shape `(n-2,1,1)` with the given first column (0-based letters).
fn hook_tableau(n: usize, col: [usize; 3]) -> Tableau {
    let mut row0 = vec![col[0] as u8];
    row0.extend((0..n).filter(|x| !col.contains(x)).map(|x| x as u8));
    Tableau {
        shape: Partition::hook_two(n).expect("n >= 3"),
        rows: vec![row0, vec![col[1] as u8], vec![col[2] as u8]],
    }
}

/// Tableau of shape `(n-2,2)` with the given 2x2 block `[[a,b],[c,d]]`.
fn two_row_tableau(n: usize, block: [usize; 4]) -> Tableau {
    let mut row0 = vec![block[0] as u8, block[1] as u8];
    row0.extend((0..n).filter(|x| !block.contains(x)).map(|x| x as u8));
    Tableau {
        shape: Partition::two_row(n).expect("n >= 4"),
        rows: vec![row0, vec![block[2] as u8, block[3] as u8]],
    }
}

/// Case selection for `(n-2,1,1)`: returns the tableau and whether the
/// vector is `e_t` itself (σ stabilises it) or `E_{σ,t}`.
fn hook_case(n: usize, cd: &CycleData) -> Option<(Tableau, &'static str)> {
    let f = &cd.fixed;
    let k = cd.smallest();
    let first = cd.cycles.first();
    let col: [usize; 3];
    let label;
    if f.len() >= 3 {
        col = [f[0], f[1], f[2]];
        label = "three fixed points in the column";
    } else if k == 3 {
        let c = first?;
        col = [c[0], c[1], c[2]];
        label = "smallest cycle is a 3-cycle";
    } else if f.len() == 2 {
        let c = first?;
        if cd.cycles.len() == 1 {
            col = [c[0], f[0], f[1]];
            label = "2 fixed points, (n-2)-cycle";
        } else if k == 2 {
            // σ = (a b)π: column (1,2,a), b in the first row
            col = [f[0], f[1], c[0]];
            label = "2 fixed points, smallest cycle a transposition";
        } else {
            col = [f[0], f[1], c[0]];
            label = "2 fixed points, smallest cycle of length >= 4";
        }
    } else if f.len() == 1 {
        let c = first?;
        if cd.cycles.len() == 1 {
            col = [c[0], c[c.len() - 1], f[0]];
            label = "1 fixed point, (n-1)-cycle";
        } else if k == 2 {
            col = [f[0], cd.other_letter()?, c[1]];
            label = "1 fixed point, smallest cycle a transposition";
        } else {
            col = [f[0], c[k - 2], c[k - 1]];
            label = "1 fixed point, smallest cycle of length >= 4";
        }
    } else {
        let c = first?;
        if cd.cycles.len() == 1 {
            col = [c[0], c[n - 2], c[n - 1]];
            label = "n-cycle";
        } else if k == 2 {
            col = [c[0], cd.other_letter()?, c[1]];
            label = "derangement, smallest cycle a transposition";
        } else {
            col = [c[0], c[k - 2], c[k - 1]];
            label = "derangement, smallest cycle of length >= 4";
        }
    }
    Some((hook_tableau(n, col), label))
}

/// Case selection for `(n-2,2)`: fixed points go into the 2x2 block first,
/// then consecutive points of the cycles, shortest cycle first.
fn two_row_case(n: usize, cd: &CycleData) -> Option<(Tableau, &'static str)> {
    let f = &cd.fixed;
    if f.len() >= 4 {
        return Some((two_row_tableau(n, [f[0], f[1], f[2], f[3]]), "four fixed points in the 2x2 block"));
    }
    if f.is_empty() && n % 2 == 0 && cd.cycles.len() == 2 && cd.cycles[0].len() == 2 {
        // σ = (a b)(c_1 ... c_{n-2}): first row a, b, c_1..c_{n-4}; second row c_{n-3}, c_{n-2}
        let (ab, c) = (&cd.cycles[0], &cd.cycles[1]);
        return Some((two_row_tableau(n, [ab[0], ab[1], c[n - 4], c[n - 3]]), "transposition times (n-2)-cycle"));
    }
    let mut seq: Vec<usize> = f.clone();
    seq.extend(cd.cycles.iter().flatten());
    let label = match f.len() {
        0 => "derangement, block filled along the cycles",
        1 => "1 fixed point, block filled along the cycles",
        2 => "2 fixed points, block filled along the cycles",
        _ => "3 fixed points, block filled along the cycles",
    };
    Some((two_row_tableau(n, [seq[0], seq[1], seq[2], seq[3]]), label))
}

/// Builds `E_{σ,t}` for the case-selected tableau, verifies it is nonzero and
/// fixed by `σ`, and falls back to a search over standard tableaux if the
/// case rule yields zero.
pub fn build_fixed_vector(module: &SpechtModule, sigma: &Permutation, family: SpechtFamily) -> Result<FixedVector> {
    let n = module.n();
    if sigma.degree() != n {
        return Err(Error::DegreeMismatch { left: sigma.degree(), right: n });
    }
    if n < 5 {
        return Err(Error::InvalidParameter(format!("fixed vectors are built for n >= 5, got {n}")));
    }
    let expected = family.base_shape(n)?;
    if family.is_twisted() || *module.shape() != expected {
        return Err(Error::InvalidParameter(format!("fixed vectors are built for (n-2,1,1) and (n-2,2), got {family} on {}", module.shape())));
    }
    let cd = CycleData::new(sigma);
    let chosen = match family {
        SpechtFamily::Hook => hook_case(n, &cd),
        _ => two_row_case(n, &cd),
    };
    let m = module.action_matrix(sigma)?;
    let verify = |t: &Tableau| -> Result<Option<Vec<BigInt>>> {
        let coords = module.fixed_vector_coords(sigma, t)?;
        if coords.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        if m.mul_vec(&coords)? != coords {
            return Err(Error::FixedVector(format!("E_(σ,t) for σ = {sigma}, t = {t} is not fixed")));
        }
        Ok(Some(coords))
    };
    let mut found = None;
    if let Some((t, label)) = chosen {
        if let Some(coords) = verify(&t)? {
            found = Some((t, label.to_string(), false, coords));
        }
    }
    if found.is_none() {
        for t in module.basis() {
            if let Some(coords) = verify(t)? {
                found = Some((t.clone(), "search over standard tableaux".to_string(), true, coords));
                break;
            }
        }
    }
    let (tableau, case, fallback, coords) =
        found.ok_or_else(|| Error::FixedVector(format!("no nonzero E_(σ,t) for σ = {sigma} on {family}")))?;
    let vector = fixed_vector_e(sigma, &tableau)?;
    if vector.act(sigma) != vector {
        return Err(Error::FixedVector(format!("tabloid vector for σ = {sigma} is not fixed")));
    }
    let support = coords.iter().filter(|c| !c.is_zero()).count();
    Ok(FixedVector { permutation: sigma.clone(), family, tableau, case, fallback, vector, coords, support })
}

/// Irreducible character value `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn character_mn(shape: &Partition, cycle_type: &Partition) -> Result<BigInt> {
    if shape.n() != cycle_type.n() {
        return Err(Error::DegreeMismatch { left: shape.n(), right: cycle_type.n() });
    }
    let l = shape.len();
    let beta: Vec<usize> = shape.parts().iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut memo: HashMap<(Vec<usize>, usize), i128> = HashMap::new();
    fn rec(beta: Vec<usize>, parts: &[usize], k: usize, memo: &mut HashMap<(Vec<usize>, usize), i128>) -> i128 {
        if k == parts.len() {
            return 1;
        }
        let key = (beta, k);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let beta = &key.0;
        let r = parts[k];
        let mut total = 0i128;
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
            let mut next = beta.clone();
            next[idx] = b - r;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let v = rec(next, parts, k + 1, memo);
            total += if between % 2 == 0 { v } else { -v };
        }
        memo.insert(key, total);
        total
    }
    Ok(BigInt::from(rec(beta, cycle_type.parts(), 0, &mut memo)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn tab(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn term(rows: &[&[usize]]) -> Tabloid {
        tab(rows).tabloid()
    }

    #[test]
    fn standard_tableaux_counts() {
        assert_eq!(standard_tableaux(&p(&[3, 2])).len(), 5);
        assert_eq!(standard_tableaux(&p(&[3, 1, 1])).len(), 6);
        assert_eq!(standard_tableaux(&p(&[6])).len(), 1);
        for n in 5..=13 {
            let two = standard_tableaux(&Partition::two_row(n).unwrap()).len();
            let hook = standard_tableaux(&Partition::hook_two(n).unwrap()).len();
            assert_eq!(two, n * (n - 3) / 2);
            assert_eq!(hook, n * (n - 3) / 2 + 1);
        }
        let all = standard_tableaux(&p(&[3, 2, 1]));
        assert!(all.iter().all(Tableau::is_standard));
        assert!(all.windows(2).all(|w| w[0].column_word() < w[1].column_word()));
    }

    #[test]
    fn tableau_validation_and_serde() {
        assert!(Tableau::new(vec![vec![1, 2], vec![2]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        let t = tab(&[&[1, 2, 6, 3], &[4, 5]]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[1,2,6,3],[4,5]]");
        assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), t);
    }

    #[test]
    fn expansion_examples() {
        let e = polytabloid_expand(&tab(&[&[1, 2, 3]]));
        assert_eq!(e.len(), 1);
        let e = polytabloid_expand(&tab(&[&[1, 2], &[3]]));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&term(&[&[1, 2], &[3]])), BigInt::one());
        assert_eq!(e.coeff(&term(&[&[3, 2], &[1]])), -BigInt::one());
        // column (a,b,c) of (n-2,1,1): cyclic rotations +, transpositions -
        let e = polytabloid_expand(&tab(&[&[1, 4, 5], &[2], &[3]]));
        assert_eq!(e.len(), 6);
        let plus = [[1, 2, 3], [2, 3, 1], [3, 1, 2]];
        let minus = [[1, 3, 2], [3, 2, 1], [2, 1, 3]];
        for (col, sign) in plus.iter().map(|c| (c, 1)).chain(minus.iter().map(|c| (c, -1))) {
            let t = term(&[&[col[0], 4, 5], &[col[1]], &[col[2]]]);
            assert_eq!(e.coeff(&t), BigInt::from(sign), "{col:?}");
        }
    }

    #[test]
    fn straighten_standard_is_unit() {
        let m = SpechtModule::new(&p(&[4, 2])).unwrap();
        for (k, t) in m.basis().iter().enumerate() {
            let c = m.straighten_tableau(t).unwrap();
            for (i, x) in c.iter().enumerate() {
                assert_eq!(*x, BigInt::from((i == k) as i32));
            }
        }
    }

    #[test]
    fn two_by_two_garnir_identity() {
        // [2 1 / 4 5] = [1 2 / 4 5] - [1 3 / 2 5] + [1 3 / 2 4], first-row rest increasing
        let m = SpechtModule::new(&p(&[4, 2])).unwrap();
        let lhs = m.straighten_tableau(&tab(&[&[2, 1, 3, 6], &[4, 5]])).unwrap();
        let mut rhs = vec![BigInt::zero(); m.dim()];
        for (t, c) in [
            (tab(&[&[1, 2, 3, 6], &[4, 5]]), 1),
            (tab(&[&[1, 3, 4, 6], &[2, 5]]), -1),
            (tab(&[&[1, 3, 5, 6], &[2, 4]]), 1),
        ] {
            for (x, y) in rhs.iter_mut().zip(m.straighten_tableau(&t).unwrap()) {
                *x += y * c;
            }
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn n_cycle_on_standard_shape_gives_zero() {
        for n in 4..=8 {
            let m = SpechtModule::new(&p(&[n - 1, 1])).unwrap();
            let sigma = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
            let t = m.basis()[0].clone();
            assert!(m.fixed_vector_coords(&sigma, &t).unwrap().iter().all(Zero::is_zero));
            assert!(fixed_vector_e(&sigma, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn peeling_agrees_with_garnir() {
        for shape in [p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1]), p(&[4, 2]), p(&[4, 1, 1])] {
            let m = SpechtModule::new(&shape).unwrap();
            let n = shape.n();
            let sigma = Permutation::from_images((0..n).map(|i| (i + 2) % n).collect()).unwrap();
            for t in m.basis() {
                let u = t.act(&sigma).unwrap();
                let e = polytabloid_expand(&u);
                assert_eq!(m.straighten_vector(&e).unwrap(), m.straighten_tableau(&u).unwrap());
            }
        }
    }

    #[test]
    fn sign_twist_and_trivial_shapes() {
        let m = SpechtModule::new(&p(&[5])).unwrap();
        let tr = Permutation::from_cycles(5, &[&[1, 2]]).unwrap();
        let r = sign_twist(&m.rep_matrices(&[tr.clone()]).unwrap());
        assert_eq!(r.matrices[0], IntMatrix::from_rows(&[vec![-1i64]]).unwrap());
        let c3 = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        let m2 = SpechtModule::new(&p(&[3, 2])).unwrap();
        let base = m2.rep_matrices(&[c3.clone()]).unwrap();
        assert_eq!(sign_twist(&base).matrices, base.matrices);
        // (3,2)' at the class of (123)(45)
        let s = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        let tw = family_matrices(&m2, SpechtFamily::TwoRowConjugate, &[s]).unwrap();
        assert_eq!(tw.matrices[0].det_one_minus().unwrap(), BigInt::from(6));
    }

    #[test]
    fn character_examples() {
        assert_eq!(character_mn(&p(&[5]), &p(&[3, 2])).unwrap(), BigInt::one());
        assert_eq!(character_mn(&p(&[1, 1, 1, 1, 1]), &p(&[2, 1, 1, 1])).unwrap(), -BigInt::one());
        assert_eq!(character_mn(&p(&[3, 2]), &p(&[1, 1, 1, 1, 1])).unwrap(), BigInt::from(5));
        let m = SpechtModule::new(&p(&[3, 2])).unwrap();
        let s = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(m.action_matrix(&s).unwrap().trace().unwrap(), character_mn(&p(&[3, 2]), &p(&[3, 2])).unwrap());
    }

    #[test]
    fn one_transposition_case_example() {
        // n = 7, σ = (3 4)(5 6 7) fixing 1, 2: E = (m/2)([1/2/3] + [1/2/4]) with m = 6
        let m = SpechtModule::new(&Partition::hook_two(7).unwrap()).unwrap();
        let sigma = Permutation::from_cycles(7, &[&[3, 4], &[5, 6, 7]]).unwrap();
        let fv = build_fixed_vector(&m, &sigma, SpechtFamily::Hook).unwrap();
        assert!(!fv.fallback);
        assert_eq!(fv.tableau.rows()[1..], [vec![2], vec![3]]);
        let a = m.straighten_tableau(&tab(&[&[1, 4, 5, 6, 7], &[2], &[3]])).unwrap();
        let b = m.straighten_tableau(&tab(&[&[1, 3, 5, 6, 7], &[2], &[4]])).unwrap();
        let expect: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| (x + y) * 3).collect();
        assert_eq!(fv.coords, expect);
    }

    #[test]
    fn identity_fixed_vector_is_e_t() {
        let m = SpechtModule::new(&Partition::hook_two(6).unwrap()).unwrap();
        let id = Permutation::identity(6);
        let t = m.basis()[2].clone();
        assert_eq!(fixed_vector_e(&id, &t).unwrap(), polytabloid_expand(&t));
    }

    #[test]
    fn family_parsing() {
        assert_eq!("(n-2,1,1)".parse::<SpechtFamily>().unwrap(), SpechtFamily::Hook);
        assert_eq!("n−2,2′".parse::<SpechtFamily>().unwrap(), SpechtFamily::TwoRowConjugate);
        assert!("(3,2)".parse::<SpechtFamily>().is_err());
        assert_eq!(SpechtFamily::TwoRowConjugate.shape(5).unwrap(), p(&[2, 2, 1]));
    }
}
