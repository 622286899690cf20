//! Eigenvalue-1 audits.
//!
//! A representation is unisingular when every element has eigenvalue 1, i.e.
//! `det(I - M) = 0`. The determinant is a class function, so one matrix per
//! conjugacy class suffices.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::gf2::{BitMatrix, GF2Module, GF2Poly, Meataxe};
use crate::perm::{class_reps_symmetric, Partition, PermGroup, Permutation};
use crate::specht::{SpechtFamily, SpechtModule};
use crate::symplectic::SymplecticSpace;

/// Largest `n` audited by default; larger values need the extended flag.
pub const DEFAULT_MAX_N: usize = 13;
pub const EXTENDED_MAX_N: usize = 17;
/// Largest group accepted by the subgroup census.
pub const CENSUS_MAX_ELEMENTS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    Integers,
    Gf2,
}

/// A matrix over one of the two audit rings.
#[derive(Clone, Debug)]
pub enum AuditMatrix {
    Int(IntMatrix),
    Gf2(BitMatrix),
}

/// Identification of a conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub label: String,
    pub size: u128,
    pub order: u64,
    pub representative: String,
}

impl ClassInfo {
    pub fn of_permutation(label: impl Into<String>, size: u128, rep: &Permutation) -> Self {
        ClassInfo { label: label.into(), size, order: rep.order(), representative: rep.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    #[serde(flatten)]
    pub class: ClassInfo,
    /// `det(I - M)` over the integers, or its reduction in GF(2).
    pub det_one_minus: String,
    pub eig1_algebraic: usize,
    pub eig1_geometric: usize,
    /// Characteristic polynomial in GF(2) hex form (GF(2) audits only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charpoly_hex: Option<String>,
    pub has_eigenvalue_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub id: String,
    pub dimension: usize,
    pub ring: Ring,
    pub classes: Vec<ClassRecord>,
    pub unisingular: bool,
    /// Labels of classes without eigenvalue 1.
    pub offenders: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absolutely_irreducible: Option<bool>,
}

impl AuditReport {
    pub fn class(&self, label: &str) -> Option<&ClassRecord> {
        self.classes.iter().find(|c| c.class.label == label)
    }
}

fn audit_int(info: ClassInfo, m: &IntMatrix) -> Result<ClassRecord> {
    let det = m.det_one_minus()?;
    let mult = m.eig1_multiplicity()?;
    Ok(ClassRecord {
        class: info,
        has_eigenvalue_one: det.is_zero(),
        det_one_minus: det.to_string(),
        eig1_algebraic: mult.algebraic,
        eig1_geometric: mult.geometric,
        charpoly_hex: None,
    })
}

fn audit_bits(info: ClassInfo, m: &BitMatrix) -> Result<ClassRecord> {
    let chi = m.charpoly()?;
    let det = chi.eval_at_one();
    let mut algebraic = 0;
    let mut rest = chi.clone();
    let xp1 = GF2Poly::x_plus_one();
    loop {
        let (q, r) = rest.div_rem(&xp1);
        if !r.is_zero() || rest.degree().unwrap_or(0) == 0 {
            break;
        }
        algebraic += 1;
        rest = q;
    }
    let geometric = m.plus_identity()?.nullity();
    Ok(ClassRecord {
        class: info,
        det_one_minus: if det { "1" } else { "0" }.to_string(),
        eig1_algebraic: algebraic,
        eig1_geometric: geometric,
        charpoly_hex: Some(chi.to_hex()),
        has_eigenvalue_one: !det,
    })
}

/// Audits one matrix per class. Records keep the input order.
pub fn audit(id: impl Into<String>, ring: Ring, items: Vec<(ClassInfo, AuditMatrix)>) -> Result<AuditReport> {
    let mut dimension = None;
    for (_, m) in &items {
        let (r, d) = match m {
            AuditMatrix::Int(x) => (Ring::Integers, x.rows()),
            AuditMatrix::Gf2(x) => (Ring::Gf2, x.rows()),
        };
        if r != ring {
            return Err(Error::InvalidParameter(format!("matrix over {r:?} in an audit over {ring:?}")));
        }
        if *dimension.get_or_insert(d) != d {
            return Err(Error::DimensionMismatch(format!("class matrices of dimensions {} and {d}", dimension.unwrap_or(0))));
        }
    }
    let classes = items
        .into_par_iter()
        .map(|(info, m)| match m {
            AuditMatrix::Int(x) => audit_int(info, &x),
            AuditMatrix::Gf2(x) => audit_bits(info, &x),
        })
        .collect::<Result<Vec<_>>>()?;
    let offenders: Vec<String> = classes.iter().filter(|c| !c.has_eigenvalue_one).map(|c| c.class.label.clone()).collect();
    Ok(AuditReport {
        id: id.into(),
        dimension: dimension.unwrap_or(0),
        ring,
        unisingular: offenders.is_empty(),
        offenders,
        classes,
        irreducible: None,
        absolutely_irreducible: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpechtGroup {
    Symmetric,
    Alternating,
}

impl std::str::FromStr for SpechtGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "").as_str() {
            "s" | "sn" | "symmetric" => Ok(SpechtGroup::Symmetric),
            "a" | "an" | "alternating" => Ok(SpechtGroup::Alternating),
            _ => Err(Error::Parse(format!("unknown group '{s}' (expected S_n or A_n)"))),
        }
    }
}

fn check_n(n: usize, extended: bool) -> Result<()> {
    let max = if extended { EXTENDED_MAX_N } else { DEFAULT_MAX_N };
    if !(5..=max).contains(&n) {
        return Err(Error::InvalidParameter(format!("n = {n} outside 5..={max}{}", if extended { "" } else { " (use extended mode for larger n)" })));
    }
    Ok(())
}

/// Matrix of the family's module at one class representative.
pub fn specht_class_matrix(module: &SpechtModule, family: SpechtFamily, rep: &Permutation) -> Result<IntMatrix> {
    let m = module.action_matrix(rep)?;
    Ok(if family.is_twisted() && rep.sign() < 0 { m.neg() } else { m })
}

/// Audits a Specht family over the classes of `S_n` (or the even classes, for `A_n`).
///
/// For `A_n` the records are the `S_n`-classes of even permutations; classes
/// that split in `A_n` share their determinant, so this is exhaustive.
pub fn audit_specht(n: usize, family: SpechtFamily, group: SpechtGroup, extended: bool) -> Result<AuditReport> {
    check_n(n, extended)?;
    let module = SpechtModule::new(&family.base_shape(n)?)?;
    let reps: Vec<(Partition, Permutation)> = class_reps_symmetric(n)
        .into_iter()
        .filter(|(ct, _)| group == SpechtGroup::Symmetric || ct.cycle_type_sign() > 0)
        .collect();
    let items = reps
        .par_iter()
        .map(|(ct, rep)| {
            let m = specht_class_matrix(&module, family, rep)?;
            Ok((ClassInfo::of_permutation(ct.to_string(), ct.class_size(), rep), AuditMatrix::Int(m)))
        })
        .collect::<Result<Vec<_>>>()?;
    let gname = match group {
        SpechtGroup::Symmetric => "S",
        SpechtGroup::Alternating => "A",
    };
    audit(format!("specht {} {gname}{n}", family), Ring::Integers, items)
}

/// `det(I - M)` of the family's module at the class with the given cycle type.
pub fn specht_class_det(n: usize, family: SpechtFamily, cycle_type: &Partition, extended: bool) -> Result<BigInt> {
    check_n(n, extended)?;
    if cycle_type.n() != n {
        return Err(Error::DegreeMismatch { left: cycle_type.n(), right: n });
    }
    let module = SpechtModule::new(&family.base_shape(n)?)?;
    let rep = crate::perm::canonical_rep(cycle_type);
    specht_class_matrix(&module, family, &rep)?.det_one_minus()
}

/// Audit of a permutation group through the symplectic embedding, with
/// MeatAxe irreducibility flags.
pub fn audit_embedded(group: &PermGroup, meataxe: &Meataxe) -> Result<(AuditReport, GF2Module)> {
    let space = SymplecticSpace::new(group.degree())?;
    let module = space.embed_group(group)?;
    let classes = group.conjugacy_classes()?;
    let items = classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let label = format!("{}{}", c.order, class_letter(&classes, k));
            let m = space.embed(&c.representative)?;
            Ok((ClassInfo::of_permutation(label, c.size as u128, &c.representative), AuditMatrix::Gf2(m)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = audit(format!("embed {}", group.name()), Ring::Gf2, items)?;
    let irreducible = meataxe.is_irreducible(&module)?;
    report.irreducible = Some(irreducible);
    report.absolutely_irreducible = if irreducible { Some(meataxe.is_absolutely_irreducible(&module)?) } else { Some(false) };
    Ok((report, module))
}

/// ATLAS-style suffix: classes of equal element order get letters A, B, ...
fn class_letter(classes: &[crate::perm::ConjugacyClass], k: usize) -> String {
    let order = classes[k].order;
    let idx = classes[..k].iter().filter(|c| c.order == order).count();
    let mut s = String::new();
    let mut i = idx;
    loop {
        s.insert(0, (b'A' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

/// One subgroup found by the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absolutely_irreducible: Option<bool>,
    pub unisingular: bool,
    /// Indices (into the input list) of a generating pair.
    pub generators: (usize, usize),
    /// Sorted (element order, class size) pairs of the subgroup's own classes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_fingerprint: Option<Vec<(u64, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummaryRow {
    pub order: usize,
    pub irreducible: bool,
    pub unisingular: bool,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub group_order: usize,
    pub dimension: usize,
    pub pairs_scanned: usize,
    pub subgroups_found: usize,
    pub summary: Vec<CensusSummaryRow>,
    pub irreducible_orders: BTreeSet<usize>,
    /// Irreducible subgroups, with flags and fingerprints.
    pub irreducible_subgroups: Vec<SubgroupRecord>,
    /// Whole-group unisingularity and its consequence for every subgroup.
    pub group_unisingular: bool,
    pub restriction_consistent: bool,
}

struct MulTable {
    n: usize,
    table: Vec<u32>,
    identity: usize,
}

impl MulTable {
    fn new(elements: &[BitMatrix]) -> Result<Self> {
        let n = elements.len();
        let index: HashMap<&[u64], usize> = elements.iter().enumerate().map(|(i, m)| (m.words(), i)).collect();
        if index.len() != n {
            return Err(Error::InvalidParameter("census input has repeated elements".into()));
        }
        let dim = elements[0].rows();
        let identity = *index
            .get(BitMatrix::identity(dim).words())
            .ok_or_else(|| Error::InvalidParameter("census input lacks the identity".into()))?;
        let rows = elements
            .par_iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let c = a.mul_unchecked(b);
                        index.get(c.words()).map(|&k| k as u32).ok_or_else(|| {
                            Error::InvalidParameter("census input is not closed under multiplication".into())
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MulTable { n, table: rows.concat(), identity })
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// Bitset of the subgroup generated by `gens`.
    fn close(&self, gens: &[usize]) -> Vec<u64> {
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        let mut list = vec![self.identity];
        bits[self.identity / 64] |= 1 << (self.identity % 64);
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(g, x);
                if bits[y / 64] >> (y % 64) & 1 == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    list.push(y);
                }
            }
        }
        bits
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == self.identity).expect("group element has an inverse")
    }
}

fn members(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            out.push(w * 64 + x.trailing_zeros() as usize);
            x &= x - 1;
        }
    }
    out
}

fn element_order(t: &MulTable, a: usize) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != t.identity {
        x = t.mul(a, x);
        k += 1;
    }
    k
}

fn class_fingerprint(t: &MulTable, elems: &[usize]) -> Vec<(u64, usize)> {
    let inv: HashMap<usize, usize> = elems.iter().map(|&g| (g, t.inverse(g))).collect();
    let mut seen: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();
    for &x in elems {
        if seen.contains(&x) {
            continue;
        }
        let class: BTreeSet<usize> = elems.iter().map(|&g| t.mul(t.mul(g, x), inv[&g])).collect();
        seen.extend(class.iter().copied());
        out.push((element_order(t, x), class.len()));
    }
    out.sort_unstable();
    out
}

/// Closes every subgroup generated by an unordered pair of elements (a pair
/// with itself gives the cyclic subgroups), deduplicates them by element set,
/// and records order, MeatAxe irreducibility and unisingularity.
pub fn subgroup_census(elements: &[BitMatrix], meataxe: &Meataxe) -> Result<Census> {
    let n = elements.len();
    if n == 0 || n > CENSUS_MAX_ELEMENTS {
        return Err(Error::BudgetExceeded(format!("census needs 1..={CENSUS_MAX_ELEMENTS} elements, got {n}")));
    }
    let dim = elements[0].rows();
    if elements.iter().any(|m| !m.is_square() || m.rows() != dim) {
        return Err(Error::DimensionMismatch("census elements must share one square shape".into()));
    }
    let table = MulTable::new(elements)?;
    let eig1: Vec<bool> = elements.par_iter().map(|m| m.plus_identity().map(|x| x.nullity() > 0)).collect::<Result<_>>()?;
    let group_unisingular = eig1.iter().all(|&b| b);

    // per first index, the subgroups generated with every later (or equal) index
    let found: Vec<Vec<(Vec<u64>, (usize, usize))>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut local: HashMap<Vec<u64>, (usize, usize)> = HashMap::new();
            for j in i..n {
                let bits = table.close(&[i, j]);
                local.entry(bits).or_insert((i, j));
            }
            local.into_iter().collect()
        })
        .collect();
    let mut subgroups: BTreeMap<Vec<u64>, (usize, usize)> = BTreeMap::new();
    for list in found {
        for (bits, gens) in list {
            let e = subgroups.entry(bits).or_insert(gens);
            if gens < *e {
                *e = gens;
            }
        }
    }

    let records = subgroups
        .par_iter()
        .map(|(bits, &(i, j))| {
            let elems = members(bits);
            let unisingular = elems.iter().all(|&k| eig1[k]);
            let gens = if i == j { vec![elements[i].clone()] } else { vec![elements[i].clone(), elements[j].clone()] };
            let module = GF2Module::new(dim, gens)?;
            let irreducible = meataxe.is_irreducible(&module)?;
            let (absolutely_irreducible, class_fingerprint) = if irreducible {
                (Some(meataxe.is_absolutely_irreducible(&module)?), Some(class_fingerprint(&table, &elems)))
            } else {
                (None, None)
            };
            Ok(SubgroupRecord {
                order: elems.len(),
                irreducible,
                absolutely_irreducible,
                unisingular,
                generators: (i, j),
                class_fingerprint,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut counts: BTreeMap<(usize, bool, bool), usize> = BTreeMap::new();
    for r in &records {
        *counts.entry((r.order, r.irreducible, r.unisingular)).or_default() += 1;
    }
    let summary = counts
        .into_iter()
        .map(|((order, irreducible, unisingular), count)| CensusSummaryRow { order, irreducible, unisingular, count })
        .collect();
    let restriction_consistent = !group_unisingular || records.iter().all(|r| r.unisingular);
    let mut irreducible_subgroups: Vec<SubgroupRecord> = records.iter().filter(|r| r.irreducible).cloned().collect();
    irreducible_subgroups.sort_by(|a, b| (a.order, a.generators).cmp(&(b.order, b.generators)));
    Ok(Census {
        group_order: n,
        dimension: dim,
        pairs_scanned: n * (n + 1) / 2,
        subgroups_found: records.len(),
        irreducible_orders: irreducible_subgroups.iter().map(|r| r.order).collect(),
        summary,
        irreducible_subgroups,
        group_unisingular,
        restriction_consistent,
    })
}
