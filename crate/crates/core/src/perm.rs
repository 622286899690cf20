//! Permutations, partitions and small permutation groups.
//!
//! Points are 1-based in every external surface (cycle notation, `apply`)
//! and 0-based in storage. Composition is right-to-left: `p.compose(&q)`
//! applies `q` first, so `(p * q)(x) = p(q(x))`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default element bound for closures and class computations.
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// A partition of `n`, stored with parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts[0];
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Shape `(n-2, 2)`.
    pub fn two_row(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidPartition(format!("(n-2,2) needs n >= 4, got {n}")));
        }
        Partition::new(vec![n - 2, 2])
    }

    /// Shape `(n-2, 1, 1)`.
    pub fn hook_two(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPartition(format!("(n-2,1,1) needs n >= 3, got {n}")));
        }
        Partition::new(vec![n - 2, 1, 1])
    }

    /// Number of standard tableaux of this shape, by the hook-length formula.
    pub fn hook_length_dimension(&self) -> u128 {
        let conj = self.conjugate();
        let n = self.n() as u128;
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        let mut k = 1u128;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j - 1) + (conj.parts[j] - i - 1) + 1;
                num *= k;
                den *= hook as u128;
                k += 1;
                let g = num.gcd(&den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(k - 1, n);
        num / den
    }

    /// Sign of any permutation of this cycle type.
    pub fn cycle_type_sign(&self) -> i32 {
        let odd = self.parts.iter().filter(|&&p| p % 2 == 0).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }

    /// Element order for a permutation of this cycle type.
    pub fn cycle_type_order(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    /// Number of permutations in S_n with this cycle type.
    pub fn class_size(&self) -> u128 {
        let n = self.n();
        let mut size: u128 = (1..=n as u128).product();
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
        }
        for (p, m) in counts {
            size /= (p as u128).pow(m);
            size /= (1..=m as u128).product::<u128>();
        }
        size
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A bijection of `{1..d}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u8::MAX as usize + 1, "degree {degree} too large");
        Permutation { images: (0..degree).map(|i| i as u8).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d > u8::MAX as usize + 1 {
            return Err(Error::InvalidPermutation(format!("degree {d} exceeds 256")));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u8).collect() })
    }

    /// From 1-based cycles, e.g. `&[&[1, 2], &[3, 4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::InvalidPermutation(format!("point {x} outside 1..={degree}")));
                }
                if used[x - 1] {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                used[x - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::InvalidPermutation(format!("point {next} outside 1..={degree}")));
                }
                images[x - 1] = next - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation like `(1,2)(3,4,5)`; `()` is the identity.
    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let pts = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image of a point.
    pub fn apply(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree() {
            return Err(Error::InvalidPermutation(format!("point {point} outside 1..={}", self.degree())));
        }
        Ok(self.image(point - 1) + 1)
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = self.compose_unchecked(&out);
        }
        out
    }

    /// `q p q⁻¹`.
    pub fn conjugate_by(&self, q: &Permutation) -> Permutation {
        q.compose_unchecked(&self.compose_unchecked(&q.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles (0-based), fixed points included, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let parts = self.cycles().iter().map(|c| c.len()).collect();
        Partition::new(parts).expect("nonempty permutation")
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) == i).collect()
    }

    pub fn to_cycle_string(&self) -> String {
        self.to_string()
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degree mismatch")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            let pts: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [S{}]", self.degree())
    }
}

/// Serialized as `{"degree": d, "cycles": "(1,2)(3,4,5)"}` so the identity keeps its degree.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Permutation", 2)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("cycles", &self.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            cycles: String,
        }
        let raw = Raw::deserialize(d)?;
        Permutation::parse(raw.degree, &raw.cycles).map_err(serde::de::Error::custom)
    }
}

/// One canonical representative per cycle type of S_n: cycles filled with
/// consecutive points, longest cycle first.
pub fn class_reps_symmetric(n: usize) -> Vec<(Partition, Permutation)> {
    Partition::all(n)
        .into_iter()
        .map(|shape| {
            let rep = canonical_rep(&shape);
            (shape, rep)
        })
        .collect()
}

/// The canonical representative of a cycle type: `[3,2]` gives `(1,2,3)(4,5)`.
pub fn canonical_rep(cycle_type: &Partition) -> Permutation {
    let n = cycle_type.n();
    let mut images = vec![0usize; n];
    let mut start = 0;
    for &len in cycle_type.parts() {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    Permutation::from_images(images).expect("canonical representative is a bijection")
}

/// Breadth-first closure of the group generated by `generators`.
pub fn closure(generators: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    let degree = generators.first().map(|g| g.degree()).ok_or_else(|| {
        Error::InvalidParameter("closure needs at least one generator".into())
    })?;
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut elements = vec![id.clone()];
    seen.insert(id);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = g.compose_unchecked(&x);
            if !seen.contains(&y) {
                if elements.len() >= bound {
                    return Err(Error::ClosureOverflow { bound });
                }
                seen.insert(y.clone());
                elements.push(y);
            }
        }
    }
    Ok(elements)
}

/// A conjugacy class of a permutation group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub size: usize,
    pub representative: Permutation,
    pub order: u64,
}

/// A permutation group given by generators, with a lazily cached element list.
#[derive(Debug)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            elements,
        }
    }
}

impl PermGroup {
    pub fn new(name: impl Into<String>, generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::InvalidParameter("group needs at least one generator".into()))?;
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
        }
        Ok(PermGroup { name: name.into(), degree, generators, elements: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, closing under the default bound on first use.
    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let e = closure(&self.generators, DEFAULT_CLOSURE_BOUND)?;
        Ok(self.elements.get_or_init(|| e))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Exact conjugacy classes: orbits of the element list under conjugation
    /// by the generators. Classes are sorted by (order, size, representative),
    /// with the lexicographically least element as representative.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>> {
        let elements = self.elements()?;
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let gens_inv: Vec<(Permutation, Permutation)> =
            self.generators.iter().map(|g| (g.clone(), g.inverse())).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = &elements[members[head]];
                head += 1;
                for (g, gi) in &gens_inv {
                    let y = g.compose_unchecked(&x.compose_unchecked(gi));
                    let j = index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
            }
            let rep = members.iter().map(|&i| &elements[i]).min().expect("nonempty class").clone();
            classes.push(ConjugacyClass { size: members.len(), order: rep.order(), representative: rep });
        }
        classes.sort_by(|a, b| {
            (a.order, a.size, &a.representative).cmp(&(b.order, b.size, &b.representative))
        });
        Ok(classes)
    }

    /// Distinct cycle types occurring in the group.
    pub fn cycle_types(&self) -> Result<Vec<Partition>> {
        let mut types: Vec<Partition> =
            self.conjugacy_classes()?.iter().map(|c| c.representative.cycle_type()).collect();
        types.sort();
        types.dedup();
        Ok(types)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(self.elements()?.contains(p))
    }
}

/// The explicitly named groups used by the audits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinGroup {
    /// Affine maps of F_3^2 on its 9 points.
    Agl2_3,
    /// Semilinear affine maps of F_9.
    AGammaL1_9,
    /// Linear affine maps of F_9.
    Agl1_9,
    /// Determinant-one affine maps of F_3^2.
    Asl2_3,
    /// Möbius action of PGL_2(q) on the projective line.
    Pgl2 { q: u32 },
    /// GL_3(F_2) on the 21 incident point-line flags of the Fano plane.
    L3_2Flags,
    Symmetric { n: usize },
    Alternating { n: usize },
}

impl BuiltinGroup {
    /// Parses a tag; `q` is required for `pgl2` and `n` for `s_n` / `a_n`.
    pub fn from_tag(tag: &str, q: Option<u32>, n: Option<usize>) -> Result<Self> {
        let need_n = || n.ok_or_else(|| Error::InvalidParameter(format!("group {tag} needs n")));
        match tag {
            "agl2_3" => Ok(BuiltinGroup::Agl2_3),
            "agammal1_9" => Ok(BuiltinGroup::AGammaL1_9),
            "agl1_9" => Ok(BuiltinGroup::Agl1_9),
            "asl2_3" => Ok(BuiltinGroup::Asl2_3),
            "l3_2_flags" => Ok(BuiltinGroup::L3_2Flags),
            "pgl2" => {
                let q = q.ok_or_else(|| Error::InvalidParameter("pgl2 needs q".into()))?;
                Ok(BuiltinGroup::Pgl2 { q })
            }
            "s_n" | "sn" | "symmetric" => Ok(BuiltinGroup::Symmetric { n: need_n()? }),
            "a_n" | "an" | "alternating" => Ok(BuiltinGroup::Alternating { n: need_n()? }),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            BuiltinGroup::Agl2_3 => "agl2_3".into(),
            BuiltinGroup::AGammaL1_9 => "agammal1_9".into(),
            BuiltinGroup::Agl1_9 => "agl1_9".into(),
            BuiltinGroup::Asl2_3 => "asl2_3".into(),
            BuiltinGroup::Pgl2 { q } => format!("pgl2_{q}"),
            BuiltinGroup::L3_2Flags => "l3_2_flags".into(),
            BuiltinGroup::Symmetric { n } => format!("s_{n}"),
            BuiltinGroup::Alternating { n } => format!("a_{n}"),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            BuiltinGroup::Agl2_3
            | BuiltinGroup::AGammaL1_9
            | BuiltinGroup::Agl1_9
            | BuiltinGroup::Asl2_3 => 9,
            BuiltinGroup::Pgl2 { q } => *q as usize + 1,
            BuiltinGroup::L3_2Flags => 21,
            BuiltinGroup::Symmetric { n } | BuiltinGroup::Alternating { n } => *n,
        }
    }

    /// Order predicted by the group-order formula.
    pub fn advertised_order(&self) -> u128 {
        match self {
            BuiltinGroup::Agl2_3 => 432,
            BuiltinGroup::AGammaL1_9 => 144,
            BuiltinGroup::Agl1_9 => 72,
            BuiltinGroup::Asl2_3 => 216,
            BuiltinGroup::Pgl2 { q } => {
                let q = *q as u128;
                q * (q * q - 1)
            }
            BuiltinGroup::L3_2Flags => 168,
            BuiltinGroup::Symmetric { n } => (1..=*n as u128).product(),
            BuiltinGroup::Alternating { n } => (1..=*n as u128).product::<u128>() / 2,
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = match *self {
            BuiltinGroup::Agl2_3 => {
                let t = [[1, 1], [0, 1]];
                let u = [[1, 0], [1, 1]];
                let d = [[2, 0], [0, 1]];
                vec![
                    affine_f3(&t, [0, 0]),
                    affine_f3(&u, [0, 0]),
                    affine_f3(&d, [0, 0]),
                    affine_f3(&[[1, 0], [0, 1]], [1, 0]),
                ]
            }
            BuiltinGroup::Asl2_3 => {
                let t = [[1, 1], [0, 1]];
                let u = [[1, 0], [1, 1]];
                vec![
                    affine_f3(&t, [0, 0]),
                    affine_f3(&u, [0, 0]),
                    affine_f3(&[[1, 0], [0, 1]], [1, 0]),
                ]
            }
            BuiltinGroup::Agl1_9 => vec![f9_map(F9_PRIMITIVE, 0, false), f9_map(1, 1, false)],
            BuiltinGroup::AGammaL1_9 => vec![
                f9_map(F9_PRIMITIVE, 0, false),
                f9_map(1, 1, false),
                f9_map(1, 0, true),
            ],
            BuiltinGroup::Pgl2 { q } => pgl2_generators(q)?,
            BuiltinGroup::L3_2Flags => l3_2_flag_generators(),
            BuiltinGroup::Symmetric { n } => {
                if n < 2 {
                    vec![Permutation::identity(n.max(1))]
                } else {
                    let cycle: Vec<usize> = (1..=n).collect();
                    vec![
                        Permutation::from_cycles(n, &[&[1, 2]])?,
                        Permutation::from_cycles(n, &[&cycle])?,
                    ]
                }
            }
            BuiltinGroup::Alternating { n } => {
                if n < 3 {
                    vec![Permutation::identity(n.max(1))]
                } else {
                    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
                    vec![
                        Permutation::from_cycles(n, &[&[1, 2, 3]])?,
                        Permutation::from_cycles(n, &[&long])?,
                    ]
                }
            }
        };
        PermGroup::new(self.tag(), gens)
    }
}

/// Affine map `v -> A v + b` on F_3^2; point `(x, y)` has 0-based index `x + 3y`.
fn affine_f3(a: &[[u8; 2]; 2], b: [u8; 2]) -> Permutation {
    let images = (0..9)
        .map(|i| {
            let (x, y) = (i % 3, i / 3);
            let nx = (a[0][0] as usize * x + a[0][1] as usize * y + b[0] as usize) % 3;
            let ny = (a[1][0] as usize * x + a[1][1] as usize * y + b[1] as usize) % 3;
            nx + 3 * ny
        })
        .collect();
    Permutation::from_images(images).expect("invertible affine map")
}

/// F_9 = F_3[i]/(i^2 + 1); element `a + b i` has index `a + 3b`.
const F9_PRIMITIVE: usize = 1 + 3; // 1 + i, of multiplicative order 8

fn f9_mul(x: usize, y: usize) -> usize {
    let (a, b) = (x % 3, x / 3);
    let (c, d) = (y % 3, y / 3);
    let re = (a * c + 2 * b * d) % 3;
    let im = (a * d + b * c) % 3;
    re + 3 * im
}

fn f9_add(x: usize, y: usize) -> usize {
    (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3)
}

fn f9_frobenius(x: usize) -> usize {
    let (a, b) = (x % 3, x / 3);
    a + 3 * ((3 - b) % 3)
}

/// `x -> scale * frob?(x) + shift` on F_9.
fn f9_map(scale: usize, shift: usize, frobenius: bool) -> Permutation {
    let images = (0..9)
        .map(|x| {
            let x = if frobenius { f9_frobenius(x) } else { x };
            f9_add(f9_mul(scale, x), shift)
        })
        .collect();
    Permutation::from_images(images).expect("invertible semilinear map")
}

fn is_odd_prime(q: u32) -> bool {
    q >= 3 && q % 2 == 1 && (3..).step_by(2).take_while(|d: &u32| d * d <= q).all(|d| q % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn primitive_root(q: u64) -> u64 {
    let phi = q - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q).find(|&g| factors.iter().all(|&f| pow_mod(g, phi / f, q) != 1)).expect("prime has a primitive root")
}

/// Generators of PGL_2(q) on P^1(F_q): points `0..q-1` then infinity at index `q`.
fn pgl2_generators(q: u32) -> Result<Vec<Permutation>> {
    if !is_odd_prime(q) {
        return Err(Error::InvalidParameter(format!("pgl2 needs an odd prime q, got {q}")));
    }
    let q = q as usize;
    let inf = q;
    let g = primitive_root(q as u64) as usize;
    let translate: Vec<usize> = (0..=q).map(|x| if x == inf { inf } else { (x + 1) % q }).collect();
    let scale: Vec<usize> = (0..=q).map(|x| if x == inf { inf } else { x * g % q }).collect();
    let invert: Vec<usize> = (0..=q)
        .map(|x| {
            if x == inf {
                0
            } else if x == 0 {
                inf
            } else {
                // -1/x
                let inv = pow_mod(x as u64, q as u64 - 2, q as u64) as usize;
                (q - inv) % q
            }
        })
        .collect();
    Ok(vec![
        Permutation::from_images(translate)?,
        Permutation::from_images(scale)?,
        Permutation::from_images(invert)?,
    ])
}

/// Flags of the Fano plane as (point, line) with points the nonzero vectors
/// of F_2^3 (as 3-bit masks) and lines their 3-point subsets closed under xor.
pub(crate) fn fano_flags() -> Vec<(u8, u8)> {
    let lines = fano_lines();
    let mut flags = Vec::new();
    for p in 1u8..8 {
        for &line in &lines {
            if line & (1 << p) != 0 {
                flags.push((p, line));
            }
        }
    }
    flags
}

/// Each line as a bitmask over points 1..7 (bit `p` set when point `p` lies on it).
fn fano_lines() -> Vec<u8> {
    let mut lines = Vec::new();
    for a in 1u8..8 {
        for b in (a + 1)..8 {
            let c = a ^ b;
            if c > b {
                lines.push((1 << a) | (1 << b) | (1 << c));
            }
        }
    }
    lines.sort_unstable();
    lines
}

fn l3_2_flag_generators() -> Vec<Permutation> {
    // columns of each matrix are the images of the basis vectors 1, 2, 4
    let transvection = [0b001u8, 0b011, 0b100];
    let cyclic = [0b010u8, 0b100, 0b001];
    let flags = fano_flags();
    let index: HashMap<(u8, u8), usize> = flags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let act = |m: &[u8; 3]| {
        let apply = |v: u8| (0..3).filter(|&k| v & (1 << k) != 0).fold(0u8, |acc, k| acc ^ m[k]);
        let images = flags
            .iter()
            .map(|&(p, line)| {
                let img_line = (1u8..8).filter(|&x| line & (1 << x) != 0).fold(0u8, |acc, x| acc | (1 << apply(x)));
                index[&(apply(p), img_line)]
            })
            .collect();
        Permutation::from_images(images).expect("GL3(2) permutes flags")
    };
    vec![act(&transvection), act(&cyclic)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, s: &str) -> Permutation {
        Permutation::parse(d, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let t = p(2, "(1,2)");
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(p(3, "(1,2,3)").inverse(), p(3, "(1,3,2)"));
        assert_eq!(p(9, "(1,2)(3,4,5,6,7,8,9)").apply(3).unwrap(), 4);
        assert!(matches!(p(3, "(1,2)").compose(&p(4, "()")), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p(3, "(1,2)");
        let b = p(3, "(2,3)");
        let ab = &a * &b;
        for x in 1..=3 {
            assert_eq!(ab.apply(x).unwrap(), a.apply(b.apply(x).unwrap()).unwrap());
        }
        assert_eq!(ab, p(3, "(1,2,3)"));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(9, "(1,2)(3,4,5,6,7,8,9)").cycle_type().parts(), &[7, 2]);
        assert_eq!(Permutation::identity(5).cycle_type().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(p(7, "(1,2)(3,4,5,6,7)").cycle_type().parts(), &[5, 2]);
    }

    #[test]
    fn symmetric_class_reps() {
        assert_eq!(class_reps_symmetric(5).len(), 7);
        assert_eq!(class_reps_symmetric(7).len(), 15);
        let rep = canonical_rep(&Partition::new(vec![3, 2]).unwrap());
        assert_eq!(rep, p(5, "(1,2,3)(4,5)"));
        let total: u128 = class_reps_symmetric(6).iter().map(|(c, _)| c.class_size()).sum();
        assert_eq!(total, 720);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = "(1,2)(3,4,5,6,7,8,9)";
        assert_eq!(p(9, s).to_string(), s);
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!(Permutation::parse(3, "(1,4)").is_err());
        assert!(Permutation::parse(3, "(1,2)(2,3)").is_err());
        let json = serde_json::to_string(&p(5, "(1,5)")).unwrap();
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p(5, "(1,5)"));
    }

    #[test]
    fn partitions() {
        let lam = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(lam.conjugate().parts(), &[3, 1, 1]);
        assert_eq!(Partition::new(vec![3, 2]).unwrap().conjugate().parts(), &[2, 2, 1]);
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::new(vec![3, 2]).unwrap().hook_length_dimension(), 5);
        assert_eq!(Partition::new(vec![3, 1, 1]).unwrap().hook_length_dimension(), 6);
        assert_eq!("(5,2)".parse::<Partition>().unwrap().parts(), &[5, 2]);
    }

    #[test]
    fn closure_examples() {
        let s9 = BuiltinGroup::Symmetric { n: 9 }.build().unwrap();
        assert_eq!(s9.order().unwrap(), 362_880);
        assert_eq!(closure(&[Permutation::identity(4)], 10).unwrap().len(), 1);
        assert!(matches!(
            closure(s9.generators(), 1000),
            Err(Error::ClosureOverflow { bound: 1000 })
        ));
    }

    #[test]
    fn builtin_orders_and_transitivity() {
        for g in [
            BuiltinGroup::Agl2_3,
            BuiltinGroup::AGammaL1_9,
            BuiltinGroup::Agl1_9,
            BuiltinGroup::Asl2_3,
            BuiltinGroup::Pgl2 { q: 7 },
            BuiltinGroup::Pgl2 { q: 19 },
            BuiltinGroup::L3_2Flags,
            BuiltinGroup::Symmetric { n: 6 },
            BuiltinGroup::Alternating { n: 6 },
            BuiltinGroup::Alternating { n: 7 },
        ] {
            let group = g.build().unwrap();
            assert_eq!(group.degree(), g.degree(), "{g:?}");
            assert!(group.is_transitive(), "{g:?}");
            assert_eq!(group.order().unwrap() as u128, g.advertised_order(), "{g:?}");
        }
        assert!(matches!(BuiltinGroup::Pgl2 { q: 9 }.build(), Err(Error::InvalidParameter(_))));
        assert!(matches!(BuiltinGroup::from_tag("m11", None, None), Err(Error::UnsupportedGroup(_))));
    }

    #[test]
    fn class_examples() {
        let s5 = BuiltinGroup::Symmetric { n: 5 }.build().unwrap();
        let classes = s5.conjugacy_classes().unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);

        let agl = BuiltinGroup::Agl2_3.build().unwrap();
        let total: usize = agl.conjugacy_classes().unwrap().iter().map(|c| c.size).sum();
        assert_eq!(total, 432);

        let pgl = BuiltinGroup::Pgl2 { q: 19 }.build().unwrap();
        let classes = pgl.conjugacy_classes().unwrap();
        let c19 = classes.iter().find(|c| c.order == 19).expect("order-19 class");
        assert_eq!(c19.representative.cycle_type().parts(), &[19, 1]);
    }

    #[test]
    fn class_sizes_match_cycle_type_counts_in_s6() {
        let s6 = BuiltinGroup::Symmetric { n: 6 }.build().unwrap();
        let classes = s6.conjugacy_classes().unwrap();
        assert_eq!(classes.len(), 11);
        for c in classes {
            assert_eq!(c.size as u128, c.representative.cycle_type().class_size());
        }
    }
}
