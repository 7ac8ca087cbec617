//! Integer lattice arithmetic: points of ℤⁿ, subgroups in Hermite normal
//! form, finite unions of cosets, and finite windows.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Cosets of a subgroup are only enumerated when the index is below this.
pub const MAX_ENUMERATED_INDEX: u64 = 1 << 20;

/// A point of ℤⁿ with arbitrary-precision coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); rank])
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticePoint(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: rank, found: self.rank() })
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint::from_i64s(&v)
    }
}

/// JSON integers: plain numbers when they fit in 64 bits, decimal strings
/// otherwise.
pub(crate) mod json_int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(n),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            U(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(v) => Ok(BigInt::from(v)),
            Raw::U(v) => Ok(BigInt::from(v)),
            Raw::S(s) => s.trim().parse().map_err(D::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonInt(#[serde(with = "json_int")] BigInt);

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<JsonInt> = Vec::deserialize(d)?;
        Ok(LatticePoint(raw.into_iter().map(|j| j.0).collect()))
    }
}

/// A finite, nonempty integer box `{x : lo <= x <= hi}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl Window {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        if lo.is_empty() {
            return Err(Error::InvalidWindow("rank 0 window".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::InvalidWindow(format!("lo {lo:?} exceeds hi {hi:?}")));
        }
        Ok(Window { lo, hi })
    }

    /// The cube `[-radius, radius]^rank`.
    pub fn cube(rank: usize, radius: i64) -> Result<Self> {
        if radius < 0 {
            return Err(Error::InvalidWindow(format!("negative radius {radius}")));
        }
        Window::new(vec![-radius; rank], vec![radius; rank])
    }

    pub fn rank(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn extent(&self, axis: usize) -> usize {
        (self.hi[axis] - self.lo[axis] + 1) as usize
    }

    pub fn len(&self) -> usize {
        (0..self.rank()).map(|k| self.extent(k)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.rank() && p.iter().zip(&self.lo).zip(&self.hi).all(|((x, l), h)| l <= x && x <= h)
    }

    pub fn contains_point(&self, p: &LatticePoint) -> bool {
        p.rank() == self.rank()
            && p.0.iter().zip(&self.lo).zip(&self.hi).all(|((x, l), h)| {
                *x >= BigInt::from(*l) && *x <= BigInt::from(*h)
            })
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// The window scaled by `k` about the origin.
    pub fn scaled(&self, k: i64) -> Result<Window> {
        let mul = |v: &[i64]| -> Result<Vec<i64>> {
            v.iter()
                .map(|x| x.checked_mul(k).ok_or_else(|| Error::Overflow("window scale".into())))
                .collect()
        };
        let (a, b) = (mul(&self.lo)?, mul(&self.hi)?);
        let (lo, hi) = a.iter().zip(&b).map(|(x, y)| ((*x).min(*y), (*x).max(*y))).unzip();
        Window::new(lo, hi)
    }

    pub fn translated(&self, v: &[i64]) -> Result<Window> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        let add = |w: &[i64]| -> Result<Vec<i64>> {
            w.iter()
                .zip(v)
                .map(|(a, b)| a.checked_add(*b).ok_or_else(|| Error::Overflow("window shift".into())))
                .collect()
        };
        Window::new(add(&self.lo)?, add(&self.hi)?)
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> WindowPoints<'_> {
        WindowPoints { window: self, next: Some(self.lo.clone()) }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.lo.iter().zip(&self.hi).map(|(l, h)| format!("[{l},{h}]")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: Vec<i64>,
            hi: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        Window::new(raw.lo, raw.hi).map_err(D::Error::custom)
    }
}

pub struct WindowPoints<'a> {
    window: &'a Window,
    next: Option<Vec<i64>>,
}

impl Iterator for WindowPoints<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.len();
        while axis > 0 {
            axis -= 1;
            if succ[axis] < self.window.hi[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ[axis] = self.window.lo[axis];
        }
        Some(current)
    }
}

/// A subgroup of ℤⁿ stored by its row-style Hermite normal form basis.
///
/// Rows are in echelon form with strictly increasing pivot columns, each
/// pivot positive, and every entry above a pivot reduced into `[0, pivot)`.
/// Equal subgroups therefore have identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Row-style Hermite normal form of the integer span of `rows`.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut cleared = true;
            for i in r + 1..m {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q);
                cleared &= tail[0][col].is_zero();
            }
            if cleared {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn sub_multiple(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    for (t, x) in target.iter_mut().zip(row) {
        *t -= q * x;
    }
}

fn pivot_col(row: &[BigInt]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero")
}

impl Subgroup {
    pub fn trivial(ambient: usize) -> Self {
        Subgroup { ambient, basis: Vec::new() }
    }

    /// ℤⁿ itself.
    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Subgroup { ambient, basis }
    }

    /// The subgroup generated by `generators`, in canonical form.
    pub fn generated_by(ambient: usize, generators: &[LatticePoint]) -> Result<Self> {
        for g in generators {
            g.check_rank(ambient)?;
        }
        let rows = generators.iter().map(|g| g.0.clone()).collect();
        Ok(Subgroup { ambient, basis: hermite_rows(rows, ambient) })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Rank of the subgroup as a free abelian group.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_points(&self) -> Vec<LatticePoint> {
        self.basis.iter().map(|r| LatticePoint(r.clone())).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Subgroup::full(self.ambient)
    }

    /// Canonical residue of `x` modulo the subgroup: each pivot coordinate
    /// is brought into `[0, pivot)`.
    pub fn reduce(&self, x: &LatticePoint) -> Result<LatticePoint> {
        x.check_rank(self.ambient)?;
        let mut v = x.0.clone();
        for row in &self.basis {
            let c = pivot_col(row);
            let q = v[c].div_floor(&row[c]);
            if !q.is_zero() {
                sub_multiple(&mut v, row, &q);
            }
        }
        Ok(LatticePoint(v))
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Integer coordinates of `x` over the basis rows, if `x` lies in the
    /// subgroup.
    pub fn coordinates(&self, x: &LatticePoint) -> Result<Option<Vec<BigInt>>> {
        x.check_rank(self.ambient)?;
        let mut v = x.0.clone();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let c = pivot_col(row);
            if v[..c].iter().any(|a| !a.is_zero()) {
                return Ok(None);
            }
            let (q, rem) = v[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return Ok(None);
            }
            sub_multiple(&mut v, row, &q);
            coeffs.push(q);
        }
        Ok(v.iter().all(Zero::is_zero).then_some(coeffs))
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subgroup { ambient: self.ambient, basis: hermite_rows(rows, self.ambient) })
    }

    pub fn scaled(&self, k: i64) -> Subgroup {
        let k = BigInt::from(k);
        let rows = self.basis.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect();
        Subgroup { ambient: self.ambient, basis: hermite_rows(rows, self.ambient) }
    }

    /// `self ∩ other`, read off the HNF of `[[A, A], [B, 0]]`.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.rank() + other.rank());
        for a in &self.basis {
            rows.push(a.iter().chain(a).cloned().collect::<Vec<_>>());
        }
        for b in &other.basis {
            rows.push(b.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), n)).collect());
        }
        let h = hermite_rows(rows, 2 * n);
        let basis = h
            .into_iter()
            .filter(|r| r[..n].iter().all(Zero::is_zero))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Subgroup { ambient: n, basis: hermite_rows(basis, n) })
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_same(other)?;
        for row in &self.basis {
            if !other.contains(&LatticePoint(row.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coset representatives of `self / sub` for a finite-index subgroup
    /// `sub ⊆ self`.
    pub fn quotient_reps(&self, sub: &Subgroup) -> Result<Vec<LatticePoint>> {
        self.check_same(sub)?;
        if sub.rank() != self.rank() || !sub.is_subgroup_of(self)? {
            return Err(Error::IncommensurableSubgroups);
        }
        let r = self.rank();
        let mut coeff_rows = Vec::with_capacity(r);
        for row in &sub.basis {
            let c = self
                .coordinates(&LatticePoint(row.clone()))?
                .expect("checked containment");
            coeff_rows.push(c);
        }
        let h = hermite_rows(coeff_rows, r);
        let diag: Vec<BigInt> = (0..r).map(|i| h[i][i].clone()).collect();
        let index: BigInt = diag.iter().product();
        if index > BigInt::from(MAX_ENUMERATED_INDEX) {
            return Err(Error::IndexTooLarge(index.to_string()));
        }
        let mut reps = vec![LatticePoint::zero(self.ambient)];
        for (i, d) in diag.iter().enumerate() {
            let row = LatticePoint(self.basis[i].clone());
            let mut next = Vec::new();
            let mut a = BigInt::zero();
            while &a < d {
                let step = row.scale(&a);
                next.extend(reps.iter().map(|p| p.add(&step)));
                a += 1;
            }
            reps = next;
        }
        Ok(reps)
    }

    fn check_same(&self, other: &Subgroup) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient })
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis_points().iter().map(ToString::to_string).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupJson {
    rank: usize,
    basis: Vec<LatticePoint>,
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubgroupJson { rank: self.ambient, basis: self.basis_points() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SubgroupJson::deserialize(d)?;
        Subgroup::generated_by(raw.rank, &raw.basis).map_err(D::Error::custom)
    }
}

/// Canonical subgroup generated by `generators` (all of one ambient rank).
///
/// An empty list yields the trivial subgroup of `ambient`.
pub fn hnf(ambient: usize, generators: &[LatticePoint]) -> Result<Subgroup> {
    Subgroup::generated_by(ambient, generators)
}

pub fn subgroup_contains(s: &Subgroup, x: &LatticePoint) -> Result<bool> {
    s.contains(x)
}

/// A finite union of cosets `⋃ (S + r)` of one subgroup `S`.
///
/// Representatives are canonical residues, sorted and distinct, so equal
/// unions over the same subgroup compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CosetUnion {
    subgroup: Subgroup,
    reps: Vec<LatticePoint>,
}

impl CosetUnion {
    pub fn new(subgroup: Subgroup, reps: Vec<LatticePoint>) -> Result<Self> {
        let mut canon = BTreeSet::new();
        for r in &reps {
            canon.insert(subgroup.reduce(r)?);
        }
        Ok(CosetUnion { subgroup, reps: canon.into_iter().collect() })
    }

    pub fn coset(subgroup: Subgroup, rep: LatticePoint) -> Result<Self> {
        CosetUnion::new(subgroup, vec![rep])
    }

    pub fn singleton(p: LatticePoint) -> Self {
        let s = Subgroup::trivial(p.rank());
        CosetUnion { subgroup: s, reps: vec![p] }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[LatticePoint] {
        &self.reps
    }

    pub fn ambient_rank(&self) -> usize {
        self.subgroup.ambient_rank()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, x: &LatticePoint) -> Result<bool> {
        let r = self.subgroup.reduce(x)?;
        Ok(self.reps.binary_search(&r).is_ok())
    }

    /// The same set written over the finite-index subgroup `sub`.
    pub fn refine(&self, sub: &Subgroup) -> Result<CosetUnion> {
        let cosets = self.subgroup.quotient_reps(sub)?;
        let mut reps = Vec::with_capacity(cosets.len() * self.reps.len());
        for r in &self.reps {
            reps.extend(cosets.iter().map(|q| r.add(q)));
        }
        CosetUnion::new(sub.clone(), reps)
    }

    /// Coarsest representation: the subgroup becomes the full translation
    /// stabilizer of the set.
    pub fn canonical(&self) -> Result<CosetUnion> {
        let Some(first) = self.reps.first() else {
            return Ok(self.clone());
        };
        let mut periods = Vec::new();
        for r in &self.reps[1..] {
            let d = r.sub(first);
            let mut stable = true;
            for x in &self.reps {
                if !self.contains(&x.add(&d))? {
                    stable = false;
                    break;
                }
            }
            if stable {
                periods.push(d);
            }
        }
        let stab = self.subgroup.join(&Subgroup::generated_by(self.ambient_rank(), &periods)?)?;
        CosetUnion::new(stab, self.reps.clone())
    }

    /// Union of two coset unions over commensurable subgroups.
    pub fn union(&self, other: &CosetUnion) -> Result<CosetUnion> {
        let common = self.subgroup.intersect(&other.subgroup)?;
        let a = self.refine(&common)?;
        let b = other.refine(&common)?;
        let reps = a.reps.into_iter().chain(b.reps).collect();
        CosetUnion::new(common, reps)?.canonical()
    }

    pub fn translate(&self, g: &LatticePoint) -> Result<CosetUnion> {
        g.check_rank(self.ambient_rank())?;
        CosetUnion::new(self.subgroup.clone(), self.reps.iter().map(|r| r.add(g)).collect())
    }

    /// Members inside `window`, sorted lexicographically.
    pub fn enumerate(&self, window: &Window) -> Result<Vec<LatticePoint>> {
        if window.rank() != self.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank(), found: window.rank() });
        }
        let lo: Vec<BigInt> = window.lo().iter().map(|&x| BigInt::from(x)).collect();
        let hi: Vec<BigInt> = window.hi().iter().map(|&x| BigInt::from(x)).collect();
        let mut out = BTreeSet::new();
        for r in &self.reps {
            enumerate_coset(&self.subgroup.basis, 0, r.0.clone(), 0, &lo, &hi, &mut out);
        }
        Ok(out.into_iter().collect())
    }
}

/// Walks the echelon basis row by row; each pivot coordinate pins the range
/// of that row's coefficient, and the columns before the next pivot are
/// already determined.
fn enumerate_coset(
    basis: &[Vec<BigInt>],
    row: usize,
    point: Vec<BigInt>,
    fixed_upto: usize,
    lo: &[BigInt],
    hi: &[BigInt],
    out: &mut BTreeSet<LatticePoint>,
) {
    let n = point.len();
    let next_pivot = basis.get(row).map(|r| pivot_col(r)).unwrap_or(n);
    for c in fixed_upto..next_pivot {
        if point[c] < lo[c] || point[c] > hi[c] {
            return;
        }
    }
    if row == basis.len() {
        out.insert(LatticePoint(point));
        return;
    }
    let b = &basis[row];
    let p = &b[next_pivot];
    let x = &point[next_pivot];
    // lo <= x + k p <= hi
    let kmin = Integer::div_ceil(&(&lo[next_pivot] - x), p);
    let kmax = (&hi[next_pivot] - x).div_floor(p);
    let mut k = kmin;
    while k <= kmax {
        let mut q = point.clone();
        for (qc, bc) in q.iter_mut().zip(b) {
            *qc += &k * bc;
        }
        enumerate_coset(basis, row + 1, q, next_pivot, lo, hi, out);
        k += 1;
    }
}

impl fmt::Display for CosetUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reps: Vec<String> = self.reps.iter().map(ToString::to_string).collect();
        write!(f, "{} + {{{}}}", self.subgroup, reps.join(", "))
    }
}

impl<'de> Deserialize<'de> for CosetUnion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            subgroup: Subgroup,
            reps: Vec<LatticePoint>,
        }
        let raw = Raw::deserialize(d)?;
        CosetUnion::new(raw.subgroup, raw.reps).map_err(D::Error::custom)
    }
}

pub fn coset_union_contains(c: &CosetUnion, x: &LatticePoint) -> Result<bool> {
    c.contains(x)
}

/// Set equality of two coset unions, decided by refining both to the
/// intersection of their subgroups.
pub fn coset_union_equal(a: &CosetUnion, b: &CosetUnion) -> Result<bool> {
    if a.ambient_rank() != b.ambient_rank() {
        return Err(Error::DimensionMismatch { expected: a.ambient_rank(), found: b.ambient_rank() });
    }
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let common = a.subgroup.intersect(&b.subgroup)?;
    // A finite union of cosets has a stabilizer in which its subgroup has
    // finite index, so equal sets force equal ranks.
    if common.rank() != a.subgroup.rank() || common.rank() != b.subgroup.rank() {
        return Ok(false);
    }
    Ok(a.refine(&common)?.reps == b.refine(&common)?.reps)
}

pub fn enumerate_in_box(c: &CosetUnion, window: &Window) -> Result<Vec<LatticePoint>> {
    c.enumerate(window)
}
