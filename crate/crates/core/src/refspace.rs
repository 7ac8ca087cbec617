//! Reflection spaces (`2x - y`) and symmetric reflection spaces (`x - 2y`)
//! in ℤⁿ: box-restricted predicates and closures, closed forms for two
//! generators, and the complete description over ℤ.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{coset_union_equal, CosetUnion, LatticePoint, Subgroup, Window};

/// Which generating operation a closure uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// `x·y = 2x - y`.
    Reflection,
    /// `x∘y = x - 2y`.
    Symmetric,
    /// Reflection rule applied to the generators together with 0.
    Pointed,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Reflection => "reflection",
            Rule::Symmetric => "symmetric",
            Rule::Pointed => "pointed",
        })
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reflection" => Ok(Rule::Reflection),
            "symmetric" => Ok(Rule::Symmetric),
            "pointed" => Ok(Rule::Pointed),
            other => Err(Error::Parse(format!("unknown rule {other:?}"))),
        }
    }
}

/// A nonempty, deduplicated set of points of one ambient rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GeneratorSet {
    points: Vec<LatticePoint>,
}

impl GeneratorSet {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyGenerators)?;
        let rank = first.rank();
        if let Some(bad) = points.iter().find(|p| p.rank() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: bad.rank() });
        }
        let set: BTreeSet<LatticePoint> = points.into_iter().collect();
        Ok(GeneratorSet { points: set.into_iter().collect() })
    }

    pub fn from_i64s(points: &[Vec<i64>]) -> Result<Self> {
        GeneratorSet::new(points.iter().map(|p| LatticePoint::from_i64s(p)).collect())
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn rank(&self) -> usize {
        self.points[0].rank()
    }

    /// Componentwise bounding box of the generators.
    pub fn bounding_box(&self) -> Result<Window> {
        let pts = to_machine(&self.points)?;
        let n = self.rank();
        let lo = (0..n).map(|k| pts.iter().map(|p| p[k]).min().unwrap()).collect();
        let hi = (0..n).map(|k| pts.iter().map(|p| p[k]).max().unwrap()).collect();
        Window::new(lo, hi)
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pts = Vec::<LatticePoint>::deserialize(d)?;
        GeneratorSet::new(pts).map_err(serde::de::Error::custom)
    }
}

/// Outcome of a box-restricted predicate; `witness` is the lexicographically
/// first offending pair `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateResult {
    pub holds: bool,
    pub witness: Option<(LatticePoint, LatticePoint)>,
}

fn to_machine(points: &[LatticePoint]) -> Result<Vec<Vec<i64>>> {
    points
        .iter()
        .map(|p| p.to_i64s().ok_or_else(|| Error::Overflow(format!("coordinate of {p} exceeds 64 bits"))))
        .collect()
}

/// Bitmap over the points of a window. Rows run along the last axis; the
/// remaining axes index rows in mixed radix, so bit order is lexicographic.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    window: Window,
    ext: Vec<usize>,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Grid {
    pub(crate) fn new(window: &Window) -> Grid {
        let n = window.rank();
        let ext: Vec<usize> = (0..n).map(|k| window.extent(k)).collect();
        let words_per_row = ext[n - 1].div_ceil(64);
        let nrows: usize = ext[..n - 1].iter().product();
        Grid { window: window.clone(), ext, words_per_row, bits: vec![0; nrows * words_per_row] }
    }

    fn row_len(&self) -> usize {
        *self.ext.last().unwrap()
    }

    fn locate(&self, p: &[i64]) -> Option<(usize, usize)> {
        if !self.window.contains(p) {
            return None;
        }
        let n = p.len();
        let mut row = 0usize;
        for k in 0..n - 1 {
            row = row * self.ext[k] + (p[k] - self.window.lo()[k]) as usize;
        }
        Some((row, (p[n - 1] - self.window.lo()[n - 1]) as usize))
    }

    pub(crate) fn insert(&mut self, p: &[i64]) -> bool {
        match self.locate(p) {
            Some((r, c)) => {
                self.bits[r * self.words_per_row + c / 64] |= 1 << (c % 64);
                true
            }
            None => false,
        }
    }

    pub(crate) fn contains(&self, p: &[i64]) -> bool {
        self.locate(p)
            .is_some_and(|(r, c)| self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1)
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn point_of(&self, row: usize, col: usize) -> Vec<i64> {
        let n = self.ext.len();
        let mut p = vec![0i64; n];
        p[n - 1] = self.window.lo()[n - 1] + col as i64;
        let mut rest = row;
        for k in (0..n - 1).rev() {
            p[k] = self.window.lo()[k] + (rest % self.ext[k]) as i64;
            rest /= self.ext[k];
        }
        p
    }

    /// Points of `self` absent from `other` (same window), lexicographic.
    fn difference(&self, other: &Grid) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (w, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            let mut d = a & !b;
            while d != 0 {
                let bit = d.trailing_zeros() as usize;
                d &= d - 1;
                out.push(self.point_of(w / self.words_per_row, (w % self.words_per_row) * 64 + bit));
            }
        }
        out
    }

    pub(crate) fn points(&self) -> Vec<Vec<i64>> {
        self.difference(&Grid::new(&self.window))
    }

    /// `{k·e : e ∈ self}` on the window scaled by `k`.
    fn scaled(&self, k: i64) -> Result<Grid> {
        let mut g = Grid::new(&self.window.scaled(k)?);
        for p in self.points() {
            let q: Vec<i64> = p.iter().map(|x| x * k).collect();
            g.insert(&q);
        }
        Ok(g)
    }

    /// Visits every source row whose translate by `offset` meets `self`,
    /// passing (source row, target row, column shift).
    fn for_overlapping_rows(&self, src: &Grid, offset: &[i64], mut f: impl FnMut(usize, usize, i64) -> bool) -> bool {
        let n = self.ext.len();
        let mut ranges = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            let base = src.window.lo()[k] + offset[k] - self.window.lo()[k];
            let start = (-base).max(0);
            let end = (self.ext[k] as i64 - base).min(src.ext[k] as i64);
            if start >= end {
                return true;
            }
            ranges.push((start as usize, end as usize, base));
        }
        let shift = src.window.lo()[n - 1] + offset[n - 1] - self.window.lo()[n - 1];
        let mut digits: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        loop {
            let mut srow = 0usize;
            let mut trow = 0usize;
            for k in 0..n - 1 {
                srow = srow * src.ext[k] + digits[k];
                trow = trow * self.ext[k] + (digits[k] as i64 + ranges[k].2) as usize;
            }
            if !f(srow, trow, shift) {
                return false;
            }
            let mut k = n - 1;
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < ranges[k].1 {
                    break;
                }
                digits[k] = ranges[k].0;
            }
        }
    }

    fn last_word_mask(&self) -> u64 {
        match self.row_len() % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    /// `self ∪= (src + offset)`, clipped to the window.
    fn or_translated(&mut self, src: &Grid, offset: &[i64]) {
        let wpr = self.words_per_row;
        let mask = self.last_word_mask();
        let src_len = src.row_len();
        let mut updates: Vec<(usize, usize, i64)> = Vec::new();
        self.for_overlapping_rows(src, offset, |s, t, shift| {
            updates.push((s, t, shift));
            true
        });
        for (s, t, shift) in updates {
            let srow = &src.bits[s * src.words_per_row..(s + 1) * src.words_per_row];
            for w in 0..wpr {
                let mut word = extract64(srow, 64 * w as i64 - shift, src_len);
                if w + 1 == wpr {
                    word &= mask;
                }
                self.bits[t * wpr + w] |= word;
            }
        }
    }

    /// Whether `(src + offset) ∩ window ⊆ self`.
    fn covers_translated(&self, src: &Grid, offset: &[i64]) -> bool {
        let wpr = self.words_per_row;
        let mask = self.last_word_mask();
        let src_len = src.row_len();
        self.for_overlapping_rows(src, offset, |s, t, shift| {
            let srow = src.row(s);
            let trow = self.row(t);
            (0..wpr).all(|w| {
                let mut word = extract64(srow, 64 * w as i64 - shift, src_len);
                if w + 1 == wpr {
                    word &= mask;
                }
                word & !trow[w] == 0
            })
        })
    }
}

/// Bits `[start, start + 64)` of a row of `len` bits, zero outside it.
fn extract64(row: &[u64], start: i64, len: usize) -> u64 {
    if start >= len as i64 || start <= -64 {
        return 0;
    }
    if start < 0 {
        return row[0] << (-start);
    }
    let (w, b) = ((start / 64) as usize, (start % 64) as u32);
    let lo = row[w] >> b;
    let hi = if b > 0 && w + 1 < row.len() { row[w + 1] << (64 - b) } else { 0 };
    lo | hi
}

fn check_inside(points: &[Vec<i64>], b: &Window) -> Result<()> {
    for p in points {
        if p.len() != b.rank() {
            return Err(Error::DimensionMismatch { expected: b.rank(), found: p.len() });
        }
        if !b.contains(p) {
            return Err(Error::OutsideWindow {
                point: LatticePoint::from_i64s(p).to_string(),
                window: b.to_string(),
            });
        }
    }
    Ok(())
}

fn apply_rule(rule: Rule, x: &[i64], y: &[i64]) -> Vec<i64> {
    match rule {
        Rule::Reflection | Rule::Pointed => x.iter().zip(y).map(|(a, b)| 2 * a - b).collect(),
        Rule::Symmetric => x.iter().zip(y).map(|(a, b)| a - 2 * b).collect(),
    }
}

fn predicate(points: &[LatticePoint], b: &Window, rule: Rule) -> Result<PredicateResult> {
    let pts = to_machine(points)?;
    check_inside(&pts, b)?;
    let mut grid = Grid::new(b);
    for p in &pts {
        grid.insert(p);
    }
    let ok = match rule {
        Rule::Symmetric => {
            let src = grid.scaled(-2)?;
            pts.iter().all(|x| grid.covers_translated(&src, x))
        }
        _ => {
            let src = grid.scaled(-1)?;
            pts.iter().all(|x| {
                let off: Vec<i64> = x.iter().map(|c| 2 * c).collect();
                grid.covers_translated(&src, &off)
            })
        }
    };
    if ok {
        return Ok(PredicateResult { holds: true, witness: None });
    }
    let sorted: BTreeSet<&Vec<i64>> = pts.iter().collect();
    for x in &sorted {
        for y in &sorted {
            let z = apply_rule(rule, x, y);
            if b.contains(&z) && !grid.contains(&z) {
                let w = (LatticePoint::from_i64s(x), LatticePoint::from_i64s(y));
                return Ok(PredicateResult { holds: false, witness: Some(w) });
            }
        }
    }
    unreachable!("bitset check and pair scan disagree")
}

/// Whether `2x - y ∈ E` for all `x, y ∈ E` with `2x - y` inside `b`.
/// Every point of `E` must lie in `b`.
pub fn is_reflection_space_in_box(points: &[LatticePoint], b: &Window) -> Result<PredicateResult> {
    predicate(points, b, Rule::Reflection)
}

/// Whether `x - 2y ∈ E` for all `x, y ∈ E` with `x - 2y` inside `b`.
pub fn is_symmetric_reflection_space_in_box(points: &[LatticePoint], b: &Window) -> Result<PredicateResult> {
    predicate(points, b, Rule::Symmetric)
}

fn seed_points(gens: &GeneratorSet, rule: Rule, b: &Window) -> Result<Vec<Vec<i64>>> {
    if gens.rank() != b.rank() {
        return Err(Error::DimensionMismatch { expected: b.rank(), found: gens.rank() });
    }
    let mut seeds = to_machine(gens.points())?;
    if rule == Rule::Pointed {
        seeds.push(vec![0; b.rank()]);
    }
    check_inside(&seeds, b)?;
    Ok(seeds)
}

pub(crate) fn closure_grid(gens: &GeneratorSet, rule: Rule, b: &Window) -> Result<Grid> {
    let seeds = seed_points(gens, rule, b)?;
    let mut current = Grid::new(b);
    for p in &seeds {
        current.insert(p);
    }
    let mut delta = current.points();
    // Semi-naive rounds: every new pair involves a point that was new in the
    // previous round, so each round only translates by those points.
    while !delta.is_empty() {
        let mut next = current.clone();
        match rule {
            Rule::Reflection | Rule::Pointed => {
                let neg = current.scaled(-1)?;
                let dil = current.scaled(2)?;
                for x in &delta {
                    let off: Vec<i64> = x.iter().map(|c| 2 * c).collect();
                    next.or_translated(&neg, &off);
                }
                for y in &delta {
                    let off: Vec<i64> = y.iter().map(|c| -c).collect();
                    next.or_translated(&dil, &off);
                }
            }
            Rule::Symmetric => {
                let negdil = current.scaled(-2)?;
                for x in &delta {
                    next.or_translated(&negdil, x);
                }
                for y in &delta {
                    let off: Vec<i64> = y.iter().map(|c| -2 * c).collect();
                    next.or_translated(&current, &off);
                }
            }
        }
        delta = next.difference(&current);
        current = next;
    }
    Ok(current)
}

/// Least subset of `b` containing the generators (and 0 for the pointed
/// rule) that is closed under the rule whenever the result stays in `b`.
/// Output is sorted lexicographically.
pub fn closure(gens: &GeneratorSet, rule: Rule, b: &Window) -> Result<Vec<LatticePoint>> {
    let grid = closure_grid(gens, rule, b)?;
    Ok(grid.points().iter().map(|p| LatticePoint::from_i64s(p)).collect())
}

/// Straightforward worklist closure over all pairs, processed in
/// lexicographic order. Quadratic; meant for cross-checks on small boxes.
pub fn closure_reference(gens: &GeneratorSet, rule: Rule, b: &Window) -> Result<Vec<LatticePoint>> {
    let seeds = seed_points(gens, rule, b)?;
    let mut visited: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut work: BTreeSet<Vec<i64>> = seeds.into_iter().collect();
    while let Some(p) = work.pop_first() {
        if !visited.insert(p.clone()) {
            continue;
        }
        for q in visited.clone() {
            for z in [apply_rule(rule, &p, &q), apply_rule(rule, &q, &p)] {
                if b.contains(&z) && !visited.contains(&z) {
                    work.insert(z);
                }
            }
        }
    }
    Ok(visited.iter().map(|p| LatticePoint::from_i64s(p)).collect())
}

fn check_pair(x: &LatticePoint, y: &LatticePoint) -> Result<()> {
    if x.rank() == y.rank() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: x.rank(), found: y.rank() })
    }
}

/// `[x, y] = ⟨y - x⟩ + x`.
pub fn two_gen_reflection(x: &LatticePoint, y: &LatticePoint) -> Result<CosetUnion> {
    check_pair(x, y)?;
    let s = Subgroup::generated_by(x.rank(), &[y.sub(x)])?;
    CosetUnion::coset(s, x.clone())
}

/// `[x, y⟩ = ⟨x - y, x + y⟩ + x`, checked against
/// `(2⟨x, y⟩ + x) ∪ (2⟨x, y⟩ + y)`.
pub fn two_gen_symmetric(x: &LatticePoint, y: &LatticePoint) -> Result<CosetUnion> {
    check_pair(x, y)?;
    let n = x.rank();
    let s = Subgroup::generated_by(n, &[x.sub(y), x.add(y)])?;
    let nice = CosetUnion::coset(s, x.clone())?;
    let two = BigInt::from(2);
    let doubled = Subgroup::generated_by(n, &[x.scale(&two), y.scale(&two)])?;
    let split = CosetUnion::new(doubled, vec![x.clone(), y.clone()])?;
    assert!(coset_union_equal(&nice, &split)?, "closed forms of [x,y> disagree for {x}, {y}");
    Ok(nice)
}

/// `[x, y⟩₀ = 2⟨x, y⟩ ∪ [x, y⟩`, in coarsest form.
pub fn two_gen_pointed(x: &LatticePoint, y: &LatticePoint) -> Result<CosetUnion> {
    let sym = two_gen_symmetric(x, y)?;
    let two = BigInt::from(2);
    let doubled = Subgroup::generated_by(x.rank(), &[x.scale(&two), y.scale(&two)])?;
    let even = CosetUnion::coset(doubled, LatticePoint::zero(x.rank()))?;
    even.union(&sym)
}

/// Closed form of a generated space in ℤ.
///
/// `reflection`: `pℤ + e` with `0 <= e < p` (or `{e}` when `p = 0`).
/// `symmetric`: `pℤ`, or `p(2ℤ + 1)` when `odd` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZClassification {
    pub kind: ZKind,
    #[serde(with = "crate::lattice::json_int")]
    pub p: BigInt,
    #[serde(with = "crate::lattice::json_int")]
    pub e: BigInt,
    pub odd: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZKind {
    Reflection,
    Symmetric,
}

impl ZClassification {
    pub fn to_coset_union(&self) -> Result<CosetUnion> {
        let g = |k: &BigInt| Subgroup::generated_by(1, &[LatticePoint(vec![k.clone()])]);
        let pt = |k: BigInt| LatticePoint(vec![k]);
        match (self.kind, self.odd) {
            (ZKind::Symmetric, true) => CosetUnion::coset(g(&(&self.p * 2))?, pt(self.p.clone())),
            _ => CosetUnion::coset(g(&self.p)?, pt(self.e.clone())),
        }
    }
}

impl fmt::Display for ZClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.odd) {
            (ZKind::Symmetric, true) => write!(f, "{}(2Z+1)", self.p),
            (ZKind::Symmetric, false) => write!(f, "{}Z", self.p),
            (ZKind::Reflection, _) => write!(f, "{}Z+{}", self.p, self.e),
        }
    }
}

/// The space generated by a set of integers, in closed form.
pub fn classify_z(gens: &GeneratorSet, rule: Rule) -> Result<ZClassification> {
    if gens.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: gens.rank() });
    }
    let a: Vec<&BigInt> = gens.points().iter().map(|p| &p.0[0]).collect();
    let gcd_all = |it: &mut dyn Iterator<Item = BigInt>| it.fold(BigInt::zero(), |g, v| g.gcd(&v));
    Ok(match rule {
        Rule::Reflection => {
            let p = gcd_all(&mut a.iter().map(|&v| v - a[0]));
            let e = if p.is_zero() { a[0].clone() } else { a[0].mod_floor(&p) };
            ZClassification { kind: ZKind::Reflection, p, e, odd: false }
        }
        Rule::Pointed => {
            let p = gcd_all(&mut a.iter().map(|&v| v.clone()));
            ZClassification { kind: ZKind::Symmetric, p, e: BigInt::zero(), odd: false }
        }
        Rule::Symmetric => {
            let d = gcd_all(&mut a.iter().map(|&v| v.clone()));
            let odd = !d.is_zero() && a.iter().all(|&v| (v / &d).is_odd());
            ZClassification { kind: ZKind::Symmetric, p: d.abs(), e: BigInt::zero(), odd }
        }
    })
}

/// Whether a coset union `⋃ (S + xᵢ)` is closed under `2xᵢ - xⱼ`.
pub fn coset_union_is_reflection_space(c: &CosetUnion) -> Result<bool> {
    let two = BigInt::from(2);
    for xi in c.reps() {
        for xj in c.reps() {
            if !c.contains(&xi.scale(&two).sub(xj))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Inner window must contain three times the generators' bounding box and
/// the outer window four times the inner one.
pub fn check_margins(gens: &GeneratorSet, inner: &Window, outer: &Window) -> Result<()> {
    let bbox3 = gens.bounding_box()?.scaled(3)?;
    if !inner.contains_window(&bbox3) {
        return Err(Error::WindowMisconfigured(format!(
            "inner window {inner} must contain 3x the generator box {bbox3}"
        )));
    }
    let inner4 = inner.scaled(4)?;
    if !outer.contains_window(&inner4) {
        return Err(Error::WindowMisconfigured(format!(
            "outer window {outer} must contain 4x the inner window ({inner4})"
        )));
    }
    Ok(())
}

/// Members of a closure that fall inside `inner`.
pub fn restrict(points: &[LatticePoint], inner: &Window) -> Vec<LatticePoint> {
    points.iter().filter(|p| inner.contains_point(p)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(v)
    }

    fn ints(v: &[i64]) -> Vec<LatticePoint> {
        v.iter().map(|&k| p(&[k])).collect()
    }

    fn gens(v: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::new(v.iter().map(|q| p(q)).collect()).unwrap()
    }

    fn coset1(m: i64, r: i64) -> CosetUnion {
        CosetUnion::coset(Subgroup::generated_by(1, &[p(&[m])]).unwrap(), p(&[r])).unwrap()
    }

    #[test]
    fn reflection_predicate() {
        let b = Window::cube(1, 30).unwrap();
        let full = coset1(9, 6).enumerate(&b).unwrap();
        assert_eq!(full, ints(&[-30, -21, -12, -3, 6, 15, 24]));
        assert!(is_reflection_space_in_box(&full, &b).unwrap().holds);
        let partial = ints(&[-21, -12, -3, 6, 15, 24]);
        let r = is_reflection_space_in_box(&partial, &b).unwrap();
        assert_eq!(r.witness, Some((p(&[-21]), p(&[-12]))));
        let r = is_reflection_space_in_box(&ints(&[6, 15]), &b).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some((p(&[6]), p(&[15]))));
        assert!(is_reflection_space_in_box(&ints(&[7]), &b).unwrap().holds);
        assert!(is_reflection_space_in_box(&ints(&[31]), &b).is_err());
    }

    #[test]
    fn symmetric_predicate() {
        let b = Window::cube(1, 30).unwrap();
        let three: Vec<_> = (-10..=10).map(|k| p(&[3 * k])).collect();
        assert!(is_symmetric_reflection_space_in_box(&three, &b).unwrap().holds);
        let r = is_symmetric_reflection_space_in_box(&ints(&[5]), &b).unwrap();
        assert_eq!(r.witness, Some((p(&[5]), p(&[5]))));
        let b33 = Window::cube(1, 33).unwrap();
        let odd: Vec<_> = (-6..=5).map(|k| p(&[6 * k + 3])).collect();
        assert!(is_symmetric_reflection_space_in_box(&odd, &b33).unwrap().holds);
    }

    #[test]
    fn closure_examples() {
        let b = Window::cube(1, 200).unwrap();
        let inner = Window::cube(1, 50).unwrap();
        let g = gens(&[&[6], &[15]]);
        let refl = restrict(&closure(&g, Rule::Reflection, &b).unwrap(), &inner);
        assert_eq!(refl, coset1(9, 6).enumerate(&inner).unwrap());
        let sym = restrict(&closure(&g, Rule::Symmetric, &b).unwrap(), &inner);
        assert_eq!(sym, coset1(3, 0).enumerate(&inner).unwrap());
        let single = gens(&[&[4, -2]]);
        let b2 = Window::cube(2, 10).unwrap();
        assert_eq!(closure(&single, Rule::Reflection, &b2).unwrap(), vec![p(&[4, -2])]);
        assert!(closure(&gens(&[&[11]]), Rule::Reflection, &Window::cube(1, 10).unwrap()).is_err());
    }

    #[test]
    fn fast_closure_matches_reference() {
        let b = Window::new(vec![-13, -9], vec![11, 12]).unwrap();
        for rule in [Rule::Reflection, Rule::Symmetric, Rule::Pointed] {
            for g in [gens(&[&[1, 2], &[3, -1]]), gens(&[&[2, 0], &[0, 3], &[1, 1]]), gens(&[&[-4, 5]])] {
                assert_eq!(closure(&g, rule, &b).unwrap(), closure_reference(&g, rule, &b).unwrap(), "{rule}");
            }
        }
        let long = Window::cube(1, 140).unwrap();
        let g = gens(&[&[-7], &[12]]);
        for rule in [Rule::Reflection, Rule::Symmetric, Rule::Pointed] {
            assert_eq!(closure(&g, rule, &long).unwrap(), closure_reference(&g, rule, &long).unwrap());
        }
    }

    #[test]
    fn two_generator_formulas() {
        assert_eq!(two_gen_reflection(&p(&[6]), &p(&[15])).unwrap(), coset1(9, 6));
        let single = two_gen_reflection(&p(&[4]), &p(&[4])).unwrap();
        assert!(single.subgroup().is_trivial());
        let diag = two_gen_reflection(&p(&[1, 0]), &p(&[0, 1])).unwrap();
        let expected = CosetUnion::coset(Subgroup::generated_by(2, &[p(&[-1, 1])]).unwrap(), p(&[1, 0])).unwrap();
        assert_eq!(diag, expected);

        assert!(coset_union_equal(&two_gen_symmetric(&p(&[6]), &p(&[15])).unwrap(), &coset1(3, 0)).unwrap());
        assert!(coset_union_equal(&two_gen_symmetric(&p(&[15]), &p(&[27])).unwrap(), &coset1(6, 3)).unwrap());
        let zero = two_gen_symmetric(&p(&[0]), &p(&[0])).unwrap();
        assert_eq!(zero.enumerate(&Window::cube(1, 5).unwrap()).unwrap(), vec![p(&[0])]);

        assert!(coset_union_equal(&two_gen_pointed(&p(&[6]), &p(&[15])).unwrap(), &coset1(3, 0)).unwrap());
        assert!(coset_union_equal(&two_gen_pointed(&p(&[15]), &p(&[27])).unwrap(), &coset1(3, 0)).unwrap());
        let zero = two_gen_pointed(&p(&[0]), &p(&[0])).unwrap();
        assert_eq!(zero.enumerate(&Window::cube(1, 5).unwrap()).unwrap(), vec![p(&[0])]);
    }

    #[test]
    fn formula_matches_closure_in_rank_two() {
        let outer = Window::cube(2, 48).unwrap();
        let inner = Window::cube(2, 12).unwrap();
        let (x, y) = (p(&[1, 0]), p(&[0, 1]));
        let g = GeneratorSet::new(vec![x.clone(), y.clone()]).unwrap();
        for (rule, formula) in [
            (Rule::Reflection, two_gen_reflection(&x, &y).unwrap()),
            (Rule::Symmetric, two_gen_symmetric(&x, &y).unwrap()),
            (Rule::Pointed, two_gen_pointed(&x, &y).unwrap()),
        ] {
            let got = restrict(&closure(&g, rule, &outer).unwrap(), &inner);
            assert_eq!(got, formula.enumerate(&inner).unwrap(), "{rule}");
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_z(&gens(&[&[6], &[15]]), Rule::Reflection).unwrap();
        assert_eq!((c.p.clone(), c.e.clone()), (BigInt::from(9), BigInt::from(6)));
        let c = classify_z(&gens(&[&[6], &[15]]), Rule::Symmetric).unwrap();
        assert_eq!((c.p.clone(), c.odd), (BigInt::from(3), false));
        let c = classify_z(&gens(&[&[15], &[27]]), Rule::Symmetric).unwrap();
        assert_eq!((c.p.clone(), c.odd), (BigInt::from(3), true));
        assert_eq!(c.to_coset_union().unwrap(), coset1(6, 3));
        let c = classify_z(&gens(&[&[6], &[15]]), Rule::Pointed).unwrap();
        assert_eq!(c.to_coset_union().unwrap(), coset1(3, 0));
        let c = classify_z(&gens(&[&[0]]), Rule::Symmetric).unwrap();
        assert_eq!(c.to_coset_union().unwrap().enumerate(&Window::cube(1, 3).unwrap()).unwrap(), ints(&[0]));
        assert!(GeneratorSet::new(vec![]).is_err());
    }

    #[test]
    fn coset_union_reflection_check() {
        let s3 = Subgroup::generated_by(2, &[p(&[3, 0]), p(&[0, 3])]).unwrap();
        let e1 = CosetUnion::new(s3, vec![p(&[1, 0]), p(&[0, 1]), p(&[2, 2])]).unwrap();
        assert!(coset_union_is_reflection_space(&e1).unwrap());
        assert!(coset_union_is_reflection_space(&coset1(7, 2)).unwrap());
        let g3 = Subgroup::generated_by(1, &[p(&[3])]).unwrap();
        let bad = CosetUnion::new(g3, vec![p(&[1]), p(&[0])]).unwrap();
        assert!(!coset_union_is_reflection_space(&bad).unwrap());
    }

    #[test]
    fn margins_are_enforced() {
        let g = gens(&[&[6], &[15]]);
        let inner = Window::cube(1, 50).unwrap();
        assert!(check_margins(&g, &inner, &Window::cube(1, 200).unwrap()).is_ok());
        assert!(check_margins(&g, &inner, &Window::cube(1, 199).unwrap()).is_err());
        assert!(check_margins(&g, &Window::cube(1, 44).unwrap(), &Window::cube(1, 200).unwrap()).is_err());
    }

    #[test]
    fn extract_handles_edges() {
        let row = [u64::MAX, 0b1011];
        assert_eq!(extract64(&row, -3, 68), u64::MAX << 3);
        assert_eq!(extract64(&row, 62, 68), 0b101111);
        assert_eq!(extract64(&row, 68, 68), 0);
        assert_eq!(extract64(&row, -64, 68), 0);
    }
}
