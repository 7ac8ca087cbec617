//! Classical root systems in ε-coordinates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Subgroup};

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    BC,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "BC" => Ok(RootType::BC),
            _ => Err(Error::Parse(format!("unknown root system type {s:?}"))),
        }
    }
}

/// A finite root system of classical type. Roots are stored in descending
/// lexicographic order, so positive-looking roots such as `ε₁ - ε₂` precede
/// their negatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    dim: usize,
    roots: Vec<Root>,
    lookup: BTreeSet<Root>,
}

pub fn inner(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨μ, ν⟩ = 2(μ, ν)/(ν, ν)`, with `⟨0, ν⟩ = 0`.
pub fn cartan_integer(mu: &[i64], nu: &[i64]) -> Result<i64> {
    let nn = inner(nu, nu);
    if nn == 0 {
        return Err(Error::ZeroVector);
    }
    if mu.iter().all(|&x| x == 0) {
        return Ok(0);
    }
    let num = 2 * inner(mu, nu);
    if num % nn != 0 {
        return Err(Error::NonIntegral(format!("2({mu:?},{nu:?})/({nu:?},{nu:?}) = {num}/{nn}")));
    }
    Ok(num / nn)
}

fn unit(dim: usize, i: usize, c: i64) -> Root {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn sum(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl RootSystem {
    pub fn build(kind: RootType, rank: usize) -> Result<Self> {
        let min = if kind == RootType::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::InvalidRank { kind: kind.to_string(), rank });
        }
        let dim = if kind == RootType::A { rank + 1 } else { rank };
        let mut set = BTreeSet::new();
        let e = |i: usize, c: i64| unit(dim, i, c);
        match kind {
            RootType::A => {
                for i in 0..dim {
                    for j in 0..dim {
                        if i != j {
                            set.insert(sum(&e(i, 1), &e(j, -1)));
                        }
                    }
                }
            }
            _ => {
                for i in 0..dim {
                    for j in 0..dim {
                        if i != j {
                            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                                set.insert(sum(&e(i, a), &e(j, b)));
                            }
                        }
                    }
                    for s in [1, -1] {
                        if matches!(kind, RootType::B | RootType::BC) {
                            set.insert(e(i, s));
                        }
                        if matches!(kind, RootType::C | RootType::BC) {
                            set.insert(e(i, 2 * s));
                        }
                    }
                }
            }
        }
        let roots: Vec<Root> = set.iter().rev().cloned().collect();
        Ok(RootSystem { kind, rank, dim, roots, lookup: set })
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn type_label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of the coordinate vectors.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.lookup.contains(v)
    }

    /// Whether `v ∈ Δ ∪ {0}`.
    pub fn is_weight(&self, v: &[i64]) -> bool {
        v.len() == self.dim && (v.iter().all(|&x| x == 0) || self.contains(v))
    }

    pub fn zero(&self) -> Root {
        vec![0; self.dim]
    }

    /// `σ_α(β) = β - ⟨β, α⟩α`.
    pub fn reflect(&self, alpha: &[i64], beta: &[i64]) -> Result<Root> {
        if !self.contains(alpha) {
            return Err(Error::NotARoot(format!("{alpha:?}")));
        }
        if beta.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: beta.len() });
        }
        let c = cartan_integer(beta, alpha)?;
        Ok(beta.iter().zip(alpha).map(|(b, a)| b - c * a).collect())
    }

    /// `Δ^red`: roots whose half is not a root.
    pub fn reduced(&self) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|r| {
                !(r.iter().all(|x| x % 2 == 0) && self.contains(&r.iter().map(|x| x / 2).collect::<Vec<_>>()))
            })
            .cloned()
            .collect()
    }

    pub fn root_lattice(&self) -> Subgroup {
        let gens: Vec<LatticePoint> = self.roots.iter().map(|r| LatticePoint::from_i64s(r)).collect();
        Subgroup::generated_by(self.dim, &gens).expect("roots share one dimension")
    }

    /// Whether the graph joining non-orthogonal roots is connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.roots.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && inner(&self.roots[i], &self.roots[j]) != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether `pi` is a basis of the span of Δ whose orbit under the
    /// reflections `σ_π` (π ∈ pi) contains every reduced root.
    pub fn is_reflectable_base(&self, pi: &[Root]) -> bool {
        if pi.iter().any(|p| !self.contains(p)) {
            return false;
        }
        let pts: Vec<LatticePoint> = pi.iter().map(|r| LatticePoint::from_i64s(r)).collect();
        let span_rank = Subgroup::generated_by(self.dim, &pts).map(|s| s.rank()).unwrap_or(0);
        if pi.len() != span_rank || span_rank != self.root_lattice().rank() {
            return false;
        }
        let mut orbit: BTreeSet<Root> = pi.iter().cloned().collect();
        let mut queue: VecDeque<Root> = pi.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for p in pi {
                let s = self.reflect(p, &r).expect("base roots lie in the system");
                if orbit.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        self.reduced().iter().all(|r| orbit.contains(r))
    }

    /// Simple roots `εᵢ - εᵢ₊₁` completed by `εℓ` (B and BC), `2εℓ` (C) or
    /// `εℓ₋₁ + εℓ` (D).
    pub fn standard_reflectable_base(&self) -> Vec<Root> {
        let d = self.dim;
        let e = |i: usize, c: i64| unit(d, i, c);
        let mut base: Vec<Root> = (0..d - 1).map(|i| sum(&e(i, 1), &e(i + 1, -1))).collect();
        match self.kind {
            RootType::A => {}
            RootType::B | RootType::BC => base.push(e(d - 1, 1)),
            RootType::C => base.push(e(d - 1, 2)),
            RootType::D => base.push(sum(&e(d - 2, 1), &e(d - 1, 1))),
        }
        debug_assert!(self.is_reflectable_base(&base));
        base
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.type_label())
    }
}

#[derive(Serialize, Deserialize)]
struct RootSystemJson {
    #[serde(rename = "type")]
    kind: RootType,
    rank: usize,
    roots: Vec<Root>,
}

impl Serialize for RootSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootSystemJson { kind: self.kind, rank: self.rank, roots: self.roots.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RootSystemJson::deserialize(d)?;
        let rs = RootSystem::build(raw.kind, raw.rank).map_err(D::Error::custom)?;
        let given: BTreeSet<Root> = raw.roots.into_iter().collect();
        if given != rs.lookup {
            return Err(D::Error::custom(format!("roots do not form {}", rs.type_label())));
        }
        Ok(rs)
    }
}
