use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{AlgebraElement, Term};
use crate::error::{Error, Result};
use crate::lattice::{hnf, LatticePoint, Subgroup, Window};
use crate::linalg::Echelon;
use crate::rootsys::{RootSystem, RootType};
use crate::scalar::Scalar;

/// A weight of the root grading, in the coordinates of the root system.
pub type Weight = Vec<i64>;
/// A degree of the group grading.
pub type Degree = Vec<i64>;

/// A window-truncated subalgebra of `sl_N ⊗ F[t_1^±1, ..., t_n^±1]`, doubly
/// graded by weights `w(i) - w(j)` of the matrix units and by group degrees.
///
/// The group degree of `x ⊗ t^u` in weight `μ` is `u - offset(μ)`; offsets are
/// zero except on isotopes. The Laurent exponents of stored elements always lie
/// in `window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    label: String,
    matrix_size: usize,
    window: Window,
    coord_weights: Vec<Weight>,
    root_system: RootSystem,
    offsets: BTreeMap<Weight, Degree>,
    group: Subgroup,
    spaces: BTreeMap<(Weight, Degree), Echelon<Term>>,
    ambient: BTreeMap<Weight, usize>,
}

fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl GradedAlgebra {
    /// An algebra with no stored elements.
    pub fn empty(
        label: impl Into<String>,
        matrix_size: usize,
        window: Window,
        coord_weights: Vec<Weight>,
        root_system: RootSystem,
    ) -> Result<Self> {
        if matrix_size < 2 {
            return Err(Error::InvalidMatrixSize(matrix_size));
        }
        if coord_weights.len() != matrix_size {
            return Err(Error::DimensionMismatch { expected: matrix_size, found: coord_weights.len() });
        }
        if let Some(w) = coord_weights.iter().find(|w| w.len() != root_system.dim()) {
            return Err(Error::DimensionMismatch { expected: root_system.dim(), found: w.len() });
        }
        let mut ambient = BTreeMap::new();
        for i in 0..matrix_size {
            for j in 0..matrix_size {
                if i != j {
                    *ambient.entry(vsub(&coord_weights[i], &coord_weights[j])).or_insert(0) += 1;
                }
            }
        }
        *ambient.entry(root_system.zero()).or_insert(0) += matrix_size - 1;
        if let Some(w) = ambient.keys().find(|w| !root_system.is_weight(w)) {
            return Err(Error::UnknownWeight(format!("{w:?} (matrix unit weight outside the root system)")));
        }
        let n = window.rank();
        Ok(GradedAlgebra {
            label: label.into(),
            matrix_size,
            window,
            coord_weights,
            root_system,
            offsets: BTreeMap::new(),
            group: Subgroup::trivial(n),
            spaces: BTreeMap::new(),
            ambient,
        })
    }

    /// Same context and offsets, no elements, new exponent window.
    pub fn empty_like(&self, window: Window) -> Self {
        let mut out = self.clone();
        out.group = Subgroup::trivial(window.rank());
        out.window = window;
        out.spaces.clear();
        out
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn group_rank(&self) -> usize {
        self.window.rank()
    }

    /// The window of Laurent exponents.
    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn coord_weights(&self) -> &[Weight] {
        &self.coord_weights
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    /// The subgroup generated by the support.
    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn offsets(&self) -> &BTreeMap<Weight, Degree> {
        &self.offsets
    }

    pub fn offset(&self, mu: &[i64]) -> Degree {
        self.offsets.get(mu).cloned().unwrap_or_else(|| vec![0; self.group_rank()])
    }

    /// Weights `Δ ∪ {0}`, zero first.
    pub fn weights(&self) -> Vec<Weight> {
        let mut out = vec![self.root_system.zero()];
        out.extend(self.root_system.roots().iter().cloned());
        out
    }

    fn check_weight(&self, mu: &[i64]) -> Result<()> {
        if mu.len() == self.root_system.dim() && self.root_system.is_weight(mu) {
            Ok(())
        } else {
            Err(Error::UnknownWeight(format!("{mu:?}")))
        }
    }

    /// Dimension of the weight-`μ` part of `sl_N` itself.
    pub fn ambient_dim(&self, mu: &[i64]) -> usize {
        self.ambient.get(mu).copied().unwrap_or(0)
    }

    /// Group degrees available to weight `μ`: the exponent window minus the offset.
    pub fn grading_window(&self, mu: &[i64]) -> Window {
        let off: Vec<i64> = self.offset(mu).iter().map(|x| -x).collect();
        self.window.translated(&off).expect("offsets are small")
    }

    /// Weight and group degree of a nonzero homogeneous element.
    pub fn bidegree(&self, x: &AlgebraElement) -> Result<(Weight, Degree)> {
        let exp = x.exponent().ok_or_else(|| Error::Inhomogeneous(format!("{x}: mixed exponents")))?;
        if exp.len() != self.group_rank() {
            return Err(Error::DimensionMismatch { expected: self.group_rank(), found: exp.len() });
        }
        if let Some(t) = x.terms().keys().find(|t| t.i >= self.matrix_size || t.j >= self.matrix_size) {
            return Err(Error::NotInAlgebra(format!("index ({},{}) exceeds N={}", t.i, t.j, self.matrix_size)));
        }
        let mu = x
            .weight(&self.coord_weights)
            .ok_or_else(|| Error::Inhomogeneous(format!("{x}: mixed weights")))?;
        self.check_weight(&mu)?;
        if !x.is_traceless() {
            return Err(Error::NotInAlgebra(format!("{x} is not traceless")));
        }
        let g = vsub(exp, &self.offset(&mu));
        Ok((mu, g))
    }

    /// Adds a homogeneous element to its space; returns whether the space grew.
    pub fn insert(&mut self, x: AlgebraElement) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        let (mu, g) = self.bidegree(&x)?;
        let exp = x.exponent().unwrap();
        if !self.window.contains(exp) {
            return Err(Error::OutsideWindow { point: format!("{exp:?}"), window: self.window.to_string() });
        }
        Ok(self.insert_at(mu, g, x))
    }

    fn insert_at(&mut self, mu: Weight, g: Degree, x: AlgebraElement) -> bool {
        let grew = self.spaces.entry((mu, g.clone())).or_default().insert(x.into_terms());
        let p = LatticePoint::from_i64s(&g);
        if grew && !self.group.contains(&p).unwrap() {
            self.group = self.group.join(&hnf(g.len(), &[p]).unwrap()).unwrap();
        }
        grew
    }

    fn space(&self, mu: &[i64], g: &[i64]) -> Option<&Echelon<Term>> {
        self.spaces.get(&(mu.to_vec(), g.to_vec()))
    }

    pub fn dim(&self, mu: &[i64], g: &[i64]) -> usize {
        self.space(mu, g).map_or(0, Echelon::dim)
    }

    /// The canonical (row-reduced) basis of `L_μ^g`.
    pub fn basis(&self, mu: &[i64], g: &[i64]) -> Vec<AlgebraElement> {
        self.space(mu, g)
            .map(|e| e.rows().iter().cloned().map(AlgebraElement::from_terms).collect())
            .unwrap_or_default()
    }

    /// Whether `x` lies in the stored algebra. Inhomogeneous elements are split
    /// into bihomogeneous parts first.
    pub fn contains(&self, x: &AlgebraElement) -> Result<bool> {
        let mut parts: BTreeMap<(Weight, Vec<i64>), AlgebraElement> = BTreeMap::new();
        for (t, c) in x.terms() {
            if t.i >= self.matrix_size || t.j >= self.matrix_size {
                return Ok(false);
            }
            let w = vsub(&self.coord_weights[t.i], &self.coord_weights[t.j]);
            let part = parts.entry((w, t.exp.clone())).or_default();
            *part = &*part + &AlgebraElement::monomial(t.i, t.j, &t.exp, c.clone());
        }
        for part in parts.values() {
            let (mu, g) = self.bidegree(part)?;
            match self.space(&mu, &g) {
                Some(e) if e.contains(part.terms()) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Sorted degrees `g` with `L_μ^g ≠ 0`.
    pub fn support(&self, mu: &[i64]) -> Result<Vec<LatticePoint>> {
        self.check_weight(mu)?;
        Ok(self.support_raw(mu).into_iter().map(|g| LatticePoint::from_i64s(&g)).collect())
    }

    pub(crate) fn support_raw(&self, mu: &[i64]) -> Vec<Degree> {
        let lo = (mu.to_vec(), Vec::new());
        self.spaces
            .range(lo..)
            .take_while(|((w, _), _)| w.as_slice() == mu)
            .filter(|(_, e)| !e.is_empty())
            .map(|((_, g), _)| g.clone())
            .collect()
    }

    /// All degrees of the support over every weight, sorted and deduplicated.
    pub fn total_support(&self) -> Vec<Degree> {
        let mut out: Vec<Degree> = self.spaces.keys().map(|(_, g)| g.clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Nonzero spaces as `(weight, degree, dim)`.
    pub fn spaces(&self) -> impl Iterator<Item = (&Weight, &Degree, usize)> {
        self.spaces.iter().filter(|(_, e)| !e.is_empty()).map(|((w, g), e)| (w, g, e.dim()))
    }

    /// Every stored basis element whose group degree lies in `degrees`.
    pub fn basis_elements(&self, degrees: &Window) -> Vec<(Weight, Degree, AlgebraElement)> {
        let mut out = Vec::new();
        for ((w, g), e) in &self.spaces {
            if degrees.contains(g) {
                for row in e.rows() {
                    out.push((w.clone(), g.clone(), AlgebraElement::from_terms(row.clone())));
                }
            }
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Echelon::dim).sum()
    }

    /// `μ(h)` for a diagonal `h`, via any matrix unit of weight `μ`.
    pub fn weight_value(&self, mu: &[i64], h: &AlgebraElement) -> Option<Scalar> {
        if mu.iter().all(|&x| x == 0) {
            return Some(Scalar::zero());
        }
        let n = self.matrix_size;
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && vsub(&self.coord_weights[i], &self.coord_weights[j]) == mu)?;
        let diag = |k: usize| -> Scalar {
            h.terms().iter().filter(|(t, _)| t.i == k && t.j == k).map(|(_, c)| c.clone()).fold(Scalar::zero(), |a, b| a + b)
        };
        Some(&diag(i) - &diag(j))
    }

    /// The algebra with every weight-`μ` space moved from degree `g` to
    /// `g - s(μ)`, so `(L^(s))_μ^g = L_μ^(g+s(μ))`.
    pub fn regraded(&self, shift: impl Fn(&[i64]) -> Degree) -> Self {
        let mut out = self.clone();
        out.offsets.clear();
        for mu in self.weights() {
            let off = vadd(&self.offset(&mu), &shift(&mu));
            if off.iter().any(|&x| x != 0) {
                out.offsets.insert(mu, off);
            }
        }
        out.spaces = self
            .spaces
            .iter()
            .map(|((mu, g), e)| ((mu.clone(), vsub(g, &shift(mu))), e.clone()))
            .collect();
        let support: Vec<LatticePoint> = out.total_support().iter().map(|g| LatticePoint::from_i64s(g)).collect();
        out.group = hnf(self.group_rank(), &support).unwrap();
        out
    }

    /// The full `sl_N` multi-loop algebra on `window`; weights are those of
    /// type `A_(N-1)` with `w(i) = ε_i`.
    pub fn multiloop(matrix_size: usize, group_rank: usize, window: &Window) -> Result<Self> {
        if matrix_size < 2 {
            return Err(Error::InvalidMatrixSize(matrix_size));
        }
        if group_rank == 0 {
            return Err(Error::InvalidWindow("group rank must be at least 1".into()));
        }
        if window.rank() != group_rank {
            return Err(Error::DimensionMismatch { expected: group_rank, found: window.rank() });
        }
        let rs = RootSystem::build(RootType::A, matrix_size - 1)?;
        let coord_weights = (0..matrix_size)
            .map(|i| (0..matrix_size).map(|k| i64::from(k == i)).collect())
            .collect();
        let mut out = GradedAlgebra::empty(
            format!("sl{matrix_size} multiloop, rank {group_rank}"),
            matrix_size,
            window.clone(),
            coord_weights,
            rs,
        )?;
        for u in window.points() {
            for i in 0..matrix_size {
                for j in 0..matrix_size {
                    let x = if i == j {
                        if i + 1 == matrix_size {
                            continue;
                        }
                        AlgebraElement::diagonal_difference(i, i + 1, &u)
                    } else {
                        AlgebraElement::unit(i, j, &u)
                    };
                    out.insert(x)?;
                }
            }
        }
        Ok(out)
    }

    /// The least bracket-closed graded subspace containing `gens`, truncated
    /// to `window` (default: this algebra's window). Brackets whose exponent
    /// leaves the window are dropped.
    pub fn generate_subalgebra(&self, gens: &[AlgebraElement], window: Option<&Window>) -> Result<Self> {
        let window = window.unwrap_or(&self.window).clone();
        if window.rank() != self.group_rank() {
            return Err(Error::DimensionMismatch { expected: self.group_rank(), found: window.rank() });
        }
        let mut out = self.empty_like(window.clone());
        out.label = format!("subalgebra of {}", self.label);
        let mut queue: VecDeque<(AlgebraElement, Weight, Vec<i64>)> = VecDeque::new();
        for x in gens {
            if x.is_zero() {
                continue;
            }
            let (mu, g) = self.bidegree(x)?;
            let exp = x.exponent().unwrap().to_vec();
            if !window.contains(&exp) {
                return Err(Error::OutsideWindow { point: format!("{exp:?}"), window: window.to_string() });
            }
            if out.insert_at(mu.clone(), g, x.clone()) {
                queue.push_back((x.clone(), mu, exp));
            }
        }
        let mut done: Vec<(AlgebraElement, Weight, Vec<i64>)> = Vec::new();
        while let Some((x, mu, exp)) = queue.pop_front() {
            for (y, nu, f) in &done {
                let e = vadd(&exp, f);
                if !window.contains(&e) {
                    continue;
                }
                let w = vadd(&mu, nu);
                let full = self.ambient_dim(&w);
                if full == 0 {
                    continue;
                }
                let g = vsub(&e, &self.offset(&w));
                if out.dim(&w, &g) == full {
                    continue;
                }
                let z = x.bracket(y);
                if !z.is_zero() && out.insert_at(w.clone(), g, z.clone()) {
                    queue.push_back((z, w, e));
                }
            }
            done.push((x, mu, exp));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct OffsetJson {
    weight: Weight,
    shift: Degree,
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    weight: Weight,
    degree: Degree,
    basis: Vec<AlgebraElement>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    label: String,
    matrix_size: usize,
    group_rank: usize,
    window: Window,
    root_system: RootSystem,
    coord_weights: Vec<Weight>,
    offsets: Vec<OffsetJson>,
    group: Subgroup,
    spaces: Vec<SpaceJson>,
}

impl Serialize for GradedAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson {
            label: self.label.clone(),
            matrix_size: self.matrix_size,
            group_rank: self.group_rank(),
            window: self.window.clone(),
            root_system: self.root_system.clone(),
            coord_weights: self.coord_weights.clone(),
            offsets: self.offsets.iter().map(|(w, s)| OffsetJson { weight: w.clone(), shift: s.clone() }).collect(),
            group: self.group.clone(),
            spaces: self
                .spaces
                .iter()
                .filter(|(_, e)| !e.is_empty())
                .map(|((w, g), _)| SpaceJson { weight: w.clone(), degree: g.clone(), basis: self.basis(w, g) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = AlgebraJson::deserialize(d)?;
        let err = |e: Error| D::Error::custom(e.to_string());
        if j.group_rank != j.window.rank() {
            return Err(D::Error::custom("group_rank does not match the window"));
        }
        let mut out = GradedAlgebra::empty(j.label, j.matrix_size, j.window, j.coord_weights, j.root_system)
            .map_err(err)?;
        for o in j.offsets {
            if o.shift.len() != j.group_rank {
                return Err(D::Error::custom("offset has the wrong rank"));
            }
            out.check_weight(&o.weight).map_err(err)?;
            out.offsets.insert(o.weight, o.shift);
        }
        for sp in j.spaces {
            for x in sp.basis {
                let (mu, g) = out.bidegree(&x).map_err(err)?;
                if mu != sp.weight || g != sp.degree {
                    return Err(D::Error::custom(format!("basis element {x} is not in space {:?}/{:?}", sp.weight, sp.degree)));
                }
                out.insert(x).map_err(err)?;
            }
        }
        if out.group != j.group {
            return Err(D::Error::custom("group does not match the support"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(r: i64) -> Window {
        Window::cube(1, r).unwrap()
    }

    #[test]
    fn multiloop_dimension_count() {
        let l = GradedAlgebra::multiloop(2, 1, &win(3)).unwrap();
        assert_eq!(l.total_dim(), 21);
        let x = AlgebraElement::unit(0, 1, &[2]);
        assert_eq!(l.bidegree(&x).unwrap(), (vec![1, -1], vec![2]));
        assert!(l.contains(&x).unwrap());
        assert!(l.group().is_full());
    }

    #[test]
    fn invalid_sizes() {
        assert_eq!(GradedAlgebra::multiloop(1, 1, &win(1)), Err(Error::InvalidMatrixSize(1)));
        assert!(GradedAlgebra::multiloop(2, 2, &win(1)).is_err());
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let l = GradedAlgebra::multiloop(2, 1, &win(3)).unwrap();
        let bad = &AlgebraElement::unit(0, 1, &[1]) + &AlgebraElement::unit(0, 1, &[2]);
        assert!(matches!(l.generate_subalgebra(&[bad], None), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn full_basis_generates_everything() {
        let l = GradedAlgebra::multiloop(2, 1, &win(2)).unwrap();
        let gens: Vec<_> = l.basis_elements(&win(2)).into_iter().map(|(_, _, x)| x).collect();
        let s = l.generate_subalgebra(&gens, None).unwrap();
        assert_eq!(s.total_dim(), l.total_dim());
    }

    #[test]
    fn loop_subalgebra_support() {
        let l = GradedAlgebra::multiloop(2, 1, &win(30)).unwrap();
        let gens = [
            AlgebraElement::unit(0, 1, &[2]),
            AlgebraElement::unit(1, 0, &[-2]),
            AlgebraElement::diagonal_difference(0, 1, &[3]),
            AlgebraElement::diagonal_difference(0, 1, &[-3]),
        ];
        let s = l.generate_subalgebra(&gens, None).unwrap();
        let alpha: Vec<i64> = s.support(&[1, -1]).unwrap().iter().map(|p| p.to_i64s().unwrap()[0]).collect();
        let expected: Vec<i64> = (-30..=30).filter(|k: &i64| k.rem_euclid(3) == 2).collect();
        assert_eq!(alpha, expected);
        let minus: Vec<i64> = s.support(&[-1, 1]).unwrap().iter().map(|p| p.to_i64s().unwrap()[0]).collect();
        let mut neg: Vec<i64> = alpha.iter().map(|k| -k).collect();
        neg.sort();
        assert_eq!(minus, neg);
        assert!(matches!(s.support(&[2, -2]), Err(Error::UnknownWeight(_))));
    }

    #[test]
    fn regrade_and_back() {
        let l = GradedAlgebra::multiloop(2, 1, &win(4)).unwrap();
        let shift = |mu: &[i64]| vec![mu[0] * 2];
        let iso = l.regraded(shift);
        assert_eq!(iso.dim(&[1, -1], &[-2]), 1);
        assert_eq!(iso.dim(&[1, -1], &[3]), 0);
        assert_eq!(iso.grading_window(&[1, -1]), Window::new(vec![-6], vec![2]).unwrap());
        let back = iso.regraded(|mu| vec![-mu[0] * 2]);
        assert_eq!(back, l);
    }

    #[test]
    fn json_round_trip() {
        let l = GradedAlgebra::multiloop(3, 1, &win(1)).unwrap().regraded(|mu| vec![mu[0]]);
        let text = serde_json::to_string(&l).unwrap();
        let back: GradedAlgebra = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
