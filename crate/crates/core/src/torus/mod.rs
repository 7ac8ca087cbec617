//! Lie torus axioms, isotopes and shifts, normalization, LEARS extraction and
//! the coroot identity, all at window scale.

mod axioms;
mod lears;
mod twisted;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galg::{AlgebraElement, Degree, GradedAlgebra, Weight};
use crate::lattice::{Subgroup, Window};
use crate::linalg;
use crate::rootsys::{Root, RootSystem};
use crate::scalar::Scalar;

pub use axioms::{check_axioms, check_reflection_propagation, AxiomEntry, AxiomReport, Classification, PropagationReport};
pub use lears::{check_coroot_form_identity, extract_lears, CorootReport, LearsReport};
pub use twisted::{verify_twisted_isotopy, TwistedIsotopyReport, TwistedRow};

/// Outcome of a single window-scale check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    WindowLimited,
}

/// A weight and a group degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub weight: Weight,
    pub degree: Degree,
}

impl Bidegree {
    pub fn new(weight: &[i64], degree: &[i64]) -> Self {
        Bidegree { weight: weight.to_vec(), degree: degree.to_vec() }
    }
}

/// A homomorphism from the root lattice to `ℤ^n`, fixed by its values on a
/// reflectable base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftHom {
    base: Vec<Root>,
    images: Vec<Degree>,
}

impl ShiftHom {
    pub fn new(rs: &RootSystem, base: Vec<Root>, images: Vec<Degree>) -> Result<Self> {
        if base.len() != images.len() {
            return Err(Error::InvalidShift(format!("{} base roots but {} images", base.len(), images.len())));
        }
        if !rs.is_reflectable_base(&base) {
            return Err(Error::InvalidShift(format!("{base:?} is not a reflectable base of {}", rs.type_label())));
        }
        if let Some(g) = images.iter().find(|g| g.len() != images[0].len()) {
            return Err(Error::DimensionMismatch { expected: images[0].len(), found: g.len() });
        }
        Ok(ShiftHom { base, images })
    }

    /// The zero shift on the standard base.
    pub fn zero(rs: &RootSystem, group_rank: usize) -> Self {
        let base = rs.standard_reflectable_base();
        let images = vec![vec![0; group_rank]; base.len()];
        ShiftHom { base, images }
    }

    pub fn base(&self) -> &[Root] {
        &self.base
    }

    pub fn images(&self) -> &[Degree] {
        &self.images
    }

    pub fn group_rank(&self) -> usize {
        self.images[0].len()
    }

    pub fn neg(&self) -> Self {
        let images = self.images.iter().map(|g| g.iter().map(|x| -x).collect()).collect();
        ShiftHom { base: self.base.clone(), images }
    }

    /// `s(μ)` for `μ` in the root lattice.
    pub fn apply(&self, mu: &[i64]) -> Result<Degree> {
        let dim = self.base[0].len();
        if mu.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: mu.len() });
        }
        let a: Vec<Vec<Scalar>> =
            (0..dim).map(|r| self.base.iter().map(|b| Scalar::from_int(b[r])).collect()).collect();
        let rhs: Vec<Scalar> = mu.iter().map(|&x| Scalar::from_int(x)).collect();
        let c = linalg::solve(&a, &rhs).ok_or_else(|| Error::InvalidShift(format!("{mu:?} is outside the span of the base")))?;
        let c: Vec<i64> = c
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::NonIntegral(format!("{mu:?} has coefficient {x} over the base"))))
            .collect::<Result<_>>()?;
        let mut out = vec![0i64; self.group_rank()];
        for (ci, g) in c.iter().zip(&self.images) {
            for (o, gk) in out.iter_mut().zip(g) {
                *o = gk.checked_mul(*ci).and_then(|v| o.checked_add(v)).ok_or_else(|| Error::Overflow("shift".into()))?;
            }
        }
        Ok(out)
    }

    /// `s` on every weight of the algebra.
    pub fn table(&self, l: &GradedAlgebra) -> Result<BTreeMap<Weight, Degree>> {
        if self.group_rank() != l.group_rank() {
            return Err(Error::DimensionMismatch { expected: l.group_rank(), found: self.group_rank() });
        }
        l.weights().into_iter().map(|mu| Ok((mu.clone(), self.apply(&mu)?))).collect()
    }
}

/// The isotope `L^(s)` with `(L^(s))_μ^g = L_μ^(g+s(μ))`. The degree window of
/// weight `μ` moves by `-s(μ)`; see [`GradedAlgebra::grading_window`].
pub fn isotope(l: &GradedAlgebra, s: &ShiftHom) -> Result<GradedAlgebra> {
    if !l.root_system().is_reflectable_base(s.base()) {
        return Err(Error::InvalidShift("shift base is not a reflectable base of the algebra".into()));
    }
    let table = s.table(l)?;
    for mu in l.weights() {
        l.grading_window(&mu).translated(&table[&mu].iter().map(|x| -x).collect::<Vec<_>>())?;
    }
    let mut out = l.regraded(|mu| table[mu].clone());
    out.set_label(format!("isotope of {}", l.label()));
    Ok(out)
}

/// `(m, g) ↦ (m, g + s(m))` on `⟨Δ⟩ × ℤ^n`, with its inverse.
#[derive(Clone, Debug)]
pub struct RegradeMap {
    shift: ShiftHom,
}

pub fn isotopy_regrade_map(s: &ShiftHom) -> RegradeMap {
    RegradeMap { shift: s.clone() }
}

impl RegradeMap {
    pub fn forward(&self, m: &[i64], g: &[i64]) -> Result<(Vec<i64>, Degree)> {
        let s = self.shift.apply(m)?;
        Ok((m.to_vec(), g.iter().zip(&s).map(|(a, b)| a + b).collect()))
    }

    pub fn inverse(&self, m: &[i64], g: &[i64]) -> Result<(Vec<i64>, Degree)> {
        let s = self.shift.apply(m)?;
        Ok((m.to_vec(), g.iter().zip(&s).map(|(a, b)| a - b).collect()))
    }

    /// Whether `f ∘ f⁻¹` and `f⁻¹ ∘ f` are the identity on the samples.
    pub fn round_trips(&self, samples: &[(Vec<i64>, Degree)]) -> Result<bool> {
        for (m, g) in samples {
            let (m1, g1) = self.forward(m, g)?;
            let (m2, g2) = self.inverse(&m1, &g1)?;
            let (m3, g3) = self.inverse(m, g)?;
            let (m4, g4) = self.forward(&m3, &g3)?;
            if (&m2, &g2) != (m, g) || (&m4, &g4) != (m, g) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sort key that prefers small nonnegative coordinates: `0 < 1 < 2 < ... < -1 < -2 < ...`.
fn degree_key(g: &[i64]) -> Vec<(bool, u64)> {
    g.iter().map(|&k| (k < 0, k.unsigned_abs())).collect()
}

/// Result of [`normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub shift: ShiftHom,
    pub algebra: GradedAlgebra,
    pub group: Subgroup,
}

/// Shifts `L` to a normal torus: each standard base root `μ_i` is sent to its
/// minimal support degree (nonnegative coordinates first, then by absolute
/// value, lexicographically).
pub fn normalize(l: &GradedAlgebra) -> Result<Normalized> {
    let rs = l.root_system();
    let base = rs.standard_reflectable_base();
    let mut images = Vec::new();
    for mu in &base {
        let supp = l.support(mu)?;
        let g = supp
            .iter()
            .map(|p| p.to_i64s().expect("window degrees fit in i64"))
            .min_by_key(|g| degree_key(g))
            .ok_or_else(|| Error::WindowTooSmall(format!("no nonzero degree for base root {mu:?}")))?;
        images.push(g);
    }
    let shift = ShiftHom::new(rs, base, images)?;
    let algebra = isotope(l, &shift)?;
    let zero = vec![0; l.group_rank()];
    for alpha in rs.reduced() {
        if algebra.dim(&alpha, &zero) == 0 {
            let exp: Vec<i64> = algebra.offset(&alpha);
            if !l.window().contains(&exp) {
                return Err(Error::WindowTooSmall(format!("degree s({alpha:?}) = {exp:?} is outside the window")));
            }
            return Err(Error::NormalizationFailed(format!("(L^(s))_{alpha:?}^0 = 0")));
        }
    }
    let group = algebra.group().clone();
    Ok(Normalized { shift, algebra, group })
}

/// `exp(ad x) z`, or `None` when `ad x` is not nilpotent on `z` within `2N` steps.
pub(crate) fn exp_ad(x: &AlgebraElement, z: &AlgebraElement, n: usize) -> Option<AlgebraElement> {
    let mut total = z.clone();
    let mut term = z.clone();
    for k in 1..=2 * n + 1 {
        term = x.bracket(&term).scale(&Scalar::new(1, k as i64));
        if term.is_zero() {
            return Some(total);
        }
        total = &total + &term;
    }
    None
}

/// Margin rule shared by the checks: every weight's degree window must
/// contain `factor · inner`.
pub(crate) fn check_margin(l: &GradedAlgebra, inner: &Window, factor: i64) -> Result<()> {
    if inner.rank() != l.group_rank() {
        return Err(Error::DimensionMismatch { expected: l.group_rank(), found: inner.rank() });
    }
    let need = inner.scaled(factor)?;
    for mu in l.weights() {
        let have = l.grading_window(&mu);
        if !have.contains_window(&need) {
            return Err(Error::WindowMisconfigured(format!(
                "degree window {have} of weight {mu:?} does not contain {factor}x inner window {need}"
            )));
        }
    }
    Ok(())
}
