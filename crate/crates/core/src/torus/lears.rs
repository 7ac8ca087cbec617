use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::axioms::AxiomEntry;
use super::{check_margin, Bidegree, Status};
use crate::error::Result;
use crate::galg::{graded_form, AlgebraElement, GradedAlgebra};
use crate::lattice::Window;
use crate::linalg;
use crate::rootsys::{cartan_integer, inner as dot};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LearsReport {
    pub pairs: Vec<Bidegree>,
    pub entries: Vec<AxiomEntry>,
    /// Whether `(α, 0)` is a pair for every reduced root `α`.
    pub contains_reduced_at_zero: bool,
}

impl LearsReport {
    pub fn status(&self, axiom: &str) -> Option<Status> {
        self.entries.iter().find(|e| e.axiom == axiom).map(|e| e.status)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }
}

fn entry(axiom: &str, status: Status, witness: Option<Bidegree>, detail: String) -> AxiomEntry {
    AxiomEntry { axiom: axiom.into(), status, witness, detail }
}

/// The pairs `(α, g)` with `L_α^g ≠ 0` and `g` in `inner`, with checks of
/// (A1)–(A4). The pairing is `((α, g), (β, h)) = (α, β)`.
pub fn extract_lears(l: &GradedAlgebra, inner: &Window) -> Result<LearsReport> {
    check_margin(l, inner, 1)?;
    let rs = l.root_system();
    let mut pairs = Vec::new();
    for alpha in rs.roots() {
        for g in l.support_raw(alpha).into_iter().filter(|g| inner.contains(g)) {
            pairs.push(Bidegree::new(alpha, &g));
        }
    }
    pairs.sort();
    let set: BTreeSet<&Bidegree> = pairs.iter().collect();
    let roots: BTreeSet<&Vec<i64>> = pairs.iter().map(|p| &p.weight).collect();

    let a1 = match pairs.iter().find(|p| dot(&p.weight, &p.weight) == 0) {
        Some(p) => entry("A1", Status::Fail, Some(p.clone()), "isotropic pair".into()),
        None => entry("A1", Status::Pass, None, format!("{} pairs anisotropic", pairs.len())),
    };

    let mut a2 = entry("A2", Status::Pass, None, format!("{} root components integral", roots.len()));
    'a2: for a in &roots {
        for b in &roots {
            if cartan_integer(a, b).is_err() {
                a2 = entry("A2", Status::Fail, Some(Bidegree::new(a, &[])), format!("<{a:?}, {b:?}> is not an integer"));
                break 'a2;
            }
        }
    }

    let mut checked = 0usize;
    let mut left = 0usize;
    let mut a3 = None;
    'a3: for p in &pairs {
        for q in &pairs {
            let c = cartan_integer(&p.weight, &q.weight).unwrap_or(0);
            let r = Bidegree {
                weight: p.weight.iter().zip(&q.weight).map(|(a, b)| a - c * b).collect(),
                degree: p.degree.iter().zip(&q.degree).map(|(g, h)| g - c * h).collect(),
            };
            if !inner.contains(&r.degree) {
                left += 1;
                continue;
            }
            checked += 1;
            if !set.contains(&r) {
                a3 = Some(entry("A3", Status::Fail, Some(r), format!("reflection of {p:?} by {q:?} is missing")));
                break 'a3;
            }
        }
    }
    let a3 = a3.unwrap_or_else(|| {
        entry("A3", Status::Pass, None, format!("{checked} in-window reflections closed, {left} left the window"))
    });

    // The degree component is radical, so connectivity only depends on roots.
    let comps: Vec<&Vec<i64>> = roots.iter().copied().collect();
    let mut reached = vec![false; comps.len()];
    let mut stack = Vec::new();
    if !comps.is_empty() {
        reached[0] = true;
        stack.push(0);
    }
    while let Some(i) = stack.pop() {
        for j in 0..comps.len() {
            if !reached[j] && dot(comps[i], comps[j]) != 0 {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    let a4 = match reached.iter().position(|r| !r) {
        Some(j) => entry("A4", Status::Fail, Some(Bidegree::new(comps[j], &[])), "pairing graph is disconnected".into()),
        None if comps.is_empty() => entry("A4", Status::Fail, None, "no pairs in the window".into()),
        None => entry("A4", Status::Pass, None, format!("{} root components connected", comps.len())),
    };

    let zero = vec![0; l.group_rank()];
    let contains_reduced_at_zero = rs.reduced().iter().all(|a| set.contains(&Bidegree::new(a, &zero)));
    Ok(LearsReport { pairs, entries: vec![a1, a2, a3, a4], contains_reduced_at_zero })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorootReport {
    pub holds: bool,
    pub degenerate: bool,
    pub reduced_type: bool,
    pub checked: usize,
    pub witness: Option<Bidegree>,
    pub detail: String,
}

/// Checks `[x, y] = (x, y) t_μ` for `x ∈ L_μ^g`, `y ∈ L_-μ^-g` with `g` in
/// `inner`, where `(t_μ, h) = μ(h)` on `L_0^0`, and `[L_0^g, L_0^-g] = 0`.
pub fn check_coroot_form_identity(l: &GradedAlgebra, inner: &Window) -> Result<CorootReport> {
    check_margin(l, inner, 1)?;
    let rs = l.root_system();
    let zero_w = rs.zero();
    let zero_g = vec![0; l.group_rank()];
    let cartan = l.basis(&zero_w, &zero_g);
    let gram: Vec<Vec<Scalar>> =
        cartan.iter().map(|a| cartan.iter().map(|b| graded_form(a, b)).collect()).collect();
    let mut report =
        CorootReport { holds: true, degenerate: false, reduced_type: true, checked: 0, witness: None, detail: String::new() };
    if cartan.is_empty() || linalg::rank(&gram) < cartan.len() {
        report.holds = false;
        report.degenerate = true;
        report.detail = "form is degenerate on L_0^0".into();
        return Ok(report);
    }

    let mut t: BTreeMap<&Vec<i64>, AlgebraElement> = BTreeMap::new();
    for mu in rs.roots() {
        let rhs: Vec<Scalar> = cartan.iter().map(|h| l.weight_value(mu, h).unwrap_or_default()).collect();
        let c = linalg::solve(&gram, &rhs).expect("nondegenerate Gram matrix");
        let mut tm = AlgebraElement::zero();
        for (ci, h) in c.iter().zip(&cartan) {
            tm = &tm + &h.scale(ci);
        }
        t.insert(mu, tm);
    }

    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
    for mu in rs.roots() {
        for g in l.support_raw(mu).into_iter().filter(|g| inner.contains(g)) {
            for x in l.basis(mu, &g) {
                for y in l.basis(&neg(mu), &neg(&g)) {
                    report.checked += 1;
                    let lhs = x.bracket(&y);
                    let rhs = t[mu].scale(&graded_form(&x, &y));
                    if lhs != rhs {
                        report.holds = false;
                        report.witness = Some(Bidegree::new(mu, &g));
                        report.detail = format!("[{x}, {y}] = {lhs}, expected {rhs}");
                        return Ok(report);
                    }
                }
            }
        }
    }
    for g in l.support_raw(&zero_w).into_iter().filter(|g| inner.contains(g)) {
        for x in l.basis(&zero_w, &g) {
            for y in l.basis(&zero_w, &neg(&g)) {
                report.checked += 1;
                if !x.bracket(&y).is_zero() {
                    report.holds = false;
                    report.witness = Some(Bidegree::new(&zero_w, &g));
                    report.detail = format!("[{x}, {y}] is nonzero");
                    return Ok(report);
                }
            }
        }
    }
    for mu in rs.roots() {
        let double: Vec<i64> = mu.iter().map(|x| 2 * x).collect();
        if rs.contains(&double) && !l.support_raw(mu).is_empty() && !l.support_raw(&double).is_empty() {
            report.reduced_type = false;
        }
    }
    report.holds &= report.reduced_type;
    report.detail = format!("{} bracket pairs match the form", report.checked);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::examples::sl2_loop_example;
    use crate::torus::normalize;

    #[test]
    fn loop_example_pairs() {
        let l = sl2_loop_example(3, 2, &Window::cube(1, 45).unwrap()).unwrap();
        let r = extract_lears(&l, &Window::cube(1, 15).unwrap()).unwrap();
        let alpha: Vec<i64> = r.pairs.iter().filter(|p| p.weight == [1, -1]).map(|p| p.degree[0]).collect();
        assert_eq!(alpha, (-15..=15).filter(|k: &i64| k.rem_euclid(3) == 2).collect::<Vec<_>>());
        assert!(r.all_pass(), "{r:?}");
        assert!(!r.contains_reduced_at_zero);
        let n = normalize(&l).unwrap();
        let rn = extract_lears(&n.algebra, &Window::cube(1, 15).unwrap()).unwrap();
        assert!(rn.all_pass() && rn.contains_reduced_at_zero);
    }

    #[test]
    fn coroot_identity_on_loops() {
        for n in [2, 3] {
            let l = GradedAlgebra::multiloop(n, 1, &Window::cube(1, 4).unwrap()).unwrap();
            let r = check_coroot_form_identity(&l, &Window::cube(1, 4).unwrap()).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }
}
