use std::collections::BTreeSet;

use serde::Serialize;

use super::{check_margin, exp_ad, Bidegree, ShiftHom, Status};
use crate::error::Result;
use crate::galg::{AlgebraElement, GradedAlgebra};
use crate::lattice::{hnf, LatticePoint, Subgroup, Window};
use crate::linalg::Echelon;
use crate::rootsys::cartan_integer;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Normal,
    GeneralNotNormal,
    NotATorus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub status: Status,
    pub witness: Option<Bidegree>,
    pub detail: String,
}

impl AxiomEntry {
    fn new(axiom: &str, status: Status, witness: Option<Bidegree>, detail: impl Into<String>) -> Self {
        AxiomEntry { axiom: axiom.into(), status, witness, detail: detail.into() }
    }

    fn pass(axiom: &str, detail: impl Into<String>) -> Self {
        Self::new(axiom, Status::Pass, None, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub root_type: String,
    pub inner: Window,
    pub group: Subgroup,
    pub entries: Vec<AxiomEntry>,
    pub classification: Classification,
}

impl AxiomReport {
    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn status(&self, axiom: &str) -> Option<Status> {
        self.entry(axiom).map(|e| e.status)
    }

    /// Whether the classification agrees with the entries and LT6 implies LT6′.
    pub fn is_consistent(&self) -> bool {
        let lt6 = self.status("LT6") == Some(Status::Pass);
        let lt6p = self.status("LT6'") == Some(Status::Pass);
        let failed = self.entries.iter().any(|e| e.status == Status::Fail && e.axiom != "LT6");
        let expected = if failed {
            Classification::NotATorus
        } else if lt6 {
            Classification::Normal
        } else {
            Classification::GeneralNotNormal
        };
        (!lt6 || lt6p) && expected == self.classification
    }
}

/// If `y = c x` for a nonzero `x`, returns `c`.
pub(crate) fn ratio(y: &AlgebraElement, x: &AlgebraElement) -> Option<Scalar> {
    let (t, cx) = x.terms().iter().next()?;
    let c = &y.coefficient(t) / cx;
    (x.scale(&c) == *y).then_some(c)
}

/// Scales `y ∈ L_{-μ}` so that `h = [x, y]` satisfies `[h, x] = 2x`.
pub(crate) fn sl2_partner(x: &AlgebraElement, y: &AlgebraElement) -> Option<(AlgebraElement, AlgebraElement)> {
    let h0 = x.bracket(y);
    let lambda = ratio(&h0.bracket(x), x)?;
    if lambda.is_zero() {
        return None;
    }
    let c = &Scalar::from_int(2) / &lambda;
    Some((y.scale(&c), h0.scale(&c)))
}

fn inner_elements(l: &GradedAlgebra, inner: &Window) -> Vec<(Vec<i64>, Vec<i64>, AlgebraElement)> {
    l.weights()
        .iter()
        .flat_map(|mu| {
            l.support_raw(mu)
                .into_iter()
                .filter(|g| inner.contains(g))
                .flat_map(move |g| l.basis(mu, &g).into_iter().map(move |x| (mu.clone(), g.clone(), x)))
        })
        .collect()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lt1(l: &GradedAlgebra, elems: &[(Vec<i64>, Vec<i64>, AlgebraElement)]) -> AxiomEntry {
    let rs = l.root_system();
    let mut pairs = 0usize;
    for (a, (mu, g, x)) in elems.iter().enumerate() {
        for (nu, h, y) in &elems[a..] {
            let z = x.bracket(y);
            pairs += 1;
            if z.is_zero() {
                continue;
            }
            let w = add(mu, nu);
            let d = add(g, h);
            if !rs.is_weight(&w) {
                return AxiomEntry::new("LT1", Status::Fail, Some(Bidegree::new(&w, &d)), format!("[{x}, {y}] has weight outside Δ ∪ {{0}}"));
            }
            let inside = l.bidegree(&z).map(|bd| bd == (w.clone(), d.clone())).unwrap_or(false)
                && l.contains(&z).unwrap_or(false);
            if !inside {
                return AxiomEntry::new("LT1", Status::Fail, Some(Bidegree::new(&w, &d)), format!("[{x}, {y}] is not in the stored space"));
            }
        }
    }
    AxiomEntry::pass("LT1", format!("{pairs} bracket pairs closed"))
}

fn lt2(l: &GradedAlgebra, inner: &Window) -> AxiomEntry {
    let rs = l.root_system();
    let zero = rs.zero();
    for g in l.support_raw(&zero).into_iter().filter(|g| inner.contains(g)) {
        let target = l.dim(&zero, &g);
        let mut span: Echelon<crate::galg::Term> = Echelon::new();
        'roots: for mu in rs.roots() {
            let minus = neg(mu);
            for h in l.support_raw(mu) {
                let k: Vec<i64> = g.iter().zip(&h).map(|(a, b)| a - b).collect();
                if l.dim(&minus, &k) == 0 {
                    continue;
                }
                for x in l.basis(mu, &h) {
                    for y in l.basis(&minus, &k) {
                        span.insert(x.bracket(&y).into_terms());
                        if span.dim() == target {
                            break 'roots;
                        }
                    }
                }
            }
        }
        if span.dim() < target {
            return AxiomEntry::new(
                "LT2",
                Status::WindowLimited,
                Some(Bidegree::new(&zero, &g)),
                format!("in-window brackets span {} of {target} dimensions", span.dim()),
            );
        }
    }
    AxiomEntry::pass("LT2", "L_0^g spanned by root brackets on the inner window")
}

fn lt3(l: &GradedAlgebra, inner: &Window, elems: &[(Vec<i64>, Vec<i64>, AlgebraElement)]) -> AxiomEntry {
    let rs = l.root_system();
    let mut count = 0usize;
    for mu in rs.roots() {
        for g in l.support_raw(mu).into_iter().filter(|g| inner.contains(g)) {
            let x = &l.basis(mu, &g)[0];
            let opposite = l.basis(&neg(mu), &neg(&g));
            let wit = Some(Bidegree::new(mu, &g));
            let Some(y) = opposite.first() else {
                return AxiomEntry::new("LT3", Status::Fail, wit, "opposite space is zero");
            };
            let Some((_, coroot)) = sl2_partner(x, y) else {
                return AxiomEntry::new("LT3", Status::Fail, wit, "no coroot in [L_μ^g, L_-μ^-g]");
            };
            for (nu, _, z) in elems {
                let c = if nu.iter().all(|&v| v == 0) { 0 } else { cartan_integer(nu, mu).unwrap_or(i64::MIN) };
                if c == i64::MIN || coroot.bracket(z) != z.scale(&Scalar::from_int(c)) {
                    return AxiomEntry::new("LT3", Status::Fail, wit, format!("coroot acts wrongly on {z}"));
                }
            }
            count += 1;
        }
    }
    AxiomEntry::pass("LT3", format!("{count} coroots verified"))
}

fn lt4(l: &GradedAlgebra, inner: &Window) -> AxiomEntry {
    let pts: Vec<LatticePoint> =
        l.total_support().iter().filter(|g| inner.contains(g)).map(|g| LatticePoint::from_i64s(g)).collect();
    let seen = hnf(l.group_rank(), &pts).unwrap();
    if &seen == l.group() {
        AxiomEntry::pass("LT4", format!("support generates {}", l.group()))
    } else {
        AxiomEntry::new(
            "LT4",
            Status::WindowLimited,
            None,
            format!("inner support generates {seen}, full window support generates {}", l.group()),
        )
    }
}

fn lt5(l: &GradedAlgebra) -> AxiomEntry {
    for (mu, g, d) in l.spaces() {
        if d > 1 && mu.iter().any(|&c| c != 0) {
            return AxiomEntry::new("LT5", Status::Fail, Some(Bidegree::new(mu, g)), format!("dimension {d}"));
        }
    }
    AxiomEntry::pass("LT5", "root spaces have dimension at most 1")
}

fn lt6(l: &GradedAlgebra) -> AxiomEntry {
    let zero = vec![0; l.group_rank()];
    for mu in l.root_system().roots() {
        if l.dim(mu, &zero) != 1 {
            return AxiomEntry::new("LT6", Status::Fail, Some(Bidegree::new(mu, &zero)), "L_μ^0 = 0");
        }
    }
    AxiomEntry::pass("LT6", "every L_μ^0 is one-dimensional")
}

fn lt6_prime(l: &GradedAlgebra) -> AxiomEntry {
    for mu in l.root_system().roots() {
        if l.support_raw(mu).is_empty() {
            return AxiomEntry::new(
                "LT6'",
                Status::WindowLimited,
                Some(Bidegree::new(mu, &vec![0; l.group_rank()])),
                "no nonzero space in the window",
            );
        }
    }
    AxiomEntry::pass("LT6'", "every root space is nonzero")
}

/// Checks (LT1)–(LT6) and (LT6′) on `inner`, using the whole stored window
/// for spanning and support questions.
pub fn check_axioms(l: &GradedAlgebra, inner: &Window) -> Result<AxiomReport> {
    check_margin(l, inner, 2)?;
    let elems = inner_elements(l, inner);
    let entries = vec![
        lt1(l, &elems),
        lt2(l, inner),
        lt3(l, inner, &elems),
        lt4(l, inner),
        lt5(l),
        lt6(l),
        lt6_prime(l),
    ];
    // LT6 separates normal from general tori; every other failure disqualifies.
    let failed = entries.iter().any(|e| e.status == Status::Fail && e.axiom != "LT6");
    let normal = entries.iter().any(|e| e.axiom == "LT6" && e.status == Status::Pass);
    let classification = if failed {
        Classification::NotATorus
    } else if normal {
        Classification::Normal
    } else {
        Classification::GeneralNotNormal
    };
    Ok(AxiomReport {
        algebra: l.label().to_string(),
        root_type: l.root_system().type_label(),
        inner: inner.clone(),
        group: l.group().clone(),
        entries,
        classification,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationReport {
    pub holds: bool,
    pub checked: usize,
    pub automorphism_checks: usize,
    pub witness: Option<(Bidegree, Bidegree)>,
    pub detail: String,
}

/// For roots `α, β` with `L_α^s(α)` and `L_β^s(β)` nonzero, checks that
/// `L_σα(β)^s(σα(β)) ≠ 0` whenever that degree is in `inner`. Each instance is
/// cross-checked by applying `θ = exp(ad x) exp(-ad y) exp(ad x)` to
/// `L_β^s(β)`.
pub fn check_reflection_propagation(l: &GradedAlgebra, s: &ShiftHom, inner: &Window) -> Result<PropagationReport> {
    check_margin(l, inner, 1)?;
    let rs = l.root_system();
    let table = s.table(l)?;
    let n = l.matrix_size();
    let nonzero: BTreeSet<&Vec<i64>> = rs.roots().iter().filter(|a| l.dim(a, &table[*a]) > 0).collect();
    let mut report =
        PropagationReport { holds: true, checked: 0, automorphism_checks: 0, witness: None, detail: String::new() };
    for alpha in &nonzero {
        let ga = &table[*alpha];
        let x = &l.basis(alpha, ga)[0];
        let opposite = l.basis(&neg(alpha), &neg(ga));
        let triple = opposite.first().and_then(|y| sl2_partner(x, y));
        for beta in &nonzero {
            let gamma = rs.reflect(alpha, beta)?;
            let gg = &table[&gamma];
            if !inner.contains(gg) {
                continue;
            }
            report.checked += 1;
            let wit = Some((Bidegree::new(alpha, ga), Bidegree::new(beta, &table[*beta])));
            if l.dim(&gamma, gg) == 0 {
                report.holds = false;
                report.witness = wit;
                report.detail = format!("L_{gamma:?}^{gg:?} = 0");
                return Ok(report);
            }
            let Some((y, _)) = &triple else { continue };
            let z = &l.basis(beta, &table[*beta])[0];
            let minus_y = -y;
            let theta = exp_ad(x, z, n)
                .and_then(|v| exp_ad(&minus_y, &v, n))
                .and_then(|v| exp_ad(x, &v, n));
            let ok = match &theta {
                Some(t) => !t.is_zero() && l.bidegree(t).ok() == Some((gamma.clone(), gg.clone())) && l.contains(t).unwrap_or(false),
                None => false,
            };
            report.automorphism_checks += 1;
            if !ok {
                report.holds = false;
                report.witness = wit;
                report.detail = format!("θ does not map L_{beta:?} into L_{gamma:?}^{gg:?}");
                return Ok(report);
            }
        }
    }
    report.detail = format!("{} reflections checked", report.checked);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galg::examples::sl2_loop_example;
    use crate::torus::normalize;

    #[test]
    fn untwisted_loop_is_normal() {
        let l = GradedAlgebra::multiloop(3, 1, &Window::cube(1, 9).unwrap()).unwrap();
        let r = check_axioms(&l, &Window::cube(1, 3).unwrap()).unwrap();
        assert_eq!(r.classification, Classification::Normal, "{r:?}");
        assert!(r.entries.iter().all(|e| e.status == Status::Pass));
        assert!(r.is_consistent());
    }

    #[test]
    fn loop_example_is_general_not_normal() {
        let l = sl2_loop_example(3, 2, &Window::cube(1, 45).unwrap()).unwrap();
        let r = check_axioms(&l, &Window::cube(1, 15).unwrap()).unwrap();
        assert_eq!(r.classification, Classification::GeneralNotNormal, "{r:?}");
        let lt6 = r.entry("LT6").unwrap();
        assert_eq!(lt6.witness, Some(Bidegree::new(&[1, -1], &[0])));
        assert_eq!(r.status("LT6'"), Some(Status::Pass));
    }

    #[test]
    fn margin_is_enforced() {
        let l = GradedAlgebra::multiloop(2, 1, &Window::cube(1, 5).unwrap()).unwrap();
        assert!(matches!(check_axioms(&l, &Window::cube(1, 3).unwrap()), Err(crate::error::Error::WindowMisconfigured(_))));
    }

    #[test]
    fn propagation_after_normalize() {
        let l = sl2_loop_example(3, 2, &Window::cube(1, 45).unwrap()).unwrap();
        let n = normalize(&l).unwrap();
        let r = check_reflection_propagation(&l, &n.shift, &Window::cube(1, 15).unwrap()).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.checked > 0 && r.automorphism_checks > 0);
        let sl3 = GradedAlgebra::multiloop(3, 1, &Window::cube(1, 2).unwrap()).unwrap();
        let zero = ShiftHom::zero(sl3.root_system(), 1);
        assert!(check_reflection_propagation(&sl3, &zero, &Window::cube(1, 2).unwrap()).unwrap().holds);
    }
}
