use serde::Serialize;

use super::{check_margin, isotope, ShiftHom};
use crate::error::{Error, Result};
use crate::galg::{AlgebraElement, TwistedLoopPair};
use crate::lattice::Window;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedRow {
    pub weight: Vec<i64>,
    pub degree: i64,
    pub dim_lhs: usize,
    pub dim_rhs: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedIsotopyReport {
    pub ell: usize,
    pub inner: Window,
    pub shift: ShiftHom,
    pub shift_values_ok: bool,
    pub table_ok: bool,
    pub map_ok: bool,
    pub bracket_pairs: usize,
    pub bracket_failures: usize,
    pub verified: bool,
    pub table: Vec<TwistedRow>,
}

impl TwistedIsotopyReport {
    /// The dimension table as CSV with columns weight, degree, dim_LHS, dim_RHS.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["weight", "degree", "dim_LHS", "dim_RHS"]).unwrap();
        for r in &self.table {
            let weight: Vec<String> = r.weight.iter().map(ToString::to_string).collect();
            w.write_record([
                format!("({})", weight.join(",")),
                r.degree.to_string(),
                r.dim_lhs.to_string(),
                r.dim_rhs.to_string(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Dimension of `P_α^m` read off the case table of the isotopy proof.
fn expected_dim(alpha: &[i64], m: i64, ell: usize) -> usize {
    let even = m.rem_euclid(2) == 0;
    if alpha.iter().all(|&c| c == 0) {
        if even {
            ell
        } else {
            ell - 1
        }
    } else if alpha.iter().any(|&c| c.abs() == 2) {
        usize::from(even)
    } else {
        1
    }
}

/// Verifies that `T(D)^(s)` is graded isomorphic to `T(C)` for the shift with
/// `s(ε_i - ε_i+1) = 0` and `s(2ε_ℓ) = 1`. The isomorphism sends
/// `x ⊗ t^k ∈ P_α^m` to `x ⊗ t^m`.
pub fn verify_twisted_isotopy(pair: &TwistedLoopPair, inner: &Window) -> Result<TwistedIsotopyReport> {
    let td = &pair.td;
    let tc = &pair.tc;
    let rs = td.root_system();
    let base = rs.standard_reflectable_base();
    let images = base.iter().map(|b| vec![i64::from(b.contains(&2))]).collect();
    let shift = ShiftHom::new(rs, base, images)?;
    let p = isotope(td, &shift)?;
    check_margin(&p, inner, 2).map_err(|e| match e {
        Error::WindowMisconfigured(m) => Error::WindowTooSmall(m),
        other => other,
    })?;
    check_margin(tc, inner, 2)?;

    // The proof's case table: s is +1 on εi+εj and 2εi, -1 on their negatives, 0 on εi-εj.
    let mut shift_values_ok = true;
    for mu in rs.roots() {
        shift_values_ok &= shift.apply(mu)? == vec![mu.iter().sum::<i64>() / 2];
    }

    let mut table = Vec::new();
    for alpha in p.weights() {
        for m in inner.lo()[0]..=inner.hi()[0] {
            table.push(TwistedRow {
                weight: alpha.clone(),
                degree: m,
                dim_lhs: p.dim(&alpha, &[m]),
                dim_rhs: tc.dim(&alpha, &[m]),
                expected: expected_dim(&alpha, m, pair.ell),
            });
        }
    }
    let table_ok = table.iter().all(|r| r.dim_lhs == r.expected && r.dim_rhs == r.expected);

    let phi = |alpha: &[i64], x: &AlgebraElement| -> AlgebraElement {
        let s = p.offset(alpha);
        x.map_exponents(|k| k.iter().zip(&s).map(|(a, b)| a - b).collect())
    };
    let elems = p.basis_elements(inner);
    let mut map_ok = true;
    for alpha in p.weights() {
        for m in inner.lo()[0]..=inner.hi()[0] {
            let images: Vec<AlgebraElement> = p.basis(&alpha, &[m]).iter().map(|x| phi(&alpha, x)).collect();
            let mut target = tc.empty_like(tc.window().clone());
            for y in &images {
                map_ok &= tc.contains(y)?;
                target.insert(y.clone())?;
            }
            map_ok &= target.dim(&alpha, &[m]) == tc.dim(&alpha, &[m]);
        }
    }

    let mut bracket_pairs = 0;
    let mut bracket_failures = 0;
    for (i, (a, _, x)) in elems.iter().enumerate() {
        let fx = phi(a, x);
        for (b, _, y) in &elems[i..] {
            bracket_pairs += 1;
            let z = x.bracket(y);
            let w: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
            let lhs = if z.is_zero() { z } else if rs.is_weight(&w) { phi(&w, &z) } else { bracket_failures += 1; continue };
            let rhs = fx.bracket(&phi(b, y));
            if lhs != rhs || !tc.contains(&rhs).unwrap_or(false) {
                bracket_failures += 1;
            }
        }
    }

    let verified = shift_values_ok && table_ok && map_ok && bracket_failures == 0;
    Ok(TwistedIsotopyReport {
        ell: pair.ell,
        inner: inner.clone(),
        shift,
        shift_values_ok,
        table_ok,
        map_ok,
        bracket_pairs,
        bracket_failures,
        verified,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotopy_at_rank_two() {
        let pair = TwistedLoopPair::build(2, &Window::cube(1, 12).unwrap()).unwrap();
        let r = verify_twisted_isotopy(&pair, &Window::cube(1, 4).unwrap()).unwrap();
        assert!(r.verified, "{r:?}");
        assert!(r.table.iter().any(|row| row.weight == [2, 0] && row.degree == -1 && row.dim_lhs == 0));
        assert!(r.to_csv().starts_with("weight,degree,dim_LHS,dim_RHS\n"));
    }

    #[test]
    fn small_window_is_rejected() {
        let pair = TwistedLoopPair::build(2, &Window::cube(1, 6).unwrap()).unwrap();
        assert!(verify_twisted_isotopy(&pair, &Window::cube(1, 4).unwrap()).is_err());
    }
}
