//! Subalgebras of `sl_2` and `sl_3` multi-loop algebras given by explicit
//! generators.

use super::algebra::GradedAlgebra;
use super::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::lattice::Window;

fn e(exp: &[i64]) -> AlgebraElement {
    AlgebraElement::unit(0, 1, exp)
}

fn f(exp: &[i64]) -> AlgebraElement {
    AlgebraElement::unit(1, 0, exp)
}

fn h(exp: &[i64]) -> AlgebraElement {
    AlgebraElement::diagonal_difference(0, 1, exp)
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn unit_vec(n: usize, k: usize, c: i64) -> Vec<i64> {
    (0..n).map(|i| if i == k { c } else { 0 }).collect()
}

fn generate(n_mat: usize, window: &Window, gens: Vec<AlgebraElement>, label: String) -> Result<GradedAlgebra> {
    let ambient = GradedAlgebra::multiloop(n_mat, window.rank(), window)?;
    let mut out = ambient.generate_subalgebra(&gens, None)?;
    out.set_label(label);
    Ok(out)
}

/// Generated by `e ⊗ t^r`, `f ⊗ t^-r`, `h ⊗ t^±p` in `sl_2 ⊗ F[t^±1]`.
pub fn sl2_loop_example(p: i64, r: i64, window: &Window) -> Result<GradedAlgebra> {
    if p == 0 {
        return Err(Error::InvalidShift("p must be nonzero".into()));
    }
    if window.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: window.rank() });
    }
    let gens = vec![e(&[r]), f(&[-r]), h(&[p]), h(&[-p])];
    generate(2, window, gens, format!("sl2 loop subalgebra p={p} r={r}"))
}

/// The two-variable version: `e ⊗ t^r`, `f ⊗ t^-r`, `h ⊗ t_i^±p_i`.
pub fn sl2_double_loop_example(p: [i64; 2], r: [i64; 2], window: &Window) -> Result<GradedAlgebra> {
    if p.contains(&0) {
        return Err(Error::InvalidShift("p must be nonzero".into()));
    }
    if window.rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: window.rank() });
    }
    let mut gens = vec![e(&r), f(&neg(&r))];
    for (k, &pk) in p.iter().enumerate() {
        gens.push(h(&unit_vec(2, k, pk)));
        gens.push(h(&unit_vec(2, k, -pk)));
    }
    generate(2, window, gens, format!("sl2 double loop subalgebra p={p:?} r={r:?}"))
}

/// `e_i ⊗ t^r_i`, `f_i ⊗ t^-r_i` and the Cartan at `t^±p` in `sl_3 ⊗ F[t^±1]`.
pub fn sl3_loop_example(p: i64, r: [i64; 2], window: &Window) -> Result<GradedAlgebra> {
    if p == 0 {
        return Err(Error::InvalidShift("p must be nonzero".into()));
    }
    if window.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: window.rank() });
    }
    let mut gens = Vec::new();
    for (i, &ri) in r.iter().enumerate() {
        gens.push(AlgebraElement::unit(i, i + 1, &[ri]));
        gens.push(AlgebraElement::unit(i + 1, i, &[-ri]));
        gens.push(AlgebraElement::diagonal_difference(i, i + 1, &[p]));
        gens.push(AlgebraElement::diagonal_difference(i, i + 1, &[-p]));
    }
    generate(3, window, gens, format!("sl3 loop subalgebra p={p} r={r:?}"))
}

/// `M`: generated by `e ⊗ t^x`, `f ⊗ t^-x`, `e ⊗ t^y`, `f ⊗ t^-y`.
pub fn two_generators(x: &[i64], y: &[i64], window: &Window) -> Result<GradedAlgebra> {
    check_pair(x, y, window)?;
    let gens = vec![e(x), f(&neg(x)), e(y), f(&neg(y))];
    generate(2, window, gens, format!("M(x={x:?}, y={y:?})"))
}

/// `N`: the generators of `M` together with `e ⊗ t^-x`, `f ⊗ t^x`,
/// `e ⊗ t^-y`, `f ⊗ t^y`.
pub fn pm_two_generators(x: &[i64], y: &[i64], window: &Window) -> Result<GradedAlgebra> {
    check_pair(x, y, window)?;
    let gens = vec![e(x), f(&neg(x)), e(y), f(&neg(y)), e(&neg(x)), f(x), e(&neg(y)), f(y)];
    generate(2, window, gens, format!("N(x={x:?}, y={y:?})"))
}

fn check_pair(x: &[i64], y: &[i64], window: &Window) -> Result<()> {
    for v in [x, y] {
        if v.len() != window.rank() {
            return Err(Error::DimensionMismatch { expected: window.rank(), found: v.len() });
        }
    }
    Ok(())
}
