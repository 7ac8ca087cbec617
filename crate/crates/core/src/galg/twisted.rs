use std::fmt;

use serde::{Deserialize, Serialize};

use super::algebra::{GradedAlgebra, Weight};
use super::element::{AlgebraElement, Term};
use crate::error::{Error, Result};
use crate::lattice::Window;
use crate::linalg::Echelon;
use crate::rootsys::{RootSystem, RootType};
use crate::scalar::Scalar;

/// Which of the two involutions of `sl_2ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Twist {
    /// `s_1 = [[0, I], [I, 0]]`, fixed algebra of type D.
    D,
    /// `s_2 = [[0, -I], [I, 0]]`, fixed algebra of type C.
    C,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::D => "D",
            Twist::C => "C",
        })
    }
}

/// `σ(x) = -s^-1 x^T s` for a signed permutation matrix `s`.
///
/// The minus sign makes `σ` a Lie algebra automorphism; without it the map
/// reverses brackets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Involution {
    pub s: Vec<Vec<i64>>,
    s_inv: Vec<Vec<i64>>,
}

impl Involution {
    pub fn new(twist: Twist, ell: usize) -> Self {
        let n = 2 * ell;
        let mut s = vec![vec![0; n]; n];
        let upper = match twist {
            Twist::D => 1,
            Twist::C => -1,
        };
        for k in 0..ell {
            s[k][ell + k] = upper;
            s[ell + k][k] = 1;
        }
        // Orthogonal, so the inverse is the transpose.
        let s_inv = (0..n).map(|i| (0..n).map(|j| s[j][i]).collect()).collect();
        Involution { s, s_inv }
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let n = self.s.len();
        let mut out = AlgebraElement::zero();
        for (t, c) in x.terms() {
            // s^-1 e_ji s has entry (a, b) equal to s_inv[a][j] * s[i][b].
            for a in (0..n).filter(|&a| self.s_inv[a][t.j] != 0) {
                for b in (0..n).filter(|&b| self.s[t.i][b] != 0) {
                    let k = -self.s_inv[a][t.j] * self.s[t.i][b];
                    out = &out + &AlgebraElement::monomial(a, b, &t.exp, c * &Scalar::from_int(k));
                }
            }
        }
        out
    }

    /// `σ̂(x ⊗ t^m) = (-1)^m σ(x) ⊗ t^m`.
    pub fn apply_hat(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (t, c) in x.terms() {
            let mut y = self.apply(&AlgebraElement::monomial(t.i, t.j, &t.exp, c.clone()));
            if t.exp.iter().sum::<i64>().rem_euclid(2) == 1 {
                y = -&y;
            }
            out = &out + &y;
        }
        out
    }
}

/// The twisted loop algebras `T(D)` and `T(C)` of `sl_2ℓ` on a degree window,
/// both graded by `C_ℓ` through the common diagonal Cartan.
#[derive(Clone, Debug)]
pub struct TwistedLoopPair {
    pub ell: usize,
    pub window: Window,
    pub sigma1: Involution,
    pub sigma2: Involution,
    pub td: GradedAlgebra,
    pub tc: GradedAlgebra,
}

/// Outcome of one structural identity of the twisted construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn span(xs: &[AlgebraElement]) -> Echelon<Term> {
    Echelon::from_vectors(xs.iter().map(|x| x.terms().clone()))
}

impl TwistedLoopPair {
    pub fn build(ell: usize, window: &Window) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidRank { kind: "twisted".into(), rank: ell });
        }
        if window.rank() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: window.rank() });
        }
        let mut pair = TwistedLoopPair {
            ell,
            window: window.clone(),
            sigma1: Involution::new(Twist::D, ell),
            sigma2: Involution::new(Twist::C, ell),
            td: Self::ambient(ell, window, "T(D)")?,
            tc: Self::ambient(ell, window, "T(C)")?,
        };
        for twist in [Twist::D, Twist::C] {
            let mut alg = Self::ambient(ell, window, &format!("T({twist})"))?;
            let weights = alg.weights();
            for m in window.lo()[0]..=window.hi()[0] {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                for xi in &weights {
                    for x in pair.eigenspace(twist, xi, sign) {
                        alg.insert(x.map_exponents(|_| vec![m]))?;
                    }
                }
            }
            match twist {
                Twist::D => pair.td = alg,
                Twist::C => pair.tc = alg,
            }
        }
        Ok(pair)
    }

    fn ambient(ell: usize, window: &Window, label: &str) -> Result<GradedAlgebra> {
        let coord_weights = (0..2 * ell)
            .map(|i| (0..ell).map(|k| if i == k { 1 } else if i == ell + k { -1 } else { 0 }).collect())
            .collect();
        GradedAlgebra::empty(label, 2 * ell, window.clone(), coord_weights, RootSystem::build(RootType::C, ell)?)
    }

    pub fn involution(&self, twist: Twist) -> &Involution {
        match twist {
            Twist::D => &self.sigma1,
            Twist::C => &self.sigma2,
        }
    }

    pub fn algebra(&self, twist: Twist) -> &GradedAlgebra {
        match twist {
            Twist::D => &self.td,
            Twist::C => &self.tc,
        }
    }

    /// Degree-0 basis of the weight-`ξ` part of `sl_2ℓ`.
    fn weight_basis(&self, xi: &[i64]) -> Vec<AlgebraElement> {
        let n = 2 * self.ell;
        if xi.iter().all(|&c| c == 0) {
            return (0..n - 1).map(|i| AlgebraElement::diagonal_difference(i, i + 1, &[0])).collect();
        }
        let w = self.td.coord_weights();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && w[i].iter().zip(&w[j]).zip(xi).all(|((a, b), c)| a - b == *c) {
                    out.push(AlgebraElement::unit(i, j, &[0]));
                }
            }
        }
        out
    }

    /// Canonical basis of the `sign`-eigenspace of `σ` on the weight-`ξ`
    /// part of `sl_2ℓ` (degree 0), spanned by `b + sign σ(b)`.
    pub fn eigenspace(&self, twist: Twist, xi: &[i64], sign: i64) -> Vec<AlgebraElement> {
        let sigma = self.involution(twist);
        let images: Vec<AlgebraElement> = self
            .weight_basis(xi)
            .iter()
            .map(|b| &b.clone() + &sigma.apply(b).scale(&Scalar::from_int(sign)))
            .collect();
        span(&images).rows().iter().cloned().map(AlgebraElement::from_terms).collect()
    }

    /// Basis of the fixed algebra `sl_2ℓ^σ` over every weight.
    pub fn fixed_algebra(&self, twist: Twist) -> Vec<AlgebraElement> {
        self.td.weights().iter().flat_map(|xi| self.eigenspace(twist, xi, 1)).collect()
    }

    /// The structural identities relating the two constructions: common
    /// Cartan, shared root spaces on `D'`, and the odd parts on `C'` and `D''`.
    pub fn identity_checks(&self) -> Vec<IdentityCheck> {
        let ell = self.ell as i64;
        let mut checks = Vec::new();
        let same = |a: Vec<AlgebraElement>, b: Vec<AlgebraElement>| span(&a) == span(&b);
        let zero = vec![0; self.ell];
        let cartan_d = self.eigenspace(Twist::D, &zero, 1);
        let cartan_c = self.eigenspace(Twist::C, &zero, 1);
        checks.push(IdentityCheck {
            name: "common Cartan h, dim ℓ".into(),
            holds: cartan_d.len() == self.ell && same(cartan_d, cartan_c),
        });
        checks.push(IdentityCheck {
            name: format!("dim g^D = {}", ell * (2 * ell - 1)),
            holds: self.fixed_algebra(Twist::D).len() as i64 == ell * (2 * ell - 1),
        });
        checks.push(IdentityCheck {
            name: format!("dim g^C = {}", ell * (2 * ell + 1)),
            holds: self.fixed_algebra(Twist::C).len() as i64 == ell * (2 * ell + 1),
        });
        let rs = self.td.root_system();
        let is_dprime = |r: &Weight| r.iter().sum::<i64>() == 0;
        let is_long = |r: &Weight| r.iter().any(|&c| c.abs() == 2);
        let mut d_prime = true;
        let mut v_equal = true;
        let mut v1_is_gc = true;
        let mut v2_is_gd = true;
        for r in rs.roots() {
            let (g_d, g_c) = (self.eigenspace(Twist::D, r, 1), self.eigenspace(Twist::C, r, 1));
            let (v1, v2) = (self.eigenspace(Twist::D, r, -1), self.eigenspace(Twist::C, r, -1));
            if is_dprime(r) {
                d_prime &= same(g_d, g_c);
                v_equal &= same(v1, v2);
            } else {
                v1_is_gc &= same(v1, g_c);
                if !is_long(r) {
                    v2_is_gd &= same(v2, g_d);
                }
            }
        }
        let (v1_0, v2_0) = (self.eigenspace(Twist::D, &zero, -1), self.eigenspace(Twist::C, &zero, -1));
        checks.push(IdentityCheck { name: "g^D = g^C on D'".into(), holds: d_prime });
        checks.push(IdentityCheck { name: "V^1 = V^2 on D' and 0".into(), holds: v_equal && same(v1_0, v2_0) });
        checks.push(IdentityCheck { name: "V^1 = g^C on C'".into(), holds: v1_is_gc });
        checks.push(IdentityCheck { name: "V^2 = g^D on D''".into(), holds: v2_is_gd });
        let mut fixed = true;
        for (alg, sigma) in [(&self.td, &self.sigma1), (&self.tc, &self.sigma2)] {
            for (_, _, x) in alg.basis_elements(&self.window) {
                fixed &= sigma.apply_hat(&x) == x;
            }
        }
        checks.push(IdentityCheck { name: "σ̂ fixes every basis element".into(), holds: fixed });
        checks
    }
}
