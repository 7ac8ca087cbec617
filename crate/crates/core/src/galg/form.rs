use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::element::{graded_form, AlgebraElement};
use crate::lattice::Window;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub nonzero: bool,
    pub symmetric: bool,
    pub invariant: bool,
    pub orthogonal: bool,
    pub basis_pairs: usize,
    pub random_triples: usize,
    pub witness: Option<String>,
}

impl FormReport {
    pub fn holds(&self) -> bool {
        self.nonzero && self.symmetric && self.invariant && self.orthogonal
    }
}

/// A random element: a few basis vectors with coefficients in `-2..=2`.
pub fn random_element(basis: &[AlgebraElement], rng: &mut impl Rng) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        out = &out + &basis.choose(rng).expect("nonempty basis").scale(&c);
    }
    out
}

/// Checks the graded trace form on the basis elements with degree in
/// `window`: symmetry and `(L^g, L^k) = 0` for `g + k ≠ 0` exhaustively,
/// invariance `([a,b],c) = (a,[b,c])` on `samples` seeded random triples.
pub fn check_graded_form(l: &GradedAlgebra, window: &Window, samples: usize, seed: u64) -> FormReport {
    let elems = l.basis_elements(window);
    let mut report = FormReport {
        nonzero: false,
        symmetric: true,
        invariant: true,
        orthogonal: true,
        basis_pairs: 0,
        random_triples: 0,
        witness: None,
    };
    for (_, g, x) in &elems {
        for (_, k, y) in &elems {
            report.basis_pairs += 1;
            let v = graded_form(x, y);
            report.nonzero |= !v.is_zero();
            if v != graded_form(y, x) {
                report.symmetric = false;
                report.witness.get_or_insert_with(|| format!("({x}, {y}) is not symmetric"));
            }
            let cancels = x.exponent().zip(y.exponent()).is_some_and(|(u, w)| u.iter().zip(w).all(|(a, b)| a + b == 0));
            if !v.is_zero() && (!cancels || g.iter().zip(k).any(|(a, b)| a + b != 0)) {
                report.orthogonal = false;
                report.witness.get_or_insert_with(|| format!("({x}, {y}) = {v} with degrees {g:?} + {k:?} != 0"));
            }
        }
    }
    if elems.is_empty() {
        return report;
    }
    let basis: Vec<AlgebraElement> = elems.into_iter().map(|(_, _, x)| x).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (random_element(&basis, &mut rng), random_element(&basis, &mut rng), random_element(&basis, &mut rng));
        report.random_triples += 1;
        if graded_form(&a.bracket(&b), &c) != graded_form(&a, &b.bracket(&c)) {
            report.invariant = false;
            report.witness.get_or_insert_with(|| format!("invariance fails on ({a}, {b}, {c})"));
        }
    }
    report
}
