use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;

/// Matrix unit `e_ij ⊗ t^exp` (indices are 0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exp: Vec<i64>,
    pub i: usize,
    pub j: usize,
}

impl Term {
    pub fn new(i: usize, j: usize, exp: &[i64]) -> Self {
        Term { exp: exp.to_vec(), i, j }
    }
}

/// A finite sum of matrix units with Laurent exponents and exact
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: SparseVec<Term>,
}

fn add_term(map: &mut SparseVec<Term>, key: Term, c: Scalar) {
    match map.get_mut(&key) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(key, c);
            }
        }
    }
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize, j: usize, exp: &[i64]) -> Self {
        Self::monomial(i, j, exp, Scalar::one())
    }

    pub fn monomial(i: usize, j: usize, exp: &[i64], c: Scalar) -> Self {
        let mut terms = SparseVec::new();
        add_term(&mut terms, Term::new(i, j, exp), c);
        AlgebraElement { terms }
    }

    /// `e_ii - e_jj ⊗ t^exp`.
    pub fn diagonal_difference(i: usize, j: usize, exp: &[i64]) -> Self {
        &Self::unit(i, i, exp) - &Self::unit(j, j, exp)
    }

    pub fn from_terms(terms: SparseVec<Term>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgebraElement { terms }
    }

    pub fn terms(&self) -> &SparseVec<Term> {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Term) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement { terms: linalg::scale(&self.terms, c) }
    }

    /// The common Laurent exponent of all terms, if there is one.
    pub fn exponent(&self) -> Option<&[i64]> {
        let mut it = self.terms.keys();
        let first = &it.next()?.exp;
        it.all(|t| &t.exp == first).then_some(first.as_slice())
    }

    /// The common weight `w(i) - w(j)` of all terms, if there is one.
    pub fn weight(&self, coord_weights: &[Vec<i64>]) -> Option<Vec<i64>> {
        let mut out: Option<Vec<i64>> = None;
        for t in self.terms.keys() {
            let w: Vec<i64> =
                coord_weights[t.i].iter().zip(&coord_weights[t.j]).map(|(a, b)| a - b).collect();
            match &out {
                Some(prev) if *prev != w => return None,
                Some(_) => {}
                None => out = Some(w),
            }
        }
        out
    }

    /// Whether the matrix part has zero trace in every degree.
    pub fn is_traceless(&self) -> bool {
        let mut traces: BTreeMap<&[i64], Scalar> = BTreeMap::new();
        for (t, c) in &self.terms {
            if t.i == t.j {
                let e = traces.entry(t.exp.as_slice()).or_default();
                *e = &*e + c;
            }
        }
        traces.values().all(Scalar::is_zero)
    }

    /// `[x ⊗ t^u, y ⊗ t^v] = [x, y] ⊗ t^(u+v)`.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = SparseVec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.j != b.i && b.j != a.i {
                    continue;
                }
                let exp: Vec<i64> = a.exp.iter().zip(&b.exp).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                if a.j == b.i {
                    add_term(&mut out, Term { exp: exp.clone(), i: a.i, j: b.j }, c.clone());
                }
                if b.j == a.i {
                    add_term(&mut out, Term { exp, i: b.i, j: a.j }, -c);
                }
            }
        }
        AlgebraElement { terms: out }
    }

    /// Replaces every exponent `u` by `f(u)`.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut out = SparseVec::new();
        for (t, c) in &self.terms {
            add_term(&mut out, Term { exp: f(&t.exp), i: t.i, j: t.j }, c.clone());
        }
        AlgebraElement { terms: out }
    }

    pub fn quadruples(&self) -> Vec<Quadruple> {
        self.terms.iter().map(|(t, c)| Quadruple(t.i, t.j, t.exp.clone(), c.clone())).collect()
    }

    pub fn from_quadruples(qs: &[Quadruple]) -> Self {
        let mut out = SparseVec::new();
        for Quadruple(i, j, exp, c) in qs {
            add_term(&mut out, Term::new(*i, *j, exp), c.clone());
        }
        AlgebraElement { terms: out }
    }
}

/// Serialized term: `[i, j, exponent, coefficient]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple(pub usize, pub usize, pub Vec<i64>, pub Scalar);

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.quadruples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(AlgebraElement::from_quadruples(&Vec::<Quadruple>::deserialize(d)?))
    }
}

impl<'a> std::ops::Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        linalg::axpy(&mut terms, &Scalar::one(), &rhs.terms);
        AlgebraElement { terms }
    }
}

impl<'a> std::ops::Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        linalg::axpy(&mut terms, &-Scalar::one(), &rhs.terms);
        AlgebraElement { terms }
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let exp: Vec<String> = t.exp.iter().map(ToString::to_string).collect();
            write!(f, "{c}*e{},{}*t^({})", t.i, t.j, exp.join(","))?;
        }
        Ok(())
    }
}

/// The graded trace form: `(x ⊗ t^u, y ⊗ t^v) = tr(xy)` when `u + v = 0`,
/// and 0 otherwise.
pub fn graded_form(x: &AlgebraElement, y: &AlgebraElement) -> Scalar {
    let mut total = Scalar::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.j == b.i && a.i == b.j && a.exp.iter().zip(&b.exp).all(|(u, v)| u + v == 0) {
                total = total + ca * cb;
            }
        }
    }
    total
}
