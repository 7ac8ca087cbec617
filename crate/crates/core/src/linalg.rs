//! Exact linear algebra over ℚ: dense row reduction for small systems and a
//! sparse reduced echelon form keyed by arbitrary ordered coordinates.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector; absent keys are zero and stored values are never zero.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// `v += c * w`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let term = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y = &*y + &term;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), term);
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &SparseVec<K>, c: &Scalar) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), c * x)).collect()
}

/// Reduced row echelon form of a subspace, kept canonical under insertion.
///
/// Rows are ordered by pivot (their least key), each pivot coefficient is 1,
/// and no row has a nonzero entry at another row's pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<K: Ord> {
    rows: Vec<SparseVec<K>>,
}

impl<K: Ord> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec<K>>>(vs: I) -> Self {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        for row in &self.rows {
            let pivot = row.keys().next().expect("rows are nonzero");
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, &-c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Coefficients of `v` over the rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self
            .rows
            .iter()
            .map(|row| v.get(row.keys().next().unwrap()).cloned().unwrap_or_default())
            .collect();
        let mut rest = v.clone();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            axpy(&mut rest, &-c, row);
        }
        rest.is_empty().then_some(coeffs)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            r = scale(&r, &lead.recip());
        }
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &r);
            }
        }
        let pos = self.rows.partition_point(|row| row.keys().next().unwrap() < &pivot);
        self.rows.insert(pos, r);
        true
    }
}

/// Dense reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(mut m: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let c = m[i][col].clone();
                for j in 0..ncols {
                    let t = &c * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(m: &[Vec<Scalar>]) -> usize {
    rref(m.to_vec()).1.len()
}

/// A basis of `{v : m v = 0}` for an `rows × ncols` matrix.
pub fn nullspace(m: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m.to_vec());
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, s(c))).collect()
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Echelon::from_vectors([sv(&[(0, 2), (1, 4)]), sv(&[(1, 1), (2, 1)])]);
        let b = Echelon::from_vectors([sv(&[(1, 3), (2, 3)]), sv(&[(0, 1), (2, -2)])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!a.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn echelon_coordinates() {
        let e = Echelon::from_vectors([sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])]);
        let v = sv(&[(0, 2), (1, 5), (2, 3)]);
        let c = e.coordinates(&v).unwrap();
        let mut back = SparseVec::new();
        for (ci, row) in c.iter().zip(e.rows()) {
            axpy(&mut back, ci, row);
        }
        assert_eq!(back, v);
        assert!(e.coordinates(&sv(&[(2, 1)])).is_none());
    }

    #[test]
    fn dense_solve_and_nullspace() {
        let a = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(7)]];
        let x = solve(&a, &[s(1), s(3)]).unwrap();
        for (row, bi) in a.iter().zip([s(1), s(3)]) {
            let lhs = row.iter().zip(&x).fold(Scalar::zero(), |acc, (p, q)| acc + p * q);
            assert_eq!(lhs, bi);
        }
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&ns[0]).fold(Scalar::zero(), |acc, (p, q)| acc + p * q);
            assert!(dot.is_zero());
        }
        let inconsistent = vec![vec![s(1)], vec![s(1)]];
        assert!(solve(&inconsistent, &[s(0), s(1)]).is_none());
        assert_eq!(rank(&a), 2);
    }
}
