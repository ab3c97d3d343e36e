//! Exact row reduction on sparse vectors with deterministic pivoting.

use std::collections::BTreeMap;

use crate::lincomb::{LinComb, Linear};
use crate::scalar::{self, Scalar};

/// A subspace kept in reduced row echelon form. The pivot of a row is its
/// smallest key, normalized to 1 and absent from every other row.
#[derive(Clone, Debug)]
pub struct RowSpace<K: Ord + Clone> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord + Clone> Default for RowSpace<K> {
    fn default() -> Self {
        RowSpace { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> RowSpace<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spanned_by<'a>(vs: impl IntoIterator<Item = &'a LinComb<K>>) -> Self
    where
        K: 'a,
    {
        let mut s = Self::new();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Remainder of `v` after removing every pivot coordinate.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut out = v.clone();
        for (p, row) in &self.rows {
            let c = out.coeff(p);
            if !Linear::is_zero(&c) {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r = r.scaled(&(scalar::one() / c));
        for row in self.rows.values_mut() {
            let c = row.coeff(&p);
            if !Linear::is_zero(&c) {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains_space(&self, other: &RowSpace<K>) -> bool {
        other.rows().all(|r| self.contains(r))
    }

    pub fn same_span(&self, other: &RowSpace<K>) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }

    /// Coordinates of the pivot-free part: `reduce` is a projection onto a
    /// complement, so two vectors are congruent modulo the space iff their
    /// reductions agree.
    pub fn congruent(&self, a: &LinComb<K>, b: &LinComb<K>) -> bool {
        self.reduce(&a.minus(b)).is_zero()
    }
}

/// Kernel of the linear map sending the i-th source vector of `images` to
/// its image. Source and target keys live in separate spaces.
pub fn kernel<S, T>(images: &[(S, LinComb<T>)]) -> Vec<LinComb<S>>
where
    S: Ord + Clone,
    T: Ord + Clone,
{
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Key<T, S> {
        Out(T),
        In(S),
    }
    let mut space: RowSpace<Key<T, S>> = RowSpace::new();
    for (s, img) in images {
        let mut row = img.map_keys(|t| Key::Out(t.clone()));
        row.add_term(Key::In(s.clone()), scalar::one());
        space.insert(&row);
    }
    space
        .rows()
        .filter(|r| matches!(r.keys().next(), Some(Key::In(_))))
        .map(|r| {
            let mut out = LinComb::new();
            for (k, c) in r.iter() {
                if let Key::In(s) = k {
                    out.add_term(s.clone(), c.clone());
                }
            }
            out
        })
        .collect()
}

/// Solves Σ x_i v_i = target over the rationals, if possible.
pub fn solve<K: Ord + Clone>(vs: &[LinComb<K>], target: &LinComb<K>) -> Option<Vec<Scalar>> {
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Key<K> {
        Out(K),
        In(usize),
    }
    let mut space: RowSpace<Key<K>> = RowSpace::new();
    for (i, v) in vs.iter().enumerate() {
        let mut row = v.map_keys(|k| Key::Out(k.clone()));
        row.add_term(Key::In(i), scalar::one());
        space.insert(&row);
    }
    let t = space.reduce(&target.map_keys(|k| Key::Out(k.clone())));
    if t.keys().any(|k| matches!(k, Key::Out(_))) {
        return None;
    }
    // target − Σ x_i v_i reduces to −Σ x_i (In i) with the remaining tags
    let mut x = vec![scalar::zero(); vs.len()];
    for (k, c) in t.iter() {
        if let Key::In(i) = k {
            x[*i] = -c.clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::Vector;
    use crate::scalar::int;

    fn v(entries: &[(usize, i64)]) -> Vector {
        let mut out = Vector::new();
        for (k, c) in entries {
            out.add_term(*k, int(*c));
        }
        out
    }

    #[test]
    fn rank_and_membership() {
        let s = RowSpace::spanned_by(&[v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])]);
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[(0, 1), (1, 2), (2, 1)])));
        assert!(!s.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_swap_minus_identity() {
        // x ↦ (x1 − x0, x0 − x1)
        let imgs = vec![(0usize, v(&[(0, -1), (1, 1)])), (1usize, v(&[(0, 1), (1, -1)]))];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].coeff(&0), k[0].coeff(&1));
    }

    #[test]
    fn solve_finds_coefficients() {
        let vs = [v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        let x = solve(&vs, &v(&[(0, 2), (1, 5)])).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve(&vs, &v(&[(2, 1)])).is_none());
    }
}
