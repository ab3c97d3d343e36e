//! Finite linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};

/// Vector-space operations shared by every coefficient type in the crate.
pub trait Linear: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: &Scalar);

    fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_scaled(other, &scalar::one());
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        self.add_scaled(other, &-scalar::one());
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }
}

impl Linear for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        *self += other * c;
    }
}

/// `None` is an unknown value (it fell outside a truncation); it absorbs
/// everything it is combined with.
impl<T: Linear> Linear for Option<T> {
    fn zero() -> Self {
        Some(T::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Some(v) if v.is_zero())
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if Zero::is_zero(c) {
            return;
        }
        match (self.as_mut(), other) {
            (Some(a), Some(b)) => a.add_scaled(b, c),
            _ => *self = None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        Self::term(k, scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Linear>(&self, mut f: impl FnMut(&K) -> L) -> L {
        let mut out = L::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn retain(&mut self, mut pred: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| pred(k));
    }
}

impl<K: Ord + Clone> Linear for LinComb<K> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if Zero::is_zero(c) {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{:?}", scalar::fmt(c), k)?;
        }
        Ok(())
    }
}

/// A vector in a carrier, keyed by basis index.
pub type Vector = LinComb<usize>;

/// A vector that may have fallen outside the truncation.
pub type Entry = Option<Vector>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn cancellation_drops_terms() {
        let mut v = Vector::single(3);
        v.add_term(3, int(-1));
        assert!(v.is_empty());
    }

    #[test]
    fn unknown_absorbs() {
        let mut e: Entry = Some(Vector::single(1));
        e.add_scaled(&None, &int(2));
        assert!(e.is_none());
        let mut e: Entry = Some(Vector::single(1));
        e.add_scaled(&None, &int(0));
        assert!(e.is_some());
    }
}
