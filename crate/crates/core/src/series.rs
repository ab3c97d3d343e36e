//! Truncated formal Laurent series in one and two variables.
//!
//! Coefficients outside the stored window are unknown, never implicitly zero.
//! Every operation returns a series whose window is the region on which the
//! result is provably exact.

use std::collections::BTreeMap;

use crate::lincomb::Linear;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Z,
    W,
    U,
}

/// Inclusive integer range of exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Window {
        Window { lo, hi }
    }
    pub fn contains(&self, e: i64) -> bool {
        self.lo <= e && e <= self.hi
    }
    pub fn intersect(&self, o: &Window) -> Window {
        Window::new(self.lo.max(o.lo), self.hi.min(o.hi))
    }
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries1<C> {
    pub var: Var,
    pub window: Window,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Linear> TruncSeries1<C> {
    pub fn new(var: Var, window: Window) -> Self {
        TruncSeries1 { var, window, coeffs: BTreeMap::new() }
    }

    pub fn from_fn(var: Var, window: Window, mut f: impl FnMut(i64) -> C) -> Self {
        let mut s = Self::new(var, window);
        for e in window.iter() {
            s.set(e, f(e));
        }
        s
    }

    pub fn set(&mut self, e: i64, c: C) {
        assert!(self.window.contains(e), "exponent {e} outside window");
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    /// `None` when the exponent is outside the exact window.
    pub fn coeff(&self, e: i64) -> Option<C> {
        self.window
            .contains(e)
            .then(|| self.coeffs.get(&e).cloned().unwrap_or_else(C::zero))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var);
        let w = self.window.intersect(&o.window);
        Self::from_fn(self.var, w, |e| {
            let mut c = self.coeff(e).unwrap();
            c.add_assign_ref(&o.coeff(e).unwrap());
            c
        })
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Self::from_fn(self.var, self.window, |e| self.coeff(e).unwrap().scaled(s))
    }

    /// Multiplication by var^k shifts the window.
    pub fn shift(&self, k: i64) -> Self {
        let w = Window::new(self.window.lo + k, self.window.hi + k);
        Self::from_fn(self.var, w, |e| self.coeff(e - k).unwrap())
    }

    /// d/dvar.
    pub fn derivative(&self) -> Self {
        let w = Window::new(self.window.lo - 1, self.window.hi - 1);
        Self::from_fn(self.var, w, |e| self.coeff(e + 1).unwrap().scaled(&scalar::int(e + 1)))
    }

    /// Coefficient of var^{-1}, if it is inside the exact window.
    pub fn residue(&self) -> Option<C> {
        self.coeff(-1)
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }
}

/// Which variable dominates in an expansion of a rational function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// i_{x,z}: expansion in the region |x| > |z|.
    FirstDominant,
    /// i_{z,x}: expansion in the region |z| > |x|.
    SecondDominant,
    /// A distribution with no expansion region attached (e.g. δ, commutators).
    Formal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries2<C> {
    pub vars: (Var, Var),
    pub domain: Domain,
    pub window: (Window, Window),
    coeffs: BTreeMap<(i64, i64), C>,
}

impl<C: Linear> TruncSeries2<C> {
    pub fn new(vars: (Var, Var), domain: Domain, window: (Window, Window)) -> Self {
        TruncSeries2 { vars, domain, window, coeffs: BTreeMap::new() }
    }

    pub fn from_fn(
        vars: (Var, Var),
        domain: Domain,
        window: (Window, Window),
        mut f: impl FnMut(i64, i64) -> C,
    ) -> Self {
        let mut s = Self::new(vars, domain, window);
        for i in window.0.iter() {
            for j in window.1.iter() {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    pub fn set(&mut self, i: i64, j: i64, c: C) {
        assert!(self.window.0.contains(i) && self.window.1.contains(j));
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> Option<C> {
        (self.window.0.contains(i) && self.window.1.contains(j))
            .then(|| self.coeffs.get(&(i, j)).cloned().unwrap_or_else(C::zero))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((i64, i64), &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    fn combine(&self, o: &Self, s: &Scalar, domain: Domain) -> Self {
        assert_eq!(self.vars, o.vars);
        let w = (self.window.0.intersect(&o.window.0), self.window.1.intersect(&o.window.1));
        Self::from_fn(self.vars, domain, w, |i, j| {
            let mut c = self.coeff(i, j).unwrap();
            c.add_scaled(&o.coeff(i, j).unwrap(), s);
            c
        })
    }

    /// Sum of two series expanded in the same domain.
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.domain, o.domain, "expansion domains differ; re-expand explicitly");
        self.combine(o, &scalar::one(), self.domain)
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.domain, o.domain, "expansion domains differ; re-expand explicitly");
        self.combine(o, &-scalar::one(), self.domain)
    }

    /// Difference of expansions taken in different domains. The result is a
    /// formal distribution (e.g. a δ-function derivative).
    pub fn sub_across_domains(&self, o: &Self) -> Self {
        self.combine(o, &-scalar::one(), Domain::Formal)
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Self::from_fn(self.vars, self.domain, self.window, |i, j| {
            self.coeff(i, j).unwrap().scaled(s)
        })
    }

    /// (first − second)^n · self for n ≥ 0. A polynomial factor is valid in
    /// every domain. The exact window shrinks by n at the lower ends.
    pub fn times_difference_pow(&self, n: u32) -> Self {
        let n = n as i64;
        let w = (
            Window::new(self.window.0.lo + n, self.window.0.hi),
            Window::new(self.window.1.lo + n, self.window.1.hi),
        );
        Self::from_fn(self.vars, self.domain, w, |e, f| {
            let mut c = C::zero();
            for i in 0..=n {
                let s = scalar::binomial(n, i as u64) * scalar::sign(n - i);
                c.add_scaled(&self.coeff(e - i, f - n + i).unwrap(), &s);
            }
            c
        })
    }

    /// Res over the first variable: a series in the second.
    pub fn residue_first(&self) -> Option<TruncSeries1<C>> {
        if !self.window.0.contains(-1) {
            return None;
        }
        Some(TruncSeries1::from_fn(self.vars.1, self.window.1, |j| self.coeff(-1, j).unwrap()))
    }

    /// ∂ with respect to the second variable.
    pub fn derivative_second(&self) -> Self {
        let w = (self.window.0, Window::new(self.window.1.lo - 1, self.window.1.hi - 1));
        Self::from_fn(self.vars, self.domain, w, |i, j| {
            self.coeff(i, j + 1).unwrap().scaled(&scalar::int(j + 1))
        })
    }
}

/// i_{x,z}(x−z)^n or i_{z,x}(x−z)^n restricted to `window`, exact on all of it.
pub fn expand_binomial(
    n: i64,
    domain: Domain,
    window: (Window, Window),
) -> TruncSeries2<Scalar> {
    assert!(domain != Domain::Formal, "an expansion needs a dominant variable");
    TruncSeries2::from_fn((Var::X, Var::Z), domain, window, |i, j| match domain {
        // Σ_k C(n,k) x^{n−k} (−z)^k
        Domain::FirstDominant => {
            let k = j;
            if k >= 0 && i == n - k {
                scalar::binomial(n, k as u64) * scalar::sign(k)
            } else {
                scalar::zero()
            }
        }
        // Σ_k C(n,k) x^k (−z)^{n−k}
        _ => {
            let k = i;
            if k >= 0 && j == n - k {
                scalar::binomial(n, k as u64) * scalar::sign(n - k)
            } else {
                scalar::zero()
            }
        }
    })
}

/// ∂_z^k δ(x−z)/k! = Σ_j C(j,k) x^{−j−1} z^{j−k}.
pub fn delta_derivative(k: u32, window: (Window, Window)) -> TruncSeries2<Scalar> {
    TruncSeries2::from_fn((Var::X, Var::Z), Domain::Formal, window, |i, e| {
        // x^i z^e with i = −j−1, e = j−k  ⇒  i + e = −k−1
        if i + e == -(k as i64) - 1 {
            let j = -i - 1;
            scalar::binomial(j, k as u64)
        } else {
            scalar::zero()
        }
    })
}

pub fn delta(window: (Window, Window)) -> TruncSeries2<Scalar> {
    delta_derivative(0, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn win() -> (Window, Window) {
        (Window::new(-8, 8), Window::new(-8, 8))
    }

    #[test]
    fn minus_one_first_dominant() {
        let s = expand_binomial(-1, Domain::FirstDominant, win());
        for i in -8..=8 {
            for j in -8..=8 {
                let expect = if j >= 0 && i == -1 - j { int(1) } else { int(0) };
                assert_eq!(s.coeff(i, j).unwrap(), expect, "x^{i} z^{j}");
            }
        }
    }

    #[test]
    fn difference_of_domains_is_delta() {
        let a = expand_binomial(-1, Domain::FirstDominant, win());
        let b = expand_binomial(-1, Domain::SecondDominant, win());
        let d = a.sub_across_domains(&b);
        // δ(x−z) = Σ_j x^j z^{−j−1}
        for i in -8..=8 {
            for j in -8..=8 {
                let expect = if i + j == -1 { int(1) } else { int(0) };
                assert_eq!(d.coeff(i, j).unwrap(), expect);
            }
        }
        assert_eq!(d, delta(win()));
    }

    #[test]
    fn polynomial_case_domain_free() {
        let a = expand_binomial(2, Domain::FirstDominant, win());
        let b = expand_binomial(2, Domain::SecondDominant, win());
        assert!(a.sub_across_domains(&b).nonzero().next().is_none());
        assert_eq!(a.coeff(2, 0).unwrap(), int(1));
        assert_eq!(a.coeff(1, 1).unwrap(), int(-2));
        assert_eq!(a.coeff(0, 2).unwrap(), int(1));
    }

    #[test]
    fn multiplying_delta_by_difference_kills_it() {
        let d = delta(win()).times_difference_pow(1);
        assert!(d.nonzero().next().is_none());
        let d1 = delta_derivative(1, win());
        assert!(d1.times_difference_pow(1).nonzero().next().is_some());
        assert!(d1.times_difference_pow(2).nonzero().next().is_none());
    }
}
