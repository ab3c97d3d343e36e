//! Elements of a ℚ[T]-module with a distinguished generating set, and
//! polynomials in λ over any coefficient space with a T-action.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lincomb::{LinComb, Linear};
use crate::scalar::{self, Scalar};

/// `T^tpow g`. Central generators are T-killed, so they only occur with `tpow == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub central: bool,
    pub tpow: u32,
}

impl Letter {
    pub fn new(gen: u32, central: bool, tpow: u32) -> Option<Letter> {
        if central && tpow > 0 {
            None
        } else {
            Some(Letter { gen, central, tpow })
        }
    }

    pub fn free(gen: u32) -> Letter {
        Letter { gen, central: false, tpow: 0 }
    }

    pub fn central(gen: u32) -> Letter {
        Letter { gen, central: true, tpow: 0 }
    }

    pub fn raised(self) -> Option<Letter> {
        Letter::new(self.gen, self.central, self.tpow + 1)
    }
}

/// Σ cᵢ T^{kᵢ} gᵢ, canonically ordered by (generator, T-power).
pub type ModuleElement = LinComb<Letter>;

/// A coefficient space on which T acts linearly.
pub trait TAction: Linear {
    fn apply_t(&self) -> Self;

    fn apply_t_pow(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.apply_t();
        }
        out
    }
}

impl TAction for ModuleElement {
    fn apply_t(&self) -> Self {
        let mut out = ModuleElement::new();
        for (l, c) in self.iter() {
            if let Some(r) = l.raised() {
                out.add_term(r, c.clone());
            }
        }
        out
    }
}

pub fn module_element_text(m: &ModuleElement, names: &dyn Fn(&Letter) -> String) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter()
        .map(|(l, c)| format!("{}*T^{} {}", scalar::fmt(c), l.tpow, names(l)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Σ λᵏ cₖ with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaPoly<C> {
    coeffs: BTreeMap<u32, C>,
}

impl<C: Linear> Default for LambdaPoly<C> {
    fn default() -> Self {
        LambdaPoly { coeffs: BTreeMap::new() }
    }
}

/// Integration bounds supported by [`LambdaPoly::integrate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    ZeroToLambda,
    MinusTToZero,
    ZeroToMinusT,
}

impl<C: Linear> LambdaPoly<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: u32, c: C) -> Self {
        let mut p = Self::new();
        p.add_at(k, &c, &scalar::one());
        p
    }

    pub fn add_at(&mut self, k: u32, c: &C, s: &Scalar) {
        let slot = self.coeffs.entry(k).or_insert_with(C::zero);
        slot.add_scaled(c, s);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn map<D: Linear>(&self, mut f: impl FnMut(&C) -> D) -> LambdaPoly<D> {
        let mut out = LambdaPoly::new();
        for (k, c) in &self.coeffs {
            out.add_at(*k, &f(c), &scalar::one());
        }
        out
    }

    pub fn times_lambda_pow(&self, j: u32) -> Self {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + j, c.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            if *k > 0 {
                out.add_at(k - 1, c, &scalar::int(*k as i64));
            }
        }
        out
    }

    /// Σ λ^{k+1}/(k+1) cₖ.
    pub fn antiderivative(&self) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            out.add_at(k + 1, c, &scalar::rat(1, *k as i64 + 1));
        }
        out
    }

    /// Σ sᵏ Tᵏ cₖ for s = ±1: the value at λ = ±T.
    pub fn eval_at_t(&self, negative: bool, t: &dyn Fn(&C) -> C) -> C {
        let mut out = C::zero();
        for (k, c) in &self.coeffs {
            let mut v = c.clone();
            for _ in 0..*k {
                v = t(&v);
            }
            let s = if negative { scalar::sign(*k as i64) } else { scalar::one() };
            out.add_scaled(&v, &s);
        }
        out
    }

    pub fn integrate(&self, bounds: Bounds, t: &dyn Fn(&C) -> C) -> Self {
        let f = self.antiderivative();
        match bounds {
            Bounds::ZeroToLambda => f,
            Bounds::MinusTToZero => {
                let mut v = C::zero();
                v.sub_assign_ref(&f.eval_at_t(true, t));
                Self::constant(v)
            }
            Bounds::ZeroToMinusT => Self::constant(f.eval_at_t(true, t)),
        }
    }

    /// λ ↦ −λ−T, with T acting on the coefficients.
    pub fn substitute_skew(&self, t: &dyn Fn(&C) -> C) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            let mut tc = c.clone();
            for r in 0..=*k {
                let s = scalar::sign(*k as i64) * scalar::binomial(*k as i64, r as u64);
                out.add_at(k - r, &tc, &s);
                tc = t(&tc);
            }
        }
        out
    }

    /// e^{T∂_λ}: λ ↦ λ+T.
    pub fn shift(&self, t: &dyn Fn(&C) -> C) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            let mut tc = c.clone();
            for r in 0..=*k {
                out.add_at(k - r, &tc, &scalar::binomial(*k as i64, r as u64));
                tc = t(&tc);
            }
        }
        out
    }

    /// (λ+T)^j · p, T acting on the coefficients.
    pub fn times_lambda_plus_t_pow(&self, j: u32, t: &dyn Fn(&C) -> C) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.coeffs {
            let mut tc = c.clone();
            for r in 0..=j {
                out.add_at(k + j - r, &tc, &scalar::binomial(j as i64, r as u64));
                tc = t(&tc);
            }
        }
        out
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Linear> Linear for LambdaPoly<C> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (k, v) in &other.coeffs {
            self.add_at(*k, v, c);
        }
    }
}

impl<C: TAction> LambdaPoly<C> {
    pub fn integrate_t(&self, bounds: Bounds) -> Self {
        self.integrate(bounds, &|c: &C| c.apply_t())
    }
    pub fn substitute_skew_t(&self) -> Self {
        self.substitute_skew(&|c: &C| c.apply_t())
    }
    pub fn shift_t(&self) -> Self {
        self.shift(&|c: &C| c.apply_t())
    }
}

impl LambdaPoly<ModuleElement> {
    pub fn text(&self, names: &dyn Fn(&Letter) -> String) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(k, c)| format!("λ^{} ({})", k, module_element_text(c, names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Σ λ^i μ^j c_{ij}.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<C> {
    coeffs: BTreeMap<(u32, u32), C>,
}

impl<C: Linear> Default for Poly2<C> {
    fn default() -> Self {
        Poly2 { coeffs: BTreeMap::new() }
    }
}

impl<C: Linear> Poly2<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_at(&mut self, i: u32, j: u32, c: &C, s: &Scalar) {
        let slot = self.coeffs.entry((i, j)).or_insert_with(C::zero);
        slot.add_scaled(c, s);
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Embeds p(λ) or p(μ).
    pub fn from_lambda(p: &LambdaPoly<C>, in_mu: bool) -> Self {
        let mut out = Self::new();
        for (k, c) in p.iter() {
            let (i, j) = if in_mu { (0, k) } else { (k, 0) };
            out.add_at(i, j, c, &scalar::one());
        }
        out
    }

    /// p(λ+μ).
    pub fn from_lambda_plus_mu(p: &LambdaPoly<C>) -> Self {
        let mut out = Self::new();
        for (k, c) in p.iter() {
            for i in 0..=k {
                out.add_at(i, k - i, c, &scalar::binomial(k as i64, i as u64));
            }
        }
        out
    }

    pub fn first_nonzero(&self) -> Option<((u32, u32), &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c)).next()
    }
}

impl<C: Linear> Linear for Poly2<C> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for ((i, j), v) in &other.coeffs {
            self.add_at(*i, *j, v, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    const A: Letter = Letter { gen: 0, central: false, tpow: 0 };
    const K: Letter = Letter { gen: 1, central: true, tpow: 0 };

    fn el(l: Letter) -> ModuleElement {
        ModuleElement::single(l)
    }

    #[test]
    fn integrate_central() {
        let p = LambdaPoly::monomial(1, el(K));
        let up = p.integrate_t(Bounds::ZeroToLambda);
        assert_eq!(up, LambdaPoly::monomial(2, el(K).scaled(&rat(1, 2))));
        assert!(p.integrate_t(Bounds::MinusTToZero).is_zero());
    }

    #[test]
    fn virasoro_self_bracket_integrates_to_zero() {
        // (T + 2λ)ℓ + αλ³K with α = 1/2
        let l = Letter::free(0);
        let k = Letter::central(1);
        let mut p = LambdaPoly::constant(el(l).apply_t());
        p.add_at(1, &el(l), &int(2));
        p.add_at(3, &el(k), &rat(1, 2));
        assert!(p.integrate_t(Bounds::MinusTToZero).is_zero());
    }

    #[test]
    fn skew_substitution_examples() {
        let p = LambdaPoly::monomial(1, el(K));
        assert_eq!(p.substitute_skew_t(), LambdaPoly::monomial(1, el(K).scaled(&int(-1))));
        let q = LambdaPoly::monomial(1, el(A));
        let mut expect = LambdaPoly::monomial(1, el(A));
        expect.add_at(0, &el(A).apply_t(), &int(1));
        assert_eq!(q.shift_t(), expect);
    }

    #[test]
    fn lambda_plus_t_power() {
        // (λ+T)^2 a = λ²a + 2λTa + T²a
        let p = LambdaPoly::constant(el(A));
        let r = p.times_lambda_plus_t_pow(2, &|c: &ModuleElement| c.apply_t());
        assert_eq!(r.coeff(2), el(A));
        assert_eq!(r.coeff(1), el(A).apply_t().scaled(&int(2)));
        assert_eq!(r.coeff(0), el(A).apply_t().apply_t());
    }
}
