//! Presentations of conformal algebras by generators and a λ-bracket table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lambda::{Bounds, LambdaPoly, Letter, ModuleElement, Poly2, TAction};
use crate::lincomb::{LinComb, Linear};
use crate::report::{CheckReport, Outcome, Tally, Witness};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub central: bool,
    /// Conformal weight; centrals have weight 0.
    pub weight: i64,
}

pub type Bracket = LambdaPoly<ModuleElement>;

#[derive(Debug, Error, PartialEq)]
pub enum PresentationError {
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("bracket ({0}, {1}) given twice; with skewsymmetry only one ordering is stored")]
    DuplicateBracket(String, String),
    #[error("bracket entry involves a central symbol `{0}`")]
    CentralEntry(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformalPresentation {
    symbols: Vec<Symbol>,
    /// Brackets of free generators; missing entries are zero.
    table: BTreeMap<(u32, u32), Bracket>,
    /// When set, only one ordering of each pair is stored and the other is
    /// obtained by skewsymmetry.
    pub skew: bool,
}

impl ConformalPresentation {
    pub fn new(skew: bool) -> Self {
        ConformalPresentation { symbols: Vec::new(), table: BTreeMap::new(), skew }
    }

    fn add_symbol(&mut self, name: &str, central: bool, weight: i64) -> Result<Letter, PresentationError> {
        if self.symbols.iter().any(|s| s.name == name) {
            return Err(PresentationError::Duplicate(name.into()));
        }
        let gen = self.symbols.len() as u32;
        self.symbols.push(Symbol { name: name.into(), central, weight: if central { 0 } else { weight } });
        Ok(Letter { gen, central, tpow: 0 })
    }

    pub fn add_generator(&mut self, name: &str, weight: i64) -> Result<Letter, PresentationError> {
        self.add_symbol(name, false, weight)
    }

    pub fn add_central(&mut self, name: &str) -> Result<Letter, PresentationError> {
        self.add_symbol(name, true, 0)
    }

    pub fn set_bracket(&mut self, a: Letter, b: Letter, value: Bracket) -> Result<(), PresentationError> {
        for l in [a, b] {
            if l.central {
                return Err(PresentationError::CentralEntry(self.name(l.gen).into()));
            }
        }
        let key = (a.gen, b.gen);
        let dup = self.table.contains_key(&key)
            || (self.skew && a.gen != b.gen && self.table.contains_key(&(b.gen, a.gen)));
        if dup {
            return Err(PresentationError::DuplicateBracket(
                self.name(a.gen).into(),
                self.name(b.gen).into(),
            ));
        }
        self.table.insert(key, value);
        Ok(())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn name(&self, gen: u32) -> &str {
        &self.symbols[gen as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s.name == name).map(|i| Letter {
            gen: i as u32,
            central: self.symbols[i].central,
            tpow: 0,
        })
    }

    pub fn free_generators(&self) -> Vec<Letter> {
        (0..self.symbols.len() as u32)
            .filter(|g| !self.symbols[*g as usize].central)
            .map(Letter::free)
            .collect()
    }

    pub fn centrals(&self) -> Vec<Letter> {
        (0..self.symbols.len() as u32)
            .filter(|g| self.symbols[*g as usize].central)
            .map(Letter::central)
            .collect()
    }

    pub fn letter_weight(&self, l: &Letter) -> i64 {
        self.symbols[l.gen as usize].weight + l.tpow as i64
    }

    pub fn letter_text(&self, l: &Letter) -> String {
        match l.tpow {
            0 => self.name(l.gen).to_string(),
            1 => format!("T{}", self.name(l.gen)),
            k => format!("T^{}{}", k, self.name(l.gen)),
        }
    }

    pub fn element_text(&self, m: &ModuleElement) -> String {
        crate::lambda::module_element_text(m, &|l| self.name(l.gen).to_string())
    }

    pub fn poly_text(&self, p: &Bracket) -> String {
        p.text(&|l| self.name(l.gen).to_string())
    }

    /// Bracket of two generators (T-power 0).
    pub fn generator_bracket(&self, a: u32, b: u32) -> Bracket {
        if self.symbols[a as usize].central || self.symbols[b as usize].central {
            return Bracket::new();
        }
        if let Some(p) = self.table.get(&(a, b)) {
            return p.clone();
        }
        if self.skew {
            if let Some(p) = self.table.get(&(b, a)) {
                return p.substitute_skew_t().scaled(&-scalar::one());
            }
        }
        Bracket::new()
    }

    /// (T^i a)_λ (T^j b) = (−λ)^i (λ+T)^j (a_λ b).
    pub fn letter_bracket(&self, x: &Letter, y: &Letter) -> Bracket {
        let base = self.generator_bracket(x.gen, y.gen);
        if base.is_zero() {
            return base;
        }
        let t = |c: &ModuleElement| c.apply_t();
        base.times_lambda_plus_t_pow(y.tpow, &t)
            .times_lambda_pow(x.tpow)
            .scaled(&scalar::sign(x.tpow as i64))
    }

    pub fn lambda_bracket(&self, x: &ModuleElement, y: &ModuleElement) -> Bracket {
        let mut out = Bracket::new();
        for (lx, cx) in x.iter() {
            for (ly, cy) in y.iter() {
                out.add_scaled(&self.letter_bracket(lx, ly), &(cx * cy));
            }
        }
        out
    }

    /// [x, y] = ∫_{−T}^0 x_λ y dλ.
    pub fn derived_bracket(&self, x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
        self.lambda_bracket(x, y).integrate_t(Bounds::MinusTToZero).coeff(0)
    }

    /// [x_[m], y_[n]] = Σⱼ C(m,j)(x_(j)y)_[m+n−j], reduced by (Ta)_[r] = −r a_[r−1].
    pub fn mode_bracket(&self, x: u32, m: i64, y: u32, n: i64) -> ModeSum {
        let p = self.generator_bracket(x, y);
        let mut out = ModeSum::new();
        for (j, c) in p.iter() {
            let prod = c.scaled(&scalar::factorial(j as u64));
            let coeff = scalar::binomial(m, j as u64);
            let r = m + n - j as i64;
            out.add_scaled(&reduce_mode(&prod, r), &coeff);
        }
        out
    }

    pub fn modesum_text(&self, s: &ModeSum) -> String {
        if s.is_empty() {
            return "0".into();
        }
        s.iter()
            .map(|((g, r), c)| format!("{}*{}_[{}]", scalar::fmt(c), self.name(*g), r))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn check(&self, kind: ConformalIdentity) -> CheckReport {
        match kind {
            ConformalIdentity::Jacobi => self.check_jacobi(),
            ConformalIdentity::Skewsymmetry => self.check_skew(),
            ConformalIdentity::Translation => self.check_translation(),
            ConformalIdentity::Grading => self.check_grading(),
        }
    }

    /// The λ-μ polynomial (a_λb)_{λ+μ}c − a_λ(b_μc) + b_μ(a_λc).
    pub fn jacobi_defect(&self, a: &ModuleElement, b: &ModuleElement, c: &ModuleElement) -> Poly2<ModuleElement> {
        let mut d = Poly2::new();
        for (k, m) in self.lambda_bracket(a, b).iter() {
            let inner = Poly2::from_lambda_plus_mu(&self.lambda_bracket(m, c));
            for ((i, j), v) in inner.iter() {
                d.add_at(i + k, j, v, &scalar::one());
            }
        }
        for (s, p) in self.lambda_bracket(b, c).iter() {
            for (r, q) in self.lambda_bracket(a, p).iter() {
                d.add_at(r, s, q, &-scalar::one());
            }
        }
        for (r, p) in self.lambda_bracket(a, c).iter() {
            for (s, q) in self.lambda_bracket(b, p).iter() {
                d.add_at(r, s, q, &scalar::one());
            }
        }
        d
    }

    fn check_jacobi(&self) -> CheckReport {
        let gens = self.free_generators();
        let mut tally = Tally::default();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let (ea, eb, ec) = (el(a), el(b), el(c));
                    let d = self.jacobi_defect(&ea, &eb, &ec);
                    tally.record(match d.first_nonzero() {
                        None => Outcome::Holds,
                        Some(((i, j), v)) => Outcome::Fails(Witness::new(
                            &[
                                ("a", self.letter_text(a)),
                                ("b", self.letter_text(b)),
                                ("c", self.letter_text(c)),
                                ("coefficient", format!("λ^{i} μ^{j}")),
                            ],
                            format!("{} (difference of the two sides)", self.element_text(v)),
                            "0".into(),
                        )),
                    });
                }
            }
        }
        let n = gens.len();
        tally.into_report("jacobi", format!("{n}^3 generator triples"), "exact".into())
    }

    fn check_skew(&self) -> CheckReport {
        let gens = self.free_generators();
        let mut tally = Tally::default();
        for a in &gens {
            for b in &gens {
                let lhs = self.letter_bracket(a, b);
                let rhs = self.letter_bracket(b, a).substitute_skew_t().scaled(&-scalar::one());
                tally.record(if lhs == rhs {
                    Outcome::Holds
                } else {
                    Outcome::Fails(Witness::new(
                        &[("a", self.letter_text(a)), ("b", self.letter_text(b))],
                        self.poly_text(&lhs),
                        self.poly_text(&rhs),
                    ))
                });
            }
        }
        let n = gens.len();
        tally.into_report("skewsymmetry", format!("{n}^2 generator pairs"), "exact".into())
    }

    /// Sesquilinearity on T-decorated generators up to T-power 2.
    fn check_translation(&self) -> CheckReport {
        let gens = self.free_generators();
        let mut tally = Tally::default();
        let t = |c: &ModuleElement| c.apply_t();
        for a in &gens {
            for b in &gens {
                for i in 0..=2u32 {
                    for j in 0..=2u32 {
                        let x = Letter { tpow: i, ..*a };
                        let y = Letter { tpow: j, ..*b };
                        let xy = self.letter_bracket(&x, &y);
                        let lhs1 = self.letter_bracket(&x.raised().unwrap(), &y);
                        let rhs1 = xy.times_lambda_pow(1).scaled(&-scalar::one());
                        let lhs2 = self.letter_bracket(&x, &y.raised().unwrap());
                        let rhs2 = xy.times_lambda_plus_t_pow(1, &t);
                        for (lhs, rhs, which) in [(lhs1, rhs1, "(Ta)_λb"), (lhs2, rhs2, "a_λ(Tb)")] {
                            tally.record(if lhs == rhs {
                                Outcome::Holds
                            } else {
                                Outcome::Fails(Witness::new(
                                    &[
                                        ("a", self.letter_text(&x)),
                                        ("b", self.letter_text(&y)),
                                        ("rule", which.into()),
                                    ],
                                    self.poly_text(&lhs),
                                    self.poly_text(&rhs),
                                ))
                            });
                        }
                    }
                }
            }
        }
        let n = gens.len();
        tally.into_report("translation", format!("{n}^2 generator pairs, T-powers 0..2"), "exact".into())
    }

    /// Each term of gᵢ_λ gⱼ at λ-degree k has weight Δᵢ+Δⱼ−k−1.
    fn check_grading(&self) -> CheckReport {
        let gens = self.free_generators();
        let mut tally = Tally::default();
        for a in &gens {
            for b in &gens {
                let p = self.letter_bracket(a, b);
                let expected = |k: u32| self.letter_weight(a) + self.letter_weight(b) - k as i64 - 1;
                let bad = p
                    .iter()
                    .flat_map(|(k, m)| m.keys().map(move |l| (k, *l)))
                    .find(|(k, l)| self.letter_weight(l) != expected(*k));
                tally.record(match bad {
                    None => Outcome::Holds,
                    Some((k, l)) => Outcome::Fails(Witness::new(
                        &[("a", self.letter_text(a)), ("b", self.letter_text(b)), ("degree", k.to_string())],
                        format!("weight {} of {}", self.letter_weight(&l), self.letter_text(&l)),
                        format!("weight {}", expected(k)),
                    )),
                });
            }
        }
        let n = gens.len();
        tally.into_report("grading", format!("{n}^2 generator pairs"), "exact".into())
    }

    /// Jacobi and skewsymmetry both pass.
    pub fn is_lie(&self) -> bool {
        self.check_jacobi().passed() && self.check_skew().passed()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConformalIdentity {
    Jacobi,
    Skewsymmetry,
    Translation,
    Grading,
}

impl ConformalIdentity {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "jacobi" => Some(Self::Jacobi),
            "skew" | "skewsymmetry" => Some(Self::Skewsymmetry),
            "translation" => Some(Self::Translation),
            "grading" => Some(Self::Grading),
            _ => None,
        }
    }
}

/// A formal sum of modes g_[r], keyed by (generator, r).
pub type ModeSum = LinComb<(u32, i64)>;

/// Rewrites each T^k g at mode r as (−1)^k r(r−1)⋯(r−k+1) g_[r−k]; central
/// generators survive only at mode −1.
pub fn reduce_mode(m: &ModuleElement, r: i64) -> ModeSum {
    let mut out = ModeSum::new();
    for (l, c) in m.iter() {
        let k = l.tpow as u64;
        let s = scalar::sign(k as i64) * scalar::falling(r, k);
        let mode = r - k as i64;
        if l.central && mode != -1 {
            continue;
        }
        out.add_term((l.gen, mode), c * s);
    }
    out
}

fn el(l: &Letter) -> ModuleElement {
    ModuleElement::single(*l)
}

/// Standard presentations used by tests, benches and the acceptance suite.
pub mod fixtures {
    use super::*;

    /// a_λ a = λK.
    pub fn free_boson() -> ConformalPresentation {
        let mut p = ConformalPresentation::new(true);
        let a = p.add_generator("a", 1).unwrap();
        let k = p.add_central("K").unwrap();
        p.set_bracket(a, a, LambdaPoly::monomial(1, ModuleElement::single(k))).unwrap();
        p
    }

    /// ℓ_λ ℓ = (T + cλ)ℓ + αλ³C. The Virasoro algebra has c = 2.
    pub fn virasoro_with(c: Scalar, alpha: Scalar) -> ConformalPresentation {
        let mut p = ConformalPresentation::new(true);
        let l = p.add_generator("L", 2).unwrap();
        let k = p.add_central("C").unwrap();
        let mut b = LambdaPoly::constant(ModuleElement::single(l).apply_t());
        b.add_at(1, &ModuleElement::single(l), &c);
        b.add_at(3, &ModuleElement::single(k), &alpha);
        p.set_bracket(l, l, b).unwrap();
        p
    }

    pub fn virasoro(alpha: Scalar) -> ConformalPresentation {
        virasoro_with(scalar::int(2), alpha)
    }

    /// ℓ_λ ℓ = (T + 3λ)ℓ, which violates Jacobi.
    pub fn corrupted_virasoro() -> ConformalPresentation {
        virasoro_with(scalar::int(3), scalar::zero())
    }

    pub fn abelian(n: usize) -> ConformalPresentation {
        let mut p = ConformalPresentation::new(true);
        for i in 0..n {
            p.add_generator(&format!("x{i}"), 1).unwrap();
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn boson_brackets() {
        let p = free_boson();
        let a = p.lookup("a").unwrap();
        let k = p.lookup("K").unwrap();
        assert_eq!(p.letter_bracket(&a, &a), LambdaPoly::monomial(1, el(&k)));
        let ta = a.raised().unwrap();
        assert_eq!(p.letter_bracket(&ta, &a), LambdaPoly::monomial(2, el(&k).scaled(&int(-1))));
        assert!(p.letter_bracket(&k, &a).is_zero());
    }

    #[test]
    fn checks_on_fixtures() {
        for p in [virasoro(rat(1, 2)), free_boson(), abelian(2)] {
            for kind in [
                ConformalIdentity::Jacobi,
                ConformalIdentity::Skewsymmetry,
                ConformalIdentity::Translation,
                ConformalIdentity::Grading,
            ] {
                assert!(p.check(kind).passed(), "{kind:?}");
            }
        }
        let bad = corrupted_virasoro().check(ConformalIdentity::Jacobi);
        assert_eq!(bad.verdict, crate::report::Verdict::Fail);
        let w = bad.witness.unwrap();
        assert_eq!(w.inputs["a"], "L");
    }

    #[test]
    fn derived_brackets() {
        let p = free_boson();
        let a = el(&p.lookup("a").unwrap());
        assert!(p.derived_bracket(&a, &a).is_zero());
        let v = virasoro(rat(1, 2));
        let l = p_l(&v);
        assert!(v.derived_bracket(&l, &l).is_zero());
        // [TL, L] = −T³L/6
        let tl = l.apply_t();
        let expect = l.apply_t_pow(3).scaled(&rat(-1, 6));
        assert_eq!(v.derived_bracket(&tl, &l), expect);
    }

    fn p_l(v: &ConformalPresentation) -> ModuleElement {
        el(&v.lookup("L").unwrap())
    }

    #[test]
    fn mode_brackets() {
        let p = free_boson();
        let (a, k) = (p.lookup("a").unwrap().gen, p.lookup("K").unwrap().gen);
        assert_eq!(p.mode_bracket(a, 1, a, -1), ModeSum::single((k, -1)));
        for n in -4..=4 {
            assert!(p.mode_bracket(a, 0, a, n).is_empty());
            assert!(p.mode_bracket(k, 2, a, n).is_empty());
        }
        // Virasoro: [L_[m], L_[n]] in the shifted labelling L_[m] = L_{m-1}.
        let v = virasoro(rat(1, 2));
        let l = v.lookup("L").unwrap().gen;
        let c = v.lookup("C").unwrap().gen;
        let s = v.mode_bracket(l, 2, l, 0);
        // L_1, L_{-1}: [L_1, L_{-1}] = 2 L_0 = 2 L_[1]
        assert_eq!(s, ModeSum::term((l, 1), int(2)));
        let s = v.mode_bracket(l, 3, l, -1);
        // [L_2, L_{-2}] = 4 L_0 + (c/12)·6 with the central term α·C(3,3)·3!·C_[−1]
        let mut expect = ModeSum::term((l, 1), int(4));
        expect.add_term((c, -1), rat(1, 2) * int(6));
        assert_eq!(s, expect);
    }
}
