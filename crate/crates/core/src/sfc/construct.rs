//! Trivial state–field correspondences, tensor and smash products, and
//! reconstruction from λ- and (−1)-products.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{window_text, ModeVal, Sfc};
use crate::carrier::Carrier;
use crate::lambda::LambdaPoly;
use crate::linalg::{kernel, RowSpace};
use crate::lincomb::{Entry, Linear, Vector};
use crate::report::{CheckReport, Outcome, Tally, Witness};
use crate::scalar::{self, factorial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SfcError {
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("{0} is not a two-sided unit (fails on {1})")]
    NotUnital(String, String),
    #[error("T is not a derivation on ({0}, {1})")]
    NotDerivation(String, String),
    #[error("grading violated: {0}")]
    Grading(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("input violates {0}: {1}")]
    Axiom(&'static str, String),
}

/// A finite-dimensional unital associative algebra with a derivation T,
/// graded so that products add weights and T raises weight by one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssocAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    pub weights: Vec<i64>,
    pub unit: usize,
    /// mult[i][j] = e_i e_j.
    pub mult: Vec<Vec<Vector>>,
    pub derivation: Vec<Vector>,
}

impl AssocAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.mult[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn t(&self, x: &Vector) -> Vector {
        x.map_linear(|i| self.derivation[*i].clone())
    }

    fn text(&self, v: &Vector) -> String {
        Carrier::finite(self.labels.clone(), self.weights.clone()).text(v)
    }

    pub fn validate(&self) -> Result<(), SfcError> {
        let d = self.dim();
        let e = |i: usize| Vector::single(i);
        let l = |i: usize| self.labels[i].clone();
        for i in 0..d {
            let ei = e(i);
            if self.mul(&e(self.unit), &ei) != ei || self.mul(&ei, &e(self.unit)) != ei {
                return Err(SfcError::NotUnital(l(self.unit), l(i)));
            }
            let ti = self.t(&ei);
            if ti.keys().any(|k| self.weights[*k] != self.weights[i] + 1) {
                return Err(SfcError::Grading(format!("T{} = {}", l(i), self.text(&ti))));
            }
            for j in 0..d {
                let p = &self.mult[i][j];
                if p.keys().any(|k| self.weights[*k] != self.weights[i] + self.weights[j]) {
                    return Err(SfcError::Grading(format!("{}*{} = {}", l(i), l(j), self.text(p))));
                }
                let lhs = self.t(p);
                let mut rhs = self.mul(&ti, &e(j));
                rhs.add_assign_ref(&self.mul(&ei, &self.t(&e(j))));
                if lhs != rhs {
                    return Err(SfcError::NotDerivation(l(i), l(j)));
                }
                for k in 0..d {
                    if self.mul(p, &e(k)) != self.mul(&ei, &self.mult[j][k]) {
                        return Err(SfcError::NotAssociative(l(i), l(j), l(k)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Y(a,z)b = (e^{zT}a)b: a_(−1−k)b = (T^k a/k!)b, and a_(n) = 0 for n ≥ 0.
pub fn trivial_sfc(alg: &AssocAlgebra) -> Result<Sfc, SfcError> {
    alg.validate()?;
    let carrier = Arc::new(Carrier::finite(alg.labels.clone(), alg.weights.clone()));
    let translation = (0..alg.dim()).map(|i| Some(alg.t(&Vector::single(i)))).collect();
    Ok(Sfc::from_fn(format!("trivial({})", alg.name), carrier, alg.unit, translation, |a, n, b| {
        if n >= 0 {
            return Some(Vector::new());
        }
        let k = (-1 - n) as u64;
        let mut ta = Vector::single(a);
        for _ in 0..k {
            ta = alg.t(&ta);
        }
        Some(alg.mul(&ta, &Vector::single(b)).scaled(&(scalar::one() / factorial(k))))
    }))
}

/// Y(a₁⊗a₂, z) = Y(a₁,z) ⊗ Y(a₂,z) and T = T₁⊗1 + 1⊗T₂. The product is
/// stored up to the largest weight at which both factors are still exact.
pub fn tensor_sfc(s1: &Sfc, s2: &Sfc) -> Sfc {
    let (c1, c2) = (s1.carrier(), s2.carrier());
    let complete = c1.complete && c2.complete;
    let cutoff = match (c1.complete, c2.complete) {
        (true, true) => c1.cutoff + c2.cutoff,
        (false, true) => c1.cutoff + c2.min_weight(),
        (true, false) => c2.cutoff + c1.min_weight(),
        (false, false) => (c1.cutoff + c2.min_weight()).min(c2.cutoff + c1.min_weight()),
    };
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for i in 0..c1.dim() {
        for j in 0..c2.dim() {
            let w = c1.weight(i) + c2.weight(j);
            if w <= cutoff {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
                labels.push(format!("{}⊗{}", c1.label(i), c2.label(j)));
                weights.push(w);
            }
        }
    }
    let carrier = Arc::new(Carrier::new(labels, weights, cutoff, complete));
    let embed = |x: &Vector, y: &Vector| -> Entry {
        let mut out = Vector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                match index.get(&(*i, *j)) {
                    Some(k) => out.add_term(*k, a * b),
                    None if complete => {}
                    None => return None,
                }
            }
        }
        Some(out)
    };
    let translation = pairs
        .iter()
        .map(|&(i, j)| {
            let (ei, ej) = (Vector::single(i), Vector::single(j));
            let mut t = s1.t(&ei).and_then(|v| embed(&v, &ej));
            t.add_assign_ref(&s2.t(&ej).and_then(|v| embed(&ei, &v)));
            t
        })
        .collect();
    let vacuum = index[&(s1.vacuum, s2.vacuum)];
    let name = format!("{}⊗{}", s1.name, s2.name);
    Sfc::from_fn(name, carrier, vacuum, translation, |a, n, b| {
        let ((a1, a2), (b1, b2)) = (pairs[a], pairs[b]);
        let mut out: Entry = Some(Vector::new());
        // Σ_{p+q=n−1} (a₁_(p)b₁) ⊗ (a₂_(q)b₂)
        for p in (n - 1 - s2.upper(a2, b2))..=s1.upper(a1, b1) {
            let q = n - 1 - p;
            let second = s2.mode(a2, q, b2);
            if matches!(second, ModeVal::Zero) {
                continue;
            }
            let first = s1.mode(a1, p, b1);
            let term = match (first, second) {
                (ModeVal::Zero, _) => continue,
                (ModeVal::Known(x), ModeVal::Known(y)) => embed(x, y),
                _ => None,
            };
            out.add_assign_ref(&term);
            if out.is_none() {
                break;
            }
        }
        out
    })
}

/// A finite group by its multiplication table, acting by graded linear maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupAction {
    pub elements: Vec<String>,
    /// table[g][h] = gh.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// maps[g][i] = g·e_i.
    pub maps: Vec<Vec<Vector>>,
}

impl GroupAction {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn act(&self, g: usize, v: &Vector) -> Vector {
        v.map_linear(|i| self.maps[g][*i].clone())
    }

    /// The trivial action of the one-element group.
    pub fn trivial(dim: usize) -> GroupAction {
        GroupAction {
            elements: vec!["1".into()],
            table: vec![vec![0]],
            identity: 0,
            maps: vec![(0..dim).map(Vector::single).collect()],
        }
    }

    /// Z/n generated by `gen`, given by the images of the basis vectors.
    /// Whether gen^n is the identity is left to `validate`.
    pub fn cyclic(n: usize, gen: &[Vector]) -> GroupAction {
        let n = n.max(1);
        let mut maps: Vec<Vec<Vector>> = vec![(0..gen.len()).map(Vector::single).collect()];
        for k in 1..n {
            let prev = &maps[k - 1];
            maps.push(prev.iter().map(|v| v.map_linear(|i| gen[*i].clone())).collect());
        }
        GroupAction {
            elements: (0..n).map(|k| match k { 0 => "1".into(), 1 => "g".into(), _ => format!("g^{k}") }).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
            maps,
        }
    }

    /// Group axioms, and action by automorphisms on every known product.
    pub fn validate(&self, s: &Sfc) -> Result<(), SfcError> {
        let n = self.order();
        let bad = |m: String| Err(SfcError::InvalidAction(m));
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("multiplication table is not square over the elements".into());
        }
        for g in 0..n {
            if self.table[self.identity][g] != g || self.table[g][self.identity] != g {
                return bad(format!("{} is not an identity", self.elements[self.identity]));
            }
            if !(0..n).any(|h| self.table[g][h] == self.identity) {
                return bad(format!("{} has no inverse", self.elements[g]));
            }
            for h in 0..n {
                for k in 0..n {
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]] {
                        return bad("multiplication is not associative".into());
                    }
                }
            }
        }
        if self.maps.len() != n || self.maps.iter().any(|m| m.len() != s.dim()) {
            return bad("one image per basis vector and element is required".into());
        }
        let vac = s.vacuum_vector();
        for g in 0..n {
            if self.act(g, &vac) != vac {
                return bad(format!("{} moves the vacuum", self.elements[g]));
            }
            for h in 0..n {
                for i in 0..s.dim() {
                    let e = Vector::single(i);
                    if self.act(g, &self.act(h, &e)) != self.act(self.table[g][h], &e) {
                        return bad(format!("not a homomorphism at ({}, {})", self.elements[g], self.elements[h]));
                    }
                }
            }
            for i in 0..s.dim() {
                let e = Vector::single(i);
                let ge = self.act(g, &e);
                if ge.keys().any(|k| s.weight(*k) != s.weight(i)) {
                    return bad(format!("{} does not preserve the weight of {}", self.elements[g], s.label(i)));
                }
                let lhs = s.t(&e).map(|v| self.act(g, &v));
                let rhs = s.t(&ge);
                if lhs.is_some() && rhs.is_some() && lhs != rhs {
                    return bad(format!("{} does not commute with T on {}", self.elements[g], s.label(i)));
                }
                for j in 0..s.dim() {
                    let gf = self.act(g, &Vector::single(j));
                    let (lo, hi) = s.mode_window(i, j);
                    for m in lo..=hi {
                        let l = s.mode_entry(i, m, j).map(|v| self.act(g, &v));
                        let r = s.apply_vec(&ge, m, &gf);
                        if l.is_some() && r.is_some() && l != r {
                            return bad(format!(
                                "{} does not preserve {}_({m}){}",
                                self.elements[g],
                                s.label(i),
                                s.label(j)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// V ♯ Γ on V ⊗ ℚ[Γ]: Y(a⊗g, z)(b⊗h) = Y(a,z)(gb) ⊗ gh.
pub fn smash_sfc(s: &Sfc, act: &GroupAction) -> Result<Sfc, SfcError> {
    act.validate(s)?;
    let c = s.carrier();
    let ng = act.order();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for i in 0..c.dim() {
        for g in &act.elements {
            labels.push(format!("{}⊗{}", c.label(i), g));
            weights.push(c.weight(i));
        }
    }
    let idx = |i: usize, g: usize| i * ng + g;
    let carrier = Arc::new(Carrier::new(labels, weights, c.cutoff, c.complete));
    let translation = (0..c.dim() * ng)
        .map(|x| {
            let (i, g) = (x / ng, x % ng);
            s.t(&Vector::single(i)).map(|v| v.map_keys(|k| idx(*k, g)))
        })
        .collect();
    let name = format!("{}♯Γ{}", s.name, ng);
    Ok(Sfc::from_fn(name, carrier, idx(s.vacuum, act.identity), translation, |x, n, y| {
        let ((a, g), (b, h)) = ((x / ng, x % ng), (y / ng, y % ng));
        let gb = act.act(g, &Vector::single(b));
        let gh = act.table[g][h];
        s.apply(a, n, &gb).map(|v| v.map_keys(|k| idx(*k, gh)))
    }))
}

/// V^Γ ≅ span{e_(−1)(v_(−1)e) : v ∈ V♯Γ} with e = (1/|Γ|) Σ_g |0⟩⊗g, via
/// a ↦ (1/|Γ|) Σ_g a⊗g, compared weight by weight up to `max_weight`.
///
/// Returns the report and the dimensions of V^Γ per weight.
pub fn check_invariants_formula(
    s: &Sfc,
    act: &GroupAction,
    smash: &Sfc,
    max_weight: i64,
) -> (CheckReport, Vec<(i64, usize)>) {
    let ng = act.order();
    let inv = scalar::rat(1, ng as i64);
    let mut e = Vector::new();
    for g in 0..ng {
        e.add_term(s.vacuum * ng + g, inv.clone());
    }
    let average = |a: &Vector| -> Vector {
        let mut out = Vector::new();
        for (i, c) in a.iter() {
            for g in 0..ng {
                out.add_term(i * ng + g, c * &inv);
            }
        }
        out
    };
    let mut tally = Tally::default();
    let mut dims = Vec::new();
    let top = max_weight.min(s.carrier().cutoff);
    for w in s.carrier().min_weight()..=top {
        let basis = s.carrier().of_weight(w);
        let images: Vec<(usize, Vector)> = basis
            .iter()
            .map(|&i| {
                let e_i = Vector::single(i);
                let mut img = Vector::new();
                for g in 0..ng {
                    let mut d = act.act(g, &e_i);
                    d.sub_assign_ref(&e_i);
                    img.add_assign_ref(&d.map_keys(|k| k * ng + g));
                }
                (i, img)
            })
            .collect();
        let fixed = kernel(&images);
        dims.push((w, fixed.len()));
        let lhs = RowSpace::spanned_by(fixed.iter().map(average).collect::<Vec<_>>().iter());

        let mut rhs = RowSpace::new();
        let mut unknown = false;
        for x in smash.carrier().of_weight(w) {
            let inner = smash.apply(*x, -1, &e);
            match smash.apply_vec_entry(&Some(e.clone()), -1, &inner) {
                Some(v) => {
                    rhs.insert(&v);
                }
                None => unknown = true,
            }
        }
        let ins = [("weight", w.to_string())];
        tally.record(if unknown {
            Outcome::Unknown
        } else if lhs.same_span(&rhs) {
            Outcome::Holds
        } else {
            Outcome::Fails(Witness::new(
                &ins,
                format!("span of averaged invariants, dim {}", lhs.rank()),
                format!("span of e_(-1)(v_(-1)e), dim {}", rhs.rank()),
            ))
        });
    }
    let mut r = tally.into_report("invariants-formula", format!("weights up to {top}"), window_text(s.carrier()));
    r.notes.push(format!(
        "invariant dimensions per weight: {}",
        dims.iter().map(|(_, d)| d.to_string()).collect::<Vec<_>>().join(",")
    ));
    (r, dims)
}

/// Rebuilds Y from T, the λ-products and the (−1)-product by
/// Y₊(a,z)b = (e^{zT}a).b and Y₋(a,z)b = (a_{−∂_z}b)(z^{−1}).
///
/// `lambda(a, b)` holds a_λb = Σ λ^j a_(j)b/j!. The inputs must satisfy the
/// unit law for the vacuum, the derivation rule for T on the (−1)-product and
/// sesquilinearity of the λ-product.
pub fn reconstruct_sfc(
    name: &str,
    carrier: Arc<Carrier>,
    vacuum: usize,
    translation: Vec<Entry>,
    lambda: impl Fn(usize, usize) -> LambdaPoly<Entry>,
    dot: impl Fn(usize, usize) -> Entry,
) -> Result<Sfc, SfcError> {
    let d = carrier.dim();
    let t = |v: &Vector| -> Entry {
        let mut out = Vector::new();
        for (i, c) in v.iter() {
            out.add_scaled(translation[*i].as_ref()?, c);
        }
        Some(out)
    };
    let t_entry = |v: &Entry| v.as_ref().and_then(|v| t(v));
    let dot_vec = |x: &Entry, y: &Entry| -> Entry {
        let (x, y) = (x.as_ref()?, y.as_ref()?);
        let mut out = Vector::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&dot(*i, *j)?, &(a * b));
            }
        }
        Some(out)
    };
    let lam_vec = |x: &Entry, y: &Entry| -> LambdaPoly<Entry> {
        let (Some(x), Some(y)) = (x, y) else {
            return LambdaPoly::constant(None);
        };
        let mut out = LambdaPoly::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&lambda(*i, *j), &(a * b));
            }
        }
        out
    };
    let known = |x: &Entry, y: &Entry| x.is_some() && y.is_some();
    let name_of = |i: usize| carrier.label(i).to_string();
    for a in 0..d {
        let ea = Some(Vector::single(a));
        let ev = Some(Vector::single(vacuum));
        if dot_vec(&ev, &ea) != ea || dot_vec(&ea, &ev) != ea {
            return Err(SfcError::Axiom("the unit law for the vacuum", name_of(a)));
        }
        let ta = t(&Vector::single(a));
        for b in 0..d {
            let eb = Some(Vector::single(b));
            let tb = t(&Vector::single(b));
            // T(a.b) = (Ta).b + a.(Tb)
            let lhs = t_entry(&dot(a, b));
            let mut rhs = dot_vec(&ta, &eb);
            rhs.add_assign_ref(&dot_vec(&ea, &tb));
            if known(&lhs, &rhs) && lhs != rhs {
                return Err(SfcError::Axiom("the derivation rule", format!("({}, {})", name_of(a), name_of(b))));
            }
            // (Ta)_λ b = −λ a_λ b and T(a_λ b) = (Ta)_λ b + a_λ(Tb)
            let ab = lambda(a, b);
            let lhs = lam_vec(&ta, &eb);
            let rhs = ab.times_lambda_pow(1).scaled(&-scalar::one());
            if poly_known(&lhs) && poly_known(&rhs) && lhs != rhs {
                return Err(SfcError::Axiom("sesquilinearity", format!("({}, {})", name_of(a), name_of(b))));
            }
            let lhs = ab.map(|c| t_entry(c));
            let mut rhs = lam_vec(&ta, &eb);
            rhs.add_assign_ref(&lam_vec(&ea, &tb));
            if poly_known(&lhs) && poly_known(&rhs) && lhs != rhs {
                return Err(SfcError::Axiom("sesquilinearity", format!("T on ({}, {})", name_of(a), name_of(b))));
            }
        }
    }
    Ok(Sfc::from_fn(name, carrier.clone(), vacuum, translation.clone(), |a, n, b| {
        if n >= 0 {
            return lambda(a, b).coeff(n as u32).map(|v| v.scaled(&factorial(n as u64)));
        }
        let k = (-1 - n) as u32;
        let mut x = Some(Vector::single(a));
        for _ in 0..k {
            x = t_entry(&x);
        }
        let x = x.map(|v| v.scaled(&(scalar::one() / factorial(k as u64))));
        dot_vec(&x, &Some(Vector::single(b)))
    }))
}

pub(crate) fn poly_known(p: &LambdaPoly<Entry>) -> bool {
    p.iter().all(|(_, c)| c.is_some())
}

impl GroupAction {
    /// Z/2 acting diagonally, by −1 on the basis vectors flagged `odd`.
    pub fn z2_diagonal(odd: &[bool]) -> GroupAction {
        let flip = odd
            .iter()
            .enumerate()
            .map(|(i, &o)| Vector::term(i, if o { -scalar::one() } else { scalar::one() }))
            .collect();
        GroupAction {
            elements: vec!["1".into(), "g".into()],
            table: vec![vec![0, 1], vec![1, 0]],
            identity: 0,
            maps: vec![(0..odd.len()).map(Vector::single).collect(), flip],
        }
    }
}

/// Small associative algebras with derivations.
pub mod algebras {
    use super::AssocAlgebra;
    use crate::lincomb::Vector;
    use crate::scalar::int;

    fn table(d: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> Vec<Vec<Vector>> {
        let mut m = vec![vec![Vector::new(); d]; d];
        for (i, j, v) in entries {
            for (k, c) in *v {
                m[*i][*j].add_term(*k, int(*c));
            }
        }
        m
    }

    fn with_unit(d: usize, rest: &[(usize, usize, &[(usize, i64)])]) -> Vec<Vec<Vector>> {
        let mut m = table(d, rest);
        for i in 0..d {
            m[0][i] = Vector::single(i);
            m[i][0] = Vector::single(i);
        }
        m
    }

    fn names(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    /// ℚ|0⟩.
    pub fn one_dimensional() -> AssocAlgebra {
        AssocAlgebra {
            name: "Q".into(),
            labels: names(&["1"]),
            weights: vec![0],
            unit: 0,
            mult: with_unit(1, &[]),
            derivation: vec![Vector::new()],
        }
    }

    /// Upper-triangular 2×2 matrices on {1, E11, E12}, with T = [E12, ·]
    /// and E12 of weight 1.
    pub fn upper_triangular() -> AssocAlgebra {
        AssocAlgebra {
            name: "UT2".into(),
            labels: names(&["1", "E11", "E12"]),
            weights: vec![0, 0, 1],
            unit: 0,
            mult: with_unit(3, &[(1, 1, &[(1, 1)]), (1, 2, &[(2, 1)])]),
            derivation: vec![Vector::new(), Vector::term(2, int(-1)), Vector::new()],
        }
    }

    /// Upper-triangular 2×2 matrices with T = 0, all in weight 0.
    pub fn upper_triangular_flat() -> AssocAlgebra {
        AssocAlgebra {
            name: "UT2flat".into(),
            weights: vec![0, 0, 0],
            derivation: vec![Vector::new(); 3],
            ..upper_triangular()
        }
    }

    /// Mat₂ on {1, E11, E12, E21} (E22 = 1 − E11), T = 0.
    pub fn mat2() -> AssocAlgebra {
        AssocAlgebra {
            name: "Mat2".into(),
            labels: names(&["1", "E11", "E12", "E21"]),
            weights: vec![0; 4],
            unit: 0,
            mult: with_unit(
                4,
                &[
                    (1, 1, &[(1, 1)]),
                    (1, 2, &[(2, 1)]),
                    (2, 3, &[(1, 1)]),
                    (3, 1, &[(3, 1)]),
                    (3, 2, &[(0, 1), (1, -1)]),
                ],
            ),
            derivation: vec![Vector::new(); 4],
        }
    }

    /// ℚ[t]/(t³) with T = t² d/dt and t of weight 1.
    pub fn truncated_polynomial() -> AssocAlgebra {
        AssocAlgebra {
            name: "Q[t]/t^3".into(),
            labels: names(&["1", "t", "t^2"]),
            weights: vec![0, 1, 2],
            unit: 0,
            mult: with_unit(3, &[(1, 1, &[(2, 1)])]),
            derivation: vec![Vector::new(), Vector::single(2), Vector::new()],
        }
    }

    /// ℚ[ε]/(ε²) with ε of weight −1 and Tε = 1. This T is not a
    /// derivation: T(ε²) = 0 but 2ε·Tε = 2ε.
    pub fn dual_numbers() -> AssocAlgebra {
        AssocAlgebra {
            name: "Q[e]/e^2".into(),
            labels: names(&["1", "e"]),
            weights: vec![0, -1],
            unit: 0,
            mult: with_unit(2, &[]),
            derivation: vec![Vector::new(), Vector::single(0)],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::scalar::int;
    use crate::sfc::{check_sfc, opposite, Sfc};

    fn e(i: usize) -> Vector {
        Vector::single(i)
    }

    #[test]
    fn trivial_fields_are_power_series() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        assert_eq!(check_sfc(&s).verdict, Verdict::Pass);
        // Y(E11,z)1 = E11 − z E12: e^{zT} stops at z¹
        assert_eq!(s.apply(1, -1, &e(0)), Some(e(1)));
        assert_eq!(s.apply(1, -2, &e(0)), Some(Vector::term(2, int(-1))));
        assert_eq!(s.apply(1, -3, &e(0)), Some(Vector::new()));
        assert_eq!(s.apply(1, 0, &e(2)), Some(Vector::new()));
    }

    #[test]
    fn flat_derivation_gives_constant_fields() {
        let s = trivial_sfc(&algebras::mat2()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let (lo, hi) = s.mode_window(a, b);
                for n in lo..=hi {
                    let want = if n == -1 { Some(algebras::mat2().mult[a][b].clone()) } else { Some(Vector::new()) };
                    assert_eq!(s.mode_entry(a, n, b), want);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_algebras() {
        assert!(matches!(trivial_sfc(&algebras::dual_numbers()), Err(SfcError::NotDerivation(..))));
        let mut alg = algebras::mat2();
        alg.mult[2][3] = Vector::new();
        assert!(matches!(trivial_sfc(&alg), Err(SfcError::NotAssociative(..))));
    }

    #[test]
    fn opposite_of_trivial_reverses_the_product() {
        let alg = algebras::upper_triangular();
        let s = trivial_sfc(&alg).unwrap();
        let op = opposite(&s);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(op.mode_entry(a, -1, b), Some(alg.mult[b][a].clone()));
            }
        }
        assert!(opposite(&op).same_table(&s).is_none());
    }

    #[test]
    fn tensor_with_one_dimensional_is_identity() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let one = trivial_sfc(&algebras::one_dimensional()).unwrap();
        let t = tensor_sfc(&s, &one);
        assert_eq!(t.dim(), s.dim());
        assert!(t.same_table(&s).is_none());
    }

    #[test]
    fn tensor_of_trivials_is_trivial_of_tensor() {
        let a = trivial_sfc(&algebras::truncated_polynomial()).unwrap();
        let b = trivial_sfc(&algebras::mat2()).unwrap();
        let t = tensor_sfc(&a, &b);
        assert_eq!(t.dim(), 12);
        assert_eq!(check_sfc(&t).verdict, Verdict::Pass);
        // (t⊗E12)_(−1)(t⊗E21) = t²⊗E11
        let x = t.carrier().find("t⊗E12").unwrap();
        let y = t.carrier().find("t⊗E21").unwrap();
        let z = t.carrier().find("t^2⊗E11").unwrap();
        assert_eq!(t.apply(x, -1, &e(y)), Some(e(z)));
    }

    #[test]
    fn group_action_checks() {
        let s = trivial_sfc(&algebras::upper_triangular_flat()).unwrap();
        // conjugation by diag(1, −1)
        let g = GroupAction::z2_diagonal(&[false, false, true]);
        assert!(g.validate(&s).is_ok());
        // flipping E11 does not respect E11·E11 = E11
        let bad = GroupAction::z2_diagonal(&[false, true, false]);
        assert!(matches!(bad.validate(&s), Err(SfcError::InvalidAction(_))));
    }

    #[test]
    fn trivial_group_smash_is_isomorphic() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let sm = smash_sfc(&s, &GroupAction::trivial(s.dim())).unwrap();
        assert!(sm.same_table(&s).is_none());
    }

    #[test]
    fn smash_invariants_formula_on_trivial_algebra() {
        let s = trivial_sfc(&algebras::upper_triangular_flat()).unwrap();
        let g = GroupAction::z2_diagonal(&[false, false, true]);
        let sm = smash_sfc(&s, &g).unwrap();
        assert_eq!(check_sfc(&sm).verdict, Verdict::Pass);
        let (r, dims) = check_invariants_formula(&s, &g, &sm, 0);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(dims, vec![(0, 2)]);
    }

    fn roundtrip(s: &Sfc) -> Sfc {
        use crate::sfc::lambda_ids::{dot_product, lambda_product};
        let e = |i| Some(Vector::single(i));
        let t = (0..s.dim()).map(|i| s.translation_of(i).clone()).collect();
        reconstruct_sfc(
            "roundtrip",
            s.carrier_arc(),
            s.vacuum,
            t,
            |a, b| lambda_product(s, &e(a), &e(b)),
            |a, b| dot_product(s, &e(a), &e(b)),
        )
        .unwrap()
    }

    #[test]
    fn reconstruction_round_trips() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        assert!(roundtrip(&s).same_table(&s).is_none());
    }

    #[test]
    fn reconstruction_rejects_non_derivation() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let e = |i| Some(Vector::single(i));
        // with E11·E11 = 0, T(E11·E11) = 0 but T(E11)·E11 + E11·T(E11) = −E12
        let r = reconstruct_sfc(
            "bad",
            s.carrier_arc(),
            s.vacuum,
            (0..3).map(|i| s.translation_of(i).clone()).collect(),
            |_, _| LambdaPoly::new(),
            |a, b| if (a, b) == (1, 1) { Some(Vector::new()) } else { crate::sfc::lambda_ids::dot_product(&s, &e(a), &e(b)) },
        );
        assert!(r.is_err());
    }
}
