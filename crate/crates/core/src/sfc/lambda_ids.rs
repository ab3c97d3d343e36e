//! The λ-product a_λb = Σ λ^j a_(j)b / j! and the (−1)-product a.b of a
//! state–field correspondence, and the identities tying them together.

use serde::{Deserialize, Serialize};

use super::{opposite, window_text, Sfc};
use crate::lambda::{LambdaPoly, Poly2};
use crate::lincomb::{Entry, Linear, Vector};
use crate::report::{sweep, CheckReport, Outcome, Tally, Witness};
use crate::scalar::{self, binomial, factorial, rat, sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaIdentity {
    /// (a_λb)_{λ+μ}c = a_λ(b_μc) − b_μ(a_λc)
    Jacobi,
    /// a_λ(b.c) = (a_λb).c + b.(a_λc) + ∫₀^λ (a_λb)_μc dμ
    Wick,
    /// (a.b)_λc = (e^{T∂_λ}a).(b_λc) + (e^{T∂_λ}b).(a_λc) + ∫₀^λ b_μ(a_{λ−μ}c) dμ
    DotLambda,
    /// (a.b).c − a.(b.c) = (∫₀^T dλ a).(b_λc) + (∫₀^T dλ b).(a_λc)
    QuasiAssociativity,
    /// a.(b.c) − b.(a.c) = (a.b − b.a).c
    LeftSymmetry,
    /// a.b − b.a = ∫_{−T}^0 a_λb dλ
    DotCommutator,
    /// a^op_λ b = −b_{−λ−T}a
    OppositeLambda,
    /// a .^op b = b.a + ∫₀^{−T} b_λa dλ
    OppositeDot,
}

impl LambdaIdentity {
    pub const ALL: [LambdaIdentity; 8] = [
        LambdaIdentity::Jacobi,
        LambdaIdentity::Wick,
        LambdaIdentity::DotLambda,
        LambdaIdentity::QuasiAssociativity,
        LambdaIdentity::LeftSymmetry,
        LambdaIdentity::DotCommutator,
        LambdaIdentity::OppositeLambda,
        LambdaIdentity::OppositeDot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LambdaIdentity::Jacobi => "lambda-jacobi",
            LambdaIdentity::Wick => "wick",
            LambdaIdentity::DotLambda => "dot-lambda",
            LambdaIdentity::QuasiAssociativity => "quasi-associativity",
            LambdaIdentity::LeftSymmetry => "left-symmetry",
            LambdaIdentity::DotCommutator => "dot-commutator",
            LambdaIdentity::OppositeLambda => "opposite-lambda",
            LambdaIdentity::OppositeDot => "opposite-dot",
        }
    }

    fn arity(self) -> usize {
        match self {
            LambdaIdentity::DotCommutator | LambdaIdentity::OppositeLambda | LambdaIdentity::OppositeDot => 2,
            _ => 3,
        }
    }

    /// Only vertex algebras are expected to satisfy these.
    pub fn needs_vertex(self) -> bool {
        matches!(self, LambdaIdentity::LeftSymmetry | LambdaIdentity::DotCommutator)
    }
}

/// a_λb for arbitrary (possibly unknown) vectors.
pub fn lambda_product(s: &Sfc, x: &Entry, y: &Entry) -> LambdaPoly<Entry> {
    let (Some(x), Some(y)) = (x, y) else {
        return LambdaPoly::constant(None);
    };
    let mut out = LambdaPoly::new();
    for j in 0..=s.upper_vec(x, y).max(-1) {
        let v = s.apply_vec(x, j, y);
        out.add_at(j as u32, &v, &(scalar::one() / factorial(j as u64)));
        if v.is_none() {
            return LambdaPoly::constant(None);
        }
    }
    out
}

pub fn dot_product(s: &Sfc, x: &Entry, y: &Entry) -> Entry {
    s.apply_vec_entry(x, -1, y)
}

fn known1(p: &LambdaPoly<Entry>) -> bool {
    p.iter().all(|(_, c)| c.is_some())
}

fn known2(p: &Poly2<Entry>) -> bool {
    p.iter().all(|(_, c)| c.is_some())
}

pub fn poly_text(s: &Sfc, p: &LambdaPoly<Entry>) -> String {
    if p.is_zero_poly() {
        return "0".into();
    }
    p.iter()
        .map(|(k, c)| format!("λ^{k} ({})", s.entry_text(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn poly2_text(s: &Sfc, p: &Poly2<Entry>) -> String {
    let terms: Vec<String> = p.iter().map(|((i, j), c)| format!("λ^{i}μ^{j} ({})", s.entry_text(c))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn compare1(s: &Sfc, lhs: LambdaPoly<Entry>, rhs: LambdaPoly<Entry>, ins: &[(&str, String)]) -> Outcome {
    if !known1(&lhs) || !known1(&rhs) {
        Outcome::Unknown
    } else if lhs == rhs {
        Outcome::Holds
    } else {
        Outcome::Fails(Witness::new(ins, poly_text(s, &lhs), poly_text(s, &rhs)))
    }
}

fn compare2(s: &Sfc, lhs: Poly2<Entry>, rhs: Poly2<Entry>, ins: &[(&str, String)]) -> Outcome {
    if !known2(&lhs) || !known2(&rhs) {
        Outcome::Unknown
    } else if lhs == rhs {
        Outcome::Holds
    } else {
        Outcome::Fails(Witness::new(ins, poly2_text(s, &lhs), poly2_text(s, &rhs)))
    }
}

fn compare0(s: &Sfc, lhs: Entry, rhs: Entry, ins: &[(&str, String)]) -> Outcome {
    super::compare(s, lhs, rhs, ins)
}

/// Applies `f` to each λ-coefficient, keeping the degree.
fn each(p: &LambdaPoly<Entry>, mut f: impl FnMut(&Entry) -> Entry) -> LambdaPoly<Entry> {
    let mut out = LambdaPoly::new();
    for (k, c) in p.iter() {
        out.add_at(k, &f(c), &scalar::one());
    }
    out
}

/// Σ_k (T^{k+1}x/(k+1)).w_k for b_λc = Σ λ^k w_k: the term (∫₀^T dλ x).(b_λc).
fn integral_dot(s: &Sfc, x: &Entry, p: &LambdaPoly<Entry>) -> Entry {
    let mut out: Entry = Some(Vector::new());
    let mut tx = s.t_entry(x);
    let mut k = 0;
    let top = p.degree().unwrap_or(0);
    loop {
        let c = p.coeff(k);
        if !c.is_zero() {
            out.add_scaled(&dot_product(s, &tx, &c), &rat(1, k as i64 + 1));
        }
        if k >= top {
            break;
        }
        tx = s.t_entry(&tx);
        k += 1;
    }
    out
}

/// Σ_r C(k,r) λ^{k−r} (T^r x).w_k: the term (e^{T∂_λ}x).(b_λc).
fn shifted_dot(s: &Sfc, x: &Entry, p: &LambdaPoly<Entry>) -> LambdaPoly<Entry> {
    let mut out = LambdaPoly::new();
    for (k, w) in p.iter() {
        let mut tx = x.clone();
        for r in 0..=k {
            out.add_at(k - r, &dot_product(s, &tx, w), &binomial(k as i64, r as u64));
            tx = s.t_entry(&tx);
        }
    }
    out
}

/// One instance of an identity on basis vectors.
pub fn lambda_instance(s: &Sfc, op: Option<&Sfc>, kind: LambdaIdentity, args: &[usize]) -> Outcome {
    let e = |i: usize| Some(Vector::single(i));
    let text = |names: &[&'static str]| -> Vec<(&'static str, String)> {
        names.iter().zip(args).map(|(n, i)| (*n, s.label(*i).to_string())).collect()
    };
    let lam = |x: &Entry, y: &Entry| lambda_product(s, x, y);
    let dot = |x: &Entry, y: &Entry| dot_product(s, x, y);
    match kind {
        LambdaIdentity::Jacobi => {
            let (a, b, c) = (e(args[0]), e(args[1]), e(args[2]));
            let mut lhs = Poly2::new();
            for (i, y) in lam(&a, &b).iter() {
                // λ^i (y_{λ+μ} c)
                for (k, z) in lam(y, &c).iter() {
                    for r in 0..=k {
                        lhs.add_at(i + r, k - r, z, &binomial(k as i64, r as u64));
                    }
                }
            }
            let mut rhs = Poly2::new();
            for (j, w) in lam(&b, &c).iter() {
                for (i, z) in lam(&a, w).iter() {
                    rhs.add_at(i, j, z, &scalar::one());
                }
            }
            for (i, w) in lam(&a, &c).iter() {
                for (j, z) in lam(&b, w).iter() {
                    rhs.add_at(i, j, z, &-scalar::one());
                }
            }
            compare2(s, lhs, rhs, &text(&["a", "b", "c"]))
        }
        LambdaIdentity::Wick => {
            let (a, b, c) = (e(args[0]), e(args[1]), e(args[2]));
            let lhs = lam(&a, &dot(&b, &c));
            let ab = lam(&a, &b);
            let mut rhs = each(&ab, |y| dot(y, &c));
            rhs.add_assign_ref(&each(&lam(&a, &c), |w| dot(&b, w)));
            for (i, y) in ab.iter() {
                for (j, z) in lam(y, &c).iter() {
                    rhs.add_at(i + j + 1, z, &rat(1, j as i64 + 1));
                }
            }
            compare1(s, lhs, rhs, &text(&["a", "b", "c"]))
        }
        LambdaIdentity::DotLambda => {
            let (a, b, c) = (e(args[0]), e(args[1]), e(args[2]));
            let lhs = lam(&dot(&a, &b), &c);
            let mut rhs = shifted_dot(s, &a, &lam(&b, &c));
            rhs.add_assign_ref(&shifted_dot(s, &b, &lam(&a, &c)));
            // ∫₀^λ μ^i (λ−μ)^j dμ = λ^{i+j+1} i! j! / (i+j+1)!
            for (j, u) in lam(&a, &c).iter() {
                for (i, x) in lam(&b, u).iter() {
                    let w = factorial(i as u64) * factorial(j as u64) / factorial((i + j + 1) as u64);
                    rhs.add_at(i + j + 1, x, &w);
                }
            }
            compare1(s, lhs, rhs, &text(&["a", "b", "c"]))
        }
        LambdaIdentity::QuasiAssociativity => {
            let (a, b, c) = (e(args[0]), e(args[1]), e(args[2]));
            let mut lhs = dot(&dot(&a, &b), &c);
            lhs.sub_assign_ref(&dot(&a, &dot(&b, &c)));
            let mut rhs = integral_dot(s, &a, &lam(&b, &c));
            rhs.add_assign_ref(&integral_dot(s, &b, &lam(&a, &c)));
            compare0(s, lhs, rhs, &text(&["a", "b", "c"]))
        }
        LambdaIdentity::LeftSymmetry => {
            let (a, b, c) = (e(args[0]), e(args[1]), e(args[2]));
            let mut lhs = dot(&a, &dot(&b, &c));
            lhs.sub_assign_ref(&dot(&b, &dot(&a, &c)));
            let mut com = dot(&a, &b);
            com.sub_assign_ref(&dot(&b, &a));
            let rhs = dot(&com, &c);
            compare0(s, lhs, rhs, &text(&["a", "b", "c"]))
        }
        LambdaIdentity::DotCommutator => {
            let (a, b) = (e(args[0]), e(args[1]));
            let mut lhs = dot(&a, &b);
            lhs.sub_assign_ref(&dot(&b, &a));
            // ∫_{−T}^0 λ^k dλ = −(−T)^{k+1}/(k+1)
            let mut rhs: Entry = Some(Vector::new());
            for (k, v) in lam(&a, &b).iter() {
                let mut tv = v.clone();
                for _ in 0..=k {
                    tv = s.t_entry(&tv);
                }
                rhs.add_scaled(&tv, &(sign(k as i64) * rat(1, k as i64 + 1)));
            }
            compare0(s, lhs, rhs, &text(&["a", "b"]))
        }
        LambdaIdentity::OppositeLambda => {
            let op = op.expect("opposite correspondence required");
            let (a, b) = (e(args[0]), e(args[1]));
            let lhs = lambda_product(op, &a, &b);
            let ba = lam(&b, &a);
            let rhs = if known1(&ba) {
                ba.substitute_skew(&|v: &Entry| s.t_entry(v)).scaled(&-scalar::one())
            } else {
                ba
            };
            compare1(s, lhs, rhs, &text(&["a", "b"]))
        }
        LambdaIdentity::OppositeDot => {
            let op = op.expect("opposite correspondence required");
            let (a, b) = (e(args[0]), e(args[1]));
            let lhs = dot_product(op, &a, &b);
            let mut rhs = dot(&b, &a);
            // ∫₀^{−T} λ^k dλ = (−T)^{k+1}/(k+1)
            for (k, v) in lam(&b, &a).iter() {
                let mut tv = v.clone();
                for _ in 0..=k {
                    tv = s.t_entry(&tv);
                }
                rhs.add_scaled(&tv, &(sign(k as i64 + 1) * rat(1, k as i64 + 1)));
            }
            compare0(s, lhs, rhs, &text(&["a", "b"]))
        }
    }
}

/// Sweeps one identity over all basis tuples from `basis` whose total
/// weight stays within the cutoff.
pub fn check_lambda_identity(s: &Sfc, op: Option<&Sfc>, kind: LambdaIdentity, basis: &[usize]) -> CheckReport {
    let owned;
    let op = match (op, kind) {
        (None, LambdaIdentity::OppositeLambda | LambdaIdentity::OppositeDot) => {
            owned = opposite(s);
            Some(&owned)
        }
        _ => op,
    };
    let cutoff = s.carrier().cutoff;
    let complete = s.carrier().complete;
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for &a in basis {
        for &b in basis {
            if kind.arity() == 2 {
                if complete || s.weight(a) + s.weight(b) <= cutoff {
                    tuples.push(vec![a, b]);
                }
                continue;
            }
            for &c in basis {
                if complete || s.weight(a) + s.weight(b) + s.weight(c) <= cutoff {
                    tuples.push(vec![a, b, c]);
                }
            }
        }
    }
    let tally = sweep(&tuples, |t| {
        let mut tally = Tally::default();
        tally.record(lambda_instance(s, op, kind, t));
        tally
    });
    let ranges = format!("{} basis {}-tuples of total weight ≤ {}", tuples.len(), kind.arity(), cutoff);
    tally.into_report(kind.name(), ranges, window_text(s.carrier()))
}

pub fn check_lambda_identities(s: &Sfc, kinds: &[LambdaIdentity], basis: &[usize]) -> Vec<CheckReport> {
    let op = opposite(s);
    kinds.iter().map(|k| check_lambda_identity(s, Some(&op), *k, basis)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::sfc::construct::{algebras, trivial_sfc};

    #[test]
    fn trivial_algebra_has_no_lambda_products() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let basis: Vec<usize> = (0..s.dim()).collect();
        for a in 0..s.dim() {
            for b in 0..s.dim() {
                let p = lambda_product(&s, &Some(Vector::single(a)), &Some(Vector::single(b)));
                assert!(p.is_zero_poly());
            }
        }
        for k in [LambdaIdentity::Jacobi, LambdaIdentity::Wick, LambdaIdentity::QuasiAssociativity] {
            assert_eq!(check_lambda_identity(&s, None, k, &basis).verdict, Verdict::Pass, "{}", k.name());
        }
        // a.b − b.a ≠ 0 while every λ-product vanishes
        let r = check_lambda_identity(&s, None, LambdaIdentity::DotCommutator, &basis);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn opposite_products_of_trivial_algebra() {
        // Y^op(a,0)b = b·a, and the λ-products stay zero
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let basis: Vec<usize> = (0..s.dim()).collect();
        for k in [LambdaIdentity::OppositeLambda, LambdaIdentity::OppositeDot] {
            assert_eq!(check_lambda_identity(&s, None, k, &basis).verdict, Verdict::Pass);
        }
    }
}
