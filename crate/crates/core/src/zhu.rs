//! The products a *_r b = Σ_i C(Δ_a,i) a_(r+i) b of a graded field algebra,
//! the subspace V *_{−2} V, and the weight-truncated Zhu algebra.
//!
//! Everything is computed below a weight cutoff W. The ideal is the span of
//! those a *_{−2} b whose top weight Δ_a+Δ_b+1 is at most W, so it may be
//! smaller than the true ideal cut down to weight W; a passing congruence is
//! exact, and nothing is claimed beyond W.

use std::cmp::Reverse;

use thiserror::Error;

use crate::lincomb::{Entry, LinComb, Linear, Vector};
use crate::linalg::RowSpace;
use crate::report::{CheckReport, Outcome, Tally, Witness};
use crate::scalar::{binomial, int, Scalar};
use crate::sfc::axioms::{Classification, Level};
use crate::sfc::{Action, AssocAlgebra, GroupAction, Sfc};

#[derive(Debug, Error, PartialEq)]
pub enum ZhuError {
    #[error("weight {0} is negative: the grading is not by non-negative integers")]
    NotGraded(i64),
    #[error("cutoff {0} exceeds the stored weight {1}")]
    Cutoff(i64, i64),
    #[error("product of weight {0} exceeds the cutoff {1}")]
    WeightOverflow(i64, i64),
    #[error("the quotient is only justified for strong field algebras and their tensor and smash composites (level: {0})")]
    Unjustified(&'static str),
}

/// Why V *_{−2} V is an ideal with associative quotient.
#[derive(Clone, Copy, Debug)]
pub enum Hypothesis<'a> {
    /// The input was classified at least as a strong field algebra.
    Classified(&'a Classification),
    /// An enveloping vertex algebra, which is vertex by construction.
    Envelope,
    /// V′ ⊗ A for a graded strong field algebra V′ and a unital algebra A.
    TensorWithAlgebra,
    /// V′ ♯ Γ for a group Γ of automorphisms of V′.
    SmashWithGroup,
}

pub struct ZhuContext<'a> {
    pub sfc: &'a Sfc,
    pub cutoff: i64,
}

/// Row-reduction key: pivots fall on the highest weight, then the highest
/// index, so the surviving coset representatives have low weight.
type Key = Reverse<(i64, usize)>;

fn unkeyed(v: &LinComb<Key>) -> Vector {
    v.map_keys(|k| k.0 .1)
}

impl<'a> ZhuContext<'a> {
    pub fn new(s: &'a Sfc, cutoff: i64) -> Result<ZhuContext<'a>, ZhuError> {
        let c = s.carrier();
        if c.min_weight() < 0 {
            return Err(ZhuError::NotGraded(c.min_weight()));
        }
        if cutoff > c.cutoff && !c.complete {
            return Err(ZhuError::Cutoff(cutoff, c.cutoff));
        }
        Ok(ZhuContext { sfc: s, cutoff })
    }

    fn weight(&self, i: usize) -> i64 {
        self.sfc.weight(i)
    }

    fn keyed(&self, v: &Vector) -> LinComb<Key> {
        v.map_keys(|i| Reverse((self.weight(*i), *i)))
    }

    pub fn basis(&self) -> Vec<usize> {
        self.sfc.carrier().up_to_weight(self.cutoff)
    }

    fn top(&self, v: &Vector) -> i64 {
        v.keys().map(|&i| self.weight(i)).max().unwrap_or(i64::MIN)
    }

    /// Top weight of a *_r b.
    pub fn star_weight(&self, a: &Vector, b: &Vector, r: i64) -> i64 {
        if a.is_empty() || b.is_empty() {
            return i64::MIN;
        }
        self.top(a) + self.top(b) - r - 1
    }

    /// a *_r b, bilinear over the homogeneous components of a.
    pub fn star(&self, a: &Vector, b: &Vector, r: i64) -> Result<Entry, ZhuError> {
        let w = self.star_weight(a, b, r);
        if w > self.cutoff {
            return Err(ZhuError::WeightOverflow(w, self.cutoff));
        }
        let mut out: Entry = Some(Vector::new());
        for (x, c) in a.iter() {
            let d = self.weight(*x);
            for i in 0..=d {
                out.add_scaled(&self.sfc.apply(*x, r + i, b), &(c * binomial(d, i as u64)));
            }
        }
        Ok(out)
    }

    fn star_basis(&self, a: usize, b: usize, r: i64) -> Result<Entry, ZhuError> {
        self.star(&Vector::single(a), &Vector::single(b), r)
    }

    /// (T+H)a for a basis vector.
    fn t_plus_h(&self, a: usize) -> Entry {
        let mut v = self.sfc.t(&Vector::single(a));
        v.add_assign_ref(&Some(Vector::term(a, int(self.weight(a)))));
        v
    }

    /// span{a *_{−2} b : Δ_a+Δ_b+1 ≤ W}, with the number of generators left
    /// unknown by the truncation.
    pub fn ideal(&self) -> (RowSpace<Key>, u64) {
        let basis = self.basis();
        let mut space = RowSpace::new();
        let mut unknown = 0;
        for &a in &basis {
            for &b in &basis {
                if self.weight(a) + self.weight(b) + 1 > self.cutoff {
                    continue;
                }
                match self.star_basis(a, b, -2) {
                    Ok(Some(v)) => {
                        space.insert(&self.keyed(&v));
                    }
                    _ => unknown += 1,
                }
            }
        }
        (space, unknown)
    }

    fn text(&self, v: &Vector) -> String {
        self.sfc.text(v)
    }

    fn window(&self) -> String {
        format!("weights <= {}", self.cutoff)
    }
}

pub fn star_r(ctx: &ZhuContext, a: &Vector, b: &Vector, r: i64) -> Result<Entry, ZhuError> {
    ctx.star(a, b, r)
}

#[derive(Clone, Copy, Debug)]
pub struct StarRanges {
    /// r for ((T+H)a) *_r b = −r a *_{r−1} b − (r+1) a *_r b.
    pub r: (i64, i64),
    /// r ≤ −2 for a *_r b ∈ V *_{−2} V.
    pub membership: (i64, i64),
    /// r, s ≤ −1 for (a *_r b) *_s c ≡ a *_r (b *_s c).
    pub congruence: (i64, i64),
}

impl Default for StarRanges {
    fn default() -> Self {
        StarRanges { r: (-4, 2), membership: (-4, -2), congruence: (-2, -1) }
    }
}

fn compare(ctx: &ZhuContext, ins: &[(&str, String)], lhs: Entry, rhs: Entry) -> Outcome {
    match (lhs, rhs) {
        (Some(x), Some(y)) if x == y => Outcome::Holds,
        (Some(x), Some(y)) => Outcome::Fails(Witness::new(ins, ctx.text(&x), ctx.text(&y))),
        _ => Outcome::Unknown,
    }
}

/// Membership modulo the ideal; unknown values are uncertified.
fn congruent(ctx: &ZhuContext, ideal: &RowSpace<Key>, ins: &[(&str, String)], lhs: Entry, rhs: Entry) -> Outcome {
    match (lhs, rhs) {
        (Some(x), Some(y)) => {
            let mut d = x.clone();
            d.sub_assign_ref(&y);
            if ideal.contains(&ctx.keyed(&d)) {
                Outcome::Holds
            } else {
                Outcome::Fails(Witness::new(ins, ctx.text(&x), ctx.text(&y)))
            }
        }
        _ => Outcome::Unknown,
    }
}

/// The translation rule for *_r, membership of a *_r b (r ≤ −2) in the
/// ideal, and the congruence (a *_r b) *_s c ≡ a *_r (b *_s c) for r, s ≤ −1,
/// on every basis pair or triple whose products stay below the cutoff.
pub fn check_star_identities(ctx: &ZhuContext, ranges: &StarRanges) -> Vec<CheckReport> {
    let basis = ctx.basis();
    let (ideal, _) = ctx.ideal();
    let name = |i: usize| ctx.sfc.label(i).to_string();

    let mut t = Tally::default();
    for &a in &basis {
        for &b in &basis {
            for r in ranges.r.0..=ranges.r.1 {
                if ctx.weight(a) + ctx.weight(b) - r > ctx.cutoff {
                    continue;
                }
                let ins = [("a", name(a)), ("b", name(b)), ("r", r.to_string())];
                let lhs = match ctx.t_plus_h(a) {
                    Some(th) => ctx.star(&th, &Vector::single(b), r).unwrap(),
                    None => None,
                };
                let mut rhs = ctx.star_basis(a, b, r - 1).unwrap().scaled(&int(-r));
                rhs.add_scaled(&ctx.star_basis(a, b, r).unwrap(), &int(-(r + 1)));
                t.record(compare(ctx, &ins, lhs, rhs));
            }
        }
    }
    let z2 = t.into_report(
        "star-translation",
        format!("basis pairs, r in {}..{}", ranges.r.0, ranges.r.1),
        ctx.window(),
    );

    let mut t = Tally::default();
    for &a in &basis {
        for &b in &basis {
            for r in ranges.membership.0..=ranges.membership.1.min(-2) {
                if ctx.weight(a) + ctx.weight(b) - r - 1 > ctx.cutoff {
                    continue;
                }
                let ins = [("a", name(a)), ("b", name(b)), ("r", r.to_string())];
                t.record(congruent(ctx, &ideal, &ins, ctx.star_basis(a, b, r).unwrap(), Some(Vector::new())));
            }
        }
    }
    let z5 = t.into_report(
        "star-membership",
        format!("basis pairs, r in {}..{}", ranges.membership.0, ranges.membership.1.min(-2)),
        ctx.window(),
    );

    let mut t = Tally::default();
    let (lo, hi) = (ranges.congruence.0, ranges.congruence.1.min(-1));
    for &a in &basis {
        for &b in &basis {
            for &c in &basis {
                let w = ctx.weight(a) + ctx.weight(b) + ctx.weight(c);
                for r in lo..=hi {
                    for s in lo..=hi {
                        if w - r - s - 2 > ctx.cutoff {
                            continue;
                        }
                        let ins = [("a", name(a)), ("b", name(b)), ("c", name(c)), ("r", r.to_string()), ("s", s.to_string())];
                        let ec = Vector::single(c);
                        let left = ctx.star_basis(a, b, r).unwrap().map(|ab| ctx.star(&ab, &ec, s).unwrap()).flatten();
                        let right = ctx.star_basis(b, c, s).unwrap().map(|bc| ctx.star(&Vector::single(a), &bc, r).unwrap()).flatten();
                        t.record(congruent(ctx, &ideal, &ins, left, right));
                    }
                }
            }
        }
    }
    let z6 = t.into_report("star-associativity", format!("basis triples, r, s in {lo}..{hi}"), ctx.window());
    vec![z2, z5, z6]
}

/// a^M_0(b^M_0 v) = (a*b)^M_0 v and (a *_r b)^M_0 v = 0 for r ≤ −2, on the
/// weight-0 space of a graded module, with x^M_0 = x^M_(Δ_x−1).
pub fn check_zero_modes<A: Action + ?Sized>(ctx: &ZhuContext, m: &A, ranges: &StarRanges) -> Vec<CheckReport> {
    let basis = ctx.basis();
    let m0: Vec<usize> = m.space().of_weight(0).to_vec();
    let space = m.space();
    let zero_mode = |x: &Entry, v: &Entry| -> Entry {
        let (x, v) = (x.as_ref()?, v.as_ref()?);
        let mut out = Vector::new();
        for (i, c) in x.iter() {
            out.add_scaled(&m.act(*i, ctx.weight(*i) - 1, v)?, c);
        }
        Some(out)
    };
    let name = |i: usize| ctx.sfc.label(i).to_string();
    let cmp = |ins: &[(&str, String)], lhs: Entry, rhs: Entry| match (lhs, rhs) {
        (Some(x), Some(y)) if x == y => Outcome::Holds,
        (Some(x), Some(y)) => Outcome::Fails(Witness::new(ins, space.text(&x), space.text(&y))),
        _ => Outcome::Unknown,
    };
    let mut comp = Tally::default();
    let mut kill = Tally::default();
    for &a in &basis {
        for &b in &basis {
            for &v in &m0 {
                let ev = Some(Vector::single(v));
                let (ea, eb) = (Some(Vector::single(a)), Some(Vector::single(b)));
                if ctx.weight(a) + ctx.weight(b) <= ctx.cutoff {
                    let ins = [("a", name(a)), ("b", name(b)), ("v", space.label(v).to_string())];
                    let lhs = zero_mode(&ea, &zero_mode(&eb, &ev));
                    let rhs = zero_mode(&ctx.star_basis(a, b, -1).unwrap(), &ev);
                    comp.record(cmp(&ins, lhs, rhs));
                }
                for r in ranges.membership.0..=ranges.membership.1.min(-2) {
                    if ctx.weight(a) + ctx.weight(b) - r - 1 > ctx.cutoff {
                        continue;
                    }
                    let ins = [("a", name(a)), ("b", name(b)), ("v", space.label(v).to_string()), ("r", r.to_string())];
                    kill.record(cmp(&ins, zero_mode(&ctx.star_basis(a, b, r).unwrap(), &ev), Some(Vector::new())));
                }
            }
        }
    }
    vec![
        comp.into_report("zero-mode-composition", "basis pairs on the weight-0 space".into(), ctx.window()),
        kill.into_report("zero-mode-kills-ideal", "basis pairs on the weight-0 space".into(), ctx.window()),
    ]
}

/// V_{≤W} modulo the ideal, with cosets represented by the basis vectors
/// that are not pivots (pivots are taken at the highest index).
pub struct ZhuQuotient {
    /// Basis indices of the coset representatives.
    pub reps: Vec<usize>,
    pub labels: Vec<String>,
    ideal: RowSpace<Key>,
    weights: Vec<i64>,
    /// table[i][j] = reps[i] * reps[j] in coset coordinates, where the
    /// product stays below the cutoff.
    pub table: Vec<Vec<Option<Vec<Scalar>>>>,
    /// Ideal generators left unknown by the truncation.
    pub unknown_generators: u64,
    pub reports: Vec<CheckReport>,
}

impl ZhuQuotient {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn keyed(&self, v: &Vector) -> LinComb<Key> {
        v.map_keys(|i| Reverse((self.weights[*i], *i)))
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.ideal.contains(&self.keyed(v))
    }

    /// Coordinates of the coset of v.
    pub fn coords(&self, v: &Vector) -> Vec<Scalar> {
        let r = unkeyed(&self.ideal.reduce(&self.keyed(v)));
        self.reps.iter().map(|i| r.coeff(i)).collect()
    }

    /// Rank of a family of cosets.
    pub fn rank(&self, vs: &[Vector]) -> usize {
        let mut s = self.ideal.clone();
        let base = s.rank();
        for v in vs {
            s.insert(&self.keyed(v));
        }
        s.rank() - base
    }

    fn ideal_space(&self) -> &RowSpace<Key> {
        &self.ideal
    }
}

/// Builds the quotient, checking that the ideal is closed under * from both
/// sides and that * is associative on it, below the cutoff.
pub fn zhu_algebra(ctx: &ZhuContext, why: Hypothesis) -> Result<ZhuQuotient, ZhuError> {
    if let Hypothesis::Classified(c) = why {
        if c.level < Level::StrongField {
            return Err(ZhuError::Unjustified(c.level.name()));
        }
    }
    let basis = ctx.basis();
    let (ideal, unknown_generators) = ctx.ideal();
    let reps: Vec<usize> = basis.iter().copied().filter(|&i| !ideal.is_pivot(&Reverse((ctx.weight(i), i)))).collect();
    let labels = reps.iter().map(|&i| ctx.sfc.label(i).to_string()).collect();
    let weights = (0..ctx.sfc.dim()).map(|i| ctx.weight(i)).collect();
    let mut q = ZhuQuotient { reps, labels, ideal, weights, table: Vec::new(), unknown_generators, reports: Vec::new() };
    q.table = q
        .reps
        .iter()
        .map(|&x| {
            q.reps
                .iter()
                .map(|&y| match ctx.star_basis(x, y, -1) {
                    Ok(Some(v)) => Some(q.coords(&v)),
                    _ => None,
                })
                .collect()
        })
        .collect();

    let name = |i: usize| ctx.sfc.label(i).to_string();
    let gens: Vec<Vector> = q.ideal_space().rows().map(unkeyed).collect();
    let mut t = Tally::default();
    for g in &gens {
        for &x in &basis {
            let ex = Vector::single(x);
            for (side, l, r) in [("left", &ex, g), ("right", g, &ex)] {
                if ctx.star_weight(l, r, -1) > ctx.cutoff {
                    continue;
                }
                let ins = [("x", name(x)), ("ideal element", ctx.text(g)), ("side", side.to_string())];
                t.record(congruent(ctx, &q.ideal, &ins, ctx.star(l, r, -1).unwrap(), Some(Vector::new())));
            }
        }
    }
    let mut closed = t.into_report("zhu-ideal-two-sided", "ideal basis times basis vectors".into(), ctx.window());
    if unknown_generators > 0 {
        closed.notes.push(format!("{unknown_generators} generators unknown on the truncation"));
    }

    let mut t = Tally::default();
    for &x in &q.reps {
        for &y in &q.reps {
            for &z in &q.reps {
                if ctx.weight(x) + ctx.weight(y) + ctx.weight(z) > ctx.cutoff {
                    continue;
                }
                let ins = [("x", name(x)), ("y", name(y)), ("z", name(z))];
                let (ex, ez) = (Vector::single(x), Vector::single(z));
                let left = ctx.star_basis(x, y, -1).unwrap().and_then(|v| ctx.star(&v, &ez, -1).unwrap());
                let right = ctx.star_basis(y, z, -1).unwrap().and_then(|v| ctx.star(&ex, &v, -1).unwrap());
                t.record(congruent(ctx, &q.ideal, &ins, left, right));
            }
        }
    }
    let assoc = t.into_report("zhu-associativity", "triples of coset representatives".into(), ctx.window());
    q.reports = vec![closed, assoc];
    Ok(q)
}

/// x * y ≡ y * x on every pair of representatives below the cutoff.
pub fn check_commutative(ctx: &ZhuContext, q: &ZhuQuotient) -> CheckReport {
    let mut t = Tally::default();
    for &x in &q.reps {
        for &y in &q.reps {
            if ctx.weight(x) + ctx.weight(y) > ctx.cutoff {
                continue;
            }
            let ins = [("x", ctx.sfc.label(x).to_string()), ("y", ctx.sfc.label(y).to_string())];
            t.record(congruent(ctx, &q.ideal, &ins, ctx.star_basis(x, y, -1).unwrap(), ctx.star_basis(y, x, -1).unwrap()));
        }
    }
    t.into_report("zhu-commutative", "pairs of coset representatives".into(), ctx.window())
}

/// The powers |0⟩, a, a*a, … , a^{*k} while they stay below the cutoff.
pub fn star_powers(ctx: &ZhuContext, a: usize, k: usize) -> Result<Vec<Vector>, ZhuError> {
    let mut out = vec![ctx.sfc.vacuum_vector()];
    for _ in 0..k {
        let last = out.last().unwrap();
        match ctx.star(&Vector::single(a), last, -1)? {
            Some(v) => out.push(v),
            None => break,
        }
    }
    Ok(out)
}

/// The cosets of a^{*0}, …, a^{*k} are linearly independent.
pub fn check_independent_powers(ctx: &ZhuContext, q: &ZhuQuotient, a: usize, k: usize) -> CheckReport {
    let mut t = Tally::default();
    match star_powers(ctx, a, k) {
        Ok(p) if p.len() == k + 1 => {
            let rank = q.rank(&p);
            t.record(if rank == k + 1 {
                Outcome::Holds
            } else {
                Outcome::Fails(Witness::new(&[("a", ctx.sfc.label(a).into())], format!("rank {rank}"), format!("rank {}", k + 1)))
            });
        }
        _ => t.record(Outcome::Unknown),
    }
    t.into_report(
        "zhu-independent-powers",
        format!("a = {}, powers 0..{k}", ctx.sfc.label(a)),
        ctx.window(),
    )
}

/// Zh(V′ ⊗ A) ≅ Zh(V′) ⊗ A below the cutoff: the ideal of the tensor product
/// is the ideal of V′ tensored with A, and (x⊗m) * (y⊗m′) ≡ (x*y) ⊗ mm′.
/// `embed(i, j)` is the index of e_i ⊗ e_j.
pub fn check_tensor_isomorphism(
    base: &ZhuContext,
    alg: &AssocAlgebra,
    comp: &ZhuContext,
    embed: impl Fn(usize, usize) -> Option<usize>,
) -> CheckReport {
    let lift = |v: &Vector, m: &Vector| -> Option<Vector> {
        let mut out = Vector::new();
        for (i, a) in v.iter() {
            for (j, b) in m.iter() {
                out.add_term(embed(*i, *j)?, a * b);
            }
        }
        Some(out)
    };
    composite_isomorphism(
        "zhu-tensor-isomorphism",
        base,
        alg.dim(),
        comp,
        &lift,
        &|x, j, y, k| (x.clone(), y.clone(), alg.mul(&Vector::single(j), &Vector::single(k))),
    )
}

/// Zh(V′ ♯ Γ) ≅ Zh(V′) ♯ Γ below the cutoff:
/// (x⊗g) * (y⊗h) ≡ (x * gy) ⊗ gh. `embed(i, g)` is the index of e_i ⊗ g.
pub fn check_smash_isomorphism(
    base: &ZhuContext,
    act: &GroupAction,
    comp: &ZhuContext,
    embed: impl Fn(usize, usize) -> Option<usize>,
) -> CheckReport {
    let lift = |v: &Vector, m: &Vector| -> Option<Vector> {
        let mut out = Vector::new();
        for (i, a) in v.iter() {
            for (g, b) in m.iter() {
                out.add_term(embed(*i, *g)?, a * b);
            }
        }
        Some(out)
    };
    composite_isomorphism(
        "zhu-smash-isomorphism",
        base,
        act.order(),
        comp,
        &lift,
        &|x, g, y, h| (x.clone(), act.act(g, y), Vector::single(act.table[g][h])),
    )
}

type Rule<'r> = dyn Fn(&Vector, usize, &Vector, usize) -> (Vector, Vector, Vector) + 'r;

fn composite_isomorphism(
    identity: &str,
    base: &ZhuContext,
    n2: usize,
    comp: &ZhuContext,
    lift: &dyn Fn(&Vector, &Vector) -> Option<Vector>,
    rule: &Rule,
) -> CheckReport {
    let mut t = Tally::default();
    let (ib, _) = base.ideal();
    let (ic, _) = comp.ideal();
    // both ideals, compared as subspaces of the composite
    let mut lifted = RowSpace::new();
    let mut ok = true;
    for g in ib.rows() {
        for j in 0..n2 {
            match lift(&unkeyed(g), &Vector::single(j)) {
                Some(v) => {
                    lifted.insert(&comp.keyed(&v));
                }
                None => ok = false,
            }
        }
    }
    t.record(if !ok {
        Outcome::Unknown
    } else if lifted.same_span(&ic) {
        Outcome::Holds
    } else {
        Outcome::Fails(Witness::new(&[("ideal", "lifted vs computed".into())], format!("rank {}", lifted.rank()), format!("rank {}", ic.rank())))
    });
    let basis = base.basis();
    let name = |i: usize| base.sfc.label(i).to_string();
    for &x in &basis {
        for &y in &basis {
            if base.weight(x) + base.weight(y) > base.cutoff {
                continue;
            }
            for j in 0..n2 {
                for k in 0..n2 {
                    let (ex, ey) = (Vector::single(x), Vector::single(y));
                    let ins = [("x", name(x)), ("y", name(y)), ("j", j.to_string()), ("k", k.to_string())];
                    let lhs = match (lift(&ex, &Vector::single(j)), lift(&ey, &Vector::single(k))) {
                        (Some(p), Some(q)) => comp.star(&p, &q, -1).unwrap(),
                        _ => None,
                    };
                    let (x2, y2, m) = rule(&ex, j, &ey, k);
                    let rhs = base.star(&x2, &y2, -1).unwrap().and_then(|v| lift(&v, &m));
                    t.record(match (lhs, rhs) {
                        (Some(l), Some(r)) => {
                            let mut d = l.clone();
                            d.sub_assign_ref(&r);
                            if ic.contains(&comp.keyed(&d)) {
                                Outcome::Holds
                            } else {
                                Outcome::Fails(Witness::new(&ins, comp.text(&l), comp.text(&r)))
                            }
                        }
                        _ => Outcome::Unknown,
                    });
                }
            }
        }
    }
    t.into_report(identity, "ideal spans and representative products".into(), base.window())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{build_envelope, EnvelopeOptions};
    use crate::conformal::fixtures::free_boson;
    use crate::scalar;
    use crate::sfc::construct::algebras::one_dimensional;
    use crate::sfc::trivial_sfc;

    fn heisenberg(w: i64) -> crate::envelope::Envelope {
        build_envelope(&free_boson(), EnvelopeOptions::new(w).central("K", scalar::one())).unwrap()
    }

    #[test]
    fn star_products_on_the_boson() {
        let e = heisenberg(4);
        let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
        let a = e.letter("a", 0).unwrap();
        let ea = Vector::single(a);
        let aa = e.sfc.apply(a, -1, &ea).unwrap();
        assert_eq!(ctx.star(&ea, &ea, -1).unwrap(), Some(aa.clone()));
        let mut want = e.sfc.apply(a, -2, &ea).unwrap();
        want.add_assign_ref(&aa);
        assert_eq!(ctx.star(&ea, &ea, -2).unwrap(), Some(want));
        let vac = e.sfc.vacuum_vector();
        assert_eq!(ctx.star(&vac, &ea, -1).unwrap(), Some(ea.clone()));
        assert!(matches!(ctx.star(&ea, &ea, -4), Err(ZhuError::WeightOverflow(5, 4))));
    }

    #[test]
    fn one_dimensional_zhu_is_the_rationals() {
        let s = trivial_sfc(&one_dimensional()).unwrap();
        let ctx = ZhuContext::new(&s, 0).unwrap();
        let q = zhu_algebra(&ctx, Hypothesis::TensorWithAlgebra).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.table[0][0], Some(vec![scalar::one()]));
    }

    #[test]
    fn refuses_without_justification() {
        let s = trivial_sfc(&one_dimensional()).unwrap();
        let ctx = ZhuContext::new(&s, 0).unwrap();
        let c = Classification { level: Level::Field, inconclusive: false, reports: vec![] };
        assert_eq!(zhu_algebra(&ctx, Hypothesis::Classified(&c)).err(), Some(ZhuError::Unjustified("field")));
    }
}
