//! State–field correspondences stored as exact tables of products a_(n)b on
//! a truncated graded basis.

use std::sync::Arc;

use serde::Serialize;

use crate::carrier::Carrier;
use crate::lincomb::{Entry, Linear, Vector};
use crate::report::{sweep, CheckReport, Outcome, Tally, Verdict, Witness};
use crate::scalar;

pub mod axioms;
pub mod construct;
pub mod lambda_ids;
pub mod module;

pub use axioms::{classify, AxiomKind, AxiomRanges, Classification};
pub use construct::{reconstruct_sfc, smash_sfc, tensor_sfc, trivial_sfc, AssocAlgebra, GroupAction};
pub use module::{check_module, FAModule};

#[derive(Clone, Debug)]
struct ModeRow {
    lo: i64,
    vals: Vec<Entry>,
}

/// Value of a single product a_(n)b for basis vectors a, b.
#[derive(Clone, Copy, Debug)]
pub enum ModeVal<'a> {
    Zero,
    Known(&'a Vector),
    Unknown,
}

/// Products a_(n)v of a basis vector of one graded space on a basis vector
/// of another, stored for every n where the result can be nonzero and lies
/// within the cutoff. The result has weight Δa+Δv−n−1.
#[derive(Clone, Debug)]
pub struct ModeTable {
    left: Arc<Carrier>,
    right: Arc<Carrier>,
    rows: Vec<ModeRow>,
}

impl ModeTable {
    pub fn from_fn(
        left: Arc<Carrier>,
        right: Arc<Carrier>,
        mut f: impl FnMut(usize, i64, usize) -> Entry,
    ) -> ModeTable {
        let (dl, dr) = (left.dim(), right.dim());
        let mut rows = Vec::with_capacity(dl * dr);
        for a in 0..dl {
            for b in 0..dr {
                let (lo, hi) = window(&left, &right, a, b);
                let vals = (lo..=hi).map(|n| f(a, n, b)).collect();
                rows.push(ModeRow { lo, vals });
            }
        }
        ModeTable { left, right, rows }
    }

    pub fn left(&self) -> &Carrier {
        &self.left
    }

    pub fn right(&self) -> &Carrier {
        &self.right
    }

    pub fn window(&self, a: usize, b: usize) -> (i64, i64) {
        window(&self.left, &self.right, a, b)
    }

    pub fn mode(&self, a: usize, n: i64, b: usize) -> ModeVal<'_> {
        let row = &self.rows[a * self.right.dim() + b];
        let hi = row.lo + row.vals.len() as i64 - 1;
        if n > hi {
            return ModeVal::Zero;
        }
        if n < row.lo {
            return if self.right.complete { ModeVal::Zero } else { ModeVal::Unknown };
        }
        match &row.vals[(n - row.lo) as usize] {
            Some(v) if v.is_zero() => ModeVal::Zero,
            Some(v) => ModeVal::Known(v),
            None => ModeVal::Unknown,
        }
    }

    pub fn mode_entry(&self, a: usize, n: i64, b: usize) -> Entry {
        match self.mode(a, n, b) {
            ModeVal::Zero => Some(Vector::new()),
            ModeVal::Known(v) => Some(v.clone()),
            ModeVal::Unknown => None,
        }
    }

    pub fn apply(&self, a: usize, n: i64, v: &Vector) -> Entry {
        let mut out = Vector::new();
        for (b, c) in v.iter() {
            match self.mode(a, n, *b) {
                ModeVal::Zero => {}
                ModeVal::Known(w) => out.add_scaled(w, c),
                ModeVal::Unknown => return None,
            }
        }
        Some(out)
    }

    pub fn set(&mut self, a: usize, n: i64, b: usize, v: Entry) {
        let d = self.right.dim();
        let row = &mut self.rows[a * d + b];
        let idx = n - row.lo;
        assert!(idx >= 0 && (idx as usize) < row.vals.len(), "mode outside the stored window");
        row.vals[idx as usize] = v;
    }
}

/// Every basis vector is homogeneous for the grading by weights, and a_(n)b
/// has weight Δa+Δb−n−1. Products landing above the cutoff of an incomplete
/// carrier are unknown; products landing below the minimal weight vanish.
#[derive(Clone, Debug)]
pub struct Sfc {
    pub name: String,
    pub vacuum: usize,
    translation: Vec<Entry>,
    table: ModeTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct SfcSummary {
    pub name: String,
    pub dimension: usize,
    pub cutoff: i64,
    pub complete: bool,
    pub graded_dimensions: Vec<(i64, usize)>,
}

impl Sfc {
    /// Builds the table by evaluating `f(a, n, b)` on every in-window product.
    pub fn from_fn(
        name: impl Into<String>,
        carrier: Arc<Carrier>,
        vacuum: usize,
        translation: Vec<Entry>,
        f: impl FnMut(usize, i64, usize) -> Entry,
    ) -> Sfc {
        assert_eq!(translation.len(), carrier.dim());
        let table = ModeTable::from_fn(carrier.clone(), carrier, f);
        Sfc { name: name.into(), vacuum, translation, table }
    }

    pub fn table(&self) -> &ModeTable {
        &self.table
    }

    pub fn carrier(&self) -> &Carrier {
        &self.table.left
    }

    pub fn carrier_arc(&self) -> Arc<Carrier> {
        self.table.left.clone()
    }

    pub fn dim(&self) -> usize {
        self.carrier().dim()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.carrier().weight(i)
    }

    pub fn summary(&self) -> SfcSummary {
        SfcSummary {
            name: self.name.clone(),
            dimension: self.dim(),
            cutoff: self.carrier().cutoff,
            complete: self.carrier().complete,
            graded_dimensions: self.carrier().graded_dims(),
        }
    }

    /// Range of n for which a_(n)b is stored.
    pub fn mode_window(&self, a: usize, b: usize) -> (i64, i64) {
        self.table.window(a, b)
    }

    /// a_(n)b = 0 for all n above this bound.
    pub fn upper(&self, a: usize, b: usize) -> i64 {
        self.mode_window(a, b).1
    }

    /// Bound above which x_(n)v vanishes, for arbitrary vectors.
    pub fn upper_vec(&self, x: &Vector, v: &Vector) -> i64 {
        let c = self.carrier();
        match (c.max_weight_of(x), c.max_weight_of(v)) {
            (Some(a), Some(b)) => a + b - 1 - c.min_weight(),
            _ => i64::MIN / 4,
        }
    }

    pub fn mode(&self, a: usize, n: i64, b: usize) -> ModeVal<'_> {
        self.table.mode(a, n, b)
    }

    pub fn mode_entry(&self, a: usize, n: i64, b: usize) -> Entry {
        self.table.mode_entry(a, n, b)
    }

    /// a_(n) applied to a vector.
    pub fn apply(&self, a: usize, n: i64, v: &Vector) -> Entry {
        self.table.apply(a, n, v)
    }

    pub fn apply_entry(&self, a: usize, n: i64, v: &Entry) -> Entry {
        v.as_ref().and_then(|v| self.apply(a, n, v))
    }

    /// x_(n) v for a vector x.
    pub fn apply_vec(&self, x: &Vector, n: i64, v: &Vector) -> Entry {
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            out.add_scaled(&self.apply(*a, n, v)?, c);
        }
        Some(out)
    }

    pub fn apply_vec_entry(&self, x: &Entry, n: i64, v: &Entry) -> Entry {
        match (x, v) {
            (Some(x), Some(v)) => self.apply_vec(x, n, v),
            _ => None,
        }
    }

    pub fn translation_of(&self, i: usize) -> &Entry {
        &self.translation[i]
    }

    pub fn t(&self, v: &Vector) -> Entry {
        let mut out = Vector::new();
        for (i, c) in v.iter() {
            out.add_scaled(self.translation[*i].as_ref()?, c);
        }
        Some(out)
    }

    pub fn t_entry(&self, v: &Entry) -> Entry {
        v.as_ref().and_then(|v| self.t(v))
    }

    pub fn t_pow(&self, v: &Vector, k: u32) -> Entry {
        let mut cur = Some(v.clone());
        for _ in 0..k {
            cur = self.t_entry(&cur);
        }
        cur
    }

    pub fn vacuum_vector(&self) -> Vector {
        Vector::single(self.vacuum)
    }

    pub fn text(&self, v: &Vector) -> String {
        self.carrier().text(v)
    }

    pub fn entry_text(&self, e: &Entry) -> String {
        self.carrier().entry_text(e)
    }

    pub fn label(&self, i: usize) -> &str {
        self.carrier().label(i)
    }

    /// Overwrites one product. Used to build deliberately broken fixtures.
    pub fn set_mode(&mut self, a: usize, n: i64, b: usize, v: Entry) {
        self.table.set(a, n, b, v);
    }

    pub fn set_translation(&mut self, i: usize, v: Entry) {
        self.translation[i] = v;
    }

    /// All stored products agree (unknown entries must coincide too).
    pub fn same_table(&self, other: &Sfc) -> Option<(usize, i64, usize)> {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let (lo, hi) = self.mode_window(a, b);
                for n in lo..=hi {
                    if self.mode_entry(a, n, b) != other.mode_entry(a, n, b) {
                        return Some((a, n, b));
                    }
                }
            }
        }
        None
    }
}

fn window(left: &Carrier, right: &Carrier, a: usize, b: usize) -> (i64, i64) {
    let s = left.weight(a) + right.weight(b) - 1;
    (s - right.cutoff, s - right.min_weight())
}

/// Y^op(a,z)b = e^{zT} Y(b,−z)a, i.e. a^op_(n)b = Σ_{k≥0} (−1)^{n+k+1} T^k(b_(n+k)a)/k!.
pub fn opposite(s: &Sfc) -> Sfc {
    let translation = (0..s.dim()).map(|i| s.translation_of(i).clone()).collect();
    Sfc::from_fn(format!("{}^op", s.name), s.carrier_arc(), s.vacuum, translation, |a, n, b| {
        let mut out: Entry = Some(Vector::new());
        let top = s.upper(b, a);
        for k in 0..=(top - n).max(-1) {
            let inner = s.mode_entry(b, n + k, a);
            if inner.is_zero() {
                continue;
            }
            let v = inner.and_then(|v| s.t_pow(&v, k as u32));
            let c = scalar::sign(n + k + 1) / scalar::factorial(k as u64);
            out.add_scaled(&v, &c);
        }
        out
    })
}

/// Checks the state–field correspondence axioms: vacuum, creation
/// Y(a,z)|0⟩ = e^{zT}a, translation covariance, and the grading identities.
pub fn check_sfc(s: &Sfc) -> CheckReport {
    let d = s.dim();
    let vac = s.vacuum_vector();
    let basis: Vec<usize> = (0..d).collect();
    let mut notes = Vec::new();

    let vacuum = sweep(&basis, |&a| {
        let mut t = Tally::default();
        let ea = Vector::single(a);
        let (lo, hi) = s.mode_window(a, s.vacuum);
        for n in lo.min(-1)..=hi.max(0) {
            // a_(n)|0⟩ = 0 for n ≥ 0, a_(−1)|0⟩ = a
            if n >= -1 {
                let lhs = s.apply(a, n, &vac);
                let rhs = if n == -1 { ea.clone() } else { Vector::new() };
                t.record(compare(s, lhs, Some(rhs), &[("a", s.label(a).into()), ("n", n.to_string()), ("rule", "a_(n)|0>".into())]));
            }
            // |0⟩_(n)a = δ_{n,−1} a
            let lhs = s.apply(s.vacuum, n, &ea);
            let rhs = if n == -1 { ea.clone() } else { Vector::new() };
            t.record(compare(s, lhs, Some(rhs), &[("a", s.label(a).into()), ("n", n.to_string()), ("rule", "|0>_(n)a".into())]));
        }
        t
    });
    notes.push(format!("vacuum: {:?}", vacuum.verdict()));

    let creation = sweep(&basis, |&a| {
        let mut t = Tally::default();
        let ea = Vector::single(a);
        let mut k = 0u32;
        while s.weight(a) + k as i64 <= s.carrier().cutoff {
            let lhs = s.apply(a, -1 - k as i64, &vac);
            let rhs = s.t_pow(&ea, k).map(|v| v.scaled(&(scalar::one() / scalar::factorial(k as u64))));
            t.record(compare(s, lhs, rhs, &[("a", s.label(a).into()), ("k", k.to_string()), ("rule", "a_(-1-k)|0> = T^k a/k!".into())]));
            k += 1;
        }
        t
    });
    notes.push(format!("creation: {:?}", creation.verdict()));

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let translation = sweep(&pairs, |&(a, b)| {
        let mut t = Tally::default();
        let (ea, eb) = (Vector::single(a), Vector::single(b));
        let (lo, hi) = s.mode_window(a, b);
        let ta = s.t(&ea);
        for n in lo..=hi + 1 {
            let prev = s.apply(a, n - 1, &eb).map(|v| v.scaled(&scalar::int(-n)));
            // [T, a_(n)]b = −n a_(n−1) b
            let mut comm = s.t_entry(&s.apply(a, n, &eb));
            comm.sub_assign_ref(&s.apply_entry(a, n, &s.t(&eb)));
            let ins = [("a", s.label(a).to_string()), ("b", s.label(b).to_string()), ("n", n.to_string())];
            t.record(compare(s, comm, prev.clone(), &[&ins[..], &[("rule", "[T,a_(n)]b".into())]].concat()));
            // (Ta)_(n)b = −n a_(n−1) b
            let lhs = s.apply_vec_entry(&ta, n, &Some(eb.clone()));
            t.record(compare(s, lhs, prev, &[&ins[..], &[("rule", "(Ta)_(n)b".into())]].concat()));
        }
        t
    });
    notes.push(format!("translation: {:?}", translation.verdict()));

    let grading = sweep(&pairs, |&(a, b)| {
        let mut t = Tally::default();
        let (wa, wb) = (s.weight(a), s.weight(b));
        let (lo, hi) = s.mode_window(a, b);
        let ins = |n: i64, rule: &str| {
            [("a", s.label(a).to_string()), ("b", s.label(b).to_string()), ("n", n.to_string()), ("rule", rule.to_string())]
        };
        for n in lo..=hi {
            match s.mode(a, n, b) {
                ModeVal::Known(v) => {
                    let expected = wa + wb - n - 1;
                    t.record(if v.keys().all(|i| s.weight(*i) == expected) {
                        Outcome::Holds
                    } else {
                        Outcome::Fails(Witness::new(&ins(n, "weight of a_(n)b"), s.text(v), format!("homogeneous of weight {expected}")))
                    });
                }
                ModeVal::Zero => t.record(Outcome::Holds),
                ModeVal::Unknown => t.record(Outcome::Unknown),
            }
        }
        // ((T+H)a)_0 b = (Ta)_(Δa) b + Δa a_(Δa−1) b = 0
        let eb = Vector::single(b);
        let mut lhs = s.apply_vec_entry(&s.t(&Vector::single(a)), wa, &Some(eb.clone()));
        lhs.add_scaled(&s.apply(a, wa - 1, &eb), &scalar::int(wa));
        t.record(compare(s, lhs, Some(Vector::new()), &ins(wa, "((T+H)a)_0 b")));
        t
    });
    notes.push(format!("grading: {:?}", grading.verdict()));

    let mut all = Tally::default();
    for part in [vacuum, creation, translation, grading] {
        all.merge(part);
    }
    let mut r = all.into_report(
        "sfc-axioms",
        format!("{d} basis vectors, all stored modes"),
        window_text(s.carrier()),
    );
    notes.push("local finiteness: holds by the grading (a_(n)b = 0 below the minimal weight)".into());
    r.notes = notes;
    r
}

pub(crate) fn window_text(c: &Carrier) -> String {
    if c.complete {
        format!("complete, weights {}..{}", c.min_weight(), c.cutoff)
    } else {
        format!("weights {}..{} (products above {} unknown)", c.min_weight(), c.cutoff, c.cutoff)
    }
}

/// Compares two possibly unknown vectors.
pub(crate) fn compare(s: &Sfc, lhs: Entry, rhs: Entry, inputs: &[(&str, String)]) -> Outcome {
    match (lhs, rhs) {
        (Some(l), Some(r)) => {
            if l == r {
                Outcome::Holds
            } else {
                Outcome::Fails(Witness::new(inputs, s.text(&l), s.text(&r)))
            }
        }
        _ => Outcome::Unknown,
    }
}

/// Y = Y^op on every stored product.
pub fn check_skew_symmetry(s: &Sfc, op: &Sfc, basis: &[usize]) -> CheckReport {
    let pairs: Vec<(usize, usize)> = basis.iter().flat_map(|&a| basis.iter().map(move |&b| (a, b))).collect();
    let tally = sweep(&pairs, |&(a, b)| {
        let mut t = Tally::default();
        let (lo, hi) = s.mode_window(a, b);
        for n in lo..=hi {
            t.record(compare(
                s,
                s.mode_entry(a, n, b),
                op.mode_entry(a, n, b),
                &[("a", s.label(a).into()), ("b", s.label(b).into()), ("n", n.to_string())],
            ));
        }
        t
    });
    tally.into_report("Y=Y^op", format!("{} basis pairs, all stored modes", pairs.len()), window_text(s.carrier()))
}

pub fn verdict_of(reports: &[CheckReport]) -> Verdict {
    reports.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
}

/// Modes of an algebra acting on a graded space: the algebra on itself, or a
/// module over it.
pub trait Action: Sync {
    fn algebra(&self) -> &Sfc;
    fn space(&self) -> &Carrier;
    fn act(&self, a: usize, n: i64, v: &Vector) -> Entry;
    fn t_space(&self, v: &Vector) -> Entry;

    fn act_entry(&self, a: usize, n: i64, v: &Entry) -> Entry {
        v.as_ref().and_then(|v| self.act(a, n, v))
    }

    fn act_vec(&self, x: &Entry, n: i64, v: &Entry) -> Entry {
        let (x, v) = (x.as_ref()?, v.as_ref()?);
        let mut out = Vector::new();
        for (a, c) in x.iter() {
            out.add_scaled(&self.act(*a, n, v)?, c);
        }
        Some(out)
    }

    /// a_(n)v = 0 for n above this bound.
    fn upper_on(&self, a: usize, v: usize) -> i64 {
        self.algebra().weight(a) + self.space().weight(v) - 1 - self.space().min_weight()
    }

    fn text(&self, v: &Vector) -> String {
        self.space().text(v)
    }
}

impl Action for Sfc {
    fn algebra(&self) -> &Sfc {
        self
    }
    fn space(&self) -> &Carrier {
        self.carrier()
    }
    fn act(&self, a: usize, n: i64, v: &Vector) -> Entry {
        self.apply(a, n, v)
    }
    fn t_space(&self, v: &Vector) -> Entry {
        self.t(v)
    }
}
