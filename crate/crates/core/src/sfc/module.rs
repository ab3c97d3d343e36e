//! Modules over field algebras.

use std::sync::Arc;

use super::axioms::{associativity_orders, associativity_report, compare_rep, AxiomRanges};
use super::{window_text, Action, ModeTable, Sfc};
use crate::carrier::Carrier;
use crate::lincomb::{Entry, Linear, Vector};
use crate::report::{sweep, CheckReport, Tally};
use crate::scalar::{binomial, int, sign};

/// A graded space M with T^M and modes a^M_(n) for a in the algebra.
#[derive(Clone, Debug)]
pub struct FAModule<'a> {
    pub name: String,
    algebra: &'a Sfc,
    table: ModeTable,
    translation: Vec<Entry>,
}

impl<'a> FAModule<'a> {
    pub fn from_fn(
        name: impl Into<String>,
        algebra: &'a Sfc,
        space: Arc<Carrier>,
        translation: Vec<Entry>,
        f: impl FnMut(usize, i64, usize) -> Entry,
    ) -> FAModule<'a> {
        assert_eq!(translation.len(), space.dim());
        let table = ModeTable::from_fn(algebra.carrier_arc(), space, f);
        FAModule { name: name.into(), algebra, table, translation }
    }

    /// The algebra as a module over itself.
    pub fn regular(s: &'a Sfc) -> FAModule<'a> {
        FAModule {
            name: format!("{} (regular)", s.name),
            algebra: s,
            table: s.table().clone(),
            translation: (0..s.dim()).map(|i| s.translation_of(i).clone()).collect(),
        }
    }

    pub fn set_mode(&mut self, a: usize, n: i64, v: usize, value: Entry) {
        self.table.set(a, n, v, value);
    }

    pub fn mode_entry(&self, a: usize, n: i64, v: usize) -> Entry {
        self.table.mode_entry(a, n, v)
    }

    fn window(&self, a: usize, v: usize) -> (i64, i64) {
        self.table.window(a, v)
    }
}

impl Action for FAModule<'_> {
    fn algebra(&self) -> &Sfc {
        self.algebra
    }
    fn space(&self) -> &Carrier {
        self.table.right()
    }
    fn act(&self, a: usize, n: i64, v: &Vector) -> Entry {
        self.table.apply(a, n, v)
    }
    fn t_space(&self, v: &Vector) -> Entry {
        let mut out = Vector::new();
        for (i, c) in v.iter() {
            out.add_scaled(self.translation[*i].as_ref()?, c);
        }
        Some(out)
    }
}

/// Least P ≥ 0 with b_(k)v = 0 for all k ≥ P.
fn vanishing_from<A: Action + ?Sized>(m: &A, b: usize, v: usize) -> i64 {
    let ev = Vector::single(v);
    let mut p = 0;
    for k in 0..=m.upper_on(b, v) {
        if !m.act(b, k, &ev).is_zero() {
            p = k + 1;
        }
    }
    p
}

fn ins(m: &FAModule, names: (usize, usize, usize), extra: &[(&'static str, i64)]) -> Vec<(&'static str, String)> {
    let alg = m.algebra;
    let mut v = vec![
        ("a", alg.label(names.0).to_string()),
        ("b", alg.label(names.1).to_string()),
        ("v", m.space().label(names.2).to_string()),
    ];
    for (k, x) in extra {
        v.push((k, x.to_string()));
    }
    v
}

/// Checks the vacuum axiom, translation invariance, Y^M(Ta,z) = ∂_z Y^M(a,z),
/// the associativity axiom, and the two mode identities derived from it:
///   a_(n)(b_(P−1)v) = Σ_{i=0}^N C(N,i)(a_(n−i)b)_(P+i−1)v,
///   0 = Σ_{i=0}^N C(N,i)(a_(n−i)b)_(P+i)v,
/// with N the associativity order of (a, b, v) and P the least index above
/// which b_(k)v vanishes. When `strong` is set the n-th product axiom
/// Y^M(a_(n)b, z) = Y^M(a,z)_(n)Y^M(b,z) is checked as well.
pub fn check_module(m: &FAModule, ranges: &AxiomRanges, strong: bool) -> Vec<CheckReport> {
    let alg = m.algebra;
    let sp = m.space();
    let basis = ranges.basis(alg);
    let vectors: Vec<usize> = sp.up_to_weight(ranges.max_weight.unwrap_or(sp.cutoff));
    let window = window_text(sp);
    let mut out = Vec::new();

    let mut t = Tally::default();
    for &v in &vectors {
        let (lo, hi) = m.window(alg.vacuum, v);
        for n in lo..=hi {
            let want = if n == -1 { Some(Vector::single(v)) } else { Some(Vector::new()) };
            t.record(compare_rep(m, m.mode_entry(alg.vacuum, n, v), want, &[("v", sp.label(v).into()), ("n", n.to_string())]));
        }
    }
    out.push(t.into_report("module-vacuum", format!("{} vectors", vectors.len()), window.clone()));

    let pairs: Vec<(usize, usize)> = basis.iter().flat_map(|&a| vectors.iter().map(move |&v| (a, v))).collect();
    let tally = sweep(&pairs, |&(a, v)| {
        let mut t = Tally::default();
        let ev = Vector::single(v);
        let (lo, hi) = m.window(a, v);
        let ta = alg.t(&Vector::single(a));
        for n in lo..=hi + 1 {
            // [T, a_(n)]v and (Ta)_(n)v both equal −n a_(n−1)v
            let expect = m.act(a, n - 1, &ev).map(|x| x.scaled(&-int(n)));
            let mut comm = m.act(a, n, &ev).and_then(|x| m.t_space(&x));
            comm.sub_assign_ref(&m.act_entry(a, n, &m.t_space(&ev)));
            let i = [("a", alg.label(a).to_string()), ("v", sp.label(v).to_string()), ("n", n.to_string())];
            t.record(compare_rep(m, comm, expect.clone(), &i));
            t.record(compare_rep(m, m.act_vec(&ta, n, &Some(ev.clone())), expect, &i));
        }
        t
    });
    out.push(tally.into_report("module-translation", format!("{} (a, v) pairs", pairs.len()), window.clone()));

    let orders = associativity_orders(m, &basis, &vectors, ranges.n_max);
    let found: Vec<((usize, usize, usize), u32)> = orders.iter().filter_map(|(k, o)| o.order.map(|n| (*k, n))).collect();
    let ranges_text = format!("{} triples", orders.len());
    out.push(associativity_report("module-associativity", orders, ranges_text, window.clone()));

    for (name, shift) in [("module-mode-expansion", 0), ("module-mode-vanishing", 1)] {
        let tally = sweep(&found, |&((a, b, v), big_n)| {
            let mut t = Tally::default();
            let big_n = big_n as i64;
            let p = vanishing_from(m, b, v);
            let ev = Some(Vector::single(v));
            let bv = m.act_entry(b, p - 1, &ev);
            let w0 = alg.weight(a) + alg.weight(b) + sp.weight(v);
            for n in (w0 - p - 1 - sp.cutoff)..=(w0 - p - 1 - sp.min_weight()) {
                let lhs = if shift == 0 { m.act_entry(a, n, &bv) } else { Some(Vector::new()) };
                let mut rhs: Entry = Some(Vector::new());
                for i in 0..=big_n {
                    let ab = alg.mode_entry(a, n - i, b);
                    rhs.add_scaled(&m.act_vec(&ab, p + i - 1 + shift, &ev), &binomial(big_n, i as u64));
                }
                t.record(compare_rep(m, lhs, rhs, &ins(m, (a, b, v), &[("n", n), ("N", big_n), ("P", p)])));
            }
            t
        });
        out.push(tally.into_report(name, format!("{} triples with a certified order", found.len()), window.clone()));
    }

    if strong {
        out.push(module_nth_product(m, &basis, &vectors, ranges));
    }
    out
}

/// (a_(n)b)^M_(k)v = Σ_j (−1)^j C(n,j)[a_(n−j)(b_(k+j)v) − (−1)^n b_(n+k−j)(a_(j)v)].
fn module_nth_product(m: &FAModule, basis: &[usize], vectors: &[usize], ranges: &AxiomRanges) -> CheckReport {
    let alg = m.algebra;
    let sp = m.space();
    let mut items = Vec::new();
    for &a in basis {
        for &b in basis {
            for &v in vectors {
                items.push((a, b, v));
            }
        }
    }
    let tally = sweep(&items, |&(a, b, v)| {
        let mut t = Tally::default();
        let ev = Vector::single(v);
        let w0 = alg.weight(a) + alg.weight(b) + sp.weight(v);
        for n in ranges.n.0..=ranges.n.1 {
            let w_in = w0 - n - 2;
            for k in (w_in - sp.cutoff)..=(w_in - sp.min_weight()) {
                let lhs = m.act_vec(&alg.mode_entry(a, n, b), k, &Some(ev.clone()));
                let top = if n >= 0 { n } else { (m.upper_on(b, v) - k).max(m.upper_on(a, v)) };
                let mut rhs: Entry = Some(Vector::new());
                for j in 0..=top {
                    let coef = sign(j) * binomial(n, j as u64);
                    rhs.add_scaled(&m.act_entry(a, n - j, &m.act(b, k + j, &ev)), &coef);
                    rhs.add_scaled(&m.act_entry(b, n + k - j, &m.act(a, j, &ev)), &-(coef * sign(n)));
                    if rhs.is_none() {
                        break;
                    }
                }
                t.record(compare_rep(m, lhs, rhs, &ins(m, (a, b, v), &[("n", n), ("k", k)])));
            }
        }
        t
    });
    tally.into_report("module-nth-product", format!("{} triples", items.len()), window_text(sp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::fixtures::free_boson;
    use crate::envelope::{build_envelope, EnvelopeOptions};
    use crate::report::Verdict;
    use crate::sfc::construct::{algebras, trivial_sfc};

    fn verdicts(rs: &[CheckReport]) -> Vec<(String, Verdict)> {
        rs.iter().map(|r| (r.identity.clone(), r.verdict)).collect()
    }

    #[test]
    fn regular_module_of_heisenberg_envelope() {
        let e = build_envelope(&free_boson(), EnvelopeOptions::new(3).central("K", int(1))).unwrap();
        let rs = check_module(&FAModule::regular(&e.sfc), &AxiomRanges::default(), true);
        assert_eq!(rs.len(), 6);
        for r in &rs {
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.text());
            assert!(r.swept.certified > 0, "{}", r.text());
        }
    }

    #[test]
    fn regular_module_of_trivial_algebra() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let rs = check_module(&FAModule::regular(&s), &AxiomRanges::default(), true);
        assert!(rs.iter().all(|r| r.verdict == Verdict::Pass), "{:?}", verdicts(&rs));
    }

    #[test]
    fn corrupted_vacuum_mode_is_caught() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let mut m = FAModule::regular(&s);
        let v = s.carrier().find("E12").unwrap();
        // |0⟩_(−1) must be the identity
        m.set_mode(s.vacuum, -1, v, Some(Vector::new()));
        let rs = check_module(&m, &AxiomRanges::default(), false);
        let vac = &rs[0];
        assert_eq!(vac.identity, "module-vacuum");
        assert_eq!(vac.verdict, Verdict::Fail);
        let w = vac.witness.as_ref().unwrap();
        assert_eq!(w.inputs["v"], "E12");
        assert_eq!(w.inputs["n"], "-1");
    }

    #[test]
    fn corrupted_translation_is_caught() {
        let s = trivial_sfc(&algebras::upper_triangular()).unwrap();
        let mut m = FAModule::regular(&s);
        let e11 = s.carrier().find("E11").unwrap();
        let one = s.vacuum;
        // E11_(−1)|0⟩ = E11 is consistent, but (T E11)_(−2) then disagrees
        m.set_mode(e11, -2, one, Some(Vector::single(e11)));
        let rs = check_module(&m, &AxiomRanges::default(), false);
        assert!(rs.iter().any(|r| r.verdict == Verdict::Fail), "{:?}", verdicts(&rs));
    }
}
