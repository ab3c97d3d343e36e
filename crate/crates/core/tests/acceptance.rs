//! The acceptance suite: one line per criterion, with every limit pinned here.
//!
//! Run with `cargo test -p fieldalg-core --test acceptance -- --nocapture`
//! to see the lines.

use std::time::{Duration, Instant};

use fieldalg::conformal::fixtures::{corrupted_virasoro, free_boson, virasoro};
use fieldalg::conformal::ConformalIdentity;
use fieldalg::envelope::{build_envelope, verify_vertex, Envelope, EnvelopeOptions};
use fieldalg::fields::{normal_order_breaks_weak_locality, weak_locality_asymmetry};
use fieldalg::scalar::{int, rat};
use fieldalg::sfc::axioms::{check_field_axiom, Level};
use fieldalg::sfc::construct::algebras::{mat2, one_dimensional, upper_triangular};
use fieldalg::sfc::construct::{check_invariants_formula, smash_sfc, tensor_sfc, trivial_sfc, GroupAction};
use fieldalg::sfc::FAModule;
use fieldalg::tensor::{build_tensor_algebra, verify_tensor_theorems, TensorBounds, TensorRanges};
use fieldalg::zhu::*;
use fieldalg::{classify, AxiomKind, AxiomRanges, CheckReport, Classification, Sfc, Verdict};


// Written to the process stderr directly, bypassing test output capture, so
// the criterion lines appear in a plain `cargo test` log.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stderr().lock(), $($t)*);
    }};
}

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(5);
const LIMIT_3: Duration = Duration::from_secs(1);
const LIMIT_4: Duration = Duration::from_secs(60);
const LIMIT_5: Duration = Duration::from_secs(120);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(30);
const LIMIT_8: Duration = Duration::from_secs(60);

/// Fock truncation energy for the two field suites.
const FOCK_E: i64 = 6;
/// Envelope weight cutoff.
const W: i64 = 4;
/// The product indices n = 0..=TOP in the asymmetry suite.
const TOP: i64 = 4;
/// Search bound for weak locality.
const WEAK_N_MAX: u32 = 4;

struct Line {
    ok: bool,
    detail: String,
    reports: Vec<CheckReport>,
}

impl Line {
    fn new(reports: Vec<CheckReport>) -> Line {
        Line { ok: true, detail: String::new(), reports }
    }

    /// Every report passed.
    fn all_pass(mut self) -> Line {
        for r in &self.reports {
            if !r.passed() {
                self.ok = false;
                self.detail.push_str(&format!(" [{} {:?}]", r.identity, r.verdict));
            }
        }
        self
    }

    fn require(&mut self, cond: bool, what: &str) {
        if !cond {
            self.ok = false;
            self.detail.push_str(&format!(" [{what}]"));
        }
    }

    fn text(&self) -> String {
        self.reports.iter().map(CheckReport::text).collect::<Vec<_>>().join("\n")
    }
}

fn heisenberg() -> Envelope {
    build_envelope(&free_boson(), EnvelopeOptions::new(W).central("K", int(1))).unwrap()
}

fn virasoro_env() -> Envelope {
    build_envelope(&virasoro(rat(1, 2)), EnvelopeOptions::new(W).central("C", rat(1, 2))).unwrap()
}

fn dims(s: &Sfc) -> Vec<usize> {
    s.carrier().graded_dims().into_iter().map(|(_, d)| d).collect()
}

fn summary(c: &Classification, name: &str) -> CheckReport {
    CheckReport {
        identity: format!("classify {name}"),
        swept: c.reports[0].swept.clone(),
        verdict: c.verdict(),
        witness: None,
        window: c.reports[0].window.clone(),
        notes: vec![format!("level {}{}", c.level.name(), if c.inconclusive { ", inconclusive" } else { "" })],
    }
}

fn criterion_1() -> Line {
    Line::new(weak_locality_asymmetry(FOCK_E, TOP)).all_pass()
}

fn criterion_2() -> Line {
    Line::new(normal_order_breaks_weak_locality(FOCK_E, WEAK_N_MAX)).all_pass()
}

fn criterion_3() -> Line {
    let kinds = [ConformalIdentity::Jacobi, ConformalIdentity::Skewsymmetry, ConformalIdentity::Translation];
    let mut reports = Vec::new();
    for p in [virasoro(rat(1, 2)), free_boson()] {
        reports.extend(kinds.iter().map(|&k| p.check(k)));
    }
    let mut line = Line::new(reports).all_pass();
    let bad = corrupted_virasoro().check(ConformalIdentity::Jacobi);
    line.require(bad.verdict == Verdict::Fail && bad.witness.is_some(), "corrupted jacobi has no witness");
    line.reports.push(bad);
    line
}

fn criterion_4() -> Line {
    let t = build_tensor_algebra(&virasoro(rat(1, 2)), TensorBounds { degree: 4, tpow: 4, weight: 6 }).unwrap();
    let reports = verify_tensor_theorems(&t, &TensorRanges::default());
    let mut line = Line::new(reports[..2].to_vec()).all_pass();
    let strong = reports[2].clone();
    let frozen = [("a", "L⊗L"), ("B", "L"), ("C", "L"), ("n", "1"), ("k", "-1")];
    let matches = strong
        .witness
        .as_ref()
        .is_some_and(|w| frozen.iter().all(|(k, v)| w.inputs.get(*k).map(String::as_str) == Some(*v)));
    line.require(strong.verdict == Verdict::Fail && matches, "strong-axiom witness differs from the frozen one");
    line.reports.push(strong);
    line
}

fn criterion_5(classes: &mut Vec<(String, Classification)>) -> Line {
    let ranges = AxiomRanges::default();
    let mut line = Line::new(Vec::new());
    for (name, e, want) in [("heisenberg", heisenberg(), vec![1, 1, 2, 3, 5]), ("virasoro", virasoro_env(), vec![1, 0, 1, 1, 2])] {
        let got = dims(&e.sfc);
        line.require(got == want, &format!("{name} dims {got:?}"));
        let reports = verify_vertex(&e, &ranges);
        for r in &reports {
            line.require(r.passed(), &format!("{name} {}", r.identity));
        }
        line.reports.extend(reports);
        classes.push((format!("{name} envelope"), classify(&e.sfc, &ranges)));
    }
    line
}

/// Partitions of n with an even number of parts: the a ↦ −a invariants of the Fock space.
fn even_partitions(n: i64) -> usize {
    fn go(n: i64, max: i64, parts: usize) -> usize {
        if n == 0 {
            return usize::from(parts % 2 == 0);
        }
        (1..=n.min(max)).map(|p| go(n - p, p, parts + 1)).sum()
    }
    go(n, n, 0)
}

const LITERAL_INVARIANT_DIMS: [usize; 5] = [1, 0, 1, 1, 2];

fn criterion_6(classes: &mut Vec<(String, Classification)>, invariant_dims: &mut Vec<usize>) -> Line {
    let ranges = AxiomRanges::default();
    let e = heisenberg();
    let mut line = Line::new(Vec::new());
    let ut = trivial_sfc(&upper_triangular()).unwrap();
    let tensor = tensor_sfc(&e.sfc, &ut);
    let odd: Vec<bool> = e.basis.words.iter().map(|w| w.len() % 2 == 1).collect();
    let act = GroupAction::z2_diagonal(&odd);
    let smash = smash_sfc(&e.sfc, &act).unwrap();
    for (name, s) in [("heisenberg⊗UT2", &tensor), ("heisenberg♯Z/2", &smash)] {
        let c = classify(s, &ranges);
        // field, and the n-th product axiom is refuted by a witness
        let refuted = c.reports[1].verdict == Verdict::Fail && c.reports[1].witness.is_some();
        line.require(c.level == Level::Field && refuted, &format!("{name} level {}", c.level.name()));
        line.reports.push(summary(&c, name));
        line.reports.extend(c.reports.iter().cloned());
        classes.push((name.into(), c));
    }
    let (inv, got) = check_invariants_formula(&e.sfc, &act, &smash, W);
    line.require(inv.passed(), "invariants formula");
    let got: Vec<usize> = got.into_iter().map(|(_, d)| d).collect();
    let oracle: Vec<usize> = (0..=W).map(even_partitions).collect();
    line.require(got == oracle, &format!("invariant dims {got:?} vs even-partition counts {oracle:?}"));
    line.reports.push(inv);
    *invariant_dims = got;
    line
}

fn criterion_7(classes: &mut Vec<(String, Classification)>) -> Line {
    let ranges = AxiomRanges::default();
    let ut = trivial_sfc(&upper_triangular()).unwrap();
    let e = heisenberg();
    let mut line = Line::new(vec![
        check_field_axiom(&ut, AxiomKind::Sf5, &ranges),
        check_field_axiom(&e.sfc, AxiomKind::Sf5, &ranges),
    ])
    .all_pass();
    for (name, alg) in [("trivial UT2", upper_triangular()), ("trivial Mat2", mat2()), ("trivial Q", one_dimensional())] {
        classes.push((name.into(), classify(&trivial_sfc(&alg).unwrap(), &ranges)));
    }
    for (name, c) in classes.iter() {
        let d = c.reports.iter().find(|r| r.identity == "sf1-diagnostic").unwrap();
        line.require(d.verdict != Verdict::Fail, &format!("sf1 diagnostic fired on {name}"));
        let mut d = d.clone();
        d.identity = format!("sf1-diagnostic {name}");
        line.reports.push(d);
    }
    line
}

fn criterion_8() -> Line {
    let e = heisenberg();
    let ctx = ZhuContext::new(&e.sfc, W).unwrap();
    let mut line = Line::new(check_star_identities(&ctx, &StarRanges::default())).all_pass();
    line.reports.extend(check_zero_modes(&ctx, &FAModule::regular(&e.sfc), &StarRanges::default()));
    let q = zhu_algebra(&ctx, Hypothesis::Envelope).unwrap();
    line.reports.extend(q.reports.iter().cloned());
    let a = e.letter("a", 0).unwrap();
    line.reports.push(check_commutative(&ctx, &q));
    line.reports.push(check_independent_powers(&ctx, &q, a, W as usize));
    let m = trivial_sfc(&mat2()).unwrap();
    let v = tensor_sfc(&e.sfc, &m);
    let cv = ZhuContext::new(&v, W).unwrap();
    let emb = |i: usize, j: usize| v.carrier().find(&format!("{}⊗{}", e.sfc.label(i), m.label(j)));
    line.reports.push(check_tensor_isomorphism(&ctx, &mat2(), &cv, emb));
    let mut line = line.all_pass();
    line.require(q.dim() == (W + 1) as usize, &format!("quotient dimension {}", q.dim()));
    line
}

struct Run {
    lines: Vec<(Line, Duration)>,
    invariant_dims: Vec<usize>,
}

fn run_all() -> Run {
    let mut classes = Vec::new();
    let mut invariant_dims = Vec::new();
    let mut lines = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Line| {
        let t0 = Instant::now();
        let l = f();
        lines.push((l, t0.elapsed()));
    };
    timed(&mut criterion_1);
    timed(&mut criterion_2);
    timed(&mut criterion_3);
    timed(&mut criterion_4);
    timed(&mut || criterion_5(&mut classes));
    timed(&mut || criterion_6(&mut classes, &mut invariant_dims));
    timed(&mut || criterion_7(&mut classes));
    timed(&mut criterion_8);
    Run { lines, invariant_dims }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn acceptance() {
    let names = [
        "free-boson weak-locality asymmetry",
        "normal order breaks weak locality",
        "conformal axioms and corrupted jacobi",
        "T(R) mixed products, locality, strong-axiom witness",
        "envelopes: dimensions, vertex, borcherds, lambda identities",
        "field but not strong: tensor, smash, invariants",
        "sf5 and the sf1 diagnostic",
        "Zhu quotient at cutoff",
    ];
    let limits = [LIMIT_1, LIMIT_2, LIMIT_3, LIMIT_4, LIMIT_5, LIMIT_6, LIMIT_7, LIMIT_8];
    let one = in_pool(1, run_all);
    let mut failed = Vec::new();
    for (i, ((line, dt), limit)) in one.lines.iter().zip(limits).enumerate() {
        let ok = line.ok && *dt <= limit;
        let slow = if *dt > limit { " [over time limit]" } else { "" };
        say!(
            "{} criterion {}: {} ({:.2}s of {}s){}{}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            names[i],
            dt.as_secs_f64(),
            limit.as_secs(),
            line.detail,
            slow
        );
        if !ok {
            failed.push(i + 1);
            say!("{}", line.text());
        }
    }
    // The literal per-weight dimensions listed with criterion 6 are those of
    // the Virasoro envelope; the Z/2 invariants of the Heisenberg envelope are
    // counted by partitions with an even number of parts.
    let literal = one.invariant_dims == LITERAL_INVARIANT_DIMS;
    say!(
        "{} criterion 6 (literal): invariant dimensions {:?} {} {:?}",
        if literal { "PASS" } else { "FAIL" },
        one.invariant_dims,
        if literal { "==" } else { "!=" },
        LITERAL_INVARIANT_DIMS
    );
    let eight = in_pool(8, run_all);
    let same = one.lines.iter().zip(&eight.lines).all(|((a, _), (b, _))| a.text() == b.text());
    say!("{} criterion 9: reports identical at 1 and 8 threads", if same { "PASS" } else { "FAIL" });
    if !same {
        failed.push(9);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// The literal dimension list; see the note in `acceptance`.
#[test]
#[ignore = "the listed invariant dimensions (1,0,1,1,2) are the Virasoro graded dimensions; the invariants are (1,0,1,1,3)"]
fn literal_invariant_dimensions() {
    let e = heisenberg();
    let odd: Vec<bool> = e.basis.words.iter().map(|w| w.len() % 2 == 1).collect();
    let act = GroupAction::z2_diagonal(&odd);
    let smash = smash_sfc(&e.sfc, &act).unwrap();
    let (_, got) = check_invariants_formula(&e.sfc, &act, &smash, W);
    let got: Vec<usize> = got.into_iter().map(|(_, d)| d).collect();
    assert_eq!(got, LITERAL_INVARIANT_DIMS);
}
