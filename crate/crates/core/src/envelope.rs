//! The enveloping vertex algebra U(R) of a Lie conformal algebra, realized
//! on PBW-ordered words with evaluated centrals.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::Carrier;
use crate::conformal::{ConformalIdentity, ConformalPresentation};
use crate::lambda::{LambdaPoly, Letter, ModuleElement};
use crate::lincomb::{Entry, LinComb, Linear, Vector};
use crate::report::{sweep, CheckReport, Witness};
use crate::scalar::{self, Scalar};
use crate::sfc::axioms::{check_field_axiom, classify, pair_locality_order, AxiomKind, AxiomRanges};
use crate::sfc::lambda_ids::{check_lambda_identities, LambdaIdentity};
use crate::sfc::{window_text, Sfc};
use crate::words::{self, build_word_sfc, LetterAction, Word, WordBasis};

#[derive(Debug, Error, PartialEq)]
pub enum EnvelopeError {
    #[error("presentation is not Lie: {0} fails at {1:?}")]
    NotLie(&'static str, Option<Witness>),
    #[error("central `{0}` has no evaluation")]
    MissingCentral(String),
    #[error("generator `{0}` has weight {1}; the PBW basis needs positive weights")]
    Grading(String, i64),
    #[error("word of weight {0} exceeds the cutoff {1}")]
    WeightOverflow(i64, i64),
}

/// Which out-of-order adjacent pair is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeOptions {
    /// Weight cutoff W.
    pub weight: i64,
    /// Value of each central symbol, by name.
    pub centrals: BTreeMap<String, Scalar>,
    /// Drop the bracket correction in the rewriting x⊗y → y⊗x + [x,y].
    /// Only useful as a broken build for regression tests.
    pub corrupted: bool,
}

impl EnvelopeOptions {
    pub fn new(weight: i64) -> Self {
        EnvelopeOptions { weight, centrals: BTreeMap::new(), corrupted: false }
    }

    pub fn central(mut self, name: &str, value: Scalar) -> Self {
        self.centrals.insert(name.into(), value);
        self
    }
}

/// Rewrites words into PBW normal form. Letters are ordered by weight
/// descending, then generator, then T-power.
#[derive(Debug)]
pub struct Rewriter {
    pres: ConformalPresentation,
    /// Central values, indexed by symbol.
    values: Vec<Option<Scalar>>,
    cutoff: i64,
    corrupted: bool,
    cache: Mutex<HashMap<Word, LinComb<Word>>>,
}

impl Rewriter {
    fn key(&self, l: &Letter) -> (i64, u32, u32) {
        (-self.pres.letter_weight(l), l.gen, l.tpow)
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        w.iter().all(|l| !l.central) && w.windows(2).all(|p| self.key(&p[0]) <= self.key(&p[1]))
    }

    fn out_of_order(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len().saturating_sub(1)).filter(|&i| self.key(&w[i]) > self.key(&w[i + 1])).collect()
    }

    /// Removes central letters, multiplying by their values.
    fn evaluate_centrals(&self, w: &[Letter]) -> Result<(Scalar, Word), EnvelopeError> {
        let mut c = scalar::one();
        let mut out = Vec::with_capacity(w.len());
        for l in w {
            if l.central {
                match &self.values[l.gen as usize] {
                    Some(v) => c *= v,
                    None => return Err(EnvelopeError::MissingCentral(self.pres.name(l.gen).into())),
                }
            } else {
                out.push(*l);
            }
        }
        Ok((c, out))
    }

    /// u x y v ↦ u y x v + u [x,y] v at position i.
    fn rewrite_at(&self, w: &[Letter], i: usize) -> Result<LinComb<Word>, EnvelopeError> {
        let mut out = LinComb::new();
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        out.add_term(swapped, scalar::one());
        if self.corrupted {
            return Ok(out);
        }
        let br = self.pres.derived_bracket(&ModuleElement::single(w[i]), &ModuleElement::single(w[i + 1]));
        for (l, c) in br.iter() {
            let mut v: Word = w[..i].to_vec();
            v.push(*l);
            v.extend_from_slice(&w[i + 2..]);
            let (s, v) = self.evaluate_centrals(&v)?;
            out.add_term(v, c * s);
        }
        Ok(out)
    }

    fn reduce_leftmost(&self, w: &[Letter]) -> Result<LinComb<Word>, EnvelopeError> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let out = match self.out_of_order(w).first() {
            None => LinComb::single(w.to_vec()),
            Some(&i) => {
                let mut out = LinComb::new();
                for (v, c) in self.rewrite_at(w, i)?.iter() {
                    out.add_scaled(&self.reduce_leftmost(v)?, c);
                }
                out
            }
        };
        self.cache.lock().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    fn reduce_by(&self, w: &[Letter], strategy: Strategy) -> Result<LinComb<Word>, EnvelopeError> {
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut done = LinComb::new();
        let mut todo: LinComb<Word> = LinComb::single(w.to_vec());
        loop {
            let Some((v, c)) = todo.iter().next().map(|(v, c)| (v.clone(), c.clone())) else {
                break;
            };
            todo.add_term(v.clone(), -c.clone());
            let bad = self.out_of_order(&v);
            let i = match (bad.is_empty(), strategy, rng.as_mut()) {
                (true, _, _) => {
                    done.add_term(v, c);
                    continue;
                }
                (false, Strategy::Rightmost, _) => *bad.last().unwrap(),
                (false, _, Some(r)) => bad[r.gen_range(0..bad.len())],
                (false, _, None) => bad[0],
            };
            todo.add_scaled(&self.rewrite_at(&v, i)?, &c);
        }
        Ok(done)
    }

    /// Normal form of a word of T(R); centrals are evaluated first.
    pub fn reduce(&self, w: &[Letter], strategy: Strategy) -> Result<LinComb<Word>, EnvelopeError> {
        let weight = words::word_weight(&self.pres, w);
        if weight > self.cutoff {
            return Err(EnvelopeError::WeightOverflow(weight, self.cutoff));
        }
        let (s, w) = self.evaluate_centrals(w)?;
        let out = match strategy {
            Strategy::Leftmost => self.reduce_leftmost(&w)?,
            _ => self.reduce_by(&w, strategy)?,
        };
        Ok(out.scaled(&s))
    }
}

#[derive(Debug)]
pub struct Envelope {
    pub presentation: ConformalPresentation,
    pub options: EnvelopeOptions,
    pub basis: WordBasis,
    pub rewriter: Rewriter,
    lambda: Vec<Vec<LambdaPoly<Entry>>>,
    pub sfc: Sfc,
}

struct Builder<'a> {
    rw: &'a Rewriter,
    basis: &'a WordBasis,
    lambda: Vec<Vec<LambdaPoly<Entry>>>,
}

impl Builder<'_> {
    /// m.X: prepend each letter of m and reduce.
    fn dot_vec(&self, m: &ModuleElement, v: &Entry) -> Entry {
        let v = v.as_ref()?;
        let mut out = Vector::new();
        for (x, cx) in v.iter() {
            for (l, cl) in m.iter() {
                let mut w: Word = Vec::with_capacity(self.basis.words[*x].len() + 1);
                w.push(*l);
                w.extend_from_slice(&self.basis.words[*x]);
                let red = self.rw.reduce(&w, Strategy::Leftmost).ok()?;
                for (u, c) in red.iter() {
                    out.add_term(self.basis.find(u)?, c * cx * cl);
                }
            }
        }
        Some(out)
    }
}

impl LetterAction for Builder<'_> {
    fn dot(&self, m: &ModuleElement, x: usize) -> Entry {
        self.dot_vec(m, &Some(Vector::single(x)))
    }
    fn lambda(&self, gen: u32, x: usize) -> &LambdaPoly<Entry> {
        &self.lambda[gen as usize][x]
    }
    fn letter_weight(&self, c: &Letter) -> i64 {
        self.rw.pres.letter_weight(c)
    }
}

/// Nondecreasing words of free letters with total weight ≤ W, by length.
fn pbw_words(rw: &Rewriter, w: i64) -> Vec<Word> {
    let mut alphabet = words::letters(&rw.pres, w, w.max(0) as u32, false);
    alphabet.sort_by_key(|l| rw.key(l));
    let mut out = vec![Vec::new()];
    let mut level: Vec<(Word, usize)> = vec![(Vec::new(), alphabet.len())];
    // a word is extended on the left by letters no larger than its head
    while !level.is_empty() {
        let mut next = Vec::new();
        for (word, bound) in &level {
            let weight = words::word_weight(&rw.pres, word);
            for (i, l) in alphabet.iter().enumerate().take(*bound) {
                if weight + rw.pres.letter_weight(l) <= w {
                    let mut v = vec![*l];
                    v.extend_from_slice(word);
                    next.push((v, i + 1));
                }
            }
        }
        out.extend(next.iter().map(|(v, _)| v.clone()));
        level = next;
    }
    out
}

pub fn build_envelope(pres: &ConformalPresentation, options: EnvelopeOptions) -> Result<Envelope, EnvelopeError> {
    for (kind, name) in [(ConformalIdentity::Jacobi, "jacobi"), (ConformalIdentity::Skewsymmetry, "skewsymmetry")] {
        let r = pres.check(kind);
        if !r.passed() {
            return Err(EnvelopeError::NotLie(name, r.witness));
        }
    }
    for g in pres.free_generators() {
        let wt = pres.letter_weight(&g);
        if wt <= 0 {
            return Err(EnvelopeError::Grading(pres.name(g.gen).into(), wt));
        }
    }
    let mut values = vec![None; pres.symbols().len()];
    for c in pres.centrals() {
        let name = pres.name(c.gen);
        values[c.gen as usize] =
            Some(options.centrals.get(name).cloned().ok_or_else(|| EnvelopeError::MissingCentral(name.into()))?);
    }
    let rw = Rewriter {
        pres: pres.clone(),
        values,
        cutoff: options.weight,
        corrupted: options.corrupted,
        cache: Mutex::new(HashMap::new()),
    };
    let basis = WordBasis::new(pbw_words(&rw, options.weight));
    let mut b = Builder { rw: &rw, basis: &basis, lambda: vec![vec![LambdaPoly::new(); basis.len()]; pres.symbols().len()] };
    for x in 0..basis.len() {
        for g in pres.free_generators() {
            let v = words::wick_lambda(pres, &basis, &b.lambda, &g, x, &|m, v| b.dot_vec(m, v));
            b.lambda[g.gen as usize][x] = v;
        }
    }
    let translation = basis
        .words
        .iter()
        .map(|w| {
            // T is a derivation; raise each letter in turn and reorder
            let mut out = Vector::new();
            for i in 0..w.len() {
                let mut v = w.clone();
                v[i].tpow += 1;
                for (u, c) in rw.reduce(&v, Strategy::Leftmost).ok()?.iter() {
                    out.add_term(basis.find(u)?, c.clone());
                }
            }
            Some(out)
        })
        .collect();
    let labels = basis.words.iter().map(|w| words::word_text(pres, w, " ")).collect();
    let weights = basis.words.iter().map(|w| words::word_weight(pres, w)).collect();
    let carrier = Arc::new(Carrier::new(labels, weights, options.weight, false));
    let name = if options.corrupted { "U(R) with corrupted rewriting" } else { "U(R)" };
    let sfc = build_word_sfc(name, &basis, carrier, translation, &b);
    let lambda = b.lambda;
    Ok(Envelope { presentation: pres.clone(), options, basis: basis.clone(), rewriter: rw, lambda, sfc })
}

impl Envelope {
    pub fn find(&self, w: &[Letter]) -> Option<usize> {
        self.basis.find(w)
    }

    /// The word of a single letter, if it is in the basis.
    pub fn letter(&self, name: &str, tpow: u32) -> Option<usize> {
        let l = self.presentation.lookup(name)?;
        self.find(&[Letter { tpow, ..l }])
    }

    pub fn lambda_action(&self, g: &Letter, x: usize) -> &LambdaPoly<Entry> {
        &self.lambda[g.gen as usize][x]
    }

    /// The normal form of a word of T(R) as a vector of the basis.
    pub fn pbw_reduce(&self, w: &[Letter], strategy: Strategy) -> Result<Vector, EnvelopeError> {
        let red = self.rewriter.reduce(w, strategy)?;
        Ok(red.map_keys(|u| self.find(u).expect("normal words of weight <= W are basis words")))
    }

    /// The linear map induced on U(R) by images of the generators.
    pub fn induced_map(&self, images: &[Option<ModuleElement>]) -> Vec<Entry> {
        words::induced_map(&self.basis, images, |w| self.pbw_reduce(w, Strategy::Leftmost).ok())
    }

    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        self.sfc.carrier().graded_dims()
    }
}

/// Classification, Borcherds, locality and every λ/dot identity.
pub fn verify_vertex(e: &Envelope, ranges: &AxiomRanges) -> Vec<CheckReport> {
    let s = &e.sfc;
    let basis = ranges.basis(s);
    let c = classify(s, ranges);
    let mut out = c.reports;
    let mut cl = CheckReport {
        identity: "classification".into(),
        swept: out[0].swept.clone(),
        verdict: if c.level == crate::sfc::axioms::Level::Vertex { crate::report::Verdict::Pass } else { crate::report::Verdict::Fail },
        witness: None,
        window: out[0].window.clone(),
        notes: vec![format!("level: {}", c.level.name())],
    };
    if c.inconclusive {
        cl.notes.push("some deciding check was inconclusive".into());
    }
    out.insert(0, cl);
    out.push(check_field_axiom(s, AxiomKind::Borcherds, ranges));
    out.push(locality_at_pole_order(s, &basis));
    out.extend(check_lambda_identities(s, &LambdaIdentity::ALL, &basis));
    out
}

/// 1 + the largest n ≥ 0 with a_(n)b nonzero or unknown.
fn pole_order(s: &Sfc, a: usize, b: usize) -> u32 {
    (0..=s.upper(a, b)).rev().find(|&n| !s.mode_entry(a, n, b).is_zero()).map_or(0, |n| n as u32 + 1)
}

/// (z−w)^N [Y(a,z), Y(b,w)] = 0 with N the pole order of a_(n)b; in a
/// vertex algebra this N always suffices.
pub fn locality_at_pole_order(s: &Sfc, basis: &[usize]) -> CheckReport {
    let mut items = Vec::new();
    for &a in basis {
        for &b in basis {
            for &v in basis {
                items.push((a, b, v));
            }
        }
    }
    let tally = sweep(&items, |&(a, b, v)| pair_locality_order(s, s, a, b, v, pole_order(s, a, b)).tally);
    let mut r = tally.into_report("locality", format!("{} pairs on {} vectors, N = pole order of a_(n)b", basis.len().pow(2), basis.len()), window_text(s.carrier()));
    if r.witness.is_some() {
        r.notes.push("locality fails at the order forced by the OPE".into());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::fixtures::*;
    use crate::scalar::{int, rat};

    pub(crate) fn heisenberg(w: i64) -> Envelope {
        build_envelope(&free_boson(), EnvelopeOptions::new(w).central("K", int(1))).unwrap()
    }

    pub(crate) fn virasoro_env(w: i64) -> Envelope {
        build_envelope(&virasoro(rat(1, 2)), EnvelopeOptions::new(w).central("C", rat(1, 2))).unwrap()
    }

    fn dims(e: &Envelope) -> Vec<usize> {
        e.graded_dims().iter().map(|(_, d)| *d).collect()
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(dims(&heisenberg(4)), vec![1, 1, 2, 3, 5]);
        assert_eq!(dims(&virasoro_env(4)), vec![1, 0, 1, 1, 2]);
    }

    #[test]
    fn boson_square_is_normal_and_a_lambda_a_is_lambda() {
        let e = heisenberg(4);
        let a = e.presentation.lookup("a").unwrap();
        let aa = e.find(&[a, a]).unwrap();
        assert_eq!(e.pbw_reduce(&[a, a], Strategy::Rightmost).unwrap(), Vector::single(aa));
        let ai = e.find(&[a]).unwrap();
        let p = e.lambda_action(&a, ai);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coeff(1), Some(Vector::single(e.sfc.vacuum)));
    }

    #[test]
    fn virasoro_rewriting_is_confluent() {
        let e = virasoro_env(8);
        let l = e.presentation.lookup("L").unwrap();
        let t = |k| Letter { tpow: k, ..l };
        let cases: Vec<Word> = vec![vec![l, t(1)], vec![l, t(2)], vec![l, l, t(1)], vec![l, t(1), t(0)], vec![t(0), t(2)]];
        for w in cases {
            let left = e.pbw_reduce(&w, Strategy::Leftmost).unwrap();
            assert_eq!(left, e.pbw_reduce(&w, Strategy::Rightmost).unwrap());
            for seed in 0..4 {
                assert_eq!(left, e.pbw_reduce(&w, Strategy::Random(seed)).unwrap());
            }
        }
        // L⊗TL = TL⊗L + [L, TL] with a nonzero correction
        let lt = e.pbw_reduce(&[l, t(1)], Strategy::Leftmost).unwrap();
        assert_eq!(lt.coeff(&e.find(&[t(1), l]).unwrap()), int(1));
        assert!(lt.len() > 1);
    }

    #[test]
    fn errors() {
        assert_eq!(
            build_envelope(&free_boson(), EnvelopeOptions::new(4)).unwrap_err(),
            EnvelopeError::MissingCentral("K".into())
        );
        assert!(matches!(
            build_envelope(&corrupted_virasoro(), EnvelopeOptions::new(4).central("C", int(0))),
            Err(EnvelopeError::NotLie("jacobi", Some(_)))
        ));
        let e = heisenberg(2);
        let a = e.presentation.lookup("a").unwrap();
        assert_eq!(e.pbw_reduce(&[a, a, a], Strategy::Leftmost), Err(EnvelopeError::WeightOverflow(3, 2)));
    }

    #[test]
    fn mode_brackets_act_on_the_envelope() {
        for e in [heisenberg(4), virasoro_env(4)] {
            let p = &e.presentation;
            let s = &e.sfc;
            let gens = p.free_generators();
            for x in &gens {
                for y in &gens {
                    let xi = e.find(&[*x]).unwrap();
                    let yi = e.find(&[*y]).unwrap();
                    for m in -3..=3 {
                        for n in -3..=3 {
                            let sum = p.mode_bracket(x.gen, m, y.gen, n);
                            for v in s.carrier().up_to_weight(2) {
                                let ev = Some(Vector::single(v));
                                let mut lhs = s.apply_entry(xi, m, &s.apply_entry(yi, n, &ev));
                                lhs.sub_assign_ref(&s.apply_entry(yi, n, &s.apply_entry(xi, m, &ev)));
                                let mut rhs: Entry = Some(Vector::new());
                                for ((g, r), c) in sum.iter() {
                                    let l = Letter { gen: *g, central: p.symbols()[*g as usize].central, tpow: 0 };
                                    let term = if l.central {
                                        // a central acts as its value times the identity at mode −1
                                        ev.clone().map(|x| x.scaled(&e.options.centrals[p.name(*g)]))
                                    } else {
                                        s.apply_entry(e.find(&[l]).unwrap(), *r, &ev)
                                    };
                                    rhs.add_scaled(&term, c);
                                }
                                if let (Some(a), Some(b)) = (&lhs, &rhs) {
                                    assert_eq!(a, b, "[{}_({m}), {}_({n})] on {}", p.name(x.gen), p.name(y.gen), s.label(v));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
