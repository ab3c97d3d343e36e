//! The tensor field algebra T(R) over a Leibniz conformal algebra R,
//! truncated by tensor degree, T-power of each letter and weight.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::Carrier;
use crate::conformal::{ConformalIdentity, ConformalPresentation};
use crate::lambda::{LambdaPoly, Letter, ModuleElement};
use crate::lincomb::{Entry, Vector};
use crate::report::{sweep, sweep_until_failure, CheckReport, Tally, Witness};
use crate::scalar;
use crate::sfc::axioms::{check_pair_locality, nth_product_instance};
use crate::sfc::{compare, opposite, window_text, Sfc};
use crate::words::{self, build_word_sfc, LetterAction, Word, WordBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorBounds {
    /// Tensor degree D.
    pub degree: usize,
    /// T-power M of a single letter.
    pub tpow: u32,
    /// Weight cutoff K of the carrier.
    pub weight: i64,
}

impl Default for TensorBounds {
    fn default() -> Self {
        TensorBounds { degree: 4, tpow: 4, weight: 6 }
    }
}

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("presentation is not Leibniz: jacobi fails at {0:?}")]
    NotLeibniz(Option<Witness>),
}

#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub presentation: ConformalPresentation,
    pub bounds: TensorBounds,
    pub basis: WordBasis,
    /// g_λ C for every free generator g (indexed by symbol) and basis word C.
    lambda: Vec<Vec<LambdaPoly<Entry>>>,
    pub sfc: Sfc,
}

struct Builder<'a> {
    pres: &'a ConformalPresentation,
    basis: &'a WordBasis,
    lambda: Vec<Vec<LambdaPoly<Entry>>>,
}

impl Builder<'_> {
    /// Σ c·(l⊗x), unknown as soon as a word leaves the basis.
    fn prefix(&self, m: &ModuleElement, v: &Entry) -> Entry {
        let v = v.as_ref()?;
        let mut out = Vector::new();
        for (x, cx) in v.iter() {
            for (l, cl) in m.iter() {
                let mut w: Word = Vec::with_capacity(self.basis.words[*x].len() + 1);
                w.push(*l);
                w.extend_from_slice(&self.basis.words[*x]);
                out.add_term(self.basis.find(&w)?, cx * cl);
            }
        }
        Some(out)
    }

    fn lambda_on(&self, g: &Letter, x: usize) -> LambdaPoly<Entry> {
        words::wick_lambda(self.pres, self.basis, &self.lambda, g, x, &|m, v| self.prefix(m, v))
    }
}

impl LetterAction for Builder<'_> {
    fn dot(&self, m: &ModuleElement, x: usize) -> Entry {
        self.prefix(m, &Some(Vector::single(x)))
    }
    fn lambda(&self, gen: u32, x: usize) -> &LambdaPoly<Entry> {
        &self.lambda[gen as usize][x]
    }
    fn letter_weight(&self, c: &Letter) -> i64 {
        self.pres.letter_weight(c)
    }
}

/// Words of degree ≤ D in the letters of weight ≤ K and T-power ≤ M, with
/// total weight ≤ K, listed by degree.
fn enumerate(pres: &ConformalPresentation, b: &TensorBounds) -> Vec<Word> {
    let alphabet = words::letters(pres, b.weight, b.tpow, true);
    let mut out: Vec<Word> = vec![Vec::new()];
    let mut level: Vec<Word> = vec![Vec::new()];
    for _ in 0..b.degree {
        let mut next = Vec::new();
        for l in &alphabet {
            for w in &level {
                if pres.letter_weight(l) + words::word_weight(pres, w) <= b.weight {
                    let mut v = Vec::with_capacity(w.len() + 1);
                    v.push(*l);
                    v.extend_from_slice(w);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// T acts on words as a derivation; T kills centrals.
fn translation(basis: &WordBasis) -> Vec<Entry> {
    basis
        .words
        .iter()
        .map(|w| {
            let mut out = Vector::new();
            for i in 0..w.len() {
                if w[i].central {
                    continue;
                }
                let mut v = w.clone();
                v[i].tpow += 1;
                out.add_term(basis.find(&v)?, scalar::one());
            }
            Some(out)
        })
        .collect()
}

pub fn build_tensor_algebra(pres: &ConformalPresentation, bounds: TensorBounds) -> Result<TensorAlgebra, TensorError> {
    let jacobi = pres.check(ConformalIdentity::Jacobi);
    if !jacobi.passed() {
        return Err(TensorError::NotLeibniz(jacobi.witness));
    }
    let basis = WordBasis::new(enumerate(pres, &bounds));
    let n = pres.symbols().len();
    let mut b = Builder { pres, basis: &basis, lambda: vec![vec![LambdaPoly::new(); basis.len()]; n] };
    // suffixes come first in the enumeration, so one pass in basis order suffices
    for x in 0..basis.len() {
        for g in pres.free_generators() {
            let v = b.lambda_on(&g, x);
            b.lambda[g.gen as usize][x] = v;
        }
    }
    let labels = basis.words.iter().map(|w| words::word_text(pres, w, "⊗")).collect();
    let weights = basis.words.iter().map(|w| words::word_weight(pres, w)).collect();
    let carrier = Arc::new(Carrier::new(labels, weights, bounds.weight, false));
    let sfc = build_word_sfc("T(R)", &basis, carrier, translation(&basis), &b);
    let lambda = b.lambda;
    Ok(TensorAlgebra { presentation: pres.clone(), bounds, basis: basis.clone(), lambda, sfc })
}

impl TensorAlgebra {
    pub fn find(&self, w: &[Letter]) -> Option<usize> {
        self.basis.find(w)
    }

    /// The stored g_λ C for a free generator g.
    pub fn lambda_action(&self, g: &Letter, c: usize) -> &LambdaPoly<Entry> {
        &self.lambda[g.gen as usize][c]
    }

    /// The linear map induced on T(R) by images of the generators.
    pub fn induced_map(&self, images: &[Option<ModuleElement>]) -> Vec<Entry> {
        words::induced_map(&self.basis, images, |w| self.find(w).map(Vector::single))
    }

    /// Indices of the one-letter words, i.e. R inside T(R).
    pub fn letters(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis.words[i].len() == 1).collect()
    }

    pub fn poly_text(&self, p: &LambdaPoly<Entry>) -> String {
        crate::sfc::lambda_ids::poly_text(&self.sfc, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRanges {
    pub n: (i64, i64),
    /// Words entering a tuple have weight at most this.
    pub max_weight: i64,
    /// Word pairs in the locality sweep have weight at most this.
    pub locality_weight: i64,
    pub n_max: Option<u32>,
}

impl Default for TensorRanges {
    fn default() -> Self {
        TensorRanges { n: (-2, 2), max_weight: 6, locality_weight: 4, n_max: None }
    }
}

/// The mixed n-th product identity Y(a_(n)B) = Y(a)_(n)Y(B) for letters a,
/// locality of Y against Y^op, and the full n-th product axiom, whose sweep
/// is expected to find a failure when R has a noncommutative derived bracket.
pub fn verify_tensor_theorems(t: &TensorAlgebra, r: &TensorRanges) -> Vec<CheckReport> {
    let s = &t.sfc;
    let words = s.carrier().up_to_weight(r.max_weight);
    let letters: Vec<usize> = t.letters().into_iter().filter(|&a| s.weight(a) <= r.max_weight).collect();
    let nth = |heads: &[usize], name: &str, stop_early: bool| {
        let mut items = Vec::new();
        for &a in heads {
            for &b in &words {
                for &c in &words {
                    items.push((a, b, c));
                }
            }
        }
        let f = |&(a, b, c): &(usize, usize, usize)| nth_product_tally(s, a, b, c, r.n);
        let tally = if stop_early { sweep_until_failure(&items, 4096, f) } else { sweep(&items, f) };
        let ranges = format!(
            "{} heads x {} words x {} words of weight <= {}, n in {}..{}",
            heads.len(),
            words.len(),
            words.len(),
            r.max_weight,
            r.n.0,
            r.n.1
        );
        tally.into_report(name, ranges, window_text(s.carrier()))
    };
    let mixed = nth(&letters, "tensor-mixed-nth-product", false);
    let op = opposite(s);
    let lw = s.carrier().up_to_weight(r.locality_weight);
    let loc = check_pair_locality("tensor-locality-y-yop", s, &op, &lw, &lw, r.n_max);
    let mut strong = nth(&words, "tensor-strong-axiom", true);
    strong.notes.push(match &strong.witness {
        Some(_) => "sweep stopped at the first failing block: T(R) is not a strong field algebra".into(),
        None => "no failure witness in range".into(),
    });
    vec![mixed, loc, strong]
}

fn nth_product_tally(s: &Sfc, a: usize, b: usize, c: usize, n: (i64, i64)) -> Tally {
    let mut t = Tally::default();
    let car = s.carrier();
    let w0 = s.weight(a) + s.weight(b) + s.weight(c);
    for n in n.0..=n.1 {
        let w_in = w0 - n - 2;
        for k in (w_in - car.cutoff)..=(w_in - car.min_weight()) {
            let (l, rhs) = nth_product_instance(s, a, b, c, n, k);
            let inputs = [
                ("a", s.label(a).to_string()),
                ("B", s.label(b).to_string()),
                ("C", s.label(c).to_string()),
                ("n", n.to_string()),
                ("k", k.to_string()),
            ];
            t.record(compare(s, l, rhs, &inputs));
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::fixtures::*;
    use crate::lincomb::Linear;
    use crate::scalar::{int, rat};

    fn word(t: &TensorAlgebra, names: &[(&str, u32)]) -> usize {
        let w: Word = names
            .iter()
            .map(|(n, k)| {
                let l = t.presentation.lookup(n).unwrap();
                Letter { tpow: *k, ..l }
            })
            .collect();
        t.find(&w).unwrap()
    }

    #[test]
    fn boson_lambda_on_square() {
        let t = build_tensor_algebra(&free_boson(), TensorBounds { degree: 3, tpow: 3, weight: 4 }).unwrap();
        let a = t.presentation.lookup("a").unwrap();
        let aa = word(&t, &[("a", 0), ("a", 0)]);
        let mut want = Vector::new();
        want.add_term(word(&t, &[("K", 0), ("a", 0)]), int(1));
        want.add_term(word(&t, &[("a", 0), ("K", 0)]), int(1));
        let got = t.lambda_action(&a, aa);
        assert_eq!(got.degree(), Some(1));
        assert_eq!(got.coeff(1), Some(want));
        assert!(got.coeff(0).is_zero());
        assert!(t.lambda_action(&a, t.sfc.vacuum).is_zero());
    }

    #[test]
    fn rejects_non_leibniz() {
        assert!(matches!(
            build_tensor_algebra(&corrupted_virasoro(), TensorBounds::default()),
            Err(TensorError::NotLeibniz(Some(_)))
        ));
    }

    #[test]
    fn translation_is_a_derivation_killing_centrals() {
        let t = build_tensor_algebra(&free_boson(), TensorBounds { degree: 2, tpow: 2, weight: 4 }).unwrap();
        let ka = word(&t, &[("K", 0), ("a", 0)]);
        let want = Vector::single(word(&t, &[("K", 0), ("a", 1)]));
        assert_eq!(t.sfc.t(&Vector::single(ka)), Some(want));
        let aa = word(&t, &[("a", 0), ("a", 0)]);
        let mut want = Vector::single(word(&t, &[("a", 1), ("a", 0)]));
        want.add_term(word(&t, &[("a", 0), ("a", 1)]), int(1));
        assert_eq!(t.sfc.t(&Vector::single(aa)), Some(want));
    }

    #[test]
    fn letter_modes_match_lambda_table() {
        let t = build_tensor_algebra(&virasoro(rat(1, 2)), TensorBounds { degree: 3, tpow: 3, weight: 6 }).unwrap();
        let l = t.presentation.lookup("L").unwrap();
        let li = word(&t, &[("L", 0)]);
        for x in t.sfc.carrier().up_to_weight(4) {
            let p = t.lambda_action(&l, x);
            for j in 0..=4u32 {
                let from_table = t.sfc.mode_entry(li, j as i64, x);
                let from_lambda = p.coeff(j).map(|v| v.scaled(&scalar::factorial(j as u64)));
                if let (Some(a), Some(b)) = (from_table, from_lambda) {
                    assert_eq!(a, b, "L_({j}) on {}", t.sfc.label(x));
                }
            }
        }
        // L_(−1) prepends
        let ll = word(&t, &[("L", 0), ("L", 0)]);
        assert_eq!(t.sfc.mode_entry(li, -1, li), Some(Vector::single(ll)));
    }
}
