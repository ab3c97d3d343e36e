//! Words in the letters T^k g of a conformal presentation, and the field
//! recursion Y(c⊗A, z) = :Y(c,z)Y(A,z): shared by the tensor algebra and
//! the enveloping vertex algebra.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::carrier::Carrier;
use crate::conformal::ConformalPresentation;
use crate::lambda::{LambdaPoly, Letter, ModuleElement};
use crate::lincomb::{Entry, Linear, Vector};
use crate::scalar::{self, factorial};
use crate::sfc::Sfc;

pub type Word = Vec<Letter>;

#[derive(Clone, Debug)]
pub struct WordBasis {
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordBasis {
    pub fn new(words: Vec<Word>) -> WordBasis {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordBasis { words, index }
    }

    pub fn find(&self, w: &[Letter]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The map on words induced letterwise by images of the generators
/// (T^k g ↦ T^k(image of g), centrals fixed), placed in a basis by `place`.
pub fn induced_map(
    basis: &WordBasis,
    images: &[Option<ModuleElement>],
    place: impl Fn(&[Letter]) -> Entry,
) -> Vec<Entry> {
    use crate::lambda::TAction;
    basis
        .words
        .iter()
        .map(|w| {
            let mut acc: Vec<(Word, scalar::Scalar)> = vec![(Vec::new(), scalar::one())];
            for l in w {
                let img = match images.get(l.gen as usize).and_then(|m| m.as_ref()) {
                    Some(m) if !l.central => m.apply_t_pow(l.tpow),
                    _ => ModuleElement::single(*l),
                };
                let mut next = Vec::new();
                for (u, c) in &acc {
                    for (x, cx) in img.iter() {
                        let mut v = u.clone();
                        v.push(*x);
                        next.push((v, c * cx));
                    }
                }
                acc = next;
            }
            let mut out: Entry = Some(Vector::new());
            for (u, c) in acc {
                out.add_scaled(&place(&u), &c);
            }
            out
        })
        .collect()
}

pub fn word_weight(p: &ConformalPresentation, w: &[Letter]) -> i64 {
    w.iter().map(|l| p.letter_weight(l)).sum()
}

pub fn word_text(p: &ConformalPresentation, w: &[Letter], sep: &str) -> String {
    if w.is_empty() {
        "|0>".into()
    } else {
        w.iter().map(|l| p.letter_text(l)).collect::<Vec<_>>().join(sep)
    }
}

/// Every letter of weight at most `max_weight` and T-power at most `max_t`,
/// with centrals included when `centrals` is set.
pub fn letters(p: &ConformalPresentation, max_weight: i64, max_t: u32, centrals: bool) -> Vec<Letter> {
    let mut out = Vec::new();
    for g in p.free_generators() {
        for k in 0..=max_t {
            let l = Letter::new(g.gen, false, k).unwrap();
            if p.letter_weight(&l) <= max_weight {
                out.push(l);
            }
        }
    }
    if centrals {
        out.extend(p.centrals());
    }
    out
}

/// (T^k g)_λ for a letter from g_λ: multiply by (−λ)^k.
pub fn letter_lambda(l: &Letter, base: &LambdaPoly<Entry>) -> LambdaPoly<Entry> {
    if l.central {
        return LambdaPoly::new();
    }
    base.times_lambda_pow(l.tpow).scaled(&scalar::sign(l.tpow as i64))
}

/// m_μ x for m in R, from the table of g_μ x; centrals act by zero.
fn element_lambda(table: &[Vec<LambdaPoly<Entry>>], m: &ModuleElement, x: usize) -> LambdaPoly<Entry> {
    let mut out = LambdaPoly::new();
    for (l, c) in m.iter() {
        if !l.central {
            out.add_scaled(&letter_lambda(l, &table[l.gen as usize][x]), c);
        }
    }
    out
}

/// g_λ(c.C) = (g_λc).C + c.(g_λC) + ∫₀^λ (g_λc)_μ C dμ for the word c⊗C,
/// where `dot` realizes m.X for m in R. The table must hold g_λC already.
pub(crate) fn wick_lambda(
    pres: &ConformalPresentation,
    basis: &WordBasis,
    table: &[Vec<LambdaPoly<Entry>>],
    g: &Letter,
    x: usize,
    dot: &dyn Fn(&ModuleElement, &Entry) -> Entry,
) -> LambdaPoly<Entry> {
    let Some((c, rest)) = basis.words[x].split_first() else {
        return LambdaPoly::new();
    };
    let rest = basis.find(rest).expect("suffix of a basis word is a basis word");
    let gc = pres.letter_bracket(g, c);
    let one = scalar::one();
    let er = Some(Vector::single(rest));
    let mut out = LambdaPoly::new();
    for (i, m) in gc.iter() {
        out.add_at(i, &dot(m, &er), &one);
    }
    let ec = ModuleElement::single(*c);
    out.add_assign_ref(&table[g.gen as usize][rest].map(|v| dot(&ec, v)));
    // ∫₀^λ λ^i μ^j dμ = λ^{i+j+1}/(j+1)
    for (i, m) in gc.iter() {
        for (j, v) in element_lambda(table, m, rest).iter() {
            out.add_at(i + j + 1, v, &scalar::rat(1, j as i64 + 1));
        }
    }
    out
}

/// Modes of letters on basis words, from which every other mode follows.
pub(crate) trait LetterAction: Sync {
    /// m.x: the (−1)-product of an element of R with a basis word.
    fn dot(&self, m: &ModuleElement, x: usize) -> Entry;
    /// g_λ x for a free generator g.
    fn lambda(&self, gen: u32, x: usize) -> &LambdaPoly<Entry>;
    fn letter_weight(&self, c: &Letter) -> i64;
}

fn apply_linear(v: &Entry, f: impl Fn(usize) -> Entry) -> Entry {
    let v = v.as_ref()?;
    let mut out = Vector::new();
    for (x, c) in v.iter() {
        out.add_scaled(&f(*x)?, c);
    }
    Some(out)
}

/// c_(j) x for a letter c: j!·[λ^j] of c_λx when j ≥ 0, and
/// (T^m c / m!).x with m = −1−j otherwise.
pub(crate) fn letter_mode<L: LetterAction + ?Sized>(act: &L, c: &Letter, j: i64, x: usize) -> Entry {
    if j >= 0 {
        if c.central {
            return Some(Vector::new());
        }
        let base = act.lambda(c.gen, x);
        let k = c.tpow as i64;
        if j < k {
            return Some(Vector::new());
        }
        // (−λ)^k g_λ: coefficient of λ^j is (−1)^k [λ^{j−k}] g_λ x
        let v = base.coeff((j - k) as u32);
        return v.map(|v| v.scaled(&(scalar::sign(k) * factorial(j as u64))));
    }
    let m = (-1 - j) as u32;
    if c.central && m > 0 {
        return Some(Vector::new());
    }
    let raised = Letter { tpow: c.tpow + m, ..*c };
    act.dot(&ModuleElement::term(raised, scalar::one() / factorial(m as u64)), x)
}

/// Stored products A_(n)B, filled in order of word length.
struct Rows {
    dim: usize,
    vacuum: usize,
    lo: Vec<i64>,
    vals: Vec<Vec<Entry>>,
}

impl Rows {
    fn is_vacuum(&self, a: usize) -> bool {
        a == self.vacuum
    }

    fn get(&self, a: usize, n: i64, b: usize, carrier: &Carrier) -> Entry {
        let idx = a * self.dim + b;
        let lo = self.lo[idx];
        let hi = lo + self.vals[idx].len() as i64 - 1;
        if n > hi {
            Some(Vector::new())
        } else if n < lo {
            if carrier.complete {
                Some(Vector::new())
            } else {
                None
            }
        } else {
            self.vals[idx][(n - lo) as usize].clone()
        }
    }

    fn apply(&self, a: usize, n: i64, v: &Entry, carrier: &Carrier) -> Entry {
        apply_linear(v, |b| self.get(a, n, b, carrier))
    }
}

/// Builds the correspondence with Y(|0⟩) = I and, for A = c⊗A′,
///   A_(n)B = Σ_{j≤−1} c_(j)(A′_(n−j−1)B) + Σ_{j≥0} A′_(n−j−1)(c_(j)B).
pub(crate) fn build_word_sfc<L: LetterAction + ?Sized>(
    name: &str,
    basis: &WordBasis,
    carrier: Arc<Carrier>,
    translation: Vec<Entry>,
    act: &L,
) -> Sfc {
    let d = basis.len();
    let vacuum = basis.find(&[]).expect("the empty word is in the basis");
    let mut rows = Rows { dim: d, vacuum, lo: vec![0; d * d], vals: vec![Vec::new(); d * d] };
    let mut by_len: Vec<Vec<usize>> = Vec::new();
    for (i, w) in basis.words.iter().enumerate() {
        if by_len.len() <= w.len() {
            by_len.resize(w.len() + 1, Vec::new());
        }
        by_len[w.len()].push(i);
    }
    let window = |a: usize, b: usize| {
        let s = carrier.weight(a) + carrier.weight(b) - 1;
        (s - carrier.cutoff, s - carrier.min_weight())
    };
    let split: Vec<Option<(Letter, usize)>> = basis
        .words
        .iter()
        .map(|w| {
            if w.is_empty() {
                None
            } else {
                Some((w[0], basis.find(&w[1..]).expect("suffix of a basis word is a basis word")))
            }
        })
        .collect();
    for level in &by_len {
        let computed: Vec<(usize, i64, Vec<Entry>)> = level
            .par_iter()
            .flat_map_iter(|&a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| {
                let (lo, hi) = window(a, b);
                let vals = (lo..=hi)
                    .map(|n| match split[a] {
                        None => Some(if n == -1 { Vector::single(b) } else { Vector::new() }),
                        Some((c, rest)) => word_mode(act, &rows, &carrier, c, rest, n, b),
                    })
                    .collect();
                (a * d + b, lo, vals)
            })
            .collect();
        for (idx, lo, vals) in computed {
            rows.lo[idx] = lo;
            rows.vals[idx] = vals;
        }
    }
    Sfc::from_fn(name, carrier.clone(), vacuum, translation, |a, n, b| rows.get(a, n, b, &carrier))
}

fn word_mode<L: LetterAction + ?Sized>(
    act: &L,
    rows: &Rows,
    carrier: &Carrier,
    c: Letter,
    rest: usize,
    n: i64,
    b: usize,
) -> Entry {
    // Y(c⊗|0⟩) = Y(c)
    if rows.is_vacuum(rest) {
        return letter_mode(act, &c, n, b);
    }
    let eb = Some(Vector::single(b));
    let min = carrier.min_weight();
    let up_rest = carrier.weight(rest) + carrier.weight(b) - 1 - min;
    let mut out: Entry = Some(Vector::new());
    for j in (n - 1 - up_rest)..=-1 {
        let inner = rows.apply(rest, n - j - 1, &eb, carrier);
        if inner.is_zero() {
            continue;
        }
        out.add_assign_ref(&apply_linear(&inner, |x| letter_mode(act, &c, j, x)));
        if out.is_none() {
            return None;
        }
    }
    let up_c = act.letter_weight(&c) + carrier.weight(b) - 1 - min;
    for j in 0..=up_c {
        // rest_(n−j−1) vanishes on the weight of c_(j)b
        let w = act.letter_weight(&c) + carrier.weight(b) - j - 1;
        if n - j - 1 > carrier.weight(rest) + w - 1 - min {
            continue;
        }
        let inner = letter_mode(act, &c, j, b);
        if inner.is_zero() {
            continue;
        }
        out.add_assign_ref(&rows.apply(rest, n - j - 1, &inner, carrier));
        if out.is_none() {
            return None;
        }
    }
    out
}
