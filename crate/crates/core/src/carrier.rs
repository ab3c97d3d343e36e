//! Truncated graded vector spaces with an explicit basis.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::lincomb::{Entry, Linear, Vector};
use crate::scalar;

/// A graded basis, stored up to weight `cutoff`.
///
/// When `complete` is set the basis spans the whole space, so anything of
/// weight above the cutoff is zero rather than unknown.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Carrier {
    labels: Vec<String>,
    weights: Vec<i64>,
    pub cutoff: i64,
    pub complete: bool,
    #[serde(skip)]
    index: HashMap<String, usize>,
    #[serde(skip)]
    by_weight: BTreeMap<i64, Vec<usize>>,
}

impl Carrier {
    /// Panics on duplicate labels or weights above the cutoff.
    pub fn new(labels: Vec<String>, weights: Vec<i64>, cutoff: i64, complete: bool) -> Carrier {
        assert_eq!(labels.len(), weights.len());
        let mut c = Carrier {
            labels,
            weights,
            cutoff,
            complete,
            index: HashMap::new(),
            by_weight: BTreeMap::new(),
        };
        c.reindex();
        c
    }

    /// A carrier containing every basis vector, with cutoff at the top weight.
    pub fn finite(labels: Vec<String>, weights: Vec<i64>) -> Carrier {
        let top = weights.iter().copied().max().unwrap_or(0);
        Carrier::new(labels, weights, top, true)
    }

    fn reindex(&mut self) {
        self.index.clear();
        self.by_weight.clear();
        for (i, (l, w)) in self.labels.iter().zip(&self.weights).enumerate() {
            assert!(*w <= self.cutoff, "basis vector {l} above the cutoff");
            let prev = self.index.insert(l.clone(), i);
            assert!(prev.is_none(), "duplicate basis label {l}");
            self.by_weight.entry(*w).or_default().push(i);
        }
    }

    /// Rebuilds lookup tables after deserialization.
    pub fn restored(mut self) -> Carrier {
        self.reindex();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn min_weight(&self) -> i64 {
        self.by_weight.keys().next().copied().unwrap_or(0)
    }

    pub fn of_weight(&self, w: i64) -> &[usize] {
        self.by_weight.get(&w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Graded dimensions from the minimal weight to the cutoff.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        (self.min_weight()..=self.cutoff).map(|w| (w, self.of_weight(w).len())).collect()
    }

    /// Basis indices of weight at most `w`, in basis order.
    pub fn up_to_weight(&self, w: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] <= w).collect()
    }

    /// Whether vectors of weight `w` are representable: `Some(true)` inside the
    /// basis range, `Some(false)` if they are known to vanish, `None` if unknown.
    pub fn weight_status(&self, w: i64) -> Option<bool> {
        if w < self.min_weight() {
            Some(false)
        } else if w > self.cutoff {
            if self.complete {
                Some(false)
            } else {
                None
            }
        } else {
            Some(true)
        }
    }

    /// Weight of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn vector_weight(&self, v: &Vector) -> Option<i64> {
        let mut w = None;
        for i in v.keys() {
            let wi = self.weights[*i];
            match w {
                None => w = Some(wi),
                Some(x) if x != wi => return None,
                _ => {}
            }
        }
        w
    }

    pub fn max_weight_of(&self, v: &Vector) -> Option<i64> {
        v.keys().map(|i| self.weights[*i]).max()
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::single(i)
    }

    pub fn text(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                if *c == scalar::one() {
                    self.labels[*i].clone()
                } else {
                    format!("({})*{}", scalar::fmt(c), self.labels[*i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn entry_text(&self, e: &Entry) -> String {
        match e {
            Some(v) => self.text(v),
            None => "<unknown>".into(),
        }
    }
}
