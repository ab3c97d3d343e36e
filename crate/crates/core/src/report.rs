//! Machine-readable verdicts of identity sweeps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Combines sub-verdicts: any failure wins, then any inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// The concrete instance on which an identity failed, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(inputs: &[(&str, String)], lhs: String, rhs: String) -> Witness {
        Witness {
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Swept {
    pub ranges: String,
    /// Instances on which both sides were exactly computable.
    pub certified: u64,
    /// Instances skipped because some term fell outside the truncation.
    pub uncertified: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: String,
    pub swept: Swept,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub window: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{}: {:?} ({} certified, {} uncertified; {}; window {})",
            self.identity,
            self.verdict,
            self.swept.certified,
            self.swept.uncertified,
            self.swept.ranges,
            self.window
        );
        if let Some(w) = &self.witness {
            let inputs: Vec<String> = w.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            s.push_str(&format!(
                "\n  witness [{}]\n    lhs = {}\n    rhs = {}",
                inputs.join(", "),
                w.lhs,
                w.rhs
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("\n  note: {n}"));
        }
        s
    }
}

/// Accumulates instance outcomes in sweep order; the first failure is kept.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub certified: u64,
    pub uncertified: u64,
    pub witness: Option<Witness>,
}

/// Outcome of a single identity instance.
pub enum Outcome {
    Holds,
    Fails(Witness),
    Unknown,
}

impl Tally {
    pub fn record(&mut self, o: Outcome) {
        match o {
            Outcome::Holds => self.certified += 1,
            Outcome::Unknown => self.uncertified += 1,
            Outcome::Fails(w) => {
                self.certified += 1;
                if self.witness.is_none() {
                    self.witness = Some(w);
                }
            }
        }
    }

    pub fn merge(&mut self, o: Tally) {
        self.certified += o.certified;
        self.uncertified += o.uncertified;
        if self.witness.is_none() {
            self.witness = o.witness;
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.witness.is_some() {
            Verdict::Fail
        } else if self.certified == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn into_report(self, identity: &str, ranges: String, window: String) -> CheckReport {
        CheckReport {
            identity: identity.to_string(),
            verdict: self.verdict(),
            swept: Swept { ranges, certified: self.certified, uncertified: self.uncertified },
            witness: self.witness,
            window,
            notes: Vec::new(),
        }
    }
}

/// Runs `f` over `items` in parallel and merges the tallies in item order,
/// so the result does not depend on the thread count.
pub fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync) -> Tally {
    use rayon::prelude::*;
    let parts: Vec<Tally> = items.par_iter().map(&f).collect();
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Like `sweep`, but stops after the first block of items that produced a
/// failure. Blocks are fixed, so the witness is the first failing item in
/// order whatever the thread count.
pub fn sweep_until_failure<T: Sync>(items: &[T], block: usize, f: impl Fn(&T) -> Tally + Sync) -> Tally {
    let mut out = Tally::default();
    for chunk in items.chunks(block.max(1)) {
        out.merge(sweep(chunk, &f));
        if out.witness.is_some() {
            break;
        }
    }
    out
}
