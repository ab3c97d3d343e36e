//! Re-evaluating the failure witnesses of a saved JSON report.
//!
//! A replayed check passes when the recorded witness is reproduced exactly:
//! single instances of the n-th product and Borcherds identities are
//! evaluated directly, anything else is reswept with the recorded ranges.

use std::path::Path;

use fieldalg::conformal::ConformalIdentity;
use fieldalg::report::Swept;
use fieldalg::sfc::axioms::{borcherds_instance, check_field_axiom, nth_product_instance};
use fieldalg::{AxiomKind, CheckReport, Entry, Sfc, Verdict, Witness};

use crate::build::{self, Recipe};
use crate::report::{Report, REPORT_SCHEMA};
use crate::{Failure, Run};

fn side(s: &Sfc, e: &Entry) -> String {
    e.as_ref().map_or_else(|| "unknown".to_string(), |v| s.text(v))
}

fn index(s: &Sfc, w: &Witness, keys: &[&str]) -> Option<usize> {
    keys.iter().find_map(|k| w.inputs.get(*k)).and_then(|l| s.carrier().find(l))
}

fn int(w: &Witness, key: &str) -> Option<i64> {
    w.inputs.get(key)?.parse().ok()
}

/// Both sides of the recorded instance, if the witness names one.
fn instance(s: &Sfc, identity: &str, w: &Witness) -> Option<(Entry, Entry)> {
    let a = index(s, w, &["a"])?;
    let b = index(s, w, &["b", "B"])?;
    let c = index(s, w, &["c", "C"])?;
    let (n, k) = (int(w, "n")?, int(w, "k")?);
    match identity {
        "nth-product" | "tensor-strong-axiom" => Some(nth_product_instance(s, a, b, c, n, k)),
        "borcherds" => Some(borcherds_instance(s, a, b, c, int(w, "m")?, n, k)),
        _ => None,
    }
}

fn outcome(old: &CheckReport, how: &str, reproduced: bool, note: String) -> CheckReport {
    CheckReport {
        identity: format!("replay:{}", old.identity),
        swept: Swept { ranges: how.into(), certified: 1, uncertified: 0 },
        verdict: if reproduced { Verdict::Pass } else { Verdict::Fail },
        witness: None,
        window: old.window.clone(),
        notes: vec![note],
    }
}

pub fn run(path: &Path, command: Vec<String>) -> Run {
    let text = build::read(path)?;
    let old: Report = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if old.schema != REPORT_SCHEMA {
        return Err(Failure::Usage(format!("{}: unsupported report schema `{}`", path.display(), old.schema)));
    }
    let input = old.input.clone().ok_or_else(|| Failure::Usage(format!("{}: the report records no input", path.display())))?;
    let mut r = Report::new(command);
    let witnessed: Vec<&CheckReport> = old.checks.iter().filter(|c| c.witness.is_some()).collect();
    if let Recipe::Presentation { source } = &input {
        let p = build::conformal(Path::new("<report>"), source)?;
        for c in witnessed {
            match ConformalIdentity::parse(&c.identity) {
                Some(k) => {
                    let again = p.check(k);
                    let same = again.witness == c.witness;
                    r.push(outcome(c, "resweep", same, format!("witness {}", if same { "reproduced" } else { "differs" })));
                }
                None => r.disclosures.push(format!("{}: not replayable", c.identity)),
            }
        }
    } else {
        let built = input.build()?;
        let s = built.sfc();
        for c in witnessed {
            let w = c.witness.as_ref().unwrap();
            if let Some((l, rhs)) = instance(s, &c.identity, w) {
                let (l, rhs) = (side(s, &l), side(s, &rhs));
                let same = l == w.lhs && rhs == w.rhs;
                r.push(outcome(c, "direct evaluation", same, format!("lhs = {l}, rhs = {rhs}")));
            } else if let (Some(k), Some(ranges)) = (AxiomKind::parse(&c.identity), &old.ranges) {
                let again = check_field_axiom(s, k, ranges);
                let same = again.witness == c.witness;
                r.push(outcome(c, "resweep", same, format!("witness {}", if same { "reproduced" } else { "differs" })));
            } else {
                r.disclosures.push(format!("{}: not replayable", c.identity));
            }
        }
    }
    r.input = Some(input);
    r.finish();
    if r.checks.is_empty() {
        r.verdict = Verdict::Inconclusive;
        r.disclosures.push("no witness in the report could be replayed".into());
    }
    Ok(r)
}
