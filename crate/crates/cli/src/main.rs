//! `fieldalg`: build and check field algebras from `.alg` files.
//!
//! Exit codes: 0 every check passed, 1 a failure witness was found,
//! 2 inconclusive on the truncation, 3 usage or parse error.

mod build;
mod replay;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fieldalg::conformal::ConformalIdentity;
use fieldalg::envelope::verify_vertex;
use fieldalg::fields::{normal_order_breaks_weak_locality, weak_locality_asymmetry};
use fieldalg::format::AlgebraFile;
use fieldalg::scalar;
use fieldalg::sfc::axioms::{check_field_axiom, Level};
use fieldalg::sfc::construct::check_invariants_formula;
use fieldalg::sfc::{check_module, smash_sfc, tensor_sfc, trivial_sfc, FAModule};
use fieldalg::tensor::{verify_tensor_theorems, TensorRanges};
use fieldalg::zhu::{self, Hypothesis, StarRanges, ZhuContext, ZhuQuotient};
use fieldalg::{classify, AxiomKind, AxiomRanges, CheckReport, Classification, Verdict};
use serde_json::json;

use build::{Built, Defaults, LoadError, Recipe};
use report::Report;

#[derive(Parser)]
#[command(name = "fieldalg", version, about = "Exact checks of field algebras and vertex algebras on finite truncations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Worker threads for the sweeps; reports do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest locality order tried in order searches.
    #[arg(long, global = true)]
    n_max: Option<u32>,
    /// Re-evaluate the witnesses recorded in a JSON report.
    #[arg(long, global = true, value_name = "WITNESS.json")]
    replay: Option<PathBuf>,
    /// Record the wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Turns an `.alg` file into a build where one is expected.
#[derive(Args, Clone, Default)]
struct BuildFlags {
    /// Weight cutoff of the envelope built from a conformal file.
    #[arg(long)]
    weight_cutoff: Option<i64>,
    /// Value of a central element, NAME=RAT.
    #[arg(long, value_name = "NAME=RAT")]
    central: Vec<String>,
}

impl BuildFlags {
    fn defaults(&self) -> Defaults {
        Defaults { weight_cutoff: self.weight_cutoff, centrals: self.central.clone() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a presentation or one axiom of a build.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Build T(R) or U(R) from a conformal file.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Field, strong field or vertex algebra.
    Classify {
        target: PathBuf,
        #[command(flatten)]
        flags: BuildFlags,
    },
    /// The Zhu quotient at a weight cutoff.
    Zhu {
        target: PathBuf,
        #[command(flatten)]
        flags: BuildFlags,
        /// Use V ⊗ A for the associative algebra A in FILE.
        #[arg(long, value_name = "FILE", conflicts_with = "smash_with")]
        tensor_with: Option<PathBuf>,
        /// Use V ♯ Γ for the group in FILE.
        #[arg(long, value_name = "FILE")]
        smash_with: Option<PathBuf>,
    },
    /// Smash product with a group of automorphisms, and the invariants formula.
    Smash {
        target: PathBuf,
        #[arg(long, value_name = "FILE")]
        group: PathBuf,
        #[command(flatten)]
        flags: BuildFlags,
    },
    /// Module axioms.
    Module {
        target: PathBuf,
        /// The algebra as a module over itself.
        #[arg(long, required = true)]
        self_module: bool,
        #[command(flatten)]
        flags: BuildFlags,
    },
    /// The free-boson weak-locality counterexamples.
    Fields {
        /// Energy cutoff of the Fock truncation.
        #[arg(long, default_value_t = 6)]
        energy: i64,
        /// Products a_(n)b are checked for n = 0..=TOP.
        #[arg(long, default_value_t = 4)]
        top: i64,
    },
    /// Re-evaluate the witnesses recorded in a JSON report.
    Replay { file: PathBuf },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Jacobi, skewsymmetry and translation of a λ-bracket table.
    Conformal {
        file: PathBuf,
        /// Comma-separated: jacobi, skew, translation, grading.
        #[arg(long, value_delimiter = ',', default_values_t = ["jacobi".to_string(), "skew".to_string(), "translation".to_string()])]
        identities: Vec<String>,
    },
    /// One field-algebra axiom swept over basis triples.
    Axiom {
        target: PathBuf,
        /// associativity, nth-product, borcherds, lr or sf5.
        #[arg(long)]
        kind: String,
        /// Range of n, as A..B.
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        n_range: Option<String>,
        /// Range of the second mode index m, as A..B.
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        m_range: Option<String>,
        /// Only basis vectors up to this weight.
        #[arg(long)]
        max_weight: Option<i64>,
        #[command(flatten)]
        flags: BuildFlags,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// The tensor field algebra T(R).
    Tensor {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        tensor_degree: usize,
        #[arg(long, default_value_t = 4)]
        t_degree: u32,
        /// Weight cutoff of the carrier.
        #[arg(long, default_value_t = 6)]
        order: i64,
        /// Run the mixed n-th product, locality and strong-axiom sweeps.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "BUILD.json")]
        save: Option<PathBuf>,
    },
    /// The enveloping vertex algebra U(R).
    Envelope {
        file: PathBuf,
        #[arg(long)]
        weight_cutoff: i64,
        #[arg(long, value_name = "NAME=RAT")]
        central: Vec<String>,
        /// Classification, Borcherds, locality and the λ-product identities.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "BUILD.json")]
        save: Option<PathBuf>,
        /// Drop the bracket correction when rewriting; a deliberately broken build.
        #[arg(long)]
        corrupt_rewriting: bool,
    },
}

enum Failure {
    Usage(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Usage(e.0)
    }
}

type Run = Result<Report, Failure>;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(3);
        }
    }
    let t0 = Instant::now();
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let result = match (&cli.replay, &cli.cmd) {
        (Some(p), None) => replay::run(p, command),
        (None, Some(Cmd::Replay { file })) => replay::run(file, command),
        (None, Some(cmd)) => dispatch(cmd, &cli, command),
        (Some(_), Some(_)) => Err(Failure::Usage("--replay takes no subcommand".into())),
        (None, None) => Err(Failure::Usage("no command given; see --help".into())),
    };
    match result {
        Ok(mut r) => {
            if cli.timing {
                r.wall_clock_ms = Some(t0.elapsed().as_millis() as u64);
            }
            match cli.report {
                Format::Json => print!("{}", r.json()),
                Format::Text => print!("{}", r.text()),
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn range(s: &Option<String>, default: (i64, i64), flag: &str) -> Result<(i64, i64), Failure> {
    let Some(s) = s else { return Ok(default) };
    let bad = || Failure::Usage(format!("{flag} expects A..B, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn dispatch(cmd: &Cmd, cli: &Cli, command: Vec<String>) -> Run {
    let mut r = Report::new(command);
    let base_ranges = AxiomRanges { n_max: cli.n_max, ..AxiomRanges::default() };
    match cmd {
        Cmd::Check { what: CheckCmd::Conformal { file, identities } } => {
            let text = build::read(file)?;
            let p = build::conformal(file, &text)?;
            for name in identities {
                let k = ConformalIdentity::parse(name).ok_or_else(|| Failure::Usage(format!("unknown identity `{name}`")))?;
                r.push(p.check(k));
            }
            r.input = Some(Recipe::Presentation { source: text });
        }
        Cmd::Check { what: CheckCmd::Axiom { target, kind, n_range, m_range, max_weight, flags } } => {
            let k = AxiomKind::parse(kind).ok_or_else(|| Failure::Usage(format!("unknown axiom kind `{kind}`")))?;
            let (recipe, b) = build::load(target, &flags.defaults())?;
            let ranges = AxiomRanges {
                n: range(n_range, base_ranges.n, "--n-range")?,
                m: range(m_range, base_ranges.m, "--m-range")?,
                max_weight: *max_weight,
                ..base_ranges
            };
            r.push(check_field_axiom(b.sfc(), k, &ranges));
            r.input = Some(recipe);
            r.ranges = Some(ranges);
        }
        Cmd::Build { what: BuildCmd::Tensor { file, tensor_degree, t_degree, order, verify, save } } => {
            let recipe = Recipe::Tensor { source: build::read(file)?, degree: *tensor_degree, tpow: *t_degree, order: *order };
            let b = recipe.build()?;
            let Built::Tensor(t) = &b else { unreachable!() };
            r.data = json!({ "sfc": t.sfc.summary() });
            if *verify {
                let tr = TensorRanges { max_weight: *order, n_max: cli.n_max, ..TensorRanges::default() };
                r.extend(verify_tensor_theorems(t, &tr));
            }
            if let Some(out) = save {
                recipe.save(out)?;
            }
            r.input = Some(recipe);
        }
        Cmd::Build { what: BuildCmd::Envelope { file, weight_cutoff, central, verify, save, corrupt_rewriting } } => {
            let recipe = Recipe::Envelope {
                source: build::read(file)?,
                weight_cutoff: *weight_cutoff,
                centrals: build::parse_centrals(central)?,
                corrupted: *corrupt_rewriting,
            };
            let b = recipe.build()?;
            let Built::Envelope(e) = &b else { unreachable!() };
            let mut data = json!({ "sfc": e.sfc.summary() });
            if *verify {
                let reports = verify_vertex(e, &base_ranges);
                if let Some(level) = reports[0].notes.first() {
                    data["classification"] = json!(level.trim_start_matches("level: "));
                }
                r.extend(reports);
                r.ranges = Some(base_ranges.clone());
            }
            r.data = data;
            if let Some(out) = save {
                recipe.save(out)?;
            }
            r.input = Some(recipe);
        }
        Cmd::Classify { target, flags } => {
            let (recipe, b) = build::load(target, &flags.defaults())?;
            let c = classify(b.sfc(), &base_ranges);
            classification(&mut r, &c);
            r.input = Some(recipe);
            r.ranges = Some(base_ranges);
        }
        Cmd::Zhu { target, flags, tensor_with, smash_with } => {
            let (recipe, b) = build::load(target, &flags.defaults())?;
            zhu_command(&mut r, &b, flags.weight_cutoff, tensor_with.as_deref(), smash_with.as_deref(), &base_ranges)?;
            r.input = Some(recipe);
        }
        Cmd::Smash { target, group, flags } => {
            let (recipe, b) = build::load(target, &flags.defaults())?;
            let g = group_file(group)?;
            let act = build::group_action(&g, &b)?;
            let sm = smash_sfc(b.sfc(), &act).map_err(LoadError::from)?;
            let c = classify(&sm, &base_ranges);
            classification(&mut r, &c);
            let top = b.sfc().carrier().cutoff;
            let (inv, dims) = check_invariants_formula(b.sfc(), &act, &sm, top);
            r.push(inv);
            r.data["invariant_dimensions"] = json!(dims);
            r.data["group_order"] = json!(act.order());
            r.input = Some(recipe);
            r.ranges = Some(base_ranges);
        }
        Cmd::Module { target, self_module: _, flags } => {
            let (recipe, b) = build::load(target, &flags.defaults())?;
            // an envelope is vertex by construction, so the n-th product axiom applies
            let strong = matches!(b, Built::Envelope(_));
            r.extend(check_module(&FAModule::regular(b.sfc()), &base_ranges, strong));
            if !strong {
                r.disclosures.push("n-th product module axiom not checked: the algebra is not known to be strong".into());
            }
            r.input = Some(recipe);
            r.ranges = Some(base_ranges);
        }
        Cmd::Fields { energy, top } => {
            if *energy < 0 || *top < 0 {
                return Err(Failure::Usage("--energy and --top must be non-negative".into()));
            }
            r.extend(weak_locality_asymmetry(*energy, *top));
            r.extend(normal_order_breaks_weak_locality(*energy, cli.n_max.unwrap_or(4)));
        }
        Cmd::Replay { .. } => unreachable!(),
    }
    r.finish();
    Ok(r)
}

/// The axiom reports decide the level and go into `data`; only the
/// consistency diagnostic counts toward the verdict.
fn classification(r: &mut Report, c: &Classification) {
    let (diag, levels): (Vec<&CheckReport>, Vec<&CheckReport>) = c.reports.iter().partition(|x| x.identity == "sf1-diagnostic");
    r.data["level"] = json!(c.level.name());
    r.data["inconclusive"] = json!(c.inconclusive);
    r.data["axioms"] = json!(levels);
    r.extend(diag.into_iter().cloned());
    r.verdict = r.verdict.and(c.verdict());
    if c.level < Level::Vertex {
        r.disclosures.push(format!("classified below vertex: {}", c.level.name()));
    }
}

fn group_file(p: &Path) -> Result<fieldalg::format::GroupSpec, Failure> {
    match build::parse_file(p)? {
        AlgebraFile::Group(g) => Ok(g),
        other => Err(Failure::Usage(format!("{}: expected a group file, found kind {}", p.display(), other.kind()))),
    }
}

/// Why the quotient of `b` itself is justified.
fn base_hypothesis<'c>(b: &Built, c: &'c mut Option<Classification>, ranges: &AxiomRanges) -> Hypothesis<'c> {
    match b {
        Built::Envelope(_) => Hypothesis::Envelope,
        _ => Hypothesis::Classified(c.insert(classify(b.sfc(), ranges))),
    }
}

fn quotient_data(q: &ZhuQuotient) -> serde_json::Value {
    let table: Vec<Vec<Option<Vec<String>>>> = q
        .table
        .iter()
        .map(|row| row.iter().map(|c| c.as_ref().map(|v| v.iter().map(scalar::fmt).collect())).collect())
        .collect();
    json!({ "dimension": q.dim(), "representatives": q.labels, "table": table, "unknown_ideal_generators": q.unknown_generators })
}

fn zhu_command(
    r: &mut Report,
    b: &Built,
    cutoff: Option<i64>,
    tensor_with: Option<&Path>,
    smash_with: Option<&Path>,
    ranges: &AxiomRanges,
) -> Result<(), Failure> {
    let s = b.sfc();
    let w = cutoff.unwrap_or(s.carrier().cutoff);
    let ctx = ZhuContext::new(s, w).map_err(LoadError::from)?;
    let mut cls = None;
    let why = base_hypothesis(b, &mut cls, ranges);
    let refuse = |r: &mut Report, e: zhu::ZhuError| {
        r.disclosures.push(format!("no quotient computed: {e}"));
        r.verdict = Verdict::Inconclusive;
    };
    r.extend(zhu::check_star_identities(&ctx, &StarRanges::default()));
    r.extend(zhu::check_zero_modes(&ctx, &FAModule::regular(s), &StarRanges::default()));
    match (tensor_with, smash_with) {
        (None, None) => match zhu::zhu_algebra(&ctx, why) {
            Ok(q) => {
                r.extend(q.reports.iter().cloned());
                r.push(zhu::check_commutative(&ctx, &q));
                r.data = quotient_data(&q);
            }
            Err(e) => refuse(r, e),
        },
        (Some(f), None) => {
            let AlgebraFile::Associative(a) = build::parse_file(f)? else {
                return Err(Failure::Usage(format!("{}: --tensor-with needs an associative file", f.display())));
            };
            // the composite is justified when the base quotient is
            if let Err(e) = zhu::zhu_algebra(&ctx, why) {
                refuse(r, e);
                return Ok(());
            }
            let m = trivial_sfc(&a).map_err(LoadError::from)?;
            let v = tensor_sfc(s, &m);
            let cv = ZhuContext::new(&v, w).map_err(LoadError::from)?;
            let q = zhu::zhu_algebra(&cv, Hypothesis::TensorWithAlgebra).map_err(LoadError::from)?;
            r.extend(q.reports.iter().cloned());
            let emb = |i: usize, j: usize| v.carrier().find(&format!("{}⊗{}", s.label(i), m.label(j)));
            r.push(zhu::check_tensor_isomorphism(&ctx, &a, &cv, emb));
            r.data = quotient_data(&q);
        }
        (None, Some(f)) => {
            if let Err(e) = zhu::zhu_algebra(&ctx, why) {
                refuse(r, e);
                return Ok(());
            }
            let g = group_file(f)?;
            let act = build::group_action(&g, b)?;
            let v = smash_sfc(s, &act).map_err(LoadError::from)?;
            let cv = ZhuContext::new(&v, w).map_err(LoadError::from)?;
            let q = zhu::zhu_algebra(&cv, Hypothesis::SmashWithGroup).map_err(LoadError::from)?;
            r.extend(q.reports.iter().cloned());
            let emb = |i: usize, h: usize| v.carrier().find(&format!("{}⊗{}", s.label(i), act.elements[h]));
            r.push(zhu::check_smash_isomorphism(&ctx, &act, &cv, emb));
            r.data = quotient_data(&q);
        }
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = |s: &str| range(&Some(s.to_string()), (0, 0), "--n-range").ok();
        assert_eq!(r("-1..1"), Some((-1, 1)));
        assert_eq!(r(" 2 .. 2 "), Some((2, 2)));
        assert_eq!(r("3..1"), None);
        assert_eq!(r("3"), None);
        assert_eq!(range(&None, (-3, 3), "--n-range").ok(), Some((-3, 3)));
    }

    #[test]
    fn exit_codes_follow_the_verdict() {
        let mut r = Report::new(vec![]);
        assert_eq!(r.exit_code(), 0);
        r.verdict = Verdict::Inconclusive;
        assert_eq!(r.exit_code(), 2);
        r.verdict = r.verdict.and(Verdict::Fail);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
