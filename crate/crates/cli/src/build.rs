//! Loading `.alg` files and saved builds into state–field correspondences.

use std::collections::BTreeMap;
use std::path::Path;

use fieldalg::envelope::{build_envelope, Envelope, EnvelopeOptions};
use fieldalg::format::{parse_algebra, AlgebraFile, GroupSpec};
use fieldalg::scalar;
use fieldalg::sfc::{trivial_sfc, AssocAlgebra, GroupAction};
use fieldalg::tensor::{build_tensor_algebra, TensorAlgebra, TensorBounds};
use fieldalg::{ConformalPresentation, Letter, ModuleElement, Sfc, Vector};
use serde::{Deserialize, Serialize};

pub const BUILD_SCHEMA: &str = "fieldalg-build/1";

/// Everything needed to rebuild an SFC, with the source text inlined.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    Envelope {
        source: String,
        weight_cutoff: i64,
        centrals: BTreeMap<String, String>,
        #[serde(default)]
        corrupted: bool,
    },
    Tensor {
        source: String,
        degree: usize,
        tpow: u32,
        order: i64,
    },
    Trivial {
        source: String,
    },
    /// A presentation checked on its own, without a build.
    Presentation {
        source: String,
    },
}

#[derive(Serialize, Deserialize)]
struct BuildFile {
    schema: String,
    recipe: Recipe,
}

pub enum Built {
    Envelope(Envelope),
    Tensor(TensorAlgebra),
    Trivial(AssocAlgebra, Sfc),
}

impl Built {
    pub fn sfc(&self) -> &Sfc {
        match self {
            Built::Envelope(e) => &e.sfc,
            Built::Tensor(t) => &t.sfc,
            Built::Trivial(_, s) => s,
        }
    }

    pub fn presentation(&self) -> Option<&ConformalPresentation> {
        match self {
            Built::Envelope(e) => Some(&e.presentation),
            Built::Tensor(t) => Some(&t.presentation),
            Built::Trivial(..) => None,
        }
    }
}

/// A failure to load or build, reported with exit code 3.
#[derive(Debug)]
pub struct LoadError(pub String);

impl<E: std::fmt::Display> From<E> for LoadError {
    fn from(e: E) -> Self {
        LoadError(e.to_string())
    }
}

pub fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|e| LoadError(format!("{}: {e}", path.display())))
}

pub fn parse_file(path: &Path) -> Result<AlgebraFile, LoadError> {
    parse_source(path, &read(path)?)
}

fn parse_source(path: &Path, text: &str) -> Result<AlgebraFile, LoadError> {
    parse_algebra(text).map_err(|e| LoadError(format!("{}:{e}", path.display())))
}

pub fn conformal(path: &Path, text: &str) -> Result<ConformalPresentation, LoadError> {
    match parse_source(path, text)? {
        AlgebraFile::Conformal(p) => Ok(p),
        other => Err(LoadError(format!("{}: expected a conformal file, found kind {}", path.display(), other.kind()))),
    }
}

pub fn parse_centrals(pairs: &[String]) -> Result<BTreeMap<String, String>, LoadError> {
    let mut out = BTreeMap::new();
    for p in pairs {
        let (k, v) = p.split_once('=').ok_or_else(|| LoadError(format!("--central expects NAME=RAT, got `{p}`")))?;
        if scalar::parse(v).is_none() {
            return Err(LoadError(format!("--central {k}: `{v}` is not a rational")));
        }
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl Recipe {
    pub fn build(&self) -> Result<Built, LoadError> {
        let here = Path::new("<build>");
        match self {
            Recipe::Envelope { source, weight_cutoff, centrals, corrupted } => {
                let p = conformal(here, source)?;
                let mut opts = EnvelopeOptions::new(*weight_cutoff);
                for (k, v) in centrals {
                    opts = opts.central(k, scalar::parse(v).ok_or_else(|| LoadError(format!("bad rational `{v}`")))?);
                }
                opts.corrupted = *corrupted;
                Ok(Built::Envelope(build_envelope(&p, opts)?))
            }
            Recipe::Tensor { source, degree, tpow, order } => {
                let p = conformal(here, source)?;
                let b = TensorBounds { degree: *degree, tpow: *tpow, weight: *order };
                Ok(Built::Tensor(build_tensor_algebra(&p, b)?))
            }
            Recipe::Trivial { source } => match parse_source(here, source)? {
                AlgebraFile::Associative(a) => {
                    let s = trivial_sfc(&a)?;
                    Ok(Built::Trivial(a, s))
                }
                other => Err(LoadError(format!("trivial build needs an associative file, found kind {}", other.kind()))),
            },
            Recipe::Presentation { .. } => Err(LoadError("a bare presentation is not a build".into())),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), LoadError> {
        let f = BuildFile { schema: BUILD_SCHEMA.into(), recipe: self.clone() };
        std::fs::write(path, serde_json::to_string_pretty(&f)? + "\n").map_err(|e| LoadError(format!("{}: {e}", path.display())))
    }
}

/// How a `.alg` file given where a build is expected becomes one.
#[derive(Clone, Debug, Default)]
pub struct Defaults {
    pub weight_cutoff: Option<i64>,
    pub centrals: Vec<String>,
}

pub const DEFAULT_WEIGHT_CUTOFF: i64 = 4;

/// FILE or BUILD: saved builds are JSON, anything else is an `.alg` file.
/// A conformal file becomes its envelope, an associative one its trivial SFC.
pub fn load(path: &Path, d: &Defaults) -> Result<(Recipe, Built), LoadError> {
    let text = read(path)?;
    let recipe = if text.trim_start().starts_with('{') {
        let f: BuildFile = serde_json::from_str(&text).map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
        if f.schema != BUILD_SCHEMA {
            return Err(LoadError(format!("{}: unsupported build schema `{}`", path.display(), f.schema)));
        }
        f.recipe
    } else {
        match parse_source(path, &text)? {
            AlgebraFile::Conformal(_) => Recipe::Envelope {
                source: text,
                weight_cutoff: d.weight_cutoff.unwrap_or(DEFAULT_WEIGHT_CUTOFF),
                centrals: parse_centrals(&d.centrals)?,
                corrupted: false,
            },
            AlgebraFile::Associative(_) => Recipe::Trivial { source: text },
            AlgebraFile::Group(_) => return Err(LoadError(format!("{}: a group file is not a build", path.display()))),
        }
    };
    let built = recipe.build()?;
    Ok((recipe, built))
}

/// The action of a cyclic group on a build, from images of its symbols:
/// generators of a presentation, or basis elements of an associative algebra.
pub fn group_action(g: &GroupSpec, b: &Built) -> Result<GroupAction, LoadError> {
    let gen: Vec<Vector> = match b {
        Built::Trivial(a, _) => g.generator_images(a.dim(), |s| a.labels.iter().position(|l| l == s))?,
        _ => {
            let p = b.presentation().unwrap();
            let find = |s: &str| p.lookup(s).filter(|l| !l.central).map(|l| l.gen as usize);
            let on_gens = g.generator_images(p.symbols().len(), find)?;
            let images: Vec<Option<ModuleElement>> = on_gens
                .iter()
                .map(|v| Some(v.map_keys(|i| Letter::free(*i as u32))))
                .collect();
            let maps = match b {
                Built::Envelope(e) => e.induced_map(&images),
                Built::Tensor(t) => t.induced_map(&images),
                Built::Trivial(..) => unreachable!(),
            };
            maps.into_iter()
                .enumerate()
                .map(|(i, m)| m.ok_or_else(|| LoadError(format!("image of {} leaves the truncation", b.sfc().label(i)))))
                .collect::<Result<_, _>>()?
        }
    };
    let act = GroupAction::cyclic(g.order, &gen);
    act.validate(b.sfc())?;
    Ok(act)
}
