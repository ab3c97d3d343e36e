//! Exact computation with state–field correspondences, field algebras and
//! vertex algebras on finite truncations.

pub mod carrier;
pub mod conformal;
pub mod envelope;
pub mod fields;
pub mod format;
pub mod lambda;
pub mod linalg;
pub mod lincomb;
pub mod report;
pub mod scalar;
pub mod series;
pub mod sfc;
pub mod tensor;
pub mod zhu;
pub mod words;

pub use carrier::Carrier;
pub use conformal::ConformalPresentation;
pub use lambda::{LambdaPoly, Letter, ModuleElement};
pub use lincomb::{Entry, LinComb, Linear, Vector};
pub use report::{CheckReport, Verdict, Witness};
pub use scalar::Scalar;
pub use sfc::{check_sfc, classify, AxiomKind, AxiomRanges, Classification, Sfc};
pub use envelope::{build_envelope, Envelope, EnvelopeOptions};
pub use fields::EndField;
pub use format::{parse_algebra, AlgebraFile};
pub use sfc::{AssocAlgebra, FAModule, GroupAction};
pub use tensor::{build_tensor_algebra, TensorAlgebra, TensorBounds};
pub use zhu::{zhu_algebra, Hypothesis, ZhuContext, ZhuQuotient};
