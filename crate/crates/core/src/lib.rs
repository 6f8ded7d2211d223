//! Exact sheaf cohomology on P^2 and the Hirzebruch surfaces F_e, and the
//! dimension counts for K3 carpets built from it.
//!
//! Modules, bottom up:
//!
//! - [`surfaces`]: Picard lattices, intersection forms, canonical classes,
//!   positivity and Riemann-Roch.
//! - [`line_cohomology`]: closed-form `h^i` of every line bundle via the
//!   ruling and Serre duality.
//! - [`cech`]: an independent Čech-complex oracle over the toric cover.
//! - [`exact_seq`]: exact min/max propagation through long exact sequences.
//! - [`carpets`]: abstract and embedded carpet counts, double covers and
//!   Hilbert scheme tangent spaces.
//! - [`battery`]: the full list of checked claims, as run by the CLI.
//!
//! All arithmetic is exact. The linear algebra kernels are generic over
//! [`scalar::ExactField`]; the engine instantiates them with [`Rational`].

pub mod battery;
pub mod carpets;
pub mod cech;
pub mod error;
pub mod exact_seq;
pub mod fault;
pub mod line_cohomology;
pub mod linalg;
pub mod lp;
pub mod scalar;
pub mod surfaces;

/// Exact rationals with machine-word parts; entries stay small here.
pub type Rational = num_rational::Ratio<i128>;

/// Arbitrary-precision rationals, for callers that need unbounded entries.
pub type BigRational = num_rational::BigRational;

pub use carpets::{CarpetReport, DoubleCoverReport, EmbeddingData, HilbertReport};
pub use error::{Error, Result};
pub use exact_seq::{CohInterval, LesInstance, SequenceSystem};
pub use line_cohomology::CohVector;
pub use surfaces::{DivisorClass, SurfaceModel};
