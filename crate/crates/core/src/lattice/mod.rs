//! Exact orderings of `Z^k` by chains of normal vectors over `Q(√2)`.

mod density;
pub mod intmat;
mod perturb;
mod quad;
mod spec;
mod sublattice;

pub use density::{classify_by_search, classify_density, classify_density_with, lattice_ball, DensityMethod, DensityReport, Verdict};
pub use perturb::{perturb_dense, PerturbOptions, PerturbResult};
pub use quad::{format_rational, parse_rational, quad_sign, rat, QuadScalar};
pub use spec::{dot, lex_sign, LexConeSpec};
pub use sublattice::{extend_by_quotient, saturate, SaturationResult, Sublattice};
