//! Simplicial pairs, cochains with finite abelian coefficients, relative
//! cohomology with canonical representatives, pullbacks and cup products.

mod cochain;
mod cohomology;
mod cup;
mod sequence;
mod simplicial;
mod subdivision;

pub use cochain::{coboundary, coboundary_matrix, extend_by_zero, pullback_cochain, Chain, Cochain};
pub use cohomology::{coboundary_preimage, cohomology, cohomology_order, induced_pullback, CohomologyClass, CohomologyGroup};
pub use cup::{cup_evaluate, cup_evaluate_classes, fundamental_cycle};
pub use sequence::{long_exact_sequence_check, sequence_segment, ExactnessReport, SequenceSegment};
pub use simplicial::{permutation_sign, Simplex, SimplicialComplex, SimplicialMap, SimplicialPair, Subcomplex};
pub use subdivision::{barycentric_subdivision, Subdivision};
