//! Brute-force matrix oracle: explicit exact matrices for `π`, `γ`, the cubic
//! term and `D^t` on `V ⊗ S`, with kernels by exact elimination.

pub mod checks;
pub mod chevalley;
pub mod dirac;
pub mod reps;
pub mod spinor;

pub use chevalley::{ChevalleyData, GVec};
pub use dirac::{build_dirac, cubic_term, sigma, DiracMatrix, DiracParts};
pub use reps::{representation_matrices, ModuleMatrices, RepKind};
pub use spinor::{OracleSubalgebra, SpinorModule};
pub use checks::{run_case, verify_property_star, weyl_inequality_probe, CheckReport, Relation, CASES};
