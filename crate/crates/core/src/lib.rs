//! Exact computation of kernels of Kostant's cubic Dirac operator and of the
//! t-noncubic Dirac operators on `V ⊗ S`, by combinatorial formulas and by an
//! explicit matrix oracle.

pub mod error;
pub mod geom;
pub mod kernelcalc;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod repweights;
pub mod rootsys;
pub mod spinweights;

pub use error::{Error, Result};
pub use rational::{Q, Weight};
pub use rootsys::{Family, RootSystem, WeylElement};
