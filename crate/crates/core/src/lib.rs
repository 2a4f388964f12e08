//! Numerical engine for a two-chain spin-boson ("double Dicke") model:
//! mean-field phase diagram, Bogoliubov excitation branches, finite-size
//! exact diagonalization with symmetry verification, and non-abelian
//! ground-manifold holonomy over coupling-space loops.

pub mod berry;
pub mod bogoliubov;
pub mod error;
pub mod exactdiag;
pub mod io;
pub mod meanfield;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};
pub use model::ModelParams;
