//! Fate of homogeneous isotropic universes with a cosmological constant.
//!
//! The scale factor `a`, its rate `adot` and the density `rho` evolve under
//! the Friedmann equations for a barotropic equation of state `P(rho)`.
//! The crate integrates that system, classifies the resulting universe
//! (Big Bang, Big Crunch, eternal expansion, asymptotically static, ...),
//! checks pressureless solutions against closed forms and fits the
//! asymptotic laws near singularities and in the de Sitter regime.

pub mod asymptotics;
pub mod classifier;
pub mod dust_oracle;
pub mod dynamics;
pub mod eos;
pub mod error;
pub mod fit;
pub mod integrator;
pub mod io;
pub mod quadrature;
pub mod roots;
pub mod scenario;

pub use dynamics::{CosmoParams, State};
pub use eos::{Eos, EosModel};
pub use error::{Error, Result};
pub use integrator::{integrate, IntegrationConfig, Mode, Trajectory};
