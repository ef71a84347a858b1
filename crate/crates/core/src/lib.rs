//! Geometry of diagonal qudit density matrices.
//!
//! A diagonal `n × n` density matrix can be described in three coordinate
//! systems:
//!
//! * **p-space**: the occupation probabilities, a point of the `(n-1)`-simplex;
//! * **λ-space**: the `n-1` coefficients of the diagonal su(n) generators;
//! * **t-space**: the trace powers `t_ℓ = Tr ρ^ℓ`, `ℓ = 2..n`.
//!
//! The crate builds the generators and simplex frame ([`gellmann`]), the maps
//! between the three spaces ([`states`]), Gibbs states of finite spectra
//! ([`thermal`]), spin Hamiltonians including the Lipkin-Meshkov-Glick model
//! ([`hamiltonian`]) and the loci that organise the simplex ([`geometry`]).

pub mod error;
pub mod gellmann;
pub mod geometry;
pub mod hamiltonian;
pub mod linalg;
pub mod roots;
pub mod states;
pub mod thermal;
pub mod tolerance;

pub use error::{Error, Result};
pub use gellmann::{bloch_bound, build_generators, simplex_frame, GeneratorSet, SimplexFrame};
pub use geometry::{Locus, ParamCurve, Sampling, Space, SurfaceMesh};
pub use hamiltonian::{angular_momentum, AngularMomentum, LMGParams, PhaseRegion, RegionClass, Spin};
pub use states::{BlochDiagonal, DegeneracyPattern, InvariantVector, ProbabilityVector};
pub use thermal::{Spectrum, ThermalState, ThermalTrajectory};
pub use tolerance::Tolerances;
