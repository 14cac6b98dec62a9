//! Point interactions on the line with the full U(2) family of boundary
//! conditions at `x = 0`.
//!
//! A self-adjoint point interaction is fixed by a unitary `U ∈ U(2)` through
//! `(U − I)Φ + iL₀(U + I)Φ′ = 0`. The crate computes bound states and
//! scattering amplitudes on the line, the discrete spectrum and eigenfunctions
//! in a box, the parity-type symmetries of the family, sweeps of the spectral
//! space, and holonomies along closed paths in parameter space.
//!
//! Everything is generic over the scalar type (`f32` or `f64`). The aliases at
//! the crate root fix it to `f64`, with `*32` variants for `f32`.
//!
//! ```
//! use u2point::{box_spectrum, BoxConfig, Interaction};
//!
//! let p = Interaction::self_dual(std::f64::consts::PI); // U = −I
//! let spec = box_spectrum(&p, &BoxConfig::default()).unwrap();
//! assert_eq!(spec.levels[0].multiplicity, 2);
//! assert!((spec.levels[0].energy - 1.0).abs() < 1e-9);
//! ```

// validation uses `!(x > 0)` so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anholonomy;
pub mod atlas;
pub mod boxspec;
pub mod error;
pub mod lineops;
pub mod scalar;
pub mod symmetry;
pub mod u2core;
pub mod wavefunction;

pub use anholonomy::{berry_phase, solid_angle, track_levels, BerryPhase, CycleKind, LevelTracking, ParameterCycle};
pub use atlas::{isospectral_orbit_sample, mobius_check, sweep_torus, Fingerprint, MobiusReport, SpectralMap};
pub use boxspec::{
    box_lowest, box_spectrum, channel_spectrum, eigenfunction, fd_oracle, secular_det, secular_roots, BoxConfig, Level,
    LevelChannel, Spectrum,
};
pub use error::{Error, Result};
pub use lineops::{bound_states, gauge_shift, scattering, BoundState, ScatteringData, Side};
pub use scalar::Real;
pub use symmetry::{
    boundary_conjugation, conjugate_u, duality_map, invariant_parity, is_scale_invariant, is_self_dual, parity_apply,
    InvariantParity, ParityOperator,
};
pub use u2core::{
    canonicalize, mat_from_params, params_from_mat, sigma_of_v, ComplexMatrix2, PointInteraction, RobinCondition,
};
pub use wavefunction::{BoundaryData, GridWavefunction};

/// Double-precision interaction parameters.
pub type Interaction = PointInteraction<f64>;
/// Single-precision interaction parameters.
pub type Interaction32 = PointInteraction<f32>;
pub type Matrix2 = ComplexMatrix2<f64>;
pub type Matrix2f32 = ComplexMatrix2<f32>;
pub type Robin = RobinCondition<f64>;
pub type Robin32 = RobinCondition<f32>;
pub type BoxSpec = BoxConfig<f64>;
pub type BoxSpec32 = BoxConfig<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Spectrum32 = Spectrum<f32>;
pub type Wavefunction = GridWavefunction<f64>;
pub type Wavefunction32 = GridWavefunction<f32>;
pub type Cycle = ParameterCycle<f64>;
pub type Cycle32 = ParameterCycle<f32>;
