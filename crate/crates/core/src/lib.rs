//! Sparse 3D MIMO for integrated super-resolution sensing and symbiotic
//! communication with a low-altitude UAV swarm.
//!
//! The crate covers the full desk-scale simulation chain:
//!
//! - [`geometry`]: UPA / 1D nested / L-shaped nested (LNA) / planar nested
//!   (PNA) arrays on an exact half-wavelength integer grid, plus difference
//!   co-arrays and their contiguous virtual segments.
//! - [`beampattern`]: beam patterns evaluated directly from element positions
//!   and through closed forms, numeric main-lobe widths, theorem bound
//!   checks, grating-lobe positions and prominent side-lobe heights.
//! - [`channel`]: steering vectors, manifold matrices, LoS direct and
//!   backscatter cascaded channels, pilot/data snapshot synthesis with CSCG
//!   noise, sample covariance.
//! - [`doa`]: covariance vectorization onto the virtual co-array, 1D/2D
//!   spatial smoothing, MUSIC spectra with peak refinement, L-shaped angle
//!   pairing and azimuth recovery.
//! - [`gains`]: matched receive beamforming, few-pilot LS path-gain
//!   estimation and the analytic MSE of the proposed and traditional schemes.
//! - [`rates`]: MMSE receive beamforming, SIC ordering and achievable-rate
//!   evaluation for the primary transmitter and the backscatter devices.
//! - [`sim`]: seeded scenario sampling and reproducible Monte Carlo sweeps.
//!
//! All randomness flows through seeded ChaCha8 generators so every experiment
//! replays bit-identically; see [`sim`] for the seed-splitting rule.

pub mod beampattern;
pub mod channel;
pub mod doa;
mod error;
pub mod gains;
pub mod geometry;
pub mod numeric;
pub mod rates;
pub mod sim;

pub use error::Error;

/// Complex baseband sample type used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
