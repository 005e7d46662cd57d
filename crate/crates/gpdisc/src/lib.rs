//! Gross-Pitaevskii theory of a rotating Bose gas in the unit disc with
//! Dirichlet boundary conditions, in the strong-coupling scaling where the
//! interaction is written as `1/eps^2`.
//!
//! The crate is organized around the objects the theory is built from:
//!
//! * [`tf`] — the closed-form Thomas-Fermi layer (densities, energies,
//!   critical speeds, TF-level vortex cost),
//! * [`profile`] — 1D constrained minimization of the radial density
//!   functionals, including the giant-vortex annulus problem and the
//!   integer optimization of the phase winding,
//! * [`field`] — the full 2D problem on a polar grid: energy assembly,
//!   projected gradient-flow minimization, trial states and the
//!   `psi = g u exp(i n theta)` energy decoupling,
//! * [`vortex`] — winding numbers, vortex detection and the vorticity
//!   uniformity statistic,
//! * [`cost`] — the potential function `F`, its boundary split
//!   `F = F_in + F_out`, the cost function `H` and the numerical location
//!   of the third critical speed,
//! * [`symmetry`] — symmetric-vortex energies `E_n` and the
//!   second-variation test for rotational symmetry breaking.

pub mod cost;
pub mod error;
pub mod field;
pub mod grid;
pub mod params;
pub mod profile;
pub mod symmetry;
pub mod tf;
pub mod vortex;

pub use error::Error;
pub use grid::RadialGrid;
pub use params::{CriticalSpeeds, PhysicalParams};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
