//! Error type shared by all solver and analysis modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("grid too coarse: {points} points inside [{r_lo:.6}, 1], need at least {min}")]
    GridTooCoarse { points: usize, r_lo: f64, min: usize },

    #[error("phase omega = {omega} outside admissible window |omega| <= {window:.3}")]
    PhaseOutOfWindow { omega: i64, window: f64 },

    #[error("no convergence after {iterations} iterations, residual {residual:.3e}")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("integer search found non-unimodal energies near omega = {near}")]
    NotUnimodal { near: i64 },

    #[error("wavefunction not normalized: |mass - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("cutoff t = {t:.3e} outside window [{lo:.3e}, {hi:.3e})")]
    CutoffOutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("density mask removed {removed_fraction:.3} of the annulus (limit {limit:.3})")]
    DensityTooSmall { removed_fraction: f64, limit: f64 },

    #[error("amplitude threshold {0} invalid, need 0 < t < 1")]
    ThresholdInvalid(f64),

    #[error("wavefunction modulus below {floor:.3e} on the circle r = {r:.6}")]
    ZeroOnCircle { r: f64, floor: f64 },

    #[error("empty bulk region: r_in = {r_in:.6} >= r_out = {r_out:.6}")]
    EmptyBulk { r_in: f64, r_out: f64 },

    #[error("degenerate split weight: integral of g^2/s is {0:.3e}")]
    DegenerateWeight(f64),

    #[error("bisection found no sign change in [{lo}, {hi}] at eps = {eps}: {context}")]
    BisectionFailed {
        eps: f64,
        lo: f64,
        hi: f64,
        context: String,
    },

    #[error("profile maximum sits at a grid endpoint (index {0})")]
    MaxNotFound(usize),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("io error at {path}: {message}")]
    Io { path: String, message: String },
}
