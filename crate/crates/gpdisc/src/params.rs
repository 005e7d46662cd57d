//! Physical parameters `(eps, Omega)` and the three critical speeds.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The pair `(eps, Omega)`: coupling written as `1/eps^2`, angular speed
/// `Omega >= 0`. Everything else in the crate is derived from these two
/// numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    epsilon: f64,
    omega: f64,
}

impl PhysicalParams {
    pub fn new(epsilon: f64, omega: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon = {epsilon} outside (0, 1)"
            )));
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParams(format!("omega = {omega} negative")));
        }
        Ok(Self { epsilon, omega })
    }

    /// Build from the giant-vortex scaling `Omega = Omega0 / (eps^2 |log eps|)`.
    pub fn from_omega0(epsilon: f64, omega0: f64) -> Result<Self> {
        if !(omega0 >= 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidParams(format!("omega0 = {omega0} negative")));
        }
        let log = (1.0 / epsilon).ln();
        Self::new(epsilon, omega0 / (epsilon * epsilon * log))
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `|log eps|`.
    pub fn abs_log_eps(&self) -> f64 {
        (1.0 / self.epsilon).ln()
    }

    /// Giant-vortex reduced speed `Omega0 = Omega eps^2 |log eps|`, always
    /// recomputed from `(eps, Omega)`.
    pub fn omega0(&self) -> f64 {
        self.omega * self.epsilon * self.epsilon * self.abs_log_eps()
    }

    /// Integer part `[Omega]`.
    pub fn omega_floor(&self) -> i64 {
        self.omega.floor() as i64
    }

    /// The hole threshold is `Omega > 2/(sqrt(pi) eps)`.
    pub fn has_hole(&self) -> bool {
        self.omega > self.critical_speeds().omega_c2
    }

    /// The giant-vortex phase scale `2/(3 sqrt(pi) eps)`.
    pub fn omega_tf(&self) -> f64 {
        2.0 / (3.0 * std::f64::consts::PI.sqrt() * self.epsilon)
    }

    /// Admissible window for the integer phase, `|omega| <= eps^(-5/4) |log eps|^(-3/4)`
    /// with constant 1.
    pub fn phase_window(&self) -> f64 {
        self.epsilon.powf(-1.25) * self.abs_log_eps().powf(-0.75)
    }

    pub fn critical_speeds(&self) -> CriticalSpeeds {
        let pi = std::f64::consts::PI;
        let log = self.abs_log_eps();
        CriticalSpeeds {
            omega_c1: log,
            omega_c2: 2.0 / (pi.sqrt() * self.epsilon),
            omega_c3: 2.0 / (3.0 * pi * self.epsilon * self.epsilon * log),
        }
    }
}

/// Leading-order critical speeds: first vortex, hole formation, giant vortex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalSpeeds {
    pub omega_c1: f64,
    pub omega_c2: f64,
    pub omega_c3: f64,
}

/// Leading-order formulas for the three critical speeds.
pub fn critical_speeds(params: &PhysicalParams) -> CriticalSpeeds {
    params.critical_speeds()
}
