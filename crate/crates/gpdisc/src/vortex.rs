//! Vorticity analysis: plaquette winding detection, circle degrees, the
//! vorticity measure `nu = (2 pi / Omega) sum d_i delta(a_i)` and its
//! uniformity statistic, and the bulk-annulus geometry.

use crate::field::Wavefunction2D;
use crate::params::PhysicalParams;
use crate::profile::RadialProfile;
use crate::tf::{tf_solve, TFSolution};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Modulus floor (relative to `max |psi|`) below which a plaquette's raw
/// phase is treated as noise and the cell enters through the merge rule.
const DEGENERATE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Vortex {
    pub r: f64,
    pub theta: f64,
    pub degree: i64,
    /// Radius of the merged flagged cluster; qualitative diagnostic only.
    pub core_scale: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VortexSet {
    pub items: Vec<Vortex>,
}

impl VortexSet {
    pub fn total_degree(&self) -> i64 {
        self.items.iter().map(|v| v.degree).sum()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn wrap_phase(d: f64) -> f64 {
    // branch-nearest increment in (-pi, pi]
    let mut x = d % (2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    } else if x <= -PI {
        x += 2.0 * PI;
    }
    x
}

/// Circulation of every plaquette, in units of radians. Each grid edge is
/// wrapped once and shared by its two cells with opposite signs, so the sum
/// over any union of cells telescopes to the boundary winding exactly.
pub fn plaquette_circulation(psi: &Wavefunction2D) -> Vec<f64> {
    let n_r = psi.n_r();
    let n_t = psi.n_theta;
    let phase: Vec<f64> = psi.values.iter().map(|z| z.im.atan2(z.re)).collect();
    // wrapped increments along theta (within ring i) and along r (j fixed)
    let edge_t = |i: usize, j: usize| -> f64 {
        let jp = (j + 1) % n_t;
        wrap_phase(phase[i * n_t + jp] - phase[i * n_t + j])
    };
    let edge_r = |i: usize, j: usize| -> f64 {
        wrap_phase(phase[(i + 1) * n_t + j] - phase[i * n_t + j])
    };
    let mut circ = vec![0.0; (n_r - 1) * n_t];
    for i in 0..n_r - 1 {
        for j in 0..n_t {
            let jp = (j + 1) % n_t;
            circ[i * n_t + j] = edge_r(i, j) + edge_t(i + 1, j) - edge_r(i, jp) - edge_t(i, j);
        }
    }
    circ
}

/// Detect vortices as merged clusters of plaquettes carrying circulation.
/// A cell is flagged when `|circulation| >= pi` and its smallest corner
/// modulus is below `amp_threshold * max|psi|`; near-zero cells are always
/// merged. Adjacent flagged cells become one vortex with the summed degree.
/// Cells touching the Dirichlet ring are excluded: the phase there carries
/// no information.
pub fn detect_vortices(psi: &Wavefunction2D, amp_threshold: f64) -> Result<VortexSet> {
    if !(amp_threshold > 0.0 && amp_threshold < 1.0) {
        return Err(Error::ThresholdInvalid(amp_threshold));
    }
    let n_r = psi.n_r();
    let n_t = psi.n_theta;
    let max_abs = psi.max_abs();
    if max_abs == 0.0 {
        return Ok(VortexSet::default());
    }
    let circ = plaquette_circulation(psi);
    let min_corner = |i: usize, j: usize| -> f64 {
        let jp = (j + 1) % n_t;
        psi.at(i, j)
            .norm()
            .min(psi.at(i + 1, j).norm())
            .min(psi.at(i + 1, jp).norm())
            .min(psi.at(i, jp).norm())
    };
    let mut flagged = vec![false; (n_r - 1) * n_t];
    for i in 0..n_r.saturating_sub(2) {
        for j in 0..n_t {
            let amp = min_corner(i, j);
            let strong = circ[i * n_t + j].abs() >= PI && amp <= amp_threshold * max_abs;
            let degenerate = amp < DEGENERATE_FLOOR * max_abs && circ[i * n_t + j].abs() >= PI;
            flagged[i * n_t + j] = strong || degenerate;
        }
    }

    // merge adjacent flagged cells (theta wraps around)
    let mut seen = vec![false; flagged.len()];
    let mut items = Vec::new();
    let h = psi.grid.spacing();
    let dtheta = 2.0 * PI / n_t as f64;
    for start in 0..flagged.len() {
        if !flagged[start] || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut cluster = Vec::new();
        while let Some(c) = stack.pop() {
            cluster.push(c);
            let (i, j) = (c / n_t, c % n_t);
            let mut push = |ii: i64, jj: i64| {
                if ii < 0 || ii >= (n_r - 1) as i64 {
                    return;
                }
                let jj = jj.rem_euclid(n_t as i64) as usize;
                let idx = ii as usize * n_t + jj;
                if flagged[idx] && !seen[idx] {
                    seen[idx] = true;
                    stack.push(idx);
                }
            };
            push(i as i64 - 1, j as i64);
            push(i as i64 + 1, j as i64);
            push(i as i64, j as i64 - 1);
            push(i as i64, j as i64 + 1);
        }
        let total: f64 = cluster.iter().map(|&c| circ[c]).sum();
        let degree = (total / (2.0 * PI)).round() as i64;
        if degree == 0 {
            continue;
        }
        // circulation-weighted centroid, circular mean in theta
        let mut wsum = 0.0;
        let mut r_mean = 0.0;
        let mut cx = 0.0;
        let mut sx = 0.0;
        for &c in &cluster {
            let (i, j) = (c / n_t, c % n_t);
            let w = circ[c].abs().max(1e-30);
            let rc = psi.grid.nodes()[i] + 0.5 * h;
            let tc = (j as f64 + 0.5) * dtheta;
            wsum += w;
            r_mean += w * rc;
            cx += w * tc.cos();
            sx += w * tc.sin();
        }
        let r_mean = r_mean / wsum;
        let theta_mean = sx.atan2(cx).rem_euclid(2.0 * PI);
        let (xm, ym) = (r_mean * theta_mean.cos(), r_mean * theta_mean.sin());
        let mut extent = 0.0f64;
        for &c in &cluster {
            let (i, j) = (c / n_t, c % n_t);
            let rc = psi.grid.nodes()[i] + 0.5 * h;
            let tc = (j as f64 + 0.5) * dtheta;
            let (x, y) = (rc * tc.cos(), rc * tc.sin());
            extent = extent.max(((x - xm).powi(2) + (y - ym).powi(2)).sqrt());
        }
        let cell_diag = (h * h + (r_mean * dtheta).powi(2)).sqrt();
        items.push(Vortex {
            r: r_mean,
            theta: theta_mean,
            degree,
            core_scale: extent + 0.5 * cell_diag,
        });
    }
    Ok(VortexSet { items })
}

/// Total phase increment around the grid circle nearest to `r`, over `2 pi`.
pub fn degree_on_circle(psi: &Wavefunction2D, r: f64) -> Result<i64> {
    let i = psi.grid.nearest(r);
    let ring = psi.ring(i);
    let max_abs = psi.max_abs();
    let floor = DEGENERATE_FLOOR * max_abs;
    if ring.iter().any(|z| z.norm() < floor) {
        return Err(Error::ZeroOnCircle {
            r: psi.grid.nodes()[i],
            floor,
        });
    }
    let n_t = psi.n_theta;
    let mut total = 0.0;
    for j in 0..n_t {
        let a = ring[j];
        let b = ring[(j + 1) % n_t];
        total += wrap_phase(b.im.atan2(b.re) - a.im.atan2(a.re));
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BulkRegime {
    /// `[R_tilde, r_max]` with `R_tilde = 0` below the hole threshold and
    /// `R_tf + gamma/(eps Omega)` above it.
    Moderate,
    /// `[R_tf + eps/|log eps|, 1 - eps^{3/2} |log eps|^2]`.
    GiantVortex,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BulkRegion {
    pub r_in: f64,
    pub r_out: f64,
    pub regime: BulkRegime,
}

impl BulkRegion {
    pub fn area(&self) -> f64 {
        PI * (self.r_out * self.r_out - self.r_in * self.r_in)
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.r_in && r <= self.r_out
    }
}

/// Bulk annulus where the vorticity statements live. `gamma` defaults to
/// `1/|log eps|`; the moderate regime takes its outer radius from the
/// profile's density maximum.
pub fn bulk_region(
    params: &PhysicalParams,
    profile: &RadialProfile,
    regime: BulkRegime,
) -> Result<BulkRegion> {
    let tf = tf_solve(params);
    let log = params.abs_log_eps();
    let eps = params.epsilon();
    let (r_in, r_out) = match regime {
        BulkRegime::Moderate => {
            let gamma = 1.0 / log;
            let r_in = if tf.has_hole {
                tf.support_inner() + gamma / (eps * params.omega())
            } else {
                0.0
            };
            (r_in, profile.r_max)
        }
        BulkRegime::GiantVortex => (
            tf.support_inner() + eps / log,
            1.0 - eps.powf(1.5) * log * log,
        ),
    };
    if r_in >= r_out {
        return Err(Error::EmptyBulk { r_in, r_out });
    }
    Ok(BulkRegion {
        r_in,
        r_out,
        regime,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformityReport {
    /// `nu(S)/|S|` over the whole region.
    pub global_ratio: f64,
    /// Per-sector ratios for the angular partition.
    pub sector_ratios: Vec<f64>,
    /// Population standard deviation of the sector ratios.
    pub dispersion: f64,
    pub total_degree: i64,
    pub region: BulkRegion,
}

/// Uniformity statistic of the vorticity measure over `region`, globally and
/// on an angular partition into `cells >= 4` sectors.
pub fn vorticity_uniformity(
    vortices: &VortexSet,
    params: &PhysicalParams,
    region: &BulkRegion,
    cells: usize,
) -> UniformityReport {
    let cells = cells.max(4);
    let area = region.area();
    let om = params.omega();
    let mut sector_degree = vec![0i64; cells];
    let mut total = 0i64;
    for v in &vortices.items {
        if region.contains(v.r) {
            total += v.degree;
            let s = ((v.theta.rem_euclid(2.0 * PI)) / (2.0 * PI) * cells as f64) as usize;
            sector_degree[s.min(cells - 1)] += v.degree;
        }
    }
    let nu = |d: i64| 2.0 * PI / om * d as f64;
    let global_ratio = nu(total) / area;
    let sector_area = area / cells as f64;
    let sector_ratios: Vec<f64> = sector_degree.iter().map(|&d| nu(d) / sector_area).collect();
    let mean = sector_ratios.iter().sum::<f64>() / cells as f64;
    let dispersion = (sector_ratios
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / cells as f64)
        .sqrt();
    UniformityReport {
        global_ratio,
        sector_ratios,
        dispersion,
        total_degree: total,
        region: *region,
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroFreeReport {
    pub min_density: f64,
    pub max_deviation: f64,
    pub max_rho_tf: f64,
    /// `min |psi|^2 > 0` at grid resolution.
    pub zero_free: bool,
    /// Deviation from the TF density stays below its scale on the region.
    pub deviation_small: bool,
}

/// Scan `|psi|^2` over the bulk region against the TF density.
pub fn zero_free_check(psi: &Wavefunction2D, region: &BulkRegion, tf: &TFSolution) -> ZeroFreeReport {
    let mut min_density = f64::INFINITY;
    let mut max_deviation = 0.0f64;
    let mut max_rho = 0.0f64;
    for i in 0..psi.n_r() {
        let r = psi.grid.nodes()[i];
        if !region.contains(r) {
            continue;
        }
        let rho = tf.density(r);
        max_rho = max_rho.max(rho);
        for z in psi.ring(i) {
            let d = z.norm_sqr();
            min_density = min_density.min(d);
            max_deviation = max_deviation.max((d - rho).abs());
        }
    }
    ZeroFreeReport {
        min_density,
        max_deviation,
        max_rho_tf: max_rho,
        zero_free: min_density > 0.0,
        deviation_small: max_deviation < max_rho,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use num_complex::Complex64;

    fn single_vortex_field() -> Wavefunction2D {
        // (x + iy) * bump: one +1 vortex at the origin
        let grid = RadialGrid::uniform(0.0, 65).unwrap();
        let mut psi = Wavefunction2D::from_fn(grid, 64, |r, theta| {
            Complex64::from_polar(r * (1.0 - r * r), theta)
        });
        psi.project_mass();
        psi
    }

    #[test]
    fn detects_single_central_vortex() {
        let psi = single_vortex_field();
        let set = detect_vortices(&psi, 0.3).unwrap();
        assert_eq!(set.len(), 1, "expected one cluster, got {:?}", set.items);
        assert_eq!(set.items[0].degree, 1);
        assert!(set.items[0].r < 0.1);
        assert_eq!(set.total_degree(), 1);
    }

    #[test]
    fn degree_matches_explicit_phase() {
        let grid = RadialGrid::uniform(0.0, 65).unwrap();
        let mut psi = Wavefunction2D::from_fn(grid, 256, |r, theta| {
            Complex64::from_polar((r + 0.05) * (1.0 - r), 100.0 * theta)
        });
        psi.project_mass();
        assert_eq!(degree_on_circle(&psi, 0.5).unwrap(), 100);
        assert_eq!(degree_on_circle(&psi, 0.8).unwrap(), 100);
        // giant-vortex-like field has no vortices away from the origin
        let set = detect_vortices(&psi, 0.3).unwrap();
        assert!(set.items.iter().all(|v| v.r < 0.1));
    }

    #[test]
    fn zero_on_circle_detected() {
        let psi = single_vortex_field();
        // the origin ring is exactly zero
        assert!(matches!(
            degree_on_circle(&psi, 0.0),
            Err(Error::ZeroOnCircle { .. })
        ));
    }

    #[test]
    fn threshold_validation() {
        let psi = single_vortex_field();
        assert!(detect_vortices(&psi, 0.0).is_err());
        assert!(detect_vortices(&psi, 1.0).is_err());
    }

    #[test]
    fn circulation_telescopes() {
        // sum of plaquette circulations inside r = 0.7 equals the winding on
        // that circle exactly (shared edges cancel)
        let psi = single_vortex_field();
        let circ = plaquette_circulation(&psi);
        let i_out = psi.grid.nearest(0.7);
        let total: f64 = (0..i_out)
            .flat_map(|i| (0..psi.n_theta).map(move |j| (i, j)))
            .map(|(i, j)| circ[i * psi.n_theta + j])
            .sum();
        let winding = 2.0 * PI * degree_on_circle(&psi, 0.7).unwrap() as f64;
        assert!((total - winding).abs() < 1e-9);
        assert!((total - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn uniformity_of_synthetic_lattice() {
        // degree-1 vortices with density Omega/(2 pi) per unit area -> ratio 1
        let params = PhysicalParams::new(0.05, 60.0).unwrap();
        let region = BulkRegion {
            r_in: 0.0,
            r_out: 0.9,
            regime: BulkRegime::Moderate,
        };
        let spacing = (2.0 * PI / params.omega()).sqrt();
        let mut items = Vec::new();
        let k_max = (1.0 / spacing).ceil() as i64 + 1;
        for mx in -k_max..=k_max {
            for my in -k_max..=k_max {
                let (x, y) = (mx as f64 * spacing, my as f64 * spacing);
                let r = (x * x + y * y).sqrt();
                if r <= region.r_out {
                    items.push(Vortex {
                        r,
                        theta: y.atan2(x).rem_euclid(2.0 * PI),
                        degree: 1,
                        core_scale: 0.0,
                    });
                }
            }
        }
        let set = VortexSet { items };
        let report = vorticity_uniformity(&set, &params, &region, 4);
        let boundary_error = 2.0 * region.r_out * spacing / (region.r_out * region.r_out);
        assert!(
            (report.global_ratio - 1.0).abs() < boundary_error.max(0.15),
            "ratio {} (boundary error {})",
            report.global_ratio,
            boundary_error
        );
        // homogeneity: scaling all degrees by k scales nu exactly
        let doubled = VortexSet {
            items: set
                .items
                .iter()
                .map(|v| Vortex {
                    degree: 3 * v.degree,
                    ..*v
                })
                .collect(),
        };
        let r2 = vorticity_uniformity(&doubled, &params, &region, 4);
        assert!((r2.global_ratio - 3.0 * report.global_ratio).abs() < 1e-12);
    }

    #[test]
    fn empty_set_gives_zero_ratio() {
        let params = PhysicalParams::new(0.05, 60.0).unwrap();
        let region = BulkRegion {
            r_in: 0.2,
            r_out: 0.8,
            regime: BulkRegime::Moderate,
        };
        let report = vorticity_uniformity(&VortexSet::default(), &params, &region, 4);
        assert_eq!(report.global_ratio, 0.0);
        assert_eq!(report.dispersion, 0.0);
    }

    #[test]
    fn bulk_region_regimes() {
        // below the hole threshold the moderate bulk starts at 0
        let params = PhysicalParams::new(0.05, 0.5 * 2.0 / (PI.sqrt() * 0.05)).unwrap();
        let grid = RadialGrid::uniform(0.0, 257).unwrap();
        let prof =
            crate::profile::minimize_density_profile(&params, &grid, 1e-2).unwrap();
        let bulk = bulk_region(&params, &prof, BulkRegime::Moderate).unwrap();
        assert_eq!(bulk.r_in, 0.0);
        assert_eq!(bulk.r_out, prof.r_max);

        // giant-vortex bulk arithmetic: r_in = R_tf + eps/|log eps|
        let gv = PhysicalParams::from_omega0(0.05, 0.25).unwrap();
        let tf = tf_solve(&gv);
        let bulk = bulk_region(&gv, &prof, BulkRegime::GiantVortex).unwrap();
        assert!((bulk.r_in - (tf.support_inner() + 0.05 / (20.0f64).ln())).abs() < 1e-12);

        // degenerate geometry
        let coarse = PhysicalParams::from_omega0(0.4, 1.0).unwrap();
        assert!(matches!(
            bulk_region(&coarse, &prof, BulkRegime::GiantVortex),
            Err(Error::EmptyBulk { .. })
        ));
    }

    #[test]
    fn zero_free_on_winding_field() {
        let grid = RadialGrid::uniform(0.0, 65).unwrap();
        let mut psi = Wavefunction2D::from_fn(grid, 64, |r, theta| {
            Complex64::from_polar(0.2 + r * (1.0 - r), 7.0 * theta)
        });
        psi.project_mass();
        let params = PhysicalParams::new(0.1, 7.0).unwrap();
        let tf = tf_solve(&params);
        let region = BulkRegion {
            r_in: 0.2,
            r_out: 0.8,
            regime: BulkRegime::Moderate,
        };
        let report = zero_free_check(&psi, &region, &tf);
        assert!(report.zero_free);
        // a constructed zero in the bulk flips the verdict
        let mut with_zero = psi.clone();
        let i = with_zero.grid.nearest(0.5);
        for j in 0..with_zero.n_theta {
            with_zero.values[i * with_zero.n_theta + j] = Complex64::new(0.0, 0.0);
        }
        let report = zero_free_check(&with_zero, &region, &tf);
        assert!(!report.zero_free);
    }
}
