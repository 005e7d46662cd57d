// scratch: competitor energies for k-vortex configurations at Omega = 3|log eps|
use gpdisc::field::{minimize, DescentControls, Wavefunction2D};
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::profile::minimize_density_profile;
use gpdisc::vortex::detect_vortices;
use num_complex::Complex64;

fn main() {
    let eps = 0.05;
    let omega: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3.0 * (1.0f64 / eps).ln());
    let params = PhysicalParams::new(eps, omega).unwrap();
    let grid = RadialGrid::uniform(0.0, 192).unwrap();
    let prof = minimize_density_profile(&params, &grid, 1e-3).unwrap();
    let mut controls = DescentControls::new(&params);
    controls.tol = 5e-4;
    controls.max_iters = 8000;

    for k in 0..=6usize {
        // k vortices on a ring at r = 0.45 (k = 0: none; k = 1: centered)
        let pts: Vec<(f64, f64)> = if k == 0 {
            vec![]
        } else if k == 1 {
            vec![(0.0, 0.0)]
        } else {
            (0..k)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / k as f64 + 0.3;
                    (0.45 * th.cos(), 0.45 * th.sin())
                })
                .collect()
        };
        let gcl = grid.clone();
        let vals = prof.values.clone();
        let t = 0.07;
        let mut psi = Wavefunction2D::from_fn(grid.clone(), 384, |r, theta| {
            let g = gcl.interp(&vals, r);
            let (x, y) = (r * theta.cos(), r * theta.sin());
            let mut phase = Complex64::new(1.0, 0.0);
            let mut dmin = f64::INFINITY;
            for &(px, py) in &pts {
                let dz = Complex64::new(x - px, y - py);
                let d = dz.norm();
                dmin = dmin.min(d);
                if d > 1e-300 {
                    phase *= dz / d;
                } else {
                    phase = Complex64::new(0.0, 0.0);
                }
            }
            let xi = (dmin / t).min(1.0);
            g * xi * phase
        });
        psi.project_mass();
        let out = minimize(&psi, &params, &controls);
        let set = detect_vortices(&out.psi, 0.3).unwrap();
        println!(
            "k={k}: E = {:.6} (residual {:.1e}, conv {}), vortices after relax = {} (degree {})",
            out.breakdown.total,
            out.residual,
            out.converged,
            set.len(),
            set.total_degree()
        );
    }
}
