// scratch: phase-scan cross-check at small eps
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::profile::{
    default_tolerance, giant_vortex_inner_radius, minimize_giant_vortex_profile,
};
use gpdisc::tf::refined_tf_energy;

fn main() {
    let eps: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.01);
    let n: usize = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2049);
    let params = PhysicalParams::from_omega0(eps, 0.30).unwrap();
    let r_lo = giant_vortex_inner_radius(&params);
    let grid = RadialGrid::uniform(r_lo, n).unwrap();
    let tol = default_tolerance(&params);
    println!(
        "eps={eps} Omega={:.3} omega_tf={:.2} r_lo={:.4}",
        params.omega(),
        params.omega_tf(),
        r_lo
    );
    let mut best = (0i64, f64::INFINITY);
    let lo = (params.omega_tf() * 0.7) as i64;
    let hi = (params.omega_tf() * 1.6) as i64 + 4;
    for w in lo..=hi {
        let gv = minimize_giant_vortex_profile(&params, w, &grid, tol).unwrap();
        let e = gv.profile.energy;
        let tf_model = refined_tf_energy(&params, w).unwrap();
        if e < best.1 {
            best = (w, e);
        }
        println!(
            "w={w:3}  E_profile={e:.4}  hTF_numeric={:.4}  residual={:.2e} iters={}",
            tf_model.energy, gv.profile.residual, gv.profile.iterations
        );
    }
    println!("argmin profile-level: {} (E = {:.4})", best.0, best.1);
}
