// scratch: hole-mass refinement study
use gpdisc::grid::RadialGrid;
use gpdisc::params::PhysicalParams;
use gpdisc::profile::{default_tolerance, minimize_density_profile, validate_profile};
use gpdisc::tf::tf_solve;
use std::f64::consts::PI;

fn main() {
    let eps = 0.05;
    let factor: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.5);
    let params = PhysicalParams::new(eps, factor * 2.0 / (PI.sqrt() * eps)).unwrap();
    let tf = tf_solve(&params);
    println!(
        "Omega = {:.4}, R_tf = {:.4}, probe radius {:.4}",
        params.omega(),
        tf.support_inner(),
        tf.support_inner() - eps
    );
    for n in [1025usize, 2049, 4097, 8193] {
        let grid = RadialGrid::uniform(0.0, n).unwrap();
        let prof = minimize_density_profile(&params, &grid, default_tolerance(&params)).unwrap();
        let diag = validate_profile(&prof, &params);
        // density at a few hole radii
        let g2 = |r: f64| {
            let v = grid.interp(&prof.values, r);
            v * v
        };
        println!(
            "n={n:5}  E={:.8}  hole_mass={:.6e}  g2(0.3)={:.3e} g2(0.45)={:.3e} g2(0.52)={:.3e} iters={}",
            prof.energy,
            diag.hole_mass,
            g2(0.3),
            g2(0.45),
            g2(0.52),
            prof.iterations
        );
        if n == 4097 {
            // competitor with the hole suppressed: if the solver were stuck,
            // this would have lower energy
            use gpdisc::profile::radial_energy;
            let om = params.omega();
            let potential: Vec<f64> = grid.nodes().iter().map(|&r| -om * om * r * r).collect();
            for cut in [0.45, 0.5, 0.54] {
                let mut values: Vec<f64> = grid
                    .nodes()
                    .iter()
                    .zip(&prof.values)
                    .map(|(&r, &v)| {
                        if r < cut {
                            v * ((r / cut).powi(6))
                        } else {
                            v
                        }
                    })
                    .collect();
                let mass: f64 = grid
                    .weights()
                    .iter()
                    .zip(&values)
                    .map(|(w, v)| w * v * v)
                    .sum();
                for v in values.iter_mut() {
                    *v /= mass.sqrt();
                }
                let e = radial_energy(&grid, &potential, eps, &values);
                println!("  suppressed below {cut}: E = {e:.8} (solver {:.8})", prof.energy);
            }
        }
    }
}
