//! Coupling coefficients A–H for the two reference samples across the sweep,
//! with the doubling-based convergence figure of each modal sum.

use tubefit::modal::{CouplingConfig, CouplingModel, TailModel};
use tubefit::{DuctGeometry, MediumProperties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    for (name, r1, t) in [("sample 1", 0.040, 0.0052), ("sample 2", 0.051, 0.008)] {
        let geometry = DuctGeometry::new(r1, 0.07, t)?;
        println!(
            "{name}: r1 = {r1} m, plane-wave limit -rho c / S2 = {:.4e}",
            -medium.alpha() / geometry.s2()
        );
        let model = CouplingModel::new(&geometry, CouplingConfig::default())?;
        let lo = CouplingModel::new(
            &geometry,
            CouplingConfig {
                modes: 50,
                tolerance: 1.0,
                tail: TailModel::Asymptotic,
            },
        )?;
        let hi = CouplingModel::new(
            &geometry,
            CouplingConfig {
                modes: 100,
                tolerance: 1.0,
                tail: TailModel::Asymptotic,
            },
        )?;
        println!(
            "{:>8} {:>24} {:>24} {:>24} {:>10} {:>10}",
            "f (Hz)", "A", "B = C", "D", "N/2->N", "50->100"
        );
        for f in [300.0, 1000.0, 2000.0, 2500.0] {
            let c = model.coefficients(&medium, f)?;
            let (a, b) = (lo.coefficients(&medium, f)?, hi.coefficients(&medium, f)?);
            let doubling = a
                .as_array()
                .iter()
                .zip(b.as_array().iter())
                .map(|(x, y)| (x - y).norm() / y.norm())
                .fold(0.0, f64::max);
            println!(
                "{f:>8.0} {:>24.5e} {:>24.5e} {:>24.5e} {:>10.2e} {:>10.2e}",
                c.a,
                c.b,
                c.d,
                c.convergence.unwrap_or(0.0),
                doubling
            );
        }
    }
    Ok(())
}
