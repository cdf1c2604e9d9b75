//! Averaged-model round trip for the two reference samples: predict (T, R)
//! from known `n1`, `z1`, then retrieve them with the 8×8 system.

use num_complex::Complex64;
use tubefit::modal::CouplingConfig;
use tubefit::retrieval::{forward_averaged_sweep, retrieve_sweep, GapProperties, RetrievalConfig};
use tubefit::{DuctGeometry, MediumProperties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    let freqs: Vec<f64> = (0..12).map(|i| 300.0 + 200.0 * i as f64).collect();
    for (name, r1, t, n1, ratio) in [("sample 1", 0.040, 0.0052, 5.0, 15.0), ("sample 2", 0.051, 0.008, 7.0, 10.0)] {
        let geometry = DuctGeometry::new(r1, 0.07, t)?;
        let z2 = GapProperties::new(&geometry, &medium).z2;
        let (n1, z1) = (Complex64::new(n1, 0.0), Complex64::new(ratio * z2, 0.0));
        let data = forward_averaged_sweep(n1, z1, &geometry, &medium, &freqs, CouplingConfig::default())?;
        let out = retrieve_sweep(&data, &geometry, &medium, &RetrievalConfig::default())?;
        println!("{name}: n1 = {n1}, z1/z2 = {ratio}");
        println!(
            "{:>8} {:>22} {:>22} {:>4} {:>10} {:>10}",
            "f (Hz)", "n1", "z1/z2", "m", "cond", "residual"
        );
        for r in &out {
            println!(
                "{:>8.0} {:>22.12} {:>22.12} {:>4} {:>10.2e} {:>10.2e}",
                r.frequency,
                r.n1,
                r.z1 / z2,
                r.branch,
                r.diagnostics.condition,
                r.diagnostics.residual
            );
        }
    }
    Ok(())
}
