//! Full-fill reference: a lossy layer filling the tube, its exact (T, R),
//! and the classic transfer-matrix inversion including branch unwrapping.

use num_complex::Complex64;
use tubefit::retrieval::{classic_sweep, tr_from_transfer_matrix, TransferMatrix};
use tubefit::MediumProperties;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    let t = 0.05;
    let n = Complex64::new(6.0, 0.08);
    let z = Complex64::new(4.0, -0.3) * medium.alpha();
    let freqs: Vec<f64> = (0..30).map(|i| 200.0 + 80.0 * i as f64).collect();
    let data = freqs
        .iter()
        .map(|&f| tr_from_transfer_matrix(&TransferMatrix::layer(n, z, medium.wavenumber(f), t), &medium, f))
        .collect::<Result<Vec<_>, _>>()?;
    let out = classic_sweep(&data, t, &medium, 0)?;
    println!("truth n = {n}, z/(rho0 c0) = {}", z / medium.alpha());
    for r in &out {
        println!(
            "{:>6.0} Hz  m = {}  n = {:.10}  z/(rho0 c0) = {:.10}",
            r.frequency,
            r.branch,
            r.n1,
            r.z1 / medium.alpha()
        );
    }
    Ok(())
}
