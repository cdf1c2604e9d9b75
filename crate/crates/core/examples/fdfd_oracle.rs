//! The finite-difference oracle on its own: empty-duct PML check, the
//! transparent air sample, and a reference sample, with timings.

use std::time::Instant;

use num_complex::Complex64;
use tubefit::oracle::{build_scene, scattering_from_ports, solve_harmonic, MaterialSpec, OracleSettings};
use tubefit::{DuctGeometry, MediumProperties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    let geometry = DuctGeometry::new(0.04, 0.07, 0.0052)?;
    let air = MaterialSpec::air(&geometry, &medium);
    let z2 = medium.alpha() / geometry.s3();
    let sample = MaterialSpec::new(Complex64::new(5.0, 0.0), Complex64::new(15.0 * z2, 0.0));
    let pml: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);

    let cases = [("empty duct", air, false), ("air sample", air, true), ("sample 1", sample, true)];
    for (name, material, sleeve) in cases {
        let settings = OracleSettings {
            sleeve,
            pml_cells: pml,
            ..OracleSettings::default()
        };
        let scene = build_scene(&material, &geometry, &medium, 2500.0, &settings)?;
        println!(
            "{name}: {} x {} cells, dx = {:.3} mm, dr = {:.3} mm, PML {pml}",
            scene.nx,
            scene.nr,
            scene.dx * 1e3,
            scene.dr * 1e3
        );
        for f in [300.0, 1000.0, 2500.0] {
            let start = Instant::now();
            let d = scattering_from_ports(&solve_harmonic(&scene, f)?)?;
            let phase = Complex64::from_polar(1.0, -medium.wavenumber(f) * geometry.t);
            println!(
                "  {f:>6.0} Hz  |T| = {:.6}  arg(T e^-ik0t) = {:+.2e}  |R| = {:.2e}  |T|²+|R|² = {:.6}  ({:.2} s)",
                d.transmission.norm(),
                (d.transmission * phase).arg(),
                d.reflection.norm(),
                d.transmission.norm_sqr() + d.reflection.norm_sqr(),
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
