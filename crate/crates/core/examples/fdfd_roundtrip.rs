//! End-to-end check of the retrieval against the finite-difference oracle.
//!
//! For each reference sample: simulate (T, R), retrieve (n1, z1), and also
//! evaluate the closed-form extraction on the oracle's own face-averaged
//! fields. The second column isolates the retrieval's modelling error: it
//! uses no radiation model at all.

use num_complex::Complex64;
use tubefit::oracle::{build_scene, scattering_from_ports, solve_field, MaterialSpec, OracleSettings};
use tubefit::retrieval::{impedance_from_fields, index_from_fields, retrieve_sweep, FieldState, GapProperties, RetrievalConfig};
use tubefit::{DuctGeometry, MediumProperties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    let freqs = [300.0, 1000.0, 2000.0];
    for (name, r1, t, n1, ratio) in [("sample 1", 0.040, 0.0052, 5.0, 15.0), ("sample 2", 0.051, 0.008, 7.0, 10.0)] {
        let geometry = DuctGeometry::new(r1, 0.07, t)?;
        let z2 = GapProperties::new(&geometry, &medium).z2;
        let material = MaterialSpec::new(Complex64::new(n1, 0.0), Complex64::new(ratio * z2, 0.0));
        let scene = build_scene(&material, &geometry, &medium, 2500.0, &OracleSettings::default())?;
        let mut data = Vec::new();
        let mut direct = Vec::new();
        for &f in &freqs {
            let field = solve_field(&scene, f)?;
            data.push(scattering_from_ports(&field.port_record(&scene))?);
            let w = FieldState::from_array(field.face_averages(&scene));
            let k0 = medium.wavenumber(f);
            direct.push((index_from_fields(&w, k0, t, 0, 1)?, impedance_from_fields(&w)? / z2));
        }
        let out = retrieve_sweep(&data, &geometry, &medium, &RetrievalConfig::default())?;
        println!("{name}: n1 = {n1}, z1/z2 = {ratio}");
        println!(
            "{:>7} {:>26} {:>26} | {:>22} {:>22}",
            "f (Hz)", "retrieved n1", "retrieved z1/z2", "face-average n1", "face-average z1/z2"
        );
        for (r, (n, z)) in out.iter().zip(direct) {
            println!("{:>7.0} {:>26.6} {:>26.6} | {:>22.5} {:>22.5}", r.frequency, r.n1, r.z1 / z2, n, z);
        }
    }
    Ok(())
}
