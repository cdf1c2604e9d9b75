//! Radial modes of the 70 mm tube: wavenumbers, cut-on frequencies and the
//! propagating set at a few frequencies.

use tubefit::modal::duct_wavenumbers;
use tubefit::{DuctGeometry, MediumProperties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let medium = MediumProperties::air();
    let geometry = DuctGeometry::new(0.04, 0.07, 0.0052)?;
    let basis = duct_wavenumbers(&geometry, 8)?;
    println!("{:>3} {:>14} {:>12} {:>14}", "n", "k_n (1/m)", "f_c (Hz)", "psi_n(r1)");
    for n in 0..basis.modes() {
        println!(
            "{n:>3} {:>14.6} {:>12.2} {:>14.6}",
            basis.wavenumbers()[n],
            basis.cutoff_frequency(n, &medium),
            basis.eigenmode(n, geometry.r1)?
        );
    }
    for f in [1000.0, 2500.0, 3500.0, 6000.0] {
        let k0 = medium.wavenumber(f);
        let open: Vec<usize> = (0..basis.modes()).filter(|&n| basis.is_propagating(n, k0)).collect();
        println!("{f:>6} Hz: propagating {open:?}, beta_1 = {:.4}", basis.axial_wavenumber(1, k0));
    }
    Ok(())
}
