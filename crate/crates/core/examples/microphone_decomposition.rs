//! Two-microphone decomposition: synthesise plane-wave pressures at three
//! microphone planes and recover (T, R), including the spacing that fails.

use num_complex::Complex64;
use tubefit::oracle::{scattering_from_ports, PortRecord};

fn main() {
    let (c0, t) = (343.0, 0.0052);
    let truth_t = Complex64::new(0.8, 0.3);
    let truth_r = Complex64::new(-0.2, 0.1);
    let positions = [-0.1, -0.07, t + 0.07];
    for f in [500.0, 2000.0, 5716.7] {
        let k = 2.0 * std::f64::consts::PI * f / c0;
        let e = |x: f64| Complex64::from_polar(1.0, k * x);
        let p = |x: f64| if x < 0.0 { e(x) + truth_r / e(x) } else { truth_t * e(x - t) };
        let record = PortRecord {
            frequency: f,
            wavenumber: k,
            thickness: t,
            positions,
            pressures: positions.map(p),
            above_cutoff: false,
        };
        match scattering_from_ports(&record) {
            Ok(d) => println!("{f:>7} Hz: T = {:.12}  R = {:.12}", d.transmission, d.reflection),
            Err(e) => println!("{f:>7} Hz: {e}"),
        }
    }
}
