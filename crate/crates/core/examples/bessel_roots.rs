//! Bessel functions and the zeros of J1 that fix the radial duct modes.

use tubefit::specfun::{bessel_j0, bessel_j1, j1_roots};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in [0.5, 1.0, 5.0, 12.5, 40.0, 250.0] {
        println!("x = {x:>6}: J0 = {:+.16e}  J1 = {:+.16e}", bessel_j0(x)?, bessel_j1(x)?);
    }
    let table = j1_roots(10)?;
    println!("\nzeros of J1 (x_0 = 0 is the plane wave):");
    for (n, x) in table.roots().iter().enumerate() {
        println!("  x_{n} = {x:.15}  J1(x_n) = {:+.1e}", bessel_j1(*x)?);
    }
    Ok(())
}
