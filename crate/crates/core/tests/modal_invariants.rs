//! Modal basis and coupling coefficients: closed forms, symmetry
//! identities, convergence, and the radial integrals against quadrature.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tubefit::modal::{coupling_coefficients, duct_wavenumbers, radial_integral, CouplingConfig, TailModel};
use tubefit::{DuctGeometry, MediumProperties};

mod common;
use common::{adaptive_simpson, quadrature};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn sample(r1: f64, t: f64) -> DuctGeometry {
    DuctGeometry::new(r1, 0.07, t).unwrap()
}

#[test]
fn radial_integral_against_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let k = rng.gen_range(0.0..300.0);
        let a = rng.gen_range(0.0..0.06);
        let b = rng.gen_range(a + 1e-3..=0.07);
        let exact = radial_integral(k, a, b);
        let quad = quadrature(k, a, b);
        let scale = quad.abs().max(1e-6 * b * b);
        assert!((exact - quad).abs() < 1e-8 * scale, "k={k} a={a} b={b}: {exact:e} vs {quad:e}");
    }
    assert!((radial_integral(0.0, 0.0, 0.04) - 0.0008).abs() < 1e-18);
    let x1 = 3.8317059702075125;
    assert!(radial_integral(x1 / 0.07, 0.0, 0.07).abs() < 1e-10 * 0.07 * 0.07);
    let v = radial_integral(10.0, 0.04, 0.07);
    assert!((v - quadrature(10.0, 0.04, 0.07)).abs() < 1e-10 * v.abs());
}

#[test]
fn basis_examples() {
    let medium = MediumProperties::air();
    let basis = duct_wavenumbers(&sample(0.04, 0.0052), 2).unwrap();
    assert!((basis.wavenumbers()[1] - 54.7386).abs() < 1e-4);
    let fc = basis.first_cutoff(&medium).unwrap();
    assert!((fc - 2988.19).abs() < 0.01, "{fc}");
    let single = duct_wavenumbers(&sample(0.04, 0.0052), 1).unwrap();
    assert_eq!(single.wavenumbers(), &[0.0]);
    assert!(single.first_cutoff(&medium).is_none());
    assert!(duct_wavenumbers(&sample(0.04, 0.0052), 0).is_err());
}

#[test]
fn eigenmode_examples() {
    let basis = duct_wavenumbers(&sample(0.04, 0.0052), 4).unwrap();
    for r in [0.0, 0.01, 0.05, 0.07] {
        assert_eq!(basis.eigenmode(0, r).unwrap(), 1.0);
    }
    assert!((basis.eigenmode(1, 0.07).unwrap() - 1.0).abs() < 1e-14);
    assert!((basis.eigenmode(1, 0.0).unwrap() + 2.4829).abs() < 1e-4);
    assert!(basis.eigenmode(1, 0.071).is_err());
    assert!(basis.eigenmode(4, 0.01).is_err());
    // orthogonality of the modes over the cross-section, by quadrature
    for (m, n) in [(1, 2), (1, 3), (2, 3), (0, 2)] {
        let v = adaptive_simpson(
            &|r| basis.eigenmode(m, r).unwrap() * basis.eigenmode(n, r).unwrap() * r,
            0.0,
            0.07,
            1e-15,
        );
        assert!(v.abs() < 1e-10, "modes {m},{n}: {v:e}");
    }
}

#[test]
fn plane_wave_closed_form() {
    let medium = MediumProperties::air();
    for (r1, f) in [(0.04, 1000.0), (0.051, 300.0), (0.02, 2500.0)] {
        let g = sample(r1, 0.005);
        let k = coupling_coefficients(&g, &medium, f, &CouplingConfig::plane_wave()).unwrap();
        let a = Complex64::new(-medium.alpha() / g.s2(), 0.0);
        for v in [k.a, k.b, k.c, k.d] {
            assert!(rel(v, a) < 1e-12);
        }
        for v in [k.e, k.f, k.g, k.h] {
            assert!(rel(v, -a) < 1e-12);
        }
    }
}

#[test]
fn reciprocity_and_mirror_identities() {
    let medium = MediumProperties::air();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let r1 = rng.gen_range(0.01..0.065);
        let f = rng.gen_range(100.0..2900.0);
        let k = coupling_coefficients(&sample(r1, 0.005), &medium, f, &CouplingConfig::default()).unwrap();
        assert!(rel(k.b, k.c) < 1e-12);
        assert!(rel(k.f, k.g) < 1e-12);
        for (x, y) in [(k.e, k.a), (k.f, k.b), (k.g, k.c), (k.h, k.d)] {
            assert!((x + y).norm() < 1e-12 * y.norm());
        }
    }
}

#[test]
fn doubling_modes_converges() {
    let medium = MediumProperties::air();
    let config = |modes| CouplingConfig {
        modes,
        ..CouplingConfig::default()
    };
    let change = |g: &DuctGeometry, f: f64| {
        let a = coupling_coefficients(g, &medium, f, &config(50)).unwrap().as_array();
        let b = coupling_coefficients(g, &medium, f, &config(100)).unwrap().as_array();
        a.iter().zip(&b).map(|(x, y)| rel(*x, *y)).fold(0.0, f64::max)
    };
    assert!(change(&sample(0.04, 0.0052), 1000.0) < 1e-8);
    for g in [sample(0.04, 0.0052), sample(0.051, 0.008)] {
        for f in [300.0, 1000.0, 1750.0, 2500.0] {
            let c = change(&g, f);
            assert!(c < 1e-6, "r1={} f={f}: {c:e}", g.r1);
        }
    }
}

#[test]
fn tail_agrees_with_long_truncated_sum() {
    // the closed tail with 64 modes against 6000 explicit modes, whose own
    // truncation error is a few 1e-9
    let medium = MediumProperties::air();
    let g = sample(0.04, 0.0052);
    let tailed = coupling_coefficients(&g, &medium, 1000.0, &CouplingConfig::default()).unwrap();
    let long = coupling_coefficients(
        &g,
        &medium,
        1000.0,
        &CouplingConfig {
            modes: 6000,
            tolerance: f64::INFINITY,
            tail: TailModel::Truncated,
        },
    )
    .unwrap();
    for (x, y) in tailed.as_array().iter().zip(long.as_array()) {
        assert!(rel(*x, y) < 2e-8, "{x} vs {y}");
    }
}
