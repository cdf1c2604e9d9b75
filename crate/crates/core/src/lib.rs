//! Effective-parameter retrieval for acoustic samples that do not fill the
//! impedance tube.
//!
//! A disk sample of radius `r1` sits in a rigid tube of radius `r2`, separated
//! from the annular air gap by a rigid sleeve. Measured transmission and
//! reflection coefficients are turned into a transfer matrix, the face-averaged
//! pressures and volume velocities of the sample and the gap are solved from an
//! 8×8 system coupling both through the duct's modal Green's function, and the
//! sample's refractive index `n1` and impedance `z1` follow in closed form.
//!
//! Time convention is e^{−iωt} throughout: a wave travelling through air of
//! thickness `t` picks up e^{+ik₀t}, and passive materials have `Im n ≥ 0`,
//! `Re z ≥ 0`.
//!
//! * [`specfun`] – J₀, J₁ and the roots of J₁.
//! * [`modal`] – duct eigenmodes and the coupling coefficients A–H.
//! * [`retrieval`] – transfer matrix, the 8×8 system, extraction and sweeps.
//! * [`oracle`] – an independent axisymmetric finite-difference solver.
//! * [`io`] – run configuration, CSV files and the command implementations.

pub mod geometry;
pub mod io;
pub mod modal;
pub mod oracle;
pub mod retrieval;
pub mod scattering;
pub mod specfun;

pub use geometry::{DuctGeometry, GeometryError, MediumProperties};
pub use scattering::ScatteringData;
