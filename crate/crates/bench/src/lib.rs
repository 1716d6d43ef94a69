//! Shared fixtures for the criterion benches.

use rotsurf_core::families::{minimal_meridian, IvpConfig, MinimalParams};
use rotsurf_core::{Meridian, SurfaceSpec, SurfaceType};

/// Type I surface with a transcendental meridian, valid on `[-1, 1]`.
pub fn closed_form_spec() -> SurfaceSpec {
    let m = Meridian::from_dsl("cosh(0.4*u)", Some("sinh(u) + 2*u"), (-1.0, 1.0)).unwrap();
    SurfaceSpec::new(SurfaceType::TypeI, 1.5, 0.7, m).unwrap()
}

/// Same surface resampled onto `n` Hermite nodes.
pub fn sampled_spec(n: usize) -> SurfaceSpec {
    let s = closed_form_spec();
    SurfaceSpec { meridian: s.meridian.to_sampled(n).unwrap(), ..s }
}

pub fn minimal_spec() -> SurfaceSpec {
    let p = MinimalParams { a: 1.0, c: std::f64::consts::FRAC_PI_4, eps: 1.0, alpha: 1.0, beta: 1.0 };
    let m = minimal_meridian(SurfaceType::TypeI, p, Some((-2.0, 2.0))).unwrap();
    SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, m).unwrap()
}

pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn flat_ivp(h: f64) -> IvpConfig {
    IvpConfig { u0: 1.0, f0: 1.0, fp0: 0.3, u_end: 2.0, h }
}
