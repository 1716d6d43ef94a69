//! Verification suites: every check reports its largest residual against a
//! pinned tolerance.
//!
//! Random points come from a ChaCha8 stream seeded by [`VerifyParams::seed`],
//! so two runs with the same parameters produce identical reports.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_meridian;
use crate::families::{
    class_residual, integrate_special, minimal_meridian, pnmc_meridian, IvpConfig, MinimalParams, SpecialClass,
};
use crate::invariants::{invariant_sample, invariant_sample_at, FrenetCoeffs, InvariantSample};
use crate::meridian::{fd_oracle, Meridian};
use crate::minkowski::{gram_deviation, minkowski_inner};
use crate::surface::{SurfaceSpec, SurfaceType};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const TOL_ALGEBRAIC: f64 = 1e-10;
pub const TOL_GAUSS: f64 = 1e-9;
pub const TOL_CLOSED_FORM: f64 = 1e-8;
pub const TOL_ODE: f64 = 1e-6;
/// Below this residual a convergence-order fit is meaningless.
pub const RESIDUAL_FLOOR: f64 = 1e-10;

pub const SUITES: [&str; 10] =
    ["frames", "oracles", "flat", "flat_normal", "minimal", "cmc", "pnmc", "structural", "conservation", "all"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub n_points: usize,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub notes: String,
}

impl CheckReport {
    /// `passed` is `max_abs_residual ≤ tolerance`; NaN never passes.
    pub fn new(
        name: impl Into<String>,
        n_points: usize,
        max_abs_residual: f64,
        tolerance: f64,
        notes: impl Into<String>,
    ) -> Self {
        CheckReport {
            check_name: name.into(),
            n_points,
            max_abs_residual,
            tolerance,
            passed: max_abs_residual <= tolerance,
            notes: notes.into(),
        }
    }

    fn failed(name: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        CheckReport::new(name, 0, f64::INFINITY, tolerance, format!("error: {err}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyParams {
    pub seed: u64,
    /// RK4 step for the ODE suites.
    pub ode_step: f64,
    /// Strictly decreasing FD steps for the structural suite.
    pub fd_steps: Vec<f64>,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { seed: DEFAULT_SEED, ode_step: 1e-3, fd_steps: vec![1e-2, 5e-3, 2.5e-3] }
    }
}

/// A fixed non-special meridian with a declared valid `u`-interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestMeridian {
    pub name: &'static str,
    pub stype: SurfaceType,
    pub alpha: f64,
    pub beta: f64,
    pub f: &'static str,
    pub g: &'static str,
    pub domain: (f64, f64),
}

impl TestMeridian {
    pub fn spec(&self) -> SurfaceSpec {
        let m = Meridian::from_dsl(self.f, Some(self.g), self.domain).expect("catalog meridian parses");
        SurfaceSpec::new(self.stype, self.alpha, self.beta, m).expect("catalog rates are positive")
    }
}

pub fn test_meridians() -> [TestMeridian; 6] {
    use SurfaceType::{TypeI, TypeII};
    let m = |name, stype, alpha, beta, f, g, domain| TestMeridian { name, stype, alpha, beta, f, g, domain };
    [
        m("I-a", TypeI, 1.0, 1.0, "2 + 0.3*sin(u)", "u", (-1.0, 1.0)),
        m("I-b", TypeI, 1.5, 0.7, "cosh(0.4*u)", "sinh(u) + 2*u", (-1.0, 1.0)),
        m("I-c", TypeI, 0.8, 1.2, "1 + 0.5*u^2", "2*u", (-1.0, 1.5)),
        m("II-a", TypeII, 1.0, 2.0, "1", "u", (0.75, 2.0)),
        m("II-b", TypeII, 0.5, 1.0, "exp(0.3*u)", "u + 0.2*u^2", (2.0, 3.0)),
        m("II-c", TypeII, 1.2, 1.5, "cos(u)", "2 + u", (0.0, 1.0)),
    ]
}

/// `(type, params, domain)` for the minimal-family checks, four per type.
pub fn minimal_cases() -> Vec<(SurfaceType, MinimalParams, (f64, f64))> {
    let p = |a, c, eps, alpha, beta| MinimalParams { a, c, eps, alpha, beta };
    vec![
        (SurfaceType::TypeI, p(1.0, FRAC_PI_4, 1.0, 1.0, 1.0), (-2.0, 2.0)),
        (SurfaceType::TypeI, p(2.0, 0.3, -1.0, 1.5, 0.7), (-1.0, 3.0)),
        (SurfaceType::TypeI, p(0.5, 1.0, 1.0, 0.8, 1.2), (-2.0, 2.0)),
        (SurfaceType::TypeI, p(3.0, -0.7, -1.0, 1.2, 2.0), (-1.5, 1.5)),
        (SurfaceType::TypeII, p(1.0, 0.5, 1.0, 1.0, 1.0), (1.2, 3.0)),
        (SurfaceType::TypeII, p(0.5, -0.2, -1.0, 0.8, 1.3), (0.8, 2.5)),
        (SurfaceType::TypeII, p(2.0, 1.0, 1.0, 1.5, 1.0), (1.6, 3.5)),
        (SurfaceType::TypeII, p(1.0, 0.0, -1.0, 0.6, 2.0), (0.7, 2.0)),
    ]
}

/// `(C, branch sign, α, β)` for the PNMC checks.
pub fn pnmc_cases() -> [(f64, f64, f64, f64); 3] {
    [(1.0, 1.0, 1.0, 1.0), (0.5, -1.0, 1.5, 0.7), (2.0, 1.0, 0.8, 1.2)]
}

/// Regular flat IVPs: `(type, config)` with `h` filled in by the caller.
pub fn flat_ivps(h: f64) -> [(SurfaceType, IvpConfig); 2] {
    [
        (SurfaceType::TypeI, IvpConfig { u0: 1.0, f0: 1.0, fp0: 0.3, u_end: 2.0, h }),
        (SurfaceType::TypeII, IvpConfig { u0: 1.0, f0: 0.5, fp0: 0.3, u_end: 2.0, h }),
    ]
}

pub fn flat_normal_ivps(h: f64) -> [(SurfaceType, IvpConfig); 2] {
    let cfg = IvpConfig { u0: 1.0, f0: 0.5, fp0: 0.0, u_end: 2.0, h };
    [(SurfaceType::TypeI, cfg), (SurfaceType::TypeII, cfg)]
}

pub fn cmc_ivps(h: f64) -> [(SurfaceType, IvpConfig); 2] {
    [
        (SurfaceType::TypeI, IvpConfig { u0: 1.0, f0: 0.5, fp0: 0.0, u_end: 2.0, h }),
        (SurfaceType::TypeII, IvpConfig { u0: 1.0, f0: 0.1, fp0: 0.0, u_end: 1.5, h }),
    ]
}

pub const CMC_CONSTANTS: [f64; 3] = [0.5, 1.0, 2.0];

/// Meridians addressable by name in `structural:` checks: the catalog plus
/// one minimal meridian of each type.
pub fn named_spec(name: &str) -> Result<SurfaceSpec> {
    if let Some(t) = test_meridians().iter().find(|t| t.name == name) {
        return Ok(t.spec());
    }
    let pick = |i: usize| {
        let (t, p, dom) = minimal_cases()[i];
        SurfaceSpec::new(t, p.alpha, p.beta, minimal_meridian(t, p, Some(dom))?)
    };
    match name {
        "minimal-I" => pick(0),
        "minimal-II" => pick(4),
        _ => Err(Error::UnknownCheck(format!("unknown meridian `{name}`"))),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

/// `n` random valid `(meridian index, u, v)` triples, cycling through the catalog,
/// with `v ∈ [0, 1]`.
pub fn random_valid_points(n: usize, seed: u64) -> Vec<(usize, f64, f64)> {
    let cat = test_meridians();
    let specs: Vec<_> = cat.iter().map(TestMeridian::spec).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while out.len() < n {
        let i = k % cat.len();
        k += 1;
        let (lo, hi) = cat[i].domain;
        let u = rng.random_range(lo..=hi);
        let v = rng.random_range(0.0..=1.0);
        if specs[i].validity(u).unwrap_or(false) {
            out.push((i, u, v));
        }
    }
    out
}

/// Runs `body`, which returns `(n_points, max_abs_residual, notes)`; errors become failed reports.
fn check(name: &str, tol: f64, body: impl FnOnce() -> Result<(usize, f64, String)>) -> CheckReport {
    match body() {
        Ok((n, r, notes)) => CheckReport::new(name, n, r, tol, notes),
        Err(e) => CheckReport::failed(name, tol, &e),
    }
}

/// `max(|x|)` that propagates NaN.
fn absmax(acc: f64, x: f64) -> f64 {
    if x.is_nan() || acc.is_nan() {
        f64::NAN
    } else {
        acc.max(x.abs())
    }
}

pub fn run_suite(name: &str, params: &VerifyParams) -> Result<Vec<CheckReport>> {
    Ok(match name {
        "frames" => suite_frames(params),
        "oracles" => suite_oracles(params),
        "flat" => suite_flat(params),
        "flat_normal" => suite_flat_normal(params),
        "minimal" => suite_minimal(),
        "cmc" => suite_cmc(params),
        "pnmc" => suite_pnmc(),
        "structural" => suite_structural(params),
        "conservation" => suite_conservation(),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                out.extend(run_suite(s, params)?);
            }
            out
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

fn suite_frames(params: &VerifyParams) -> Vec<CheckReport> {
    let cat = test_meridians();
    let specs: Vec<_> = cat.iter().map(TestMeridian::spec).collect();
    let pts = random_valid_points(100, params.seed);
    let seed_note = format!("seed {:#x}, v in [0, 1]", params.seed);
    let gram = check("frames:gram", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let fr = specs[i].frame(u, v)?;
            worst = absmax(worst, gram_deviation(&fr.vectors(), &cat[i].stype.gram_diag()));
        }
        Ok((pts.len(), worst, seed_note.clone()))
    });
    let normal = check("frames:normals_are_normal", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let fr = specs[i].frame(u, v)?;
            let j = specs[i].position_jets(u, v)?;
            for n in [fr.n1, fr.n2] {
                worst = absmax(worst, minkowski_inner(&j.z_u, &n));
                worst = absmax(worst, minkowski_inner(&j.z_v, &n));
            }
        }
        Ok((pts.len(), worst, seed_note.clone()))
    });
    let first = check("frames:first_form", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let ff = specs[i].first_form(u)?;
            let j = specs[i].position_jets(u, v)?;
            worst = absmax(worst, ff.E - j.z_u.norm_sq());
            worst = absmax(worst, ff.G - j.z_v.norm_sq());
            worst = absmax(worst, minkowski_inner(&j.z_u, &j.z_v));
        }
        Ok((pts.len(), worst, seed_note.clone()))
    });
    vec![gram, normal, first]
}

fn suite_oracles(params: &VerifyParams) -> Vec<CheckReport> {
    let cat = test_meridians();
    let specs: Vec<_> = cat.iter().map(TestMeridian::spec).collect();
    let pts = random_valid_points(200, params.seed);
    let seed_note = format!("seed {:#x}", params.seed);
    let mut out = Vec::new();

    let type_one: Vec<_> = pts.iter().filter(|p| cat[p.0].stype == SurfaceType::TypeI).copied().collect();
    out.push(check("oracles:type_I_vanishing_coeffs", 1e-12, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &type_one {
            let c = specs[i].valid_point(u)?.second_form_coeffs(v)?;
            for x in [c.c11_1, c.c22_1, c.c12_2] {
                worst = absmax(worst, x);
            }
        }
        Ok((type_one.len(), worst, "c11_1, c22_1, c12_2".into()))
    }));
    out.push(check("oracles:type_I_coeff_closed_forms", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &type_one {
            let p = specs[i].valid_point(u)?;
            let c = p.second_form_coeffs(v)?;
            let (f, g, al, be) = (p.f, p.g, p.alpha, p.beta);
            let e = (g.d1 * g.d1 - f.d1 * f.d1).sqrt();
            let gg = (al * al * f.val * f.val + be * be * g.val * g.val).sqrt();
            let c12_1 = al * be * (f.val * g.d1 - f.d1 * g.val) / gg;
            let c11_2 = (f.d2 * g.d1 - f.d1 * g.d2) / e;
            let c22_2 = -(al * al * f.val * g.d1 + be * be * f.d1 * g.val) / e;
            worst = absmax(worst, c.c12_1 - c12_1);
            worst = absmax(worst, c.c11_2 - c11_2);
            worst = absmax(worst, c.c22_2 - c22_2);
        }
        Ok((type_one.len(), worst, "c12_1, c11_2, c22_2".into()))
    }));
    out.push(check("oracles:gauss_equation", TOL_GAUSS, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let p = specs[i].valid_point(u)?;
            worst = absmax(worst, p.gauss_curvature() - p.gauss_curvature_from_sigma(v)?);
        }
        Ok((pts.len(), worst, seed_note.clone()))
    }));
    out.push(check("oracles:gauss_spot_values", TOL_GAUSS, || {
        let s1 = SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, Meridian::from_dsl("1", None, (-1.0, 1.0))?)?;
        let s2 = SurfaceSpec::new(SurfaceType::TypeII, 1.0, 2.0, Meridian::from_dsl("1", None, (0.75, 2.0))?)?;
        let p1 = s1.valid_point(0.0)?;
        let p2 = s2.valid_point(1.0)?;
        let r = [
            p1.gauss_curvature() - 1.0,
            p1.gauss_curvature_from_sigma(0.0)? - 1.0,
            p2.gauss_curvature() - 4.0 / 9.0,
            p2.gauss_curvature_from_sigma(0.0)? - 4.0 / 9.0,
        ];
        Ok((2, r.iter().fold(0.0, |a, &x| absmax(a, x)), "K = 1 (type I), K = 4/9 (type II)".into()))
    }));
    out.push(check("oracles:mean_curvature_display", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let p = specs[i].valid_point(u)?;
            let h = p.mean_curvature(v)?;
            let (d1, d2) = p.mean_curvature_closed_form();
            match p.stype {
                SurfaceType::TypeI => {
                    worst = absmax(worst, h.h2 - d2);
                    worst = absmax(worst, h.h1);
                }
                SurfaceType::TypeII => {
                    worst = absmax(worst, h.h1.abs() - d1.abs());
                    worst = absmax(worst, h.h2);
                }
            }
        }
        Ok((pts.len(), worst, "type II compared in absolute value".into()))
    }));
    out.push(check("oracles:mean_curvature_is_normal", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, v) in &pts {
            let p = specs[i].valid_point(u)?;
            let h = p.mean_curvature(v)?;
            let fr = p.frame(v)?;
            let hv = fr.n1 * h.h1 + fr.n2 * h.h2;
            let j = p.position_jets(v);
            worst = absmax(worst, minkowski_inner(&hv, &j.z_u));
            worst = absmax(worst, minkowski_inner(&hv, &j.z_v));
        }
        Ok((pts.len(), worst, String::new()))
    }));
    out.push(check("oracles:v_independence", TOL_ALGEBRAIC, || {
        let mut worst = 0.0_f64;
        for &(i, u, _) in &pts {
            let a = invariant_sample_at(&specs[i], u, 0.0);
            let b = invariant_sample_at(&specs[i], u, 1.3);
            if !(a.valid && b.valid) {
                return Err(Error::InvalidPoint { u });
            }
            for (x, y) in sample_fields(&a).into_iter().zip(sample_fields(&b)) {
                worst = absmax(worst, x - y);
            }
        }
        Ok((pts.len(), worst, "v = 0 vs v = 1.3".into()))
    }));
    out.push(check("oracles:ad_vs_fd", 1e-6, || {
        let mut worst = 0.0_f64;
        for &(i, u, _) in &pts {
            let m = &specs[i].meridian;
            let (lo, hi) = m.domain();
            let h = 1e-4;
            if u - h < lo || u + h > hi {
                continue;
            }
            let (f, g) = m.eval_jet(u)?;
            let (ff, gf) = fd_oracle(m, u, h)?;
            for (a, b) in [(f.d1, ff.d1), (f.d2, ff.d2), (g.d1, gf.d1), (g.d2, gf.d2)] {
                worst = absmax(worst, a - b);
            }
        }
        Ok((pts.len(), worst, "central differences, h = 1e-4".into()))
    }));
    out.push(check("oracles:normal_curvature_from_connection", 1e-6, || {
        // κ = λ φ − x(φ), x(φ) by central differences of the closed-form φ
        let mut worst = 0.0_f64;
        let h = 1e-4;
        for &(i, u, _) in &pts {
            let s = &specs[i];
            let (lo, hi) = s.meridian.domain();
            if u - h < lo || u + h > hi {
                continue;
            }
            let p = s.valid_point(u)?;
            let phi = |u| s.valid_point(u).map(|p| p.frenet_coeffs().phi);
            let xphi = (phi(u + h)? - phi(u - h)?) / (2.0 * h) / p.normalizers().0;
            worst = absmax(worst, p.commutator_coefficient() * phi(u)? - xphi - p.normal_curvature());
        }
        Ok((pts.len(), worst, "FD step 1e-4".into()))
    }));
    out.push(check("oracles:commutator_lie_bracket", 1e-6, || {
        let mut worst = 0.0_f64;
        let h = 1e-5;
        for &(i, u, v) in &pts {
            let s = &specs[i];
            let (lo, hi) = s.meridian.domain();
            if u - h < lo || u + h > hi {
                continue;
            }
            let p = s.valid_point(u)?;
            let (a, b) = p.normalizers();
            let dy_du = (s.frame(u + h, v)?.y - s.frame(u - h, v)?.y) * (0.5 / h);
            let dx_dv = (s.frame(u, v + h)?.x - s.frame(u, v - h)?.x) * (0.5 / h);
            let bracket = dy_du * (1.0 / a) - dx_dv * (1.0 / b);
            let fr = s.frame(u, v)?;
            let (_, ey) = p.stype.tangent_signs();
            worst = absmax(worst, minkowski_inner(&bracket, &fr.y) * ey - p.commutator_coefficient());
        }
        Ok((pts.len(), worst, "[x,y] by central differences of the frame, h = 1e-5".into()))
    }));
    out
}

fn sample_fields(s: &InvariantSample) -> [f64; 17] {
    [s.E, s.F, s.G, s.K, s.H1, s.H2, s.Hnorm2, s.kappa, s.gamma, s.mu, s.nu1, s.nu2, s.phi, s.D1, s.D2, s.D3, s.u]
}

/// Node abscissae plus cell midpoints of a sampled meridian.
fn nodes_and_midpoints(m: &Meridian) -> Vec<f64> {
    let nodes = m.nodes().unwrap_or(&[]);
    let mut us = Vec::with_capacity(2 * nodes.len());
    for w in nodes.windows(2) {
        us.push(w[0].u);
        us.push(0.5 * (w[0].u + w[1].u));
    }
    if let Some(last) = nodes.last() {
        us.push(last.u);
    }
    us
}

/// Integrates, then takes the max of `metric` over nodes and midpoints.
fn ode_check(
    name: String,
    tol: f64,
    sclass: SpecialClass,
    stype: SurfaceType,
    cfg: IvpConfig,
    metric: impl Fn(&SurfaceSpec, f64) -> Result<f64>,
) -> CheckReport {
    check(&name, tol, || {
        let out = integrate_special(sclass, stype, 1.0, 1.0, cfg)?;
        let note =
            format!("IVP (u0, f0, f'0) = ({}, {}, {}) -> {}, h = {:e}", cfg.u0, cfg.f0, cfg.fp0, cfg.u_end, cfg.h);
        if out.truncated {
            return Ok((0, f64::INFINITY, format!("{note}; truncated: {}", out.reason.unwrap_or_default())));
        }
        let us = nodes_and_midpoints(&out.meridian);
        let spec = SurfaceSpec::new(stype, 1.0, 1.0, out.meridian)?;
        let mut worst = 0.0_f64;
        for &u in &us {
            worst = absmax(worst, metric(&spec, u)?);
        }
        Ok((us.len(), worst, note))
    })
}

fn sample_valid(spec: &SurfaceSpec, u: f64) -> Result<InvariantSample> {
    let s = invariant_sample(spec, u);
    if s.valid {
        Ok(s)
    } else {
        Err(Error::InvalidPoint { u })
    }
}

/// Endpoint differences for `h, h/2, h/4` and the resulting ratio.
pub fn rk4_endpoint_ratio(sclass: SpecialClass, stype: SurfaceType, cfg: IvpConfig) -> Result<f64> {
    let end = |h| -> Result<f64> {
        let out = integrate_special(sclass, stype, 1.0, 1.0, IvpConfig { h, ..cfg })?;
        if out.truncated {
            return Err(Error::Singular { factor: "guard before u_end", u: out.meridian.domain().1 });
        }
        Ok(out.meridian.nodes().and_then(|n| n.last()).map(|n| n.f.val).unwrap_or(f64::NAN))
    };
    let (a, b, c) = (end(cfg.h)?, end(cfg.h / 2.0)?, end(cfg.h / 4.0)?);
    Ok((a - b) / (b - c))
}

fn suite_flat(params: &VerifyParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (t, cfg) in flat_ivps(params.ode_step) {
        out.push(ode_check(format!("flat:gauss_curvature:{t}"), TOL_ODE, SpecialClass::Flat, t, cfg, |s, u| {
            Ok(sample_valid(s, u)?.K)
        }));
        out.push(ode_check(format!("flat:class_residual:{t}"), 1e-5, SpecialClass::Flat, t, cfg, |s, u| {
            class_residual(SpecialClass::Flat, s, u)
        }));
        out.push(check(&format!("flat:rk4_order:{t}"), 4.0, || {
            let ratio = rk4_endpoint_ratio(SpecialClass::Flat, t, IvpConfig { h: 0.04, ..cfg })?;
            Ok((3, (ratio - 16.0).abs(), format!("endpoint ratio {ratio:.3} for h = 0.04, 0.02, 0.01; target 16")))
        }));
    }
    out
}

fn suite_flat_normal(params: &VerifyParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (t, cfg) in flat_normal_ivps(params.ode_step) {
        out.push(ode_check(
            format!("flat_normal:normal_curvature:{t}"),
            TOL_ODE,
            SpecialClass::FlatNormal,
            t,
            cfg,
            |s, u| Ok(sample_valid(s, u)?.kappa),
        ));
        out.push(ode_check(
            format!("flat_normal:class_residual:{t}"),
            TOL_ODE,
            SpecialClass::FlatNormal,
            t,
            cfg,
            |s, u| class_residual(SpecialClass::FlatNormal, s, u),
        ));
    }
    out.push(negative_control("flat_normal:negative_control", SpecialClass::FlatNormal));
    out
}

/// Margin residual `max(0, 0.1 − |r|)` of a class residual on `f = 1, g = u`, `α = β = 1`, at `u = 0`.
fn negative_control(name: &str, sclass: SpecialClass) -> CheckReport {
    check(name, 0.0, || {
        let m = Meridian::from_dsl("1", None, (-1.0, 1.0))?;
        let s = SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, m)?;
        let r = class_residual(sclass, &s, 0.0)?;
        Ok((1, (0.1 - r.abs()).max(0.0), format!("non-member residual {r}; must exceed 0.1 in magnitude")))
    })
}

fn minimal_spec(t: SurfaceType, p: MinimalParams, dom: (f64, f64)) -> Result<SurfaceSpec> {
    SurfaceSpec::new(t, p.alpha, p.beta, minimal_meridian(t, p, Some(dom))?)
}

fn case_label(t: SurfaceType, p: &MinimalParams) -> String {
    format!("{t}(A={},C={},eps={},alpha={},beta={})", p.a, p.c, p.eps, p.alpha, p.beta)
}

fn suite_minimal() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (t, p, dom) in minimal_cases() {
        let label = case_label(t, &p);
        out.push(check(&format!("minimal:mean_curvature:{label}"), TOL_CLOSED_FORM, || {
            let s = minimal_spec(t, p, dom)?;
            let mut worst = 0.0_f64;
            for u in linspace(dom.0, dom.1, 500) {
                let smp = sample_valid(&s, u)?;
                worst = absmax(worst, smp.H1);
                worst = absmax(worst, smp.H2);
            }
            Ok((500, worst, "H1, H2 over 500 samples".into()))
        }));
        out.push(check(&format!("minimal:class_residual:{label}"), TOL_CLOSED_FORM, || {
            let s = minimal_spec(t, p, dom)?;
            let mut worst = 0.0_f64;
            for u in linspace(dom.0, dom.1, 500) {
                worst = absmax(worst, class_residual(SpecialClass::Minimal, &s, u)?);
            }
            Ok((500, worst, String::new()))
        }));
    }
    out.push(negative_control("minimal:negative_control", SpecialClass::Minimal));
    out
}

/// Relative drift `max |c − c̄| / |c̄|` of `G²(μ² + ν₁²)` over 500 samples.
pub fn conservation_drift(t: SurfaceType, p: MinimalParams, dom: (f64, f64)) -> Result<f64> {
    let s = minimal_spec(t, p, dom)?;
    let vals = linspace(dom.0, dom.1, 500)
        .map(|u| {
            let smp = sample_valid(&s, u)?;
            Ok(smp.G * smp.G * (smp.mu * smp.mu + smp.nu1 * smp.nu1))
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    Ok(vals.iter().fold(0.0, |a, &v| absmax(a, (v - mean) / mean)))
}

fn suite_conservation() -> Vec<CheckReport> {
    minimal_cases()
        .into_iter()
        .map(|(t, p, dom)| {
            check(&format!("conservation:{}", case_label(t, &p)), TOL_CLOSED_FORM, || {
                let drift = conservation_drift(t, p, dom)?;
                let expected = (p.alpha * p.alpha + p.beta * p.beta) * p.a;
                Ok((
                    500,
                    drift,
                    format!("relative drift of G^2(mu^2 + nu1^2); constant (alpha^2+beta^2)A = {expected}"),
                ))
            })
        })
        .collect()
}

fn suite_cmc(params: &VerifyParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for c in CMC_CONSTANTS {
        for (t, cfg) in cmc_ivps(params.ode_step) {
            out.push(ode_check(format!("cmc:hnorm2:{t}:c={c}"), TOL_ODE, SpecialClass::Cmc(c), t, cfg, move |s, u| {
                Ok(sample_valid(s, u)?.Hnorm2 - c * c / 4.0)
            }));
            out.push(ode_check(
                format!("cmc:class_residual:{t}:c={c}"),
                TOL_ODE,
                SpecialClass::Cmc(c),
                t,
                cfg,
                move |s, u| class_residual(SpecialClass::Cmc(c), s, u),
            ));
        }
    }
    out.push(check("cmc:constant_h_on_pnmc", TOL_ALGEBRAIC, || {
        // f = √(u²+1) has H2 ≡ −1 (⟨H,H⟩ = 1), i.e. the CMC residual with c = −2·H2 vanishes
        let s = SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, Meridian::from_dsl("sqrt(u^2+1)", None, (-2.0, 2.0))?)?;
        let c = -2.0 * sample_valid(&s, 0.0)?.H2;
        let mut worst = 0.0_f64;
        for u in linspace(-2.0, 2.0, 101) {
            worst = absmax(worst, class_residual(SpecialClass::Cmc(c), &s, u)?);
        }
        Ok((101, worst, format!("c = {c}")))
    }));
    out
}

fn suite_pnmc() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (c, sign, al, be) in pnmc_cases() {
        for t in [SurfaceType::TypeI, SurfaceType::TypeII] {
            let label = format!("{t}(C={c},sign={sign},alpha={al},beta={be})");
            let make = || -> Result<(SurfaceSpec, Vec<f64>)> {
                let dom = match t {
                    SurfaceType::TypeI => Some((-2.0, 2.0)),
                    SurfaceType::TypeII => None,
                };
                let m = pnmc_meridian(t, c, sign, al, be, dom)?;
                let (lo, hi) = m.domain();
                let pad = if t == SurfaceType::TypeII { 0.05 * (hi - lo) } else { 0.0 };
                let us = linspace(lo + pad, hi - pad, 200).collect();
                Ok((SurfaceSpec::new(t, al, be, m)?, us))
            };
            let over = |metric: &dyn Fn(&InvariantSample) -> f64| -> Result<(usize, f64, String)> {
                let (s, us) = make()?;
                let mut worst = 0.0_f64;
                for &u in &us {
                    worst = absmax(worst, metric(&sample_valid(&s, u)?));
                }
                let note = if t == SurfaceType::TypeII { "interior 90% of the valid interval" } else { "u in [-2, 2]" };
                Ok((us.len(), worst, note.into()))
            };
            out.push(check(&format!("pnmc:connection_dyn:{label}"), 1e-12, || over(&|s| s.phi)));
            out.push(check(&format!("pnmc:normal_curvature:{label}"), TOL_ALGEBRAIC, || over(&|s| s.kappa)));
            if t == SurfaceType::TypeI {
                out.push(check(&format!("pnmc:hnorm2:{label}"), TOL_CLOSED_FORM, || {
                    over(&|s| s.Hnorm2 - 1.0 / (c * c))
                }));
            }
        }
    }
    out.push(check("pnmc:perturbed_is_not_pnmc", 0.0, || {
        let m = Meridian::from_dsl("sqrt(u^2+1) + 0.01*u", None, (0.5, 1.5))?;
        let s = SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, m)?;
        let mut peak = 0.0_f64;
        for u in linspace(0.5, 1.5, 101) {
            peak = absmax(peak, sample_valid(&s, u)?.phi);
        }
        Ok((101, (1e-4 - peak).max(0.0), format!("max |dyn| = {peak:e}; must exceed 1e-4")))
    }));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralIdentity {
    Mu,
    Nu2,
    Gamma,
}

impl StructuralIdentity {
    pub const ALL: [StructuralIdentity; 3] =
        [StructuralIdentity::Mu, StructuralIdentity::Nu2, StructuralIdentity::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            StructuralIdentity::Mu => "mu",
            StructuralIdentity::Nu2 => "nu2",
            StructuralIdentity::Gamma => "gamma",
        }
    }

    fn pick(self, c: &FrenetCoeffs) -> f64 {
        match self {
            StructuralIdentity::Mu => c.mu,
            StructuralIdentity::Nu2 => c.nu2,
            StructuralIdentity::Gamma => c.gamma,
        }
    }

    /// Right side of `x(·) = …` in terms of the coefficient functions.
    pub fn rhs(self, stype: SurfaceType, c: &FrenetCoeffs) -> f64 {
        let FrenetCoeffs { gamma, mu, nu1, nu2, phi } = *c;
        let s = match stype {
            SurfaceType::TypeI => 1.0,
            SurfaceType::TypeII => -1.0,
        };
        match self {
            StructuralIdentity::Mu => s * (2.0 * mu * gamma - nu1 * phi),
            StructuralIdentity::Nu2 => s * (gamma * (nu1 + nu2) + mu * phi),
            StructuralIdentity::Gamma => nu1 * nu2 - mu * mu + s * gamma * gamma,
        }
    }
}

/// `|x(h)_FD − rhs|` at `u`, with `x(h) = h'/√|E|` and `h'` by central differences of step `step`.
pub fn structural_residual(spec: &SurfaceSpec, id: StructuralIdentity, u: f64, step: f64) -> Result<f64> {
    let coeffs = |u| spec.valid_point(u).map(|p| p.frenet_coeffs());
    let p = spec.valid_point(u)?;
    let deriv = (id.pick(&coeffs(u + step)?) - id.pick(&coeffs(u - step)?)) / (2.0 * step);
    Ok((deriv / p.normalizers().0 - id.rhs(spec.stype, &p.frenet_coeffs())).abs())
}

/// Residual sequence and fitted log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub points: Vec<(f64, f64)>,
    /// `None` when residuals sit at the roundoff floor.
    pub order: Option<f64>,
}

/// Least-squares slope of `ln r` against `ln h`.
pub fn fit_order(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(_, r)| !(r > RESIDUAL_FLOOR)) {
        return None;
    }
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(h, r)| (h.ln(), r.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// Residual of `check` at each step in `hs`.
///
/// Check names: `ad_fd:<expr>` (AD jet against central differences at `u = 0.5`),
/// `structural:<mu|nu2|gamma>:<meridian>` (meridian names from [`named_spec`]).
pub fn fd_convergence(check: &str, hs: &[f64]) -> Result<Convergence> {
    if hs.len() < 3 || hs.iter().any(|h| !(*h > 0.0)) || hs.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParams("need at least 3 strictly decreasing positive steps".into()));
    }
    let points: Vec<(f64, f64)> = if let Some(src) = check.strip_prefix("ad_fd:") {
        let m = Meridian::closed_form(parse_meridian(src)?, None, (f64::NEG_INFINITY, f64::INFINITY))?;
        let u = 0.5;
        let (exact, _) = m.eval_jet(u)?;
        hs.iter()
            .map(|&h| {
                let (fd, _) = fd_oracle(&m, u, h)?;
                Ok((h, (exact.d1 - fd.d1).abs().max((exact.d2 - fd.d2).abs())))
            })
            .collect::<Result<_>>()?
    } else if let Some(rest) = check.strip_prefix("structural:") {
        let (id, mer) = rest.split_once(':').ok_or_else(|| Error::UnknownCheck(check.into()))?;
        let id = StructuralIdentity::ALL
            .into_iter()
            .find(|i| i.name() == id)
            .ok_or_else(|| Error::UnknownCheck(check.into()))?;
        let spec = named_spec(mer)?;
        let (lo, hi) = spec.meridian.domain();
        let u = 0.5 * (lo + hi) + 0.1 * (hi - lo);
        hs.iter().map(|&h| Ok((h, structural_residual(&spec, id, u, h)?))).collect::<Result<_>>()?
    } else {
        return Err(Error::UnknownCheck(check.into()));
    };
    let order = fit_order(&points);
    Ok(Convergence { points, order })
}

/// Meridians used by the structural suite.
pub const STRUCTURAL_MERIDIANS: [&str; 4] = ["I-b", "I-c", "II-b", "minimal-I"];

fn suite_structural(params: &VerifyParams) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for mer in STRUCTURAL_MERIDIANS {
        for id in StructuralIdentity::ALL {
            let name = format!("structural:{}:{mer}", id.name());
            let conv = fd_convergence(&name, &params.fd_steps);
            let pts_note = |c: &Convergence| {
                c.points.iter().map(|(h, r)| format!("h={h:e}: {r:.3e}")).collect::<Vec<_>>().join(", ")
            };
            out.push(check(&format!("{name}:order"), 0.2, || {
                let c = conv.clone()?;
                let order = c.order.unwrap_or(f64::NAN);
                Ok((c.points.len(), (order - 2.0).abs(), format!("fitted order {order:.4}; {}", pts_note(&c))))
            }));
            out.push(check(&format!("{name}:ratio"), 0.5, || {
                let c = conv.clone()?;
                let worst = c.points.windows(2).fold(0.0, |a, w| absmax(a, w[0].1 / w[1].1 - 4.0));
                Ok((c.points.len(), worst, "successive residual ratios within 4 +- 0.5 (steps halved)".into()))
            }));
        }
    }
    out
}

/// Fixed-width text table of reports.
pub fn format_table(reports: &[CheckReport]) -> String {
    let width = reports.iter().map(|r| r.check_name.len()).max().unwrap_or(5).max(5);
    let mut s = String::new();
    let _ = writeln!(s, "{:<width$}  {:>6}  {:>12}  {:>9}  result", "check", "points", "max |res|", "tol");
    for r in reports {
        let _ = writeln!(
            s,
            "{:<width$}  {:>6}  {:>12.3e}  {:>9.1e}  {}",
            r.check_name,
            r.n_points,
            r.max_abs_residual,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", reports.len(), failed);
    s
}
