//! Pointwise invariants of a general rotational surface.
//!
//! Everything except `c^k_ij` (and the quantities built from them) is a closed
//! form in the meridian jets `f, f', f'', g, g', g''`. The shorthand used below:
//!
//! ```text
//! w = f''g' − f'g''     m = fg' − f'g     q = α²fg' + β²f'g     e = |E|
//! ```

use serde::Serialize;

use crate::error::Result;
use crate::minkowski::minkowski_inner;
use crate::surface::{SurfacePoint, SurfaceSpec, SurfaceType};

/// Absolute tolerance on each Δ for the inflection test.
pub const INFLECTION_TOL: f64 = 1e-10;

/// `c^k_ij = ⟨z_ij, n_k⟩`; the suffix is `k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SecondFormCoeffs {
    pub c11_1: f64,
    pub c12_1: f64,
    pub c22_1: f64,
    pub c11_2: f64,
    pub c12_2: f64,
    pub c22_2: f64,
}

impl SecondFormCoeffs {
    /// `(c11_k, c12_k, c22_k)` for `k ∈ {1, 2}`.
    pub fn along(&self, k: usize) -> (f64, f64, f64) {
        match k {
            1 => (self.c11_1, self.c12_1, self.c22_1),
            2 => (self.c11_2, self.c12_2, self.c22_2),
            _ => panic!("normal index must be 1 or 2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FrenetCoeffs {
    pub gamma: f64,
    pub mu: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DeltaInvariants {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub is_inflection: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct MeanCurvature {
    pub h1: f64,
    pub h2: f64,
    pub hnorm2: f64,
}

/// All scalar invariants at one `u`. Invalid points have `valid = false`
/// and every other field zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[allow(non_snake_case)]
pub struct InvariantSample {
    pub u: f64,
    pub valid: bool,
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub K: f64,
    pub H1: f64,
    pub H2: f64,
    pub Hnorm2: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub mu: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub phi: f64,
    pub D1: f64,
    pub D2: f64,
    pub D3: f64,
}

#[derive(Debug, Clone, Copy)]
struct Shorthand {
    al: f64,
    be: f64,
    f: f64,
    fp: f64,
    g: f64,
    gp: f64,
    w: f64,
    m: f64,
    q: f64,
    e: f64,
    /// `G` with its sign: positive for type I, negative for type II.
    gg: f64,
}

fn shorthand(p: &SurfacePoint) -> Shorthand {
    let (al, be) = (p.alpha, p.beta);
    let (f, g) = (p.f, p.g);
    let ff = p.first_form();
    Shorthand {
        al,
        be,
        f: f.val,
        fp: f.d1,
        g: g.val,
        gp: g.d1,
        w: f.d2 * g.d1 - f.d1 * g.d2,
        m: f.val * g.d1 - f.d1 * g.val,
        q: al * al * f.val * g.d1 + be * be * f.d1 * g.val,
        e: ff.E.abs(),
        gg: ff.G,
    }
}

impl SurfacePoint {
    /// `c^k_ij` from the position jets and frame at `v`.
    pub fn second_form_coeffs(&self, v: f64) -> Result<SecondFormCoeffs> {
        let fr = self.frame(v)?;
        let j = self.position_jets(v);
        let c = |z, n| minkowski_inner(&z, &n);
        Ok(SecondFormCoeffs {
            c11_1: c(j.z_uu, fr.n1),
            c12_1: c(j.z_uv, fr.n1),
            c22_1: c(j.z_vv, fr.n1),
            c11_2: c(j.z_uu, fr.n2),
            c12_2: c(j.z_uv, fr.n2),
            c22_2: c(j.z_vv, fr.n2),
        })
    }

    /// Closed-form Gauss curvature.
    pub fn gauss_curvature(&self) -> f64 {
        let s = shorthand(self);
        let ab2 = s.al * s.al * s.be * s.be;
        let den = s.e * s.e * s.gg * s.gg;
        match self.stype {
            SurfaceType::TypeI => (s.w * s.q * s.gg + ab2 * s.m * s.m * s.e) / den,
            SurfaceType::TypeII => (ab2 * s.m * s.m * s.e - s.w * s.gg * s.q) / den,
        }
    }

    /// Gauss-equation curvature `Σ_k (c11_k c22_k − (c12_k)²) / (EG)`.
    pub fn gauss_curvature_from_sigma(&self, v: f64) -> Result<f64> {
        let c = self.second_form_coeffs(v)?;
        let ff = self.first_form();
        let num: f64 = [1, 2]
            .iter()
            .map(|&k| {
                let (c11, c12, c22) = c.along(k);
                c11 * c22 - c12 * c12
            })
            .sum();
        Ok(num / (ff.E * ff.G - ff.F * ff.F))
    }

    /// `H^k = ½ (G c11_k + E c22_k − 2F c12_k) / (EG − F²)`.
    pub fn mean_curvature(&self, v: f64) -> Result<MeanCurvature> {
        let c = self.second_form_coeffs(v)?;
        let ff = self.first_form();
        let det = ff.E * ff.G - ff.F * ff.F;
        let hk = |k| {
            let (c11, c12, c22) = c.along(k);
            0.5 * (ff.G * c11 + ff.E * c22 - 2.0 * ff.F * c12) / det
        };
        let (h1, h2) = (hk(1), hk(2));
        Ok(MeanCurvature { h1, h2, hnorm2: h1 * h1 + h2 * h2 })
    }

    /// Single-normal closed-form display `(H1, H2)`. For type II this is the
    /// negative of the coordinate formula.
    pub fn mean_curvature_closed_form(&self) -> (f64, f64) {
        let s = shorthand(self);
        let e32 = s.e * s.e.sqrt();
        match self.stype {
            SurfaceType::TypeI => (0.0, (-s.w * s.gg - s.q * s.e) / (2.0 * s.gg * e32)),
            SurfaceType::TypeII => ((-s.w * s.gg + s.q * s.e) / (2.0 * s.gg * e32), 0.0),
        }
    }

    /// `(dxn, dyn)`: the `n2`-components of `D_x n1` and `D_y n1`.
    ///
    /// `dxn` is computed from the `u`-derivative of the unnormalized first normal,
    /// `dyn` from its closed form.
    pub fn normal_connection_coeffs(&self) -> Result<(f64, f64)> {
        let fr = self.frame(0.0)?;
        let (a, b) = self.normalizers();
        let (f, g) = (self.f, self.g);
        let (al, be) = (self.alpha, self.beta);
        // ∂u N1 at v = 0, |N1| and the n2 it is paired with.
        let (dn1, norm) = match self.stype {
            SurfaceType::TypeI => (crate::Vec4::new(0.0, -be * g.d1, al * f.d1, 0.0), b),
            SurfaceType::TypeII => (crate::Vec4::new(g.d2, 0.0, -f.d2, 0.0), a),
        };
        let dxn = minkowski_inner(&dn1, &fr.n2) / (norm * a);
        Ok((dxn, self.frenet_coeffs().phi))
    }

    /// Closed-form curvature of the normal connection.
    pub fn normal_curvature(&self) -> f64 {
        let s = shorthand(self);
        let ab = s.al * s.be;
        let den = s.e * s.e * s.gg * s.gg;
        match self.stype {
            SurfaceType::TypeI => ab * s.m * (-s.e * s.q + s.w * s.gg) / den,
            SurfaceType::TypeII => ab * s.m * (s.e * s.q + s.w * s.gg) / den,
        }
    }

    /// Closed-form `γ, μ, ν₁, ν₂, φ`.
    pub fn frenet_coeffs(&self) -> FrenetCoeffs {
        let s = shorthand(self);
        let (a2, b2, ab) = (s.al * s.al, s.be * s.be, s.al * s.be);
        let re = s.e.sqrt();
        let reg = re * s.gg;
        let nu1 = s.w / (s.e * re);
        match self.stype {
            SurfaceType::TypeI => FrenetCoeffs {
                gamma: -(a2 * s.f * s.fp + b2 * s.g * s.gp) / reg,
                mu: ab * s.m / reg,
                nu1,
                nu2: -s.q / reg,
                phi: ab * (s.g * s.gp - s.f * s.fp) / reg,
            },
            SurfaceType::TypeII => FrenetCoeffs {
                gamma: (a2 * s.f * s.fp - b2 * s.g * s.gp) / reg,
                mu: ab * s.m / reg,
                nu1,
                nu2: s.q / reg,
                phi: -ab * (s.g * s.gp + s.f * s.fp) / reg,
            },
        }
    }

    /// `λ` with `[x, y] = λ y`, i.e. `−b'/(ab)` for `x = ∂u/a`, `y = ∂v/b`.
    /// Equals `γ` for type I and `−γ` for type II.
    pub fn commutator_coefficient(&self) -> f64 {
        let s = shorthand(self);
        let (a2, b2) = (s.al * s.al, s.be * s.be);
        // d|G|/du
        let dg_abs = match self.stype {
            SurfaceType::TypeI => 2.0 * (a2 * s.f * s.fp + b2 * s.g * s.gp),
            SurfaceType::TypeII => 2.0 * (b2 * s.g * s.gp - a2 * s.f * s.fp),
        };
        -dg_abs / (2.0 * s.e.sqrt() * s.gg.abs())
    }

    pub fn delta_invariants(&self, v: f64, tol: f64) -> Result<DeltaInvariants> {
        Ok(delta_from_coeffs(&self.second_form_coeffs(v)?, tol))
    }

    /// Aggregates every invariant at `v`; see [`InvariantSample`].
    pub fn sample(&self, v: f64) -> InvariantSample {
        self.try_sample(v).unwrap_or(InvariantSample { u: self.u, ..Default::default() })
    }

    fn try_sample(&self, v: f64) -> Result<InvariantSample> {
        if !self.is_valid() {
            return Err(crate::Error::InvalidPoint { u: self.u });
        }
        let ff = self.first_form();
        let h = self.mean_curvature(v)?;
        let fc = self.frenet_coeffs();
        let d = self.delta_invariants(v, INFLECTION_TOL)?;
        let s = InvariantSample {
            u: self.u,
            valid: true,
            E: ff.E,
            F: ff.F,
            G: ff.G,
            K: self.gauss_curvature(),
            H1: h.h1,
            H2: h.h2,
            Hnorm2: h.hnorm2,
            kappa: self.normal_curvature(),
            gamma: fc.gamma,
            mu: fc.mu,
            nu1: fc.nu1,
            nu2: fc.nu2,
            phi: fc.phi,
            D1: d.d1,
            D2: d.d2,
            D3: d.d3,
        };
        let all_finite = [s.K, s.H1, s.H2, s.kappa, s.gamma, s.mu, s.nu1, s.nu2, s.phi, s.D1, s.D2, s.D3]
            .iter()
            .all(|x| x.is_finite());
        if !all_finite {
            return Err(crate::Error::NonFinite { u: self.u });
        }
        Ok(s)
    }
}

/// `Δ₁ = c11_1 c12_2 − c12_1 c11_2`, `Δ₂ = c11_1 c22_2 − c22_1 c11_2`,
/// `Δ₃ = c12_1 c22_2 − c22_1 c12_2`.
pub fn delta_from_coeffs(c: &SecondFormCoeffs, tol: f64) -> DeltaInvariants {
    let d1 = c.c11_1 * c.c12_2 - c.c12_1 * c.c11_2;
    let d2 = c.c11_1 * c.c22_2 - c.c22_1 * c.c11_2;
    let d3 = c.c12_1 * c.c22_2 - c.c22_1 * c.c12_2;
    let is_inflection = d1.abs() <= tol && d2.abs() <= tol && d3.abs() <= tol;
    DeltaInvariants { d1, d2, d3, is_inflection }
}

pub fn second_form_coeffs(spec: &SurfaceSpec, u: f64) -> Result<SecondFormCoeffs> {
    spec.valid_point(u)?.second_form_coeffs(0.0)
}

pub fn gauss_curvature(spec: &SurfaceSpec, u: f64) -> Result<f64> {
    Ok(spec.valid_point(u)?.gauss_curvature())
}

pub fn gauss_curvature_from_sigma(spec: &SurfaceSpec, u: f64) -> Result<f64> {
    spec.valid_point(u)?.gauss_curvature_from_sigma(0.0)
}

pub fn mean_curvature(spec: &SurfaceSpec, u: f64) -> Result<MeanCurvature> {
    spec.valid_point(u)?.mean_curvature(0.0)
}

pub fn normal_connection_coeffs(spec: &SurfaceSpec, u: f64) -> Result<(f64, f64)> {
    spec.valid_point(u)?.normal_connection_coeffs()
}

pub fn normal_curvature(spec: &SurfaceSpec, u: f64) -> Result<f64> {
    Ok(spec.valid_point(u)?.normal_curvature())
}

pub fn frenet_coeffs(spec: &SurfaceSpec, u: f64) -> Result<FrenetCoeffs> {
    Ok(spec.valid_point(u)?.frenet_coeffs())
}

pub fn delta_invariants(spec: &SurfaceSpec, u: f64) -> Result<DeltaInvariants> {
    spec.valid_point(u)?.delta_invariants(0.0, INFLECTION_TOL)
}

/// Also defined for type II, where it is derived the same way as for type I.
pub fn commutator_coefficient(spec: &SurfaceSpec, u: f64) -> Result<f64> {
    Ok(spec.valid_point(u)?.commutator_coefficient())
}

pub fn invariant_sample(spec: &SurfaceSpec, u: f64) -> InvariantSample {
    invariant_sample_at(spec, u, 0.0)
}

pub fn invariant_sample_at(spec: &SurfaceSpec, u: f64, v: f64) -> InvariantSample {
    match spec.point(u) {
        Ok(p) => p.sample(v),
        Err(_) => InvariantSample { u, ..Default::default() },
    }
}
