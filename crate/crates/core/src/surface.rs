//! The two general rotational surface families and their moving frames.
//!
//! Type I: `z = (f cos αv, f sin αv, g sinh βv, g cosh βv)` with timelike meridian.
//! Type II: `z = (f cos αv, f sin αv, g cosh βv, g sinh βv)` with spacelike meridian.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::meridian::Meridian;
use crate::minkowski::{gram_deviation, Vec4};

/// Guard band for the strict validity inequalities.
pub const VALIDITY_EPS: f64 = 1e-12;

/// Base tolerance for the frame Gram check; scaled by `cosh²(βv)`.
pub const FRAME_GRAM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    TypeI,
    TypeII,
}

impl SurfaceType {
    /// `(⟨x,x⟩, ⟨y,y⟩)` of the tangent frame.
    pub fn tangent_signs(self) -> (f64, f64) {
        match self {
            SurfaceType::TypeI => (-1.0, 1.0),
            SurfaceType::TypeII => (1.0, -1.0),
        }
    }

    /// Expected diagonal of the Gram matrix of `{x, y, n1, n2}`.
    pub fn gram_diag(self) -> [f64; 4] {
        let (ex, ey) = self.tangent_signs();
        [ex, ey, 1.0, 1.0]
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceType::TypeI => "I",
            SurfaceType::TypeII => "II",
        })
    }
}

impl FromStr for SurfaceType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" => Ok(SurfaceType::TypeI),
            "II" | "2" => Ok(SurfaceType::TypeII),
            _ => Err(Error::InvalidParams(format!("surface type must be I or II, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub stype: SurfaceType,
    pub alpha: f64,
    pub beta: f64,
    pub meridian: Meridian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct FirstForm {
    pub E: f64,
    pub F: f64,
    pub G: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x: Vec4,
    pub y: Vec4,
    pub n1: Vec4,
    pub n2: Vec4,
}

impl Frame {
    pub fn vectors(&self) -> [Vec4; 4] {
        [self.x, self.y, self.n1, self.n2]
    }
}

/// First and second partials of the immersion at one `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionJets {
    pub z_u: Vec4,
    pub z_v: Vec4,
    pub z_uu: Vec4,
    pub z_uv: Vec4,
    pub z_vv: Vec4,
}

/// Meridian jets at one `u` together with the rotation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub stype: SurfaceType,
    pub alpha: f64,
    pub beta: f64,
    pub u: f64,
    pub f: Jet2,
    pub g: Jet2,
}

impl SurfaceSpec {
    pub fn new(stype: SurfaceType, alpha: f64, beta: f64, meridian: Meridian) -> Result<SurfaceSpec> {
        if !(alpha > 0.0 && alpha.is_finite() && beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "rotation rates must be positive, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(SurfaceSpec { stype, alpha, beta, meridian })
    }

    pub fn point(&self, u: f64) -> Result<SurfacePoint> {
        let (f, g) = self.meridian.eval_jet(u)?;
        Ok(SurfacePoint { stype: self.stype, alpha: self.alpha, beta: self.beta, u, f, g })
    }

    /// Like [`point`](Self::point) but errors unless the point is valid.
    pub fn valid_point(&self, u: f64) -> Result<SurfacePoint> {
        let p = self.point(u)?;
        if !p.is_valid() {
            return Err(Error::InvalidPoint { u });
        }
        Ok(p)
    }

    pub fn validity(&self, u: f64) -> Result<bool> {
        Ok(self.point(u)?.is_valid())
    }

    pub fn position(&self, u: f64, v: f64) -> Result<Vec4> {
        Ok(self.point(u)?.position(v))
    }

    pub fn first_form(&self, u: f64) -> Result<FirstForm> {
        Ok(self.valid_point(u)?.first_form())
    }

    pub fn frame(&self, u: f64, v: f64) -> Result<Frame> {
        self.valid_point(u)?.frame(v)
    }

    pub fn position_jets(&self, u: f64, v: f64) -> Result<PositionJets> {
        Ok(self.point(u)?.position_jets(v))
    }
}

impl SurfacePoint {
    pub fn first_form(&self) -> FirstForm {
        let (a2, b2) = (self.alpha * self.alpha, self.beta * self.beta);
        let (f, g) = (self.f, self.g);
        match self.stype {
            SurfaceType::TypeI => {
                FirstForm { E: f.d1 * f.d1 - g.d1 * g.d1, F: 0.0, G: a2 * f.val * f.val + b2 * g.val * g.val }
            }
            SurfaceType::TypeII => {
                FirstForm { E: f.d1 * f.d1 + g.d1 * g.d1, F: 0.0, G: a2 * f.val * f.val - b2 * g.val * g.val }
            }
        }
    }

    /// Both strict inequalities of the type hold with margin [`VALIDITY_EPS`].
    pub fn is_valid(&self) -> bool {
        let ff = self.first_form();
        match self.stype {
            SurfaceType::TypeI => ff.E < -VALIDITY_EPS && ff.G > VALIDITY_EPS,
            SurfaceType::TypeII => ff.E > VALIDITY_EPS && ff.G < -VALIDITY_EPS,
        }
    }

    /// `(h3, h4)`: the hyperbolic functions in the third and fourth slots.
    /// Both types satisfy `h3' = β h4` and `h4' = β h3`.
    fn hyperbolic(&self, v: f64) -> (f64, f64) {
        let bv = self.beta * v;
        match self.stype {
            SurfaceType::TypeI => (bv.sinh(), bv.cosh()),
            SurfaceType::TypeII => (bv.cosh(), bv.sinh()),
        }
    }

    pub fn position(&self, v: f64) -> Vec4 {
        let (s, c) = (self.alpha * v).sin_cos();
        let (h3, h4) = self.hyperbolic(v);
        let (f, g) = (self.f.val, self.g.val);
        Vec4::new(f * c, f * s, g * h3, g * h4)
    }

    pub fn position_jets(&self, v: f64) -> PositionJets {
        let (al, be) = (self.alpha, self.beta);
        let (s, c) = (al * v).sin_cos();
        let (h3, h4) = self.hyperbolic(v);
        let (f, g) = (self.f, self.g);
        PositionJets {
            z_u: Vec4::new(f.d1 * c, f.d1 * s, g.d1 * h3, g.d1 * h4),
            z_v: Vec4::new(-al * f.val * s, al * f.val * c, be * g.val * h4, be * g.val * h3),
            z_uu: Vec4::new(f.d2 * c, f.d2 * s, g.d2 * h3, g.d2 * h4),
            z_uv: Vec4::new(-al * f.d1 * s, al * f.d1 * c, be * g.d1 * h4, be * g.d1 * h3),
            z_vv: Vec4::new(-al * al * f.val * c, -al * al * f.val * s, be * be * g.val * h3, be * be * g.val * h4),
        }
    }

    /// Normalizers `(a, b)` with `x = z_u / a`, `y = z_v / b`.
    pub fn normalizers(&self) -> (f64, f64) {
        let ff = self.first_form();
        (ff.E.abs().sqrt(), ff.G.abs().sqrt())
    }

    /// Unnormalized normals `(N1, N2)`; `n_k = N_k / |N_k|` with `|N1|, |N2|` given by
    /// [`normalizers`](Self::normalizers) in the type's order.
    fn raw_normals(&self, v: f64) -> (Vec4, Vec4) {
        let (al, be) = (self.alpha, self.beta);
        let (s, c) = (al * v).sin_cos();
        let (h3, h4) = self.hyperbolic(v);
        let (f, g) = (self.f, self.g);
        match self.stype {
            SurfaceType::TypeI => (
                Vec4::new(be * g.val * s, -be * g.val * c, al * f.val * h4, al * f.val * h3),
                Vec4::new(g.d1 * c, g.d1 * s, f.d1 * h3, f.d1 * h4),
            ),
            SurfaceType::TypeII => (
                Vec4::new(g.d1 * c, g.d1 * s, -f.d1 * h3, -f.d1 * h4),
                Vec4::new(-be * g.val * s, be * g.val * c, al * f.val * h4, al * f.val * h3),
            ),
        }
    }

    /// `{x, y, n1, n2}` at `v`, after checking the Gram matrix.
    pub fn frame(&self, v: f64) -> Result<Frame> {
        let fr = self.frame_unchecked(v);
        let dev = gram_deviation(&fr.vectors(), &self.stype.gram_diag());
        let cosh = (self.beta * v).cosh();
        if !(dev <= FRAME_GRAM_TOL * cosh * cosh) {
            return Err(Error::DegenerateFrame { u: self.u, deviation: dev });
        }
        Ok(fr)
    }

    pub(crate) fn frame_unchecked(&self, v: f64) -> Frame {
        let (a, b) = self.normalizers();
        let j = self.position_jets(v);
        let (r1, r2) = self.raw_normals(v);
        let (n1, n2) = match self.stype {
            SurfaceType::TypeI => (r1 * (1.0 / b), r2 * (1.0 / a)),
            SurfaceType::TypeII => (r1 * (1.0 / a), r2 * (1.0 / b)),
        };
        Frame { x: j.z_u * (1.0 / a), y: j.z_v * (1.0 / b), n1, n2 }
    }
}
