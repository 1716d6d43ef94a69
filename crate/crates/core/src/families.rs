//! Generators for the special surface classes.
//!
//! Minimal and PNMC meridians have closed forms. Flat, flat-normal and CMC
//! meridians solve a second-order ODE for `f` in the parametrization `g = u`,
//! integrated here with fixed-step RK4.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::Jet2;
use crate::meridian::{Meridian, Node};
use crate::surface::{SurfaceSpec, SurfaceType};

/// Relative margin kept from the endpoints of a valid interval when clipping.
pub const CLIP_MARGIN: f64 = 1e-6;

const GUARD_ONE_MINUS_FP2: f64 = 1e-10;
const GUARD_DENOM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialClass {
    Flat,
    FlatNormal,
    Minimal,
    /// Constant mean curvature with `ν₁ − ν₂ = c`, `⟨H,H⟩ = c²/4`.
    Cmc(f64),
    /// Parallel normalized mean curvature; carries the family constant `C`.
    Pnmc(f64),
}

impl SpecialClass {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpecialClass::Cmc(c) if c == 0.0 || !c.is_finite() => {
                Err(Error::InvalidParams(format!("CMC constant must be finite and non-zero, got {c}")))
            }
            SpecialClass::Pnmc(c) if c == 0.0 || !c.is_finite() => {
                Err(Error::InvalidParams(format!("PNMC constant must be finite and non-zero, got {c}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SpecialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialClass::Flat => write!(f, "flat"),
            SpecialClass::FlatNormal => write!(f, "flat-normal"),
            SpecialClass::Minimal => write!(f, "minimal"),
            SpecialClass::Cmc(c) => write!(f, "cmc(c={c})"),
            SpecialClass::Pnmc(c) => write!(f, "pnmc(C={c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalParams {
    pub a: f64,
    pub c: f64,
    /// Branch sign, `+1` or `−1`.
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IvpConfig {
    pub u0: f64,
    pub f0: f64,
    pub fp0: f64,
    pub u_end: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integration {
    pub meridian: Meridian,
    pub truncated: bool,
    pub reason: Option<String>,
}

fn check_rates(alpha: f64, beta: f64) -> Result<()> {
    if alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("rotation rates must be positive, got {alpha}, {beta}")))
    }
}

fn intersect(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    let (lo, hi) = (a.0.max(b.0), a.1.min(b.1));
    (lo < hi).then_some((lo, hi))
}

/// Minimal meridian with `g = u`:
/// type I `f = (√A/α) sin(ε(α/β) ln|βu + √(A + β²u²)| + C)`,
/// type II the same with `√(β²u² − A)`, restricted to `u > √A/β`
/// (or `u < −√A/β` when `domain` lies on the negative side).
pub fn minimal_meridian(stype: SurfaceType, p: MinimalParams, domain: Option<(f64, f64)>) -> Result<Meridian> {
    check_rates(p.alpha, p.beta)?;
    if !(p.a > 0.0 && p.a.is_finite()) || !p.c.is_finite() {
        return Err(Error::InvalidParams(format!("need A > 0 and finite C, got A = {}, C = {}", p.a, p.c)));
    }
    if p.eps != 1.0 && p.eps != -1.0 {
        return Err(Error::InvalidParams(format!("eps must be +1 or -1, got {}", p.eps)));
    }
    let (al, be) = (p.alpha, p.beta);
    let u = Expr::var;
    let bu2 = (be * be) * u().pow(Expr::num(2.0));
    let root = match stype {
        SurfaceType::TypeI => (Expr::num(p.a) + bu2).sqrt(),
        SurfaceType::TypeII => (bu2 - p.a).sqrt(),
    };
    let theta = (p.eps * al / be) * (be * u() + root).abs().ln() + p.c;
    let f = (p.a.sqrt() / al) * theta.sin();

    let requested = domain.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    let dom = match stype {
        SurfaceType::TypeI => intersect(requested, (f64::NEG_INFINITY, f64::INFINITY)),
        SurfaceType::TypeII => {
            let edge = p.a.sqrt() / be * (1.0 + CLIP_MARGIN);
            intersect(requested, (edge, f64::INFINITY)).or_else(|| intersect(requested, (f64::NEG_INFINITY, -edge)))
        }
    };
    let dom = dom.ok_or_else(|| {
        Error::EmptyDomain(format!("minimal type {stype} meridian on [{}, {}]", requested.0, requested.1))
    })?;
    Meridian::closed_form(f, None, dom)
}

/// PNMC meridian with `g = u`: type I `f = ±√(u² + C²)`, type II `f = ±√(C² − u²)`.
/// Type II is clipped to the valid interval `|C|α/√(α²+β²) < u < |C|`.
pub fn pnmc_meridian(
    stype: SurfaceType,
    c: f64,
    sign: f64,
    alpha: f64,
    beta: f64,
    domain: Option<(f64, f64)>,
) -> Result<Meridian> {
    SpecialClass::Pnmc(c).validate()?;
    check_rates(alpha, beta)?;
    if sign != 1.0 && sign != -1.0 {
        return Err(Error::InvalidParams(format!("branch sign must be +1 or -1, got {sign}")));
    }
    let u2 = Expr::var().pow(Expr::num(2.0));
    let requested = domain.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    let (radicand, dom) = match stype {
        SurfaceType::TypeI => (u2 + c * c, intersect(requested, (f64::NEG_INFINITY, f64::INFINITY))),
        SurfaceType::TypeII => {
            let c = c.abs();
            let lo = c * alpha / (alpha * alpha + beta * beta).sqrt();
            let pad = CLIP_MARGIN * (c - lo);
            (Expr::num(c * c) - u2, intersect(requested, (lo + pad, c - pad)))
        }
    };
    let dom = dom.ok_or_else(|| {
        Error::EmptyDomain(format!("PNMC type {stype} meridian on [{}, {}]", requested.0, requested.1))
    })?;
    let root = radicand.sqrt();
    let f = if sign > 0.0 { root } else { -root };
    Meridian::closed_form(f, None, dom)
}

/// Solves the class's characterizing equation for `f''` with `g = u`.
pub fn ode_rhs(
    sclass: SpecialClass,
    stype: SurfaceType,
    alpha: f64,
    beta: f64,
    u: f64,
    f: f64,
    fp: f64,
) -> Result<f64> {
    let (a2, b2) = (alpha * alpha, beta * beta);
    let q = a2 * f + b2 * u * fp;
    let singular = |factor| Err(Error::Singular { factor, u });
    if matches!(sclass, SpecialClass::Flat) && !(q.abs() > GUARD_DENOM) {
        return singular("alpha^2 f + beta^2 u f'");
    }
    match stype {
        SurfaceType::TypeI => {
            let s = 1.0 - fp * fp;
            let g = a2 * f * f + b2 * u * u;
            if !(s > GUARD_ONE_MINUS_FP2) {
                return singular("1 - f'^2");
            }
            if !(g > GUARD_DENOM) {
                return singular("alpha^2 f^2 + beta^2 u^2");
            }
            Ok(match sclass {
                SpecialClass::Flat => {
                    let m = f - u * fp;
                    -s * a2 * b2 * m * m / (q * g)
                }
                SpecialClass::FlatNormal => s * q / g,
                SpecialClass::Minimal => -s * q / g,
                SpecialClass::Cmc(c) => s * (-q / g + c * s.sqrt()),
                SpecialClass::Pnmc(_) => return Err(pnmc_not_ode()),
            })
        }
        SurfaceType::TypeII => {
            let s = 1.0 + fp * fp;
            let gs = a2 * f * f - b2 * u * u;
            if !(gs.abs() > GUARD_DENOM) {
                return singular("alpha^2 f^2 - beta^2 u^2");
            }
            Ok(match sclass {
                SpecialClass::Flat => {
                    let m = u * fp - f;
                    a2 * b2 * m * m * s / (gs * q)
                }
                SpecialClass::FlatNormal => -s * q / gs,
                SpecialClass::Minimal => s * q / gs,
                SpecialClass::Cmc(c) => s * (q / gs + c * s.sqrt()),
                SpecialClass::Pnmc(_) => return Err(pnmc_not_ode()),
            })
        }
    }
}

fn pnmc_not_ode() -> Error {
    Error::InvalidParams("the PNMC class is generated in closed form, not by integration".into())
}

/// Signed quantities that must stay away from zero, with their names.
fn guard_values(
    sclass: SpecialClass,
    stype: SurfaceType,
    alpha: f64,
    beta: f64,
    u: f64,
    f: f64,
    fp: f64,
) -> [(&'static str, f64); 3] {
    let (a2, b2) = (alpha * alpha, beta * beta);
    let q = if matches!(sclass, SpecialClass::Flat) { a2 * f + b2 * u * fp } else { 1.0 };
    match stype {
        SurfaceType::TypeI => [
            ("1 - f'^2", 1.0 - fp * fp),
            ("alpha^2 f^2 + beta^2 u^2", a2 * f * f + b2 * u * u),
            ("alpha^2 f + beta^2 u f'", q),
        ],
        SurfaceType::TypeII => [
            ("alpha^2 f^2 - beta^2 u^2", a2 * f * f - b2 * u * u),
            ("1 + f'^2", 1.0 + fp * fp),
            ("alpha^2 f + beta^2 u f'", q),
        ],
    }
}

/// RK4 on `(f, f')`, fixed step, truncating at the first guard failure.
///
/// A guarded quantity that changes sign within a step also truncates: the exact
/// solution cannot cross the singular set.
pub fn integrate_special(
    sclass: SpecialClass,
    stype: SurfaceType,
    alpha: f64,
    beta: f64,
    cfg: IvpConfig,
) -> Result<Integration> {
    sclass.validate()?;
    check_rates(alpha, beta)?;
    if matches!(sclass, SpecialClass::Pnmc(_)) {
        return Err(pnmc_not_ode());
    }
    let IvpConfig { u0, f0, fp0, u_end, h } = cfg;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParams(format!("step size must be positive, got {h}")));
    }
    if !(u_end > u0) || ![u0, f0, fp0, u_end].iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidParams(format!("need finite data with u_end > u0, got [{u0}, {u_end}]")));
    }
    let rhs = |u, f, p| ode_rhs(sclass, stype, alpha, beta, u, f, p);
    let guards = |u, f, p| guard_values(sclass, stype, alpha, beta, u, f, p);

    let fpp0 = rhs(u0, f0, fp0)?;
    let start = guards(u0, f0, fp0);
    let valid0 = match stype {
        SurfaceType::TypeI => start[0].1 > 0.0 && start[1].1 > 0.0,
        SurfaceType::TypeII => start[0].1 < 0.0,
    };
    if !valid0 {
        return Err(Error::InvalidParams(format!(
            "initial point (u, f, f') = ({u0}, {f0}, {fp0}) is not valid for type {stype}"
        )));
    }
    let signs: Vec<bool> = start.iter().map(|g| g.1 > 0.0).collect();
    // Evaluates the right side and rejects any guard sign flip.
    let stage = |u: f64, f: f64, p: f64| -> std::result::Result<f64, String> {
        let acc = rhs(u, f, p).map_err(|e| e.to_string())?;
        for ((name, val), &pos) in guards(u, f, p).iter().zip(&signs) {
            if (*val > 0.0) != pos {
                return Err(format!("{name} changes sign near u = {u}"));
            }
        }
        Ok(acc)
    };

    let span = u_end - u0;
    let n = ((span / h).round() as usize).max(1);
    let h = span / n as f64;
    let node = |u: f64, f: f64, p: f64, pp: f64| Node { u, f: Jet2::new(f, p, pp), g: Jet2::variable(u) };
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(node(u0, f0, fp0, fpp0));
    let (mut f, mut p, mut acc) = (f0, fp0, fpp0);
    let mut reason = None;
    for i in 0..n {
        let u = u0 + i as f64 * h;
        let step = (|| {
            let (k1f, k1p) = (p, acc);
            let (f2, p2) = (f + 0.5 * h * k1f, p + 0.5 * h * k1p);
            let (k2f, k2p) = (p2, stage(u + 0.5 * h, f2, p2)?);
            let (f3, p3) = (f + 0.5 * h * k2f, p + 0.5 * h * k2p);
            let (k3f, k3p) = (p3, stage(u + 0.5 * h, f3, p3)?);
            let (f4, p4) = (f + h * k3f, p + h * k3p);
            let (k4f, k4p) = (p4, stage(u + h, f4, p4)?);
            let fn_ = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            let pn = p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            let un = if i + 1 == n { u_end } else { u0 + (i + 1) as f64 * h };
            let an = stage(un, fn_, pn)?;
            Ok::<_, String>((un, fn_, pn, an))
        })();
        match step {
            Ok((un, fn_, pn, an)) => {
                nodes.push(node(un, fn_, pn, an));
                (f, p, acc) = (fn_, pn, an);
            }
            Err(why) => {
                reason = Some(why);
                break;
            }
        }
    }
    if nodes.len() < 2 {
        return Err(Error::Singular { factor: "guard at first step", u: u0 });
    }
    Ok(Integration { meridian: Meridian::sampled(nodes)?, truncated: reason.is_some(), reason })
}

/// Left minus right side of the class's characterizing identity for general `g`.
pub fn class_residual(sclass: SpecialClass, spec: &SurfaceSpec, u: f64) -> Result<f64> {
    sclass.validate()?;
    let p = spec.valid_point(u)?;
    let (al, be) = (spec.alpha, spec.beta);
    let (f, g) = (p.f, p.g);
    let w = f.d2 * g.d1 - f.d1 * g.d2;
    let m = f.val * g.d1 - f.d1 * g.val;
    let q = al * al * f.val * g.d1 + be * be * f.d1 * g.val;
    let ff = p.first_form();
    let (e, gg) = (ff.E, ff.G);
    let ab2 = al * al * be * be;
    Ok(match (sclass, spec.stype) {
        (SpecialClass::Minimal, SurfaceType::TypeI) => w / -e + q / gg,
        (SpecialClass::Minimal, SurfaceType::TypeII) => w / e - q / gg,
        (SpecialClass::FlatNormal, SurfaceType::TypeI) => w / -e - q / gg,
        (SpecialClass::FlatNormal, SurfaceType::TypeII) => w / e + q / gg,
        (SpecialClass::Flat, SurfaceType::TypeI) => ab2 * m * m * e - w * q * gg,
        (SpecialClass::Flat, SurfaceType::TypeII) => ab2 * m * m * e - w * q * gg,
        (SpecialClass::Cmc(c), _) => {
            let fc = p.frenet_coeffs();
            fc.nu1 - fc.nu2 - c
        }
        (SpecialClass::Pnmc(_), _) => p.frenet_coeffs().phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_sample;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn spec_of(stype: SurfaceType, a: f64, b: f64, m: Meridian) -> SurfaceSpec {
        SurfaceSpec::new(stype, a, b, m).unwrap()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
    }

    fn mp(a: f64, c: f64, eps: f64, alpha: f64, beta: f64) -> MinimalParams {
        MinimalParams { a, c, eps, alpha, beta }
    }

    #[test]
    fn minimal_spot_value() {
        let m = minimal_meridian(SurfaceType::TypeI, mp(1.0, FRAC_PI_4, 1.0, 1.0, 1.0), None).unwrap();
        assert_abs_diff_eq!(m.eval_jet(0.0).unwrap().0.val, SQRT_2 / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn minimal_meridians_are_minimal() {
        let cases = [
            (SurfaceType::TypeI, mp(1.0, FRAC_PI_4, 1.0, 1.0, 1.0), (-2.0, 2.0)),
            (SurfaceType::TypeI, mp(2.0, 0.3, -1.0, 1.5, 0.7), (-1.0, 3.0)),
            (SurfaceType::TypeII, mp(1.0, 0.5, 1.0, 1.0, 1.0), (1.2, 3.0)),
            (SurfaceType::TypeII, mp(0.5, -0.2, -1.0, 0.8, 1.3), (0.8, 2.5)),
        ];
        for (t, p, dom) in cases {
            let m = minimal_meridian(t, p, Some(dom)).unwrap();
            let s = spec_of(t, p.alpha, p.beta, m);
            let mut conserved = Vec::new();
            for u in grid(dom.0, dom.1, 101) {
                let smp = invariant_sample(&s, u);
                if !smp.valid {
                    continue;
                }
                assert!(smp.H1.abs() < 1e-8 && smp.H2.abs() < 1e-8, "{t} u={u}: {smp:?}");
                assert!(class_residual(SpecialClass::Minimal, &s, u).unwrap().abs() < 1e-8);
                assert!((smp.nu1 - smp.nu2).abs() < 1e-8);
                conserved.push(smp.G * smp.G * (smp.mu * smp.mu + smp.nu1 * smp.nu1));
            }
            assert!(conserved.len() > 90);
            let want = (p.alpha * p.alpha + p.beta * p.beta) * p.a;
            for c in conserved {
                assert!((c - want).abs() / want < 1e-8, "{c} vs {want}");
            }
        }
    }

    #[test]
    fn minimal_first_form_relation() {
        // with g = u, E = −(α²f² + β²u²)/(A + β²u²) rather than −1
        let (a, al, be) = (1.0, 1.0, 1.0);
        let m = minimal_meridian(SurfaceType::TypeI, mp(a, FRAC_PI_4, 1.0, al, be), None).unwrap();
        let s = spec_of(SurfaceType::TypeI, al, be, m.clone());
        for u in grid(-1.5, 1.5, 13) {
            let f = m.eval_jet(u).unwrap().0.val;
            let e = s.first_form(u).unwrap().E;
            assert_abs_diff_eq!(e, -(al * al * f * f + be * be * u * u) / (a + be * be * u * u), epsilon = 1e-14);
        }
        assert_abs_diff_eq!(s.first_form(0.0).unwrap().E, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn minimal_type_two_domain_is_clipped() {
        let p = mp(4.0, 0.0, 1.0, 1.0, 2.0);
        let m = minimal_meridian(SurfaceType::TypeII, p, Some((0.0, 3.0))).unwrap();
        assert!(m.domain().0 > 1.0 && m.domain().0 < 1.0 + 1e-5);
        let m = minimal_meridian(SurfaceType::TypeII, p, Some((-3.0, 0.0))).unwrap();
        assert!(m.domain().1 < -1.0);
        assert!(matches!(minimal_meridian(SurfaceType::TypeII, p, Some((-0.5, 0.5))), Err(Error::EmptyDomain(_))));
        assert!(minimal_meridian(SurfaceType::TypeI, mp(0.0, 0.0, 1.0, 1.0, 1.0), None).is_err());
        assert!(minimal_meridian(SurfaceType::TypeI, mp(1.0, 0.0, 0.5, 1.0, 1.0), None).is_err());
    }

    #[test]
    fn pnmc_examples() {
        let m = pnmc_meridian(SurfaceType::TypeI, 1.0, 1.0, 1.0, 1.0, None).unwrap();
        assert_eq!(m.eval_jet(0.0).unwrap().0, Jet2::new(1.0, 0.0, 1.0));
        for u in grid(-2.0, 2.0, 17) {
            let (f, g) = m.eval_jet(u).unwrap();
            assert!((f.val * f.d1 - g.val * g.d1).abs() < 1e-14);
        }
        let m = pnmc_meridian(SurfaceType::TypeII, 1.0, 1.0, 1.0, 1.0, None).unwrap();
        let (lo, hi) = m.domain();
        assert!((lo - 1.0 / SQRT_2).abs() < 1e-6 && lo > 1.0 / SQRT_2);
        assert!((hi - 1.0).abs() < 1e-6 && hi < 1.0);
        assert!(pnmc_meridian(SurfaceType::TypeII, 1.0, 1.0, 1.0, 1.0, Some((-0.5, 0.5))).is_err());
        assert!(pnmc_meridian(SurfaceType::TypeI, 0.0, 1.0, 1.0, 1.0, None).is_err());
    }

    #[test]
    fn pnmc_invariants() {
        for (c, al, be, sign) in [(1.0, 1.0, 1.0, 1.0), (0.5, 1.5, 0.7, -1.0), (2.0, 0.8, 1.2, 1.0)] {
            let m = pnmc_meridian(SurfaceType::TypeI, c, sign, al, be, Some((-2.0, 2.0))).unwrap();
            let s = spec_of(SurfaceType::TypeI, al, be, m);
            for u in grid(-2.0, 2.0, 41) {
                let smp = invariant_sample(&s, u);
                assert!(smp.valid);
                assert!((smp.Hnorm2 - 1.0 / (c * c)).abs() < 1e-8, "{smp:?}");
                assert!(smp.phi.abs() < 1e-12 && smp.kappa.abs() < 1e-10);
                assert!(class_residual(SpecialClass::Pnmc(c), &s, u).unwrap().abs() < 1e-12);
            }
            let m = pnmc_meridian(SurfaceType::TypeII, c, sign, al, be, None).unwrap();
            let (lo, hi) = m.domain();
            let s = spec_of(SurfaceType::TypeII, al, be, m);
            // 1/G² amplifies roundoff next to the G = 0 endpoint
            let pad = 0.05 * (hi - lo);
            for u in grid(lo + pad, hi - pad, 41) {
                let smp = invariant_sample(&s, u);
                assert!(smp.valid, "u={u}");
                assert!(smp.phi.abs() < 1e-12 && smp.kappa.abs() < 1e-10, "u={u} {lo} {hi}: {smp:?}");
            }
        }
    }

    #[test]
    fn ode_rhs_examples() {
        let r = |cl| ode_rhs(cl, SurfaceType::TypeI, 1.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(r(SpecialClass::FlatNormal), 1.0);
        assert_eq!(r(SpecialClass::Cmc(2.0)), 1.0);
        assert_eq!(r(SpecialClass::Flat), -1.0);
    }

    #[test]
    fn ode_rhs_reports_singular_factor() {
        let e = ode_rhs(SpecialClass::Flat, SurfaceType::TypeI, 1.0, 1.0, 1.0, 1.0, -1.0);
        assert!(matches!(e, Err(Error::Singular { factor: "alpha^2 f + beta^2 u f'", .. })));
        let e = ode_rhs(SpecialClass::Cmc(1.0), SurfaceType::TypeI, 1.0, 1.0, 0.0, 1.0, 1.0);
        assert!(matches!(e, Err(Error::Singular { factor: "1 - f'^2", .. })));
        let e = ode_rhs(SpecialClass::FlatNormal, SurfaceType::TypeII, 1.0, 1.0, 1.0, 1.0, 0.0);
        assert!(matches!(e, Err(Error::Singular { factor: "alpha^2 f^2 - beta^2 u^2", .. })));
        assert!(ode_rhs(SpecialClass::Pnmc(1.0), SurfaceType::TypeI, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
    }

    /// The ODE right side is the class residual solved for f'': plugging it back
    /// into the unreduced residual must give zero.
    #[test]
    fn ode_rhs_zeroes_class_residual() {
        let pts = [(SurfaceType::TypeI, 0.7, 1.3, 0.4, 0.9, 0.3), (SurfaceType::TypeII, 1.1, 0.6, 1.5, 0.4, -0.7)];
        for (t, al, be, u0, f0, fp0) in pts {
            for cl in [SpecialClass::Flat, SpecialClass::FlatNormal, SpecialClass::Minimal, SpecialClass::Cmc(0.8)] {
                let fpp = ode_rhs(cl, t, al, be, u0, f0, fp0).unwrap();
                let src = format!("{f0} + {fp0}*(u - {u0}) + {}*(u - {u0})^2", fpp / 2.0);
                let m = Meridian::from_dsl(&src, None, (u0 - 1e-3, u0 + 1e-3)).unwrap();
                let s = spec_of(t, al, be, m);
                let res = class_residual(cl, &s, u0).unwrap();
                assert!(res.abs() < 1e-12, "{t} {cl}: {res}");
            }
        }
    }

    #[test]
    fn negative_controls_are_nonzero() {
        let m = Meridian::from_dsl("1", None, (-1.0, 1.0)).unwrap();
        let s = spec_of(SurfaceType::TypeI, 1.0, 1.0, m);
        assert_abs_diff_eq!(class_residual(SpecialClass::Minimal, &s, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(class_residual(SpecialClass::FlatNormal, &s, 0.0).unwrap().abs(), 1.0, epsilon = 1e-15);
    }

    fn ivp(u0: f64, f0: f64, fp0: f64, u_end: f64, h: f64) -> IvpConfig {
        IvpConfig { u0, f0, fp0, u_end, h }
    }

    fn check_nodes_valid(t: SurfaceType, al: f64, be: f64, m: &Meridian) {
        let s = spec_of(t, al, be, m.clone());
        for n in m.nodes().unwrap() {
            assert!(s.validity(n.u).unwrap(), "invalid node at {}", n.u);
        }
    }

    #[test]
    fn flat_integration_is_flat() {
        for (t, cfg) in
            [(SurfaceType::TypeI, ivp(1.0, 1.0, 0.3, 2.0, 1e-3)), (SurfaceType::TypeII, ivp(1.0, 0.5, 0.3, 2.0, 1e-3))]
        {
            let out = integrate_special(SpecialClass::Flat, t, 1.0, 1.0, cfg).unwrap();
            assert!(!out.truncated, "{:?}", out.reason);
            check_nodes_valid(t, 1.0, 1.0, &out.meridian);
            let s = spec_of(t, 1.0, 1.0, out.meridian);
            for u in grid(1.0, 2.0, 333) {
                assert!(invariant_sample(&s, u).K.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rk4_endpoint_converges_at_fourth_order() {
        let end = |h| {
            let out = integrate_special(SpecialClass::Flat, SurfaceType::TypeI, 1.0, 1.0, ivp(1.0, 1.0, 0.3, 2.0, h))
                .unwrap();
            out.meridian.nodes().unwrap().last().unwrap().f.val
        };
        let (a, b, c) = (end(0.04), end(0.02), end(0.01));
        let ratio = (a - b) / (b - c);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn singular_flat_ivp_is_truncated() {
        let out =
            integrate_special(SpecialClass::Flat, SurfaceType::TypeI, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 2.0, 1e-3)).unwrap();
        assert!(out.truncated);
        let (_, hi) = out.meridian.domain();
        assert!(hi < 2.0);
        check_nodes_valid(SurfaceType::TypeI, 1.0, 1.0, &out.meridian);
    }

    #[test]
    fn flat_normal_integration() {
        for t in [SurfaceType::TypeI, SurfaceType::TypeII] {
            let out = integrate_special(SpecialClass::FlatNormal, t, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 2.0, 1e-3)).unwrap();
            assert!(!out.truncated, "{:?}", out.reason);
            let s = spec_of(t, 1.0, 1.0, out.meridian);
            for u in grid(1.0, 2.0, 201) {
                assert!(invariant_sample(&s, u).kappa.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn cmc_integration() {
        for c in [0.5, 1.0, 2.0] {
            for (t, cfg) in [
                (SurfaceType::TypeI, ivp(1.0, 0.5, 0.0, 2.0, 1e-3)),
                (SurfaceType::TypeII, ivp(1.0, 0.1, 0.0, 1.5, 1e-3)),
            ] {
                let out = integrate_special(SpecialClass::Cmc(c), t, 1.0, 1.0, cfg).unwrap();
                assert!(!out.truncated, "{t} c={c}: {:?}", out.reason);
                let (lo, hi) = out.meridian.domain();
                let s = spec_of(t, 1.0, 1.0, out.meridian);
                for u in grid(lo, hi, 157) {
                    let smp = invariant_sample(&s, u);
                    assert!((smp.Hnorm2 - c * c / 4.0).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn integration_rejects_bad_configs() {
        let cl = SpecialClass::FlatNormal;
        let t = SurfaceType::TypeI;
        assert!(integrate_special(cl, t, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 2.0, 0.0)).is_err());
        assert!(integrate_special(cl, t, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 0.5, 1e-2)).is_err());
        assert!(matches!(
            integrate_special(cl, t, 1.0, 1.0, ivp(1.0, 0.5, 1.0, 2.0, 1e-2)),
            Err(Error::Singular { .. })
        ));
        assert!(integrate_special(SpecialClass::Cmc(0.0), t, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 2.0, 1e-2)).is_err());
        assert!(integrate_special(SpecialClass::Pnmc(1.0), t, 1.0, 1.0, ivp(1.0, 0.5, 0.0, 2.0, 1e-2)).is_err());
    }
}
