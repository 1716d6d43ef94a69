//! Meridian curves `u ↦ (f(u), g(u))` with second-order derivative access.
//!
//! Closed-form meridians are expression trees differentiated by [`Jet2`]
//! arithmetic. Sampled meridians (ODE output, CSV input) store a jet per node
//! and interpolate with the quintic Hermite polynomial matching value, first
//! and second derivative at both ends of each cell.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::expr::{parse_meridian, Expr};
use crate::jet::Jet2;

/// CSV header for sampled meridians.
pub const CSV_HEADER: [&str; 7] = ["u", "f", "fp", "fpp", "g", "gp", "gpp"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeridianKind {
    ClosedForm,
    Sampled,
}

/// One tabulated point of a sampled meridian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub u: f64,
    pub f: Jet2,
    pub g: Jet2,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Closed { f: Expr, g: Option<Expr> },
    Sampled(Vec<Node>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Meridian {
    repr: Repr,
    lo: f64,
    hi: f64,
}

impl Meridian {
    /// Closed-form meridian on `[lo, hi]`; `g = None` means `g(u) = u`.
    /// Infinite bounds are allowed.
    pub fn closed_form(f: Expr, g: Option<Expr>, (lo, hi): (f64, f64)) -> Result<Meridian> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidParams(format!("bad meridian domain [{lo}, {hi}]")));
        }
        Ok(Meridian { repr: Repr::Closed { f, g }, lo, hi })
    }

    /// Parses `f` (and optionally `g`) from the expression DSL.
    pub fn from_dsl(f: &str, g: Option<&str>, domain: (f64, f64)) -> Result<Meridian> {
        let f = parse_meridian(f)?;
        let g = g.map(parse_meridian).transpose()?;
        Meridian::closed_form(f, g, domain)
    }

    /// Tabulated meridian; needs at least two nodes on a strictly increasing grid.
    pub fn sampled(nodes: Vec<Node>) -> Result<Meridian> {
        if nodes.len() < 2 {
            return Err(Error::InvalidParams("sampled meridian needs at least 2 nodes".into()));
        }
        for n in &nodes {
            if !(n.u.is_finite() && n.f.is_finite() && n.g.is_finite()) {
                return Err(Error::NonFinite { u: n.u });
            }
        }
        if let Some(w) = nodes.windows(2).find(|w| w[1].u <= w[0].u) {
            return Err(Error::InvalidParams(format!("grid not strictly increasing at u = {}", w[1].u)));
        }
        let (lo, hi) = (nodes[0].u, nodes[nodes.len() - 1].u);
        Ok(Meridian { repr: Repr::Sampled(nodes), lo, hi })
    }

    pub fn kind(&self) -> MeridianKind {
        match self.repr {
            Repr::Closed { .. } => MeridianKind::ClosedForm,
            Repr::Sampled(_) => MeridianKind::Sampled,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, u: f64) -> bool {
        u >= self.lo && u <= self.hi
    }

    pub fn nodes(&self) -> Option<&[Node]> {
        match &self.repr {
            Repr::Sampled(n) => Some(n),
            Repr::Closed { .. } => None,
        }
    }

    /// The `(f, g)` expressions of a closed-form meridian.
    pub fn exprs(&self) -> Option<(&Expr, Option<&Expr>)> {
        match &self.repr {
            Repr::Closed { f, g } => Some((f, g.as_ref())),
            Repr::Sampled(_) => None,
        }
    }

    /// Same curve restricted to `[lo, hi] ∩ domain`.
    pub fn restricted(&self, lo: f64, hi: f64) -> Result<Meridian> {
        let (lo, hi) = (lo.max(self.lo), hi.min(self.hi));
        if !(lo < hi) {
            return Err(Error::EmptyDomain(format!("[{lo}, {hi}]")));
        }
        match &self.repr {
            Repr::Closed { f, g } => Meridian::closed_form(f.clone(), g.clone(), (lo, hi)),
            Repr::Sampled(_) => {
                let mut nodes = vec![self.node_at(lo)?];
                nodes.extend(self.nodes().unwrap().iter().filter(|n| n.u > lo && n.u < hi));
                nodes.push(self.node_at(hi)?);
                Meridian::sampled(nodes)
            }
        }
    }

    fn check(&self, u: f64) -> Result<()> {
        if !u.is_finite() {
            return Err(Error::NonFinite { u });
        }
        if !self.contains(u) {
            return Err(Error::OutOfDomain { u, lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    fn node_at(&self, u: f64) -> Result<Node> {
        let (f, g) = self.eval_jet(u)?;
        Ok(Node { u, f, g })
    }

    /// `(f, g)` jets at `u`.
    pub fn eval_jet(&self, u: f64) -> Result<(Jet2, Jet2)> {
        self.check(u)?;
        match &self.repr {
            Repr::Closed { f, g } => {
                let fj = f.eval_jet(u)?;
                let gj = match g {
                    Some(g) => g.eval_jet(u)?,
                    None => Jet2::variable(u),
                };
                Ok((fj, gj))
            }
            Repr::Sampled(nodes) => Ok(interpolate(nodes, u)),
        }
    }

    /// `(f, g)` values only. For closed forms this bypasses jet arithmetic.
    pub fn eval_value(&self, u: f64) -> Result<(f64, f64)> {
        self.check(u)?;
        match &self.repr {
            Repr::Closed { f, g } => {
                let gv = match g {
                    Some(g) => g.eval(u)?,
                    None => u,
                };
                Ok((f.eval(u)?, gv))
            }
            Repr::Sampled(nodes) => {
                let (f, g) = interpolate(nodes, u);
                Ok((f.val, g.val))
            }
        }
    }

    /// Resamples onto `n ≥ 2` equally spaced nodes over the (finite) domain.
    pub fn to_sampled(&self, n: usize) -> Result<Meridian> {
        if n < 2 || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidParams("resampling needs a finite domain and n >= 2".into()));
        }
        let step = (self.hi - self.lo) / (n - 1) as f64;
        let nodes = (0..n)
            .map(|i| {
                let u = if i == n - 1 { self.hi } else { self.lo + step * i as f64 };
                self.node_at(u)
            })
            .collect::<Result<Vec<_>>>()?;
        Meridian::sampled(nodes)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let nodes =
            self.nodes().ok_or_else(|| Error::InvalidParams("only sampled meridians serialize to CSV".into()))?;
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(CSV_HEADER)?;
        for n in nodes {
            let row = [n.u, n.f.val, n.f.d1, n.f.d2, n.g.val, n.g.d1, n.g.d2];
            wr.write_record(row.iter().map(|x| format!("{x:.16e}")))?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Meridian> {
        let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
        let header = rd.headers()?;
        if header.iter().ne(CSV_HEADER) {
            return Err(Error::Csv(format!(
                "expected header `{}`, found `{}`",
                CSV_HEADER.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut nodes = Vec::new();
        for (line, rec) in rd.records().enumerate() {
            let rec = rec?;
            let mut x = [0.0; 7];
            for (slot, field) in x.iter_mut().zip(rec.iter()) {
                *slot =
                    field.parse().map_err(|_| Error::Csv(format!("row {}: `{field}` is not a number", line + 2)))?;
            }
            nodes.push(Node { u: x[0], f: Jet2::new(x[1], x[2], x[3]), g: Jet2::new(x[4], x[5], x[6]) });
        }
        Meridian::sampled(nodes)
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Meridian> {
        Meridian::read_csv(std::fs::File::open(path)?)
    }
}

fn interpolate(nodes: &[Node], u: f64) -> (Jet2, Jet2) {
    let i = nodes.partition_point(|n| n.u <= u);
    if i > 0 && nodes[i - 1].u == u {
        let n = nodes[i - 1];
        return (n.f, n.g);
    }
    // u lies strictly inside cell [i-1, i]
    let (a, b) = (nodes[i - 1], nodes[i]);
    let h = b.u - a.u;
    let t = (u - a.u) / h;
    (quintic(a.f, b.f, h, t), quintic(a.g, b.g, h, t))
}

/// Quintic Hermite on one cell of width `h`, local coordinate `t ∈ [0, 1]`.
fn quintic(y0: Jet2, y1: Jet2, h: f64, t: f64) -> Jet2 {
    let a0 = y0.val;
    let a1 = h * y0.d1;
    let a2 = 0.5 * h * h * y0.d2;
    let big_y = y1.val - (a0 + a1 + a2);
    let big_d = h * y1.d1 - (a1 + 2.0 * a2);
    let big_s = h * h * y1.d2 - 2.0 * a2;
    let a3 = 10.0 * big_y - 4.0 * big_d + 0.5 * big_s;
    let a4 = -15.0 * big_y + 7.0 * big_d - big_s;
    let a5 = 6.0 * big_y - 3.0 * big_d + 0.5 * big_s;
    let p = a0 + t * (a1 + t * (a2 + t * (a3 + t * (a4 + t * a5))));
    let dp = a1 + t * (2.0 * a2 + t * (3.0 * a3 + t * (4.0 * a4 + t * 5.0 * a5)));
    let ddp = 2.0 * a2 + t * (6.0 * a3 + t * (12.0 * a4 + t * 20.0 * a5));
    Jet2::new(p, dp / h, ddp / (h * h))
}

/// Central-difference jets of `f` and `g` from values only.
pub fn fd_oracle(m: &Meridian, u: f64, h: f64) -> Result<(Jet2, Jet2)> {
    if !(h > 0.0) {
        return Err(Error::InvalidParams(format!("FD step must be positive, got {h}")));
    }
    let (fp, gp) = m.eval_value(u + h)?;
    let (fm, gm) = m.eval_value(u - h)?;
    let (f0, g0) = m.eval_value(u)?;
    let jet = |p: f64, c: f64, mm: f64| Jet2::new(c, (p - mm) / (2.0 * h), (p - 2.0 * c + mm) / (h * h));
    Ok((jet(fp, f0, fm), jet(gp, g0, gm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

    #[test]
    fn closed_form_examples() {
        let m = Meridian::from_dsl("sqrt(u^2+1)", None, ALL).unwrap();
        let (f, g) = m.eval_jet(0.0).unwrap();
        assert_eq!(f, Jet2::new(1.0, 0.0, 1.0));
        assert_eq!(g, Jet2::new(0.0, 1.0, 0.0));
        let (_, g) = m.eval_jet(-3.5).unwrap();
        assert_eq!(g, Jet2::variable(-3.5));
        assert_eq!(m.kind(), MeridianKind::ClosedForm);
    }

    #[test]
    fn domain_and_evaluation_errors() {
        let m = Meridian::from_dsl("u", Some("ln(u)"), (-1.0, 1.0)).unwrap();
        assert!(matches!(m.eval_jet(1.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(m.eval_jet(-0.5), Err(Error::Domain { func: "ln", .. })));
        assert!(matches!(fd_oracle(&m, 0.99, 0.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn fd_oracle_examples() {
        let m = Meridian::from_dsl("sin(u)", None, ALL).unwrap();
        let (f, _) = fd_oracle(&m, 0.0, 1e-4).unwrap();
        assert!((f.d1 - 1.0).abs() < 1e-8);
        let m = Meridian::from_dsl("3.25", None, ALL).unwrap();
        let (f, _) = fd_oracle(&m, 0.4, 1e-3).unwrap();
        assert_eq!((f.d1, f.d2), (0.0, 0.0));
        let m = Meridian::from_dsl("u^2", None, ALL).unwrap();
        for u in [-1.3, 0.0, 0.7, 2.0] {
            let (f, _) = fd_oracle(&m, u, 1e-3).unwrap();
            assert!((f.d2 - 2.0).abs() < 1e-6);
        }
    }

    fn sampled_sin(n: usize) -> Meridian {
        Meridian::from_dsl("sin(u)", Some("u + 0.1*u^3"), (0.0, 2.0)).unwrap().to_sampled(n).unwrap()
    }

    #[test]
    fn sampled_reproduces_nodes_exactly() {
        let m = sampled_sin(11);
        for n in m.nodes().unwrap() {
            assert_eq!(m.eval_jet(n.u).unwrap(), (n.f, n.g));
        }
    }

    #[test]
    fn sampled_interpolation_is_accurate_and_smooth() {
        let exact = Meridian::from_dsl("sin(u)", Some("u + 0.1*u^3"), (0.0, 2.0)).unwrap();
        let m = sampled_sin(41);
        for k in 0..200 {
            let u = 0.003 + k as f64 * 0.00995;
            let (f, g) = m.eval_jet(u).unwrap();
            let (fe, ge) = exact.eval_jet(u).unwrap();
            assert!((f.val - fe.val).abs() < 1e-10);
            assert!((f.d1 - fe.d1).abs() < 1e-8);
            assert!((f.d2 - fe.d2).abs() < 1e-6);
            // cubic g is reproduced exactly
            assert!((g.val - ge.val).abs() < 1e-13 && (g.d2 - ge.d2).abs() < 1e-10);
        }
        // continuity of all three components across an interior node
        let un = m.nodes().unwrap()[17].u;
        let (l, _) = m.eval_jet(un - 1e-9).unwrap();
        let (r, _) = m.eval_jet(un + 1e-9).unwrap();
        assert!((l.val - r.val).abs() < 1e-8 && (l.d1 - r.d1).abs() < 1e-7 && (l.d2 - r.d2).abs() < 1e-6);
    }

    #[test]
    fn sampled_rejects_bad_grids() {
        let n = |u| Node { u, f: Jet2::constant(1.0), g: Jet2::variable(u) };
        assert!(Meridian::sampled(vec![n(0.0)]).is_err());
        assert!(Meridian::sampled(vec![n(0.0), n(0.0)]).is_err());
        assert!(Meridian::sampled(vec![n(1.0), n(0.5)]).is_err());
        assert!(Meridian::sampled(vec![n(0.0), n(f64::NAN)]).is_err());
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let m = sampled_sin(9);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("u,f,fp,fpp,g,gp,gpp\n"));
        let back = Meridian::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_rejects_wrong_header_and_garbage() {
        assert!(matches!(Meridian::read_csv("u,f\n0,1\n".as_bytes()), Err(Error::Csv(_))));
        let bad = "u,f,fp,fpp,g,gp,gpp\n0,1,0,0,0,1,0\n1,x,0,0,1,1,0\n";
        assert!(matches!(Meridian::read_csv(bad.as_bytes()), Err(Error::Csv(_))));
    }

    #[test]
    fn restriction_keeps_values() {
        let m = sampled_sin(21);
        let r = m.restricted(0.33, 1.5).unwrap();
        assert_eq!(r.domain(), (0.33, 1.5));
        assert_eq!(r.eval_jet(0.9).unwrap().0.val, m.eval_jet(0.9).unwrap().0.val);
        assert!(m.restricted(3.0, 4.0).is_err());
    }

    proptest! {
        #[test]
        fn ad_matches_fd_oracle(a in 0.2..2.0f64, b in -1.0..1.0f64, u in -1.0..1.0f64) {
            let src = format!("{a}*sin({b}*u + 0.3) + exp(0.5*u)*cosh(u)");
            let m = Meridian::from_dsl(&src, Some("sqrt(u^2 + 2)"), ALL).unwrap();
            let (f, g) = m.eval_jet(u).unwrap();
            let (ff, gf) = fd_oracle(&m, u, 1e-4).unwrap();
            prop_assert!((f.d1 - ff.d1).abs() < 1e-7 && (f.d2 - ff.d2).abs() < 1e-5);
            prop_assert!((g.d1 - gf.d1).abs() < 1e-7 && (g.d2 - gf.d2).abs() < 1e-5);
        }
    }
}
