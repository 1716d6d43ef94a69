//! Second-order forward-mode automatic differentiation.
//!
//! A [`Jet2`] carries a value together with its first and second derivative
//! with respect to the meridian parameter `u`. Arithmetic follows the
//! truncated Leibniz and chain rules, so `(f∘g)'' = f''(g) g'² + f'(g) g''`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub val: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn new(val: f64, d1: f64, d2: f64) -> Self {
        Self { val, d1, d2 }
    }

    pub const fn constant(val: f64) -> Self {
        Self::new(val, 0.0, 0.0)
    }

    /// The independent variable itself: `(u, 1, 0)`.
    pub const fn variable(u: f64) -> Self {
        Self::new(u, 1.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.val.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    pub fn is_constant(&self) -> bool {
        self.d1 == 0.0 && self.d2 == 0.0
    }

    /// Applies a scalar function given its value and first two derivatives at `self.val`.
    #[inline]
    fn chain(self, v: f64, dv: f64, ddv: f64) -> Jet2 {
        Jet2 { val: v, d1: dv * self.d1, d2: ddv * self.d1 * self.d1 + dv * self.d2 }
    }

    pub fn sin(self) -> Jet2 {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Jet2 {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Jet2 {
        let t = self.val.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Jet2 {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Jet2 {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }

    pub fn exp(self) -> Jet2 {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn atan(self) -> Jet2 {
        let x = self.val;
        let r = 1.0 / (1.0 + x * x);
        self.chain(x.atan(), r, -2.0 * x * r * r)
    }

    pub fn asin(self) -> Result<Jet2> {
        let x = self.val;
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::Domain { func: "asin", arg: x });
        }
        let s = 1.0 - x * x;
        let r = 1.0 / s.sqrt();
        Ok(self.chain(x.asin(), r, x * r / s))
    }

    pub fn ln(self) -> Result<Jet2> {
        let x = self.val;
        if x <= 0.0 || x.is_nan() {
            return Err(Error::Domain { func: "ln", arg: x });
        }
        let r = 1.0 / x;
        Ok(self.chain(x.ln(), r, -r * r))
    }

    pub fn sqrt(self) -> Result<Jet2> {
        let x = self.val;
        if x < 0.0 || x.is_nan() {
            return Err(Error::Domain { func: "sqrt", arg: x });
        }
        let s = x.sqrt();
        let d = 0.5 / s;
        Ok(self.chain(s, d, -0.5 * d / x))
    }

    /// `|x|`; the derivative at `x = 0` is taken as 0.
    pub fn abs(self) -> Jet2 {
        let sign = if self.val > 0.0 {
            1.0
        } else if self.val < 0.0 {
            -1.0
        } else {
            0.0
        };
        Jet2::new(self.val.abs(), sign * self.d1, sign * self.d2)
    }

    pub fn powi(self, n: i32) -> Jet2 {
        match n {
            0 => Jet2::constant(1.0),
            1 => self,
            _ => {
                let x = self.val;
                let nf = n as f64;
                self.chain(x.powi(n), nf * x.powi(n - 1), nf * (nf - 1.0) * x.powi(n - 2))
            }
        }
    }

    /// Real power with a constant exponent; the base must be non-negative.
    pub fn powf(self, p: f64) -> Result<Jet2> {
        let x = self.val;
        if x < 0.0 || x.is_nan() {
            return Err(Error::Domain { func: "pow", arg: x });
        }
        Ok(self.chain(x.powf(p), p * x.powf(p - 1.0), p * (p - 1.0) * x.powf(p - 2.0)))
    }

    /// `self^e` for a non-constant exponent, via `exp(e ln self)`.
    pub fn pow(self, e: Jet2) -> Result<Jet2> {
        if e.is_constant() {
            let p = e.val;
            if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                return Ok(self.powi(p as i32));
            }
            return self.powf(p);
        }
        Ok((e * self.ln()?).exp())
    }
}

impl From<f64> for Jet2 {
    fn from(v: f64) -> Self {
        Jet2::constant(v)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.val, -self.d1, -self.d2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.val * o.val,
            self.d1 * o.val + self.val * o.d1,
            self.d2 * o.val + 2.0 * self.d1 * o.d1 + self.val * o.d2,
        )
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        let q = self.val / o.val;
        let q1 = (self.d1 - q * o.d1) / o.val;
        let q2 = (self.d2 - 2.0 * q1 * o.d1 - q * o.d2) / o.val;
        Jet2::new(q, q1, q2)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, s: f64) -> Jet2 {
        Jet2::new(self.val * s, self.d1 * s, self.d2 * s)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, s: f64) -> Jet2 {
        Jet2::new(self.val + s, self.d1, self.d2)
    }
}
