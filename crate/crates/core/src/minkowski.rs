//! Vector algebra of Minkowski 4-space with signature (+,+,+,−).
//!
//! The fourth basis vector `e4` is timelike; there is no signature parameter.

use std::ops::{Add, Mul, Neg, Sub};

/// Default absolute tolerance for lightlike detection.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

/// A point or vector of Minkowski 4-space in the fixed orthonormal basis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl Vec4 {
    pub const ZERO: Vec4 = Vec4::new(0.0, 0.0, 0.0, 0.0);
    pub const E1: Vec4 = Vec4::new(1.0, 0.0, 0.0, 0.0);
    pub const E2: Vec4 = Vec4::new(0.0, 1.0, 0.0, 0.0);
    pub const E3: Vec4 = Vec4::new(0.0, 0.0, 1.0, 0.0);
    pub const E4: Vec4 = Vec4::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self { x1, x2, x3, x4 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Minkowski inner product with `other`.
    pub fn dot(&self, other: &Vec4) -> f64 {
        minkowski_inner(self, other)
    }

    /// `⟨v, v⟩`, which may be negative.
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Rescales to `|⟨v, v⟩| = 1`. Returns `None` for (numerically) lightlike vectors.
    pub fn normalized(&self) -> Option<Vec4> {
        let n = self.norm_sq().abs();
        if n <= LIGHTLIKE_TOL || !n.is_finite() {
            return None;
        }
        Some(*self * (1.0 / n.sqrt()))
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3, self.x4 + o.x4)
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3, self.x4 - o.x4)
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::new(-self.x1, -self.x2, -self.x3, -self.x4)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, s: f64) -> Vec4 {
        Vec4::new(self.x1 * s, self.x2 * s, self.x3 * s, self.x4 * s)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// `a1 b1 + a2 b2 + a3 b3 − a4 b4`.
pub fn minkowski_inner(a: &Vec4, b: &Vec4) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 - a.x4 * b.x4
}

/// Lightlike iff `|⟨v,v⟩| ≤ tol`, otherwise decided by the sign of `⟨v,v⟩`.
pub fn causal_character(v: &Vec4, tol: f64) -> CausalCharacter {
    let n = v.norm_sq();
    if n.abs() <= tol {
        CausalCharacter::Lightlike
    } else if n > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

/// Pairwise inner products, row-major: entry `(i, j)` is `⟨vs[i], vs[j]⟩`.
pub fn gram_matrix(vs: &[Vec4]) -> Vec<Vec<f64>> {
    vs.iter().map(|a| vs.iter().map(|b| minkowski_inner(a, b)).collect()).collect()
}

/// Largest entrywise deviation of `gram_matrix(vs)` from `diag(expected)`.
pub fn gram_deviation(vs: &[Vec4], expected_diag: &[f64]) -> f64 {
    let g = gram_matrix(vs);
    let mut worst = 0.0_f64;
    for (i, row) in g.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            let target = if i == j { expected_diag[i] } else { 0.0 };
            worst = worst.max((entry - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inner_product_examples() {
        assert_eq!(minkowski_inner(&Vec4::E1, &Vec4::E1), 1.0);
        assert_eq!(minkowski_inner(&Vec4::E4, &Vec4::E4), -1.0);
        let ones = Vec4::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(minkowski_inner(&ones, &ones), 2.0);
    }

    #[test]
    fn causal_character_examples() {
        let tol = LIGHTLIKE_TOL;
        assert_eq!(causal_character(&Vec4::new(0.0, 0.0, 1.0, 1.0), tol), CausalCharacter::Lightlike);
        assert_eq!(causal_character(&Vec4::new(0.0, 0.0, 0.0, 2.0), tol), CausalCharacter::Timelike);
        assert_eq!(causal_character(&Vec4::new(3.0, 0.0, 0.0, 1.0), tol), CausalCharacter::Spacelike);
    }

    #[test]
    fn gram_of_basis_and_repeated_vector() {
        let g = gram_matrix(&[Vec4::E1, Vec4::E2, Vec4::E3, Vec4::E4]);
        for (i, row) in g.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = match (i == j, i) {
                    (true, 3) => -1.0,
                    (true, _) => 1.0,
                    _ => 0.0,
                };
                assert_eq!(x, want);
            }
        }
        assert_eq!(gram_matrix(&[Vec4::E1, Vec4::E1]), vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
    }

    fn vec4() -> impl Strategy<Value = Vec4> {
        (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b, c, d)| Vec4::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn inner_is_symmetric_and_bilinear(a in vec4(), b in vec4(), c in vec4(), s in -5.0..5.0f64) {
            prop_assert_eq!(minkowski_inner(&a, &b), minkowski_inner(&b, &a));
            let lhs = minkowski_inner(&(a * s + b), &c);
            let rhs = s * minkowski_inner(&a, &c) + minkowski_inner(&b, &c);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }

        #[test]
        fn gram_agrees_with_pairwise_inner(vs in proptest::collection::vec(vec4(), 1..6)) {
            let g = gram_matrix(&vs);
            for i in 0..vs.len() {
                for j in 0..vs.len() {
                    prop_assert_eq!(g[i][j], g[j][i]);
                    prop_assert_eq!(g[i][j], minkowski_inner(&vs[i], &vs[j]));
                }
            }
        }

        #[test]
        fn normalized_spacelike_stays_spacelike(v in vec4()) {
            prop_assume!(v.norm_sq() > 1e-3);
            let n = v.normalized().unwrap();
            prop_assert_eq!(causal_character(&n, LIGHTLIKE_TOL), CausalCharacter::Spacelike);
            prop_assert!((n.norm_sq() - 1.0).abs() < 1e-12);
        }
    }
}
