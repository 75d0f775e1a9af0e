//! Unit quaternions as the carrier for spatial rotations and their spin-1/2 lift.
//!
//! A [`SpinQuaternion`] `(w, v)` stands for the SU(2) element `w·I + i v·σ`. With
//! `w = cos(θ/2)` and `v = sin(θ/2) n̂` this is `exp(i θ n̂·σ/2)`, the spin-1/2 image
//! of the rotation `exp(i θ n̂·J)` whose 3×3 matrix is
//!
//! ```text
//! M_ab = cos θ δ_ab + (1 − cos θ) n_a n_b + sin θ ε_abk n_k
//! ```
//!
//! Composition follows the SU(2) product, so `a.compose(&b)` represents the matrix
//! product `M(a)·M(b)` and `D(a)·D(b)`.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinQuaternion {
    pub w: f64,
    pub v: Vector3<f64>,
}

/// Matrix `E(n)_ab = ε_abk n_k`.
pub(crate) fn epsilon_contract(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, n.z, -n.y, -n.z, 0.0, n.x, n.y, -n.x, 0.0)
}

impl SpinQuaternion {
    pub fn identity() -> Self {
        SpinQuaternion {
            w: 1.0,
            v: Vector3::zeros(),
        }
    }

    pub fn new(w: f64, v: Vector3<f64>) -> Self {
        SpinQuaternion { w, v }
    }

    /// `axis` is assumed to be a unit vector.
    pub fn from_angle_axis(angle: f64, axis: &Vector3<f64>) -> Self {
        let (s, c) = (0.5 * angle).sin_cos();
        SpinQuaternion { w: c, v: axis * s }
    }

    pub fn from_rotation_vector(theta: &Vector3<f64>) -> Self {
        let angle = theta.norm();
        if angle == 0.0 {
            return Self::identity();
        }
        Self::from_angle_axis(angle, &(theta / angle))
    }

    /// Half-angle composition: scalar `w₁w₂ − v₁·v₂`, vector `w₁v₂ + w₂v₁ + v₂×v₁`.
    pub fn compose(&self, rhs: &SpinQuaternion) -> SpinQuaternion {
        SpinQuaternion {
            w: self.w * rhs.w - self.v.dot(&rhs.v),
            v: rhs.v * self.w + self.v * rhs.w + rhs.v.cross(&self.v),
        }
    }

    pub fn inverse(&self) -> SpinQuaternion {
        let n2 = self.norm_squared();
        SpinQuaternion {
            w: self.w / n2,
            v: -self.v / n2,
        }
    }

    pub fn neg(&self) -> SpinQuaternion {
        SpinQuaternion {
            w: -self.w,
            v: -self.v,
        }
    }

    pub fn norm_squared(&self) -> f64 {
        self.w * self.w + self.v.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(&self) -> SpinQuaternion {
        let n = self.norm();
        SpinQuaternion {
            w: self.w / n,
            v: self.v / n,
        }
    }

    /// Rotation angle of the SO(3) image, in `[0, π]`.
    pub fn angle(&self) -> f64 {
        2.0 * self.v.norm().atan2(self.w.abs())
    }

    /// Unit axis of the SO(3) image, oriented so that the angle lies in `[0, π]`.
    /// Returns `(0, 0, 1)` when the rotation is trivial.
    pub fn axis(&self) -> Vector3<f64> {
        let s = self.v.norm();
        if s <= f64::EPSILON * self.w.abs() || s == 0.0 {
            return Vector3::z();
        }
        let sign = if self.w < 0.0 { -1.0 } else { 1.0 };
        self.v * (sign / s)
    }

    /// `angle · axis` of the SO(3) image.
    pub fn rotation_vector(&self) -> Vector3<f64> {
        let s = self.v.norm();
        if s == 0.0 {
            return Vector3::zeros();
        }
        self.axis() * self.angle()
    }

    pub fn to_rotation_matrix(&self) -> Matrix3<f64> {
        let q = self.normalized();
        let w = q.w;
        let v = q.v;
        Matrix3::identity() * (w * w - v.norm_squared())
            + v * v.transpose() * 2.0
            + epsilon_contract(&v) * (2.0 * w)
    }

    /// Extracts the quaternion of an (approximately) orthogonal matrix using the
    /// largest-diagonal branch. The result is normalized and has `w ≥ 0`.
    pub fn from_rotation_matrix(m: &Matrix3<f64>) -> SpinQuaternion {
        let tr = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
        let cand = [
            1.0 + tr,
            1.0 + 2.0 * m[(0, 0)] - tr,
            1.0 + 2.0 * m[(1, 1)] - tr,
            1.0 + 2.0 * m[(2, 2)] - tr,
        ];
        let best = (0..4)
            .max_by(|&a, &b| cand[a].total_cmp(&cand[b]))
            .unwrap_or(0);
        let q = if best == 0 {
            let w = 0.5 * cand[0].max(0.0).sqrt();
            let f = 0.25 / w;
            SpinQuaternion {
                w,
                v: Vector3::new(
                    (m[(1, 2)] - m[(2, 1)]) * f,
                    (m[(2, 0)] - m[(0, 2)]) * f,
                    (m[(0, 1)] - m[(1, 0)]) * f,
                ),
            }
        } else {
            let a = best - 1;
            let b = (a + 1) % 3;
            let c = (a + 2) % 3;
            let va = 0.5 * cand[best].max(0.0).sqrt();
            let f = 0.25 / va;
            let mut v = Vector3::zeros();
            v[a] = va;
            v[b] = (m[(a, b)] + m[(b, a)]) * f;
            v[c] = (m[(a, c)] + m[(c, a)]) * f;
            SpinQuaternion {
                w: (m[(b, c)] - m[(c, b)]) * f,
                v,
            }
        };
        let q = q.normalized();
        if q.w < 0.0 {
            q.neg()
        } else {
            q
        }
    }

    /// `D = w·I + i v·σ`.
    pub fn su2(&self) -> Matrix2<Complex64> {
        let (w, v) = (self.w, self.v);
        Matrix2::new(
            Complex64::new(w, v.z),
            Complex64::new(v.y, v.x),
            Complex64::new(-v.y, v.x),
            Complex64::new(w, -v.z),
        )
    }

    /// Distance modulo the double cover: `min(|q₁ − q₂|, |q₁ + q₂|)`.
    pub fn distance(&self, other: &SpinQuaternion) -> f64 {
        let minus = ((self.w - other.w).powi(2) + (self.v - other.v).norm_squared()).sqrt();
        let plus = ((self.w + other.w).powi(2) + (self.v + other.v).norm_squared()).sqrt();
        minus.min(plus)
    }
}

impl Default for SpinQuaternion {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matrix_round_trip_near_pi() {
        let axis = Vector3::new(1.0, -2.0, 0.5).normalize();
        for &angle in &[0.0, 1e-9, 0.3, 2.0, PI - 1e-7, PI] {
            let q = SpinQuaternion::from_angle_axis(angle, &axis);
            let back = SpinQuaternion::from_rotation_matrix(&q.to_rotation_matrix());
            assert!(q.distance(&back) < 1e-12, "angle {angle}");
        }
    }

    #[test]
    fn small_rotation_matches_epsilon_generator() {
        // exp(iθ·J) ≈ I + θ_k ε_kab for small θ
        let theta = Vector3::new(1e-7, -2e-7, 3e-7);
        let m = SpinQuaternion::from_rotation_vector(&theta).to_rotation_matrix();
        let lin = Matrix3::identity() + epsilon_contract(&theta);
        assert!((m - lin).amax() < 1e-13);
    }

    #[test]
    fn compose_is_matrix_product() {
        let a = SpinQuaternion::from_rotation_vector(&Vector3::new(0.4, 1.1, -0.3));
        let b = SpinQuaternion::from_rotation_vector(&Vector3::new(-1.3, 0.2, 0.9));
        let ab = a.compose(&b);
        let diff = ab.to_rotation_matrix() - a.to_rotation_matrix() * b.to_rotation_matrix();
        assert!(diff.amax() < 1e-14);
        let dsu = ab.su2() - a.su2() * b.su2();
        assert!(dsu.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-14);
    }

    #[test]
    fn pi_about_z_is_i_sigma3() {
        let q = SpinQuaternion::from_angle_axis(PI, &Vector3::z());
        let d = q.su2();
        assert!((d[(0, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((d[(1, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(d[(0, 1)].norm() < 1e-15 && d[(1, 0)].norm() < 1e-15);
    }
}
