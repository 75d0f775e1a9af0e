//! Wigner rotations `W(Λ, p) = L⁻¹(Λp) Λ L(p)` of massive particles.
//!
//! Three routes are provided: the direct matrix product ([`wigner_oracle`]), the
//! first-order angle ([`wigner_infinitesimal`]) and the finite closed form
//! ([`wigner_finite`]) which splits `Λ = R(ψ)·L(α)` and composes `ψ` with the
//! Halpern angle of the pure boost.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lorentz::{
    check_mass, omega_parameters, polar_decompose, standard_boost, standard_boost_spatial,
    BoostParams, FourVector, LorentzMatrix,
};
use crate::quaternion::SpinQuaternion;

/// A little-group rotation, stored as a unit quaternion whose sign is the
/// spin-1/2 value: `D(W) = w·I + i v·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    quat: SpinQuaternion,
}

impl WignerRotation {
    pub fn identity() -> Self {
        WignerRotation {
            quat: SpinQuaternion::identity(),
        }
    }

    /// Normalizes `q`.
    pub fn from_quaternion(q: SpinQuaternion) -> Self {
        WignerRotation {
            quat: q.normalized(),
        }
    }

    pub fn from_angle_vector(theta: &Vector3<f64>) -> Self {
        Self::from_quaternion(SpinQuaternion::from_rotation_vector(theta))
    }

    /// Reads the rotation off the spatial block of a little-group matrix. The
    /// returned quaternion has `w ≥ 0`.
    pub fn from_little_group(w: &LorentzMatrix) -> Self {
        Self::from_quaternion(SpinQuaternion::from_rotation_matrix(&w.spatial_block()))
    }

    pub fn quaternion(&self) -> SpinQuaternion {
        self.quat
    }

    /// `θ_W ∈ [0, π]`.
    pub fn angle(&self) -> f64 {
        self.quat.angle()
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.quat.axis()
    }

    pub fn angle_vector(&self) -> WignerAngleVector {
        WignerAngleVector(self.quat.rotation_vector())
    }

    pub fn so3(&self) -> Matrix3<f64> {
        self.quat.to_rotation_matrix()
    }

    pub fn to_lorentz(&self) -> LorentzMatrix {
        LorentzMatrix::embed_rotation(&self.so3())
    }

    pub fn su2(&self) -> Matrix2<Complex64> {
        self.quat.su2()
    }

    pub fn compose(&self, rhs: &WignerRotation) -> WignerRotation {
        WignerRotation::from_quaternion(self.quat.compose(&rhs.quat))
    }

    /// Distance between the SO(3) images (insensitive to the double-cover sign).
    pub fn so3_distance(&self, other: &WignerRotation) -> f64 {
        (self.so3() - other.so3()).amax()
    }
}

/// `θ_W` as angle × axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerAngleVector(pub Vector3<f64>);

impl WignerAngleVector {
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn to_rotation(&self) -> WignerRotation {
        WignerRotation::from_angle_vector(&self.0)
    }
}

/// `Λp` with the energy recomputed on shell from the transformed spatial part.
pub fn transform_momentum(l: &LorentzMatrix, p: &FourVector, mass: f64) -> Result<FourVector> {
    p.check_on_shell(mass)?;
    let q = l.apply(p);
    FourVector::on_shell(mass, q.spatial())
}

/// `W = L⁻¹(Λp)·Λ·L(p)` by direct matrix arithmetic.
pub fn wigner_oracle(l: &LorentzMatrix, p: &FourVector, mass: f64) -> Result<LorentzMatrix> {
    let lp = standard_boost(p, mass)?;
    let q = l.apply(p);
    let lq_inv = standard_boost_spatial(&q.spatial(), mass).inverse();
    Ok(lq_inv * *l * lp)
}

/// First-order angle `θ_W = θ − p×τ/(p⁰ + m)` with `τⁱ = ωⁱ₀` and
/// `θᵢ = ½ ε_ijk ω^{jk}` for a lower-index antisymmetric `ω`.
pub fn wigner_infinitesimal(
    omega: &Matrix4<f64>,
    p: &FourVector,
    mass: f64,
) -> Result<WignerAngleVector> {
    // validates antisymmetry
    crate::lorentz::from_infinitesimal(omega)?;
    p.check_on_shell(mass)?;
    let (tau, theta) = omega_parameters(omega);
    let pv = p.spatial();
    Ok(WignerAngleVector(
        theta - pv.cross(&tau) / (p.time() + mass),
    ))
}

/// Wigner rotation of the pure boost `exp(−i τ·K)` acting on `p`: angle from
/// `cos φ`, `sin φ φ̂` in mass-momentum form, axis along `τ̂ × p̂`.
pub fn halpern_boost_angle(tau: &BoostParams, p: &FourVector, mass: f64) -> Result<WignerRotation> {
    check_mass(mass)?;
    let pv = p.spatial();
    let pn = pv.norm();
    let t = tau.rapidity();
    if pn == 0.0 || t == 0.0 {
        return Ok(WignerRotation::identity());
    }
    let th = tau.axis();
    let ph = pv / pn;
    let cross = th.cross(&ph);
    if cross.norm() == 0.0 {
        return Ok(WignerRotation::identity());
    }
    let p0 = (pn * pn + mass * mass).sqrt();
    let (ch, sh) = (t.cosh(), t.sinh());
    let c = th.dot(&ph);
    let tp = th.dot(&pv);
    let den = mass + p0 * ch + sh * tp;
    let cos_phi = (mass * ch + p0 + sh * tp + (ch - 1.0) * (p0 - mass) * c * c) / den;
    let sin_vec = cross * ((pn * sh + (p0 - mass) * (ch - 1.0) * c) / den);
    let s = sin_vec.norm();
    if s == 0.0 {
        return Ok(WignerRotation::identity());
    }
    let phi = s.atan2(cos_phi);
    Ok(WignerRotation::from_quaternion(
        SpinQuaternion::from_angle_axis(phi, &(sin_vec / s)),
    ))
}

/// Closed form: `Λ = R(ψ)·L(α)`, `W = quat(ψ)·quat(φ_Halpern(α, p))`.
pub fn wigner_finite(l: &LorentzMatrix, p: &FourVector, mass: f64) -> Result<WignerRotation> {
    p.check_on_shell(mass)?;
    let (rot, boost) = polar_decompose(l)?;
    let phi = halpern_boost_angle(&boost, p, mass)?;
    Ok(WignerRotation::from_quaternion(rot.quaternion()).compose(&phi))
}

/// Max-norm of `W(Λ₂Λ₁, p) − W(Λ₂, Λ₁p)·W(Λ₁, p)` on SO(3) matrices.
pub fn multiplication_residual(
    l1: &LorentzMatrix,
    l2: &LorentzMatrix,
    p: &FourVector,
    mass: f64,
) -> Result<f64> {
    let total = wigner_finite(&(l2 * l1), p, mass)?;
    let w1 = wigner_finite(l1, p, mass)?;
    let p1 = transform_momentum(l1, p, mass)?;
    let w2 = wigner_finite(l2, &p1, mass)?;
    Ok((total.so3() - w2.so3() * w1.so3()).amax())
}

/// `D(W) = cos(θ_W/2)·I + i sin(θ_W/2) n̂·σ`.
pub fn su2_of(w: &WignerRotation) -> Matrix2<Complex64> {
    w.su2()
}

/// Checks `U†U = I` and `det U = 1`.
pub fn check_su2(u: &Matrix2<Complex64>, tol: f64) -> Result<()> {
    let unit = (u.adjoint() * u - Matrix2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let det = (u.determinant() - Complex64::new(1.0, 0.0)).norm();
    if unit > tol || det > tol {
        return Err(Error::NotSu2(format!(
            "max|U†U − I| = {unit:e}, |det U − 1| = {det:e}"
        )));
    }
    Ok(())
}

/// `ε = ±1` in `D(W(Λ₂, Λ₁p))·D(W(Λ₁, p)) = ε·D(W(Λ₂Λ₁, p))`.
///
/// Each `D(W(Λ, p))` uses the canonical lift of `Λ` (rotation angle in `[0, π]`
/// times a positive boost); the product of two canonical lifts is the canonical
/// lift of the product only up to this sign, which does not depend on `p`.
pub fn spin_cocycle(l2: &LorentzMatrix, l1: &LorentzMatrix) -> Result<f64> {
    let rest = FourVector::at_rest(1.0)?;
    let w1 = wigner_finite(l1, &rest, 1.0)?;
    let p1 = transform_momentum(l1, &rest, 1.0)?;
    let w2 = wigner_finite(l2, &p1, 1.0)?;
    let total = wigner_finite(&(l2 * l1), &rest, 1.0)?;
    let a = w2.compose(&w1).quaternion();
    let b = total.quaternion();
    let overlap = a.w * b.w + a.v.dot(&b.v);
    if (overlap.abs() - 1.0).abs() > 1e-6 {
        return Err(Error::NotSu2(format!(
            "Wigner rotations do not compose (overlap {overlap})"
        )));
    }
    Ok(overlap.signum())
}

/// An element of the double cover: `Λ` together with the sign of its SL(2,C)
/// lift relative to the canonical one. Spin-1/2 states carry a true
/// representation of these, not of the Lorentz matrices themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinLorentz {
    lambda: LorentzMatrix,
    sign: f64,
}

impl SpinLorentz {
    pub fn canonical(lambda: LorentzMatrix) -> Self {
        SpinLorentz { lambda, sign: 1.0 }
    }

    pub fn negated(&self) -> Self {
        SpinLorentz {
            lambda: self.lambda,
            sign: -self.sign,
        }
    }

    pub fn lambda(&self) -> &LorentzMatrix {
        &self.lambda
    }

    /// `+1` for the canonical lift, `−1` for the other one.
    pub fn sign(&self) -> f64 {
        self.sign
    }

    /// `self · rhs` in the double cover.
    pub fn compose(&self, rhs: &SpinLorentz) -> Result<SpinLorentz> {
        Ok(SpinLorentz {
            lambda: self.lambda * rhs.lambda,
            sign: self.sign * rhs.sign * spin_cocycle(&self.lambda, &rhs.lambda)?,
        })
    }

    /// `D(W)` of this lift at momentum `p`.
    pub fn wigner_su2(&self, p: &FourVector, mass: f64) -> Result<Matrix2<Complex64>> {
        Ok(wigner_finite(&self.lambda, p, mass)?.su2() * Complex64::from(self.sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{boost_matrix, rotation_matrix, RotationParams};
    use std::f64::consts::{PI, SQRT_2};

    fn pauli() -> [Matrix2<Complex64>; 3] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        [
            Matrix2::new(o, l, l, o),
            Matrix2::new(o, -i, i, o),
            Matrix2::new(l, o, o, -l),
        ]
    }

    #[test]
    fn oracle_identity_cases() {
        let p = FourVector::on_shell(1.0, Vector3::new(0.3, -0.4, 1.2)).unwrap();
        let w = wigner_oracle(&LorentzMatrix::identity(), &p, 1.0).unwrap();
        assert!((w.matrix() - Matrix4::identity()).amax() < 1e-14);
        let k = FourVector::at_rest(1.0).unwrap();
        let lp = standard_boost(&p, 1.0).unwrap();
        let w = wigner_oracle(&lp, &k, 1.0).unwrap();
        assert!((w.matrix() - Matrix4::identity()).amax() < 1e-13);
    }

    #[test]
    fn boost_on_z_momentum_rotates_about_y() {
        let l = boost_matrix(&BoostParams::new(1.2, Vector3::x()).unwrap());
        let p = FourVector::new(SQRT_2, 0.0, 0.0, 1.0);
        let w = WignerRotation::from_little_group(&wigner_oracle(&l, &p, 1.0).unwrap());
        assert!((w.axis().abs() - Vector3::y()).amax() < 1e-12);
        let h =
            halpern_boost_angle(&BoostParams::new(1.2, Vector3::x()).unwrap(), &p, 1.0).unwrap();
        assert!(w.so3_distance(&h) < 1e-12);
    }

    #[test]
    fn halpern_worked_oracle_case() {
        let b = BoostParams::new(1.5, Vector3::y()).unwrap();
        let p = FourVector::new(2f64.cosh(), 2f64.sinh(), 0.0, 0.0);
        let h = halpern_boost_angle(&b, &p, 1.0).unwrap();
        let o =
            WignerRotation::from_little_group(&wigner_oracle(&boost_matrix(&b), &p, 1.0).unwrap());
        assert!(h.so3_distance(&o) < 1e-10);
        assert!(h.angle() > 0.1);
    }

    #[test]
    fn halpern_degenerate_cases() {
        let p = FourVector::at_rest(2.0).unwrap();
        let b = BoostParams::new(0.8, Vector3::x()).unwrap();
        assert_eq!(
            halpern_boost_angle(&b, &p, 2.0).unwrap(),
            WignerRotation::identity()
        );
        let n = Vector3::new(1.0, 2.0, -2.0) / 3.0;
        let p = FourVector::on_shell(1.0, n * 1.7).unwrap();
        for &t in &[0.1, 1.0, 5.0] {
            let b = BoostParams::new(t, n).unwrap();
            assert!(halpern_boost_angle(&b, &p, 1.0).unwrap().angle() < 1e-15);
        }
    }

    #[test]
    fn halpern_small_rapidity_limit() {
        let pv = Vector3::new(0.4, -1.1, 0.6);
        let p = FourVector::on_shell(1.0, pv).unwrap();
        let tau = Vector3::new(0.3, 0.5, -0.2).normalize() * 1e-6;
        let h = halpern_boost_angle(&BoostParams::from_vector(&tau).unwrap(), &p, 1.0).unwrap();
        let lin = -pv.cross(&tau) / (p.time() + 1.0);
        assert!((h.angle_vector().0 - lin).norm() < 1e-11);
    }

    #[test]
    fn pure_rotation_is_its_own_wigner_rotation() {
        let r = RotationParams::new(0.7, Vector3::z()).unwrap();
        let l = rotation_matrix(&r);
        let p = FourVector::on_shell(1.3, Vector3::new(0.2, 0.9, -0.5)).unwrap();
        let w = wigner_finite(&l, &p, 1.3).unwrap();
        assert!((w.angle() - 0.7).abs() < 1e-12);
        assert!((w.axis() - Vector3::z()).amax() < 1e-12);
        let o = WignerRotation::from_little_group(&wigner_oracle(&l, &p, 1.3).unwrap());
        assert!((o.angle_vector().0 - Vector3::z() * 0.7).amax() < 1e-12);
    }

    #[test]
    fn finite_matches_oracle_on_a_product() {
        let l = rotation_matrix(&RotationParams::new(2.3, Vector3::new(0.0, 0.6, 0.8)).unwrap())
            * boost_matrix(&BoostParams::new(2.1, Vector3::new(0.48, 0.6, 0.64)).unwrap());
        let p = FourVector::on_shell(0.7, Vector3::new(-1.0, 0.3, 2.2)).unwrap();
        let f = wigner_finite(&l, &p, 0.7).unwrap();
        let o = wigner_oracle(&l, &p, 0.7).unwrap();
        assert!((f.to_lorentz().matrix() - o.matrix()).amax() < 1e-9);
    }

    #[test]
    fn infinitesimal_rejects_symmetric_omega() {
        let mut w = Matrix4::zeros();
        w[(1, 2)] = 1e-3;
        let p = FourVector::at_rest(1.0).unwrap();
        assert!(matches!(
            wigner_infinitesimal(&w, &p, 1.0),
            Err(Error::InvalidOmega(_))
        ));
    }

    #[test]
    fn su2_examples() {
        assert_eq!(su2_of(&WignerRotation::identity()), Matrix2::identity());
        let w = WignerRotation::from_angle_vector(&(Vector3::z() * PI));
        let d = su2_of(&w);
        assert!((d - pauli()[2] * Complex64::i())
            .iter()
            .all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn su2_adjoint_action_reproduces_so3() {
        let w = WignerRotation::from_angle_vector(&Vector3::new(0.9, -1.4, 0.3));
        let d = su2_of(&w);
        check_su2(&d, 1e-12).unwrap();
        let s = pauli();
        let m = w.so3();
        // D σ^b D† = Σ_a σ^a M_ab
        for b in 0..3 {
            let lhs = d * s[b] * d.adjoint();
            for a in 0..3 {
                let coeff = (s[a] * lhs).trace() * 0.5;
                assert!((coeff - Complex64::from(m[(a, b)])).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cocycle_is_a_sign_independent_of_momentum() {
        let l1 = rotation_matrix(&RotationParams::new(2.9, Vector3::new(0.0, 0.6, 0.8)).unwrap())
            * boost_matrix(&BoostParams::new(1.3, Vector3::x()).unwrap());
        let l2 = rotation_matrix(&RotationParams::new(2.7, Vector3::new(0.0, 0.6, 0.8)).unwrap());
        let eps = spin_cocycle(&l2, &l1).unwrap();
        // two rotations by ~π about the same axis wrap past 2π
        assert_eq!(eps, -1.0);
        for (m, p) in [
            (1.0, Vector3::new(0.3, -0.4, 1.2)),
            (0.4, Vector3::new(-2.0, 0.1, 0.0)),
        ] {
            let p = FourVector::on_shell(m, p).unwrap();
            let d1 = wigner_finite(&l1, &p, m).unwrap().su2();
            let q = transform_momentum(&l1, &p, m).unwrap();
            let d2 = wigner_finite(&l2, &q, m).unwrap().su2();
            let d = wigner_finite(&(l2 * l1), &p, m).unwrap().su2();
            let diff = (d2 * d1 - d * Complex64::from(eps))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{diff}");
        }
        let a = SpinLorentz::canonical(l2)
            .compose(&SpinLorentz::canonical(l1))
            .unwrap();
        assert_eq!(a.sign(), -1.0);
        assert_eq!(spin_cocycle(&l1, &LorentzMatrix::identity()).unwrap(), 1.0);
    }
}
