//! Homogeneous Lorentz group arithmetic in natural units (`c = ħ = 1`).
//!
//! Metric signature is `η = diag(−1, +1, +1, +1)`. A [`LorentzMatrix`] stores
//! `Λ^μ_ν` with the upper index as the row. Rotations follow the `exp(iψ·J)`
//! convention with `(J^i)_ab = −i ε_iab`, so that the Wigner angle of a pure
//! rotation `R(ψ)` is `+ψ`.

use std::ops::Mul;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{epsilon_contract, SpinQuaternion};

/// Rapidities above this value are accepted but logged.
pub const RAPIDITY_WARN_LIMIT: f64 = 20.0;

/// Relative tolerance of the mass-shell check.
pub const ON_SHELL_TOL: f64 = 1e-9;

const UNIT_AXIS_TOL: f64 = 1e-12;

pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// Totally antisymmetric symbol on three 0-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub Vector4<f64>);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector(Vector4::new(t, x, y, z))
    }

    /// On-shell momentum `(√(|p|² + m²), p)`.
    pub fn on_shell(mass: f64, p: Vector3<f64>) -> Result<Self> {
        check_mass(mass)?;
        let e = (p.norm_squared() + mass * mass).sqrt();
        Ok(FourVector(Vector4::new(e, p.x, p.y, p.z)))
    }

    pub fn at_rest(mass: f64) -> Result<Self> {
        Self::on_shell(mass, Vector3::zeros())
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn check_on_shell(&self, mass: f64) -> Result<()> {
        check_mass(mass)?;
        let dot = self.dot(self);
        let expected = -mass * mass;
        let scale = self.time() * self.time() + mass * mass;
        if self.time() <= 0.0 || !dot.is_finite() || (dot - expected).abs() > ON_SHELL_TOL * scale {
            return Err(Error::InconsistentMomentum { dot, expected });
        }
        Ok(())
    }
}

/// `−u⁰v⁰ + u·v`.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    -u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] + u.0[3] * v.0[3]
}

pub(crate) fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMass(mass))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    /// Validates `m` with [`is_lorentz`] at tolerance `tol`.
    pub fn new(m: Matrix4<f64>, tol: f64) -> Result<Self> {
        let check = is_lorentz(&m, tol);
        if check.is_lorentz {
            Ok(LorentzMatrix(m))
        } else {
            Err(Error::NotLorentz(check.to_string()))
        }
    }

    /// Wraps a matrix without validation. Used for first-order transformations,
    /// which are Lorentz only up to second order.
    pub fn from_matrix_unchecked(m: Matrix4<f64>) -> Self {
        LorentzMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        FourVector(self.0 * p.0)
    }

    /// `Λ⁻¹ = η Λᵀ η`.
    pub fn inverse(&self) -> Self {
        let eta = metric();
        LorentzMatrix(eta * self.0.transpose() * eta)
    }

    pub fn spatial_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    pub fn embed_rotation(m: &Matrix3<f64>) -> Self {
        let mut out = Matrix4::identity();
        out.fixed_view_mut::<3, 3>(1, 1).copy_from(m);
        LorentzMatrix(out)
    }

    /// Exact group element `exp(½ i ω_αβ M^αβ) = exp(η ω)` for lower-index `ω`.
    pub fn exp_algebra(omega: &Matrix4<f64>) -> Result<Self> {
        check_antisymmetric(omega)?;
        Ok(LorentzMatrix((metric() * omega).exp()))
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

impl Mul<&LorentzMatrix> for &LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

/// Boost generators `K^i = M^{0i}` and rotation generators `J^i = ½ ε_ijk M^{jk}`
/// as complex 4×4 matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub k: [Matrix4<Complex64>; 3],
    pub j: [Matrix4<Complex64>; 3],
}

impl GeneratorSet {
    /// `(K^i)_ab = i(δ^i_a δ_0b + δ_0a δ^i_b)`, `(J^i)_ab = −i ε_iab`.
    pub fn new() -> Self {
        let i = Complex64::i();
        let k = std::array::from_fn(|n| {
            let mut m = Matrix4::zeros();
            m[(n + 1, 0)] = i;
            m[(0, n + 1)] = i;
            m
        });
        let j = std::array::from_fn(|n| {
            let mut m = Matrix4::zeros();
            for a in 0..3 {
                for b in 0..3 {
                    m[(a + 1, b + 1)] = -i * levi_civita(n, a, b);
                }
            }
            m
        });
        GeneratorSet { k, j }
    }

    /// `M^{μν}` with `M^{0i} = K^i`, `M^{ij} = ε_ijk J^k`.
    pub fn m(&self, mu: usize, nu: usize) -> Matrix4<Complex64> {
        match (mu, nu) {
            (0, 0) => Matrix4::zeros(),
            (0, n) => self.k[n - 1],
            (n, 0) => -self.k[n - 1],
            (a, b) => (0..3).fold(Matrix4::zeros(), |acc, c| {
                acc + self.j[c] * Complex64::from(levi_civita(a - 1, b - 1, c))
            }),
        }
    }

    /// `½ i ω_αβ M^αβ`, which equals `ω^μ_ν` for lower-index `ω`.
    pub fn algebra_element(&self, omega: &Matrix4<f64>) -> Matrix4<Complex64> {
        let mut acc = Matrix4::zeros();
        for a in 0..4 {
            for b in 0..4 {
                if omega[(a, b)] != 0.0 {
                    acc += self.m(a, b) * Complex64::new(0.0, 0.5 * omega[(a, b)]);
                }
            }
        }
        acc
    }
}

impl Default for GeneratorSet {
    fn default() -> Self {
        Self::new()
    }
}

pub fn generators() -> GeneratorSet {
    GeneratorSet::new()
}

/// A pure boost of rapidity `α ≥ 0` along a unit axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    rapidity: f64,
    axis: Vector3<f64>,
}

impl BoostParams {
    pub fn new(rapidity: f64, axis: Vector3<f64>) -> Result<Self> {
        if !rapidity.is_finite() || rapidity < 0.0 {
            return Err(Error::InvalidRapidity(rapidity));
        }
        if rapidity == 0.0 {
            return Ok(Self::identity());
        }
        check_unit(&axis)?;
        warn_rapidity(rapidity);
        Ok(BoostParams { rapidity, axis })
    }

    pub fn identity() -> Self {
        BoostParams {
            rapidity: 0.0,
            axis: Vector3::z(),
        }
    }

    /// Boost with rapidity vector `τ = α n̂`.
    pub fn from_vector(tau: &Vector3<f64>) -> Result<Self> {
        let r = tau.norm();
        if r == 0.0 {
            return Ok(Self::identity());
        }
        Self::new(r, tau / r)
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.axis * self.rapidity
    }
}

/// A rotation by `ψ ∈ [0, π]` about a unit axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationParams {
    angle: f64,
    axis: Vector3<f64>,
}

impl RotationParams {
    /// Normalizes the angle into `[0, π]`, flipping the axis to absorb the sign.
    pub fn new(angle: f64, axis: Vector3<f64>) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::Parse(format!("non-finite rotation angle {angle}")));
        }
        check_unit(&axis)?;
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut a = angle.rem_euclid(two_pi);
        let mut n = axis;
        if a > std::f64::consts::PI {
            a = two_pi - a;
            n = -n;
        }
        if a == 0.0 {
            return Ok(Self::identity());
        }
        Ok(RotationParams { angle: a, axis: n })
    }

    pub fn identity() -> Self {
        RotationParams {
            angle: 0.0,
            axis: Vector3::z(),
        }
    }

    pub fn from_vector(theta: &Vector3<f64>) -> Result<Self> {
        let a = theta.norm();
        if a == 0.0 {
            return Ok(Self::identity());
        }
        Self::new(a, theta / a)
    }

    pub fn from_quaternion(q: &SpinQuaternion) -> Self {
        let angle = q.angle();
        if angle == 0.0 {
            return Self::identity();
        }
        RotationParams {
            angle,
            axis: q.axis(),
        }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.axis * self.angle
    }

    pub fn quaternion(&self) -> SpinQuaternion {
        SpinQuaternion::from_angle_axis(self.angle, &self.axis)
    }
}

fn check_unit(axis: &Vector3<f64>) -> Result<()> {
    if (axis.norm() - 1.0).abs() > UNIT_AXIS_TOL || !axis.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidAxis([axis.x, axis.y, axis.z]));
    }
    Ok(())
}

fn warn_rapidity(rapidity: f64) {
    if rapidity > RAPIDITY_WARN_LIMIT {
        log::warn!(
            "rapidity {rapidity} exceeds {RAPIDITY_WARN_LIMIT}; Wigner angles lose relative precision"
        );
    }
}

fn boost_from_parts(
    cosh: f64,
    sinh_n: &Vector3<f64>,
    cosh_minus_one_nn: &Matrix3<f64>,
) -> LorentzMatrix {
    let mut l = Matrix4::identity();
    l[(0, 0)] = cosh;
    for i in 0..3 {
        l[(0, i + 1)] = sinh_n[i];
        l[(i + 1, 0)] = sinh_n[i];
        for j in 0..3 {
            l[(i + 1, j + 1)] += cosh_minus_one_nn[(i, j)];
        }
    }
    LorentzMatrix(l)
}

/// The pure boost `L(p)` carrying `k = (m, 0)` to `p`, with `cosh χ = p⁰/m`.
pub fn standard_boost(p: &FourVector, mass: f64) -> Result<LorentzMatrix> {
    p.check_on_shell(mass)?;
    Ok(standard_boost_unchecked(p.time(), &p.spatial(), mass))
}

/// `L(p)` for a spatial momentum, the energy being put on shell.
pub(crate) fn standard_boost_spatial(p: &Vector3<f64>, mass: f64) -> LorentzMatrix {
    let e = (p.norm_squared() + mass * mass).sqrt();
    standard_boost_unchecked(e, p, mass)
}

fn standard_boost_unchecked(e: f64, p: &Vector3<f64>, mass: f64) -> LorentzMatrix {
    boost_from_parts(
        e / mass,
        &(p / mass),
        &(p * p.transpose() / (mass * (e + mass))),
    )
}

/// `exp(iψ·J)`: time row and column trivial, spatial block
/// `cos ψ δ_ij + (1 − cos ψ) n_i n_j + sin ψ ε_ijk n_k`.
pub fn rotation_matrix(r: &RotationParams) -> LorentzMatrix {
    let (s, c) = r.angle.sin_cos();
    let n = r.axis;
    let block = Matrix3::identity() * c + n * n.transpose() * (1.0 - c) + epsilon_contract(&n) * s;
    LorentzMatrix::embed_rotation(&block)
}

/// `exp(−iα n̂·K)`.
pub fn boost_matrix(b: &BoostParams) -> LorentzMatrix {
    let (ch, sh) = (b.rapidity.cosh(), b.rapidity.sinh());
    let n = b.axis;
    boost_from_parts(ch, &(n * sh), &(n * n.transpose() * (ch - 1.0)))
}

fn check_antisymmetric(omega: &Matrix4<f64>) -> Result<()> {
    let scale = omega.amax().max(1.0);
    let asym = (omega + omega.transpose()).amax();
    if asym > 1e-14 * scale || !omega.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidOmega(asym));
    }
    Ok(())
}

/// First-order transformation `δ^μ_ν + ω^μ_ν`, raising the first index of the
/// lower-index antisymmetric `ω_μν` with `η`.
pub fn from_infinitesimal(omega: &Matrix4<f64>) -> Result<LorentzMatrix> {
    check_antisymmetric(omega)?;
    Ok(LorentzMatrix(Matrix4::identity() + metric() * omega))
}

/// Boost rapidity vector `τ^i = ω^i_0` and rotation vector `θ_i = ½ ε_ijk ω^{jk}`
/// of a lower-index `ω`.
pub fn omega_parameters(omega: &Matrix4<f64>) -> (Vector3<f64>, Vector3<f64>) {
    // spatial indices raise trivially; ω^i_0 = ω_i0
    let tau = Vector3::new(omega[(1, 0)], omega[(2, 0)], omega[(3, 0)]);
    let mut theta = Vector3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                theta[i] += 0.5 * levi_civita(i, j, k) * omega[(j + 1, k + 1)];
            }
        }
    }
    (tau, theta)
}

/// Diagnostic of [`is_lorentz`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzCheck {
    pub is_lorentz: bool,
    pub metric_residual: f64,
    pub det_residual: f64,
    pub time_component: f64,
}

impl std::fmt::Display for LorentzCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "max|LᵀηL − η| = {:e}, |det − 1| = {:e}, L⁰₀ = {}",
            self.metric_residual, self.det_residual, self.time_component
        )
    }
}

pub fn is_lorentz(m: &Matrix4<f64>, tol: f64) -> LorentzCheck {
    let eta = metric();
    let metric_residual = (m.transpose() * eta * m - eta).amax();
    let det_residual = (m.determinant() - 1.0).abs();
    let time_component = m[(0, 0)];
    let finite = m.iter().all(|x| x.is_finite());
    LorentzCheck {
        is_lorentz: finite
            && metric_residual <= tol
            && det_residual <= tol
            && time_component >= 1.0 - tol,
        metric_residual,
        det_residual,
        time_component,
    }
}

/// Splits `Λ = R(ψ)·L(α)`: the boost is read off the time row
/// (`cosh α = Λ⁰₀`, `sinh α n̂_i = Λ⁰_i`) and `R = Λ·L(α)⁻¹`.
pub fn polar_decompose(l: &LorentzMatrix) -> Result<(RotationParams, BoostParams)> {
    let check = is_lorentz(l.matrix(), 1e-8);
    if !check.is_lorentz {
        return Err(Error::NotLorentz(check.to_string()));
    }
    let m = l.matrix();
    let row = Vector3::new(m[(0, 1)], m[(0, 2)], m[(0, 3)]);
    let sh = row.norm();
    let boost = if sh == 0.0 {
        BoostParams::identity()
    } else {
        BoostParams::new(sh.asinh(), row / sh)?
    };
    let r = l * &boost_matrix(&boost).inverse();
    let rm = r.matrix();
    let spatial = r.spatial_block();
    let scale = m[(0, 0)] * m[(0, 0)];
    let border = (0..3)
        .map(|i| rm[(0, i + 1)].abs().max(rm[(i + 1, 0)].abs()))
        .fold((rm[(0, 0)] - 1.0).abs(), f64::max);
    let ortho = (spatial.transpose() * spatial - Matrix3::identity()).amax();
    let det = (spatial.determinant() - 1.0).abs();
    let residual = border.max(ortho).max(det);
    if residual > 1e-8 * scale.max(1.0) {
        return Err(Error::DecompositionFailure(residual));
    }
    let q = SpinQuaternion::from_rotation_matrix(&spatial);
    Ok((RotationParams::from_quaternion(&q), boost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn minkowski_dot_examples() {
        let t = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&t, &t), -1.0);
        let p = FourVector::on_shell(1.0, Vector3::new(0.0, 0.0, 0.75)).unwrap();
        assert!((p.dot(&p) + 1.0).abs() < 1e-12);
        let u = FourVector::new(2.0, 1.0, 0.0, 0.0);
        let v = FourVector::new(1.0, 0.0, 3.0, 0.0);
        assert_eq!(minkowski_dot(&u, &v), -2.0);
    }

    #[test]
    fn standard_boost_at_rest_is_identity() {
        let p = FourVector::at_rest(2.5).unwrap();
        let l = standard_boost(&p, 2.5).unwrap();
        assert!((l.matrix() - Matrix4::identity()).amax() < 1e-15);
    }

    #[test]
    fn standard_boost_worked_entries() {
        let p = FourVector::new(SQRT_2, 0.0, 0.0, 1.0);
        let l = standard_boost(&p, 1.0).unwrap();
        let mut want = Matrix4::identity();
        want[(0, 0)] = SQRT_2;
        want[(0, 3)] = 1.0;
        want[(3, 0)] = 1.0;
        want[(3, 3)] = SQRT_2;
        assert!((l.matrix() - want).amax() < 1e-15);
    }

    #[test]
    fn standard_boost_rejects_bad_input() {
        let p = FourVector::new(SQRT_2, 0.0, 0.0, 1.0);
        assert!(matches!(
            standard_boost(&p, 0.0),
            Err(Error::InvalidMass(_))
        ));
        assert!(matches!(
            standard_boost(&p, -1.0),
            Err(Error::InvalidMass(_))
        ));
        assert!(matches!(
            standard_boost(&p, 1.2),
            Err(Error::InconsistentMomentum { .. })
        ));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(
            rotation_matrix(&RotationParams::identity()).matrix(),
            &Matrix4::identity()
        );
        // exp(iψ·J) about ẑ at ψ = π/2 sends x̂ to −ŷ and ŷ to x̂
        let r = rotation_matrix(&RotationParams::new(PI / 2.0, Vector3::z()).unwrap());
        let ex = r.apply(&FourVector::new(0.0, 1.0, 0.0, 0.0));
        assert!((ex.0 - Vector4::new(0.0, 0.0, -1.0, 0.0)).amax() < 1e-15);
        let ey = r.apply(&FourVector::new(0.0, 0.0, 1.0, 0.0));
        assert!((ey.0 - Vector4::new(0.0, 1.0, 0.0, 0.0)).amax() < 1e-15);
        // 2π/3 about (1,1,1)/√3 cycles the axes x → z → y → x
        let n = Vector3::new(1.0, 1.0, 1.0).normalize();
        let r = rotation_matrix(&RotationParams::new(2.0 * PI / 3.0, n).unwrap());
        let s = r.spatial_block();
        let want = Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
        assert!((s - want).amax() < 1e-15);
    }

    #[test]
    fn rotation_params_normalization() {
        let r = RotationParams::new(-0.5, Vector3::x()).unwrap();
        assert!((r.angle() - 0.5).abs() < 1e-15);
        assert_eq!(r.axis(), -Vector3::x());
        let r = RotationParams::new(1.5 * PI, Vector3::y()).unwrap();
        assert!((r.angle() - 0.5 * PI).abs() < 1e-15);
        assert_eq!(r.axis(), -Vector3::y());
        assert!(matches!(
            RotationParams::new(0.3, Vector3::new(1.0, 1.0, 0.0)),
            Err(Error::InvalidAxis(_))
        ));
    }

    #[test]
    fn boost_examples() {
        let b = BoostParams::new(0.0, Vector3::x()).unwrap();
        assert_eq!(b.axis(), Vector3::z());
        assert_eq!(boost_matrix(&b).matrix(), &Matrix4::identity());
        let b = BoostParams::new(1.0, Vector3::x()).unwrap();
        assert!((boost_matrix(&b).matrix()[(0, 0)] - 1.543_080_634_815_243_7).abs() < 1e-15);
        let n = Vector3::new(0.2, -0.4, 0.7).normalize();
        let alpha: f64 = 1.7;
        let m = 0.8;
        let p = FourVector::on_shell(m, n * (m * alpha.sinh())).unwrap();
        let lhs = boost_matrix(&BoostParams::new(alpha, n).unwrap());
        let rhs = standard_boost(&p, m).unwrap();
        assert!((lhs.matrix() - rhs.matrix()).amax() < 1e-13);
        assert!(BoostParams::new(-1.0, Vector3::x()).is_err());
    }

    #[test]
    fn from_infinitesimal_examples() {
        assert_eq!(
            from_infinitesimal(&Matrix4::zeros()).unwrap().matrix(),
            &Matrix4::identity()
        );
        let eps = 1e-4;
        let mut w = Matrix4::zeros();
        w[(1, 2)] = eps;
        w[(2, 1)] = -eps;
        let l = from_infinitesimal(&w).unwrap();
        assert_eq!(l.matrix()[(1, 2)], eps);
        assert_eq!(l.matrix()[(2, 1)], -eps);
        // ω₀₁ = −ε is the boost of rapidity ε along x̂ to first order
        let mut w = Matrix4::zeros();
        w[(0, 1)] = -eps;
        w[(1, 0)] = eps;
        let l = from_infinitesimal(&w).unwrap();
        assert_eq!(l.matrix()[(0, 1)], eps);
        assert_eq!(l.matrix()[(1, 0)], eps);
        let b = boost_matrix(&BoostParams::new(eps, Vector3::x()).unwrap());
        assert!((l.matrix() - b.matrix()).amax() < eps * eps);
        let mut bad = Matrix4::zeros();
        bad[(0, 1)] = 1e-3;
        assert!(matches!(
            from_infinitesimal(&bad),
            Err(Error::InvalidOmega(_))
        ));
    }

    #[test]
    fn is_lorentz_examples() {
        assert!(is_lorentz(&Matrix4::identity(), 1e-12).is_lorentz);
        let mut m = Matrix4::identity();
        m[(1, 1)] = 1.0 + 1e-3;
        assert!(!is_lorentz(&m, 1e-6).is_lorentz);
        let mut parity = Matrix4::identity();
        parity[(1, 1)] = -1.0;
        assert!(!is_lorentz(&parity, 1e-6).is_lorentz);
        let mut tr = Matrix4::identity();
        tr[(0, 0)] = -1.0;
        tr[(1, 1)] = -1.0;
        assert!(!is_lorentz(&tr, 1e-6).is_lorentz);
    }

    #[test]
    fn polar_decompose_pure_cases() {
        let b = boost_matrix(&BoostParams::new(0.9, Vector3::new(0.0, 0.6, 0.8)).unwrap());
        let (r, bb) = polar_decompose(&b).unwrap();
        assert!(r.angle() < 1e-12);
        assert!((bb.rapidity() - 0.9).abs() < 1e-12);
        let rot = rotation_matrix(&RotationParams::new(2.1, Vector3::new(0.6, 0.0, -0.8)).unwrap());
        let (r, bb) = polar_decompose(&rot).unwrap();
        assert_eq!(bb.rapidity(), 0.0);
        assert!((r.angle() - 2.1).abs() < 1e-12);
        assert!((r.axis() - Vector3::new(0.6, 0.0, -0.8)).amax() < 1e-12);
    }

    #[test]
    fn generator_matrix_elements() {
        let g = generators();
        let i = Complex64::i();
        assert_eq!(g.k[0][(1, 0)], i);
        assert_eq!(g.k[0][(0, 1)], i);
        assert_eq!(g.j[2][(1, 2)], -i);
        assert_eq!(g.j[2][(2, 1)], i);
    }

    #[test]
    fn algebra_element_raises_first_index() {
        let g = generators();
        let mut w = Matrix4::zeros();
        let vals = [0.3, -0.7, 1.1, 0.4, -0.2, 0.9];
        let mut n = 0;
        for a in 0..4 {
            for b in (a + 1)..4 {
                w[(a, b)] = vals[n];
                w[(b, a)] = -vals[n];
                n += 1;
            }
        }
        let lhs = g.algebra_element(&w);
        let rhs = metric() * w;
        for (x, y) in lhs.iter().zip(rhs.iter()) {
            assert!((x - Complex64::from(*y)).norm() < 1e-15);
        }
    }
}
