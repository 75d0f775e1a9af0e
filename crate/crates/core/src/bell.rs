//! Bell quadruplet `|B^μ⟩ ∝ (σ̃^μ σ²)_{s₁s₂} a†(p₁,s₁) a†(p₂,s₂)|0⟩` and its
//! SO(4) transformation law under paired Wigner rotations.
//!
//! `σ̃⁰ = i·I` and `σ̃ⁱ = σⁱ`. Spin index 0 is `+`, index 1 is `−`.
//!
//! Two coefficient conventions appear: the raw `C_μ` with `f = C_μ σ̃^μ σ²`, and
//! the [`BellVector`] amplitudes over the unit-norm kets `B^μ = σ̃^μ σ²/√2`,
//! which are `√2·C_μ`.

use std::f64::consts::SQRT_2;

use nalgebra::{Matrix2, Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{inner_product, FockState, Mode, MomentumGrid, Spin};
use crate::lorentz::{metric, FourVector, LorentzMatrix};
use crate::quaternion::epsilon_contract;
use crate::wigner::{check_su2, transform_momentum, wigner_finite};

type C = Complex64;

fn cx(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// The four matrices `σ̃^μ` and `σ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaTilde {
    pub mats: [Matrix2<C>; 4],
    pub sigma2: Matrix2<C>,
}

impl SigmaTilde {
    pub fn new() -> Self {
        let (o, l, i) = (cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 1.0));
        let s1 = Matrix2::new(o, l, l, o);
        let s2 = Matrix2::new(o, -i, i, o);
        let s3 = Matrix2::new(l, o, o, -l);
        SigmaTilde {
            mats: [Matrix2::identity() * i, s1, s2, s3],
            sigma2: s2,
        }
    }

    pub fn get(&self, mu: usize) -> Result<&Matrix2<C>> {
        self.mats.get(mu).ok_or(Error::IndexOutOfRange(mu))
    }

    /// Pauli matrix `σⁱ`, `i ∈ {0, 1, 2}`.
    pub fn pauli(&self, i: usize) -> &Matrix2<C> {
        &self.mats[i + 1]
    }
}

impl Default for SigmaTilde {
    fn default() -> Self {
        Self::new()
    }
}

/// Two-particle spin amplitudes `f(s₁, s₂)` at fixed momenta and species.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinAmplitudeMatrix(pub Matrix2<C>);

impl SpinAmplitudeMatrix {
    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `R_ν^μ` stored with `ν` as the row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So4Matrix(pub Matrix4<f64>);

impl So4Matrix {
    pub fn identity() -> Self {
        So4Matrix(Matrix4::identity())
    }

    /// `(max|RᵀR − I|, |det R − 1|)`.
    pub fn residuals(&self) -> (f64, f64) {
        let r = &self.0;
        (
            (r.transpose() * r - Matrix4::identity()).amax(),
            (r.determinant() - 1.0).abs(),
        )
    }

    pub fn is_so4(&self, tol: f64) -> bool {
        let (o, d) = self.residuals();
        o <= tol && d <= tol
    }

    pub fn apply(&self, a: &[C; 4]) -> [C; 4] {
        std::array::from_fn(|nu| (0..4).map(|mu| a[mu] * self.0[(nu, mu)]).sum())
    }
}

/// Conventional Bell labels `β_xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionalBell {
    Beta00,
    Beta01,
    Beta10,
    Beta11,
}

impl ConventionalBell {
    pub fn label(&self) -> &'static str {
        match self {
            ConventionalBell::Beta00 => "beta00",
            ConventionalBell::Beta01 => "beta01",
            ConventionalBell::Beta10 => "beta10",
            ConventionalBell::Beta11 => "beta11",
        }
    }

    /// `β_xy = (|0,y⟩ + (−1)^x |1,1−y⟩)/√2` with `|0⟩ = +`, `|1⟩ = −`.
    pub fn spin_matrix(&self) -> Matrix2<C> {
        let (x, y) = match self {
            ConventionalBell::Beta00 => (0, 0),
            ConventionalBell::Beta01 => (0, 1),
            ConventionalBell::Beta10 => (1, 0),
            ConventionalBell::Beta11 => (1, 1),
        };
        let mut m = Matrix2::zeros();
        m[(0, y)] = cx(1.0 / SQRT_2, 0.0);
        m[(1, 1 - y)] = cx(if x == 0 { 1.0 } else { -1.0 } / SQRT_2, 0.0);
        m
    }
}

/// `(1/√2) σ̃^μ σ²`.
pub fn bell_basis_spin(mu: usize) -> Result<SpinAmplitudeMatrix> {
    let s = SigmaTilde::new();
    Ok(SpinAmplitudeMatrix(
        s.get(mu)? * s.sigma2 * cx(1.0 / SQRT_2, 0.0),
    ))
}

/// `|β⟩ = phase·|B^μ⟩`.
pub fn conventional_map(mu: usize) -> Result<(ConventionalBell, C)> {
    match mu {
        0 => Ok((ConventionalBell::Beta11, cx(1.0, 0.0))),
        1 => Ok((ConventionalBell::Beta10, cx(0.0, -1.0))),
        2 => Ok((ConventionalBell::Beta00, cx(1.0, 0.0))),
        3 => Ok((ConventionalBell::Beta01, cx(0.0, 1.0))),
        _ => Err(Error::IndexOutOfRange(mu)),
    }
}

/// `R_ν^μ = ½ η_να Tr[U₁ σ̃^μ U₂⁻¹ σ̃^α]`.
pub fn so4_from_trace(u1: &Matrix2<C>, u2: &Matrix2<C>) -> Result<So4Matrix> {
    check_su2(u1, 1e-10)?;
    check_su2(u2, 1e-10)?;
    let s = SigmaTilde::new();
    let eta = metric();
    let u2_inv = u2.adjoint();
    let mut r = Matrix4::zeros();
    let mut worst_im: f64 = 0.0;
    for mu in 0..4 {
        let m = u1 * s.mats[mu] * u2_inv;
        for nu in 0..4 {
            // η is diagonal
            let z = (m * s.mats[nu]).trace() * (0.5 * eta[(nu, nu)]);
            worst_im = worst_im.max(z.im.abs());
            r[(nu, mu)] = z.re;
        }
    }
    if worst_im > 1e-12 {
        return Err(Error::NotSu2(format!(
            "trace formula left an imaginary part {worst_im:e}"
        )));
    }
    Ok(So4Matrix(r))
}

/// Closed-form entries for `U₁ = exp(iX·σ/2)`, `U₂ = exp(−iY·σ/2)`. With
/// `a = sin(|X|/2) X̂`, `b = sin(|Y|/2) Ŷ`:
///
/// ```text
/// R₀⁰ = c_x c_y − a·b
/// Rᵢ⁰ = −c_x bᵢ − c_y aᵢ + (a×b)ᵢ
/// R₀ʲ =  c_x bⱼ + c_y aⱼ + (a×b)ⱼ
/// Rᵢʲ = c_x c_y δᵢⱼ − c_x ε_ijk b_k + c_y ε_ijk a_k + a·b δᵢⱼ − aᵢbⱼ − aⱼbᵢ
/// ```
pub fn so4_explicit(x: &Vector3<f64>, y: &Vector3<f64>) -> So4Matrix {
    let (a, c_x) = half_angle(x);
    let (b, c_y) = half_angle(y);
    let axb = a.cross(&b);
    let ab = a.dot(&b);
    let mut r = Matrix4::zeros();
    r[(0, 0)] = c_x * c_y - ab;
    for i in 0..3 {
        r[(i + 1, 0)] = -c_x * b[i] - c_y * a[i] + axb[i];
        r[(0, i + 1)] = c_x * b[i] + c_y * a[i] + axb[i];
    }
    let block = nalgebra::Matrix3::identity() * (c_x * c_y + ab) - epsilon_contract(&b) * c_x
        + epsilon_contract(&a) * c_y
        - a * b.transpose()
        - b * a.transpose();
    r.fixed_view_mut::<3, 3>(1, 1).copy_from(&block);
    So4Matrix(r)
}

fn half_angle(v: &Vector3<f64>) -> (Vector3<f64>, f64) {
    let n = v.norm();
    if n == 0.0 {
        return (Vector3::zeros(), 1.0);
    }
    let (s, c) = (0.5 * n).sin_cos();
    (v * (s / n), c)
}

/// `C_μ = ½ η_μν Σ f(s₁,s₂) (σ² σ̃^ν)_{s₂s₁}`.
pub fn c_from_f(f: &SpinAmplitudeMatrix) -> [C; 4] {
    let s = SigmaTilde::new();
    std::array::from_fn(|mu| {
        let sign = if mu == 0 { -0.5 } else { 0.5 };
        (f.0 * s.sigma2 * s.mats[mu]).trace() * sign
    })
}

/// `f(s₁, s₂) = C_μ (σ̃^μ σ²)_{s₁s₂}`.
pub fn f_from_c(c: &[C; 4]) -> SpinAmplitudeMatrix {
    let s = SigmaTilde::new();
    SpinAmplitudeMatrix((0..4).fold(Matrix2::zeros(), |acc, mu| {
        acc + s.mats[mu] * s.sigma2 * c[mu]
    }))
}

/// Amplitudes over the normalized Bell kets at a fixed momentum pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellVector {
    pub p1: FourVector,
    pub p2: FourVector,
    pub n1: u32,
    pub n2: u32,
    pub amps: [C; 4],
}

impl BellVector {
    /// Validates the momenta and rejects the Pauli-degenerate equal-mode pair.
    pub fn new(
        p1: FourVector,
        p2: FourVector,
        species: (u32, u32),
        masses: (f64, f64),
        amps: [C; 4],
        grid: &MomentumGrid,
    ) -> Result<Self> {
        p1.check_on_shell(masses.0)?;
        p2.check_on_shell(masses.1)?;
        let b = BellVector {
            p1,
            p2,
            n1: species.0,
            n2: species.1,
            amps,
        };
        b.check_distinct(grid)?;
        Ok(b)
    }

    fn check_distinct(&self, grid: &MomentumGrid) -> Result<()> {
        let m1 = grid.mode(self.p1.spatial(), Spin::Up, self.n1)?;
        let m2 = grid.mode(self.p2.spatial(), Spin::Up, self.n2)?;
        if m1.same_orbital(&m2) {
            return Err(Error::PauliDegenerate);
        }
        Ok(())
    }

    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Spin amplitudes `f = Σ_μ a_μ σ̃^μ σ²/√2`.
    pub fn spin_amplitudes(&self) -> SpinAmplitudeMatrix {
        let c: [C; 4] = std::array::from_fn(|mu| self.amps[mu] / SQRT_2);
        f_from_c(&c)
    }

    fn modes(&self, grid: &MomentumGrid) -> Result<[[Mode; 2]; 2]> {
        let m = |p: &FourVector, s: Spin, n: u32| grid.mode(p.spatial(), s, n);
        Ok([
            [
                m(&self.p1, Spin::Up, self.n1)?,
                m(&self.p1, Spin::Down, self.n1)?,
            ],
            [
                m(&self.p2, Spin::Up, self.n2)?,
                m(&self.p2, Spin::Down, self.n2)?,
            ],
        ])
    }

    /// `Σ f(s₁,s₂) a†(p₁,s₁,n₁) a†(p₂,s₂,n₂) |0⟩`.
    pub fn to_fock(&self, grid: &MomentumGrid) -> Result<FockState> {
        self.check_distinct(grid)?;
        let modes = self.modes(grid)?;
        let f = self.spin_amplitudes();
        let mut out = FockState::zero();
        for s1 in 0..2 {
            for s2 in 0..2 {
                let term = FockState::from_modes(&[modes[0][s1], modes[1][s2]]);
                out = out.add(&term.scale(f.0[(s1, s2)]));
            }
        }
        Ok(out)
    }

    /// Projects a Fock state onto the Bell kets at `(p₁, n₁; p₂, n₂)`, reading
    /// `f(s₁,s₂) = ⟨a†₁ a†₂ 0|Ψ⟩` and converting with [`c_from_f`].
    pub fn from_fock(
        state: &FockState,
        p1: FourVector,
        p2: FourVector,
        species: (u32, u32),
        grid: &MomentumGrid,
    ) -> Result<Self> {
        let mut b = BellVector {
            p1,
            p2,
            n1: species.0,
            n2: species.1,
            amps: [C::default(); 4],
        };
        b.check_distinct(grid)?;
        let modes = b.modes(grid)?;
        let mut f = Matrix2::zeros();
        for s1 in 0..2 {
            for s2 in 0..2 {
                let ket = FockState::from_modes(&[modes[0][s1], modes[1][s2]]);
                f[(s1, s2)] = inner_product(&ket, state);
            }
        }
        let c = c_from_f(&SpinAmplitudeMatrix(f));
        b.amps = std::array::from_fn(|mu| c[mu] * SQRT_2);
        Ok(b)
    }
}

/// The SO(4) matrix and transformed Bell vector under `Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellTransform {
    pub r: So4Matrix,
    pub x: Vector3<f64>,
    pub y: Vector3<f64>,
    pub out: BellVector,
}

/// Transforms the Bell amplitudes with `R` built from `X = θ_W(p₁)` and
/// `Y = −θ_W(p₂)`. The new amplitudes are `a'_ν = R_ν^μ a_μ`. The continuum
/// Jacobian prefactor is omitted.
pub fn transform_bell(
    l: &LorentzMatrix,
    b: &BellVector,
    m1: f64,
    m2: f64,
) -> Result<BellTransform> {
    let w1 = wigner_finite(l, &b.p1, m1)?;
    let w2 = wigner_finite(l, &b.p2, m2)?;
    // the quaternion sign is the spin-1/2 value; use D(W) directly
    let r = so4_from_trace(&w1.su2(), &w2.su2())?;
    let out = BellVector {
        p1: transform_momentum(l, &b.p1, m1)?,
        p2: transform_momentum(l, &b.p2, m2)?,
        n1: b.n1,
        n2: b.n2,
        amps: r.apply(&b.amps),
    };
    Ok(BellTransform {
        r,
        x: w1.angle_vector().0,
        y: -w2.angle_vector().0,
        out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::SpinQuaternion;

    fn su2(v: Vector3<f64>) -> Matrix2<C> {
        SpinQuaternion::from_rotation_vector(&v).su2()
    }

    fn max_abs(m: &Matrix2<C>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sigma_tilde_identities() {
        let s = SigmaTilde::new();
        for i in 0..3 {
            let lhs = s.sigma2 * s.pauli(i) * s.sigma2;
            assert_eq!(lhs, -s.pauli(i).transpose());
        }
        let x = [0.3, -1.2, 0.7, 2.0];
        let m = (0..4).fold(Matrix2::zeros(), |acc, mu| {
            acc + s.mats[mu] * cx(x[mu], 0.0)
        });
        // det(x_μ σ̃^μ) = −x_μ x_μ, a Euclidean sum: the σ̃ carry SO(4), not SO(3,1)
        let xx: f64 = x.iter().map(|v| v * v).sum();
        assert!((m.determinant() - cx(-xx, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn basis_examples() {
        let s = 1.0 / SQRT_2;
        let b0 = bell_basis_spin(0).unwrap().0;
        assert!(
            max_abs(&(b0 - Matrix2::new(cx(0.0, 0.0), cx(s, 0.0), cx(-s, 0.0), cx(0.0, 0.0))))
                < 1e-15
        );
        let b2 = bell_basis_spin(2).unwrap().0;
        assert!(b2[(0, 1)].norm() < 1e-15 && b2[(1, 0)].norm() < 1e-15);
        assert!((b2[(0, 0)] - b2[(1, 1)]).norm() < 1e-15);
        for mu in 0..4 {
            assert!((bell_basis_spin(mu).unwrap().frobenius_norm() - 1.0).abs() < 1e-15);
        }
        assert!(matches!(bell_basis_spin(4), Err(Error::IndexOutOfRange(4))));
    }

    #[test]
    fn conventional_labels_and_phases() {
        assert_eq!(
            conventional_map(0).unwrap(),
            (ConventionalBell::Beta11, cx(1.0, 0.0))
        );
        assert_eq!(
            conventional_map(1).unwrap(),
            (ConventionalBell::Beta10, cx(0.0, -1.0))
        );
        for mu in 0..4 {
            let (beta, phase) = conventional_map(mu).unwrap();
            let want = beta.spin_matrix();
            let got = bell_basis_spin(mu).unwrap().0 * phase;
            assert!(max_abs(&(got - want)) < 1e-15, "mu = {mu}");
        }
        assert!(conventional_map(7).is_err());
    }

    #[test]
    fn trace_special_cases() {
        let r = so4_from_trace(&Matrix2::identity(), &Matrix2::identity()).unwrap();
        assert!((r.0 - Matrix4::identity()).amax() < 1e-15);
        let th = 0.8;
        let u = su2(Vector3::z() * th);
        let r = so4_from_trace(&u, &u).unwrap();
        let rot = crate::lorentz::rotation_matrix(
            &crate::lorentz::RotationParams::new(th, Vector3::z()).unwrap(),
        );
        assert!((r.0 - rot.matrix()).amax() < 1e-14);
        let phi = 0.9;
        let r = so4_from_trace(&su2(Vector3::x() * phi), &su2(-Vector3::x() * phi)).unwrap();
        let mut want = Matrix4::identity();
        want[(0, 0)] = phi.cos();
        want[(1, 1)] = phi.cos();
        want[(0, 1)] = phi.sin();
        want[(1, 0)] = -phi.sin();
        assert!((r.0 - want).amax() < 1e-14);
    }

    #[test]
    fn explicit_matches_trace() {
        let x = Vector3::new(0.4, -1.3, 2.2);
        let y = Vector3::new(-0.8, 0.1, 0.6);
        let a = so4_explicit(&x, &y);
        let b = so4_from_trace(&su2(x), &su2(-y)).unwrap();
        assert!((a.0 - b.0).amax() < 1e-14);
        assert!(a.is_so4(1e-12));
        assert_eq!(
            so4_explicit(&Vector3::zeros(), &Vector3::zeros()).0,
            Matrix4::identity()
        );
    }

    #[test]
    fn trace_rejects_non_unitary() {
        let bad = Matrix2::identity() * cx(1.1, 0.0);
        assert!(matches!(
            so4_from_trace(&bad, &Matrix2::identity()),
            Err(Error::NotSu2(_))
        ));
    }

    #[test]
    fn coefficient_conversions() {
        let f = bell_basis_spin(0).unwrap();
        let mut unit = f;
        unit.0 *= cx(SQRT_2, 0.0);
        let c = c_from_f(&unit);
        assert!((c[0] - cx(1.0, 0.0)).norm() < 1e-15);
        assert!(c[1..].iter().all(|z| z.norm() < 1e-15));
        // |+−⟩ = (B⁰ + iB³)/√2
        let mut pm = Matrix2::zeros();
        pm[(0, 1)] = cx(1.0, 0.0);
        let c = c_from_f(&SpinAmplitudeMatrix(pm));
        let want = [cx(0.5, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.5)];
        for mu in 0..4 {
            assert!((c[mu] - want[mu]).norm() < 1e-15);
        }
        let g = Matrix2::new(cx(0.3, -0.1), cx(1.2, 0.4), cx(-0.7, 0.0), cx(0.05, 2.0));
        let back = f_from_c(&c_from_f(&SpinAmplitudeMatrix(g)));
        assert!(max_abs(&(back.0 - g)) < 1e-15);
    }

    #[test]
    fn pauli_degenerate_pair_is_rejected() {
        let p = FourVector::on_shell(1.0, Vector3::new(0.1, 0.2, 0.3)).unwrap();
        let amps = [cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
        let r = BellVector::new(p, p, (0, 0), (1.0, 1.0), amps, &MomentumGrid::default());
        assert!(matches!(r, Err(Error::PauliDegenerate)));
        assert!(BellVector::new(p, p, (0, 1), (1.0, 1.0), amps, &MomentumGrid::default()).is_ok());
    }

    #[test]
    fn fock_round_trip() {
        let grid = MomentumGrid::default();
        let p1 = FourVector::on_shell(1.0, Vector3::new(0.5, 0.0, 0.2)).unwrap();
        let p2 = FourVector::on_shell(1.0, Vector3::new(-0.3, 0.9, 0.0)).unwrap();
        let amps = [cx(0.1, 0.2), cx(-0.5, 0.0), cx(0.3, -0.4), cx(0.0, 0.6)];
        let b = BellVector::new(p1, p2, (0, 0), (1.0, 1.0), amps, &grid).unwrap();
        let s = b.to_fock(&grid).unwrap();
        assert!((s.norm_squared() - b.norm_squared()).abs() < 1e-14);
        let back = BellVector::from_fock(&s, p1, p2, (0, 0), &grid).unwrap();
        for (x, y) in back.amps.iter().zip(&amps) {
            assert!((x - y).norm() < 1e-15);
        }
    }
}
