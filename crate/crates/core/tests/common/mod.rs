//! Reference implementations for the integration tests. Nothing here calls into
//! the library: matrices are built from textbook formulas with plain nalgebra.

#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64 as C;

pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// `E(n)_ab = ε_abk n_k`.
pub fn cross_matrix(n: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, n.z, -n.y, -n.z, 0.0, n.x, n.y, -n.x, 0.0)
}

/// Spatial rotation `cos ψ I + (1 − cos ψ) n nᵀ + sin ψ E(n)` embedded in 4×4.
pub fn rotation(angle: f64, axis: &Vector3<f64>) -> Matrix4<f64> {
    let n = axis.normalize();
    let r = Matrix3::identity() * angle.cos()
        + n * n.transpose() * (1.0 - angle.cos())
        + cross_matrix(&n) * angle.sin();
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(&r);
    m
}

/// Pure boost with rapidity `α` along `n`, taking the rest frame to velocity `tanh α · n`.
pub fn boost(alpha: f64, axis: &Vector3<f64>) -> Matrix4<f64> {
    let n = axis.normalize();
    let (ch, sh) = (alpha.cosh(), alpha.sinh());
    let mut m = Matrix4::identity();
    m[(0, 0)] = ch;
    for i in 0..3 {
        m[(0, i + 1)] = sh * n[i];
        m[(i + 1, 0)] = sh * n[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += (ch - 1.0) * n[i] * n[j];
        }
    }
    m
}

pub fn energy(mass: f64, p: &Vector3<f64>) -> f64 {
    (mass * mass + p.norm_squared()).sqrt()
}

/// Standard boost `L(p)`: `(m, 0) ↦ (p⁰, p)`.
pub fn standard_boost(mass: f64, p: &Vector3<f64>) -> Matrix4<f64> {
    let pn = p.norm();
    if pn == 0.0 {
        return Matrix4::identity();
    }
    boost((pn / mass).asinh(), &(p / pn))
}

pub fn lorentz_inverse(l: &Matrix4<f64>) -> Matrix4<f64> {
    eta() * l.transpose() * eta()
}

/// `W = L(Λp)⁻¹ Λ L(p)`, its spatial block.
pub fn little_group_rotation(l: &Matrix4<f64>, mass: f64, p: &Vector3<f64>) -> Matrix3<f64> {
    let p4 = Vector4::new(energy(mass, p), p.x, p.y, p.z);
    let q = l * p4;
    let q3 = Vector3::new(q[1], q[2], q[3]);
    let w = lorentz_inverse(&standard_boost(mass, &q3)) * l * standard_boost(mass, p);
    w.fixed_view::<3, 3>(1, 1).into_owned()
}

pub fn max_abs3(m: &Matrix3<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn max_abs4(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// `exp(A)` by scaling and squaring of a Taylor series.
pub fn expm4(a: &Matrix4<f64>) -> Matrix4<f64> {
    let norm = a.iter().map(|x| x.abs()).sum::<f64>();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a / 2f64.powi(s);
    let mut term = Matrix4::identity();
    let mut sum = Matrix4::identity();
    for k in 1..30 {
        term = term * b / k as f64;
        sum += term;
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

pub fn pauli() -> [Matrix2<C>; 3] {
    let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    [
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

/// `exp(i v·σ/2) = cos(|v|/2) I + i sin(|v|/2) v̂·σ`.
pub fn su2_exp(v: &Vector3<f64>) -> Matrix2<C> {
    let n = v.norm();
    if n == 0.0 {
        return Matrix2::identity();
    }
    let s = pauli();
    let (sn, cs) = (0.5 * n).sin_cos();
    let gen = (0..3).fold(Matrix2::zeros(), |acc, k| acc + s[k] * C::from(v[k] / n));
    Matrix2::identity() * C::from(cs) + gen * C::new(0.0, sn)
}

/// Shortest Euclidean distance between two unit vectors up to sign.
pub fn projective_distance(a: &[C], b: &[C]) -> f64 {
    let d1: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let d2: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x + y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    d1.min(d2)
}

/// `−Σ λ ln λ` over strictly positive entries.
pub fn shannon(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|x| x * x.ln())
        .sum::<f64>()
}

/// Random complex unitary from Gram–Schmidt on a random matrix.
pub fn random_unitary<R: rand::Rng>(rng: &mut R, d: usize) -> nalgebra::DMatrix<C> {
    let m = nalgebra::DMatrix::from_fn(d, d, |_, _| {
        C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    m.qr().q()
}
