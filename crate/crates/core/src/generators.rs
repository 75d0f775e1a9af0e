//! One-particle momentum-space wavefunctions on a cubic grid and the explicit
//! Lorentz generators
//!
//! ```text
//! 𝕁 = σ/2 + p × (1/i)∂_p
//! 𝕂 = (σ/2 × p)/(p⁰ + m) + p⁰ (1/i)∂_p + p/(2i p⁰)
//! ```
//!
//! Each generator component is a first-order operator `M₀(p) + Σ_k M_k(p) ∂_k`
//! with a 2×2 spin matrix `M₀` and scalar `M_k`. Derivatives are taken either by
//! central differences or from the analytic jet of a [`TestFunction`].

use std::sync::Arc;

use nalgebra::{Matrix2, Matrix4, Vector2, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{check_mass, levi_civita, omega_parameters, FourVector, LorentzMatrix};
use crate::wigner::{wigner_oracle, WignerRotation};

type C = Complex64;
type Spinor = Vector2<C>;

/// Largest amplitude allowed on the two outer shells.
pub const BOUNDARY_TOL: f64 = 1e-8;

/// Shells excluded from residual norms (finite-difference edge effects).
pub const EDGE_SHELLS: usize = 2;

fn pauli(i: usize) -> Matrix2<C> {
    let (o, l, j) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    match i {
        0 => Matrix2::new(o, l, l, o),
        1 => Matrix2::new(o, -j, j, o),
        _ => Matrix2::new(l, o, o, -l),
    }
}

/// Uniform lattice `[−P, P]³` with `N` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub extent: f64,
    pub mass: f64,
}

impl GridSpec {
    pub fn new(n: usize, extent: f64, mass: f64) -> Result<Self> {
        check_mass(mass)?;
        if n < 2 * EDGE_SHELLS + 3 {
            return Err(Error::InvalidGrid(format!(
                "{n} points per axis is too few"
            )));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("extent {extent}")));
        }
        Ok(GridSpec { n, extent, mass })
    }

    /// `N = 33`, `P = 4m`.
    pub fn default_for_mass(mass: f64) -> Result<Self> {
        Self::new(33, 4.0 * mass, mass)
    }

    /// Same extent with `2(N − 1) + 1` points, halving `h`.
    pub fn refined(&self) -> Self {
        GridSpec {
            n: 2 * (self.n - 1) + 1,
            ..*self
        }
    }

    pub fn h(&self) -> f64 {
        2.0 * self.extent / (self.n - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.h()
    }

    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n + iy) * self.n + iz
    }

    pub fn unindex(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    pub fn point(&self, idx: usize) -> Vector3<f64> {
        let [a, b, c] = self.unindex(idx);
        Vector3::new(self.coord(a), self.coord(b), self.coord(c))
    }

    /// Distance (in points) to the nearest face.
    pub fn shell(&self, idx: usize) -> usize {
        self.unindex(idx)
            .iter()
            .map(|&i| i.min(self.n - 1 - i))
            .min()
            .unwrap_or(0)
    }
}

/// Value, gradient and Hessian of a two-component function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Spinor,
    pub grad: [Spinor; 3],
    pub hess: [[Spinor; 3]; 3],
}

impl Jet {
    fn scaled(mut self, s: f64) -> Jet {
        let s = C::from(s);
        self.value *= s;
        for l in 0..3 {
            self.grad[l] *= s;
            for k in 0..3 {
                self.hess[l][k] *= s;
            }
        }
        self
    }
}

/// A smooth wavefunction with exact derivatives.
pub trait TestFunction: Send + Sync + std::fmt::Debug {
    fn jet(&self, p: &Vector3<f64>) -> Jet;
}

/// `χ · e^{−|p−c|²/(2w²) + i k·p}`, optionally times `(p_x + i p_y)` (one unit
/// of orbital `L_z`).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPacket {
    pub center: Vector3<f64>,
    pub width: f64,
    pub wave: Vector3<f64>,
    pub spinor: Spinor,
    pub winding: bool,
}

impl GaussianPacket {
    pub fn new(center: Vector3<f64>, width: f64, wave: Vector3<f64>, spinor: Spinor) -> Self {
        GaussianPacket {
            center,
            width,
            wave,
            spinor,
            winding: false,
        }
    }

    /// Centred, real, spin-up.
    pub fn spherical(width: f64) -> Self {
        Self::new(
            Vector3::zeros(),
            width,
            Vector3::zeros(),
            Spinor::new(C::from(1.0), C::from(0.0)),
        )
    }

    pub fn with_winding(mut self) -> Self {
        self.winding = true;
        self
    }
}

impl TestFunction for GaussianPacket {
    fn jet(&self, p: &Vector3<f64>) -> Jet {
        let w2 = self.width * self.width;
        let d = p - self.center;
        let g = C::new(-d.norm_squared() / (2.0 * w2), self.wave.dot(p)).exp();
        // ∂_l g = g a_l, ∂_l∂_k g = g (a_l a_k − δ_lk/w²)
        let a: [C; 3] = std::array::from_fn(|l| C::new(-d[l] / w2, self.wave[l]));
        let (q, dq): (C, [C; 3]) = if self.winding {
            (
                C::new(p.x, p.y),
                [C::from(1.0), C::new(0.0, 1.0), C::from(0.0)],
            )
        } else {
            (C::from(1.0), [C::from(0.0); 3])
        };
        let val = g * q;
        let grad: [C; 3] = std::array::from_fn(|l| g * (a[l] * q + dq[l]));
        let hess: [[C; 3]; 3] = std::array::from_fn(|l| {
            std::array::from_fn(|k| {
                let delta = if l == k { 1.0 / w2 } else { 0.0 };
                g * ((a[l] * a[k] - delta) * q + a[l] * dq[k] + a[k] * dq[l])
            })
        });
        let chi = self.spinor;
        Jet {
            value: chi * val,
            grad: std::array::from_fn(|l| chi * grad[l]),
            hess: std::array::from_fn(|l| std::array::from_fn(|k| chi * hess[l][k])),
        }
    }
}

/// Sampled spinor wavefunction, with the analytic closure it came from (if any).
#[derive(Debug, Clone)]
pub struct WavefunctionGrid {
    pub spec: GridSpec,
    pub values: Vec<Spinor>,
    closure: Option<(Arc<dyn TestFunction>, f64)>,
}

impl WavefunctionGrid {
    /// Samples `f` and rescales to unit Riemann norm; the closure is kept with
    /// the same scale.
    pub fn sample(spec: GridSpec, f: Arc<dyn TestFunction>) -> Result<Self> {
        let values: Vec<Spinor> = (0..spec.len())
            .map(|i| f.jet(&spec.point(i)).value)
            .collect();
        let mut g = WavefunctionGrid {
            spec,
            values,
            closure: None,
        };
        let n = g.norm(Measure::Flat);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidGrid(
                "test function vanishes on the grid".into(),
            ));
        }
        let s = 1.0 / n;
        for v in &mut g.values {
            *v *= C::from(s);
        }
        g.closure = Some((f, s));
        Ok(g)
    }

    pub fn from_values(spec: GridSpec, values: Vec<Spinor>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                spec.len()
            )));
        }
        Ok(WavefunctionGrid {
            spec,
            values,
            closure: None,
        })
    }

    pub fn has_closure(&self) -> bool {
        self.closure.is_some()
    }

    fn jet(&self, idx: usize) -> Result<Jet> {
        let (f, s) = self.closure.as_ref().ok_or(Error::MissingClosure)?;
        Ok(f.jet(&self.spec.point(idx)).scaled(*s))
    }

    /// Largest amplitude on the outer [`EDGE_SHELLS`] shells.
    pub fn boundary_amplitude(&self) -> f64 {
        (0..self.spec.len())
            .filter(|&i| self.spec.shell(i) < EDGE_SHELLS)
            .map(|i| self.values[i].norm())
            .fold(0.0, f64::max)
    }

    pub fn check_boundary(&self) -> Result<()> {
        let b = self.boundary_amplitude();
        if b > BOUNDARY_TOL {
            return Err(Error::BoundaryLeak(b));
        }
        Ok(())
    }

    pub fn norm(&self, measure: Measure) -> f64 {
        inner(self, self, measure, 0).re.sqrt()
    }

    /// Interior norm, skipping the outer [`EDGE_SHELLS`] shells.
    pub fn interior_norm(&self) -> f64 {
        inner(self, self, Measure::Flat, EDGE_SHELLS).re.sqrt()
    }

    pub fn sub(&self, other: &WavefunctionGrid) -> WavefunctionGrid {
        WavefunctionGrid {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
            closure: None,
        }
    }

    pub fn scale(&self, c: C) -> WavefunctionGrid {
        WavefunctionGrid {
            spec: self.spec,
            values: self.values.iter().map(|a| a * c).collect(),
            closure: None,
        }
    }

    /// `index,ix,iy,iz,px,py,pz,spin,re,im`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "index", "ix", "iy", "iz", "px", "py", "pz", "spin", "re", "im",
        ])?;
        for (idx, v) in self.values.iter().enumerate() {
            let [a, b, c] = self.spec.unindex(idx);
            let p = self.spec.point(idx);
            for (s, label) in ["+", "-"].iter().enumerate() {
                w.write_record([
                    idx.to_string(),
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                    p.x.to_string(),
                    p.y.to_string(),
                    p.z.to_string(),
                    label.to_string(),
                    v[s].re.to_string(),
                    v[s].im.to_string(),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

/// Integration measure of the inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    /// `d³p`
    Flat,
    /// `d³p/p⁰`
    Invariant,
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `Σ h³ w(p) φ†ψ` over points at least `skip` shells from the faces.
fn inner(phi: &WavefunctionGrid, psi: &WavefunctionGrid, measure: Measure, skip: usize) -> C {
    let spec = phi.spec;
    let h3 = spec.h().powi(3);
    let m2 = spec.mass * spec.mass;
    let (mut re, mut im) = (
        Vec::with_capacity(spec.len()),
        Vec::with_capacity(spec.len()),
    );
    for idx in 0..spec.len() {
        if skip > 0 && spec.shell(idx) < skip {
            continue;
        }
        let w = match measure {
            Measure::Flat => h3,
            Measure::Invariant => h3 / (spec.point(idx).norm_squared() + m2).sqrt(),
        };
        let z = phi.values[idx].dotc(&psi.values[idx]) * w;
        re.push(z.re);
        im.push(z.im);
    }
    C::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// `⟨φ|ψ⟩` with the given measure.
pub fn inner_product(phi: &WavefunctionGrid, psi: &WavefunctionGrid, measure: Measure) -> C {
    inner(phi, psi, measure, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Generator {
    J(usize),
    K(usize),
}

impl Generator {
    pub fn label(&self) -> String {
        let ax = ["x", "y", "z"];
        match self {
            Generator::J(i) => format!("J{}", ax[*i]),
            Generator::K(i) => format!("K{}", ax[*i]),
        }
    }

    fn axis(&self) -> usize {
        match self {
            Generator::J(i) | Generator::K(i) => *i,
        }
    }
}

/// Whether `𝕂` carries the `p/(2ip⁰)` measure term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KForm {
    WithMeasure,
    WithoutMeasure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    Central,
    Analytic,
}

/// Coefficients of `M₀ + Σ M_k ∂_k` and their first derivatives
/// (`dm0[l] = ∂_l M₀`, `dmk[l][k] = ∂_l M_k`).
struct Coeffs {
    m0: Matrix2<C>,
    mk: [C; 3],
    dm0: [Matrix2<C>; 3],
    dmk: [[C; 3]; 3],
}

fn coeffs(g: Generator, p: &Vector3<f64>, mass: f64, form: KForm) -> Coeffs {
    let i_unit = C::new(0.0, 1.0);
    let zero2 = Matrix2::zeros();
    match g {
        Generator::J(i) => {
            // M_k = −i ε_ijk p_j, ∂_l M_k = −i ε_ilk
            let mk = std::array::from_fn(|k| {
                -i_unit * (0..3).map(|j| levi_civita(i, j, k) * p[j]).sum::<f64>()
            });
            let dmk =
                std::array::from_fn(|l| std::array::from_fn(|k| -i_unit * levi_civita(i, l, k)));
            Coeffs {
                m0: pauli(i) * C::from(0.5),
                mk,
                dm0: [zero2; 3],
                dmk,
            }
        }
        Generator::K(i) => {
            let p0 = (p.norm_squared() + mass * mass).sqrt();
            let d = p0 + mass;
            let half = |j: usize| pauli(j) * C::from(0.5);
            // spin-orbit ε_ijk (σ_j/2) p_k/(p⁰+m)
            let mut m0 = Matrix2::zeros();
            for j in 0..3 {
                for k in 0..3 {
                    let e = levi_civita(i, j, k);
                    if e != 0.0 {
                        m0 += half(j) * C::from(e * p[k] / d);
                    }
                }
            }
            let with = form == KForm::WithMeasure;
            if with {
                m0 += Matrix2::identity() * (-i_unit * (p[i] / (2.0 * p0)));
            }
            let dm0 = std::array::from_fn(|l| {
                let mut acc = Matrix2::zeros();
                for j in 0..3 {
                    let e_l = levi_civita(i, j, l);
                    let mut coef = e_l / d;
                    for k in 0..3 {
                        coef -= levi_civita(i, j, k) * p[k] * p[l] / (p0 * d * d);
                    }
                    if coef != 0.0 {
                        acc += half(j) * C::from(coef);
                    }
                }
                if with {
                    let delta = if i == l { 1.0 } else { 0.0 };
                    let v = delta / (2.0 * p0) - p[i] * p[l] / (2.0 * p0 * p0 * p0);
                    acc += Matrix2::identity() * (-i_unit * v);
                }
                acc
            });
            let mk = std::array::from_fn(|k| if k == i { -i_unit * p0 } else { C::from(0.0) });
            let dmk = std::array::from_fn(|l| {
                std::array::from_fn(|k| {
                    if k == i {
                        -i_unit * (p[l] / p0)
                    } else {
                        C::from(0.0)
                    }
                })
            });
            Coeffs { m0, mk, dm0, dmk }
        }
    }
}

/// Central difference along `axis`; zero on the two faces.
fn central_diff(values: &[Spinor], spec: &GridSpec, axis: usize) -> Vec<Spinor> {
    let n = spec.n;
    let stride = [n * n, n, 1][axis];
    let inv = C::from(1.0 / (2.0 * spec.h()));
    (0..spec.len())
        .map(|idx| {
            let i = spec.unindex(idx)[axis];
            if i == 0 || i == n - 1 {
                Spinor::zeros()
            } else {
                (values[idx + stride] - values[idx - stride]) * inv
            }
        })
        .collect()
}

fn apply_fd(g: Generator, psi: &WavefunctionGrid, form: KForm) -> WavefunctionGrid {
    let spec = psi.spec;
    let derivs: [Vec<Spinor>; 3] = std::array::from_fn(|k| central_diff(&psi.values, &spec, k));
    let values = (0..spec.len())
        .map(|idx| {
            let c = coeffs(g, &spec.point(idx), spec.mass, form);
            let mut out = c.m0 * psi.values[idx];
            for (d, mk) in derivs.iter().zip(c.mk) {
                if mk != C::from(0.0) {
                    out += d[idx] * mk;
                }
            }
            out
        })
        .collect();
    WavefunctionGrid {
        spec,
        values,
        closure: None,
    }
}

fn apply_jet(g: Generator, p: &Vector3<f64>, mass: f64, form: KForm, jet: &Jet) -> Spinor {
    let c = coeffs(g, p, mass, form);
    let mut out = c.m0 * jet.value;
    for k in 0..3 {
        out += jet.grad[k] * c.mk[k];
    }
    out
}

/// `(A∘B)ψ = A₀(B₀ψ + B_k∂_kψ) + A_l[(∂_l B₀)ψ + B₀∂_lψ + (∂_l B_k)∂_kψ + B_k∂_l∂_kψ]`.
fn compose_jet(
    a: Generator,
    b: Generator,
    p: &Vector3<f64>,
    mass: f64,
    form: KForm,
    jet: &Jet,
) -> Spinor {
    let ca = coeffs(a, p, mass, form);
    let cb = coeffs(b, p, mass, form);
    let mut bpsi = cb.m0 * jet.value;
    for k in 0..3 {
        bpsi += jet.grad[k] * cb.mk[k];
    }
    let mut out = ca.m0 * bpsi;
    for l in 0..3 {
        if ca.mk[l] == C::from(0.0) {
            continue;
        }
        let mut d = cb.dm0[l] * jet.value + cb.m0 * jet.grad[l];
        for k in 0..3 {
            d += jet.grad[k] * cb.dmk[l][k] + jet.hess[l][k] * cb.mk[k];
        }
        out += d * ca.mk[l];
    }
    out
}

fn check_input(psi: &WavefunctionGrid, scheme: Scheme) -> Result<()> {
    psi.check_boundary()?;
    if scheme == Scheme::Analytic && !psi.has_closure() {
        return Err(Error::MissingClosure);
    }
    Ok(())
}

/// Applies one generator component.
pub fn apply_generator(
    psi: &WavefunctionGrid,
    g: Generator,
    scheme: Scheme,
    form: KForm,
) -> Result<WavefunctionGrid> {
    check_input(psi, scheme)?;
    apply_unchecked(psi, g, scheme, form)
}

fn apply_unchecked(
    psi: &WavefunctionGrid,
    g: Generator,
    scheme: Scheme,
    form: KForm,
) -> Result<WavefunctionGrid> {
    match scheme {
        Scheme::Central => Ok(apply_fd(g, psi, form)),
        Scheme::Analytic => {
            let spec = psi.spec;
            let values = (0..spec.len())
                .map(|idx| {
                    Ok(apply_jet(
                        g,
                        &spec.point(idx),
                        spec.mass,
                        form,
                        &psi.jet(idx)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WavefunctionGrid {
                spec,
                values,
                closure: None,
            })
        }
    }
}

/// `𝕁ⁱψ`.
pub fn apply_total_j(
    psi: &WavefunctionGrid,
    axis: usize,
    scheme: Scheme,
) -> Result<WavefunctionGrid> {
    apply_generator(psi, Generator::J(axis), scheme, KForm::WithMeasure)
}

/// `𝕂ⁱψ`, with or without the measure term.
pub fn apply_total_k(
    psi: &WavefunctionGrid,
    axis: usize,
    scheme: Scheme,
    form: KForm,
) -> Result<WavefunctionGrid> {
    apply_generator(psi, Generator::K(axis), scheme, form)
}

/// The coefficient `c` in `[A, B] = c·E` from the Lorentz algebra.
pub fn structure_constant(a: Generator, b: Generator, e: Generator) -> C {
    let eps = levi_civita(a.axis(), b.axis(), e.axis());
    let i = C::new(0.0, 1.0);
    match (a, b, e) {
        (Generator::J(_), Generator::J(_), Generator::J(_)) => i * eps,
        (Generator::J(_), Generator::K(_), Generator::K(_)) => i * eps,
        (Generator::K(_), Generator::J(_), Generator::K(_)) => i * eps,
        (Generator::K(_), Generator::K(_), Generator::J(_)) => -i * eps,
        _ => C::from(0.0),
    }
}

/// Interior grid norm of `([A, B] − c·E)ψ`, `c` from [`structure_constant`].
pub fn commutator_residual(
    psi: &WavefunctionGrid,
    a: Generator,
    b: Generator,
    expected: Generator,
    scheme: Scheme,
) -> Result<f64> {
    check_input(psi, scheme)?;
    let form = KForm::WithMeasure;
    let c = structure_constant(a, b, expected);
    let spec = psi.spec;
    let residual = match scheme {
        Scheme::Central => {
            let ab = apply_fd(a, &apply_fd(b, psi, form), form);
            let ba = apply_fd(b, &apply_fd(a, psi, form), form);
            let e = apply_fd(expected, psi, form);
            ab.sub(&ba).sub(&e.scale(c))
        }
        Scheme::Analytic => {
            let values = (0..spec.len())
                .map(|idx| {
                    let p = spec.point(idx);
                    let jet = psi.jet(idx)?;
                    Ok(compose_jet(a, b, &p, spec.mass, form, &jet)
                        - compose_jet(b, a, &p, spec.mass, form, &jet)
                        - apply_jet(expected, &p, spec.mass, form, &jet) * c)
                })
                .collect::<Result<Vec<_>>>()?;
            WavefunctionGrid::from_values(spec, values)?
        }
    };
    Ok(residual.interior_norm())
}

/// The three relation families `[Jx,Jy] = iJz`, `[Kx,Ky] = −iJz`, `[Jx,Ky] = iKz`.
pub fn commutator_families() -> [(Generator, Generator, Generator); 3] {
    [
        (Generator::J(0), Generator::J(1), Generator::J(2)),
        (Generator::K(0), Generator::K(1), Generator::J(2)),
        (Generator::J(0), Generator::K(1), Generator::K(2)),
    ]
}

/// `max_ij |[σᵢ/2, σⱼ/2] − i ε_ijk σ_k/2|`.
pub fn spin_algebra_residual() -> f64 {
    let s: [Matrix2<C>; 3] = std::array::from_fn(|i| pauli(i) * C::from(0.5));
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let lhs = s[i] * s[j] - s[j] * s[i];
            let rhs = (0..3).fold(Matrix2::zeros(), |acc, k| {
                acc + s[k] * C::new(0.0, levi_civita(i, j, k))
            });
            worst = worst.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    worst
}

/// `max_i |⟨φ|𝕂ⁱψ⟩ − ⟨𝕂ⁱφ|ψ⟩|` for each (form, measure) pairing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermiticityReport {
    pub with_term_flat: f64,
    pub with_term_invariant: f64,
    pub without_term_flat: f64,
    pub without_term_invariant: f64,
}

impl HermiticityReport {
    /// Smaller of the crossed residuals over the larger matched one.
    pub fn separation(&self) -> f64 {
        let matched = self.with_term_flat.max(self.without_term_invariant);
        let crossed = self.with_term_invariant.min(self.without_term_flat);
        crossed / matched
    }
}

pub fn hermiticity_table(
    phi: &WavefunctionGrid,
    psi: &WavefunctionGrid,
    scheme: Scheme,
) -> Result<HermiticityReport> {
    check_input(phi, scheme)?;
    check_input(psi, scheme)?;
    let res = |form: KForm, measure: Measure| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let kpsi = apply_unchecked(psi, Generator::K(i), scheme, form)?;
            let kphi = apply_unchecked(phi, Generator::K(i), scheme, form)?;
            let d = inner_product(phi, &kpsi, measure) - inner_product(&kphi, psi, measure);
            worst = worst.max(d.norm());
        }
        Ok(worst)
    };
    Ok(HermiticityReport {
        with_term_flat: res(KForm::WithMeasure, Measure::Flat)?,
        with_term_invariant: res(KForm::WithMeasure, Measure::Invariant)?,
        without_term_flat: res(KForm::WithoutMeasure, Measure::Flat)?,
        without_term_invariant: res(KForm::WithoutMeasure, Measure::Invariant)?,
    })
}

/// Exact finite transport of a test function at one momentum `q`:
/// `ψ'(q) = √(p⁰/q⁰) D(W(Λ, p)) ψ(p)` with `p = Λ⁻¹q`.
pub fn exact_transport(
    f: &dyn TestFunction,
    l: &LorentzMatrix,
    q: &Vector3<f64>,
    mass: f64,
) -> Result<Spinor> {
    let qv = FourVector::on_shell(mass, *q)?;
    let p = FourVector::on_shell(mass, l.inverse().apply(&qv).spatial())?;
    let w = WignerRotation::from_little_group(&wigner_oracle(l, &p, mass)?);
    let factor = (p.time() / qv.time()).sqrt();
    Ok(w.su2() * f.jet(&p.spatial()).value * C::from(factor))
}

/// `i(ω₀ᵢ𝕂ⁱ + θ_k𝕁ᵏ)ψ(q)` with analytic derivatives (the first-order change).
pub fn generator_action(
    f: &dyn TestFunction,
    omega: &Matrix4<f64>,
    q: &Vector3<f64>,
    mass: f64,
) -> Result<Spinor> {
    check_mass(mass)?;
    let (_, theta) = omega_parameters(omega);
    let jet = f.jet(q);
    let mut out = Spinor::zeros();
    for i in 0..3 {
        out += apply_jet(Generator::K(i), q, mass, KForm::WithMeasure, &jet)
            * C::from(omega[(0, i + 1)]);
        out += apply_jet(Generator::J(i), q, mass, KForm::WithMeasure, &jet) * C::from(theta[i]);
    }
    Ok(out * C::new(0.0, 1.0))
}

/// `|ψ'(q) − ψ(q) − i(ω·𝕄)ψ(q)|` with `Λ = exp(ηω)`.
pub fn first_order_residual(
    f: &dyn TestFunction,
    omega: &Matrix4<f64>,
    q: &Vector3<f64>,
    mass: f64,
) -> Result<f64> {
    let l = LorentzMatrix::exp_algebra(omega)?;
    let moved = exact_transport(f, &l, q, mass)?;
    let change = moved - f.jet(q).value;
    Ok((change - generator_action(f, omega, q, mass)?).norm())
}
