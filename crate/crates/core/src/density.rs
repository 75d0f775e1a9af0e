//! Reduced density matrices in the Yang prescription, fermionic block forms and
//! von Neumann entropy.
//!
//! Reduced matrices live on a basis of sorted `m`-mode lists `I`, with
//! `⟨I|ρ_m|J⟩ = Tr(a_I ρ a_J†)` and `a_I = a(i_m)⋯a(i_1)`. For a unit-norm
//! `n`-particle state the trace is `n!/(m!(n−m)!)`; entropies are always taken of
//! `ρ/Tr ρ`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{
    annihilate, antisymmetry_residual, create, lorentz_transform_state, FockState, Mode,
    MomentumGrid,
};
use crate::lorentz::LorentzMatrix;

type C = Complex64;

/// Eigenvalues below this fraction of the trace count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;

const HERMITIAN_TOL: f64 = 1e-12;
const NEGATIVE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub basis: Vec<Vec<Mode>>,
    pub matrix: DMatrix<C>,
    pub particle_number: usize,
}

impl DensityMatrix {
    /// `|Ψ⟩⟨Ψ|` on the basis of kets present in `Ψ`.
    pub fn from_pure(state: &FockState) -> Result<Self> {
        Self::from_ensemble(&[(1.0, state.clone())])
    }

    /// `Σ_k w_k |Ψ_k⟩⟨Ψ_k|`.
    pub fn from_ensemble(ensemble: &[(f64, FockState)]) -> Result<Self> {
        let mut n = None;
        let mut basis: Vec<Vec<Mode>> = Vec::new();
        for (w, s) in ensemble {
            if *w < 0.0 || !w.is_finite() {
                return Err(Error::NotADensityMatrix(format!("negative weight {w}")));
            }
            if s.is_zero() {
                continue;
            }
            let k = s.particle_number()?;
            if n.is_some_and(|n| n != k) {
                return Err(Error::MixedParticleNumber);
            }
            n = Some(k);
            basis.extend(s.terms().map(|(k, _)| k.clone()));
        }
        basis.sort();
        basis.dedup();
        let d = basis.len();
        let mut matrix = DMatrix::zeros(d, d);
        for (w, s) in ensemble {
            let v = DVector::from_fn(d, |i, _| s.amplitude(&basis[i]));
            matrix += &v * v.adjoint() * C::from(*w);
        }
        Ok(DensityMatrix {
            basis,
            matrix,
            particle_number: n.unwrap_or(0),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn normalized(&self) -> Result<DensityMatrix> {
        let t = self.trace();
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NotADensityMatrix(format!("trace {t}")));
        }
        Ok(DensityMatrix {
            matrix: &self.matrix / C::from(t),
            ..self.clone()
        })
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Same operator written on another basis (missing rows are zero). Entries
    /// on basis lists absent from `basis` must vanish.
    pub fn embed(&self, basis: &[Vec<Mode>]) -> DMatrix<C> {
        let pos: BTreeMap<&Vec<Mode>, usize> =
            basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut out = DMatrix::zeros(basis.len(), basis.len());
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                if let (Some(&a), Some(&b)) = (pos.get(bi), pos.get(bj)) {
                    out[(a, b)] = self.matrix[(i, j)];
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct ModeDoc {
            p: [f64; 3],
            spin: &'static str,
            species: u32,
        }
        #[derive(Serialize)]
        struct Doc {
            particle_number: usize,
            basis: Vec<Vec<ModeDoc>>,
            re: Vec<Vec<f64>>,
            im: Vec<Vec<f64>>,
        }
        let d = self.dim();
        let doc = Doc {
            particle_number: self.particle_number,
            basis: self
                .basis
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|m| {
                            let p = m.momentum();
                            ModeDoc {
                                p: [p.x, p.y, p.z],
                                spin: m.spin().symbol(),
                                species: m.species(),
                            }
                        })
                        .collect()
                })
                .collect(),
            re: (0..d)
                .map(|i| (0..d).map(|j| self.matrix[(i, j)].re).collect())
                .collect(),
            im: (0..d)
                .map(|i| (0..d).map(|j| self.matrix[(i, j)].im).collect())
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

fn combinations(items: &[Mode], m: usize) -> Vec<Vec<Mode>> {
    fn rec(items: &[Mode], m: usize, start: usize, cur: &mut Vec<Mode>, out: &mut Vec<Vec<Mode>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < m - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, m, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, m, 0, &mut Vec::new(), &mut out);
    out
}

fn check_reduction(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::InvalidReduction { n, m });
    }
    Ok(())
}

/// `⟨I|ρ_m|J⟩ = Σ_AB ρ_AB ⟨a_J B|a_I A⟩`, evaluated with annihilation strings.
pub fn reduce(rho: &DensityMatrix, m: usize) -> Result<DensityMatrix> {
    let n = rho.particle_number;
    check_reduction(n, m)?;
    // remainder ket → list of (I, A, sign) with a_I|A⟩ = sign·|remainder⟩
    // row label → (column label, column index, overlap)
    type Groups = BTreeMap<Vec<Mode>, Vec<(Vec<Mode>, usize, C)>>;
    let mut groups: Groups = BTreeMap::new();
    let mut labels: Vec<Vec<Mode>> = Vec::new();
    for (a_idx, a) in rho.basis.iter().enumerate() {
        for sub in combinations(a, m) {
            let mut s = FockState::from_modes(a);
            for mode in &sub {
                s = annihilate(&s, mode);
            }
            for (rem, amp) in s.terms() {
                groups
                    .entry(rem.clone())
                    .or_default()
                    .push((sub.clone(), a_idx, *amp));
            }
            labels.push(sub);
        }
    }
    labels.sort();
    labels.dedup();
    let pos: BTreeMap<&Vec<Mode>, usize> = labels.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut out = DMatrix::zeros(labels.len(), labels.len());
    for entries in groups.values() {
        for (i_lab, a, sa) in entries {
            for (j_lab, b, sb) in entries {
                out[(pos[i_lab], pos[j_lab])] += sb.conj() * sa * rho.matrix[(*a, *b)];
            }
        }
    }
    Ok(DensityMatrix {
        basis: labels,
        matrix: out,
        particle_number: m,
    })
}

/// Second route: `⟨I|ρ_m|J⟩ = Σ_K ⟨IK|ρ|JK⟩` over sorted `(n−m)`-mode lists `K`,
/// with `|IK⟩ = a_I† a_K† |0⟩` built by creation operators.
pub fn reduce_by_partial_trace(rho: &DensityMatrix, m: usize) -> Result<DensityMatrix> {
    let n = rho.particle_number;
    check_reduction(n, m)?;
    let mut all: Vec<Mode> = rho.basis.iter().flatten().copied().collect();
    all.sort();
    all.dedup();
    let labels = {
        let mut v: Vec<Vec<Mode>> = rho.basis.iter().flat_map(|a| combinations(a, m)).collect();
        v.sort();
        v.dedup();
        v
    };
    let ks = combinations(&all, n - m);
    let dim = rho.dim();
    // ⟨A|IK⟩ as a vector over the ρ basis, for each (I, K)
    let overlap = |i: &[Mode], k: &[Mode]| -> DVector<C> {
        let mut ket = FockState::vacuum();
        for mode in k.iter().rev().chain(i.iter().rev()) {
            ket = create(&ket, mode);
        }
        DVector::from_fn(dim, |r, _| ket.amplitude(&rho.basis[r]))
    };
    let mut out = DMatrix::zeros(labels.len(), labels.len());
    for k in &ks {
        let vs: Vec<DVector<C>> = labels.iter().map(|i| overlap(i, k)).collect();
        let rv: Vec<DVector<C>> = vs.iter().map(|v| &rho.matrix * v).collect();
        for (a, va) in vs.iter().enumerate() {
            if va.iter().all(|z| *z == C::default()) {
                continue;
            }
            for (b, rb) in rv.iter().enumerate() {
                out[(a, b)] += va.dotc(rb);
            }
        }
    }
    Ok(DensityMatrix {
        basis: labels,
        matrix: out,
        particle_number: m,
    })
}

/// `ρ₁ = 4 C C†` on the given modes.
pub fn one_particle_from_c(c: &DMatrix<C>, modes: &[Mode]) -> Result<DensityMatrix> {
    if c.nrows() != c.ncols() || c.nrows() != modes.len() {
        return Err(Error::DimensionMismatch(format!(
            "C is {}×{} but {} modes were given",
            c.nrows(),
            c.ncols(),
            modes.len()
        )));
    }
    let asym = antisymmetry_residual(c);
    if asym > 1e-12 {
        return Err(Error::NotAntisymmetric(asym));
    }
    Ok(DensityMatrix {
        basis: modes.iter().map(|m| vec![*m]).collect(),
        matrix: c * c.adjoint() * C::from(4.0),
        particle_number: 1,
    })
}

/// Eigenvalues in descending order, clamped to `[0, 1]` after normalization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn entropy(&self) -> f64 {
        -self
            .eigenvalues
            .iter()
            .filter(|&&l| l > ZERO_THRESHOLD)
            .map(|l| l * l.ln())
            .sum::<f64>()
    }

    pub fn nonzero(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .copied()
            .filter(|&l| l > ZERO_THRESHOLD)
            .collect()
    }

    /// `max_k |λ_k − μ_k|` after padding the shorter list with zeros.
    pub fn max_displacement(&self, other: &Spectrum) -> f64 {
        let n = self.eigenvalues.len().max(other.eigenvalues.len());
        (0..n)
            .map(|k| {
                let a = self.eigenvalues.get(k).copied().unwrap_or(0.0);
                let b = other.eigenvalues.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "eigenvalue"])?;
        for (i, l) in self.eigenvalues.iter().enumerate() {
            w.write_record([i.to_string(), format!("{l:e}")])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn hermitian_eigen(m: &DMatrix<C>) -> (Vec<f64>, DMatrix<C>) {
    let e = m.clone().symmetric_eigen();
    (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
}

/// Spectrum of `ρ/Tr ρ`.
pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    let h = rho.hermiticity_residual();
    let scale = rho.matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if h > HERMITIAN_TOL * scale {
        return Err(Error::NotADensityMatrix(format!(
            "not Hermitian (max|ρ − ρ†| = {h:e})"
        )));
    }
    let norm = rho.normalized()?;
    let (mut vals, _) = hermitian_eigen(&norm.matrix);
    if let Some(&lo) = vals.iter().min_by(|a, b| a.total_cmp(b)) {
        if lo < -NEGATIVE_TOL {
            return Err(Error::NotADensityMatrix(format!(
                "negative eigenvalue {lo:e}"
            )));
        }
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    for v in &mut vals {
        *v = v.clamp(0.0, 1.0);
    }
    Ok(Spectrum { eigenvalues: vals })
}

/// `−Σ λ ln λ` of `ρ/Tr ρ`, natural log, `0·ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(spectrum(rho)?.entropy())
}

/// `𝒰 C 𝒰ᵀ = ⊕ [[0, cᵢ], [−cᵢ, 0]]`, blocks real, non-negative and descending;
/// one trailing zero row/column for odd dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm {
    pub c: Vec<C>,
    pub u: DMatrix<C>,
    pub n_f: usize,
}

impl BlockForm {
    pub fn block_matrix(&self) -> DMatrix<C> {
        let d = self.u.nrows();
        let mut b = DMatrix::zeros(d, d);
        for (k, ck) in self.c.iter().enumerate() {
            b[(2 * k, 2 * k + 1)] = *ck;
            b[(2 * k + 1, 2 * k)] = -*ck;
        }
        b
    }

    /// `max|𝒰 C 𝒰ᵀ − block|`.
    pub fn residual(&self, c: &DMatrix<C>) -> f64 {
        (&self.u * c * self.u.transpose() - self.block_matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `𝒰† (block) 𝒰*`.
    pub fn reconstruct(&self) -> DMatrix<C> {
        self.u.adjoint() * self.block_matrix() * self.u.conjugate()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let d = self.u.nrows();
        (&self.u * self.u.adjoint() - DMatrix::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

fn orthogonalize(v: &mut DVector<C>, against: &[DVector<C>]) {
    // two passes for stability
    for _ in 0..2 {
        for e in against {
            let proj = e.dotc(v);
            *v -= e * proj;
        }
    }
}

/// Youla-type block form of a complex antisymmetric matrix. Pairs come from
/// eigenvectors `v` of `CC†` (eigenvalue `λ`) and partners `−C v*/√λ`.
pub fn block_diagonalize(c: &DMatrix<C>) -> Result<BlockForm> {
    let d = c.nrows();
    if c.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "C is {}×{}",
            d,
            c.ncols()
        )));
    }
    let asym = antisymmetry_residual(c);
    if asym > 1e-12 {
        return Err(Error::NotAntisymmetric(asym));
    }
    let cc = c * c.adjoint();
    let (vals, vecs) = hermitian_eigen(&cc);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    let scale = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let zero = ZERO_THRESHOLD * scale.max(f64::MIN_POSITIVE);
    let mut basis: Vec<DVector<C>> = Vec::with_capacity(d);
    let mut pairs = 0usize;
    for &k in &order {
        if basis.len() + 1 >= d || vals[k] <= zero {
            break;
        }
        let mut v = vecs.column(k).into_owned();
        orthogonalize(&mut v, &basis);
        let nv = v.norm();
        if nv < 1e-6 {
            continue;
        }
        v /= C::from(nv);
        let w = c * v.conjugate();
        let lam = w.norm_squared();
        if lam <= zero {
            continue;
        }
        let mut e2 = -w / C::from(lam.sqrt());
        orthogonalize(&mut e2, std::slice::from_ref(&v));
        orthogonalize(&mut e2, &basis);
        let n2 = e2.norm();
        if n2 < 1e-6 {
            continue;
        }
        e2 /= C::from(n2);
        basis.push(v);
        basis.push(e2);
        pairs += 1;
    }
    // kernel: complete with standard basis vectors
    for j in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v = DVector::from_fn(d, |i, _| if i == j { C::from(1.0) } else { C::default() });
        orthogonalize(&mut v, &basis);
        let nv = v.norm();
        if nv > 1e-6 {
            basis.push(v / C::from(nv));
        }
    }
    // rows of 𝒰 are e_k*
    let u = DMatrix::from_fn(d, d, |r, col| basis[r][col].conj());
    let full = &u * c * u.transpose();
    let mut cs: Vec<C> = (0..d / 2).map(|k| full[(2 * k, 2 * k + 1)]).collect();
    // fix residual phases of the computed blocks so they are real and positive
    let mut u = u;
    for (k, ck) in cs.iter_mut().enumerate().take(pairs) {
        let n = ck.norm();
        if n > 0.0 {
            let phase = (*ck / n).conj();
            for col in 0..d {
                u[(2 * k, col)] *= phase;
            }
            *ck = C::from(n);
        }
    }
    for ck in cs.iter_mut().skip(pairs) {
        *ck = C::default();
    }
    let n_f = cs.iter().filter(|z| z.norm() > 0.0).count();
    Ok(BlockForm { c: cs, u, n_f })
}

/// `S₁ = −4 Σ|cᵢ|² ln(2|cᵢ|²)` for a unit-norm state (`4Σ|cᵢ|² = 1`).
pub fn entropy_from_blocks(blocks: &BlockForm) -> Result<f64> {
    let total: f64 = blocks.c.iter().map(|c| 4.0 * c.norm_sqr()).sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Normalization(format!("4Σ|c|² = {total}")));
    }
    let s: f64 = -blocks
        .c
        .iter()
        .map(|c| c.norm_sqr())
        .filter(|&x| 2.0 * x > ZERO_THRESHOLD)
        .map(|x| 4.0 * x * (2.0 * x).ln())
        .sum::<f64>();
    let lo = std::f64::consts::LN_2 - 1e-10;
    let hi = (2.0 * blocks.n_f.max(1) as f64).ln() + 1e-10;
    if s < lo || s > hi {
        return Err(Error::InvalidSpectrum(format!(
            "S₁ = {s} outside [ln 2, ln(2·{})]",
            blocks.n_f
        )));
    }
    Ok(s)
}

/// Entropy before and after `U(Λ)` for one reduction order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceRow {
    pub m: usize,
    pub entropy_before: f64,
    pub entropy_after: f64,
    pub entropy_difference: f64,
    pub spectrum_displacement: f64,
}

fn reduced_or_full(state: &FockState, m: usize) -> Result<DensityMatrix> {
    let rho = DensityMatrix::from_pure(state)?;
    if m == rho.particle_number {
        Ok(rho)
    } else {
        reduce(&rho, m)
    }
}

/// `(S_m(Ψ), S_m(U(Λ)Ψ))` for each requested `m` (`m = n` is the full state).
pub fn invariance_report<F>(
    state: &FockState,
    l: &LorentzMatrix,
    m_values: &[usize],
    mass_of: F,
    grid: &MomentumGrid,
) -> Result<Vec<InvarianceRow>>
where
    F: Fn(u32) -> f64,
{
    let n = state.particle_number()?;
    let moved = lorentz_transform_state(l, state, mass_of, grid)?;
    m_values
        .iter()
        .map(|&m| {
            if m == 0 || m > n {
                return Err(Error::InvalidReduction { n, m });
            }
            let a = spectrum(&reduced_or_full(state, m)?)?;
            let b = spectrum(&reduced_or_full(&moved, m)?)?;
            let (sa, sb) = (a.entropy(), b.entropy());
            Ok(InvarianceRow {
                m,
                entropy_before: sa,
                entropy_after: sb,
                entropy_difference: (sa - sb).abs(),
                spectrum_displacement: a.max_displacement(&b),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Spin;
    use nalgebra::Vector3;
    use std::f64::consts::{LN_2, SQRT_2};

    fn modes(k: usize) -> Vec<Mode> {
        (0..k)
            .map(|i| {
                let spin = if i % 2 == 0 { Spin::Up } else { Spin::Down };
                Mode::new(Vector3::new(0.1 * (i / 2) as f64, 0.0, 0.3), spin, 0).unwrap()
            })
            .collect()
    }

    fn c(re: f64) -> C {
        C::from(re)
    }

    fn unentangled() -> DMatrix<C> {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.5);
        m[(1, 0)] = c(-0.5);
        m
    }

    /// `C` of the B⁰ pair: modes (p₁↑, p₁↓, p₂↑, p₂↓), amplitude `±1/(2√2)`.
    fn singlet() -> DMatrix<C> {
        let x = 1.0 / (2.0 * SQRT_2);
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 3)] = c(x);
        m[(3, 0)] = c(-x);
        m[(1, 2)] = c(-x);
        m[(2, 1)] = c(x);
        m
    }

    #[test]
    fn worked_examples_one_particle() {
        let ms = modes(2);
        let r = one_particle_from_c(&unentangled(), &ms).unwrap();
        assert!((r.trace() - 2.0).abs() < 1e-15);
        let n = r.normalized().unwrap();
        assert!(
            (n.matrix.clone() - DMatrix::identity(2, 2) * c(0.5))
                .map(|z| z.norm())
                .max()
                < 1e-15
        );
        assert!((von_neumann_entropy(&r).unwrap() - LN_2).abs() < 1e-14);
        let ms = modes(4);
        let r = one_particle_from_c(&singlet(), &ms).unwrap();
        let n = r.normalized().unwrap();
        assert!(
            (n.matrix.clone() - DMatrix::identity(4, 4) * c(0.25))
                .map(|z| z.norm())
                .max()
                < 1e-15
        );
        assert!((von_neumann_entropy(&r).unwrap() - 2.0 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn reduce_matches_c_formula_and_partial_trace() {
        let ms = modes(4);
        let psi = crate::fock::two_particle_from_c(&singlet(), &ms).unwrap();
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let r1 = reduce(&rho, 1).unwrap();
        let direct = one_particle_from_c(&singlet(), &ms).unwrap();
        assert!(
            (r1.embed(&direct.basis) - direct.matrix.clone())
                .map(|z| z.norm())
                .max()
                < 1e-15
        );
        let r1b = reduce_by_partial_trace(&rho, 1).unwrap();
        assert_eq!(r1.basis, r1b.basis);
        assert!((r1.matrix.clone() - r1b.matrix).map(|z| z.norm()).max() < 1e-15);
    }

    #[test]
    fn pure_state_has_zero_entropy() {
        let ms = modes(4);
        let psi = crate::fock::two_particle_from_c(&singlet(), &ms).unwrap();
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-12);
        assert!(matches!(
            reduce(&rho, 2),
            Err(Error::InvalidReduction { n: 2, m: 2 })
        ));
    }

    #[test]
    fn negative_matrix_is_rejected() {
        let ms = modes(2);
        let rho = DensityMatrix {
            basis: ms.iter().map(|m| vec![*m]).collect(),
            matrix: DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.2), c(-0.2)])),
            particle_number: 1,
        };
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::NotADensityMatrix(_))
        ));
    }

    #[test]
    fn block_form_examples() {
        let b = block_diagonalize(&singlet()).unwrap();
        assert_eq!(b.n_f, 2);
        for ck in &b.c {
            assert!((ck.norm() - 1.0 / (2.0 * SQRT_2)).abs() < 1e-14);
        }
        assert!(b.residual(&singlet()) < 1e-14);
        assert!(b.unitarity_residual() < 1e-14);
        assert!((entropy_from_blocks(&b).unwrap() - 2.0 * LN_2).abs() < 1e-14);
        let b = block_diagonalize(&unentangled()).unwrap();
        assert_eq!(b.c.len(), 1);
        assert!((b.c[0] - c(0.5)).norm() < 1e-15);
        assert!((entropy_from_blocks(&b).unwrap() - LN_2).abs() < 1e-15);
    }

    #[test]
    fn block_form_of_odd_and_rank_deficient() {
        // 5×5 with one block and a kernel
        let mut m = DMatrix::zeros(5, 5);
        m[(1, 3)] = C::new(0.2, 0.4);
        m[(3, 1)] = -C::new(0.2, 0.4);
        let b = block_diagonalize(&m).unwrap();
        assert_eq!(b.c.len(), 2);
        assert_eq!(b.n_f, 1);
        assert!(b.residual(&m) < 1e-14);
        assert!((b.reconstruct() - m).map(|z| z.norm()).max() < 1e-14);
    }

    #[test]
    fn entropy_from_blocks_checks_norm() {
        let mut m = unentangled();
        m *= c(2.0);
        let b = block_diagonalize(&m).unwrap();
        assert!(matches!(
            entropy_from_blocks(&b),
            Err(Error::Normalization(_))
        ));
    }

    #[test]
    fn spectrum_csv_has_header() {
        let s = Spectrum {
            eigenvalues: vec![0.75, 0.25],
        };
        let text = s.to_csv().unwrap();
        assert!(text.starts_with("index,eigenvalue\n0,7.5e-1\n"));
    }
}
