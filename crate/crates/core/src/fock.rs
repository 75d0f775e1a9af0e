//! Finite fermionic Fock space with Kronecker-normalized momentum modes.
//!
//! A basis ket is a strictly increasing list of [`Mode`]s, standing for
//! `a†(m₁) a†(m₂) ⋯ a†(m_k) |0⟩`. Mode identity uses a quantized momentum so that
//! transformed momenta can be compared; the exact momentum is carried alongside.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, Matrix2, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{FourVector, LorentzMatrix};
use crate::wigner::{transform_momentum, wigner_finite, SpinLorentz};

/// Amplitudes below this magnitude are dropped.
pub const PRUNE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// Row/column index in spin matrices: `+` is 0, `−` is 1.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn from_index(i: usize) -> Spin {
        if i == 0 {
            Spin::Up
        } else {
            Spin::Down
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Spin::Up => "+",
            Spin::Down => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Spin> {
        match s {
            "+" | "up" => Ok(Spin::Up),
            "-" | "\u{2212}" | "down" => Ok(Spin::Down),
            _ => Err(Error::Parse(format!("unknown spin label `{s}`"))),
        }
    }
}

/// Quantization of momenta and the particle-number guard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumGrid {
    pub step: f64,
    pub max_particles: usize,
}

impl Default for MomentumGrid {
    fn default() -> Self {
        MomentumGrid {
            step: 1e-9,
            max_particles: 6,
        }
    }
}

impl MomentumGrid {
    pub fn new(step: f64, max_particles: usize) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid(format!("momentum step {step}")));
        }
        Ok(MomentumGrid {
            step,
            max_particles,
        })
    }

    pub fn key(&self, p: &Vector3<f64>) -> Result<[i64; 3]> {
        let mut k = [0i64; 3];
        for i in 0..3 {
            let x = (p[i] / self.step).round();
            if !x.is_finite() || x.abs() > 9.0e18 {
                return Err(Error::InvalidGrid(format!(
                    "momentum component {} not representable with step {}",
                    p[i], self.step
                )));
            }
            k[i] = x as i64;
        }
        Ok(k)
    }

    pub fn mode(&self, p: Vector3<f64>, spin: Spin, species: u32) -> Result<Mode> {
        Ok(Mode {
            key: self.key(&p)?,
            p,
            spin,
            species,
        })
    }
}

/// A one-particle label `(p, s, n)`. Equality and ordering use the quantized
/// momentum, then spin, then species.
#[derive(Debug, Clone, Copy)]
pub struct Mode {
    key: [i64; 3],
    p: Vector3<f64>,
    spin: Spin,
    species: u32,
}

impl Mode {
    pub fn new(p: Vector3<f64>, spin: Spin, species: u32) -> Result<Mode> {
        MomentumGrid::default().mode(p, spin, species)
    }

    pub fn key(&self) -> [i64; 3] {
        self.key
    }

    pub fn momentum(&self) -> Vector3<f64> {
        self.p
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn species(&self) -> u32 {
        self.species
    }

    pub fn with_spin(&self, spin: Spin) -> Mode {
        Mode { spin, ..*self }
    }

    /// Same momentum and species, spin ignored.
    pub fn same_orbital(&self, other: &Mode) -> bool {
        self.key == other.key && self.species == other.species
    }

    fn ord_key(&self) -> ([i64; 3], Spin, u32) {
        (self.key, self.spin, self.species)
    }
}

impl PartialEq for Mode {
    fn eq(&self, other: &Self) -> bool {
        self.ord_key() == other.ord_key()
    }
}

impl Eq for Mode {}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord_key().cmp(&other.ord_key())
    }
}

/// A finite superposition of antisymmetrized basis kets. The empty map is the
/// zero vector; the vacuum is `{[] ↦ 1}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockState {
    terms: BTreeMap<Vec<Mode>, Complex64>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    pub fn vacuum() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Complex64::new(1.0, 0.0));
        FockState { terms }
    }

    /// Single basis ket built as `a†(m₁)⋯a†(m_k)|0⟩` in the order given.
    pub fn from_modes(modes: &[Mode]) -> Self {
        modes
            .iter()
            .rev()
            .fold(FockState::vacuum(), |s, m| create(&s, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mode>, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, modes: &[Mode]) -> Complex64 {
        self.terms.get(modes).copied().unwrap_or_default()
    }

    /// Adds `amp` to the sorted basis ket `modes`.
    fn accumulate(&mut self, modes: Vec<Mode>, amp: Complex64) {
        let e = self.terms.entry(modes).or_default();
        *e += amp;
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|_, a| a.norm() >= PRUNE_TOL);
        self
    }

    /// Adds a term given in any order, sorting it with the permutation sign.
    /// Terms with a repeated mode vanish.
    pub fn add_term(&mut self, modes: &[Mode], amp: Complex64) {
        if let Some((sorted, sign)) = sort_with_sign(modes) {
            self.accumulate(sorted, amp * sign);
            self.terms.retain(|_, a| a.norm() >= PRUNE_TOL);
        }
    }

    pub fn scale(&self, c: Complex64) -> FockState {
        FockState {
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
        .pruned()
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.accumulate(k.clone(), *a);
        }
        out.pruned()
    }

    pub fn sub(&self, other: &FockState) -> FockState {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn norm_squared(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Largest amplitude difference over the union of basis kets.
    pub fn max_difference(&self, other: &FockState) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, a) in &self.terms {
            worst = worst.max((a - other.amplitude(k)).norm());
        }
        for (k, b) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    /// The particle number if every term has the same one.
    pub fn particle_number(&self) -> Result<usize> {
        let mut it = self.terms.keys().map(|k| k.len());
        let first = it.next().unwrap_or(0);
        if it.all(|n| n == first) {
            Ok(first)
        } else {
            Err(Error::MixedParticleNumber)
        }
    }

    /// Every distinct mode appearing in the state, sorted.
    pub fn modes(&self) -> Vec<Mode> {
        let mut v: Vec<Mode> = self.terms.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    /// Re-keys every mode on another grid, re-sorting terms with the right sign.
    /// Used to compare states whose momenta agree only to rounding.
    pub fn requantize(&self, grid: &MomentumGrid) -> Result<FockState> {
        let mut seen: HashMap<([i64; 3], Spin, u32), [i64; 3]> = HashMap::new();
        let mut out = FockState::zero();
        for (modes, amp) in &self.terms {
            let mut mapped = Vec::with_capacity(modes.len());
            for m in modes {
                let nm = grid.mode(m.p, m.spin, m.species)?;
                check_collision(&mut seen, m, &nm)?;
                mapped.push(nm);
            }
            match sort_with_sign(&mapped) {
                Some((sorted, sign)) => out.accumulate(sorted, amp * sign),
                None => return Err(Error::GridCollision(mapped[0].key)),
            }
        }
        Ok(out.pruned())
    }

    pub fn to_json(&self) -> Result<String> {
        let doc: Vec<TermDoc> = self
            .terms
            .iter()
            .map(|(modes, amp)| TermDoc {
                modes: modes
                    .iter()
                    .map(|m| ModeDoc {
                        p: [m.p.x, m.p.y, m.p.z],
                        spin: m.spin.symbol().to_string(),
                        species: m.species,
                    })
                    .collect(),
                amp: [amp.re, amp.im],
            })
            .collect();
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    /// Parses the JSON term list. Terms need not be sorted; repeated kets add up.
    pub fn from_json(text: &str, grid: &MomentumGrid) -> Result<FockState> {
        let doc: Vec<TermDoc> = serde_json::from_str(text)?;
        let mut out = FockState::zero();
        for t in doc {
            let modes = t
                .modes
                .iter()
                .map(|m| grid.mode(Vector3::from(m.p), Spin::parse(&m.spin)?, m.species))
                .collect::<Result<Vec<_>>>()?;
            if let Some((sorted, sign)) = sort_with_sign(&modes) {
                out.accumulate(sorted, Complex64::new(t.amp[0], t.amp[1]) * sign);
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct ModeDoc {
    p: [f64; 3],
    spin: String,
    species: u32,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    modes: Vec<ModeDoc>,
    amp: [f64; 2],
}

/// Sorts `modes` and returns the permutation sign, or `None` on a repeat.
pub(crate) fn sort_with_sign(modes: &[Mode]) -> Option<(Vec<Mode>, f64)> {
    let mut v = modes.to_vec();
    let mut sign = 1.0;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// `a†(mode)`.
pub fn create(state: &FockState, mode: &Mode) -> FockState {
    let mut out = FockState::zero();
    for (modes, amp) in &state.terms {
        match modes.binary_search(mode) {
            Ok(_) => {}
            Err(pos) => {
                let mut v = Vec::with_capacity(modes.len() + 1);
                v.extend_from_slice(&modes[..pos]);
                v.push(*mode);
                v.extend_from_slice(&modes[pos..]);
                let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
                out.accumulate(v, amp * sign);
            }
        }
    }
    out.pruned()
}

/// `a(mode)`, the adjoint of [`create`].
pub fn annihilate(state: &FockState, mode: &Mode) -> FockState {
    let mut out = FockState::zero();
    for (modes, amp) in &state.terms {
        if let Ok(pos) = modes.binary_search(mode) {
            let mut v = modes.clone();
            v.remove(pos);
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            out.accumulate(v, amp * sign);
        }
    }
    out.pruned()
}

/// `⟨a|b⟩`, antilinear in the first argument.
pub fn inner_product(a: &FockState, b: &FockState) -> Complex64 {
    let (small, large, conj_small) = if a.len() <= b.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    small
        .terms
        .iter()
        .filter_map(|(k, x)| {
            large.terms.get(k).map(|y| {
                if conj_small {
                    x.conj() * y
                } else {
                    y.conj() * x
                }
            })
        })
        .sum()
}

pub(crate) fn antisymmetry_residual(c: &DMatrix<Complex64>) -> f64 {
    (c + c.transpose())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// `Σ_ij C_ij a†_i a†_j |0⟩` over the given mode list.
pub fn two_particle_from_c(c: &DMatrix<Complex64>, modes: &[Mode]) -> Result<FockState> {
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
    let mut sorted = modes.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DimensionMismatch(
            "mode list contains repeats".into(),
        ));
    }
    let mut out = FockState::zero();
    for i in 0..modes.len() {
        for j in 0..modes.len() {
            if i != j && c[(i, j)] != Complex64::default() {
                out.add_term(&[modes[i], modes[j]], c[(i, j)]);
            }
        }
    }
    Ok(out.pruned())
}

fn check_collision(
    seen: &mut HashMap<([i64; 3], Spin, u32), [i64; 3]>,
    from: &Mode,
    to: &Mode,
) -> Result<()> {
    // distinct source momenta (per species) must land on distinct target keys
    let target = (to.key, Spin::Up, to.species);
    match seen.get(&target) {
        Some(src) if *src != from.key => Err(Error::GridCollision(to.key)),
        Some(_) => Ok(()),
        None => {
            seen.insert(target, from.key);
            Ok(())
        }
    }
}

/// `U(Λ)`: every `a†(p, s, n)` becomes `Σ_{s'} D_{s's}(W(Λ, p)) a†(Λp, s', n)`.
/// The continuum factor `√((Λp)⁰/p⁰)` is omitted, so `U(Λ)` is exactly unitary.
pub fn lorentz_transform_state<F>(
    l: &LorentzMatrix,
    state: &FockState,
    mass_of: F,
    grid: &MomentumGrid,
) -> Result<FockState>
where
    F: Fn(u32) -> f64,
{
    transform_with_sign(l, 1.0, state, mass_of, grid)
}

/// `U(Λ̃)` for an element of the double cover. Unlike [`lorentz_transform_state`],
/// this is an exact homomorphism: `U(Λ̃₂)U(Λ̃₁) = U(Λ̃₂Λ̃₁)`, where plain
/// matrices only give `U(Λ₂)U(Λ₁) = ε^N U(Λ₂Λ₁)` on `N`-particle terms.
pub fn lorentz_transform_state_spin<F>(
    l: &SpinLorentz,
    state: &FockState,
    mass_of: F,
    grid: &MomentumGrid,
) -> Result<FockState>
where
    F: Fn(u32) -> f64,
{
    transform_with_sign(l.lambda(), l.sign(), state, mass_of, grid)
}

fn transform_with_sign<F>(
    l: &LorentzMatrix,
    sign: f64,
    state: &FockState,
    mass_of: F,
    grid: &MomentumGrid,
) -> Result<FockState>
where
    F: Fn(u32) -> f64,
{
    // transformed orbital (momentum, species) → (new up/down modes, D)
    let mut cache: HashMap<([i64; 3], u32), (Mode, Matrix2<Complex64>)> = HashMap::new();
    let mut seen = HashMap::new();
    for modes in state.terms.keys() {
        if modes.len() > grid.max_particles {
            return Err(Error::TooManyParticles {
                found: modes.len(),
                limit: grid.max_particles,
            });
        }
        for m in modes {
            if cache.contains_key(&(m.key, m.species)) {
                continue;
            }
            let mass = mass_of(m.species);
            let p = FourVector::on_shell(mass, m.p)?;
            let d = wigner_finite(l, &p, mass)?.su2() * Complex64::from(sign);
            let q = transform_momentum(l, &p, mass)?;
            let nm = grid.mode(q.spatial(), Spin::Up, m.species)?;
            check_collision(&mut seen, m, &nm)?;
            cache.insert((m.key, m.species), (nm, d));
        }
    }
    let mut out = FockState::zero();
    for (modes, amp) in &state.terms {
        let mut partial = FockState::vacuum().scale(*amp);
        for m in modes.iter().rev() {
            let (nm, d) = &cache[&(m.key, m.species)];
            let s = m.spin.index();
            let mut next = FockState::zero();
            for sp in 0..2 {
                let coeff = d[(sp, s)];
                if coeff.norm() == 0.0 {
                    continue;
                }
                next =
                    next.add(&create(&partial, &nm.with_spin(Spin::from_index(sp))).scale(coeff));
            }
            partial = next;
        }
        out = out.add(&partial);
    }
    Ok(out)
}
