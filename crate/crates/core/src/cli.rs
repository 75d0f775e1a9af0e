//! Command implementations behind the `relqi` binary. Each command returns a
//! [`Report`] that renders to JSON or CSV; the binary only parses arguments.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::path::PathBuf;
use std::sync::Arc;

use nalgebra::{DMatrix, Vector2, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bell::{transform_bell, BellVector};
use crate::density::{
    block_diagonalize, entropy_from_blocks, one_particle_from_c, reduce, spectrum, DensityMatrix,
};
use crate::error::{Error, Result};
use crate::fock::{lorentz_transform_state, two_particle_from_c, FockState, MomentumGrid, Spin};
use crate::generators::{
    commutator_families, commutator_residual, hermiticity_table, spin_algebra_residual,
    GaussianPacket, GridSpec, Scheme, WavefunctionGrid,
};
use crate::lorentz::{
    boost_matrix, rotation_matrix, BoostParams, FourVector, LorentzMatrix, RotationParams,
};
use crate::wigner::{wigner_finite, wigner_oracle, WignerRotation};
use crate::zeta::{
    direct_entropy, entropy_via_alpha, entropy_via_inverse_zeta_at_one,
    entropy_via_zeta_at_minus_one, ZetaSpectrum,
};

type C = Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The fixed tolerance registry with defaults.
pub const TOLERANCE_REGISTRY: &[(&str, f64)] = &[
    ("oracle", 1e-10),
    ("orthogonality", 1e-10),
    ("entropy", 1e-10),
    ("zeta", 1e-12),
    ("invariance", 1e-10),
    ("spectrum", 1e-10),
    ("spin_algebra", 1e-14),
    ("ratio_low", 3.5),
    ("ratio_high", 4.5),
    ("hermiticity_separation", 10.0),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances(
            TOLERANCE_REGISTRY
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
        )
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !self.0.contains_key(name) {
            return Err(Error::UnknownTolerance(name.to_string()));
        }
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Parse(format!("tolerance {name}={value}")));
        }
        self.0.insert(name.to_string(), value);
        Ok(())
    }

    /// Parses `name=value`.
    pub fn set_from_str(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got `{spec}`")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad tolerance value `{value}`")))?;
        self.set(name.trim(), v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}` (json|csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub grid: GridSpec,
    pub output: OutputSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tolerances: Tolerances::default(),
            grid: GridSpec::default_for_mass(1.0).expect("default grid is valid"),
            output: OutputSpec::default(),
        }
    }
}

/// Failure of a command before any check could run (exit code 2).
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError {
    pub error: Error,
    pub context: Option<String>,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.error)?;
        if let Some(c) = &self.context {
            write!(f, "\n{c}")?;
        }
        Ok(())
    }
}

impl std::error::Error for UsageError {}

impl From<Error> for UsageError {
    fn from(error: Error) -> Self {
        UsageError {
            error,
            context: None,
        }
    }
}

pub type CmdResult = std::result::Result<Report, UsageError>;

/// Output document of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
    pub data: Value,
    #[serde(skip)]
    pub table: Vec<Vec<String>>,
}

impl Report {
    fn new(command: &str, cfg: &RunConfig) -> Self {
        Report {
            tool: "relqi".into(),
            version: VERSION.into(),
            command: command.into(),
            seed: cfg.seed,
            tolerances: cfg.tolerances.clone(),
            checks: BTreeMap::new(),
            pass: true,
            data: Value::Null,
            table: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.into(), ok);
        self.pass = self.checks.values().all(|&v| v);
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// The data table; the first row is the header.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        for row in &self.table {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    /// Renders in `format`. CSV carries the table only; the metadata (version,
    /// seed, tolerances, checks) goes to a `<path>.meta.json` sidecar.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, out: &OutputSpec) -> Result<()> {
        let text = self.render(out.format)?;
        match &out.path {
            Some(path) => {
                std::fs::write(path, text)?;
                if out.format == Format::Csv {
                    let mut meta = path.clone().into_os_string();
                    meta.push(".meta.json");
                    std::fs::write(PathBuf::from(meta), self.to_json()?)?;
                }
            }
            None => {
                print!("{text}");
                if out.format == Format::Csv {
                    eprint!("{}", self.to_json()?);
                }
            }
        }
        Ok(())
    }
}

fn cell(x: f64) -> String {
    format!("{x:.17e}")
}

fn cjson(z: C) -> Value {
    json!([z.re, z.im])
}

fn vjson(v: &Vector3<f64>) -> Value {
    json!([v.x, v.y, v.z])
}

/// One factor of a Λ-spec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaFactor {
    Rotate { angle: f64, axis: Vector3<f64> },
    Boost { rapidity: f64, axis: Vector3<f64> },
}

fn parse_four(s: &str) -> Result<(f64, Vector3<f64>)> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("expected `value,nx,ny,nz`, got `{s}`")))?;
    if v.len() != 4 || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse(format!(
            "expected four finite numbers, got `{s}`"
        )));
    }
    Ok((v[0], Vector3::new(v[1], v[2], v[3])))
}

/// Parses a comma-separated 3-vector.
pub fn parse_vector3(s: &str) -> Result<Vector3<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("expected `x,y,z`, got `{s}`")))?;
    if v.len() != 3 || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Parse(format!(
            "expected three finite numbers, got `{s}`"
        )));
    }
    Ok(Vector3::new(v[0], v[1], v[2]))
}

/// Four complex amplitudes: `a0,a1,a2,a3` (real) or `re0,im0,…,re3,im3`.
pub fn parse_amplitudes(s: &str) -> Result<[C; 4]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad amplitude list `{s}`")))?;
    match v.len() {
        4 => Ok(std::array::from_fn(|i| C::from(v[i]))),
        8 => Ok(std::array::from_fn(|i| C::new(v[2 * i], v[2 * i + 1]))),
        n => Err(Error::Parse(format!("expected 4 or 8 numbers, got {n}"))),
    }
}

impl LambdaFactor {
    pub fn rotate(s: &str) -> Result<Self> {
        let (angle, axis) = parse_four(s)?;
        Ok(LambdaFactor::Rotate { angle, axis })
    }

    pub fn boost(s: &str) -> Result<Self> {
        let (rapidity, axis) = parse_four(s)?;
        Ok(LambdaFactor::Boost { rapidity, axis })
    }

    /// The matrix of this factor; the axis is normalized, a zero axis is
    /// allowed only with a zero parameter.
    pub fn matrix(&self) -> Result<LorentzMatrix> {
        let (value, axis) = match self {
            LambdaFactor::Rotate { angle, axis } => (*angle, *axis),
            LambdaFactor::Boost { rapidity, axis } => (*rapidity, *axis),
        };
        let n = axis.norm();
        if n == 0.0 {
            if value == 0.0 {
                return Ok(LorentzMatrix::identity());
            }
            return Err(Error::InvalidAxis([axis.x, axis.y, axis.z]));
        }
        let unit = axis / n;
        Ok(match self {
            LambdaFactor::Rotate { .. } => rotation_matrix(&RotationParams::new(value, unit)?),
            LambdaFactor::Boost { .. } => {
                let (r, a) = if value < 0.0 {
                    (-value, -unit)
                } else {
                    (value, unit)
                };
                boost_matrix(&BoostParams::new(r, a)?)
            }
        })
    }
}

/// `Λ = F₁·F₂·…·F_n` in the given order, so the last factor acts first.
pub fn compose_lambda(factors: &[LambdaFactor]) -> Result<LorentzMatrix> {
    factors
        .iter()
        .try_fold(LorentzMatrix::identity(), |acc, f| Ok(acc * f.matrix()?))
}

fn lambda_json(l: &LorentzMatrix) -> Value {
    let m = l.matrix();
    Value::Array(
        (0..4)
            .map(|r| json!([m[(r, 0)], m[(r, 1)], m[(r, 2)], m[(r, 3)]]))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerArgs {
    pub lambda: Vec<LambdaFactor>,
    pub momentum: Vector3<f64>,
    pub mass: f64,
}

/// Wigner rotation of `Λ` at `p`, closed form checked against the oracle.
pub fn cmd_wigner(cfg: &RunConfig, args: &WignerArgs) -> CmdResult {
    let l = compose_lambda(&args.lambda)?;
    let p = FourVector::on_shell(args.mass, args.momentum)?;
    let w = wigner_finite(&l, &p, args.mass)?;
    let oracle = WignerRotation::from_little_group(&wigner_oracle(&l, &p, args.mass)?);
    let residual = w.so3_distance(&oracle);
    let q = w.quaternion();
    let d = w.su2();
    let mut r = Report::new("wigner", cfg);
    r.data = json!({
        "lambda": lambda_json(&l),
        "momentum": vjson(&args.momentum),
        "mass": args.mass,
        "angle": w.angle(),
        "axis": vjson(&w.axis()),
        "angle_vector": vjson(&w.angle_vector().0),
        "quaternion": [q.w, q.v.x, q.v.y, q.v.z],
        "d_matrix": [[cjson(d[(0, 0)]), cjson(d[(0, 1)])], [cjson(d[(1, 0)]), cjson(d[(1, 1)])]],
        "oracle_residual": residual,
    });
    r.table = vec![vec!["field".into(), "value".into()]];
    let mut push = |k: &str, v: f64| r.table.push(vec![k.into(), cell(v)]);
    push("angle", w.angle());
    for (i, c) in ["x", "y", "z"].iter().enumerate() {
        push(&format!("axis_{c}"), w.axis()[i]);
    }
    push("quat_w", q.w);
    for (i, c) in ["x", "y", "z"].iter().enumerate() {
        push(&format!("quat_{c}"), q.v[i]);
    }
    push("oracle_residual", residual);
    r.check("oracle", residual <= cfg.tolerances.get("oracle"));
    Ok(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellArgs {
    pub p1: Vector3<f64>,
    pub p2: Vector3<f64>,
    pub masses: (f64, f64),
    pub lambda: Vec<LambdaFactor>,
    pub amplitudes: [C; 4],
}

/// SO(4) rotation of the Bell amplitudes of a momentum pair.
pub fn cmd_bell_transform(cfg: &RunConfig, args: &BellArgs) -> CmdResult {
    let l = compose_lambda(&args.lambda)?;
    let (m1, m2) = args.masses;
    let grid = MomentumGrid::default();
    let p1 = FourVector::on_shell(m1, args.p1)?;
    let p2 = FourVector::on_shell(m2, args.p2)?;
    let b = BellVector::new(p1, p2, (0, 0), args.masses, args.amplitudes, &grid)?;
    let t = transform_bell(&l, &b, m1, m2)?;
    let (orth, det) = t.r.residuals();
    let norm_change = (t.out.norm_squared() - b.norm_squared()).abs();
    let mut r = Report::new("bell-transform", cfg);
    let rm = &t.r.0;
    r.data = json!({
        "lambda": lambda_json(&l),
        "r": (0..4).map(|i| json!([rm[(i, 0)], rm[(i, 1)], rm[(i, 2)], rm[(i, 3)]])).collect::<Vec<_>>(),
        "x": vjson(&t.x),
        "y": vjson(&t.y),
        "p1_new": vjson(&t.out.p1.spatial()),
        "p2_new": vjson(&t.out.p2.spatial()),
        "amplitudes_in": args.amplitudes.iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
        "amplitudes_out": t.out.amps.iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
        "orthogonality_residual": orth,
        "det_residual": det,
        "norm_change": norm_change,
    });
    r.table = vec![
        ["nu", "r_nu0", "r_nu1", "r_nu2", "r_nu3", "amp_re", "amp_im"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    ];
    for nu in 0..4 {
        let mut row = vec![nu.to_string()];
        row.extend((0..4).map(|mu| cell(rm[(nu, mu)])));
        row.push(cell(t.out.amps[nu].re));
        row.push(cell(t.out.amps[nu].im));
        r.table.push(row);
    }
    let tol = cfg.tolerances.get("orthogonality");
    r.check("orthogonality", orth <= tol && det <= tol);
    r.check("norm", norm_change <= tol);
    Ok(r)
}

fn demo_modes() -> Result<Vec<crate::fock::Mode>> {
    let p1 = Vector3::new(0.0, 0.0, 0.3);
    let p2 = Vector3::new(0.0, 0.0, -0.3);
    Ok(vec![
        crate::fock::Mode::new(p1, Spin::Up, 0)?,
        crate::fock::Mode::new(p1, Spin::Down, 0)?,
        crate::fock::Mode::new(p2, Spin::Up, 0)?,
        crate::fock::Mode::new(p2, Spin::Down, 0)?,
    ])
}

/// The two worked cases: `a†(p₁↑)a†(p₂↑)|0⟩` and the singlet `B⁰`.
pub fn demo_coefficients() -> [(&'static str, DMatrix<C>, f64); 2] {
    let mut single = DMatrix::zeros(4, 4);
    single[(0, 2)] = C::from(0.5);
    single[(2, 0)] = C::from(-0.5);
    let x = 1.0 / (2.0 * std::f64::consts::SQRT_2);
    let mut singlet = DMatrix::zeros(4, 4);
    singlet[(0, 3)] = C::from(x);
    singlet[(3, 0)] = C::from(-x);
    singlet[(1, 2)] = C::from(-x);
    singlet[(2, 1)] = C::from(x);
    [
        ("unentangled", single, LN_2),
        ("bell_b0", singlet, 2.0 * LN_2),
    ]
}

/// Entropy of the two worked examples by every route: `4CC†`, the Fock
/// reduction, the block form, and the zeta derivatives.
pub fn cmd_entropy_demo(cfg: &RunConfig) -> CmdResult {
    let modes = demo_modes()?;
    let tol = cfg.tolerances.get("entropy");
    let ztol = cfg.tolerances.get("zeta");
    let mut r = Report::new("entropy-demo", cfg);
    r.table = vec![vec![
        "case".into(),
        "route".into(),
        "value".into(),
        "residual".into(),
    ]];
    let mut cases = serde_json::Map::new();
    for (name, c, expected) in demo_coefficients() {
        let rho_c = one_particle_from_c(&c, &modes)?;
        let spec_c = spectrum(&rho_c)?;
        let state = two_particle_from_c(&c, &modes)?;
        let rho_f = reduce(&DensityMatrix::from_pure(&state)?, 1)?;
        let s_fock = spectrum(&rho_f)?.entropy();
        let s_blocks = entropy_from_blocks(&block_diagonalize(&c)?)?;
        let zs = ZetaSpectrum::from_spectrum(&spec_c)?;
        let mut routes: Vec<(String, f64, f64)> = vec![
            ("c_matrix".into(), spec_c.entropy(), tol),
            ("fock_reduction".into(), s_fock, tol),
            ("block_form".into(), s_blocks, tol),
            ("direct_sum".into(), direct_entropy(&zs), tol),
            (
                "zeta_at_minus_one".into(),
                entropy_via_zeta_at_minus_one(&zs),
                ztol,
            ),
            (
                "inverse_zeta_at_one".into(),
                entropy_via_inverse_zeta_at_one(&zs),
                ztol,
            ),
        ];
        for a in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
            routes.push((format!("zeta_alpha_{a}"), entropy_via_alpha(&zs, a)?, ztol));
        }
        let mut entries = serde_json::Map::new();
        for (route, value, t) in &routes {
            let res = (value - expected).abs();
            r.check(&format!("{name}.{route}"), res <= *t);
            r.table
                .push(vec![name.into(), route.clone(), cell(*value), cell(res)]);
            entries.insert(route.clone(), json!({"value": value, "residual": res}));
        }
        cases.insert(
            name.into(),
            json!({
                "expected": expected,
                "spectrum": spec_c.eigenvalues,
                "routes": entries,
            }),
        );
    }
    r.data = Value::Object(cases);
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepArgs {
    pub n_samples: usize,
    pub max_rapidity: f64,
}

/// Everything a sweep sample needs, drawn from the seeded stream.
#[derive(Debug, Clone)]
pub struct SweepSample {
    pub lambda: LorentzMatrix,
    pub rapidity: f64,
    pub bell: FockState,
    pub general: FockState,
}

fn unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

fn random_momentum<R: Rng>(rng: &mut R) -> Vector3<f64> {
    unit_vector(rng) * rng.random_range(0.05..2.0)
}

/// Random `Λ = R(ψ)·L(α)` with `α ≤ max_rapidity`.
pub fn random_lorentz<R: Rng>(rng: &mut R, max_rapidity: f64) -> Result<(LorentzMatrix, f64)> {
    let alpha = rng.random_range(0.0..=max_rapidity);
    let rot = RotationParams::new(rng.random_range(0.0..PI), unit_vector(rng))?;
    let boost = BoostParams::new(alpha, unit_vector(rng))?;
    Ok((rotation_matrix(&rot) * boost_matrix(&boost), alpha))
}

/// A normalized antisymmetric two-particle state over `orbitals` random momenta.
pub fn random_two_fermion<R: Rng>(
    rng: &mut R,
    orbitals: usize,
    grid: &MomentumGrid,
) -> Result<FockState> {
    let mut modes = Vec::with_capacity(2 * orbitals);
    for _ in 0..orbitals {
        let p = random_momentum(rng);
        modes.push(grid.mode(p, Spin::Up, 0)?);
        modes.push(grid.mode(p, Spin::Down, 0)?);
    }
    let d = modes.len();
    let mut c = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            let z = C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            c[(i, j)] = z;
            c[(j, i)] = -z;
        }
    }
    let s = two_particle_from_c(&c, &modes)?;
    Ok(s.scale(C::from(1.0 / s.norm())))
}

/// A normalized Bell-basis state with random amplitudes.
pub fn random_bell<R: Rng>(rng: &mut R, grid: &MomentumGrid) -> Result<FockState> {
    let p1 = FourVector::on_shell(1.0, random_momentum(rng))?;
    let p2 = FourVector::on_shell(1.0, random_momentum(rng))?;
    let mut amps: [C; 4] =
        std::array::from_fn(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= n;
    }
    BellVector::new(p1, p2, (0, 0), (1.0, 1.0), amps, grid)?.to_fock(grid)
}

pub fn sweep_sample<R: Rng>(
    rng: &mut R,
    max_rapidity: f64,
    grid: &MomentumGrid,
) -> Result<SweepSample> {
    let (lambda, rapidity) = random_lorentz(rng, max_rapidity)?;
    let bell = random_bell(rng, grid)?;
    let general = random_two_fermion(rng, 3, grid)?;
    Ok(SweepSample {
        lambda,
        rapidity,
        bell,
        general,
    })
}

/// `(|ΔS₁|, |Δλ|∞)` of the one-particle reduction under `U(Λ)`.
pub fn entropy_change(
    state: &FockState,
    l: &LorentzMatrix,
    grid: &MomentumGrid,
) -> Result<(f64, f64)> {
    let moved = lorentz_transform_state(l, state, |_| 1.0, grid)?;
    let a = spectrum(&reduce(&DensityMatrix::from_pure(state)?, 1)?)?;
    let b = spectrum(&reduce(&DensityMatrix::from_pure(&moved)?, 1)?)?;
    Ok(((a.entropy() - b.entropy()).abs(), a.max_displacement(&b)))
}

/// Seeded sweep of `|ΔS₁|` over random `Λ` for a Bell state and a general
/// two-fermion state per sample (the larger of the two is reported).
pub fn cmd_invariance_sweep(cfg: &RunConfig, args: &SweepArgs) -> CmdResult {
    if args.n_samples == 0 {
        return Err(Error::Parse("n_samples must be at least 1".into()).into());
    }
    if !(args.max_rapidity.is_finite() && args.max_rapidity >= 0.0) {
        return Err(Error::InvalidRapidity(args.max_rapidity).into());
    }
    let grid = MomentumGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut r = Report::new("invariance-sweep", cfg);
    r.table = vec![["sample", "rapidity", "delta_entropy", "delta_spectrum"]
        .iter()
        .map(|s| s.to_string())
        .collect()];
    let (mut max_ds, mut max_dl) = (0.0f64, 0.0f64);
    for i in 0..args.n_samples {
        let s = sweep_sample(&mut rng, args.max_rapidity, &grid)?;
        let mut ds = 0.0f64;
        let mut dl = 0.0f64;
        for state in [&s.bell, &s.general] {
            let (a, b) = entropy_change(state, &s.lambda, &grid).map_err(|e| UsageError {
                error: e,
                context: Some(format!("sample {i}, Λ = {:?}", lambda_json(&s.lambda))),
            })?;
            ds = ds.max(a);
            dl = dl.max(b);
        }
        max_ds = max_ds.max(ds);
        max_dl = max_dl.max(dl);
        r.table
            .push(vec![i.to_string(), cell(s.rapidity), cell(ds), cell(dl)]);
    }
    r.data = json!({
        "n_samples": args.n_samples,
        "max_rapidity": args.max_rapidity,
        "max_delta_entropy": max_ds,
        "max_delta_spectrum": max_dl,
    });
    r.check("entropy", max_ds <= cfg.tolerances.get("invariance"));
    r.check("spectrum", max_dl <= cfg.tolerances.get("spectrum"));
    Ok(r)
}

/// Fixed test functions of the generator check.
pub fn generator_test_functions() -> (GaussianPacket, GaussianPacket) {
    let psi = GaussianPacket::new(
        Vector3::new(0.3, -0.2, 0.1),
        0.5,
        Vector3::new(0.7, 0.4, -0.5),
        Vector2::new(C::from(1.0), C::new(0.5, 0.3)),
    );
    let phi = GaussianPacket::new(
        Vector3::new(0.1, 0.2, -0.2),
        0.45,
        Vector3::new(-0.3, 0.5, 0.2),
        Vector2::new(C::new(0.4, -0.2), C::from(1.0)),
    );
    (psi, phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorArgs {
    /// Grid refinements (`h, h/2, …`); at least 2.
    pub levels: usize,
}

impl Default for GeneratorArgs {
    fn default() -> Self {
        GeneratorArgs { levels: 2 }
    }
}

/// Finite-difference commutator residuals at successively halved `h`, the
/// Hermiticity four-way table, and the spin algebra.
pub fn cmd_generators_check(cfg: &RunConfig, args: &GeneratorArgs) -> CmdResult {
    if args.levels < 2 {
        return Err(Error::InvalidGrid("at least two grid levels are needed".into()).into());
    }
    let (psi_f, phi_f) = generator_test_functions();
    let psi_f = Arc::new(psi_f);
    let (lo, hi) = (
        cfg.tolerances.get("ratio_low"),
        cfg.tolerances.get("ratio_high"),
    );
    let mut r = Report::new("generators-check", cfg);
    r.table = vec![["family", "n", "h", "residual", "ratio"]
        .iter()
        .map(|s| s.to_string())
        .collect()];
    let families = commutator_families();
    let mut residuals = vec![Vec::new(); families.len()];
    let mut spec = cfg.grid;
    let mut hs = Vec::new();
    for _ in 0..args.levels {
        let psi = WavefunctionGrid::sample(spec, psi_f.clone())?;
        for (f, &(a, b, e)) in families.iter().enumerate() {
            residuals[f].push(commutator_residual(&psi, a, b, e, Scheme::Central)?);
        }
        hs.push((spec.n, spec.h()));
        spec = spec.refined();
    }
    let mut fam_json = Vec::new();
    for (f, &(a, b, e)) in families.iter().enumerate() {
        let name = format!("[{},{}]-{}", a.label(), b.label(), e.label());
        let ratios: Vec<f64> = residuals[f].windows(2).map(|w| w[0] / w[1]).collect();
        for (k, &(n, h)) in hs.iter().enumerate() {
            let ratio = if k == 0 {
                String::new()
            } else {
                cell(ratios[k - 1])
            };
            r.table.push(vec![
                name.clone(),
                n.to_string(),
                cell(h),
                cell(residuals[f][k]),
                ratio,
            ]);
        }
        let ok = ratios.iter().all(|&q| (lo..=hi).contains(&q));
        r.check(&format!("order.{name}"), ok);
        let orders: Vec<f64> = ratios.iter().map(|q| q.log2()).collect();
        fam_json.push(json!({
            "family": name,
            "residuals": residuals[f],
            "ratios": ratios,
            "observed_order": orders,
        }));
    }
    let base = cfg.grid;
    let psi = WavefunctionGrid::sample(base, psi_f)?;
    let phi = WavefunctionGrid::sample(base, Arc::new(phi_f))?;
    let herm = hermiticity_table(&phi, &psi, Scheme::Central)?;
    r.check(
        "hermiticity",
        herm.separation() >= cfg.tolerances.get("hermiticity_separation"),
    );
    let spin = spin_algebra_residual();
    r.check("spin_algebra", spin <= cfg.tolerances.get("spin_algebra"));
    r.data = json!({
        "grid": base,
        "levels": hs.iter().map(|(n, h)| json!({"n": n, "h": h})).collect::<Vec<_>>(),
        "families": fam_json,
        "hermiticity": herm,
        "hermiticity_separation": herm.separation(),
        "spin_algebra_residual": spin,
    });
    Ok(r)
}
