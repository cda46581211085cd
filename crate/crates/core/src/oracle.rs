//! Independent cross-checks.
//!
//! Nothing here reuses the sparse products of [`crate::hilbert`]: closed
//! forms come from textbook oscillator matrix elements, and
//! [`brute_force_bound`] densifies its inputs and recomputes each bound with
//! naive loops over explicit commutators and basis vectors.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, BoundOptions, ZERO_VARIANCE};
use crate::error::{Error, Result};
use crate::hilbert::{
    self, canonical_ops, commutator, superposition_state, Basis, HilbertSpec, OperatorMatrix,
    PhysicalConstants, StateVector, C64,
};
use crate::models::{
    self, analytic_nonlinear_rs_term, analytic_rs_bounds_linear, build_linear, build_nonlinear,
    linear_commutators, nonlinear_bracket_term, LinearModelParams, MomentumReading,
    NonlinearModelParams,
};

/// Seed for randomized oracle instances unless `NCBOUND_SEED` is set.
pub const DEFAULT_SEED: u64 = 1729;

/// Largest total dimension the brute-force path accepts.
pub const BRUTE_FORCE_MAX_DIM: usize = 32;

pub fn seed_from_env() -> u64 {
    std::env::var("NCBOUND_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

/// One named comparison of a computed value against a reference.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub tolerance: f64,
    pub kind: ToleranceKind,
    pub pass: bool,
    /// Reported for information only; never fails a check run.
    pub informational: bool,
}

impl OracleReport {
    pub fn new(name: impl Into<String>, value: f64, reference: f64, tolerance: f64, kind: ToleranceKind) -> Self {
        let abs_dev = (value - reference).abs();
        let rel_dev = relative_deviation(value, reference);
        let dev = match kind {
            ToleranceKind::Absolute => abs_dev,
            ToleranceKind::Relative => rel_dev,
        };
        Self {
            name: name.into(),
            value,
            reference,
            abs_dev,
            rel_dev,
            tolerance,
            kind,
            pass: dev <= tolerance,
            informational: false,
        }
    }

    /// A maximum deviation already reduced over many comparisons.
    pub fn deviation(name: impl Into<String>, deviation: f64, tolerance: f64, kind: ToleranceKind) -> Self {
        let (abs_dev, rel_dev) = match kind {
            ToleranceKind::Absolute => (deviation, f64::NAN),
            ToleranceKind::Relative => (f64::NAN, deviation),
        };
        Self {
            name: name.into(),
            value: deviation,
            reference: 0.0,
            abs_dev,
            rel_dev,
            tolerance,
            kind,
            pass: deviation <= tolerance,
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.informational, self.pass) {
            (true, _) => "INFO",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        let kind = match self.kind {
            ToleranceKind::Absolute => "abs",
            ToleranceKind::Relative => "rel",
        };
        let dev = |v: f64| if v.is_nan() { "-".to_string() } else { format!("{v:.2e}") };
        write!(
            f,
            "{status:<4}  {:<58} value={:<12.6e} ref={:<12.6e} abs={:<9} rel={:<9} tol={:.0e} ({kind})",
            self.name,
            self.value,
            self.reference,
            dev(self.abs_dev),
            dev(self.rel_dev),
            self.tolerance
        )
    }
}

/// `|v − r| / |r|`, with `0/0 = 0`.
pub fn relative_deviation(value: f64, reference: f64) -> f64 {
    let diff = (value - reference).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / reference.abs()
    }
}

// ---------------------------------------------------------------------------
// closed forms

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateDescriptor {
    /// `|n⟩`
    Fock(usize),
    /// `cos θ |0⟩ − sin θ |1⟩`
    Theta(f64),
    /// `cos θ |i⟩ − sin θ |j⟩`
    Superposition { theta: f64, i: usize, j: usize },
}

/// `⟨x⟩, ⟨p⟩, ⟨x²⟩, ⟨p²⟩, ⟨xp + px⟩` of a single-mode state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormMoments {
    pub x: f64,
    pub p: f64,
    pub x2: f64,
    pub p2: f64,
    pub xp_px: f64,
}

impl ClosedFormMoments {
    pub fn var_x(&self) -> f64 {
        self.x2 - self.x * self.x
    }

    pub fn var_p(&self) -> f64 {
        self.p2 - self.p * self.p
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn sq(v: usize) -> f64 {
    (v as f64).sqrt()
}

// Fock matrix elements ⟨m|·|n⟩ of a, a† combinations.
fn a_plus_adag(m: usize, n: usize) -> f64 {
    sq(n) * delta(m + 1, n) + sq(n + 1) * delta(m, n + 1)
}

fn adag_minus_a(m: usize, n: usize) -> f64 {
    sq(n + 1) * delta(m, n + 1) - sq(n) * delta(m + 1, n)
}

fn raise_two(m: usize, n: usize) -> f64 {
    sq((n + 1) * (n + 2)) * delta(m, n + 2)
}

fn lower_two(m: usize, n: usize) -> f64 {
    if n >= 2 {
        sq(n * (n - 1)) * delta(m + 2, n)
    } else {
        0.0
    }
}

pub fn closed_form_moments(state: StateDescriptor, consts: &PhysicalConstants) -> Result<ClosedFormMoments> {
    let (amps, levels): (Vec<f64>, Vec<usize>) = match state {
        StateDescriptor::Fock(n) => (vec![1.0], vec![n]),
        StateDescriptor::Theta(theta) => (vec![theta.cos(), -theta.sin()], vec![0, 1]),
        StateDescriptor::Superposition { theta, i, j } => {
            if i == j {
                return Err(Error::DegenerateSuperposition(i));
            }
            (vec![theta.cos(), -theta.sin()], vec![i, j])
        }
    };
    let l = consts.position_scale();
    let k = consts.momentum_scale();
    let expect = |elem: &dyn Fn(usize, usize) -> C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (ca, &m) in amps.iter().zip(&levels) {
            for (cb, &n) in amps.iter().zip(&levels) {
                acc += ca * cb * elem(m, n);
            }
        }
        acc
    };
    let x = expect(&|m, n| C64::new(l * a_plus_adag(m, n), 0.0));
    let p = expect(&|m, n| C64::new(0.0, k * adag_minus_a(m, n)));
    // (a + a†)² = a² + a†² + 2a†a + 1,  (a† − a)² = a†² + a² − 2a†a − 1
    let x2 = expect(&|m, n| {
        C64::new(l * l * (raise_two(m, n) + lower_two(m, n) + (2 * n + 1) as f64 * delta(m, n)), 0.0)
    });
    let p2 = expect(&|m, n| {
        C64::new(-k * k * (raise_two(m, n) + lower_two(m, n) - (2 * n + 1) as f64 * delta(m, n)), 0.0)
    });
    // xp + px = 2iℓκ(a†² − a²)
    let xp_px = expect(&|m, n| C64::new(0.0, 2.0 * l * k * (raise_two(m, n) - lower_two(m, n))));
    Ok(ClosedFormMoments {
        x: x.re,
        p: p.re,
        x2: x2.re,
        p2: p2.re,
        xp_px: xp_px.re,
    })
}

/// `Var(X₁)`, `Var(P₁)` of the linear model in `|0, 0⟩`. The two modes are
/// uncorrelated there, so variances of the mixed terms add.
pub fn model1_ground_variances(params: &LinearModelParams, consts: &PhysicalConstants) -> (f64, f64) {
    let x0 = consts.hbar / (2.0 * consts.mass * consts.omega);
    let p0 = consts.hbar * consts.mass * consts.omega / 2.0;
    (
        x0 + params.lambda * params.lambda / 4.0 * p0,
        p0 + params.gamma * params.gamma / 4.0 * x0,
    )
}

// ---------------------------------------------------------------------------
// brute force

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Robertson,
    Schrodinger,
    TighterProduct,
    SumLower,
    PmurL1,
    PmurL2,
    ReverseProduct,
    LambdaFactor,
    ReverseSum,
}

impl BoundKind {
    pub const ALL: [BoundKind; 9] = [
        BoundKind::Robertson,
        BoundKind::Schrodinger,
        BoundKind::TighterProduct,
        BoundKind::SumLower,
        BoundKind::PmurL1,
        BoundKind::PmurL2,
        BoundKind::ReverseProduct,
        BoundKind::LambdaFactor,
        BoundKind::ReverseSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Robertson => "robertson",
            BoundKind::Schrodinger => "schrodinger",
            BoundKind::TighterProduct => "tighter_product",
            BoundKind::SumLower => "sum_lower",
            BoundKind::PmurL1 => "pmur_L1",
            BoundKind::PmurL2 => "pmur_L2",
            BoundKind::ReverseProduct => "reverse_product",
            BoundKind::LambdaFactor => "lambda_factor",
            BoundKind::ReverseSum => "reverse_sum",
        }
    }

    /// The matching field of a main-path record.
    pub fn select(&self, rec: &bounds::BoundsRecord) -> Option<f64> {
        match self {
            BoundKind::Robertson => Some(rec.robertson),
            BoundKind::Schrodinger => Some(rec.schrodinger),
            BoundKind::TighterProduct => Some(rec.tighter_product),
            BoundKind::SumLower => Some(rec.sum_lower),
            BoundKind::PmurL1 => Some(rec.pmur_l1),
            BoundKind::PmurL2 => Some(rec.pmur_l2),
            BoundKind::ReverseProduct => rec.reverse_product,
            BoundKind::LambdaFactor => rec.lambda_factor,
            BoundKind::ReverseSum => rec.reverse_sum,
        }
    }
}

type Dense = Vec<Vec<C64>>;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn naive_mul(x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    let mut out = vec![vec![zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = zero();
            for k in 0..n {
                acc += x[i][k] * y[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn naive_combine(x: &Dense, cx: C64, y: &Dense, cy: C64) -> Dense {
    x.iter()
        .zip(y)
        .map(|(rx, ry)| rx.iter().zip(ry).map(|(a, b)| cx * a + cy * b).collect())
        .collect()
}

fn shifted(x: &Dense, shift: C64) -> Dense {
    let mut out = x.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= shift;
    }
    out
}

fn naive_apply(x: &Dense, v: &[C64]) -> Vec<C64> {
    x.iter()
        .map(|row| {
            let mut acc = zero();
            for (m, c) in row.iter().zip(v) {
                acc += m * c;
            }
            acc
        })
        .collect()
}

/// `⟨u|M|v⟩`
fn sandwich(u: &[C64], m: &Dense, v: &[C64]) -> C64 {
    let mut acc = zero();
    for i in 0..u.len() {
        for j in 0..v.len() {
            acc += u[i].conj() * m[i][j] * v[j];
        }
    }
    acc
}

fn braket(u: &[C64], v: &[C64]) -> C64 {
    let mut acc = zero();
    for (a, b) in u.iter().zip(v) {
        acc += a.conj() * b;
    }
    acc
}

fn unit(v: Vec<C64>) -> Option<Vec<C64>> {
    let len2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    (len2 > ZERO_VARIANCE).then(|| {
        let len = len2.sqrt();
        v.into_iter().map(|c| c / len).collect()
    })
}

/// Recomputes one bound by direct summation on dense copies of the inputs.
/// Undefined bounds come back as `None`, matching [`bounds::evaluate`].
pub fn brute_force_bound(
    kind: BoundKind,
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    basis: &Basis,
    opts: &BoundOptions,
) -> Result<Option<f64>> {
    let n = a.dim();
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(Error::OracleDimension(n));
    }
    if b.dim() != n || psi.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.dim().max(psi.dim()) });
    }
    let am = a.to_dense();
    let bm = b.to_dense();
    let s = psi.amplitudes();
    let vectors = basis.vectors(n);
    let mean_a = sandwich(s, &am, s);
    let mean_b = sandwich(s, &bm, s);
    let abar = shifted(&am, mean_a);
    let bbar = shifted(&bm, mean_b);
    let one = C64::new(1.0, 0.0);
    let ab = naive_mul(&am, &bm);
    let ba = naive_mul(&bm, &am);
    let comm = naive_combine(&ab, one, &ba, -one);
    let anti = naive_combine(&ab, one, &ba, one);
    let comm_exp = sandwich(s, &comm, s);

    let basis_terms = || -> Vec<(C64, f64, f64)> {
        let ba_bar = naive_mul(&bbar, &abar);
        vectors
            .iter()
            .map(|e| {
                let a_n = sandwich(s, &abar, e);
                let b_n = sandwich(e, &bbar, s);
                let overlap = braket(s, e);
                let tail = sandwich(e, &ba_bar, s);
                let c = a_n * b_n - overlap * tail;
                let d = a_n * b_n + overlap * tail;
                (c + d, sandwich(e, &abar, s).norm(), b_n.norm())
            })
            .collect()
    };

    let value = match kind {
        BoundKind::Robertson => Some(0.25 * comm_exp.norm_sqr()),
        BoundKind::Schrodinger => {
            let cross = 0.5 * sandwich(s, &anti, s) - mean_a * mean_b;
            Some(0.25 * comm_exp.norm_sqr() + cross.norm_sqr())
        }
        BoundKind::TighterProduct => {
            let total: f64 = basis_terms().iter().map(|t| t.0.norm()).sum();
            Some(0.25 * total * total)
        }
        BoundKind::SumLower => {
            let mut total = 0.0;
            for e in &vectors {
                let x = sandwich(e, &abar, s).norm() + sandwich(e, &bbar, s).norm();
                total += x * x;
            }
            Some(0.5 * total)
        }
        BoundKind::PmurL1 => {
            let perp = match &opts.psi_perp {
                Some(p) => Some(p.amplitudes().to_vec()),
                None => unit(naive_apply(&abar, s)).or_else(|| unit(naive_apply(&bbar, s))),
            };
            match perp {
                None => Some(0.0),
                Some(perp) => {
                    let i_comm = (C64::new(0.0, 1.0) * comm_exp).re;
                    let sign = if i_comm >= 0.0 { 1.0 } else { -1.0 };
                    let mixed = naive_combine(&am, one, &bm, C64::new(0.0, sign));
                    Some(sign * i_comm + sandwich(s, &mixed, &perp).norm_sqr())
                }
            }
        }
        BoundKind::PmurL2 => {
            let sum = naive_combine(&am, one, &bm, one);
            let centered = shifted(&sum, mean_a + mean_b);
            match unit(naive_apply(&centered, s)) {
                None => Some(0.0),
                Some(perp) => Some(0.5 * sandwich(&perp, &sum, s).norm_sqr()),
            }
        }
        BoundKind::ReverseProduct | BoundKind::LambdaFactor => {
            let terms = basis_terms();
            let thr = opts.min_amplitude;
            let support: Vec<_> = terms.iter().filter(|t| t.1 > thr && t.2 > thr).collect();
            let one_sided = terms.iter().any(|t| (t.1 > thr) != (t.2 > thr));
            if support.is_empty() || (support.len() == 1 && one_sided) {
                None
            } else {
                let mut lo_a = f64::INFINITY;
                let mut hi_a = 0.0f64;
                let mut lo_b = f64::INFINITY;
                let mut hi_b = 0.0f64;
                let mut total = 0.0;
                for t in &support {
                    lo_a = lo_a.min(t.1);
                    hi_a = hi_a.max(t.1);
                    lo_b = lo_b.min(t.2);
                    hi_b = hi_b.max(t.2);
                    total += t.0.norm();
                }
                let lambda = (hi_a * hi_b + lo_a * lo_b).powi(2) / (4.0 * hi_a * hi_b * lo_a * lo_b);
                Some(if kind == BoundKind::LambdaFactor {
                    lambda
                } else {
                    lambda / 4.0 * total * total
                })
            }
        }
        BoundKind::ReverseSum => {
            let var_a = sandwich(s, &naive_mul(&abar, &abar), s).re;
            let var_b = sandwich(s, &naive_mul(&bbar, &bbar), s).re;
            if var_a <= ZERO_VARIANCE || var_b <= ZERO_VARIANCE {
                None
            } else {
                let cov = 0.5 * sandwich(s, &naive_combine(&naive_mul(&abar, &bbar), one, &naive_mul(&bbar, &abar), one), s).re;
                let diff = naive_combine(&abar, one, &bbar, -one);
                let var_diff = sandwich(s, &naive_mul(&diff, &diff), s).re;
                let (sa, sb) = (var_a.sqrt(), var_b.sqrt());
                let ratio = cov / (sa * sb);
                if ratio >= 1.0 - bounds::CORRELATION_GUARD {
                    None
                } else {
                    Some(2.0 * var_diff / (1.0 - ratio) - 2.0 * sa * sb)
                }
            }
        }
    };
    Ok(value)
}

/// Deviation between a main-path and an oracle value; a defined/undefined
/// mismatch counts as infinite.
pub fn option_deviation(main: Option<f64>, oracle: Option<f64>) -> f64 {
    match (main, oracle) {
        (Some(m), Some(o)) => relative_deviation(m, o),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

// ---------------------------------------------------------------------------
// random instances

/// A random hermitian pair, normalized state and basis on a small space.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub a: OperatorMatrix,
    pub b: OperatorMatrix,
    pub psi: StateVector,
    pub basis: Basis,
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

#[allow(clippy::needless_range_loop)]
fn random_hermitian(space: HilbertSpec, rng: &mut ChaCha8Rng) -> Result<OperatorMatrix> {
    let n = space.total_dim();
    let mut m = vec![vec![zero(); n]; n];
    for i in 0..n {
        m[i][i] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..n {
            let z = random_complex(rng);
            m[i][j] = z;
            m[j][i] = z.conj();
        }
    }
    OperatorMatrix::from_dense(space, &m)?.into_hermitian()
}

fn random_basis(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(n);
    while out.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
        // two Gram-Schmidt passes keep the basis orthonormal to ~1e-15
        for _ in 0..2 {
            for e in &out {
                let c = braket(e, &v);
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= c * ei;
                }
            }
        }
        if let Some(u) = unit(v) {
            out.push(u);
        }
    }
    out
}

/// Draws `count` instances alternating between an 8-level single-mode space
/// and a 4×4 two-mode space; odd instances use a random orthonormal basis.
pub fn random_instances(count: usize, seed: u64) -> Result<Vec<RandomInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spaces = [HilbertSpec::single_mode(8, 1)?, HilbertSpec::two_mode(4, 1)?];
    (0..count)
        .map(|k| {
            let space = spaces[k % 2];
            let a = random_hermitian(space, &mut rng)?;
            let b = random_hermitian(space, &mut rng)?;
            let amps = (0..space.total_dim()).map(|_| random_complex(&mut rng)).collect();
            let psi = StateVector::normalized(space, amps)?;
            let basis = if k % 4 >= 2 {
                Basis::custom(space, random_basis(space.total_dim(), &mut rng))?
            } else {
                Basis::Fock
            };
            Ok(RandomInstance { a, b, psi, basis })
        })
        .collect()
}

/// Largest main-vs-oracle relative deviation per bound family over the
/// given instances.
pub fn brute_force_agreement(instances: &[RandomInstance]) -> Result<Vec<(BoundKind, f64)>> {
    let opts = BoundOptions::default();
    let mut worst = vec![0.0f64; BoundKind::ALL.len()];
    for inst in instances {
        let rec = bounds::evaluate(&inst.a, &inst.b, &inst.psi, &inst.basis, &opts)?;
        for (slot, kind) in worst.iter_mut().zip(BoundKind::ALL) {
            let oracle = brute_force_bound(kind, &inst.a, &inst.b, &inst.psi, &inst.basis, &opts)?;
            *slot = slot.max(option_deviation(kind.select(&rec), oracle));
        }
    }
    Ok(BoundKind::ALL.into_iter().zip(worst).collect())
}

// ---------------------------------------------------------------------------
// check suite

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    pub dim: usize,
    pub margin: usize,
    pub seed: u64,
    pub instances: usize,
    pub consts: PhysicalConstants,
    pub linear: LinearModelParams,
    pub nonlinear: NonlinearModelParams,
    /// Negative control: builds the linear model with `λ → −λ` while keeping
    /// the closed-form targets, so the commutator checks must fail.
    pub flip_lambda_sign: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            dim: hilbert::DEFAULT_DIM,
            margin: hilbert::DEFAULT_MARGIN,
            seed: DEFAULT_SEED,
            instances: 100,
            consts: PhysicalConstants::default(),
            linear: LinearModelParams::default(),
            nonlinear: NonlinearModelParams::default(),
            flip_lambda_sign: false,
        }
    }
}

/// Number of θ points used for moment and brute-force grid checks.
pub const THETA_GRID: usize = 201;

fn theta_grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |k| 2.0 * std::f64::consts::PI * k as f64 / points as f64)
}

/// Runs the full oracle suite and returns one report per check.
pub fn run_checks(opts: &CheckOptions) -> Result<Vec<OracleReport>> {
    use ToleranceKind::{Absolute, Relative};
    let consts = &opts.consts;
    let single = HilbertSpec::single_mode(opts.dim, opts.margin)?;
    let double = HilbertSpec::two_mode(opts.dim, opts.margin)?;
    let mut out = Vec::new();

    // canonical algebra
    let (x, p) = canonical_ops(single, 0, consts)?;
    let ihbar = C64::new(0.0, consts.hbar);
    let id = OperatorMatrix::identity(single);
    let dev = commutator(&x, &p)?.interior_max_diff(&id.scaled(ihbar))?;
    out.push(OracleReport::deviation("[x,p] = iħ on interior", dev, 1e-10, Absolute));

    // linear model commutators
    let built_params = if opts.flip_lambda_sign {
        LinearModelParams { lambda: -opts.linear.lambda, ..opts.linear }
    } else {
        opts.linear
    };
    let set = build_linear(&built_params, consts, double)?;
    let targets = linear_commutators(&opts.linear, consts);
    let id2 = OperatorMatrix::identity(double);
    let (x2, p2) = (set.x2.as_ref().expect("two-mode"), set.p2.as_ref().expect("two-mode"));
    for (name, a, b, z) in [
        ("linear [X1,X2] = iλħ", &set.x1, x2, targets.x1_x2),
        ("linear [P1,P2] = iγħ", &set.p1, p2, targets.p1_p2),
        ("linear [X1,P1] = iħ(1+λγ/4)", &set.x1, &set.p1, targets.x1_p1),
        ("linear [X2,P2] = iħ(1+λγ/4)", x2, p2, targets.x2_p2),
    ] {
        let dev = commutator(a, b)?.interior_max_diff(&id2.scaled(z))?;
        out.push(OracleReport::deviation(name, dev, 1e-9, Absolute));
    }

    // nonlinear model commutator
    let nl = build_nonlinear(&opts.nonlinear, consts, single)?;
    let comm = commutator(&nl.x1, &nl.p1)?;
    let exact = models::nonlinear_commutator_exact(&opts.nonlinear, consts, single)?;
    out.push(OracleReport::deviation(
        "nonlinear [X1,P1] = iħ(1-2αp+6α²p²)",
        comm.interior_max_diff(&exact)?,
        1e-8,
        Absolute,
    ));
    let gup = models::nonlinear_commutator_gup_form(&opts.nonlinear, consts, single)?;
    out.push(
        OracleReport::deviation("nonlinear [X1,P1] vs iħ(1-αp+4α²p²)", comm.interior_max_diff(&gup)?, 1e-8, Absolute)
            .informational(),
    );

    // closed-form anchors for the linear model ground state
    let ground = StateVector::basis(double, 0)?;
    let (vx, vp) = model1_ground_variances(&opts.linear, consts);
    let truth = build_linear(&opts.linear, consts, double)?;
    out.push(OracleReport::new("linear Var(X1) on |0,0⟩", hilbert::variance(&truth.x1, &ground)?, vx, 1e-10, Absolute));
    out.push(OracleReport::new("linear Var(P1) on |0,0⟩", hilbert::variance(&truth.p1, &ground)?, vp, 1e-10, Absolute));
    let rs = analytic_rs_bounds_linear(&opts.linear, consts);
    out.push(OracleReport::new(
        "linear robertson(X1,P1) on |0,0⟩",
        bounds::robertson(&set.x1, &set.p1, &ground)?,
        rs.xp,
        1e-10,
        Relative,
    ));

    // θ-family moments
    let xp_anti = hilbert::anticommutator(&x, &p)?;
    let x_sq = (&x * &x).into_hermitian()?;
    let p_sq = (&p * &p).into_hermitian()?;
    let mut worst = 0.0f64;
    for theta in theta_grid(THETA_GRID) {
        let psi = superposition_state(single, theta, 0, 1)?;
        let cf = closed_form_moments(StateDescriptor::Theta(theta), consts)?;
        let numeric = [
            hilbert::expectation(&x, &psi)?.re,
            hilbert::expectation(&p, &psi)?.re,
            hilbert::expectation(&x_sq, &psi)?.re,
            hilbert::expectation(&p_sq, &psi)?.re,
            hilbert::expectation(&xp_anti, &psi)?.re,
        ];
        let closed = [cf.x, cf.p, cf.x2, cf.p2, cf.xp_px];
        for (a, b) in numeric.iter().zip(closed) {
            worst = worst.max((a - b).abs());
        }
    }
    out.push(OracleReport::deviation("θ-family moments vs closed form (201 pts)", worst, 1e-9, Absolute));

    // nonlinear RS on Fock states against the closed-form bracket + C²n term
    for n in 1..=3usize {
        let fock = StateVector::basis(single, n)?;
        let numeric = bounds::schrodinger(&nl.x1, &nl.p1, &fock)?;
        let cf = closed_form_moments(StateDescriptor::Fock(n), consts)?;
        let extra = analytic_nonlinear_rs_term(n, &opts.nonlinear, consts)?;
        for (label, reading) in [("⟨p²⟩", MomentumReading::SecondMoment), ("⟨p⟩²", MomentumReading::SquaredMean)] {
            let bracket = nonlinear_bracket_term(cf.p, cf.p2, reading, &opts.nonlinear, consts);
            out.push(
                OracleReport::new(format!("nonlinear RS on |{n}⟩ vs bracket[{label}] + C²n term"), numeric, bracket + extra, 1e-10, Relative)
                    .informational(),
            );
        }
        let a = opts.nonlinear.alpha;
        let exact = 0.25 * consts.hbar.powi(2) * (1.0 - 2.0 * a * cf.p + 6.0 * a * a * cf.p2).powi(2);
        out.push(OracleReport::new(format!("nonlinear RS on |{n}⟩ = ¼ħ²(1-2α⟨p⟩+6α²⟨p²⟩)²"), numeric, exact, 1e-10, Relative));
    }

    // brute force on random instances
    let instances = random_instances(opts.instances, opts.seed)?;
    for (kind, dev) in brute_force_agreement(&instances)? {
        out.push(OracleReport::deviation(
            format!("brute force {} ({} random instances)", kind.name(), instances.len()),
            dev,
            1e-10,
            Relative,
        ));
    }

    // brute force on the physical operators when the working space is small
    if single.total_dim() <= BRUTE_FORCE_MAX_DIM {
        let bopts = BoundOptions::default();
        for (label, a, b) in [("canonical", &x, &p), ("nonlinear", &nl.x1, &nl.p1)] {
            let mut worst = vec![0.0f64; BoundKind::ALL.len()];
            for theta in theta_grid(21) {
                let psi = superposition_state(single, theta, 0, 1)?;
                let rec = bounds::evaluate(a, b, &psi, &Basis::Fock, &bopts)?;
                for (slot, kind) in worst.iter_mut().zip(BoundKind::ALL) {
                    let oracle = brute_force_bound(kind, a, b, &psi, &Basis::Fock, &bopts)?;
                    *slot = slot.max(option_deviation(kind.select(&rec), oracle));
                }
            }
            for (kind, dev) in BoundKind::ALL.into_iter().zip(worst) {
                out.push(OracleReport::deviation(
                    format!("brute force {} on {label} X/P, dim {}", kind.name(), opts.dim),
                    dev,
                    1e-10,
                    Relative,
                ));
            }
        }
    }

    Ok(out)
}
