//! θ-grid experiments over `cos θ |ψ_i⟩ − sin θ |ψ_j⟩`.
//!
//! A [`PreparedSweep`] builds the operator pair once; every grid point then
//! only prepares a two-term state and calls [`bounds::evaluate`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::bounds::{self, BoundOptions, BoundsRecord};
use crate::error::{Error, Result};
use crate::hilbert::{self, superposition_state, Basis, HilbertSpec, OperatorMatrix, PhysicalConstants};
use crate::models::{build_canonical, build_linear, build_nonlinear, LinearModelParams, NonlinearModelParams};
use crate::oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Two-mode Bopp-shifted operators.
    Linear,
    /// Single-mode deformed momentum.
    Nonlinear,
    /// Single-mode canonical `x`, `p`.
    Commutative,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Nonlinear => "nonlinear",
            ModelKind::Commutative => "commutative",
        }
    }

    pub fn modes(&self) -> usize {
        match self {
            ModelKind::Linear => 2,
            ModelKind::Nonlinear | ModelKind::Commutative => 1,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(ModelKind::Linear),
            "nonlinear" => Ok(ModelKind::Nonlinear),
            "commutative" => Ok(ModelKind::Commutative),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected linear, nonlinear or commutative)"
            ))),
        }
    }
}

/// Which operators play `A` and `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    /// `(X1, P1)`
    XP,
    /// `(X1, X2)`, linear model only.
    XX,
    /// `(P1, P2)`, linear model only.
    PP,
}

impl Pair {
    pub fn name(&self) -> &'static str {
        match self {
            Pair::XP => "XP",
            Pair::XX => "XX",
            Pair::PP => "PP",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "XP" => Ok(Pair::XP),
            "XX" => Ok(Pair::XX),
            "PP" => Ok(Pair::PP),
            other => Err(Error::Config(format!("unknown pair `{other}` (expected XP, XX or PP)"))),
        }
    }
}

/// Fock label of one end of the superposition. `Single(n)` means `|n⟩` on a
/// single-mode space and `|n, 0⟩` on a two-mode one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockLabel {
    Single(usize),
    Pair(usize, usize),
}

impl FockLabel {
    pub fn index(&self, space: HilbertSpec) -> Result<usize> {
        match (*self, space.modes()) {
            (FockLabel::Single(n), 1) => space.index_of(&[n]),
            (FockLabel::Single(n), _) => space.index_of(&[n, 0]),
            (FockLabel::Pair(n0, n1), 2) => space.index_of(&[n0, n1]),
            (FockLabel::Pair(..), _) => Err(Error::Config(format!(
                "two-mode state label `{self}` on a single-mode model"
            ))),
        }
    }
}

impl fmt::Display for FockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockLabel::Single(n) => write!(f, "{n}"),
            FockLabel::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

impl FromStr for FockLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad state label `{s}` (expected `n` or `n0,n1`)"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [n] => n.parse().map(FockLabel::Single).map_err(|_| bad()),
            [a, b] => Ok(FockLabel::Pair(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub model: ModelKind,
    pub pair: Pair,
    pub linear: LinearModelParams,
    pub nonlinear: NonlinearModelParams,
    pub consts: PhysicalConstants,
    pub dim: usize,
    pub margin: usize,
    pub theta_start: f64,
    pub theta_end: f64,
    pub theta_steps: usize,
    pub min_amplitude: f64,
    pub state_i: FockLabel,
    pub state_j: FockLabel,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::Linear,
            pair: Pair::XP,
            linear: LinearModelParams::default(),
            nonlinear: NonlinearModelParams::default(),
            consts: PhysicalConstants::default(),
            dim: hilbert::DEFAULT_DIM,
            margin: hilbert::DEFAULT_MARGIN,
            theta_start: 0.0,
            theta_end: 2.0 * PI,
            theta_steps: 201,
            min_amplitude: bounds::DEFAULT_MIN_AMPLITUDE,
            state_i: FockLabel::Single(0),
            state_j: FockLabel::Single(1),
        }
    }
}

impl SweepConfig {
    pub fn with_model(model: ModelKind, pair: Pair) -> Self {
        Self { model, pair, ..Self::default() }
    }

    pub fn space(&self) -> Result<HilbertSpec> {
        HilbertSpec::new(self.model.modes(), self.dim, self.margin)
    }

    pub fn validate(&self) -> Result<()> {
        if self.theta_steps < 2 {
            return Err(Error::Config(format!("theta_steps must be at least 2, got {}", self.theta_steps)));
        }
        if !(self.theta_start.is_finite() && self.theta_end.is_finite() && self.theta_start < self.theta_end) {
            return Err(Error::Config(format!(
                "need finite theta_start < theta_end, got {} and {}",
                self.theta_start, self.theta_end
            )));
        }
        if !(self.min_amplitude.is_finite() && self.min_amplitude >= 0.0) {
            return Err(Error::Config(format!("min_amplitude must be finite and non-negative, got {}", self.min_amplitude)));
        }
        if self.pair != Pair::XP && self.model != ModelKind::Linear {
            return Err(Error::Config(format!("pair {} requires the linear model, got {}", self.pair, self.model)));
        }
        let space = self.space()?;
        let (i, j) = (self.state_i.index(space)?, self.state_j.index(space)?);
        if i == j {
            return Err(Error::DegenerateSuperposition(i));
        }
        Ok(())
    }

    /// Grid points `start + k·(end − start)/steps` for `k < steps`.
    pub fn thetas(&self) -> Vec<f64> {
        let step = (self.theta_end - self.theta_start) / self.theta_steps as f64;
        (0..self.theta_steps).map(|k| self.theta_start + k as f64 * step).collect()
    }
}

/// Operators and state indices for one config, built once.
#[derive(Clone, Debug)]
pub struct PreparedSweep {
    config: SweepConfig,
    space: HilbertSpec,
    a: OperatorMatrix,
    b: OperatorMatrix,
    i: usize,
    j: usize,
    opts: BoundOptions,
}

impl PreparedSweep {
    pub fn new(config: &SweepConfig) -> Result<Self> {
        config.validate()?;
        let space = config.space()?;
        let set = match config.model {
            ModelKind::Linear => build_linear(&config.linear, &config.consts, space)?,
            ModelKind::Nonlinear => build_nonlinear(&config.nonlinear, &config.consts, space)?,
            ModelKind::Commutative => build_canonical(&config.consts, space)?,
        };
        let (a, b) = match config.pair {
            Pair::XP => (set.x1, set.p1),
            Pair::XX => (set.x1, set.x2.expect("linear model is two-mode")),
            Pair::PP => (set.p1, set.p2.expect("linear model is two-mode")),
        };
        Ok(Self {
            config: config.clone(),
            space,
            a,
            b,
            i: config.state_i.index(space)?,
            j: config.state_j.index(space)?,
            opts: BoundOptions {
                min_amplitude: config.min_amplitude,
                psi_perp: None,
            },
        })
    }

    pub fn operators(&self) -> (&OperatorMatrix, &OperatorMatrix) {
        (&self.a, &self.b)
    }

    pub fn state_at(&self, theta: f64) -> Result<hilbert::StateVector> {
        superposition_state(self.space, theta, self.i, self.j)
    }

    /// Bounds at one θ; any evaluation error yields an all-absent record.
    pub fn evaluate_at(&self, theta: f64) -> BoundsRecord {
        self.state_at(theta)
            .and_then(|psi| bounds::evaluate(&self.a, &self.b, &psi, &Basis::Fock, &self.opts))
            .unwrap_or_else(|_| BoundsRecord::undefined())
    }

    pub fn run(&self) -> SweepResult {
        let points = self
            .config
            .thetas()
            .into_iter()
            .map(|t| (t, self.evaluate_at(t)))
            .collect();
        SweepResult {
            config: self.config.clone(),
            points,
            metadata: SweepMetadata {
                dim: self.config.dim,
                margin: self.config.margin,
                seed: oracle::seed_from_env(),
                version: env!("CARGO_PKG_VERSION"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepMetadata {
    pub dim: usize,
    pub margin: usize,
    pub seed: u64,
    pub version: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// `(θ, record)` in ascending θ.
    pub points: Vec<(f64, BoundsRecord)>,
    pub metadata: SweepMetadata,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    Ok(PreparedSweep::new(config)?.run())
}

/// Largest absolute change of any record field between `dim` and `2·dim`.
/// A field defined at one size but not the other counts as infinite.
pub fn convergence_deviation(config: &SweepConfig) -> Result<f64> {
    let base = run_sweep(config)?;
    let doubled = run_sweep(&SweepConfig { dim: 2 * config.dim, ..config.clone() })?;
    let mut worst = 0.0f64;
    for ((_, r1), (_, r2)) in base.points.iter().zip(&doubled.points) {
        for (u, v) in r1.values().iter().zip(r2.values()) {
            let d = match (u, v) {
                (Some(u), Some(v)) if u.is_nan() && v.is_nan() => 0.0,
                (Some(u), Some(v)) => (u - v).abs(),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            };
            worst = worst.max(if d.is_nan() { f64::INFINITY } else { d });
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Linear model product bounds against the Schrödinger curve.
    Fig1,
    /// Linear model at λ = γ = 0 and at the default coupling.
    Fig2,
    /// Nonlinear model product bounds against the Schrödinger curve.
    Fig3,
    /// Linear model sum bounds.
    Fig4,
    /// Nonlinear model sum bounds.
    Fig5,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4, Figure::Fig5];

    pub fn id(&self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }

    /// Product figures plot product bounds, the others sum bounds.
    pub fn is_product(&self) -> bool {
        matches!(self, Figure::Fig1 | Figure::Fig2 | Figure::Fig3)
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown figure `{s}` (expected fig1..fig5)")))
    }
}

/// Settings a figure does not fix itself.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureOverrides {
    pub dim: usize,
    pub margin: usize,
    pub theta_steps: usize,
    pub consts: PhysicalConstants,
    pub linear: LinearModelParams,
    pub nonlinear: NonlinearModelParams,
}

impl Default for FigureOverrides {
    fn default() -> Self {
        let base = SweepConfig::default();
        Self {
            dim: base.dim,
            margin: base.margin,
            theta_steps: base.theta_steps,
            consts: base.consts,
            linear: base.linear,
            nonlinear: base.nonlinear,
        }
    }
}

/// Named sweep configurations behind a figure, one per curve family.
pub fn figure_configs(figure: Figure, overrides: &FigureOverrides) -> Vec<(String, SweepConfig)> {
    let base = |model| SweepConfig {
        model,
        pair: Pair::XP,
        linear: overrides.linear,
        nonlinear: overrides.nonlinear,
        consts: overrides.consts,
        dim: overrides.dim,
        margin: overrides.margin,
        theta_steps: overrides.theta_steps,
        ..SweepConfig::default()
    };
    let id = figure.id().to_string();
    match figure {
        Figure::Fig1 | Figure::Fig4 => vec![(id, base(ModelKind::Linear))],
        Figure::Fig3 | Figure::Fig5 => vec![(id, base(ModelKind::Nonlinear))],
        Figure::Fig2 => {
            let commutative = SweepConfig {
                linear: LinearModelParams { lambda: 0.0, gamma: 0.0 },
                ..base(ModelKind::Linear)
            };
            let coupled = base(ModelKind::Linear);
            let label = |c: &SweepConfig| format!("fig2_lambda{}_gamma{}", c.linear.lambda, c.linear.gamma);
            vec![(label(&commutative), commutative), (label(&coupled), coupled)]
        }
    }
}

pub fn figure_dataset(figure: Figure, overrides: &FigureOverrides) -> Result<Vec<(String, SweepResult)>> {
    figure_configs(figure, overrides)
        .into_iter()
        .map(|(name, cfg)| Ok((name, run_sweep(&cfg)?)))
        .collect()
}
