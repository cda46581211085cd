//! Non-commutative operator sets built from canonical `x`, `p`.
//!
//! * Linear model (two modes):
//!   `X₁ = x₁ − (λ/2)p₂`, `X₂ = x₂ + (λ/2)p₁`,
//!   `P₁ = p₁ + (γ/2)x₂`, `P₂ = p₂ − (γ/2)x₁`.
//! * Nonlinear model (one mode): `X₁ = x`, `P₁ = p − αp² + 2α²p³`.
//! * General linear map: `(X₁, X₂, P₁, P₂)ᵀ = A (x₁, x₂, p₁, p₂)ᵀ`.

use crate::error::{Error, Result};
use crate::hilbert::{canonical_ops, HilbertSpec, OperatorMatrix, PhysicalConstants, C64};

/// Coupling constants of the linear model. `λ = γ = 0` is the commutative limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearModelParams {
    pub lambda: f64,
    pub gamma: f64,
}

impl LinearModelParams {
    pub fn new(lambda: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("gamma", gamma)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite, got {v}"),
                });
            }
        }
        Ok(Self { lambda, gamma })
    }
}

impl Default for LinearModelParams {
    fn default() -> Self {
        Self {
            lambda: 0.15,
            gamma: 0.15,
        }
    }
}

/// Momentum deformation strength of the nonlinear model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearModelParams {
    pub alpha: f64,
}

impl NonlinearModelParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: format!("must be finite and non-negative, got {alpha}"),
            });
        }
        Ok(Self { alpha })
    }
}

impl Default for NonlinearModelParams {
    fn default() -> Self {
        Self { alpha: 0.1 }
    }
}

/// Real `2n × 2n` coefficient matrix acting on the phase-space vector
/// `(x₁, …, xₙ, p₁, …, pₙ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralLinearMap {
    matrix: Vec<Vec<f64>>,
}

impl GeneralLinearMap {
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!("needs an even, non-zero number of rows, got {n}"),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: row.len(),
                right: n,
            });
        }
        if matrix.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: "entries must be finite".into(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(modes: usize) -> Self {
        let n = 2 * modes;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { matrix }
    }

    /// Coefficients reproducing the linear model.
    pub fn linear_model(params: &LinearModelParams) -> Self {
        let (hl, hg) = (params.lambda / 2.0, params.gamma / 2.0);
        // columns: x1, x2, p1, p2
        let matrix = vec![
            vec![1.0, 0.0, 0.0, -hl],
            vec![0.0, 1.0, hl, 0.0],
            vec![0.0, hg, 1.0, 0.0],
            vec![-hg, 0.0, 0.0, 1.0],
        ];
        Self { matrix }
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }
}

/// Positions and momenta of one model on a shared space. `x2`/`p2` are absent
/// for single-mode models.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSet {
    pub x1: OperatorMatrix,
    pub p1: OperatorMatrix,
    pub x2: Option<OperatorMatrix>,
    pub p2: Option<OperatorMatrix>,
}

impl OperatorSet {
    pub fn space(&self) -> HilbertSpec {
        self.x1.space()
    }

    pub fn members(&self) -> Vec<&OperatorMatrix> {
        let mut out = vec![&self.x1, &self.p1];
        out.extend(self.x2.iter());
        out.extend(self.p2.iter());
        out
    }
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn require_modes(spec: HilbertSpec, modes: usize) -> Result<()> {
    if spec.modes() != modes {
        return Err(Error::InvalidSpace(format!(
            "model needs a {modes}-mode space, got {} modes",
            spec.modes()
        )));
    }
    Ok(())
}

/// Canonical operators of a space as a plain operator set.
pub fn build_canonical(consts: &PhysicalConstants, spec: HilbertSpec) -> Result<OperatorSet> {
    let (x1, p1) = canonical_ops(spec, 0, consts)?;
    let (x2, p2) = if spec.modes() == 2 {
        let (x2, p2) = canonical_ops(spec, 1, consts)?;
        (Some(x2), Some(p2))
    } else {
        (None, None)
    };
    Ok(OperatorSet { x1, p1, x2, p2 })
}

pub fn build_linear(
    params: &LinearModelParams,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
) -> Result<OperatorSet> {
    require_modes(spec, 2)?;
    let (x1, p1) = canonical_ops(spec, 0, consts)?;
    let (x2, p2) = canonical_ops(spec, 1, consts)?;
    let (hl, hg) = (params.lambda / 2.0, params.gamma / 2.0);
    let one = real(1.0);
    let combo = |terms: &[(C64, &OperatorMatrix)]| {
        OperatorMatrix::linear_combination(terms).and_then(OperatorMatrix::into_hermitian)
    };
    Ok(OperatorSet {
        x1: combo(&[(one, &x1), (real(-hl), &p2)])?,
        x2: Some(combo(&[(one, &x2), (real(hl), &p1)])?),
        p1: combo(&[(real(hg), &x2), (one, &p1)])?,
        p2: Some(combo(&[(real(-hg), &x1), (one, &p2)])?),
    })
}

pub fn build_general_linear(
    map: &GeneralLinearMap,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
) -> Result<OperatorSet> {
    if map.size() != 2 * spec.modes() {
        return Err(Error::DimensionMismatch {
            left: map.size(),
            right: 2 * spec.modes(),
        });
    }
    let canonical = build_canonical(consts, spec)?;
    let mut basis: Vec<&OperatorMatrix> = vec![&canonical.x1];
    basis.extend(canonical.x2.iter());
    basis.push(&canonical.p1);
    basis.extend(canonical.p2.iter());

    let mut built = map
        .matrix()
        .iter()
        .map(|row| {
            let terms: Vec<_> = row.iter().zip(&basis).map(|(&c, &op)| (real(c), op)).collect();
            let op = if row.iter().all(|&c| c == 0.0) {
                OperatorMatrix::zeros(spec)
            } else {
                OperatorMatrix::linear_combination(&terms)?
            };
            // real combinations of hermitian operators; a failure here is a bug
            op.into_hermitian()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter();
    let mut next = || built.next().expect("row count checked");
    Ok(if spec.modes() == 2 {
        let (x1, x2, p1, p2) = (next(), next(), next(), next());
        OperatorSet {
            x1,
            p1,
            x2: Some(x2),
            p2: Some(p2),
        }
    } else {
        let (x1, p1) = (next(), next());
        OperatorSet {
            x1,
            p1,
            x2: None,
            p2: None,
        }
    })
}

pub fn build_nonlinear(
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
) -> Result<OperatorSet> {
    require_modes(spec, 1)?;
    let (x, p) = canonical_ops(spec, 0, consts)?;
    let alpha = params.alpha;
    let p1 = if alpha == 0.0 {
        p
    } else {
        let p2 = &p * &p;
        let p3 = &p2 * &p;
        OperatorMatrix::linear_combination(&[
            (real(1.0), &p),
            (real(-alpha), &p2),
            (real(2.0 * alpha * alpha), &p3),
        ])?
        .into_hermitian()?
    };
    Ok(OperatorSet {
        x1: x,
        p1,
        x2: None,
        p2: None,
    })
}

/// Closed-form commutators of the linear model, each a multiple of the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearCommutators {
    pub x1_x2: C64,
    pub p1_p2: C64,
    pub x1_p1: C64,
    pub x2_p2: C64,
}

pub fn linear_commutators(params: &LinearModelParams, consts: &PhysicalConstants) -> LinearCommutators {
    let hbar = consts.hbar;
    let diag = C64::new(0.0, hbar * (1.0 + params.lambda * params.gamma / 4.0));
    LinearCommutators {
        x1_x2: C64::new(0.0, params.lambda * hbar),
        p1_p2: C64::new(0.0, params.gamma * hbar),
        x1_p1: diag,
        x2_p2: diag,
    }
}

/// `[X₁, P₁]` of the nonlinear model as an operator: `iħ(1 − 2αp + 6α²p²)`,
/// from `[x, pᵏ] = ikħ pᵏ⁻¹`.
pub fn nonlinear_commutator_exact(
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
) -> Result<OperatorMatrix> {
    nonlinear_commutator_with(params, consts, spec, 2.0, 6.0)
}

/// The deformed algebra as usually quoted for this GUP model,
/// `iħ(1 − αp + 4α²p²)`. Kept for comparison against
/// [`nonlinear_commutator_exact`]; the two differ at first order in α.
pub fn nonlinear_commutator_gup_form(
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
) -> Result<OperatorMatrix> {
    nonlinear_commutator_with(params, consts, spec, 1.0, 4.0)
}

fn nonlinear_commutator_with(
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
    spec: HilbertSpec,
    linear: f64,
    quadratic: f64,
) -> Result<OperatorMatrix> {
    require_modes(spec, 1)?;
    let (_, p) = canonical_ops(spec, 0, consts)?;
    let p2 = &p * &p;
    let id = OperatorMatrix::identity(spec);
    let (a, ih) = (params.alpha, C64::new(0.0, consts.hbar));
    OperatorMatrix::linear_combination(&[
        (ih, &id),
        (ih * (-linear * a), &p),
        (ih * (quadratic * a * a), &p2),
    ])
}

/// Closed-form Robertson-Schrödinger right-hand sides of the linear model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearRsBounds {
    /// `(ħ²/4)(1 + λγ/4)²` for `(X₁, P₁)`.
    pub xp: f64,
    /// `ħ²λ²/4` for `(X₁, X₂)`.
    pub xx: f64,
    /// `ħ²γ²/4` for `(P₁, P₂)`.
    pub pp: f64,
}

pub fn analytic_rs_bounds_linear(params: &LinearModelParams, consts: &PhysicalConstants) -> LinearRsBounds {
    let h2 = consts.hbar * consts.hbar;
    let shift = 1.0 + params.lambda * params.gamma / 4.0;
    LinearRsBounds {
        xp: h2 / 4.0 * shift * shift,
        xx: h2 * params.lambda * params.lambda / 4.0,
        pp: h2 * params.gamma * params.gamma / 4.0,
    }
}

/// `C = 6α²ħ(ħ/2)^{3/2}(mω)^{1/2}`.
pub fn nonlinear_coupling(params: &NonlinearModelParams, consts: &PhysicalConstants) -> f64 {
    6.0 * params.alpha.powi(2)
        * consts.hbar
        * (consts.hbar / 2.0).powf(1.5)
        * (consts.mass * consts.omega).sqrt()
}

/// Fock-level term `¼ C² n [√(n−1) + √(n+1)]²` of the nonlinear RS bound, `n ≥ 1`.
pub fn analytic_nonlinear_rs_term(
    n: usize,
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "Fock label must be at least 1".into(),
        });
    }
    let c = nonlinear_coupling(params, consts);
    let nf = n as f64;
    let bracket = (nf - 1.0).sqrt() + (nf + 1.0).sqrt();
    Ok(0.25 * c * c * nf * bracket * bracket)
}

/// How the momentum in the bracket `[1 − αp + 4α²p²]` is read as a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentumReading {
    /// `1 − α⟨p⟩ + 4α²⟨p²⟩`
    SecondMoment,
    /// `1 − α⟨p⟩ + 4α²⟨p⟩²`
    SquaredMean,
}

/// `¼ħ²[1 − α⟨p⟩ + 4α²(·)]²`, the commutator part of the nonlinear RS bound.
pub fn nonlinear_bracket_term(
    mean_p: f64,
    mean_p2: f64,
    reading: MomentumReading,
    params: &NonlinearModelParams,
    consts: &PhysicalConstants,
) -> f64 {
    let a = params.alpha;
    let quad = match reading {
        MomentumReading::SecondMoment => mean_p2,
        MomentumReading::SquaredMean => mean_p * mean_p,
    };
    let bracket = 1.0 - a * mean_p + 4.0 * a * a * quad;
    0.25 * consts.hbar * consts.hbar * bracket * bracket
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{commutator, embed, HERMITIAN_TOLERANCE};

    fn two() -> HilbertSpec {
        HilbertSpec::two_mode(24, 4).unwrap()
    }

    fn id_times(spec: HilbertSpec, z: C64) -> OperatorMatrix {
        OperatorMatrix::identity(spec).scaled(z)
    }

    #[test]
    fn commutative_limits() {
        let consts = PhysicalConstants::default();
        let spec = two();
        let set = build_linear(&LinearModelParams::new(0.0, 0.0).unwrap(), &consts, spec).unwrap();
        let canonical = build_canonical(&consts, spec).unwrap();
        assert_eq!(set, canonical);

        let single = spec.per_mode();
        let nl = build_nonlinear(&NonlinearModelParams::new(0.0).unwrap(), &consts, single).unwrap();
        assert_eq!(nl, build_canonical(&consts, single).unwrap());
    }

    #[test]
    fn linear_commutators_on_interior() {
        let consts = PhysicalConstants::new(1.3, 0.8, 1.1).unwrap();
        let params = LinearModelParams::new(0.15, 0.15).unwrap();
        let spec = two();
        let set = build_linear(&params, &consts, spec).unwrap();
        let expected = linear_commutators(&params, &consts);
        let (x2, p2) = (set.x2.as_ref().unwrap(), set.p2.as_ref().unwrap());
        for (a, b, z) in [
            (&set.x1, x2, expected.x1_x2),
            (&set.p1, p2, expected.p1_p2),
            (&set.x1, &set.p1, expected.x1_p1),
            (x2, p2, expected.x2_p2),
        ] {
            let dev = commutator(a, b).unwrap().interior_max_diff(&id_times(spec, z)).unwrap();
            assert!(dev <= 1e-9, "{dev}");
        }
    }

    #[test]
    fn linear_matches_general_map_exactly() {
        let consts = PhysicalConstants::default();
        let spec = two();
        let params = LinearModelParams::new(0.15, 0.15).unwrap();
        let direct = build_linear(&params, &consts, spec).unwrap();
        let mapped =
            build_general_linear(&GeneralLinearMap::linear_model(&params), &consts, spec).unwrap();
        assert_eq!(direct, mapped);

        let identity = build_general_linear(&GeneralLinearMap::identity(2), &consts, spec).unwrap();
        assert_eq!(identity, build_canonical(&consts, spec).unwrap());
    }

    #[test]
    fn general_map_zero_row_and_shape_errors() {
        let consts = PhysicalConstants::default();
        let spec = two();
        let mut m = GeneralLinearMap::identity(2).matrix().to_vec();
        m[2] = vec![0.0; 4];
        m[0] = vec![0.3, -1.2, 0.5, 2.0];
        let set = build_general_linear(&GeneralLinearMap::new(m).unwrap(), &consts, spec).unwrap();
        assert_eq!(set.p1.nnz(), 0);
        assert!(set.x1.is_hermitian());

        assert!(GeneralLinearMap::new(vec![vec![1.0; 3]; 3]).is_err());
        assert!(GeneralLinearMap::new(vec![vec![1.0; 4], vec![1.0; 3], vec![1.0; 4], vec![1.0; 4]]).is_err());
        let single_map = GeneralLinearMap::identity(1);
        assert!(build_general_linear(&single_map, &consts, spec).is_err());
        let set = build_general_linear(&single_map, &consts, spec.per_mode()).unwrap();
        assert!(set.x2.is_none());
    }

    #[test]
    fn wrong_mode_counts() {
        let consts = PhysicalConstants::default();
        let spec = two();
        assert!(build_linear(&LinearModelParams::default(), &consts, spec.per_mode()).is_err());
        assert!(build_nonlinear(&NonlinearModelParams::default(), &consts, spec).is_err());
    }

    #[test]
    fn nonlinear_exact_commutator() {
        let consts = PhysicalConstants::default();
        let spec = HilbertSpec::single_mode(64, 4).unwrap();
        let params = NonlinearModelParams::new(0.1).unwrap();
        let set = build_nonlinear(&params, &consts, spec).unwrap();
        assert!(set.p1.hermiticity_residual() <= HERMITIAN_TOLERANCE);
        let comm = commutator(&set.x1, &set.p1).unwrap();
        let exact = nonlinear_commutator_exact(&params, &consts, spec).unwrap();
        assert!(comm.interior_max_diff(&exact).unwrap() <= 1e-8);
        // the GUP-form algebra is a different operator at this order
        let gup = nonlinear_commutator_gup_form(&params, &consts, spec).unwrap();
        assert!(comm.interior_max_diff(&gup).unwrap() > 1e-2);
    }

    #[test]
    fn all_members_hermitian() {
        let consts = PhysicalConstants::new(2.0, 0.5, 3.0).unwrap();
        let spec = two();
        for set in [
            build_linear(&LinearModelParams::new(0.4, -0.7).unwrap(), &consts, spec).unwrap(),
            build_nonlinear(&NonlinearModelParams::new(0.3).unwrap(), &consts, spec.per_mode()).unwrap(),
        ] {
            for op in set.members() {
                assert!(op.is_hermitian());
                assert!(op.hermiticity_residual() <= HERMITIAN_TOLERANCE);
            }
        }
    }

    #[test]
    fn closed_form_rs_values() {
        let unit = PhysicalConstants::default();
        let zero = analytic_rs_bounds_linear(&LinearModelParams::new(0.0, 0.0).unwrap(), &unit);
        assert_eq!((zero.xp, zero.xx, zero.pp), (0.25, 0.0, 0.0));
        let b = analytic_rs_bounds_linear(&LinearModelParams::default(), &unit);
        assert!((b.xp - 0.25 * 1.005625f64.powi(2)).abs() < 1e-15);
        assert!((b.xx - 0.005625).abs() < 1e-15);
    }

    #[test]
    fn nonlinear_term_values() {
        let unit = PhysicalConstants::default();
        let zero = NonlinearModelParams::new(0.0).unwrap();
        for n in 1..6 {
            assert_eq!(analytic_nonlinear_rs_term(n, &zero, &unit).unwrap(), 0.0);
        }
        let p = NonlinearModelParams::new(0.1).unwrap();
        let c = nonlinear_coupling(&p, &unit);
        assert!((c - 0.06 * 0.5f64.powf(1.5)).abs() < 1e-15);
        let t1 = analytic_nonlinear_rs_term(1, &p, &unit).unwrap();
        assert!((t1 - 2.25e-4).abs() < 1e-15, "{t1}");
        let scaled = NonlinearModelParams::new(0.1 * 2f64.sqrt()).unwrap();
        let t1s = analytic_nonlinear_rs_term(1, &scaled, &unit).unwrap();
        assert!((t1s / t1 - 4.0).abs() < 1e-12);
        assert!(analytic_nonlinear_rs_term(0, &p, &unit).is_err());
    }

    #[test]
    fn embedded_canonical_matches_linear_members() {
        let consts = PhysicalConstants::default();
        let spec = two();
        let (x, _) = crate::hilbert::canonical_ops(spec.per_mode(), 0, &consts).unwrap();
        let set = build_linear(&LinearModelParams::new(0.0, 0.0).unwrap(), &consts, spec).unwrap();
        assert_eq!(set.x1, embed(&x, 0, spec).unwrap());
    }
}
