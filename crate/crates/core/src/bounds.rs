//! Lower and upper bounds on products and sums of variances for a pair of
//! hermitian observables `A`, `B` in a pure state `ψ`.
//!
//! Notation: `Ā = A − ⟨A⟩`, `aₙ = ⟨ψ|Ā|ψₙ⟩`, `bₙ = ⟨ψₙ|B̄|ψ⟩` for an
//! orthonormal basis `{ψₙ}`.
//!
//! | bound            | inequality                                                      |
//! |------------------|-----------------------------------------------------------------|
//! | Robertson        | `ΔA²ΔB² ≥ ¼|⟨[A,B]⟩|²`                                           |
//! | Schrödinger      | `ΔA²ΔB² ≥ ¼|⟨[A,B]⟩|² + |½⟨{A,B}⟩ − ⟨A⟩⟨B⟩|²`                     |
//! | tighter product  | `ΔA²ΔB² ≥ ¼(Σₙ|⟨[Ā,B̄ₙ]⟩ + ⟨{Ā,B̄ₙ}⟩|)²`                          |
//! | reverse product  | `ΔA²ΔB² ≤ (Λ/4)(Σₙ|⟨[Ā,B̄ₙ]⟩ + ⟨{Ā,B̄ₙ}⟩|)²`                      |
//! | PMUR L1          | `ΔA² + ΔB² ≥ ±i⟨[A,B]⟩ + |⟨ψ|A ± iB|ψ⊥⟩|²`                        |
//! | PMUR L2          | `ΔA² + ΔB² ≥ ½|⟨ψ⊥_{A+B}|A + B|ψ⟩|²`                              |
//! | sum lower        | `ΔA² + ΔB² ≥ ½Σₙ(|⟨ψₙ|Ā|ψ⟩| + |⟨ψₙ|B̄|ψ⟩|)²`                       |
//! | reverse sum      | `ΔA² + ΔB² ≤ 2Δ(A−B)²/(1 − Cov/(ΔAΔB)) − 2ΔAΔB`                   |
//!
//! where `⟨[Ā,B̄ₙ]⟩ = ⟨ψ|Ā|ψₙ⟩⟨ψₙ|B̄|ψ⟩ − ⟨ψ|ψₙ⟩⟨ψₙ|B̄Ā|ψ⟩` and the
//! anticommutator term flips the sign; their sum is `2aₙbₙ`.

use crate::error::{Error, Result};
use crate::hilbert::{
    inner, norm, real_part, require_hermitian, Basis, OperatorMatrix, StateVector, C64,
    ORTHONORMAL_TOLERANCE,
};

/// Default amplitude threshold for the reverse-product support set.
pub const DEFAULT_MIN_AMPLITUDE: f64 = 1e-8;

/// Variances at or below this count as zero.
pub const ZERO_VARIANCE: f64 = 1e-24;

/// Correlation ratios at or above `1 − CORRELATION_GUARD` leave the reverse
/// sum bound undefined.
pub const CORRELATION_GUARD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundOptions {
    /// Amplitudes `|⟨ψₙ|Ā|ψ⟩|`, `|⟨ψₙ|B̄|ψ⟩|` at or below this are treated as
    /// absent when forming the reverse-product support.
    pub min_amplitude: f64,
    /// Orthogonal partner for PMUR L1. `None` uses [`default_orthogonal_partner`].
    pub psi_perp: Option<StateVector>,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            min_amplitude: DEFAULT_MIN_AMPLITUDE,
            psi_perp: None,
        }
    }
}

/// Every variance and bound for one `(A, B, ψ, basis)` evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRecord {
    pub var_a: f64,
    pub var_b: f64,
    pub product: f64,
    pub sum: f64,
    pub robertson: f64,
    pub schrodinger: f64,
    pub tighter_product: f64,
    pub sum_lower: f64,
    pub pmur_l1: f64,
    pub pmur_l2: f64,
    pub reverse_product: Option<f64>,
    pub reverse_sum: Option<f64>,
    pub lambda_factor: Option<f64>,
}

/// Names of the record fields in CSV column order.
pub const RECORD_FIELDS: [&str; 13] = [
    "varA",
    "varB",
    "product",
    "sum",
    "robertson",
    "schrodinger",
    "tighter_product",
    "sum_lower",
    "pmur_L1",
    "pmur_L2",
    "reverse_product",
    "reverse_sum",
    "lambda_factor",
];

impl BoundsRecord {
    /// A record with every field absent: NaN for the always-defined bounds.
    pub fn undefined() -> Self {
        Self {
            var_a: f64::NAN,
            var_b: f64::NAN,
            product: f64::NAN,
            sum: f64::NAN,
            robertson: f64::NAN,
            schrodinger: f64::NAN,
            tighter_product: f64::NAN,
            sum_lower: f64::NAN,
            pmur_l1: f64::NAN,
            pmur_l2: f64::NAN,
            reverse_product: None,
            reverse_sum: None,
            lambda_factor: None,
        }
    }

    /// Field values in [`RECORD_FIELDS`] order; `None` marks an absent bound.
    pub fn values(&self) -> [Option<f64>; 13] {
        [
            Some(self.var_a),
            Some(self.var_b),
            Some(self.product),
            Some(self.sum),
            Some(self.robertson),
            Some(self.schrodinger),
            Some(self.tighter_product),
            Some(self.sum_lower),
            Some(self.pmur_l1),
            Some(self.pmur_l2),
            self.reverse_product,
            self.reverse_sum,
            self.lambda_factor,
        ]
    }

    /// Names of the ordering relations this record breaks at relative
    /// tolerance `rel_tol`. Empty when both sandwiches and the
    /// Robertson ≤ Schrödinger hierarchy hold.
    pub fn violations(&self, rel_tol: f64) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |name, lower: f64, upper: f64| {
            if !leq_rel(lower, upper, rel_tol) {
                out.push(name);
            }
        };
        check("robertson <= schrodinger", self.robertson, self.schrodinger);
        check("schrodinger <= product", self.schrodinger, self.product);
        check("tighter_product <= product", self.tighter_product, self.product);
        check("sum_lower <= sum", self.sum_lower, self.sum);
        check("pmur_L1 <= sum", self.pmur_l1, self.sum);
        check("pmur_L2 <= sum", self.pmur_l2, self.sum);
        if let Some(upper) = self.reverse_product {
            check("product <= reverse_product", self.product, upper);
        }
        if let Some(upper) = self.reverse_sum {
            check("sum <= reverse_sum", self.sum, upper);
        }
        out
    }
}

/// `lower ≤ upper` up to `rel_tol` of the larger magnitude.
pub fn leq_rel(lower: f64, upper: f64, rel_tol: f64) -> bool {
    lower <= upper + rel_tol * lower.abs().max(upper.abs())
}

/// Shared state for one `(A, B, ψ)` triple.
struct Moments<'a> {
    psi: &'a [C64],
    av: Vec<C64>,
    bv: Vec<C64>,
    a_bar: Vec<C64>,
    b_bar: Vec<C64>,
    mean_a: f64,
    mean_b: f64,
    var_a: f64,
    var_b: f64,
    /// `⟨ψ|AB|ψ⟩`
    ab: C64,
}

impl<'a> Moments<'a> {
    fn new(a: &OperatorMatrix, b: &OperatorMatrix, psi: &'a StateVector) -> Result<Self> {
        require_hermitian(a)?;
        require_hermitian(b)?;
        let s = psi.amplitudes();
        let av = a.apply(s)?;
        let bv = b.apply(s)?;
        let mean_a = real_part(inner(s, &av)?)?;
        let mean_b = real_part(inner(s, &bv)?)?;
        let center = |v: &[C64], mean: f64| -> Vec<C64> {
            v.iter().zip(s).map(|(x, p)| x - p * mean).collect()
        };
        let a_bar = center(&av, mean_a);
        let b_bar = center(&bv, mean_b);
        let var_a = norm(&a_bar).powi(2);
        let var_b = norm(&b_bar).powi(2);
        let ab = inner(&av, &bv)?;
        Ok(Self {
            psi: s,
            av,
            bv,
            a_bar,
            b_bar,
            mean_a,
            mean_b,
            var_a,
            var_b,
            ab,
        })
    }

    fn robertson(&self) -> f64 {
        // ⟨[A,B]⟩ = ab − ab* = 2i·Im(ab)
        let comm = C64::new(0.0, 2.0 * self.ab.im);
        0.25 * comm.norm_sqr()
    }

    fn covariance(&self) -> f64 {
        // ½⟨{A,B}⟩ = Re(ab) for hermitian A, B
        self.ab.re - self.mean_a * self.mean_b
    }

    fn schrodinger(&self) -> f64 {
        let cross = self.covariance();
        self.robertson() + cross * cross
    }

    fn pmur_l1(&self, psi_perp: &[C64]) -> Result<f64> {
        let overlap = inner(self.psi, psi_perp)?.norm();
        if overlap > ORTHONORMAL_TOLERANCE {
            return Err(Error::NotOrthogonal(overlap));
        }
        // i⟨[A,B]⟩ = −2 Im(ab); pick the sign that makes the first term non-negative
        let i_comm = -2.0 * self.ab.im;
        let sign = if i_comm >= 0.0 { 1.0 } else { -1.0 };
        let a_elem = inner(&self.av, psi_perp)?;
        let b_elem = inner(&self.bv, psi_perp)?;
        let mixed = a_elem + C64::new(0.0, sign) * b_elem;
        Ok(sign * i_comm + mixed.norm_sqr())
    }

    fn pmur_l2(&self) -> Result<f64> {
        let v: Vec<C64> = self.a_bar.iter().zip(&self.b_bar).map(|(a, b)| a + b).collect();
        let len = norm(&v);
        if len * len <= ZERO_VARIANCE {
            return Ok(0.0);
        }
        let perp: Vec<C64> = v.iter().map(|x| x / len).collect();
        let sum_applied: Vec<C64> = self.av.iter().zip(&self.bv).map(|(a, b)| a + b).collect();
        Ok(0.5 * inner(&perp, &sum_applied)?.norm_sqr())
    }

    fn default_partner(&self) -> Option<Vec<C64>> {
        [&self.a_bar, &self.b_bar].into_iter().find_map(|v| {
            let len = norm(v);
            (len * len > ZERO_VARIANCE).then(|| v.iter().map(|x| x / len).collect())
        })
    }

    /// Per-basis-vector `⟨[Ā,B̄ₙ]⟩ + ⟨{Ā,B̄ₙ}⟩` together with `|⟨ψₙ|Ā|ψ⟩|`
    /// and `|⟨ψₙ|B̄|ψ⟩|`.
    fn basis_terms(&self, b: &OperatorMatrix, basis: &Basis) -> Result<Vec<(C64, f64, f64)>> {
        basis.check_dim(self.psi.len())?;
        let ca = basis.coefficients(&self.a_bar)?;
        let cb = basis.coefficients(&self.b_bar)?;
        let cpsi = basis.coefficients(self.psi)?;
        // B̄Ā|ψ⟩ = B(Āψ) − ⟨B⟩Āψ
        let b_a_bar: Vec<C64> = b
            .apply(&self.a_bar)?
            .iter()
            .zip(&self.a_bar)
            .map(|(x, a)| x - a * self.mean_b)
            .collect();
        let tail = basis.coefficients(&b_a_bar)?;
        Ok((0..ca.len())
            .map(|n| {
                let a_n = ca[n].conj();
                let b_n = cb[n];
                let overlap = cpsi[n].conj();
                let comm = a_n * b_n - overlap * tail[n];
                let anti = a_n * b_n + overlap * tail[n];
                (comm + anti, ca[n].norm(), cb[n].norm())
            })
            .collect())
    }

    fn tighter_product(&self, b: &OperatorMatrix, basis: &Basis) -> Result<f64> {
        let total: f64 = self.basis_terms(b, basis)?.iter().map(|(t, _, _)| t.norm()).sum();
        Ok(0.25 * total * total)
    }

    fn sum_lower(&self, basis: &Basis) -> Result<f64> {
        basis.check_dim(self.psi.len())?;
        let ca = basis.coefficients(&self.a_bar)?;
        let cb = basis.coefficients(&self.b_bar)?;
        let total: f64 = ca
            .iter()
            .zip(&cb)
            .map(|(a, b)| {
                let s = a.norm() + b.norm();
                s * s
            })
            .sum();
        Ok(0.5 * total)
    }

    fn reverse_product(
        &self,
        b: &OperatorMatrix,
        basis: &Basis,
        min_amplitude: f64,
    ) -> Result<Option<ReverseProduct>> {
        let terms = self.basis_terms(b, basis)?;
        let mut support = Vec::new();
        let mut one_sided = false;
        for (n, &(_, alpha, beta)) in terms.iter().enumerate() {
            match (alpha > min_amplitude, beta > min_amplitude) {
                (true, true) => support.push(n),
                (false, false) => {}
                _ => one_sided = true,
            }
        }
        // With a single supported index Λ = 1 and the restricted sum is one
        // term, which cannot cover amplitudes living outside the support.
        if support.is_empty() || (support.len() == 1 && one_sided) {
            return Ok(None);
        }
        let fold = |pick: fn(&(C64, f64, f64)) -> f64| {
            support.iter().map(|&n| pick(&terms[n])).fold((f64::INFINITY, 0.0f64), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
        };
        let (m_alpha, big_alpha) = fold(|t| t.1);
        let (m_beta, big_beta) = fold(|t| t.2);
        let lambda = (big_alpha * big_beta + m_alpha * m_beta).powi(2)
            / (4.0 * big_alpha * big_beta * m_alpha * m_beta);
        let total: f64 = support.iter().map(|&n| terms[n].0.norm()).sum();
        Ok(Some(ReverseProduct {
            bound: lambda / 4.0 * total * total,
            lambda,
        }))
    }

    fn reverse_sum(&self) -> Result<Option<f64>> {
        if self.var_a <= ZERO_VARIANCE || self.var_b <= ZERO_VARIANCE {
            return Err(Error::ZeroVariance);
        }
        let (sd_a, sd_b) = (self.var_a.sqrt(), self.var_b.sqrt());
        let ratio = self.covariance() / (sd_a * sd_b);
        if ratio >= 1.0 - CORRELATION_GUARD {
            return Ok(None);
        }
        let diff: Vec<C64> = self.a_bar.iter().zip(&self.b_bar).map(|(a, b)| a - b).collect();
        let var_diff = norm(&diff).powi(2);
        Ok(Some(2.0 * var_diff / (1.0 - ratio) - 2.0 * sd_a * sd_b))
    }
}

/// Reverse product bound and the Λ factor it was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReverseProduct {
    pub bound: f64,
    pub lambda: f64,
}

pub fn robertson(a: &OperatorMatrix, b: &OperatorMatrix, psi: &StateVector) -> Result<f64> {
    Ok(Moments::new(a, b, psi)?.robertson())
}

pub fn schrodinger(a: &OperatorMatrix, b: &OperatorMatrix, psi: &StateVector) -> Result<f64> {
    Ok(Moments::new(a, b, psi)?.schrodinger())
}

/// PMUR first sum bound for a caller-supplied `ψ⊥`, checked orthogonal to `ψ`.
pub fn pmur_sum_l1(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    psi_perp: &StateVector,
) -> Result<f64> {
    Moments::new(a, b, psi)?.pmur_l1(psi_perp.amplitudes())
}

/// PMUR second sum bound; equals `½Var(A + B)` and is 0 when `ψ` is an
/// eigenstate of `A + B`.
pub fn pmur_sum_l2(a: &OperatorMatrix, b: &OperatorMatrix, psi: &StateVector) -> Result<f64> {
    Moments::new(a, b, psi)?.pmur_l2()
}

/// `Āψ` normalized, or `B̄ψ` if `ψ` is an eigenstate of `A`; `None` when
/// `ψ` is an eigenstate of both.
pub fn default_orthogonal_partner(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
) -> Result<Option<StateVector>> {
    let m = Moments::new(a, b, psi)?;
    m.default_partner()
        .map(|v| StateVector::new(psi.space(), v))
        .transpose()
}

pub fn tighter_product(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    basis: &Basis,
) -> Result<f64> {
    Moments::new(a, b, psi)?.tighter_product(b, basis)
}

pub fn sum_lower(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    basis: &Basis,
) -> Result<f64> {
    Moments::new(a, b, psi)?.sum_lower(basis)
}

/// Reverse product bound, or `None` when the support set is empty (ψ an
/// eigenstate of `A` or `B`) or degenerates to a single index while other
/// indices carry one-sided amplitude.
pub fn reverse_product(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    basis: &Basis,
    min_amplitude: f64,
) -> Result<Option<ReverseProduct>> {
    Moments::new(a, b, psi)?.reverse_product(b, basis, min_amplitude)
}

/// Reverse sum bound. Fails on a vanishing variance; `None` when the
/// correlation ratio reaches 1.
pub fn reverse_sum(a: &OperatorMatrix, b: &OperatorMatrix, psi: &StateVector) -> Result<Option<f64>> {
    Moments::new(a, b, psi)?.reverse_sum()
}

/// Evaluates every bound. Undefined upper bounds, including the zero-variance
/// case of the reverse sum, come back as `None`.
pub fn evaluate(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &StateVector,
    basis: &Basis,
    opts: &BoundOptions,
) -> Result<BoundsRecord> {
    let m = Moments::new(a, b, psi)?;
    let pmur_l1 = match &opts.psi_perp {
        Some(perp) => m.pmur_l1(perp.amplitudes())?,
        None => match m.default_partner() {
            Some(perp) => m.pmur_l1(&perp)?,
            None => 0.0,
        },
    };
    let reverse = m.reverse_product(b, basis, opts.min_amplitude)?;
    let reverse_sum = match m.reverse_sum() {
        Ok(v) => v,
        Err(Error::ZeroVariance) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundsRecord {
        var_a: m.var_a,
        var_b: m.var_b,
        product: m.var_a * m.var_b,
        sum: m.var_a + m.var_b,
        robertson: m.robertson(),
        schrodinger: m.schrodinger(),
        tighter_product: m.tighter_product(b, basis)?,
        sum_lower: m.sum_lower(basis)?,
        pmur_l1,
        pmur_l2: m.pmur_l2()?,
        reverse_product: reverse.map(|r| r.bound),
        reverse_sum,
        lambda_factor: reverse.map(|r| r.lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{canonical_ops, superposition_state, HilbertSpec, PhysicalConstants};
    use crate::models::{analytic_rs_bounds_linear, build_linear, LinearModelParams};
    use std::f64::consts::PI;

    fn canonical(dim: usize) -> (HilbertSpec, OperatorMatrix, OperatorMatrix) {
        let spec = HilbertSpec::single_mode(dim, 4).unwrap();
        let (x, p) = canonical_ops(spec, 0, &PhysicalConstants::default()).unwrap();
        (spec, x, p)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn self_pair_saturates() {
        let (spec, x, _) = canonical(16);
        let psi = superposition_state(spec, 0.7, 0, 3).unwrap();
        let var = crate::hilbert::variance(&x, &psi).unwrap();
        assert!(robertson(&x, &x, &psi).unwrap() < 1e-30);
        assert!(close(schrodinger(&x, &x, &psi).unwrap(), var * var, 1e-13));
        assert!(close(tighter_product(&x, &x, &psi, &Basis::Fock).unwrap(), var * var, 1e-13));
        assert!(close(sum_lower(&x, &x, &psi, &Basis::Fock).unwrap(), 2.0 * var, 1e-13));
    }

    #[test]
    fn canonical_ground_state() {
        let (spec, x, p) = canonical(16);
        let ground = StateVector::basis(spec, 0).unwrap();
        assert!(close(robertson(&x, &p, &ground).unwrap(), 0.25, 1e-14));
        assert!(close(schrodinger(&x, &p, &ground).unwrap(), 0.25, 1e-14));
        let perp = StateVector::basis(spec, 1).unwrap();
        let l1 = pmur_sum_l1(&x, &p, &ground, &perp).unwrap();
        let l2 = pmur_sum_l2(&x, &p, &ground).unwrap();
        assert!(close(l1, 1.0, 1e-14), "{l1}");
        assert!(close(l2, 0.5, 1e-14), "{l2}");
        assert!(close(reverse_sum(&x, &p, &ground).unwrap().unwrap(), 1.0, 1e-14));
    }

    #[test]
    fn l1_requires_orthogonal_partner() {
        let (spec, x, p) = canonical(8);
        let psi = superposition_state(spec, 0.4, 0, 1).unwrap();
        let not_perp = superposition_state(spec, 1.1, 0, 1).unwrap();
        assert!(matches!(
            pmur_sum_l1(&x, &p, &psi, &not_perp),
            Err(Error::NotOrthogonal(_))
        ));
    }

    #[test]
    fn l2_vanishes_on_eigenstate() {
        let (spec, x, _) = canonical(8);
        let id = OperatorMatrix::identity(spec);
        let number = {
            let (a, adag) = crate::hilbert::make_ladder(spec, 0).unwrap();
            (&adag * &a).into_hermitian().unwrap()
        };
        let fock = StateVector::basis(spec, 3).unwrap();
        assert_eq!(pmur_sum_l2(&number, &id, &fock).unwrap(), 0.0);
        assert!(pmur_sum_l2(&x, &id, &fock).unwrap() > 0.0);
    }

    #[test]
    fn l2_is_half_variance_of_sum() {
        let (spec, x, p) = canonical(16);
        let sum = (&x + &p).into_hermitian().unwrap();
        for k in 0..12 {
            let psi = superposition_state(spec, 0.5 * k as f64, 1, 2).unwrap();
            let l2 = pmur_sum_l2(&x, &p, &psi).unwrap();
            assert!(close(l2, 0.5 * crate::hilbert::variance(&sum, &psi).unwrap(), 1e-12));
        }
    }

    #[test]
    fn tighter_product_basis_sum_identity() {
        let (spec, x, p) = canonical(16);
        for k in 0..25 {
            let psi = superposition_state(spec, 0.27 * k as f64, 0, 1).unwrap();
            let m = Moments::new(&x, &p, &psi).unwrap();
            let simplified: f64 = m.a_bar.iter().zip(&m.b_bar).map(|(a, b)| a.norm() * b.norm()).sum();
            let t = tighter_product(&x, &p, &psi, &Basis::Fock).unwrap();
            assert!((t - simplified * simplified).abs() <= 1e-12);
        }
    }

    #[test]
    fn sum_lower_theta_quarter() {
        let (spec, x, p) = canonical(16);
        let theta = PI / 4.0;
        let psi = superposition_state(spec, theta, 0, 1).unwrap();
        let s2 = theta.sin().powi(2);
        let expected_sum = 2.0 * (0.5 + s2) - 0.5 * (2.0 * theta).sin().powi(2);
        let rec = evaluate(&x, &p, &psi, &Basis::Fock, &BoundOptions::default()).unwrap();
        assert!(close(rec.sum, expected_sum, 1e-14));
        assert!(rec.sum_lower <= rec.sum);
    }

    #[test]
    fn reverse_product_constant_amplitudes() {
        // Ā and B̄ spread evenly over two levels give Λ = 1
        let spec = HilbertSpec::single_mode(4, 1).unwrap();
        let c = |re| C64::new(re, 0.0);
        let a = OperatorMatrix::from_triplets(spec, [(0, 1, c(1.0)), (1, 0, c(1.0)), (0, 2, c(1.0)), (2, 0, c(1.0))])
            .unwrap()
            .into_hermitian()
            .unwrap();
        let b = a.scaled(c(2.0));
        let psi = StateVector::basis(spec, 0).unwrap();
        let r = reverse_product(&a, &b, &psi, &Basis::Fock, 1e-8).unwrap().unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-15);
        let rec = evaluate(&a, &b, &psi, &Basis::Fock, &BoundOptions::default()).unwrap();
        assert!(close(r.bound, rec.product, 1e-14));
    }

    #[test]
    fn reverse_product_undefined_on_eigenstate() {
        let (spec, x, _) = canonical(8);
        let (a, adag) = crate::hilbert::make_ladder(spec, 0).unwrap();
        let number = (&adag * &a).into_hermitian().unwrap();
        let fock = StateVector::basis(spec, 2).unwrap();
        assert_eq!(reverse_product(&number, &x, &fock, &Basis::Fock, 1e-8).unwrap(), None);
        assert!(matches!(reverse_sum(&number, &x, &fock), Err(Error::ZeroVariance)));
        let rec = evaluate(&number, &x, &fock, &Basis::Fock, &BoundOptions::default()).unwrap();
        assert_eq!(rec.reverse_sum, None);
        assert_eq!(rec.lambda_factor, None);
    }

    #[test]
    fn reverse_sum_anticorrelated_equality() {
        let (spec, x, _) = canonical(16);
        let minus_x = x.scaled(C64::new(-1.0, 0.0));
        let psi = superposition_state(spec, 0.9, 0, 2).unwrap();
        let var = crate::hilbert::variance(&x, &psi).unwrap();
        let bound = reverse_sum(&x, &minus_x, &psi).unwrap().unwrap();
        assert!(close(bound, 2.0 * var, 1e-12));
        // perfectly correlated: undefined
        assert_eq!(reverse_sum(&x, &x, &psi).unwrap(), None);
    }

    #[test]
    fn commutative_robertson_constant() {
        let consts = PhysicalConstants::default();
        let spec = HilbertSpec::two_mode(12, 4).unwrap();
        let set = build_linear(&LinearModelParams::new(0.0, 0.0).unwrap(), &consts, spec).unwrap();
        for k in 0..30 {
            let psi = superposition_state(spec, 0.21 * k as f64, 0, 13).unwrap();
            assert!((robertson(&set.x1, &set.p1, &psi).unwrap() - 0.25).abs() <= 1e-10);
        }
    }

    #[test]
    fn linear_model_ground_robertson() {
        let consts = PhysicalConstants::default();
        let params = LinearModelParams::default();
        let spec = HilbertSpec::two_mode(12, 4).unwrap();
        let set = build_linear(&params, &consts, spec).unwrap();
        let ground = StateVector::basis(spec, 0).unwrap();
        let r = robertson(&set.x1, &set.p1, &ground).unwrap();
        assert!(close(r, analytic_rs_bounds_linear(&params, &consts).xp, 1e-12));
    }

    #[test]
    fn non_hermitian_inputs_rejected() {
        let (spec, x, _) = canonical(8);
        let (a, _) = crate::hilbert::make_ladder(spec, 0).unwrap();
        let psi = StateVector::basis(spec, 1).unwrap();
        assert!(matches!(robertson(&a, &x, &psi), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn custom_basis_must_be_complete() {
        let spec = HilbertSpec::single_mode(4, 1).unwrap();
        let e = |k: usize| {
            let mut v = vec![C64::new(0.0, 0.0); 4];
            v[k] = C64::new(1.0, 0.0);
            v
        };
        assert!(Basis::custom(spec, vec![e(0), e(1), e(2)]).is_err());
        assert!(Basis::custom(spec, vec![e(0), e(1), e(2), e(2)]).is_err());
        assert!(Basis::custom(spec, vec![e(3), e(1), e(2), e(0)]).is_ok());
    }
}
