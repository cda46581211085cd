//! Truncated Fock spaces for one or two oscillator modes.
//!
//! Two-mode basis states are ordered with mode 0 as the slow index:
//! `|n₀, n₁⟩ ↦ n₀·dim + n₁`, so a mode-0 operator embeds as `A ⊗ I` and a
//! mode-1 operator as `I ⊗ A`.
//!
//! Truncating the ladder operators corrupts the topmost Fock levels
//! (`[a, a†]` has `−(dim − 1)` in its last diagonal entry). Identities are
//! therefore checked on the interior subspace, where every mode label is
//! below `dim − margin`.

mod operator;
mod state;

pub use num_complex::Complex64 as C64;
pub use operator::{OperatorMatrix, HERMITIAN_TOLERANCE};
pub use state::{superposition_state, Basis, StateVector, NORM_TOLERANCE, ORTHONORMAL_TOLERANCE};
pub(crate) use state::{inner, norm};

use crate::error::{Error, Result};

pub const DEFAULT_DIM: usize = 64;
pub const DEFAULT_MARGIN: usize = 4;

/// Imaginary parts of hermitian expectation values above this are an error.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Shape of the working Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertSpec {
    modes: usize,
    dim: usize,
    margin: usize,
}

impl HilbertSpec {
    pub fn new(modes: usize, dim: usize, margin: usize) -> Result<Self> {
        if !(1..=2).contains(&modes) {
            return Err(Error::InvalidSpace(format!("modes must be 1 or 2, got {modes}")));
        }
        if dim < 4 {
            return Err(Error::InvalidSpace(format!("dim must be at least 4, got {dim}")));
        }
        if margin < 1 || margin >= dim {
            return Err(Error::InvalidSpace(format!(
                "margin must satisfy 1 <= margin < dim, got margin {margin} with dim {dim}"
            )));
        }
        Ok(Self { modes, dim, margin })
    }

    pub fn single_mode(dim: usize, margin: usize) -> Result<Self> {
        Self::new(1, dim, margin)
    }

    pub fn two_mode(dim: usize, margin: usize) -> Result<Self> {
        Self::new(2, dim, margin)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Per-mode truncation dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn total_dim(&self) -> usize {
        self.dim.pow(self.modes as u32)
    }

    /// The same truncation restricted to a single mode.
    pub fn per_mode(&self) -> Self {
        Self { modes: 1, ..*self }
    }

    pub fn index_of(&self, labels: &[usize]) -> Result<usize> {
        if labels.len() != self.modes {
            return Err(Error::InvalidSpace(format!(
                "expected {} Fock labels, got {}",
                self.modes,
                labels.len()
            )));
        }
        let mut index = 0;
        for &n in labels {
            if n >= self.dim {
                return Err(Error::IndexOutOfRange { index: n, dim: self.dim });
            }
            index = index * self.dim + n;
        }
        Ok(index)
    }

    /// Per-mode Fock labels of a total index, slow mode first.
    pub fn labels(&self, index: usize) -> Vec<usize> {
        let mut labels = vec![0; self.modes];
        let mut rest = index;
        for slot in labels.iter_mut().rev() {
            *slot = rest % self.dim;
            rest /= self.dim;
        }
        labels
    }

    pub fn is_interior(&self, index: usize) -> bool {
        let cut = self.dim - self.margin;
        let mut rest = index;
        for _ in 0..self.modes {
            if rest % self.dim >= cut {
                return false;
            }
            rest /= self.dim;
        }
        true
    }
}

/// ħ, the particle mass and the oscillator angular frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and strictly positive, got {v}"),
                });
            }
        }
        Ok(Self { hbar, mass, omega })
    }

    /// `√(ħ / 2mω)`, the prefactor of `a + a†` in `x`.
    pub fn position_scale(&self) -> f64 {
        (self.hbar / (2.0 * self.mass * self.omega)).sqrt()
    }

    /// `√(ħmω / 2)`, the prefactor of `i(a† − a)` in `p`.
    pub fn momentum_scale(&self) -> f64 {
        (self.hbar * self.mass * self.omega / 2.0).sqrt()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
        }
    }
}

/// Single-mode annihilation operator, `a|n⟩ = √n |n−1⟩`.
pub(crate) fn single_mode_annihilation(space: HilbertSpec) -> OperatorMatrix {
    let triplets = (1..space.dim()).map(|n| (n - 1, n, C64::new((n as f64).sqrt(), 0.0)));
    OperatorMatrix::from_triplets(space.per_mode(), triplets).expect("indices in range")
}

/// Returns `(a, a†)` for `mode`, acting as the identity on the other mode.
pub fn make_ladder(spec: HilbertSpec, mode: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    check_mode(spec, mode)?;
    let a = single_mode_annihilation(spec);
    let a = if spec.modes() == 2 { embed(&a, mode, spec)? } else { a };
    let adag = a.adjoint();
    Ok((a, adag))
}

/// Returns `(x, p)` for `mode`: `x = √(ħ/2mω)(a + a†)`, `p = i√(ħmω/2)(a† − a)`.
pub fn canonical_ops(
    spec: HilbertSpec,
    mode: usize,
    consts: &PhysicalConstants,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    check_mode(spec, mode)?;
    let (a, adag) = make_ladder(spec.per_mode(), 0)?;
    let xs = C64::new(consts.position_scale(), 0.0);
    let ps = C64::new(0.0, consts.momentum_scale());
    let x = OperatorMatrix::linear_combination(&[(xs, &a), (xs, &adag)])?.into_hermitian()?;
    let p = OperatorMatrix::linear_combination(&[(ps, &adag), (-ps, &a)])?.into_hermitian()?;
    if spec.modes() == 2 {
        Ok((embed(&x, mode, spec)?, embed(&p, mode, spec)?))
    } else {
        Ok((x, p))
    }
}

/// Lifts a single-mode operator into a two-mode space: `A ⊗ I` for mode 0,
/// `I ⊗ A` for mode 1.
pub fn embed(op: &OperatorMatrix, mode: usize, spec: HilbertSpec) -> Result<OperatorMatrix> {
    if spec.modes() != 2 {
        return Err(Error::InvalidSpace("embedding needs a two-mode target space".into()));
    }
    check_mode(spec, mode)?;
    let source = op.space();
    if source.modes() != 1 || source.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: spec.dim(),
        });
    }
    let id = OperatorMatrix::identity(spec.per_mode());
    Ok(if mode == 0 {
        op.kron_with(&id, spec)
    } else {
        id.kron_with(op, spec)
    })
}

/// `AB − BA`. The result is anti-hermitian for hermitian inputs and never
/// carries the hermitian flag.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let ab = a.try_matmul(b)?;
    let ba = b.try_matmul(a)?;
    Ok(ab.try_sub(&ba)?.with_hermitian_flag(false))
}

/// `AB + BA`, flagged hermitian when both inputs are.
pub fn anticommutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let ab = a.try_matmul(b)?;
    let ba = b.try_matmul(a)?;
    let hermitian = a.is_hermitian() && b.is_hermitian();
    Ok(ab.try_add(&ba)?.with_hermitian_flag(hermitian))
}

/// `⟨ψ|A|ψ⟩`.
pub fn expectation(op: &OperatorMatrix, psi: &StateVector) -> Result<C64> {
    let applied = op.apply(psi.amplitudes())?;
    inner(psi.amplitudes(), &applied)
}

/// `⟨A²⟩ − ⟨A⟩²` for hermitian `A`, clamped at zero.
pub fn variance(op: &OperatorMatrix, psi: &StateVector) -> Result<f64> {
    require_hermitian(op)?;
    let applied = op.apply(psi.amplitudes())?;
    let second = applied.iter().map(|a| a.norm_sqr()).sum::<f64>();
    let mean = real_part(inner(psi.amplitudes(), &applied)?)?;
    let var = second - mean * mean;
    debug_assert!(var >= -1e-12, "negative variance {var}");
    Ok(var.max(0.0))
}

/// `½⟨{A, B}⟩ − ⟨A⟩⟨B⟩` for hermitian `A`, `B`.
pub fn covariance(a: &OperatorMatrix, b: &OperatorMatrix, psi: &StateVector) -> Result<f64> {
    require_hermitian(a)?;
    require_hermitian(b)?;
    let av = a.apply(psi.amplitudes())?;
    let bv = b.apply(psi.amplitudes())?;
    let ab = inner(&av, &bv)?;
    let ba = inner(&bv, &av)?;
    let half_anti = real_part(0.5 * (ab + ba))?;
    let mean_a = real_part(inner(psi.amplitudes(), &av)?)?;
    let mean_b = real_part(inner(psi.amplitudes(), &bv)?)?;
    Ok(half_anti - mean_a * mean_b)
}

pub(crate) fn require_hermitian(op: &OperatorMatrix) -> Result<()> {
    if op.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NotHermitian(op.hermiticity_residual()))
    }
}

pub(crate) fn real_part(z: C64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOLERANCE * z.re.abs().max(1.0) {
        return Err(Error::ComplexExpectation(z.im));
    }
    Ok(z.re)
}

fn check_mode(spec: HilbertSpec, mode: usize) -> Result<()> {
    if mode >= spec.modes() {
        return Err(Error::InvalidMode {
            mode,
            modes: spec.modes(),
        });
    }
    Ok(())
}
