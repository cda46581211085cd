use super::{HilbertSpec, C64};
use crate::error::{Error, Result};

/// Normalization slack accepted by [`StateVector::new`].
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Orthonormality slack accepted for custom bases and orthogonal partners.
pub const ORTHONORMAL_TOLERANCE: f64 = 1e-10;

/// Normalized pure state on a truncated Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: HilbertSpec,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(space: HilbertSpec, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(space, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { space, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(space: HilbertSpec, mut amplitudes: Vec<C64>) -> Result<Self> {
        check_len(space, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { space, amplitudes })
    }

    /// The basis state with total index `index`.
    pub fn basis(space: HilbertSpec, index: usize) -> Result<Self> {
        let n = space.total_dim();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); n];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { space, amplitudes })
    }

    /// The Fock state `|n₀, n₁, …⟩` given per-mode labels.
    pub fn fock(space: HilbertSpec, labels: &[usize]) -> Result<Self> {
        Self::basis(space, space.index_of(labels)?)
    }

    pub fn space(&self) -> HilbertSpec {
        self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        inner(&self.amplitudes, &other.amplitudes)
    }
}

/// `cos θ |i⟩ − sin θ |j⟩` for total basis indices `i ≠ j`.
pub fn superposition_state(
    space: HilbertSpec,
    theta: f64,
    i: usize,
    j: usize,
) -> Result<StateVector> {
    let n = space.total_dim();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
    }
    if i == j {
        return Err(Error::DegenerateSuperposition(i));
    }
    let mut amplitudes = vec![C64::new(0.0, 0.0); n];
    amplitudes[i] = C64::new(theta.cos(), 0.0);
    amplitudes[j] = C64::new(-theta.sin(), 0.0);
    Ok(StateVector { space, amplitudes })
}

/// Ordered orthonormal basis of the whole truncated space.
#[derive(Clone, Debug, PartialEq)]
pub enum Basis {
    /// Number states in total-index order.
    Fock,
    /// Explicit vectors, checked orthonormal and complete on construction.
    Custom(Vec<Vec<C64>>),
}

impl Basis {
    pub fn custom(space: HilbertSpec, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let n = space.total_dim();
        if vectors.len() != n {
            return Err(Error::IncompleteBasis {
                got: vectors.len(),
                expected: n,
            });
        }
        for v in &vectors {
            check_len(space, v.len())?;
        }
        let mut worst = 0.0f64;
        for (a, u) in vectors.iter().enumerate() {
            for (b, v) in vectors.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((inner(u, v)? - target).norm());
            }
        }
        if worst > ORTHONORMAL_TOLERANCE {
            return Err(Error::NotOrthonormal(worst));
        }
        Ok(Basis::Custom(vectors))
    }

    /// Coefficients `⟨ψₙ|v⟩` for every basis vector, in order.
    pub fn coefficients(&self, v: &[C64]) -> Result<Vec<C64>> {
        match self {
            Basis::Fock => Ok(v.to_vec()),
            Basis::Custom(vectors) => vectors.iter().map(|b| inner(b, v)).collect(),
        }
    }

    /// Explicit basis vectors for a space of total dimension `n`.
    pub fn vectors(&self, n: usize) -> Vec<Vec<C64>> {
        match self {
            Basis::Fock => (0..n)
                .map(|k| {
                    let mut e = vec![C64::new(0.0, 0.0); n];
                    e[k] = C64::new(1.0, 0.0);
                    e
                })
                .collect(),
            Basis::Custom(vectors) => vectors.clone(),
        }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        match self {
            Basis::Fock => Ok(()),
            Basis::Custom(vectors) => {
                if vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
                    Err(Error::DimensionMismatch {
                        left: vectors.len(),
                        right: n,
                    })
                } else {
                    Ok(())
                }
            }
        }
    }
}

pub(crate) fn inner(u: &[C64], v: &[C64]) -> Result<C64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a.conj() * b).sum())
}

pub(crate) fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_len(space: HilbertSpec, len: usize) -> Result<()> {
    if len != space.total_dim() {
        return Err(Error::DimensionMismatch {
            left: len,
            right: space.total_dim(),
        });
    }
    Ok(())
}
