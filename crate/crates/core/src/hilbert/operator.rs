use std::ops::{Add, Mul, Sub};

use super::{HilbertSpec, C64};
use crate::error::{Error, Result};

/// Residual below which an operator counts as hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

type Row = Vec<(usize, C64)>;

/// Square complex matrix acting on a truncated Fock space.
///
/// Entries are stored row by row, each row sorted by column with exact zeros
/// dropped. Ladder-built operators are banded, so two-mode spaces with a few
/// thousand basis states stay cheap to multiply. All accumulation happens in
/// ascending index order, which makes every product bitwise reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    space: HilbertSpec,
    rows: Vec<Row>,
    hermitian: bool,
}

impl OperatorMatrix {
    pub fn zeros(space: HilbertSpec) -> Self {
        Self {
            space,
            rows: vec![Vec::new(); space.total_dim()],
            hermitian: true,
        }
    }

    pub fn identity(space: HilbertSpec) -> Self {
        let rows = (0..space.total_dim())
            .map(|i| vec![(i, C64::new(1.0, 0.0))])
            .collect();
        Self {
            space,
            rows,
            hermitian: true,
        }
    }

    /// Builds an operator from `(row, col, value)` triples. Repeated positions
    /// are summed in the order given.
    pub fn from_triplets(
        space: HilbertSpec,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self> {
        let n = space.total_dim();
        let mut rows: Vec<Row> = vec![Vec::new(); n];
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    dim: n,
                });
            }
            rows[i].push((j, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(j, _)| j);
            let mut merged: Row = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|&(_, v)| v != C64::new(0.0, 0.0));
            *row = merged;
        }
        Ok(Self {
            space,
            rows,
            hermitian: false,
        })
    }

    pub fn from_dense(space: HilbertSpec, dense: &[Vec<C64>]) -> Result<Self> {
        let n = space.total_dim();
        if dense.len() != n {
            return Err(Error::DimensionMismatch {
                left: dense.len(),
                right: n,
            });
        }
        let mut triplets = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            triplets.extend(row.iter().enumerate().map(|(j, &v)| (i, j, v)));
        }
        Self::from_triplets(space, triplets)
    }

    pub fn space(&self) -> HilbertSpec {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Whether the operator carries the hermitian flag.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, C64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(k) => self.rows[i][k].1,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        let n = self.dim();
        let mut out = vec![vec![C64::new(0.0, 0.0); n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out[i][j] = v;
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut rows: Vec<Row> = vec![Vec::new(); n];
        // Visiting source rows in ascending order keeps target rows sorted.
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v.conj()));
            }
        }
        Self {
            space: self.space,
            rows,
            hermitian: self.hermitian,
        }
    }

    /// `max |M − M†|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                worst = worst.max((v - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Verifies hermiticity to [`HERMITIAN_TOLERANCE`] and sets the flag.
    pub fn into_hermitian(mut self) -> Result<Self> {
        let residual = self.hermiticity_residual();
        if residual > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(residual));
        }
        self.hermitian = true;
        Ok(self)
    }

    pub(crate) fn with_hermitian_flag(mut self, hermitian: bool) -> Self {
        self.hermitian = hermitian;
        self
    }

    pub fn scaled(&self, factor: C64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(j, v)| (j, v * factor))
                    .filter(|&(_, v)| v != C64::new(0.0, 0.0))
                    .collect()
            })
            .collect();
        Self {
            space: self.space,
            rows,
            hermitian: self.hermitian && factor.im == 0.0,
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// `Σ cₖ Mₖ`, accumulated entrywise in term order. Zero coefficients are
    /// skipped entirely, so `1·M` reproduces `M` bit for bit.
    pub fn linear_combination(terms: &[(C64, &OperatorMatrix)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::InvalidParameter {
            name: "terms",
            reason: "empty linear combination".into(),
        })?;
        let space = first.1.space;
        for (_, m) in terms {
            first.1.check_same_space(m)?;
        }
        let n = first.1.dim();
        let live: Vec<_> = terms
            .iter()
            .filter(|(c, _)| *c != C64::new(0.0, 0.0))
            .collect();
        let hermitian = live.iter().all(|(c, m)| c.im == 0.0 && m.hermitian);
        let mut acc = vec![C64::new(0.0, 0.0); n];
        let mut touched = vec![false; n];
        let mut cols: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            for (c, m) in &live {
                for &(j, v) in &m.rows[i] {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                        acc[j] = if *c == C64::new(1.0, 0.0) { v } else { *c * v };
                    } else {
                        acc[j] += if *c == C64::new(1.0, 0.0) { v } else { *c * v };
                    }
                }
            }
            rows.push(drain_row(&mut acc, &mut touched, &mut cols));
        }
        Ok(Self {
            space,
            rows,
            hermitian,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let one = C64::new(1.0, 0.0);
        Self::linear_combination(&[(one, self), (one, other)])
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(&[(C64::new(1.0, 0.0), self), (C64::new(-1.0, 0.0), other)])
    }

    /// Matrix product `self · other`. The hermitian flag is cleared.
    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let n = self.dim();
        let mut acc = vec![C64::new(0.0, 0.0); n];
        let mut touched = vec![false; n];
        let mut cols: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                        acc[j] = a * b;
                    } else {
                        acc[j] += a * b;
                    }
                }
            }
            rows.push(drain_row(&mut acc, &mut touched, &mut cols));
        }
        Ok(Self {
            space: self.space,
            rows,
            hermitian: false,
        })
    }

    /// Kronecker product `self ⊗ other` with `self` on the slow index.
    pub(crate) fn kron_with(&self, other: &Self, space: HilbertSpec) -> Self {
        let inner = other.dim();
        let mut rows = Vec::with_capacity(self.dim() * inner);
        for row_a in &self.rows {
            for row_b in &other.rows {
                let mut row = Vec::with_capacity(row_a.len() * row_b.len());
                for &(ja, va) in row_a {
                    for &(jb, vb) in row_b {
                        let v = va * vb;
                        if v != C64::new(0.0, 0.0) {
                            row.push((ja * inner + jb, v));
                        }
                    }
                }
                rows.push(row);
            }
        }
        Self {
            space,
            rows,
            hermitian: self.hermitian && other.hermitian,
        }
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(j, m)| m * v[j]).sum())
            .collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.masked_max_diff(other, |_| true)
    }

    /// Largest `|Mᵢⱼ − Nᵢⱼ|` with both indices inside the interior subspace
    /// (every mode label below `dim − margin`).
    pub fn interior_max_diff(&self, other: &Self) -> Result<f64> {
        let space = self.space;
        self.masked_max_diff(other, |i| space.is_interior(i))
    }

    fn masked_max_diff(&self, other: &Self, keep: impl Fn(usize) -> bool) -> Result<f64> {
        self.check_same_space(other)?;
        let diff = self.try_sub(other)?;
        let mut worst = 0.0f64;
        for (i, row) in diff.rows.iter().enumerate() {
            if !keep(i) {
                continue;
            }
            for &(j, v) in row {
                if keep(j) {
                    worst = worst.max(v.norm());
                }
            }
        }
        Ok(worst)
    }
}

fn drain_row(acc: &mut [C64], touched: &mut [bool], cols: &mut Vec<usize>) -> Row {
    cols.sort_unstable();
    let row = cols
        .iter()
        .filter_map(|&j| {
            touched[j] = false;
            let v = acc[j];
            (v != C64::new(0.0, 0.0)).then_some((j, v))
        })
        .collect();
    cols.clear();
    row
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    /// Panics on dimension mismatch; use [`OperatorMatrix::try_add`] otherwise.
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.try_add(rhs).expect("operator dimensions must match")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.try_sub(rhs).expect("operator dimensions must match")
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: Self) -> OperatorMatrix {
        self.try_matmul(rhs).expect("operator dimensions must match")
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: f64) -> OperatorMatrix {
        self.scaled(C64::new(rhs, 0.0))
    }
}
