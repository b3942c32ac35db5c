//! Dense complex matrices over the 2- and 4-dimensional Hilbert spaces of the
//! copier pipeline: tensor products, unitary conjugation, partial traces, and
//! density-matrix validation.
//!
//! The joint space uses the fixed basis ordering
//! |0, prepared>, |0, unprepared>, |1, prepared>, |1, unprepared>,
//! i.e. index = 2 * source_bit + medium_bit with the prepared medium state
//! identified with |0> and the unprepared one with |1>. Every 4x4 literal in
//! the crate and its tests depends on this ordering.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for the density-matrix invariants (Hermiticity, unit
/// trace, positivity). Round-off on 4x4 double-precision arithmetic stays
/// within a few ulps, so 1e-12 leaves a wide margin.
pub const DENSITY_TOL: f64 = 1e-12;

/// Absolute tolerance below which a conjugating matrix is accepted as unitary.
pub const UNITARY_TOL: f64 = 1e-12;

/// Basis label for the source system: |0> stores logical 0, |1> logical 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceBasis {
    Zero,
    One,
}

impl SourceBasis {
    pub fn index(self) -> usize {
        match self {
            SourceBasis::Zero => 0,
            SourceBasis::One => 1,
        }
    }
}

/// Basis label for the medium system. The prepared state (a blank medium
/// ready to receive a copy) is identified with |0> and carries the ground
/// energy; the unprepared state is |1> at the upper level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MediumBasis {
    Prepared,
    Unprepared,
}

impl MediumBasis {
    pub fn index(self) -> usize {
        match self {
            MediumBasis::Prepared => 0,
            MediumBasis::Unprepared => 1,
        }
    }
}

/// Index of |a, m> in the fixed joint basis ordering.
pub fn joint_index(a: SourceBasis, m: MediumBasis) -> usize {
    2 * a.index() + m.index()
}

/// Which subsystem a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// The source system (first tensor factor).
    A,
    /// The medium system (second tensor factor).
    B,
}

/// Dense row-major complex matrix, dimension hard-limited to 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { dim })
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must be `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCountMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Diagonal matrix with the given real entries; length picks the dimension.
    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Outer product |v><v| of a state vector; length picks the dimension.
    pub fn from_outer_product(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        check_dim(dim)?;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(v[i] * v[j].conj());
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries.push(self.get(j, i).conj());
            }
        }
        Self {
            dim: self.dim,
            entries,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus of the difference, max |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparing matrices of different dimension");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Real parts of the diagonal.
    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }
}

/// Kronecker product of two 2x2 matrices in the fixed (source x medium)
/// index order, giving the 4x4 joint-space operator.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: a.dim(),
        });
    }
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: b.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.entries[(2 * i + k) * 4 + (2 * j + l)] = a.get(i, j) * b.get(k, l);
                }
            }
        }
    }
    Ok(out)
}

/// True iff max |U^H U - I| <= tol entrywise.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    let product = u
        .dagger()
        .mul(u)
        .expect("dagger preserves dimension");
    let identity = ComplexMatrix::identity(u.dim()).expect("dimension already validated");
    product.max_abs_diff(&identity) <= tol
}

/// Eigenvalues of the Hermitian part (M + M^H)/2, ascending.
///
/// Uses the real symmetric embedding [[X, -Y], [Y, X]] of X + iY and a cyclic
/// Jacobi sweep; each eigenvalue appears twice in the embedding, so adjacent
/// sorted pairs are averaged back into single values.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut embedded = vec![0.0; (2 * n) * (2 * n)];
    for i in 0..n {
        for j in 0..n {
            let h = 0.5 * (m.get(i, j) + m.get(j, i).conj());
            embedded[i * 2 * n + j] = h.re;
            embedded[(i + n) * 2 * n + (j + n)] = h.re;
            embedded[i * 2 * n + (j + n)] = -h.im;
            embedded[(i + n) * 2 * n + j] = h.im;
        }
    }
    let mut all = jacobi_eigenvalues(embedded, 2 * n);
    all.sort_by(|a, b| a.total_cmp(b));
    (0..n).map(|i| 0.5 * (all[2 * i] + all[2 * i + 1])).collect()
}

/// Cyclic Jacobi diagonalization of a real symmetric matrix (row-major).
fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().max(1e-300);
    for _ in 0..60 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off <= scale * 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (all within [`DENSITY_TOL`]). Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a matrix; see [`validate_density`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        validate_density(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Real parts of the diagonal: the basis-state populations.
    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.real_diagonal()
    }

    /// Tr(rho^2), which equals the squared entrywise norm for Hermitian rho.
    /// Equals 1 exactly for pure states and 1/dim for the maximally mixed one.
    pub fn purity(&self) -> f64 {
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues ascending; all lie within [`DENSITY_TOL`] of [0, 1].
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Checks the three density-matrix invariants and reports the first failure
/// together with its magnitude.
pub fn validate_density(matrix: ComplexMatrix) -> Result<DensityMatrix> {
    let n = matrix.dim();
    let mut hermitian_deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let dev = (matrix.get(i, j) - matrix.get(j, i).conj()).norm();
            hermitian_deviation = hermitian_deviation.max(dev);
        }
    }
    if hermitian_deviation > DENSITY_TOL {
        return Err(Error::NotHermitian {
            max_deviation: hermitian_deviation,
        });
    }
    let trace = matrix.trace();
    if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
        return Err(Error::NonUnitTrace { trace: trace.re });
    }
    let min_eigenvalue = hermitian_eigenvalues(&matrix)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -DENSITY_TOL {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(DensityMatrix { matrix })
}

/// U rho U^H. Rejects `u` unless it passes [`is_unitary`] at [`UNITARY_TOL`];
/// the result is re-validated as a density matrix.
pub fn conjugate_by_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: u.dim(),
        });
    }
    if !is_unitary(u, UNITARY_TOL) {
        let product = u.dagger().mul(u).expect("dagger preserves dimension");
        let identity = ComplexMatrix::identity(u.dim()).expect("dimension already validated");
        return Err(Error::NotUnitary {
            max_deviation: product.max_abs_diff(&identity),
        });
    }
    let rotated = u.mul(rho.matrix())?.mul(&u.dagger())?;
    validate_density(rotated)
}

/// Reduces a joint (4x4) state to the kept subsystem's 2x2 state.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    let joint = rho.matrix();
    let mut reduced = ComplexMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            let sum = match keep {
                // <i| Tr_B |j> sums over the medium index.
                Subsystem::A => joint.get(2 * i, 2 * j) + joint.get(2 * i + 1, 2 * j + 1),
                // <i| Tr_A |j> sums over the source index.
                Subsystem::B => joint.get(i, j) + joint.get(i + 2, j + 2),
            };
            reduced.entries[i * 2 + j] = sum;
        }
    }
    validate_density(reduced)
}
