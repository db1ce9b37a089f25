//! Dense complex matrices and the handful of spectral routines the criteria
//! need. All matrices here are at most 16×16, so everything is dense.

use std::fmt;
use std::ops::Mul;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::tolerance;
use crate::{Error, Result};

/// A finite, dense, complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let m = ComplexMatrix(DMatrix::from_row_slice(rows, cols, &entries));
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a real-valued matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        ComplexMatrix(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    /// `|v⟩⟨v|` for a column vector `v`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.0[(i, j)] = z;
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn from_nalgebra(m: DMatrix<Complex64>) -> Result<Self> {
        let m = ComplexMatrix(m);
        m.check_finite()?;
        Ok(m)
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose())
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Self {
        ComplexMatrix(&self.0 + &other.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |H - H^†|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_finite(&self) -> Result<()> {
        match self
            .0
            .iter()
            .enumerate()
            .find(|(_, z)| !(z.re.is_finite() && z.im.is_finite()))
        {
            None => Ok(()),
            Some((k, _)) => {
                // nalgebra storage is column-major
                let (i, j) = (k % self.rows(), k / self.rows());
                Err(Error::input(format!("non-finite entry at ({i}, {j})")))
            }
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn require_finite(m: &ComplexMatrix) -> Result<()> {
    m.check_finite()
}

fn require_hermitian(h: &ComplexMatrix) -> Result<()> {
    require_finite(h)?;
    if !h.is_square() {
        return Err(Error::input(format!(
            "expected a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermiticity_defect();
    if defect > tolerance::HERMITICITY {
        return Err(Error::input(format!(
            "matrix is not Hermitian (max |H - H^†| = {defect:e})"
        )));
    }
    Ok(())
}

fn sort_descending(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}

/// Singular values in descending order; `min(rows, cols)` of them.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    require_finite(m)?;
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(Vec::new());
    }
    let mut sv: Vec<f64> = m.0.singular_values().iter().map(|s| s.max(0.0)).collect();
    sort_descending(&mut sv);
    Ok(sv)
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn eigvals_hermitian(h: &ComplexMatrix) -> Result<Vec<f64>> {
    require_hermitian(h)?;
    // symmetrize so round-off in the upper triangle is not silently dropped
    let sym = (&h.0 + h.0.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    sort_descending(&mut ev);
    Ok(ev)
}

/// `‖M‖₁`, the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// `[tr H, tr H², …, tr H^K]` by repeated multiplication.
pub fn power_traces(h: &ComplexMatrix, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::input("moment order must start at 1"));
    }
    require_hermitian(h)?;
    let mut out = Vec::with_capacity(k);
    let mut power = h.clone();
    out.push(power.trace().re);
    for _ in 1..k {
        power = &power * h;
        out.push(power.trace().re);
    }
    Ok(out)
}

/// Number of singular values above `rel_tol · σ_max`; zero for the zero matrix.
pub fn numerical_rank(m: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0) {
        return Err(Error::input(format!("rank tolerance must be positive, got {rel_tol}")));
    }
    let sv = singular_values(m)?;
    Ok(rank_of_spectrum(&sv, rel_tol))
}

/// Rank of an already-sorted singular spectrum.
pub(crate) fn rank_of_spectrum(sv: &[f64], rel_tol: f64) -> usize {
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > rel_tol * max).count(),
        _ => 0,
    }
}
