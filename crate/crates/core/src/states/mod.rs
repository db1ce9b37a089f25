//! Bipartite density matrices: validation, the named state families, seeded
//! random sampling and the on-disk state format.
//!
//! Basis convention: `|i⟩_A ⊗ |j⟩_B` sits at index `i·n + j`.

mod families;
mod io;
mod random;

pub use families::{
    bell_diagonal, filtered_admissible, filtered_family, garg_family, garg_window, isotropic,
    rudolph_family, toth_family, toth_ppt_point,
};
pub use io::{load_state, matrix_to_json, parse_state, save_state, state_to_json};
pub use random::{random_density, random_separable};

use crate::linalg::{eigvals_hermitian, ComplexMatrix};
use crate::tolerance;
use crate::{Error, Result};

/// Local dimensions `(m, n)` of subsystems A and B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    m: usize,
    n: usize,
}

impl BipartiteDims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::input(format!(
                "subsystem dimensions must be at least 2, got {m}x{n}"
            )));
        }
        Ok(BipartiteDims { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total dimension `m·n`.
    pub fn total(&self) -> usize {
        self.m * self.n
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

impl std::str::FromStr for BipartiteDims {
    type Err = Error;

    /// Parses `"<m>x<n>"`.
    fn from_str(s: &str) -> Result<Self> {
        let (m, n) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::input(format!("dims must look like 2x3, got '{s}'")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("bad dimension '{t}' in '{s}'")))
        };
        BipartiteDims::new(parse(m)?, parse(n)?)
    }
}

/// A validated bipartite state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.frobenius_norm_sq()
    }

    /// Smallest eigenvalue of ρ.
    pub fn min_eigenvalue(&self) -> f64 {
        eigvals_hermitian(&self.mat)
            .expect("validated state is Hermitian")
            .last()
            .copied()
            .unwrap_or(0.0)
    }
}

/// Checks every density-matrix invariant, naming the first one violated.
pub fn validate(raw: ComplexMatrix, dims: BipartiteDims) -> Result<DensityMatrix> {
    let d = dims.total();
    if raw.rows() != d || raw.cols() != d {
        return Err(Error::validation(
            "shape",
            format!(
                "dims {dims} need a {d}x{d} matrix, got {}x{}",
                raw.rows(),
                raw.cols()
            ),
        ));
    }
    let mut worst = (0.0_f64, 0, 0);
    for i in 0..d {
        for j in i..d {
            let defect = (raw.get(i, j) - raw.get(j, i).conj()).norm();
            if defect > worst.0 {
                worst = (defect, i, j);
            }
        }
    }
    if worst.0 > tolerance::HERMITICITY {
        return Err(Error::validation(
            "hermitian",
            format!(
                "entries ({}, {}) and ({}, {}) are not conjugate (defect {:e})",
                worst.1, worst.2, worst.2, worst.1, worst.0
            ),
        ));
    }
    let tr = raw.trace();
    if (tr.re - 1.0).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
        return Err(Error::validation(
            "trace",
            format!("trace is {} + {}i, expected 1", tr.re, tr.im),
        ));
    }
    let min_eig = eigvals_hermitian(&raw)?.last().copied().unwrap_or(0.0);
    if min_eig < -tolerance::PSD_SLACK {
        return Err(Error::validation(
            "psd",
            format!("minimum eigenvalue {min_eig:e} is negative"),
        ));
    }
    Ok(DensityMatrix { dims, mat: raw })
}
