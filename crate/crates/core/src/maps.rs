//! Realignment and partial transposition.
//!
//! View ρ as an `m × m` grid of `n × n` blocks `Z_ab`. Realignment stacks the
//! row-major flattening of each block as one row, in block order `a·m + b`:
//!
//! ```text
//! (ρ^R)_{a·m+b, i·n+j} = ρ_{a·n+i, b·n+j}
//! ```
//!
//! Partial transposition on B transposes every block in place; on A it swaps
//! the blocks themselves.

use crate::linalg::ComplexMatrix;
use crate::states::{BipartiteDims, DensityMatrix};

/// Which map produced a [`RearrangedMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Realign,
    PartialTransposeA,
    PartialTransposeB,
}

impl Origin {
    pub fn as_str(&self) -> &'static str {
        match self {
            Origin::Realign => "realign",
            Origin::PartialTransposeA => "partial-transpose-A",
            Origin::PartialTransposeB => "partial-transpose-B",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Subsystem {
    A,
    #[default]
    B,
}

/// Output of a rearrangement, tagged with its origin and source dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangedMatrix {
    origin: Origin,
    dims: BipartiteDims,
    mat: ComplexMatrix,
}

impl RearrangedMatrix {
    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn source_dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// JSON dump in the state-file layout plus an `"origin"` field.
    pub fn to_json(&self) -> String {
        crate::states::matrix_to_json(self.dims, Some(self.origin.as_str()), &self.mat)
    }
}

/// Realignment of a raw `mn × mn` matrix; `m²× n²` result.
pub fn realign_matrix(rho: &ComplexMatrix, dims: BipartiteDims) -> ComplexMatrix {
    let (m, n) = (dims.m(), dims.n());
    assert_eq!(rho.rows(), m * n, "matrix does not match dims {dims}");
    let mut out = ComplexMatrix::zeros(m * m, n * n);
    for a in 0..m {
        for b in 0..m {
            for i in 0..n {
                for j in 0..n {
                    out.set(a * m + b, i * n + j, rho.get(a * n + i, b * n + j));
                }
            }
        }
    }
    out
}

/// Partial transpose of a raw `mn × mn` matrix.
pub fn partial_transpose_matrix(
    rho: &ComplexMatrix,
    dims: BipartiteDims,
    subsystem: Subsystem,
) -> ComplexMatrix {
    let (m, n) = (dims.m(), dims.n());
    assert_eq!(rho.rows(), m * n, "matrix does not match dims {dims}");
    let mut out = ComplexMatrix::zeros(m * n, m * n);
    for a in 0..m {
        for b in 0..m {
            for i in 0..n {
                for j in 0..n {
                    let src = match subsystem {
                        Subsystem::B => rho.get(a * n + j, b * n + i),
                        Subsystem::A => rho.get(b * n + i, a * n + j),
                    };
                    out.set(a * n + i, b * n + j, src);
                }
            }
        }
    }
    out
}

pub fn realign(rho: &DensityMatrix) -> RearrangedMatrix {
    RearrangedMatrix {
        origin: Origin::Realign,
        dims: rho.dims(),
        mat: realign_matrix(rho.matrix(), rho.dims()),
    }
}

pub fn partial_transpose(rho: &DensityMatrix, subsystem: Subsystem) -> RearrangedMatrix {
    let origin = match subsystem {
        Subsystem::A => Origin::PartialTransposeA,
        Subsystem::B => Origin::PartialTransposeB,
    };
    RearrangedMatrix {
        origin,
        dims: rho.dims(),
        mat: partial_transpose_matrix(rho.matrix(), rho.dims(), subsystem),
    }
}
