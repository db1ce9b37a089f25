//! Seeded random states.
//!
//! Every sampler draws from a ChaCha20 stream seeded with
//! `SeedableRng::seed_from_u64(seed)`; Gaussian entries come from
//! `rand_distr::StandardNormal` and simplex weights from normalized `Exp1`
//! draws. Same seed, same matrix, bit for bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{validate, BipartiteDims, DensityMatrix};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

fn gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_unit_vector(rng: &mut ChaCha20Rng, d: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `G·G† / tr(G·G†)` for an `mn × rank` complex Ginibre matrix `G`.
pub fn random_density(dims: BipartiteDims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::input(format!("rank must be in 1..={d}, got {rank}")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    // filled row by row so the draw order is independent of storage layout
    let entries: Vec<Complex64> = (0..d * rank).map(|_| gaussian(&mut rng)).collect();
    let g = DMatrix::from_row_slice(d, rank, &entries);
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let raw = ComplexMatrix::from_nalgebra(w.map(|z| z / tr))?;
    validate(hermitize(raw), dims)
}

/// `Σᵢ wᵢ |aᵢ⟩⟨aᵢ| ⊗ |bᵢ⟩⟨bᵢ|` with random local pure states and random
/// simplex weights. Separable by construction.
pub fn random_separable(dims: BipartiteDims, terms: usize, seed: u64) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::input("a separable mixture needs at least one term"));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let raw_weights: Vec<f64> = (0..terms).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw_weights.iter().sum();
    let d = dims.total();
    let mut acc = ComplexMatrix::zeros(d, d);
    for w in raw_weights {
        let a = random_unit_vector(&mut rng, dims.m());
        let b = random_unit_vector(&mut rng, dims.n());
        acc = acc.add(&ComplexMatrix::outer(&kron(&a, &b)).scale(w / total));
    }
    validate(hermitize(acc), dims)
}

/// `(H + H†)/2`, removing round-off asymmetry from products.
fn hermitize(h: ComplexMatrix) -> ComplexMatrix {
    h.add(&h.adjoint()).scale(0.5)
}
