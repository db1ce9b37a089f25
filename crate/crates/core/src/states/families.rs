//! Named state families used by the worked examples.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{validate, BipartiteDims, DensityMatrix};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn dims(m: usize, n: usize) -> BipartiteDims {
    BipartiteDims::new(m, n).expect("family dimensions are at least 2")
}

/// Product basis vector `|i⟩|j⟩` of a `d ⊗ d` system.
fn basis(d: usize, i: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    v[i * d + j] = real(1.0);
    v
}

fn combine(terms: &[(f64, Vec<Complex64>)]) -> Vec<Complex64> {
    let len = terms[0].1.len();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * *c;
        }
    }
    out
}

fn mixture(weighted: &[(f64, Vec<Complex64>)]) -> ComplexMatrix {
    let d = weighted[0].1.len();
    weighted
        .iter()
        .fold(ComplexMatrix::zeros(d, d), |acc, (w, v)| {
            acc.add(&ComplexMatrix::outer(v).scale(*w))
        })
}

fn check_range(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&x) {
        return Err(Error::input(format!(
            "{name} = {x} is outside [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// The four Bell states in the order Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
fn bell_states() -> [Vec<Complex64>; 4] {
    let b = |i, j| basis(2, i, j);
    let h = FRAC_1_SQRT_2;
    [
        combine(&[(h, b(0, 0)), (h, b(1, 1))]),
        combine(&[(h, b(0, 0)), (-h, b(1, 1))]),
        combine(&[(h, b(0, 1)), (h, b(1, 0))]),
        combine(&[(h, b(0, 1)), (-h, b(1, 0))]),
    ]
}

/// Two-qubit isotropic state `(1−f)/3·I + (4f−1)/3·|ψ⁺⟩⟨ψ⁺|`, `f ∈ [0, 1]`.
pub fn isotropic(f: f64) -> Result<DensityMatrix> {
    check_range("f", f, 0.0, 1.0)?;
    let [phi_plus, ..] = bell_states();
    let raw = ComplexMatrix::identity(4)
        .scale((1.0 - f) / 3.0)
        .add(&ComplexMatrix::outer(&phi_plus).scale((4.0 * f - 1.0) / 3.0));
    validate(raw, dims(2, 2))
}

/// The `q` at which the 4⊗4 family is invariant under partial transposition.
pub fn toth_ppt_point() -> f64 {
    (2f64.sqrt() - 1.0) / 2.0
}

/// The 4⊗4 family `p Σ_{i≤4} |ψᵢ⟩⟨ψᵢ| + q Σ_{i=5,6} |ψᵢ⟩⟨ψᵢ|` with `4p + 2q = 1`.
pub fn toth_family(q: f64) -> Result<DensityMatrix> {
    check_range("q", q, 0.0, 0.5)?;
    let p = (1.0 - 2.0 * q) / 4.0;
    let b = |i, j| basis(4, i, j);
    let h = FRAC_1_SQRT_2;
    let psi = [
        combine(&[(h, b(0, 1)), (h, b(2, 3))]),
        combine(&[(h, b(1, 0)), (h, b(3, 2))]),
        combine(&[(h, b(1, 1)), (h, b(2, 2))]),
        combine(&[(h, b(0, 0)), (-h, b(3, 3))]),
        combine(&[(0.5, b(0, 3)), (0.5, b(1, 2)), (h, b(2, 1))]),
        combine(&[(-0.5, b(0, 3)), (0.5, b(1, 2)), (h, b(3, 0))]),
    ];
    let weighted: Vec<(f64, Vec<Complex64>)> = psi
        .into_iter()
        .enumerate()
        .map(|(i, v)| (if i < 4 { p } else { q }, v))
        .collect();
    validate(mixture(&weighted), dims(4, 4))
}

/// Closed window `[(25 − √141)/50, (25 + √141)/100]` on which the 3⊗3
/// family is positive semidefinite.
pub fn garg_window() -> (f64, f64) {
    let r = 141f64.sqrt();
    ((25.0 - r) / 50.0, (25.0 + r) / 100.0)
}

/// The 3⊗3 NPT family ρ_a. Outside [`garg_window`] validation fails on positivity.
pub fn garg_family(a: f64) -> Result<DensityMatrix> {
    if !a.is_finite() {
        return Err(Error::input(format!("a = {a} is not finite")));
    }
    let off = -11.0 / 50.0;
    let mut raw = ComplexMatrix::zeros(9, 9);
    raw.set(0, 0, real((1.0 - a) / 2.0));
    raw.set(0, 8, real(off));
    raw.set(8, 0, real(off));
    raw.set(4, 4, real(0.5 - a));
    raw.set(4, 5, real(off));
    raw.set(5, 4, real(off));
    raw.set(5, 5, real(a));
    raw.set(8, 8, real(a / 2.0));
    validate(raw, dims(3, 3))
}

/// Two-parameter 2⊗2 family with diagonal `(5/8, 0, (s−1/4)/2, (1−s)/2)` and
/// corner entries `t/2`. `t = 0` is admitted as a separable control.
pub fn rudolph_family(s: f64, t: f64) -> Result<DensityMatrix> {
    if !(s > 0.25 && s <= 1.0) {
        return Err(Error::input(format!("s = {s} is outside (1/4, 1]")));
    }
    if !t.is_finite() {
        return Err(Error::input(format!("t = {t} is not finite")));
    }
    let mut raw = ComplexMatrix::from_diagonal(&[0.625, 0.0, (s - 0.25) / 2.0, (1.0 - s) / 2.0]);
    raw.set(0, 3, real(t / 2.0));
    raw.set(3, 0, real(t / 2.0));
    validate(raw, dims(2, 2))
}

/// Whether `(b, c, d)` satisfies one of the three admissibility conditions of
/// the locally filtered two-qubit form:
///
/// * C1: `−1 ≤ b < 1`, `c = −1`, `d = 0`
/// * C2: `b = 1`, `−1 ≤ c ≤ 1`, `d = 0`
/// * C3: `−1 ≤ b < 1`, `−1 < c ≤ b`, `|d| ≤ √((1−b)(1+c))`
pub fn filtered_admissible(b: f64, c: f64, d: f64) -> bool {
    let c1 = (-1.0..1.0).contains(&b) && c == -1.0 && d == 0.0;
    let c2 = b == 1.0 && (-1.0..=1.0).contains(&c) && d == 0.0;
    let c3 = (-1.0..1.0).contains(&b)
        && c > -1.0
        && c <= b
        && d.abs() <= ((1.0 - b) * (1.0 + c)).sqrt();
    c1 || c2 || c3
}

/// `(1/2)·[[1+c,0,0,d],[0,0,0,0],[0,0,b−c,0],[d,0,0,1−b]]`.
pub fn filtered_family(b: f64, c: f64, d: f64) -> Result<DensityMatrix> {
    if !filtered_admissible(b, c, d) {
        return Err(Error::validation(
            "psd",
            format!("(b, c, d) = ({b}, {c}, {d}) satisfies none of C1, C2, C3"),
        ));
    }
    let mut raw =
        ComplexMatrix::from_diagonal(&[(1.0 + c) / 2.0, 0.0, (b - c) / 2.0, (1.0 - b) / 2.0]);
    raw.set(0, 3, real(d / 2.0));
    raw.set(3, 0, real(d / 2.0));
    validate(raw, dims(2, 2))
}

/// Bell-diagonal state `Σ pᵢ |φᵢ⟩⟨φᵢ|` over (Φ⁺, Φ⁻, Ψ⁺, Ψ⁻).
pub fn bell_diagonal(p: [f64; 4]) -> Result<DensityMatrix> {
    if p.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::input(format!("Bell weights must be non-negative: {p:?}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > crate::tolerance::TRACE {
        return Err(Error::input(format!("Bell weights sum to {total}, expected 1")));
    }
    let weighted: Vec<(f64, Vec<Complex64>)> = p.into_iter().zip(bell_states()).collect();
    validate(mixture(&weighted), dims(2, 2))
}
