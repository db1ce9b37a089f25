//! Moment sequences and the quantities derived from them.
//!
//! * realigned moments `T_k = tr((ρ^R† ρ^R)^k)`
//! * partial-transpose moments `p_k = tr((ρ^τ)^k)`
//! * realignment moments `r_k = Σ σ_i(ρ^R)^k`
//! * Newton coefficients `D_i`, the signed elementary symmetric polynomials of
//!   the eigenvalues of `ρ^R† ρ^R`, i.e. the coefficients of its
//!   characteristic polynomial `λ^r + D_1 λ^{r-1} + … + D_r`
//! * lower and upper bounds on the largest eigenvalue from `T_1, T_2, T_3`

use crate::linalg::{power_traces, singular_values};
use crate::maps::{partial_transpose, realign, Subsystem};
use crate::states::{BipartiteDims, DensityMatrix};
use crate::tolerance;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    /// `T_k` of the Gram matrix of ρ^R.
    Realigned,
    /// `p_k` of ρ^τ.
    PartialTranspose,
    /// `r_k = Σ σ_i^k` of ρ^R.
    Zhang,
}

/// Power-sum sequence indexed from `k = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    kind: MomentKind,
    values: Vec<f64>,
    dims: BipartiteDims,
}

impl MomentSet {
    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    /// All moments; `values()[k - 1]` is the k-th.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The k-th moment, `k ≥ 1`.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `D_1, …, D_k` for a chosen order `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonCoefficients {
    values: Vec<f64>,
}

impl NewtonCoefficients {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `D_i` for `1 ≤ i ≤ order`.
    pub fn get(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|j| self.values.get(j)).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `D_k` at the full order.
    pub fn last(&self) -> f64 {
        *self.values.last().expect("order is at least 1")
    }
}

fn require_order(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::input("moment order must start at 1"));
    }
    Ok(())
}

/// Gram matrix of the realigned state on its smaller side: `ρ^R†ρ^R`
/// (`n² × n²`) when `n ≤ m`, otherwise `ρ^R ρ^R†`. Both share the non-zero
/// spectrum.
pub fn realigned_gram(rho: &DensityMatrix) -> crate::linalg::ComplexMatrix {
    let r = realign(rho).into_matrix();
    let dims = rho.dims();
    if dims.n() <= dims.m() {
        &r.adjoint() * &r
    } else {
        &r * &r.adjoint()
    }
}

/// `T_1, …, T_K`.
pub fn realigned_moments(rho: &DensityMatrix, k: usize) -> Result<MomentSet> {
    require_order(k)?;
    let gram = realigned_gram(rho);
    // Gram products carry round-off asymmetry of order 1e-17
    let gram = gram.add(&gram.adjoint()).scale(0.5);
    Ok(MomentSet {
        kind: MomentKind::Realigned,
        values: power_traces(&gram, k)?,
        dims: rho.dims(),
    })
}

/// `p_1, …, p_K` of the partial transpose on B.
pub fn pt_moments(rho: &DensityMatrix, k: usize) -> Result<MomentSet> {
    require_order(k)?;
    let pt = partial_transpose(rho, Subsystem::B);
    Ok(MomentSet {
        kind: MomentKind::PartialTranspose,
        values: power_traces(pt.matrix(), k)?,
        dims: rho.dims(),
    })
}

/// `r_1, …, r_K` from the singular spectrum of ρ^R.
pub fn zhang_moments(rho: &DensityMatrix, k: usize) -> Result<MomentSet> {
    require_order(k)?;
    let sv = singular_values(realign(rho).matrix())?;
    Ok(MomentSet {
        kind: MomentKind::Zhang,
        values: zhang_from_spectrum(&sv, k),
        dims: rho.dims(),
    })
}

pub(crate) fn zhang_from_spectrum(sv: &[f64], k: usize) -> Vec<f64> {
    (1..=k as i32)
        .map(|p| sv.iter().map(|s| s.powi(p)).sum())
        .collect()
}

/// `D_1, …, D_k` from power sums by Newton's identities:
/// `e_0 = 1`, `e_i = (1/i) Σ_{j=1..i} (−1)^{j−1} e_{i−j} T_j`, `D_i = (−1)^i e_i`.
pub fn newton_coefficients(power_sums: &[f64], k: usize) -> Result<NewtonCoefficients> {
    require_order(k)?;
    if k > power_sums.len() {
        return Err(Error::input(format!(
            "order {k} needs {k} moments, only {} available",
            power_sums.len()
        )));
    }
    let mut e = Vec::with_capacity(k + 1);
    e.push(1.0);
    for i in 1..=k {
        let mut acc = 0.0;
        for j in 1..=i {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[i - j] * power_sums[j - 1];
        }
        e.push(acc / i as f64);
    }
    let values = e
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, ei)| if i % 2 == 0 { ei } else { -ei })
        .collect();
    Ok(NewtonCoefficients { values })
}

/// Lower bound on the largest eigenvalue of an `n × n` matrix with real
/// spectrum, from its first three power traces:
///
/// ```text
/// f = T1/n + (b + √(b² + 4a³)) / (2a)
/// a = T2/n − (T1/n)²,   b = (n² T3 − 3n T2 T1 + 2 T1³) / n³
/// ```
///
/// `a` is the spectral variance and `b` the third central moment. When the
/// spectrum is flat (`a = 0`) the bound is the mean `T1/n`.
pub fn lambda_max_lower(t1: f64, t2: f64, t3: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::input("matrix size must be positive"));
    }
    let nf = n as f64;
    let mean = t1 / nf;
    let a = t2 / nf - mean * mean;
    if a < -tolerance::MOMENT_VARIANCE_SLACK {
        return Err(Error::numerical(format!(
            "negative spectral variance {a:e} from T1 = {t1}, T2 = {t2}"
        )));
    }
    // relative cutoff: below it a and b are rounding noise
    if a <= 1e-12 * (t2 / nf).abs() || a <= 0.0 {
        return Ok(mean);
    }
    let b = (nf * nf * t3 - 3.0 * nf * t2 * t1 + 2.0 * t1.powi(3)) / nf.powi(3);
    let root = (b * b + 4.0 * a.powi(3)).sqrt();
    // (b + root)/(2a), rationalized when b < 0 to avoid cancellation
    let excess = if b >= 0.0 {
        (b + root) / (2.0 * a)
    } else {
        2.0 * a * a / (root - b)
    };
    Ok(mean + excess)
}

/// Upper bound on the largest eigenvalue of a PSD matrix: the largest real
/// root of `T1 x³ − 2 T2 x² + T3 x + T2² − T1 T3 = 0`.
pub fn lambda_max_upper(t1: f64, t2: f64, t3: f64) -> Result<f64> {
    if !(t1 > 1e-300) || !t2.is_finite() || !t3.is_finite() {
        return Err(Error::numerical(format!(
            "degenerate cubic: T1 = {t1}, T2 = {t2}, T3 = {t3}"
        )));
    }
    Ok(largest_real_root(
        -2.0 * t2 / t1,
        t3 / t1,
        (t2 * t2 - t1 * t3) / t1,
    ))
}

/// Largest real root of the monic cubic `x³ + a x² + b x + c`.
///
/// Cardano (one real root) or the trigonometric form (three real roots)
/// gives the estimate. When the local minimum sits at zero within rounding,
/// the top root is a near-double root that those formulas resolve only to
/// `√ε`; it is then taken from the larger critical point, which the true
/// root never lies below.
fn largest_real_root(a: f64, b: f64, c: f64) -> f64 {
    let poly = |x: f64| ((x + a) * x + b) * x + c;
    let slope = |x: f64| (3.0 * x + 2.0 * a) * x + b;
    // bounded Newton: near a double root the slope vanishes and a free step
    // can land on a different root
    let reach = 1e-6 * (a.abs() + b.abs().sqrt() + c.abs().cbrt());
    let polish = |start: f64| {
        let mut x = start;
        for _ in 0..8 {
            let d = slope(x);
            if d == 0.0 {
                break;
            }
            let next = x - poly(x) / d;
            if !(poly(next).abs() < poly(x).abs()) || (next - start).abs() > reach {
                break;
            }
            x = next;
        }
        x
    };
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let y = if disc >= 0.0 {
        let s = disc.sqrt();
        (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt()
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        m * (arg.acos() / 3.0).cos()
    };
    let mut best = polish(y - shift);

    let crit_disc = a * a - 3.0 * b;
    if crit_disc >= 0.0 {
        let root = crit_disc.sqrt();
        let xc = if a > 0.0 { -b / (a + root) } else { (root - a) / 3.0 };
        let pc = poly(xc);
        let noise = 16.0
            * f64::EPSILON
            * (xc.abs().powi(3) + a.abs() * xc * xc + b.abs() * xc.abs() + c.abs());
        if pc.abs() <= noise {
            let curvature = 6.0 * xc + 2.0 * a;
            let guess = if curvature > 0.0 {
                xc + (-2.0 * pc / curvature).max(0.0).sqrt()
            } else {
                xc
            };
            best = best.max(polish(guess).max(xc));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{isotropic, rudolph_family};

    #[test]
    fn newton_small_spectrum() {
        let d = newton_coefficients(&[3.0, 5.0], 2).unwrap();
        assert_eq!(d.values(), &[-3.0, 2.0]);
        assert!(newton_coefficients(&[3.0], 2).is_err());
        assert!(newton_coefficients(&[3.0], 0).is_err());
    }

    #[test]
    fn newton_matches_low_order_closed_forms() {
        let t = [0.7, 0.3, 0.2, 0.05];
        let d = newton_coefficients(&t, 3).unwrap();
        assert!((d.get(1).unwrap() + t[0]).abs() < 1e-15);
        assert!((d.get(2).unwrap() - (t[0] * t[0] - t[1]) / 2.0).abs() < 1e-15);
        let d3 = -(t[0].powi(3) - 3.0 * t[0] * t[1] + 2.0 * t[2]) / 6.0;
        assert!((d.get(3).unwrap() - d3).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_first_moment() {
        let t = realigned_moments(&isotropic(0.25).unwrap(), 1).unwrap();
        assert!((t.get(1).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(t.kind(), MomentKind::Realigned);
    }

    #[test]
    fn closed_form_first_moments() {
        for f in [0.0, 0.3, 0.61, 1.0] {
            let t1 = realigned_moments(&isotropic(f).unwrap(), 1).unwrap().get(1).unwrap();
            assert!((t1 - (1.0 - 2.0 * f + 4.0 * f * f) / 3.0).abs() < 1e-12);
        }
        let (s, t) = (0.5, 0.25);
        let t1 = realigned_moments(&rudolph_family(s, t).unwrap(), 1).unwrap().get(1).unwrap();
        assert!((t1 - (21.0 - 20.0 * s + 16.0 * (s * s + t * t)) / 32.0).abs() < 1e-12);
    }

    #[test]
    fn bell_pt_moments() {
        let p = pt_moments(&isotropic(1.0).unwrap(), 3).unwrap();
        for (got, want) in p.values().iter().zip([1.0, 1.0, 0.25]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn zhang_flat_spectrum() {
        let r = zhang_from_spectrum(&[0.5, 0.5], 3);
        assert_eq!(r, vec![1.0, 0.5, 0.25]);
        assert_eq!(r[1] * r[1] - r[2], 0.0);
    }

    #[test]
    fn order_zero_rejected() {
        let rho = isotropic(0.5).unwrap();
        assert!(realigned_moments(&rho, 0).is_err());
        assert!(pt_moments(&rho, 0).is_err());
        assert!(zhang_moments(&rho, 0).is_err());
    }

    #[test]
    fn lower_bound_tight_cases() {
        // diag(3, 1): a = 1, b = 0
        assert!((lambda_max_lower(4.0, 10.0, 28.0, 2).unwrap() - 3.0).abs() < 1e-14);
        let c: f64 = 0.3;
        let f = lambda_max_lower(3.0 * c, 3.0 * c * c, 3.0 * c.powi(3), 3).unwrap();
        assert!((f - c).abs() < 1e-15);
        assert!(lambda_max_lower(1.0, 0.1, 0.01, 4).is_err());
    }

    #[test]
    fn upper_bound_tight_cases() {
        assert!((lambda_max_upper(4.0, 10.0, 28.0).unwrap() - 3.0).abs() < 1e-12);
        let c: f64 = 0.3;
        let g = lambda_max_upper(2.0 * c, 2.0 * c * c, 2.0 * c.powi(3)).unwrap();
        assert!((g - c).abs() < 1e-7, "g = {g}");
        assert!(lambda_max_upper(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn cubic_single_real_root() {
        // x³ + x + 10 = (x + 2)(x² − 2x + 5)
        assert!((largest_real_root(0.0, 1.0, 10.0) + 2.0).abs() < 1e-14);
    }

    #[test]
    fn upper_bound_of_rank_one_spectrum() {
        // cubic x(x − λ)² has a double root at λ
        for l in [0.3754695900811119, 0.623186344960675, 1.0] {
            let g = lambda_max_upper(l, l * l, l * l * l).unwrap();
            assert!((g - l).abs() < 1e-7, "{l}: {g}");
        }
    }
}
