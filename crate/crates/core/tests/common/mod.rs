//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rmoment::linalg::ComplexMatrix;

/// Coefficients `D_1..D_k` of `Π (x − λ_i) = x^n + D_1 x^{n−1} + …` by
/// direct polynomial multiplication.
pub fn char_poly_coefficients(eigs: &[f64], k: usize) -> Vec<f64> {
    // coeffs[j] multiplies x^{n−j}
    let mut coeffs = vec![1.0];
    for &l in eigs {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += c;
            next[j + 1] -= c * l;
        }
        coeffs = next;
    }
    (1..=k).map(|i| coeffs.get(i).copied().unwrap_or(0.0)).collect()
}

/// `D_i = (−1)^i / i! · det M_i` where `M_i` has first row `T_1..T_i` and
/// row `r` holds `r` on the subdiagonal and `T_{c−r+1}` for `c ≥ r`.
pub fn determinant_form(t: &[f64], i: usize) -> f64 {
    let m = DMatrix::from_fn(i, i, |r, c| {
        if r == 0 {
            t[c]
        } else if c + 1 == r {
            r as f64
        } else if c >= r {
            t[c - r]
        } else {
            0.0
        }
    });
    let fact: f64 = (1..=i).map(|x| x as f64).product();
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * m.determinant() / fact
}

/// Closed-form largest root of `T1 x³ − 2T2 x² + T3 x + T2² − T1 T3` using
/// principal complex cube roots.
pub fn upper_bound_closed_form(t1: f64, t2: f64, t3: f64) -> f64 {
    let p = -27.0 * t1 * t1 * t2 * t2 + 16.0 * t2.powi(3) + 27.0 * t1.powi(3) * t3
        - 18.0 * t1 * t2 * t3;
    let r = 4.0 * t2 * t2 - 3.0 * t1 * t3;
    let q = Complex64::new(p * p - 4.0 * r.powi(3), 0.0);
    let w = (Complex64::new(p, 0.0) + q.sqrt()).powf(1.0 / 3.0);
    let c2 = 2f64.powf(1.0 / 3.0);
    let g = (Complex64::new(4.0 * t2, 0.0) + 2.0 * c2 * r / w + c2 * c2 * w) / (6.0 * t1);
    g.re
}

pub fn complex_determinant(m: &ComplexMatrix) -> Complex64 {
    m.as_nalgebra().clone().determinant()
}
