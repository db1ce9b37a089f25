//! Separability criteria as scalar detectors.
//!
//! Every criterion is a necessary condition for separability; a violation
//! certifies entanglement, a non-violation says nothing. Two verdict shapes:
//!
//! * inequality criteria (`r1`, `r2`, `p3ppt`, `d3`, `p3oppt`, `zhang`,
//!   `ccnr`) detect when `value > +verdict`;
//! * spectral criteria (`ppt`, `hankel`) report a minimum eigenvalue and
//!   detect when `value < −verdict`.

use std::fmt;
use std::str::FromStr;

use crate::linalg::{eigvals_hermitian, rank_of_spectrum, singular_values, ComplexMatrix};
use crate::maps::{partial_transpose, realign, Subsystem};
use crate::moments::{
    lambda_max_lower, lambda_max_upper, newton_coefficients, pt_moments, realigned_moments,
    zhang_from_spectrum,
};
use crate::states::DensityMatrix;
use crate::tolerance::{HankelMode, Tolerances};
use crate::{Error, Result};

/// Slack under which small negative radicands are treated as round-off.
const RADICAND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriterionId {
    /// General realigned-moment criterion `k(k−1) D_k^{1/k} + T_1 − 1 ≤ 0`.
    R1,
    /// Two-qubit realigned-moment criterion from `T_1, T_2, T_3`.
    R2,
    /// `p_2² − p_3 p_1 ≤ 0`.
    P3Ppt,
    /// `(3/2) p_1 p_2 − (1/2) p_1³ − p_3 ≤ 0`.
    D3,
    /// Optimal third-moment PPT condition.
    P3Oppt,
    /// `r_2² − r_3 ≤ 0`.
    Zhang,
    /// Positivity of Hankel matrices of realignment moments.
    Hankel,
    /// Positivity of the partial transpose.
    Ppt,
    /// `‖ρ^R‖₁ ≤ 1`.
    Ccnr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Inequality,
    Spectral,
}

impl CriterionId {
    pub const ALL: [CriterionId; 9] = [
        CriterionId::R1,
        CriterionId::R2,
        CriterionId::P3Ppt,
        CriterionId::D3,
        CriterionId::P3Oppt,
        CriterionId::Zhang,
        CriterionId::Hankel,
        CriterionId::Ppt,
        CriterionId::Ccnr,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::R1 => "r1",
            CriterionId::R2 => "r2",
            CriterionId::P3Ppt => "p3ppt",
            CriterionId::D3 => "d3",
            CriterionId::P3Oppt => "p3oppt",
            CriterionId::Zhang => "zhang",
            CriterionId::Hankel => "hankel",
            CriterionId::Ppt => "ppt",
            CriterionId::Ccnr => "ccnr",
        }
    }

    pub fn verdict_kind(&self) -> VerdictKind {
        match self {
            CriterionId::Ppt | CriterionId::Hankel => VerdictKind::Spectral,
            _ => VerdictKind::Inequality,
        }
    }

    /// Applies the verdict threshold to a criterion value. Values exactly at
    /// the threshold do not detect.
    pub fn detects(&self, value: f64, verdict_tol: f64) -> bool {
        match self.verdict_kind() {
            VerdictKind::Inequality => value > verdict_tol,
            VerdictKind::Spectral => value < -verdict_tol,
        }
    }

    /// Parses `all` or a comma-separated id list, keeping request order.
    pub fn parse_list(s: &str) -> Result<Vec<CriterionId>> {
        if s.trim() == "all" {
            return Ok(CriterionId::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown criterion '{s}'")))
    }
}

/// Outcome of one criterion on one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: CriterionId,
    pub value: f64,
    pub detects: bool,
    /// Rank `k` used by `r1`.
    pub rank: Option<usize>,
    /// Intermediate quantities (moments, bounds) by name.
    pub details: Vec<(&'static str, f64)>,
}

impl CriterionResult {
    fn new(id: CriterionId, value: f64, tol: &Tolerances) -> Self {
        CriterionResult {
            id,
            value,
            detects: id.detects(value, tol.verdict),
            rank: None,
            details: Vec::new(),
        }
    }

    fn with(mut self, details: &[(&'static str, f64)]) -> Self {
        self.details.extend_from_slice(details);
        self
    }

    pub fn detail(&self, name: &str) -> Option<f64> {
        self.details.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

/// Runs one criterion.
pub fn evaluate(id: CriterionId, rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    match id {
        CriterionId::R1 => r_moment_general(rho, tol),
        CriterionId::R2 => r_moment_two_qubit(rho, tol),
        CriterionId::P3Ppt => p3_ppt(rho, tol),
        CriterionId::D3 => d3(rho, tol),
        CriterionId::P3Oppt => p3_oppt(rho, tol),
        CriterionId::Zhang => zhang_l4(rho, tol),
        CriterionId::Hankel => hankel_check(rho, None, tol),
        CriterionId::Ppt => ppt_check(rho, tol),
        CriterionId::Ccnr => ccnr_check(rho, tol),
    }
}

/// `R₁ = k(k−1) D_k^{1/k} + T_1 − 1` with `k` the numerical rank of ρ^R.
///
/// `D_k^{1/k}` is taken in log space from the non-zero singular values; the
/// Newton-identity `D_k` from `T_1..T_k` is reported alongside as
/// `newton_dk` for cross-checking.
pub fn r_moment_general(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let sv = singular_values(realign(rho).matrix())?;
    let k = rank_of_spectrum(&sv, tol.rank_rel);
    let t = realigned_moments(rho, k.max(1))?;
    let t1 = t.values()[0];
    let (dk_root, dk_svd, newton_dk) = if k == 0 {
        (0.0, 0.0, 0.0)
    } else {
        let log_sum: f64 = sv[..k].iter().map(|s| 2.0 * s.ln()).sum();
        let newton = newton_coefficients(t.values(), k)?.last();
        ((log_sum / k as f64).exp(), log_sum.exp(), newton)
    };
    let kf = k as f64;
    let value = kf * (kf - 1.0) * dk_root + t1 - 1.0;
    let mut out = CriterionResult::new(CriterionId::R1, value, tol).with(&[
        ("t1", t1),
        ("dk", dk_svd),
        ("dk_root", dk_root),
        ("newton_dk", newton_dk),
        ("trace_norm", sv.iter().sum()),
    ]);
    out.rank = Some(k);
    Ok(out)
}

fn clamp_radicand(x: f64, what: &str) -> Result<f64> {
    if x < -RADICAND_SLACK {
        return Err(Error::numerical(format!("{what} is negative ({x:e})")));
    }
    Ok(x.max(0.0))
}

/// `√x` for a non-negative `x` computed by cancellation among terms of total
/// size `scale`. Values inside the rounding floor count as zero, where the
/// square root would otherwise turn 1e-16 noise into 1e-8.
fn sqrt_above_noise(x: f64, scale: f64) -> f64 {
    if x <= 64.0 * f64::EPSILON * scale.abs() {
        0.0
    } else {
        x.sqrt()
    }
}

/// Two-qubit criterion `R₂ = √(3 X^{2/3} + 2Y − 2T_1) − 1` with
///
/// ```text
/// X = f·√(2√D_2 + T_1) + √|D_3|
/// Y = T_1 − g + √(max(0, D_2 − g·T_1 + f²))
/// ```
///
/// where `f ≤ σ_max² ≤ g` are the moment bounds on the largest eigenvalue of
/// `ρ^R†ρ^R`.
pub fn r_moment_two_qubit(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let dims = rho.dims();
    if dims.m() != 2 || dims.n() != 2 {
        return Err(Error::input(format!(
            "r2 applies to 2x2 systems only, got {dims}"
        )));
    }
    let t = realigned_moments(rho, 3)?;
    let [t1, t2, t3] = [t.values()[0], t.values()[1], t.values()[2]];
    let d = newton_coefficients(t.values(), 3)?;
    let d2 = clamp_radicand(d.values()[1], "D2")?;
    let d3 = d.values()[2];
    let f = lambda_max_lower(t1, t2, t3, 4)?;
    let g = lambda_max_upper(t1, t2, t3)?;
    let root_d2 = sqrt_above_noise(d2, t1 * t1 + t2);
    let root_d3 = sqrt_above_noise(d3.abs(), t1.powi(3) + t1 * t2 + t3);
    let x = f * (2.0 * root_d2 + t1).sqrt() + root_d3;
    // the inner radicand only lower-bounds a non-negative sum, so 0 is valid
    let inner = d2 - g * t1 + f * f;
    let y = t1 - g + sqrt_above_noise(inner.max(0.0), d2 + g * t1 + f * f);
    let radicand = clamp_radicand(3.0 * x.powf(2.0 / 3.0) + 2.0 * y - 2.0 * t1, "R2 radicand")?;
    let value = radicand.sqrt() - 1.0;
    Ok(CriterionResult::new(CriterionId::R2, value, tol).with(&[
        ("t1", t1),
        ("t2", t2),
        ("t3", t3),
        ("d2", d2),
        ("d3", d3),
        ("lambda_lb", f),
        ("lambda_ub", g),
        ("x", x),
        ("y", y),
    ]))
}

fn first_pt_moments(rho: &DensityMatrix) -> Result<(f64, f64, f64)> {
    let p = pt_moments(rho, 3)?;
    Ok((p.values()[0], p.values()[1], p.values()[2]))
}

/// `L₁ = p_2² − p_3 p_1`.
pub fn p3_ppt(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let (p1, p2, p3) = first_pt_moments(rho)?;
    let value = p2 * p2 - p3 * p1;
    Ok(CriterionResult::new(CriterionId::P3Ppt, value, tol).with(&[("p1", p1), ("p2", p2), ("p3", p3)]))
}

/// `L₂ = (3/2) p_1 p_2 − (1/2) p_1³ − p_3`.
pub fn d3(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let (p1, p2, p3) = first_pt_moments(rho)?;
    let value = 1.5 * p1 * p2 - 0.5 * p1.powi(3) - p3;
    Ok(CriterionResult::new(CriterionId::D3, value, tol).with(&[("p1", p1), ("p2", p2), ("p3", p3)]))
}

/// `L₃ = μ x³ + (1 − μ x)³ − p_3` with `μ = ⌊1/p_2⌋` and
/// `x = (μ + √(μ[p_2(μ+1) − 1])) / (μ(μ+1))`: the smallest `p_3` reachable by
/// a non-negative unit-trace spectrum with purity `p_2`.
pub fn p3_oppt(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let (_, p2, p3) = first_pt_moments(rho)?;
    if !(p2 > 0.0) {
        return Err(Error::numerical(format!("p2 = {p2} must be positive")));
    }
    let mu = (1.0 / p2).floor().max(1.0);
    let radicand = mu * (p2 * (mu + 1.0) - 1.0);
    if radicand < -tolerance_radicand() {
        return Err(Error::numerical(format!("p3oppt radicand is negative ({radicand:e})")));
    }
    let x = (mu + radicand.max(0.0).sqrt()) / (mu * (mu + 1.0));
    let value = mu * x.powi(3) + (1.0 - mu * x).powi(3) - p3;
    Ok(CriterionResult::new(CriterionId::P3Oppt, value, tol).with(&[
        ("p2", p2),
        ("p3", p3),
        ("mu", mu),
        ("x", x),
    ]))
}

fn tolerance_radicand() -> f64 {
    crate::tolerance::MOMENT_VARIANCE_SLACK
}

/// `L₄ = r_2² − r_3`.
pub fn zhang_l4(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let sv = singular_values(realign(rho).matrix())?;
    let r = zhang_from_spectrum(&sv, 3);
    let value = r[1] * r[1] - r[2];
    Ok(CriterionResult::new(CriterionId::Zhang, value, tol).with(&[("r1", r[0]), ("r2", r[1]), ("r3", r[2])]))
}

/// The sequence the Hankel matrices are built from, `s_0, s_1, …`.
///
/// * normalized: `(1, r_2, r_3, …, r_K)`; these are the moments of the
///   measure `Σ σ_i δ_{σ_i} + (1 − Σ σ_i) δ_0`, a positive measure whenever
///   `‖ρ^R‖₁ ≤ 1`
/// * raw: `(1, r_1, r_2, …, r_K)`
pub fn hankel_sequence(sv: &[f64], max_order: usize, mode: HankelMode) -> Vec<f64> {
    let r = zhang_from_spectrum(sv, max_order);
    let mut s = vec![1.0];
    match mode {
        HankelMode::Normalized => s.extend(r.iter().skip(1)),
        HankelMode::Raw => s.extend(r.iter()),
    }
    s
}

/// `[s_{i+j+offset}]` for `i, j = 0..=size`.
fn hankel_matrix(s: &[f64], size: usize, offset: usize) -> ComplexMatrix {
    let d = size + 1;
    let entries: Vec<f64> = (0..d * d).map(|idx| s[idx / d + idx % d + offset]).collect();
    ComplexMatrix::from_real(d, d, &entries).expect("finite moments")
}

/// Minimum eigenvalue over every `H_k = [s_{i+j}]` and `B_l = [s_{i+j+1}]`
/// that the available moments support. `max_order` defaults to the number of
/// singular values of ρ^R.
pub fn hankel_check(
    rho: &DensityMatrix,
    max_order: Option<usize>,
    tol: &Tolerances,
) -> Result<CriterionResult> {
    let sv = singular_values(realign(rho).matrix())?;
    let order = max_order.unwrap_or(sv.len());
    let s = hankel_sequence(&sv, order, tol.hankel_mode);
    let last = s.len() - 1;
    if last < 2 {
        return Err(Error::input(format!(
            "max order {order} is too small to form a Hankel matrix"
        )));
    }
    let mut min_eig = f64::INFINITY;
    let mut count = 0usize;
    for k in 1..=last / 2 {
        min_eig = min_eig.min(*eigvals_hermitian(&hankel_matrix(&s, k, 0))?.last().unwrap());
        count += 1;
    }
    for l in 1..=(last - 1) / 2 {
        min_eig = min_eig.min(*eigvals_hermitian(&hankel_matrix(&s, l, 1))?.last().unwrap());
        count += 1;
    }
    Ok(CriterionResult::new(CriterionId::Hankel, min_eig, tol).with(&[
        ("max_order", order as f64),
        ("matrices", count as f64),
    ]))
}

/// Minimum eigenvalue of ρ^{τ_B}.
pub fn ppt_check(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let pt = partial_transpose(rho, Subsystem::B);
    let ev = eigvals_hermitian(pt.matrix())?;
    let min = *ev.last().expect("non-empty spectrum");
    Ok(CriterionResult::new(CriterionId::Ppt, min, tol))
}

/// `‖ρ^R‖₁ − 1`.
pub fn ccnr_check(rho: &DensityMatrix, tol: &Tolerances) -> Result<CriterionResult> {
    let norm: f64 = singular_values(realign(rho).matrix())?.iter().sum();
    Ok(CriterionResult::new(CriterionId::Ccnr, norm - 1.0, tol).with(&[("trace_norm", norm)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{isotropic, random_separable, toth_family, toth_ppt_point, BipartiteDims};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn ids_round_trip() {
        for id in CriterionId::ALL {
            assert_eq!(id.as_str().parse::<CriterionId>().unwrap(), id);
        }
        assert_eq!(
            CriterionId::parse_list("r1,zhang,ppt").unwrap(),
            vec![CriterionId::R1, CriterionId::Zhang, CriterionId::Ppt]
        );
        assert_eq!(CriterionId::parse_list("all").unwrap().len(), 9);
        assert!(CriterionId::parse_list("r1,bogus").is_err());
    }

    #[test]
    fn threshold_ties_do_not_detect() {
        assert!(!CriterionId::R1.detects(1e-9, 1e-9));
        assert!(CriterionId::R1.detects(1.1e-9, 1e-9));
        assert!(!CriterionId::Ppt.detects(-1e-9, 1e-9));
        assert!(CriterionId::Ppt.detects(-1.1e-9, 1e-9));
    }

    #[test]
    fn maximally_mixed_r1() {
        for d in [2, 3] {
            let dims = BipartiteDims::new(d, d).unwrap();
            let rho = crate::states::validate(
                ComplexMatrix::identity(d * d).scale(1.0 / (d * d) as f64),
                dims,
            )
            .unwrap();
            let r = r_moment_general(&rho, &tol()).unwrap();
            assert_eq!(r.rank, Some(1));
            let expected = 1.0 / (d * d) as f64 - 1.0;
            assert!((r.value - expected).abs() < 1e-14);
            assert!(!r.detects);
        }
    }

    #[test]
    fn bell_state_values() {
        let bell = isotropic(1.0).unwrap();
        let l1 = p3_ppt(&bell, &tol()).unwrap();
        assert!((l1.value - 0.75).abs() < 1e-14);
        let l2 = d3(&bell, &tol()).unwrap();
        assert!((l2.value - 0.75).abs() < 1e-14);
        // p = (1, 1, 1/4): μ = 1, x = 1, L₃ = 1 − 1/4
        let l3 = p3_oppt(&bell, &tol()).unwrap();
        assert!((l3.value - 0.75).abs() < 1e-12 && l3.detects);
        let ppt = ppt_check(&bell, &tol()).unwrap();
        assert!((ppt.value + 0.5).abs() < 1e-14);
        let ccnr = ccnr_check(&bell, &tol()).unwrap();
        assert!((ccnr.value - 1.0).abs() < 1e-14);
        // σ = {1/2, 1/2, 1/2, 1/2}: r₂ = 1, r₃ = 1/2
        let l4 = zhang_l4(&bell, &tol()).unwrap();
        assert!((l4.value - 0.5).abs() < 1e-14 && l4.detects);
    }

    #[test]
    fn maximally_mixed_oppt_saturates() {
        let l3 = p3_oppt(&isotropic(0.25).unwrap(), &tol()).unwrap();
        assert!(l3.value.abs() < 1e-15);
        assert!(!l3.detects);
        assert_eq!(l3.detail("mu"), Some(4.0));
    }

    #[test]
    fn hankel_sequences() {
        let sv = [0.5, 0.0, 0.0, 0.0];
        let raw = hankel_sequence(&sv, 4, HankelMode::Raw);
        assert_eq!(raw, vec![1.0, 0.5, 0.25, 0.125, 0.0625]);
        let h1 = hankel_matrix(&raw, 1, 0);
        assert_eq!(h1, ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.5, 0.25]).unwrap());
        let ev = eigvals_hermitian(&h1).unwrap();
        assert!(ev[1].abs() < 1e-15);

        let norm = hankel_sequence(&sv, 4, HankelMode::Normalized);
        assert_eq!(norm, vec![1.0, 0.25, 0.125, 0.0625]);
    }

    #[test]
    fn hankel_h1_is_zhang_condition() {
        let sv = [0.4, 0.3, 0.2, 0.1];
        let s = hankel_sequence(&sv, 3, HankelMode::Normalized);
        let h1 = hankel_matrix(&s, 1, 0);
        let r = zhang_from_spectrum(&sv, 3);
        let det = h1.get(0, 0).re * h1.get(1, 1).re - h1.get(0, 1).re.powi(2);
        assert!((det - (r[2] - r[1] * r[1])).abs() < 1e-15);
    }

    #[test]
    fn hankel_on_mixed_and_product() {
        let mixed = hankel_check(&isotropic(0.25).unwrap(), None, &tol()).unwrap();
        assert!(!mixed.detects);
        let raw = Tolerances { hankel_mode: HankelMode::Raw, ..tol() };
        let mixed_raw = hankel_check(&isotropic(0.25).unwrap(), None, &raw).unwrap();
        assert!(mixed_raw.value.abs() < 1e-15 && !mixed_raw.detects);

        let product = random_separable(BipartiteDims::new(2, 3).unwrap(), 1, 4).unwrap();
        for t in [tol(), raw] {
            let h = hankel_check(&product, None, &t).unwrap();
            assert!(!h.detects, "{h:?}");
        }
        assert!(hankel_check(&product, Some(1), &tol()).is_err());
    }

    #[test]
    fn toth_ppt_point_r1() {
        let rho = toth_family(toth_ppt_point()).unwrap();
        let r = r_moment_general(&rho, &tol()).unwrap();
        assert_eq!(r.rank, Some(8));
        assert!((r.value - 0.02082).abs() < 5e-5, "{}", r.value);
        assert!((r.detail("newton_dk").unwrap() - r.detail("dk").unwrap()).abs() < 1e-9);
    }

    #[test]
    fn r2_rejects_other_dims() {
        let rho = toth_family(0.1).unwrap();
        assert!(matches!(r_moment_two_qubit(&rho, &tol()), Err(Error::Input(_))));
    }

    #[test]
    fn r2_separable_point() {
        let r = r_moment_two_qubit(&isotropic(0.25).unwrap(), &tol()).unwrap();
        assert!((r.value + 0.5).abs() < 1e-12, "{}", r.value);
        assert!(r_moment_two_qubit(&isotropic(0.7).unwrap(), &tol()).unwrap().detects);
    }
}
