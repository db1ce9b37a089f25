//! Parameter sweeps over the named families, boundary search and random
//! surveys.

mod report;
mod survey;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::criteria::{evaluate, CriterionId, VerdictKind};
use crate::states::{
    bell_diagonal, filtered_family, garg_family, isotropic, rudolph_family, toth_family,
    DensityMatrix,
};
use crate::tolerance::Tolerances;
use crate::{Error, Result};

pub use report::{check_to_csv, check_to_json, check_to_table, Format};
pub use survey::{run_survey, Sampler, SurveyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Isotropic,
    Toth,
    Garg,
    Rudolph,
    Filtered,
    BellDiag,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Isotropic,
        Family::Toth,
        Family::Garg,
        Family::Rudolph,
        Family::Filtered,
        Family::BellDiag,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Isotropic => "isotropic",
            Family::Toth => "toth",
            Family::Garg => "garg",
            Family::Rudolph => "rudolph",
            Family::Filtered => "filtered",
            Family::BellDiag => "belldiag",
        }
    }

    /// Parameter names with the values used when a parameter is neither swept
    /// nor fixed explicitly.
    pub fn parameters(&self) -> &'static [(&'static str, f64)] {
        match self {
            Family::Isotropic => &[("f", 0.5)],
            Family::Toth => &[("q", 0.0)],
            Family::Garg => &[("a", 0.3)],
            Family::Rudolph => &[("s", 0.6), ("t", 0.0)],
            Family::Filtered => &[("b", 0.0), ("c", 0.0), ("d", 0.0)],
            // p4 = 1 − p1 − p2 − p3
            Family::BellDiag => &[("p1", 0.25), ("p2", 0.25), ("p3", 0.25)],
        }
    }

    fn index_of(&self, name: &str) -> Result<usize> {
        self.parameters()
            .iter()
            .position(|(p, _)| *p == name)
            .ok_or_else(|| {
                let known: Vec<&str> = self.parameters().iter().map(|(p, _)| *p).collect();
                Error::input(format!(
                    "family {self} has no parameter '{name}' (expected one of {})",
                    known.join(", ")
                ))
            })
    }

    /// Builds the state for a full parameter vector in [`Family::parameters`] order.
    pub fn build(&self, v: &[f64]) -> Result<DensityMatrix> {
        match self {
            Family::Isotropic => isotropic(v[0]),
            Family::Toth => toth_family(v[0]),
            Family::Garg => garg_family(v[0]),
            Family::Rudolph => rudolph_family(v[0], v[1]),
            Family::Filtered => filtered_family(v[0], v[1], v[2]),
            Family::BellDiag => bell_diagonal([v[0], v[1], v[2], 1.0 - v[0] - v[1] - v[2]]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown family '{s}'")))
    }
}

/// A one-parameter slice through a family: which parameter moves, where the
/// others sit, and the closed grid `from..=to` with `steps` points.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    family: Family,
    values: Vec<f64>,
    sweep: usize,
    from: f64,
    to: f64,
    steps: usize,
}

impl FamilySpec {
    /// Sweeps `param` over `[from, to]` with every other parameter at its default.
    pub fn new(family: Family, param: &str, from: f64, to: f64, steps: usize) -> Result<Self> {
        let sweep = family.index_of(param)?;
        if !from.is_finite() || !to.is_finite() {
            return Err(Error::input("sweep range must be finite"));
        }
        let ok = match steps {
            0 => true,
            1 => from <= to,
            _ => from < to,
        };
        if !ok {
            return Err(Error::input(format!(
                "range [{from}, {to}] with {steps} points is not strictly increasing"
            )));
        }
        Ok(FamilySpec {
            family,
            values: family.parameters().iter().map(|(_, v)| *v).collect(),
            sweep,
            from,
            to,
            steps,
        })
    }

    /// Pins a non-swept parameter.
    pub fn fix(mut self, name: &str, value: f64) -> Result<Self> {
        let idx = self.family.index_of(name)?;
        if idx == self.sweep {
            return Err(Error::input(format!("'{name}' is the swept parameter")));
        }
        if !value.is_finite() {
            return Err(Error::input(format!("{name} = {value} is not finite")));
        }
        self.values[idx] = value;
        Ok(self)
    }

    /// Checks that both ends of the range give valid states.
    pub fn check_window(&self) -> Result<()> {
        if self.steps == 0 {
            return Ok(());
        }
        self.state_at(self.from)?;
        self.state_at(self.to)?;
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> &'static str {
        self.family.parameters()[self.sweep].0
    }

    /// Non-swept parameters and their values.
    pub fn fixed(&self) -> Vec<(&'static str, f64)> {
        self.family
            .parameters()
            .iter()
            .zip(&self.values)
            .enumerate()
            .filter(|(i, _)| *i != self.sweep)
            .map(|(_, ((name, _), v))| (*name, *v))
            .collect()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.from, self.to)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `from + (to − from)·i/(steps − 1)`, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        match self.steps {
            0 => vec![],
            1 => vec![self.from],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.to
                    } else {
                        self.from + (self.to - self.from) * (i as f64) / ((n - 1) as f64)
                    }
                })
                .collect(),
        }
    }

    pub fn state_at(&self, x: f64) -> Result<DensityMatrix> {
        let mut v = self.values.clone();
        v[self.sweep] = x;
        self.family.build(&v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub criterion: CriterionId,
    pub value: f64,
    pub detects: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub spec: FamilySpec,
    pub criteria: Vec<CriterionId>,
    /// Grid-major, criteria in request order within each point.
    pub rows: Vec<SweepRow>,
    /// Per criterion, the interpolated parameters where the verdict flips
    /// between neighbouring grid points.
    pub boundaries: Vec<(CriterionId, Vec<f64>)>,
}

/// The value at which a criterion's verdict changes.
pub fn threshold(id: CriterionId, tol: &Tolerances) -> f64 {
    match id.verdict_kind() {
        VerdictKind::Inequality => tol.verdict,
        VerdictKind::Spectral => -tol.verdict,
    }
}

fn check_applicable(family: Family, criteria: &[CriterionId]) -> Result<()> {
    let two_qubit = matches!(
        family,
        Family::Isotropic | Family::Rudolph | Family::Filtered | Family::BellDiag
    );
    if !two_qubit && criteria.contains(&CriterionId::R2) {
        return Err(Error::input(format!("r2 is not defined for family {family}")));
    }
    Ok(())
}

fn evaluate_point(
    spec: &FamilySpec,
    x: f64,
    criteria: &[CriterionId],
    tol: &Tolerances,
) -> Result<Vec<SweepRow>> {
    let rho = spec.state_at(x)?;
    criteria
        .iter()
        .map(|&id| {
            let r = evaluate(id, &rho, tol)?;
            Ok(SweepRow { param: x, criterion: id, value: r.value, detects: r.detects })
        })
        .collect()
}

/// Evaluates every grid point, in parallel. Rows come back in grid order.
pub fn run_sweep(spec: &FamilySpec, criteria: &[CriterionId], tol: &Tolerances) -> Result<SweepReport> {
    sweep_impl(spec, criteria, tol, true)
}

/// Single-threaded [`run_sweep`]; output is identical.
pub fn run_sweep_serial(
    spec: &FamilySpec,
    criteria: &[CriterionId],
    tol: &Tolerances,
) -> Result<SweepReport> {
    sweep_impl(spec, criteria, tol, false)
}

fn sweep_impl(
    spec: &FamilySpec,
    criteria: &[CriterionId],
    tol: &Tolerances,
    parallel: bool,
) -> Result<SweepReport> {
    check_applicable(spec.family, criteria)?;
    spec.check_window()?;
    let grid = spec.grid();
    let per_point: Vec<Result<Vec<SweepRow>>> = if parallel {
        grid.par_iter().map(|&x| evaluate_point(spec, x, criteria, tol)).collect()
    } else {
        grid.iter().map(|&x| evaluate_point(spec, x, criteria, tol)).collect()
    };
    let mut rows = Vec::with_capacity(grid.len() * criteria.len());
    for point in per_point {
        rows.extend(point?);
    }
    let boundaries = criteria
        .iter()
        .map(|&id| (id, grid_flips(&rows, id, tol)))
        .collect();
    Ok(SweepReport { spec: spec.clone(), criteria: criteria.to_vec(), rows, boundaries })
}

fn grid_flips(rows: &[SweepRow], id: CriterionId, tol: &Tolerances) -> Vec<f64> {
    let th = threshold(id, tol);
    let series: Vec<&SweepRow> = rows.iter().filter(|r| r.criterion == id).collect();
    series
        .windows(2)
        .filter(|w| w[0].detects != w[1].detects)
        .map(|w| {
            let (x0, x1) = (w[0].param, w[1].param);
            let (g0, g1) = (w[0].value - th, w[1].value - th);
            if g0 != g1 && g0.is_finite() && g1.is_finite() {
                (x0 - g0 * (x1 - x0) / (g1 - g0)).clamp(x0, x1)
            } else {
                0.5 * (x0 + x1)
            }
        })
        .collect()
}

/// Bisects the swept parameter of `spec` on `[lo, hi]` until the bracket is
/// narrower than `param_tol`, returning its midpoint. The verdicts at `lo`
/// and `hi` must differ.
pub fn find_boundary(
    spec: &FamilySpec,
    criterion: CriterionId,
    lo: f64,
    hi: f64,
    param_tol: f64,
    tol: &Tolerances,
) -> Result<f64> {
    check_applicable(spec.family, &[criterion])?;
    if !(param_tol > 0.0) || !(lo < hi) {
        return Err(Error::input(format!(
            "need lo < hi and tol > 0, got [{lo}, {hi}] and {param_tol}"
        )));
    }
    let detects_at = |x: f64| -> Result<bool> {
        Ok(evaluate(criterion, &spec.state_at(x)?, tol)?.detects)
    };
    let (mut a, mut b) = (lo, hi);
    let da = detects_at(a)?;
    if da == detects_at(b)? {
        return Err(Error::input(format!(
            "{criterion} verdict does not change on [{lo}, {hi}]"
        )));
    }
    while b - a > param_tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if detects_at(mid)? == da {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn grid_is_closed_and_increasing() {
        let spec = FamilySpec::new(Family::Isotropic, "f", 0.0, 1.0, 11).unwrap();
        let g = spec.grid();
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(FamilySpec::new(Family::Isotropic, "f", 1.0, 0.0, 3).is_err());
        assert!(FamilySpec::new(Family::Isotropic, "f", 0.5, 0.5, 2).is_err());
        assert_eq!(FamilySpec::new(Family::Isotropic, "f", 0.5, 0.5, 1).unwrap().grid(), vec![0.5]);
    }

    #[test]
    fn unknown_parameters() {
        assert!(FamilySpec::new(Family::Toth, "f", 0.0, 0.1, 2).is_err());
        let spec = FamilySpec::new(Family::Rudolph, "t", 0.0, 0.2, 3).unwrap();
        assert!(spec.clone().fix("t", 0.1).is_err());
        let spec = spec.fix("s", 0.9).unwrap();
        assert_eq!(spec.fixed(), vec![("s", 0.9)]);
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn window_is_checked() {
        let spec = FamilySpec::new(Family::Garg, "a", 0.2, 0.3, 5).unwrap();
        assert!(matches!(
            run_sweep(&spec, &[CriterionId::R1], &tol()),
            Err(Error::Validation { .. })
        ));
        let spec = FamilySpec::new(Family::Isotropic, "f", 0.0, 1.5, 5).unwrap();
        assert!(run_sweep(&spec, &[CriterionId::Ppt], &tol()).is_err());
    }

    #[test]
    fn ppt_flip_on_isotropic_grid() {
        let spec = FamilySpec::new(Family::Isotropic, "f", 0.0, 1.0, 21).unwrap();
        let report = run_sweep(&spec, &[CriterionId::Ppt, CriterionId::Ccnr], &tol()).unwrap();
        assert_eq!(report.rows.len(), 42);
        for (id, flips) in &report.boundaries {
            assert_eq!(flips.len(), 1, "{id}");
            assert!((flips[0] - 0.5).abs() < 1e-9, "{id}: {flips:?}");
        }
    }

    #[test]
    fn bisection_on_isotropic_ppt() {
        let spec = FamilySpec::new(Family::Isotropic, "f", 0.0, 1.0, 0).unwrap();
        let b = find_boundary(&spec, CriterionId::Ppt, 0.3, 0.9, 1e-8, &tol()).unwrap();
        assert!((b - 0.5).abs() < 1e-7);
        assert!(find_boundary(&spec, CriterionId::Ppt, 0.6, 0.9, 1e-8, &tol()).is_err());
    }

    #[test]
    fn r2_restricted_to_two_qubit_families() {
        let spec = FamilySpec::new(Family::Toth, "q", 0.0, 0.5, 3).unwrap();
        assert!(matches!(run_sweep(&spec, &[CriterionId::R2], &tol()), Err(Error::Input(_))));
    }

    #[test]
    fn belldiag_implied_weight() {
        let spec = FamilySpec::new(Family::BellDiag, "p1", 0.25, 0.7, 2)
            .unwrap()
            .fix("p2", 0.1)
            .unwrap()
            .fix("p3", 0.1)
            .unwrap();
        let rho = spec.state_at(0.7).unwrap();
        assert!(rho.min_eigenvalue() > 0.0);
        assert!(spec.state_at(0.9).is_err());
    }
}
