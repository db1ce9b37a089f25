use rmoment::criteria::CriterionId;
use rmoment::states::BipartiteDims;
use rmoment::sweep::{find_boundary, run_survey, run_sweep, Family, FamilySpec, Sampler};
use rmoment::tolerance::Tolerances;

fn flips(report: &rmoment::sweep::SweepReport, id: CriterionId) -> Vec<f64> {
    report
        .boundaries
        .iter()
        .find(|(c, _)| *c == id)
        .map(|(_, b)| b.clone())
        .unwrap()
}

#[test]
fn isotropic_ppt_flips_at_half() {
    let spec = FamilySpec::new(Family::Isotropic, "f", 0.0, 1.0, 101).unwrap();
    let report = run_sweep(&spec, &[CriterionId::Ppt], &Tolerances::default()).unwrap();
    let b = flips(&report, CriterionId::Ppt);
    assert_eq!(b.len(), 1);
    assert!((b[0] - 0.5).abs() < 1e-2, "{b:?}");
}

#[test]
fn toth_d3_flips_once_near_upper_end() {
    let spec = FamilySpec::new(Family::Toth, "q", 0.0, 0.5, 501).unwrap();
    let report = run_sweep(&spec, &[CriterionId::D3], &Tolerances::default()).unwrap();
    let b = flips(&report, CriterionId::D3);
    assert_eq!(b.len(), 1);
    assert!((b[0] - 0.425035).abs() < 1e-3, "{b:?}");
}

#[test]
fn toth_r1_boundaries() {
    let t = Tolerances::default();
    let spec = FamilySpec::new(Family::Toth, "q", 0.0, 0.5, 2).unwrap();
    for (lo, hi, want) in [(0.2, 0.35, 0.26477), (0.001, 0.05, 0.00659601)] {
        let b = find_boundary(&spec, CriterionId::R1, lo, hi, 1e-6, &t).unwrap();
        assert!((b - want).abs() < 1e-3, "{b} vs {want}");
    }
}

#[test]
fn rudolph_d3_boundary_closed_form() {
    // L2 = 3(20s² − 25s + 5 + (36 − 16s)t²)/128 vanishes at this |t|
    let t = Tolerances::default();
    for s in [0.30f64, 0.45, 0.60, 0.75, 0.90] {
        let want = ((20.0 * s * s - 25.0 * s + 5.0) / (16.0 * s - 36.0)).sqrt();
        let spec = FamilySpec::new(Family::Rudolph, "t", 0.0, 0.5, 2).unwrap().fix("s", s).unwrap();
        let hi = 0.999 * (1.25 * (1.0 - s)).sqrt();
        let b = find_boundary(&spec, CriterionId::D3, 0.0, hi, 1e-9, &t).unwrap();
        assert!((b - want).abs() < 1e-6, "s={s}: {b} vs {want}");
    }
}

#[test]
fn separable_two_qubit_survey_detects_nothing() {
    let dims = BipartiteDims::new(2, 2).unwrap();
    let report = run_survey(
        dims,
        1000,
        Sampler::Separable { terms: 4 },
        11,
        &CriterionId::ALL,
        &Tolerances::default(),
    )
    .unwrap();
    for (id, n) in &report.counts {
        assert_eq!(*n, 0, "{id}");
    }
}

#[test]
fn survey_repeats_for_a_seed() {
    let dims = BipartiteDims::new(2, 2).unwrap();
    let t = Tolerances::default();
    let run = || run_survey(dims, 1000, Sampler::Density { rank: 4 }, 2024, &CriterionId::ALL, &t).unwrap();
    assert_eq!(run().to_json(), run().to_json());
}

#[test]
fn qutrit_survey_r1_within_ccnr() {
    let dims = BipartiteDims::new(3, 3).unwrap();
    let ids = [CriterionId::R1, CriterionId::Ccnr];
    let report =
        run_survey(dims, 1000, Sampler::Density { rank: 9 }, 5, &ids, &Tolerances::default()).unwrap();
    assert!(report.count(CriterionId::R1) <= report.count(CriterionId::Ccnr));
    assert_eq!(report.only(CriterionId::R1, CriterionId::Ccnr), Some(0));
}
