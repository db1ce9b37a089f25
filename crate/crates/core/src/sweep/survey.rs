use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::criteria::{evaluate, CriterionId};
use crate::states::{random_density, random_separable, BipartiteDims};
use crate::tolerance::Tolerances;
use crate::{Error, Result};

/// How survey states are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    /// Ginibre states of the given rank.
    Density { rank: usize },
    /// Mixtures of the given number of random product states.
    Separable { terms: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyReport {
    pub dims: BipartiteDims,
    pub samples: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub criteria: Vec<CriterionId>,
    /// Detection count per criterion, request order.
    pub counts: Vec<(CriterionId, usize)>,
    /// `(a, b, n)`: `n` samples detected by `a` but not by `b`, for every
    /// ordered pair of distinct requested criteria.
    pub cross: Vec<(CriterionId, CriterionId, usize)>,
}

impl SurveyReport {
    pub fn count(&self, id: CriterionId) -> Option<usize> {
        self.counts.iter().find(|(c, _)| *c == id).map(|(_, n)| *n)
    }

    pub fn only(&self, a: CriterionId, b: CriterionId) -> Option<usize> {
        self.cross.iter().find(|(x, y, _)| *x == a && *y == b).map(|(_, _, n)| *n)
    }
}

/// Draws `samples` states and tallies verdicts. Sample `i` is generated from
/// the `i`-th `u64` of a ChaCha20 stream seeded with `seed`, so the report
/// depends only on the arguments.
pub fn run_survey(
    dims: BipartiteDims,
    samples: usize,
    sampler: Sampler,
    seed: u64,
    criteria: &[CriterionId],
    tol: &Tolerances,
) -> Result<SurveyReport> {
    if samples == 0 {
        return Err(Error::input("samples must be at least 1"));
    }
    if criteria.contains(&CriterionId::R2) && (dims.m() != 2 || dims.n() != 2) {
        return Err(Error::input(format!("r2 applies to 2x2 systems only, got {dims}")));
    }
    let mut master = ChaCha20Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..samples).map(|_| master.random()).collect();
    let verdicts: Vec<Result<Vec<bool>>> = seeds
        .par_iter()
        .map(|&s| {
            let rho = match sampler {
                Sampler::Density { rank } => random_density(dims, rank, s)?,
                Sampler::Separable { terms } => random_separable(dims, terms, s)?,
            };
            criteria.iter().map(|&id| Ok(evaluate(id, &rho, tol)?.detects)).collect()
        })
        .collect();
    let k = criteria.len();
    let mut counts = vec![0usize; k];
    let mut cross = vec![vec![0usize; k]; k];
    for v in verdicts {
        let v = v?;
        for a in 0..k {
            if v[a] {
                counts[a] += 1;
                for b in 0..k {
                    if !v[b] {
                        cross[a][b] += 1;
                    }
                }
            }
        }
    }
    let mut cross_list = Vec::with_capacity(k * k.saturating_sub(1));
    for a in 0..k {
        for b in 0..k {
            if a != b {
                cross_list.push((criteria[a], criteria[b], cross[a][b]));
            }
        }
    }
    Ok(SurveyReport {
        dims,
        samples,
        seed,
        sampler,
        criteria: criteria.to_vec(),
        counts: criteria.iter().copied().zip(counts).collect(),
        cross: cross_list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_samples_never_detect() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let r = run_survey(
            dims,
            50,
            Sampler::Separable { terms: 4 },
            1,
            &CriterionId::ALL,
            &Tolerances::default(),
        )
        .unwrap();
        assert!(r.counts.iter().all(|(_, n)| *n == 0), "{:?}", r.counts);
        assert_eq!(r.cross.len(), 9 * 8);
    }

    #[test]
    fn pure_states_detected_by_ppt() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let ids = [CriterionId::Ppt, CriterionId::Ccnr];
        let r = run_survey(dims, 20, Sampler::Density { rank: 1 }, 5, &ids, &Tolerances::default())
            .unwrap();
        assert_eq!(r.count(CriterionId::Ppt), Some(20));
        assert_eq!(r.only(CriterionId::Ppt, CriterionId::Ccnr), Some(0));
    }

    #[test]
    fn rejects_bad_input() {
        let dims = BipartiteDims::new(3, 3).unwrap();
        let t = Tolerances::default();
        assert!(run_survey(dims, 0, Sampler::Density { rank: 2 }, 0, &[CriterionId::R1], &t).is_err());
        assert!(run_survey(dims, 3, Sampler::Density { rank: 2 }, 0, &[CriterionId::R2], &t).is_err());
        assert!(run_survey(dims, 3, Sampler::Density { rank: 10 }, 0, &[CriterionId::R1], &t).is_err());
    }
}
