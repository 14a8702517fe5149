//! Uniform random assignments. Mostly useful as a baseline and as the smallest
//! possible solver plugin.

use rand::Rng;

use super::{make_rng, positive};
use crate::error::{Error, Result};
use crate::model::{Assignment, BinaryQuadraticModel};
use crate::registry::{ArgSpec, ArgValue, ArgValues, Scope, Solver, SolverDescriptor};
use crate::sampleset::SampleSet;

/// Draws `num_solutions` independent assignments, each variable uniform over
/// the model's vartype. Output is reproducible for a fixed `seed`.
pub fn sample_random(
    bqm: &BinaryQuadraticModel,
    num_solutions: usize,
    seed: Option<u64>,
) -> Result<SampleSet> {
    if num_solutions == 0 {
        return Err(Error::Parameter("num_solutions must be at least 1".into()));
    }
    let mut rng = make_rng(seed);
    let (low, high) = (bqm.vartype().low(), bqm.vartype().high());
    let n = bqm.num_variables();
    let assignments = (0..num_solutions).map(|_| {
        Assignment::new(
            (0..n)
                .map(|_| if rng.gen::<bool>() { high } else { low })
                .collect(),
        )
    });
    SampleSet::from_assignments(bqm, assignments.collect::<Vec<_>>())
}

pub struct RandomSolver {
    seed: Option<u64>,
}

impl RandomSolver {
    pub fn new(seed: Option<u64>) -> Self {
        RandomSolver { seed }
    }
}

impl Solver for RandomSolver {
    fn sample(&mut self, bqm: &BinaryQuadraticModel, args: &ArgValues) -> Result<SampleSet> {
        let num_solutions = positive(args, "num_solutions", 1)?;
        sample_random(bqm, num_solutions, self.seed)
    }
}

pub fn descriptor() -> SolverDescriptor {
    SolverDescriptor::new("random", "Random sampler", |init| {
        Ok(Box::new(RandomSolver::new(init.seed("seed")?)))
    })
    .arg(
        ArgSpec::integer(
            "num_solutions",
            Scope::Sample,
            "number of solutions to generate",
        )
        .with_default(ArgValue::Integer(1)),
    )
    .arg(
        ArgSpec::integer(
            "seed",
            Scope::Init,
            "seed of the pseudo-random generator; system entropy if omitted",
        )
        .optional(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Vartype;

    fn triangle() -> BinaryQuadraticModel {
        crate::serio::read_coo_str("1 2 1.5\n0 1 -1\n0 2 -3\n", Vartype::Spin).unwrap()
    }

    #[test]
    fn records_are_valid_and_energies_exact() {
        let m = triangle();
        let ss = sample_random(&m, 5, Some(1)).unwrap();
        assert_eq!(ss.len(), 5);
        for r in ss.records() {
            assert!(r.assignment.values().iter().all(|&v| v == 1 || v == -1));
            assert_eq!(r.num_occurrences, 1);
            // Independent recomputation, term by term.
            let s: Vec<f64> = r
                .assignment
                .values()
                .iter()
                .map(|&v| f64::from(v))
                .collect();
            let expected = 1.5 * s[1] * s[2] - s[0] * s[1] - 3.0 * s[0] * s[2];
            assert_eq!(r.energy, expected);
        }
    }

    #[test]
    fn empty_model_gives_offset_energy() {
        let mut m = BinaryQuadraticModel::new(Vartype::Binary);
        m.set_offset(1.25);
        let ss = sample_random(&m, 2, Some(3)).unwrap();
        assert_eq!(ss.len(), 2);
        assert!(ss
            .records()
            .iter()
            .all(|r| r.assignment.is_empty() && r.energy == 1.25));
    }

    #[test]
    fn seeded_runs_repeat() {
        let m = triangle();
        assert_eq!(
            sample_random(&m, 20, Some(42)).unwrap(),
            sample_random(&m, 20, Some(42)).unwrap()
        );
    }

    #[test]
    fn different_seeds_differ() {
        let mut m = BinaryQuadraticModel::new(Vartype::Spin);
        for i in 0..16 {
            m.add_term(i, i, 1.0).unwrap();
        }
        let runs: Vec<_> = (0..10)
            .map(|s| sample_random(&m, 4, Some(s)).unwrap())
            .collect();
        assert!(runs.iter().any(|r| r != &runs[0]));
    }

    #[test]
    fn single_variable_is_roughly_uniform() {
        for vartype in Vartype::ALL {
            let mut m = BinaryQuadraticModel::new(vartype);
            m.add_term(0, 0, 1.0).unwrap();
            let ss = sample_random(&m, 10_000, Some(9)).unwrap();
            let highs = ss
                .records()
                .iter()
                .filter(|r| r.assignment.values()[0] == 1)
                .count();
            let freq = highs as f64 / 10_000.0;
            assert!((0.45..=0.55).contains(&freq), "{vartype}: {freq}");
        }
    }

    #[test]
    fn binary_values_in_domain() {
        let m = triangle().change_vartype(Vartype::Binary);
        let ss = sample_random(&m, 50, Some(0)).unwrap();
        assert!(ss.records().iter().all(|r| r
            .assignment
            .values()
            .iter()
            .all(|&v| v == 0 || v == 1)));
    }

    #[test]
    fn zero_solutions_rejected() {
        assert!(matches!(
            sample_random(&triangle(), 0, None),
            Err(Error::Parameter(_))
        ));
        let mut solver = RandomSolver::new(None);
        let args = ArgValues::new().with("num_solutions", ArgValue::Integer(0));
        assert!(matches!(
            solver.sample(&triangle(), &args),
            Err(Error::Parameter(_))
        ));
    }
}
