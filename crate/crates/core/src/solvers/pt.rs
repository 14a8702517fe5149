//! Parallel tempering (replica exchange Monte Carlo).
//!
//! `num_replicas` copies of the system run single-spin-flip Metropolis at
//! inverse temperatures spaced geometrically between `beta_min` (hottest) and
//! `beta_max` (coldest). After every `num_sweeps` sweeps, neighbouring
//! temperatures try to swap states; even pairs `(0,1), (2,3), ...` on even
//! steps and odd pairs `(1,2), (3,4), ...` on odd steps.
//!
//! The simulation always runs on the SPIN form of the model. The lowest
//! energy state seen at any point is returned as a single record, expressed in
//! the caller's vartype.
//!
//! Randomness: a master ChaCha8 generator seeded from `seed` hands out one
//! seed for the exchange decisions and one per temperature slot. Each slot
//! draws its initial state and its Metropolis decisions from its own stream,
//! so results are identical whether slots are swept in sequence or in
//! parallel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{make_rng, positive};
use crate::error::{Error, Result};
use crate::model::{Assignment, BinaryQuadraticModel, IndexedModel, Vartype};
use crate::registry::{ArgSpec, ArgValue, ArgValues, Scope, Solver, SolverDescriptor};
use crate::sampleset::{SampleRecord, SampleSet};

#[derive(Debug, Clone, PartialEq)]
pub struct PtParams {
    pub num_replicas: usize,
    pub num_pt_steps: usize,
    pub num_sweeps: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub seed: Option<u64>,
}

impl Default for PtParams {
    fn default() -> Self {
        PtParams {
            num_replicas: 10,
            num_pt_steps: 1000,
            num_sweeps: 100,
            beta_min: 0.1,
            beta_max: 1.0,
            seed: None,
        }
    }
}

impl PtParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("num_replicas", self.num_replicas),
            ("num_pt_steps", self.num_pt_steps),
            ("num_sweeps", self.num_sweeps),
        ] {
            if v == 0 {
                return Err(Error::Parameter(format!("{name} must be at least 1")));
            }
        }
        check_betas(self.beta_min, self.beta_max)
    }

    fn from_args(args: &ArgValues, seed: Option<u64>) -> Result<Self> {
        let d = PtParams::default();
        Ok(PtParams {
            num_replicas: positive(args, "num_replicas", d.num_replicas)?,
            num_pt_steps: positive(args, "num_pt_steps", d.num_pt_steps)?,
            num_sweeps: positive(args, "num_sweeps", d.num_sweeps)?,
            beta_min: args.real("beta_min")?.unwrap_or(d.beta_min),
            beta_max: args.real("beta_max")?.unwrap_or(d.beta_max),
            seed,
        })
    }
}

fn check_betas(beta_min: f64, beta_max: f64) -> Result<()> {
    if !(beta_min.is_finite() && beta_max.is_finite() && 0.0 < beta_min && beta_min <= beta_max) {
        return Err(Error::Parameter(format!(
            "inverse temperatures must satisfy 0 < beta_min <= beta_max, got {beta_min} and {beta_max}"
        )));
    }
    Ok(())
}

/// Geometric ladder from `beta_min` to `beta_max`. A single replica runs at
/// `beta_max`.
pub fn beta_ladder(beta_min: f64, beta_max: f64, num_replicas: usize) -> Result<Vec<f64>> {
    check_betas(beta_min, beta_max)?;
    match num_replicas {
        0 => Err(Error::Parameter("num_replicas must be at least 1".into())),
        1 => Ok(vec![beta_max]),
        r => {
            let ratio = beta_max / beta_min;
            let last = (r - 1) as f64;
            let mut ladder: Vec<f64> = (0..r)
                .map(|k| beta_min * ratio.powf(k as f64 / last))
                .collect();
            // Pin the endpoints against rounding in powf.
            ladder[0] = beta_min;
            ladder[r - 1] = beta_max;
            Ok(ladder)
        }
    }
}

/// `min(1, exp((beta_a - beta_b) * (energy_a - energy_b)))`
pub fn exchange_probability(beta_a: f64, beta_b: f64, energy_a: f64, energy_b: f64) -> f64 {
    let x = (beta_a - beta_b) * (energy_a - energy_b);
    if x >= 0.0 {
        1.0
    } else {
        x.exp()
    }
}

/// A spin configuration with its tracked energy and local fields.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    spins: Vec<i8>,
    fields: Vec<f64>,
    energy: f64,
}

impl SpinState {
    pub fn new(model: &IndexedModel, spins: Vec<i8>) -> Self {
        debug_assert_eq!(model.vartype(), Vartype::Spin);
        SpinState {
            fields: model.local_fields(&spins),
            energy: model.energy(&spins),
            spins,
        }
    }

    fn random<R: Rng>(model: &IndexedModel, rng: &mut R) -> Self {
        let spins = (0..model.num_variables())
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        Self::new(model, spins)
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Energy change from flipping spin `i`.
    pub fn flip_delta(&self, i: usize) -> f64 {
        -2.0 * f64::from(self.spins[i]) * self.fields[i]
    }

    fn flip(&mut self, model: &IndexedModel, i: usize, delta_energy: f64) {
        let step = -2.0 * f64::from(self.spins[i]);
        self.spins[i] = -self.spins[i];
        self.energy += delta_energy;
        for &(j, coupling) in model.neighbors(i) {
            self.fields[j] += coupling * step;
        }
    }
}

/// One Metropolis sweep: every spin, in index order, is proposed for a flip
/// and accepted with probability `min(1, exp(-beta * delta))`.
pub fn metropolis_sweep<R: Rng>(
    state: &mut SpinState,
    model: &IndexedModel,
    beta: f64,
    rng: &mut R,
) {
    sweep_observed(state, model, beta, rng, |_| {});
}

/// As [`metropolis_sweep`], calling `observe` after every accepted flip.
fn sweep_observed<R: Rng>(
    state: &mut SpinState,
    model: &IndexedModel,
    beta: f64,
    rng: &mut R,
    mut observe: impl FnMut(&SpinState),
) {
    for i in 0..state.spins.len() {
        let delta = state.flip_delta(i);
        if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
            state.flip(model, i, delta);
            observe(state);
        }
    }
}

/// Replica exchange over a geometric ladder. The model must have at least one
/// variable.
pub fn sample_pt(bqm: &BinaryQuadraticModel, params: &PtParams) -> Result<SampleSet> {
    params.validate()?;
    if bqm.is_empty() {
        return Err(Error::Parameter(
            "parallel tempering needs at least one variable".into(),
        ));
    }
    let spin = bqm.change_vartype(Vartype::Spin);
    let model = spin.to_indexed();
    let betas = beta_ladder(params.beta_min, params.beta_max, params.num_replicas)?;

    let mut master = make_rng(params.seed);
    let mut exchange_rng = ChaCha8Rng::seed_from_u64(master.gen());
    let mut slot_rngs: Vec<ChaCha8Rng> = (0..betas.len())
        .map(|_| ChaCha8Rng::seed_from_u64(master.gen()))
        .collect();
    let mut replicas: Vec<SpinState> = slot_rngs
        .iter_mut()
        .map(|rng| SpinState::random(&model, rng))
        .collect();

    let mut best = replicas
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .expect("at least one replica")
        .spins
        .clone();
    let mut best_energy = model.energy(&best);

    for step in 0..params.num_pt_steps {
        for ((replica, &beta), rng) in replicas.iter_mut().zip(&betas).zip(&mut slot_rngs) {
            for _ in 0..params.num_sweeps {
                sweep_observed(replica, &model, beta, rng, |s| {
                    if s.energy < best_energy {
                        best_energy = s.energy;
                        best.copy_from_slice(&s.spins);
                    }
                });
            }
        }
        exchange_phase(&mut replicas, &betas, step % 2, &mut exchange_rng);
    }

    let assignment = Assignment::new(best).convert(Vartype::Spin, bqm.vartype());
    let energy = bqm.energy(&assignment)?;
    SampleSet::from_records(
        bqm.labels().to_vec(),
        bqm.vartype(),
        vec![SampleRecord::new(assignment, energy)],
    )
}

/// Attempts swaps between slots `(k, k+1)` for `k = parity, parity + 2, ...`.
/// Returns the number of accepted swaps.
pub fn exchange_phase<R: Rng>(
    replicas: &mut [SpinState],
    betas: &[f64],
    parity: usize,
    rng: &mut R,
) -> usize {
    let mut swaps = 0;
    let mut k = parity;
    while k + 1 < replicas.len() {
        let p = exchange_probability(
            betas[k],
            betas[k + 1],
            replicas[k].energy,
            replicas[k + 1].energy,
        );
        if p >= 1.0 || rng.gen::<f64>() < p {
            replicas.swap(k, k + 1);
            swaps += 1;
        }
        k += 2;
    }
    swaps
}

pub struct PtSolver {
    seed: Option<u64>,
}

impl PtSolver {
    pub fn new(seed: Option<u64>) -> Self {
        PtSolver { seed }
    }
}

impl Solver for PtSolver {
    fn sample(&mut self, bqm: &BinaryQuadraticModel, args: &ArgValues) -> Result<SampleSet> {
        sample_pt(bqm, &PtParams::from_args(args, self.seed)?)
    }
}

pub fn descriptor() -> SolverDescriptor {
    let d = PtParams::default();
    let int = |v: usize| ArgValue::Integer(v as i64);
    SolverDescriptor::new("pt", "Parallel tempering sampler", |init| {
        Ok(Box::new(PtSolver::new(init.seed("seed")?)))
    })
    .arg(
        ArgSpec::integer(
            "num_replicas",
            Scope::Sample,
            "number of replicas to simulate",
        )
        .with_default(int(d.num_replicas)),
    )
    .arg(
        ArgSpec::integer(
            "num_pt_steps",
            Scope::Sample,
            "number of parallel tempering steps",
        )
        .with_default(int(d.num_pt_steps)),
    )
    .arg(
        ArgSpec::integer(
            "num_sweeps",
            Scope::Sample,
            "number of Monte Carlo sweeps per parallel tempering step",
        )
        .with_default(int(d.num_sweeps)),
    )
    .arg(
        ArgSpec::real(
            "beta_min",
            Scope::Sample,
            "inverse temperature of the hottest replica",
        )
        .with_default(ArgValue::Real(d.beta_min)),
    )
    .arg(
        ArgSpec::real(
            "beta_max",
            Scope::Sample,
            "inverse temperature of the coldest replica",
        )
        .with_default(ArgValue::Real(d.beta_max)),
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
