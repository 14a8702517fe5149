//! Exact low-energy spectrum by exhaustive search.
//!
//! All `2^N` assignments are visited in reflected binary Gray-code order, so
//! consecutive states differ in a single variable and each step costs one
//! energy update plus a local-field update of the flipped variable's
//! neighbours. Bit `i` of the code word is the `i`-th variable in ascending
//! label order; a clear bit is the low value (`-1` or `0`).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::positive;
use crate::error::{Error, Result};
use crate::model::{Assignment, BinaryQuadraticModel, IndexedModel, Vartype};
use crate::registry::{ArgSpec, ArgValue, ArgValues, Scope, Solver, SolverDescriptor};
use crate::sampleset::{SampleRecord, SampleSet};

pub const MAX_VARIABLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfParams {
    /// Number of lowest-energy states to return.
    pub num_states: usize,
}

impl Default for BfParams {
    fn default() -> Self {
        BfParams { num_states: 1 }
    }
}

#[inline]
pub fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// The bit that differs between `gray(k - 1)` and `gray(k)`.
#[inline]
pub fn flip_index(k: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::Domain("flip_index is undefined for k = 0".into()));
    }
    Ok(k.trailing_zeros())
}

/// Walks every state of `model` in Gray-code order, calling
/// `visit(code, running_energy)` once per state. The first call is for code
/// `0`. The model may have at most 64 variables.
pub fn scan_visit<F>(model: &IndexedModel, mut visit: F) -> Result<()>
where
    F: FnMut(u64, f64),
{
    let n = model.num_variables();
    if n > MAX_VARIABLES {
        return Err(Error::Capacity { num_variables: n });
    }
    let vartype = model.vartype();
    let mut values = vec![vartype.low(); n];
    let mut fields = model.local_fields(&values);
    let mut energy = model.energy(&values);
    visit(0, energy);

    let last: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let (low, high) = (vartype.low(), vartype.high());
    for k in 1..=last {
        let i = k.trailing_zeros() as usize;
        let step = if values[i] == low {
            values[i] = high;
            f64::from(high - low)
        } else {
            values[i] = low;
            f64::from(low - high)
        };
        energy += step * fields[i];
        for &(j, coupling) in model.neighbors(i) {
            fields[j] += coupling * step;
        }
        visit(gray(k), energy);
    }
    Ok(())
}

/// Decodes a code word into an assignment of `n` variables.
pub fn decode(code: u64, n: usize, vartype: Vartype) -> Assignment {
    Assignment::new(
        (0..n)
            .map(|i| {
                if code >> i & 1 == 1 {
                    vartype.high()
                } else {
                    vartype.low()
                }
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    energy: f64,
    visit: u64,
    code: u64,
}

// Max-heap order: the top is the highest energy, and among equal energies the
// most recently visited.
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.energy
            .total_cmp(&other.energy)
            .then(self.visit.cmp(&other.visit))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

/// Keeps the `capacity` lowest-energy candidates offered so far. A newcomer
/// tying the current worst is rejected, so earlier offers win ties.
struct LowestK {
    heap: BinaryHeap<Candidate>,
    capacity: usize,
}

impl LowestK {
    fn new(capacity: usize) -> Self {
        LowestK {
            heap: BinaryHeap::with_capacity(capacity.min(1 << 20)),
            capacity,
        }
    }

    #[inline]
    fn offer(&mut self, candidate: Candidate) {
        if self.heap.len() < self.capacity {
            self.heap.push(candidate);
        } else if let Some(mut worst) = self.heap.peek_mut() {
            if candidate.energy < worst.energy {
                *worst = candidate;
            }
        }
    }

    fn into_codes(self) -> Vec<u64> {
        self.heap.into_iter().map(|c| c.code).collect()
    }
}

/// The `num_states` lowest-energy states of `bqm`, sorted by energy and then
/// by values. Energies are recomputed exactly from the original model.
pub fn scan(bqm: &BinaryQuadraticModel, params: &BfParams) -> Result<SampleSet> {
    if params.num_states == 0 {
        return Err(Error::Parameter("num_states must be at least 1".into()));
    }
    let n = bqm.num_variables();
    if n > MAX_VARIABLES {
        return Err(Error::Capacity { num_variables: n });
    }
    let model = bqm.to_indexed();
    let mut lowest = LowestK::new(params.num_states);
    let mut visit = 0u64;
    scan_visit(&model, |code, energy| {
        lowest.offer(Candidate {
            energy,
            visit,
            code,
        });
        visit = visit.wrapping_add(1);
    })?;

    let records = lowest
        .into_codes()
        .into_iter()
        .map(|code| {
            let assignment = decode(code, n, bqm.vartype());
            let energy = bqm.energy(&assignment)?;
            Ok(SampleRecord::new(assignment, energy))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleSet::from_records(bqm.labels().to_vec(), bqm.vartype(), records)?.sort_by_energy())
}

pub struct BruteForceSolver;

impl Solver for BruteForceSolver {
    fn sample(&mut self, bqm: &BinaryQuadraticModel, args: &ArgValues) -> Result<SampleSet> {
        let num_states = positive(args, "num_states", 1)?;
        scan(bqm, &BfParams { num_states })
    }
}

pub fn descriptor() -> SolverDescriptor {
    SolverDescriptor::new(
        "bruteforce",
        "Exhaustive Gray-code search for the lowest-energy states",
        |_| Ok(Box::new(BruteForceSolver)),
    )
    .arg(
        ArgSpec::integer(
            "num_states",
            Scope::Sample,
            "number of lowest-energy states to return",
        )
        .with_default(ArgValue::Integer(1)),
    )
}
