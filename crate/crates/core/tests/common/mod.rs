#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsolve::{Assignment, BinaryQuadraticModel, SampleRecord, Vartype};

/// Dense random model over labels `0..n`: every linear bias and every
/// coupling uniform in `[-2, 2)`.
pub fn random_model(n: usize, vartype: Vartype, seed: u64) -> BinaryQuadraticModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = BinaryQuadraticModel::new(vartype);
    for i in 0..n as u64 {
        m.add_term(i, i, rng.gen_range(-2.0..2.0)).unwrap();
        for j in i + 1..n as u64 {
            m.add_term(i, j, rng.gen_range(-2.0..2.0)).unwrap();
        }
    }
    m
}

/// Assignment for bit pattern `bits`, bit `i` setting variable `i` high.
pub fn from_bits(bits: u64, n: usize, vartype: Vartype) -> Assignment {
    Assignment::new(
        (0..n)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    vartype.high()
                } else {
                    vartype.low()
                }
            })
            .collect(),
    )
}

/// Every assignment in counting order, evaluated with the model's direct
/// energy formula, fully sorted by (energy, values).
pub fn naive_spectrum(m: &BinaryQuadraticModel) -> Vec<SampleRecord> {
    let n = m.num_variables();
    let mut all: Vec<SampleRecord> = (0..1u64 << n)
        .map(|bits| {
            let a = from_bits(bits, n, m.vartype());
            let e = m.energy(&a).unwrap();
            SampleRecord::new(a, e)
        })
        .collect();
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}

/// Term-by-term evaluation straight from the stored maps, without going
/// through the model's own energy routine.
pub fn term_energy(m: &BinaryQuadraticModel, values: &[i8]) -> f64 {
    let idx = |l: u64| m.labels().iter().position(|&x| x == l).unwrap();
    let v = |l: u64| f64::from(values[idx(l)]);
    m.offset()
        + m.linear().iter().map(|(&l, &h)| h * v(l)).sum::<f64>()
        + m.quadratic()
            .iter()
            .map(|(&(i, j), &c)| c * v(i) * v(j))
            .sum::<f64>()
}
