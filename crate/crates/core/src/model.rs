//! Binary quadratic models.
//!
//! A model assigns an energy
//!
//! ```text
//! E(v) = offset + sum_i h_i v_i + sum_{i<j} J_ij v_i v_j
//! ```
//!
//! to every assignment `v`, with each unordered pair counted once. Variables
//! take values in `{-1, +1}` ([`Vartype::Spin`]) or `{0, 1}`
//! ([`Vartype::Binary`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{ConformanceError, Error, Result};

/// Variable label. Labels need not be contiguous.
pub type Label = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vartype {
    Spin,
    Binary,
}

impl Vartype {
    pub const ALL: [Vartype; 2] = [Vartype::Spin, Vartype::Binary];

    /// The smaller of the two domain values (`-1` or `0`).
    pub fn low(self) -> i8 {
        match self {
            Vartype::Spin => -1,
            Vartype::Binary => 0,
        }
    }

    pub fn high(self) -> i8 {
        1
    }

    pub fn contains(self, value: i8) -> bool {
        value == self.low() || value == self.high()
    }

    pub fn name(self) -> &'static str {
        match self {
            Vartype::Spin => "SPIN",
            Vartype::Binary => "BINARY",
        }
    }
}

impl fmt::Display for Vartype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Vartype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SPIN" => Ok(Vartype::Spin),
            "BINARY" => Ok(Vartype::Binary),
            other => Err(Error::Usage(format!(
                "invalid vartype {other:?} (choose from SPIN, BINARY)"
            ))),
        }
    }
}

/// One value per model variable, stored in ascending label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<i8>);

impl Assignment {
    pub fn new(values: Vec<i8>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<i8> {
        self.0
    }

    /// Maps every value through the bijection between `from` and `to`
    /// (`s = 2x - 1`).
    pub fn convert(&self, from: Vartype, to: Vartype) -> Assignment {
        if from == to {
            return self.clone();
        }
        Assignment(
            self.0
                .iter()
                .map(|&v| {
                    if v == from.high() {
                        to.high()
                    } else {
                        to.low()
                    }
                })
                .collect(),
        )
    }
}

impl From<Vec<i8>> for Assignment {
    fn from(values: Vec<i8>) -> Self {
        Assignment(values)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryQuadraticModel {
    vartype: Vartype,
    linear: BTreeMap<Label, f64>,
    quadratic: BTreeMap<(Label, Label), f64>,
    offset: f64,
    labels: Vec<Label>,
}

impl BinaryQuadraticModel {
    pub fn new(vartype: Vartype) -> Self {
        BinaryQuadraticModel {
            vartype,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: 0.0,
            labels: Vec::new(),
        }
    }

    pub fn vartype(&self) -> Vartype {
        self.vartype
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    /// Ascending, duplicate-free.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn num_variables(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn linear(&self) -> &BTreeMap<Label, f64> {
        &self.linear
    }

    /// Couplings keyed by `(i, j)` with `i < j`.
    pub fn quadratic(&self) -> &BTreeMap<(Label, Label), f64> {
        &self.quadratic
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    fn touch(&mut self, label: Label) {
        if let Err(pos) = self.labels.binary_search(&label) {
            self.labels.insert(pos, label);
        }
    }

    /// Accumulates `value` onto the bias for `(i, j)`. A diagonal entry is a
    /// linear bias; off-diagonal entries are stored under `(min, max)`.
    pub fn add_term(&mut self, i: Label, j: Label, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFiniteTerm { i, j, value });
        }
        if i == j {
            *self.linear.entry(i).or_insert(0.0) += value;
            self.touch(i);
        } else {
            let key = (i.min(j), i.max(j));
            *self.quadratic.entry(key).or_insert(0.0) += value;
            self.touch(i);
            self.touch(j);
        }
        Ok(())
    }

    pub fn add_linear(&mut self, label: Label, bias: f64) -> Result<()> {
        self.add_term(label, label, bias)
    }

    pub fn add_quadratic(&mut self, i: Label, j: Label, coupling: f64) -> Result<()> {
        if i == j {
            return Err(Error::Domain(format!(
                "self-coupling ({i}, {i}) is not a quadratic term"
            )));
        }
        self.add_term(i, j, coupling)
    }

    pub fn check(&self, assignment: &Assignment) -> Result<(), ConformanceError> {
        let values = assignment.values();
        if values.len() != self.labels.len() {
            return Err(ConformanceError::Length {
                expected: self.labels.len(),
                found: values.len(),
            });
        }
        for (&label, &value) in self.labels.iter().zip(values) {
            if !self.vartype.contains(value) {
                return Err(ConformanceError::OutOfDomain { label, value });
            }
        }
        Ok(())
    }

    /// Builds an assignment from `(label, value)` pairs, requiring exactly
    /// one pair per model label.
    pub fn assignment_from_pairs<I>(&self, pairs: I) -> Result<Assignment>
    where
        I: IntoIterator<Item = (Label, i8)>,
    {
        let mut slots: Vec<Option<i8>> = vec![None; self.labels.len()];
        for (label, value) in pairs {
            let idx = self
                .index_of(label)
                .ok_or(ConformanceError::UnknownLabel(label))?;
            slots[idx] = Some(value);
        }
        let values = slots
            .into_iter()
            .zip(&self.labels)
            .map(|(v, &label)| v.ok_or(ConformanceError::MissingLabel(label)))
            .collect::<Result<Vec<_>, _>>()?;
        let assignment = Assignment(values);
        self.check(&assignment)?;
        Ok(assignment)
    }

    /// Energy of a conforming assignment. Terms are summed starting from the
    /// offset, then linear biases by ascending label, then couplings by
    /// ascending pair.
    pub fn energy(&self, assignment: &Assignment) -> Result<f64> {
        self.check(assignment)?;
        let values = assignment.values();
        let value_of = |label: Label| {
            // Labels of every stored term are in `self.labels`.
            f64::from(values[self.index_of(label).unwrap()])
        };
        let mut energy = self.offset;
        for (&label, &bias) in &self.linear {
            energy += bias * value_of(label);
        }
        for (&(i, j), &coupling) in &self.quadratic {
            energy += coupling * value_of(i) * value_of(j);
        }
        Ok(energy)
    }

    /// Returns the equivalent model over `target`, preserving energies under
    /// `s = 2x - 1`.
    pub fn change_vartype(&self, target: Vartype) -> BinaryQuadraticModel {
        if target == self.vartype {
            return self.clone();
        }
        let mut out = BinaryQuadraticModel {
            vartype: target,
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: self.offset,
            labels: self.labels.clone(),
        };
        match target {
            // x = (s + 1) / 2
            Vartype::Spin => {
                for (&label, &bias) in &self.linear {
                    *out.linear.entry(label).or_insert(0.0) += bias / 2.0;
                    out.offset += bias / 2.0;
                }
                for (&(i, j), &coupling) in &self.quadratic {
                    let quarter = coupling / 4.0;
                    out.quadratic.insert((i, j), quarter);
                    *out.linear.entry(i).or_insert(0.0) += quarter;
                    *out.linear.entry(j).or_insert(0.0) += quarter;
                    out.offset += quarter;
                }
            }
            // s = 2x - 1
            Vartype::Binary => {
                for (&label, &bias) in &self.linear {
                    *out.linear.entry(label).or_insert(0.0) += 2.0 * bias;
                    out.offset -= bias;
                }
                for (&(i, j), &coupling) in &self.quadratic {
                    out.quadratic.insert((i, j), 4.0 * coupling);
                    *out.linear.entry(i).or_insert(0.0) -= 2.0 * coupling;
                    *out.linear.entry(j).or_insert(0.0) -= 2.0 * coupling;
                    out.offset += coupling;
                }
            }
        }
        out
    }

    /// Dense, index-addressed view used by the solvers.
    pub fn to_indexed(&self) -> IndexedModel {
        let n = self.labels.len();
        let mut linear = vec![0.0; n];
        for (&label, &bias) in &self.linear {
            linear[self.index_of(label).unwrap()] = bias;
        }
        let mut neighbors = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.quadratic.len());
        for (&(i, j), &coupling) in &self.quadratic {
            let (a, b) = (self.index_of(i).unwrap(), self.index_of(j).unwrap());
            neighbors[a].push((b, coupling));
            neighbors[b].push((a, coupling));
            edges.push((a, b, coupling));
        }
        IndexedModel {
            vartype: self.vartype,
            offset: self.offset,
            linear,
            has_linear: self
                .labels
                .iter()
                .map(|l| self.linear.contains_key(l))
                .collect(),
            neighbors,
            edges,
        }
    }
}

/// A model with variables renumbered `0..n` in ascending label order.
#[derive(Debug, Clone)]
pub struct IndexedModel {
    vartype: Vartype,
    offset: f64,
    linear: Vec<f64>,
    has_linear: Vec<bool>,
    neighbors: Vec<Vec<(usize, f64)>>,
    edges: Vec<(usize, usize, f64)>,
}

impl IndexedModel {
    pub fn vartype(&self) -> Vartype {
        self.vartype
    }

    pub fn num_variables(&self) -> usize {
        self.linear.len()
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbors[i]
    }

    /// Same summation order as [`BinaryQuadraticModel::energy`], so the two
    /// agree bit-for-bit. Values are not domain-checked.
    pub fn energy(&self, values: &[i8]) -> f64 {
        let mut energy = self.offset;
        for (i, (&bias, &present)) in self.linear.iter().zip(&self.has_linear).enumerate() {
            if present {
                energy += bias * f64::from(values[i]);
            }
        }
        for &(a, b, coupling) in &self.edges {
            energy += coupling * f64::from(values[a]) * f64::from(values[b]);
        }
        energy
    }

    /// `h_i + sum_j J_ij v_j` for every variable. Flipping `v_i` to `v_i'`
    /// changes the energy by `(v_i' - v_i) * field_i`.
    pub fn local_fields(&self, values: &[i8]) -> Vec<f64> {
        (0..self.num_variables())
            .map(|i| {
                self.neighbors[i]
                    .iter()
                    .fold(self.linear[i], |acc, &(j, c)| {
                        acc + c * f64::from(values[j])
                    })
            })
            .collect()
    }
}
