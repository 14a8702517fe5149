//! Solver output: assignments with their energies and occurrence counts.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Assignment, BinaryQuadraticModel, Label, Vartype};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub assignment: Assignment,
    pub energy: f64,
    pub num_occurrences: u64,
}

impl SampleRecord {
    pub fn new(assignment: Assignment, energy: f64) -> Self {
        SampleRecord {
            assignment,
            energy,
            num_occurrences: 1,
        }
    }

    /// Ascending energy, then lexicographically ascending values.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.energy
            .total_cmp(&other.energy)
            .then_with(|| self.assignment.cmp(&other.assignment))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    labels: Vec<Label>,
    vartype: Vartype,
    records: Vec<SampleRecord>,
}

impl SampleSet {
    pub fn empty(labels: Vec<Label>, vartype: Vartype) -> Self {
        SampleSet {
            labels,
            vartype,
            records: Vec::new(),
        }
    }

    /// Wraps records produced elsewhere. Every record must have one value per
    /// label.
    pub fn from_records(
        labels: Vec<Label>,
        vartype: Vartype,
        records: Vec<SampleRecord>,
    ) -> Result<Self> {
        for r in &records {
            if r.assignment.len() != labels.len() {
                return Err(crate::ConformanceError::Length {
                    expected: labels.len(),
                    found: r.assignment.len(),
                }
                .into());
            }
            if r.num_occurrences == 0 {
                return Err(Error::Domain("num_occurrences must be at least 1".into()));
            }
        }
        Ok(SampleSet {
            labels,
            vartype,
            records,
        })
    }

    /// One record per assignment, energies from `bqm`, input order kept.
    pub fn from_assignments<I>(bqm: &BinaryQuadraticModel, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = Assignment>,
    {
        let records = assignments
            .into_iter()
            .map(|a| {
                let energy = bqm.energy(&a)?;
                Ok(SampleRecord::new(a, energy))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleSet {
            labels: bqm.labels().to_vec(),
            vartype: bqm.vartype(),
            records,
        })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vartype(&self) -> Vartype {
        self.vartype
    }

    pub fn records(&self) -> &[SampleRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn total_occurrences(&self) -> u64 {
        self.records.iter().map(|r| r.num_occurrences).sum()
    }

    /// Merges identical assignments, summing occurrences. Distinct
    /// assignments keep their first-seen order.
    pub fn aggregate(&self) -> SampleSet {
        let mut seen: HashMap<&Assignment, usize> = HashMap::new();
        let mut records: Vec<SampleRecord> = Vec::new();
        for r in &self.records {
            match seen.get(&r.assignment) {
                Some(&i) => records[i].num_occurrences += r.num_occurrences,
                None => {
                    seen.insert(&r.assignment, records.len());
                    records.push(r.clone());
                }
            }
        }
        SampleSet {
            labels: self.labels.clone(),
            vartype: self.vartype,
            records,
        }
    }

    pub fn sort_by_energy(&self) -> SampleSet {
        let mut records = self.records.clone();
        records.sort_by(SampleRecord::canonical_cmp);
        SampleSet {
            labels: self.labels.clone(),
            vartype: self.vartype,
            records,
        }
    }

    /// Keeps the first `k` records (all of them if there are fewer).
    pub fn truncate(&self, k: usize) -> Result<SampleSet> {
        if k == 0 {
            return Err(Error::Parameter("truncate length must be positive".into()));
        }
        let mut out = self.clone();
        out.records.truncate(k);
        Ok(out)
    }

    pub fn lowest(&self) -> Result<&SampleRecord> {
        self.records
            .iter()
            .min_by(|a, b| a.canonical_cmp(b))
            .ok_or(Error::EmptySampleSet)
    }
}
