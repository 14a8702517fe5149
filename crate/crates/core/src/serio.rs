//! Coordinate-format (COO) problem input and CSV sample output.
//!
//! A COO file holds one `i j value` triplet per line. Off-diagonal triplets
//! are couplings, diagonal triplets are linear biases, and repeated entries
//! accumulate. Blank lines and lines starting with `#` are ignored.
//!
//! The CSV writer emits a header of variable labels followed by
//! `energy,num_occurrences`, then one row per record. Reals use the shortest
//! decimal that parses back to the same `f64` (`-3.5`, `-3.0`, `1e-7`).

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::{BinaryQuadraticModel, Label, Vartype};
use crate::sampleset::SampleSet;

pub fn read_coo<R: BufRead>(reader: R, vartype: Vartype) -> Result<BinaryQuadraticModel> {
    let mut bqm = BinaryQuadraticModel::new(vartype);
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let parsed = parse_triplet(&line).map_err(|reason| Error::Parse {
            line: n + 1,
            text: line.clone(),
            reason,
        })?;
        let Some((i, j, value)) = parsed else {
            continue;
        };
        bqm.add_term(i, j, value).map_err(|e| Error::Parse {
            line: n + 1,
            text: line.clone(),
            reason: e.to_string(),
        })?;
    }
    Ok(bqm)
}

pub fn read_coo_str(text: &str, vartype: Vartype) -> Result<BinaryQuadraticModel> {
    read_coo(text.as_bytes(), vartype)
}

/// `Ok(None)` for blank and comment lines.
fn parse_triplet(line: &str) -> std::result::Result<Option<(Label, Label, f64)>, String> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let fields: Vec<&str> = trimmed.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(format!(
            "expected 3 fields \"i j value\", found {}",
            fields.len()
        ));
    }
    let label = |s: &str| {
        s.parse::<Label>()
            .map_err(|_| format!("invalid variable label {s:?}"))
    };
    let i = label(fields[0])?;
    let j = label(fields[1])?;
    let value: f64 = fields[2]
        .parse()
        .map_err(|_| format!("invalid value {:?}", fields[2]))?;
    if !value.is_finite() {
        return Err(format!("value {:?} is not finite", fields[2]));
    }
    Ok(Some((i, j, value)))
}

/// Writes every stored term of `bqm` as a COO triplet: linear biases first,
/// then couplings, both in ascending order. The offset is not representable
/// and is dropped.
pub fn write_coo<W: Write>(bqm: &BinaryQuadraticModel, mut out: W) -> std::io::Result<()> {
    for (&label, &bias) in bqm.linear() {
        writeln!(out, "{label} {label} {}", format_real(bias))?;
    }
    for (&(i, j), &coupling) in bqm.quadratic() {
        writeln!(out, "{i} {j} {}", format_real(coupling))?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(ss: &SampleSet, mut out: W) -> std::io::Result<()> {
    let mut line = String::new();
    for label in ss.labels() {
        line.push_str(&label.to_string());
        line.push(',');
    }
    line.push_str("energy,num_occurrences\n");
    out.write_all(line.as_bytes())?;
    for record in ss.records() {
        line.clear();
        for value in record.assignment.values() {
            line.push_str(&value.to_string());
            line.push(',');
        }
        line.push_str(&format_real(record.energy));
        line.push(',');
        line.push_str(&record.num_occurrences.to_string());
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn to_csv_string(ss: &SampleSet) -> String {
    let mut buf = Vec::new();
    write_csv(ss, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Shortest round-trip decimal; integral values keep a trailing `.0`.
pub fn format_real(x: f64) -> String {
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampleset::SampleRecord;

    const TRIANGLE: &str = "1 2 1.5\n0 1 -1\n0 2 -3\n";

    #[test]
    fn reads_triangle() {
        let m = read_coo_str(TRIANGLE, Vartype::Spin).unwrap();
        assert_eq!(m.vartype(), Vartype::Spin);
        assert!(m.linear().is_empty());
        assert_eq!(m.offset(), 0.0);
        let q: Vec<_> = m.quadratic().iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(q, [((0, 1), -1.0), ((0, 2), -3.0), ((1, 2), 1.5)]);
    }

    #[test]
    fn empty_input_is_empty_model() {
        let m = read_coo_str("", Vartype::Binary).unwrap();
        assert!(m.is_empty());
        assert_eq!(m.vartype(), Vartype::Binary);
    }

    #[test]
    fn diagonal_and_duplicates() {
        let m = read_coo_str("0 0 2.0\n0 1 1.0", Vartype::Spin).unwrap();
        assert_eq!(m.linear()[&0], 2.0);
        assert_eq!(m.quadratic()[&(0, 1)], 1.0);

        let m = read_coo_str("1 2 1.0\n2 1 0.5", Vartype::Spin).unwrap();
        assert_eq!(m.quadratic().len(), 1);
        assert_eq!(m.quadratic()[&(1, 2)], 1.5);
    }

    #[test]
    fn skips_blank_and_comment_lines() {
        let text = "# header comment\n\n   \n  # indented\n0\t1   2.5\n";
        let m = read_coo_str(text, Vartype::Spin).unwrap();
        assert_eq!(m.quadratic()[&(0, 1)], 2.5);
    }

    #[test]
    fn zero_valued_entries_still_declare_variables() {
        let m = read_coo_str("0 0 0\n3 3 0.0\n", Vartype::Spin).unwrap();
        assert_eq!(m.labels(), &[0, 3]);
    }

    #[test]
    fn parse_errors_carry_line_number_and_text() {
        let cases = [
            ("0 1 1.0\n0 1\n", 2, "0 1"),
            ("0 1 x\n", 1, "0 1 x"),
            ("\n-1 2 1.0\n", 2, "-1 2 1.0"),
            ("0 1.5 1.0\n", 1, "0 1.5 1.0"),
            ("0 1 inf\n", 1, "0 1 inf"),
            ("0 1 NaN\n", 1, "0 1 NaN"),
            ("0 1 1 1\n", 1, "0 1 1 1"),
        ];
        for (input, line_no, bad) in cases {
            match read_coo_str(input, Vartype::Spin) {
                Err(Error::Parse { line, text, .. }) => {
                    assert_eq!(line, line_no, "{input:?}");
                    assert_eq!(text, bad);
                }
                other => panic!("{input:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn csv_single_record() {
        let ss = SampleSet::from_records(
            vec![0, 1, 2],
            Vartype::Spin,
            vec![SampleRecord::new(vec![1, -1, 1].into(), -3.5)],
        )
        .unwrap();
        assert_eq!(
            to_csv_string(&ss),
            "0,1,2,energy,num_occurrences\n1,-1,1,-3.5,1\n"
        );
    }

    #[test]
    fn csv_header_only_and_sparse_labels() {
        let ss = SampleSet::empty(vec![0, 1], Vartype::Spin);
        assert_eq!(to_csv_string(&ss), "0,1,energy,num_occurrences\n");
        let ss = SampleSet::empty(vec![0, 2, 5], Vartype::Binary);
        assert_eq!(to_csv_string(&ss), "0,2,5,energy,num_occurrences\n");
    }

    #[test]
    fn real_formatting_is_fixed() {
        assert_eq!(format_real(-3.0), "-3.0");
        assert_eq!(format_real(-3.5), "-3.5");
        assert_eq!(format_real(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(format_real(1e-7), "1e-7");
        assert_eq!(format_real(0.0), "0.0");
    }

    #[test]
    fn csv_integral_energy() {
        let ss = SampleSet::from_records(
            vec![0],
            Vartype::Binary,
            vec![SampleRecord {
                assignment: vec![0].into(),
                energy: -3.0,
                num_occurrences: 4,
            }],
        )
        .unwrap();
        assert_eq!(to_csv_string(&ss), "0,energy,num_occurrences\n0,-3.0,4\n");
    }
}
