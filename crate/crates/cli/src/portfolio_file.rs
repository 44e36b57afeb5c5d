//! Portfolio files: comma-separated with the header `grade,obligors,defaults`,
//! one row per grade from lowest to highest risk.

use std::collections::HashMap;
use std::io::{Read, Write};

use lowpd::{Grade, Portfolio};

use crate::error::{CliError, CliResult};

const COLUMNS: [&str; 3] = ["grade", "obligors", "defaults"];

pub fn parse<R: Read>(input: R) -> CliResult<Portfolio> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers().map_err(|e| parse_error(1, e))?.clone();
    let index: Vec<usize> = COLUMNS
        .iter()
        .map(|col| {
            headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(col))
                .ok_or_else(|| CliError::Parse(format!("line 1: missing column `{col}`")))
        })
        .collect::<CliResult<_>>()?;

    let mut grades = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(index[i]).unwrap_or("");
        let name = field(0).to_string();
        let count = |i: usize| -> CliResult<u64> {
            field(i).parse().map_err(|_| {
                CliError::Parse(format!(
                    "line {line}: `{}` is not a non-negative integer {}",
                    field(i),
                    COLUMNS[i]
                ))
            })
        };
        let (n, k) = (count(1)?, count(2)?);
        if let Some(first) = seen.insert(name.clone(), line) {
            return Err(CliError::Parse(format!(
                "line {line}: grade `{name}` already defined on line {first}"
            )));
        }
        let grade = Grade::new(name, n, k).map_err(|e| CliError::Parse(format!("line {line}: {e}")))?;
        grades.push(grade);
    }
    Portfolio::new(grades).map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_error(line: u64, e: csv::Error) -> CliError {
    CliError::Parse(format!("line {line}: {e}"))
}

pub fn write<W: Write>(pf: &Portfolio, out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for g in pf.grades() {
        w.write_record([g.name(), &g.n_obligors().to_string(), &g.k_defaults().to_string()])?;
    }
    w.flush()?;
    Ok(())
}
