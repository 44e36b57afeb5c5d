//! Plain-text grids and CSV output.

use std::io::Write;

use lowpd::tables::round2;

use crate::error::CliResult;

/// Marker appended to a cell whose bound is below that of a safer grade.
pub const REVERSAL_MARK: char = '*';

/// Percent label for a confidence level, e.g. `99.9%`.
pub fn gamma_label(gamma: f64) -> String {
    format!("{}%", round_digits(100.0 * gamma, 10))
}

fn round_digits(x: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}

/// Text grid with a left-aligned first column and right-aligned others.
pub struct Grid {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new(header: Vec<String>) -> Self {
        Grid { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: &mut W) -> CliResult<()> {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |out: &mut W, row: &[String]| -> CliResult<()> {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, &w))| if c == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") })
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end())?;
            Ok(())
        };
        line(out, &self.header)?;
        let total = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
        writeln!(out, "{}", "-".repeat(total))?;
        for row in &self.rows {
            line(out, row)?;
        }
        Ok(())
    }
}

/// A two-decimal cell, flagged when `reversed`.
pub fn cell(value: f64, reversed: bool) -> String {
    let value = round2(value);
    if reversed {
        format!("{value:.2}{REVERSAL_MARK}")
    } else {
        format!("{value:.2} ")
    }
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::Writer::from_writer(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_labels() {
        assert_eq!(gamma_label(0.5), "50%");
        assert_eq!(gamma_label(0.999), "99.9%");
        assert_eq!(gamma_label(0.95), "95%");
    }

    #[test]
    fn grid_aligns_columns() {
        let mut g = Grid::new(vec!["grade".into(), "50%".into()]);
        g.push(vec!["A".into(), cell(0.5, false)]);
        g.push(vec!["BB".into(), cell(12.346, true)]);
        let mut buf = Vec::new();
        g.write(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "grade     50%");
        assert_eq!(lines[2], "A       0.50");
        assert_eq!(lines[3], "BB     12.35*");
    }
}
