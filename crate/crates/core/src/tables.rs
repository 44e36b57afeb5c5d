//! Reference bound and quantile tables for two example portfolios, with the
//! published values embedded verbatim for comparison.
//!
//! Bound tables are in percent. Quantile tables hold `F^-1_{n-k,k+1,rho}(1-gamma)`.

use crate::binomial_bound::BoundQuery;
use crate::config::NumericConfig;
use crate::conservatism::{allocate, Allocation, Grade, Portfolio};
use crate::error::Result;
use crate::par;
use crate::pd_upper_bound;
use crate::specfun::Probability;
use crate::vasicek::{solve_f_quantile, MixtureShape};

/// Confidence levels of every table's columns.
pub const GAMMAS: [f64; 6] = [0.5, 0.75, 0.9, 0.95, 0.99, 0.999];

/// Asset correlation of the correlated tables.
pub const TABLE_RHO: f64 = 0.12;

/// Percentage with two decimals, rounded half away from zero.
pub fn round_percent(p: f64) -> f64 {
    (p * 100.0 * 100.0).round() / 100.0
}

/// Rounds to two decimals, half away from zero.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Three grades A, B, C with 100, 400, 300 obligors and 0, 2, 1 defaults.
pub fn example_one() -> Portfolio {
    build(&[("A", 100, 0), ("B", 400, 2), ("C", 300, 1)])
}

/// Four grades A to D with 400, 700, 250, 150 obligors and 2, 1, 3, 1 defaults.
pub fn example_two() -> Portfolio {
    build(&[("A", 400, 2), ("B", 700, 1), ("C", 250, 3), ("D", 150, 1)])
}

fn build(rows: &[(&str, u64, u64)]) -> Portfolio {
    Portfolio::new(
        rows.iter()
            .map(|&(name, n, k)| Grade::new(name, n, k).expect("valid example grade"))
            .collect(),
    )
    .expect("valid example portfolio")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// `1 - B^-1_{n-k,k+1}(1-gamma)` in percent.
    IndependentBound,
    /// `F^-1_{n-k,k+1,rho}(1-gamma)`.
    Quantile,
    /// `1 - Phi(sqrt(1-rho) F^-1_{n-k,k+1,rho}(1-gamma))` in percent.
    CorrelatedBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    One,
    Two,
}

impl Example {
    pub fn portfolio(self) -> Portfolio {
        match self {
            Example::One => example_one(),
            Example::Two => example_two(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceTable {
    pub id: u8,
    pub caption: &'static str,
    pub kind: TableKind,
    pub example: Example,
    /// Published values, one row per grade, one column per entry of [`GAMMAS`].
    pub expected: &'static [[f64; 6]],
    /// Largest accepted absolute deviation from `expected`.
    pub tolerance: f64,
}

impl ReferenceTable {
    pub fn rho(&self) -> Option<f64> {
        match self.kind {
            TableKind::IndependentBound => None,
            TableKind::Quantile | TableKind::CorrelatedBound => Some(TABLE_RHO),
        }
    }

    pub fn is_percent(&self) -> bool {
        self.kind != TableKind::Quantile
    }

    pub fn rows(&self) -> Vec<Allocation> {
        allocate(&self.example.portfolio())
    }

    /// Row label in the published layout, e.g. `1 - B^-1_{797,4}(1-gamma)`.
    pub fn row_label(&self, a: &Allocation) -> String {
        let (s1, s2) = (a.n_used - a.k_used, a.k_used + 1);
        match self.kind {
            TableKind::IndependentBound => format!("1-B^-1_{{{s1},{s2}}}(1-g)"),
            TableKind::Quantile => format!("F^-1_{{{s1},{s2},{TABLE_RHO}}}(1-g)"),
            TableKind::CorrelatedBound => format!("{} ({s1},{s2})", a.name),
        }
    }
}

static TABLES: [ReferenceTable; 6] = [
    ReferenceTable {
        id: 1,
        caption: "Upper bounds of p_A, p_B, p_C (independent obligors), percent",
        kind: TableKind::IndependentBound,
        example: Example::One,
        expected: &[
            [0.46, 0.64, 0.83, 0.97, 1.25, 1.62],
            [0.52, 0.73, 0.95, 1.10, 1.43, 1.85],
            [0.56, 0.90, 1.29, 1.57, 2.19, 3.04],
        ],
        tolerance: 0.01,
    },
    ReferenceTable {
        id: 2,
        caption: "Quantiles F^-1_{n-k,k+1,0.12}(1-gamma) for grades A, B, C",
        kind: TableKind::Quantile,
        example: Example::One,
        expected: &[
            [2.61, 2.34, 2.09, 1.94, 1.67, 1.36],
            [2.57, 2.29, 2.04, 1.90, 1.62, 1.31],
            [2.55, 2.25, 1.98, 1.82, 1.52, 1.19],
        ],
        tolerance: 0.01,
    },
    ReferenceTable {
        id: 3,
        caption: "Upper bounds of p_A, p_B, p_C with asset correlation 0.12, percent",
        kind: TableKind::CorrelatedBound,
        example: Example::One,
        expected: &[
            [0.71, 1.41, 2.49, 3.41, 5.88, 10.08],
            [0.80, 1.58, 2.76, 3.77, 6.43, 10.91],
            [0.84, 1.75, 3.18, 4.41, 7.67, 13.13],
        ],
        tolerance: 0.02,
    },
    ReferenceTable {
        id: 4,
        caption: "Upper bounds of p_A, p_B, p_C, p_D (independent obligors), percent",
        kind: TableKind::IndependentBound,
        example: Example::Two,
        expected: &[
            [0.51, 0.65, 0.78, 0.87, 1.06, 1.30],
            [0.52, 0.67, 0.84, 0.95, 1.19, 1.49],
            [1.17, 1.56, 1.99, 2.27, 2.87, 3.65],
            [1.12, 1.78, 2.57, 3.12, 4.34, 5.99],
        ],
        tolerance: 0.01,
    },
    ReferenceTable {
        id: 5,
        caption: "Quantiles F^-1_{n-k,k+1,0.12}(1-gamma) for grades A, B, C, D",
        kind: TableKind::Quantile,
        example: Example::Two,
        expected: &[
            [2.57, 2.31, 2.07, 1.93, 1.67, 1.37],
            [2.57, 2.30, 2.06, 1.92, 1.65, 1.35],
            [2.27, 2.00, 1.75, 1.61, 1.33, 1.02],
            [2.30, 1.98, 1.71, 1.54, 1.24, 0.91],
        ],
        tolerance: 0.01,
    },
    ReferenceTable {
        id: 6,
        caption: "Upper bounds of p_A, p_B, p_C, p_D with asset correlation 0.12, percent",
        kind: TableKind::CorrelatedBound,
        example: Example::Two,
        expected: &[
            [0.79, 1.51, 2.59, 3.49, 5.58, 9.90],
            [0.79, 1.53, 2.64, 3.58, 6.06, 10.23],
            [1.64, 3.04, 5.01, 6.60, 10.61, 16.87],
            [1.56, 3.13, 5.45, 7.36, 12.21, 19.76],
        ],
        tolerance: 0.02,
    },
];

pub fn reference(id: u8) -> Option<&'static ReferenceTable> {
    TABLES.iter().find(|t| t.id == id)
}

pub fn all() -> &'static [ReferenceTable] {
    &TABLES
}

/// A regenerated table at full precision, in the same units as the reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputedTable {
    pub table: &'static ReferenceTable,
    pub rows: Vec<Allocation>,
    pub values: Vec<[f64; 6]>,
}

/// One cell outside the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMismatch {
    pub row: usize,
    pub col: usize,
    pub expected: f64,
    pub computed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableDiff {
    pub max_deviation: f64,
    /// `(row, col)` of the largest deviation.
    pub worst: (usize, usize),
    pub mismatches: Vec<CellMismatch>,
    pub tolerance: f64,
}

impl TableDiff {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

// Absorbs binary representation error of the two-decimal reference values.
const TOLERANCE_SLACK: f64 = 1e-9;

impl ComputedTable {
    pub fn diff(&self) -> TableDiff {
        let mut out = TableDiff {
            max_deviation: 0.0,
            worst: (0, 0),
            mismatches: Vec::new(),
            tolerance: self.table.tolerance,
        };
        for (r, (got_row, want_row)) in self.values.iter().zip(self.table.expected).enumerate() {
            for (c, (&got, &want)) in got_row.iter().zip(want_row).enumerate() {
                let dev = (got - want).abs();
                if dev > out.max_deviation {
                    out.max_deviation = dev;
                    out.worst = (r, c);
                }
                if !(dev <= self.table.tolerance + TOLERANCE_SLACK) {
                    out.mismatches.push(CellMismatch { row: r, col: c, expected: want, computed: got });
                }
            }
        }
        out
    }

    /// Values rounded to two decimals as published.
    pub fn rounded(&self) -> Vec<[f64; 6]> {
        self.values.iter().map(|row| row.map(round2)).collect()
    }
}

/// Computes one cell: a bound in percent or a quantile.
pub fn compute_cell(
    kind: TableKind,
    n: u64,
    k: u64,
    gamma: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    let q = cfg.integrator()?;
    match kind {
        TableKind::IndependentBound => {
            let query = BoundQuery::new(n, k, gamma, None)?;
            Ok(100.0 * pd_upper_bound(&query, &q)?.p_upper.get())
        }
        TableKind::CorrelatedBound => {
            let query = BoundQuery::new(n, k, gamma, Some(TABLE_RHO))?;
            Ok(100.0 * pd_upper_bound(&query, &q)?.p_upper.get())
        }
        TableKind::Quantile => {
            let shape = MixtureShape::from_counts(n, k, TABLE_RHO)?;
            let prob = Probability::open(1.0 - gamma)?.get();
            Ok(solve_f_quantile(prob, &shape, &q)?.0)
        }
    }
}

/// Regenerates a table; cells may be computed in parallel and are returned
/// in row-major order.
pub fn compute(table: &'static ReferenceTable, cfg: &NumericConfig) -> Result<ComputedTable> {
    let rows = table.rows();
    let cells: Vec<(u64, u64, f64)> = rows
        .iter()
        .flat_map(|a| GAMMAS.iter().map(move |&g| (a.n_used, a.k_used, g)))
        .collect();
    let flat = par::map(cells, |(n, k, g)| compute_cell(table.kind, n, k, g, cfg))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    let values = flat
        .chunks(GAMMAS.len())
        .map(|c| c.try_into().expect("six columns"))
        .collect();
    Ok(ComputedTable { table, rows, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round2(0.125), 0.13);
        assert_eq!(round2(-0.125), -0.13);
        assert_eq!(round_percent(0.008_25), 0.83);
        assert_eq!(round_percent(0.0), 0.0);
    }

    #[test]
    fn reference_shapes_match_allocations() {
        let shapes: Vec<(u64, u64)> = reference(4)
            .unwrap()
            .rows()
            .iter()
            .map(|a| (a.n_used - a.k_used, a.k_used + 1))
            .collect();
        assert_eq!(shapes, vec![(1493, 8), (1095, 6), (396, 5), (149, 2)]);
        for t in all() {
            assert_eq!(t.expected.len(), t.rows().len());
        }
        assert!(reference(7).is_none());
    }

    #[test]
    fn diff_reports_mismatches() {
        let t = reference(1).unwrap();
        let mut values: Vec<[f64; 6]> = t.expected.to_vec();
        values[2][5] += 0.05;
        let computed = ComputedTable { table: t, rows: t.rows(), values };
        let d = computed.diff();
        assert_eq!(d.worst, (2, 5));
        assert_eq!(d.mismatches.len(), 1);
        assert!(!d.passed());
    }
}
