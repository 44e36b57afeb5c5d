//! Method of conservatism for a portfolio split into rating grades.
//!
//! Grades are ordered from lowest to highest risk. Grade `j` is bounded
//! using the pooled obligors and defaults of itself and every riskier grade,
//! so the safest grade uses the whole portfolio. This can produce a
//! *reversal*, where a riskier grade receives a smaller bound than a safer
//! one. [`remediate_reversal`] then raises the riskier grade's default count
//! one at a time until the order is restored.

use std::collections::HashSet;

use crate::binomial_bound::{check_rho, BoundQuery, BoundResult};
use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::par;
use crate::pd_upper_bound;
use crate::quadrature::Integrator;
use crate::specfun::Probability;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grade {
    name: String,
    n_obligors: u64,
    k_defaults: u64,
}

impl Grade {
    pub fn new(name: impl Into<String>, n_obligors: u64, k_defaults: u64) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::Portfolio("grade name is empty".into()));
        }
        if n_obligors == 0 {
            return Err(Error::Portfolio(format!("grade {name} has no obligors")));
        }
        if k_defaults > n_obligors {
            return Err(Error::Portfolio(format!(
                "grade {name} has {k_defaults} defaults but only {n_obligors} obligors"
            )));
        }
        Ok(Grade { name, n_obligors, k_defaults })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_obligors(&self) -> u64 {
        self.n_obligors
    }

    pub fn k_defaults(&self) -> u64 {
        self.k_defaults
    }
}

/// Grades ordered from lowest to highest risk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portfolio {
    grades: Vec<Grade>,
}

impl Portfolio {
    pub fn new(grades: Vec<Grade>) -> Result<Self> {
        if grades.is_empty() {
            return Err(Error::Portfolio("portfolio has no grades".into()));
        }
        let mut seen = HashSet::new();
        for g in &grades {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::Portfolio(format!("duplicate grade name {}", g.name)));
            }
        }
        Ok(Portfolio { grades })
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }
}

/// Pooled counts used for one grade's bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    pub name: String,
    pub n_used: u64,
    pub k_used: u64,
}

/// Suffix sums of obligors and defaults.
pub fn allocate(pf: &Portfolio) -> Vec<Allocation> {
    let mut n = 0;
    let mut k = 0;
    let mut out: Vec<Allocation> = pf
        .grades
        .iter()
        .rev()
        .map(|g| {
            n += g.n_obligors;
            k += g.k_defaults;
            Allocation { name: g.name.clone(), n_used: n, k_used: k }
        })
        .collect();
    out.reverse();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeBound {
    pub name: String,
    pub n_used: u64,
    pub k_used: u64,
    pub p_upper: Probability,
    pub result: BoundResult,
}

/// A riskier grade whose bound is below that of a safer grade.
/// Indices refer to portfolio order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reversal {
    pub safer: usize,
    pub riskier: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeBoundReport {
    pub gamma: Probability,
    pub rho: Option<f64>,
    pub grades: Vec<GradeBound>,
    pub reversals: Vec<Reversal>,
    /// Default increments per grade, present once remediation has run.
    pub adjusted_k: Option<Vec<u64>>,
    /// Grades whose increments hit the cap with a reversal still in place.
    pub unresolved: Vec<usize>,
}

impl GradeBoundReport {
    pub fn has_reversal(&self) -> bool {
        !self.reversals.is_empty()
    }

    /// True if `grade` is the riskier side of some reversal.
    pub fn is_flagged(&self, grade: usize) -> bool {
        self.reversals.iter().any(|r| r.riskier == grade)
    }
}

fn grade_bound(
    name: &str,
    n: u64,
    k: u64,
    gamma: Probability,
    rho: Option<f64>,
    q: &Integrator,
) -> Result<GradeBound> {
    BoundQuery::new(n, k, gamma.get(), rho)
        .and_then(|query| pd_upper_bound(&query, q))
        .map(|result| GradeBound {
            name: name.to_string(),
            n_used: n,
            k_used: k,
            p_upper: result.p_upper,
            result,
        })
        .map_err(|e| Error::Grade { grade: name.to_string(), source: Box::new(e) })
}

/// All pairs `(i, j)` with `i < j` and `values[j] < values[i]`, for bounds
/// listed from the safest grade to the riskiest.
pub fn reversals_in(values: &[f64]) -> Vec<Reversal> {
    let mut out = Vec::new();
    for (j, riskier) in values.iter().enumerate() {
        for (i, safer) in values[..j].iter().enumerate() {
            if riskier < safer {
                out.push(Reversal { safer: i, riskier: j });
            }
        }
    }
    out
}

/// Reversals compared at full precision.
fn find_reversals(grades: &[GradeBound]) -> Vec<Reversal> {
    let values: Vec<f64> = grades.iter().map(|g| g.p_upper.get()).collect();
    reversals_in(&values)
}

/// Bounds for every grade at confidence `gamma`, with the independent model
/// when `rho` is `None`.
pub fn estimate_grades(
    pf: &Portfolio,
    gamma: Probability,
    rho: Option<f64>,
    cfg: &NumericConfig,
) -> Result<GradeBoundReport> {
    if let Some(r) = rho {
        check_rho(r)?;
    }
    let q = cfg.integrator()?;
    let grades = par::map(allocate(pf), |a| {
        grade_bound(&a.name, a.n_used, a.k_used, gamma, rho, &q)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let reversals = find_reversals(&grades);
    Ok(GradeBoundReport {
        gamma,
        rho,
        grades,
        reversals,
        adjusted_k: None,
        unresolved: Vec::new(),
    })
}

/// Raises the default count of each riskier grade in a reversal by one at a
/// time, recomputing only that grade's bound, until it is no smaller than
/// every safer grade's bound. A grade's own defaults are capped at its
/// obligor count; grades that reach the cap still reversed are listed in
/// `unresolved`. A report without reversals is returned unchanged.
pub fn remediate_reversal(
    report: &GradeBoundReport,
    pf: &Portfolio,
    cfg: &NumericConfig,
) -> Result<GradeBoundReport> {
    if !report.has_reversal() {
        return Ok(report.clone());
    }
    if report.grades.len() != pf.len()
        || report.grades.iter().zip(&pf.grades).any(|(b, g)| b.name != g.name)
    {
        return Err(Error::Portfolio("report does not belong to this portfolio".into()));
    }
    let q = cfg.integrator()?;
    let mut grades = report.grades.clone();
    let mut increments = vec![0u64; grades.len()];
    let mut unresolved = Vec::new();

    for j in 1..grades.len() {
        let grade = &pf.grades[j];
        let floor = grades[..j]
            .iter()
            .map(|g| g.p_upper.get())
            .fold(f64::NEG_INFINITY, f64::max);
        while grades[j].p_upper.get() < floor {
            if grade.k_defaults + increments[j] >= grade.n_obligors {
                unresolved.push(j);
                break;
            }
            increments[j] += 1;
            let k = grades[j].k_used + 1;
            grades[j] = grade_bound(&grade.name, grades[j].n_used, k, report.gamma, report.rho, &q)?;
        }
    }

    let reversals = find_reversals(&grades);
    Ok(GradeBoundReport {
        gamma: report.gamma,
        rho: report.rho,
        grades,
        reversals,
        adjusted_k: Some(increments),
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn portfolio(rows: &[(&str, u64, u64)]) -> Portfolio {
        Portfolio::new(rows.iter().map(|&(s, n, k)| Grade::new(s, n, k).unwrap()).collect())
            .unwrap()
    }

    fn example_one() -> Portfolio {
        portfolio(&[("A", 100, 0), ("B", 400, 2), ("C", 300, 1)])
    }

    fn example_two() -> Portfolio {
        portfolio(&[("A", 400, 2), ("B", 700, 1), ("C", 250, 3), ("D", 150, 1)])
    }

    fn gamma(v: f64) -> Probability {
        Probability::open(v).unwrap()
    }

    fn pct(report: &GradeBoundReport) -> Vec<f64> {
        report.grades.iter().map(|g| crate::round_percent(g.p_upper.get())).collect()
    }

    #[test]
    fn allocation_examples() {
        let got: Vec<_> = allocate(&example_one()).iter().map(|a| (a.n_used, a.k_used)).collect();
        assert_eq!(got, vec![(800, 3), (700, 3), (300, 1)]);
        let got: Vec<_> = allocate(&example_two()).iter().map(|a| (a.n_used, a.k_used)).collect();
        assert_eq!(got, vec![(1500, 7), (1100, 5), (400, 4), (150, 1)]);
        let single = allocate(&portfolio(&[("X", 42, 3)]));
        assert_eq!((single[0].n_used, single[0].k_used), (42, 3));
    }

    #[test]
    fn portfolio_validation() {
        assert!(Grade::new("A", 10, 11).is_err());
        assert!(Grade::new("A", 0, 0).is_err());
        assert!(Grade::new(" ", 5, 0).is_err());
        assert!(Portfolio::new(vec![]).is_err());
        let dup = vec![Grade::new("A", 5, 0).unwrap(), Grade::new("A", 6, 1).unwrap()];
        assert!(Portfolio::new(dup).is_err());
    }

    #[test]
    fn example_one_table_one_column() {
        let r = estimate_grades(&example_one(), gamma(0.99), None, &NumericConfig::default())
            .unwrap();
        assert_eq!(pct(&r), vec![1.25, 1.43, 2.19]);
        assert!(!r.has_reversal());
    }

    #[test]
    fn example_two_reversals_flagged() {
        let cfg = NumericConfig::default();
        let r = estimate_grades(&example_two(), gamma(0.5), None, &cfg).unwrap();
        assert_eq!(pct(&r)[2..], [1.17, 1.12]);
        assert_eq!(r.reversals, vec![Reversal { safer: 2, riskier: 3 }]);
        let r = estimate_grades(&example_two(), gamma(0.5), Some(0.12), &cfg).unwrap();
        assert_eq!(pct(&r)[2..], [1.64, 1.56]);
        assert!(r.is_flagged(3));
    }

    #[test]
    fn remediation_finds_first_crossing() {
        let cfg = NumericConfig::default();
        let pf = example_two();
        let r = estimate_grades(&pf, gamma(0.5), None, &cfg).unwrap();
        let fixed = remediate_reversal(&r, &pf, &cfg).unwrap();
        assert!(fixed.reversals.is_empty());
        assert!(fixed.unresolved.is_empty());
        assert_eq!(fixed.adjusted_k, Some(vec![0, 0, 0, 1]));
        assert_eq!(fixed.grades[3].k_used, 2);
        assert_eq!(fixed.grades[..3], r.grades[..3]);
        assert!(fixed.grades.windows(2).all(|w| w[0].p_upper <= w[1].p_upper));
    }

    #[test]
    fn remediation_noop_and_unresolved() {
        let cfg = NumericConfig::default();
        let pf = example_one();
        let r = estimate_grades(&pf, gamma(0.9), None, &cfg).unwrap();
        assert_eq!(remediate_reversal(&r, &pf, &cfg).unwrap(), r);

        // B owns a single obligor, so one extra default cannot lift its
        // pooled bound above A's.
        let pf = portfolio(&[("A", 3, 3), ("B", 1, 0), ("C", 1000, 0)]);
        let r = estimate_grades(&pf, gamma(0.9), None, &cfg).unwrap();
        assert!(r.is_flagged(1) && r.is_flagged(2));
        let fixed = remediate_reversal(&r, &pf, &cfg).unwrap();
        assert_eq!(fixed.unresolved, vec![1]);
        let adjusted = fixed.adjusted_k.clone().unwrap();
        assert_eq!(adjusted[..2], [0, 1]);
        assert!(adjusted[2] > 0);
        assert!(fixed.grades[2].p_upper >= fixed.grades[0].p_upper);
        assert!(fixed.has_reversal());
    }
}
