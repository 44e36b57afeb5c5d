use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use lowpd::mc::simulate_default_count_tail;
use lowpd::tables::{self, ReferenceTable, TableKind, GAMMAS};
use lowpd::{
    beta_quantile, binomial_cdf, estimate_grades, f_cdf, f_quantile, mixture_tail_prob,
    pd_upper_bound, remediate_reversal, reversals_in, round_percent, std_normal_quantile,
    tilde_f_cdf, vasicek_cdf, BoundQuery, FactorModelParams, GradeBoundReport, Integrator,
    McConfig, MixtureShape, NumericConfig, Portfolio, Probability, ShapeParams,
};

use crate::error::{CliError, CliResult};
use crate::portfolio_file;
use crate::render::{cell, csv_writer, gamma_label, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_gammas(gammas: &[f64]) -> CliResult<()> {
    if gammas.is_empty() {
        return Err(usage("at least one --gamma is required"));
    }
    for &g in gammas {
        Probability::open(g)?;
    }
    Ok(())
}

fn model_name(rho: Option<f64>) -> String {
    match rho {
        None => "independent".into(),
        Some(r) => format!("one-factor, rho={r}"),
    }
}

pub struct BoundArgs {
    pub n: u64,
    pub k: u64,
    pub gammas: Vec<f64>,
    pub rho: Option<f64>,
    pub format: Format,
}

pub fn bound<W: Write>(args: &BoundArgs, q: &Integrator, out: &mut W) -> CliResult<()> {
    check_gammas(&args.gammas)?;
    let results = args
        .gammas
        .iter()
        .map(|&g| {
            let query = BoundQuery::new(args.n, args.k, g, args.rho)?;
            Ok((g, pd_upper_bound(&query, q)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    match args.format {
        Format::Table => {
            writeln!(out, "n={} k={} model: {}", args.n, args.k, model_name(args.rho))?;
            if args.k == args.n {
                writeln!(out, "vacuous bound: every obligor defaulted (k = n), so p_upper = 1")?;
            }
            for (g, r) in &results {
                let p = r.p_upper.get();
                write!(out, "gamma={}  p_upper={:.2}%  ({p:.12e})", gamma_label(*g), round_percent(p))?;
                if r.vacuous {
                    writeln!(out)?;
                } else {
                    writeln!(out, "  residual={:.3e}  iterations={}", r.residual, r.iterations)?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "k", "gamma", "rho", "p_upper_percent", "p_upper", "residual", "iterations", "vacuous"])?;
            for (g, r) in &results {
                w.write_record([
                    args.n.to_string(),
                    args.k.to_string(),
                    g.to_string(),
                    args.rho.map_or(String::new(), |r| r.to_string()),
                    format!("{:.2}", round_percent(r.p_upper.get())),
                    r.p_upper.get().to_string(),
                    r.residual.to_string(),
                    r.iterations.to_string(),
                    r.vacuous.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub struct PortfolioArgs {
    pub file: Option<PathBuf>,
    pub gammas: Vec<f64>,
    pub rho: Option<f64>,
    pub remediate: bool,
    pub emit_template: bool,
    pub format: Format,
}

pub fn portfolio<W: Write>(args: &PortfolioArgs, cfg: &NumericConfig, out: &mut W) -> CliResult<()> {
    if args.emit_template {
        return portfolio_file::write(&tables::example_one(), out);
    }
    let path = args.file.as_ref().ok_or_else(|| usage("a portfolio FILE is required"))?;
    check_gammas(&args.gammas)?;
    let file = File::open(path)
        .map_err(|e| CliError::Parse(format!("cannot open {}: {e}", path.display())))?;
    let pf = portfolio_file::parse(BufReader::new(file))?;

    let mut reports = Vec::with_capacity(args.gammas.len());
    for &g in &args.gammas {
        let report = estimate_grades(&pf, Probability::open(g)?, args.rho, cfg)?;
        let remediated = if args.remediate {
            Some(remediate_reversal(&report, &pf, cfg)?)
        } else {
            None
        };
        reports.push((report, remediated));
    }
    match args.format {
        Format::Table => portfolio_table(&pf, args, &reports, out),
        Format::Csv => portfolio_csv(args, &reports, out),
    }
}

type ReportPair = (GradeBoundReport, Option<GradeBoundReport>);

fn portfolio_table<W: Write>(
    pf: &Portfolio,
    args: &PortfolioArgs,
    reports: &[ReportPair],
    out: &mut W,
) -> CliResult<()> {
    writeln!(out, "upper PD bounds in percent, model: {}", model_name(args.rho))?;
    let mut header = vec!["grade".to_string(), "n".into(), "k".into()];
    header.extend(args.gammas.iter().map(|&g| gamma_label(g)));
    let mut grid = Grid::new(header.clone());
    for (i, g) in reports[0].0.grades.iter().enumerate() {
        let mut row = vec![g.name.clone(), g.n_used.to_string(), g.k_used.to_string()];
        row.extend(reports.iter().map(|(r, _)| cell(100.0 * r.grades[i].p_upper.get(), r.is_flagged(i))));
        grid.push(row);
    }
    grid.write(out)?;
    let flagged = reports.iter().any(|(r, _)| r.has_reversal());
    if flagged {
        writeln!(out, "* bound below that of a safer grade")?;
    }
    if !args.remediate {
        return Ok(());
    }

    writeln!(out)?;
    writeln!(out, "after remediation (pooled defaults k shown when raised)")?;
    let mut grid = Grid::new(header);
    for (i, grade) in pf.grades().iter().enumerate() {
        let base = &reports[0].0.grades[i];
        let mut row = vec![grade.name().to_string(), base.n_used.to_string(), base.k_used.to_string()];
        for (_, fixed) in reports {
            let fixed = fixed.as_ref().expect("remediation ran");
            let b = &fixed.grades[i];
            let mut text = cell(100.0 * b.p_upper.get(), fixed.is_flagged(i));
            if b.k_used != base.k_used {
                text = format!("{} [k={}]", text.trim_end(), b.k_used);
            }
            if fixed.unresolved.contains(&i) {
                text.push_str(" unresolved");
            }
            row.push(text);
        }
        grid.push(row);
    }
    grid.write(out)?;
    Ok(())
}

fn portfolio_csv<W: Write>(args: &PortfolioArgs, reports: &[ReportPair], out: &mut W) -> CliResult<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["grade", "gamma", "n_used", "k_used", "p_upper_percent", "p_upper", "reversal"];
    if args.remediate {
        header.extend(["adjusted_k_used", "adjusted_p_upper_percent", "adjusted_p_upper", "unresolved"]);
    }
    w.write_record(&header)?;
    for (g, (report, fixed)) in args.gammas.iter().zip(reports) {
        for (i, b) in report.grades.iter().enumerate() {
            let mut rec = vec![
                b.name.clone(),
                g.to_string(),
                b.n_used.to_string(),
                b.k_used.to_string(),
                format!("{:.2}", round_percent(b.p_upper.get())),
                b.p_upper.get().to_string(),
                report.is_flagged(i).to_string(),
            ];
            if let Some(fixed) = fixed {
                let a = &fixed.grades[i];
                rec.extend([
                    a.k_used.to_string(),
                    format!("{:.2}", round_percent(a.p_upper.get())),
                    a.p_upper.get().to_string(),
                    fixed.unresolved.contains(&i).to_string(),
                ]);
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn quantile<W: Write>(prob: f64, a: f64, b: f64, rho: f64, q: &Integrator, out: &mut W) -> CliResult<()> {
    let p = Probability::open(prob)?;
    let shape = MixtureShape::new(a, b, rho)?;
    let y = f_quantile(p, &shape, q)?;
    writeln!(out, "F^-1_{{{a},{b},{rho}}}({prob}) = {:.2}  ({y:.12})", tables::round2(y))?;
    if rho == 0.0 {
        let x = beta_quantile(p, ShapeParams::new(a, b)?)?;
        let direct = std_normal_quantile(Probability::new(x)?)?;
        writeln!(
            out,
            "rho=0 check: Phi^-1(B^-1_{{{a},{b}}}({prob})) = {direct:.12}  difference {:.3e}",
            y - direct
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    /// Density of F_{a,b,rho} on the real line.
    FDensity,
    /// Density of 1 - F_{a,b,rho}(-Phi^-1(p) / sqrt(1-rho)) on (0, 1).
    TildeFDensity,
    /// Density of the Vasicek distribution of the conditional PD on (0, 1).
    Vasicek,
}

pub struct DensityArgs {
    pub kind: DensityKind,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub rho: f64,
    pub p: Option<f64>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub step: Option<f64>,
    pub cdf: bool,
}

/// Central-difference step for densities.
pub const DENSITY_STEP: f64 = 1e-4;

enum Curve {
    Real(MixtureShape),
    Tilde(MixtureShape),
    Vasicek(FactorModelParams),
}

impl Curve {
    fn on_unit_interval(&self) -> bool {
        !matches!(self, Curve::Real(_))
    }

    fn cdf(&self, x: f64, q: &Integrator) -> CliResult<f64> {
        if self.on_unit_interval() {
            if x <= 0.0 {
                return Ok(0.0);
            }
            if x >= 1.0 {
                return Ok(1.0);
            }
        }
        Ok(match self {
            Curve::Real(s) => f_cdf(x, s, q)?.get(),
            Curve::Tilde(s) => tilde_f_cdf(Probability::new(x)?, s, q)?.get(),
            Curve::Vasicek(m) => vasicek_cdf(Probability::new(x)?, m)?.get(),
        })
    }

    fn density(&self, x: f64, q: &Integrator) -> CliResult<f64> {
        let (mut lo, mut hi) = (x - DENSITY_STEP, x + DENSITY_STEP);
        if self.on_unit_interval() {
            lo = lo.max(0.0);
            hi = hi.min(1.0);
        }
        Ok(((self.cdf(hi, q)? - self.cdf(lo, q)?) / (hi - lo)).max(0.0))
    }
}

pub fn density<W: Write>(args: &DensityArgs, q: &Integrator, out: &mut W) -> CliResult<()> {
    let shape = || -> CliResult<MixtureShape> {
        match (args.a, args.b) {
            (Some(a), Some(b)) => Ok(MixtureShape::new(a, b, args.rho)?),
            _ => Err(usage("--a and --b are required for this density")),
        }
    };
    let curve = match args.kind {
        DensityKind::FDensity => Curve::Real(shape()?),
        DensityKind::TildeFDensity => Curve::Tilde(shape()?),
        DensityKind::Vasicek => {
            let p = args.p.ok_or_else(|| usage("--p is required for the vasicek density"))?;
            if args.rho == 0.0 {
                return Err(usage("the vasicek distribution is a point mass at p when rho = 0"));
            }
            Curve::Vasicek(FactorModelParams::new(p, args.rho)?)
        }
    };
    let (from_default, to_default, step_default) = if curve.on_unit_interval() {
        (0.0, 1.0, 1e-3)
    } else {
        (-4.0, 4.0, 1e-2)
    };
    let from = args.from.unwrap_or(from_default);
    let to = args.to.unwrap_or(to_default);
    let step = args.step.unwrap_or(step_default);
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(usage(format!("grid needs finite --from < --to, got [{from}, {to}]")));
    }
    if !(step > 0.0 && step <= to - from) {
        return Err(usage(format!("--step must lie in (0, {}], got {step}", to - from)));
    }
    if curve.on_unit_interval() && (from < 0.0 || to > 1.0) {
        return Err(usage("grid must lie within [0, 1] for this kind"));
    }

    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let points = (0..count)
        .map(|i| {
            let x = (from + i as f64 * step).min(to);
            let v = if args.cdf { curve.cdf(x, q)? } else { curve.density(x, q)? };
            Ok((x, v))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut w = csv_writer(out);
    w.write_record(["x", if args.cdf { "cdf" } else { "density" }])?;
    for (x, v) in points {
        w.write_record([x.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableChoice {
    One(u8),
    All,
}

impl std::str::FromStr for TableChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(TableChoice::All);
        }
        match s.parse::<u8>() {
            Ok(id) if tables::reference(id).is_some() => Ok(TableChoice::One(id)),
            _ => Err(format!("expected a table number 1-{} or `all`", tables::all().len())),
        }
    }
}

pub fn tables_cmd<W: Write>(which: TableChoice, diff: bool, format: Format, cfg: &NumericConfig, out: &mut W) -> CliResult<()> {
    let chosen: Vec<&'static ReferenceTable> = match which {
        TableChoice::All => tables::all().iter().collect(),
        TableChoice::One(id) => vec![tables::reference(id).expect("validated id")],
    };
    let mut failed = Vec::new();
    let mut csv = (format == Format::Csv).then(|| csv_writer(Vec::new()));
    if let Some(w) = csv.as_mut() {
        w.write_record(["table", "row", "gamma", "value", "rounded", "reversal", "expected"])?;
    }
    for (t, table) in chosen.iter().enumerate() {
        let computed = tables::compute(table, cfg)?;
        let flags = reversal_flags(table, &computed.values);
        let rounded = computed.rounded();
        match csv.as_mut() {
            Some(w) => {
                for (r, a) in computed.rows.iter().enumerate() {
                    for (c, &g) in GAMMAS.iter().enumerate() {
                        w.write_record([
                            table.id.to_string(),
                            table.row_label(a),
                            g.to_string(),
                            computed.values[r][c].to_string(),
                            format!("{:.2}", rounded[r][c]),
                            flags[r][c].to_string(),
                            format!("{:.2}", table.expected[r][c]),
                        ])?;
                    }
                }
            }
            None => {
                if t > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "Table {}: {}", table.id, table.caption)?;
                let mut header = vec!["gamma".to_string()];
                header.extend(GAMMAS.iter().map(|&g| gamma_label(g)));
                let mut grid = Grid::new(header);
                for (r, a) in computed.rows.iter().enumerate() {
                    let mut row = vec![table.row_label(a)];
                    row.extend((0..GAMMAS.len()).map(|c| cell(computed.values[r][c], flags[r][c])));
                    grid.push(row);
                }
                grid.write(out)?;
            }
        }
        if diff {
            let d = computed.diff();
            if csv.is_none() {
                let (wr, wc) = d.worst;
                writeln!(
                    out,
                    "max deviation {:.4} at ({}, {}), tolerance {}: {}",
                    d.max_deviation,
                    computed.rows[wr].name,
                    gamma_label(GAMMAS[wc]),
                    d.tolerance,
                    if d.passed() { "PASS" } else { "FAIL" }
                )?;
                for m in &d.mismatches {
                    writeln!(
                        out,
                        "  mismatch ({}, {}): expected {:.2}, computed {:.4}",
                        computed.rows[m.row].name,
                        gamma_label(GAMMAS[m.col]),
                        m.expected,
                        m.computed
                    )?;
                }
            }
            if !d.passed() {
                failed.push(format!("table {} ({} cells)", table.id, d.mismatches.len()));
            }
        }
    }
    if let Some(w) = csv {
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        out.write_all(&bytes)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::TableDiff(format!("{} outside tolerance", failed.join(", "))))
    }
}

/// Per-cell reversal flags for bound tables, computed column by column.
fn reversal_flags(table: &ReferenceTable, values: &[[f64; 6]]) -> Vec<[bool; 6]> {
    let mut flags = vec![[false; 6]; values.len()];
    if table.kind == TableKind::Quantile {
        return flags;
    }
    for c in 0..GAMMAS.len() {
        let column: Vec<f64> = values.iter().map(|row| row[c]).collect();
        for r in reversals_in(&column) {
            flags[r.riskier][c] = true;
        }
    }
    flags
}

pub struct McCheckArgs {
    pub n: u64,
    pub k: u64,
    pub p: f64,
    pub rho: f64,
    pub mc: McConfig,
}

/// Largest accepted |z| between quadrature and simulation.
pub const MC_Z_LIMIT: f64 = 4.0;

pub fn mc_check<W: Write>(args: &McCheckArgs, q: &Integrator, out: &mut W) -> CliResult<()> {
    if args.k > args.n {
        return Err(usage(format!("defaults k={} exceed obligors n={}", args.k, args.n)));
    }
    let m = FactorModelParams::new(args.p, args.rho)?;
    let want = mixture_tail_prob(args.n, args.k, &m, q)?.get();
    let est = simulate_default_count_tail(args.n, args.k, &m, &args.mc)?;
    let z = est.z_score(want);
    writeln!(
        out,
        "P(D <= {}) for n={}, p={}, rho={}; trials={}, seed={}",
        args.k, args.n, args.p, args.rho, est.trials, args.mc.seed
    )?;
    writeln!(out, "quadrature  {want:.10}")?;
    if args.rho == 0.0 {
        let exact = binomial_cdf(args.n, args.k, m.p())?.get();
        writeln!(out, "binomial    {exact:.10}  difference {:.3e}", want - exact)?;
    }
    writeln!(out, "monte carlo {:.10} +- {:.10}", est.mean, est.std_error)?;
    writeln!(out, "z = {z:.4}")?;
    if z.abs() > MC_Z_LIMIT {
        return Err(CliError::McDisagreement(format!("|z| = {:.2} exceeds {MC_Z_LIMIT}", z.abs())));
    }
    Ok(())
}
