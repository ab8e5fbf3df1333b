use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use quadric_genus::extremal::TemplateReport;
use quadric_genus::oracle::VerificationReport;
use quadric_genus::{
    build_hat_gamma, build_tilde_gamma_large, build_tilde_gamma_small, build_tilde_gamma_theta_k, genus_bound,
    genus_functional, verify, BoundReport, CurveParams, Regime, CSV_HEADER, DEFAULT_NODE_BUDGET,
};
use serde::Serialize;

const BUDGET_ENV: &str = "QUADRIC_GENUS_NODE_BUDGET";

#[derive(Parser)]
#[command(
    name = "quadric-genus",
    version,
    about = "Genus bounds for curves on the smooth quadric threefold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Bound, invariants, sharpness and linkage data for one (d, k)
    Compute {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// One row per degree in [d-from, d-to] for a fixed k
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        d_from: i64,
        #[arg(long, allow_negative_numbers = true)]
        d_to: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Extremal sequences of (d, k)
    Extremal {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every closed form and template against exhaustive search
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        k_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        d_max: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Overrides the QUADRIC_GENUS_NODE_BUDGET environment variable.
        #[arg(long)]
        node_budget: Option<u64>,
    },
}

enum Failure {
    Invalid(anyhow::Error),
    Mismatch,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(2),
    }
}

fn params(d: i64, k: i64) -> anyhow::Result<CurveParams> {
    Ok(CurveParams::new(d, k)?)
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Compute { d, k, format } => {
            let report = genus_bound(params(d, k)?);
            write_reports(out, &[report], format, false)?;
        }
        Command::Sweep {
            k,
            d_from,
            d_to,
            format,
        } => {
            if d_from > d_to {
                return Err(anyhow::anyhow!("empty degree range: --d-from {d_from} > --d-to {d_to}").into());
            }
            params(d_from, k)?;
            let reports: Vec<BoundReport> = (d_from..=d_to)
                .map(|d| genus_bound(params(d, k).expect("checked")))
                .collect();
            write_reports(out, &reports, format, true)?;
        }
        Command::Extremal { d, k, format } => {
            let view = ExtremalView::new(params(d, k)?)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&view).context("serialize")?),
                Format::Text => write!(out, "{}", view.to_text()),
                Format::Csv => return Err(anyhow::anyhow!("extremal supports --format text or json").into()),
            }
            .context("write output")?;
        }
        Command::Verify {
            k_max,
            d_max,
            format,
            node_budget,
        } => {
            if k_max < 1 || d_max < 1 {
                return Err(anyhow::anyhow!("--k-max and --d-max must be positive").into());
            }
            let budget = match node_budget {
                Some(b) => b,
                None => budget_from_env()?,
            };
            return run_verify(k_max, d_max, budget, format, out);
        }
    }
    Ok(())
}

fn budget_from_env() -> anyhow::Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_ENV}={v:?} is not a node count")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn write_reports(out: &mut impl Write, reports: &[BoundReport], format: Format, sweep: bool) -> anyhow::Result<()> {
    match format {
        Format::Json if sweep => writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports[0])?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<&str> = CSV_HEADER.to_vec();
            if sweep {
                header.push("no_small_curve");
            }
            w.write_record(&header)?;
            for r in reports {
                let mut fields = r.csv_fields();
                if sweep {
                    fields.push(r.no_small_curve_bound.map(|v| v.to_string()).unwrap_or_default());
                }
                w.write_record(&fields)?;
            }
            w.flush()?;
        }
        Format::Text if sweep => write_table(out, reports)?,
        Format::Text => write!(out, "{}", reports[0].to_text())?,
    }
    Ok(())
}

fn write_table(out: &mut impl Write, reports: &[BoundReport]) -> io::Result<()> {
    let header = [
        "d",
        "regime",
        "n0",
        "eps",
        "theta0",
        "pi",
        "xi",
        "g-1 <=",
        "Pi",
        "sharp",
        "ci type",
        "no small curve",
    ];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                r.regime.label().to_owned(),
                r.invariants.n0.to_string(),
                r.invariants.eps.to_string(),
                r.invariants.theta0.to_string(),
                r.pi_value.to_string(),
                r.xi_value.to_string(),
                r.bound_g_minus_1.to_string(),
                r.capital_pi.to_string(),
                r.sharp.label().to_owned(),
                format!("({},{})", r.linkage.ci_type.0, r.linkage.ci_type.1),
                r.no_small_curve_bound
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    if let Some(r) = reports.first() {
        writeln!(out, "k = {}", r.k)?;
    }
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TemplateView {
    #[serde(flatten)]
    report: TemplateReport,
    functional: i64,
    mass: i64,
}

impl From<TemplateReport> for TemplateView {
    fn from(report: TemplateReport) -> Self {
        Self {
            functional: genus_functional(&report.sequence),
            mass: report.sequence.mass(),
            report,
        }
    }
}

#[derive(Serialize)]
struct ExtremalView {
    d: i64,
    k: i64,
    regime: Regime,
    tilde_gamma: TemplateView,
    hat_gamma: TemplateView,
    coincide: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tilde_gamma_theta_k: Option<TemplateView>,
}

impl ExtremalView {
    fn new(p: CurveParams) -> anyhow::Result<Self> {
        let (tilde, theta_k) = match p.regime() {
            Regime::LargeDegree => (build_tilde_gamma_large(p)?, None),
            Regime::SmallDegree => (
                build_tilde_gamma_small(p)?,
                p.admits_no_small_curve_regime()
                    .then(|| build_tilde_gamma_theta_k(p))
                    .transpose()?,
            ),
        };
        let hat = build_hat_gamma(p.effective())?;
        Ok(Self {
            d: p.d(),
            k: p.k(),
            regime: p.regime(),
            coincide: tilde.sequence == hat.sequence,
            tilde_gamma: tilde.into(),
            hat_gamma: hat.into(),
            tilde_gamma_theta_k: theta_k.map(Into::into),
        })
    }

    fn to_text(&self) -> String {
        let mut s = format!("(d={}, k={}) {} degree\n", self.d, self.k, self.regime);
        let mut line = |name: &str, t: &TemplateView| {
            s.push_str(&format!(
                "{name:<14} {}  functional {}  mass {}\n",
                t.report.sequence, t.functional, t.mass
            ));
            if t.report.repaired {
                let raw: Vec<String> = t.report.raw_template.iter().map(i64::to_string).collect();
                s.push_str(&format!("{:<14} repaired from raw template {}\n", "", raw.join(",")));
            }
        };
        line("gamma~", &self.tilde_gamma);
        line("gamma^", &self.hat_gamma);
        if let Some(t) = &self.tilde_gamma_theta_k {
            line("gamma~ (th=k)", t);
        }
        s.push_str(&format!("coincide: {}\n", if self.coincide { "yes" } else { "no" }));
        s
    }
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    cells: usize,
    checks: usize,
    failed_checks: usize,
    passed: bool,
    first_failure: Option<&'a VerificationReport>,
    failures: Vec<&'a VerificationReport>,
}

fn run_verify(k_max: i64, d_max: i64, budget: u64, format: Format, out: &mut impl Write) -> Result<(), Failure> {
    let cells: Vec<CurveParams> = (1..=k_max)
        .flat_map(|k| (1..=d_max).map(move |d| CurveParams::new(d, k).expect("positive")))
        .collect();
    let reports = verify_parallel(&cells, budget);
    let failures: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
    let summary = VerifySummary {
        cells: reports.len(),
        checks: reports.iter().map(|r| r.checks.len()).sum(),
        failed_checks: reports
            .iter()
            .map(|r| r.checks.iter().filter(|c| !c.passed).count())
            .sum(),
        passed: failures.is_empty(),
        first_failure: failures.first().copied(),
        failures: failures.clone(),
    };
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&summary).context("serialize")?).context("write output")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "d", "k", "regime", "check", "relation", "actual", "expected", "passed", "witness",
            ])
            .context("write csv")?;
            for r in &reports {
                for c in &r.checks {
                    let relation = format!("{:?}", c.relation).to_lowercase();
                    w.write_record([
                        r.d.to_string(),
                        r.k.to_string(),
                        r.regime.label().to_owned(),
                        c.name.clone(),
                        relation,
                        c.actual.map(|v| v.to_string()).unwrap_or_default(),
                        c.expected.map(|v| v.to_string()).unwrap_or_default(),
                        c.passed.to_string(),
                        c.witness.as_ref().map(ToString::to_string).unwrap_or_default(),
                    ])
                    .context("write csv")?;
                }
            }
            w.flush().context("write csv")
        }
        Format::Text => {
            let quadric = reports
                .iter()
                .filter(|r| r.checks.iter().any(|c| c.name.contains("quadric")))
                .count();
            (|| {
                writeln!(
                    out,
                    "verified {} cells (k <= {k_max}, d <= {d_max}), {} checks",
                    summary.cells, summary.checks
                )?;
                if quadric > 0 {
                    writeln!(out, "k = 1 quadric-surface cross-check run on {quadric} cells")?;
                }
                match summary.first_failure {
                    None => writeln!(out, "all checks passed"),
                    Some(r) => {
                        writeln!(
                            out,
                            "{} failed checks in {} cells; first counterexample:",
                            summary.failed_checks,
                            failures.len()
                        )?;
                        write!(out, "{r}")
                    }
                }
            })()
            .context("write output")
        }
    }?;
    if summary.passed {
        Ok(())
    } else {
        if format != Format::Text {
            if let Some(r) = summary.first_failure {
                eprint!("first counterexample:\n{r}");
            }
        }
        Err(Failure::Mismatch)
    }
}

/// Runs cells on all cores; results come back in input order.
fn verify_parallel(cells: &[CurveParams], budget: u64) -> Vec<VerificationReport> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(cells.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<VerificationReport>> = vec![None; cells.len()];
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(&cell) = cells.get(i) else { break };
                let report = verify(cell, budget);
                results.lock().expect("worker panicked")[i] = Some(report);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every cell verified")).collect()
}
