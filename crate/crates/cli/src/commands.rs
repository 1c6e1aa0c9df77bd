//! Subcommand implementations.
//!
//! Argument validation happens here and maps to exit code 2; errors that
//! escape validation and surface from an engine map to exit code 3; a
//! failed cross-validation maps to exit code 1. Reports go to standard
//! output, diagnostics to standard error.

use clap::Args;
use convsphere_core::exact::{
    self, format_f64_sig, parse_decimal, unit_volume_closed, unit_volume_exact, unit_volume_gamma,
};
use convsphere_core::{grid, mc, paradox, BigInt};

use crate::record::{
    render_record, render_table, Format, KvList, OutputRecord, TableRecord, TableRow,
};

pub enum CliError {
    /// Invalid arguments: exit 2.
    Usage(String),
    /// An engine rejected the request or failed: exit 3.
    Engine(String),
    /// Cross-validation ran and found a discrepancy: exit 1.
    CheckFailed,
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::CheckFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Engine(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("invalid arguments: {m}"),
            CliError::Engine(m) => format!("engine failure: {m}"),
            CliError::CheckFailed => "cross-validation failed".to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn engine_err(e: impl std::error::Error) -> CliError {
    CliError::Engine(e.to_string())
}

fn check_precision(precision: usize) -> Result<(), CliError> {
    if (1..=1000).contains(&precision) {
        Ok(())
    } else {
        Err(usage(format!(
            "precision must be between 1 and 1000, got {precision}"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Convolution recurrence over exact rationals.
    Exact,
    /// Closed forms split by parity.
    Closed,
    /// Gamma-function form with exact half-integer values.
    Gamma,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Exact => "exact",
            Engine::Closed => "closed",
            Engine::Gamma => "gamma",
        }
    }
}

#[derive(Args)]
pub struct VolumeArgs {
    /// Dimension of the ball
    #[arg(short, long)]
    n: u32,
    /// Radius, as a decimal such as 2, 0.5, or 1e-3
    #[arg(short, long)]
    r: String,
    /// Which exact route computes the unit coefficient
    #[arg(long, value_enum, default_value_t = Engine::Exact)]
    engine: Engine,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_volume(a: VolumeArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.n < 1 {
        return Err(usage("n must be at least 1"));
    }
    let r = parse_decimal(&a.r).map_err(|e| usage(e.to_string()))?;
    if r.numer() < &BigInt::from(0) {
        return Err(usage(format!("radius must be nonnegative, got {}", a.r)));
    }
    // The closed-form route needs n >= 2; that restriction is the
    // engine's to enforce, so its rejection is an engine failure here.
    let coeff = match a.engine {
        Engine::Exact => unit_volume_exact(a.n),
        Engine::Closed => unit_volume_closed(a.n),
        Engine::Gamma => unit_volume_gamma(a.n),
    }
    .map_err(engine_err)?;
    let scaled = coeff.mul_rational(&r.pow(a.n as i32));

    let mut inputs = KvList::default();
    inputs.push("n", a.n.to_string());
    inputs.push("r", a.r.clone());
    let mut results = KvList::default();
    results.push("c_exact", coeff.to_string());
    results.push("exact", scaled.to_string());
    results.push("value", scaled.to_decimal(a.precision));
    let record = OutputRecord {
        command: "volume",
        engine: a.engine.name(),
        inputs,
        results,
    };
    print!("{}", render_record(&record, a.format));
    Ok(())
}

#[derive(Args)]
pub struct TableArgs {
    /// Largest dimension to include; rows run from 2 up
    #[arg(short = 'n', long = "n-max")]
    n_max: u32,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_table(a: TableArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.n_max < 2 {
        return Err(usage(format!("n-max must be at least 2, got {}", a.n_max)));
    }
    let mut rows = Vec::with_capacity(a.n_max as usize - 1);
    for n in 2..=a.n_max {
        let c = unit_volume_exact(n).map_err(engine_err)?;
        rows.push(TableRow {
            n: n.to_string(),
            exact: c.to_string(),
            value: c.to_decimal(a.precision),
        });
    }
    let mut inputs = KvList::default();
    inputs.push("n_max", a.n_max.to_string());
    let record = TableRecord {
        command: "table",
        engine: "exact",
        inputs,
        rows,
    };
    print!("{}", render_table(&record, a.format));
    Ok(())
}

#[derive(Args)]
pub struct PdfArgs {
    /// Number of squared coordinates being summed
    #[arg(short, long)]
    n: u32,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_pdf(a: PdfArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.n < 1 {
        return Err(usage("n must be at least 1"));
    }
    let pdf = exact::pdf_first_part(a.n).map_err(engine_err)?;
    let integral = pdf.integral_unit();

    let mut inputs = KvList::default();
    inputs.push("n", a.n.to_string());
    let mut results = KvList::default();
    results.push("coeff_exact", pdf.coeff().to_string());
    results.push("coeff_value", pdf.coeff().to_decimal(a.precision));
    results.push("exponent", pdf.exponent().to_string());
    results.push("integral_exact", integral.to_string());
    results.push("integral_value", integral.to_decimal(a.precision));
    let record = OutputRecord {
        command: "pdf",
        engine: "exact",
        inputs,
        results,
    };
    print!("{}", render_record(&record, a.format));
    Ok(())
}

#[derive(Args)]
pub struct CheckArgs {
    /// Largest dimension to cross-validate; checks run from 1 up
    #[arg(short = 'n', long = "n-max", default_value_t = 6)]
    n_max: u32,
    /// Grid cells per unit interval
    #[arg(long, default_value_t = 4096)]
    cells: usize,
    /// Monte Carlo samples per dimension
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Monte Carlo seed
    #[arg(long, env = "CONVSPHERE_SEED", default_value_t = 42)]
    seed: u64,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_check(a: CheckArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.n_max < 1 {
        return Err(usage("n-max must be at least 1"));
    }
    if a.cells < 2 {
        return Err(usage(format!("cells must be at least 2, got {}", a.cells)));
    }
    if a.samples < 1 {
        return Err(usage("samples must be at least 1"));
    }

    let base = grid::grid_p1(a.cells).map_err(engine_err)?;
    let mut acc = base.clone();
    let mut results = KvList::default();
    let mut all_ok = true;
    for n in 1..=a.n_max {
        if n > 1 {
            acc = grid::convolve(&acc, &base).map_err(engine_err)?;
        }
        let p = exact::p_hyper(n).map_err(engine_err)?;
        let p_val = p.to_f64();
        let rel = (grid::mass_below_one(&acc) - p_val).abs() / p_val;

        let est = mc::estimate_p_hyper(n, a.samples, a.seed).map_err(engine_err)?;
        // Smoothed variance keeps the score finite when every sample
        // lands on the same side, as in n = 1 where p is exactly 1.
        let smoothed = (est.hits as f64 + 0.5) / (est.samples as f64 + 1.0);
        let se = (smoothed * (1.0 - smoothed) / est.samples as f64).sqrt();
        let z = (est.p_hat - p_val) / se;

        all_ok &= rel <= 1e-2 && z.abs() <= 4.0;
        let tag = format!("n{n:02}");
        results.push(format!("p_exact_{tag}"), p.to_string());
        results.push(format!("p_value_{tag}"), p.to_decimal(a.precision));
        results.push(
            format!("grid_rel_err_{tag}"),
            format_f64_sig(rel, a.precision),
        );
        results.push(format!("mc_z_{tag}"), format_f64_sig(z, a.precision));
    }
    results.push("status", if all_ok { "pass" } else { "fail" });

    let mut inputs = KvList::default();
    inputs.push("n_max", a.n_max.to_string());
    inputs.push("cells", a.cells.to_string());
    inputs.push("samples", a.samples.to_string());
    inputs.push("seed", a.seed.to_string());
    let record = OutputRecord {
        command: "check",
        engine: "exact",
        inputs,
        results,
    };
    print!("{}", render_record(&record, a.format));
    if all_ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

#[derive(Args)]
pub struct McArgs {
    /// Dimension of the sampling cube
    #[arg(short, long)]
    n: u32,
    /// Number of samples
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Seed for the reproducible generator
    #[arg(long, env = "CONVSPHERE_SEED", default_value_t = 42)]
    seed: u64,
    /// Estimate sphere-packing coverage instead of the ball probability
    #[arg(long)]
    coverage: bool,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_mc(a: McArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.n < 1 {
        return Err(usage("n must be at least 1"));
    }
    if a.samples < 1 {
        return Err(usage("samples must be at least 1"));
    }

    let mut inputs = KvList::default();
    inputs.push("n", a.n.to_string());
    inputs.push("samples", a.samples.to_string());
    inputs.push("seed", a.seed.to_string());
    inputs.push("coverage", a.coverage.to_string());
    let mut results = KvList::default();

    if a.coverage {
        let est = mc::estimate_coverage(a.n, a.samples, a.seed).map_err(engine_err)?;
        results.push("frac_inner", format_f64_sig(est.frac_inner, a.precision));
        results.push("frac_corner", format_f64_sig(est.frac_corner, a.precision));
        results.push(
            "frac_uncovered",
            format_f64_sig(est.frac_uncovered, a.precision),
        );
    } else {
        let est = mc::estimate_p_hyper(a.n, a.samples, a.seed).map_err(engine_err)?;
        let p = exact::p_hyper(a.n).map_err(engine_err)?;
        let p_val = p.to_f64();
        let smoothed = (est.hits as f64 + 0.5) / (est.samples as f64 + 1.0);
        let se = (smoothed * (1.0 - smoothed) / est.samples as f64).sqrt();
        results.push("hits", est.hits.to_string());
        results.push("p_hat", format_f64_sig(est.p_hat, a.precision));
        results.push("std_err", format_f64_sig(est.std_err, a.precision));
        results.push("p_exact", p.to_string());
        results.push("p_value", p.to_decimal(a.precision));
        results.push("z", format_f64_sig((est.p_hat - p_val) / se, a.precision));
    }
    let record = OutputRecord {
        command: "mc",
        engine: "mc",
        inputs,
        results,
    };
    print!("{}", render_record(&record, a.format));
    Ok(())
}

#[derive(Args)]
pub struct ParadoxArgs {
    /// Dimension of the construction
    #[arg(short, long)]
    n: u32,
    /// Cross-check the corner fraction with a Monte Carlo estimate
    #[arg(long)]
    with_mc: bool,
    /// Samples for the Monte Carlo cross-check
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Seed for the Monte Carlo cross-check
    #[arg(long, env = "CONVSPHERE_SEED", default_value_t = 42)]
    seed: u64,
    /// Significant digits in decimal output
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

pub fn cmd_paradox(a: ParadoxArgs) -> Result<(), CliError> {
    check_precision(a.precision)?;
    if a.with_mc && a.samples < 1 {
        return Err(usage("samples must be at least 1"));
    }
    let report = paradox::analyze(a.n).map_err(|e| usage(e.to_string()))?;

    let mut inputs = KvList::default();
    inputs.push("n", a.n.to_string());
    inputs.push("with_mc", a.with_mc.to_string());
    if a.with_mc {
        inputs.push("samples", a.samples.to_string());
        inputs.push("seed", a.seed.to_string());
    }
    let mut results = KvList::default();
    results.push(
        "inner_radius",
        format_f64_sig(report.inner_radius, a.precision),
    );
    results.push("inner_exceeds_2", report.inner_exceeds_2.to_string());
    results.push(
        "inner_pokes_outside",
        report.inner_pokes_outside.to_string(),
    );
    results.push("l_max", format_f64_sig(report.l_max, a.precision));
    results.push(
        "corner_sphere_count",
        report.corner_sphere_count.to_string(),
    );
    results.push(
        "frac_corner_exact",
        format_f64_sig(report.frac_corner_exact, a.precision),
    );
    results.push(
        "frac_inner_raw",
        format_f64_sig(report.frac_inner_raw, a.precision),
    );
    results.push(
        "frac_uncovered_lower_bound",
        format_f64_sig(report.frac_uncovered_lower_bound, a.precision),
    );

    if a.with_mc {
        let est = mc::estimate_coverage(a.n, a.samples, a.seed).map_err(engine_err)?;
        let p = report.frac_corner_exact;
        let se = (p * (1.0 - p) / est.samples as f64).sqrt();
        results.push("mc_frac_inner", format_f64_sig(est.frac_inner, a.precision));
        results.push(
            "mc_frac_corner",
            format_f64_sig(est.frac_corner, a.precision),
        );
        results.push(
            "mc_frac_uncovered",
            format_f64_sig(est.frac_uncovered, a.precision),
        );
        results.push(
            "mc_corner_z",
            format_f64_sig((est.frac_corner - p) / se, a.precision),
        );
    }
    let record = OutputRecord {
        command: "paradox",
        engine: if a.with_mc { "mc" } else { "exact" },
        inputs,
        results,
    };
    print!("{}", render_record(&record, a.format));
    Ok(())
}
