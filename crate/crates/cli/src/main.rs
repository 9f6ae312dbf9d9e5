//! `dch`: tables, bases, and identity verification for Clifford-Hermite
//! polynomials attached to Dunkl operators.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 invalid
//! configuration or usage, 3 internal consistency failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dunkl_hermite::error::Error as CoreError;
use dunkl_hermite::integrate::GammaExpr;
use dunkl_hermite::numeric::quad_rule;
use dunkl_hermite::rat::{parse_rat, rat, rint};
use dunkl_hermite::verify::{self, PartialConfig, TableOutput, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "dch",
    version,
    about = "Clifford-Hermite polynomials for Dunkl operators: generate families, export bases, and verify the defining identities exactly"
)]
struct Cli {
    /// JSON config file; command-line flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path: a directory, or a .json file for single-artifact
    /// commands.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Seed for the Monte Carlo paths and randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for the verification suite (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity-verification suite and write a report.
    Verify(FamilyArgs),
    /// Emit a Hermite family table (radial coefficients, norms, polynomials).
    Table(TableArgs),
    /// Export a basis of the degree-n Dunkl-monogenic module.
    ExportBasis(BasisArgs),
    /// Check a quadrature rule against its defining moments.
    QuadSelftest(QuadArgs),
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Reflection group family: Z2^d, A, B, or I2.
    #[arg(long)]
    family: Option<String>,

    /// Dimension d; for I2 this is the dihedral order m (the group acts on
    /// the plane).
    #[arg(long)]
    d: Option<usize>,

    /// Comma-separated multiplicities, one per root orbit (e.g. 1/2,1/3).
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<String>>,

    /// Largest monogenic degree n to cover.
    #[arg(long)]
    max_n: Option<usize>,

    /// Largest family order s to cover.
    #[arg(long)]
    max_s: Option<usize>,

    /// Quadrature order for the numeric cross-checks (default: adapted to
    /// the integrand degree).
    #[arg(long)]
    quad_order: Option<usize>,

    /// Monte Carlo sample count for groups without a symbolic pairing.
    #[arg(long)]
    mc_samples: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Single degree n; omitting it tables every degree up to max-n.
    #[arg(long)]
    n: Option<usize>,

    /// Explicit comma-separated list of orders s (may be empty); defaults
    /// to 0..=max-s.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    s_list: Option<Vec<usize>>,

    /// Output format.
    #[arg(long, default_value = "both", value_parser = ["json", "text", "both"])]
    format: String,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Degree of the monogenic module to export.
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Args)]
struct QuadArgs {
    /// Multiplicity of the one-dimensional weight |t|^(2 kappa) exp(-t^2).
    #[arg(long, default_value = "1/2")]
    kappa: String,

    /// Number of quadrature points.
    #[arg(long, default_value_t = 24)]
    quad_order: usize,
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::Internal { .. } | CoreError::DecompositionFailed(_) => 3,
        _ => 2,
    }
}

fn load_config_file(path: &Path) -> Result<PartialConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn resolve_config(cli: &Cli, args: &FamilyArgs) -> Result<VerifyConfig, (u8, String)> {
    let base = match &cli.config {
        Some(path) => load_config_file(path).map_err(|m| (2u8, m))?,
        None => PartialConfig::default(),
    };
    let flags = PartialConfig {
        family: args.family.clone(),
        d: args.d,
        kappa: args.kappa.clone(),
        max_n: args.max_n,
        max_s: args.max_s,
        quad_order: args.quad_order,
        mc_samples: args.mc_samples,
        seed: cli.seed,
    };
    flags
        .over(base)
        .resolve()
        .map_err(|e| (exit_code_for(&e), e.to_string()))
}

/// A `.json` `--out` names the artifact itself; anything else is treated as
/// a directory holding default file names.
fn artifact_path(out: &Path, default_name: &str) -> Result<PathBuf, (u8, String)> {
    if out.extension().is_some_and(|e| e == "json") {
        if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(|e| (2u8, format!("cannot create {}: {e}", parent.display())))?;
        }
        Ok(out.to_path_buf())
    } else {
        fs::create_dir_all(out).map_err(|e| (2u8, format!("cannot create {}: {e}", out.display())))?;
        Ok(out.join(default_name))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), (u8, String)> {
    fs::write(path, contents).map_err(|e| (2u8, format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(cli: &Cli, args: &FamilyArgs) -> Result<u8, (u8, String)> {
    let cfg = resolve_config(cli, args)?;
    let report = verify::run(&cfg).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let json_path = artifact_path(&cli.out, "report.json")?;
    write_file(&json_path, &report.to_json())?;
    let text = report.to_text();
    let text_path = json_path.with_extension("txt");
    write_file(&text_path, &text)?;
    print!("{text}");
    println!(
        "report written to {} and {}",
        json_path.display(),
        text_path.display()
    );
    Ok(if report.failures() == 0 { 0 } else { 1 })
}

fn render_table_text(out: &TableOutput) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "n".into(),
        "s".into(),
        "C(s)".into(),
        "radial a_j".into(),
        "norm".into(),
    ]];
    for row in &out.rows {
        rows.push([
            row.n.to_string(),
            row.s.to_string(),
            row.lowering_constant.clone(),
            row.radial.join(", "),
            row.norm
                .as_ref()
                .map(|g| g.to_string())
                .unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut widths = [0usize; 5];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut text = format!(
        "family={} d={} kappa={} mu={}\n",
        out.config.family,
        out.config.d,
        out.config.kappa.join(","),
        out.config.mu
    );
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        text.push_str(&line.join("  "));
        text.push('\n');
        if i == 0 {
            text.push_str(&format!("{}\n", "-".repeat(widths.iter().sum::<usize>() + 8)));
        }
    }
    text
}

fn cmd_table(cli: &Cli, args: &TableArgs) -> Result<u8, (u8, String)> {
    let cfg = resolve_config(cli, &args.family)?;
    let degrees: Vec<usize> = match args.n {
        Some(n) => vec![n],
        None => (0..=cfg.max_n).collect(),
    };
    let s_values: Vec<usize> = match &args.s_list {
        Some(list) => list.clone(),
        None => (0..=cfg.max_s).collect(),
    };
    let table = verify::table(&cfg, &degrees, &s_values)
        .map_err(|e| (exit_code_for(&e), e.to_string()))?;
    if args.format != "text" {
        let json_path = artifact_path(&cli.out, "table.json")?;
        let json = serde_json::to_string_pretty(&table)
            .map_err(|e| (3u8, format!("table serialization: {e}")))?;
        write_file(&json_path, &json)?;
        println!("table written to {}", json_path.display());
    }
    if args.format != "json" {
        print!("{}", render_table_text(&table));
    }
    Ok(0)
}

fn cmd_export_basis(cli: &Cli, args: &BasisArgs) -> Result<u8, (u8, String)> {
    let cfg = resolve_config(cli, &args.family)?;
    let export =
        verify::export_basis(&cfg, args.n).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let path = artifact_path(&cli.out, &format!("basis_n{}.json", args.n))?;
    let json = serde_json::to_string_pretty(&export)
        .map_err(|e| (3u8, format!("basis serialization: {e}")))?;
    write_file(&path, &json)?;
    println!(
        "basis of rank {} (expected {}) written to {}",
        export.rank,
        export.expected_rank,
        path.display()
    );
    Ok(0)
}

const MOMENT_REL_TOL: f64 = 1e-12;

fn cmd_quad_selftest(cli: &Cli, args: &QuadArgs) -> Result<u8, (u8, String)> {
    let kappa = parse_rat(&args.kappa).map_err(|e| (2u8, e.to_string()))?;
    let rule =
        quad_rule(&kappa, args.quad_order).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let mut moments = Vec::new();
    let mut worst: f64 = 0.0;
    for j in 0..args.quad_order {
        let arg = rint(j as i64) + &kappa + rat(1, 2);
        let exact = GammaExpr::gamma(&arg)
            .map_err(|e| (2u8, e.to_string()))?
            .to_f64();
        let value = rule.moment(2 * j as u32);
        let rel = (value - exact).abs() / exact.abs();
        worst = worst.max(rel);
        moments.push(serde_json::json!({
            "power": 2 * j,
            "value": value,
            "abs_err_estimate": (value - exact).abs(),
        }));
    }
    let ok = worst <= MOMENT_REL_TOL;
    let report = serde_json::json!({
        "kappa": args.kappa,
        "order": args.quad_order,
        "max_relative_error": worst,
        "tolerance": MOMENT_REL_TOL,
        "pass": ok,
        "moments": moments,
    });
    let path = artifact_path(&cli.out, "quad_selftest.json")?;
    write_file(&path, &serde_json::to_string_pretty(&report).unwrap())?;
    println!(
        "quadrature selftest: order {} kappa {}: max relative error {:.3e} ({})",
        args.quad_order,
        args.kappa,
        worst,
        if ok { "pass" } else { "FAIL" }
    );
    Ok(if ok { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    if let Some(jobs) = cli.jobs {
        // only effective before the pool is first used
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match &cli.command {
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Table(args) => cmd_table(cli, args),
        Command::ExportBasis(args) => cmd_export_basis(cli, args),
        Command::QuadSelftest(args) => cmd_quad_selftest(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
