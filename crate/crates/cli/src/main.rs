//! Command-line front end for the star-product validation library.
//!
//! Exit codes: 0 on success (for `validate`: no FAIL entries), 1 when the
//! validation suite contains FAIL entries, 2 on usage or configuration
//! errors. Output is deterministic for a fixed command line.

mod expr;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockstar::coherent::Family;
use fockstar::star::{self, gap_symbol_closed_form};
use fockstar::{gk, pk, FockSpace, SpectrumParams};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fockstar",
    version,
    about = "Coherent-state star products on truncated Fock spaces: \
             validation, measures, symbol tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity validation suite and report per-identity residuals
    Validate(ValidateArgs),
    /// Residuals of the resolution-of-identity moments for each family
    Resolution(ResolutionArgs),
    /// Tabulate the gap symbol or a shifted defect symbol on a grid
    Table(TableArgs),
    /// Star product of two operator expressions on a grid
    StarEval(StarEvalArgs),
    /// Worst suite residual as the truncation dimension grows
    Convergence(ConvergenceArgs),
}

/// Spectrum presets for `e_n = a n^2 + b n`.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// a = 0, b = 1: equally spaced levels
    Harmonic,
    /// a = 1, b = 2: infinite square well
    SquareWell,
    /// a = 1, b = k + k': symmetric well with depth parameters k, k' > 1
    PoschlTeller,
    /// a = 3 epsilon / 2, b = a + 1: weak quartic correction, literal
    /// b = a + 1 normalization
    Anharmonic,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Named spectrum; alternative to giving --a and --b directly
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// First depth parameter of the poschl-teller preset (> 1)
    #[arg(long, default_value_t = 2.0)]
    k: f64,
    /// Second depth parameter of the poschl-teller preset (> 1)
    #[arg(long, default_value_t = 2.0)]
    kp: f64,
    /// Strength of the anharmonic preset (> 0)
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Quadratic coefficient a >= 0 (requires --b, excludes --preset)
    #[arg(long, conflicts_with = "preset", requires = "b")]
    a: Option<f64>,
    /// Linear coefficient b > 0 (requires --a, excludes --preset)
    #[arg(long, conflicts_with = "preset", requires = "a")]
    b: Option<f64>,
}

impl SpectrumArgs {
    fn resolve(&self) -> Result<SpectrumParams, String> {
        let (a, b) = match (self.a, self.b, self.preset) {
            (Some(a), Some(b), _) => (a, b),
            (None, None, Some(Preset::Harmonic)) => (0.0, 1.0),
            (None, None, Some(Preset::SquareWell)) => (1.0, 2.0),
            (None, None, Some(Preset::PoschlTeller)) => {
                if self.k <= 1.0 || self.kp <= 1.0 {
                    return Err("poschl-teller depth parameters must both exceed 1".into());
                }
                (1.0, self.k + self.kp)
            }
            (None, None, Some(Preset::Anharmonic)) => {
                if self.epsilon <= 0.0 {
                    return Err("anharmonic strength must be positive".into());
                }
                let a = 1.5 * self.epsilon;
                (a, a + 1.0)
            }
            _ => return Err("give either --preset or both --a and --b".into()),
        };
        SpectrumParams::new(a, b).map_err(|e| e.to_string())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Plane-labelled lowering-eigenvector family
    Gk,
    /// Disc-labelled displacement-orbit family
    Pk,
    /// Both families, plane rows first
    Both,
}

impl FamilyArg {
    fn expand(self) -> Vec<Family> {
        match self {
            FamilyArg::Gk => vec![Family::Gk],
            FamilyArg::Pk => vec![Family::Pk],
            FamilyArg::Both => vec![Family::Gk, Family::Pk],
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyOne {
    Gk,
    Pk,
}

impl FamilyOne {
    fn family(self) -> Family {
        match self {
            FamilyOne::Gk => Family::Gk,
            FamilyOne::Pk => Family::Pk,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableSymbol {
    /// Level-gap symbol on the plane (closed form)
    #[value(alias = "g")]
    Gap,
    /// Shifted defect symbol on the unit disc (coefficient series)
    #[value(alias = "d")]
    Defect,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    /// Coherent family to validate
    #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
    family: FamilyArg,
    /// Requested truncation dimension (raised internally if the grid
    /// needs more headroom; the JSON report records the dimension used)
    #[arg(long, default_value_t = 64)]
    dim: usize,
    /// Tolerance for the general identity class; construction-exact
    /// identities, the gap closed form, and bracket antisymmetry keep
    /// their own fixed tolerances
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ResolutionArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
    family: FamilyArg,
    /// Largest moment index to check
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    /// Which symbol to tabulate
    #[arg(long, value_enum)]
    symbol: TableSymbol,
    /// Defect shift l (defect symbol only)
    #[arg(long, default_value_t = 0)]
    l: usize,
    /// Single evaluation point "re[,im]" (default: the family grid)
    #[arg(long, value_parser = expr::parse_point)]
    z: Option<Complex64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StarEvalArgs {
    /// Left operator expression, e.g. "r", "2*rl; 0,1*g" (letters:
    /// r raising, l lowering, g gap, n number, 1 identity)
    a_expr: String,
    /// Right operator expression
    b_expr: String,
    #[command(flatten)]
    spectrum: SpectrumArgs,
    #[arg(long, value_enum, default_value_t = FamilyOne::Gk)]
    family: FamilyOne,
    /// Truncation dimension
    #[arg(long, default_value_t = 64)]
    dim: usize,
    /// Single evaluation point "re[,im]" (default: the family grid)
    #[arg(long, value_parser = expr::parse_point)]
    z: Option<Complex64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    spectrum: SpectrumArgs,
    #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
    family: FamilyArg,
    /// Truncation dimensions to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [16, 32, 64])]
    dims: Vec<usize>,
    /// General-class tolerance handed to the suite
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(args) => run_validate(args),
        Command::Resolution(args) => run_resolution(args),
        Command::Table(args) => run_table(args),
        Command::StarEval(args) => run_star_eval(args),
        Command::Convergence(args) => run_convergence(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run_validate(args: ValidateArgs) -> Result<ExitCode, String> {
    let params = args.spectrum.resolve()?;
    let space = FockSpace::new(args.dim).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for family in args.family.expand() {
        let grid = star::default_grid(family);
        let report = star::run_identity_suite(family, &params, space, &grid, args.tol)
            .map_err(|e| e.to_string())?;
        reports.push(report);
    }
    let any_fail = reports.iter().any(|r| r.fail_count() > 0);
    let content = match args.output.format {
        Format::Csv => report::validation_csv(&reports),
        Format::Json => report::validation_json(&reports),
    };
    report::emit(&args.output.out, &content).map_err(|e| e.to_string())?;
    Ok(if any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_resolution(args: ResolutionArgs) -> Result<ExitCode, String> {
    let params = args.spectrum.resolve()?;
    let mut rows = Vec::new();
    for family in args.family.expand() {
        let residuals = match family {
            Family::Gk => gk::resolution_residuals(&params, args.max_n),
            Family::Pk => pk::resolution_residuals(&params, args.max_n),
        }
        .map_err(|e| e.to_string())?;
        for (n, residual) in residuals.into_iter().enumerate() {
            rows.push((family, n, residual));
        }
    }
    let content = match args.output.format {
        Format::Csv => report::resolution_csv(&rows),
        Format::Json => report::resolution_json(&rows),
    };
    report::emit(&args.output.out, &content).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn run_table(args: TableArgs) -> Result<ExitCode, String> {
    let params = args.spectrum.resolve()?;
    if args.symbol == TableSymbol::Gap && args.l != 0 {
        return Err("--l applies only to the defect symbol".into());
    }
    let points: Vec<Complex64> = match args.z {
        Some(z) => vec![z],
        None => match args.symbol {
            TableSymbol::Gap => star::default_grid(Family::Gk),
            TableSymbol::Defect => star::default_grid(Family::Pk),
        },
    };
    let mut rows = Vec::with_capacity(points.len());
    for &z in &points {
        let value = match args.symbol {
            TableSymbol::Gap => gap_symbol_closed_form(&params, z).map_err(|e| e.to_string())?,
            TableSymbol::Defect => {
                let zeta = pk::DiscPoint::new(z).map_err(|e| e.to_string())?;
                pk::defect_symbol_series(&params, args.l, zeta).map_err(|e| e.to_string())?
            }
        };
        rows.push((z, value));
    }
    let symbol = match args.symbol {
        TableSymbol::Gap => "gap",
        TableSymbol::Defect => "defect",
    };
    let content = match args.output.format {
        Format::Csv => report::table_csv(symbol, args.l, &rows),
        Format::Json => report::table_json(symbol, args.l, &rows),
    };
    report::emit(&args.output.out, &content).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn run_star_eval(args: StarEvalArgs) -> Result<ExitCode, String> {
    let params = args.spectrum.resolve()?;
    let space = FockSpace::new(args.dim).map_err(|e| e.to_string())?;
    let family = args.family.family();
    let a = expr::parse_operator(&args.a_expr, &params, space)?;
    let b = expr::parse_operator(&args.b_expr, &params, space)?;
    let points: Vec<Complex64> = match args.z {
        Some(z) => vec![z],
        None => star::default_grid(family),
    };
    let mut rows = Vec::with_capacity(points.len());
    for &z in &points {
        let value = star::star(&a, &b, family, &params, z).map_err(|e| e.to_string())?;
        rows.push((z, value));
    }
    let content = match args.output.format {
        Format::Csv => report::star_csv(&rows),
        Format::Json => report::star_json(family, &rows),
    };
    report::emit(&args.output.out, &content).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn run_convergence(args: ConvergenceArgs) -> Result<ExitCode, String> {
    let params = args.spectrum.resolve()?;
    if args.dims.is_empty() {
        return Err("--dims needs at least one dimension".into());
    }
    let mut rows = Vec::new();
    for family in args.family.expand() {
        let grid = star::default_grid(family);
        let sweep = star::convergence_sweep(family, &params, &grid, &args.dims, args.tol)
            .map_err(|e| e.to_string())?;
        for (dim, worst) in sweep {
            rows.push((family, dim, worst));
        }
    }
    let content = match args.output.format {
        Format::Csv => report::convergence_csv(&rows),
        Format::Json => report::convergence_json(&rows),
    };
    report::emit(&args.output.out, &content).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}
