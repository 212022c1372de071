mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use starnode::catalog::{self, Params, RowId};
use starnode::contraction;
use starnode::parser::{self, FieldSource, ParseOptions};
use starnode::portrait::{self, PortraitSpec, Seeds};
use starnode::rational::parse_rational;
use starnode::realize;

/// `print!` that exits quietly when stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(e.into());
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        out!($($arg)*);
        out!("\n");
    }};
}

type Fallible<T> = Result<T, Box<dyn std::error::Error>>;

/// Exit status when the input field is not contracting.
const NOT_CONTRACTING: u8 = 2;

#[derive(Parser)]
#[command(name = "starnode", version, about = "Analyze planar fields λX + Q(X) with homogeneous Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a field file as JSON.
    Analyze {
        file: PathBuf,
        /// Write the JSON report here and print a summary instead.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Accept a negative λ by reversing time.
        #[arg(long)]
        normalize_lambda: bool,
    },
    /// Build a contracting field whose phase form is the target.
    Realize {
        /// Even-degree binary form in x, y.
        #[arg(long)]
        target: String,
        /// Positive rational λ.
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Degree of the target, needed when it is zero.
        #[arg(long)]
        degree: Option<usize>,
        /// Write the field file here instead of stdout.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Draw the phase portrait on the Poincaré disc.
    Portrait {
        file: PathBuf,
        /// Write the SVG here instead of stdout.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Number of seeds on the automatic ring.
        #[arg(long, default_value_t = 16)]
        seeds: usize,
        /// Distance to the invariant circle at which trajectories stop.
        #[arg(long)]
        tol: Option<f64>,
        /// Relative integration tolerance.
        #[arg(long)]
        rel: Option<f64>,
        /// Absolute integration tolerance.
        #[arg(long)]
        abs: Option<f64>,
        /// Trajectory sidecar.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The catalog of cubic normal forms.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Symbol sequence of a binary form.
    Sigma {
        /// Binary form in x, y.
        #[arg(long)]
        form: String,
        /// Degree of the form, needed when it is zero.
        #[arg(long)]
        degree: Option<usize>,
        /// Print the JSON report.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// All rows with their expected data.
    List,
    /// Match a contracting cubic to its class.
    Match { file: PathBuf },
    /// Write a fixture field for a row.
    Emit {
        /// Row id, I to X.
        id: String,
        /// Parameters such as `mu=-1,lambda=2`.
        #[arg(long, default_value = "")]
        params: String,
        /// Write the field file here instead of stdout.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Fallible<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load(path: &Path, normalize: bool) -> Fallible<(FieldSource, String)> {
    let text = read(path)?;
    let opts = ParseOptions {
        normalize_negative_lambda: normalize,
    };
    let src = parser::parse_field_with(&text, &opts).map_err(|e| format!("{}:{e}", path.display()))?;
    Ok((src, text))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Fallible<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn not_contracting(f: &starnode::StarField) -> ExitCode {
    let (_, w) = contraction::is_contracting_exact(f);
    match w {
        Some(w) => eprintln!("not contracting: {}", report::witness_text(&w)),
        None => eprintln!("not contracting"),
    }
    ExitCode::from(NOT_CONTRACTING)
}

fn analyze(file: &Path, json: &Option<PathBuf>, normalize: bool) -> Fallible<ExitCode> {
    let (src, text) = load(file, normalize)?;
    let doc = report::analyze(&src, &text);
    match json {
        Some(_) => {
            emit(json, &pretty(&doc))?;
            out!("{}", report::summary(&doc));
        }
        None => out!("{}", pretty(&doc)),
    }
    if doc["contraction"]["is_contracting"] == serde_json::Value::Bool(true) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(not_contracting(&src.field))
    }
}

fn realize_cmd(target: &str, lambda: &str, degree: Option<usize>, output: &Option<PathBuf>) -> Fallible<ExitCode> {
    let g = parser::parse_form(target, degree)?;
    let lambda = parse_rational(lambda).ok_or_else(|| format!("bad lambda `{lambda}`"))?;
    let r = realize::realize(&g, lambda)?;
    if r.field.lq() != g {
        return Err("internal error: phase form of the realization differs from the target".into());
    }
    let mut text = format!("# realized with K = {}\n", starnode::rational::to_compact_string(&r.k));
    text.push_str(&parser::print_field(&r.field, None));
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

struct PortraitArgs<'a> {
    file: &'a Path,
    svg: &'a Option<PathBuf>,
    seeds: usize,
    tol: Option<f64>,
    rel: Option<f64>,
    abs: Option<f64>,
    json: &'a Option<PathBuf>,
}

fn portrait_cmd(a: PortraitArgs) -> Fallible<ExitCode> {
    let (src, _) = load(a.file, false)?;
    if !contraction::is_contracting(&src.field) {
        return Ok(not_contracting(&src.field));
    }
    let mut spec = PortraitSpec {
        seeds: Seeds::Auto(a.seeds),
        ..PortraitSpec::default()
    };
    if let Some(t) = a.tol {
        spec.circle_tol = t;
    }
    if let Some(t) = a.rel {
        spec.rel = t;
    }
    if let Some(t) = a.abs {
        spec.abs = t;
    }
    let p = portrait::portrait(&src.field, &spec)?;
    emit(a.svg, p.svg())?;
    if a.json.is_some() {
        emit(a.json, &pretty(&p.sidecar_json()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog_cmd(action: &CatalogAction) -> Fallible<ExitCode> {
    match action {
        CatalogAction::List => {
            outln!("{}", catalog::to_json());
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Match { file } => {
            let (src, _) = load(file, false)?;
            if !contraction::is_contracting(&src.field) {
                return Ok(not_contracting(&src.field));
            }
            let m = catalog::match_cubic(&src.field)?;
            let doc = serde_json::json!({
                "schema_version": report::SCHEMA_VERSION,
                "class": m.class,
                "sigma": m.sigma,
            });
            out!("{}", pretty(&doc));
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Emit { id, params, output } => {
            let id: RowId = id.parse()?;
            let params = Params::parse(params)?;
            let built = catalog::build(id, &params)?;
            let mut text = String::new();
            if let Some(n) = &built.note {
                text.push_str(&format!("# {n}\n"));
            }
            text.push_str(&parser::print_field(&built.field, Some(id.name())));
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn sigma_cmd(form: &str, degree: Option<usize>, json: bool) -> Fallible<ExitCode> {
    let g = parser::parse_form(form, degree)?;
    let doc = report::sigma_report(&g)?;
    if json {
        out!("{}", pretty(&doc));
    } else {
        outln!("sigma: {}", doc["sigma"].as_str().unwrap_or_default());
        outln!("canonical: {}", doc["canonical"].as_str().unwrap_or_default());
        let admissible = doc["admissible"].as_bool().unwrap_or(false);
        outln!("admissible: {}", if admissible { "yes" } else { "no" });
        for v in doc["violations"].as_array().into_iter().flatten() {
            outln!("  {}", v.as_str().unwrap_or_default());
        }
        outln!("stratum: {}", doc["stratum"]);
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Fallible<ExitCode> {
    match &cli.command {
        Command::Analyze {
            file,
            json,
            normalize_lambda,
        } => analyze(file, json, *normalize_lambda),
        Command::Realize {
            target,
            lambda,
            degree,
            output,
        } => realize_cmd(target, lambda, *degree, output),
        Command::Portrait {
            file,
            svg,
            seeds,
            tol,
            rel,
            abs,
            json,
        } => portrait_cmd(PortraitArgs {
            file,
            svg,
            seeds: *seeds,
            tol: *tol,
            rel: *rel,
            abs: *abs,
            json,
        }),
        Command::Catalog { action } => catalog_cmd(action),
        Command::Sigma { form, degree, json } => sigma_cmd(form, *degree, *json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
