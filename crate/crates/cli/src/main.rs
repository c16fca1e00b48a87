use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matroid_zeta::io::{parse_building_set, MatroidSpec};
use matroid_zeta::named;
use matroid_zeta::oracle;
use matroid_zeta::poincare::PoincareData;
use matroid_zeta::verify::{self, Suite, VerifyOptions};
use matroid_zeta::zeta::motivic_zeta;
use matroid_zeta::{BuildingSet, Error, FlatLattice, LaurentPoly, Matroid, ZetaKind};

/// Largest ground set for which a lattice of flats is built without `--force`.
const LATTICE_MAX_N: usize = 9;

#[derive(Parser)]
#[command(name = "mzeta", version, about = "Exact zeta functions of matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in matroid: fano, nonfano, k4, M1, M2, N1, N2
    #[arg(long)]
    named: Option<String>,
    /// Uniform matroid U_{R,N}
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    uniform: Option<Vec<usize>>,
    /// JSON matroid document on disk
    #[arg(long)]
    file: Option<PathBuf>,
    /// Inline JSON matroid document
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Lift the size guards
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Full,
    Local,
    Reduced,
}

impl From<Kind> for ZetaKind {
    fn from(k: Kind) -> ZetaKind {
        match k {
            Kind::Full => ZetaKind::Full,
            Kind::Local => ZetaKind::Local,
            Kind::Reduced => ZetaKind::Reduced,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic and reduced characteristic polynomials
    Char {
        #[command(flatten)]
        input: Input,
    },
    /// Motivic zeta function as a rational function in q and T
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Kind::Full)]
        kind: Kind,
        /// max, min, or a JSON file listing the flats
        #[arg(long, default_value = "max")]
        building_set: String,
        /// Also print the coefficients of T^0 .. T^N
        #[arg(long, value_name = "N")]
        expand: Option<usize>,
    },
    /// Topological zeta function with its value and derivative at 0
    Topzeta {
        #[command(flatten)]
        input: Input,
    },
    /// Poincaré and H polynomials and the Hilbert series of the cohomology ring
    Poincare {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "max")]
        building_set: String,
    },
    /// Truncated zeta series by direct summation over weight vectors
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N")]
        tmax: usize,
        #[arg(long, value_enum, default_value_t = Kind::Full)]
        kind: Kind,
    },
    /// Run the identity suites and report each check
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        tmax: usize,
        /// Number of sampled intermediate building sets
        #[arg(long, default_value_t = 3)]
        intermediates: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::TooLarge { .. } | Error::TooManyElements { .. } => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn load(input: &Input) -> Result<Matroid, Failure> {
    let s = &input.source;
    let spec = if let Some(name) = &s.named {
        named::self_check(name)?;
        MatroidSpec::Named { name: name.clone() }
    } else if let Some(v) = &s.uniform {
        MatroidSpec::Uniform { r: v[0], n: v[1] }
    } else if let Some(path) = &s.file {
        let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        MatroidSpec::parse(&text)?
    } else if let Some(text) = &s.json {
        MatroidSpec::parse(text)?
    } else {
        unreachable!("clap requires one source")
    };
    let m = spec.to_matroid()?;
    if m.n() > LATTICE_MAX_N && !input.force {
        return Err(Error::TooLarge {
            what: format!("lattice of flats over {} elements", m.n()),
            limit: LATTICE_MAX_N,
        }
        .into());
    }
    Ok(m)
}

fn building_set(choice: &str, lattice: Arc<FlatLattice>) -> Result<BuildingSet, Failure> {
    match choice {
        "max" => Ok(BuildingSet::maximal(lattice)),
        "min" => Ok(BuildingSet::minimal(lattice)?),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))?;
            Ok(parse_building_set(&text, lattice)?)
        }
    }
}

fn series_text(out: &mut String, coeffs: &[LaurentPoly]) {
    for (k, c) in coeffs.iter().enumerate() {
        writeln!(out, "  T^{k}: {c}").unwrap();
    }
}

fn series_json(coeffs: &[LaurentPoly]) -> Value {
    Value::from(coeffs.iter().map(LaurentPoly::to_json).collect::<Vec<_>>())
}

/// Renders the command's output and whether every requested check passed.
fn run(command: &Command) -> Result<(String, bool), Failure> {
    let mut text = String::new();
    let (format, value, ok) = match command {
        Command::Char { input } => {
            let m = load(input)?;
            let l = FlatLattice::build(&m);
            let (chi, bar) = (l.char_poly(), l.reduced_char_poly()?);
            writeln!(text, "chi = {chi}\nreduced chi = {bar}").unwrap();
            (
                input.format,
                json!({"chi": chi.to_json(), "reduced_chi": bar.to_json()}),
                true,
            )
        }
        Command::Zeta {
            input,
            kind,
            building_set: choice,
            expand,
        } => {
            let m = load(input)?;
            let g = building_set(choice, Arc::new(FlatLattice::build(&m)))?;
            let kind = ZetaKind::from(*kind);
            let z = motivic_zeta(&g, kind)?.collapse();
            writeln!(text, "{kind} zeta = {z}").unwrap();
            let mut v = json!({"kind": kind.name(), "zeta": z.to_json()});
            if let Some(n) = expand {
                let coeffs = z.series_coefficients(*n)?;
                writeln!(text, "series through T^{n}:").unwrap();
                series_text(&mut text, &coeffs);
                v["series"] = series_json(&coeffs);
            }
            (input.format, v, true)
        }
        Command::Topzeta { input } => {
            let m = load(input)?;
            let top =
                motivic_zeta(&BuildingSet::maximal(Arc::new(FlatLattice::build(&m))), ZetaKind::Full)?.mu_top()?;
            let (v0, d0) = (top.value_at_0()?, top.derivative_at_0()?);
            writeln!(text, "Z^top = {top}\nZ^top(0) = {v0}\nZ^top'(0) = {d0}").unwrap();
            (
                input.format,
                json!({"topological_zeta": top.to_json(), "value_at_0": v0.to_string(), "derivative_at_0": d0.to_string()}),
                true,
            )
        }
        Command::Poincare {
            input,
            building_set: choice,
        } => {
            let m = load(input)?;
            let lattice = Arc::new(FlatLattice::build(&m));
            let flags = PoincareData::compute(&BuildingSet::maximal(lattice.clone()))?;
            let g = building_set(choice, lattice)?;
            let data = PoincareData::compute(&g)?;
            let (p_bar, p, h, hilbert) = (flags.p_total(), data.p_total(), data.h_total(), data.hilbert_series());
            writeln!(
                text,
                "reduced Poincaré polynomial = {p_bar}\nEuler-Poincaré polynomial = {p}\nH polynomial = {h}\nHilbert series = {hilbert}"
            )
            .unwrap();
            (
                input.format,
                json!({
                    "poincare": p_bar.to_json(),
                    "euler_poincare": p.to_json(),
                    "h": h.to_json(),
                    "hilbert_series": hilbert.to_json(),
                }),
                true,
            )
        }
        Command::Oracle { input, tmax, kind } => {
            let m = load(input)?;
            let kind = ZetaKind::from(*kind);
            let coeffs = if input.force {
                oracle::truncated_zeta_sum_unchecked(&m, kind, *tmax)?
            } else {
                oracle::truncated_zeta_sum(&m, kind, *tmax)?
            };
            writeln!(text, "{kind} zeta series through T^{tmax}:").unwrap();
            series_text(&mut text, &coeffs);
            (
                input.format,
                json!({"kind": kind.name(), "series": series_json(&coeffs)}),
                true,
            )
        }
        Command::Verify {
            input,
            suite,
            tmax,
            intermediates,
            seed,
        } => {
            let m = load(input)?;
            let suite: Suite = suite.parse()?;
            let opts = VerifyOptions {
                tmax: *tmax,
                force: input.force,
                intermediates: *intermediates,
                seed: *seed,
            };
            let report = verify::run(&m, suite, &opts)?;
            writeln!(text, "{report}").unwrap();
            (input.format, report.to_json(), report.passed())
        }
    };
    let out = match format {
        Format::Text => text,
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("JSON value serializes")
        ),
    };
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
