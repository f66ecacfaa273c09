use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use azbk::commands::{
    cmd_dual_basis, cmd_generators, cmd_mzv, cmd_reduce, cmd_relations, cmd_tables, cmd_verify, Format,
    MzvInput, Output, VerifySource, DEFAULT_MZV_TOL, DEFAULT_VERIFY_TOL,
};
use azbk::doc::OutputDocument;
use azbk::CliError;
use azbk_core::relations::{Family, Form};

#[derive(Parser)]
#[command(name = "azbk", version, about = "Relations among multiple zeta values from the associator equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    TwoCycle,
    Hexagon,
    Pentagon,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::TwoCycle => Family::TwoCycle,
            FamilyArg::Hexagon => Family::Hexagon,
            FamilyArg::Pentagon => Family::Pentagon,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Symbolic,
    Mzv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Latex,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Latex => Format::Latex,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the relations of one family up to a weight.
    Relations {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        max_weight: usize,
        #[arg(long, value_enum, default_value = "mzv")]
        form: FormArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Reproduce the degree 1, 2 or 3 tables of pentagon relations and duals.
    Tables {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Check relations numerically; exits with 1 if any residual exceeds --tol.
    Verify {
        #[arg(long, value_enum, required_unless_present = "input", conflicts_with = "input")]
        family: Option<FamilyArg>,
        #[arg(long, required_unless_present = "input", conflicts_with = "input")]
        max_weight: Option<usize>,
        /// A JSON document as written by `relations --format json`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Expand a word over X12, X23, X24, X34, X45, X51 in the B4 basis.
    Reduce {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Numeric value of a multiple zeta value.
    Mzv {
        /// Comma separated, first entry at least 2, e.g. 2,1.
        #[arg(long, required_unless_present = "word", conflicts_with = "word")]
        composition: Option<String>,
        /// A word over X0, X1; divergent words are shuffle regularized.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MZV_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Dual basis elements of a given degree as bar tensors.
    DualBasis {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Multiplicative generators of a given degree with their duals.
    Generators {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let precision = std::env::var("AZBK_PRECISION").ok();
    let precision = precision.as_deref();
    match cli.command {
        Command::Relations { family, max_weight, form, format } => {
            let form = match form {
                FormArg::Symbolic => Form::Symbolic,
                FormArg::Mzv => Form::Mzv,
            };
            cmd_relations(family.into(), max_weight, form, format.into())
        }
        Command::Tables { degree, format } => cmd_tables(degree, format.into()),
        Command::Verify { family, max_weight, input, tol, format } => {
            let source = match (input, family, max_weight) {
                (Some(path), _, _) => {
                    let doc: OutputDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    VerifySource::Document(Box::new(doc))
                }
                (None, Some(f), Some(n)) => VerifySource::Family(f.into(), n),
                _ => return Err(CliError::Usage("give --family and --max-weight, or --input".into())),
            };
            cmd_verify(source, tol, precision, format.into())
        }
        Command::Reduce { word, format } => cmd_reduce(&word, format.into()),
        Command::Mzv { composition, word, tol, format } => {
            let input = match (composition, word) {
                (Some(c), _) => MzvInput::Composition(c),
                (None, Some(w)) => MzvInput::Word(w),
                (None, None) => return Err(CliError::Usage("give --composition or --word".into())),
            };
            cmd_mzv(input, tol, precision, format.into())
        }
        Command::DualBasis { degree, format } => cmd_dual_basis(degree, format.into()),
        Command::Generators { degree, format } => cmd_generators(degree, format.into()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
