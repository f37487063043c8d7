//! Command-line front end: argument parsing, job execution and rendering.

mod render;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use adapted_basis::basis::{action_matrix, enumerate_basis, intersection_matrix};
use adapted_basis::invariants::ConjugacyInput;
use adapted_basis::rewriter::single_relator_presentation;
use adapted_basis::symplectic::{is_symplectic, symplectic_basis, transform_action};
use adapted_basis::verify::{sweep, verify};
use adapted_basis::PrimeOrderData;

pub use render::Document;

/// Exit status 1.
pub const EXIT_INVALID: i32 = 1;
/// Exit status 2.
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violation: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Arrangement {
    /// `((0, 1), (-1, 0))` blocks down the diagonal
    #[default]
    Paired,
    /// `((0, I), (-I, 0))`
    Split,
}

#[derive(Debug, Parser)]
#[command(name = "adapted-basis", version, about = "Adapted homology bases of prime-order surface automorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-relator presentation of the surface group
    #[command(visible_alias = "presentation")]
    Rewrite(ClassArgs),
    /// The adapted homology basis
    Basis(ClassArgs),
    /// Matrix of the automorphism on the adapted basis
    #[command(visible_alias = "action")]
    Matrix(ClassArgs),
    /// Intersection matrix of the adapted basis
    Intersection(ClassArgs),
    /// Symplectic change of basis and the transformed action
    Symplectify {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t)]
        arrangement: Arrangement,
        /// Re-check every identity of the output and fail on any mismatch
        #[arg(long)]
        verify: bool,
    },
    /// Run every exact check on one class
    Verify(ClassArgs),
    /// Verify every class within the bounds
    Sweep {
        #[arg(long)]
        p_max: u32,
        #[arg(long)]
        t_max: usize,
        #[arg(long)]
        g0_max: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    #[arg(long)]
    pub p: Option<u32>,
    /// Rotation data, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "m")]
    pub n: Option<Vec<u32>>,
    /// Multiplicities m_1, ..., m_{p-1}, comma separated
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub g0: Option<u32>,
    /// JSON class description; `-` reads standard input
    #[arg(long, conflicts_with_all = ["p", "n", "m", "t", "g0"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Where the class comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSource {
    Given(ConjugacyInput),
    File(PathBuf),
    Stdin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Presentation,
    Basis,
    Action,
    Intersection,
    Symplectic(Arrangement),
    Verify,
}

/// One run of the tool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobSpec {
    Class {
        source: ClassSource,
        outputs: Vec<Output>,
        format: Format,
        verify: bool,
    },
    Sweep { p_max: u32, t_max: usize, g0_max: u32, format: Format },
}

impl ClassArgs {
    fn source(&self) -> Result<ClassSource, CliError> {
        if let Some(path) = &self.input {
            return Ok(if path.as_os_str() == "-" { ClassSource::Stdin } else { ClassSource::File(path.clone()) });
        }
        match (self.p, self.g0) {
            (Some(p), Some(g0)) => Ok(ClassSource::Given(ConjugacyInput {
                p,
                n: self.n.clone(),
                m: self.m.clone(),
                t: self.t,
                g0,
            })),
            (None, None) if self.n.is_none() && self.m.is_none() && self.t.is_none() => Ok(ClassSource::Stdin),
            _ => Err(CliError::Invalid("both --p and --g0 are required".into())),
        }
    }
}

impl JobSpec {
    pub fn from_cli(cli: &Cli) -> Result<JobSpec, CliError> {
        let class = |args: &ClassArgs, output: Output, verify: bool| -> Result<JobSpec, CliError> {
            Ok(JobSpec::Class { source: args.source()?, outputs: vec![output], format: args.format, verify })
        };
        match &cli.command {
            Command::Rewrite(a) => class(a, Output::Presentation, false),
            Command::Basis(a) => class(a, Output::Basis, false),
            Command::Matrix(a) => class(a, Output::Action, false),
            Command::Intersection(a) => class(a, Output::Intersection, false),
            Command::Symplectify { class: a, arrangement, verify } => {
                class(a, Output::Symplectic(*arrangement), *verify)
            }
            Command::Verify(a) => class(a, Output::Verify, false),
            Command::Sweep { p_max, t_max, g0_max, format } => Ok(JobSpec::Sweep {
                p_max: *p_max,
                t_max: *t_max,
                g0_max: *g0_max,
                format: *format,
            }),
        }
    }
}

fn read_input(source: &ClassSource) -> Result<ConjugacyInput, CliError> {
    let text = match source {
        ClassSource::Given(input) => return Ok(input.clone()),
        ClassSource::File(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
        ClassSource::Stdin => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Invalid(format!("stdin: {e}")))?;
            s
        }
    };
    ConjugacyInput::from_json(&text).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Run a job and return the rendered output.
pub fn run(spec: &JobSpec) -> Result<String, CliError> {
    match spec {
        JobSpec::Sweep { p_max, t_max, g0_max, format } => {
            let report = sweep(*p_max, *t_max, *g0_max);
            let doc = Document::Sweep(report);
            let out = doc.render(*format)?;
            if let Document::Sweep(r) = &doc {
                if r.failed > 0 {
                    return Err(CliError::Internal(format!("{} of {} classes failed\n{out}", r.failed, r.cases.len())));
                }
            }
            Ok(out)
        }
        JobSpec::Class { source, outputs, format, verify: check } => {
            if outputs.is_empty() {
                return Err(CliError::Invalid("no output requested".into()));
            }
            let input = read_input(source)?;
            let d = input.to_data().map_err(|e| CliError::Invalid(e.to_string()))?;
            let mut rendered = Vec::new();
            for output in outputs {
                let doc = build(&input, &d, *output, *check)?;
                rendered.push(doc.render(*format)?);
            }
            Ok(rendered.concat())
        }
    }
}

fn build(input: &ConjugacyInput, d: &PrimeOrderData, output: Output, check: bool) -> Result<Document, CliError> {
    let internal = |e: &dyn std::fmt::Display| CliError::Internal(e.to_string());
    let class = input.clone();
    Ok(match output {
        Output::Presentation => {
            let pres = single_relator_presentation(d).map_err(|e| internal(&e))?;
            Document::Presentation { class, pres }
        }
        Output::Basis => Document::Basis { class, data: d.normalized(), basis: enumerate_basis(d) },
        Output::Action => Document::Matrix { class, matrix: action_matrix(d) },
        Output::Intersection => Document::Matrix { class, matrix: intersection_matrix(d) },
        Output::Symplectic(arrangement) => {
            let form = intersection_matrix(d);
            let m = action_matrix(d).matrix;
            let mut chg = symplectic_basis(&form.matrix).map_err(|e| internal(&e))?;
            if arrangement == Arrangement::Split {
                chg = chg.to_split();
            }
            let t = transform_action(&m, &chg).map_err(|e| internal(&e))?;
            if check {
                let ok_form = chg.verify(&form.matrix);
                let ok_action = is_symplectic(&t, &chg.target).map_err(|e| internal(&e))?;
                let ok_order = t.pow(d.p).is_identity();
                if !(ok_form && ok_action && ok_order) {
                    return Err(CliError::Internal(format!(
                        "symplectic checks failed: change {ok_form}, action {ok_action}, order {ok_order}"
                    )));
                }
            }
            Document::Symplectic { class, labels: form.labels, change: chg, action: t }
        }
        Output::Verify => {
            let report = verify(d);
            if !report.passed() {
                let names: Vec<&str> = report.failures().map(|c| c.name).collect();
                return Err(CliError::Internal(format!("failed checks: {}", names.join(", "))));
            }
            Document::Verify { class, report }
        }
    })
}

/// Parse arguments, run, print, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = JobSpec::from_cli(&cli).and_then(|spec| run(&spec));
    match result {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
