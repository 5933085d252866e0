//! Command implementations behind the `surfrep` binary.
//!
//! Every command returns its report as canonical JSON (or CSV for tables)
//! so that identical invocations produce identical bytes.

pub mod analyze;
pub mod spec;
pub mod table;

use std::fmt;
use std::path::PathBuf;

use surfrep::io::{rep_from_str_unvalidated, to_canonical_string};
use surfrep::topology::obstruction_class;
use surfrep::{Error, Representation, SurfaceRep};

pub use analyze::{analyze, AnalysisReport};
pub use spec::{parse_grid, CellSpec, GenSpec};
pub use table::{dim_table, DimTable, TableFormat};

/// Exit status for malformed input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status for a violated mathematical precondition.
pub const EXIT_PRECONDITION: i32 = 2;

/// A failed command. `partial` is a report to print on stdout anyway.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub partial: Option<String>,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into(), partial: None }
    }

    pub fn from_lib(e: &Error) -> Self {
        CliError { code: exit_code(e), message: e.to_string(), partial: None }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Parse and shape problems are input errors; everything else the library
/// reports is a precondition on the mathematics.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Json(_)
        | Error::Parse(_)
        | Error::InvalidDescriptor(_)
        | Error::InvalidElement(_)
        | Error::InvalidGenus(_)
        | Error::GenusMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::InvalidWord(_)
        | Error::IndexOutOfRange { .. } => EXIT_INPUT,
        _ => EXIT_PRECONDITION,
    }
}

/// Where a representation comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Generate(GenSpec),
    File(PathBuf),
}

impl Source {
    /// Loads or builds the representation without checking the relator.
    pub fn load(&self) -> Result<SurfaceRep, CliError> {
        match self {
            Source::Generate(spec) => spec.generate().map_err(|e| CliError::from_lib(&e)),
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                rep_from_str_unvalidated(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
            }
        }
    }
}

/// The obstruction class as JSON. For groups other than PSL the relator
/// must hold, and the class is then trivial.
pub fn obstruction(source: &Source) -> Result<String, CliError> {
    let rep = source.load()?;
    if rep.descriptor().family() != surfrep::Family::Psl {
        rep.validate().map_err(|e| CliError::from_lib(&e))?;
    }
    let class = obstruction_class(&rep).map_err(|e| CliError::from_lib(&e))?;
    to_canonical_string(&class).map_err(|e| CliError::from_lib(&e))
}
