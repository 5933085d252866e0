use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use surfrep::FormKind;
use surfrep_cli::{analyze, dim_table, obstruction, parse_grid, CliError, GenSpec, Source, TableFormat, EXIT_INPUT};

/// Representation varieties of surface groups: cohomology dimensions,
/// pairings and obstruction classes.
#[derive(Parser)]
#[command(name = "surfrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one representation.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        /// Compute only this pairing (default: bilinear, plus hermitian at unitary reps).
        #[arg(long, value_enum)]
        form: Option<Form>,
        /// Include wall-clock time in the report (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Computed against predicted dimensions over a grid of groups and genera.
    DimTable {
        /// Comma-separated cells such as "SL2 g=2,GL2 g=3".
        #[arg(long, default_value = "SL2 g=2,SL2 g=3,SL3 g=2,GL2 g=2")]
        grid: String,
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, value_enum, default_value_t = Out::Json)]
        out: Out,
    },
    /// Obstruction class of a PSL representation given by SL lifts.
    Obstruction {
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Generation spec: "FAMILYn g=G [strict|schottky] seed=S".
    #[arg(long)]
    generate: Option<String>,
    /// Representation file (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
}

impl SourceArgs {
    fn source(self) -> Result<Source, CliError> {
        match (self.generate, self.input) {
            (Some(g), _) => g.parse::<GenSpec>().map(Source::Generate).map_err(|e| CliError::from_lib(&e)),
            (None, Some(p)) => Ok(Source::File(p)),
            (None, None) => Err(CliError::input("one of --generate or --input is required")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Bilinear,
    Hermitian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    Json,
    Csv,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze { source, form, timing } => {
            let form = form.map(|f| match f {
                Form::Bilinear => FormKind::Bilinear,
                Form::Hermitian => FormKind::Hermitian,
            });
            Ok(analyze(&source.source()?, form, timing)?.to_json())
        }
        Command::DimTable { grid, seeds, out } => {
            let grid = parse_grid(&grid).map_err(|e| CliError::from_lib(&e))?;
            let table = dim_table(&grid, seeds);
            let s = &table.summary;
            eprintln!("{} of {} rows agree", s.agreeing, s.rows);
            let format = match out {
                Out::Json => TableFormat::Json,
                Out::Csv => TableFormat::Csv,
            };
            Ok(table.render(format))
        }
        Command::Obstruction { source } => obstruction(&source.source()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(partial) = &e.partial {
                println!("{partial}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
