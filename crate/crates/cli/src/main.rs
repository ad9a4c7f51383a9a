use std::path::PathBuf;
use std::process::ExitCode;

use choi_cli::{
    cmd_analyze, cmd_probe, cmd_reproduce, cmd_search, AnalysisRequest, CliError, Instance, OutputFormat,
    ReportDocument, Settings,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "choimap",
    version,
    about = "Positivity and decomposability of generalized Choi maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// PSD tolerance, marginal band and violation threshold
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random starts per search
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct MatrixArgs {
    /// JSON file with {"n": .., "A": [[..]], optional "X"}
    #[arg(short, long)]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// All criteria plus both certificate searches
    Analyze(MatrixArgs),
    /// Product-vector search for a negative positivity gap
    Search(MatrixArgs),
    /// Structured PPT search for a negative Choi-matrix pairing
    Probe(MatrixArgs),
    /// Rebuild a named instance and print its headline numbers
    Reproduce {
        #[arg(value_enum)]
        name: Instance,
        /// Diagonal (a1 a2 a3) for boundary, or a single a for kye-boundary
        #[arg(long, num_args = 1..=3, allow_negative_numbers = true)]
        a: Option<Vec<f64>>,
        /// (c1 c2 c3) for kye-boundary
        #[arg(long, num_args = 3, allow_negative_numbers = true)]
        c: Option<Vec<f64>>,
        #[command(flatten)]
        common: Common,
    },
}

impl MatrixArgs {
    fn request(&self) -> AnalysisRequest {
        AnalysisRequest {
            matrix_path: self.input.clone(),
            tolerance: self.common.tol,
            seed: self.common.seed,
            starts: self.common.starts,
            output_format: self.common.format,
        }
    }
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            tolerance: self.tol,
            seed: self.seed,
            starts: self.starts,
        }
    }
}

fn run(cli: Cli) -> Result<(ReportDocument, OutputFormat), CliError> {
    match cli.command {
        Command::Analyze(m) => Ok((cmd_analyze(&m.request())?, m.common.format)),
        Command::Search(m) => Ok((cmd_search(&m.request())?, m.common.format)),
        Command::Probe(m) => Ok((cmd_probe(&m.request())?, m.common.format)),
        Command::Reproduce { name, a, c, common } => Ok((
            cmd_reproduce(name, a.as_deref(), c.as_deref(), &common.settings())?,
            common.format,
        )),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let rendered = run(cli).and_then(|(doc, format)| match format {
        OutputFormat::Json => Ok(doc.to_json()?),
        OutputFormat::Text => Ok(doc.to_text()),
    });
    match rendered {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
