use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sinebasis_cli::commands::{self, NbosonRun, OptimizeRun, ScanRun, SolveRun};
use sinebasis_cli::config::{pair, quadrature, required, FileConfig, ProblemSpec};
use sinebasis_cli::{repro, CliError, Format, Table};

/// Variational upper bounds for Schrödinger spectra in a scaled sine basis.
#[derive(Parser)]
#[command(name = "sinebasis", version)]
struct Cli {
    /// TOML file with default values for any long flag; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct ProblemArgs {
    /// Catalog name, e.g. harmonic, quartic_anharmonic, hydrogenic.
    #[arg(long)]
    potential: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    params: Option<Vec<f64>>,
    /// Solve the radial equation in this many dimensions.
    #[arg(long)]
    dimension: Option<u32>,
    #[arg(long)]
    angular_momentum: Option<u32>,
    /// Basis size N.
    #[arg(long)]
    basis: Option<usize>,
    /// Hard walls at LO and HI.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    confine: Option<Vec<f64>>,
    #[arg(long)]
    nodes_per_panel: Option<usize>,
    #[arg(long)]
    panels: Option<usize>,
    #[arg(long)]
    grading: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest eigenvalues on a fixed window.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Option<Vec<f64>>,
        /// Half-width of a symmetric window, or right end of a radial one.
        #[arg(long, visible_alias = "half-width")]
        length: Option<f64>,
        #[arg(long)]
        states: Option<usize>,
        /// Also write the matrix to this CSV file.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Eigenvalue curves over a grid of window sizes.
    Scan {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Option<Vec<f64>>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        states: Option<usize>,
        /// Fix the left end and vary the right one.
        #[arg(long, allow_negative_numbers = true)]
        left: Option<f64>,
    },
    /// Minimize each of the lowest eigenvalues over the window.
    Optimize {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        states: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        l_range: Option<Vec<f64>>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        a_range: Option<Vec<f64>>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        b_range: Option<Vec<f64>>,
        #[arg(long, allow_negative_numbers = true)]
        left: Option<f64>,
        /// One window for all states, minimizing their sum.
        #[arg(long)]
        joint: bool,
    },
    /// Rebuild a reference table and check it.
    Repro {
        /// table1..table7, singular or nboson.
        table: String,
        #[arg(long)]
        basis: Option<usize>,
    },
    /// Energy bounds for N bosons with attractive pair forces.
    Nboson {
        /// harmonic, delta or general.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        c: Option<f64>,
        /// Number of particles.
        #[arg(long)]
        n: Option<usize>,
        /// Pair potential for --kind general.
        #[arg(long)]
        potential: Option<String>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Option<Vec<f64>>,
    },
}

fn problem_spec(args: ProblemArgs, file: &FileConfig) -> Result<ProblemSpec, CliError> {
    let confine = pair("confine", args.confine)?.or(file.confine);
    Ok(ProblemSpec {
        potential: required("potential", args.potential.or_else(|| file.potential.clone()))?,
        params: args.params.or_else(|| file.params.clone()).unwrap_or_default(),
        dimension: args.dimension.or(file.dimension),
        angular_momentum: args.angular_momentum.or(file.angular_momentum).unwrap_or(0),
        confine,
        basis: required("basis", args.basis.or(file.basis))?,
        quadrature: quadrature(
            args.nodes_per_panel.or(file.nodes_per_panel),
            args.panels.or(file.panels),
            args.grading.or(file.grading),
        )?,
    })
}

fn execute(command: Command, file: &FileConfig) -> Result<(Table, bool), CliError> {
    Ok(match command {
        Command::Solve {
            problem,
            window,
            length,
            states,
            dump_matrix,
        } => {
            let run = SolveRun {
                problem: problem_spec(problem, file)?,
                window: pair("window", window)?.or(file.window),
                length: length.or(file.length),
                states: states.or(file.states).unwrap_or(1),
                dump_matrix,
            };
            (commands::solve(&run)?, true)
        }
        Command::Scan {
            problem,
            range,
            step,
            states,
            left,
        } => {
            let run = ScanRun {
                problem: problem_spec(problem, file)?,
                range: required("range", pair("range", range)?.or(file.range))?,
                step: required("step", step.or(file.step))?,
                states: states.or(file.states).unwrap_or(1),
                left: left.or(file.left),
            };
            (commands::scan(&run)?, true)
        }
        Command::Optimize {
            problem,
            states,
            l_range,
            a_range,
            b_range,
            left,
            joint,
        } => {
            let run = OptimizeRun {
                problem: problem_spec(problem, file)?,
                states: states.or(file.states).unwrap_or(1),
                l_range: pair("l-range", l_range)?.or(file.l_range),
                a_range: pair("a-range", a_range)?.or(file.a_range),
                b_range: pair("b-range", b_range)?.or(file.b_range),
                left: left.or(file.left),
                joint: joint || file.joint.unwrap_or(false),
            };
            (commands::optimize(&run)?, true)
        }
        Command::Repro { table, basis } => {
            let result = repro::run(&table, basis)?;
            let failures = result.failures();
            if failures > 0 {
                eprintln!("{table}: {failures} row(s) outside tolerance");
            }
            (result.to_table(), failures == 0)
        }
        Command::Nboson {
            kind,
            c,
            n,
            potential,
            params,
        } => {
            let potential = potential.or_else(|| file.potential.clone());
            let params = params.or_else(|| file.params.clone()).unwrap_or_default();
            let run = NbosonRun {
                kind: required("kind", kind.or_else(|| file.kind.clone()))?,
                coupling: required("c", c.or(file.c))?,
                particles: required("n", n.or(file.n))?,
                potential: potential.map(|p| (p, params)),
            };
            (commands::nboson(&run)?, true)
        }
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let format = cli.format.or(file.format).unwrap_or_default();
    let output = cli.output.or_else(|| file.output.clone());
    let (table, ok) = execute(cli.command, &file)?;
    let text = table.render(format);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Tolerance("tolerance check failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
