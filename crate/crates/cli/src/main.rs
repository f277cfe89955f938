use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand as ClapSubcommand};
use diffalg_cli::batch::run_batch;
use diffalg_cli::query::{run_query, Case, CliError, Query, Subcommand, EXIT_USAGE};
use diffalg_cli::report::ErrorReport;
use diffalg_core::solver::{DEFAULT_DEGREE_CAP, DEGREE_CAP_ENV};

#[derive(Parser, Debug)]
#[command(name = "diffalg", version, about = "Differential transcendence and dependence tests for (q-)difference equations over Q(x)")]
struct Cli {
    /// Difference structure: shift x -> x+1 or q-dilation x -> q*x.
    #[arg(long, value_enum, default_value_t = Case::Shift, global = true)]
    case: Case,
    /// Dilation factor for --case q, e.g. 2 or 1/4.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Cap on numerator degree bounds.
    #[arg(long, global = true, env = DEGREE_CAP_ENV)]
    degree_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FArg {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(ClapSubcommand, Debug)]
enum Command {
    /// Polar and numerator dispersion of f.
    Disp(FArg),
    /// f = standard part + σ(g) - a*g for a constant twist a.
    StandardForm {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        a: String,
    },
    /// f = standard part * σ(g)/g.
    MultForm(FArg),
    /// Rational solutions of σ(y) - a*y = Σ λ_k rhs_k.
    SolveFirstOrder {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Vec<String>,
        /// Leave every λ_k free instead of fixing it to 1.
        #[arg(long)]
        free: bool,
    },
    /// Rational solutions of Σ p_i σ^i(y) = Σ λ_k rhs_k.
    SolveScalar {
        /// Coefficient vector [p_0, .., p_m].
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Vec<String>,
        #[arg(long)]
        free: bool,
    },
    /// Rational solutions of σ(v) = M v + Σ λ_k rhs_k.
    SolveSystem {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Right-hand side vector; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        rhs: Vec<String>,
        #[arg(long)]
        free: bool,
    },
    /// Constant-coefficient telescoper for a_1, .., a_n.
    Telescope {
        #[arg(long, allow_hyphen_values = true, required = true)]
        a: Vec<String>,
        #[arg(long)]
        order_bound: usize,
        /// Use logarithmic derivatives ∂(a_i)/a_i.
        #[arg(long)]
        mult: bool,
    },
    /// Differential algebraicity of solutions of σ(y) = b*y.
    DaHypergeom {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Differential algebraicity of solutions of σ(z) = a*z + b.
    DaInhomog {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Whether σ(Y) = A Y admits a rational B with σ(B) = A B A⁻¹ + ∂(A) A⁻¹.
    Integrability {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "companion", required_unless_present = "companion")]
        matrix: Option<String>,
        /// Scalar equation [p_0, .., p_m]; uses its companion matrix.
        #[arg(long, allow_hyphen_values = true)]
        companion: Option<String>,
    },
    /// Group of σ(y) = y + f.
    ClassifyGroup(FArg),
    /// Newline-delimited JSON queries, one report per line.
    Batch { path: PathBuf },
}

fn to_query(cli: Cli) -> Query {
    let mut q = Query { case: cli.case, q: cli.q, degree_cap: cli.degree_cap, ..Query::default() };
    let sub = match cli.command {
        Command::Disp(FArg { f }) => {
            q.f = Some(f);
            Subcommand::Disp
        }
        Command::StandardForm { f, a } => {
            q.f = Some(f);
            q.a = vec![a];
            Subcommand::StandardForm
        }
        Command::MultForm(FArg { f }) => {
            q.f = Some(f);
            Subcommand::MultForm
        }
        Command::SolveFirstOrder { a, rhs, free } => {
            (q.a, q.rhs, q.free) = (vec![a], rhs, free);
            Subcommand::SolveFirstOrder
        }
        Command::SolveScalar { coeffs, rhs, free } => {
            (q.coeffs, q.rhs, q.free) = (Some(coeffs), rhs, free);
            Subcommand::SolveScalar
        }
        Command::SolveSystem { matrix, rhs, free } => {
            (q.matrix, q.rhs, q.free) = (Some(matrix), rhs, free);
            Subcommand::SolveSystem
        }
        Command::Telescope { a, order_bound, mult } => {
            (q.a, q.order_bound, q.mult) = (a, Some(order_bound), mult);
            Subcommand::Telescope
        }
        Command::DaHypergeom { b } => {
            q.b = Some(b);
            Subcommand::DaHypergeom
        }
        Command::DaInhomog { a, b } => {
            (q.a, q.b) = (vec![a], Some(b));
            Subcommand::DaInhomog
        }
        Command::Integrability { matrix, companion } => {
            (q.matrix, q.companion) = (matrix, companion);
            Subcommand::Integrability
        }
        Command::ClassifyGroup(FArg { f }) => {
            q.f = Some(f);
            Subcommand::ClassifyGroup
        }
        Command::Batch { .. } => unreachable!("batch is handled before conversion"),
    };
    q.subcommand = Some(sub);
    q
}

fn emit(value: &impl serde::Serialize) {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).expect("stdout write");
    writeln!(out).expect("stdout write");
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    emit(&ErrorReport { line: None, error: e.body() });
    ExitCode::from(e.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            emit(&ErrorReport { line: None, error: CliError::usage(first).body() });
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cap = cli.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    if let Command::Batch { path } = &cli.command {
        return match run_batch(path, cap) {
            Ok(out) => {
                out.lines.iter().for_each(emit);
                ExitCode::from(out.exit_code)
            }
            Err(e) => fail(e),
        };
    }
    match run_query(&to_query(cli), cap) {
        Ok(report) => {
            emit(&report);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
