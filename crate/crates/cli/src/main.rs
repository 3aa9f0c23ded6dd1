//! Command-line front end: verification suites, the contour transform, the
//! expansion at x and the expression parser. Exit code 0 iff no failures.

mod state_spec;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use theta_twistor::section::{HomogeneousSection, Spin};
use theta_twistor::transform::{
    check_dirac, check_massless, contour_transform, expand_at_x, multiplet_from_json,
    multiplet_to_json, ChiralMultiplet,
};
use theta_twistor::{parser, suites, Expr};

#[derive(Parser)]
#[command(name = "theta-twistor", version, about = "Exact verification of superspace and theta-twistor identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        /// One of the registered suites, or `all`.
        #[arg(long)]
        suite: String,
        /// Seed for the randomized checks; reports are deterministic per
        /// seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Transform an elementary state into its chiral multiplet.
    Transform {
        /// Spin as 0, 1/2, 1, 3/2, ...
        #[arg(long)]
        spin: String,
        /// The G0 component: elem(k,p,q; a=[..], b=[..], c=[..]).
        #[arg(long)]
        state: String,
        /// Optional G^1 component in the same elem(...) form.
        #[arg(long)]
        psi1_state: Option<String>,
        /// Optional G^2 component.
        #[arg(long)]
        psi2_state: Option<String>,
        /// Optional G2 (auxiliary) component.
        #[arg(long)]
        aux_state: Option<String>,
        /// Pole selection: `a`, `b`, `all`, or a comma list of a, b and
        /// rational chart locations.
        #[arg(long)]
        poles: String,
        /// Comma list of checks to run on the output: dirac, kg.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        report: ReportFormat,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Expand a serialized multiplet into the full superfield at x.
    Expand {
        /// Path to a multiplet JSON file (as written by `transform`).
        #[arg(long = "in")]
        input: std::path::PathBuf,
        /// Expand through the chiral shift to the point x.
        #[arg(long)]
        at_x: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Parse an expression and print its normal form.
    Parse {
        #[arg(long)]
        expr: String,
    },
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> std::io::Result<()> {
    match out {
        None => {
            print!("{}", text);
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            suite,
            seed,
            report,
            out,
        } => {
            let r = suites::run_suite(&suite, seed).map_err(|e| e.to_string())?;
            let text = match report {
                ReportFormat::Json => r.to_json(),
                ReportFormat::Text => r.to_text(),
            };
            emit(&text, &out).map_err(|e| e.to_string())?;
            Ok(!r.has_failures())
        }
        Command::Transform {
            spin,
            state,
            psi1_state,
            psi2_state,
            aux_state,
            poles,
            check,
            report,
            out,
        } => {
            let spin: Spin = spin.parse().map_err(|e: theta_twistor::Error| e.to_string())?;
            let primary = state_spec::parse_elem(&state, spin).map_err(|e| e.to_string())?;
            let mut section = primary.section.clone();
            let opt = |src: &Option<String>| -> Result<Expr, String> {
                match src {
                    None => Ok(Expr::zero()),
                    Some(text) => Ok(state_spec::parse_elem(text, spin)
                        .map_err(|e| e.to_string())?
                        .section
                        .g0),
                }
            };
            section.g1[0] = opt(&psi1_state)?;
            section.g1[1] = opt(&psi2_state)?;
            section.g2 = opt(&aux_state)?;
            let section = HomogeneousSection::new(spin, section.g0, section.g1, section.g2);
            let pole_list =
                state_spec::parse_poles(&poles, &primary).map_err(|e| e.to_string())?;
            let m = contour_transform(&section, &pole_list).map_err(|e| e.to_string())?;
            let mut failures = 0usize;
            let mut check_lines = String::new();
            if let Some(list) = check {
                for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let witnesses = match item {
                        "dirac" => check_dirac(&m).map_err(|e| e.to_string())?,
                        "kg" => check_massless(&m).map_err(|e| e.to_string())?,
                        other => return Err(format!("unknown check `{}`", other)),
                    };
                    if witnesses.is_empty() {
                        check_lines.push_str(&format!("check {}: pass\n", item));
                    } else {
                        failures += witnesses.len();
                        for (label, w) in witnesses {
                            check_lines
                                .push_str(&format!("check {}: FAIL {} -> {}\n", item, label, w));
                        }
                    }
                }
            }
            if !check_lines.is_empty() {
                print!("{}", check_lines);
            }
            let body = match report {
                ReportFormat::Json => multiplet_to_json(&m),
                ReportFormat::Text => render_multiplet(&m),
            };
            emit(&body, &out).map_err(|e| e.to_string())?;
            Ok(failures == 0)
        }
        Command::Expand { input, at_x, out } => {
            if !at_x {
                return Err("expand requires --at-x".to_string());
            }
            let text = std::fs::read_to_string(&input).map_err(|e| e.to_string())?;
            let m = multiplet_from_json(&text).map_err(|e| e.to_string())?;
            let expanded = expand_at_x(&m).map_err(|e| e.to_string())?;
            let mut body = String::new();
            for (k, e) in expanded.iter().enumerate() {
                body.push_str(&format!("Phi[{}] = {}\n", k, e));
            }
            emit(&body, &out).map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Parse { expr } => {
            let e = parser::parse(&expr).map_err(|e| e.to_string())?;
            println!("{}", e);
            Ok(true)
        }
    }
}

fn render_multiplet(m: &ChiralMultiplet) -> String {
    let mut out = String::new();
    out.push_str(&format!("spin: {}  arity: {}\n", m.spin, m.spin.arity()));
    for (name, e) in m.fields() {
        out.push_str(&format!("{} = {}\n", name, e));
    }
    out
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
