//! `krc`: command-line front end for the KR crystal library.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! exceeds its node budget, 2 on invalid arguments.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kr_crystal::crystal::Crystal;
use kr_crystal::graph::{character, decompose, generate, DEFAULT_NODE_BUDGET};
use kr_crystal::kr::{KnCrystal, KrCrystal};
use kr_crystal::tableau::Column;
use kr_crystal::tensor::{generate_ba, restricted_paths, square, TensorCrystal};
use kr_crystal::verify::{norm_eu, norm_u, run_all};
use kr_crystal::Error;

#[derive(Parser, Debug)]
#[command(name = "krc", version, about = "Kirillov-Reshetikhin crystals B^{k,1} of type D_n^(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Set {
    /// The crystal B^{k,1} itself.
    Kr,
    /// The KN columns of height k, i.e. B(Lambda_k).
    Kn,
    /// The subset B_1 of B^{k,1} (x) B^{k,1}.
    B1,
    /// The subset B_2 of B^{k,1} (x) B^{k,1}.
    B2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    E,
    F,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the elements of B^{k,1} (or the KN columns with --kn), one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kn: bool,
    },
    /// Export the crystal graph of B^{k,1}.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// "all", "classical", or a comma-separated list of labels.
        #[arg(long, default_value = "all")]
        labels: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: usize,
    },
    /// Classical highest weights of B^{k,1}, B(Lambda_k), B_1 or B_2.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "kr")]
        set: Set,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: usize,
    },
    /// Count the restricted paths of length l and print their character.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: usize,
    },
    /// Evaluate |u(c)|^2, or |e_j u(c)|^2 with --j.
    Norm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: u32,
        /// Comma-separated c_1,...,c_{k'}; empty when k = 1.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Apply e_i or f_i to a column of B^{k,1}.
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Letters top to bottom, e.g. "1,3,1b".
        #[arg(long)]
        column: String,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value = "f")]
        op: Op,
    },
    /// Run the verification suite over a parameter grid.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        l_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => 1,
            Error::Domain(_) | Error::Parse(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: format!("i/o error: {e}") }
    }
}

type CmdResult = std::result::Result<(String, bool), Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn parse_labels(text: &str, kr: &KrCrystal) -> std::result::Result<Vec<usize>, Failure> {
    match text {
        "all" => Ok(kr.labels()),
        "classical" => Ok((1..=kr.n()).collect()),
        _ => text
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("invalid label {t:?}"))))
            .collect(),
    }
}

fn parse_c(text: &str) -> std::result::Result<Vec<u32>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| usage(format!("invalid entry {t:?} in --c"))))
        .collect()
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string() + "\n").collect()
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Enumerate { n, k, kn } => {
            let cols = if kn { KnCrystal::new(n, k)?.elements() } else { KrCrystal::new(n, k)?.elements() };
            Ok((lines(cols), true))
        }
        Command::Graph { n, k, labels, format, out, node_budget } => {
            let kr = KrCrystal::new(n, k)?;
            let labels = parse_labels(&labels, &kr)?;
            let g = generate(&kr, &[kr.highest(0)], &labels, node_budget)?;
            let text = match format {
                Format::Dot => g.to_dot(),
                Format::Json => serde_json::to_string_pretty(&g.to_json()).expect("json") + "\n",
                Format::Text => {
                    let mut s = lines(g.nodes.iter().enumerate().map(|(i, b)| format!("{i}: {b}")));
                    s += &lines(g.edges.iter().map(|e| format!("{} -{}-> {}", e.source, e.label, e.target)));
                    s
                }
            };
            match out {
                Some(path) => {
                    fs::write(&path, text)?;
                    Ok((
                        format!("wrote {} nodes, {} edges to {}\n", g.nodes.len(), g.edges.len(), path.display()),
                        true,
                    ))
                }
                None => Ok((text, true)),
            }
        }
        Command::Decompose { n, k, set, node_budget } => {
            let (weights, size) = match set {
                Set::Kr => {
                    let kr = KrCrystal::new(n, k)?;
                    let e = kr.elements();
                    (decompose(&kr, &e)?, e.len())
                }
                Set::Kn => {
                    let kn = KnCrystal::new(n, k)?;
                    let e = kn.elements();
                    (decompose(&kn, &e)?, e.len())
                }
                Set::B1 | Set::B2 => {
                    let a = if matches!(set, Set::B1) { 1 } else { 2 };
                    let t = square(n, k)?;
                    let e: Vec<Vec<Column>> = generate_ba(n, k, a, node_budget)?.into_iter().collect();
                    (decompose(&t, &e)?, e.len())
                }
            };
            let mut s = format!("size {size}\n");
            s += &lines(weights.iter().map(|w| format!("{w}")));
            Ok((s, true))
        }
        Command::Paths { n, k, l, node_budget } => {
            let kr = KrCrystal::new(n, k)?;
            let paths = restricted_paths(n, k, l, node_budget)?;
            let t = TensorCrystal::new(vec![kr; l])?;
            let ch = character(&t, &paths);
            let mut s = format!("paths {}\n", paths.len());
            s += &lines(ch.0.iter().map(|(w, m)| format!("{} {m}", w.eps_string())));
            Ok((s, true))
        }
        Command::Norm { n, k, l, c, j } => {
            let c = parse_c(&c)?;
            let value = match j {
                Some(j) => norm_eu(n, k, l, &c, j)?,
                None => norm_u(n, k, l, &c)?,
            };
            Ok((format!("{value}\n"), true))
        }
        Command::Act { n, k, column, i, op } => {
            let kr = KrCrystal::new(n, k)?;
            let b = kr.element(Column::parse(n, &column)?)?;
            if i > n {
                return Err(usage(format!("label {i} out of range 0..={n}")));
            }
            let image = match op {
                Op::E => kr.e(i, &b),
                Op::F => kr.f(i, &b),
            };
            Ok((image.map_or_else(|| "0".to_string(), |x| x.to_string()) + "\n", true))
        }
        Command::Verify { n_max, k_max, l_max, format, node_budget } => {
            let reports = run_all(n_max, k_max, l_max, node_budget);
            let ok = reports.iter().all(|r| r.passed);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&reports).expect("json") + "\n",
                Format::Text | Format::Dot => {
                    let failed = reports.iter().filter(|r| !r.passed).count();
                    let mut s = lines(&reports);
                    s += &format!("{} reports, {failed} failed\n", reports.len());
                    s
                }
            };
            Ok((text, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, ok)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("krc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
