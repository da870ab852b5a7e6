//! Command-line front end for the cubelike library.
//!
//! Exit codes: 0 success, 1 domain-level negative (loop present, failed
//! verification, violations found), 2 usage error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubelike::cayley::{build_graph, cube_with_diagonals, is_bipartite_bfs, is_bipartite_parity, ConnectionSet};
use cubelike::coloring::{chromatic_number, lemma_local_check, sokolova_coloring, verify_coloring};
use cubelike::heuberger::verify_qd_iso;
use cubelike::payan::{classify, sweep, verify_certificate, Classification, PayanCertificate, SweepMode};

#[derive(Parser)]
#[command(name = "cubelike", version, about = "Chromatic numbers and certificates for cubelike Cayley graphs on Z_2^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SetArgs {
    /// Dimension n of the group Z_2^n.
    #[arg(long)]
    n: usize,
    /// Connection set as comma-separated bitmask integers, e.g. "1,2,4,8,15".
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact chromatic number of Cay(Z_2^n, S).
    Chi {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bipartiteness by the GF(2) parity criterion and by BFS 2-coloring.
    Bipartite {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classify a connection set and emit its certificate.
    Certify {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Also compute the exact chromatic number.
        #[arg(long)]
        exact_chi: bool,
    },
    /// Re-check a certificate produced by `certify`.
    VerifyCertificate {
        /// Path to the certificate JSON; "-" reads stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Sweep connection sets at dimension n and confirm no chromatic number 3.
    VerifyPayan {
        #[arg(long)]
        n: usize,
        /// Sample random sets instead of exhaustive enumeration.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compute exact chromatic numbers and a chi histogram.
        #[arg(long)]
        exact_chi: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The explicit proper 4-coloring of Q^d_n.
    Sokolova {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Local case analysis of the 3-coloring reduction operator.
    LemmaCheck {
        /// Dimension of the reduced graph, 2 or 4.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_radius: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify the identification of the SACG of (w_z | 2I_z) with Q^d_{z-1}.
    QdIso {
        /// Odd z >= 3.
        #[arg(long)]
        z: usize,
    },
}

fn emit(out: &OutputArgs, text: String, json: serde_json::Value) -> std::io::Result<()> {
    let body = match out.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&json)?),
        Format::Text => text,
    };
    match &out.output {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_set(args: &SetArgs) -> Result<ConnectionSet, ExitCode> {
    ConnectionSet::parse(args.n, &args.set).map_err(usage_error)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Chi { set, out } => {
            let set = match parse_set(&set) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let result = chromatic_number(&build_graph(set.clone()));
            let text = match result.chi {
                Some(chi) => format!("n = {}, S = {{{}}}: chi = {chi}\n", set.n(), set),
                None => format!("n = {}, S = {{{}}}: has a loop, not properly colorable\n", set.n(), set),
            };
            let json = serde_json::to_value(&result).expect("serializable");
            if emit(&out, text, json).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Command::Bipartite { set, out } => {
            let set = match parse_set(&set) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let bfs = is_bipartite_bfs(&build_graph(set.clone()));
            match is_bipartite_parity(&set) {
                Ok(parity) => {
                    let text = format!("parity: {parity}\nbfs:    {bfs}\n");
                    let json = serde_json::json!({"parity": parity, "bfs": bfs});
                    if emit(&out, text, json).is_err() {
                        return ExitCode::from(2);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Certify { set, out, exact_chi } => {
            let set = match parse_set(&set) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let cert = classify(&set, exact_chi);
            let text = render_certificate(&cert);
            let json = serde_json::to_value(&cert).expect("serializable");
            if emit(&out, text, json).is_err() {
                return ExitCode::from(2);
            }
            if cert.classification == Classification::HasLoop {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::VerifyCertificate { input } => {
            let raw = if input == "-" {
                let mut buf = String::new();
                if std::io::stdin().read_to_string(&mut buf).is_err() {
                    return usage_error("could not read stdin");
                }
                buf
            } else {
                match fs::read_to_string(&input) {
                    Ok(s) => s,
                    Err(e) => return usage_error(format!("{input}: {e}")),
                }
            };
            let cert: PayanCertificate = match serde_json::from_str(&raw) {
                Ok(c) => c,
                Err(e) => return usage_error(format!("schema error: {e}")),
            };
            if verify_certificate(&cert) {
                println!("certificate OK");
                ExitCode::SUCCESS
            } else {
                println!("certificate INVALID");
                ExitCode::from(1)
            }
        }
        Command::VerifyPayan { n, random, count, seed, exact_chi, out } => {
            let mode = if random {
                SweepMode::Random { count, seed }
            } else {
                SweepMode::Exhaustive
            };
            match sweep(n, mode, exact_chi) {
                Ok(summary) => {
                    let ok = summary.violations.is_empty();
                    let text = summary.render_text();
                    let json = serde_json::to_value(&summary).expect("serializable");
                    if emit(&out, text, json).is_err() {
                        return ExitCode::from(2);
                    }
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Sokolova { n, out } => match sokolova_coloring(n) {
            Ok(c) => {
                let g = cube_with_diagonals(n).expect("n >= 2 fits the cap");
                let ok = verify_coloring(&g, &c);
                let text = format!(
                    "Q^d_{n}: 4-coloring of {} vertices, verified = {ok}\n",
                    c.colors.len()
                );
                let json = serde_json::json!({
                    "k": c.k,
                    "colors": c.colors,
                    "verified": ok,
                });
                if emit(&out, text, json).is_err() {
                    return ExitCode::from(2);
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
        Command::LemmaCheck { n, max_radius, out } => match lemma_local_check(n, max_radius) {
            Ok(report) => {
                let mut text = format!("reduction check for Q^d_{} -> Q^d_{n}\n", n + 2);
                for c in &report.classes {
                    text.push_str(&format!(
                        "  edge class s={:>3}: radius {} lift {:>3} vertices: {}{}\n",
                        c.generator,
                        c.radius,
                        c.lift_size,
                        if c.passed { "pass" } else { "FAIL" },
                        if c.vacuous { " (vacuous)" } else { "" },
                    ));
                }
                text.push_str(&format!("all passed: {}\n", report.all_passed));
                let ok = report.all_passed;
                let json = serde_json::to_value(&report).expect("serializable");
                if emit(&out, text, json).is_err() {
                    return ExitCode::from(2);
                }
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => usage_error(e),
        },
        Command::QdIso { z } => match verify_qd_iso(z) {
            Ok(true) => {
                println!("SACG of (w_{z} | 2I_{z}) is isomorphic to Q^d_{}", z - 1);
                ExitCode::SUCCESS
            }
            Ok(false) => {
                println!("isomorphism check FAILED for z = {z}");
                ExitCode::from(1)
            }
            Err(e) => usage_error(e),
        },
    }
}

fn render_certificate(cert: &PayanCertificate) -> String {
    let mut text = format!(
        "n = {}, S = {{{}}}\nclassification: {:?}\n",
        cert.n,
        cert.set
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(","),
        cert.classification
    );
    if let (Some(z), Some(support)) = (cert.z, &cert.support) {
        text.push_str(&format!(
            "odd relation: z = {z}, support = {support:?}\nhomomorphism Q^d_{} -> X verified, so chi >= 4\n",
            z - 1
        ));
    }
    if let Some(chi) = cert.exact_chi {
        text.push_str(&format!("exact chi = {chi}\n"));
    }
    text
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CUBELIKE_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    run(Cli::parse())
}
