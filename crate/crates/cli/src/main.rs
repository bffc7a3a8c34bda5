use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ackit::encode::{emit_task, Translation};
use ackit::proofex::{extract_certificate, parse_proof, ProofError};
use ackit::search::{Outcome, Search, SearchLimits, Strategy};
use ackit::{check, compress_conjugations, parse_certificate, Certificate, MoveFamily, Presentation};
use clap::{Parser, Subcommand};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "ackit", version, about = "Andrews-Curtis moves: certificates, prover tasks and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a certificate and report whether it is valid.
    Check {
        cert: PathBuf,
    },
    /// Search for a move sequence between two presentations.
    Search {
        /// Presentation: inline `2 | r1, r2`, a builtin (`AK(3)`, `P`, `T(2)`) or `@file`.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "MODIFIED12")]
        family: MoveFamily,
        #[arg(long, default_value = "greedy")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1000)]
        beam_width: usize,
        #[arg(long, default_value_t = 16)]
        max_relator_len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: u64,
        #[arg(long, default_value_t = 60.0)]
        max_seconds: f64,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Expansion threads; the result does not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Where to write the certificate; printed to stdout otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the prover task relating two presentations.
    Encode {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "nonground")]
        translation: Translation,
        /// Plain `Assumptions:`/`Goal:` blocks instead of a prover input file.
        #[arg(long)]
        raw: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a certificate from a prover's proof output.
    Extract {
        proof: PathBuf,
        #[arg(long)]
        family: MoveFamily,
        /// Fill steps no single move explains by a search of this depth.
        #[arg(long, default_value_t = 0)]
        bridge: usize,
        /// Start presentation; defaults to the root of the derivation.
        #[arg(long)]
        from: Option<String>,
        /// Goal presentation; defaults to the negated goal clause.
        #[arg(long)]
        to: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Merge runs of conjugations of the same relator.
    Compress {
        cert: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print invariants of a presentation.
    Info {
        presentation: String,
    },
}

/// An error message with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn fail(message: impl ToString) -> Self {
        Failure {
            code: EXIT_FAIL,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ackit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn presentation(arg: &str) -> Result<Presentation, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            let content = read(Path::new(path))?;
            content
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ")
        }
        None => arg.to_string(),
    };
    Presentation::parse(&text).map_err(|e| Failure::usage(format!("invalid presentation {arg:?}: {e}")))
}

fn load_certificate(path: &Path) -> Result<Certificate, Failure> {
    parse_certificate(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::fail(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check { cert } => {
            let cert = load_certificate(&cert)?;
            let report = check(&cert);
            println!("{report}");
            Ok(if report.ok { 0 } else { EXIT_FAIL })
        }
        Command::Search {
            from,
            to,
            family,
            strategy,
            beam_width,
            max_relator_len,
            max_states,
            max_seconds,
            max_depth,
            workers,
            output,
        } => {
            let (from, to) = (presentation(&from)?, presentation(&to)?);
            let limits = SearchLimits {
                max_relator_len,
                max_states,
                max_seconds,
                beam_width,
                max_depth,
            };
            let result = Search::new(&from, &to, family)
                .strategy(strategy)
                .limits(limits)
                .workers(workers)
                .on_progress(|p| {
                    eprintln!(
                        "expanded {} seen {} frontier {} best total {} ({:.1}s)",
                        p.expanded,
                        p.seen,
                        p.frontier,
                        p.best_total,
                        p.elapsed.as_secs_f64()
                    )
                })
                .run()
                .map_err(Failure::usage)?;
            let summary = format!(
                "outcome: {}\nexpanded: {}\nseen: {}\nfrontier peak: {}\nseconds: {:.3}",
                result.outcome,
                result.states_expanded,
                result.states_seen,
                result.frontier_peak,
                result.elapsed.as_secs_f64()
            );
            match (result.outcome, result.certificate) {
                (Outcome::Found, Some(cert)) => {
                    eprintln!("{summary}\nmoves: {}", cert.len());
                    emit(output.as_deref(), &cert.to_string())?;
                    Ok(0)
                }
                _ => {
                    eprintln!("{summary}");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Encode {
            from,
            to,
            translation,
            raw,
            output,
        } => {
            let (from, to) = (presentation(&from)?, presentation(&to)?);
            let task = emit_task(&from, &to, translation).map_err(Failure::usage)?;
            let text = if raw { task.render_raw() } else { task.render() };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Extract {
            proof,
            family,
            bridge,
            from,
            to,
            output,
        } => {
            let proof = parse_proof(&read(&proof)?).map_err(Failure::usage)?;
            for w in &proof.warnings {
                eprintln!("warning: {w}");
            }
            let from = from.as_deref().map(presentation).transpose()?;
            let to = to.as_deref().map(presentation).transpose()?;
            let cert = extract_certificate(&proof, family, bridge, from.as_ref(), to.as_ref())
                .map_err(|e| match e {
                    ProofError::NoProofSection => Failure::usage(e),
                    _ => Failure::fail(e),
                })?;
            let report = check(&cert);
            if !report.ok {
                return Err(Failure::fail(format!("extracted certificate does not check:\n{report}")));
            }
            eprintln!("extracted {} moves", cert.len());
            emit(output.as_deref(), &cert.to_string())?;
            Ok(0)
        }
        Command::Compress { cert, output } => {
            let cert = load_certificate(&cert)?;
            let compressed = compress_conjugations(&cert).map_err(Failure::fail)?;
            eprintln!("{} moves -> {} moves", cert.len(), compressed.len());
            emit(output.as_deref(), &compressed.to_string())?;
            Ok(0)
        }
        Command::Info { presentation: arg } => {
            let p = presentation(&arg)?;
            print!("{}", info(&p));
            Ok(0)
        }
    }
}

fn info(p: &Presentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "presentation: {p}");
    let _ = writeln!(out, "generators: {}", p.generators());
    let _ = writeln!(out, "relators: {}", p.len());
    let _ = writeln!(out, "balanced: {}", p.is_balanced());
    for (i, r) in p.relators().iter().enumerate() {
        let (core, prefix) = r.cyclic_reduce();
        let _ = writeln!(
            out,
            "r{}: {r} length {} cyclic core {core} length {} prefix {prefix}",
            i + 1,
            r.len(),
            core.len()
        );
    }
    let _ = writeln!(out, "total length: {}", p.total_length());
    let _ = writeln!(out, "exponent matrix:");
    for row in p.exponent_matrix() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        let _ = writeln!(out, "  [{} ]", cells.join(""));
    }
    match p.abs_det() {
        Some(d) => {
            let _ = writeln!(out, "|det|: {d}");
        }
        None => {
            let _ = writeln!(out, "|det|: undefined (not balanced)");
        }
    }
    out
}
