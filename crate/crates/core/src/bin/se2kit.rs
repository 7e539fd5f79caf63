//! Command-line workbench: presentation generation, Knuth-Bendix
//! completion with checkpointing, word reduction, the H2 verification
//! pipelines, the obstruction census, and integer matrix utilities.
//!
//! Exit codes: 0 = certified/success, 2 = inconclusive, 1 = usage or
//! data error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use se2kit::abelian;
use se2kit::bar;
use se2kit::cyclo::PrimeContext;
use se2kit::io;
use se2kit::presentation;
use se2kit::rewrite::{CompletionParams, CompletionStatus, RewriteSystem};
use se2kit::verify::{self, VerifyParams};
use se2kit::words::Alphabet;

#[derive(Parser)]
#[command(name = "se2kit", version, about = "workbench for the finitely presented group SE2(l)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Completion knobs shared by `kb` and `verify-h2`. Precedence:
/// command-line flag > config file (`key = value` lines) > default.
#[derive(Args, Clone, Default)]
struct CompletionFlags {
    /// Config file with `key = value` lines (max_rules, tidy_interval, max_equations)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_rules: Option<usize>,
    #[arg(long)]
    tidy_interval: Option<usize>,
    #[arg(long)]
    max_equations: Option<usize>,
}

impl CompletionFlags {
    fn resolve(&self) -> Result<CompletionParams, String> {
        let mut p = CompletionParams::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            for (i, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, val) = line
                    .split_once('=')
                    .ok_or_else(|| format!("config line {}: expected `key = value`", i + 1))?;
                let val: usize = val
                    .trim()
                    .parse()
                    .map_err(|_| format!("config line {}: bad number", i + 1))?;
                match key.trim() {
                    "max_rules" => p.max_rules = val,
                    "tidy_interval" => p.tidy_interval = val,
                    "max_equations" => p.max_equations = val,
                    other => return Err(format!("config line {}: unknown key `{other}`", i + 1)),
                }
            }
        }
        if let Some(v) = self.max_rules {
            p.max_rules = v;
        }
        if let Some(v) = self.tidy_interval {
            p.tidy_interval = v;
        }
        if let Some(v) = self.max_equations {
            p.max_equations = v;
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the SE2(l) presentation in the presentation file format
    Gen {
        #[arg(long)]
        ell: u64,
        /// Eliminate the b_t and w generators by their defining relations
        #[arg(long)]
        reduced: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Knuth-Bendix completion of a presentation file
    Kb {
        file: PathBuf,
        #[command(flatten)]
        flags: CompletionFlags,
        /// Write the completed (or bounded) system here
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a checkpoint here (atomic)
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Resume from a checkpoint instead of starting fresh
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Reduce a word with a saved rule system
    Reduce {
        rules: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Run a verification pipeline and write the report
    #[command(name = "verify-h2")]
    VerifyH2 {
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        flags: CompletionFlags,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Etale obstruction census
    Etale {
        #[arg(long)]
        ell: u64,
        /// List the (s, subset) classes
        #[arg(long, group = "mode")]
        enumerate: bool,
        /// Print the count only
        #[arg(long, group = "mode")]
        count: bool,
        /// Print the cycles that must vanish, with Hopf words in degree 2
        #[arg(long, group = "mode")]
        cycles: bool,
    },
    /// Smith normal form of an integer matrix file
    Snf { file: PathBuf },
    /// Abelian invariants of a presentation file
    Abelian { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => verify::write_atomic(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen { ell, reduced, output } => {
            let ctx = PrimeContext::new(ell).map_err(|e| e.to_string())?;
            let p = presentation::generate(&ctx);
            let p = if reduced {
                presentation::reduced_form(&p).map_err(|e| e.to_string())?
            } else {
                p
            };
            emit(&output, &p.serialize())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kb { file, flags, output, checkpoint, resume } => {
            let params = flags.resolve()?;
            let mut rs = match resume {
                Some(path) => RewriteSystem::restore(&read_file(&path)?)
                    .map_err(|e| format!("bad checkpoint: {e}"))?,
                None => {
                    let pf =
                        io::parse_presentation_file(&read_file(&file)?).map_err(|e| e.to_string())?;
                    let order = pf
                        .order
                        .unwrap_or_else(|| se2kit::words::LetterOrder::default_for(&pf.alphabet));
                    RewriteSystem::from_words(&pf.alphabet, pf.relators.iter(), &order)
                }
            };
            let status = rs.complete(&params);
            let blob = rs.checkpoint();
            if let Some(path) = &checkpoint {
                verify::write_atomic(path, &blob)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            emit(&output, &blob)?;
            let stats = rs.stats();
            eprintln!(
                "completion: {status:?} (rules={}, equations={})",
                rs.rule_count(),
                stats.equations_processed
            );
            Ok(match status {
                CompletionStatus::Confluent => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            })
        }
        Command::Reduce { rules, word } => {
            let rs = RewriteSystem::restore(&read_file(&rules)?)
                .map_err(|e| format!("bad rule file: {e}"))?;
            let alphabet =
                Alphabet::new(rs.letters().names().iter().cloned()).map_err(|e| e.to_string())?;
            let w = io::parse_word(&alphabet, &word).map_err(|e| e.to_string())?;
            let reduced = rs.reduce(&w);
            println!("{}", rs.letters().render(&reduced));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyH2 { ell, flags, report, checkpoint, resume } => {
            let completion = flags.resolve()?;
            let params = VerifyParams {
                max_rules: completion.max_rules,
                tidy_interval: completion.tidy_interval,
                max_equations: completion.max_equations,
                checkpoint,
                resume,
            };
            let rep = match ell {
                3 => verify::verify_ell3(&params),
                5 => verify::verify_ell5(&params),
                other => return Err(format!("verify-h2 supports ell 3 and 5, got {other}")),
            };
            let text = rep.render();
            match &report {
                Some(path) => verify::write_atomic(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => {}
            }
            print!("{text}");
            Ok(if rep.certified() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Etale { ell, enumerate, count, cycles } => {
            let ctx = PrimeContext::new(ell).map_err(|e| e.to_string())?;
            if count || !(enumerate || cycles) {
                println!("{}", bar::obstruction_count(&ctx));
            }
            if enumerate {
                for c in bar::enumerate_obstructions(&ctx) {
                    println!(
                        "degree={} s={} subset={:?} weight={}",
                        c.degree, c.s, c.subset, c.weight
                    );
                }
            }
            if cycles {
                for c in bar::se2_obstruction_cycles(&ctx) {
                    match &c.hopf_word {
                        Some(w) => println!("degree={} hopf={} chain={}", c.degree, w, c.chain.render()),
                        None => println!("degree={} chain={}", c.degree, c.chain.render()),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Snf { file } => {
            let m = io::parse_matrix(&read_file(&file)?).map_err(|e| e.to_string())?;
            let snf = abelian::smith_normal_form(&m, false);
            let diag: Vec<String> = snf.diag.iter().map(|d| d.to_string()).collect();
            println!("{}", diag.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Abelian { file } => {
            let pf = io::parse_presentation_file(&read_file(&file)?).map_err(|e| e.to_string())?;
            let inv = abelian::abelian_invariants(&pf.alphabet, &pf.relators);
            let torsion: Vec<String> = inv.torsion.iter().map(|t| t.to_string()).collect();
            println!("torsion: [{}]", torsion.join(", "));
            println!("free rank: {}", inv.free_rank);
            Ok(ExitCode::SUCCESS)
        }
    }
}
