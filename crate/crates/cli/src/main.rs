//! Command-line front end for the certification pipeline.
//!
//! Exit codes: 0 = certified / positive, 1 = certification negative,
//! 2 = usage or input error, 3 = internal inconsistency (independent
//! certification paths disagreed; conflicting values are dumped to stderr).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hnncert::fibering::{decide_fibering, scan_characters, FiberVerdict, ScanOutcome};
use hnncert::moebius::{eval_word, ExtMoebius, Representation};
use hnncert::pipeline::{
    build_conjugated_system, certify_free_product, certify_no_fix_infinity,
    certify_strict_ascent, compute_psi, full_report, verify_relation,
    verify_requirement, PipelineConfig, Verdict, DEFAULT_BETA, DEFAULT_RELATOR,
};
use hnncert::words::{kernel_rank, magnus_rewrite, parse_two_gen, KernelRank};
use hnncert::CoreError;

#[derive(Parser)]
#[command(
    name = "hnncert",
    about = "Exact certification of a strictly ascending HNN extension of a rank-6 free group in SL(2,C)",
    version,
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonWordArgs {
    /// Relator of the one-relator group, compact a/A/b/B syntax
    #[arg(long, default_value = DEFAULT_RELATOR)]
    relator: String,
    /// Machine-readable JSON output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit the certification report
    Verify {
        /// JSON config file; explicit flags override its fields
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        relator: Option<String>,
        /// Conjugating element beta (default a^2)
        #[arg(long)]
        beta: Option<String>,
        /// Exhaustive word-length bound for the no-fix-infinity certificate (0 skips)
        #[arg(long)]
        length_bound: Option<u32>,
        /// Number of sampled free-product words
        #[arg(long)]
        samples: Option<u32>,
        /// Maximum syllable count per sampled word
        #[arg(long)]
        max_syllables: Option<u32>,
        /// Upper bound of the integer search in the trace requirement
        #[arg(long)]
        n_max: Option<u32>,
        /// Seed for all pseudo-randomness (ChaCha8)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Check that the relator acts as the projective identity
    Relation {
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Check the trace requirement for a candidate beta
    Requirement {
        #[arg(long, default_value = DEFAULT_BETA)]
        beta: String,
        #[arg(long, default_value_t = 100)]
        n_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Magnus-rewrite the relator and report the kernel basis
    Magnus {
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Decide whether the character p a* + q b* corresponds to a fibration
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Decide all primitive characters with |p|, |q| <= bound
    FiberScan {
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Compute psi and certify strictness of the ascent by folding
    Ascend {
        #[arg(long, default_value = DEFAULT_BETA)]
        beta: String,
        #[arg(long, default_value_t = 100)]
        n_max: u32,
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Bounded no-fix-infinity check plus seeded free-product sampling
    Freeness {
        #[arg(long, default_value = DEFAULT_BETA)]
        beta: String,
        #[arg(long, default_value_t = 100)]
        n_max: u32,
        #[arg(long, default_value_t = 5)]
        length_bound: u32,
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        #[arg(long, default_value_t = 10)]
        max_syllables: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        common: CommonWordArgs,
    },
    /// Evaluate a word in the defining representation
    EvalWord {
        #[arg(long)]
        word: String,
        /// JSON file mapping generator names to extended Moebius maps
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::CertificationFailure(_) | CoreError::ConsistencyFailure(_) => 3,
        CoreError::RequirementNotMet(_)
        | CoreError::OrientationReversing
        | CoreError::AscentNotStrict(_)
        | CoreError::CounterexampleFound(_)
        | CoreError::ExtremeRepeats(_) => 1,
        _ => 2,
    }
}

fn run() -> Result<u8, CoreError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            config,
            relator,
            beta,
            length_bound,
            samples,
            max_syllables,
            n_max,
            seed,
            json,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        CoreError::InvalidInput(format!("cannot read {}: {}", path.display(), e))
                    })?;
                    serde_json::from_str::<PipelineConfig>(&text)
                        .map_err(|e| CoreError::InvalidInput(format!("bad config: {}", e)))?
                }
                None => PipelineConfig::default(),
            };
            if let Some(v) = relator {
                cfg.relator = v;
            }
            if let Some(v) = beta {
                cfg.beta = v;
            }
            if let Some(v) = length_bound {
                cfg.length_bound = v;
            }
            if let Some(v) = samples {
                cfg.samples = v;
            }
            if let Some(v) = max_syllables {
                cfg.max_syllables = v;
            }
            if let Some(v) = n_max {
                cfg.n_max = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            let report = full_report(&cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print_report_human(&report);
            }
            Ok(if report.verdict == Verdict::Certified { 0 } else { 1 })
        }
        Command::Relation { common } => {
            let relator = parse_two_gen(&common.relator)?;
            let ok = verify_relation(&relator)?;
            if common.json {
                println!("{}", serde_json::json!({ "projective_identity": ok }));
            } else {
                println!("relator acts as the projective identity: {}", ok);
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Requirement { beta, n_max, json } => {
            let beta = parse_two_gen(&beta)?;
            let r = verify_requirement(&beta, n_max)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r).unwrap());
            } else {
                println!(
                    "beta = {}: n = {}, sign = {}, phi(beta) = {}, trace = {}",
                    r.beta,
                    r.n,
                    if r.sign > 0 { "+" } else { "-" },
                    r.phi,
                    r.trace_display
                );
            }
            Ok(0)
        }
        Command::Magnus { common } => {
            let relator = parse_two_gen(&common.relator)?;
            let sw = magnus_rewrite(&relator)?;
            let rank = kernel_rank(&sw)?;
            if common.json {
                println!(
                    "{}",
                    serde_json::json!({ "rewritten": sw.to_string(), "kernel": rank })
                );
            } else {
                println!("rewrite: {}", sw);
                match &rank {
                    KernelRank::FreeOfRank { rank, basis_min, basis_max } => {
                        let basis: Vec<String> =
                            (*basis_min..=*basis_max).map(|k| format!("b{}", k)).collect();
                        println!("kernel: free of rank {}, basis {}", rank, basis.join(" "));
                    }
                    KernelRank::ExtremesRepeat { min, min_count, max, max_count } => {
                        println!(
                            "kernel: extremes repeat (b{} x{}, b{} x{}); no free basis from this criterion",
                            min, min_count, max, max_count
                        );
                    }
                }
            }
            Ok(match rank {
                KernelRank::FreeOfRank { .. } => 0,
                KernelRank::ExtremesRepeat { .. } => 1,
            })
        }
        Command::Fiber { p, q, common } => {
            let relator = parse_two_gen(&common.relator)?;
            let verdict = decide_fibering(&relator, (p, q))?;
            if common.json {
                println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            } else {
                match &verdict {
                    FiberVerdict::Fibered { kernel_rank } => {
                        println!("Fibered rank={}", kernel_rank)
                    }
                    FiberVerdict::NotFibered { min, min_count, max, max_count } => {
                        println!(
                            "NotFibered (extremes b{} x{}, b{} x{})",
                            min, min_count, max, max_count
                        )
                    }
                }
            }
            Ok(match verdict {
                FiberVerdict::Fibered { .. } => 0,
                FiberVerdict::NotFibered { .. } => 1,
            })
        }
        Command::FiberScan { bound, common } => {
            if bound < 1 {
                return Err(CoreError::ZeroCharacter);
            }
            let relator = parse_two_gen(&common.relator)?;
            let rows = scan_characters(&relator, bound);
            if common.json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                for row in &rows {
                    match &row.outcome {
                        ScanOutcome::Fibered { kernel_rank } => {
                            println!("{} {} Fibered {}", row.p, row.q, kernel_rank)
                        }
                        ScanOutcome::NotFibered { .. } => {
                            println!("{} {} NotFibered", row.p, row.q)
                        }
                        ScanOutcome::Degenerate => {
                            println!("{} {} Degenerate", row.p, row.q)
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Ascend { beta, n_max, common } => {
            let relator = parse_two_gen(&common.relator)?;
            let beta = parse_two_gen(&beta)?;
            let sys = build_conjugated_system(&relator, &beta, n_max)?;
            let psi = compute_psi(&sys)?;
            let report = certify_strict_ascent(&sys, &psi)?;
            if common.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for (i, img) in report.psi_images.iter().enumerate() {
                    let name = if i == sys.mu_index() {
                        "u".to_string()
                    } else {
                        format!("b{}", i)
                    };
                    println!("psi({}) = {}", name, img);
                }
                println!("mu in psi-image subgroup: {}", report.mu_in_image);
                println!("strict ascent: certified (graph on {} vertices)", report.graph_vertices);
            }
            Ok(0)
        }
        Command::Freeness {
            beta,
            n_max,
            length_bound,
            samples,
            max_syllables,
            seed,
            common,
        } => {
            let relator = parse_two_gen(&common.relator)?;
            let beta = parse_two_gen(&beta)?;
            let sys = build_conjugated_system(&relator, &beta, n_max)?;
            let no_fix = certify_no_fix_infinity(&sys, length_bound)?;
            let sampling = certify_free_product(&sys, samples, max_syllables, seed)?;
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "no_fix_infinity": no_fix,
                        "free_product": sampling,
                    }))
                    .unwrap()
                );
            } else {
                if no_fix.skipped {
                    println!("no-fix-infinity: skipped (length bound 0)");
                } else {
                    println!(
                        "no-fix-infinity: {} reduced words up to length {}, all with c != 0",
                        no_fix.words_checked, no_fix.length_bound
                    );
                }
                println!(
                    "free-product sampling: {}/{} nontrivial certificates, {} inconclusive (seed {})",
                    sampling.nontrivial, sampling.samples, sampling.inconclusive, sampling.seed
                );
            }
            Ok(if sampling.inconclusive == 0 && !no_fix.skipped { 0 } else { 1 })
        }
        Command::EvalWord { word, rep, json } => {
            let rep = match rep {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        CoreError::InvalidInput(format!("cannot read {}: {}", path.display(), e))
                    })?;
                    let map: std::collections::BTreeMap<String, ExtMoebius> =
                        serde_json::from_str(&text)
                            .map_err(|e| CoreError::InvalidInput(format!("bad rep file: {}", e)))?;
                    Representation::from_json_map(map)?
                }
                None => Representation::builtin(),
            };
            let w = parse_two_gen(&word)?;
            let img = eval_word(&w, &rep)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&img).unwrap());
            } else {
                println!("flip: {}", img.flip);
                println!("[ {}, {} ]", img.mat.a, img.mat.b);
                println!("[ {}, {} ]", img.mat.c, img.mat.d);
                println!("projective identity: {}", img.is_projective_identity());
            }
            Ok(0)
        }
    }
}

fn print_report_human(report: &hnncert::pipeline::CertificationReport) {
    match &report.relation {
        Some(r) => println!(
            "relation: {}",
            if r.projective_identity { "projective identity" } else { "FAILED" }
        ),
        None => println!("relation: not run"),
    }
    if let Some(k) = &report.kernel {
        println!(
            "kernel: rank {}, basis {}, rewrite {}",
            k.rank,
            k.basis.join(" "),
            k.rewritten
        );
    }
    if let Some(r) = &report.requirement {
        println!(
            "requirement: beta = {}, n = {}, sign = {}, phi = {}, trace = {}",
            r.beta,
            r.n,
            if r.sign > 0 { "+" } else { "-" },
            r.phi,
            r.trace_display
        );
    }
    if let Some(n) = &report.no_fix_infinity {
        if n.skipped {
            println!("no-fix-infinity: skipped");
        } else {
            println!(
                "no-fix-infinity: {} words checked at length bound {}",
                n.words_checked, n.length_bound
            );
        }
    }
    if let Some(f) = &report.free_product {
        println!(
            "free-product: {} samples, {} nontrivial, {} inconclusive (seed {})",
            f.samples, f.nontrivial, f.inconclusive, f.seed
        );
    }
    if let Some(a) = &report.ascent {
        println!(
            "ascent: mu in image = {}, graph on {} vertices",
            a.mu_in_image, a.graph_vertices
        );
        for (i, img) in a.psi_images.iter().enumerate() {
            let name = if i + 1 == a.psi_images.len() {
                "u".to_string()
            } else {
                format!("b{}", i)
            };
            println!("  psi({}) = {}", name, img);
        }
    }
    for f in &report.failures {
        println!("failure: {}", f);
    }
    let verdict = match report.verdict {
        Verdict::Certified => "certified",
        Verdict::Conditional => "conditional",
        Verdict::Failed => "failed",
    };
    println!("verdict: {}", verdict);
}

// die quietly when the consumer closes the pipe (e.g. `hnncert magnus | head`)
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
