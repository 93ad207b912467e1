use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use simplicial::experiments::{
    betti_scan, betti_scan_csv, empirical_pipeline, hardness_csv, histogram_csv, instance_rng,
    random_pairs_csv, scan_all_pairs, scan_random_pairs, scan_uniform_sizes, BettiScanConfig,
    DegreeSource, Family, GridPoint, OutcomeKind,
};
use simplicial::homology::{betti_numbers_guarded, build_skeleton};
use simplicial::io::{
    format_facets, format_sequence, parse_facets, parse_sequence, sequence_to_json,
};
use simplicial::oracle::enumerate_realizations;
use simplicial::scm::{for_each_sample, ScmConfig};
use simplicial::seqgen::{
    poisson_pair, regular_degree_pair, PartitionTable, PoissonPairSpec, DEFAULT_RETRY_CAP,
};
use simplicial::{realize_with, DegreeSizeSequence, Outcome, Realization, SolverOptions};

use crate::{
    Cli, Command, EnsembleKind, FamilyArg, Format, GenKind, SearchFlags, EXIT_CUTOFF,
    EXIT_NON_SIMPLICIAL, EXIT_PARTIAL,
};

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Check { input, search } => check(cli, input, search, None, false),
        Command::Realize {
            input,
            output,
            input_labels,
            search,
        } => check(cli, input, search, Some(output.as_deref()), *input_labels),
        Command::Betti {
            facets,
            skeleton_guard,
        } => betti(cli, facets, *skeleton_guard),
        Command::Scm {
            facets,
            burn_in,
            gap,
            samples,
            emit_betti,
            skeleton_guard,
            output,
        } => {
            let real = read_complex(facets)?;
            let cfg = scm_config(&real, *burn_in, *gap, *samples, cli.seed);
            let mut out = String::new();
            if *emit_betti {
                out.push_str("sample,beta0,beta1\n");
            }
            let mut failure = None;
            let diagnostics = for_each_sample(&real, &cfg, |i, sample| {
                if *emit_betti {
                    match betti_numbers_guarded(sample, *skeleton_guard) {
                        Ok(b) => out.push_str(&format!("{i},{},{}\n", b.beta0, b.beta1)),
                        Err(e) => failure = Some(e),
                    }
                } else {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format_facets(sample));
                }
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            write_or_print(output.as_deref(), &out)?;
            log(
                cli,
                "scm diagnostics",
                &json!({ "config": cfg, "diagnostics": diagnostics }),
            );
            Ok(0)
        }
        Command::Gen { kind } => generate(cli, kind),
        Command::Oracle { input, limit, list } => {
            let seq = read_sequence(input)?;
            let set = enumerate_realizations(&seq, *limit)?;
            match cli.format {
                Format::Json => {
                    let mut v = json!({ "count": set.count(), "simplicial": !set.is_empty() });
                    if *list {
                        v["realizations"] = set.iter().map(|r| json!(r.facets())).collect();
                    }
                    println!("{v}");
                }
                Format::Text => {
                    println!("{} realizations", set.count());
                    if *list {
                        for r in set.iter() {
                            println!();
                            print!("{}", format_facets(&r));
                        }
                    }
                }
            }
            Ok(if set.is_empty() {
                EXIT_NON_SIMPLICIAL
            } else {
                0
            })
        }
        Command::Ensemble { kind } => ensemble(cli, kind),
    }
}

fn solver(cli: &Cli, flags: &SearchFlags) -> SolverOptions {
    SolverOptions {
        cutoff: cli.cutoff,
        symmetry_pruning: !flags.no_symmetry,
        pruning_rules: !flags.no_rules,
        count_inclusion: flags.count_inclusion,
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_sequence(path: &Path) -> Result<DegreeSizeSequence> {
    parse_sequence(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_facets(path: &Path) -> Result<Realization> {
    parse_facets(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

/// A facet list that must already be a simplicial complex.
fn read_complex(path: &Path) -> Result<Realization> {
    let real = read_facets(path)?;
    if real.m() == 0 {
        bail!("{} has no facets", path.display());
    }
    if !real.is_valid() {
        bail!(
            "{} is not a simplicial complex: a facet lies inside another or a node index is unused",
            path.display()
        );
    }
    Ok(real)
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn log(cli: &Cli, what: &str, value: &Value) {
    if !cli.quiet {
        eprintln!("{what}: {value}");
    }
}

fn scm_config(
    real: &Realization,
    burn_in: Option<u64>,
    gap: Option<u64>,
    samples: usize,
    seed: u64,
) -> ScmConfig {
    let total = real.facets().iter().map(|f| f.len() as u64).sum();
    let mut cfg = ScmConfig::for_size(total, samples, seed);
    if let Some(b) = burn_in {
        cfg.burn_in = b;
    }
    if let Some(g) = gap {
        cfg.gap = g.max(1);
    }
    cfg
}

/// `check` when `output` is `None`, `realize` otherwise.
fn check(
    cli: &Cli,
    input: &Path,
    flags: &SearchFlags,
    output: Option<Option<&Path>>,
    input_labels: bool,
) -> Result<u8> {
    let seq = read_sequence(input)?;
    let verdict = realize_with(&seq, solver(cli, flags));
    let stats = verdict.stats;
    let mut v = json!({
        "outcome": verdict.outcome.label(),
        "tau_b": stats.tau_b,
        "tau_r": stats.tau_r,
        "tau_c": stats.tau_c(),
    });
    let code = match &verdict.outcome {
        Outcome::Simplicial(_) => 0,
        Outcome::NonSimplicial => EXIT_NON_SIMPLICIAL,
        Outcome::Cutoff => EXIT_CUTOFF,
    };
    let facets_text = match (&verdict.outcome, output) {
        (Outcome::Simplicial(real), Some(dest)) => {
            let real = if input_labels {
                real.to_input_labels(&seq)
            } else {
                v["input_position"] = json!(seq.input_position());
                real.clone()
            };
            if let Some(p) = dest {
                v["facets_file"] = json!(p.display().to_string());
            }
            Some((format_facets(&real), dest))
        }
        _ => None,
    };
    match &facets_text {
        Some((text, Some(p))) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            emit_verdict(cli, &v);
        }
        Some((text, None)) => {
            print!("{text}");
            log(cli, "verdict", &v);
        }
        None => emit_verdict(cli, &v),
    }
    Ok(code)
}

fn emit_verdict(cli: &Cli, v: &Value) {
    match cli.format {
        Format::Json => println!("{v}"),
        Format::Text => println!(
            "{} tau_b={} tau_r={} tau_c={}",
            v["outcome"].as_str().unwrap_or_default(),
            v["tau_b"],
            v["tau_r"],
            v["tau_c"]
        ),
    }
}

fn betti(cli: &Cli, facets: &Path, guard: usize) -> Result<u8> {
    let real = read_facets(facets)?;
    let skeleton = build_skeleton(&real, guard)?;
    let b = betti_numbers_guarded(&real, guard)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            json!({
                "beta0": b.beta0,
                "beta1": b.beta1,
                "n0": skeleton.n0,
                "n1": skeleton.n1(),
                "n2": skeleton.n2(),
            })
        ),
        Format::Text => println!("beta0={} beta1={}", b.beta0, b.beta1),
    }
    Ok(0)
}

fn print_sequence(cli: &Cli, seq: &DegreeSizeSequence, extra: Value, first: bool) {
    match cli.format {
        Format::Json => {
            let mut v = sequence_to_json(seq);
            if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            println!("{v}");
        }
        Format::Text => {
            if !first {
                println!();
            }
            print!("{}", format_sequence(seq));
        }
    }
}

fn generate(cli: &Cli, kind: &GenKind) -> Result<u8> {
    match kind {
        GenKind::Partition { total, count } => {
            let table = PartitionTable::new(*total)?;
            for i in 0..*count {
                let mut rng = instance_rng(cli.seed, i as u64);
                let d = table.sample(*total, &mut rng)?;
                let s = table.sample(*total, &mut rng)?;
                let seq = DegreeSizeSequence::normalize(&d, &s)?;
                print_sequence(cli, &seq, json!({}), i == 0);
            }
        }
        GenKind::Poisson {
            total,
            lambda_d,
            lambda_s,
            count,
        } => {
            let spec = PoissonPairSpec {
                total: *total,
                lambda_d: *lambda_d,
                lambda_s: *lambda_s,
            };
            for i in 0..*count {
                let g = poisson_pair(&spec, &mut instance_rng(cli.seed, i as u64))?;
                let extra = json!({
                    "mean_degree": g.mean_degree,
                    "mean_size": g.mean_size,
                    "matched_nodes": g.matched_nodes,
                });
                print_sequence(cli, &g.sequence, extra, i == 0);
            }
        }
        GenKind::Regular {
            total,
            d,
            lambda_s,
            count,
        } => {
            for i in 0..*count {
                let mut rng = instance_rng(cli.seed, i as u64);
                let g = regular_degree_pair(*total, *d, *lambda_s, DEFAULT_RETRY_CAP, &mut rng)?;
                let extra = json!({
                    "mean_degree": g.mean_degree,
                    "mean_size": g.mean_size,
                    "matched_nodes": g.matched_nodes,
                });
                print_sequence(cli, &g.sequence, extra, i == 0);
            }
        }
    }
    Ok(0)
}

/// CSV to `output` and the summary to stdout, or CSV to stdout and the
/// summary to stderr.
fn emit_table(cli: &Cli, output: Option<&Path>, csv: &str, summary: &Value) -> Result<()> {
    match output {
        Some(p) => {
            fs::write(p, csv).with_context(|| format!("writing {}", p.display()))?;
            println!("{summary}");
        }
        None => {
            io::stdout().write_all(csv.as_bytes())?;
            if !cli.quiet {
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn ensemble(cli: &Cli, kind: &EnsembleKind) -> Result<u8> {
    match kind {
        EnsembleKind::Grid {
            total,
            timing,
            output,
            search,
        } => {
            let grid = scan_all_pairs(*total, solver(cli, search))?;
            let summary = json!({
                "E": grid.total,
                "partitions": grid.partitions.len(),
                "summary": grid.summary,
            });
            emit_table(
                cli,
                output.as_deref(),
                &hardness_csv(&grid.records, *timing),
                &summary,
            )?;
            Ok(0)
        }
        EnsembleKind::UniformSizes {
            total,
            size,
            m,
            samples,
            exhaustive,
            output,
            search,
        } => {
            let source = if *exhaustive {
                DegreeSource::Exhaustive
            } else {
                DegreeSource::Sampled {
                    count: *samples,
                    seed: cli.seed,
                }
            };
            let (records, report) =
                scan_uniform_sizes(*total, *size, *m, source, solver(cli, search))?;
            emit_table(
                cli,
                output.as_deref(),
                &hardness_csv(&records, false),
                &json!(report),
            )?;
            Ok(0)
        }
        EnsembleKind::RandomPairs {
            totals,
            n,
            output,
            search,
        } => {
            let reports = scan_random_pairs(totals, *n, solver(cli, search), cli.seed)?;
            emit_table(
                cli,
                output.as_deref(),
                &random_pairs_csv(&reports),
                &json!(reports),
            )?;
            Ok(0)
        }
        EnsembleKind::BettiScan {
            total,
            family,
            lambda_d,
            d,
            lambda_s,
            replicates,
            scm_samples,
            draw_cap,
            skeleton_guard,
            output,
        } => {
            let families: Vec<Family> = match family {
                FamilyArg::Poisson => vec![Family::Poisson {
                    lambda_d: *lambda_d,
                }],
                FamilyArg::Regular => vec![Family::Regular { degree: *d }],
                FamilyArg::Both => vec![
                    Family::Poisson {
                        lambda_d: *lambda_d,
                    },
                    Family::Regular { degree: *d },
                ],
            };
            let grid = families
                .iter()
                .flat_map(|&family| {
                    lambda_s.iter().map(move |&l| GridPoint {
                        family,
                        lambda_s: l,
                    })
                })
                .collect();
            let mut cfg = BettiScanConfig::new(*total, grid, *replicates, *scm_samples, cli.seed);
            cfg.solver.cutoff = cli.cutoff;
            cfg.draw_cap = *draw_cap;
            cfg.skeleton_guard = *skeleton_guard;
            let records = betti_scan(&cfg)?;
            let unreachable: Vec<Value> = records
                .iter()
                .filter(|r| r.unreachable)
                .map(|r| json!({ "family": r.family, "lambda_s": r.lambda_s, "replicates": r.replicates }))
                .collect();
            let summary = json!({ "points": records.len(), "unreachable": unreachable });
            emit_table(cli, output.as_deref(), &betti_scan_csv(&records), &summary)?;
            Ok(if unreachable.is_empty() {
                0
            } else {
                EXIT_PARTIAL
            })
        }
        EnsembleKind::Empirical {
            facets,
            samples,
            burn_in,
            gap,
            skeleton_guard,
            realization,
            output,
        } => {
            let raw = read_facets(facets)?;
            if raw.m() == 0 {
                bail!("{} has no facets", facets.display());
            }
            let cfg = scm_config(&raw, *burn_in, *gap, *samples, cli.seed);
            let report = empirical_pipeline(
                &raw,
                SolverOptions::with_cutoff(cli.cutoff),
                &cfg,
                *skeleton_guard,
            )?;
            if let (Some(p), Some(real)) = (realization, &report.realization) {
                fs::write(p, format_facets(real))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            emit_table(
                cli,
                output.as_deref(),
                &histogram_csv(&report.histogram),
                &json!(report),
            )?;
            Ok(match report.outcome {
                OutcomeKind::Simplicial => 0,
                OutcomeKind::NonSimplicial => EXIT_NON_SIMPLICIAL,
                OutcomeKind::Cutoff => EXIT_CUTOFF,
            })
        }
    }
}
