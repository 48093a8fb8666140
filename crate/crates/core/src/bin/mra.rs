//! `mra`: batch front end for the multiresolution analysis of incomplete rankings.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use mra_rank::alpha::{build_alpha_table, DEFAULT_K_MAX};
use mra_rank::dataset::{parse_dataset, serialize_dataset};
use mra_rank::inference::{empirical_estimate, generate_dataset};
use mra_rank::io::{format_value, read_coefficients, read_design, read_meta, read_model, write_coefficients, write_meta, CoefficientMeta};
use mra_rank::marginals::{marginal_based_estimator, naive_empirical_marginal};
use mra_rank::regularization::{kernel_smooth, local_regularize};
use mra_rank::synthesis::synthesize_dense;
use mra_rank::validation::suites::{run_suite, SUITES};
use mra_rank::word::ItemSubset;
use mra_rank::{fwt::fwt, MraError};

#[derive(Parser)]
#[command(name = "mra", version, about = "Wavelet analysis of incomplete rankings")]
struct Cli {
    /// Worker threads for internal parallelism (default: all cores).
    #[arg(long, global = true, env = "MRA_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wavelet transform of the counts of a rankings file (`3>1>2` per line).
    Transform {
        input: PathBuf,
        /// Largest ranking length accepted.
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
        /// Write coefficients here (plus a `.meta` sidecar) instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Marginal on a subset rebuilt from a coefficient file.
    Synth {
        coefficients: PathBuf,
        #[arg(long)]
        subset: ItemSubset,
    },
    /// Wavelet empirical estimator of a rankings file, with a coverage report.
    Estimate {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Write the coverage report here instead of stderr.
        #[arg(long)]
        coverage: Option<PathBuf>,
    },
    /// Step-kernel smoothing of a coefficient file.
    Smooth {
        coefficients: PathBuf,
        /// Bandwidth: largest number of swapped items.
        #[arg(long)]
        h: usize,
        /// Smooth only the blocks inside this subset.
        #[arg(long)]
        local: Option<ItemSubset>,
        /// Item universe; defaults to the sidecar's, then to the items of the blocks.
        #[arg(long)]
        universe: Option<ItemSubset>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Naive and marginal-based empirical marginals side by side.
    Marginal {
        input: PathBuf,
        #[arg(long)]
        subset: ItemSubset,
    },
    /// Synthetic censored rankings from a model and an observation design.
    Gen {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        design: PathBuf,
        #[arg(long = "n-obs")]
        n_obs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Structural audit; prints one PASS/FAIL line per check.
    Validate {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        n: usize,
    },
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
    } else {
        s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(s)
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn meta_path(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

fn emit_coefficients(output: Option<&Path>, text: &str, meta: &CoefficientMeta) -> anyhow::Result<()> {
    emit(output, text)?;
    if let Some(p) = output {
        let m = meta_path(p);
        std::fs::write(&m, write_meta(meta)).with_context(|| format!("writing {}", m.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global().context("configuring workers")?;
    }
    match cli.command {
        Command::Transform { input, kmax, output } => {
            let d = parse_dataset(&read_input(&input)?)?;
            let t = build_alpha_table(kmax)?;
            let x = fwt(&d.counts(), &t)?;
            let meta = CoefficientMeta { k_max: kmax, universe: d.universe() };
            emit_coefficients(output.as_deref(), &write_coefficients(&x), &meta)?;
        }
        Command::Synth { coefficients, subset } => {
            let x = read_coefficients(&read_input(&coefficients)?)?;
            let values = synthesize_dense(&x, &subset)?;
            let mut s = String::new();
            for (r, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{} {}", subset.unrank(r), format_value(*v));
            }
            emit(None, &s)?;
        }
        Command::Estimate { input, kmax, output, coverage } => {
            let d = parse_dataset(&read_input(&input)?)?;
            let t = build_alpha_table(kmax)?;
            let est = empirical_estimate(&d, &t)?;
            let meta = CoefficientMeta { k_max: kmax, universe: d.universe() };
            emit_coefficients(output.as_deref(), &write_coefficients(&est.coefficients), &meta)?;
            let mut rep = format!("observations {}\n", est.n_obs);
            for (b, c) in &est.coverage {
                let _ = writeln!(rep, "coverage {b} {c}");
            }
            match coverage {
                Some(p) => emit(Some(&p), &rep)?,
                None => eprint!("{rep}"),
            }
        }
        Command::Smooth { coefficients, h, local, universe, output } => {
            let x = read_coefficients(&read_input(&coefficients)?)?;
            let sidecar = meta_path(&coefficients);
            let meta = if sidecar.exists() { Some(read_meta(&read_input(&sidecar)?)?) } else { None };
            let universe = universe
                .or_else(|| meta.as_ref().map(|m| m.universe.clone()))
                .unwrap_or_else(|| x.items());
            let y = match &local {
                Some(a) => local_regularize(&x, a, h)?,
                None => kernel_smooth(&x, h, &universe)?,
            };
            let k_max = meta.map_or(DEFAULT_K_MAX, |m| m.k_max);
            let meta = CoefficientMeta { k_max, universe: local.unwrap_or(universe) };
            emit_coefficients(output.as_deref(), &write_coefficients(&y), &meta)?;
        }
        Command::Marginal { input, subset } => {
            let d = parse_dataset(&read_input(&input)?)?;
            let naive = naive_empirical_marginal(&d, &subset)?;
            let based = marginal_based_estimator(&d, &subset)?;
            let mut s = String::from("ranking naive marginal_based\n");
            for r in 0..mra_rank::combi::fact_usize(subset.len()) {
                let w = subset.unrank(r);
                let _ = writeln!(s, "{w} {} {}", format_value(naive.get(&w)), format_value(based.get(&w)));
            }
            emit(None, &s)?;
        }
        Command::Gen { model, design, n_obs, seed, output } => {
            let (p, _) = read_model(&read_input(&model)?)?;
            let design = read_design(&read_input(&design)?)?;
            let d = generate_dataset(&p, &design, n_obs, seed)?;
            emit(output.as_deref(), &serialize_dataset(&d))?;
        }
        Command::Validate { suite, n } => {
            let rep = run_suite(&suite, n)?;
            emit(None, &rep.to_string())?;
            rep.into_result()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mra: {e:#}");
            let code = e.downcast_ref::<MraError>().map_or(1, MraError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
