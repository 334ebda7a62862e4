//! `morsecut`: certify stacks, compute gradients, forests and watershed-cuts.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use morsecut::dual::{to_dot, watershed, DotStyle, Strategy, Watershed};
use morsecut::format::{parse, serialize};
use morsecut::generate::{corpus, generate, GeneratorKind, GeneratorSpec};
use morsecut::morse::{
    check_dmf, check_stack, dmf_gradient, free_pairs_for_stack, is_basic_dmf, stack_gradient, ultimate_stack_collapse,
};
use morsecut::oracles::{oracle_suite, OracleReport};
use morsecut::ValuedComplex;

const EXIT_INVALID: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "morsecut", version, about = "Discrete Morse gradients, minimum spanning forests and watershed-cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a stack file and print its certificates.
    Validate { file: PathBuf },
    /// Print the gradient vector field of a stack or a discrete Morse function.
    Gvf { file: PathBuf },
    /// Print the minimum spanning forest relative to the minima.
    Msf {
        file: PathBuf,
        #[arg(long, default_value = "gvf", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Write the dual graph with the forest highlighted.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the cut faces and the watershed complex.
    Watershed {
        file: PathBuf,
        #[arg(long, default_value = "gvf", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Write the dual graph with the forest and cut highlighted.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply elementary d-collapses to a stack and print the result.
    Collapse {
        file: PathBuf,
        /// Collapse until no free d-pair is left (otherwise one step).
        #[arg(long)]
        ultimate: bool,
    },
    /// Write a random basic stack on a generated pseudomanifold.
    Generate {
        /// cycle, simplex_boundary or torus_grid
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "MORSECUT_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file (standard output if omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run every oracle on one file, or on the generated corpus.
    Check {
        file: Option<PathBuf>,
        /// Seeds per corpus kind.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        /// First corpus seed.
        #[arg(long, env = "MORSECUT_SEED", default_value_t = 0)]
        seed: u64,
        /// Print passing claims too.
        #[arg(long, short)]
        verbose: bool,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// Errors that mean the input was unusable.
struct Invalid(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.into())
    }
}

fn load(path: &Path) -> Result<ValuedComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("{}", path.display()))
}

fn write_dot(path: &Path, w: &Watershed, with_cut: bool) -> Result<()> {
    let cut = with_cut.then_some(&w.cut);
    let dot = to_dot(&w.dual, Some(&w.anchor), Some(&w.forest), cut, &DotStyle::default());
    fs::write(path, dot).with_context(|| format!("cannot write {}", path.display()))
}

fn validate(v: &ValuedComplex, out: &mut String) -> Result<u8> {
    let sp = v.space();
    writeln!(out, "PSEUDOMANIFOLD d={} simplices={}", sp.dim(), sp.len())?;
    let stack = check_stack(v);
    let dmf = check_dmf(v);
    match &stack {
        Ok(cert) => {
            writeln!(out, "STACK yes")?;
            match &cert.not_basic {
                None => writeln!(out, "BASIC-STACK yes")?,
                Some(why) => writeln!(out, "BASIC-STACK no {why}")?,
            }
        }
        Err(why) => writeln!(out, "STACK no {why}")?,
    }
    match &dmf {
        Ok(cert) => {
            writeln!(out, "DMF yes")?;
            match &cert.not_basic {
                None => writeln!(out, "BASIC-DMF yes")?,
                Some(why) => writeln!(out, "BASIC-DMF no {why}")?,
            }
        }
        Err(why) => writeln!(out, "DMF no {why}")?,
    }
    let dual = if is_basic_dmf(&v.negate()) { "yes" } else { "no" };
    writeln!(out, "NEGATION-BASIC-DMF {dual}")?;
    Ok(if stack.is_ok() { 0 } else { EXIT_INVALID })
}

fn gvf(v: &ValuedComplex, out: &mut String) -> Result<()> {
    let field = if check_stack(v).is_ok() {
        stack_gradient(v)?
    } else {
        dmf_gradient(v).context("neither a stack nor a discrete Morse function")?
    };
    for vec in field.iter() {
        writeln!(out, "VECTOR {vec}")?;
    }
    for s in field.classify(v.space())?.critical.sorted() {
        writeln!(out, "CRITICAL {s}")?;
    }
    Ok(())
}

fn forest_lines(v: &ValuedComplex, w: &Watershed, out: &mut String) -> Result<()> {
    let sp = v.space();
    for &m in &w.anchor.vertices {
        writeln!(out, "MINIMUM {}", sp.simplex(m))?;
    }
    for &r in w.forest.edges() {
        let e = w.dual.edge(r);
        writeln!(out, "FOREST-EDGE {} | {} : {}", sp.simplex(e.ends[0]), sp.simplex(e.ends[1]), e.weight)?;
    }
    Ok(())
}

fn collapse(v: &ValuedComplex, ultimate: bool, out: &mut String) -> Result<()> {
    if ultimate {
        let c = ultimate_stack_collapse(v);
        for step in &c.steps {
            writeln!(out, "# collapse {} -> {}", step.sigma, step.tau)?;
        }
        out.push_str(&serialize(&c.result));
        return Ok(());
    }
    let d = v.space().dim();
    let step = free_pairs_for_stack(v).into_iter().find(|p| p.tau.dim() == d);
    match step {
        None => out.push_str(&serialize(v)),
        Some(p) => {
            writeln!(out, "# collapse {} -> {}", p.sigma, p.tau)?;
            let lowered = v.lowering(&[p.sigma, p.tau].into_iter().collect())?;
            out.push_str(&serialize(&lowered));
        }
    }
    Ok(())
}

fn check(file: Option<&Path>, seeds: u64, base: u64, verbose: bool, out: &mut String) -> Result<u8> {
    let results: Vec<Result<Vec<OracleReport>>> = match file {
        Some(path) => {
            let v = load(path)?;
            let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
            vec![oracle_suite(&label, &v).map_err(Into::into)]
        }
        None => corpus(seeds, base)
            .par_iter()
            .map(|spec| {
                let v = generate(spec)?;
                let label = format!("{}#{}", spec.kind, spec.seed);
                Ok(oracle_suite(&label, &v)?)
            })
            .collect(),
    };
    let mut total = 0;
    let mut failed = 0;
    for reports in results {
        for r in reports? {
            total += 1;
            if !r.pass {
                failed += 1;
            }
            if verbose || !r.pass {
                writeln!(out, "{r}")?;
            }
        }
    }
    writeln!(out, "SUMMARY claims={total} failed={failed}")?;
    Ok(if failed == 0 { 0 } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> Result<u8, Invalid> {
    let mut out = String::new();
    let code = match cli.command {
        Command::Validate { file } => validate(&load(&file)?, &mut out)?,
        Command::Gvf { file } => {
            gvf(&load(&file)?, &mut out)?;
            0
        }
        Command::Msf { file, strategy, dot } => {
            let v = load(&file)?;
            let w = watershed(&v, strategy)?;
            forest_lines(&v, &w, &mut out)?;
            if let Some(path) = dot {
                write_dot(&path, &w, false)?;
            }
            0
        }
        Command::Watershed { file, strategy, dot } => {
            let v = load(&file)?;
            let w = watershed(&v, strategy)?;
            for f in &w.cut.cut_faces {
                writeln!(out, "CUT-FACE {f}")?;
            }
            for s in w.cut.watershed.sorted() {
                writeln!(out, "WATERSHED {s}")?;
            }
            if let Some(path) = dot {
                write_dot(&path, &w, true)?;
            }
            0
        }
        Command::Collapse { file, ultimate } => {
            collapse(&load(&file)?, ultimate, &mut out)?;
            0
        }
        Command::Generate { kind, n, seed, out: path } => {
            let kind: GeneratorKind = format!("{kind}({n})").parse()?;
            let text = serialize(&generate(&GeneratorSpec { kind, seed })?);
            match path {
                Some(p) => fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?,
                None => out = text,
            }
            0
        }
        Command::Check { file, seeds, seed, verbose } => check(file.as_deref(), seeds, seed, verbose, &mut out)?,
    };
    io::stdout().write_all(out.as_bytes())?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
