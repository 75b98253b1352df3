use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use relrep_core::algebra::{
    enumerate_algebras, AlgebraKind, FiniteAlgebra, JoinSemilatticeSemigroup, DEFAULT_WITNESS_CAP,
};
use relrep_core::completion::{check_quantic_nucleus_with, NucleusConfig};
use relrep_core::games::{
    emit_rho, eval_formula, saturate_and_extract_rep, solve_game_with, verify_certificate, ExtractConfig,
    ExtractionStatus, GameConfig, GoalPair, DEFAULT_DEPTH_CAP,
};
use relrep_core::relational::{represent_with, verify_representation, RepresentOptions};

use crate::error::{render_report, CliError};
use crate::files::{
    default_names, from_json, to_canonical, Algebra, AlgebraFile, CertificateRecord, RepresentationFile, VerdictFile,
    WinnerRecord,
};

#[derive(Debug, Parser)]
#[command(
    name = "relrep",
    version,
    about = "Relational representations and representability games for finite ordered semigroups"
)]
pub struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = NucleusConfig::DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Rs,
    Jsl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an algebra file against its axioms.
    Validate {
        /// Algebra file, or `-` for standard input.
        file: String,
    },
    /// Build the relational representation of a residuated semigroup.
    Represent {
        file: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use a minimal generator set.
        #[arg(long)]
        min_generators: bool,
    },
    /// Check a representation file against its algebra.
    Verify { algebra: String, representation: String },
    /// Solve the bounded game for every goal, or for one.
    Game {
        file: String,
        #[arg(long)]
        rounds: usize,
        /// Goal pair `A,B` by element name or index.
        #[arg(long)]
        goal: Option<String>,
        /// Also write the universal certificates to this file.
        #[arg(long)]
        certificates: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        /// Play on tables that fail the axioms (the join must still be a semilattice).
        #[arg(long)]
        no_check: bool,
    },
    /// Replay every certificate of a verdict file.
    CheckVerdict { algebra: String, verdict: String },
    /// Print the axioms rho_0 .. rho_N.
    Axioms {
        #[arg(long)]
        rounds: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate rho_N on an algebra.
    EvalAxiom {
        file: String,
        #[arg(long)]
        rounds: usize,
    },
    /// List every algebra of one kind and size.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        modulo_iso: bool,
        /// Write one file per algebra into this directory instead of JSON lines on standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Play the existential strategy to saturation and read off a candidate representation.
    ExtractRep {
        file: String,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        rounds: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_check: bool,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read { path: "<stdin>".into(), source })?;
    } else {
        text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    }
    Ok(text)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|source| CliError::Write { path: "<stdout>".into(), source })?
    };
}

pub fn load(path: &str) -> Result<(AlgebraFile, Algebra), CliError> {
    let file: AlgebraFile = from_json(&read_input(path)?, path)?;
    let alg = file.to_algebra()?;
    Ok((file, alg))
}

/// Loads an algebra and refuses it unless it passes its validator.
fn load_valid(path: &str) -> Result<(AlgebraFile, Algebra), CliError> {
    let (file, alg) = load(path)?;
    let report = match &alg {
        Algebra::Rs(rs) => rs.validate(DEFAULT_WITNESS_CAP),
        Algebra::Jsl(j) => j.validate(DEFAULT_WITNESS_CAP),
    };
    if !report.ok() {
        return Err(CliError::Invalid(report));
    }
    Ok((file, alg))
}

fn load_jsl(path: &str, check: bool) -> Result<(AlgebraFile, JoinSemilatticeSemigroup), CliError> {
    let (file, alg) = if check { load_valid(path)? } else { load(path)? };
    match alg {
        Algebra::Jsl(j) => Ok((file, j)),
        Algebra::Rs(_) => Err(CliError::Schema(format!("{path}: games need a jsl algebra file"))),
    }
}

fn parse_goal(spec: &str, names: &[String]) -> Result<GoalPair, CliError> {
    let element = |s: &str| {
        let s = s.trim();
        names
            .iter()
            .position(|n| n == s)
            .or_else(|| s.parse::<usize>().ok().filter(|&i| i < names.len()))
            .ok_or_else(|| CliError::Schema(format!("unknown element {s:?} in goal")))
    };
    let (a, b) =
        spec.split_once(',').ok_or_else(|| CliError::Schema(format!("goal {spec:?} is not of the form A,B")))?;
    Ok(GoalPair::new(element(a)?, element(b)?))
}

/// Runs one command, writing results to `out`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let (_, alg) = load(&file)?;
            let (report, nucleus) = match &alg {
                Algebra::Rs(rs) => {
                    let config = NucleusConfig { seed: cli.seed, ..NucleusConfig::default() };
                    (rs.validate(DEFAULT_WITNESS_CAP), Some(check_quantic_nucleus_with(rs, config)))
                }
                Algebra::Jsl(j) => (j.validate(DEFAULT_WITNESS_CAP), None),
            };
            if report.ok() {
                say!(out, "ok: size {}", alg.size());
            } else {
                say!(out, "invalid:\n{}", render_report(&report).trim_end());
            }
            if let Some(n) = nucleus.filter(|_| report.ok()) {
                let how = if n.exhaustive { "all" } else { "sampled" };
                say!(
                    out,
                    "closure nucleus: {} on {how} {} subset pairs",
                    if n.is_nucleus { "holds" } else { "fails" },
                    n.pairs_checked
                );
            }
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Represent { file, output, min_generators } => {
            let (f, alg) = load_valid(&file)?;
            let Algebra::Rs(rs) = alg else {
                return Err(CliError::Schema(format!("{file}: represent needs an rs algebra file")));
            };
            let rep = represent_with(&rs, RepresentOptions { minimize_generators: min_generators })?;
            let text = to_canonical(&RepresentationFile::from_representation(&rep, &f.elements))?;
            emit(out, output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify { algebra, representation } => {
            let (f, alg) = load_valid(&algebra)?;
            let Algebra::Rs(rs) = alg else {
                return Err(CliError::Schema(format!("{algebra}: verify needs an rs algebra file")));
            };
            let file: RepresentationFile = from_json(&read_input(&representation)?, &representation)?;
            let rep = file.to_representation(&f.elements)?;
            let v = verify_representation(&rs, &rep)?;
            if v.ok() {
                say!(out, "ok: representation over {} points", rep.base().size());
            } else {
                say!(out, "not a representation:\n{}", render_report(&v.report).trim_end());
            }
            say!(out, "union transitive: {}", v.side_conditions.union_transitive);
            say!(out, "every point in the domain: {}", v.side_conditions.base_is_domain);
            Ok(if v.ok() { 0 } else { 1 })
        }
        Command::Game { file, rounds, goal, certificates, output, depth_cap, no_check } => {
            let (f, alg) = load_jsl(&file, !no_check)?;
            let config = GameConfig { depth_cap, check_algebra: !no_check, ..GameConfig::default() };
            let mut verdicts = solve_game_with(&alg, rounds, config)?;
            if let Some(spec) = goal {
                let g = parse_goal(&spec, &f.elements)?.check(&alg)?;
                verdicts.retain(|k, _| *k == g);
            }
            let file_out = VerdictFile::new(f.hash()?, rounds, verdicts.values());
            if let Some(path) = certificates {
                let certs: BTreeMap<String, &CertificateRecord> = file_out
                    .goals
                    .iter()
                    .filter_map(|g| g.certificate.as_ref().map(|c| (format!("{},{}", g.a, g.b), c)))
                    .collect();
                write_file(&path, &to_canonical(&certs)?)?;
            }
            emit(out, output.as_deref(), &to_canonical(&file_out)?)?;
            Ok(0)
        }
        Command::CheckVerdict { algebra, verdict } => {
            let (f, alg) = load_jsl(&algebra, false)?;
            let v: VerdictFile = from_json(&read_input(&verdict)?, &verdict)?;
            v.check_shape()?;
            if v.algebra != f.hash()? {
                say!(out, "verdict was computed for a different algebra");
                return Ok(1);
            }
            let mut rejected = 0;
            for (g, gv) in v.goal_pairs() {
                if let Some(c) = &gv.certificate {
                    let ok = verify_certificate(&alg, g, v.depth, &c.into())?;
                    say!(out, "goal ({}, {}): certificate {}", g.a.0, g.b.0, if ok { "replays" } else { "REJECTED" });
                    rejected += usize::from(!ok);
                }
            }
            let forall = v.goals.iter().filter(|g| g.winner == WinnerRecord::Forall).count();
            say!(out, "{} of {forall} certificates replay", forall - rejected);
            Ok(if rejected == 0 { 0 } else { 1 })
        }
        Command::Axioms { rounds, output } => {
            let text: String = (0..=rounds).map(|n| format!("rho_{n}: {}\n", emit_rho(n))).collect();
            emit(out, output.as_deref(), &text)?;
            Ok(0)
        }
        Command::EvalAxiom { file, rounds } => {
            let (_, alg) = load_jsl(&file, false)?;
            say!(out, "{}", eval_formula(&emit_rho(rounds), &alg)?);
            Ok(0)
        }
        Command::Enumerate { kind, size, modulo_iso, output } => {
            let kind = match kind {
                KindArg::Rs => AlgebraKind::Residuated,
                KindArg::Jsl => AlgebraKind::Jsl,
            };
            let algs = enumerate_algebras(kind, size, modulo_iso)?;
            if let Some(dir) = &output {
                fs::create_dir_all(dir)
                    .map_err(|source| CliError::Write { path: dir.display().to_string(), source })?;
            }
            for (i, a) in algs.iter().enumerate() {
                let (tag, file) = match a {
                    FiniteAlgebra::Residuated(rs) => ("rs", AlgebraFile::from_rs(rs, default_names(size), true)),
                    FiniteAlgebra::Jsl(j) => ("jsl", AlgebraFile::from_jsl(j, default_names(size))),
                };
                let text = to_canonical(&file)?;
                match &output {
                    Some(dir) => write_file(&dir.join(format!("{tag}-{size}-{i:05}.json")), &text)?,
                    None => emit(out, None, &text)?,
                }
            }
            if output.is_some() {
                say!(out, "{} algebras written", algs.len());
            }
            Ok(0)
        }
        Command::ExtractRep { file, nodes, rounds, output, no_check } => {
            let (f, alg) = load_jsl(&file, !no_check)?;
            let config = ExtractConfig { check_algebra: !no_check, ..ExtractConfig::new(nodes, rounds) };
            let e = saturate_and_extract_rep(&alg, config)?;
            let rep = RepresentationFile::from_representation(&e.representation, &f.elements);
            emit(out, output.as_deref(), &to_canonical(&rep)?)?;
            let status = match e.status {
                ExtractionStatus::Verified => "verified",
                ExtractionStatus::BudgetInconclusive => "inconclusive within the budget",
            };
            let mut diag: Box<dyn Write> = if output.is_some() { Box::new(&mut *out) } else { Box::new(io::stderr()) };
            say!(diag, "candidate over {} points: {status}", e.representation.base().size());
            say!(diag, "every goal network saturated: {}", e.saturated);
            if !e.report.ok() {
                say!(diag, "{}", render_report(&e.report).trim_end());
            }
            Ok(if e.status == ExtractionStatus::Verified { 0 } else { 3 })
        }
    }
}
