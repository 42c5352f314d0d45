//! Command-line front end. Exit codes: 0 success, 1 a reported verification
//! failure, 2 a usage or input error.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{
    build_ground, class_certificates, classify_shifted_class, lemma_axiom4_check, parse_deg, verify_shifted,
    verify_strong, verify_weak, Builtin, Classification, DEGround, VerificationReport, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::partition::{Partition, StrictPartition};
use crate::qsym::{
    expand_in_schur, g_to_f, monomial_series, p_in_f, p_in_g, q_in_f, schur_in_f, specialize_f, SchurOutcome,
    SeriesKind,
};
use crate::stats::PeakWindow;
use crate::tableau::{
    enumerate_shssyt, enumerate_shsyt, enumerate_signed_standard, enumerate_ssyt, enumerate_syt, Tableau,
};

#[derive(Parser, Debug)]
#[command(name = "shdual", version, about = "Dual equivalence, shifted dual equivalence and Schur positivity")]
struct Cli {
    /// Worker threads for exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Line-oriented output for scripts.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand s, P or Q of a shape in the F or G basis, or P, Q, s in Schur functions.
    Expand {
        /// `s|schur|P|Q <shape>`, or just `<shape>` with --schur-of.
        #[arg(num_args = 1..=2, value_name = "KIND SHAPE")]
        args: Vec<String>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Basis::F)]
        basis: Basis,
        /// Expand the given function (s, P or Q) in Schur functions.
        #[arg(long, value_name = "KIND")]
        schur_of: Option<String>,
    },
    /// List tableaux of a shape.
    Enumerate {
        #[arg(value_enum)]
        family: TableauFamily,
        shape: String,
        /// Largest entry for semistandard families.
        #[arg(long)]
        max: Option<u32>,
        /// Allow primed diagonal entries (shssyt, signed).
        #[arg(long)]
        diagonal_primes: bool,
    },
    /// Dual equivalence classes of a builtin ground with certified expansions.
    Classes {
        #[command(flatten)]
        ground: GroundArgs,
    },
    /// Check an axiom system exhaustively.
    Verify {
        #[arg(long, value_enum)]
        axioms: AxiomChoice,
        #[command(flatten)]
        ground: GroundArgs,
        /// Read the ground from a DEG file instead of a builtin.
        #[arg(long, conflicts_with = "ground")]
        file: Option<String>,
        /// Restrict peak sets to the literal window instead of the calibrated one.
        #[arg(long)]
        literal_peak_window: bool,
        /// Also run the sufficient conditions (v) and the experimental (vi).
        #[arg(long)]
        lemma_vi: bool,
    },
    /// Identify each class of a peak ground with standard shifted tableaux.
    Classify {
        #[arg(long)]
        file: String,
    },
    /// Specialize s, P or Q to finitely many variables.
    Specialize {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        shape: String,
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Via::Monomial)]
        via: Via,
    },
}

#[derive(Args, Debug)]
struct GroundArgs {
    /// perm, signedperm, syt, shsyt or signed-shsyt.
    #[arg(long)]
    ground: Option<String>,
    /// d, b, phi or psi; defaults to the natural family of the ground.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    shape: Option<String>,
    /// Signed shifted tableaux may prime diagonal entries.
    #[arg(long)]
    diagonal_primes: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Basis {
    F,
    G,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Via {
    F,
    G,
    Monomial,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AxiomChoice {
    Strong,
    Weak,
    Shifted,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TableauFamily {
    Syt,
    Shsyt,
    Ssyt,
    Shssyt,
    Signed,
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Argument(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli))),
        None => dispatch(&cli),
    };
    match result {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    let porcelain = cli.porcelain;
    match &cli.command {
        Command::Expand { args, basis, schur_of } => expand(args, *basis, schur_of.as_deref()).map(|s| (s, true)),
        Command::Enumerate {
            family,
            shape,
            max,
            diagonal_primes,
        } => enumerate(*family, shape, *max, *diagonal_primes, porcelain).map(|s| (s, true)),
        Command::Classes { ground } => classes(&builtin_ground(ground, None)?, porcelain).map(|s| (s, true)),
        Command::Verify {
            axioms,
            ground,
            file,
            literal_peak_window,
            lemma_vi,
        } => {
            let g = match file {
                Some(path) => read_deg(path)?,
                None => builtin_ground(ground, Some(*axioms))?,
            };
            let opts = VerifyOptions {
                peak_window: if *literal_peak_window {
                    PeakWindow::Literal
                } else {
                    PeakWindow::Calibrated
                },
                lemma_vi: *lemma_vi,
                ..VerifyOptions::default()
            };
            let mut reports = vec![match axioms {
                AxiomChoice::Strong => verify_strong(&g, &opts)?,
                AxiomChoice::Weak => verify_weak(&g, &opts)?,
                AxiomChoice::Shifted => verify_shifted(&g, &opts)?,
            }];
            if *lemma_vi && *axioms == AxiomChoice::Shifted {
                reports.push(lemma_axiom4_check(&g, &opts)?);
            }
            Ok(render_reports(&reports, porcelain))
        }
        Command::Classify { file } => classify(&read_deg(file)?, porcelain),
        Command::Specialize { kind, shape, vars, via } => specialize(kind, shape, *vars, *via).map(|s| (s, true)),
    }
}

fn render_reports(reports: &[VerificationReport], porcelain: bool) -> (String, bool) {
    let mut out = String::new();
    for (k, r) in reports.iter().enumerate() {
        if k > 0 && !porcelain {
            out.push('\n');
        }
        out.push_str(&r.render(porcelain));
    }
    (out, reports.iter().all(VerificationReport::passed))
}

fn read_deg(path: &str) -> Result<DEGround> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{path}: {e}")))?;
    parse_deg(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{path}: {message}"),
        },
        other => other,
    })
}

fn builtin_ground(args: &GroundArgs, axioms: Option<AxiomChoice>) -> Result<DEGround> {
    let ground = args
        .ground
        .as_deref()
        .ok_or_else(|| Error::Argument("--ground or --file is required".into()))?;
    let family = match (&args.family, ground) {
        (Some(f), _) => f.as_str(),
        (None, "perm") if axioms == Some(AxiomChoice::Shifted) => "b",
        (None, "perm" | "syt") => "d",
        (None, "signedperm") => "phi",
        (None, "shsyt") => "b",
        (None, "signed-shsyt") => "psi",
        (None, other) => return Err(Error::Argument(format!("unknown ground {other}"))),
    };
    let shape = args.shape.as_deref().map(parse_parts).transpose()?;
    let builtin = Builtin::from_names(ground, family, args.n, shape.as_deref(), args.diagonal_primes)?;
    build_ground(&builtin)
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    Ok(s.parse::<Partition>()?.parts().to_vec())
}

fn expand(args: &[String], basis: Basis, schur_of: Option<&str>) -> Result<String> {
    let (kind, shape) = match (schur_of, args) {
        (Some(k), [shape]) => (k, shape),
        (None, [k, shape]) => (k.as_str(), shape),
        _ => {
            return Err(Error::Argument(
                "expected `expand <s|P|Q> <shape>` or `expand --schur-of <s|P|Q> <shape>`".into(),
            ))
        }
    };
    let kind: SeriesKind = kind.parse()?;
    if schur_of.is_some() {
        let f = match kind {
            SeriesKind::Schur => schur_in_f(&shape.parse()?),
            SeriesKind::P => p_in_f(&shape.parse()?),
            SeriesKind::Q => q_in_f(&shape.parse()?)?,
        };
        return Ok(match expand_in_schur(&f)? {
            SchurOutcome::Symmetric(e) => e.to_lines("s"),
            SchurOutcome::NotSymmetric { witness } => return Err(Error::Invariant(format!("not symmetric at F{witness}"))),
        });
    }
    Ok(match (kind, basis) {
        (SeriesKind::Schur, Basis::F) => schur_in_f(&shape.parse()?).to_lines(),
        (SeriesKind::P, Basis::F) => p_in_f(&shape.parse()?).to_lines(),
        (SeriesKind::Q, Basis::F) => q_in_f(&shape.parse()?)?.to_lines(),
        (SeriesKind::P, Basis::G) => p_in_g(&shape.parse()?).to_lines(),
        (SeriesKind::Q, Basis::G) => {
            let shape: StrictPartition = shape.parse()?;
            p_in_g(&shape).scaled(1 << shape.length()).to_lines()
        }
        (SeriesKind::Schur, Basis::G) => {
            return Err(Error::Argument("Schur functions have no G expansion in general".into()))
        }
    })
}

fn enumerate(family: TableauFamily, shape: &str, max: Option<u32>, diagonal_primes: bool, porcelain: bool) -> Result<String> {
    let need_max = || max.ok_or_else(|| Error::Argument("semistandard families need --max".into()));
    let list: Vec<Tableau> = match family {
        TableauFamily::Syt => enumerate_syt(&shape.parse()?),
        TableauFamily::Shsyt => enumerate_shsyt(&shape.parse()?),
        TableauFamily::Ssyt => enumerate_ssyt(&shape.parse()?, need_max()?),
        TableauFamily::Shssyt => enumerate_shssyt(&shape.parse()?, need_max()?, diagonal_primes),
        TableauFamily::Signed => enumerate_signed_standard(&shape.parse()?, diagonal_primes),
    };
    let mut out = String::new();
    for t in &list {
        let word: Vec<String> = t.reading_word().iter().map(|e| e.to_string()).collect();
        if porcelain {
            let _ = writeln!(out, "tableau {}", word.join(","));
        } else {
            let _ = writeln!(out, "{t}\n  word {}\n", word.join(" "));
        }
    }
    let _ = writeln!(out, "count {}", list.len());
    Ok(out)
}

fn classes(g: &DEGround, porcelain: bool) -> Result<String> {
    let classes = g.classes();
    let certs = class_certificates(g)?;
    let mut out = String::new();
    if !porcelain {
        let _ = writeln!(out, "{} objects in {} classes", g.len(), classes.len());
    }
    for (k, members) in classes.iter().enumerate() {
        let genfn = g.class_genfn(members, None, PeakWindow::Calibrated)?;
        let rep = g.id(members[0]);
        if porcelain {
            let _ = writeln!(out, "class {} {rep} {}", k + 1, members.len());
            let _ = writeln!(out, "genfn {} {genfn}", k + 1);
            if let Some(c) = certs.get(k) {
                for line in c.expansion.to_lines().lines() {
                    let _ = writeln!(out, "expansion {} {line}", k + 1);
                }
            }
        } else {
            let _ = writeln!(out, "{:>4}  {rep:<12} size {:<5} {genfn}", k + 1, members.len());
            if let Some(c) = certs.get(k) {
                let _ = writeln!(out, "      = {}", c.expansion);
            }
        }
    }
    Ok(out)
}

fn classify(g: &DEGround, porcelain: bool) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    for (k, members) in g.classes().iter().enumerate() {
        match classify_shifted_class(g, members)? {
            Classification::Shape { shape, map } => {
                let _ = writeln!(out, "class {} shape {shape}", k + 1);
                for (id, word) in map {
                    if porcelain {
                        let _ = writeln!(out, "map {} {id} {word}", k + 1);
                    } else {
                        let _ = writeln!(out, "  {id} -> {word}");
                    }
                }
            }
            Classification::NotSchurP { genfn, .. } => {
                ok = false;
                let _ = writeln!(out, "class {} not-schur-p {genfn}", k + 1);
            }
            Classification::NoIsomorphism { shape } => {
                ok = false;
                let _ = writeln!(out, "class {} no-isomorphism {shape}", k + 1);
            }
        }
    }
    Ok((out, ok))
}

fn specialize(kind: &str, shape: &str, vars: usize, via: Via) -> Result<String> {
    if vars == 0 {
        return Err(Error::Argument("--vars must be at least 1".into()));
    }
    let kind: SeriesKind = kind.parse()?;
    let poly = match (via, kind) {
        (Via::Monomial, _) => monomial_series(kind, &parse_parts(shape)?, vars)?,
        (Via::F, SeriesKind::Schur) => specialize_f(&schur_in_f(&shape.parse()?), vars),
        (Via::F, SeriesKind::P) => specialize_f(&p_in_f(&shape.parse()?), vars),
        (Via::F, SeriesKind::Q) => specialize_f(&q_in_f(&shape.parse()?)?, vars),
        (Via::G, SeriesKind::P) => specialize_f(&g_to_f(&p_in_g(&shape.parse()?)), vars),
        (Via::G, SeriesKind::Q) => {
            let shape: StrictPartition = shape.parse()?;
            specialize_f(&g_to_f(&p_in_g(&shape).scaled(1 << shape.length())), vars)
        }
        (Via::G, SeriesKind::Schur) => {
            return Err(Error::Argument("the G route applies to P and Q only".into()))
        }
    };
    Ok(format!("{poly}\n"))
}
