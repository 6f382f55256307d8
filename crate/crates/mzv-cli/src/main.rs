use std::collections::BTreeSet;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mzv::identities::{
    enumerate_indices, reproduce_tables, special_values, sweep, verify_corollary1, verify_hoffman, verify_lemma323,
    verify_lemma42, verify_prop31, verify_prop321, verify_theorem1, verify_tpoly_structure, Lemma42, Method, Mode,
    Prop31, Prop321, VerificationReport, RESIDUAL_TOLERANCE,
};
use mzv::numeric::{eval_symbolic, load_cache, save_cache};
use mzv::regular::{Regularizer, SymbolicReal};
use mzv::symgroup::{depth4_congruences, named_subset, parse_generators, generate, right_cosets, Permutation, SubsetTag};
use mzv::words::{FormalSum, Index};
use mzv::WordSum;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Writes a line to stdout, propagating write errors such as a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

/// Largest exit code reported for failures.
const EXIT_CAP: usize = 100;
/// Exit code for usage and input errors.
const EXIT_ERROR: u8 = 101;

#[derive(Parser, Debug)]
#[command(name = "mzv", version, about = "Regularized multiple zeta values and their cyclic-sum identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand the stuffle or shuffle product of two indices.
    Expand {
        product: Product,
        left: Index,
        right: Index,
    },
    /// Print the regularized polynomial in T of an index.
    Regularize {
        mode: Mode,
        index: Index,
        /// Also print the constant term to this many decimal digits.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Verify a family of identities over a range of indices.
    Verify(VerifyArgs),
    /// Coset tables, named subsets and congruences in the symmetric group ring.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Product {
    Stuffle,
    Shuffle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    Theorem1,
    Corollary1,
    Hoffman,
    Prop31,
    Lemma42,
    Renorm,
    Tables,
    Specials,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeSet {
    Star,
    Sh,
    Both,
}

impl ModeSet {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeSet::Star => vec![Mode::Star],
            ModeSet::Sh => vec![Mode::Sh],
            ModeSet::Both => Mode::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    #[value(name = "word_exact")]
    WordExact,
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    scope: Scope,
    /// Depths to sweep, e.g. `4` or `2,3`. Defaults to every depth the scope supports.
    #[arg(long, value_delimiter = ',')]
    depth: Vec<usize>,
    /// Largest weight swept. Defaults to 8 for word_exact and 7 otherwise.
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeSet,
    #[arg(long, value_enum, default_value = "symbolic")]
    method: MethodArg,
    /// Residual tolerance for numeric comparisons.
    #[arg(long, default_value_t = RESIDUAL_TOLERANCE)]
    eps: f64,
    /// Decimal digits shown for residuals in text output (at least 10).
    #[arg(long, default_value_t = 10)]
    precision: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// MZV value cache, loaded before and written after the sweep.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Check only this many indices per depth, chosen with `--seed`.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum GroupOp {
    /// Right cosets of the subgroup generated by a list such as "(12),(34)".
    Cosets {
        generators: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Elements of a named subset such as W4, C4' or V4_0.
    Named { tag: SubsetTag },
    /// The depth-4 congruences in the group ring.
    Congruence {
        /// Only the depth-4 harmonic-relation congruences are available.
        #[arg(long, default_value = "3.1.5")]
        lemma: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(failures) => ExitCode::from(failures.min(EXIT_CAP) as u8),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

/// Runs one command and returns the number of failures.
fn run(command: Command) -> Result<usize> {
    match command {
        Command::Expand { product, left, right } => {
            let (a, b): (WordSum, WordSum) = (FormalSum::from_index(&left), FormalSum::from_index(&right));
            let out = match product {
                Product::Stuffle => a.harmonic(&b)?,
                Product::Shuffle => a.shuffle(&b)?,
            };
            out!("{out}");
            Ok(0)
        }
        Command::Regularize { mode, index, precision } => {
            let r = Regularizer::<mzv::Rational>::new();
            let p = match mode {
                Mode::Star => r.star(index.parts())?,
                Mode::Sh => r.shuffle(index.parts())?,
            };
            out!("{p}");
            if let Some(digits) = precision {
                if digits < 10 {
                    bail!("precision must be at least 10 digits");
                }
                out!("constant term ≈ {}", decimal(&p.constant_term(), digits)?);
            }
            Ok(0)
        }
        Command::Verify(args) => verify(&args),
        Command::Group { op } => group(op),
    }
}

fn decimal(s: &SymbolicReal, digits: usize) -> Result<String> {
    let eps = 10f64.powi(-(digits as i32) - 2);
    let eps = if eps > 0.0 { eps } else { f64::MIN_POSITIVE };
    Ok(eval_symbolic(s, eps)?.value.to_decimal(digits))
}

fn method_of(args: &VerifyArgs) -> Method {
    match args.method {
        MethodArg::WordExact => Method::WordExact,
        MethodArg::Symbolic => Method::Symbolic,
        MethodArg::Numeric => Method::Numeric(args.eps),
    }
}

fn depths(args: &VerifyArgs, supported: std::ops::RangeInclusive<usize>) -> Result<Vec<usize>> {
    if args.depth.is_empty() {
        return Ok(supported.collect());
    }
    for &d in &args.depth {
        if !supported.contains(&d) {
            bail!("depth {d} is outside {}..={} for this scope", supported.start(), supported.end());
        }
    }
    Ok(args.depth.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
}

fn indices(args: &VerifyArgs, depth: usize, max_weight: u32) -> Vec<Index> {
    let mut all = enumerate_indices(depth, max_weight);
    if let Some(k) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ depth as u64);
        all.shuffle(&mut rng);
        all.truncate(k);
        all.sort();
    }
    all
}

fn verify(args: &VerifyArgs) -> Result<usize> {
    if args.precision < 10 {
        bail!("precision must be at least 10 digits");
    }
    if !(args.eps > 0.0 && args.eps.is_finite()) {
        bail!("eps must be a positive number");
    }
    let method = method_of(args);
    let modes = args.mode.modes();
    if method == Method::WordExact && modes.contains(&Mode::Sh) && matches!(args.scope, Scope::Theorem1 | Scope::Corollary1 | Scope::Lemma42) {
        bail!("word_exact applies to the harmonic regularization only; pass --mode star");
    }
    let max_weight = args.max_weight.unwrap_or(if method == Method::WordExact { 8 } else { 7 });
    if let Some(path) = &args.cache {
        if path.exists() {
            load_cache(path).with_context(|| format!("reading cache {}", path.display()))?;
        }
    }
    let name = format!("{:?}", args.scope).to_lowercase();
    let mut reports: Vec<VerificationReport> = Vec::new();
    match args.scope {
        Scope::Tables => reports = reproduce_tables()?,
        Scope::Specials => reports = special_values()?,
        Scope::Theorem1 | Scope::Corollary1 => {
            let ds = depths(args, 2..=4)?;
            if ds.iter().any(|&d| d as u32 > max_weight) {
                bail!("max-weight must be at least the largest depth");
            }
            for d in ds {
                let check = |i: &Index| {
                    modes
                        .iter()
                        .map(|&m| match args.scope {
                            Scope::Theorem1 => verify_theorem1(i, m, method),
                            _ => verify_corollary1(i, m, method),
                        })
                        .collect()
                };
                reports.extend(sweep(&name, &indices(args, d, max_weight), check));
            }
        }
        Scope::Hoffman => {
            for d in depths(args, 1..=4)? {
                let admissible: Vec<Index> =
                    indices(args, d, max_weight).into_iter().filter(|i| i.parts().iter().all(|&p| p >= 2)).collect();
                reports.extend(sweep(&name, &admissible, |i| Ok(vec![verify_hoffman(i, method)?])));
            }
        }
        Scope::Prop31 => {
            let ds = depths(args, 2..=4)?;
            for which in Prop31::ALL.into_iter().filter(|p| ds.contains(&p.depth())) {
                let id = format!("prop31:{which}");
                reports.extend(sweep(&id, &indices(args, which.depth(), max_weight), |i| {
                    Ok(vec![verify_prop31(which, i, method)?])
                }));
            }
        }
        Scope::Lemma42 => {
            let ds = depths(args, 2..=4)?;
            for which in Lemma42::ALL.into_iter().filter(|p| ds.contains(&p.depth())) {
                let id = format!("lemma42:{which}");
                reports.extend(sweep(&id, &indices(args, which.depth(), max_weight), |i| {
                    modes.iter().map(|&m| verify_lemma42(which, i, m, method)).collect()
                }));
            }
        }
        Scope::Renorm => {
            if method == Method::WordExact {
                bail!("renormalization relations compare both regularizations; use symbolic or numeric");
            }
            let ds = depths(args, 1..=4)?;
            for which in Prop321::ALL.into_iter().filter(|p| ds.contains(&p.depth())) {
                let id = format!("prop321:{which}");
                reports.extend(sweep(&id, &indices(args, which.depth(), max_weight), |i| {
                    Ok(vec![verify_prop321(which, i, method)?])
                }));
            }
            let small: Vec<Index> = ["1", "1,1"]
                .into_iter()
                .map(|s| s.parse().expect("literal index"))
                .chain((2..max_weight).map(|k| Index::new(vec![1, k]).expect("positive parts")))
                .collect();
            reports.extend(sweep("lemma323", &small, |i| modes.iter().map(|&m| verify_lemma323(i, m)).collect()));
            for d in ds {
                reports.extend(sweep("tpoly_structure", &indices(args, d, max_weight), |i| {
                    Ok(vec![verify_tpoly_structure(i)?])
                }));
            }
        }
    }
    if let Some(path) = &args.cache {
        save_cache(path).with_context(|| format!("writing cache {}", path.display()))?;
    }
    let failures = reports.iter().filter(|r| !r.passed()).count();
    match args.format {
        Format::Json => {
            for r in &reports {
                out!("{}", serde_json::to_string(r)?);
            }
        }
        Format::Text => {
            for r in &reports {
                out!("{}", text_line(r, args.precision));
            }
            out!("{} checked, {} passed, {} failed", reports.len(), reports.len() - failures, failures);
        }
    }
    Ok(failures)
}

fn text_line(r: &VerificationReport, digits: usize) -> String {
    match (r.residual, r.eps) {
        (Some(res), Some(eps)) => {
            let mut plain = r.clone();
            plain.residual = None;
            plain.eps = None;
            format!("{plain} residual={res:.*e} eps={eps:.0e}", digits.saturating_sub(1))
        }
        _ => r.to_string(),
    }
}

fn braces(class: &[Permutation]) -> String {
    let items: Vec<String> = class.iter().map(Permutation::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn group(op: GroupOp) -> Result<usize> {
    match op {
        GroupOp::Cosets { generators, degree } => {
            let gens = parse_generators(&generators, degree)?;
            let h = generate(&gens, degree);
            let classes = right_cosets(&h, degree)?;
            out!("{} classes modulo <{}> in S{degree}", classes.len(), generators);
            for c in &classes {
                out!("{}", braces(c));
            }
            Ok(0)
        }
        GroupOp::Named { tag } => {
            let s = named_subset(tag);
            let elements: Vec<Permutation> = s.elements.into_iter().collect();
            out!("{tag} ({} elements) = {}", elements.len(), braces(&elements));
            Ok(0)
        }
        GroupOp::Congruence { lemma, format } => {
            if lemma != "3.1.5" {
                bail!("unknown congruence family `{lemma}`");
            }
            let mut failures = 0;
            for c in depth4_congruences() {
                let ok = c.holds();
                failures += usize::from(!ok);
                match format {
                    Format::Text => out!(
                        "{:<5} {} ≡ {} mod <{}> {}",
                        c.label,
                        c.lhs,
                        c.rhs,
                        c.modulus,
                        if ok { "pass" } else { "FAIL" }
                    ),
                    Format::Json => out!(
                        "{}",
                        serde_json::json!({
                            "label": c.label,
                            "lhs": c.lhs.to_string(),
                            "rhs": c.rhs.to_string(),
                            "modulus": c.modulus,
                            "holds": ok,
                        })
                    ),
                }
            }
            Ok(failures)
        }
    }
}
