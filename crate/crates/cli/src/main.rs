//! `globemol` command-line tool.
//!
//! Exit status: 0 for an affirmative answer, 1 for a negative verdict,
//! 2 for bad input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use globemol::catalog::Catalog;
use globemol::enumerate::{enumerate3, validate_maximal_atom_set, EnumMode};
use globemol::molecule::{decompose, molecule_compose, molecule_d};
use globemol::oracle::{check_axioms, signed_lifts, Oracle, DEFAULT_BUDGET};
use globemol::pair::pair_is_molecule;
use globemol::quad::{quad_is_pairwise_def, quad_is_pairwise_explicit};
use globemol::reference::run_worked_examples;
use globemol::triple::{triple_is_pairwise_def, triple_is_pairwise_explicit};
use globemol::{Error, MoleculeExpr, Sign, Signature, Subcomplex};

#[derive(Parser)]
#[command(name = "globemol", version, about = "Molecules in products of globes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SigArgs {
    /// Number of factors (inferred from the first atom when omitted).
    #[arg(long)]
    factors: Option<usize>,
    /// Twist parities, one per factor.
    #[arg(long, value_delimiter = ',')]
    twists: Option<Vec<u32>>,
    /// Finite globe dimensions, one per factor.
    #[arg(long, value_delimiter = ',')]
    caps: Option<Vec<u32>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Projections plus the sign conditions.
    Def,
    /// The explicit condition list.
    Explicit,
    /// The level-by-level clauses (three factors only).
    Level,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Capped,
    Signed,
}

#[derive(Clone, Copy)]
struct SignArg(Sign);

fn parse_sign(s: &str) -> Result<SignArg, String> {
    match s {
        "+" | "plus" => Ok(SignArg(Sign::Plus)),
        "-" | "minus" => Ok(SignArg(Sign::Minus)),
        _ => Err(format!("expected + or -, got `{s}`")),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a subcomplex is a molecule.
    Check {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, value_enum, default_value = "def")]
        method: Method,
        subcomplex: String,
    },
    /// Print d_p^sign of a molecule.
    Boundary {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(short = 'p', long = "dim")]
        p: u32,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        sign: SignArg,
        subcomplex: String,
    },
    /// Print the p-source of a molecule.
    Source {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(short = 'p', long = "dim")]
        p: u32,
        subcomplex: String,
    },
    /// Print the p-target of a molecule.
    Target {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(short = 'p', long = "dim")]
        p: u32,
        subcomplex: String,
    },
    /// Print the composite `left #p right`.
    Compose {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(short = 'p', long = "dim")]
        p: u32,
        left: String,
        right: String,
    },
    /// Split a molecule into a composition tree of atoms.
    Decompose {
        #[command(flatten)]
        sig: SigArgs,
        /// Refuse to print trees with more leaves than this.
        #[arg(long, default_value_t = 10_000)]
        max_leaves: u128,
        /// Print only the number of leaves of the tree.
        #[arg(long)]
        count: bool,
        subcomplex: String,
    },
    /// Print the projection to the level of one factor.
    Project {
        #[command(flatten)]
        sig: SigArgs,
        /// Factor to project away, counted from 1.
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        level: u32,
        subcomplex: String,
    },
    /// Enumerate three-factor molecules within --caps.
    Enumerate {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, value_enum, default_value = "capped")]
        mode: Mode,
        /// Write the catalog here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Compare with an existing catalog instead of printing.
        #[arg(long, conflicts_with = "output")]
        compare: Option<PathBuf>,
    },
    /// Enumerate molecules of a product of finite globes by brute force.
    OracleEnumerate {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force membership, or the axiom suite when no subcomplex is given.
    OracleCheck {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        subcomplex: Option<String>,
    },
    /// Run every built-in worked example.
    VerifyPaperExamples,
}

/// Why a command stopped without an affirmative answer.
enum Fail {
    /// A negative verdict, printed to stdout.
    No(String),
    /// Bad input, printed to stderr.
    Input(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotMolecule(m) => Fail::No(format!("not-molecule: {m}")),
            Error::Empty => Fail::No("not-molecule: empty".into()),
            Error::BoundaryMismatch { .. } => Fail::No(format!("not-composable: {e}")),
            other => Fail::Input(other.to_string()),
        }
    }
}

type Out = Result<String, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail::No(out)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Check { sig, method, subcomplex } => check(&sig, method, &subcomplex),
        Cmd::Boundary { sig, p, sign, subcomplex } => boundary(&sig, p, sign.0, &subcomplex),
        Cmd::Source { sig, p, subcomplex } => boundary(&sig, p, Sign::Minus, &subcomplex),
        Cmd::Target { sig, p, subcomplex } => boundary(&sig, p, Sign::Plus, &subcomplex),
        Cmd::Compose { sig, p, left, right } => compose(&sig, p, &left, &right),
        Cmd::Decompose { sig, max_leaves, count, subcomplex } => {
            decompose_cmd(&sig, max_leaves, count, &subcomplex)
        }
        Cmd::Project { sig, axis, level, subcomplex } => {
            let x = parse_sub(&sig, &subcomplex)?;
            if axis == 0 {
                return Err(Fail::Input("axes are counted from 1".into()));
            }
            Ok(format!("{}\n", x.project(axis - 1, level)?))
        }
        Cmd::Enumerate { sig, mode, output, compare } => enumerate_cmd(&sig, mode, output, compare),
        Cmd::OracleEnumerate { sig, budget, output } => {
            let s = signature(&sig, None)?;
            let oracle = Oracle::with_budget(&s, budget)?;
            let mols = oracle.molecules()?.to_subcomplexes(oracle.complex());
            emit(Catalog::new(s, mols)?, output)
        }
        Cmd::OracleCheck { sig, budget, subcomplex } => oracle_check(&sig, budget, subcomplex),
        Cmd::VerifyPaperExamples => {
            let mut out = String::new();
            let mut all = true;
            for o in run_worked_examples() {
                all &= o.passed;
                let status = if o.passed { "PASS" } else { "FAIL" };
                match &o.error {
                    Some(e) => writeln!(out, "{status} {} ({e})", o.name).unwrap(),
                    None => writeln!(out, "{status} {}", o.name).unwrap(),
                }
            }
            if all {
                Ok(out)
            } else {
                Err(Fail::No(out))
            }
        }
    }
}

/// Builds the ambient signature from the flags, inferring the arity from
/// `text` if nothing else gives it.
fn signature(args: &SigArgs, text: Option<&str>) -> Result<Signature, Fail> {
    let arity = args
        .factors
        .or(args.twists.as_ref().map(Vec::len))
        .or(args.caps.as_ref().map(Vec::len))
        .or_else(|| text.and_then(infer_arity))
        .ok_or_else(|| Fail::Input("cannot tell the number of factors; pass --factors".into()))?;
    let mut sig = Signature::new(arity)?;
    if let Some(t) = &args.twists {
        sig = sig.with_twists(t)?;
    }
    if let Some(c) = &args.caps {
        sig = sig.with_caps(c)?;
    }
    Ok(sig)
}

fn infer_arity(text: &str) -> Option<usize> {
    let start = text.find('(')?;
    let end = start + text[start..].find(')')?;
    Some(text[start..end].matches(',').count() + 1)
}

fn parse_sub(args: &SigArgs, text: &str) -> Result<Subcomplex, Fail> {
    let sig = signature(args, Some(text))?;
    Ok(Subcomplex::parse(sig, text)?)
}

fn no(tag: &str, detail: impl std::fmt::Display) -> Fail {
    Fail::No(format!("not-molecule: {tag}\n  {detail}\n"))
}

fn check(args: &SigArgs, method: Method, text: &str) -> Out {
    let x = parse_sub(args, text)?;
    if x.is_empty() {
        return Err(no("empty", "the empty subcomplex has no atoms"));
    }
    if x.signature().is_capped() {
        return check_capped(&x, method);
    }
    check_plain(&x, method)?;
    Ok("molecule\n".into())
}

fn check_plain(x: &Subcomplex, method: Method) -> Result<(), Fail> {
    macro_rules! verdict {
        ($v:expr) => {{
            let v = $v;
            match v.violation() {
                None => Ok(()),
                Some(bad) => Err(no(bad.tag(), bad)),
            }
        }};
    }
    match (x.signature().arity(), method) {
        (1, _) if x.len() == 1 => Ok(()),
        (1, _) => Err(no("one-atom", "a globe molecule has exactly one maximal atom")),
        (2, _) => verdict!(pair_is_molecule(x)?),
        (3, Method::Def) => verdict!(triple_is_pairwise_def(x)?),
        (3, Method::Explicit) => verdict!(triple_is_pairwise_explicit(x)?),
        (3, Method::Level) => {
            let v = validate_maximal_atom_set(x.signature(), x.atoms())?;
            match v.violation() {
                None => Ok(()),
                Some(bad) => Err(no(bad.clause, bad)),
            }
        }
        (4, Method::Def) => verdict!(quad_is_pairwise_def(x)?),
        (4, Method::Explicit) => verdict!(quad_is_pairwise_explicit(x)?),
        (4, Method::Level) => Err(Fail::Input("--method level needs three factors".into())),
        (n, _) => Err(Error::BadArity(n).into()),
    }
}

/// A capped subcomplex is checked through its signed lifts, and the
/// verdict is confirmed against the brute-force closure.
fn check_capped(x: &Subcomplex, method: Method) -> Out {
    let lifts = signed_lifts(x);
    let mut first = None;
    let mut found = false;
    for l in &lifts {
        match check_plain(l, method) {
            Ok(()) => {
                found = true;
                break;
            }
            Err(Fail::No(m)) => {
                first.get_or_insert(m);
            }
            Err(e) => return Err(e),
        }
    }
    let oracle = Oracle::new(x.signature())?.is_molecule(x)?;
    if oracle != found {
        return Err(Fail::Input(format!(
            "internal disagreement on {x}: oracle says {oracle}, lifts say {found}"
        )));
    }
    if found {
        return Ok("molecule\n".into());
    }
    let detail = first.unwrap_or_default();
    let detail = detail.trim_end().replace('\n', " ");
    Err(no("no-lift", format!("no signed lift is a molecule; first lift: {detail}")))
}

/// Exits with the negative verdict unless `x` is a molecule.
fn require_molecule(x: &Subcomplex) -> Result<(), Fail> {
    if x.is_empty() {
        return Err(no("empty", "the empty subcomplex has no atoms"));
    }
    if x.signature().is_capped() {
        check_capped(x, Method::Def).map(drop)
    } else {
        check_plain(x, Method::Def)
    }
}

fn boundary(args: &SigArgs, p: u32, gamma: Sign, text: &str) -> Out {
    let x = parse_sub(args, text)?;
    require_molecule(&x)?;
    let d = if x.signature().is_capped() {
        Oracle::new(x.signature())?.complex().d_sub(&x, p, gamma)?
    } else {
        molecule_d(&x, p, gamma)?
    };
    Ok(format!("{d}\n"))
}

fn compose(args: &SigArgs, p: u32, left: &str, right: &str) -> Out {
    let sig = signature(args, Some(left))?;
    let x = Subcomplex::parse(sig, left)?;
    let y = Subcomplex::parse(sig, right)?;
    require_molecule(&x)?;
    require_molecule(&y)?;
    let z = if sig.is_capped() {
        let oracle = Oracle::new(&sig)?;
        let cx = oracle.complex();
        let (l, r) = (cx.d_sub(&x, p, Sign::Plus)?, cx.d_sub(&y, p, Sign::Minus)?);
        if l != r {
            return Err(Error::BoundaryMismatch { left: l.to_string(), right: r.to_string() }.into());
        }
        x.union(&y)?
    } else {
        molecule_compose(&x, p, &y)?
    };
    Ok(format!("{z}\n"))
}

fn decompose_cmd(args: &SigArgs, max_leaves: u128, count: bool, text: &str) -> Out {
    let x = parse_sub(args, text)?;
    require_molecule(&x)?;
    let tree = if x.signature().is_capped() { decompose_capped(&x)? } else { decompose(&x)? };
    let leaves = tree.leaf_count();
    if count {
        return Ok(format!("{leaves}\n"));
    }
    if leaves > max_leaves {
        return Err(Fail::Input(format!(
            "the tree has {leaves} leaves, more than --max-leaves {max_leaves}"
        )));
    }
    Ok(format!("{tree}\n"))
}

/// Decomposes a molecular lift and maps the leaves back to the capped
/// product, then re-evaluates the tree there.
fn decompose_capped(x: &Subcomplex) -> Result<MoleculeExpr, Fail> {
    let sig = *x.signature();
    let caps = sig.caps().expect("capped").to_vec();
    for l in signed_lifts(x) {
        if check_plain(&l, Method::Def).is_err() {
            continue;
        }
        let mapped = decompose(&l)?.cap_quotient(&caps)?;
        if mapped.evaluate(&sig)? != *x {
            return Err(Fail::Input(format!("decomposition of {x} did not evaluate back")));
        }
        return Ok(mapped);
    }
    Err(no("no-lift", "no signed lift is a molecule"))
}

fn caps3(args: &SigArgs) -> Result<[u32; 3], Fail> {
    match args.caps.as_deref() {
        Some(&[a, b, c]) => Ok([a, b, c]),
        _ => Err(Fail::Input("enumerate needs --caps with three entries".into())),
    }
}

fn enumerate_cmd(args: &SigArgs, mode: Mode, output: Option<PathBuf>, compare: Option<PathBuf>) -> Out {
    let caps = caps3(args)?;
    if args.factors.is_some_and(|n| n != 3) {
        return Err(Fail::Input("enumerate works with three factors".into()));
    }
    if args.twists.as_ref().is_some_and(|t| t.iter().any(|&t| t != 0)) {
        return Err(Fail::Input("enumerate works with the untwisted product".into()));
    }
    let (sig, mode) = match mode {
        Mode::Capped => (Signature::capped(&caps)?, EnumMode::Capped),
        Mode::Signed => (Signature::plain(3), EnumMode::Signed),
    };
    let cat = Catalog::new(sig, enumerate3(caps, mode)?)?;
    if let Some(path) = compare {
        let other = Catalog::read(&path)?;
        return if other == cat {
            Ok(format!("catalogs agree: {} entries\n", cat.len()))
        } else {
            Err(Fail::No(format!(
                "catalogs differ: computed {} entries, file has {}\n",
                cat.len(),
                other.len()
            )))
        };
    }
    emit(cat, output)
}

fn emit(cat: Catalog, output: Option<PathBuf>) -> Out {
    match output {
        Some(path) => {
            cat.write(&path)?;
            Ok(format!("wrote {} entries to {}\n", cat.len(), path.display()))
        }
        None => Ok(cat.to_text()),
    }
}

fn oracle_check(args: &SigArgs, budget: usize, text: Option<String>) -> Out {
    let sig = signature(args, text.as_deref())?;
    if !sig.is_capped() {
        return Err(Fail::Input("the oracle needs --caps".into()));
    }
    let oracle = Oracle::with_budget(&sig, budget)?;
    match text {
        Some(t) => {
            let x = Subcomplex::parse(sig, &t)?;
            if oracle.is_molecule(&x)? {
                Ok("molecule\n".into())
            } else {
                Err(no("not-in-closure", "not reachable from atoms by composition"))
            }
        }
        None => {
            let rep = check_axioms(oracle.complex(), oracle.molecules()?);
            let out = format!("{} molecules\n{rep}\n", oracle.molecules()?.len());
            if rep.passed() {
                Ok(out)
            } else {
                Err(Fail::No(out))
            }
        }
    }
}
