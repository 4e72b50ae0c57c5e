//! `operad`: batch front end over `operad-core`.
//!
//! Exit codes: 0 ok, 1 a requested check failed, 2 bad input, 3 completion
//! budget exhausted, 4 unorientable relation.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use operad_core::completion::{
    complete, overlaps, resolve, CompletionConfig, CompletionError, Resolution, Status,
};
use operad_core::hilbert::{automaton_for, free_series, grammar_from_rules, hilbert_series};
use operad_core::homalg::{
    envelope_presentation, AlgebraFile, BracketAlgebra, Identity, LoadedAlgebra,
};
use operad_core::order::TermOrder;
use operad_core::rewrite::RewritingSystem;
use operad_core::rulefile::{parse_sum, RuleFile};
use operad_core::scalar::Scalar;
use operad_core::term::Signature;

const CHECK_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const BUDGET: u8 = 3;
const ORDER_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "operad",
    version,
    about = "Rewriting and completion for free operads and hom-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a signed sum of monomials.
    Normalize(NormalizeArgs),
    /// Complete a rule set and print the census as `order<TAB>count`.
    Complete(CompleteArgs),
    /// List the critical ambiguities of a rule set and how each resolves.
    Ambiguities(AmbiguitiesArgs),
    /// Print Hilbert series coefficients up to a total degree.
    Hilbert(HilbertArgs),
    /// Check identities of a finite-dimensional hom-algebra.
    CheckAlgebra(CheckArgs),
    /// Print a rule file presenting the envelope of a hom-Lie algebra.
    Envelope(EnvelopeArgs),
}

#[derive(Args)]
struct RulesArgs {
    /// Rule file.
    #[arg(long)]
    rules: PathBuf,
    /// File of `op <name> <arity>` lines, prepended to the rule file.
    #[arg(long)]
    signature: Option<PathBuf>,
    /// Term order, overriding the file's `order` directive.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args)]
struct NormalizeArgs {
    #[command(flatten)]
    rules: RulesArgs,
    /// Input sum; without it, each nonempty stdin line is normalized.
    #[arg(long)]
    term: Option<String>,
}

#[derive(Args)]
struct CompleteArgs {
    #[command(flatten)]
    rules: RulesArgs,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    max_order: u32,
    /// Stop after this many processed ambiguities (exit 3).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    /// Stop after this many seconds (exit 3).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    time_limit: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Keep right sides as found instead of inter-reducing the system.
    #[arg(long)]
    no_inter_reduce: bool,
    #[arg(long)]
    allow_inhomogeneous: bool,
    /// Write the completed rules here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the per-ambiguity log here.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct AmbiguitiesArgs {
    #[command(flatten)]
    rules: RulesArgs,
    /// Only sites with at most this many vertices.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_order: Option<u32>,
}

#[derive(Args)]
struct HilbertArgs {
    #[arg(long, required_unless_present = "free", conflicts_with = "free")]
    rules: Option<PathBuf>,
    /// The series of all monomials, from the closed form.
    #[arg(long)]
    free: bool,
    #[arg(long)]
    signature: Option<PathBuf>,
    #[arg(long)]
    order: Option<String>,
    /// Largest total degree printed.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    degree: u32,
    /// Exit 1 if some printed degree may change under further completion.
    #[arg(long)]
    strict: bool,
    /// Also print the tree grammar and bottom-up automaton to stderr.
    #[arg(long)]
    dump_automaton: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Algebra JSON file.
    file: PathBuf,
    /// Comma-separated identities: assoc, hom-assoc, hom-jacobi, skew,
    /// multiplicative, centroid. Defaults to hom-jacobi,skew for bracket
    /// files and hom-assoc otherwise.
    #[arg(long, value_delimiter = ',')]
    identities: Vec<String>,
    /// Rational value substituted for q.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args)]
struct EnvelopeArgs {
    /// Bracket algebra JSON file.
    file: PathBuf,
    /// Comma-separated generator names; defaults to the file's names.
    #[arg(long, value_delimiter = ',')]
    names: Vec<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// An error with its exit code.
struct Fail(u8, String);

type Res = Result<ExitCode, Fail>;

fn bad(e: impl std::fmt::Display) -> Fail {
    Fail(BAD_INPUT, e.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail(CHECK_FAILED, format!("{}: {e}", path.display())))
}

fn load_system(
    path: &Path,
    signature: Option<&Path>,
    order: Option<&str>,
) -> Result<RewritingSystem, Fail> {
    let mut text = match signature {
        Some(s) => read(s)?,
        None => String::new(),
    };
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    text.push_str(&read(path)?);
    let at = |e: String| bad(format!("{}: {e}", path.display()));
    let file = RuleFile::parse(&text).map_err(|e| at(e.to_string()))?;
    let name = order.or(file.order.as_deref()).unwrap_or("lex_ma");
    let order = TermOrder::parse(name, &file.signature).map_err(|e| at(e.to_string()))?;
    let mut sys = RewritingSystem::new(file.signature.clone(), order);
    for r in &file.rules {
        sys.add(r.lhs.clone(), r.rhs.clone())
            .map_err(|e| at(format!("line {}: {}", r.line, e.describe(&file.signature))))?;
    }
    Ok(sys)
}

fn load(r: &RulesArgs) -> Result<RewritingSystem, Fail> {
    load_system(&r.rules, r.signature.as_deref(), r.order.as_deref())
}

/// Rule-file text that parses back to `sys`.
fn rule_file_text(sys: &RewritingSystem) -> String {
    let mut s = String::new();
    if *sys.signature() != Signature::hom() {
        s.push_str(&sys.signature().to_string());
    }
    let _ = writeln!(s, "order {}", sys.order());
    s.push_str(&sys.show_rules());
    s
}

fn normalize(a: NormalizeArgs) -> Res {
    let sys = load(&a.rules)?;
    let inputs: Vec<String> = match a.term {
        Some(t) => vec![t],
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(bad)?;
            s.lines()
                .filter(|l| !l.trim().is_empty())
                .map(str::to_string)
                .collect()
        }
    };
    let mut out = String::new();
    for (i, input) in inputs.iter().enumerate() {
        let x =
            parse_sum(input, sys.signature()).map_err(|e| bad(format!("input {}: {e}", i + 1)))?;
        let _ = writeln!(out, "{}", sys.normal_form(&x).show(sys.signature()));
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn complete_cmd(a: CompleteArgs) -> Res {
    let sys = load(&a.rules)?;
    let config = CompletionConfig {
        max_order: a.max_order as usize,
        max_steps: a.max_steps.map(|n| n as usize),
        time_limit: a.time_limit.map(Duration::from_secs),
        inter_reduce: !a.no_inter_reduce,
        jobs: a.jobs as usize,
        allow_inhomogeneous: a.allow_inhomogeneous,
    };
    let state = complete(&sys, &config).map_err(|e| match e {
        CompletionError::Rewrite(e) => bad(e.describe(sys.signature())),
        e => bad(e),
    })?;
    let mut census = String::new();
    for (order, count) in state.census() {
        let _ = writeln!(census, "{order}\t{count}");
    }
    print!("{census}");
    if let Some(p) = &a.output {
        write(p, &rule_file_text(&state.system))?;
    }
    if let Some(p) = &a.log {
        write(p, &state.show_log(state.system.signature()))?;
    }
    match &state.status {
        Status::Complete => Ok(ExitCode::SUCCESS),
        Status::BudgetExhausted => {
            eprintln!(
                "budget exhausted: sites of order <= {} done, {} pending",
                state.frontier, state.pending
            );
            Ok(ExitCode::from(BUDGET))
        }
        Status::Failed { site, candidate } => {
            let sig = state.system.signature();
            Err(Fail(
                ORDER_FAILURE,
                format!(
                    "cannot orient `{}` (from site `{}`) under order {}",
                    candidate.show(sig),
                    site.show(sig),
                    state.system.order()
                ),
            ))
        }
    }
}

fn ambiguities(a: AmbiguitiesArgs) -> Res {
    let sys = load(&a.rules)?;
    let sig = sys.signature();
    let rules = sys.rules();
    let mut out = String::new();
    for (i, r1) in rules.iter().enumerate() {
        for r2 in &rules[i..] {
            let mut ambs = overlaps(r1, r2);
            if r1.id() != r2.id() {
                ambs.extend(overlaps(r2, r1));
            }
            for amb in ambs {
                if a.max_order.is_some_and(|m| amb.order() > m as usize) {
                    continue;
                }
                let outcome = match resolve(&amb, &sys) {
                    Resolution::Resolved => "resolved".to_string(),
                    Resolution::Candidate(d) => format!("candidate\t{}", d.show(sig)),
                    Resolution::Failure(d) => format!("failure\t{}", d.show(sig)),
                };
                let (l, r) = amb.rules();
                let _ = writeln!(
                    out,
                    "{}\t{l}\t{r}@{}\t{outcome}",
                    amb.site.show(sig),
                    amb.right.position
                );
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn hilbert(a: HilbertArgs) -> Res {
    let d = a.degree as usize;
    let Some(path) = &a.rules else {
        print!("{}", free_series(d));
        return Ok(ExitCode::SUCCESS);
    };
    let sys = load_system(path, a.signature.as_deref(), a.order.as_deref())?;
    let h = hilbert_series(&sys, d).map_err(bad)?;
    if a.dump_automaton {
        let g = grammar_from_rules(sys.signature(), sys.rules().iter().map(|r| r.lhs()))
            .map_err(bad)?;
        eprint!("{g}");
        eprint!("{}", automaton_for(&sys).map_err(bad)?);
    }
    print!("{}", h.series);
    if h.is_stable() {
        return Ok(ExitCode::SUCCESS);
    }
    let degrees: Vec<String> = h.unstable_degrees.iter().map(usize::to_string).collect();
    eprintln!(
        "warning: the rule set has unresolved ambiguities; coefficients of total degree {} may change under completion",
        degrees.join(",")
    );
    Ok(if a.strict {
        ExitCode::from(CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_q(q: &Option<String>) -> Result<Option<Scalar>, Fail> {
    q.as_deref()
        .map(|s| Scalar::parse(s).map_err(|e| bad(format!("--q: {e}"))))
        .transpose()
}

fn load_algebra(path: &Path, q: &Option<String>) -> Result<(AlgebraFile, LoadedAlgebra), Fail> {
    let at = |e: operad_core::homalg::HomAlgError| bad(format!("{}: {e}", path.display()));
    let file = AlgebraFile::parse(&read(path)?).map_err(at)?;
    let mut alg = file.load().map_err(at)?;
    if let Some(q) = parse_q(q)? {
        alg = match alg {
            LoadedAlgebra::Plain(x) => LoadedAlgebra::Plain(x.substitute_q(&q).map_err(at)?),
            LoadedAlgebra::Bracket(x) => LoadedAlgebra::Bracket(x.substitute_q(&q).map_err(at)?),
        };
    }
    Ok((file, alg))
}

fn check_algebra(a: CheckArgs) -> Res {
    let (_, alg) = load_algebra(&a.file, &a.q)?;
    let identities: Vec<Identity> = if a.identities.is_empty() {
        match alg {
            LoadedAlgebra::Bracket(_) => vec![Identity::HomJacobi, Identity::Skew],
            LoadedAlgebra::Plain(_) => vec![Identity::HomAssociative],
        }
    } else {
        a.identities
            .iter()
            .map(|s| {
                Identity::parse(s.trim()).ok_or_else(|| bad(format!("unknown identity `{s}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut out = String::new();
    let mut all = true;
    for id in identities {
        let violations = alg.algebra().check(id);
        if violations.is_empty() {
            let _ = writeln!(out, "PASS\t{}", id.name());
        } else {
            all = false;
            let _ = writeln!(out, "FAIL\t{}\t{} violations", id.name(), violations.len());
            for v in &violations {
                let _ = writeln!(out, "\t{v}");
            }
        }
    }
    print!("{out}");
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(CHECK_FAILED)
    })
}

fn envelope(a: EnvelopeArgs) -> Res {
    let (file, alg) = load_algebra(&a.file, &a.q)?;
    let bracket = match alg {
        LoadedAlgebra::Bracket(b) => b,
        LoadedAlgebra::Plain(x) => BracketAlgebra::try_from_algebra(x).map_err(bad)?,
    };
    let names: Vec<String> = if !a.names.is_empty() {
        a.names
    } else if let Some(n) = file.names {
        n
    } else {
        (1..=file.dim).map(|i| format!("c{i}")).collect()
    };
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let p = envelope_presentation(&bracket, &names).map_err(bad)?;
    match &a.output {
        Some(path) => write(path, &p.to_string())?,
        None => print!("{p}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Normalize(a) => normalize(a),
        Command::Complete(a) => complete_cmd(a),
        Command::Ambiguities(a) => ambiguities(a),
        Command::Hilbert(a) => hilbert(a),
        Command::CheckAlgebra(a) => check_algebra(a),
        Command::Envelope(a) => envelope(a),
    };
    match r {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
