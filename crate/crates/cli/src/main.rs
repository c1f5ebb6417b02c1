use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use langconvex::cfg::Cfg;
use langconvex::checker::{published_size, DEFAULT_STATE_CAP};
use langconvex::nfa::DEFAULT_SUBSET_CAP;
use langconvex::validation::families::{Family, FamilySpec};
use langconvex::validation::{brute_force_verdict, make_family};
use langconvex::{
    build_checker_with, checker_size_formula, decide_almost, decide_with, nfa_is_free, parse_automaton,
    verify_witness, Alphabet, Automaton, CheckerOptions, Decomposition, Dfa, Error, Layout, Mode, PropertyQuery,
    Relation, Witness,
};

mod report;

use report::Report;

/// Convexity, closure and freeness of regular languages.
#[derive(Parser, Debug)]
#[command(name = "langconvex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a property for one or more automata (or grammars).
    Check(CheckArgs),
    /// Classify the witness set: holds, almost (finitely many) or not-almost.
    Almost(SingleArgs),
    /// Print the minimal witness, if the property fails.
    Witness(SingleArgs),
    /// Generate an automaton from one of the extremal families.
    Gen(GenArgs),
    /// Search for a witness by enumeration up to a length.
    Oracle(OracleArgs),
    /// Compare full-layout checker sizes with the closed-form counts.
    Stats(SingleArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// `<relation>-<mode>`, `converse-<relation>-closed` or `ideal`.
    #[arg(long, short)]
    property: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the input automaton in Graphviz format to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Cap on checker states.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    /// Cap on subset-construction states for NFA inputs.
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
    /// Treat inputs as context-free grammars (implied by a `.cfg` suffix).
    #[arg(long)]
    grammar: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    /// Include the minimal witness in the report.
    #[arg(long)]
    witness: bool,
    /// Number of files processed in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct SingleArgs {
    #[command(flatten)]
    common: Common,
    input: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// xu-factor-closure, nsc-suffix-convex, nsc-factor-convex, factor-free-hard,
    /// suffix-free-hard, unary-npc, unary-prefix-closed, unary-subword-closed,
    /// nfa-prefix-free-hard
    #[arg(long)]
    family: String,
    /// Family parameter.
    #[arg(long)]
    n: usize,
    /// Output path; the automaton goes to stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    max_len: usize,
    input: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_resource_limit() => EXIT_LIMIT,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome = Result<(Report, u8), Failure>;

enum Input {
    Automaton(Automaton),
    Grammar(Cfg),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(path: &Path, common: &Common) -> Result<Input, Failure> {
    let text = read(path)?;
    let grammar = common.grammar || path.extension().is_some_and(|e| e == "cfg");
    if grammar {
        return Ok(Input::Grammar(Cfg::parse(&text)?));
    }
    let a = parse_automaton(&text)?;
    if let Some(dot) = &common.dot {
        fs::write(dot, a.to_dot()).map_err(|e| Failure::Usage(format!("{}: {e}", dot.display())))?;
    }
    Ok(Input::Automaton(a))
}

fn query(common: &Common) -> Result<PropertyQuery, Failure> {
    common.property.parse::<PropertyQuery>().map_err(|e| Failure::Usage(e.to_string()))
}

fn options(common: &Common) -> CheckerOptions {
    CheckerOptions {
        state_cap: common.state_cap,
        ..CheckerOptions::default()
    }
}

/// Determinizes NFA inputs, warning that this may be exponential.
fn as_dfa(a: &Automaton, common: &Common, path: &Path) -> Result<Dfa, Failure> {
    match a {
        Automaton::Dfa(d) => Ok(d.clone()),
        Automaton::Nfa(m) => {
            eprintln!(
                "warning: {}: determinizing an NFA for {}; this may take exponential time",
                path.display(),
                common.property
            );
            Ok(m.determinize_with_cap(common.subset_cap)?)
        }
    }
}

fn add_witness(r: &mut Report, alphabet: &Alphabet, w: &Witness) {
    if let Some(u) = &w.u {
        r.set("witness.u", alphabet.render(u));
    }
    r.set("witness.v", alphabet.render(&w.v));
    r.set("witness.w", alphabet.render(&w.w));
    r.set("witness.size", w.size());
}

fn add_decomposition(r: &mut Report, w: &Witness) {
    let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    match &w.decomposition {
        Decomposition::Segments { v, u } => {
            if let Some((a, b)) = u {
                r.set("decomposition.u", format!("{a}..{b}"));
            }
            r.set("decomposition.v", format!("{}..{}", v.0, v.1));
        }
        Decomposition::Embedding { v, u } => {
            if let Some(u) = u {
                r.set("decomposition.u", list(u));
            }
            r.set("decomposition.v", list(v));
        }
    }
}

fn exit_for(holds: bool) -> u8 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn check_grammar(g: &Cfg, q: &PropertyQuery, with_witness: bool) -> Outcome {
    if *q != PropertyQuery::new(Relation::Subword, Mode::Free) {
        return Err(Failure::Usage(format!(
            "grammars support only subword-free (got {q}); the other properties are undecidable for context-free languages"
        )));
    }
    let out = g.is_subword_free()?;
    let mut r = Report::new();
    r.set("property", q.to_string()).set("holds", out.free).set("grammar.infinite", out.infinite);
    if with_witness && out.infinite {
        r.set("witness", "none (every infinite language has a comparable pair)");
    }
    if with_witness {
        if let Some((v, w)) = &out.witness {
            r.set("witness.v", g.terminals().render(v));
            r.set("witness.w", g.terminals().render(w));
            r.set("witness.size", w.len());
        }
    }
    Ok((r, exit_for(out.free)))
}

fn check_one(path: &Path, common: &Common, with_witness: bool) -> Outcome {
    let q = query(common)?;
    if q.almost {
        return Err(Failure::Usage(format!("{q}: use the `almost` subcommand")));
    }
    let a = match load(path, common)? {
        Input::Grammar(g) => return check_grammar(&g, &q, with_witness),
        Input::Automaton(a) => a,
    };
    let mut r = Report::new();
    r.set("property", q.to_string());

    if let (Automaton::Nfa(m), Mode::Free, false) = (&a, q.mode, q.converse) {
        let m = m.remove_epsilon();
        let out = nfa_is_free(&m, q.relation)?;
        let c = langconvex::nfa_free::freeness_construction(&m, q.relation)?;
        r.set("holds", out.free);
        if with_witness {
            if let Some((v, w)) = &out.witness {
                r.set("witness.v", m.alphabet().render(v));
                r.set("witness.w", m.alphabet().render(w));
                r.set("witness.size", w.len());
            }
        }
        r.set("checker.states", c.product.num_states());
        r.set("checker.transitions", c.product.num_transitions());
        return Ok((r, exit_for(out.free)));
    }

    let d = as_dfa(&a, common, path)?;
    let v = decide_with(&d, &q, options(common))?;
    r.set("holds", v.holds);
    if with_witness {
        if let Some(w) = &v.witness {
            if !verify_witness(&d, &q, w) {
                return Err(Failure::Usage("internal error: witness failed verification".into()));
            }
            add_witness(&mut r, d.alphabet(), w);
        }
    }
    r.set("checker.states", v.stats.states);
    r.set("checker.transitions", v.stats.transitions);
    Ok((r, exit_for(v.holds)))
}

fn witness_cmd(args: &SingleArgs) -> Outcome {
    let common = &args.common;
    let q = query(common)?;
    let Input::Automaton(a) = load(&args.input, common)? else {
        return check_one(&args.input, common, true);
    };
    let d = as_dfa(&a, common, &args.input)?;
    let v = decide_with(&d, &q, options(common))?;
    let mut r = Report::new();
    r.set("property", q.to_string()).set("holds", v.holds);
    if let Some(w) = &v.witness {
        let ok = verify_witness(&d, &q, w);
        add_witness(&mut r, d.alphabet(), w);
        add_decomposition(&mut r, w);
        r.set("witness.verified", ok);
    }
    Ok((r, exit_for(v.holds)))
}

fn almost_cmd(args: &SingleArgs) -> Outcome {
    let common = &args.common;
    let q = query(common)?.with_almost(true);
    let Input::Automaton(a) = load(&args.input, common)? else {
        return Err(Failure::Usage("almost needs an automaton".into()));
    };
    let d = as_dfa(&a, common, &args.input)?;
    let verdict = decide_almost(&d, &q)?;
    let mut r = Report::new();
    r.set("property", q.to_string()).set("verdict", verdict.name());
    Ok((r, exit_for(verdict == langconvex::AlmostVerdict::Holds)))
}

fn oracle_cmd(args: &OracleArgs) -> Outcome {
    let common = &args.common;
    let q = query(common)?;
    if q.almost {
        return Err(Failure::Usage("the oracle decides plain properties".into()));
    }
    let Input::Automaton(a) = load(&args.input, common)? else {
        return Err(Failure::Usage("the oracle needs an automaton".into()));
    };
    let v = match &a {
        Automaton::Dfa(d) => brute_force_verdict(d, &q, args.max_len)?,
        Automaton::Nfa(m) => brute_force_verdict(m, &q, args.max_len)?,
    };
    let mut r = Report::new();
    r.set("property", q.to_string()).set("holds", v.holds_up_to_horizon());
    r.set("oracle.max_len", args.max_len);
    r.set("oracle.one_sided", v.holds_up_to_horizon());
    if let Some(w) = &v.witness {
        add_witness(&mut r, a.alphabet(), w);
    }
    Ok((r, exit_for(v.holds_up_to_horizon())))
}

fn status(measured: u64, formula: u64, published: Option<u64>) -> &'static str {
    match published {
        _ if measured != formula => "MISMATCH",
        Some(p) if p != measured => "NOTED",
        _ => "MATCH",
    }
}

fn stats_cmd(args: &SingleArgs) -> Outcome {
    let common = &args.common;
    let q = query(common)?;
    let Input::Automaton(Automaton::Dfa(d)) = load(&args.input, common)? else {
        return Err(Failure::Usage("stats needs a DFA".into()));
    };
    let opts = CheckerOptions {
        layout: Layout::Full,
        properness: false,
        state_cap: common.state_cap,
    };
    let c = build_checker_with(&d, &q, opts)?;
    let (n, sigma) = (d.num_states() as u64, d.alphabet().len() as u64);
    let (fs, ft) = checker_size_formula(n, sigma, q.relation, q.mode);
    let (ps, pt) = published_size(n, sigma, q.relation, q.mode);
    let (ms, mt) = (c.num_states() as u64, c.num_transitions() as u64);
    let mut r = Report::new();
    r.set("property", q.to_string()).set("n", n).set("sigma", sigma);
    for (name, m, f, p) in [("states", ms, fs, ps), ("transitions", mt, ft, pt)] {
        r.set(&format!("{name}.measured"), m);
        r.set(&format!("{name}.formula"), f);
        if let Some(p) = p {
            r.set(&format!("{name}.published"), p);
        }
        r.set(&format!("{name}.status"), status(m, f, p));
    }
    let ok = ms == fs && mt == ft;
    Ok((r, if ok { EXIT_HOLDS } else { EXIT_FAILS }))
}

fn gen_cmd(args: &GenArgs) -> Result<u8, Failure> {
    let family: Family = args.family.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let a = make_family(FamilySpec::new(family, args.n)).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = format!("# {} n={}\n{}", family, args.n, a.to_text());
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            println!("states: {}", a.num_states());
        }
        None => {
            print!("{text}");
            eprintln!("states: {}", a.num_states());
        }
    }
    Ok(EXIT_HOLDS)
}

fn emit(report: &Report, format: Format, header: Option<&Path>) {
    let mut out = std::io::stdout().lock();
    match format {
        Format::Text => {
            if let Some(p) = header {
                let _ = writeln!(out, "file: {}", p.display());
            }
            let _ = out.write_all(report.to_text().as_bytes());
        }
        Format::Json => {
            let mut j = report.to_json();
            if let (Some(p), Some(obj)) = (header, j.as_object_mut()) {
                obj.insert("file".into(), p.display().to_string().into());
            }
            let _ = writeln!(out, "{j}");
        }
    }
}

fn finish(outcome: Outcome, format: Format, path: &Path, header: bool) -> u8 {
    match outcome {
        Ok((report, code)) => {
            emit(&report, format, header.then_some(path));
            code
        }
        Err(f) => {
            eprintln!("error: {}: {}", path.display(), f.message());
            f.code()
        }
    }
}

fn check_cmd(args: &CheckArgs) -> u8 {
    if let Err(f) = query(&args.common) {
        eprintln!("error: {}", f.message());
        return f.code();
    }
    let jobs = args.jobs.max(1).min(args.inputs.len());
    let mut outcomes: Vec<Option<Outcome>> = (0..args.inputs.len()).map(|_| None).collect();
    if jobs == 1 {
        for (slot, path) in outcomes.iter_mut().zip(&args.inputs) {
            *slot = Some(check_one(path, &args.common, args.witness));
        }
    } else {
        let chunk = args.inputs.len().div_ceil(jobs);
        std::thread::scope(|s| {
            for (slots, paths) in outcomes.chunks_mut(chunk).zip(args.inputs.chunks(chunk)) {
                let common = &args.common;
                s.spawn(move || {
                    for (slot, path) in slots.iter_mut().zip(paths) {
                        *slot = Some(check_one(path, common, args.witness));
                    }
                });
            }
        });
    }
    let many = args.inputs.len() > 1;
    let mut code = EXIT_HOLDS;
    for (outcome, path) in outcomes.into_iter().zip(&args.inputs) {
        let c = finish(outcome.expect("every input processed"), args.common.format, path, many);
        code = code.max(c);
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check(args) => check_cmd(args),
        Command::Almost(args) => finish(almost_cmd(args), args.common.format, &args.input, false),
        Command::Witness(args) => finish(witness_cmd(args), args.common.format, &args.input, false),
        Command::Oracle(args) => finish(oracle_cmd(args), args.common.format, &args.input, false),
        Command::Stats(args) => finish(stats_cmd(args), args.common.format, &args.input, false),
        Command::Gen(args) => gen_cmd(args).unwrap_or_else(|f| {
            eprintln!("error: {}", f.message());
            f.code()
        }),
    };
    ExitCode::from(code)
}
