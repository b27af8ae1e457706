use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pathrw::confluence::{check_joinable, superpose};
use pathrw::ordering::{check_rule_orientation, OperatorStatus, Precedence, Rpo};
use pathrw::pi1::{canonicalize, Pi1Error, Surface, SurfaceElement};
use pathrw::{parse, Normalizer, RuleSet, Strategy, Symbol, Term, TrsError};

#[derive(Parser)]
#[command(name = "pathrw", version, about = "Rewriting for computational paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FragmentArg {
    /// All 39 rules.
    All,
    /// Rules over rho, sigma, tau, subL, subR only.
    Core,
    /// Rules 1-6, 25 and 37-39.
    Groupoid,
}

impl FragmentArg {
    fn rules(self) -> RuleSet {
        match self {
            FragmentArg::All => RuleSet::standard().clone(),
            FragmentArg::Core => RuleSet::core(),
            FragmentArg::Groupoid => RuleSet::groupoid(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TauStatus {
    Lex,
    Multiset,
}

#[derive(clap::Args)]
struct RunOpts {
    /// outermost, innermost or random
    #[arg(long, default_value = "outermost")]
    strategy: String,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = pathrw::trs::DEFAULT_STEP_LIMIT)]
    step_limit: usize,
    #[arg(long, value_enum, default_value = "all")]
    fragment: FragmentArg,
}

impl RunOpts {
    fn strategy(&self) -> Result<Strategy, CliError> {
        match self.strategy.as_str() {
            "random" => Ok(Strategy::Random(self.seed)),
            s => s.parse().map_err(CliError::Input),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of each term.
    Normalize {
        terms: Vec<String>,
        /// Read terms from a file, one per line.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Decide rw-equality; exits 0 when equal and 1 otherwise.
    Equal {
        left: String,
        right: String,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Print the full reduction of a term.
    Trace {
        term: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Check that every rule is oriented by the recursive path ordering.
    RpoCheck {
        #[arg(long, value_enum, default_value = "lex")]
        tau_status: TauStatus,
        #[arg(long, value_enum, default_value = "core")]
        fragment: FragmentArg,
        /// Extra precedence pair such as `tau>subR`; repeatable.
        #[arg(long = "prec")]
        prec: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate critical pairs and check that each is joinable.
    CriticalPairs {
        #[arg(long, value_enum, default_value = "core")]
        fragment: FragmentArg,
        /// Rule names to leave out, comma separated.
        #[arg(long, value_delimiter = ',')]
        without: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Canonical fundamental group element of a loop.
    Pi1 {
        /// circle, torus or rp2
        surface: String,
        term: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum CliError {
    /// Bad input: exit 2.
    Input(String),
    /// Step limit: exit 3.
    StepLimit(String),
}

impl From<TrsError> for CliError {
    fn from(e: TrsError) -> CliError {
        match e {
            TrsError::StepLimitExceeded { .. } => CliError::StepLimit(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<Pi1Error> for CliError {
    fn from(e: Pi1Error) -> CliError {
        match e {
            Pi1Error::Trs(e) => e.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

/// Output plus the exit status for a completed check.
struct Outcome {
    out: String,
    ok: bool,
}

fn parse_term(text: &str) -> Result<Term, CliError> {
    parse(text).map_err(|e| CliError::Input(format!("{e}\n  in: {text}")))
}

fn normalize_all(terms: &[String], trace: bool, format: Format, run: &RunOpts) -> Result<Outcome, CliError> {
    let rules = run.fragment.rules();
    let n = Normalizer::new(&rules)
        .strategy(run.strategy()?)
        .step_limit(run.step_limit);
    let mut out = String::new();
    for text in terms {
        let t = parse_term(text)?;
        let tr = n.run(&t)?;
        match format {
            Format::Text => {
                if trace {
                    out.push_str(&tr.to_text());
                }
                writeln!(out, "{}", tr.final_term()).unwrap();
            }
            Format::Json => {
                if trace {
                    out.push_str(&tr.to_json_lines());
                }
                let rec = json!({
                    "term": t.to_string(),
                    "normal_form": tr.final_term().to_string(),
                    "steps": tr.len(),
                });
                writeln!(out, "{rec}").unwrap();
            }
        }
    }
    Ok(Outcome { out, ok: true })
}

fn read_terms(terms: Vec<String>, file: Option<PathBuf>) -> Result<Vec<String>, CliError> {
    let mut all = terms;
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        all.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    if all.is_empty() {
        return Err(CliError::Input("no terms given".into()));
    }
    Ok(all)
}

fn parse_prec(text: &str) -> Result<(Symbol, Symbol), CliError> {
    let bad = || CliError::Input(format!("bad precedence pair `{text}` (expected e.g. tau>subR)"));
    let (f, g) = text.split_once('>').ok_or_else(bad)?;
    let f = Symbol::from_name(f.trim()).ok_or_else(bad)?;
    let g = Symbol::from_name(g.trim()).ok_or_else(bad)?;
    Ok((f, g))
}

fn rpo_check(tau_status: TauStatus, fragment: FragmentArg, prec: &[String], format: Format) -> Result<Outcome, CliError> {
    let mut precedence = Precedence::standard();
    for p in prec {
        let (f, g) = parse_prec(p)?;
        precedence = precedence
            .with(f, g)
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let status = match tau_status {
        TauStatus::Lex => OperatorStatus::standard(),
        TauStatus::Multiset => OperatorStatus::all_multiset(),
    };
    let report = check_rule_orientation(&fragment.rules(), &Rpo::new(precedence, status));
    let out = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json_lines(),
    };
    Ok(Outcome {
        out,
        ok: report.all_oriented(),
    })
}

fn critical_pairs(fragment: FragmentArg, without: &[String], format: Format) -> Result<Outcome, CliError> {
    let base = fragment.rules();
    if let Some(name) = without.iter().find(|n| base.get(n).is_none()) {
        return Err(TrsError::UnknownRule(name.clone()).into());
    }
    let names: Vec<&str> = without.iter().map(String::as_str).collect();
    let rules = base.without(&names);
    let n = Normalizer::new(&rules);
    let mut out = String::new();
    let mut bad = 0;
    let cps = superpose(&rules);
    for cp in &cps {
        let cp = check_joinable(cp, &n)?;
        let joinable = cp.joinable == Some(true);
        bad += usize::from(!joinable);
        match format {
            Format::Text => writeln!(out, "{cp}").unwrap(),
            Format::Json => {
                let (l, r) = cp.normal_forms.as_ref().expect("checked");
                let rec = json!({
                    "outer": cp.outer,
                    "inner": cp.inner,
                    "position": cp.position.to_string(),
                    "peak": cp.peak.to_string(),
                    "left": cp.left.to_string(),
                    "right": cp.right.to_string(),
                    "left_nf": l.to_string(),
                    "right_nf": r.to_string(),
                    "joinable": joinable,
                });
                writeln!(out, "{rec}").unwrap();
            }
        }
    }
    if let Format::Text = format {
        writeln!(out, "{} critical pairs, {} not joinable", cps.len(), bad).unwrap();
    }
    Ok(Outcome { out, ok: bad == 0 })
}

fn element_json(e: SurfaceElement) -> serde_json::Value {
    match e {
        SurfaceElement::Circle(n) => json!(n),
        SurfaceElement::Torus(m, n) => json!([m, n]),
        SurfaceElement::ProjectivePlane(b) => json!(b),
    }
}

fn pi1(surface: &str, term: &str, trace: bool, format: Format) -> Result<Outcome, CliError> {
    let surface: Surface = surface.parse()?;
    let t = parse_term(term)?;
    let c = canonicalize(surface, &t)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "{}", c.element).unwrap();
            writeln!(out, "word: {}", c.word).unwrap();
            writeln!(out, "reduced: {}", c.final_word()).unwrap();
            if trace {
                out.push_str(&c.trace_text());
            }
        }
        Format::Json => {
            let rec = json!({
                "surface": surface.name(),
                "element": element_json(c.element),
                "word": c.word.to_string(),
                "reduced": c.final_word().to_string(),
            });
            writeln!(out, "{rec}").unwrap();
        }
    }
    Ok(Outcome { out, ok: true })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Normalize {
            terms,
            file,
            trace,
            format,
            run,
        } => normalize_all(&read_terms(terms, file)?, trace, format, &run),
        Command::Trace { term, format, run } => normalize_all(&[term], true, format, &run),
        Command::Equal {
            left,
            right,
            trace,
            run,
        } => {
            let (s, t) = (parse_term(&left)?, parse_term(&right)?);
            let rules = run.fragment.rules();
            let n = Normalizer::new(&rules)
                .strategy(run.strategy()?)
                .step_limit(run.step_limit);
            let eq = pathrw::trs::rw_equal_with(&n, &s, &t)?;
            let mut out = String::new();
            if trace {
                out.push_str(&eq.left.to_text());
                out.push_str(&eq.right.to_text());
            }
            writeln!(out, "{}", eq.equal).unwrap();
            Ok(Outcome { out, ok: eq.equal })
        }
        Command::RpoCheck {
            tau_status,
            fragment,
            prec,
            format,
        } => rpo_check(tau_status, fragment, &prec, format),
        Command::CriticalPairs {
            fragment,
            without,
            format,
        } => critical_pairs(fragment, &without, format),
        Command::Pi1 {
            surface,
            term,
            trace,
            format,
        } => pi1(&surface, &term, trace, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) => {
            print!("{}", o.out);
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::StepLimit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
