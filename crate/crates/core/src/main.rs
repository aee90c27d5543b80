use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use braidties::algebra::{basis_labels, set_level_guard};
use braidties::braidio::{
    bundled_table, closure_components, load_table, markov_test, parse_braid, parse_singular,
    render_braid, MarkovConfig, TableEntry,
};
use braidties::invariants::{
    delta_bar, gamma_bar, homflypt_oracle, homflypt_specialize, sb_rep, BraidWord, SbLetter,
    SingularBraidWord, HOMFLYPT_NAMES,
};
use braidties::par;
use braidties::partitions::bell;
use braidties::relations::check_relations;
use braidties::report::Report;
use braidties::scalars::{SqrtExt, NVARS, VAR_NAMES};
use braidties::trace::{markov_trace, trace_axiom_suite, RelativeTrace, Sampling};

#[derive(Parser)]
#[command(
    name = "braidties",
    version,
    about = "Braids-and-ties algebra, Markov trace and link invariants"
)]
struct Cli {
    /// Largest strand count accepted by algebra constructors.
    #[arg(long, global = true, default_value_t = braidties::DEFAULT_LEVEL_GUARD)]
    max_level: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The invariant of a classical braid closure.
    Invariant {
        /// `n=<k>; tokens`, or a file with one word per line.
        word: String,
        #[arg(long)]
        json: bool,
        /// Evaluate at a rational point, e.g. `u=2,A=1/3,B=-1`.
        #[arg(long)]
        eval: Option<String>,
        /// Specialize at B = 1 with A renamed z.
        #[arg(long)]
        homflypt: bool,
    },
    /// The invariant of a singular braid closure.
    Singular {
        word: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        eval: Option<String>,
    },
    /// The Markov trace of the image of a word.
    Trace { word: String },
    /// Verify the defining relations at level n.
    CheckRelations {
        #[arg(long)]
        n: usize,
    },
    /// Verify the trace axioms at level n.
    TraceAxioms {
        #[arg(long)]
        n: usize,
        /// Random instances; 0 means exhaustive.
        #[arg(long, default_value_t = 0)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Randomized Markov-move invariance check.
    MarkovTest {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the singular-word scheme.
        #[arg(long)]
        classical_only: bool,
    },
    /// Compare the B = 1 specialization with the Hecke-algebra computation.
    CompareHomflypt {
        /// CSV with header `name,n,word`; the bundled table if omitted.
        #[arg(long)]
        table: Option<String>,
    },
    /// Dimension Bell(n)·n! with an enumeration cross-check.
    Dim {
        #[arg(long)]
        n: usize,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Verification,
    Input(String),
}

type CmdResult = Result<(), Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

/// Inline words, or the non-empty, non-`#` lines of a file.
fn word_texts(arg: &str) -> Result<Vec<String>, Failure> {
    if !arg.trim_start().starts_with('n') && Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(input)?;
        return Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect());
    }
    Ok(vec![arg.to_string()])
}

fn parse_point(text: &str) -> Result<[BigRational; NVARS], Failure> {
    let mut point: [Option<BigRational>; NVARS] = Default::default();
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("bad assignment `{part}`")))?;
        let idx = VAR_NAMES
            .iter()
            .position(|v| *v == name.trim())
            .or_else(|| (name.trim() == "z").then_some(1))
            .ok_or_else(|| Failure::Input(format!("unknown variable `{}`", name.trim())))?;
        let v: BigRational = value
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("bad rational `{}`", value.trim())))?;
        point[idx] = Some(v);
    }
    let [u, a, b] = point;
    match (u, a, b) {
        (Some(u), Some(a), Some(b)) => Ok([u, a, b]),
        (Some(u), Some(a), None) => Ok([u, a, BigRational::from_integer(1.into())]),
        _ => Err(Failure::Input("--eval needs u, A and B".into())),
    }
}

#[derive(Serialize)]
struct ValueJson {
    p: String,
    q: String,
}

#[derive(Serialize)]
struct InvariantJson<'a> {
    n: usize,
    word: String,
    components: usize,
    exponent: i32,
    value: ValueJson,
    vars: Vec<&'a str>,
    sqrt_of: &'a str,
}

struct Shown {
    p: String,
    q: String,
    text: String,
}

fn show(
    v: &SqrtExt,
    homflypt: bool,
    point: Option<&[BigRational; NVARS]>,
) -> Result<Shown, Failure> {
    let (names, label) = if homflypt {
        (&HOMFLYPT_NAMES, "lambda")
    } else {
        (&VAR_NAMES, "L")
    };
    if let Some(pt) = point {
        let (p, q) = v
            .eval(pt)
            .map_err(|_| Failure::Input("the value has a pole at this point".into()))?;
        let zero = BigRational::from_integer(0.into());
        let text = match (p == zero, q == zero) {
            (_, true) => p.to_string(),
            (true, false) => format!("({q})*sqrt({label})"),
            (false, false) => format!("{p} + ({q})*sqrt({label})"),
        };
        return Ok(Shown {
            p: p.to_string(),
            q: q.to_string(),
            text,
        });
    }
    Ok(Shown {
        p: v.p().render_with(names),
        q: v.q().render_with(names),
        text: v.render_with(names, label),
    })
}

#[allow(clippy::too_many_arguments)]
fn emit(
    json: bool,
    homflypt: bool,
    n: usize,
    word: String,
    components: usize,
    exponent: i32,
    shown: Shown,
) -> CmdResult {
    if json {
        let out = InvariantJson {
            n,
            word,
            components,
            exponent,
            value: ValueJson {
                p: shown.p,
                q: shown.q,
            },
            vars: if homflypt {
                vec!["u", "z"]
            } else {
                VAR_NAMES.to_vec()
            },
            sqrt_of: if homflypt { "lambda" } else { "L" },
        };
        println!("{}", serde_json::to_string(&out).map_err(input)?);
    } else {
        println!("{}", shown.text);
    }
    Ok(())
}

fn cmd_invariant(arg: &str, json: bool, eval: Option<&str>, homflypt: bool) -> CmdResult {
    let point = eval.map(parse_point).transpose()?;
    for text in word_texts(arg)? {
        let w = parse_braid(&text).map_err(input)?;
        let mut v = delta_bar(&w).map_err(input)?;
        if homflypt {
            v = homflypt_specialize(&v).map_err(input)?;
        }
        let shown = show(&v, homflypt, point.as_ref())?;
        emit(
            json,
            homflypt,
            w.n(),
            w.to_string(),
            closure_components(&w),
            w.exponent(),
            shown,
        )?;
    }
    Ok(())
}

fn cmd_singular(arg: &str, json: bool, eval: Option<&str>) -> CmdResult {
    let point = eval.map(parse_point).transpose()?;
    for text in word_texts(arg)? {
        let w = parse_singular(&text).map_err(input)?;
        let v = gamma_bar(&w).map_err(input)?;
        let shown = show(&v, false, point.as_ref())?;
        let strands = w
            .letters()
            .iter()
            .map(|l| match l {
                SbLetter::Sigma(s) => *s,
                SbLetter::Tau(t) => *t as i32,
            })
            .collect();
        let shadow = BraidWord::new(w.n(), strands).map_err(input)?;
        emit(
            json,
            false,
            w.n(),
            w.to_string(),
            closure_components(&shadow),
            w.exponent(),
            shown,
        )?;
    }
    Ok(())
}

fn cmd_trace(arg: &str) -> CmdResult {
    for text in word_texts(arg)? {
        let w: SingularBraidWord = parse_singular(&text).map_err(input)?;
        let x = sb_rep(&w).map_err(input)?;
        println!("{}", markov_trace(&x).map_err(input)?);
    }
    Ok(())
}

fn verdict(report: &Report) -> CmdResult {
    print!("{report}");
    if report.passed() {
        println!("all checks passed ({} cases)", report.total_cases());
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_compare(table: Option<&str>) -> CmdResult {
    let rows: Vec<TableEntry> = match table {
        Some(path) => {
            let f = fs::File::open(path).map_err(input)?;
            load_table(f).map_err(input)?
        }
        None => bundled_table(),
    };
    let results = par::map(&rows, |e| -> Result<bool, String> {
        let specialized = delta_bar(&e.braid)
            .and_then(|v| homflypt_specialize(&v))
            .map_err(|err| err.to_string())?;
        let oracle = homflypt_oracle(&e.braid).map_err(|err| err.to_string())?;
        Ok(specialized == oracle)
    });
    let mut ok = true;
    for (e, r) in rows.iter().zip(results) {
        let same = r.map_err(Failure::Input)?;
        ok &= same;
        println!(
            "{} {}  {}",
            if same { "PASS" } else { "FAIL" },
            e.row.name,
            render_braid(&e.braid)
        );
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_dim(n: usize) -> CmdResult {
    if n == 0 || n > braidties::MAX_N {
        return Err(Failure::Input(format!(
            "n must be in 1..={}",
            braidties::MAX_N
        )));
    }
    let fact: u64 = (1..=n as u64).product();
    let b = bell(n);
    let dim = b * fact;
    print!("n={n} bell={b} factorial={fact} dim={dim}");
    if n <= 7 {
        let counted = basis_labels(n).len() as u64;
        println!(" enumerated={counted}");
        if counted != dim {
            return Err(Failure::Verification);
        }
    } else {
        println!();
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    set_level_guard(cli.max_level);
    match cli.cmd {
        Command::Invariant {
            word,
            json,
            eval,
            homflypt,
        } => cmd_invariant(&word, json, eval.as_deref(), homflypt),
        Command::Singular { word, json, eval } => cmd_singular(&word, json, eval.as_deref()),
        Command::Trace { word } => cmd_trace(&word),
        Command::CheckRelations { n } => verdict(&check_relations(n).map_err(input)?),
        Command::TraceAxioms { n, count, seed } => {
            let sampling = if count == 0 {
                Sampling::Exhaustive
            } else {
                Sampling::Random { count, seed }
            };
            verdict(&trace_axiom_suite(n, sampling, &RelativeTrace::default()).map_err(input)?)
        }
        Command::MarkovTest {
            n,
            count,
            seed,
            classical_only,
        } => {
            let mut cfg = MarkovConfig::new(n, count, seed);
            cfg.singular = !classical_only;
            verdict(&markov_test(&cfg).map_err(input)?)
        }
        Command::CompareHomflypt { table } => cmd_compare(table.as_deref()),
        Command::Dim { n } => cmd_dim(n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
