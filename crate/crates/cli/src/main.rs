use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use submin_core::report::{analyze_substitution, batch, write_csv, BatchEntry};
use submin_core::{
    bounded_language, build_periodic_substitution, complexity_profile, decide_minimality, expand,
    AnalysisConfig, Error, Exec, ExpansionBudget, Substitution,
};

#[derive(Parser)]
#[command(
    name = "submin",
    version,
    about = "Minimality analysis for substitution subshifts"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Longest factor length for tables, recurrence and certificates.
    #[arg(long, global = true, default_value_t = 6)]
    k: usize,
    /// Length up to which the bounded language is computed.
    #[arg(long, global = true, default_value_t = 24)]
    horizon: usize,
    /// Iteration bound for witness searches (default 2|A| + 4).
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Window length for the uniform recurrence check.
    #[arg(long, global = true, default_value_t = 2000)]
    window: usize,
    /// Half-width of scanned segments x[-M, M].
    #[arg(long = "M", global = true, default_value_t = 5000)]
    m: usize,
    /// Longest word an expansion may materialize.
    #[arg(long = "max-len", global = true, default_value_t = 1_000_000)]
    max_len: usize,
    /// Highest power an expansion may reach.
    #[arg(long = "max-pow", global = true, default_value_t = 64)]
    max_pow: usize,
    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// CSV summary instead of JSON (batch only).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Run batches on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one .sub file.
    Analyze { file: PathBuf },
    /// Reports for every .sub file in a directory.
    Batch { dir: PathBuf },
    /// Growing and bounded letters, constants and reachability.
    Classify { file: PathBuf },
    /// Isolation, tameness and gaps.
    Tame { file: PathBuf },
    /// l-primitivity and the set-map trajectories.
    Lprimitive { file: PathBuf },
    /// The verdict with its evidence.
    Minimal { file: PathBuf },
    /// σⁿ(letter).
    Expand {
        file: PathBuf,
        letter: char,
        n: usize,
    },
    /// Bounded language up to length k.
    Language { file: PathBuf },
    /// Subshift-table complexity up to length k.
    Complexity { file: PathBuf },
    /// Seed, window sample, bounded-gap constants and recurrence.
    Fixpoint { file: PathBuf },
    /// Bi-extendability conditions on the language.
    DlCheck { file: PathBuf },
    /// Substitution whose subshift is the orbit of word^∞.
    MakePeriodic { word: String },
}

const CLASSIFY_KEYS: &[&str] = &[
    "input",
    "A_l",
    "A_s",
    "growth_witness",
    "n_s",
    "p_s",
    "k_s",
    "stable_words",
    "arrow",
    "A_circ",
    "A_circ_l",
    "A_min_l",
    "classes",
    "r",
];
const TAME_KEYS: &[&str] = &["input", "A_l", "isolation", "tame", "e_s", "gap"];
const LPRIM_KEYS: &[&str] = &["input", "A_l", "l_primitive", "set_trajectories"];
const MINIMAL_KEYS: &[&str] = &["input", "verdict"];
const FIXPOINT_KEYS: &[&str] = &[
    "input",
    "seed",
    "window",
    "d_prime",
    "recurrence",
    "repetitivity",
];
const DL_KEYS: &[&str] = &["input", "damanik_lenz"];

impl Opts {
    fn budget(&self) -> Result<ExpansionBudget, Error> {
        ExpansionBudget::new(self.max_len, self.max_pow)
    }

    fn config(&self) -> Result<AnalysisConfig, Error> {
        let config = AnalysisConfig {
            k: self.k,
            horizon: self.horizon,
            n_max: self.nmax,
            window: self.window,
            m: self.m,
            budget: self.budget()?,
        };
        config.validate()?;
        Ok(config)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

fn load(path: &Path) -> Result<(String, Substitution), Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok((name, Substitution::parse(&text)?))
}

fn report(opts: &Opts, path: &Path) -> Result<Value, Error> {
    let (name, sub) = load(path)?;
    Ok(analyze_substitution(&name, &sub, &opts.config()?, opts.timing)?.json)
}

fn pick(full: Value, keys: &[&str]) -> Value {
    let mut out = Map::new();
    for &k in keys {
        out.insert(k.into(), full.get(k).cloned().unwrap_or(Value::Null));
    }
    Value::Object(out)
}

fn run(cli: &Cli) -> Result<Option<Value>, Error> {
    let opts = &cli.opts;
    let value = match &cli.command {
        Command::Analyze { file } => report(opts, file)?,
        Command::Classify { file } => pick(report(opts, file)?, CLASSIFY_KEYS),
        Command::Tame { file } => pick(report(opts, file)?, TAME_KEYS),
        Command::Lprimitive { file } => pick(report(opts, file)?, LPRIM_KEYS),
        Command::Minimal { file } => pick(report(opts, file)?, MINIMAL_KEYS),
        Command::Fixpoint { file } => pick(report(opts, file)?, FIXPOINT_KEYS),
        Command::DlCheck { file } => pick(report(opts, file)?, DL_KEYS),
        Command::Batch { dir } => {
            let entries = batch(dir, &opts.config()?, opts.exec())?;
            for entry in &entries {
                if let Err(e) = &entry.outcome {
                    eprintln!("{}: {e}", entry.path.display());
                }
            }
            let rows: Vec<_> = entries.iter().map(BatchEntry::row).collect();
            if opts.csv {
                write_csv(io::stdout().lock(), &rows)?;
                return Ok(None);
            }
            let reports: Vec<Value> = entries
                .iter()
                .map(|e| e.outcome.as_ref().map_or(Value::Null, |r| r.json.clone()))
                .collect();
            json!({ "summary": rows, "reports": reports })
        }
        Command::Expand { file, letter, n } => {
            let (_, sub) = load(file)?;
            let a = sub.letter(*letter).ok_or_else(|| {
                Error::PreconditionFailed(format!("no rule for letter {letter:?}"))
            })?;
            let w = expand(&sub, a, *n, opts.budget()?)?;
            json!({ "letter": letter.to_string(), "n": n, "length": w.len(), "word": sub.render(&w) })
        }
        Command::Language { file } => {
            let (_, sub) = load(file)?;
            let lang = bounded_language(&sub, opts.k);
            let by_len: Vec<Value> = (1..=opts.k)
                .map(|j| {
                    let words: Vec<String> = lang.words_of_len(j).map(|w| sub.render(w)).collect();
                    json!({ "length": j, "count": words.len(), "words": words })
                })
                .collect();
            json!({ "k": opts.k, "saturated": lang.saturated, "lengths": by_len })
        }
        Command::Complexity { file } => {
            let (_, sub) = load(file)?;
            let p = complexity_profile(&sub, opts.k, opts.horizon)?;
            let orbits = p
                .orbits
                .as_ref()
                .map(|o| o.iter().map(|w| sub.render(w)).collect::<Vec<_>>());
            json!({
                "horizon": p.horizon,
                "counts": p.counts,
                "stabilized_at": p.stabilized_at,
                "orbits": orbits,
            })
        }
        Command::MakePeriodic { word } => {
            let sub = build_periodic_substitution(word)?;
            let v = decide_minimality(&sub, &opts.config()?)?;
            json!({
                "word": word,
                "rules": sub.to_string(),
                "verdict": v.verdict.to_string(),
                "single_periodic_orbit": v.single_periodic_orbit,
            })
        }
    };
    Ok(Some(value))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownLetter { .. } => 2,
        Error::NotASubstitution => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(value)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            let mut out = io::stdout().lock();
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
