use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lingroup::analysis::{
    check_linrep_hypotheses, minimality_witness, parity_embedding_check, parity_sample_words, phi_report,
    repetitivity, separation_experiment, theorem_hypothesis_check, verify_hn, HnOptions,
};
use lingroup::graph::WindowUniverse;
use lingroup::group::growth::DEFAULT_MAX_ELEMENTS;
use lingroup::group::{growth_in, order, GroupWord, OrderOptions};
use lingroup::oracle::cross_check;
use lingroup::symbolic::{builtin, load_system, random_markov_segment, AlphaSequence, Alphabet, SubstitutionSystem};
use lingroup::{Error, Exec};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lingroup", version, about = "Growth, torsion and structure experiments for groups of linear Schreier graphs")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Built-in system (grigorchuk, ghat, galpha, fibonacci, dihedral) or `markov`.
    #[arg(long, global = true, default_value = "grigorchuk")]
    system: String,
    /// TOML file describing a substitution system; overrides --system.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// α sequence for galpha, e.g. `s,xy` or `xy,s|x,s` (default: all σ).
    #[arg(long, global = true)]
    alpha: Option<String>,
    #[arg(long, global = true, value_parser = positive)]
    radius: Option<usize>,
    #[arg(long, global = true, value_parser = positive)]
    generations: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Directory for output files; without it results go to stdout.
    #[arg(long, global = true, env = "LINGROUP_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Segments of generations 0..=n.
    Segments,
    /// Growth table γ(0..=n).
    Growth {
        /// Length of the random segment when --system markov.
        #[arg(long, default_value_t = 100_000, value_parser = positive)]
        length: usize,
    },
    /// Order of an element.
    Order { word: String },
    /// Run one of the structural verifications.
    Verify { check: Check },
    /// Distinctness of the separating words in G_α.
    Separate {
        #[arg(default_value_t = 3, value_parser = positive)]
        n: usize,
    },
    /// Occurrence gaps of factors.
    Repetitivity,
    /// Export the window universe.
    Universe,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Hn,
    Phi,
    Parity,
    Hypotheses,
    Oracle,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Output {
    name: &'static str,
    body: String,
    json: bool,
    pass: bool,
}

impl RunConfig {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn alpha(&self) -> lingroup::Result<AlphaSequence> {
        self.alpha.as_deref().map_or(Ok(AlphaSequence::all_sigma()), str::parse)
    }

    fn system(&self) -> lingroup::Result<SubstitutionSystem> {
        match &self.config {
            Some(path) => load_system(path),
            None => builtin(&self.system, Some(&self.alpha()?)),
        }
    }

    fn json(&self, default: bool) -> bool {
        self.format.map_or(default, |f| f == Format::Json)
    }

    fn label(&self) -> String {
        match &self.config {
            Some(p) => p.file_stem().map_or("config".into(), |s| s.to_string_lossy().into_owned()),
            None if self.system == "galpha" => format!("galpha-{}", self.alpha.as_deref().unwrap_or("s")),
            None => self.system.clone(),
        }
    }
}

fn report<T: serde::Serialize + std::fmt::Display>(
    run: &RunConfig,
    name: &'static str,
    value: &T,
    pass: bool,
) -> lingroup::Result<Output> {
    let json = run.json(true);
    let body = if json { to_json(value)? } else { format!("{value}\n") };
    Ok(Output { name, body, json, pass })
}

fn to_json<T: serde::Serialize>(value: &T) -> lingroup::Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Io(e.to_string()))
}

fn segments(run: &RunConfig) -> lingroup::Result<Output> {
    let system = run.system()?;
    let n = run.generations.unwrap_or(3);
    let a = system.alphabet();
    let mut rows = Vec::new();
    for (g, segs) in system.generate(n)?.iter().enumerate() {
        for (name, seg) in system.names().iter().zip(segs.iter()) {
            rows.push((g, name.clone(), seg.len(), seg.to_tokens(a)));
        }
    }
    let json = run.json(false);
    let body = if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(g, name, len, tokens)| json!({"generation": g, "name": name, "length": len, "segment": tokens}))
            .collect();
        to_json(&json!({"system": system.id(), "segments": v}))?
    } else {
        rows.iter().map(|(g, name, len, tokens)| format!("{g}\t{name}\t{len}\t{tokens}\n")).collect()
    };
    Ok(Output { name: "segments", body, json, pass: true })
}

fn growth(run: &RunConfig, length: usize) -> lingroup::Result<Output> {
    let n = run.radius.unwrap_or(6);
    let universe = if run.system == "markov" && run.config.is_none() {
        let alphabet = Alphabet::new(["a", "b", "c"])?;
        let seg = random_markov_segment(&alphabet, length, run.seed)?;
        WindowUniverse::from_segments(
            format!("markov[{length},{}]", run.seed),
            Arc::new(alphabet),
            &[seg.sets().to_vec()],
            n,
            true,
        )?
    } else {
        WindowUniverse::build(&run.system()?, n)?
    };
    let table = growth_in(&universe, n, run.exec(), DEFAULT_MAX_ELEMENTS)?;
    let json = run.json(false);
    let body = if json { to_json(&table)? } else { table.to_tsv() };
    Ok(Output { name: "growth", body, json, pass: true })
}

fn order_cmd(run: &RunConfig, word: &str) -> lingroup::Result<Output> {
    let system = run.system()?;
    let w = GroupWord::parse(system.alphabet(), word)?;
    let r = order(&system, &w, OrderOptions { exec: run.exec(), ..OrderOptions::default() })?;
    let pass = r.order.value().is_some();
    let json = run.json(false);
    let body = if json { to_json(&r)? } else { format!("{}\t{}\n", r.word, r.order) };
    Ok(Output { name: "order", body, json, pass })
}

fn verify(run: &RunConfig, check: Check) -> lingroup::Result<Output> {
    match check {
        Check::Oracle => {
            let r = cross_check(10, 5, 8, run.exec())?;
            report(run, "verify-oracle", &r, r.pass)
        }
        Check::Hn => {
            let system = run.system()?;
            let r = verify_hn(&system, run.generations.unwrap_or(2), &HnOptions::default())?;
            report(run, "verify-hn", &r, r.pass)
        }
        Check::Phi => {
            let r = phi_report(&run.system()?, 200, run.seed, &[])?;
            report(run, "verify-phi", &r, r.pass)
        }
        Check::Parity => {
            let system = run.system()?;
            let n = run.generations.unwrap_or(2);
            let r = parity_embedding_check(&system, n, &parity_sample_words(&system, n)?)?;
            report(run, "verify-parity", &r, r.pass)
        }
        Check::Hypotheses => {
            let system = run.system()?;
            let to = run.generations.unwrap_or(8);
            let linrep = check_linrep_hypotheses(&system, 1, to.max(2), 4, 6)?;
            let theorem = match theorem_hypothesis_check(&system, run.radius.unwrap_or(8)) {
                Ok(t) => Some(t),
                Err(Error::Precondition(_)) => None,
                Err(e) => return Err(e),
            };
            let minimality: Vec<Option<usize>> =
                (1..=3).map(|n| minimality_witness(&system, n, 20)).collect::<lingroup::Result<_>>()?;
            let pass = linrep.pass
                && theorem.as_ref().is_none_or(|t| t.pass)
                && minimality.iter().all(Option::is_some);
            let value = json!({
                "system": system.id(),
                "linear_repetitivity": linrep,
                "symmetric_sequences": theorem,
                "minimality": minimality,
                "pass": pass,
            });
            let json = run.json(true);
            let body = if json {
                to_json(&value)?
            } else {
                let mut s = format!("{linrep}\n");
                if let Some(t) = &theorem {
                    s.push_str(&format!("{t}\n"));
                }
                s.push_str(&format!("minimality witnesses for n = 1..=3: {minimality:?}\n"));
                s
            };
            Ok(Output { name: "verify-hypotheses", body, json, pass })
        }
    }
}

fn separate(run: &RunConfig, n: usize) -> lingroup::Result<Output> {
    let alpha = run.alpha()?;
    let r = separation_experiment(alpha.prefix(), n, run.exec())?;
    report(run, "separate", &r, r.pass)
}

fn repetitivity_cmd(run: &RunConfig) -> lingroup::Result<Output> {
    let system = run.system()?;
    let ambient = match run.generations {
        Some(g) => g,
        None => (0..24)
            .find(|&g| system.longest(g).is_ok_and(|s| s.len() >= 8192))
            .ok_or(Error::ResourceCap("no generation reaches 8192 label sets".into()))?,
    };
    let r = repetitivity(&system, run.radius.unwrap_or(8), ambient, None, run.exec())?;
    report(run, "repetitivity", &r, r.pass)
}

fn universe(run: &RunConfig) -> lingroup::Result<Output> {
    let u = WindowUniverse::build(&run.system()?, run.radius.unwrap_or(4))?;
    Ok(Output { name: "universe", body: u.export(), json: false, pass: true })
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownSystem(_) | Error::InvalidAlpha(_) | Error::Parse(_) | Error::Config(_) | Error::Alphabet(_)
    )
}

fn write(dir: &Path, file: &str, body: &str) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(file);
    fs::write(&path, body)?;
    Ok(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = &cli.run;
    let result = match &cli.command {
        Command::Segments => segments(run),
        Command::Growth { length } => growth(run, *length),
        Command::Order { word } => order_cmd(run, word),
        Command::Verify { check } => verify(run, *check),
        Command::Separate { n } => separate(run, *n),
        Command::Repetitivity => repetitivity_cmd(run),
        Command::Universe => universe(run),
    };
    match result {
        Ok(out) => {
            match &run.out {
                Some(dir) => {
                    let ext = if out.json { "json" } else { "tsv" };
                    let file = format!("{}-{}.{ext}", out.name, run.label());
                    match write(dir, &file, &out.body) {
                        Ok(path) => eprintln!("wrote {}", path.display()),
                        Err(e) => {
                            eprintln!("error: cannot write {file}: {e}");
                            return ExitCode::FAILURE;
                        }
                    }
                }
                None => print!("{}", out.body),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            let payload = json!({"status": "error", "usage": usage_error(&e), "message": e.to_string()});
            println!("{payload}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
