use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use block_workbench::char_theory::BlockCharacters;
use block_workbench::group_build::BlockSpec;
use block_workbench::picard_report::picard_report;
use block_workbench::report::{
    action_report, characters_report, check_block, decomposition_report, isometries_report, qci_report, verify_all, Options,
};
use block_workbench::WbError;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "blockwb", version, about = "Blocks with normal abelian defect group and abelian inertial quotient")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for enumerations and scans
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest |Irr(B)| for perfect-isometry enumeration
    #[arg(long = "max-irr", global = true)]
    max_irr: Option<usize>,
    /// Directory for report files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Samples per T-invariance scan when the space is not searched exhaustively
    #[arg(long, global = true)]
    samples: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    AnalyzeAction { spec: PathBuf },
    Characters { spec: PathBuf },
    Decomposition { spec: PathBuf },
    QMatrix { spec: PathBuf },
    Isometries { spec: PathBuf },
    Picard { spec: PathBuf },
    VerifyAll { spec: Option<PathBuf> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

struct Emitter<'a> {
    out: Option<&'a Path>,
    format: Format,
}

impl Emitter<'_> {
    fn emit<T: Serialize>(&self, file: &str, value: &T, text: String) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(value)? + "\n";
        if let Some(dir) = self.out {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join(format!("{file}.json")), &json)?;
            if file == "picard" {
                fs::write(dir.join("picard.txt"), &text)?;
            }
        }
        match self.format {
            Format::Json => print!("{json}"),
            Format::Text => print!("{text}"),
        }
        Ok(())
    }
}

fn load(path: &Path) -> anyhow::Result<BlockSpec> {
    let s = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut spec = BlockSpec::from_json(&s)?;
    if spec.name.is_empty() {
        spec.name = path.file_stem().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    }
    Ok(spec)
}

fn options(cli: &Cli, spec: Option<&BlockSpec>) -> Options {
    let limits = spec.and_then(|s| s.file.limits.clone()).unwrap_or_default();
    let mut o = Options::default();
    if let Some(s) = cli.seed.or(limits.seed) {
        o.seed = s;
    }
    if let Some(k) = cli.max_irr.or(limits.max_irr) {
        o.max_irr = k;
    }
    if let Some(n) = cli.samples {
        o.samples = n;
    }
    o
}

fn block(spec: &BlockSpec) -> anyhow::Result<BlockCharacters> {
    let b = BlockCharacters::compute(spec)?;
    check_block(spec, &b)?;
    Ok(b)
}

/// Exit code 2 marks a failed verification; everything else is 1.
fn run(cli: &Cli) -> anyhow::Result<u8> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    let em = Emitter {
        out: cli.out.as_deref(),
        format: cli.format,
    };
    match &cli.cmd {
        Cmd::AnalyzeAction { spec } => {
            let spec = load(spec)?;
            let r = action_report(&spec.l_action()?)?;
            em.emit("action", &r, r.text())?;
        }
        Cmd::Characters { spec } => {
            let spec = load(spec)?;
            let r = characters_report(&spec, &block(&spec)?);
            em.emit("characters", &r, r.text())?;
        }
        Cmd::Decomposition { spec } => {
            let spec = load(spec)?;
            let r = decomposition_report(&spec, &block(&spec)?)?;
            em.emit("decomposition", &r, r.text())?;
        }
        Cmd::QMatrix { spec } => {
            let spec = load(spec)?;
            let r = qci_report(&spec, &options(cli, Some(&spec)))?;
            em.emit("qci", &r, r.text())?;
            if !r.pass() {
                return Ok(2);
            }
        }
        Cmd::Isometries { spec } => {
            let spec = load(spec)?;
            let o = options(cli, Some(&spec));
            let r = isometries_report(&spec, &block(&spec)?, o.max_irr)?;
            em.emit("isometries", &r, r.text())?;
            if !r.summary.violations.is_empty() || !r.summary.contains_plus_minus_id {
                return Ok(2);
            }
        }
        Cmd::Picard { spec } => {
            let spec = load(spec)?;
            let o = options(cli, Some(&spec));
            let r = picard_report(&spec, &block(&spec)?, o.max_irr)?;
            em.emit("picard", &r, r.text())?;
            if !r.consistent() {
                return Ok(2);
            }
        }
        Cmd::VerifyAll { spec } => {
            let spec = spec.as_deref().map(load).transpose()?;
            let o = options(cli, spec.as_ref());
            let r = verify_all(spec.as_ref(), &o);
            em.emit("verify", &r, r.text())?;
            if let Some(s) = &spec {
                if let Some(dir) = em.out {
                    let b = block(s)?;
                    let p = picard_report(s, &b, o.max_irr)?;
                    fs::write(dir.join("picard.json"), serde_json::to_string_pretty(&p)? + "\n")?;
                    fs::write(dir.join("picard.txt"), p.text())?;
                }
            }
            if r.failures() > 0 {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            let verification = e.downcast_ref::<WbError>().is_some_and(WbError::is_verification);
            ExitCode::from(if verification { 2 } else { 1 })
        }
    }
}
