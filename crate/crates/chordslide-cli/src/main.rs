//! Command-line frontend: factor boundary-fixing automorphisms into chord
//! slides, verify certificates by replay, generate seeded test classes,
//! census pairings, render diagrams, and benchmark the two strategies.
//!
//! Exit codes are part of the contract:
//!   0 success
//!   1 unexpected failure
//!   2 I/O error
//!   3 malformed input file
//!   4 boundary word not fixed
//!   5 identity generator image
//!   6 reduction stuck off the basepoint (input is not an automorphism)
//!   7 verification failed (digest or replay)
//!   8 resource cap exceeded

mod census;
mod formats;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use chordslide::diagram::MarkedDiagram;
use chordslide::factor::{factor, random_mapping_class, verify};
use chordslide::freegroup::Basepoint;
use chordslide::reduction::Strategy;
use chordslide::slides::apply_slide;
use chordslide::Error as CoreError;

#[derive(Parser)]
#[command(name = "chordslide", version, about = "Factor mapping classes into chord slides")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Guided,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Guided => Strategy::Guided,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor an automorphism file into a slide certificate
    Factor {
        /// automorphism file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// certificate output file
        #[arg(long)]
        out: Option<PathBuf>,
        /// bare slide-sequence output file (one `pos dir` line per slide)
        #[arg(long)]
        slides_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        /// basepoint file; default is the standard symplectic sequence
        #[arg(long)]
        basepoint: Option<PathBuf>,
        /// abort after this many slides
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Replay a certificate and check it end to end
    Verify {
        /// certificate file (JSON)
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a random mapping class by a seeded slide walk
    Generate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        walk_length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        basepoint: Option<PathBuf>,
    },
    /// Count all pairings of 4g chord ends by boundary-cycle number
    Census {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a diagram or certificate as SVG and ASCII art
    Render {
        /// diagram or certificate file (JSON)
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        svg_out: Option<PathBuf>,
        #[arg(long)]
        ascii_out: Option<PathBuf>,
        /// write the bordered fatgraph of the (first) diagram
        #[arg(long)]
        fatgraph_out: Option<PathBuf>,
        #[arg(long)]
        basepoint: Option<PathBuf>,
    },
    /// Compare strategies on seeded random classes
    Bench {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// classes per walk length
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// comma-separated walk lengths
        #[arg(long, default_value = "5,10,20")]
        walk_lengths: String,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(core) = err.downcast_ref::<CoreError>() {
        return match core {
            CoreError::BoundaryNotFixed { .. } => 4,
            CoreError::IdentityImage { .. } => 5,
            CoreError::StuckNotAtBasepoint => 6,
            CoreError::StepLimitExceeded { .. } | CoreError::ShapeRecurrenceTimeout { .. } => 8,
            _ => 3,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    if let Some(cli) = err.downcast_ref::<CliFailure>() {
        return cli.code;
    }
    // serde and hand-rolled parse errors
    if err.chain().any(|c| c.downcast_ref::<serde_json::Error>().is_some()) {
        return 3;
    }
    3
}

/// Failure with a pinned exit code.
#[derive(Debug)]
struct CliFailure {
    code: u8,
    message: String,
}

impl std::fmt::Display for CliFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliFailure {}

fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(CliFailure { code, message: message.into() })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_or_print(path: Option<&PathBuf>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn load_basepoint(genus: usize, path: Option<&PathBuf>) -> Result<Arc<Basepoint>> {
    match path {
        None => Ok(Arc::new(Basepoint::standard(genus))),
        Some(p) => {
            let base = formats::parse_basepoint_file(&read_file(p)?)?;
            if base.genus() != genus {
                bail!("basepoint genus {} does not match requested genus {genus}", base.genus());
            }
            Ok(Arc::new(base))
        }
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Factor { input, out, slides_out, strategy, basepoint, max_steps } => {
            let text = read_file(&input)?;
            let doc: formats::AutomorphismDoc =
                serde_json::from_str(&text).context("bad automorphism file")?;
            if doc.genus == 0 {
                bail!("genus must be positive");
            }
            let base = load_basepoint(doc.genus, basepoint.as_ref())?;
            let phi = formats::doc_to_automorphism(&doc, base.clone())?;
            let cert = factor(&phi, strategy.into(), max_steps)?;
            print!("{}", formats::trace_to_text(base.genus(), &cert.trace));
            if let Some(path) = out {
                write_file(&path, &formats::certificate_to_json(&cert))?;
            }
            if let Some(path) = slides_out {
                write_file(&path, &formats::slides_to_text(&cert.trace.slides))?;
            }
            Ok(())
        }
        Cmd::Verify { input } => {
            let loaded = formats::certificate_from_json(&read_file(&input)?)?;
            if !loaded.digest_ok {
                return Err(fail(7, "certificate digest does not match its content"));
            }
            let outcome = verify(&loaded.certificate);
            if !outcome.ok {
                let reason = outcome.failure.unwrap_or_default();
                return Err(fail(7, format!("certificate replay failed: {reason}")));
            }
            println!(
                "ok: {} slides, energy {} -> {}",
                loaded.certificate.trace.len(),
                loaded.certificate.trace.initial_energy(),
                loaded.certificate.trace.final_energy()
            );
            Ok(())
        }
        Cmd::Generate { genus, walk_length, seed, out, basepoint } => {
            if genus == 0 {
                bail!("genus must be positive");
            }
            let base = load_basepoint(genus, basepoint.as_ref())?;
            let phi = random_mapping_class(&base, walk_length, seed)?;
            write_or_print(out.as_ref(), &formats::automorphism_to_json(&phi))
        }
        Cmd::Census { genus, out } => {
            if genus == 0 {
                bail!("genus must be positive");
            }
            if genus > 4 {
                return Err(fail(8, format!("census brute force is capped at genus 4, got {genus}")));
            }
            let report = census::run_census(genus);
            if !report.tracers_agree {
                return Err(fail(1, "boundary tracers disagree"));
            }
            write_or_print(out.as_ref(), &report.to_text())
        }
        Cmd::Render { input, svg_out, ascii_out, fatgraph_out, basepoint } => {
            let text = read_file(&input)?;
            let frames = load_frames(&text, basepoint.as_ref())?;
            if let Some(path) = fatgraph_out {
                let g = chordslide::fatgraph::from_pairing(frames[0].1.shape().pairing()).graph;
                write_file(&path, &formats::fatgraph_to_text(&g))?;
            }
            if let Some(path) = svg_out {
                write_file(&path, &render::svg_frames(&frames))?;
            }
            match ascii_out {
                Some(path) => write_file(&path, &render::ascii_frames(&frames))?,
                None => print!("{}", render::ascii_frames(&frames)),
            }
            Ok(())
        }
        Cmd::Bench { genus, seed, count, walk_lengths, max_steps, out } => {
            if genus == 0 {
                bail!("genus must be positive");
            }
            let lengths: Vec<usize> = walk_lengths
                .split(',')
                .map(|s| s.trim().parse().context("bad walk length list"))
                .collect::<Result<_>>()?;
            let report = run_bench(genus, seed, count, &lengths, max_steps)?;
            write_or_print(out.as_ref(), &report)
        }
    }
}

/// A render input is either a diagram record or a certificate; certificates
/// are replayed into one frame per state.
fn load_frames(text: &str, basepoint: Option<&PathBuf>) -> Result<Vec<(String, MarkedDiagram)>> {
    let value: serde_json::Value = serde_json::from_str(text).context("bad render input")?;
    if value.get("labels").is_some() {
        let doc: formats::DiagramDoc = serde_json::from_value(value)?;
        if doc.genus == 0 {
            bail!("genus must be positive");
        }
        let base = load_basepoint(doc.genus, basepoint)?;
        let d = formats::doc_to_diagram(&doc, base)?;
        return Ok(vec![("diagram".to_string(), d)]);
    }
    if value.get("slides").is_some() {
        let loaded = formats::certificate_from_json(text)?;
        let cert = loaded.certificate;
        let mut d = cert.automorphism.to_diagram();
        let mut frames = vec![("initial".to_string(), d.clone())];
        for (i, rec) in cert.trace.slides.iter().enumerate() {
            d = apply_slide(&d, rec.slide).map_err(anyhow::Error::new)?;
            frames.push((format!("step {}: slide {}", i + 1, rec.slide), d.clone()));
        }
        return Ok(frames);
    }
    Err(anyhow!("input is neither a diagram nor a certificate"))
}

fn median(mut values: Vec<usize>) -> usize {
    values.sort_unstable();
    values[values.len() / 2]
}

/// Deterministic report of per-strategy slide counts; wall-clock timings go
/// to stderr so the written artifact is byte-stable across runs.
fn run_bench(
    genus: usize,
    seed: u64,
    count: usize,
    lengths: &[usize],
    max_steps: Option<usize>,
) -> Result<String> {
    use std::fmt::Write as _;
    if count == 0 {
        bail!("count must be positive");
    }
    let base = Arc::new(Basepoint::standard(genus));
    let mut out = String::new();
    writeln!(out, "genus {genus} seed {seed} count {count}").unwrap();
    for &len in lengths {
        let mut steps = [Vec::new(), Vec::new()];
        let mut elapsed = [0.0f64; 2];
        for k in 0..count {
            let phi = random_mapping_class(&base, len, seed.wrapping_add(k as u64))?;
            for (i, strategy) in [Strategy::Exhaustive, Strategy::Guided].into_iter().enumerate() {
                let t0 = Instant::now();
                let cert = factor(&phi, strategy, max_steps)?;
                elapsed[i] += t0.elapsed().as_secs_f64();
                steps[i].push(cert.trace.len());
            }
        }
        writeln!(
            out,
            "walk_length {len}: exhaustive_median_steps {} guided_median_steps {}",
            median(steps[0].clone()),
            median(steps[1].clone())
        )
        .unwrap();
        eprintln!(
            "walk_length {len}: exhaustive {:.3}s guided {:.3}s over {count} classes",
            elapsed[0], elapsed[1]
        );
    }
    Ok(out)
}
