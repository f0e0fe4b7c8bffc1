use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcindex::{Config, Index, Mode};

mod check;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "dcix", version, about = "Sampled suffix-tree text index")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an index file from a text.
    Build(BuildArgs),
    /// Print one occurrence count per pattern.
    Count(QueryArgs),
    /// Print sorted occurrence positions, one line per pattern.
    Locate(QueryArgs),
    /// Compare the index against brute-force search on random queries.
    Selfcheck(CheckArgs),
    /// Component sizes in bits.
    Stats(OpenArgs),
    /// Query latency and operation counters over a generated workload.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One symbol per byte.
    Raw,
    /// One little-endian u16 per symbol.
    Sym16,
}

#[derive(Args)]
struct BuildArgs {
    text: PathBuf,
    #[arg(short, long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    format: Format,
    /// Alphabet size (default: largest code + 1).
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    x0_period: Option<usize>,
    #[arg(long = "x0-maxlen")]
    x0_max_len: Option<usize>,
    #[arg(long)]
    fast_report: bool,
    /// Store the text inside the index file.
    #[arg(long)]
    embed_text: bool,
}

#[derive(Args)]
pub struct OpenArgs {
    index: PathBuf,
    /// Text file, required unless the index embeds it.
    #[arg(long)]
    text: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    format: Format,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    open: OpenArgs,
    pattern: Option<String>,
    /// One pattern per line.
    #[arg(long, conflicts_with = "pattern")]
    patterns: Option<PathBuf>,
    /// Patterns are comma-separated integer codes instead of bytes.
    #[arg(long)]
    codes: bool,
    /// Answer patterns one at a time on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
pub struct CheckArgs {
    /// An index file, or a text to build from.
    pub path: PathBuf,
    #[arg(long)]
    pub text: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    pub format: Format,
    #[arg(long, default_value_t = 1000)]
    pub queries: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub open: OpenArgs,
    #[arg(long, default_value_t = 2000)]
    pub queries: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Longest generated pattern.
    #[arg(long, default_value_t = 64)]
    pub max_len: usize,
}

pub fn read_text(path: &Path, format: Format) -> Res<Vec<u32>> {
    let bytes = fs::read(path)?;
    Ok(match format {
        Format::Raw => bytes.iter().map(|&b| b as u32).collect(),
        Format::Sym16 => {
            if bytes.len() % 2 != 0 {
                return Err(format!("{}: odd length for 16-bit symbols", path.display()).into());
            }
            bytes.chunks(2).map(|c| u16::from_le_bytes([c[0], c[1]]) as u32).collect()
        }
    })
}

/// Index plus the text in code form.
pub fn open(args: &OpenArgs) -> Res<(Index, Vec<u32>)> {
    let data = fs::read(&args.index)?;
    let text = args.text.as_ref().map(|p| read_text(p, args.format)).transpose()?;
    let idx = Index::from_bytes(&data, text.as_deref())?;
    let codes = match text {
        Some(t) => t,
        None => idx.text().codes(),
    };
    Ok((idx, codes))
}

fn build(a: &BuildArgs) -> Res<()> {
    let codes = read_text(&a.text, a.format)?;
    let sigma = a.sigma.unwrap_or_else(|| codes.iter().max().map_or(2, |&m| (m + 1).max(2)));
    let cfg = Config {
        r: a.r,
        x0_period: a.x0_period,
        x0_max_len: a.x0_max_len,
        fast_report: a.fast_report,
        ..Config::default()
    };
    let idx = Index::build(&codes, sigma, &cfg)?;
    idx.save_file(&a.out, a.embed_text)?;
    let p = idx.params();
    eprintln!(
        "indexed {} symbols (sigma {}, r {}, period {}, max len {}) -> {}",
        idx.len(),
        sigma,
        p.r,
        p.x0_period,
        p.x0_max_len,
        a.out.display()
    );
    Ok(())
}

fn parse_pattern(s: &str, codes: bool) -> Res<Vec<u32>> {
    if !codes {
        return Ok(s.bytes().map(|b| b as u32).collect());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad code {t:?}: {e}").into()))
        .collect()
}

fn patterns(a: &QueryArgs) -> Res<Vec<Vec<u32>>> {
    match (&a.pattern, &a.patterns) {
        (Some(p), None) => Ok(vec![parse_pattern(p, a.codes)?]),
        (None, Some(f)) => {
            let text = fs::read(f)?;
            let mut out = Vec::new();
            for line in text.split(|&b| b == b'\n') {
                let line = line.strip_suffix(b"\r").unwrap_or(line);
                if a.codes {
                    out.push(parse_pattern(std::str::from_utf8(line)?, true)?);
                } else {
                    out.push(line.iter().map(|&b| b as u32).collect());
                }
            }
            if text.ends_with(b"\n") {
                out.pop();
            }
            Ok(out)
        }
        _ => Err("give a pattern or --patterns FILE".into()),
    }
}

fn query(a: &QueryArgs, locate: bool) -> Res<()> {
    let (idx, _) = open(&a.open)?;
    let pats = patterns(a)?;
    let mode = if a.sequential { Mode::Sequential } else { Mode::Parallel };
    let mut out = BufWriter::new(io::stdout().lock());
    if locate {
        for occ in idx.locate_batch(&pats, mode).0 {
            let line: Vec<String> = occ.iter().map(usize::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
    } else {
        for c in idx.count_batch(&pats, mode).0 {
            writeln!(out, "{c}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn stats(a: &OpenArgs) -> Res<()> {
    let (idx, _) = open(a)?;
    let s = idx.stats();
    let mut out = io::stdout().lock();
    writeln!(out, "n               {}", s.n)?;
    writeln!(out, "sigma           {}", s.sigma)?;
    writeln!(out, "r               {}", s.r)?;
    writeln!(out, "block           {}", s.block)?;
    writeln!(out, "meta width      {}", s.meta_width)?;
    writeln!(out, "selected        {}", s.selected)?;
    writeln!(out, "tree nodes      {}", s.tree_nodes)?;
    writeln!(out, "short names     {}", s.short_names)?;
    writeln!(out, "x0 period       {}", s.params.x0_period)?;
    writeln!(out, "x0 max len      {}", s.params.x0_max_len)?;
    writeln!(out, "fast report     {}", s.params.fast_report)?;
    for (run, k) in &s.points_per_class {
        writeln!(out, "points run {run:<4} {k}")?;
    }
    writeln!(out)?;
    writeln!(out, "{:<16}{:>14}", "component", "bits")?;
    for (name, bits) in &s.bits {
        writeln!(out, "{name:<16}{bits:>14}")?;
    }
    let total = s.total_bits();
    writeln!(out, "{:<16}{:>14}", "total", total)?;
    let nlogn = s.n as f64 * (s.n as f64).log2().max(1.0);
    writeln!(out, "bits / n log n  {:.4}", total as f64 / nlogn)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Build(a) => build(a),
        Cmd::Count(a) => query(a, false),
        Cmd::Locate(a) => query(a, true),
        Cmd::Stats(a) => stats(a),
        Cmd::Bench(a) => check::bench(a),
        Cmd::Selfcheck(a) => match check::selfcheck(a) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(1),
            Err(e) => Err(e),
        },
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
