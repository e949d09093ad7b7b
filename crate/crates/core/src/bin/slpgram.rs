use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slpgram::{compress_traced, expand, grammar_report, selftest, slpz, CompressOptions, Error};

#[derive(Parser)]
#[command(name = "slpgram", version, about = "Straight-line program compressor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an SLPZ grammar.
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Share one fresh symbol between equal free pairs in a phase.
        #[arg(long)]
        dedup: bool,
        /// Write per-phase counters as JSON lines to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Print the grammar report as JSON on stdout.
        #[arg(long)]
        stats: bool,
    },
    /// Expand an SLPZ grammar back to the original bytes.
    Decompress { input: PathBuf, output: PathBuf },
    /// Run the built-in oracle and bound checks.
    Selftest {
        /// Longest exhaustively enumerated binary word.
        #[arg(long, default_value_t = 12)]
        limit: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

enum Failure {
    Domain(String),
    Io(String),
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compress {
            input,
            output,
            dedup,
            trace,
            stats,
        } => cmd_compress(&input, &output, dedup, trace.as_deref(), stats),
        Command::Decompress { input, output } => cmd_decompress(&input, &output),
        Command::Selftest { limit, seed } => cmd_selftest(limit, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("slpgram: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("slpgram: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_compress(input: &Path, output: &Path, dedup: bool, trace: Option<&Path>, stats: bool) -> Result<(), Failure> {
    let data = fs::read(input).map_err(|e| Failure::io(input, e))?;
    let mut trace_out = match trace {
        Some(p) => Some((p, BufWriter::new(File::create(p).map_err(|e| Failure::io(p, e))?))),
        None => None,
    };
    let mut trace_err = None;
    let options = CompressOptions { dedup, verify: true };
    let compressed = compress_traced(&data, &options, &mut |s| {
        if let Some((path, w)) = trace_out.as_mut() {
            let line = serde_json::to_string(s).expect("stats serialise");
            if let Err(e) = writeln!(w, "{line}") {
                trace_err.get_or_insert_with(|| Failure::io(path, e));
            }
        }
    })
    .map_err(|e| match e {
        Error::EmptyInput => Failure::Domain("empty input".into()),
        other => Failure::Domain(other.to_string()),
    })?;
    if let Some(e) = trace_err {
        return Err(e);
    }
    if let Some((path, mut w)) = trace_out {
        w.flush().map_err(|e| Failure::io(path, e))?;
    }

    let text = slpz::write(&compressed.slp, data.len() as u64);
    fs::write(output, text).map_err(|e| Failure::io(output, e))?;
    if stats {
        let report = grammar_report(&compressed);
        println!("{}", serde_json::to_string(&report).expect("report serialises"));
    }
    Ok(())
}

fn cmd_decompress(input: &Path, output: &Path) -> Result<(), Failure> {
    let raw = fs::read(input).map_err(|e| Failure::io(input, e))?;
    let text = String::from_utf8(raw).map_err(|e| {
        let valid = &e.as_bytes()[..e.utf8_error().valid_up_to()];
        if !valid.starts_with(slpz::MAGIC.as_bytes()) {
            return Failure::Domain("line 1: bad magic".into());
        }
        let line = 1 + valid.iter().filter(|&&b| b == b'\n').count();
        Failure::Domain(format!("line {line}: not valid UTF-8"))
    })?;
    let file = slpz::parse(&text).map_err(|e| Failure::Domain(e.to_string()))?;
    let bytes = expand(&file.slp).map_err(|e| Failure::Domain(e.to_string()))?;
    fs::write(output, bytes).map_err(|e| Failure::io(output, e))
}

fn cmd_selftest(limit: usize, seed: u64) -> Result<(), Failure> {
    match selftest::run(limit, seed) {
        Ok(summary) => {
            println!("{summary}");
            println!("selftest passed");
            Ok(())
        }
        Err(f) => Err(Failure::Domain(format!("selftest failed: {f}"))),
    }
}
