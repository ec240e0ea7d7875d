#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

use clap::{Parser, Subcommand, ValueEnum};
use mei_core::bench::{bench_grid, table};
use mei_core::format::{parse_instance, write_instance, write_planarization, Report};
use mei_core::gen::{self, Instance};
use mei_core::mei::{run_mei, Mode};
use mei_core::oracle::summary;
use mei_core::MeiError;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "mei", about = "Insert several edges into a planar graph with few crossings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
    Ziegler,
    Random,
    Grid,
}

#[derive(Subcommand)]
enum Cmd {
    /// Insert all pairs of an instance and write a JSON report.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        #[arg(long)]
        out: PathBuf,
        /// Include the rotation system of the chosen embedding.
        #[arg(long)]
        dump_embedding: bool,
        /// Also write the drawing of G + F with crossings as vertices.
        #[arg(long)]
        planarize: Option<PathBuf>,
        /// Include wall time in the report (makes it differ between runs).
        #[arg(long)]
        timing: bool,
    },
    /// Exact values by trying every embedding.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Scale of family I.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Half the face length for II; crossing budget for ziegler.
        #[arg(long, default_value_t = 3)]
        l: usize,
        /// Number of pairs for III (a power of two).
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        delta: usize,
        /// Vertex count for random; path length for ziegler.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Pair count for random and grid.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Chords for ziegler as `i-j` over path positions 1..n, comma separated.
        #[arg(long, default_value = "")]
        chords: String,
        #[arg(long, default_value_t = 10)]
        w: usize,
        #[arg(long, default_value_t = 10)]
        h: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median wall times on growing grids.
    Bench {
        #[arg(long, value_enum, default_value = "grid")]
        family: BenchFamily,
        /// Vertex counts, comma separated.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print JSON rows instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Grid,
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<MeiError> for Fail {
    fn from(e: MeiError) -> Fail {
        let code = match e {
            MeiError::NotPlanar | MeiError::Disconnected => 2,
            MeiError::Parse { .. } => 3,
            MeiError::TooManyEmbeddings(_) => 4,
            _ => 1,
        };
        let msg = match e {
            MeiError::NotPlanar => "graph is not planar: it contains a subdivision of K5 or K3,3".to_string(),
            other => other.to_string(),
        };
        Fail(code, msg)
    }
}

fn read(path: &Path) -> Result<Instance, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(1, format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_chords(s: &str) -> Result<Vec<(usize, usize)>, Fail> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once('-').ok_or_else(|| Fail(1, format!("bad chord '{t}'")))?;
            let num = |x: &str| x.parse::<usize>().map_err(|_| Fail(1, format!("bad chord '{t}'")));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Solve { input, mode, out, dump_embedding, planarize, timing } => {
            let inst = read(&input)?;
            let start = Instant::now();
            let r = run_mei(&inst.g, &inst.f, mode.into())?;
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            let report = Report::new(&r, inst.lb, dump_embedding, timing.then_some(ms));
            write(Some(&out), &report.to_json())?;
            if let Some(p) = planarize {
                write(Some(&p), &write_planarization(&r.fixed.drawing))?;
            }
        }
        Cmd::Oracle { input, cap, out } => {
            let inst = read(&input)?;
            let o = summary(&inst.g, &inst.f, cap)?;
            write(out.as_deref(), &(serde_json::to_string_pretty(&o).unwrap() + "\n"))?;
        }
        Cmd::Gen { family, r, l, m, delta, n, k, chords, w, h, seed, out } => {
            let inst = match family {
                Family::I => gen::construction_i(r),
                Family::II => gen::construction_ii(l)?,
                Family::III => gen::construction_iii(m, delta)?,
                Family::Ziegler => gen::ziegler(&parse_chords(&chords)?, n, l as u64)?,
                Family::Random => gen::random_planar(n, k, seed),
                Family::Grid => gen::grid(w, h, k, seed),
            };
            write(out.as_deref(), &write_instance(&inst))?;
        }
        Cmd::Bench { family: BenchFamily::Grid, sizes, k, repeats, mode, seed, json } => {
            let rows = bench_grid(&sizes, k, repeats, mode.into(), seed);
            let text = if json { serde_json::to_string_pretty(&rows).unwrap() + "\n" } else { table(&rows) };
            write(None, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
