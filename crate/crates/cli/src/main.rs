use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use venkov::batch::{collect_inputs, form_id, run_batch, run_file, BatchOptions, RunOptions};
use venkov::form_file::format_form;
use venkov::generate::{perturbed_form, random_form, seeded};
use venkov::report::{REPORT_SCHEMA, SUMMARY_SCHEMA};
use venkov_core::forms::{all_named, NamedLattice};
use venkov_core::pipeline::{PipelineOptions, Stage};

#[derive(Parser)]
#[command(name = "venkov", version, about = "Venkov-complex checks for lattice Voronoi parallelohedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PipelineFlags {
    /// Lowest face dimension to compute (defaults to d-3).
    #[arg(long, value_name = "K")]
    down_to_dim: Option<usize>,
    /// Do not count pyramid base 4-cycles around an apex at the origin as
    /// trivially contractible.
    #[arg(long)]
    no_pyramid_tc: bool,
    /// Stop after this stage: relevant, hrep, vertices, faces, dual, venkov.
    #[arg(long, value_name = "NAME", value_parser = parse_stage)]
    stage: Option<Stage>,
    /// Record per-stage wall-clock times (reports are then not reproducible).
    #[arg(long)]
    timings: bool,
}

impl PipelineFlags {
    fn options(&self) -> RunOptions {
        RunOptions {
            pipeline: PipelineOptions {
                down_to_dim: self.down_to_dim,
                pyramid_tc: !self.no_pyramid_tc,
                stop_after: self.stage,
            },
            timings: self.timings,
        }
    }
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    Stage::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Stage::ALL.iter().map(|s| s.name()).collect();
        format!("unknown stage {s:?}; expected one of {}", names.join(", "))
    })
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on one form file and print its JSON report.
    Run {
        file: PathBuf,
        /// Report id (defaults to the file stem).
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        flags: PipelineFlags,
        /// Pretty-print the report.
        #[arg(long)]
        pretty: bool,
    },
    /// Run every `*.form` file of a directory, or every path in a list file.
    Batch {
        input: PathBuf,
        /// Directory for `<id>.report.json` files and `summary.json`.
        #[arg(long, short)]
        out: PathBuf,
        /// Worker threads (0 = one per core).
        #[arg(long, short, default_value_t = 0)]
        jobs: usize,
        /// Compare reports byte for byte with the ones in this directory.
        #[arg(long, value_name = "DIR")]
        golden: Option<PathBuf>,
        #[command(flatten)]
        flags: PipelineFlags,
    },
    /// Write form files for named lattices or random forms.
    Gen {
        /// Output directory.
        #[arg(long, short)]
        out: PathBuf,
        /// Named lattices such as Z5, A4, Astar5, D5, Dstar4.
        names: Vec<String>,
        /// Every named lattice with dimension in --min-dim..=--max-dim.
        #[arg(long)]
        all_named: bool,
        #[arg(long, default_value_t = 2)]
        min_dim: usize,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Number of random forms of dimension --dim.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Entry bound for random forms.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Perturb this named lattice instead (with --count copies).
        #[arg(long, value_name = "NAME")]
        perturb: Option<String>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Scale applied to the named lattice before perturbing.
        #[arg(long, default_value_t = 4)]
        scale: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the JSON Schema of the reports (or of `summary.json`).
    Schema {
        #[arg(long)]
        summary: bool,
    },
}

fn write_form(dir: &std::path::Path, id: &str, gram: &venkov_core::RationalMatrix, comment: &str) -> anyhow::Result<()> {
    let path = dir.join(format!("{id}.form"));
    std::fs::write(&path, format_form(gram, Some(comment))).with_context(|| path.display().to_string())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<i32> {
    match Cli::parse().command {
        Command::Run { file, id, flags, pretty } => {
            let id = id.unwrap_or_else(|| form_id(&file));
            let report = run_file(&id, &file, &flags.options());
            if pretty {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.to_line());
            }
            if let Some(e) = &report.error {
                eprintln!("{id}: {} ({})", e.message, e.stage);
            }
            Ok(report.status.exit_code())
        }
        Command::Batch {
            input,
            out,
            jobs,
            golden,
            flags,
        } => {
            let inputs = collect_inputs(&input).with_context(|| input.display().to_string())?;
            if inputs.is_empty() {
                eprintln!("error: no input forms in {}", input.display());
                return Ok(2);
            }
            let options = BatchOptions {
                run: flags.options(),
                jobs,
                golden,
            };
            let summary = run_batch(&inputs, &out, &options)?;
            let s = &summary.status;
            eprintln!(
                "{} forms: {} pass, {} fail, {} input errors, {} assertion errors; h1Trivial {}/{}, ggmHolds {}/{}",
                summary.total,
                s.pass,
                s.fail,
                s.input_error,
                s.assertion_error,
                summary.checks.h1_trivial.yes,
                summary.checks.h1_trivial.yes + summary.checks.h1_trivial.no,
                summary.checks.ggm_holds.yes,
                summary.checks.ggm_holds.yes + summary.checks.ggm_holds.no,
            );
            if !summary.golden_mismatches.is_empty() {
                eprintln!("golden mismatches: {}", summary.golden_mismatches.join(", "));
            }
            Ok(summary.exit_code)
        }
        Command::Gen {
            out,
            names,
            all_named: all,
            min_dim,
            max_dim,
            random,
            dim,
            bound,
            perturb,
            count,
            scale,
            seed,
        } => {
            std::fs::create_dir_all(&out).with_context(|| out.display().to_string())?;
            let mut lattices = Vec::new();
            if all {
                lattices.extend(all_named(min_dim..=max_dim));
            }
            for n in &names {
                match NamedLattice::parse(n) {
                    Some(l) => lattices.push(l),
                    None => bail!("unknown lattice {n:?}"),
                }
            }
            for l in &lattices {
                write_form(&out, &l.id(), l.form().gram(), &format!("{} Gram matrix", l.id()))?;
            }
            let mut rng = seeded(seed);
            for i in 0..random {
                let q = random_form(&mut rng, dim, bound);
                let id = format!("random{dim}_{seed}_{i:03}");
                write_form(&out, &id, q.gram(), &format!("random form, seed {seed}, bound {bound}"))?;
            }
            if let Some(name) = perturb {
                let Some(base) = NamedLattice::parse(&name) else {
                    bail!("unknown lattice {name:?}");
                };
                for i in 0..count {
                    let q = perturbed_form(&mut rng, base, scale);
                    let id = format!("{}_perturbed_{seed}_{i:03}", base.id());
                    write_form(&out, &id, q.gram(), &format!("{scale} * {} + E, seed {seed}", base.id()))?;
                }
            }
            Ok(0)
        }
        Command::Schema { summary } => {
            print!("{}", if summary { SUMMARY_SCHEMA } else { REPORT_SCHEMA });
            Ok(0)
        }
    }
}
