use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use meshtopo::pareto::pareto_layers;
use meshtopo::pipeline::{self, SchemeConfig, SchemeResult, Terrain};
use meshtopo::spanning::RootStrategy;
use meshtopo::{Error, Instance, ObjectiveVector, Sense, SenseVector};

#[derive(Parser)]
#[command(name = "meshtopo", version, about = "Multicriteria Steiner tree network design")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QSense {
    Min,
    Max,
}

impl From<QSense> for Sense {
    fn from(q: QSense) -> Sense {
        match q {
            QSense::Min => Sense::Minimize,
            QSense::Max => Sense::Maximize,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        hills: usize,
        #[arg(long, default_value_t = 20.0)]
        amp: f64,
        #[arg(long, default_value_t = 15.0)]
        sigma: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the four-stage scheme and write report.csv, result.json and SVGs.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long, default_value_t = 6)]
        max_cluster: usize,
        #[arg(long, value_enum, default_value = "max")]
        q_sense: QSense,
        /// Defaults to the instance's coefficient.
        #[arg(long)]
        alpha: Option<f64>,
        /// Defaults to the instance's coefficient.
        #[arg(long)]
        beta: Option<f64>,
        /// Grow the multicriteria trees from this many roots.
        #[arg(long)]
        roots: Option<usize>,
        /// Provenance seed recorded in the result.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Recompute Pareto layers of a CSV with L, C, Delta, Q columns.
    Layers {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, value_enum, default_value = "max")]
        q_sense: QSense,
    },
    /// Render one entry of a stored result as SVG.
    Render {
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        entry: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Disconnected { .. } => 2,
        Error::Domain(_) | Error::InvalidInput(_) => 3,
        Error::Io { .. } => 4,
    }
}

fn run(cli: Cli) -> meshtopo::Result<()> {
    match cli.command {
        Command::Gen {
            n,
            seed,
            hills,
            amp,
            sigma,
            out,
        } => {
            let terrain = Terrain {
                hills,
                amplitude: amp,
                sigma,
            };
            pipeline::generate_instance(n, seed, terrain)?.save(&out)?;
            println!("wrote {}", out.display());
        }
        Command::Solve {
            instance,
            g,
            max_cluster,
            q_sense,
            alpha,
            beta,
            roots,
            seed,
            out_dir,
        } => {
            let inst = Instance::load(&instance)?;
            let cfg = SchemeConfig {
                granularity: g,
                max_cluster,
                senses: SenseVector::with_qos(q_sense.into()),
                alpha: alpha.unwrap_or(inst.alpha),
                beta: beta.unwrap_or(inst.beta),
                seed,
                roots: roots.map_or(RootStrategy::Single, RootStrategy::Multi),
            };
            let result = pipeline::run_scheme(&inst, &cfg)?;
            for p in result.write_outputs(&out_dir)? {
                println!("wrote {}", p.display());
            }
        }
        Command::Layers { csv, q_sense } => {
            let rows = pipeline::read_vectors(&csv)?;
            let vectors: Vec<ObjectiveVector> = rows.iter().map(|r| r.vector).collect();
            let layers = pareto_layers(&vectors, &SenseVector::with_qos(q_sense.into()))?;
            println!("row,label,L,C,Delta,Q,pareto_layer,stored_layer");
            let mut mismatches = 0;
            for (i, (r, l)) in rows.iter().zip(&layers).enumerate() {
                let stored = r.layer.map(|s| s.to_string()).unwrap_or_default();
                if r.layer.is_some_and(|s| s != *l) {
                    mismatches += 1;
                }
                let v = r.vector;
                println!(
                    "{},{},{},{},{},{},{l},{stored}",
                    i + 1,
                    r.label.as_deref().unwrap_or(""),
                    v.length,
                    v.cost,
                    v.altitude,
                    v.qos
                );
            }
            if mismatches > 0 {
                return Err(Error::InvalidInput(format!(
                    "{mismatches} row(s) disagree with the stored pareto_layer column"
                )));
            }
        }
        Command::Render { result, entry, out } => {
            SchemeResult::load(&result)?.render_entry(&entry, &out)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
