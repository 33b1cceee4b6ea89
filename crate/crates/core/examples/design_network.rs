//! Full four-stage run on a generated instance: prints the comparison table
//! and writes report.csv, result.json and layer-1 SVGs.
//!
//! cargo run --example design_network -- [n] [seed] [out-dir]

use meshtopo::pipeline::{generate_instance, report_csv, run_scheme, SchemeConfig, Terrain};

fn main() -> meshtopo::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(12, |a| a.parse().expect("n"));
    let seed: u64 = args.next().map_or(3, |a| a.parse().expect("seed"));
    let out = args.next();

    let instance = generate_instance(n, seed, Terrain::default())?;
    let cfg = SchemeConfig {
        seed,
        ..SchemeConfig::default()
    };
    let result = run_scheme(&instance, &cfg)?;
    print!("{}", report_csv(&result));

    println!("\nlayer-1 topologies:");
    for e in result.first_layer() {
        println!(
            "  {:8} {} ({} Steiner nodes)",
            e.label,
            e.objectives,
            e.steiner_nodes.len()
        );
    }
    if let Some(dir) = out {
        for p in result.write_outputs(&dir)? {
            println!("wrote {}", p.display());
        }
    }
    Ok(())
}
