//! Writes a seeded instance file and reads it back.
//!
//! cargo run --example generate_instance -- [n] [seed] [out.json]

use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::Instance;

fn main() -> meshtopo::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(40, |a| a.parse().expect("n"));
    let seed: u64 = args.next().map_or(7, |a| a.parse().expect("seed"));
    let out = args.next().unwrap_or_else(|| "instance.json".into());

    let inst = generate_instance(n, seed, Terrain { hills: 4, amplitude: 25.0, sigma: 12.0 })?;
    inst.save(&out)?;
    let net = Instance::load(&out)?.to_network()?;
    let (zmin, zmax) = net
        .nodes()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), n| (lo.min(n.z), hi.max(n.z)));
    println!(
        "{out}: {} nodes, {} candidate edges, altitude {zmin:.2}..{zmax:.2} m",
        net.node_count(),
        net.edges().len()
    );
    Ok(())
}
