//! Size-capped single-linkage clustering with its merge log.

use meshtopo::clustering::agglomerate_with_log;
use meshtopo::pipeline::{generate_instance, Terrain};

fn main() -> meshtopo::Result<()> {
    let net = generate_instance(20, 5, Terrain::default())?.to_network()?;
    for cap in [3, 6] {
        let (partition, log) = agglomerate_with_log(&net, cap)?;
        println!("max size {cap}: {} clusters", partition.clusters.len());
        for c in &partition.clusters {
            println!("  {c:?}");
        }
        let last = log.last().map_or(0.0, |m| m.distance);
        println!("  {} merges, last at distance {last:.3}", log.len());
    }
    Ok(())
}
