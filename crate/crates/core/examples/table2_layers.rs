//! Pareto layers of the bundled ten-vector comparison table, once with every
//! objective minimized and once with QoS maximized.

use meshtopo::pareto::LayeredSet;
use meshtopo::pipeline::read_vectors;
use meshtopo::{Sense, SenseVector};

fn main() -> meshtopo::Result<()> {
    let rows = read_vectors(concat!(env!("CARGO_MANIFEST_DIR"), "/data/table2.csv"))?;
    for (name, senses) in [
        ("all minimized", SenseVector::all_minimize()),
        ("QoS maximized", SenseVector::with_qos(Sense::Maximize)),
    ] {
        let items = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("row {}", i + 1), r.vector))
            .collect();
        let set = LayeredSet::peel(items, &senses)?;
        let layers: Vec<usize> = set.items.iter().map(|i| i.layer).collect();
        println!("{name}: {layers:?}");
    }
    Ok(())
}
