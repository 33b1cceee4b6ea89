//! Prim and Kruskal on a generated instance, plus the single-criterion tree
//! for every objective (QoS maximized).

use meshtopo::model::{Criterion, EdgeAttr};
use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::spanning::{criterion_weight, kruskal_mst, prim_mst, tree_weight};
use meshtopo::SenseVector;

fn main() -> meshtopo::Result<()> {
    let net = generate_instance(40, 7, Terrain::default())?.to_network()?;
    let len = |a: &EdgeAttr| a.length;
    let prim = prim_mst(&net, len)?;
    let kruskal = kruskal_mst(&net, len)?;
    println!(
        "length MST: prim {:.6}, kruskal {:.6}, same edges: {}",
        tree_weight(&net, &prim, len),
        tree_weight(&net, &kruskal, len),
        prim == kruskal
    );

    let senses = SenseVector::default();
    for c in Criterion::ALL {
        let tree = prim_mst(&net, criterion_weight(c, senses.get(c)))?;
        println!("{c:?}-optimal tree ({:?}): {}", senses.get(c), net.tree_objectives(&tree)?);
    }
    Ok(())
}
