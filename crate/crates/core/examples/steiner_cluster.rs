//! Steiner trees of small clusters, and steinerizing a whole spanning tree.

use meshtopo::clustering::agglomerate;
use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::spanning::prim_mst;
use meshtopo::steiner::{steiner_tree_cluster, steinerize};
use meshtopo::Node;

fn main() -> meshtopo::Result<()> {
    let h = 3f64.sqrt() / 2.0;
    let fixtures: [(&str, Vec<(f64, f64)>); 2] = [
        ("equilateral triangle", vec![(0.0, 0.0), (1.0, 0.0), (0.5, h)]),
        ("unit square", vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
    ];
    for (name, pts) in fixtures {
        let nodes: Vec<Node> = pts
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Node::terminal(i, x, y, 0.0, 0.5))
            .collect();
        let t = steiner_tree_cluster(&nodes);
        println!(
            "{name}: MST {:.7}, Steiner {:.7}, {} Steiner points",
            t.mst_length,
            t.length(),
            t.steiner_points().len()
        );
    }

    let net = generate_instance(30, 2, Terrain::default())?.to_network()?;
    let tree = prim_mst(&net, |a| a.length)?;
    let sol = steinerize(&net, &tree, &agglomerate(&net, 6)?)?;
    println!("\nMST  {}", net.tree_objectives(&tree)?);
    println!("MSTP {}", sol.objectives());
    for r in &sol.clusters {
        println!(
            "  cluster {} {:?}: {:.3} -> {:.3} ({} Steiner points)",
            r.cluster, r.terminals, r.replaced_length, r.steiner_length, r.steiner_points
        );
    }
    Ok(())
}
