//! Draws the MST and a Steiner-augmented tree of one instance as SVG.
//!
//! cargo run --example render_topology -- [out-dir]

use std::path::PathBuf;

use meshtopo::clustering::agglomerate;
use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::spanning::prim_mst;
use meshtopo::steiner::steinerize;
use meshtopo::svg::render_svg;

fn main() -> meshtopo::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let net = generate_instance(25, 8, Terrain::default())?.to_network()?;
    let mst = prim_mst(&net, |a| a.length)?;
    let sol = steinerize(&net, &mst, &agglomerate(&net, 6)?)?;

    let a = dir.join("mst.svg");
    let b = dir.join("mstp.svg");
    render_svg(&net, &mst, &a)?;
    render_svg(&sol.network, &sol.tree, &b)?;
    println!("wrote {} and {}", a.display(), b.display());
    Ok(())
}
