//! Multicriteria spanning trees over a swept weight simplex, single-root and
//! multi-root.

use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::spanning::{
    multicriteria_prim_with, weight_sweep, RootStrategy, ScalarizationConfig,
};
use meshtopo::SenseVector;

fn main() -> meshtopo::Result<()> {
    let net = generate_instance(30, 11, Terrain::default())?.to_network()?;
    let sweep = weight_sweep(2);
    println!("{} weight vectors", sweep.len());
    for w in sweep {
        let cfg = ScalarizationConfig::for_network(&net, w, SenseVector::default());
        let single = multicriteria_prim_with(&net, &cfg, RootStrategy::Single)?;
        let multi = multicriteria_prim_with(&net, &cfg, RootStrategy::Multi(3))?;
        println!(
            "w = {:?}\n  single root {}\n  three roots {}",
            w.as_array(),
            net.tree_objectives(&single)?,
            net.tree_objectives(&multi)?
        );
    }
    Ok(())
}
