use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CostModel, Instance, InstanceNode};

/// Side of the square field, in meters.
pub const FIELD_SIZE: f64 = 100.0;

/// Gaussian hills summed into the altitude field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Terrain {
    pub hills: usize,
    pub amplitude: f64,
    pub sigma: f64,
}

impl Default for Terrain {
    fn default() -> Self {
        Terrain {
            hills: 3,
            amplitude: 20.0,
            sigma: 15.0,
        }
    }
}

impl Terrain {
    pub fn flat() -> Self {
        Terrain {
            hills: 0,
            amplitude: 0.0,
            sigma: 1.0,
        }
    }
}

/// `n` stations uniform on `[0, 100]^2` with altitude from the terrain,
/// ratings uniform on `[0.1, 1.0]`, complete candidate graph. The same
/// `(n, seed, terrain)` always gives the same instance.
pub fn generate_instance(n: usize, seed: u64, terrain: Terrain) -> Result<Instance> {
    if n < 1 {
        return Err(Error::domain("instance needs at least one node"));
    }
    if !terrain.amplitude.is_finite() || !(terrain.sigma > 0.0 && terrain.sigma.is_finite()) {
        return Err(Error::domain(format!(
            "terrain needs finite amplitude and sigma > 0, got {terrain:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hills: Vec<(f64, f64)> = (0..terrain.hills)
        .map(|_| (rng.gen_range(0.0..=FIELD_SIZE), rng.gen_range(0.0..=FIELD_SIZE)))
        .collect();
    let two_var = 2.0 * terrain.sigma * terrain.sigma;
    let nodes = (0..n)
        .map(|id| {
            let x = rng.gen_range(0.0..=FIELD_SIZE);
            let y = rng.gen_range(0.0..=FIELD_SIZE);
            let s = rng.gen_range(0.1..=1.0);
            let z = hills
                .iter()
                .map(|&(hx, hy)| {
                    let d2 = (x - hx).powi(2) + (y - hy).powi(2);
                    terrain.amplitude * (-d2 / two_var).exp()
                })
                .sum();
            InstanceNode { id, x, y, z, s }
        })
        .collect();
    let cost = CostModel::default();
    Ok(Instance {
        alpha: cost.alpha,
        beta: cost.beta,
        nodes,
        edges: None,
    })
}
