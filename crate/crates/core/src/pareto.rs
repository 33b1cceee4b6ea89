//! Stage 4: Pareto dominance and layer peeling.
//!
//! Layer 1 is the non-dominated subset; layer `k` is the non-dominated
//! subset once layers `1..k` are removed. Comparisons are exact on the
//! stored values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Criterion, ObjectiveVector, SenseVector};

fn check_nan(v: &ObjectiveVector) -> Result<()> {
    if v.to_array().iter().any(|x| x.is_nan()) {
        return Err(Error::domain(format!("objective vector has a NaN component: {v:?}")));
    }
    Ok(())
}

fn dominates_unchecked(u: &ObjectiveVector, v: &ObjectiveVector, senses: &SenseVector) -> bool {
    let mut strictly = false;
    for c in Criterion::ALL {
        let s = senses.get(c);
        let (a, b) = (s.oriented(u.get(c)), s.oriented(v.get(c)));
        if a > b {
            return false;
        }
        if a < b {
            strictly = true;
        }
    }
    strictly
}

/// True iff `u` is no worse than `v` in every criterion and strictly
/// better in at least one.
pub fn dominates(u: &ObjectiveVector, v: &ObjectiveVector, senses: &SenseVector) -> Result<bool> {
    check_nan(u)?;
    check_nan(v)?;
    Ok(dominates_unchecked(u, v, senses))
}

/// Pareto layer (1-based) of every vector, in input order.
///
/// Uses domination counting: each vector records who it dominates and how
/// many dominate it; peeling a layer decrements the counts of everything it
/// dominated. `O(n^2)` comparisons.
pub fn pareto_layers(vectors: &[ObjectiveVector], senses: &SenseVector) -> Result<Vec<usize>> {
    if vectors.is_empty() {
        return Err(Error::domain("pareto_layers needs at least one vector"));
    }
    vectors.iter().try_for_each(check_nan)?;

    let n = vectors.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates_unchecked(&vectors[i], &vectors[j], senses) {
                dominated_by_me[i].push(j);
                count[j] += 1;
            } else if dominates_unchecked(&vectors[j], &vectors[i], senses) {
                dominated_by_me[j].push(i);
                count[i] += 1;
            }
        }
    }

    let mut layer = vec![0usize; n];
    let mut front: Vec<usize> = (0..n).filter(|&i| count[i] == 0).collect();
    let mut rank = 1;
    while !front.is_empty() {
        let mut next = Vec::new();
        for &i in &front {
            layer[i] = rank;
            for &j in &dominated_by_me[i] {
                count[j] -= 1;
                if count[j] == 0 {
                    next.push(j);
                }
            }
        }
        front = next;
        rank += 1;
    }
    Ok(layer)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredItem {
    pub label: String,
    pub vector: ObjectiveVector,
    pub layer: usize,
}

/// Labeled vectors with their Pareto layers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredSet {
    pub items: Vec<LayeredItem>,
}

impl LayeredSet {
    pub fn peel(items: Vec<(String, ObjectiveVector)>, senses: &SenseVector) -> Result<Self> {
        let vectors: Vec<ObjectiveVector> = items.iter().map(|(_, v)| *v).collect();
        let layers = pareto_layers(&vectors, senses)?;
        Ok(LayeredSet {
            items: items
                .into_iter()
                .zip(layers)
                .map(|((label, vector), layer)| LayeredItem { label, vector, layer })
                .collect(),
        })
    }

    pub fn layer(&self, k: usize) -> impl Iterator<Item = &LayeredItem> {
        self.items.iter().filter(move |i| i.layer == k)
    }

    pub fn depth(&self) -> usize {
        self.items.iter().map(|i| i.layer).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sense;

    fn v(a: f64, b: f64, c: f64, d: f64) -> ObjectiveVector {
        ObjectiveVector::new(a, b, c, d)
    }

    #[test]
    fn dominance_examples() {
        let min = SenseVector::all_minimize();
        assert!(dominates(&v(1., 1., 1., 1.), &v(2., 2., 2., 2.), &min).unwrap());
        assert!(!dominates(&v(1., 1., 1., 1.), &v(1., 1., 1., 1.), &min).unwrap());
        // last MSTP comparison row over the MST row, stored as (L, C, Q, Delta)
        let mstp = v(69.92, 3.83, 42.4, 209.76);
        let mst = v(69.98, 3.83, 43.56, 222.50);
        assert!(dominates(&mstp, &mst, &min).unwrap());
        assert!(!dominates(&mst, &mstp, &min).unwrap());
    }

    #[test]
    fn maximized_criterion_flips_direction() {
        let s = SenseVector::with_qos(Sense::Maximize);
        assert!(dominates(&v(1., 1., 5., 1.), &v(1., 1., 4., 1.), &s).unwrap());
        assert!(!dominates(&v(1., 1., 4., 1.), &v(1., 1., 5., 1.), &s).unwrap());
    }

    #[test]
    fn nan_is_rejected() {
        let min = SenseVector::all_minimize();
        let bad = v(f64::NAN, 0., 0., 0.);
        assert!(matches!(dominates(&bad, &v(0., 0., 0., 0.), &min), Err(Error::Domain(_))));
        assert!(matches!(pareto_layers(&[bad], &min), Err(Error::Domain(_))));
    }

    #[test]
    fn layer_examples() {
        let min = SenseVector::all_minimize();
        assert!(matches!(pareto_layers(&[], &min), Err(Error::Domain(_))));
        assert_eq!(pareto_layers(&[v(3., 1., 4., 1.)], &min).unwrap(), vec![1]);
        let chain = [v(1., 1., 1., 1.), v(2., 2., 2., 2.), v(3., 3., 3., 3.)];
        assert_eq!(pareto_layers(&chain, &min).unwrap(), vec![1, 2, 3]);
        let twins = [v(1., 2., 1., 1.), v(1., 2., 1., 1.), v(2., 3., 2., 2.)];
        assert_eq!(pareto_layers(&twins, &min).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn layered_set_keeps_labels() {
        let set = LayeredSet::peel(
            vec![
                ("b".into(), v(2., 2., 2., 2.)),
                ("a".into(), v(1., 1., 1., 1.)),
            ],
            &SenseVector::all_minimize(),
        )
        .unwrap();
        assert_eq!(set.depth(), 2);
        assert_eq!(set.layer(1).map(|i| i.label.as_str()).collect::<Vec<_>>(), vec!["a"]);
    }
}
