//! Fusion data with infinitely many simples and generators, explored lazily.
//!
//! Only finite balls around the unit are ever materialised, as weighted
//! graphs using the first few generator colors.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Vertex, WeightedGraph};
use crate::scalar::Scalar;

pub trait InfiniteFamily {
    fn name(&self) -> &str;

    /// Simples are labelled by integers; the unit is 0.
    fn simple_name(&self, x: i64) -> String;

    fn dim(&self, x: i64) -> Scalar;

    /// Color label of generator `k >= 1`.
    fn color(&self, k: usize) -> String {
        format!("a{k}")
    }

    /// Loop parameter of generator `k`.
    fn delta(&self, k: usize) -> Scalar;

    /// `(w, N_{x,Y_k}^w)` for the nonzero entries.
    fn neighbors(&self, x: i64, k: usize) -> Vec<(i64, u32)>;
}

/// The group ring of the integers with generators `g^k ⊕ g^{-k}`.
#[derive(Clone, Debug, Default)]
pub struct IntegerGroup;

impl InfiniteFamily for IntegerGroup {
    fn name(&self) -> &str {
        "integers"
    }

    fn simple_name(&self, x: i64) -> String {
        match x {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{x}"),
        }
    }

    fn dim(&self, _x: i64) -> Scalar {
        Scalar::one()
    }

    fn delta(&self, _k: usize) -> Scalar {
        Scalar::from_integer(2)
    }

    fn neighbors(&self, x: i64, k: usize) -> Vec<(i64, u32)> {
        let k = k as i64;
        vec![(x - k, 1), (x + k, 1)]
    }
}

/// Representations of SU(2) (simples `V_j`, `dim V_j = j + 1`) with
/// generators `V_k ⊕ V_k`.
#[derive(Clone, Debug, Default)]
pub struct Su2Reps;

impl InfiniteFamily for Su2Reps {
    fn name(&self) -> &str {
        "su2"
    }

    fn simple_name(&self, x: i64) -> String {
        format!("V{x}")
    }

    fn dim(&self, x: i64) -> Scalar {
        Scalar::from_integer(x + 1)
    }

    fn delta(&self, k: usize) -> Scalar {
        Scalar::from_integer(2 * (k as i64 + 1))
    }

    fn neighbors(&self, x: i64, k: usize) -> Vec<(i64, u32)> {
        let k = k as i64;
        ((x - k).abs()..=x + k).step_by(2).map(|w| (w, 2)).collect()
    }
}

pub fn family_by_name(name: &str) -> Option<Box<dyn InfiniteFamily>> {
    match name.to_lowercase().as_str() {
        "integers" | "z" => Some(Box::new(IntegerGroup)),
        "su2" => Some(Box::new(Su2Reps)),
        _ => None,
    }
}

/// Ball of the given radius around the unit in the fusion graph built from
/// generators `1..=colors`, with loop parameters per color.
pub fn truncated_graph(
    family: &dyn InfiniteFamily,
    radius: usize,
    colors: usize,
) -> (WeightedGraph, BTreeMap<String, Scalar>) {
    let mut dist: BTreeMap<i64, usize> = BTreeMap::from([(0, 0)]);
    let mut order = vec![0i64];
    let mut queue = VecDeque::from([0i64]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for k in 1..=colors {
            for (w, _) in family.neighbors(x, k) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let index: BTreeMap<i64, usize> = order.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let vertices = order
        .iter()
        .map(|&x| Vertex {
            id: family.simple_name(x),
            weight: family.dim(x),
        })
        .collect();
    let mut graph = WeightedGraph::new(vertices, 0).expect("unit vertex present");
    let mut deltas = BTreeMap::new();
    for k in 1..=colors {
        let color = family.color(k);
        deltas.insert(color.clone(), family.delta(k));
        for (&x, &i) in &index {
            for (w, m) in family.neighbors(x, k) {
                if let Some(&j) = index.get(&w) {
                    if i <= j {
                        graph.add_edge(i, j, &color, m).expect("indices in range");
                    }
                }
            }
        }
    }
    (graph, deltas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_balls() {
        let (g, _) = truncated_graph(&IntegerGroup, 1, 1);
        assert_eq!(g.len(), 3);
        assert_eq!(g.edge_count(), 2);
        let (g, d) = truncated_graph(&IntegerGroup, 2, 2);
        // reachable: 0, ±1, ±2, ±3, ±4
        assert_eq!(g.len(), 9);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn su2_interior_satisfies_fp_equation() {
        let (g, deltas) = truncated_graph(&Su2Reps, 6, 2);
        let dist = g.distances_from_base();
        for (color, v, res) in g.fp_residuals(&deltas) {
            if dist[v].unwrap() < 3 {
                assert!(res.is_zero(), "{color} {v} {res}");
            }
        }
    }

    #[test]
    fn lookup() {
        assert!(family_by_name("Z").is_some());
        assert!(family_by_name("su2").is_some());
        assert!(family_by_name("x").is_none());
    }
}
