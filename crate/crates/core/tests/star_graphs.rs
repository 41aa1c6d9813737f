//! Exact corner parameters of small star graphs.

use tlfree::graph::{Vertex, WeightedGraph};
use tlfree::vnfactor::base_parameter;
use tlfree::Scalar;

fn star(leaf_weight: Scalar, mults: &[u32]) -> WeightedGraph {
    let mut vertices = vec![Vertex {
        id: "center".into(),
        weight: Scalar::one(),
    }];
    for i in 0..mults.len() {
        vertices.push(Vertex {
            id: format!("leaf{i}"),
            weight: leaf_weight.clone(),
        });
    }
    let mut g = WeightedGraph::new(vertices, 0).unwrap();
    for (i, &m) in mults.iter().enumerate() {
        g.add_edge(0, i + 1, "a", m).unwrap();
    }
    g
}

#[test]
fn simple_edges_meet_the_bound() {
    for n in 2..=8usize {
        for leaf in [Scalar::one(), Scalar::from_ratio(7, 6), Scalar::from(5)] {
            let t = base_parameter(&star(leaf.clone(), &vec![1; n])).unwrap();
            assert!(t.exact_eq(&Scalar::from(n as i32)), "n = {n}, leaf {leaf}: {t}");
        }
    }
}

#[test]
fn single_leaf_with_equal_weights() {
    // Two vertices of weight 1/2: F = n - (n-1)/2, t = (n+1)/2, and the
    // corner of trace 1/2 has parameter 2n - 1.
    for n in 2..=8u32 {
        let t = base_parameter(&star(Scalar::one(), &[n])).unwrap();
        assert!(t.exact_eq(&Scalar::from(2 * n as i32 - 1)), "n = {n}: {t}");
    }
}

#[test]
fn double_edge_with_heavier_leaf() {
    // Weights 6/13, 7/13: F = 2 * (1 - 1/169) - (1 - 85/169) = 252/169, no
    // atoms, then 1 + (83/169) * (13/6)^2 = 119/36.
    let t = base_parameter(&star(Scalar::from_ratio(7, 6), &[2])).unwrap();
    assert!(t.exact_eq(&Scalar::from_ratio(119, 36)), "{t}");
}
