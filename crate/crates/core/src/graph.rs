//! Weighted multigraphs with colored edges and loops.
//!
//! Used both for fusion graphs and as the input of the free-dimension
//! calculus. Edges are undirected; each `(v, w, color)` triple is stored once
//! with `v <= w` and a multiplicity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub v: usize,
    pub w: usize,
    pub color: String,
    pub mult: u32,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.v == self.w
    }

    pub fn other(&self, x: usize) -> usize {
        if self.v == x {
            self.w
        } else {
            self.v
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    base: usize,
}

impl WeightedGraph {
    pub fn new(vertices: Vec<Vertex>, base: usize) -> Result<Self> {
        if base >= vertices.len() {
            return Err(Error::Invalid(format!(
                "base vertex index {base} out of range ({} vertices)",
                vertices.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(Error::Invalid(format!("duplicate vertex id {:?}", v.id)));
            }
            if !v.weight.is_positive() {
                return Err(Error::Invalid(format!(
                    "vertex {:?} has non-positive weight {}",
                    v.id, v.weight
                )));
            }
        }
        Ok(WeightedGraph {
            vertices,
            edges: Vec::new(),
            base,
        })
    }

    /// Adds `mult` edges of `color` between `v` and `w`, merging with an
    /// existing entry.
    pub fn add_edge(&mut self, v: usize, w: usize, color: &str, mult: u32) -> Result<()> {
        let n = self.vertices.len();
        if v >= n || w >= n {
            return Err(Error::Invalid(format!("edge ({v}, {w}) out of range")));
        }
        if mult == 0 {
            return Ok(());
        }
        let (v, w) = if v <= w { (v, w) } else { (w, v) };
        if let Some(e) = self
            .edges
            .iter_mut()
            .find(|e| e.v == v && e.w == w && e.color == color)
        {
            e.mult += mult;
        } else {
            self.edges.push(Edge {
                v,
                w,
                color: color.to_string(),
                mult,
            });
            self.edges.sort();
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn weight(&self, v: usize) -> &Scalar {
        &self.vertices[v].weight
    }

    pub fn weights(&self) -> Vec<Scalar> {
        self.vertices.iter().map(|v| v.weight.clone()).collect()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn total_weight(&self) -> Scalar {
        self.vertices.iter().map(|v| v.weight.clone()).sum()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.iter().map(|e| u64::from(e.mult)).sum()
    }

    pub fn colors(&self) -> BTreeSet<String> {
        self.edges.iter().map(|e| e.color.clone()).collect()
    }

    /// Copy with weights rescaled to sum to one.
    pub fn normalized(&self) -> WeightedGraph {
        let total = self.total_weight();
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.weight = &v.weight / &total;
        }
        g
    }

    /// Copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: &Scalar) -> WeightedGraph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.weight = &v.weight * factor;
        }
        g
    }

    /// `n_{v,w}` summed over the colors accepted by `filter`; loops sit on
    /// the diagonal with their multiplicity.
    pub fn adjacency_where(&self, filter: impl Fn(&str) -> bool) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut a = vec![vec![0u32; n]; n];
        for e in self.edges.iter().filter(|e| filter(&e.color)) {
            a[e.v][e.w] += e.mult;
            if e.v != e.w {
                a[e.w][e.v] += e.mult;
            }
        }
        a
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        self.adjacency_where(|_| true)
    }

    pub fn color_adjacency(&self, color: &str) -> Vec<Vec<u32>> {
        self.adjacency_where(|c| c == color)
    }

    /// `alpha_v = sum_w n_{v,w} gamma_w` over all colors; a loop of
    /// multiplicity `m` at `v` contributes `m * gamma_v` once.
    pub fn neighbor_weights(&self) -> Vec<Scalar> {
        let a = self.adjacency();
        (0..self.len())
            .map(|v| {
                (0..self.len())
                    .filter(|&w| a[v][w] > 0)
                    .map(|w| Scalar::from(a[v][w]) * self.weight(w))
                    .sum()
            })
            .collect()
    }

    /// Graph distances from the base vertex (`None` when unreachable).
    pub fn distances_from_base(&self) -> Vec<Option<usize>> {
        let n = self.len();
        let a = self.adjacency();
        let mut dist = vec![None; n];
        dist[self.base] = Some(0);
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in 0..n {
                if a[v][w] > 0 && dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from_base().iter().all(Option::is_some)
    }

    /// Induced subgraph on the vertices within `radius` of the base vertex.
    pub fn ball(&self, radius: usize) -> WeightedGraph {
        let dist = self.distances_from_base();
        let keep: Vec<usize> = (0..self.len())
            .filter(|&v| matches!(dist[v], Some(d) if d <= radius))
            .collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `keep` (which must contain the base vertex).
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    v: *index.get(&e.v)?,
                    w: *index.get(&e.w)?,
                    color: e.color.clone(),
                    mult: e.mult,
                })
            })
            .map(|mut e| {
                if e.v > e.w {
                    std::mem::swap(&mut e.v, &mut e.w);
                }
                e
            })
            .collect();
        edges.sort();
        WeightedGraph {
            vertices,
            edges,
            base: index[&self.base],
        }
    }

    /// `delta_b * gamma_v - sum_w n^b_{v,w} gamma_w` for every color `b` and
    /// vertex `v`.
    pub fn fp_residuals(&self, deltas: &BTreeMap<String, Scalar>) -> Vec<(String, usize, Scalar)> {
        let mut out = Vec::new();
        for (color, delta) in deltas {
            let a = self.color_adjacency(color);
            for (v, row) in a.iter().enumerate() {
                let rhs: Scalar = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(w, &n)| Scalar::from(n) * self.weight(w))
                    .sum();
                out.push((color.clone(), v, delta * self.weight(v) - rhs));
            }
        }
        out
    }

    /// Graphviz rendering with weight and multiplicity labels; deterministic.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name:?} {{");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if i == self.base {
                ", shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "  {:?} [label=\"{}\\nweight={}\"{}];",
                v.id, v.id, v.weight, shape
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {:?} -- {:?} [label=\"{} ×{}\"];",
                self.vertices[e.v].id, self.vertices[e.w].id, e.color, e.mult
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexSpec {
                    id: v.id.clone(),
                    weight: v.weight.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    v: self.vertices[e.v].id.clone(),
                    w: self.vertices[e.w].id.clone(),
                    color: e.color.clone(),
                    mult: e.mult,
                })
                .collect(),
            base: self.vertices[self.base].id.clone(),
        }
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let vertices: Vec<Vertex> = spec
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id.clone(),
                weight: v.weight.clone(),
            })
            .collect();
        let base = vertices
            .iter()
            .position(|v| v.id == spec.base)
            .ok_or_else(|| Error::Parse(format!("base vertex {:?} not declared", spec.base)))?;
        let mut g = WeightedGraph::new(vertices, base)?;
        for e in &spec.edges {
            let v = g
                .vertex_index(&e.v)
                .ok_or_else(|| Error::Parse(format!("edge endpoint {:?} not declared", e.v)))?;
            let w = g
                .vertex_index(&e.w)
                .ok_or_else(|| Error::Parse(format!("edge endpoint {:?} not declared", e.w)))?;
            g.add_edge(v, w, &e.color, e.mult)?;
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph spec: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub v: String,
    pub w: String,
    pub color: String,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

/// On-disk graph format: `{ "vertices": [{"id","weight"}], "edges":
/// [{"v","w","color","mult"}], "base": id }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    pub base: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph {
        let vs = ["a", "b", "c"]
            .iter()
            .map(|id| Vertex {
                id: id.to_string(),
                weight: Scalar::one(),
            })
            .collect();
        let mut g = WeightedGraph::new(vs, 0).unwrap();
        g.add_edge(0, 1, "x", 1).unwrap();
        g.add_edge(2, 1, "x", 2).unwrap();
        g.add_edge(2, 2, "y", 1).unwrap();
        g
    }

    #[test]
    fn edges_are_merged_and_oriented() {
        let mut g = path3();
        g.add_edge(1, 0, "x", 3).unwrap();
        assert_eq!(
            g.edges()[0],
            Edge {
                v: 0,
                w: 1,
                color: "x".into(),
                mult: 4
            }
        );
        assert_eq!(g.edge_count(), 4 + 2 + 1);
    }

    #[test]
    fn ball_and_distances() {
        let g = path3();
        assert_eq!(g.distances_from_base(), vec![Some(0), Some(1), Some(2)]);
        let b0 = g.ball(0);
        assert_eq!(b0.len(), 1);
        assert!(b0.edges().is_empty());
        let b1 = g.ball(1);
        assert_eq!(b1.len(), 2);
        assert_eq!(b1.edge_count(), 1);
        assert_eq!(g.ball(5), g);
    }

    #[test]
    fn loops_count_once_in_neighbor_weights() {
        let g = path3();
        let alpha = g.neighbor_weights();
        assert!(alpha[2].exact_eq(&Scalar::from_integer(3)));
        assert!(alpha[1].exact_eq(&Scalar::from_integer(3)));
    }

    #[test]
    fn rejects_bad_weights() {
        let vs = vec![Vertex {
            id: "a".into(),
            weight: Scalar::zero(),
        }];
        assert!(WeightedGraph::new(vs, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = path3();
        let back = WeightedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn dot_is_deterministic_and_shows_loops() {
        let g = path3();
        let dot = g.to_dot("p");
        assert_eq!(dot, g.to_dot("p"));
        assert!(dot.contains("\"c\" -- \"c\""));
        assert!(dot.contains("×2"));
    }
}
