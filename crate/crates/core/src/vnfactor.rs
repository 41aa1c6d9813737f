//! Free-dimension bookkeeping for the von Neumann algebras attached to
//! weighted graphs, and identification of the resulting interpolated free
//! group factors.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::infinite::{truncated_graph, InfiniteFamily};
use crate::fusion::{build_fusion_graph, global_dim, Category, FusionRing};
use crate::graph::{Edge, WeightedGraph};
use crate::scalar::Scalar;

/// Tolerance for trace sums when the weights are not exact.
const TRACE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum BlockKind {
    /// `L(F_t)`, `t > 1`.
    InterpolatedFree(Scalar),
    /// `M_n(C)`.
    Matrix(u32),
    DiffuseHyperfinite,
    /// `C`, the same as `Matrix(1)`.
    Atom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VNBlock {
    pub kind: BlockKind,
    pub trace: Scalar,
    /// Named projections and the part of their trace inside this block.
    pub markers: BTreeMap<String, Scalar>,
}

impl VNBlock {
    pub fn new(kind: BlockKind, trace: Scalar) -> Self {
        VNBlock {
            kind,
            trace,
            markers: BTreeMap::new(),
        }
    }

    pub fn with_marker(mut self, name: &str, trace: Scalar) -> Self {
        let entry = self.markers.entry(name.to_string()).or_insert_with(Scalar::zero);
        *entry = &*entry + &trace;
        self
    }

    pub fn marker(&self, name: &str) -> Scalar {
        self.markers.get(name).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for VNBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BlockKind::InterpolatedFree(t) => write!(f, "L(F_{{{t}}})")?,
            BlockKind::Matrix(n) => write!(f, "M_{n}")?,
            BlockKind::DiffuseHyperfinite => write!(f, "R")?,
            BlockKind::Atom => write!(f, "C")?,
        }
        write!(f, " [trace {}]", self.trace)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VNDecomposition {
    pub blocks: Vec<VNBlock>,
    pub normalized: bool,
}

impl VNDecomposition {
    pub fn new(blocks: Vec<VNBlock>, normalized: bool) -> Result<Self> {
        for b in &blocks {
            if !b.trace.is_positive() {
                return Err(Error::Invalid(format!("block {b} has non-positive trace")));
            }
            if let BlockKind::InterpolatedFree(t) = &b.kind {
                if t.compare(&Scalar::one(), 0.0) != std::cmp::Ordering::Greater {
                    return Err(Error::Invalid(format!("free group parameter {t} is not above 1")));
                }
            }
            if let BlockKind::Matrix(0) = b.kind {
                return Err(Error::Invalid("M_0 is not a block".into()));
            }
        }
        let dec = VNDecomposition { blocks, normalized };
        if normalized && !dec.total_trace().approx_eq(&Scalar::one(), TRACE_TOLERANCE) {
            return Err(Error::NotNormalized);
        }
        Ok(dec)
    }

    pub fn total_trace(&self) -> Scalar {
        self.blocks.iter().map(|b| b.trace.clone()).sum()
    }

    pub fn marker_total(&self, name: &str) -> Scalar {
        self.blocks.iter().map(|b| b.marker(name)).sum()
    }

    /// The interpolated free group factor blocks.
    pub fn factor_blocks(&self) -> impl Iterator<Item = &VNBlock> {
        self.blocks
            .iter()
            .filter(|b| matches!(b.kind, BlockKind::InterpolatedFree(_)))
    }

    /// `L(F_t)` when the decomposition is a single factor block.
    pub fn as_single_factor(&self) -> Option<&Scalar> {
        match self.blocks.as_slice() {
            [VNBlock {
                kind: BlockKind::InterpolatedFree(t),
                ..
            }] => Some(t),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let (kind, extra) = match &b.kind {
                    BlockKind::InterpolatedFree(t) => ("interpolated_free", json!({ "t": t.report() })),
                    BlockKind::Matrix(n) => ("matrix", json!({ "n": n })),
                    BlockKind::DiffuseHyperfinite => ("diffuse_hyperfinite", json!({})),
                    BlockKind::Atom => ("atom", json!({})),
                };
                let markers: BTreeMap<&String, Value> =
                    b.markers.iter().map(|(k, v)| (k, v.report())).collect();
                json!({
                    "kind": kind,
                    "params": extra,
                    "trace": b.trace.report(),
                    "markers": markers,
                })
            })
            .collect();
        json!({ "normalized": self.normalized, "blocks": blocks })
    }
}

impl fmt::Display for VNDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `1 + sum c^2 (t - 1) - sum c^2 / n^2` over a normalized decomposition;
/// diffuse hyperfinite blocks contribute nothing.
pub fn fdim(dec: &VNDecomposition) -> Result<Scalar> {
    if !dec.normalized || !dec.total_trace().approx_eq(&Scalar::one(), TRACE_TOLERANCE) {
        return Err(Error::NotNormalized);
    }
    let mut acc = Scalar::one();
    for b in &dec.blocks {
        let c2 = &b.trace * &b.trace;
        acc = match &b.kind {
            BlockKind::InterpolatedFree(t) => acc + c2 * (t - Scalar::one()),
            BlockKind::Matrix(n) => acc - c2 / Scalar::from(n * n),
            BlockKind::Atom => acc - c2,
            BlockKind::DiffuseHyperfinite => acc,
        };
    }
    Ok(acc)
}

/// Marker name of a vertex projection.
pub fn marker_name(graph: &WeightedGraph, v: usize) -> String {
    format!("p_{}", graph.vertices()[v].id)
}

fn ensure_normalized(graph: &WeightedGraph) -> Result<()> {
    if graph.total_weight().approx_eq(&Scalar::one(), TRACE_TOLERANCE) {
        Ok(())
    } else {
        Err(Error::NotNormalized)
    }
}

/// The algebra generated by the vertex projections and a single edge.
///
/// A loop at `v` makes `p_v` diffuse. An edge `v - w` with
/// `gamma_v >= gamma_w` gives `M_2 ⊗ L(Z)` of trace `2 gamma_w` (recorded
/// as diffuse hyperfinite) plus an atom `gamma_v - gamma_w` under `p_v`.
/// Other vertices stay atoms.
pub fn edge_algebra(edge: &Edge, graph: &WeightedGraph) -> Result<VNDecomposition> {
    ensure_normalized(graph)?;
    let mut blocks = Vec::new();
    let (v, w) = if graph.weight(edge.v).compare(graph.weight(edge.w), 0.0) == std::cmp::Ordering::Less {
        (edge.w, edge.v)
    } else {
        (edge.v, edge.w)
    };
    let gv = graph.weight(v).clone();
    let gw = graph.weight(w).clone();
    if v == w {
        blocks.push(
            VNBlock::new(BlockKind::DiffuseHyperfinite, gv.clone()).with_marker(&marker_name(graph, v), gv),
        );
    } else {
        blocks.push(
            VNBlock::new(BlockKind::DiffuseHyperfinite, &gw + &gw)
                .with_marker(&marker_name(graph, w), gw.clone())
                .with_marker(&marker_name(graph, v), gw.clone()),
        );
        let rest = &gv - &gw;
        if rest.is_positive() {
            blocks
                .push(VNBlock::new(BlockKind::Atom, rest.clone()).with_marker(&marker_name(graph, v), rest));
        }
    }
    for u in (0..graph.len()).filter(|&u| u != v && u != w) {
        let gu = graph.weight(u).clone();
        blocks.push(VNBlock::new(BlockKind::Atom, gu.clone()).with_marker(&marker_name(graph, u), gu));
    }
    VNDecomposition::new(blocks, true)
}

/// `fdim` of the diagonal algebra `l^infty(V)` with trace weights `gamma`.
pub fn diagonal_fdim(graph: &WeightedGraph) -> Scalar {
    Scalar::one()
        - graph
            .vertices()
            .iter()
            .map(|v| &v.weight * &v.weight)
            .sum::<Scalar>()
}

/// `fdim` of [`edge_algebra`] without building it; `sum_sq` is
/// `sum_u gamma_u^2` over a normalized graph.
fn edge_fdim(graph: &WeightedGraph, edge: &Edge, sum_sq: &Scalar) -> Scalar {
    let gv = graph.weight(edge.v);
    let gw = graph.weight(edge.w);
    if edge.is_loop() {
        Scalar::one() - (sum_sq - gv * gv)
    } else {
        let diff = gv - gw;
        Scalar::one() - &diff * &diff - (sum_sq - gv * gv - gw * gw)
    }
}

/// Vertices whose weight exceeds their weighted neighbour count, with the
/// excess `gamma_v - alpha_v`.
pub fn excess_vertices(graph: &WeightedGraph) -> Vec<(usize, Scalar)> {
    let alpha = graph.neighbor_weights();
    (0..graph.len())
        .filter_map(|v| {
            let r = graph.weight(v) - &alpha[v];
            r.is_positive().then_some((v, r))
        })
        .collect()
}

/// The amalgamated free product of all edge algebras over `l^infty(V)`:
/// one interpolated free group factor plus an atom for every vertex in
/// excess. The parameter is fixed by free-dimension additivity.
pub fn graph_algebra(graph: &WeightedGraph) -> Result<VNDecomposition> {
    if !graph.is_connected() {
        let dist = graph.distances_from_base();
        let missing: Vec<&str> = (0..graph.len())
            .filter(|&v| dist[v].is_none())
            .map(|v| graph.vertices()[v].id.as_str())
            .collect();
        return Err(Error::Disconnected(format!("unreachable vertices {missing:?}")));
    }
    let edge_count = graph.edge_count();
    if edge_count < 2 {
        return Err(Error::TooFewEdges(edge_count));
    }
    let g = graph.normalized();

    let sum_sq: Scalar = g.vertices().iter().map(|v| &v.weight * &v.weight).sum();
    let mut sum_edges = Scalar::zero();
    for e in g.edges() {
        sum_edges = sum_edges + Scalar::from(e.mult) * edge_fdim(&g, e, &sum_sq);
    }
    let free_dim = sum_edges - Scalar::from(edge_count as i64 - 1) * diagonal_fdim(&g);

    let atoms = excess_vertices(&g);
    let atom_trace: Scalar = atoms.iter().map(|(_, r)| r.clone()).sum();
    let atom_sq: Scalar = atoms.iter().map(|(_, r)| r * r).sum();
    let c = Scalar::one() - atom_trace;
    let t = Scalar::one() + (free_dim - Scalar::one() + atom_sq) / (&c * &c);
    if t.compare(&Scalar::one(), 0.0) != std::cmp::Ordering::Greater {
        return Err(Error::Invalid(format!(
            "solved free group parameter {t} is not above 1"
        )));
    }

    let mut factor = VNBlock::new(BlockKind::InterpolatedFree(t), c);
    let mut atom_blocks = Vec::new();
    for v in 0..g.len() {
        let name = marker_name(&g, v);
        let gv = g.weight(v).clone();
        match atoms.iter().find(|(u, _)| *u == v) {
            Some((_, r)) => {
                let inside = &gv - r;
                if inside.is_positive() {
                    factor = factor.with_marker(&name, inside);
                }
                atom_blocks.push(VNBlock::new(BlockKind::Atom, r.clone()).with_marker(&name, r.clone()));
            }
            None => factor = factor.with_marker(&name, gv),
        }
    }
    let mut blocks = vec![factor];
    blocks.extend(atom_blocks);
    VNDecomposition::new(blocks, true)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Compressed {
    /// The marker lies in the factor block: `p L(F_t) p = L(F_{t'})`.
    Parameter(Scalar),
    /// Otherwise the normalized cut-down decomposition.
    Decomposition(VNDecomposition),
}

/// Cut down by the projection `marker`.
pub fn compress(dec: &VNDecomposition, marker: &str) -> Result<Compressed> {
    let total = dec.marker_total(marker);
    if !total.is_positive() {
        return Err(Error::MissingMarker(marker.to_string()));
    }
    let rescale = |t: &Scalar, c: &Scalar, beta: &Scalar| {
        let ratio = c / beta;
        Scalar::one() + (t - Scalar::one()) * &ratio * &ratio
    };
    let carriers: Vec<&VNBlock> = dec
        .blocks
        .iter()
        .filter(|b| b.marker(marker).is_positive())
        .collect();
    if let [b] = carriers.as_slice() {
        if let BlockKind::InterpolatedFree(t) = &b.kind {
            return Ok(Compressed::Parameter(rescale(t, &b.trace, &b.marker(marker))));
        }
    }
    let mut blocks = Vec::new();
    for b in carriers {
        let beta = b.marker(marker);
        let kind = match &b.kind {
            BlockKind::InterpolatedFree(t) => BlockKind::InterpolatedFree(rescale(t, &b.trace, &beta)),
            BlockKind::DiffuseHyperfinite => BlockKind::DiffuseHyperfinite,
            BlockKind::Atom => BlockKind::Atom,
            BlockKind::Matrix(n) => {
                let k = (&beta / &b.trace * Scalar::from(*n)).to_f64().round() as u32;
                if k <= 1 {
                    BlockKind::Atom
                } else {
                    BlockKind::Matrix(k)
                }
            }
        };
        let trace = &beta / &total;
        blocks.push(VNBlock::new(kind, trace.clone()).with_marker(marker, trace));
    }
    Ok(Compressed::Decomposition(VNDecomposition::new(blocks, true)?))
}

/// Compressed parameter of the factor block at `marker`.
pub fn compressed_parameter(dec: &VNDecomposition, marker: &str) -> Result<Scalar> {
    match compress(dec, marker)? {
        Compressed::Parameter(t) => Ok(t),
        Compressed::Decomposition(d) => Err(Error::Invalid(format!(
            "projection {marker:?} is not inside the factor: {d}"
        ))),
    }
}

/// Parameter of the corner of `N(Γ)` at the base vertex.
pub fn base_parameter(graph: &WeightedGraph) -> Result<Scalar> {
    let dec = graph_algebra(graph)?;
    compressed_parameter(&dec, &marker_name(graph, graph.base()))
}

/// `1 + dim(C) (2 dim(X) - 1)` for an object `X` given by multiplicities.
pub fn closed_form_t(ring: &FusionRing, x: &[u32]) -> Scalar {
    let dim_x = ring.object_dim(x);
    Scalar::one() + global_dim(ring) * (Scalar::from(2) * dim_x - Scalar::one())
}

/// [`closed_form_t`] for a simple `X`.
pub fn closed_form_t_simple(ring: &FusionRing, x: usize) -> Scalar {
    let mut m = vec![0u32; ring.rank()];
    m[x] = 1;
    closed_form_t(ring, &m)
}

/// `1 + dim(C) (dim(Y) - 1)` with `Y` the sum of all simples.
pub fn closed_form_s(ring: &FusionRing) -> Scalar {
    let dim_y: Scalar = ring.simples().iter().map(|s| s.fp_dim.clone()).sum();
    Scalar::one() + global_dim(ring) * (dim_y - Scalar::one())
}

/// `delta_alpha^2` for a word with the given loop parameters.
pub fn jones_index(deltas: &[Scalar]) -> Scalar {
    let d: Scalar = deltas.iter().fold(Scalar::one(), |acc, x| acc * x);
    &d * &d
}

/// Divergence rule for growth sequences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthConfig {
    /// Values above this are reported as divergent outright.
    pub threshold: f64,
    /// Values above this count towards the increasing streak.
    pub bound: f64,
    /// Consecutive increases past `bound` that signal divergence.
    pub streak: usize,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            threshold: 1e6,
            bound: 10.0,
            streak: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthStep {
    pub radius: usize,
    pub vertices: usize,
    pub edges: u64,
    pub t: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub steps: Vec<GrowthStep>,
    pub monotone: bool,
    pub strictly_increasing: bool,
    /// Diagnostic only: the sequence looks unbounded.
    pub diverged: bool,
}

impl GrowthReport {
    pub fn from_steps(steps: Vec<GrowthStep>, config: &GrowthConfig) -> Self {
        let ordering: Vec<std::cmp::Ordering> =
            steps.windows(2).map(|w| w[1].t.compare(&w[0].t, 0.0)).collect();
        let monotone = ordering.iter().all(|o| *o != std::cmp::Ordering::Less);
        let strictly_increasing = ordering.iter().all(|o| *o == std::cmp::Ordering::Greater);
        let mut diverged = steps.iter().any(|s| s.t.to_f64() > config.threshold);
        let mut run = 0;
        for (i, o) in ordering.iter().enumerate() {
            if *o == std::cmp::Ordering::Greater && steps[i + 1].t.to_f64() > config.bound {
                run += 1;
                if run >= config.streak {
                    diverged = true;
                }
            } else {
                run = 0;
            }
        }
        GrowthReport {
            steps,
            monotone,
            strictly_increasing,
            diverged,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| json!({
                "radius": s.radius,
                "vertices": s.vertices,
                "edges": s.edges,
                "t": s.t.report(),
            })).collect::<Vec<_>>(),
            "monotone": self.monotone,
            "strictly_increasing": self.strictly_increasing,
            "diverged": self.diverged,
        })
    }
}

/// Corner parameters of the radius-`k` balls of an infinite family, using
/// the first `k` generator colors, for `k = 1..=max_radius`.
pub fn family_growth(
    family: &dyn InfiniteFamily,
    max_radius: usize,
    config: &GrowthConfig,
) -> Result<GrowthReport> {
    let mut steps = Vec::new();
    for k in 1..=max_radius {
        let (g, _) = truncated_graph(family, k, k);
        let t = base_parameter(&g)?;
        log::debug!("{} radius {k}: {} vertices, t = {t}", family.name(), g.len());
        steps.push(GrowthStep {
            radius: k,
            vertices: g.len(),
            edges: g.edge_count(),
            t,
        });
    }
    Ok(GrowthReport::from_steps(steps, config))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport {
    pub decomposition: VNDecomposition,
    pub t: Scalar,
    /// Ball parameters when a radius was requested.
    pub growth: Option<GrowthReport>,
}

impl FactorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t.report(),
            "decomposition": self.decomposition.to_json(),
            "growth": self.growth.as_ref().map(GrowthReport::to_json),
        })
    }
}

/// Builds the fusion graph and returns the parameter of the corner at the
/// unit; with `max_radius`, also the parameters of the balls around it.
pub fn identify_factor(
    category: &Category,
    max_radius: Option<usize>,
    config: &GrowthConfig,
) -> Result<FactorReport> {
    let fg = build_fusion_graph(&category.ring, &category.generators)?;
    let dec = graph_algebra(&fg.graph)?;
    let t = compressed_parameter(&dec, &marker_name(&fg.graph, fg.graph.base()))?;
    let growth = match max_radius {
        None => None,
        Some(r) => {
            let mut steps = Vec::new();
            for k in 0..=r {
                let ball = fg.graph.ball(k);
                if ball.edge_count() < 2 {
                    continue;
                }
                steps.push(GrowthStep {
                    radius: k,
                    vertices: ball.len(),
                    edges: ball.edge_count(),
                    t: base_parameter(&ball)?,
                });
            }
            Some(GrowthReport::from_steps(steps, config))
        }
    };
    Ok(FactorReport {
        decomposition: dec,
        t,
        growth,
    })
}
