//! Fusion rings, Frobenius-Perron data and fusion graphs.

pub mod bundled;
pub mod infinite;
pub mod spec_file;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::scalar::{Quadratic, Scalar};

pub use spec_file::{Category, CategorySpec};

/// Tolerance used when numerically computed data is compared.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SimpleObject {
    pub id: usize,
    pub name: String,
    pub dual: usize,
    pub fp_dim: Scalar,
}

/// A based ring with a dense multiplicity table `N[x][y][z]`.
///
/// The unit is always the simple with index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionRing {
    simples: Vec<SimpleObject>,
    table: Vec<u32>,
    supplied_dims: Vec<Option<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

impl FusionRing {
    /// Builds a ring from names, dual indices and `(x, y, z, n)` entries.
    ///
    /// FP dimensions are computed; supplied dimensions must agree with them.
    pub fn new(
        names: Vec<String>,
        duals: Vec<usize>,
        entries: &[(usize, usize, usize, u32)],
        supplied_dims: Vec<Option<Scalar>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("fusion ring needs at least one simple".into()));
        }
        if duals.len() != n || supplied_dims.len() != n {
            return Err(Error::Invalid("simple data of inconsistent length".into()));
        }
        if let Some(&d) = duals.iter().find(|&&d| d >= n) {
            return Err(Error::Invalid(format!("dual index {d} out of range")));
        }
        let mut table = vec![0u32; n * n * n];
        for &(x, y, z, m) in entries {
            if x >= n || y >= n || z >= n {
                return Err(Error::Invalid(format!(
                    "multiplicity entry ({x}, {y}, {z}) out of range"
                )));
            }
            table[(x * n + y) * n + z] = m;
        }
        let simples = names
            .into_iter()
            .enumerate()
            .map(|(id, name)| SimpleObject {
                id,
                name,
                dual: duals[id],
                fp_dim: Scalar::one(),
            })
            .collect();
        let mut ring = FusionRing {
            simples,
            table,
            supplied_dims,
        };
        let dims = compute_fp_dimensions(&ring)?;
        for (i, d) in dims.into_iter().enumerate() {
            let chosen = match &ring.supplied_dims[i] {
                Some(s) if !s.approx_eq(&d, 1e-8) => {
                    return Err(Error::Invalid(format!(
                        "supplied dimension {s} of {:?} disagrees with computed {d}",
                        ring.simples[i].name
                    )));
                }
                Some(s) if s.is_exact() && !d.is_exact() => s.clone(),
                _ => d,
            };
            ring.simples[i].fp_dim = chosen;
        }
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn simples(&self) -> &[SimpleObject] {
        &self.simples
    }

    pub fn simple(&self, id: usize) -> &SimpleObject {
        &self.simples[id]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.simples
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSimple(name.to_string()))
    }

    pub fn dual(&self, x: usize) -> usize {
        self.simples[x].dual
    }

    pub fn dim(&self, x: usize) -> &Scalar {
        &self.simples[x].fp_dim
    }

    /// `N_{x,y}^z`.
    pub fn n(&self, x: usize, y: usize, z: usize) -> u32 {
        let r = self.rank();
        self.table[(x * r + y) * r + z]
    }

    /// Nonzero `(x, y, z, n)` entries in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    let m = self.n(x, y, z);
                    if m > 0 {
                        out.push((x, y, z, m));
                    }
                }
            }
        }
        out
    }

    pub fn supplied_dims(&self) -> &[Option<Scalar>] {
        &self.supplied_dims
    }

    /// Decomposition of `a ⊗ b` for multiplicity vectors `a`, `b`.
    pub fn fuse(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.rank();
        let mut out = vec![0u64; r];
        for x in (0..r).filter(|&x| a[x] > 0) {
            for y in (0..r).filter(|&y| b[y] > 0) {
                for (z, o) in out.iter_mut().enumerate() {
                    *o += a[x] * b[y] * u64::from(self.n(x, y, z));
                }
            }
        }
        out
    }

    /// Dimension of an object given by a multiplicity vector.
    pub fn object_dim(&self, mults: &[u32]) -> Scalar {
        mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(z, &m)| Scalar::from(m) * self.dim(z))
            .sum()
    }
}

/// The fusion-ring identities that fail, as data.
pub fn validate_ring(ring: &FusionRing) -> Vec<Violation> {
    let r = ring.rank();
    let mut out = Vec::new();
    let u = ring.unit();
    let kron = |a: usize, b: usize| u32::from(a == b);

    for x in 0..r {
        let d = ring.dual(x);
        if ring.dual(d) != x {
            out.push(Violation {
                law: "dual involution",
                detail: format!("dual(dual({x})) = {}", ring.dual(d)),
            });
        }
        if !ring.dim(x).approx_eq(ring.dim(d), TOLERANCE) {
            out.push(Violation {
                law: "dual dimension",
                detail: format!("dim({x}) != dim(dual({x}))"),
            });
        }
    }
    if ring.dual(u) != u {
        out.push(Violation {
            law: "unit law",
            detail: "unit is not self-dual".into(),
        });
    }
    for y in 0..r {
        for z in 0..r {
            if ring.n(u, y, z) != kron(y, z) {
                out.push(Violation {
                    law: "unit law",
                    detail: format!("N[1,{y}]^{z} = {}", ring.n(u, y, z)),
                });
            }
            if ring.n(y, u, z) != kron(y, z) {
                out.push(Violation {
                    law: "unit law",
                    detail: format!("N[{y},1]^{z} = {}", ring.n(y, u, z)),
                });
            }
        }
    }
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                let a = ring.n(x, y, z);
                let b = ring.n(z, ring.dual(y), x);
                let c = ring.n(ring.dual(x), z, y);
                if a != b || a != c {
                    out.push(Violation {
                        law: "Frobenius reciprocity",
                        detail: format!(
                            "N[{x},{y}]^{z} = {a}, N[{z},{}]^{x} = {b}, N[{},{z}]^{y} = {c}",
                            ring.dual(y),
                            ring.dual(x)
                        ),
                    });
                }
            }
        }
    }
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                for t in 0..r {
                    let lhs: u64 = (0..r)
                        .map(|w| u64::from(ring.n(x, y, w)) * u64::from(ring.n(w, z, t)))
                        .sum();
                    let rhs: u64 = (0..r)
                        .map(|w| u64::from(ring.n(y, z, w)) * u64::from(ring.n(x, w, t)))
                        .sum();
                    if lhs != rhs {
                        out.push(Violation {
                            law: "associativity",
                            detail: format!("(({x}{y}){z})^{t} = {lhs} but ({x}({y}{z}))^{t} = {rhs}"),
                        });
                    }
                }
            }
        }
    }
    for x in 0..r {
        for y in 0..r {
            let lhs = ring.dim(x) * ring.dim(y);
            let rhs: Scalar = (0..r)
                .filter(|&z| ring.n(x, y, z) > 0)
                .map(|z| Scalar::from(ring.n(x, y, z)) * ring.dim(z))
                .sum();
            if !lhs.approx_eq(&rhs, TOLERANCE) {
                out.push(Violation {
                    law: "dimension equation",
                    detail: format!("dim({x}) dim({y}) = {lhs} but sum = {rhs}"),
                });
            }
        }
    }
    for (x, s) in ring.supplied_dims().iter().enumerate() {
        if let Some(s) = s {
            if !s.approx_eq(ring.dim(x), 1e-8) {
                out.push(Violation {
                    law: "supplied dimension",
                    detail: format!("dim({x}) supplied {s}, computed {}", ring.dim(x)),
                });
            }
        }
    }
    out
}

/// FP dimensions (as stored on the ring after construction).
pub fn fp_dimensions(ring: &FusionRing) -> Vec<Scalar> {
    ring.simples.iter().map(|s| s.fp_dim.clone()).collect()
}

/// `sum_Z dim(Z)^2`.
pub fn global_dim(ring: &FusionRing) -> Scalar {
    ring.simples.iter().map(|s| &s.fp_dim * &s.fp_dim).sum()
}

fn regular_matrix(ring: &FusionRing) -> Vec<Vec<u64>> {
    let r = ring.rank();
    let mut m = vec![vec![0u64; r]; r];
    for (x, row) in m.iter_mut().enumerate() {
        for y in 0..r {
            for (z, entry) in row.iter_mut().enumerate() {
                *entry += u64::from(ring.n(x, y, z));
            }
        }
    }
    m
}

fn strongly_connected(m: &[Vec<u64>]) -> bool {
    let r = m.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; r];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for w in 0..r {
                let nz = if forward { m[v][w] } else { m[w][v] } > 0;
                if nz && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Perron eigenvector of the regular-object matrix normalised at the unit,
/// recognised exactly in `Q(sqrt d)` when possible.
fn compute_fp_dimensions(ring: &FusionRing) -> Result<Vec<Scalar>> {
    let m = regular_matrix(ring);
    if !strongly_connected(&m) {
        return Err(Error::Reducible(
            "regular-object fusion matrix is not irreducible".into(),
        ));
    }
    let r = ring.rank();
    let mut v = vec![1.0f64; r];
    for _ in 0..100_000 {
        // (M + I) is primitive, so the iteration converges.
        let mut next: Vec<f64> = (0..r)
            .map(|x| v[x] + (0..r).map(|z| m[x][z] as f64 * v[z]).sum::<f64>())
            .collect();
        let scale = next[ring.unit()];
        next.iter_mut().for_each(|x| *x /= scale);
        let change = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if change < 1e-15 {
            break;
        }
    }
    if let Some(exact) = recognize_dims(ring, &v) {
        return Ok(exact);
    }
    log::debug!("FP dimensions not recognised exactly; using floats");
    Ok(v.into_iter().map(Scalar::Approx).collect())
}

/// Searches `a + b sqrt(d)` with small denominators matching `x`.
pub fn recognize_quadratic(x: f64, radicand: u32) -> Option<Quadratic> {
    let root = f64::from(radicand).sqrt();
    for den in [1i64, 2, 3, 4, 6, 8, 12] {
        let bmax = if radicand == 1 { 0 } else { 8 * den };
        for bn in -bmax..=bmax {
            let b = bn as f64 / den as f64;
            let an = ((x - b * root) * den as f64).round();
            let candidate = an / den as f64 + b * root;
            if (candidate - x).abs() < 1e-9 {
                let q = Quadratic::new(
                    BigRational::new(BigInt::from(an as i64), BigInt::from(den)),
                    BigRational::new(BigInt::from(bn), BigInt::from(den)),
                    radicand,
                );
                return Some(q);
            }
        }
    }
    None
}

fn recognize_dims(ring: &FusionRing, v: &[f64]) -> Option<Vec<Scalar>> {
    'field: for d in [1u32, 2, 3, 5] {
        let mut dims = Vec::with_capacity(v.len());
        for &x in v {
            match recognize_quadratic(x, d) {
                Some(q) => dims.push(Scalar::Exact(q)),
                None => continue 'field,
            }
        }
        // Verify the dimension equation exactly.
        let r = ring.rank();
        for x in 0..r {
            for y in 0..r {
                let lhs = &dims[x] * &dims[y];
                let rhs: Scalar = (0..r)
                    .filter(|&z| ring.n(x, y, z) > 0)
                    .map(|z| Scalar::from(ring.n(x, y, z)) * &dims[z])
                    .sum();
                if !lhs.exact_eq(&rhs) {
                    continue 'field;
                }
            }
        }
        return Some(dims);
    }
    None
}

/// An object `⊕ m_z z` used as a generator of a fusion graph color.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorObject {
    pub color: String,
    pub multiplicities: Vec<u32>,
    pub delta: Scalar,
}

impl GeneratorObject {
    pub fn new(ring: &FusionRing, color: &str, multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.len() != ring.rank() {
            return Err(Error::Invalid(format!(
                "generator {color:?} has {} multiplicities for {} simples",
                multiplicities.len(),
                ring.rank()
            )));
        }
        let delta = ring.object_dim(&multiplicities);
        Ok(GeneratorObject {
            color: color.to_string(),
            multiplicities,
            delta,
        })
    }

    /// `X ⊕ X̄` for a simple `X`.
    pub fn doubled(ring: &FusionRing, color: &str, x: usize) -> Result<Self> {
        let mut m = vec![0u32; ring.rank()];
        m[x] += 1;
        m[ring.dual(x)] += 1;
        Self::new(ring, color, m)
    }

    pub fn is_symmetrically_self_dual(&self, ring: &FusionRing) -> bool {
        (0..ring.rank()).all(|z| self.multiplicities[z] == self.multiplicities[ring.dual(z)])
    }

    pub fn as_vector(&self) -> Vec<u64> {
        self.multiplicities.iter().map(|&m| u64::from(m)).collect()
    }
}

/// Multiplicity vector of a tensor word; the empty word is the unit.
pub fn tensor_decompose(ring: &FusionRing, word: &[&GeneratorObject]) -> Vec<u64> {
    let mut v = vec![0u64; ring.rank()];
    v[ring.unit()] = 1;
    for g in word {
        v = ring.fuse(&v, &g.as_vector());
    }
    v
}

/// `dim Hom(alpha, beta)`.
pub fn hom_dim(ring: &FusionRing, alpha: &[&GeneratorObject], beta: &[&GeneratorObject]) -> u64 {
    let a = tensor_decompose(ring, alpha);
    let b = tensor_decompose(ring, beta);
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionGraph {
    pub graph: WeightedGraph,
    /// Loop parameter per color.
    pub deltas: BTreeMap<String, Scalar>,
    /// Ring index of each graph vertex.
    pub simples: Vec<usize>,
}

/// Fusion graph of `ring` with respect to `generators`, restricted to the
/// simples reachable from the unit.
pub fn build_fusion_graph(ring: &FusionRing, generators: &[GeneratorObject]) -> Result<FusionGraph> {
    let r = ring.rank();
    let mut deltas = BTreeMap::new();
    // mult[g][v][w] = N_{v,Y_g}^w
    let mut mults = Vec::with_capacity(generators.len());
    for g in generators {
        if !g.is_symmetrically_self_dual(ring) {
            return Err(Error::NotSelfDual(g.color.clone()));
        }
        if deltas.insert(g.color.clone(), g.delta.clone()).is_some() {
            return Err(Error::Invalid(format!("duplicate color {:?}", g.color)));
        }
        let gv = g.as_vector();
        let mut m = vec![vec![0u32; r]; r];
        for (v, row) in m.iter_mut().enumerate() {
            let mut unit = vec![0u64; r];
            unit[v] = 1;
            for (w, x) in ring.fuse(&unit, &gv).into_iter().enumerate() {
                row[w] = x as u32;
            }
        }
        mults.push(m);
    }

    let mut seen = vec![false; r];
    seen[ring.unit()] = true;
    let mut queue = VecDeque::from([ring.unit()]);
    while let Some(v) = queue.pop_front() {
        for m in &mults {
            for w in 0..r {
                if m[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let simples: Vec<usize> = (0..r).filter(|&v| seen[v]).collect();
    for v in (0..r).filter(|&v| !seen[v]) {
        log::warn!(
            "simple {:?} is not reachable from the unit with the given generators",
            ring.simple(v).name
        );
    }

    let vertices = simples
        .iter()
        .map(|&v| Vertex {
            id: ring.simple(v).name.clone(),
            weight: ring.dim(v).clone(),
        })
        .collect();
    let mut graph = WeightedGraph::new(vertices, 0)?;
    for (g, m) in generators.iter().zip(&mults) {
        for (i, &v) in simples.iter().enumerate() {
            for (j, &w) in simples.iter().enumerate().skip(i) {
                graph.add_edge(i, j, &g.color, m[v][w])?;
            }
        }
    }
    Ok(FusionGraph {
        graph,
        deltas,
        simples,
    })
}

/// Radius-`radius` ball around the unit vertex.
pub fn ball_subgraph(fg: &FusionGraph, radius: usize) -> FusionGraph {
    let dist = fg.graph.distances_from_base();
    let keep: Vec<usize> = (0..fg.graph.len())
        .filter(|&v| matches!(dist[v], Some(d) if d <= radius))
        .collect();
    FusionGraph {
        graph: fg.graph.induced(&keep),
        deltas: fg.deltas.clone(),
        simples: keep.iter().map(|&v| fg.simples[v]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::bundled;
    use super::*;

    #[test]
    fn fibonacci_dimensions_are_exact() {
        let ring = bundled::fibonacci().ring;
        let d = fp_dimensions(&ring);
        assert!(d[0].exact_eq(&Scalar::one()));
        assert!(d[1].exact_eq(&Scalar::golden_ratio()));
        assert!((d[1].to_f64() - 1.618_033_988_7).abs() < 1e-10);
        let g = global_dim(&ring);
        let expected = (Scalar::from(5) + Scalar::sqrt_of(5)) / Scalar::from(2);
        assert!(g.exact_eq(&expected));
    }

    #[test]
    fn ising_and_z2_dimensions() {
        let ising = bundled::ising().ring;
        let d = fp_dimensions(&ising);
        assert!(d[1].exact_eq(&Scalar::sqrt_of(2)));
        assert!(d[2].exact_eq(&Scalar::one()));
        assert!(global_dim(&ising).exact_eq(&Scalar::from(4)));
        let z2 = bundled::cyclic(2).ring;
        assert!(fp_dimensions(&z2).iter().all(|x| x.exact_eq(&Scalar::one())));
        assert!(global_dim(&z2).exact_eq(&Scalar::from(2)));
    }

    #[test]
    fn bundled_rings_validate() {
        for name in bundled::NAMES {
            let c = bundled::by_name(name).unwrap();
            assert_eq!(validate_ring(&c.ring), vec![], "{name}");
        }
    }

    #[test]
    fn unit_law_violation_is_reported() {
        let ring = FusionRing::new(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (1, 1, 0, 1),
                (1, 1, 1, 1),
                (0, 1, 0, 1),
            ],
            vec![None, None],
        )
        .unwrap();
        let v = validate_ring(&ring);
        assert!(v.iter().any(|x| x.law == "unit law"), "{v:?}");
    }

    #[test]
    fn supplied_dims_must_agree() {
        let err = FusionRing::new(
            vec!["1".into(), "g".into()],
            vec![0, 1],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
            vec![None, Some(Scalar::from(2))],
        );
        assert!(err.is_err());
    }

    #[test]
    fn reducible_data_is_rejected() {
        // Two decoupled units: 0 and 1 never mix.
        let err = FusionRing::new(
            vec!["a".into(), "b".into()],
            vec![0, 1],
            &[(0, 0, 0, 1), (1, 1, 1, 1)],
            vec![None, None],
        );
        assert!(matches!(err, Err(Error::Reducible(_))));
    }

    #[test]
    fn tensor_and_hom_examples() {
        let fib = bundled::fibonacci().ring;
        let tau = GeneratorObject::new(&fib, "t", vec![0, 1]).unwrap();
        assert_eq!(tensor_decompose(&fib, &[&tau, &tau]), vec![1, 1]);
        assert_eq!(tensor_decompose(&fib, &[]), vec![1, 0]);
        assert_eq!(hom_dim(&fib, &[&tau, &tau], &[&tau, &tau]), 2);
        assert_eq!(hom_dim(&fib, &[], &[]), 1);
        assert_eq!(hom_dim(&fib, &[&tau], &[]), 0);

        let z2 = bundled::cyclic(2).ring;
        let gg = GeneratorObject::new(&z2, "c", vec![0, 2]).unwrap();
        assert_eq!(tensor_decompose(&z2, &[&gg, &gg]), vec![4, 0]);
    }

    #[test]
    fn fusion_graph_examples() {
        let z2 = bundled::cyclic(2);
        let fg = build_fusion_graph(&z2.ring, &z2.generators).unwrap();
        assert_eq!(fg.graph.len(), 2);
        assert_eq!(fg.graph.edges().len(), 1);
        assert_eq!(fg.graph.edges()[0].mult, 2);
        assert!(!fg.graph.edges()[0].is_loop());

        let triv = bundled::trivial();
        let fg = build_fusion_graph(&triv.ring, &triv.generators).unwrap();
        assert_eq!(fg.graph.len(), 1);
        assert_eq!(fg.graph.edges()[0].mult, 2);
        assert!(fg.graph.edges()[0].is_loop());

        let fib = bundled::fibonacci();
        let fg = build_fusion_graph(&fib.ring, &fib.generators).unwrap();
        assert_eq!(fg.graph.len(), 2);
        let e = fg.graph.edges();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].v, e[0].w, e[0].mult), (0, 1, 2));
        assert_eq!((e[1].v, e[1].w, e[1].mult), (1, 1, 2));
    }

    #[test]
    fn fp_weight_equation_holds_exactly() {
        for name in bundled::NAMES {
            let c = bundled::by_name(name).unwrap();
            let fg = build_fusion_graph(&c.ring, &c.generators).unwrap();
            for (color, v, res) in fg.graph.fp_residuals(&fg.deltas) {
                assert!(res.is_zero(), "{name} {color} {v}: {res}");
                assert!(res.is_exact(), "{name}");
            }
        }
    }

    #[test]
    fn non_self_dual_generator_is_rejected() {
        let z3 = bundled::cyclic(3).ring;
        let g = GeneratorObject::new(&z3, "c", vec![0, 1, 0]).unwrap();
        assert!(matches!(
            build_fusion_graph(&z3, &[g]),
            Err(Error::NotSelfDual(_))
        ));
    }

    #[test]
    fn unreachable_simples_are_dropped() {
        let z4 = bundled::cyclic(4).ring;
        let g = GeneratorObject::new(&z4, "c", vec![0, 0, 2, 0]).unwrap();
        let fg = build_fusion_graph(&z4, &[g]).unwrap();
        assert_eq!(fg.simples, vec![0, 2]);
    }

    #[test]
    fn balls() {
        let z2 = bundled::cyclic(2);
        let fg = build_fusion_graph(&z2.ring, &z2.generators).unwrap();
        let b = ball_subgraph(&fg, 0);
        assert_eq!(b.graph.len(), 1);
        assert!(b.graph.edges().is_empty());
        let fib = bundled::fibonacci();
        let fg = build_fusion_graph(&fib.ring, &fib.generators).unwrap();
        assert_eq!(ball_subgraph(&fg, 1), fg);
        assert_eq!(ball_subgraph(&fg, 10), fg);
    }

    #[test]
    fn recognizes_golden_ratio() {
        let q = recognize_quadratic(1.618_033_988_749_895, 5).unwrap();
        assert_eq!(q.to_string(), "1/2+1/2*sqrt(5)");
        assert!(recognize_quadratic(std::f64::consts::PI, 5).is_none());
    }
}
