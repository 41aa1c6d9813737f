//! Operator-valued semicircular moments over the functions on a weighted
//! graph.
//!
//! The base algebra is `C^V` with pointwise product and trace
//! `Tr(f) = sum_v gamma_v f(v)`. Each channel carries a covariance map
//! `eta(f)(v) = sum_w K[v][w] f(w)`; mixed covariances between different
//! channels vanish, so moments follow the noncrossing-pairing recurrence.

use std::collections::HashMap;

use crate::diagrams::{enumerate_ctl, Word};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

/// One semicircular variable: its label, the edge color it belongs to and
/// its covariance kernel as sparse rows.
#[derive(Clone, Debug)]
pub struct Channel {
    pub label: String,
    pub color: String,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl Channel {
    pub fn kernel(&self, v: usize, w: usize) -> Scalar {
        self.rows[v]
            .iter()
            .find(|(x, _)| *x == w)
            .map(|(_, k)| k.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

#[derive(Clone, Debug)]
pub struct MomentContext {
    graph: WeightedGraph,
    channels: Vec<Channel>,
}

fn add_entry(rows: &mut [Vec<(usize, Scalar)>], v: usize, w: usize, k: Scalar) {
    match rows[v].iter_mut().find(|(x, _)| *x == w) {
        Some((_, e)) => *e = &*e + &k,
        None => rows[v].push((w, k)),
    }
}

impl MomentContext {
    /// One channel per color: `eta_c(f)(v) = sum_w n^c_{v,w} gamma_w f(w)`.
    pub fn by_color(graph: &WeightedGraph) -> Self {
        let n = graph.len();
        let channels = graph
            .colors()
            .into_iter()
            .map(|color| {
                let mut rows = vec![Vec::new(); n];
                for e in graph.edges().iter().filter(|e| e.color == color) {
                    let m = Scalar::from(e.mult);
                    add_entry(&mut rows, e.v, e.w, &m * graph.weight(e.w));
                    if !e.is_loop() {
                        add_entry(&mut rows, e.w, e.v, &m * graph.weight(e.v));
                    }
                }
                Channel {
                    label: color.clone(),
                    color,
                    rows,
                }
            })
            .collect();
        MomentContext {
            graph: graph.clone(),
            channels,
        }
    }

    /// One channel per edge (parallel edges kept apart), labelled
    /// `color#k`. Needed for cup moments, where parallel strings must close
    /// through the same edge.
    pub fn by_edge(graph: &WeightedGraph) -> Self {
        let n = graph.len();
        let mut channels = Vec::new();
        let mut counter: HashMap<String, usize> = HashMap::new();
        for e in graph.edges() {
            for _ in 0..e.mult {
                let k = counter.entry(e.color.clone()).or_default();
                let mut rows = vec![Vec::new(); n];
                add_entry(&mut rows, e.v, e.w, graph.weight(e.w).clone());
                if !e.is_loop() {
                    add_entry(&mut rows, e.w, e.v, graph.weight(e.v).clone());
                }
                channels.push(Channel {
                    label: format!("{}#{}", e.color, k),
                    color: e.color.clone(),
                    rows,
                });
                *k += 1;
            }
        }
        MomentContext {
            graph: graph.clone(),
            channels,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn channel(&self, label: &str) -> Result<usize> {
        self.channels
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::Invalid(format!("no channel {label:?}")))
    }

    pub fn dim(&self) -> usize {
        self.graph.len()
    }

    pub fn unit(&self) -> Vector {
        vec![Scalar::one(); self.dim()]
    }

    pub fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn indicator(&self, v: usize) -> Vector {
        let mut f = self.zero();
        f[v] = Scalar::one();
        f
    }

    pub fn eta(&self, channel: usize, f: &[Scalar]) -> Vector {
        self.channels[channel]
            .rows
            .iter()
            .map(|row| row.iter().map(|(w, k)| k * &f[*w]).sum())
            .collect()
    }

    pub fn trace(&self, f: &[Scalar]) -> Scalar {
        f.iter().enumerate().map(|(v, x)| x * self.graph.weight(v)).sum()
    }
}

pub fn pointwise(f: &[Scalar], g: &[Scalar]) -> Vector {
    f.iter().zip(g).map(|(a, b)| a * b).collect()
}

/// `y_0 X_{c_1} y_1 ... X_{c_n} y_n` with channel indices `c_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentWord {
    pub ys: Vec<Vector>,
    pub letters: Vec<usize>,
}

impl MomentWord {
    pub fn new(ys: Vec<Vector>, letters: Vec<usize>) -> Result<Self> {
        if ys.len() != letters.len() + 1 {
            return Err(Error::Invalid(format!(
                "{} base elements for {} letters",
                ys.len(),
                letters.len()
            )));
        }
        Ok(MomentWord { ys, letters })
    }

    /// All base elements equal to the unit.
    pub fn plain(ctx: &MomentContext, letters: Vec<usize>) -> Self {
        MomentWord {
            ys: vec![ctx.unit(); letters.len() + 1],
            letters,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// `E(word)` by the moment recurrence, memoised on spans.
pub fn expect(ctx: &MomentContext, word: &MomentWord) -> Vector {
    let n = word.len();
    if n % 2 == 1 {
        return ctx.zero();
    }
    let mut memo: HashMap<(usize, usize), Vector> = HashMap::new();
    span(ctx, word, 0, n, &mut memo)
}

/// `E(y_i X_{c_{i+1}} ... X_{c_j} y_j)`; letters are 1-based as in the word.
fn span(
    ctx: &MomentContext,
    word: &MomentWord,
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), Vector>,
) -> Vector {
    if i == j {
        return word.ys[i].clone();
    }
    if (j - i) % 2 == 1 {
        return ctx.zero();
    }
    if let Some(v) = memo.get(&(i, j)) {
        return v.clone();
    }
    let first = word.letters[i];
    let mut acc = ctx.zero();
    for k in (i + 2..=j).step_by(2) {
        if word.letters[k - 1] != first {
            continue;
        }
        let inner = span(ctx, word, i + 1, k - 1, memo);
        let outer = span(ctx, word, k, j, memo);
        let term = pointwise(&pointwise(&word.ys[i], &ctx.eta(first, &inner)), &outer);
        acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
    }
    memo.insert((i, j), acc.clone());
    acc
}

/// `E(word)` as an explicit sum over noncrossing channel-respecting pairings
/// of the letters, each evaluated by nested covariance maps.
pub fn pairing_expect(ctx: &MomentContext, word: &MomentWord) -> Vector {
    let n = word.len();
    let labels = Word(
        word.letters
            .iter()
            .map(|&c| char::from_u32(0x4E00 + c as u32).unwrap_or('?'))
            .collect(),
    );
    let mut acc = ctx.zero();
    for pairing in enumerate_ctl(&labels) {
        let value = evaluate_pairing(ctx, word, pairing.partner(), 0, n);
        acc = acc.iter().zip(&value).map(|(a, b)| a + b).collect();
    }
    acc
}

/// Value of one pairing on the span of letters `from..to` (0-based), which is
/// closed under the pairing.
fn evaluate_pairing(
    ctx: &MomentContext,
    word: &MomentWord,
    partner: &[usize],
    from: usize,
    to: usize,
) -> Vector {
    // Walk the outermost blocks left to right: y · eta(inside) · y · ...
    let mut acc = word.ys[from].clone();
    let mut p = from;
    while p < to {
        let q = partner[p];
        let inside = evaluate_pairing(ctx, word, partner, p + 1, q);
        acc = pointwise(&acc, &ctx.eta(word.letters[p], &inside));
        acc = pointwise(&acc, &word.ys[q + 1]);
        p = q + 1;
    }
    acc
}

/// `Tr(E(X^k))` for `k = 0..=n_max`, where `X` is the sum of the given
/// channels and all base elements are the unit.
pub fn moment_sequence(ctx: &MomentContext, channels: &[usize], n_max: usize) -> Vec<Scalar> {
    let eta_sum = |f: &[Scalar]| -> Vector {
        channels.iter().fold(ctx.zero(), |acc, &c| {
            acc.iter().zip(ctx.eta(c, f)).map(|(a, b)| a + b).collect()
        })
    };
    let mut m: Vec<Vector> = vec![ctx.unit()];
    for k in 1..=n_max {
        let mut acc = ctx.zero();
        for j in (2..=k).step_by(2) {
            let term = pointwise(&eta_sum(&m[j - 2]), &m[k - j]);
            acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
        }
        m.push(acc);
    }
    m.iter().map(|f| ctx.trace(f)).collect()
}

/// `n`-th moment of the cup of color `color` localised at vertex `at`:
/// each cup closes through one edge of that color at `at`, and the result
/// is normalised by `gamma_at^{n+1}`.
pub fn cup_moments(graph: &WeightedGraph, color: &str, n: usize, at: usize) -> Result<Scalar> {
    if at >= graph.len() {
        return Err(Error::Invalid(format!("vertex {at} out of range")));
    }
    let ctx = MomentContext::by_edge(graph);
    let incident: Vec<usize> = ctx
        .channels
        .iter()
        .enumerate()
        .filter(|(_, ch)| ch.color == color && !ch.rows[at].is_empty())
        .map(|(i, _)| i)
        .collect();
    let p = ctx.indicator(at);
    let mut total = Scalar::zero();
    let mut seq = vec![0usize; n];
    if n == 0 {
        return Ok(Scalar::one());
    }
    if incident.is_empty() {
        return Ok(Scalar::zero());
    }
    loop {
        let mut ys = Vec::with_capacity(2 * n + 1);
        let mut letters = Vec::with_capacity(2 * n);
        for &s in &seq {
            ys.push(p.clone());
            ys.push(ctx.unit());
            letters.push(incident[s]);
            letters.push(incident[s]);
        }
        ys.push(p.clone());
        let word = MomentWord { ys, letters };
        total = total + ctx.trace(&expect(&ctx, &word));
        // next sequence in odometer order
        let mut i = 0;
        loop {
            if i == n {
                let norm = graph.weight(at).powi(n as u32 + 1);
                return Ok(total / norm);
            }
            seq[i] += 1;
            if seq[i] < incident.len() {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}
