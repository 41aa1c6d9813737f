//! Colored Temperley-Lieb diagram algebra: the concatenation product `∧`,
//! the orthogonalised product `⋆`, their traces, and the map `phi` that
//! intertwines them.

pub mod diagram;
pub mod element;
pub mod poly;

use std::collections::BTreeMap;

use nalgebra::DMatrix;

pub use diagram::{catalan, enumerate_ctl, epi_ctl, Diagram, EpiDiagram, Word};
pub use element::Element;
pub use poly::{LoopPoly, Monomial};

/// Result of joining strings: pairs among the free points (in the caller's
/// numbering) and the colors of the closed loops.
struct Glued {
    pairs: Vec<(usize, usize)>,
    loops: Vec<char>,
}

/// Joins the perfect matching `inner` with the partial matching `link`.
///
/// Points not touched by `link` are free; every path alternates
/// `inner`/`link` steps and ends at free points, every cycle is a loop.
fn glue(colors: &[char], inner: &[usize], link: &[Option<usize>]) -> Glued {
    let n = inner.len();
    let mut seen = vec![false; n];
    let mut pairs = Vec::new();
    for f in 0..n {
        if seen[f] || link[f].is_some() {
            continue;
        }
        let mut p = f;
        loop {
            seen[p] = true;
            let q = inner[p];
            seen[q] = true;
            match link[q] {
                None => {
                    pairs.push((f, q));
                    break;
                }
                Some(r) => p = r,
            }
        }
    }
    let mut loops = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut p = s;
        loop {
            seen[p] = true;
            let q = inner[p];
            seen[q] = true;
            let r = link[q].expect("unvisited points are linked");
            if r == s {
                break;
            }
            p = r;
        }
        loops.push(colors[s]);
    }
    Glued { pairs, loops }
}

/// Builds the diagram on the free points listed in `order` (global indices).
fn diagram_on(colors: &[char], order: &[usize], pairs: &[(usize, usize)]) -> Diagram {
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut partner = vec![0; order.len()];
    for &(a, b) in pairs {
        partner[pos[&a]] = pos[&b];
        partner[pos[&b]] = pos[&a];
    }
    let word = Word(order.iter().map(|&p| colors[p]).collect());
    Diagram::from_partner_unchecked(word, partner)
}

/// Juxtaposition of basis diagrams.
pub fn wedge_diagrams(x: &Diagram, y: &Diagram) -> Diagram {
    x.juxtapose(y)
}

/// `∧`: bilinear juxtaposition.
pub fn wedge(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (dx, cx) in x.terms() {
        for (dy, cy) in y.terms() {
            out.add_term(dx.juxtapose(dy), cx * cy);
        }
    }
    out
}

/// `⋆` on basis diagrams: sum over contractions of the last `g` points of `x`
/// with the first `g` points of `y`, nested.
pub fn star_diagrams(x: &Diagram, y: &Diagram) -> Element {
    let a = x.len();
    let b = y.len();
    let joined = x.juxtapose(y);
    let colors = joined.word().letters();
    let mut out = Element::zero();
    for g in 0..=a.min(b) {
        if (0..g).any(|i| colors[a - g + i] != colors[a + g - 1 - i]) {
            continue;
        }
        let mut link = vec![None; a + b];
        for i in 0..g {
            link[a - g + i] = Some(a + g - 1 - i);
            link[a + g - 1 - i] = Some(a - g + i);
        }
        let glued = glue(colors, joined.partner(), &link);
        let order: Vec<usize> = (0..a - g).chain(a + g..a + b).collect();
        let d = diagram_on(colors, &order, &glued.pairs);
        out.add_term(d, LoopPoly::loops(&glued.loops));
    }
    out
}

/// `⋆`: bilinear extension of [`star_diagrams`].
pub fn star(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (dx, cx) in x.terms() {
        for (dy, cy) in y.terms() {
            out.add_scaled(&star_diagrams(dx, dy), &(cx * cy));
        }
    }
    out
}

/// `*`: reflection of every diagram; coefficients are real.
pub fn involution(x: &Element) -> Element {
    let mut out = Element::zero();
    for (d, c) in x.terms() {
        out.add_term(d.reflect(), c.clone());
    }
    out
}

/// Loop count of `x` capped by `e` on the same word.
pub fn closure_loops(x: &Diagram, e: &Diagram) -> Vec<char> {
    let link: Vec<Option<usize>> = e.partner().iter().map(|&p| Some(p)).collect();
    glue(x.word().letters(), x.partner(), &link).loops
}

/// Trace of a basis diagram: sum over all caps by CTL diagrams.
pub fn trace_wedge_diagram(x: &Diagram) -> LoopPoly {
    let mut out = LoopPoly::zero();
    for e in enumerate_ctl(x.word()) {
        out = &out + &LoopPoly::loops(&closure_loops(x, &e));
    }
    out
}

pub fn trace_wedge(x: &Element) -> LoopPoly {
    let mut cache: BTreeMap<Word, Vec<Diagram>> = BTreeMap::new();
    let mut out = LoopPoly::zero();
    for (d, c) in x.terms() {
        let caps = cache
            .entry(d.word().clone())
            .or_insert_with(|| enumerate_ctl(d.word()));
        for e in caps.iter() {
            out = &out + &(c * &LoopPoly::loops(&closure_loops(d, e)));
        }
    }
    out
}

/// Coefficient of the empty diagram.
pub fn trace_star(x: &Element) -> LoopPoly {
    x.coefficient(&Diagram::empty())
}

/// `E ∘ x` for an epi diagram `E` stacked on `x`.
pub fn compose_epi(e: &EpiDiagram, x: &Diagram) -> (Diagram, LoopPoly) {
    let n = x.len();
    let mut link = vec![None; n];
    for (i, j) in e.cups() {
        link[i] = Some(j);
        link[j] = Some(i);
    }
    let glued = glue(x.word().letters(), x.partner(), &link);
    let order = e.through();
    let d = diagram_on(x.word().letters(), &order, &glued.pairs);
    (d, LoopPoly::loops(&glued.loops))
}

/// `phi` on a basis diagram: sum over all epi diagrams stacked on top.
pub fn phi_diagram(x: &Diagram) -> Element {
    let n = x.len();
    let colors = x.word().letters();
    let mut out = Element::zero();
    for (cups, through) in diagram::epi_patterns(colors, 0, n) {
        let mut link = vec![None; n];
        for (i, j) in cups {
            link[i] = Some(j);
            link[j] = Some(i);
        }
        let glued = glue(colors, x.partner(), &link);
        let d = diagram_on(colors, &through, &glued.pairs);
        out.add_term(d, LoopPoly::loops(&glued.loops));
    }
    out
}

/// `phi`, extended linearly; the result is graded by exposed word.
pub fn phi(x: &Element) -> Element {
    let mut out = Element::zero();
    for (d, c) in x.terms() {
        out.add_scaled(&phi_diagram(d), c);
    }
    out
}

/// Inverse of `phi` by back-substitution from the longest boundary down:
/// the top-length part of `phi(x)` is `x` itself.
pub fn phi_inverse(y: &Element) -> Element {
    let mut rest = y.clone();
    let mut out = Element::zero();
    while let Some(len) = rest.max_len() {
        let lead = rest.component_of_len(len);
        rest = rest.sub(&phi(&lead));
        out = out.add(&lead);
    }
    out
}

/// `trace_star(x ⋆ y*)` over the CTL basis of `word`, evaluated at `delta`.
pub fn gram_matrix(word: &Word, delta: &dyn Fn(char) -> f64) -> DMatrix<f64> {
    let basis = enumerate_ctl(word);
    let n = basis.len();
    DMatrix::from_fn(n, n, |i, j| {
        let p = trace_star(&star_diagrams(&basis[i], &basis[j].reflect()));
        p.eval_f64(delta)
    })
}

/// Smallest eigenvalue of a symmetric matrix (`+inf` for the empty one).
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Every basis diagram over `alphabet` with boundary length at most `max_len`.
pub fn all_diagrams(alphabet: &[char], max_len: usize) -> Vec<Diagram> {
    (0..=max_len)
        .step_by(2)
        .flat_map(|len| Word::all(alphabet, len))
        .flat_map(|w| enumerate_ctl(&w))
        .collect()
}
