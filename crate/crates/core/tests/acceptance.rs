//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tlfree::diagrams::{
    all_diagrams, gram_matrix, involution, min_eigenvalue, phi, phi_inverse, star, trace_star, trace_wedge,
    wedge, Element, Word,
};
use tlfree::fusion::build_fusion_graph;
use tlfree::fusion::bundled;
use tlfree::fusion::infinite::IntegerGroup;
use tlfree::gjs::{cup_moments, expect, pairing_expect, MomentContext, MomentWord, Vector};
use tlfree::graph::{Vertex, WeightedGraph};
use tlfree::spectra::{contained_in_unit_band, spectrum_bounds, verify_cyclic, PerturbedShift};
use tlfree::vnfactor::{
    base_parameter, closed_form_t, family_growth, graph_algebra, identify_factor, GrowthConfig,
};
use tlfree::Scalar;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_form_parameter() -> Outcome {
    let mut summary = Vec::new();
    for name in ["trivial", "z2", "z3", "fibonacci", "ising", "rep_s3"] {
        let cat = bundled::by_name(name).ok_or(format!("{name} missing"))?;
        let report =
            identify_factor(&cat, None, &GrowthConfig::default()).map_err(|e| format!("{name}: {e}"))?;
        let g = &cat.generators[0];
        let x = cat
            .generator_half(g)
            .ok_or(format!("{name}: generator is not X + dual X"))?;
        let mut m = vec![0u32; cat.ring.rank()];
        m[x] = 1;
        let expected = closed_form_t(&cat.ring, &m);
        let agree = if report.t.is_exact() && expected.is_exact() {
            report.t.exact_eq(&expected)
        } else {
            (report.t.to_f64() - expected.to_f64()).abs() <= 1e-9
        };
        ensure(agree, || {
            format!("{name}: pipeline {} vs closed form {expected}", report.t)
        })?;
        ensure(report.t.is_exact(), || format!("{name}: value not exact"))?;
        summary.push(format!("{name}={}", report.t));
    }
    Ok(summary.join(", "))
}

fn two_loop_base_case() -> Outcome {
    let mut g = WeightedGraph::new(
        vec![Vertex {
            id: "v".into(),
            weight: Scalar::one(),
        }],
        0,
    )
    .map_err(|e| e.to_string())?;
    g.add_edge(0, 0, "a", 2).map_err(|e| e.to_string())?;
    let dec = graph_algebra(&g).map_err(|e| e.to_string())?;
    let t = dec
        .as_single_factor()
        .ok_or(format!("not a single factor: {dec}"))?;
    ensure(t.exact_eq(&Scalar::from(2)), || format!("got {dec}"))?;
    Ok(dec.to_string())
}

fn phi_isomorphism() -> Outcome {
    let basis = all_diagrams(&['c', 'd'], 8);
    let mut pairs = 0usize;
    let phis: Vec<Element> = basis.iter().map(|x| phi(&Element::diagram(x.clone()))).collect();
    for (i, x) in basis.iter().enumerate() {
        let ex = Element::diagram(x.clone());
        ensure(phi_inverse(&phis[i]) == ex, || format!("round trip fails at {x}"))?;
        ensure(trace_star(&phis[i]) == trace_wedge(&ex), || {
            format!("trace transport fails at {x}")
        })?;
        ensure(phi(&involution(&ex)) == involution(&phis[i]), || {
            format!("star compatibility fails at {x}")
        })?;
        for (j, y) in basis.iter().enumerate() {
            if x.len() + y.len() > 8 {
                continue;
            }
            let lhs = phi(&wedge(&ex, &Element::diagram(y.clone())));
            let rhs = star(&phis[i], &phis[j]);
            ensure(lhs == rhs, || format!("homomorphism fails at {x}, {y}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} diagrams, {pairs} pairs", basis.len()))
}

fn positivity() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut checked = 0;
    for delta in [2.0, 3.0] {
        for len in (2..=6).step_by(2) {
            for w in Word::all(&['c', 'd'], len) {
                let g = gram_matrix(&w, &|_| delta);
                if g.nrows() == 0 {
                    continue;
                }
                let m = min_eigenvalue(&g);
                ensure(m > 1e-9, || {
                    format!("word {w} at delta {delta}: min eigenvalue {m}")
                })?;
                worst = worst.min(m);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} Gram matrices, smallest eigenvalue {worst:.6}"))
}

fn spectral_lemma() -> Outcome {
    let mut lines = Vec::new();
    for delta in [1.1, 1.21, 2.0, 4.0, 100.0] {
        let p = PerturbedShift::new(delta, 1000).map_err(|e| e.to_string())?;
        ensure(contained_in_unit_band(&p), || {
            format!("delta {delta}: eigenvalue outside [-2, 2]")
        })?;
        let (lo, hi) = spectrum_bounds(&p);
        ensure((-2.0..=2.0).contains(&lo) && (-2.0..=2.0).contains(&hi), || {
            format!("delta {delta}: bounds {lo}, {hi}")
        })?;
        lines.push(format!("{delta}:[{lo:.6},{hi:.6}]"));
    }
    let p = PerturbedShift::new(2.0, 100).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for n in 0..=20 {
        let dev = verify_cyclic(&p, n).map_err(|e| e.to_string())?;
        ensure(dev <= 1e-10, || format!("p_{n}(Y)e_0 deviates by {dev}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("{}; cyclic deviation {worst:e}", lines.join(" ")))
}

fn random_vector(rng: &mut StdRng, n: usize) -> Vector {
    (0..n).map(|_| Scalar::from(rng.gen_range(-3i64..=3))).collect()
}

fn moment_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut words = 0;
    for cat in [bundled::fibonacci(), bundled::cyclic(2)] {
        let fg = build_fusion_graph(&cat.ring, &cat.generators).map_err(|e| e.to_string())?;
        let g = &fg.graph;
        for ctx in [MomentContext::by_color(g), MomentContext::by_edge(g)] {
            let k = ctx.channels().len();
            let n_vertices = ctx.dim();
            let basis: Vec<Vector> = std::iter::once(ctx.unit())
                .chain((0..n_vertices).map(|v| ctx.indicator(v)))
                .collect();
            for n in 0..=8usize {
                // Exhaustive letters, y's cycling through basis vectors,
                // plus random integer y's.
                let total = k.pow(n as u32);
                for code in 0..total {
                    let letters: Vec<usize> = (0..n).map(|i| (code / k.pow(i as u32)) % k).collect();
                    let ys_basis: Vec<Vector> =
                        (0..=n).map(|i| basis[(code + i) % basis.len()].clone()).collect();
                    let ys_random: Vec<Vector> =
                        (0..=n).map(|_| random_vector(&mut rng, n_vertices)).collect();
                    for ys in [ys_basis, ys_random] {
                        let w = MomentWord::new(ys, letters.clone()).map_err(|e| e.to_string())?;
                        let a = expect(&ctx, &w);
                        let b = pairing_expect(&ctx, &w);
                        let same = a.iter().zip(&b).all(|(x, y)| x.exact_eq(y));
                        ensure(same, || format!("{}: word {letters:?} differs", cat.name))?;
                        words += 1;
                    }
                }
            }
        }
        let delta = fg.deltas["a"].clone();
        for n in 1..=6usize {
            let cups = (0..n).fold(Element::one(), |acc, _| wedge(&acc, &Element::cup('a')));
            let diagrammatic = trace_wedge(&cups).eval_scalar(&|_| delta.clone());
            let moment = cup_moments(g, "a", n, g.base()).map_err(|e| e.to_string())?;
            ensure(moment.exact_eq(&diagrammatic), || {
                format!(
                    "{}: cup moment {n} is {moment}, diagrams give {diagrammatic}",
                    cat.name
                )
            })?;
        }
    }
    Ok(format!("{words} moment words, cup moments n <= 6 on both graphs"))
}

fn growth_diagnostic() -> Outcome {
    let report = family_growth(&IntegerGroup, 6, &GrowthConfig::default()).map_err(|e| e.to_string())?;
    let ts: Vec<String> = report.steps.iter().map(|s| s.t.to_string()).collect();
    ensure(report.strictly_increasing, || {
        format!("not strictly increasing: {ts:?}")
    })?;
    ensure(report.steps.iter().all(|s| s.t.is_exact()), || {
        "inexact values".into()
    })?;
    // Unboundedness: the default divergence rule fires within these radii.
    ensure(report.diverged, || format!("no divergence signal: {ts:?}"))?;
    Ok(format!("t_1..t_6 = {}", ts.join(", ")))
}

fn star_bound() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    let mut tightest = f64::INFINITY;
    for _ in 0..400 {
        let n: u32 = rng.gen_range(2..=8);
        let leaves = rng.gen_range(1..=n) as usize;
        // multiplicities: each leaf at least one edge, total n
        let mut mult = vec![1u32; leaves];
        for _ in 0..(n as usize - leaves) {
            let i = rng.gen_range(0..leaves);
            mult[i] += 1;
        }
        let center = Scalar::from_ratio(rng.gen_range(1..=6), 6);
        let mut vertices = vec![Vertex {
            id: "center".into(),
            weight: center.clone(),
        }];
        for i in 0..leaves {
            let extra = Scalar::from_ratio(rng.gen_range(0..=24), 6);
            vertices.push(Vertex {
                id: format!("leaf{i}"),
                weight: &center + &extra,
            });
        }
        let mut g = WeightedGraph::new(vertices, 0).map_err(|e| e.to_string())?;
        for (i, &m) in mult.iter().enumerate() {
            g.add_edge(0, i + 1, "a", m).map_err(|e| e.to_string())?;
        }
        let t = base_parameter(&g).map_err(|e| e.to_string())?;
        let margin = t.to_f64() - f64::from(n);
        ensure(
            t.compare(&Scalar::from(n), 0.0) != std::cmp::Ordering::Less,
            || format!("star with multiplicities {mult:?}: t = {t} < {n}"),
        )?;
        tightest = tightest.min(margin);
        checked += 1;
    }
    Ok(format!("{checked} random stars, smallest t - n = {tightest:.4}"))
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 8] = [
        (
            "1 closed-form parameter",
            closed_form_parameter,
            Duration::from_secs(5),
        ),
        (
            "2 two-loop base case",
            two_loop_base_case,
            Duration::from_millis(50),
        ),
        (
            "3 phi isomorphism suite",
            phi_isomorphism,
            Duration::from_secs(60),
        ),
        ("4 Gram positivity", positivity, Duration::from_secs(30)),
        ("5 spectral containment", spectral_lemma, Duration::from_secs(30)),
        (
            "6 moment oracle equivalence",
            moment_oracle,
            Duration::from_secs(60),
        ),
        ("7 growth diagnostic", growth_diagnostic, Duration::from_secs(10)),
        ("8 star-graph bound", star_bound, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let timing = if elapsed > budget {
            format!(" (over budget {budget:?})")
        } else {
            String::new()
        };
        match outcome {
            Ok(detail) => println!("PASS  {name} [{elapsed:.2?}{timing}] {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name} [{elapsed:.2?}{timing}] {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}
