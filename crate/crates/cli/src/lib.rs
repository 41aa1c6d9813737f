//! Command-line front end: argument model and dispatch to the library.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tlfree::diagrams::{
    all_diagrams, enumerate_ctl, gram_matrix, involution, min_eigenvalue, phi, phi_inverse, star, trace_star,
    trace_wedge, wedge, Element, Word,
};
use tlfree::fusion::{
    build_fusion_graph, bundled, fp_dimensions, global_dim, hom_dim, validate_ring, Category, GeneratorObject,
};
use tlfree::gjs::{moment_sequence, MomentContext};
use tlfree::spectra::{histogram, spectrum_bounds, PerturbedShift};
use tlfree::vnfactor::{
    base_parameter, closed_form_s, closed_form_t, graph_algebra, identify_factor, GrowthConfig,
};
use tlfree::{Error, Result, WeightedGraph};

/// Environment variable holding the default numeric tolerance.
pub const TOLERANCE_VAR: &str = "TLFREE_TOLERANCE";

const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "tlfree",
    version,
    about = "Fusion graphs, colored Temperley-Lieb diagrams and free group factor parameters"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Numeric tolerance (defaults to $TLFREE_TOLERANCE or 1e-9).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check the fusion ring axioms of a category.
    Validate { category: String },
    /// Frobenius-Perron dimensions of the simples.
    FpDims { category: String },
    /// Fusion graph of the category's generators.
    FusionGraph {
        category: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dimension of Hom between two words in generator colors.
    HomDim {
        category: String,
        /// Comma-separated generator colors, e.g. `a,a`.
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
    },
    /// List the CTL diagrams on a word.
    TlEnumerate {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Gram matrix of the CTL diagrams on a word.
    TlGram {
        #[arg(long)]
        word: String,
        /// Loop parameters: a number for every color, or `c=2` per color.
        #[arg(long, default_value = "2")]
        delta: Vec<String>,
    },
    /// Check the orthogonalization isomorphism on all diagrams up to a length.
    PhiCheck {
        #[arg(long, default_value = "cd")]
        alphabet: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Trace moments of the sum of semicircular channels on a graph.
    Moments {
        graph: PathBuf,
        /// Comma-separated colors; all colors when omitted.
        #[arg(long)]
        colors: Option<String>,
        #[arg(long, short, default_value_t = 8)]
        n: usize,
        /// One channel per edge instead of per color.
        #[arg(long)]
        by_edge: bool,
    },
    /// Spectrum of the perturbed shift.
    Spectrum {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// Decompose the von Neumann algebra of a weighted graph.
    GraphAlgebra { graph: PathBuf },
    /// Identify the corner factor of a category's fusion graph.
    IdentifyFactor {
        category: String,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Closed-form parameter for a generator `X + dual X`.
    ClosedForm {
        category: String,
        /// Simple names with optional multiplicities, e.g. `tau` or `g:1,g2:1`.
        #[arg(long)]
        generator: String,
    },
    /// Write the bundled category specs as JSON files.
    ExportBundled { dir: PathBuf },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub tolerance: f64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let tolerance = match cli.tolerance {
            Some(t) => t,
            None => match std::env::var(TOLERANCE_VAR) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{TOLERANCE_VAR}={s:?} is not a number")))?,
                Err(_) => DEFAULT_TOLERANCE,
            },
        };
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::Parse(format!("tolerance {tolerance} must be positive")));
        }
        Ok(RunConfig {
            command: cli.command,
            output: cli.output,
            tolerance,
        })
    }
}

/// A rendered report and the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { code: 0, report }
    }

    fn json(value: Value) -> Self {
        Self::ok(pretty(&value))
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

/// Exit code for a library error: 2 for unreadable input, 1 otherwise.
pub fn error_code(e: &Error) -> i32 {
    if e.is_parse() {
        2
    } else {
        1
    }
}

/// Runs a command, turning errors into a JSON error report.
pub fn dispatch(config: &RunConfig) -> Outcome {
    match run(config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: error_code(&e),
            report: pretty(&json!({ "error": e.to_string() })),
        },
    }
}

/// A category from a JSON file, or a bundled one by name.
pub fn load_category(arg: &str) -> Result<Category> {
    let path = Path::new(arg);
    if path.is_file() {
        return Category::load(path);
    }
    bundled::by_name(arg).ok_or_else(|| {
        Error::Parse(format!(
            "{arg:?} is neither a file nor a bundled category ({})",
            bundled::NAMES.join(", ")
        ))
    })
}

fn load_graph(path: &Path) -> Result<WeightedGraph> {
    WeightedGraph::from_json(&std::fs::read_to_string(path)?)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

fn single_char_word(s: &str) -> Word {
    Word::new(s.trim())
}

/// `2`, or `c=2` entries; a bare number sets the default for all colors.
fn parse_deltas(items: &[String]) -> Result<(Option<f64>, BTreeMap<char, f64>)> {
    let mut default = None;
    let mut per_color = BTreeMap::new();
    let number = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad loop parameter {s:?}")))
    };
    for item in items.iter().flat_map(|s| split_list(s)) {
        match item.split_once('=') {
            Some((c, v)) => {
                let mut chars = c.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(ch), None) => per_color.insert(ch, number(v)?),
                    _ => return Err(Error::Parse(format!("color {c:?} must be one character"))),
                };
            }
            None => default = Some(number(&item)?),
        }
    }
    Ok((default, per_color))
}

fn generator_word<'a>(cat: &'a Category, list: &str) -> Result<Vec<&'a GeneratorObject>> {
    split_list(list).iter().map(|c| cat.generator(c)).collect()
}

fn parse_object(cat: &Category, spec: &str) -> Result<Vec<u32>> {
    let mut m = vec![0u32; cat.ring.rank()];
    for part in split_list(spec) {
        let (name, k) = match part.split_once(':') {
            Some((n, k)) => (
                n,
                k.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?,
            ),
            None => (part.as_str(), 1),
        };
        m[cat.ring.index_of(name.trim())?] += k;
    }
    if m.iter().all(|&k| k == 0) {
        return Err(Error::Invalid("empty generator".into()));
    }
    Ok(m)
}

fn run(config: &RunConfig) -> Result<Outcome> {
    let tol = config.tolerance;
    Ok(match &config.command {
        Command::Validate { category } => {
            let cat = load_category(category)?;
            let violations = validate_ring(&cat.ring);
            let list: Vec<Value> = violations
                .iter()
                .map(|v| json!({ "law": v.law, "detail": v.detail }))
                .collect();
            Outcome {
                code: if violations.is_empty() { 0 } else { 1 },
                report: pretty(&json!({
                    "category": cat.name,
                    "rank": cat.ring.rank(),
                    "valid": violations.is_empty(),
                    "violations": list,
                })),
            }
        }
        Command::FpDims { category } => {
            let cat = load_category(category)?;
            let dims = fp_dimensions(&cat.ring);
            let simples: Vec<Value> = cat
                .ring
                .simples()
                .iter()
                .zip(&dims)
                .map(|(s, d)| json!({ "name": s.name, "dim": d.report() }))
                .collect();
            Outcome::json(json!({
                "category": cat.name,
                "simples": simples,
                "global_dim": global_dim(&cat.ring).report(),
            }))
        }
        Command::FusionGraph { category, format } => {
            let cat = load_category(category)?;
            let fg = build_fusion_graph(&cat.ring, &cat.generators)?;
            match format {
                Format::Dot => Outcome::ok(fg.graph.to_dot(&cat.name)),
                Format::Json | Format::Text => {
                    let deltas: BTreeMap<&String, Value> =
                        fg.deltas.iter().map(|(c, d)| (c, d.report())).collect();
                    let graph: Value = serde_json::to_value(fg.graph.to_spec())?;
                    Outcome::json(json!({ "category": cat.name, "graph": graph, "deltas": deltas }))
                }
            }
        }
        Command::HomDim {
            category,
            alpha,
            beta,
        } => {
            let cat = load_category(category)?;
            let a = generator_word(&cat, alpha)?;
            let b = generator_word(&cat, beta)?;
            Outcome::json(json!({
                "alpha": split_list(alpha),
                "beta": split_list(beta),
                "hom_dim": hom_dim(&cat.ring, &a, &b),
            }))
        }
        Command::TlEnumerate { word, format } => {
            let w = single_char_word(word);
            let diagrams: Vec<String> = enumerate_ctl(&w).iter().map(ToString::to_string).collect();
            match format {
                Format::Text | Format::Dot => {
                    let mut s = diagrams.join("\n");
                    s.push('\n');
                    Outcome::ok(s)
                }
                Format::Json => Outcome::json(
                    json!({ "word": w.to_string(), "count": diagrams.len(), "diagrams": diagrams }),
                ),
            }
        }
        Command::TlGram { word, delta } => {
            let w = single_char_word(word);
            let (default, per_color) = parse_deltas(delta)?;
            for c in w.letters() {
                if default.is_none() && !per_color.contains_key(c) {
                    return Err(Error::Parse(format!("no loop parameter for color {c:?}")));
                }
            }
            let lookup = |c: char| per_color.get(&c).copied().or(default).unwrap_or(f64::NAN);
            let g = gram_matrix(&w, &lookup);
            let rows: Vec<Vec<f64>> = g.row_iter().map(|r| r.iter().copied().collect()).collect();
            let min = (g.nrows() > 0).then(|| min_eigenvalue(&g));
            Outcome::json(json!({
                "word": w.to_string(),
                "size": g.nrows(),
                "diagrams": enumerate_ctl(&w).iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matrix": rows,
                "min_eigenvalue": min,
                "positive_definite": min.map(|m| m > tol),
            }))
        }
        Command::PhiCheck { alphabet, max_len } => phi_check(alphabet, *max_len),
        Command::Moments {
            graph,
            colors,
            n,
            by_edge,
        } => {
            let g = load_graph(graph)?;
            let ctx = if *by_edge {
                MomentContext::by_edge(&g)
            } else {
                MomentContext::by_color(&g)
            };
            let channels: Vec<usize> = match colors {
                None => (0..ctx.channels().len()).collect(),
                Some(list) => {
                    let wanted = split_list(list);
                    for c in &wanted {
                        if !ctx.channels().iter().any(|ch| &ch.color == c) {
                            return Err(Error::Invalid(format!("graph has no color {c:?}")));
                        }
                    }
                    (0..ctx.channels().len())
                        .filter(|&i| wanted.contains(&ctx.channels()[i].color))
                        .collect()
                }
            };
            let moments: Vec<Value> = moment_sequence(&ctx, &channels, *n)
                .iter()
                .map(|m| m.report())
                .collect();
            let labels: Vec<&str> = channels
                .iter()
                .map(|&i| ctx.channels()[i].label.as_str())
                .collect();
            Outcome::json(json!({ "channels": labels, "moments": moments }))
        }
        Command::Spectrum { delta, size, bins } => {
            let p = PerturbedShift::new(*delta, *size)?;
            if *bins == 0 {
                return Err(Error::Invalid("need at least one histogram bin".into()));
            }
            let (min, max) = spectrum_bounds(&p);
            Outcome::json(json!({
                "delta": delta,
                "size": size,
                "min": min,
                "max": max,
                "contained": min >= -2.0 - tol && max <= 2.0 + tol,
                "histogram": histogram(&p, *bins),
            }))
        }
        Command::GraphAlgebra { graph } => {
            let g = load_graph(graph)?;
            let dec = graph_algebra(&g)?;
            let t = base_parameter(&g)?;
            Outcome::json(json!({
                "decomposition": dec.to_json(),
                "summary": dec.to_string(),
                "base_parameter": t.report(),
            }))
        }
        Command::IdentifyFactor { category, radius } => {
            let cat = load_category(category)?;
            let report = identify_factor(&cat, *radius, &GrowthConfig::default())?;
            let mut value = report.to_json();
            value["category"] = json!(cat.name);
            Outcome::json(value)
        }
        Command::ClosedForm { category, generator } => {
            let cat = load_category(category)?;
            let x = parse_object(&cat, generator)?;
            Outcome::json(json!({
                "category": cat.name,
                "generator": generator,
                "dim": cat.ring.object_dim(&x).report(),
                "global_dim": global_dim(&cat.ring).report(),
                "t": closed_form_t(&cat.ring, &x).report(),
                "s": closed_form_s(&cat.ring).report(),
            }))
        }
        Command::ExportBundled { dir } => {
            std::fs::create_dir_all(dir)?;
            let mut written = Vec::new();
            for name in bundled::NAMES {
                let spec = bundled::spec_by_name(name).expect("bundled name resolves");
                let path = dir.join(format!("{name}.json"));
                std::fs::write(&path, spec.to_json() + "\n")?;
                written.push(path.display().to_string());
            }
            Outcome::json(json!({ "written": written }))
        }
    })
}

fn phi_check(alphabet: &str, max_len: usize) -> Outcome {
    let letters: Vec<char> = alphabet.chars().collect();
    let basis = all_diagrams(&letters, max_len);
    let phis: Vec<Element> = basis.iter().map(|x| phi(&Element::diagram(x.clone()))).collect();
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for (i, x) in basis.iter().enumerate() {
        let ex = Element::diagram(x.clone());
        if phi_inverse(&phis[i]) != ex {
            failures.push(format!("round trip at {x}"));
        }
        if trace_star(&phis[i]) != trace_wedge(&ex) {
            failures.push(format!("trace at {x}"));
        }
        if phi(&involution(&ex)) != involution(&phis[i]) {
            failures.push(format!("involution at {x}"));
        }
        for (j, y) in basis.iter().enumerate() {
            if x.len() + y.len() > max_len {
                continue;
            }
            pairs += 1;
            if phi(&wedge(&ex, &Element::diagram(y.clone()))) != star(&phis[i], &phis[j]) {
                failures.push(format!("product at {x}, {y}"));
            }
        }
    }
    Outcome {
        code: if failures.is_empty() { 0 } else { 1 },
        report: pretty(&json!({
            "alphabet": alphabet,
            "max_len": max_len,
            "diagrams": basis.len(),
            "pairs": pairs,
            "ok": failures.is_empty(),
            "failures": failures,
        })),
    }
}
