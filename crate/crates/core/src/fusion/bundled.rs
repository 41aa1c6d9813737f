//! Small fusion categories shipped with the library.

use std::collections::BTreeMap;

use super::spec_file::{Category, CategorySpec, GeneratorSpec, SimpleRef, SimpleSpec};

/// Canonical names of the bundled categories.
pub const NAMES: [&str; 9] = [
    "trivial",
    "z1",
    "z2",
    "z3",
    "z4",
    "z5",
    "fibonacci",
    "ising",
    "rep_s3",
];

fn spec(
    name: &str,
    simples: &[(&str, &str)],
    product: impl Fn(usize, usize) -> Vec<usize>,
    generator: &[(&str, u32)],
) -> CategorySpec {
    let n = simples.len();
    let mut mult: BTreeMap<(usize, usize, usize), u32> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in product(x, y) {
                *mult.entry((x, y, z)).or_default() += 1;
            }
        }
    }
    let r = |i: usize| SimpleRef::Name(simples[i].0.to_string());
    CategorySpec {
        name: Some(name.to_string()),
        simples: simples
            .iter()
            .map(|(s, d)| SimpleSpec {
                name: s.to_string(),
                dual: SimpleRef::Name(d.to_string()),
                dim: None,
            })
            .collect(),
        mult: mult
            .into_iter()
            .map(|((x, y, z), k)| (r(x), r(y), r(z), k))
            .collect(),
        generators: vec![GeneratorSpec {
            color: "a".to_string(),
            components: generator.iter().map(|(s, k)| (s.to_string(), *k)).collect(),
        }],
    }
}

pub fn trivial_spec() -> CategorySpec {
    spec("trivial", &[("1", "1")], |_, _| vec![0], &[("1", 2)])
}

/// `Z/n` with generator `g ⊕ g^{-1}`.
pub fn cyclic_spec(n: usize) -> CategorySpec {
    assert!(n >= 1);
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let pairs: Vec<(&str, &str)> = (0..n)
        .map(|k| (names[k].as_str(), names[(n - k) % n].as_str()))
        .collect();
    let g = names[1 % n].as_str();
    let ginv = names[(n - 1) % n].as_str();
    let generator: Vec<(&str, u32)> = if g == ginv {
        vec![(g, 2)]
    } else {
        vec![(g, 1), (ginv, 1)]
    };
    spec(&format!("z{n}"), &pairs, |x, y| vec![(x + y) % n], &generator)
}

pub fn fibonacci_spec() -> CategorySpec {
    spec(
        "fibonacci",
        &[("1", "1"), ("tau", "tau")],
        |x, y| match (x, y) {
            (1, 1) => vec![0, 1],
            _ => vec![x + y],
        },
        &[("tau", 2)],
    )
}

pub fn ising_spec() -> CategorySpec {
    // 0 = 1, 1 = sigma, 2 = psi
    spec(
        "ising",
        &[("1", "1"), ("sigma", "sigma"), ("psi", "psi")],
        |x, y| match (x, y) {
            (0, z) | (z, 0) => vec![z],
            (1, 1) => vec![0, 2],
            (1, 2) | (2, 1) => vec![1],
            _ => vec![0],
        },
        &[("sigma", 2)],
    )
}

pub fn rep_s3_spec() -> CategorySpec {
    // 0 = trivial, 1 = sign, 2 = two-dimensional
    spec(
        "rep_s3",
        &[("1", "1"), ("sgn", "sgn"), ("rho", "rho")],
        |x, y| match (x, y) {
            (0, z) | (z, 0) => vec![z],
            (1, 1) => vec![0],
            (1, 2) | (2, 1) => vec![2],
            _ => vec![0, 1, 2],
        },
        &[("rho", 2)],
    )
}

fn normalize(name: &str) -> String {
    let lower = name.trim_end_matches(".json").to_lowercase();
    lower.chars().filter(|c| c.is_alphanumeric()).collect()
}

/// Looks up a bundled category spec, accepting forms like `Z/2`, `rep(S3)`.
pub fn spec_by_name(name: &str) -> Option<CategorySpec> {
    let key = normalize(name);
    match key.as_str() {
        "trivial" | "vec" => Some(trivial_spec()),
        "fibonacci" | "fib" => Some(fibonacci_spec()),
        "ising" => Some(ising_spec()),
        "reps3" => Some(rep_s3_spec()),
        _ => {
            let n: usize = key.strip_prefix('z')?.parse().ok()?;
            (1..=5).contains(&n).then(|| cyclic_spec(n))
        }
    }
}

pub fn by_name(name: &str) -> Option<Category> {
    spec_by_name(name).map(|s| s.build().expect("bundled category is valid"))
}

pub fn trivial() -> Category {
    trivial_spec().build().expect("bundled category is valid")
}

pub fn cyclic(n: usize) -> Category {
    cyclic_spec(n).build().expect("bundled category is valid")
}

pub fn fibonacci() -> Category {
    fibonacci_spec().build().expect("bundled category is valid")
}

pub fn ising() -> Category {
    ising_spec().build().expect("bundled category is valid")
}

pub fn rep_s3() -> Category {
    rep_s3_spec().build().expect("bundled category is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_resolve() {
        assert_eq!(spec_by_name("Z/2"), Some(cyclic_spec(2)));
        assert_eq!(spec_by_name("rep(S3)"), Some(rep_s3_spec()));
        assert_eq!(spec_by_name("fibonacci.json"), Some(fibonacci_spec()));
        assert!(spec_by_name("z9").is_none());
        assert!(spec_by_name("nope").is_none());
    }

    #[test]
    fn specs_round_trip_through_json() {
        for name in NAMES {
            let s = spec_by_name(name).unwrap();
            assert_eq!(CategorySpec::from_json(&s.to_json()).unwrap(), s, "{name}");
            let c = s.build().unwrap();
            assert_eq!(c.to_spec().build().unwrap(), c, "{name}");
        }
    }

    #[test]
    fn z1_behaves_like_trivial() {
        let c = cyclic(1);
        assert_eq!(c.ring.rank(), 1);
        assert_eq!(c.generators[0].multiplicities, vec![2]);
    }
}
