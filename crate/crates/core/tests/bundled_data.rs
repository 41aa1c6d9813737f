//! The JSON files under `data/` mirror the bundled categories.

use std::path::PathBuf;

use tlfree::fusion::{build_fusion_graph, bundled, validate_ring, Category};
use tlfree::WeightedGraph;

fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.json"))
}

fn as_value(json: &str) -> serde_json::Value {
    serde_json::from_str(json).unwrap()
}

#[test]
fn data_files_match_bundled_specs() {
    for name in bundled::NAMES {
        let loaded = Category::load(&data_file(name)).unwrap();
        let spec = bundled::spec_by_name(name).unwrap();
        assert_eq!(
            as_value(&loaded.to_spec().to_json()),
            as_value(&spec.to_json()),
            "{name}"
        );
    }
}

#[test]
fn bundled_categories_validate() {
    for name in bundled::NAMES {
        let cat = Category::load(&data_file(name)).unwrap();
        assert!(validate_ring(&cat.ring).is_empty(), "{name}");
    }
}

#[test]
fn fusion_graphs_round_trip_through_json() {
    for name in bundled::NAMES {
        let cat = bundled::by_name(name).unwrap();
        let g = build_fusion_graph(&cat.ring, &cat.generators).unwrap().graph;
        let text = g.to_json();
        let again = WeightedGraph::from_json(&text).unwrap();
        assert_eq!(again, g, "{name}");
        assert_eq!(again.to_json(), text, "{name}");
        assert_eq!(again.to_dot(name), g.to_dot(name), "{name}");
    }
}
