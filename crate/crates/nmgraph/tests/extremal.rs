//! Extremal search golden values and budget behavior.
//!
//! The exhaustive outerplanar run is long (about two minutes in release,
//! longer in debug), so it is ignored by default:
//!
//!   cargo test --release -p nmgraph --test extremal -- --ignored

use nmgraph::graph::Params;
use nmgraph::io::parse_nmg;
use nmgraph::search::{
    search_extremal, verify_witness, GraphClass, SearchConfig, SearchStatus,
};
use std::time::Duration;

/// Golden value: the largest outerplanar complete (1,0)-graph within
/// order 8 has 7 vertices, established by the exhaustive run below and
/// witnessed by the shipped corpus file.
const OUTERPLANAR_10_BEST: usize = 7;

#[test]
fn shipped_outerplanar_witness_attains_the_golden_order() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let text = std::fs::read_to_string(dir.join("outerplanar-1-0-7.nmg")).unwrap();
    let g = parse_nmg(&text).unwrap();
    assert_eq!(g.order(), OUTERPLANAR_10_BEST);
    assert!(verify_witness(&g, GraphClass::Outerplanar).passes());
}

#[test]
#[ignore = "exhaustive depth-8 run, minutes of CPU"]
fn golden_outerplanar_exhaustive_search() {
    let params = Params::new(1, 0).unwrap();
    let mut config = SearchConfig::new(params, GraphClass::Outerplanar, 8);
    config.time_budget = Duration::from_secs(3600);
    let outcome = search_extremal(&config).unwrap();
    assert_eq!(outcome.status, SearchStatus::Exhausted);
    assert_eq!(outcome.best_order, OUTERPLANAR_10_BEST);
}

#[test]
fn exhausted_budget_is_reported_not_hidden() {
    let params = Params::new(1, 1).unwrap();
    let mut config = SearchConfig::new(params, GraphClass::Planar, 10);
    config.time_budget = Duration::from_millis(50);
    let outcome = search_extremal(&config).unwrap();
    assert_eq!(outcome.status, SearchStatus::BudgetExhausted);
    // Whatever was found still verifies.
    assert!(verify_witness(&outcome.witness, GraphClass::Planar).passes());
}
