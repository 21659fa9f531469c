//! A genus five chain (Wiman curve, elliptic curve, Wiman curve) in P^11: the second state
//! polytope from the components' polytopes, and the barycenter test.

use std::time::Instant;

use serde_json::Value;
use statec::algebra::BlockSpec;
use statec::chain::{decompose_from_polytopes, semistability_from_polytopes};
use statec::polytope::VPolytope;
use statec::state::format_vector;

fn load(text: &str) -> statec::Result<VPolytope> {
    VPolytope::from_json(&serde_json::from_str::<Value>(text)?)
}

fn main() -> statec::Result<()> {
    let components = [
        load(include_str!("../data/bridge_w2_left.json"))?,
        load(include_str!("../data/bridge_elliptic.json"))?,
        load(include_str!("../data/bridge_w2_right.json"))?,
    ];
    let blocks = BlockSpec::new(vec![0, 4, 7, 11])?;

    let started = Instant::now();
    let sum = decompose_from_polytopes(&blocks, 2, &components)?;
    println!(
        "{} vertices, every one certified extreme, Q(2) = {}, {:?}",
        sum.polytope.len(),
        sum.q,
        started.elapsed()
    );
    println!("tau = {:?}", sum.tau.tau);

    let verdict = semistability_from_polytopes(&blocks, 2, &components)?;
    println!("barycenter = {}", format_vector(&verdict.barycenter));
    for c in &verdict.components {
        println!("  summand {} in component {}: {}", format_vector(&c.summand), c.block, c.contained);
    }
    println!("barycenter contained: {}", verdict.contained);
    Ok(())
}
