//! Two plane cubics meeting at a point: the third state polytope computed directly and by
//! decomposition.

use statec::algebra::MonomialOrder;
use statec::chain::{assemble_ideal, component_state_polytopes, decomposed_state_polytope, ChainInput};
use statec::groebner::buchberger;
use statec::io::parse_ideal_file;
use statec::state::{enumerate_state_polytope, format_vector, EnumerateOptions};

fn main() -> statec::Result<()> {
    let file = parse_ideal_file(include_str!("../data/planecurve.ideal"))?;
    let chain = ChainInput::new(file.blocks.clone().unwrap(), file.ideals.values().cloned().collect());
    let whole = assemble_ideal(&chain)?;
    let gb = buchberger(&whole, &MonomialOrder::grevlex(5))?;
    println!("assembled ideal:");
    for g in gb.elements() {
        println!("  {}", g.display_with(&file.names));
    }

    let opts = EnumerateOptions::default();
    let direct = enumerate_state_polytope(&whole, 3, &opts)?;
    println!("direct: {} vertices, Q(3) = {}", direct.polytope.len(), direct.q);
    for v in direct.polytope.vertices() {
        println!("  {}", format_vector(v));
    }

    for (i, c) in component_state_polytopes(&chain, 3, &opts)?.iter().enumerate() {
        println!("component {i}: {} vertices", c.polytope.len());
    }
    let dec = decomposed_state_polytope(&chain, 3, &opts)?;
    println!("tau = {:?} ({} mixed monomials)", dec.tau.tau, dec.tau.mixed_count);
    println!("decomposed polytope agrees: {}", dec.polytope == direct.polytope);
    Ok(())
}
