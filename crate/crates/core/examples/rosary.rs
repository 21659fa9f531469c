//! Rosary chains: the closed-form w table against the recurrence, component initial ideals and
//! the degree-slice decomposition check.

use statec::algebra::MonomialOrder;
use statec::groebner::{initial_ideal, MonomialIdeal};
use statec::rosary::{
    conic_ends, rosary_assemble, rosary_component_ideal, rosary_component_initial, rosary_components,
    rosary_slice_decomposition_check, w_table, w_table_csv, RosarySpec,
};

fn main() -> statec::Result<()> {
    print!("{}", w_table_csv(&w_table(1..=8)?));

    let spec = RosarySpec::new(3)?;
    let names: Vec<String> = (0..spec.arity()).map(|i| format!("x{i}")).collect();
    let order = MonomialOrder::lex(spec.arity());
    let middle = rosary_component_ideal(2, &spec)?;
    let init = initial_ideal(&middle, &order)?;
    println!("lex initial ideal of L_2:");
    for m in init.generators() {
        println!("  {}", m.display_with(&names));
    }
    println!("matches the expected generators: {}", init == MonomialIdeal::new(spec.arity(), rosary_component_initial(2, &spec)?));

    let (first, last) = conic_ends(&spec);
    let components = rosary_components(&spec, first, last)?;
    let whole = rosary_assemble(&spec, &components)?;
    for d in [2, 3] {
        let check = rosary_slice_decomposition_check(&spec, &whole, &components, &order, d)?;
        println!("degree {d}: {} monomials on each side, equal: {}", check.left.len(), check.holds());
    }
    Ok(())
}
