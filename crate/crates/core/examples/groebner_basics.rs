//! Gröbner bases, initial ideals, intersections and elimination on small ideals.

use statec::algebra::{MonomialOrder, Polynomial};
use statec::groebner::{buchberger, eliminate, hilbert_values, initial_ideal, intersect_ideals, Ideal};
use statec::io::parse_polynomial;

fn ideal(names: &[String], gens: &[&str]) -> statec::Result<Ideal> {
    let polys = gens.iter().map(|g| parse_polynomial(g, names)).collect::<statec::Result<Vec<Polynomial>>>()?;
    Ideal::new(names.len(), polys)
}

fn main() -> statec::Result<()> {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let show = |title: &str, i: &Ideal| {
        println!("{title}:");
        for g in i.generators() {
            println!("  {}", g.display_with(&names));
        }
    };

    // twisted cubic
    let cubic = ideal(&names, &["x*z - y^2", "y*w - z^2", "x*w - y*z"])?;
    for order in [MonomialOrder::lex(4), MonomialOrder::grevlex(4)] {
        let gb = buchberger(&cubic, &order)?;
        println!("{:?}: {} elements, initial ideal {:?}", order.kind(), gb.elements().len(), initial_ideal(&cubic, &order)?.generators().iter().map(|m| m.display_with(&names)).collect::<Vec<_>>());
    }
    let hv = hilbert_values(&cubic, 3)?;
    println!("P(3) = {}, Q(3) = {}", hv.p, hv.q);

    let gb = buchberger(&cubic, &MonomialOrder::grevlex(4))?;
    let f = parse_polynomial("x^2*w - y^3", &names)?;
    println!("x^2*w - y^3 in ideal: {}", gb.contains(&f)?);

    let a = ideal(&names, &["x", "y"])?;
    let b = ideal(&names, &["z", "w"])?;
    show("<x,y> ∩ <z,w>", &intersect_ideals(&a, &b)?);

    show("twisted cubic ∩ k[x,y,z]", &eliminate(&cubic, &[0, 1, 2])?);
    Ok(())
}
