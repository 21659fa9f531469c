//! State polytope of the twisted cubic, with vertex witnesses and the semistability test.

use statec::algebra::Polynomial;
use statec::groebner::implicitize;
use statec::polytope::trivial_character_point;
use statec::state::{enumerate_state_polytope, format_vector, semistability_of_polytope, EnumerateOptions};

fn main() -> statec::Result<()> {
    let st = |a: u32, b: u32| Polynomial::from_int_terms(2, &[(1, &[a, b])]);
    let cubic = implicitize(&[st(3, 0), st(2, 1), st(1, 2), st(0, 3)])?;
    println!("{} quadrics cut out the twisted cubic", cubic.generators().len());

    for m in 2..=4 {
        let r = enumerate_state_polytope(&cubic, m, &EnumerateOptions::default())?;
        println!("m = {m}: {} vertices, Q = {}, {} oracle queries", r.polytope.len(), r.q, r.queries);
        if m == 2 {
            for (v, w) in r.polytope.vertices().iter().zip(&r.witnesses) {
                println!("  {}  maximized by {}", format_vector(v), format_vector(w));
            }
        }
        let gamma = trivial_character_point(3, m, &r.q);
        let report = semistability_of_polytope(&r.polytope, &gamma)?;
        println!("  barycenter {} in hull: {}, interior: {}", format_vector(&gamma), report.member_of_hull, report.relative_interior);
    }
    Ok(())
}
