//! Two rational curves with a rhamphoid cusp glued at their smooth fixed points, in P^8.
//! The sixth state polytope of one component, and the barycenter test through the components.

use std::time::Instant;

use statec::algebra::rational::rat_vec;
use statec::algebra::{BlockSpec, Polynomial};
use statec::chain::{barycenter_decompose, semistability_from_polytopes, tau_vector};
use statec::groebner::implicitize;
use statec::lp::member_convex_hull;
use statec::polytope::{trivial_character_point, VPolytope};
use statec::state::{enumerate_state_polytope, format_vector, EnumerateOptions};

fn main() -> statec::Result<()> {
    let st = |a: u32, b: u32| Polynomial::from_int_terms(2, &[(1, &[a, b])]);
    let forms = [st(6, 0), st(4, 2), st(2, 4), st(1, 5), st(0, 6)];
    let ideal = implicitize(&forms)?;
    println!("component ideal has {} generators", ideal.generators().len());

    let started = Instant::now();
    let r1 = enumerate_state_polytope(&ideal, 6, &EnumerateOptions { parallel: true, ..Default::default() })?;
    println!("P_6: {} vertices, Q(6) = {}, {} weight queries, {:?}", r1.polytope.len(), r1.q, r1.queries, started.elapsed());
    for v in r1.polytope.vertices().iter().take(3) {
        println!("  {}", format_vector(v));
    }

    let blocks = BlockSpec::new(vec![0, 4, 8])?;
    let tau = tau_vector(&blocks, 6);
    println!("tau = {:?}", tau.tau);

    // R_1 on x0..x4, R_2 its mirror image on x4..x8
    let pad = |v: &Vec<statec::algebra::Rational>, left: bool| {
        let mut out = rat_vec(&[0; 9]);
        for (k, x) in v.iter().enumerate() {
            out[if left { k } else { 8 - k }] = x.clone();
        }
        out
    };
    let p1 = VPolytope::from_vertices(9, r1.polytope.vertices().iter().map(|v| pad(v, true)).collect())?;
    let p2 = VPolytope::from_vertices(9, r1.polytope.vertices().iter().map(|v| pad(v, false)).collect())?;
    let verdict = semistability_from_polytopes(&blocks, 6, &[p1.clone(), p2])?;
    println!("barycenter = {}", format_vector(&verdict.barycenter));
    for c in &verdict.components {
        println!("  summand {} in component {}: {}", format_vector(&c.summand), c.block, c.contained);
    }
    println!("barycenter contained: {}", verdict.contained);

    let q = verdict.q.clone();
    let gamma = trivial_character_point(8, 6, &q);
    let diff: Vec<_> = gamma.iter().zip(tau.as_rationals()).map(|(g, t)| g - t).collect();
    let level = p1.level().cloned().unwrap();
    let pieces = barycenter_decompose(&diff, &blocks, &[level.clone(), level])?;
    let v1: Vec<_> = pieces[0][..5].to_vec();
    println!("v1 inside P_6 of the first component: {}", member_convex_hull(r1.polytope.vertices(), &v1)?.is_inside());
    Ok(())
}
