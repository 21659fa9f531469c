//! Acceptance criteria, one line each. Every comparison is exact.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use rand::Rng;
use serde_json::Value;
use statec::algebra::rational::rat_vec;
use statec::algebra::{BlockSpec, MonomialOrder, Polynomial, Rational};
use statec::chain::{
    assemble_ideal, barycenter_decompose, component_state_polytopes, decompose_from_polytopes,
    decomposed_state_polytope, mixed_ideals, semistability_from_polytopes, tau_vector, ChainInput,
};
use statec::groebner::{buchberger, hilbert_values, implicitize, initial_ideal, DegreeSlice, MonomialIdeal};
use statec::hm::{cuspidal_tail_index, hm_index_decomposed, hm_index_direct, hm_index_direct_with_tiebreak, OnePS};
use statec::io::{parse_ideal_file, parse_polynomial};
use statec::lp::{audit, member_convex_hull, solve_lp, LinearProgram, Relation};
use statec::polytope::{trivial_character_point, VPolytope};
use statec::rosary::{rosary_component_ideal, rosary_component_initial, rosary_w, RosarySpec, WMode};
use statec::state::{enumerate_state_polytope, EnumerateOptions};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    rat_vec(v)
}

fn plane_curve() -> (ChainInput, Vec<String>) {
    let file = parse_ideal_file(include_str!("../data/planecurve.ideal")).unwrap();
    (ChainInput::new(file.blocks.clone().unwrap(), file.ideals.values().cloned().collect()), file.names)
}

const PLANE_VERTICES: [[i64; 5]; 6] =
    [[14, 11, 5, 13, 11], [14, 11, 4, 11, 14], [12, 11, 6, 11, 14], [11, 13, 5, 11, 14], [12, 11, 7, 13, 11], [11, 13, 6, 13, 11]];

fn plane_expected() -> VPolytope {
    VPolytope::from_integer_vertices(&PLANE_VERTICES.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn criterion_1() -> Check {
    let started = Instant::now();
    let (chain, names) = plane_curve();
    let whole = assemble_ideal(&chain).map_err(e)?;
    let expected = [
        "b*e",
        "a*e",
        "b*d",
        "a*d",
        "-c*d^2 + e^3 + e^2",
        "a^3 - 3*a^2*c - b^2*c + 2*a*c^2",
    ]
    .iter()
    .map(|s| parse_polynomial(s, &names))
    .collect::<statec::Result<Vec<Polynomial>>>()
    .map_err(e)?;
    let expected = statec::groebner::Ideal::new(5, expected).map_err(e)?;
    let order = MonomialOrder::grevlex(5);
    ensure(buchberger(&whole, &order).map_err(e)? == buchberger(&expected, &order).map_err(e)?, "assembled ideal differs from the expected one")?;
    let r = enumerate_state_polytope(&whole, 3, &EnumerateOptions::default()).map_err(e)?;
    ensure(r.polytope == plane_expected(), format!("vertex set {:?}", r.polytope.vertices()))?;
    let t = started.elapsed();
    ensure(t < Duration::from_secs(30), format!("took {t:?}"))?;
    Ok(format!("expected ideal and 6 expected vertices reproduced in {t:.2?}"))
}

fn criterion_2() -> Check {
    let (chain, _) = plane_curve();
    let opts = EnumerateOptions::default();
    let comps = component_state_polytopes(&chain, 3, &opts).map_err(e)?;
    let counts: Vec<usize> = comps.iter().map(|c| c.polytope.len()).collect();
    ensure(counts == [3, 2], format!("component vertex counts {counts:?}"))?;
    let blocks = chain.blocks().map_err(e)?;
    let t = tau_vector(&blocks, 3);
    ensure(t.tau == [11, 11, 4, 11, 11] && t.mixed_count == 16, format!("tau {:?}, {} mixed", t.tau, t.mixed_count))?;
    let dec = decomposed_state_polytope(&chain, 3, &opts).map_err(e)?;
    ensure(dec.polytope == plane_expected(), "decomposed vertex set differs")?;
    Ok("components have 3 and 2 vertices, tau = (11,11,4,11,11) with 16 mixed monomials, sum equals criterion 1".into())
}

fn criterion_3() -> Check {
    let started = Instant::now();
    let st = |a: u32, b: u32| Polynomial::from_int_terms(2, &[(1, &[a, b])]);
    let ideal = implicitize(&[st(6, 0), st(4, 2), st(2, 4), st(1, 5), st(0, 6)]).map_err(e)?;
    let r = enumerate_state_polytope(&ideal, 6, &EnumerateOptions { parallel: true, ..Default::default() }).map_err(e)?;
    ensure(r.polytope.len() == 51, format!("{} vertices", r.polytope.len()))?;
    for v in [[216, 191, 206, 206, 231], [181, 248, 210, 180, 231]] {
        ensure(r.polytope.vertices().contains(&ints(&v)), format!("missing vertex {v:?}"))?;
    }
    let blocks = BlockSpec::new(vec![0, 4, 8]).map_err(e)?;
    let tau = tau_vector(&blocks, 6);
    ensure(tau.tau == [1750, 1750, 1750, 1750, 1504, 1750, 1750, 1750, 1750], format!("tau {:?}", tau.tau))?;
    let embed = |mirror: bool| -> statec::Result<VPolytope> {
        let verts = r
            .polytope
            .vertices()
            .iter()
            .map(|v| {
                let mut out = ints(&[0; 9]);
                for (k, x) in v.iter().enumerate() {
                    out[if mirror { 8 - k } else { k }] = x.clone();
                }
                out
            })
            .collect();
        VPolytope::from_vertices(9, verts)
    };
    let comps = [embed(false).map_err(e)?, embed(true).map_err(e)?];
    let verdict = semistability_from_polytopes(&blocks, 6, &comps).map_err(e)?;
    ensure(verdict.barycenter == ints(&[1956; 9]), "barycenter")?;
    let pieces = barycenter_decompose(
        &verdict.barycenter.iter().zip(tau.as_rationals()).map(|(g, t)| g - t).collect::<Vec<_>>(),
        &blocks,
        &[comps[0].level().unwrap().clone(), comps[1].level().unwrap().clone()],
    )
    .map_err(e)?;
    ensure(pieces[0] == ints(&[206, 206, 206, 206, 226, 0, 0, 0, 0]), "first summand")?;
    ensure(pieces[1] == ints(&[0, 0, 0, 0, 226, 206, 206, 206, 206]), "mirror summand")?;
    ensure(verdict.components.iter().all(|c| c.contained) && verdict.contained, "membership verdict")?;
    let t = started.elapsed();
    ensure(t < Duration::from_secs(600), format!("took {t:?}"))?;
    Ok(format!("51 vertices, tau, symmetric summands and \"contained\" reproduced in {t:.2?}"))
}

fn load(text: &str) -> Result<VPolytope, String> {
    VPolytope::from_json(&serde_json::from_str::<Value>(text).map_err(e)?).map_err(e)
}

fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
}

fn scaled(v: &[Rational], den: &BigInt) -> Result<Vec<i128>, String> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|x| (x.numer() * (den / x.denom())).to_i128().ok_or_else(|| "coordinate overflows i128".to_string()))
        .collect()
}

fn criterion_4() -> Check {
    let started = Instant::now();
    let comps = [
        load(include_str!("../data/bridge_w2_left.json"))?,
        load(include_str!("../data/bridge_elliptic.json"))?,
        load(include_str!("../data/bridge_w2_right.json"))?,
    ];
    let blocks = BlockSpec::new(vec![0, 4, 7, 11]).map_err(e)?;
    let sum = decompose_from_polytopes(&blocks, 2, &comps).map_err(e)?;
    ensure(sum.polytope.len() == 1944, format!("{} vertices", sum.polytope.len()))?;
    // every witness is maximized at its own vertex only; checked in integers after clearing denominators
    let den = common_denominator(sum.polytope.vertices().iter().flatten());
    let verts: Vec<Vec<i128>> = sum.polytope.vertices().iter().map(|v| scaled(v, &den)).collect::<Result<_, _>>()?;
    for (k, g) in sum.witnesses.iter().enumerate() {
        let g = scaled(g, &common_denominator(g))?;
        let dot = |u: &[i128]| u.iter().zip(&g).map(|(a, b)| a * b).sum::<i128>();
        let top = dot(&verts[k]);
        ensure(verts.iter().enumerate().all(|(j, u)| j == k || dot(u) < top), format!("witness {k} does not isolate its vertex"))?;
    }
    ensure(sum.tau.tau == [7, 7, 7, 7, 4, 8, 8, 4, 7, 7, 7, 7], format!("tau {:?}", sum.tau.tau))?;
    let gamma = trivial_character_point(11, 2, &sum.q);
    let third = |n: i64| Rational::new(BigInt::from(n), BigInt::from(3));
    ensure(gamma.iter().all(|g| *g == third(25)), "barycenter is not 25/3")?;
    let verdict = semistability_from_polytopes(&blocks, 2, &comps).map_err(e)?;
    let expected = [
        [4, 4, 4, 4, 8, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 5, 1, 1, 5, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 8, 4, 4, 4, 4],
    ];
    for (c, want) in verdict.components.iter().zip(expected) {
        ensure(c.summand == want.iter().map(|&x| third(x)).collect::<Vec<_>>(), format!("summand {}", c.block))?;
    }
    ensure(!verdict.components[0].contained && !verdict.components[1].contained, "W2 or E summand contained")?;
    ensure(!verdict.contained, "overall verdict contained")?;
    let t = started.elapsed();
    ensure(t < Duration::from_secs(600), format!("took {t:?}"))?;
    Ok(format!("1944 certified vertices, tau, gamma = 25/3, expected summands, \"not contained\" in {t:.2?}"))
}

fn criterion_5() -> Check {
    for g in 2..=10 {
        ensure(cuspidal_tail_index(g, 2) == Some(ints(&[-1])[0].clone()), format!("m = 2, g = {g}"))?;
        ensure(cuspidal_tail_index(g, 3) == Some(ints(&[-2])[0].clone()), format!("m = 3, g = {g}"))?;
    }
    Ok("mu = -1 (m = 2) and -2 (m = 3) for g = 2..10".into())
}

fn criterion_6() -> Check {
    for r in 1..=50 {
        for i in [2, 3] {
            let c = rosary_w(r, i, WMode::ClosedForm).map_err(e)?.value;
            let rec = rosary_w(r, i, WMode::Recurrence).map_err(e)?.value;
            ensure(c == rec, format!("w_{i}({r}): {c} vs {rec}"))?;
        }
    }
    let v = |r, i| rosary_w(r, i, WMode::ClosedForm).map(|w| w.value).map_err(e);
    ensure((v(1, 2)?, v(2, 2)?, v(1, 3)?, v(2, 3)?) == (6, 52, 34, 366), "base values")?;
    for r in [2, 3, 5] {
        let spec = RosarySpec::new(r).map_err(e)?;
        for l in 2..=r {
            let got = initial_ideal(&rosary_component_ideal(l, &spec).map_err(e)?, &MonomialOrder::lex(spec.arity())).map_err(e)?;
            let want = MonomialIdeal::new(spec.arity(), rosary_component_initial(l, &spec).map_err(e)?);
            ensure(got == want, format!("initial ideal of L_{l}, r = {r}"))?;
        }
    }
    Ok("closed forms equal recurrences for r = 1..50, seeds exact, 7-generator initial ideal".into())
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for seed in 0..120u64 {
        let mut r = rng(1_000 + seed);
        let chain = random_chain(&mut r, 2, 6, 3);
        let blocks = chain.blocks().map_err(e)?;
        let m = r.gen_range(1..=4);
        let whole = assemble_ideal(&chain).map_err(e)?;
        let orders = seven_orders(&mut r, blocks.arity());
        let order = &orders[r.gen_range(0..orders.len())];
        let left = DegreeSlice::of_monomial_ideal(&initial_ideal(&whole, order).map_err(e)?, m);
        let mut right = MonomialIdeal::zero(blocks.arity());
        for c in &chain.components {
            right = right.sum(&initial_ideal(c, order).map_err(e)?);
        }
        for t in mixed_ideals(&blocks) {
            right = right.sum(&t);
        }
        ensure(left == DegreeSlice::of_monomial_ideal(&right, m), format!("seed {seed}"))?;
        checked += 1;
    }
    Ok(format!("degree-slice equality on {checked} random two-block instances"))
}

fn criterion_8() -> Check {
    let opts = EnumerateOptions::default();
    let mut checked = 0;
    for seed in 0..60u64 {
        let mut r = rng(2_000 + seed);
        let parts = r.gen_range(2..=3);
        let chain = random_chain(&mut r, parts, 7, 3);
        let m = r.gen_range(2..=3);
        let whole = assemble_ideal(&chain).map_err(e)?;
        let dec = decomposed_state_polytope(&chain, m, &opts).map_err(e)?;
        let direct = enumerate_state_polytope(&whole, m, &opts).map_err(e)?;
        ensure(dec.polytope == direct.polytope, format!("state polytopes differ, seed {seed}"))?;
        let rho = OnePS::new((0..whole.arity()).map(|_| int(r.gen_range(-5..=5))).collect());
        let a = hm_index_decomposed(&chain, m, &rho).map_err(e)?.mu;
        let b = hm_index_direct(&whole, m, &rho).map_err(e)?.mu;
        ensure(a == b, format!("HM indices differ, seed {seed}: {a} vs {b}"))?;
        checked += 1;
    }
    Ok(format!("decomposed = direct for state polytopes and HM indices on {checked} random chains"))
}

fn criterion_9() -> Check {
    let mut lps = 0;
    let mut hulls = 0;
    for seed in 0..300u64 {
        let mut r = rng(3_000 + seed);
        let vars = r.gen_range(1..=4);
        let obj: Vec<Rational> = (0..vars).map(|_| int(r.gen_range(-4..=4))).collect();
        let mut lp = if r.gen_bool(0.5) { LinearProgram::maximize(obj) } else { LinearProgram::minimize(obj) };
        for _ in 0..r.gen_range(1..=5) {
            let a: Vec<Rational> = (0..vars).map(|_| int(r.gen_range(-3..=3))).collect();
            let rel = [Relation::Le, Relation::Eq, Relation::Ge][r.gen_range(0..3)];
            lp.add_constraint(a, rel, int(r.gen_range(-5..=5)));
        }
        if r.gen_bool(0.5) {
            lp = lp.nonnegative();
        }
        let res = solve_lp(&lp);
        audit(&lp, &res).map_err(|f| format!("LP audit, seed {seed}: {f:?}"))?;
        lps += 1;

        let dim = r.gen_range(1..=4);
        let count = r.gen_range(1..=7);
        let pts = random_points(&mut r, count, dim, 3);
        let p: Vec<Rational> = (0..dim).map(|_| Rational::new(BigInt::from(r.gen_range(-6..=6)), BigInt::from(2))).collect();
        let cert = member_convex_hull(&pts, &p).map_err(e)?;
        ensure(cert.verify(&pts, &p), format!("hull certificate, seed {seed}"))?;
        ensure(cert.is_inside() == brute_force_member(&pts, &p), format!("hull verdict vs brute force, seed {seed}"))?;
        hulls += 1;
    }
    Ok(format!("{lps} LP certificates audited, {hulls} hull verdicts match the brute-force oracle"))
}

fn criterion_10() -> Check {
    let mut ideals = 0;
    for seed in 0..40u64 {
        let mut r = rng(4_000 + seed);
        let chain = random_chain(&mut r, 2, 6, 3);
        let whole = assemble_ideal(&chain).map_err(e)?;
        let m = r.gen_range(1..=4);
        let hv = hilbert_values(&whole, m).map_err(e)?;
        for order in seven_orders(&mut r, whole.arity()) {
            let q = DegreeSlice::of_monomial_ideal(&initial_ideal(&whole, &order).map_err(e)?, m).q();
            ensure(BigInt::from(q) == hv.q, format!("Q({m}) differs across orders, seed {seed}"))?;
        }
        let rho = OnePS::new((0..whole.arity()).map(|_| int(r.gen_range(-5..=5))).collect());
        let a = hm_index_direct_with_tiebreak(&whole, m, &rho, &MonomialOrder::lex(whole.arity())).map_err(e)?.mu;
        let b = hm_index_direct_with_tiebreak(&whole, m, &rho, &MonomialOrder::grevlex(whole.arity())).map_err(e)?.mu;
        ensure(a == b, format!("HM index depends on the tie-break, seed {seed}"))?;
        ideals += 1;
    }
    Ok(format!("Q(m) identical across 7 orders and HM tie-break independence on {ideals} ideals"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("plane curve state polytope", criterion_1),
        ("plane curve decomposition", criterion_2),
        ("rhamphoid cusp chain", criterion_3),
        ("elliptic bridge from component data", criterion_4),
        ("cuspidal tail HM aggregates", criterion_5),
        ("rosary tables and initial ideal", criterion_6),
        ("initial ideal splitting property", criterion_7),
        ("decomposition equals direct computation", criterion_8),
        ("exact LP certificates and hull oracle", criterion_9),
        ("order invariance", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
