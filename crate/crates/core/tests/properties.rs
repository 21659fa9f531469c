mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use statec::algebra::{BlockSpec, Monomial, MonomialOrder, Rational};
use statec::chain::{assemble_ideal, decomposed_state_polytope, mixed_ideals, tau_vector};
use statec::groebner::{hilbert_values, initial_ideal, DegreeSlice, MonomialIdeal};
use statec::hm::{hm_index_decomposed, hm_index_direct, hm_index_direct_with_tiebreak, OnePS};
use statec::lp::{audit, member_convex_hull, solve_lp, LinearProgram, Relation};
use statec::state::{enumerate_state_polytope, EnumerateOptions};

fn in_slice_equality(seed: u64, m: u32) -> bool {
    let mut r = rng(seed);
    let chain = random_chain(&mut r, 2, 6, 3);
    let blocks = chain.blocks().unwrap();
    let whole = assemble_ideal(&chain).unwrap();
    let order = seven_orders(&mut r, blocks.arity()).swap_remove(r.gen_range(0..7));
    let left = DegreeSlice::of_monomial_ideal(&initial_ideal(&whole, &order).unwrap(), m);
    let mut right = MonomialIdeal::zero(blocks.arity());
    for c in &chain.components {
        right = right.sum(&initial_ideal(c, &order).unwrap());
    }
    for t in mixed_ideals(&blocks) {
        right = right.sum(&t);
    }
    left == DegreeSlice::of_monomial_ideal(&right, m)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn initial_ideal_of_two_block_chain_splits(seed in any::<u64>(), m in 1u32..=4) {
        prop_assert!(in_slice_equality(seed, m));
    }

    #[test]
    fn tau_counts_monomials_outside_every_block(seed in any::<u64>(), m in 1u32..=4) {
        let mut r = rng(seed);
        let parts = r.gen_range(2..=3);
        let blocks = random_blocks(&mut r, parts, 8);
        let t = tau_vector(&blocks, m);
        let union = mixed_ideals(&blocks).into_iter().fold(MonomialIdeal::zero(blocks.arity()), |a, b| a.sum(&b));
        let slice = DegreeSlice::of_monomial_ideal(&union, m);
        prop_assert_eq!(slice.q() as u64, t.mixed_count);
        let mut sum = vec![0i64; blocks.arity()];
        for x in &slice.in_ideal {
            for (s, &e) in sum.iter_mut().zip(x.exponents()) {
                *s += e as i64;
            }
        }
        prop_assert_eq!(sum, t.tau);
    }

    #[test]
    fn hilbert_values_do_not_depend_on_the_order(seed in any::<u64>(), m in 1u32..=4) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, 2, 6, 3);
        let whole = assemble_ideal(&chain).unwrap();
        let hv = hilbert_values(&whole, m).unwrap();
        for order in seven_orders(&mut r, whole.arity()) {
            let slice = DegreeSlice::of_monomial_ideal(&initial_ideal(&whole, &order).unwrap(), m);
            prop_assert_eq!(num_bigint::BigInt::from(slice.q()), hv.q.clone());
        }
    }

    #[test]
    fn lp_answers_pass_audit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = r.gen_range(1..=4);
        let obj: Vec<Rational> = (0..vars).map(|_| int(r.gen_range(-4..=4))).collect();
        let mut lp = if r.gen_bool(0.5) { LinearProgram::maximize(obj) } else { LinearProgram::minimize(obj) };
        for _ in 0..r.gen_range(1..=5) {
            let a: Vec<Rational> = (0..vars).map(|_| int(r.gen_range(-3..=3))).collect();
            let rel = [Relation::Le, Relation::Eq, Relation::Ge][r.gen_range(0..3)];
            lp.add_constraint(a, rel, int(r.gen_range(-5..=5)));
        }
        for v in 0..vars {
            match r.gen_range(0..4) {
                0 => lp = lp.lower_bound(v, int(r.gen_range(-3..=1))),
                1 => lp = lp.upper_bound(v, int(r.gen_range(-1..=3))),
                _ => {}
            }
        }
        let res = solve_lp(&lp);
        prop_assert!(audit(&lp, &res).is_ok(), "{:?}", audit(&lp, &res));
    }

    #[test]
    fn hull_membership_matches_caratheodory(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dim = r.gen_range(1..=4);
        let count = r.gen_range(1..=7);
        let pts = random_points(&mut r, count, dim, 3);
        let p: Vec<Rational> = if r.gen_bool(0.5) {
            (0..dim).map(|_| int(r.gen_range(-3..=3))).collect()
        } else {
            let i = r.gen_range(0..pts.len());
            let j = r.gen_range(0..pts.len());
            pts[i].iter().zip(&pts[j]).map(|(a, b)| (a + b) / int(2)).collect()
        };
        let cert = member_convex_hull(&pts, &p).unwrap();
        prop_assert!(cert.verify(&pts, &p));
        prop_assert_eq!(cert.is_inside(), brute_force_member(&pts, &p));
    }

    #[test]
    fn hm_index_is_linear_in_positive_scaling(seed in any::<u64>(), c in 1i64..=5) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, 2, 5, 2);
        let whole = assemble_ideal(&chain).unwrap();
        let rho: Vec<Rational> = (0..whole.arity()).map(|_| int(r.gen_range(-3..=3))).collect();
        let scaled: Vec<Rational> = rho.iter().map(|x| x * int(c)).collect();
        let a = hm_index_direct(&whole, 2, &OnePS::new(rho)).unwrap().mu;
        let b = hm_index_direct(&whole, 2, &OnePS::new(scaled)).unwrap().mu;
        prop_assert_eq!(b, a * int(c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn decomposed_state_polytope_equals_direct(seed in any::<u64>(), parts in 2usize..=3, m in 2u32..=3) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, parts, 7, 3);
        let opts = EnumerateOptions::default();
        let dec = decomposed_state_polytope(&chain, m, &opts).unwrap();
        let direct = enumerate_state_polytope(&assemble_ideal(&chain).unwrap(), m, &opts).unwrap();
        prop_assert_eq!(&dec.polytope, &direct.polytope);
        prop_assert_eq!(&dec.q, &direct.q);
    }

    #[test]
    fn decomposed_hm_index_equals_direct(seed in any::<u64>(), parts in 2usize..=3, m in 2u32..=3) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r, parts, 7, 3);
        let whole = assemble_ideal(&chain).unwrap();
        let rho = OnePS::new((0..whole.arity()).map(|_| int(r.gen_range(-4..=4))).collect());
        let dec = hm_index_decomposed(&chain, m, &rho).unwrap();
        let direct = hm_index_direct(&whole, m, &rho).unwrap();
        prop_assert_eq!(&dec.mu, &direct.mu);
        let lex = hm_index_direct_with_tiebreak(&whole, m, &rho, &MonomialOrder::lex(whole.arity())).unwrap();
        prop_assert_eq!(lex.mu, direct.mu);
    }
}

#[test]
fn zero_one_ps_has_zero_index() {
    let mut r = rng(7);
    let chain = random_chain(&mut r, 3, 7, 2);
    let rho = OnePS::new(vec![Rational::zero(); chain.blocks().unwrap().arity()]);
    let dec = hm_index_decomposed(&chain, 2, &rho).unwrap();
    assert!(dec.mu.is_zero());
    assert!(dec.components.iter().all(|c| c.mu.is_zero()));
}

#[test]
fn junction_monomials_are_never_mixed() {
    let b = BlockSpec::new(vec![0, 2, 4, 6]).unwrap();
    for &j in b.junctions().iter() {
        let mut e = vec![0u32; 7];
        e[j] = 3;
        assert!(!statec::chain::is_mixed(&b, &Monomial::new(e)));
    }
}
