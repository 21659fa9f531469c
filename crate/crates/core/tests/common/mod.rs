//! Random instances and independent oracles shared by the property and acceptance tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use statec::algebra::monomial::monomials_of_degree;
use statec::algebra::{BlockSpec, Monomial, MonomialOrder, Polynomial, Rational};
use statec::chain::ChainInput;
use statec::groebner::Ideal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// A homogeneous polynomial of degree `d` in `vars` with no pure power of any variable in
/// `avoid`, so it vanishes at the unit points of those variables.
pub fn random_form(rng: &mut StdRng, arity: usize, vars: &[usize], avoid: &[usize], d: u32, terms: usize) -> Polynomial {
    let local = monomials_of_degree(vars.len(), d);
    let allowed: Vec<Monomial> = local
        .into_iter()
        .map(|m| {
            let mut e = vec![0u32; arity];
            for (k, &v) in vars.iter().enumerate() {
                e[v] = m.exponents()[k];
            }
            Monomial::new(e)
        })
        .filter(|m| !avoid.iter().any(|&a| m.exponents()[a] == d))
        .collect();
    loop {
        let mut p = Polynomial::zero(arity);
        for m in allowed.choose_multiple(rng, terms.min(allowed.len())) {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            p.add_term(m.clone(), int(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Block boundaries with `parts` blocks of 2 or 3 variables each.
pub fn random_blocks(rng: &mut StdRng, parts: usize, max_vars: usize) -> BlockSpec {
    loop {
        let mut b = vec![0usize];
        for _ in 0..parts {
            let last = *b.last().unwrap();
            b.push(last + rng.gen_range(1..=2));
        }
        if *b.last().unwrap() < max_vars {
            return BlockSpec::new(b).unwrap();
        }
    }
}

/// A valid chain: each component has one or two forms in its block vanishing at its junctions.
pub fn random_chain(rng: &mut StdRng, parts: usize, max_vars: usize, max_deg: u32) -> ChainInput {
    let blocks = random_blocks(rng, parts, max_vars);
    let arity = blocks.arity();
    let mut comps = Vec::new();
    for i in 0..blocks.len() {
        let vars = blocks.block_vars(i);
        let mut avoid = Vec::new();
        if i > 0 {
            avoid.push(blocks.boundaries()[i]);
        }
        if i + 1 < blocks.len() {
            avoid.push(blocks.boundaries()[i + 1]);
        }
        let count = if vars.len() >= 3 { rng.gen_range(1..=2) } else { rng.gen_range(0..=1) };
        let gens = (0..count)
            .map(|_| {
                let d = rng.gen_range(2..=max_deg);
                let terms = rng.gen_range(2..=4);
                random_form(rng, arity, &vars, &avoid, d, terms)
            })
            .collect();
        comps.push(Ideal::new(arity, gens).unwrap());
    }
    ChainInput::new(blocks.boundaries().to_vec(), comps)
}

/// Seven orders: lex, grlex, grevlex and four random positive weights refined by grevlex.
pub fn seven_orders(rng: &mut StdRng, arity: usize) -> Vec<MonomialOrder> {
    let mut out = vec![MonomialOrder::lex(arity), MonomialOrder::grlex(arity), MonomialOrder::grevlex(arity)];
    for _ in 0..4 {
        let w: Vec<Rational> = (0..arity).map(|_| int(rng.gen_range(0..=9))).collect();
        out.push(MonomialOrder::weight_refined(&w, &MonomialOrder::grevlex(arity)).unwrap());
    }
    out
}

/// Unique solution of a square or overdetermined linear system by fraction-exact elimination,
/// or `None` when the solution is not unique or does not exist.
#[allow(clippy::needless_range_loop)]
pub fn solve_unique(mut rows: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=cols {
                    let t = &rows[r][k] * &f;
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < cols || rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| rows[c][cols].clone()).collect())
}

/// Membership in a convex hull by Carathéodory: some affinely independent subset carries `p`
/// with nonnegative barycentric coordinates.
pub fn brute_force_member(points: &[Vec<Rational>], p: &[Rational]) -> bool {
    let n = points.len();
    let dim = p.len();
    for mask in 1u32..(1 << n) {
        let subset: Vec<&Vec<Rational>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &points[i]).collect();
        if subset.len() > dim + 1 {
            continue;
        }
        let k = subset.len();
        let mut rows: Vec<Vec<Rational>> = (0..dim)
            .map(|c| {
                let mut row: Vec<Rational> = subset.iter().map(|v| v[c].clone()).collect();
                row.push(p[c].clone());
                row
            })
            .collect();
        let mut ones = vec![Rational::one(); k];
        ones.push(Rational::one());
        rows.push(ones);
        if let Some(l) = solve_unique(rows, k) {
            if l.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

pub fn random_points(rng: &mut StdRng, count: usize, dim: usize, range: i64) -> Vec<Vec<Rational>> {
    (0..count).map(|_| (0..dim).map(|_| int(rng.gen_range(-range..=range))).collect()).collect()
}
