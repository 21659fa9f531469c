//! Hilbert-Mumford indices of a chain of two conics, computed directly and from the components,
//! and the cuspidal tail family.

use num_bigint::BigInt;
use statec::algebra::{Polynomial, Rational};
use statec::chain::{assemble_ideal, ChainInput};
use statec::groebner::Ideal;
use statec::hm::{cuspidal_tail_index, hm_index_decomposed, hm_index_direct, OnePS};

fn main() -> statec::Result<()> {
    // conics x0 x2 = x1^2 and x2 x4 = x3^2 meeting at the coordinate point of x2
    let left = Ideal::new(5, vec![Polynomial::from_int_terms(5, &[(1, &[1, 0, 1, 0, 0]), (-1, &[0, 2, 0, 0, 0])])])?;
    let right = Ideal::new(5, vec![Polynomial::from_int_terms(5, &[(1, &[0, 0, 1, 0, 1]), (-1, &[0, 0, 0, 2, 0])])])?;
    let chain = ChainInput::new(vec![0, 2, 4], vec![left, right]);
    let whole = assemble_ideal(&chain)?;

    for weights in [[2, 1, 0, -1, -2], [0, 0, 1, 0, 0], [3, 0, -1, 0, 3]] {
        let rho = OnePS::new(weights.iter().map(|&w| Rational::from_integer(BigInt::from(w))).collect());
        for m in [2, 3] {
            let direct = hm_index_direct(&whole, m, &rho)?;
            let dec = hm_index_decomposed(&chain, m, &rho)?;
            println!("rho = {weights:?}, m = {m}: mu = {} directly, {} from components", direct.mu, dec.mu);
        }
    }

    for g in 2..=6 {
        println!("cuspidal tail, g = {g}: mu = {} (m = 2), {} (m = 3)", cuspidal_tail_index(g, 2).unwrap(), cuspidal_tail_index(g, 3).unwrap());
    }
    Ok(())
}
