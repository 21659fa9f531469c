use std::collections::HashMap;

use crate::algebra::monomial::{count_monomials, monomials_of_degree};
use crate::algebra::Monomial;

/// Above this many monomials of degree `m`, standard monomials are counted recursively
/// instead of by enumeration.
const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

/// Monomial ideal given by its minimal generators, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps only the minimal elements under divisibility.
    pub fn new(arity: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.clone())));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in all {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { arity, gens: minimal }
    }

    pub fn zero(arity: usize) -> Self {
        MonomialIdeal { arity, gens: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Minimal generators, descending lex.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.arity, self.gens.iter().chain(&other.gens).cloned())
    }

    /// `self * other`.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.arity, self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))))
    }

    /// Degree-`m` monomials of the ideal, descending lex.
    pub fn monomials_of_degree(&self, m: u32) -> Vec<Monomial> {
        monomials_of_degree(self.arity, m).into_iter().filter(|x| self.contains(x)).collect()
    }

    /// Number of degree-`m` monomials outside the ideal.
    pub fn count_standard(&self, m: u32) -> u128 {
        if count_monomials(self.arity, m) <= EXHAUSTIVE_LIMIT {
            return monomials_of_degree(self.arity, m).iter().filter(|x| !self.contains(x)).count() as u128;
        }
        let gens: Vec<Vec<u32>> = self.gens.iter().map(|g| g.exponents().to_vec()).collect();
        let mut memo = HashMap::new();
        count_standard_rec(&gens, self.arity, m, &mut memo)
    }
}

/// Standard monomials of degree `m` in the first `k` variables for the ideal generated by
/// `gens` (exponent vectors truncated to those variables), splitting on the last variable.
fn count_standard_rec(gens: &[Vec<u32>], k: usize, m: u32, memo: &mut HashMap<(Vec<Vec<u32>>, u32), u128>) -> u128 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0;
    }
    if gens.is_empty() {
        return count_monomials(k, m);
    }
    if k == 1 {
        let min = gens.iter().map(|g| g[0]).min().unwrap();
        return u128::from(m < min);
    }
    let mut key_gens = gens.to_vec();
    key_gens.sort();
    key_gens.dedup();
    let key = (key_gens, m);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for e in 0..=m {
        // monomials x_{k-1}^e * u with u free of x_{k-1}: u must avoid (gens : x_{k-1}^e)
        let colon: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[k - 1] <= e)
            .map(|g| g[..k - 1].to_vec())
            .collect();
        total += count_standard_rec(&colon, k - 1, m - e, memo);
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimal_generators() {
        let i = MonomialIdeal::new(3, [mono(&[1, 0, 1]), mono(&[2, 0, 1]), mono(&[1, 0, 1]), mono(&[0, 2, 0])]);
        assert_eq!(i.generators(), &[mono(&[1, 0, 1]), mono(&[0, 2, 0])]);
    }

    #[test]
    fn recursive_count_matches_enumeration() {
        let i = MonomialIdeal::new(4, [mono(&[1, 0, 1, 0]), mono(&[1, 0, 0, 1]), mono(&[0, 1, 0, 1]), mono(&[0, 0, 3, 0])]);
        let gens: Vec<Vec<u32>> = i.generators().iter().map(|g| g.exponents().to_vec()).collect();
        for m in 0..7 {
            let brute = monomials_of_degree(4, m).iter().filter(|x| !i.contains(x)).count() as u128;
            assert_eq!(count_standard_rec(&gens, 4, m, &mut HashMap::new()), brute);
            assert_eq!(i.count_standard(m), brute);
        }
    }
}
