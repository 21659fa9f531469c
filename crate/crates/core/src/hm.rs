//! Hilbert–Mumford indices of dual Hilbert points for diagonal one-parameter subgroups.
//!
//! Negative values mean the Hilbert point is destabilized by the subgroup.

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::rational::{dot_int, format_rational, Rational};
use crate::algebra::MonomialOrder;
use crate::chain::ChainInput;
use crate::error::{Error, Result};
use crate::groebner::{degree_slice, Ideal};

/// Diagonal one-parameter subgroup acting on `x_i` with weight `r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePS {
    pub weights: Vec<Rational>,
}

impl OnePS {
    pub fn new(weights: Vec<Rational>) -> Self {
        OnePS { weights }
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().cloned().sum()
    }

    fn check(&self, arity: usize) -> Result<()> {
        if self.arity() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: self.arity() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentHM {
    pub block: usize,
    pub mu: Rational,
    pub p: u64,
    pub standard_weight_sum: Rational,
    pub block_weight_sum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMReport {
    pub mu: Rational,
    pub m: u32,
    pub standard_weight_sum: Rational,
    pub p: u64,
    pub components: Vec<ComponentHM>,
}

impl HMReport {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": format_rational(&self.mu),
            "m": self.m,
            "standardMonomialWeightSum": format_rational(&self.standard_weight_sum),
            "P": self.p,
            "components": self.components.iter().map(|c| json!({
                "block": c.block,
                "mu": format_rational(&c.mu),
                "P": c.p,
                "standardMonomialWeightSum": format_rational(&c.standard_weight_sum),
                "blockWeightSum": format_rational(&c.block_weight_sum),
            })).collect::<Vec<_>>(),
        })
    }
}

fn standard_part(ideal: &Ideal, m: u32, rho: &OnePS, tiebreak: &MonomialOrder) -> Result<(Rational, u64)> {
    let order = MonomialOrder::homogeneous_weight(&rho.weights, tiebreak)?;
    let slice = degree_slice(ideal, &order, m)?;
    let sum = slice.standard.iter().map(|x| dot_int(&rho.weights, x.exponents())).sum();
    Ok((sum, slice.p() as u64))
}

fn mp_over(m: u32, p: u64, vars: usize) -> Rational {
    Rational::new((u64::from(m) * p).into(), (vars as u64).into())
}

/// `μ = -Σ_{x^α standard in degree m} ρ·α + (m P(m) / (n + 1)) Σ r_i`, where the initial ideal
/// takes the terms of largest `ρ`-weight, ties broken by grevlex.
pub fn hm_index_direct(ideal: &Ideal, m: u32, rho: &OnePS) -> Result<HMReport> {
    hm_index_direct_with_tiebreak(ideal, m, rho, &MonomialOrder::grevlex(ideal.arity()))
}

pub fn hm_index_direct_with_tiebreak(ideal: &Ideal, m: u32, rho: &OnePS, tiebreak: &MonomialOrder) -> Result<HMReport> {
    rho.check(ideal.arity())?;
    let (sum, p) = standard_part(ideal, m, rho, tiebreak)?;
    let mu = mp_over(m, p, ideal.arity()) * rho.total() - &sum;
    Ok(HMReport { mu, m, standard_weight_sum: sum, p, components: Vec::new() })
}

/// The index of a chain assembled from its components, computed block by block:
/// `μ = Σ μ_i - Σ (m P_i / (n_i - n_{i-1} + 1)) Σ_{block i} r + (m P / (n + 1)) Σ r + m Σ_{junctions} r`.
pub fn hm_index_decomposed(input: &ChainInput, m: u32, rho: &OnePS) -> Result<HMReport> {
    let blocks = input.blocks()?;
    rho.check(blocks.arity())?;
    let comps: Vec<ComponentHM> = (0..blocks.len())
        .into_par_iter()
        .map(|i| {
            let vars = blocks.block_vars(i);
            let gens = input.components[i]
                .generators()
                .iter()
                .map(|g| g.restrict(&vars).expect("support validated"))
                .collect();
            let local = Ideal::new(vars.len(), gens)?;
            let local_rho = OnePS::new(vars.iter().map(|&k| rho.weights[k].clone()).collect());
            let r = hm_index_direct(&local, m, &local_rho)?;
            Ok(ComponentHM {
                block: i,
                mu: r.mu,
                p: r.p,
                standard_weight_sum: r.standard_weight_sum,
                block_weight_sum: local_rho.total(),
            })
        })
        .collect::<Result<_>>()?;

    let junction: Rational = blocks.junctions().iter().map(|&j| rho.weights[j].clone()).sum();
    let p = comps.iter().map(|c| c.p).sum::<u64>() - (blocks.len() as u64 - 1);
    let mut mu = mp_over(m, p, blocks.arity()) * rho.total() + Rational::from_integer(m.into()) * &junction;
    for (i, c) in comps.iter().enumerate() {
        mu += &c.mu;
        mu -= mp_over(m, c.p, blocks.block_vars(i).len()) * &c.block_weight_sum;
    }
    let standard_weight_sum =
        comps.iter().map(|c| c.standard_weight_sum.clone()).sum::<Rational>() - Rational::from_integer(m.into()) * junction;
    Ok(HMReport { mu, m, standard_weight_sum, p, components: comps })
}

/// The index from aggregated monomial-weight sums:
/// `μ = -sumY - sumZ + (m P / (n + 1)) Σ r + m Σ r_junction`.
pub fn hm_from_aggregates(
    sum_y: &Rational,
    sum_z: &Rational,
    p: i64,
    n: usize,
    m: u32,
    sum_r: &Rational,
    r_junctions: &[Rational],
) -> Rational {
    let m_r = Rational::from_integer(m.into());
    let offset = Rational::new((i64::from(m) * p).into(), ((n + 1) as i64).into()) * sum_r;
    let junction: Rational = r_junctions.iter().cloned().sum();
    offset + m_r * junction - sum_y - sum_z
}

/// Aggregates for the cuspidal tail family of genus `g` at `m ∈ {2, 3}`:
/// weight sums of the two pieces, the Hilbert polynomial value, and the junction weight,
/// with the offset term already multiplied out (so `n = 0` and `Σ r = 1`).
pub fn cuspidal_tail_aggregates(g: i64, m: u32) -> Option<(Rational, Rational, i64, Rational)> {
    let (y, z, p) = match m {
        2 => (35, 8 * (15 * g - 22), 15 * (4 * g - 5)),
        3 => (77, 12 * (23 * g - 34), 23 * (4 * g - 5)),
        _ => return None,
    };
    Some((Rational::from_integer(y.into()), Rational::from_integer(z.into()), p, Rational::from_integer(4.into())))
}

pub fn cuspidal_tail_index(g: i64, m: u32) -> Option<Rational> {
    let (y, z, p, rj) = cuspidal_tail_aggregates(g, m)?;
    Some(hm_from_aggregates(&y, &z, p, 0, m, &Rational::from_integer(1.into()), &[rj]))
}

/// Zero weights give index zero regardless of the ideal.
pub fn is_trivial(rho: &OnePS) -> bool {
    rho.weights.iter().all(Zero::is_zero)
}
