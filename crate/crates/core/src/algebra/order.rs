use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::monomial::Monomial;
use super::rational::{denominator_lcm, dot_int, rat, Rational};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    Grlex,
    Grevlex,
    WeightRefined,
    Block,
    Custom,
}

/// Why a weight matrix fails to define a monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    Empty,
    WrongArity { row: usize, expected: usize, found: usize },
    /// The matrix has a nontrivial kernel, so distinct monomials can tie.
    NotTotal { rank: usize, arity: usize },
    /// `x_coordinate` would be smaller than 1.
    NotWellOrdered { coordinate: usize },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderViolation::Empty => write!(f, "no weight rows"),
            OrderViolation::WrongArity { row, expected, found } => {
                write!(f, "row {row} has length {found}, expected {expected}")
            }
            OrderViolation::NotTotal { rank, arity } => {
                write!(f, "not total: weight matrix has rank {rank} < {arity}")
            }
            OrderViolation::NotWellOrdered { coordinate } => {
                write!(f, "not a well-order: x{coordinate} is smaller than 1")
            }
        }
    }
}

/// Checks that `rows` define a total, multiplicative well-order on monomials of arity
/// `arity`: full column rank, and in each column the first nonzero entry is positive.
pub fn order_validate(rows: &[Vec<Rational>], arity: usize) -> std::result::Result<(), OrderViolation> {
    if rows.is_empty() {
        return Err(OrderViolation::Empty);
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != arity {
            return Err(OrderViolation::WrongArity { row: i, expected: arity, found: r.len() });
        }
    }
    for c in 0..arity {
        match rows.iter().map(|r| &r[c]).find(|x| !x.is_zero()) {
            Some(x) if x.is_positive() => {}
            _ => return Err(OrderViolation::NotWellOrdered { coordinate: c }),
        }
    }
    let rank = linalg::rank(rows);
    if rank < arity {
        return Err(OrderViolation::NotTotal { rank, arity });
    }
    Ok(())
}

/// Sort key of a monomial under an order: the integer weight-row products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(Box<[i128]>);

impl OrderKey {
    pub fn add(&self, other: &OrderKey) -> OrderKey {
        OrderKey(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

/// A monomial order given by a rational weight matrix; monomials are compared by the
/// lexicographic order of their row products.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    rows: Vec<Vec<Rational>>,
    int_rows: Vec<Vec<i64>>,
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialOrder({:?}, {:?})", self.kind, self.int_rows)
    }
}

fn unit(arity: usize, i: usize, sign: i64) -> Vec<Rational> {
    let mut r = vec![Rational::zero(); arity];
    r[i] = rat(sign);
    r
}

impl MonomialOrder {
    fn build(kind: OrderKind, rows: Vec<Vec<Rational>>, arity: usize) -> Result<Self> {
        order_validate(&rows, arity).map_err(|v| Error::InvalidOrder(v.to_string()))?;
        let int_rows = rows
            .iter()
            .map(|r| {
                let l = Rational::from_integer(denominator_lcm(r));
                r.iter()
                    .map(|x| {
                        (x * &l)
                            .to_integer()
                            .to_i64()
                            .ok_or_else(|| Error::InvalidOrder("weight entry does not fit in 64 bits".into()))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(MonomialOrder { kind, rows, int_rows })
    }

    /// Lexicographic order with `x_0 > x_1 > ... > x_n`.
    pub fn lex(arity: usize) -> Self {
        let rows = (0..arity).map(|i| unit(arity, i, 1)).collect();
        Self::build(OrderKind::Lex, rows, arity).expect("lex is a valid order")
    }

    /// Total degree, ties broken by lex.
    pub fn grlex(arity: usize) -> Self {
        let mut rows = vec![vec![rat(1); arity]];
        rows.extend((0..arity.saturating_sub(1)).map(|i| unit(arity, i, 1)));
        Self::build(OrderKind::Grlex, rows, arity).expect("grlex is a valid order")
    }

    /// Graded reverse lex: total degree, then the smaller exponent in the last differing
    /// variable wins.
    pub fn grevlex(arity: usize) -> Self {
        let mut rows = vec![vec![rat(1); arity]];
        rows.extend((1..arity).rev().map(|i| unit(arity, i, -1)));
        Self::build(OrderKind::Grevlex, rows, arity).expect("grevlex is a valid order")
    }

    /// Compare by `w · a` first, then by `tiebreak`.
    pub fn weight_refined(w: &[Rational], tiebreak: &MonomialOrder) -> Result<Self> {
        if w.len() != tiebreak.arity() {
            return Err(Error::ArityMismatch { expected: tiebreak.arity(), found: w.len() });
        }
        let mut rows = vec![w.to_vec()];
        rows.extend(tiebreak.rows.iter().cloned());
        Self::build(OrderKind::WeightRefined, rows, w.len())
    }

    /// Weight order for comparing monomials of equal degree.
    ///
    /// `w` is translated by a constant so that no entry is negative; on each graded piece the
    /// resulting order coincides with the one induced by `w` and `tiebreak`.
    pub fn homogeneous_weight(w: &[Rational], tiebreak: &MonomialOrder) -> Result<Self> {
        let min = w.iter().min().cloned().unwrap_or_else(Rational::zero);
        if min.is_negative() {
            let shifted: Vec<Rational> = w.iter().map(|x| x - &min).collect();
            Self::weight_refined(&shifted, tiebreak)
        } else {
            Self::weight_refined(w, tiebreak)
        }
    }

    /// Elimination order: any monomial involving a variable of `eliminate` beats every
    /// monomial free of them. Ties are broken by grevlex.
    pub fn elimination(arity: usize, eliminate: &[usize]) -> Result<Self> {
        if let Some(&i) = eliminate.iter().find(|&&i| i >= arity) {
            return Err(Error::OutOfRange(format!("variable index {i} for arity {arity}")));
        }
        let first: Vec<Rational> = (0..arity).map(|i| rat(eliminate.contains(&i) as i64)).collect();
        let mut rows = vec![first];
        rows.extend(Self::grevlex(arity).rows);
        Self::build(OrderKind::Block, rows, arity)
    }

    /// Elimination order whose second criterion is a weighted degree; used for graph
    /// ideals that are homogeneous for a non-standard grading.
    pub fn elimination_weighted(arity: usize, eliminate: &[usize], grading: &[Rational]) -> Result<Self> {
        let first: Vec<Rational> = (0..arity).map(|i| rat(eliminate.contains(&i) as i64)).collect();
        let mut rows = vec![first, grading.to_vec()];
        rows.extend(Self::grevlex(arity).rows);
        Self::build(OrderKind::Block, rows, arity)
    }

    /// Arbitrary weight matrix; validated.
    pub fn custom(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let arity = rows.first().map(Vec::len).unwrap_or(0);
        Self::build(OrderKind::Custom, rows, arity)
    }

    /// Named constructor used by the command line: `lex`, `grlex`, `grevlex`, or
    /// `weight` (weights required, grevlex tie-break).
    pub fn from_name(name: &str, arity: usize, weights: Option<&[Rational]>) -> Result<Self> {
        match name {
            "lex" => Ok(Self::lex(arity)),
            "grlex" => Ok(Self::grlex(arity)),
            "grevlex" => Ok(Self::grevlex(arity)),
            "weight" | "weight-refined" => {
                let w = weights.ok_or_else(|| Error::InvalidOrder("weight order needs weights".into()))?;
                Self::homogeneous_weight(w, &Self::grevlex(arity))
            }
            other => Err(Error::InvalidOrder(format!("unknown order name {other:?}"))),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// First weight row, the one a weight-refined order is built from.
    pub fn primary_weight(&self) -> &[Rational] {
        &self.rows[0]
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        OrderKey(
            self.int_rows
                .iter()
                .map(|r| r.iter().zip(m.exponents()).map(|(&w, &e)| w as i128 * e as i128).sum())
                .collect(),
        )
    }

    /// Comparison straight from the rational weight rows.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if m.arity() != self.arity() {
                return Err(Error::ArityMismatch { expected: self.arity(), found: m.arity() });
            }
        }
        for row in &self.rows {
            match dot_int(row, a.exponents()).cmp(&dot_int(row, b.exponents())) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(Ordering::Equal)
    }

    pub(crate) fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Weights on the contiguous coordinate range `start .. start + weights.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWeights {
    pub start: usize,
    pub weights: Vec<Rational>,
}

impl BlockWeights {
    pub fn new(start: usize, weights: Vec<Rational>) -> Self {
        BlockWeights { start, weights }
    }

    fn end(&self) -> usize {
        self.start + self.weights.len()
    }
}

/// Splices weight vectors of two blocks sharing exactly one junction coordinate.
///
/// `v` is translated by `v'_j - v_j` at the junction `j`, so both agree there, and the union
/// range receives `v'` on its block and translated `v` on the other. Translation leaves the
/// order on every graded piece unchanged. The result is scaled to integers.
pub fn merge_junction_orders(v: &BlockWeights, v_prime: &BlockWeights) -> Result<BlockWeights> {
    let lo = v.start.max(v_prime.start);
    let hi = v.end().min(v_prime.end());
    if hi <= lo || hi - lo != 1 {
        return Err(Error::InvalidBlocks(format!(
            "blocks {}..{} and {}..{} must overlap in exactly one coordinate",
            v.start,
            v.end(),
            v_prime.start,
            v_prime.end()
        )));
    }
    let j = lo;
    let shift = &v_prime.weights[j - v_prime.start] - &v.weights[j - v.start];
    let start = v.start.min(v_prime.start);
    let end = v.end().max(v_prime.end());
    let mut w = vec![Rational::zero(); end - start];
    for (i, x) in v.weights.iter().enumerate() {
        w[v.start + i - start] = x + &shift;
    }
    for (i, x) in v_prime.weights.iter().enumerate() {
        w[v_prime.start + i - start] = x.clone();
    }
    let l = Rational::from_integer(denominator_lcm(&w));
    let w = w.into_iter().map(|x| x * &l).collect();
    Ok(BlockWeights { start, weights: w })
}

/// Integer vector helper for tests and examples.
pub fn int_weights(w: &[i64]) -> Vec<Rational> {
    w.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}
