//! State polytopes of homogeneous ideals, enumerated through a Groebner oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::rational::{dot, format_rational, Rational};
use crate::algebra::MonomialOrder;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, hilbert_values_of_initial, DegreeSlice, Ideal, MonomialIdeal};
use crate::lp::{affine_hull, member_convex_hull, relative_interior_member, HullMembership};
use crate::polytope::{facets_of_points, trivial_character_point, vector_json, Facet, VPolytope};

pub const DEFAULT_BUDGET: usize = 10_000;

/// Coordinate-wise sum of the exponent vectors of the slice's initial-ideal monomials.
pub fn state_of_slice(slice: &DegreeSlice, arity: usize) -> Vec<i64> {
    let mut s = vec![0i64; arity];
    for m in &slice.in_ideal {
        for (a, &e) in s.iter_mut().zip(m.exponents()) {
            *a += e as i64;
        }
    }
    s
}

/// State of a monomial ideal in degree `m`: the exponent sum of its degree-`m` monomials.
pub fn state_of_initial(init: &MonomialIdeal, m: u32) -> Vec<i64> {
    let mut s = vec![0i64; init.arity()];
    for x in monomials_of_degree(init.arity(), m) {
        if init.contains(&x) {
            for (a, &e) in s.iter_mut().zip(x.exponents()) {
                *a += e as i64;
            }
        }
    }
    s
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// A vertex of a state polytope together with the weight that selects it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVertex {
    pub vector: Vec<i64>,
    pub witness: Vec<Rational>,
    pub q: BigInt,
}

impl StateVertex {
    /// The weight order that produced the vertex: the witness refined by grevlex.
    pub fn witness_order(&self) -> Result<MonomialOrder> {
        MonomialOrder::homogeneous_weight(&self.witness, &MonomialOrder::grevlex(self.vector.len()))
    }
}

/// The state of the initial ideal for `w` refined by `tiebreak`; it maximizes `⟨w, ·⟩` over
/// the state polytope.
pub fn argmax_state_with_tiebreak(ideal: &Ideal, m: u32, w: &[Rational], tiebreak: &MonomialOrder) -> Result<StateVertex> {
    let order = MonomialOrder::homogeneous_weight(w, tiebreak)?;
    let init = buchberger(ideal, &order)?.initial_ideal();
    let q = hilbert_values_of_initial(&init, m).q;
    Ok(StateVertex { vector: state_of_initial(&init, m), witness: w.to_vec(), q })
}

pub fn argmax_state(ideal: &Ideal, m: u32, w: &[Rational]) -> Result<StateVertex> {
    argmax_state_with_tiebreak(ideal, m, w, &MonomialOrder::grevlex(ideal.arity()))
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Maximum number of oracle (Groebner basis) computations.
    pub budget: usize,
    /// Run the oracle queries of one refinement round on the rayon pool.
    pub parallel: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { budget: DEFAULT_BUDGET, parallel: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct StatePolytopeResult {
    pub polytope: VPolytope,
    /// One witness weight per vertex, aligned with `polytope.vertices()`.
    pub witnesses: Vec<Vec<Rational>>,
    pub m: u32,
    pub q: BigInt,
    pub queries: usize,
    pub status: EnumerationStatus,
    /// Facet inequalities of the inner hull already shown to hold for the whole polytope.
    pub certified_facets: Vec<Facet>,
}

impl StatePolytopeResult {
    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    pub fn require_complete(&self, budget: usize) -> Result<&Self> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded { budget })
        }
    }

    pub fn level(&self) -> BigInt {
        BigInt::from(self.m) * &self.q
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.polytope.to_json();
        let obj = v.as_object_mut().expect("polytope JSON is an object");
        obj.insert("m".into(), json!(self.m));
        obj.insert("Q".into(), json!(self.q.to_string()));
        obj.insert("queries".into(), json!(self.queries));
        obj.insert("status".into(), json!(if self.is_complete() { "complete" } else { "budget-exceeded" }));
        obj.insert("witnesses".into(), Value::Array(self.witnesses.iter().map(|w| vector_json(w)).collect()));
        v
    }
}

struct Oracle<'a> {
    ideal: &'a Ideal,
    m: u32,
    budget: usize,
    queries: usize,
    found: BTreeMap<Vec<i64>, Vec<Rational>>,
    q: Option<BigInt>,
}

impl Oracle<'_> {
    /// Runs a batch of queries; `None` when the budget does not cover the whole batch.
    fn ask(&mut self, directions: &[Vec<Rational>], parallel: bool) -> Result<Option<Vec<Vec<i64>>>> {
        if self.queries + directions.len() > self.budget {
            return Ok(None);
        }
        self.queries += directions.len();
        let answers: Vec<StateVertex> = if parallel {
            directions.par_iter().map(|w| argmax_state(self.ideal, self.m, w)).collect::<Result<_>>()?
        } else {
            directions.iter().map(|w| argmax_state(self.ideal, self.m, w)).collect::<Result<_>>()?
        };
        let mut out = Vec::with_capacity(answers.len());
        for a in answers {
            if self.q.is_none() {
                self.q = Some(a.q.clone());
            }
            self.found.entry(a.vector.clone()).or_insert(a.witness);
            out.push(a.vector);
        }
        Ok(Some(out))
    }
}

fn rational_points(found: &BTreeMap<Vec<i64>, Vec<Rational>>) -> Vec<Vec<Rational>> {
    found.keys().map(|v| to_rational_vec(v)).collect()
}

fn value(h: &[Rational], v: &[i64]) -> Rational {
    dot(h, &to_rational_vec(v))
}

/// Exact vertex set of the `m`-th state polytope.
///
/// Seeds with the coordinate directions, certifies the affine hull with two queries per
/// equation, then queries the outer normal of every facet of the inner hull until no query
/// finds a point beyond its facet. A budget too small for the `2n` seed queries is an error;
/// otherwise an exhausted budget returns the partial inner hull.
pub fn enumerate_state_polytope(ideal: &Ideal, m: u32, opts: &EnumerateOptions) -> Result<StatePolytopeResult> {
    let n = ideal.arity();
    let mut oracle = Oracle { ideal, m, budget: opts.budget, queries: 0, found: BTreeMap::new(), q: None };
    let mut certified: BTreeSet<Facet> = BTreeSet::new();
    let unit = |i: usize, s: i64| {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::from_integer(s.into());
        e
    };
    let seeds: Vec<Vec<Rational>> = (0..n).flat_map(|i| [unit(i, 1), unit(i, -1)]).collect();
    if oracle.ask(&seeds, opts.parallel)?.is_none() {
        return Err(Error::BudgetExceeded { budget: opts.budget });
    }
    let mut complete = true;

    // affine hull
    let mut hull_certified = false;
    while complete && !hull_certified {
        let hull = affine_hull(&rational_points(&oracle.found))?;
        let dirs: Vec<Vec<Rational>> = hull
            .equations
            .iter()
            .flat_map(|(a, _)| [a.clone(), a.iter().map(|x| -x.clone()).collect()])
            .collect();
        let before = oracle.found.len();
        match oracle.ask(&dirs, opts.parallel)? {
            None => complete = false,
            Some(_) => hull_certified = oracle.found.len() == before,
        }
    }

    // facets
    while complete {
        let fs = facets_of_points(&rational_points(&oracle.found))?;
        let open: Vec<Facet> = fs.facets.into_iter().filter(|f| !certified.contains(f)).collect();
        if open.is_empty() {
            break;
        }
        let dirs: Vec<Vec<Rational>> = open.iter().map(|f| f.normal.clone()).collect();
        match oracle.ask(&dirs, opts.parallel)? {
            None => complete = false,
            Some(answers) => {
                for (f, v) in open.into_iter().zip(answers) {
                    if value(&f.normal, &v) <= f.offset {
                        certified.insert(f);
                    }
                }
            }
        }
    }

    let found = oracle.found;
    let q = oracle.q.unwrap_or_default();
    let points = rational_points(&found);
    // keep extreme points only; grevlex refinement always lands on vertices, so this is a check
    let polytope = if complete { VPolytope::from_vertices(n, points)? } else { crate::polytope::extreme_points(&points)? };
    let witnesses = polytope
        .vertices()
        .iter()
        .map(|v| {
            let key: Vec<i64> = v.iter().map(|x| x.to_integer().to_i64().expect("integer state")).collect();
            found[&key].clone()
        })
        .collect();
    Ok(StatePolytopeResult {
        polytope,
        witnesses,
        m,
        q,
        queries: oracle.queries,
        status: if complete { EnumerationStatus::Complete } else { EnumerationStatus::BudgetExceeded },
        certified_facets: certified.into_iter().collect(),
    })
}

/// Whether the barycenter lies in the polytope, with both interior conventions.
#[derive(Clone, Debug)]
pub struct SemistabilityReport {
    pub barycenter: Vec<Rational>,
    pub member_of_hull: bool,
    /// Interior relative to the polytope's own affine hull.
    pub relative_interior: bool,
    /// Interior relative to the whole level hyperplane (requires the polytope to span it).
    pub level_interior: bool,
    pub certificate: HullMembership,
}

impl SemistabilityReport {
    pub fn to_json(&self) -> Value {
        let cert = match &self.certificate {
            HullMembership::Inside { lambda } => json!({"kind": "convex-combination", "lambda": vector_json(lambda)}),
            HullMembership::Outside { separator } => json!({"kind": "separating-functional", "h": vector_json(separator)}),
        };
        json!({
            "barycenter": vector_json(&self.barycenter),
            "memberOfHull": self.member_of_hull,
            "relativeInterior": self.relative_interior,
            "levelInterior": self.level_interior,
            "certificate": cert,
        })
    }
}

pub fn semistability_of_polytope(polytope: &VPolytope, barycenter: &[Rational]) -> Result<SemistabilityReport> {
    let certificate = member_convex_hull(polytope.vertices(), barycenter)?;
    let member = certificate.is_inside();
    let relative = member && relative_interior_member(polytope.vertices(), barycenter)?;
    let full = affine_hull(polytope.vertices())?.dim + 1 == polytope.dim();
    Ok(SemistabilityReport {
        barycenter: barycenter.to_vec(),
        member_of_hull: member,
        relative_interior: relative,
        level_interior: relative && full,
        certificate,
    })
}

/// Barycenter test for a completely enumerated state polytope.
pub fn semistability_report(result: &StatePolytopeResult) -> Result<SemistabilityReport> {
    if !result.is_complete() {
        return Err(Error::Malformed("semistability needs a complete state polytope".into()));
    }
    let n = result.polytope.dim() - 1;
    let b = trivial_character_point(n, result.m, &result.q);
    semistability_of_polytope(&result.polytope, &b)
}

/// `"p/q"` strings for a rational vector, for messages.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat_vec;
    use crate::algebra::{Monomial, Polynomial};

    #[test]
    fn monomial_ideal_state() {
        let i = Ideal::from_monomials(
            4,
            [Monomial::new(vec![1, 0, 1, 0]), Monomial::new(vec![1, 0, 0, 1]), Monomial::new(vec![0, 1, 0, 1])],
        );
        let r = enumerate_state_polytope(&i, 2, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.polytope.vertices(), &[rat_vec(&[2, 1, 1, 2])]);
        let z = argmax_state(&Ideal::zero(3), 2, &rat_vec(&[1, 0, 0])).unwrap();
        assert_eq!(z.vector, vec![0, 0, 0]);
    }

    #[test]
    fn cubic_newton_polytope() {
        // b^2 c - a (a - c)(a - 2c)
        let f = Polynomial::from_int_terms(
            3,
            &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (3, &[2, 0, 1]), (-2, &[1, 0, 2])],
        );
        let i = Ideal::new(3, vec![f]).unwrap();
        assert_eq!(argmax_state(&i, 3, &rat_vec(&[1, 0, 0])).unwrap().vector, vec![3, 0, 0]);
        let r = enumerate_state_polytope(&i, 3, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.polytope.vertices(), &[rat_vec(&[0, 2, 1]), rat_vec(&[1, 0, 2]), rat_vec(&[3, 0, 0])]);
        for (v, w) in r.polytope.vertices().iter().zip(&r.witnesses) {
            for u in r.polytope.vertices() {
                assert!(dot(w, v) >= dot(w, u));
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let f = Polynomial::from_int_terms(3, &[(1, &[0, 2, 1]), (-1, &[3, 0, 0]), (1, &[1, 0, 2])]);
        let i = Ideal::new(3, vec![f]).unwrap();
        let r = enumerate_state_polytope(&i, 3, &EnumerateOptions { budget: 7, parallel: false }).unwrap();
        assert_eq!(r.status, EnumerationStatus::BudgetExceeded);
        assert!(r.require_complete(7).is_err());
    }
}
