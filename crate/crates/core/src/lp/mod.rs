//! Exact rational linear programming with verifiable certificates.

mod hull;
mod simplex;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{dot, format_rational, Rational};

pub use hull::{affine_hull, member_convex_hull, relative_interior_member, AffineHull, HullMembership};
pub use simplex::solve_lp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

/// `max` or `min` of `objective · x` subject to linear constraints and optional bounds.
/// Variables are free unless bounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram { sense: Sense::Maximize, objective, constraints: Vec::new(), lower: vec![None; n], upper: vec![None; n] }
    }

    pub fn minimize(objective: Vec<Rational>) -> Self {
        LinearProgram { sense: Sense::Minimize, ..Self::maximize(objective) }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        self.add_constraint(coeffs, rel, rhs);
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint length does not match the number of variables");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn lower_bound(mut self, var: usize, value: Rational) -> Self {
        self.lower[var] = Some(value);
        self
    }

    pub fn upper_bound(mut self, var: usize, value: Rational) -> Self {
        self.upper[var] = Some(value);
        self
    }

    /// All variables `>= 0`.
    pub fn nonnegative(mut self) -> Self {
        self.lower = vec![Some(Rational::zero()); self.num_vars()];
        self
    }

    /// The constraints followed by one row per finite lower bound and one per finite upper
    /// bound. Certificates are indexed by these rows.
    pub fn canonical_rows(&self) -> Vec<Constraint> {
        let n = self.num_vars();
        let unit = |j: usize| {
            let mut v = vec![Rational::zero(); n];
            v[j] = Rational::from_integer(1.into());
            v
        };
        let mut rows = self.constraints.clone();
        for (j, l) in self.lower.iter().enumerate() {
            if let Some(l) = l {
                rows.push(Constraint { coeffs: unit(j), rel: Relation::Ge, rhs: l.clone() });
            }
        }
        for (j, u) in self.upper.iter().enumerate() {
            if let Some(u) = u {
                rows.push(Constraint { coeffs: unit(j), rel: Relation::Le, rhs: u.clone() });
            }
        }
        rows
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Evidence for an LP outcome, indexed by [`LinearProgram::canonical_rows`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Multipliers `y` with `Σ y_i a_i = c` and `c·x = y·b`; for a maximization `y_i >= 0` on
    /// `<=` rows and `y_i <= 0` on `>=` rows (reversed for minimization).
    Dual(Vec<Rational>),
    /// Multipliers `y` with `Σ y_i a_i = 0`, `y·b > 0`, `y_i >= 0` on `>=` rows and `y_i <= 0`
    /// on `<=` rows.
    Farkas(Vec<Rational>),
    /// A direction `d` keeping every row satisfied from the reported point and improving the
    /// objective.
    Ray(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub point: Option<Vec<Rational>>,
    pub value: Option<Rational>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditFailure(pub String);

impl fmt::Display for AuditFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn row_holds(row: &Constraint, x: &[Rational]) -> bool {
    let lhs = dot(&row.coeffs, x);
    match row.rel {
        Relation::Le => lhs <= row.rhs,
        Relation::Eq => lhs == row.rhs,
        Relation::Ge => lhs >= row.rhs,
    }
}

fn combination(rows: &[Constraint], y: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for (row, yi) in rows.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        for (a, c) in acc.iter_mut().zip(&row.coeffs) {
            *a += yi * c;
        }
    }
    acc
}

/// Re-checks an [`LpResult`] against `lp` using only plain arithmetic.
pub fn audit(lp: &LinearProgram, result: &LpResult) -> Result<(), AuditFailure> {
    let rows = lp.canonical_rows();
    let n = lp.num_vars();
    let fail = |s: &str| Err(AuditFailure(s.to_string()));
    let feasible = |x: &[Rational]| x.len() == n && rows.iter().all(|r| row_holds(r, x));
    match (&result.status, &result.certificate) {
        (LpStatus::Optimal, Certificate::Dual(y)) => {
            let Some(x) = &result.point else { return fail("optimal result without a point") };
            if !feasible(x) {
                return fail("point violates a constraint");
            }
            if y.len() != rows.len() {
                return fail("dual vector has the wrong length");
            }
            let max = lp.sense == Sense::Maximize;
            for (row, yi) in rows.iter().zip(y) {
                let ok = match row.rel {
                    Relation::Eq => true,
                    Relation::Le => (max && !yi.is_negative()) || (!max && !yi.is_positive()),
                    Relation::Ge => (max && !yi.is_positive()) || (!max && !yi.is_negative()),
                };
                if !ok {
                    return fail("dual multiplier has the wrong sign");
                }
            }
            if combination(&rows, y, n) != lp.objective {
                return fail("dual combination does not reproduce the objective");
            }
            let primal = dot(&lp.objective, x);
            let dual: Rational = rows.iter().zip(y).map(|(r, yi)| &r.rhs * yi).sum();
            if primal != dual {
                return fail("primal and dual objective values differ");
            }
            if result.value.as_ref() != Some(&primal) {
                return fail("reported value differs from objective at the point");
            }
            Ok(())
        }
        (LpStatus::Infeasible, Certificate::Farkas(y)) => {
            if y.len() != rows.len() {
                return fail("Farkas vector has the wrong length");
            }
            for (row, yi) in rows.iter().zip(y) {
                let ok = match row.rel {
                    Relation::Eq => true,
                    Relation::Le => !yi.is_positive(),
                    Relation::Ge => !yi.is_negative(),
                };
                if !ok {
                    return fail("Farkas multiplier has the wrong sign");
                }
            }
            if combination(&rows, y, n).iter().any(|c| !c.is_zero()) {
                return fail("Farkas combination is not zero");
            }
            let yb: Rational = rows.iter().zip(y).map(|(r, yi)| &r.rhs * yi).sum();
            if !yb.is_positive() {
                return fail("Farkas combination does not give a contradiction");
            }
            Ok(())
        }
        (LpStatus::Unbounded, Certificate::Ray(d)) => {
            let Some(x) = &result.point else { return fail("unbounded result without a point") };
            if !feasible(x) || d.len() != n {
                return fail("unbounded result has an infeasible point");
            }
            for row in &rows {
                let ad = dot(&row.coeffs, d);
                let ok = match row.rel {
                    Relation::Eq => ad.is_zero(),
                    Relation::Le => !ad.is_positive(),
                    Relation::Ge => !ad.is_negative(),
                };
                if !ok {
                    return fail("ray leaves the feasible region");
                }
            }
            let cd = dot(&lp.objective, d);
            let improving = match lp.sense {
                Sense::Maximize => cd.is_positive(),
                Sense::Minimize => cd.is_negative(),
            };
            if !improving {
                return fail("ray does not improve the objective");
            }
            Ok(())
        }
        _ => fail("certificate kind does not match the status"),
    }
}

impl fmt::Display for LpResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.status)?;
        if let Some(v) = &self.value {
            write!(f, " value {}", format_rational(v))?;
        }
        Ok(())
    }
}
