use num_traits::{One, Zero};

use super::{solve_lp, Certificate, LinearProgram, LpStatus, Relation};
use crate::algebra::rational::{dot, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::facets_of_points;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    /// Convex weights, one per input point.
    Inside { lambda: Vec<Rational> },
    /// A functional `h` with `h·p > h·v` for every input point `v`.
    Outside { separator: Vec<Rational> },
}

impl HullMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullMembership::Inside { .. })
    }

    /// Re-checks the witness with plain arithmetic.
    pub fn verify(&self, points: &[Vec<Rational>], p: &[Rational]) -> bool {
        match self {
            HullMembership::Inside { lambda } => {
                if lambda.len() != points.len() || lambda.iter().any(|l| *l < Rational::zero()) {
                    return false;
                }
                if lambda.iter().cloned().sum::<Rational>() != Rational::one() {
                    return false;
                }
                (0..p.len()).all(|c| points.iter().zip(lambda).map(|(v, l)| &v[c] * l).sum::<Rational>() == p[c])
            }
            HullMembership::Outside { separator } => {
                let hp = dot(separator, p);
                points.iter().all(|v| dot(separator, v) < hp)
            }
        }
    }
}

fn check_dims(points: &[Vec<Rational>], p: &[Rational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Malformed("empty point set".into()));
    }
    if let Some(v) = points.iter().find(|v| v.len() != p.len()) {
        return Err(Error::ArityMismatch { expected: p.len(), found: v.len() });
    }
    Ok(())
}

/// Decides `p ∈ conv(points)` by linear programming, returning a checkable witness either way.
pub fn member_convex_hull(points: &[Vec<Rational>], p: &[Rational]) -> Result<HullMembership> {
    check_dims(points, p)?;
    if let Some(i) = points.iter().position(|v| v == p) {
        let mut lambda = vec![Rational::zero(); points.len()];
        lambda[i] = Rational::one();
        return Ok(HullMembership::Inside { lambda });
    }
    let k = points.len();
    let mut lp = LinearProgram::maximize(vec![Rational::zero(); k]).nonnegative();
    lp.add_constraint(vec![Rational::one(); k], Relation::Eq, Rational::one());
    for c in 0..p.len() {
        lp.add_constraint(points.iter().map(|v| v[c].clone()).collect(), Relation::Eq, p[c].clone());
    }
    let res = solve_lp(&lp);
    match (res.status, res.certificate) {
        (LpStatus::Optimal, _) => Ok(HullMembership::Inside { lambda: res.point.expect("optimal point") }),
        (LpStatus::Infeasible, Certificate::Farkas(y)) => {
            Ok(HullMembership::Outside { separator: y[1..=p.len()].to_vec() })
        }
        _ => unreachable!("a feasibility problem with zero objective is never unbounded"),
    }
}

/// Affine hull of a point set as `dim` and a reduced system of equations `a·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

impl AffineHull {
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, p) == *b)
    }

    /// True when `a·x = b` holds on the whole hull.
    pub fn implies(&self, a: &[Rational], b: &Rational) -> bool {
        let mut m: Vec<Vec<Rational>> =
            self.equations.iter().map(|(row, rhs)| row.iter().cloned().chain([rhs.clone()]).collect()).collect();
        let before = linalg::rank(&m);
        m.push(a.iter().cloned().chain([b.clone()]).collect());
        linalg::rank(&m) == before
    }
}

pub fn affine_hull(points: &[Vec<Rational>]) -> Result<AffineHull> {
    let Some(base) = points.first() else { return Err(Error::Malformed("empty point set".into())) };
    let d = base.len();
    let diffs: Vec<Vec<Rational>> =
        points[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let dim = linalg::rank(&diffs);
    let mut normals = linalg::nullspace(&diffs, d);
    linalg::rref(&mut normals);
    let equations = normals
        .into_iter()
        .map(|a| {
            let b = dot(&a, base);
            (a, b)
        })
        .collect();
    Ok(AffineHull { dim, equations })
}

/// True when `p` lies in the relative interior of `conv(points)`, taken inside the affine hull
/// of the points. A single point is its own relative interior.
pub fn relative_interior_member(points: &[Vec<Rational>], p: &[Rational]) -> Result<bool> {
    check_dims(points, p)?;
    if !member_convex_hull(points, p)?.is_inside() {
        return Ok(false);
    }
    let fs = facets_of_points(points)?;
    Ok(fs.facets.iter().all(|f| dot(&f.normal, p) < f.offset))
}
