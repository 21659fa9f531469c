//! Polytopes in vertex representation.

mod facets;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::lp::{member_convex_hull, solve_lp, LinearProgram, LpStatus, Relation};

pub use facets::{facets_of_points, vertices_from_facets, Facet, FacetSystem};

/// A polytope stored by its vertices, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    level: Option<Rational>,
    vertices: Vec<Vec<Rational>>,
}

fn coordinate_sum(v: &[Rational]) -> Rational {
    v.iter().cloned().sum()
}

impl VPolytope {
    /// Wraps points already known to be the vertices of their hull.
    pub fn from_vertices(dim: usize, mut vertices: Vec<Vec<Rational>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Malformed("a polytope needs at least one vertex".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::ArityMismatch { expected: dim, found: v.len() });
        }
        vertices.sort();
        vertices.dedup();
        let s = coordinate_sum(&vertices[0]);
        let level = vertices.iter().all(|v| coordinate_sum(v) == s).then_some(s);
        Ok(VPolytope { dim, level, vertices })
    }

    pub fn point(p: Vec<Rational>) -> Self {
        let dim = p.len();
        VPolytope::from_vertices(dim, vec![p]).expect("a single point is a polytope")
    }

    pub fn from_integer_vertices(vertices: &[Vec<i64>]) -> Result<Self> {
        let dim = vertices.first().map(Vec::len).unwrap_or(0);
        Self::from_vertices(dim, vertices.iter().map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common coordinate sum of the vertices, when there is one.
    pub fn level(&self) -> Option<&Rational> {
        self.level.as_ref()
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn translate(&self, t: &[Rational]) -> VPolytope {
        let vs = self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        VPolytope::from_vertices(self.dim, vs).expect("translation keeps vertices")
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool> {
        Ok(member_convex_hull(&self.vertices, p)?.is_inside())
    }

    pub fn facets(&self) -> Result<FacetSystem> {
        facets_of_points(&self.vertices)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "level": self.level.as_ref().map(format_rational),
            "vertices": self.vertices.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Malformed(format!("polytope JSON: {m}"));
        let dim = value.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let verts = value.get("vertices").and_then(Value::as_array).ok_or_else(|| bad("missing vertices"))?;
        let vertices = verts.iter().map(vector_from_json).collect::<Result<Vec<_>>>()?;
        let p = VPolytope::from_vertices(dim, vertices)?;
        if let Some(l) = value.get("level").filter(|l| !l.is_null()) {
            let l = scalar_from_json(l)?;
            if p.level.as_ref() != Some(&l) {
                return Err(bad("vertices do not lie on the declared level"));
            }
        }
        Ok(p)
    }
}

/// Integers as JSON numbers when they fit in 64 bits, everything else as `"p/q"` strings.
pub fn scalar_json(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.numer().to_i64() {
            return json!(i);
        }
    }
    json!(format_rational(x))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn scalar_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Malformed(format!("non-integer JSON number {n}; use a \"p/q\" string"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Malformed(format!("expected a rational, found {other}"))),
    }
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed("expected an array".into()))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

/// The vertices of `conv(points)`. Each discarded point is certified by a convex combination
/// of the points that remain.
pub fn extreme_points(points: &[Vec<Rational>]) -> Result<VPolytope> {
    let Some(first) = points.first() else { return Err(Error::Malformed("empty point set".into())) };
    let dim = first.len();
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut i = 0;
    while i < pts.len() {
        if pts.len() == 1 {
            break;
        }
        let others: Vec<Vec<Rational>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        if member_convex_hull(&others, &pts[i])?.is_inside() {
            pts.remove(i);
        } else {
            i += 1;
        }
    }
    VPolytope::from_vertices(dim, pts)
}

/// Finds a functional strictly maximized at the chosen vertex of each polytope, or `None` when
/// the open normal cones of the chosen vertices do not meet.
pub fn common_strict_normal(polytopes: &[&VPolytope], choice: &[usize]) -> Option<Vec<Rational>> {
    let dim = polytopes[0].dim;
    let mut lp = LinearProgram::maximize(vec![Rational::zero(); dim]);
    for (p, &c) in polytopes.iter().zip(choice) {
        let v = &p.vertices[c];
        for (j, u) in p.vertices.iter().enumerate() {
            if j != c {
                lp.add_constraint(v.iter().zip(u).map(|(a, b)| a - b).collect(), Relation::Ge, Rational::one());
            }
        }
    }
    let r = solve_lp(&lp);
    (r.status == LpStatus::Optimal).then(|| r.point.unwrap())
}

fn index_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out.into_iter().flat_map(|t| (0..s).map(move |i| {
            let mut t = t.clone();
            t.push(i);
            t
        })).collect();
    }
    out
}

/// Minkowski sum of several polytopes. A sum of vertices is kept exactly when the normal
/// cones of its summands share an interior direction.
pub fn minkowski_sum_all(polytopes: &[&VPolytope]) -> Result<VPolytope> {
    let Some(first) = polytopes.first() else { return Err(Error::Malformed("no summands".into())) };
    let dim = first.dim;
    if let Some(p) = polytopes.iter().find(|p| p.dim != dim) {
        return Err(Error::ArityMismatch { expected: dim, found: p.dim });
    }
    let sizes: Vec<usize> = polytopes.iter().map(|p| p.len()).collect();
    let tuples = index_tuples(&sizes);
    let kept: Vec<Vec<Rational>> = tuples
        .par_iter()
        .filter(|t| common_strict_normal(polytopes, t).is_some())
        .map(|t| {
            let mut s = vec![Rational::zero(); dim];
            for (p, &i) in polytopes.iter().zip(t.iter()) {
                for (a, b) in s.iter_mut().zip(&p.vertices[i]) {
                    *a += b;
                }
            }
            s
        })
        .collect();
    VPolytope::from_vertices(dim, kept)
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    minkowski_sum_all(&[p, q])
}

/// The point with every one of its `n + 1` coordinates equal to `m·q / (n + 1)`.
pub fn trivial_character_point(n: usize, m: u32, q: &BigInt) -> Vec<Rational> {
    let c = Rational::new(BigInt::from(m) * q, BigInt::from(n + 1));
    vec![c; n + 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat_vec, ratio};

    #[test]
    fn newton_points_of_a_cubic() {
        let p = extreme_points(&[rat_vec(&[3, 0, 0]), rat_vec(&[2, 0, 1]), rat_vec(&[1, 0, 2]), rat_vec(&[0, 2, 1])]).unwrap();
        assert_eq!(p.vertices(), &[rat_vec(&[0, 2, 1]), rat_vec(&[1, 0, 2]), rat_vec(&[3, 0, 0])]);
        assert_eq!(p.level(), Some(&Rational::from_integer(3.into())));
        assert_eq!(p.facets().unwrap().facets.len(), 3);
        assert_eq!(extreme_points(&[rat_vec(&[1, 1]), rat_vec(&[1, 1])]).unwrap().len(), 1);
    }

    #[test]
    fn sums() {
        let sq = VPolytope::from_integer_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let seg = VPolytope::from_integer_vertices(&[vec![0, 0], vec![1, 1]]).unwrap();
        let s = minkowski_sum(&sq, &seg).unwrap();
        assert_eq!(s.len(), 6);
        let pt = VPolytope::point(rat_vec(&[5, 7]));
        assert_eq!(minkowski_sum(&pt, &sq).unwrap(), sq.translate(&rat_vec(&[5, 7])));
    }

    #[test]
    fn barycenter_values() {
        assert_eq!(trivial_character_point(11, 2, &BigInt::from(50)), vec![ratio(25, 3); 12]);
        assert_eq!(trivial_character_point(8, 6, &BigInt::from(2934)), rat_vec(&[1956; 9]));
        assert_eq!(trivial_character_point(3, 4, &BigInt::from(0)), rat_vec(&[0; 4]));
    }

    #[test]
    fn json_round_trip() {
        let p = VPolytope::from_vertices(2, vec![vec![ratio(1, 2), ratio(3, 2)], rat_vec(&[2, 0])]).unwrap();
        let j = p.to_json();
        assert_eq!(j.to_string(), r#"{"dim":2,"level":"2","vertices":[["1/2","3/2"],[2,0]]}"#);
        assert_eq!(VPolytope::from_json(&j).unwrap(), p);
    }
}
