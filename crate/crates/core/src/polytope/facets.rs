//! Facet enumeration by incremental beneath-beyond in double-description form.

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{dot, primitive_integer_vector, to_rationals, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation};

/// Outer facet inequality `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// Facets of a polytope inside its affine hull.
///
/// Points of the affine hull are `base + Σ_k (x_k - base_k) basis_k` over the pivot coordinates
/// `k ∈ coords`; facet normals are supported on `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSystem {
    pub ambient: usize,
    pub dim: usize,
    pub equations: Vec<(Vec<Rational>, Rational)>,
    pub facets: Vec<Facet>,
    pub(crate) base: Vec<Rational>,
    pub(crate) coords: Vec<usize>,
    pub(crate) basis: Vec<Vec<Rational>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct HFacet {
    normal: Vec<Rational>,
    offset: Rational,
    incident: Bits,
}

impl HFacet {
    /// `offset - normal·p`; positive strictly beneath.
    fn slack(&self, p: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, p)
    }
}

fn primitive(normal: Vec<Rational>, offset: Rational) -> (Vec<Rational>, Rational) {
    let mut all = normal;
    all.push(offset);
    let mut v = to_rationals(&primitive_integer_vector(&all));
    let off = v.pop().unwrap();
    (v, off)
}

/// Facets of the full-dimensional hull of `pts` in `R^d`, `d >= 1`.
fn full_dim_facets(pts: &[Vec<Rational>], d: usize) -> Vec<(Vec<Rational>, Rational)> {
    // initial simplex: greedy affinely independent points
    let mut simplex = vec![0usize];
    let mut diffs: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let diff: Vec<Rational> = p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        diffs.push(diff);
        if linalg::rank(&diffs) == diffs.len() {
            simplex.push(i);
        } else {
            diffs.pop();
        }
    }
    assert_eq!(simplex.len(), d + 1, "points are not full-dimensional");

    let n = pts.len();
    let mut facets: Vec<HFacet> = Vec::new();
    for &omit in &simplex {
        let on: Vec<usize> = simplex.iter().copied().filter(|&i| i != omit).collect();
        let rows: Vec<Vec<Rational>> =
            on[1..].iter().map(|&i| pts[i].iter().zip(&pts[on[0]]).map(|(a, b)| a - b).collect()).collect();
        let mut g = linalg::nullspace(&rows, d).remove(0);
        let mut c = dot(&g, &pts[on[0]]);
        if dot(&g, &pts[omit]) > c {
            g = g.into_iter().map(|x| -x).collect();
            c = -c;
        }
        let (g, c) = primitive(g, c);
        let mut incident = Bits::new(n);
        for &i in &on {
            incident.set(i);
        }
        facets.push(HFacet { normal: g, offset: c, incident });
    }

    for (pi, p) in pts.iter().enumerate() {
        if simplex.contains(&pi) {
            continue;
        }
        let slacks: Vec<Rational> = facets.iter().map(|f| f.slack(p)).collect();
        if !slacks.iter().any(|s| s.is_negative()) {
            continue;
        }
        let mut created = Vec::new();
        for (a, fa) in facets.iter().enumerate() {
            if !slacks[a].is_negative() {
                continue;
            }
            for (b, fb) in facets.iter().enumerate() {
                if !slacks[b].is_positive() {
                    continue;
                }
                let ridge = fa.incident.and(&fb.incident);
                if (ridge.count() as usize) + 1 < d {
                    continue;
                }
                let adjacent = facets
                    .iter()
                    .enumerate()
                    .all(|(h, fh)| h == a || h == b || !ridge.subset_of(&fh.incident));
                if !adjacent {
                    continue;
                }
                // combination vanishing at p, nonnegative on both old facets
                let (sa, sb) = (&slacks[a], &slacks[b]);
                let normal: Vec<Rational> = fa.normal.iter().zip(&fb.normal).map(|(x, y)| sb * x - sa * y).collect();
                let offset = sb * &fa.offset - sa * &fb.offset;
                let (normal, offset) = primitive(normal, offset);
                let mut incident = ridge;
                incident.set(pi);
                created.push(HFacet { normal, offset, incident });
            }
        }
        let mut next: Vec<HFacet> = Vec::new();
        for (f, s) in facets.into_iter().zip(&slacks) {
            if s.is_negative() {
                continue;
            }
            let mut f = f;
            if s.is_zero() {
                f.incident.set(pi);
            }
            next.push(f);
        }
        next.extend(created);
        facets = next;
    }
    facets.into_iter().map(|f| (f.normal, f.offset)).collect()
}

/// Facet description of `conv(points)` inside its affine hull.
pub fn facets_of_points(points: &[Vec<Rational>]) -> Result<FacetSystem> {
    let Some(first) = points.first() else { return Err(Error::Malformed("empty point set".into())) };
    let ambient = first.len();
    if points.iter().any(|p| p.len() != ambient) {
        return Err(Error::Malformed("points of different dimensions".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let base = pts[0].clone();
    let mut basis: Vec<Vec<Rational>> =
        pts[1..].iter().map(|v| v.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
    let coords = linalg::rref(&mut basis);
    basis.truncate(coords.len());
    let dim = coords.len();

    let mut normals = linalg::nullspace(&basis, ambient);
    linalg::rref(&mut normals);
    let equations = normals
        .into_iter()
        .map(|a| {
            let b = dot(&a, &base);
            (a, b)
        })
        .collect();

    let mut facets = Vec::new();
    if dim > 0 {
        let projected: Vec<Vec<Rational>> = pts.iter().map(|p| coords.iter().map(|&k| p[k].clone()).collect()).collect();
        for (g, c) in full_dim_facets(&projected, dim) {
            let mut normal = vec![Rational::zero(); ambient];
            for (&k, gk) in coords.iter().zip(g) {
                normal[k] = gk;
            }
            facets.push(Facet { normal, offset: c });
        }
        facets.sort();
    }
    Ok(FacetSystem { ambient, dim, equations, facets, base, coords, basis })
}

impl FacetSystem {
    fn lift(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = self.base.clone();
        for ((row, &k), yk) in self.basis.iter().zip(&self.coords).zip(y) {
            let t = yk - &self.base[k];
            for (xi, r) in x.iter_mut().zip(row) {
                *xi += &t * r;
            }
        }
        x
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| dot(a, p) == *b) && self.facets.iter().all(|f| dot(&f.normal, p) <= f.offset)
    }
}

/// Recovers the vertices from a facet description via the polar dual.
pub fn vertices_from_facets(fs: &FacetSystem) -> Result<Vec<Vec<Rational>>> {
    let d = fs.dim;
    if d == 0 {
        return Ok(vec![fs.base.clone()]);
    }
    let proj = |v: &[Rational]| -> Vec<Rational> { fs.coords.iter().map(|&k| v[k].clone()).collect() };
    let gs: Vec<(Vec<Rational>, Rational)> = fs.facets.iter().map(|f| (proj(&f.normal), f.offset.clone())).collect();

    // interior point: maximize t subject to g·y + t <= c, t <= 1
    let mut obj = vec![Rational::zero(); d + 1];
    obj[d] = Rational::one();
    let mut lp = LinearProgram::maximize(obj).upper_bound(d, Rational::one());
    for (g, c) in &gs {
        let mut row = g.clone();
        row.push(Rational::one());
        lp.add_constraint(row, Relation::Le, c.clone());
    }
    let res = solve_lp(&lp);
    if res.status != LpStatus::Optimal || !res.value.as_ref().is_some_and(|t| t.is_positive()) {
        return Err(Error::Infeasible("facet system has empty interior".into()));
    }
    let q: Vec<Rational> = res.point.unwrap()[..d].to_vec();

    let polar: Vec<Vec<Rational>> = gs
        .iter()
        .map(|(g, c)| {
            let s = c - dot(g, &q);
            g.iter().map(|x| x / &s).collect()
        })
        .collect();
    let mut out: Vec<Vec<Rational>> = full_dim_facets_sorted(&polar, d)
        .into_iter()
        .map(|(a, b)| {
            let y: Vec<Rational> = a.iter().zip(&q).map(|(ai, qi)| ai / &b + qi).collect();
            fs.lift(&y)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn full_dim_facets_sorted(pts: &[Vec<Rational>], d: usize) -> Vec<(Vec<Rational>, Rational)> {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    full_dim_facets(&p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_vec};

    #[test]
    fn segment_and_triangle() {
        let fs = facets_of_points(&[rat_vec(&[0, 0]), rat_vec(&[2, 0])]).unwrap();
        assert_eq!(fs.dim, 1);
        assert_eq!(fs.facets.len(), 2);
        let mut offs: Vec<(Vec<Rational>, Rational)> = fs.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        offs.sort();
        assert_eq!(offs, vec![(rat_vec(&[-1, 0]), rat(0)), (rat_vec(&[1, 0]), rat(2))]);

        let tri = facets_of_points(&[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[0, 0])]).unwrap();
        assert_eq!(tri.facets.len(), 3);
    }

    #[test]
    fn cube_round_trip() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(rat_vec(&[x, y, z]));
                }
            }
        }
        pts.push(rat_vec(&[1, 1, 1]));
        pts.push(vec![Rational::new(1.into(), 2.into()); 3]);
        let fs = facets_of_points(&pts).unwrap();
        assert_eq!(fs.facets.len(), 6);
        let mut back = vertices_from_facets(&fs).unwrap();
        back.sort();
        let mut expect = pts[..8].to_vec();
        expect.sort();
        assert_eq!(back, expect);
    }
}
