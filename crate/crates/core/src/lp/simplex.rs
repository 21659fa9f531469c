//! Two-phase dense tableau simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{Certificate, LinearProgram, LpResult, LpStatus, Relation, Sense};
use crate::algebra::rational::{dot, Rational};

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, k: usize) -> &Rational {
        self.rows[k].last().unwrap()
    }

    fn pivot(&mut self, k: usize, q: usize) {
        let inv = self.rows[k][q].recip();
        for x in self.rows[k].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz: Vec<usize> = (0..self.rows[k].len()).filter(|&j| !self.rows[k][j].is_zero()).collect();
        let pivot_row = self.rows[k].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == k || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &nz {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
        }
        self.basis[k] = q;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (k, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[k][j].is_zero() {
                d -= &cost[b] * &self.rows[k][j];
            }
        }
        d
    }

    /// Maximizes `cost`; returns the entering column of an unbounded ray, if any.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Option<usize> {
        loop {
            let q = (0..allowed).find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive())?;
            let mut best: Option<(Rational, usize, usize)> = None;
            for k in 0..self.rows.len() {
                let a = &self.rows[k][q];
                if a.is_positive() {
                    let ratio = self.rhs(k) / a;
                    let better = match &best {
                        None => true,
                        Some((r, b, _)) => ratio < *r || (ratio == *r && self.basis[k] < *b),
                    };
                    if better {
                        best = Some((ratio, self.basis[k], k));
                    }
                }
            }
            match best {
                None => return Some(q),
                Some((_, _, k)) => self.pivot(k, q),
            }
        }
    }

    /// `c_B^T B^{-1}`, read off the artificial columns starting at `art`.
    fn duals(&self, cost: &[Rational], art: usize) -> Vec<Rational> {
        let m = self.rows.len();
        (0..m)
            .map(|i| {
                let mut s = Rational::zero();
                for (k, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[k][art + i].is_zero() {
                        s += &cost[b] * &self.rows[k][art + i];
                    }
                }
                s
            })
            .collect()
    }
}

/// Solves `lp` exactly. The result always carries a certificate that [`super::audit`] accepts.
pub fn solve_lp(lp: &LinearProgram) -> LpResult {
    let n = lp.num_vars();
    // internal columns: (original variable, +1 or -1)
    let mut cols: Vec<(usize, i8)> = Vec::new();
    for j in 0..n {
        cols.push((j, 1));
        if lp.lower[j].is_none() {
            cols.push((j, -1));
        }
    }
    let shift: Vec<Rational> = lp.lower.iter().map(|l| l.clone().unwrap_or_else(Rational::zero)).collect();

    // internal rows: constraints, then upper bounds
    let mut irows: Vec<(Vec<Rational>, Relation, Rational)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rel, c.rhs.clone())).collect();
    for (j, u) in lp.upper.iter().enumerate() {
        if let Some(u) = u {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            irows.push((e, Relation::Le, u.clone()));
        }
    }
    let m = irows.len();
    let nx = cols.len();
    let slack_of: Vec<Option<usize>> = {
        let mut next = nx;
        irows
            .iter()
            .map(|(_, rel, _)| match rel {
                Relation::Eq => None,
                _ => {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let ns = slack_of.iter().flatten().count();
    let art = nx + ns;
    let width = art + m + 1;

    let mut flip = vec![1i8; m];
    let mut rows = Vec::with_capacity(m);
    for (i, (a, rel, b)) in irows.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for (c, &(j, s)) in cols.iter().enumerate() {
            row[c] = if s > 0 { a[j].clone() } else { -a[j].clone() };
        }
        if let Some(s) = slack_of[i] {
            row[s] = if *rel == Relation::Le { Rational::one() } else { -Rational::one() };
        }
        let rhs = b - dot(a, &shift);
        row[width - 1] = rhs.clone();
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            flip[i] = -1;
        }
        row[art + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (art..art + m).collect() };

    // phase 1
    let mut cost1 = vec![Rational::zero(); width - 1];
    for c in cost1.iter_mut().skip(art) {
        *c = -Rational::one();
    }
    t.run(&cost1, width - 1);
    let phase1: Rational = (0..m).map(|k| &cost1[t.basis[k]] * t.rhs(k)).sum();
    let canonical = lp.canonical_rows();
    let lower_vars: Vec<usize> = (0..n).filter(|&j| lp.lower[j].is_some()).collect();
    let k = lp.constraints.len();

    // maps internal-row multipliers v (original orientation) plus reduced terms to canonical order
    let assemble = |v: &[Rational], lower_terms: &dyn Fn(usize) -> Rational| -> Vec<Rational> {
        let mut y = Vec::with_capacity(canonical.len());
        y.extend(v[..k].iter().cloned());
        y.extend(lower_vars.iter().map(|&j| lower_terms(j)));
        y.extend(v[k..].iter().cloned());
        y
    };
    let col_dot = |v: &[Rational], j: usize| -> Rational {
        irows.iter().zip(v).map(|((a, _, _), vi)| &a[j] * vi).sum()
    };

    if phase1.is_negative() {
        let u = t.duals(&cost1, art);
        let v: Vec<Rational> = u.iter().zip(&flip).map(|(x, &f)| if f > 0 { x.clone() } else { -x.clone() }).collect();
        let neg: Vec<Rational> = v.iter().map(|x| -x.clone()).collect();
        let y = assemble(&neg, &|j| col_dot(&v, j));
        return LpResult { status: LpStatus::Infeasible, point: None, value: None, certificate: Certificate::Farkas(y) };
    }

    // drive zero-level artificials out of the basis where possible
    for r in 0..m {
        if t.basis[r] >= art {
            if let Some(q) = (0..art).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, q);
            }
        }
    }

    let sign = if lp.sense == Sense::Maximize { Rational::one() } else { -Rational::one() };
    let c: Vec<Rational> = lp.objective.iter().map(|x| x * &sign).collect();
    let mut cost2 = vec![Rational::zero(); width - 1];
    for (col, &(j, s)) in cols.iter().enumerate() {
        cost2[col] = if s > 0 { c[j].clone() } else { -c[j].clone() };
    }
    let ray_col = t.run(&cost2, art);

    let mut xint = vec![Rational::zero(); width - 1];
    for (r, &b) in t.basis.iter().enumerate() {
        xint[b] = t.rhs(r).clone();
    }
    let to_original = |xi: &[Rational], with_shift: bool| -> Vec<Rational> {
        let mut x = if with_shift { shift.clone() } else { vec![Rational::zero(); n] };
        for (col, &(j, s)) in cols.iter().enumerate() {
            if s > 0 {
                x[j] += &xi[col];
            } else {
                x[j] -= &xi[col];
            }
        }
        x
    };
    let point = to_original(&xint, true);
    let value = dot(&lp.objective, &point);

    if let Some(q) = ray_col {
        let mut dint = vec![Rational::zero(); width - 1];
        dint[q] = Rational::one();
        for (r, &b) in t.basis.iter().enumerate() {
            dint[b] = -t.rows[r][q].clone();
        }
        let d = to_original(&dint, false);
        return LpResult {
            status: LpStatus::Unbounded,
            point: Some(point),
            value: None,
            certificate: Certificate::Ray(d),
        };
    }

    let yint = t.duals(&cost2, art);
    let v: Vec<Rational> = yint.iter().zip(&flip).map(|(x, &f)| if f > 0 { x.clone() } else { -x.clone() }).collect();
    let mut y = assemble(&v, &|j| &c[j] - col_dot(&v, j));
    if lp.sense == Sense::Minimize {
        for x in y.iter_mut() {
            *x = -x.clone();
        }
    }
    LpResult { status: LpStatus::Optimal, point: Some(point), value: Some(value), certificate: Certificate::Dual(y) }
}

#[cfg(test)]
mod tests {
    use super::super::audit;
    use super::*;
    use crate::algebra::rational::{rat, rat_vec, ratio};

    #[test]
    fn bounded_maximum() {
        let lp = LinearProgram::maximize(rat_vec(&[1])).constraint(rat_vec(&[1]), Relation::Le, rat(3));
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.point, Some(rat_vec(&[3])));
        assert_eq!(r.certificate, Certificate::Dual(rat_vec(&[1])));
        audit(&lp, &r).unwrap();
    }

    #[test]
    fn infeasible_with_farkas() {
        let lp = LinearProgram::maximize(rat_vec(&[1]))
            .constraint(rat_vec(&[1]), Relation::Ge, rat(1))
            .constraint(rat_vec(&[1]), Relation::Le, rat(0));
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Infeasible);
        audit(&lp, &r).unwrap();
    }

    #[test]
    fn rational_optimum() {
        let lp = LinearProgram::maximize(rat_vec(&[1, 1]))
            .constraint(rat_vec(&[1, 1]), Relation::Le, ratio(7, 3))
            .nonnegative();
        let r = solve_lp(&lp);
        assert_eq!(r.value, Some(ratio(7, 3)));
        audit(&lp, &r).unwrap();
    }

    #[test]
    fn unbounded_ray_and_minimization() {
        let lp = LinearProgram::maximize(rat_vec(&[1, -1])).constraint(rat_vec(&[0, 1]), Relation::Ge, rat(2));
        let r = solve_lp(&lp);
        assert_eq!(r.status, LpStatus::Unbounded);
        audit(&lp, &r).unwrap();

        let lp = LinearProgram::minimize(rat_vec(&[2, 3]))
            .constraint(rat_vec(&[1, 1]), Relation::Ge, rat(4))
            .constraint(rat_vec(&[1, -1]), Relation::Eq, rat(1))
            .lower_bound(0, rat(-5))
            .upper_bound(1, rat(10));
        let r = solve_lp(&lp);
        assert_eq!(r.value, Some(ratio(19, 2)));
        audit(&lp, &r).unwrap();
    }
}
