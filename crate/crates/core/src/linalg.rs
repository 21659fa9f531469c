//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::algebra::rational::Rational;

/// Reduced row echelon form, in place. Returns the pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(rows);
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`, where `m` has `cols` columns.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat_vec};

    #[test]
    fn rank_and_nullspace() {
        let m = vec![rat_vec(&[1, 2, 3]), rat_vec(&[2, 4, 6]), rat_vec(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let s: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let a = vec![rat_vec(&[2, 1]), rat_vec(&[1, 3])];
        let x = solve(&a, &rat_vec(&[3, 5])).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
        assert!(solve(&[rat_vec(&[1, 1]), rat_vec(&[2, 2])], &[rat(1), rat(2)]).is_none());
    }
}
