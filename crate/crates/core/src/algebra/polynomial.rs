use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::{default_names, Monomial};
use super::order::MonomialOrder;
use super::rational::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::from_terms(arity, [(Monomial::one(arity), c)])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Self::from_terms(arity, [(Monomial::var(arity, i), Rational::one())])
    }

    pub fn monomial(m: Monomial) -> Self {
        let arity = m.arity();
        Self::from_terms(arity, [(m, Rational::one())])
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity does not match polynomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs.
    pub fn from_int_terms(arity: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(arity, terms.iter().map(|(c, e)| (Monomial::new(e.to_vec()), rat(*c))))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// All terms share one total degree. The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp_unchecked(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.arity];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.arity).filter(|&i| used[i]).collect()
    }

    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| m.supported_in(vars))
    }

    /// Sends variable `i` to variable `map[i]` of a ring of arity `arity`.
    pub fn remap(&self, map: &[usize], arity: usize) -> Polynomial {
        Polynomial::from_terms(arity, self.terms.iter().map(|(m, c)| (m.remap(map, arity), c.clone())))
    }

    /// Expresses a polynomial supported in `vars` in the subring on `vars`, preserving their order.
    pub fn restrict(&self, vars: &[usize]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(vars.len());
        for (m, c) in &self.terms {
            out.add_term(m.restrict(vars)?, c.clone());
        }
        Some(out)
    }

    /// Substitutes `x_i -> images[i]`; all images share one arity.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: images.len() });
        }
        let target = images.first().map(|p| p.arity).unwrap_or(0);
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.arity, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Prints with the given variable names, highest lex term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&format_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rational(&a));
                    out.push('*');
                }
                out.push_str(&m.display_with(names));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.arity)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity);
        let mut out = Polynomial::zero(self.arity);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(3, terms)
    }

    #[test]
    fn arithmetic_drops_zero_terms() {
        let f = p(&[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let g = p(&[(1, &[0, 2, 0])]);
        let s = &f + &g;
        assert_eq!(s, p(&[(1, &[1, 0, 1])]));
        assert_eq!(&(&f + &g) - &g, f);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn homogeneity_flag() {
        assert!(p(&[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]).is_homogeneous());
        assert!(!p(&[(1, &[2, 0, 1]), (-1, &[0, 2, 0])]).is_homogeneous());
        assert!(Polynomial::zero(3).is_homogeneous());
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let f = p(&[(2, &[1, 1, 0]), (-3, &[0, 0, 2])]);
        let g = p(&[(1, &[1, 0, 0]), (5, &[0, 0, 0])]);
        let pt = vec![ratio(1, 2), rat(-3), ratio(2, 7)];
        let lhs = (&f * &g).evaluate(&pt).unwrap();
        let rhs = f.evaluate(&pt).unwrap() * g.evaluate(&pt).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_is_lex_descending() {
        let f = p(&[(-1, &[0, 2, 0]), (1, &[1, 0, 1]), (3, &[0, 0, 0])]);
        assert_eq!(f.to_string(), "x0*x2 - x1^2 + 3");
        let g = Polynomial::from_terms(2, [(Monomial::new(vec![1, 0]), ratio(-2, 3))]);
        assert_eq!(g.to_string(), "-2/3*x0");
    }

    #[test]
    fn substitution() {
        // x0 -> s^2, x1 -> s*t, x2 -> t^2 kills x0*x2 - x1^2
        let conic = p(&[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
        let s2 = Polynomial::from_int_terms(2, &[(1, &[2, 0])]);
        let st = Polynomial::from_int_terms(2, &[(1, &[1, 1])]);
        let t2 = Polynomial::from_int_terms(2, &[(1, &[0, 2])]);
        assert!(conic.substitute(&[s2, st, t2]).unwrap().is_zero());
    }
}
