use std::fmt;

/// Exponent vector `(a_0, ..., a_n)` of a monomial `x^a`.
///
/// The derived ordering is lexicographic on exponents with `x_0` most significant; it is the
/// canonical order used for storage and printing, not a monomial order in the algebraic sense.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(arity: usize) -> Self {
        Monomial { exps: vec![0; arity] }
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// True when every variable occurring lies in `vars`.
    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.support().all(|i| vars.contains(&i))
    }

    /// Re-indexes variables: variable `i` of `self` becomes variable `map[i]` of a monomial of
    /// arity `arity`.
    pub fn remap(&self, map: &[usize], arity: usize) -> Monomial {
        let mut exps = vec![0; arity];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { exps }
    }

    /// Keeps only the listed variables, in the given order. Exponents of other variables must be 0.
    pub fn restrict(&self, vars: &[usize]) -> Option<Monomial> {
        if !self.supported_in(vars) {
            return None;
        }
        Some(Monomial { exps: vars.iter().map(|&i| self.exps[i]).collect() })
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.arity())))
    }
}

pub fn default_names(arity: usize) -> Vec<String> {
    (0..arity).map(|i| format!("x{i}")).collect()
}

/// All monomials of total degree `degree` in `arity` variables, in descending lex order.
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if arity == 0 {
        if degree == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; arity], &mut out);
    out
}

/// Binomial coefficient `C(n, k)` as u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `m` in `arity` variables.
pub fn count_monomials(arity: usize, m: u32) -> u128 {
    if arity == 0 {
        return u128::from(m == 0);
    }
    binomial(arity as u64 - 1 + m as u64, m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_binomial() {
        for arity in 1..6 {
            for d in 0..5 {
                let ms = monomials_of_degree(arity, d);
                assert_eq!(ms.len() as u128, count_monomials(arity, d));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
                assert!(ms.iter().all(|m| m.degree() == d));
            }
        }
        assert_eq!(count_monomials(9, 6), 3003);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![2, 1, 2]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b).unwrap(), Monomial::new(vec![1, 1, 0]));
        assert!(b.quotient_of(&a).is_none());
        assert_eq!(a.lcm(&Monomial::new(vec![0, 3, 1])), Monomial::new(vec![1, 3, 2]));
        assert!(Monomial::new(vec![1, 0, 0]).is_coprime(&Monomial::new(vec![0, 2, 1])));
    }

    #[test]
    fn display() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Monomial::new(vec![2, 0, 1]).display_with(&names), "a^2*c");
        assert_eq!(Monomial::one(3).display_with(&names), "1");
    }
}
