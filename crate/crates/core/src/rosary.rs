//! Open rosaries: chains of rational curves in `P^{3r}` glued at tacnodes.
//!
//! Component `L_l` lives on `x_{3l-5}, ..., x_{3l-1}`, indices clamped to `0..=3r`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::rational::{dot_int, Rational};
use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{initial_ideal, intersect_ideals, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RosarySpec {
    pub r: usize,
}

impl RosarySpec {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange("rosary genus must be at least 1".into()));
        }
        Ok(RosarySpec { r })
    }

    pub fn arity(&self) -> usize {
        3 * self.r + 1
    }

    /// Index `i`, clamped to `0..=3r`.
    pub fn clamp(&self, i: i64) -> usize {
        i.clamp(0, 3 * self.r as i64) as usize
    }

    /// Coordinates of component `l` (`1 ≤ l ≤ r + 1`).
    pub fn component_vars(&self, l: usize) -> Result<Vec<usize>> {
        if l == 0 || l > self.r + 1 {
            return Err(Error::OutOfRange(format!("component {l} of a rosary with {} components", self.r + 1)));
        }
        let lo = self.clamp(3 * l as i64 - 5);
        let hi = self.clamp(3 * l as i64 - 1);
        Ok((lo..=hi).collect())
    }
}

/// The six quadrics cutting out a middle component `L_l`, `2 ≤ l ≤ r`.
pub fn rosary_component_ideal(l: usize, spec: &RosarySpec) -> Result<Ideal> {
    if l < 2 || l > spec.r {
        return Err(Error::OutOfRange(format!("middle component index {l} outside 2..={}", spec.r)));
    }
    let n = spec.arity();
    let x = |k: usize| 3 * l - k;
    let quad = |a: usize, b: usize, c: usize, d: usize| -> Polynomial {
        let mut p = Polynomial::zero(n);
        let mut e = vec![0u32; n];
        e[a] += 1;
        e[b] += 1;
        p.add_term(Monomial::new(e), Rational::from_integer(1.into()));
        let mut e = vec![0u32; n];
        e[c] += 1;
        e[d] += 1;
        p.add_term(Monomial::new(e), Rational::from_integer((-1).into()));
        p
    };
    Ideal::new(
        n,
        vec![
            quad(x(2), x(2), x(3), x(1)),
            quad(x(3), x(2), x(5), x(1)),
            quad(x(5), x(2), x(4), x(1)),
            quad(x(3), x(3), x(4), x(1)),
            quad(x(5), x(3), x(4), x(2)),
            quad(x(5), x(5), x(4), x(3)),
        ],
    )
}

/// Generators of the initial ideal of a middle component under lex with `x_0 ≻ x_1 ≻ ...`.
pub fn rosary_component_initial(l: usize, spec: &RosarySpec) -> Result<Vec<Monomial>> {
    if l < 2 || l > spec.r {
        return Err(Error::OutOfRange(format!("middle component index {l} outside 2..={}", spec.r)));
    }
    let n = spec.arity();
    let x = |k: usize| 3 * l - k;
    let mono = |vars: &[usize]| {
        let mut e = vec![0u32; n];
        for &v in vars {
            e[v] += 1;
        }
        Monomial::new(e)
    };
    Ok(vec![
        mono(&[x(3), x(1)]),
        mono(&[x(4), x(1)]),
        mono(&[x(4), x(2), x(2)]),
        mono(&[x(5), x(1)]),
        mono(&[x(5), x(2)]),
        mono(&[x(5), x(3)]),
        mono(&[x(5), x(5)]),
    ])
}

/// `T_l^d`: degree-`d` monomials in `x_0, ..., x_{3l+2}` (all variables when `l = r`) involving
/// some `x_i` with `i < 3l - 2` and some `x_j` with `j > 3l - 1`.
pub fn rosary_mixed_sets(l: usize, d: u32, spec: &RosarySpec) -> Result<BTreeSet<Monomial>> {
    if l == 0 || l > spec.r {
        return Err(Error::OutOfRange(format!("mixed set index {l} outside 1..={}", spec.r)));
    }
    let top = if l == spec.r { 3 * spec.r } else { spec.clamp(3 * l as i64 + 2) };
    let n = spec.arity();
    let below = 3 * l as i64 - 2;
    let above = 3 * l as i64 - 1;
    Ok(monomials_of_degree(top + 1, d)
        .into_iter()
        .filter(|m| {
            let s: Vec<usize> = m.support().collect();
            s.iter().any(|&i| (i as i64) < below) && s.iter().any(|&j| j as i64 > above)
        })
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            Monomial::new(e)
        })
        .collect())
}

/// Junction monomials added to the left side: `x_{3l-2}^2` in degree 2, and `x_{3l-2}^3`,
/// `x_{3l-2}^2 x_{3l-1}` in degree 3.
pub fn rosary_augmentation(d: u32, spec: &RosarySpec) -> Result<BTreeSet<Monomial>> {
    let n = spec.arity();
    let mut out = BTreeSet::new();
    for l in 1..=spec.r {
        let j = 3 * l - 2;
        match d {
            2 => {
                let mut e = vec![0u32; n];
                e[j] = 2;
                out.insert(Monomial::new(e));
            }
            3 => {
                let mut e = vec![0u32; n];
                e[j] = 3;
                out.insert(Monomial::new(e.clone()));
                e[j] = 2;
                e[j + 1] = 1;
                out.insert(Monomial::new(e));
            }
            _ => return Err(Error::OutOfRange(format!("degree {d} not in {{2, 3}}"))),
        }
    }
    Ok(out)
}

/// The full component list with user-supplied end components (in their block variables).
pub fn rosary_components(spec: &RosarySpec, first: Ideal, last: Ideal) -> Result<Vec<Ideal>> {
    let mut comps = vec![first];
    for l in 2..=spec.r {
        comps.push(rosary_component_ideal(l, spec)?);
    }
    comps.push(last);
    for (i, c) in comps.iter().enumerate() {
        if c.arity() != spec.arity() || !c.supported_in(&spec.component_vars(i + 1)?) {
            return Err(Error::InvalidChain(format!("component {} leaves its coordinates", i + 1)));
        }
    }
    Ok(comps)
}

/// `∩_l (I_{L_l} + <variables off L_l>)`.
pub fn rosary_assemble(spec: &RosarySpec, components: &[Ideal]) -> Result<Ideal> {
    let n = spec.arity();
    let mut acc: Option<Ideal> = None;
    for (i, c) in components.iter().enumerate() {
        let vars = spec.component_vars(i + 1)?;
        let off: Vec<usize> = (0..n).filter(|k| !vars.contains(k)).collect();
        let part = c.with_variables(&off);
        acc = Some(match acc {
            None => part,
            Some(a) => intersect_ideals(&a, &part)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidChain("no components".into()))
}

/// Conic end components `<x_0 x_2 - x_1^2>` and `<x_{3r-2}^2 - x_{3r-1} x_{3r}>`.
pub fn conic_ends(spec: &RosarySpec) -> (Ideal, Ideal) {
    let n = spec.arity();
    let e = |pairs: &[(usize, u32)]| {
        let mut v = vec![0u32; n];
        for &(k, a) in pairs {
            v[k] += a;
        }
        v
    };
    let j = 3 * spec.r - 2;
    let first = Polynomial::from_int_terms(n, &[(1, &e(&[(0, 1), (2, 1)])), (-1, &e(&[(1, 2)]))]);
    let last = Polynomial::from_int_terms(n, &[(1, &e(&[(j, 2)])), (-1, &e(&[(j + 1, 1), (j + 2, 1)]))]);
    (Ideal::new(n, vec![first]).expect("arity"), Ideal::new(n, vec![last]).expect("arity"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCheck {
    pub d: u32,
    pub left: BTreeSet<Monomial>,
    pub right: BTreeSet<Monomial>,
    pub only_left: Vec<Monomial>,
    pub only_right: Vec<Monomial>,
}

impl SliceCheck {
    pub fn holds(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

fn initial_slice(ideal: &Ideal, order: &MonomialOrder, d: u32) -> Result<BTreeSet<Monomial>> {
    let init = initial_ideal(ideal, order)?;
    Ok(monomials_of_degree(ideal.arity(), d).into_iter().filter(|m| init.contains(m)).collect())
}

/// Compares `(in I_R)_d ∪ augmentation` with `∪_l in(I_{L_l} ∩ k[block_l])_d ∪ ∪_l T_l^d`.
///
/// `components[l - 1]` holds the generators of `I_{L_l}` in the variables of its block.
pub fn rosary_slice_decomposition_check(
    spec: &RosarySpec,
    whole: &Ideal,
    components: &[Ideal],
    order: &MonomialOrder,
    d: u32,
) -> Result<SliceCheck> {
    if components.len() != spec.r + 1 {
        return Err(Error::InvalidChain(format!("{} components for a rosary with {}", components.len(), spec.r + 1)));
    }
    let mut left = initial_slice(whole, order, d)?;
    left.extend(rosary_augmentation(d, spec)?);
    let mut right = BTreeSet::new();
    for (i, c) in components.iter().enumerate() {
        let vars = spec.component_vars(i + 1)?;
        if !c.supported_in(&vars) {
            return Err(Error::InvalidChain(format!("component {} leaves its coordinates", i + 1)));
        }
        right.extend(initial_slice(c, order, d)?.into_iter().filter(|m| m.supported_in(&vars)));
    }
    for l in 1..=spec.r {
        right.extend(rosary_mixed_sets(l, d, spec)?);
    }
    let only_left = left.difference(&right).cloned().collect();
    let only_right = right.difference(&left).cloned().collect();
    Ok(SliceCheck { d, left, right, only_left, only_right })
}

/// `Σ_{x^α ∈ (in I)_d} ρ·α`.
pub fn initial_weight_sum(ideal: &Ideal, order: &MonomialOrder, d: u32, rho: &[Rational]) -> Result<Rational> {
    if rho.len() != ideal.arity() {
        return Err(Error::ArityMismatch { expected: ideal.arity(), found: rho.len() });
    }
    Ok(initial_slice(ideal, order, d)?.iter().fold(Rational::zero(), |acc, m| acc + dot_int(rho, m.exponents())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WMode {
    ClosedForm,
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WValue {
    pub r: i64,
    pub i: u32,
    pub value: i64,
    pub mode: WMode,
}

fn w_closed(r: i64, i: u32) -> i64 {
    match (i, r % 2) {
        (2, 1) => 18 * r * r - 19 * r + 7,
        (2, _) => 18 * r * r - 10 * r,
        (_, 1) => 27 * r * r * r + (81 * r * r - 111 * r) / 2 + 22,
        (_, _) => 27 * r * r * r + 54 * r * r - 33 * r,
    }
}

fn w_step(r: i64, i: u32) -> i64 {
    match (i, r % 2) {
        (2, 1) => 72 * r - 110,
        (2, _) => 72 * r - 92,
        (_, 1) => 162 * r * r - 162 * r - 57,
        (_, _) => 162 * r * r - 108 * r - 66,
    }
}

/// Degree-`i` initial-ideal weight sums `w_i(r)` of an open rosary, for `i ∈ {2, 3}`.
pub fn rosary_w(r: i64, i: u32, mode: WMode) -> Result<WValue> {
    if r < 1 {
        return Err(Error::OutOfRange(format!("rosary genus {r}")));
    }
    if i != 2 && i != 3 {
        return Err(Error::OutOfRange(format!("degree {i} not in {{2, 3}}")));
    }
    let value = match mode {
        WMode::ClosedForm => w_closed(r, i),
        WMode::Recurrence => {
            let seed = match (i, 2 - r % 2) {
                (2, 1) => 6,
                (2, _) => 52,
                (_, 1) => 34,
                (_, _) => 366,
            };
            let mut k = 2 - r % 2;
            let mut w = seed;
            while k < r {
                k += 2;
                w += w_step(k, i);
            }
            w
        }
    };
    Ok(WValue { r, i, value, mode })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WRow {
    pub r: i64,
    pub w2_closed: i64,
    pub w2_rec: i64,
    pub w3_closed: i64,
    pub w3_rec: i64,
}

impl WRow {
    pub fn agree(&self) -> bool {
        self.w2_closed == self.w2_rec && self.w3_closed == self.w3_rec
    }
}

pub fn w_table(rs: impl IntoIterator<Item = i64>) -> Result<Vec<WRow>> {
    rs.into_iter()
        .map(|r| {
            Ok(WRow {
                r,
                w2_closed: rosary_w(r, 2, WMode::ClosedForm)?.value,
                w2_rec: rosary_w(r, 2, WMode::Recurrence)?.value,
                w3_closed: rosary_w(r, 3, WMode::ClosedForm)?.value,
                w3_rec: rosary_w(r, 3, WMode::Recurrence)?.value,
            })
        })
        .collect()
}

pub fn w_table_csv(rows: &[WRow]) -> String {
    let mut s = String::from("r,w2_closed,w2_rec,w3_closed,w3_rec,agree\n");
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.r,
            row.w2_closed,
            row.w2_rec,
            row.w3_closed,
            row.w3_rec,
            row.agree()
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::MonomialIdeal;

    #[test]
    fn seeds_and_spot_values() {
        let v = |r, i| rosary_w(r, i, WMode::ClosedForm).unwrap().value;
        assert_eq!((v(1, 2), v(2, 2), v(1, 3), v(2, 3)), (6, 52, 34, 366));
        assert_eq!((v(3, 2), v(4, 2), v(3, 3)), (112, 248, 949));
        for r in 1..=50 {
            assert!(w_table([r]).unwrap()[0].agree(), "r = {r}");
        }
    }

    #[test]
    fn middle_component_generators() {
        let spec = RosarySpec::new(3).unwrap();
        let i = rosary_component_ideal(2, &spec).unwrap();
        let q = |a: usize, b: usize, c: usize, d: usize| {
            let mut e1 = [0u32; 10];
            e1[a] += 1;
            e1[b] += 1;
            let mut e2 = [0u32; 10];
            e2[c] += 1;
            e2[d] += 1;
            Polynomial::from_int_terms(10, &[(1, &e1), (-1, &e2)])
        };
        let want = [q(4, 4, 3, 5), q(3, 4, 1, 5), q(1, 4, 2, 5), q(3, 3, 2, 5), q(1, 3, 2, 4), q(1, 1, 2, 3)];
        assert_eq!(i.generators(), &want[..]);
        assert!(i.is_homogeneous());
        assert!(i.supported_in(&spec.component_vars(2).unwrap()));
    }

    #[test]
    fn middle_component_initial_ideal() {
        let spec = RosarySpec::new(3).unwrap();
        for l in 2..=3 {
            let i = rosary_component_ideal(l, &spec).unwrap();
            let got = initial_ideal(&i, &MonomialOrder::lex(spec.arity())).unwrap();
            let want = MonomialIdeal::new(spec.arity(), rosary_component_initial(l, &spec).unwrap());
            assert_eq!(got, want);
        }
    }

    #[test]
    fn mixed_set_example() {
        let spec = RosarySpec::new(2).unwrap();
        let t = rosary_mixed_sets(1, 2, &spec).unwrap();
        let want: BTreeSet<Monomial> = [3, 4, 5]
            .iter()
            .map(|&j| {
                let mut e = vec![0u32; 7];
                e[0] = 1;
                e[j] = 1;
                Monomial::new(e)
            })
            .collect();
        assert_eq!(t, want);
    }

    #[test]
    fn slice_decomposition_with_conic_ends() {
        for r in [2, 3] {
            let spec = RosarySpec::new(r).unwrap();
            let (a, b) = conic_ends(&spec);
            let comps = rosary_components(&spec, a, b).unwrap();
            let whole = rosary_assemble(&spec, &comps).unwrap();
            for d in [2, 3] {
                let c = rosary_slice_decomposition_check(&spec, &whole, &comps, &MonomialOrder::lex(spec.arity()), d).unwrap();
                assert!(c.holds(), "r = {r}, d = {d}: {:?} {:?}", c.only_left, c.only_right);
            }
        }
    }
}
