//! Groebner bases, initial ideals, degree slices and elimination.

mod buchberger;
mod monomial_ideal;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::monomial::{count_monomials, monomials_of_degree};
use crate::algebra::rational::Rational;
use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation};

use buchberger::{groebner_basis, reduce, KPoly};
pub use monomial_ideal::MonomialIdeal;

/// An ideal given by generators in a ring of fixed arity. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    arity: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(arity: usize, gens: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: g.arity() });
        }
        Ok(Ideal { arity, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(arity: usize) -> Self {
        Ideal { arity, gens: Vec::new() }
    }

    pub fn from_monomials(arity: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        Ideal { arity, gens: gens.into_iter().map(Polynomial::monomial).collect() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if other.arity != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(Ideal { arity: self.arity, gens: self.gens.iter().chain(&other.gens).cloned().collect() })
    }

    /// `self + <x_v : v ∈ vars>`.
    pub fn with_variables(&self, vars: &[usize]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(vars.iter().map(|&v| Polynomial::var(self.arity, v)));
        Ideal { arity: self.arity, gens }
    }

    /// Sends variable `i` to `map[i]` in a ring of arity `arity`.
    pub fn remap(&self, map: &[usize], arity: usize) -> Ideal {
        Ideal { arity, gens: self.gens.iter().map(|g| g.remap(map, arity)).collect() }
    }

    /// All generators supported in `vars`.
    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.gens.iter().all(|g| g.supported_in(vars))
    }
}

/// Reduced Groebner basis: monic elements, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct ReducedGB {
    order: MonomialOrder,
    arity: usize,
    kpolys: Vec<KPoly>,
    elements: Vec<Polynomial>,
}

impl PartialEq for ReducedGB {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.elements == other.elements
    }
}

impl ReducedGB {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.kpolys.iter().map(|k| k.lead().mono.clone()).collect()
    }

    /// Each element as (marked leading monomial, remaining monomials).
    pub fn marked(&self) -> Vec<(Monomial, Vec<Monomial>)> {
        self.kpolys
            .iter()
            .map(|k| (k.lead().mono.clone(), k.terms[1..].iter().map(|t| t.mono.clone()).collect()))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: f.arity() });
        }
        let basis: Vec<&KPoly> = self.kpolys.iter().collect();
        Ok(reduce(&KPoly::from_polynomial(f, &self.order), &basis, &self.order).to_polynomial(self.arity))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.arity, self.leading_monomials())
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal { arity: self.arity, gens: self.elements.clone() }
    }
}

pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<ReducedGB> {
    if order.arity() != ideal.arity {
        return Err(Error::ArityMismatch { expected: ideal.arity, found: order.arity() });
    }
    let kpolys = groebner_basis(&ideal.gens, order);
    let elements = kpolys.iter().map(|k| k.to_polynomial(ideal.arity)).collect();
    Ok(ReducedGB { order: order.clone(), arity: ideal.arity, kpolys, elements })
}

pub fn normal_form(f: &Polynomial, gb: &ReducedGB) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn initial_ideal(ideal: &Ideal, order: &MonomialOrder) -> Result<MonomialIdeal> {
    Ok(buchberger(ideal, order)?.initial_ideal())
}

/// Degree-`m` monomials split into those in the initial ideal and the standard ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    pub m: u32,
    pub in_ideal: Vec<Monomial>,
    pub standard: Vec<Monomial>,
}

impl DegreeSlice {
    pub fn of_monomial_ideal(ideal: &MonomialIdeal, m: u32) -> DegreeSlice {
        let (in_ideal, standard) = monomials_of_degree(ideal.arity(), m).into_iter().partition(|x| ideal.contains(x));
        DegreeSlice { m, in_ideal, standard }
    }

    pub fn q(&self) -> usize {
        self.in_ideal.len()
    }

    pub fn p(&self) -> usize {
        self.standard.len()
    }
}

pub fn degree_slice(ideal: &Ideal, order: &MonomialOrder, m: u32) -> Result<DegreeSlice> {
    Ok(DegreeSlice::of_monomial_ideal(&initial_ideal(ideal, order)?, m))
}

/// `Q(m) = dim I_m` and `P(m) = C(n + m, n) - Q(m)`, for homogeneous `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertValues {
    pub q: BigInt,
    pub p: BigInt,
}

pub fn hilbert_values(ideal: &Ideal, m: u32) -> Result<HilbertValues> {
    let init = initial_ideal(ideal, &MonomialOrder::grevlex(ideal.arity))?;
    Ok(hilbert_values_of_initial(&init, m))
}

pub fn hilbert_values_of_initial(init: &MonomialIdeal, m: u32) -> HilbertValues {
    let total = count_monomials(init.arity(), m);
    let p = init.count_standard(m);
    HilbertValues { q: BigInt::from(total - p), p: BigInt::from(p) }
}

/// Generators of `I ∩ J`, from `t·I + (1 - t)·J` with `t` eliminated.
pub fn intersect_ideals(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if i.arity != j.arity {
        return Err(Error::ArityMismatch { expected: i.arity, found: j.arity });
    }
    let n = i.arity;
    let map: Vec<usize> = (0..n).collect();
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::constant(n + 1, Rational::one()) - &t;
    let mut gens = Vec::new();
    gens.extend(i.gens.iter().map(|g| &t * &g.remap(&map, n + 1)));
    gens.extend(j.gens.iter().map(|g| &one_minus_t * &g.remap(&map, n + 1)));
    let order = MonomialOrder::elimination(n + 1, &[n])?;
    let gb = buchberger(&Ideal { arity: n + 1, gens }, &order)?;
    let gens = gb
        .elements
        .iter()
        .filter(|g| g.supported_in(&map))
        .map(|g| g.restrict(&map).expect("support checked"))
        .collect();
    Ideal::new(n, gens)
}

/// Generators of `I ∩ k[keep]`, kept at the ambient arity.
pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    if keep.is_empty() {
        return Err(Error::OutOfRange("keep at least one variable".into()));
    }
    if let Some(&v) = keep.iter().find(|&&v| v >= ideal.arity) {
        return Err(Error::OutOfRange(format!("variable {v} for arity {}", ideal.arity)));
    }
    let elim: Vec<usize> = (0..ideal.arity).filter(|v| !keep.contains(v)).collect();
    let order = MonomialOrder::elimination(ideal.arity, &elim)?;
    let gb = buchberger(ideal, &order)?;
    Ideal::new(ideal.arity, gb.elements.iter().filter(|g| g.supported_in(keep)).cloned().collect())
}

/// Kernel of `x_i ↦ forms[i]`, where the forms live in a ring of parameters.
pub fn implicitize(forms: &[Polynomial]) -> Result<Ideal> {
    let Some(first) = forms.first() else { return Err(Error::Malformed("no forms to implicitize".into())) };
    let k = first.arity();
    if let Some(f) = forms.iter().find(|f| f.arity() != k) {
        return Err(Error::ArityMismatch { expected: k, found: f.arity() });
    }
    if forms.iter().any(Polynomial::is_zero) {
        return Err(Error::Malformed("forms must be nonzero".into()));
    }
    let n1 = forms.len();
    let arity = k + n1;
    let params: Vec<usize> = (0..k).collect();
    let xs: Vec<usize> = (k..arity).collect();
    let gens: Vec<Polynomial> = forms
        .iter()
        .enumerate()
        .map(|(i, g)| &Polynomial::var(arity, k + i) - &g.remap(&params, arity))
        .collect();
    let degs: Vec<Option<u32>> = forms.iter().map(|f| f.is_homogeneous().then(|| f.degree().unwrap())).collect();
    let order = match degs[0] {
        Some(d) if degs.iter().all(|&e| e == Some(d)) => {
            let grading: Vec<Rational> =
                (0..arity).map(|v| Rational::from_integer(if v < k { 1 } else { d as i64 }.into())).collect();
            MonomialOrder::elimination_weighted(arity, &params, &grading)?
        }
        _ => MonomialOrder::elimination(arity, &params)?,
    };
    let gb = buchberger(&Ideal { arity, gens }, &order)?;
    Ideal::new(
        n1,
        gb.elements.iter().filter(|g| g.supported_in(&xs)).map(|g| g.restrict(&xs).expect("support checked")).collect(),
    )
}

/// A nonnegative weight vector whose weight order alone selects every marked leading term of
/// `gb`. Found by maximizing a margin `s <= 1` in `w·(lead - trail) >= s`.
pub fn cone_interior_weight(gb: &ReducedGB) -> Result<Vec<Rational>> {
    if gb.is_empty() {
        return Err(Error::Malformed("empty Groebner basis".into()));
    }
    let n = gb.arity;
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut lp = LinearProgram::maximize(obj).upper_bound(n, Rational::one());
    for j in 0..n {
        lp = lp.lower_bound(j, Rational::zero());
    }
    for (lead, trail) in gb.marked() {
        for t in trail {
            let mut row: Vec<Rational> = lead
                .exponents()
                .iter()
                .zip(t.exponents())
                .map(|(&a, &b)| Rational::from_integer((a as i64 - b as i64).into()))
                .collect();
            row.push(-Rational::one());
            lp.add_constraint(row, Relation::Ge, Rational::zero());
        }
    }
    let r = solve_lp(&lp);
    match r.status {
        LpStatus::Optimal if r.value.as_ref().is_some_and(|v| v.is_positive()) => {
            Ok(r.point.unwrap()[..n].to_vec())
        }
        _ => Err(Error::Infeasible("marked leading terms are not realized by any weight vector".into())),
    }
}
