//! Buchberger's algorithm on polynomials whose terms carry precomputed order keys.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::order::OrderKey;
use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: OrderKey,
    pub mono: Monomial,
    pub coef: Rational,
}

/// Terms sorted by descending order key; never empty once inside a basis.
#[derive(Clone, Debug)]
pub(crate) struct KPoly {
    pub terms: Vec<Term>,
    pub sugar: u32,
}

impl KPoly {
    pub fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> KPoly {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term { key: order.key(m), mono: m.clone(), coef: c.clone() })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let sugar = p.degree().unwrap_or(0);
        KPoly { terms, sugar }
    }

    pub fn to_polynomial(&self, arity: usize) -> Polynomial {
        Polynomial::from_terms(arity, self.terms.iter().map(|t| (t.mono.clone(), t.coef.clone())))
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coef.is_one() {
                let inv = t.coef.recip();
                for t in &mut self.terms {
                    t.coef *= &inv;
                }
            }
        }
    }
}

type Work = BTreeMap<OrderKey, (Monomial, Rational)>;

fn add_scaled(work: &mut Work, g: &KPoly, skip_lead: bool, qkey: &OrderKey, q: &Monomial, factor: &Rational) {
    for t in g.terms.iter().skip(skip_lead as usize) {
        let key = t.key.add(qkey);
        let c = factor * &t.coef;
        match work.get_mut(&key) {
            Some(entry) => {
                entry.1 += c;
                if entry.1.is_zero() {
                    work.remove(&key);
                }
            }
            None => {
                work.insert(key, (t.mono.mul(q), c));
            }
        }
    }
}

/// Fully reduces `f` modulo `basis` (leading terms of `basis` must be monic).
pub(crate) fn reduce(f: &KPoly, basis: &[&KPoly], order: &MonomialOrder) -> KPoly {
    let mut work: Work = f.terms.iter().map(|t| (t.key.clone(), (t.mono.clone(), t.coef.clone()))).collect();
    let mut rem = Vec::new();
    let mut sugar = f.sugar;
    while let Some((key, (mono, coef))) = work.pop_last() {
        match basis.iter().find(|g| g.lead().mono.divides(&mono)) {
            Some(g) => {
                let q = g.lead().mono.quotient_of(&mono).expect("divisor checked");
                sugar = sugar.max(g.sugar + q.degree());
                let qkey = order.key(&q);
                let factor = -coef / &g.lead().coef;
                add_scaled(&mut work, g, true, &qkey, &q, &factor);
            }
            None => rem.push(Term { key, mono, coef }),
        }
    }
    KPoly { terms: rem, sugar }
}

fn s_polynomial(f: &KPoly, g: &KPoly, order: &MonomialOrder) -> KPoly {
    let l = f.lead().mono.lcm(&g.lead().mono);
    let qf = f.lead().mono.quotient_of(&l).unwrap();
    let qg = g.lead().mono.quotient_of(&l).unwrap();
    let mut work = Work::new();
    add_scaled(&mut work, f, true, &order.key(&qf), &qf, &f.lead().coef.recip());
    add_scaled(&mut work, g, true, &order.key(&qg), &qg, &-g.lead().coef.recip());
    let terms = work.into_iter().rev().map(|(key, (mono, coef))| Term { key, mono, coef }).collect();
    let sugar = (f.sugar + qf.degree()).max(g.sugar + qg.degree());
    KPoly { terms, sugar }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: OrderKey,
    sugar: u32,
}

struct State<'a> {
    order: &'a MonomialOrder,
    polys: Vec<KPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let lcm = a.lead().mono.lcm(&b.lead().mono);
        let sa = a.sugar + lcm.degree() - a.lead().mono.degree();
        let sb = b.sugar + lcm.degree() - b.lead().mono.degree();
        Pair { i, j, key: self.order.key(&lcm), lcm, sugar: sa.max(sb) }
    }

    fn lead(&self, i: usize) -> &Monomial {
        &self.polys[i].lead().mono
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let lh = self.lead(h).clone();
        let actives: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let new: Vec<Pair> = actives.iter().map(|&g| self.make_pair(g, h)).collect();

        // criterion M: drop (g, h) if another new pair has a strictly dividing lcm,
        // or an equal lcm and comes first
        let mut keep: Vec<bool> = vec![true; new.len()];
        for a in 0..new.len() {
            for b in 0..new.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if new[b].lcm.divides(&new[a].lcm) && (new[b].lcm != new[a].lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // criterion F/product: among survivors, drop pairs with coprime leads
        let mut survivors = Vec::new();
        for (p, k) in new.into_iter().zip(keep) {
            if k && !self.lead(p.i).is_coprime(&lh) {
                survivors.push(p);
            }
        }

        // criterion B on old pairs
        let order_pairs = std::mem::take(&mut self.pairs);
        for p in order_pairs {
            let li = self.lead(p.i).lcm(&lh);
            let lj = self.lead(p.j).lcm(&lh);
            if lh.divides(&p.lcm) && li != p.lcm && lj != p.lcm {
                continue;
            }
            self.pairs.push(p);
        }
        self.pairs.extend(survivors);

        for g in actives {
            if lh.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then_with(|| pa.key.cmp(&pb.key)).then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }
}

/// Reduced Groebner basis, each element monic, sorted by ascending leading monomial.
pub(crate) fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Vec<KPoly> {
    let mut input: Vec<KPoly> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| KPoly::from_polynomial(g, order)).collect();
    input.sort_by(|a, b| a.sugar.cmp(&b.sugar).then_with(|| a.lead().key.cmp(&b.lead().key)));

    let mut st = State { order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut pending: Vec<KPoly> = input;
    pending.reverse();
    loop {
        let next = if let Some(p) = pending.pop() {
            Some(p)
        } else if let Some(pair) = st.pop_pair() {
            Some(s_polynomial(&st.polys[pair.i], &st.polys[pair.j], order))
        } else {
            None
        };
        let Some(f) = next else { break };
        let basis: Vec<&KPoly> = (0..st.polys.len()).filter(|&i| st.active[i]).map(|i| &st.polys[i]).collect();
        let mut h = reduce(&f, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lead().mono.is_one() {
            let one = KPoly {
                terms: vec![Term { key: order.key(&h.lead().mono), mono: h.lead().mono.clone(), coef: Rational::one() }],
                sugar: 0,
            };
            return vec![one];
        }
        st.polys.push(h);
        st.active.push(true);
        let idx = st.polys.len() - 1;
        st.update(idx);
    }

    // minimalize, then interreduce
    let mut minimal: Vec<KPoly> = Vec::new();
    let act: Vec<usize> = (0..st.polys.len()).filter(|&i| st.active[i]).collect();
    for &i in &act {
        let li = st.lead(i);
        let redundant = act.iter().any(|&j| j != i && st.lead(j).divides(li) && (st.lead(j) != li || j < i));
        if !redundant {
            minimal.push(st.polys[i].clone());
        }
    }
    minimal.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&KPoly> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
        let lead = minimal[i].terms[0].clone();
        let tail = KPoly { terms: minimal[i].terms[1..].to_vec(), sugar: minimal[i].sugar };
        let mut r = reduce(&tail, &others, order);
        r.terms.insert(0, lead);
        r.make_monic();
        reduced.push(r);
    }
    reduced
}
