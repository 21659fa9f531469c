//! State polytopes of chains of subvarieties from the state polytopes of their components.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::rational::{dot, format_rational, Rational};
use crate::algebra::{merge_junction_orders, BlockSpec, BlockWeights, Monomial};
use crate::error::{Error, Result};
use crate::groebner::{intersect_ideals, Ideal, MonomialIdeal};
use crate::lp::{member_convex_hull, HullMembership};
use crate::polytope::{common_strict_normal, trivial_character_point, vector_json, VPolytope};
use crate::state::{enumerate_state_polytope, EnumerateOptions, StatePolytopeResult};

/// Components of a chain, each stored at the ambient arity with support in its block.
#[derive(Clone, Debug)]
pub struct ChainInput {
    pub boundaries: Vec<usize>,
    pub components: Vec<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    Blocks(String),
    ComponentCount { blocks: usize, components: usize },
    Arity { component: usize, expected: usize, found: usize },
    Support { component: usize, generator: usize },
    JunctionVanishing { component: usize, generator: usize, junction: usize },
}

impl std::fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainViolation::Blocks(s) => write!(f, "blocks: {s}"),
            ChainViolation::ComponentCount { blocks, components } => {
                write!(f, "{components} components for {blocks} blocks")
            }
            ChainViolation::Arity { component, expected, found } => {
                write!(f, "component {component} has arity {found}, expected {expected}")
            }
            ChainViolation::Support { component, generator } => {
                write!(f, "generator {generator} of component {component} leaves its block")
            }
            ChainViolation::JunctionVanishing { component, generator, junction } => write!(
                f,
                "junction vanishing: generator {generator} of component {component} is nonzero at the unit point of x{junction}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
    pub warnings: Vec<String>,
}

impl ChainReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Syntactic chain conditions: increasing blocks, support, junction vanishing. Non-homogeneous
/// generators only produce a warning.
pub fn validate_chain(input: &ChainInput) -> ChainReport {
    let mut report = ChainReport::default();
    let blocks = match BlockSpec::new(input.boundaries.clone()) {
        Ok(b) => b,
        Err(Error::InvalidBlocks(s)) => {
            report.violations.push(ChainViolation::Blocks(s));
            return report;
        }
        Err(e) => {
            report.violations.push(ChainViolation::Blocks(e.to_string()));
            return report;
        }
    };
    if blocks.len() != input.components.len() {
        report.violations.push(ChainViolation::ComponentCount { blocks: blocks.len(), components: input.components.len() });
        return report;
    }
    let arity = blocks.arity();
    for (i, comp) in input.components.iter().enumerate() {
        if comp.arity() != arity {
            report.violations.push(ChainViolation::Arity { component: i, expected: arity, found: comp.arity() });
            continue;
        }
        if !comp.is_homogeneous() {
            report.warnings.push(format!("component {i} has non-homogeneous generators"));
        }
        let vars = blocks.block_vars(i);
        let mut junctions = Vec::new();
        if i > 0 {
            junctions.push(blocks.boundaries()[i]);
        }
        if i + 1 < blocks.len() {
            junctions.push(blocks.boundaries()[i + 1]);
        }
        for (g, f) in comp.generators().iter().enumerate() {
            if !f.supported_in(&vars) {
                report.violations.push(ChainViolation::Support { component: i, generator: g });
                continue;
            }
            for &j in &junctions {
                let mut point = vec![Rational::zero(); arity];
                point[j] = Rational::from_integer(1.into());
                if !f.evaluate(&point).expect("arity checked").is_zero() {
                    report.violations.push(ChainViolation::JunctionVanishing { component: i, generator: g, junction: j });
                }
            }
        }
    }
    report
}

impl ChainInput {
    pub fn new(boundaries: Vec<usize>, components: Vec<Ideal>) -> Self {
        ChainInput { boundaries, components }
    }

    /// Validated block structure.
    pub fn blocks(&self) -> Result<BlockSpec> {
        let report = validate_chain(self);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidChain(v.to_string()));
        }
        BlockSpec::new(self.boundaries.clone())
    }
}

/// `T_i = <x_{n_{i-1}}, ..., x_{n_i - 1}> <x_{n_i + 1}, ..., x_n>` for each junction `n_i`.
pub fn mixed_ideals(blocks: &BlockSpec) -> Vec<MonomialIdeal> {
    let b = blocks.boundaries();
    let arity = blocks.arity();
    (1..blocks.len())
        .map(|i| {
            let gens = (b[i - 1]..b[i]).flat_map(|a| {
                (b[i] + 1..arity).map(move |c| {
                    let mut e = vec![0u32; arity];
                    e[a] += 1;
                    e[c] += 1;
                    Monomial::new(e)
                })
            });
            MonomialIdeal::new(arity, gens)
        })
        .collect()
}

/// True when the support of `x` is not inside a single block, i.e. `x ∈ Σ T_i`.
pub fn is_mixed(blocks: &BlockSpec, x: &Monomial) -> bool {
    let support: Vec<usize> = x.support().collect();
    blocks.block_containing(&support).is_none()
}

/// Exponent sum of the degree-`m` monomials of `Σ T_i`, each counted once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauVector {
    pub tau: Vec<i64>,
    pub m: u32,
    pub mixed_count: u64,
}

impl TauVector {
    pub fn as_rationals(&self) -> Vec<Rational> {
        self.tau.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }
}

pub fn tau_vector(blocks: &BlockSpec, m: u32) -> TauVector {
    let arity = blocks.arity();
    let mut tau = vec![0i64; arity];
    let mut count = 0;
    for x in monomials_of_degree(arity, m) {
        if is_mixed(blocks, &x) {
            count += 1;
            for (t, &e) in tau.iter_mut().zip(x.exponents()) {
                *t += e as i64;
            }
        }
    }
    TauVector { tau, m, mixed_count: count }
}

/// `∩_i (I_i + <variables outside block i>)`.
pub fn assemble_ideal(input: &ChainInput) -> Result<Ideal> {
    let blocks = input.blocks()?;
    let mut acc: Option<Ideal> = None;
    for (i, comp) in input.components.iter().enumerate() {
        let part = comp.with_variables(&blocks.outside_vars(i));
        acc = Some(match acc {
            None => part,
            Some(a) => intersect_ideals(&a, &part)?,
        });
    }
    Ok(acc.expect("at least one component"))
}

/// Splits `p` into pieces `q_i` supported on block `i` with coordinate sums `levels[i]`.
pub fn barycenter_decompose(p: &[Rational], blocks: &BlockSpec, levels: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if p.len() != blocks.arity() {
        return Err(Error::ArityMismatch { expected: blocks.arity(), found: p.len() });
    }
    if levels.len() != blocks.len() {
        return Err(Error::InvalidBlocks(format!("{} levels for {} blocks", levels.len(), blocks.len())));
    }
    let total: Rational = p.iter().cloned().sum();
    let want: Rational = levels.iter().cloned().sum();
    if total != want {
        return Err(Error::LevelMismatch { expected: format_rational(&want), found: format_rational(&total) });
    }
    Ok(decompose_unchecked(p, blocks, levels))
}

fn decompose_unchecked(p: &[Rational], blocks: &BlockSpec, levels: &[Rational]) -> Vec<Vec<Rational>> {
    let b = blocks.boundaries();
    let mut rest = p.to_vec();
    let mut out = Vec::with_capacity(blocks.len());
    for i in 0..blocks.len() {
        let mut q = vec![Rational::zero(); p.len()];
        if i + 1 == blocks.len() {
            q[b[i]..].clone_from_slice(&rest[b[i]..]);
        } else {
            let mut s = Rational::zero();
            for k in b[i]..b[i + 1] {
                q[k] = rest[k].clone();
                s += &rest[k];
            }
            q[b[i + 1]] = &levels[i] - s;
        }
        for (r, x) in rest.iter_mut().zip(&q) {
            *r -= x;
        }
        out.push(q);
    }
    out
}

/// Embeds a block-ring vector into the ambient coordinates.
pub fn embed_block(blocks: &BlockSpec, i: usize, v: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); blocks.arity()];
    for (k, x) in blocks.block(i).zip(v) {
        out[k] = x.clone();
    }
    out
}

#[derive(Clone, Debug)]
pub struct DecomposedState {
    pub polytope: VPolytope,
    /// For each vertex, a functional maximized there and nowhere else on the polytope.
    pub witnesses: Vec<Vec<Rational>>,
    pub tau: TauVector,
    /// Component state polytopes at the ambient arity.
    pub components: Vec<VPolytope>,
    pub component_levels: Vec<Rational>,
    pub m: u32,
    pub q: BigInt,
}

impl DecomposedState {
    pub fn level(&self) -> BigInt {
        BigInt::from(self.m) * &self.q
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.polytope.to_json();
        let obj = v.as_object_mut().expect("object");
        obj.insert("m".into(), json!(self.m));
        obj.insert("Q".into(), json!(self.q.to_string()));
        obj.insert("tau".into(), json!(self.tau.tau));
        obj.insert("componentVertexCounts".into(), json!(self.components.iter().map(VPolytope::len).collect::<Vec<_>>()));
        obj.insert("witnesses".into(), Value::Array(self.witnesses.iter().map(|w| vector_json(w)).collect()));
        v
    }
}

fn component_level(p: &VPolytope, i: usize) -> Result<Rational> {
    p.level()
        .cloned()
        .ok_or_else(|| Error::Malformed(format!("component {i} polytope does not lie on a level hyperplane")))
}

/// Forms `τ + Σ_i P_i` from component polytopes (ambient arity, block supported), certifying that
/// every sum of component vertices is a vertex.
pub fn decompose_from_polytopes(blocks: &BlockSpec, m: u32, components: &[VPolytope]) -> Result<DecomposedState> {
    if components.len() != blocks.len() {
        return Err(Error::InvalidChain(format!("{} component polytopes for {} blocks", components.len(), blocks.len())));
    }
    let arity = blocks.arity();
    for (i, p) in components.iter().enumerate() {
        if p.dim() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: p.dim() });
        }
        let inside = blocks.block(i);
        if p.vertices().iter().any(|v| v.iter().enumerate().any(|(k, x)| !inside.contains(&k) && !x.is_zero())) {
            return Err(Error::InvalidChain(format!("component {i} polytope leaves its block")));
        }
    }
    let levels: Vec<Rational> = components.iter().enumerate().map(|(i, p)| component_level(p, i)).collect::<Result<_>>()?;
    let tau = tau_vector(blocks, m);
    let tau_r = tau.as_rationals();

    // strict normals per component vertex
    let normals: Vec<Vec<Vec<Rational>>> = components
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (0..p.len())
                .into_par_iter()
                .map(|j| {
                    common_strict_normal(&[p], &[j]).ok_or_else(|| {
                        Error::ExtremalityViolated(format!("vertex {j} of component {i} is not extreme"))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // linear part of the decomposition, applied to each unit vector
    let zero_levels = vec![Rational::zero(); blocks.len()];
    let linear: Vec<Vec<Vec<Rational>>> = (0..arity)
        .map(|k| {
            let mut e = vec![Rational::zero(); arity];
            e[k] = Rational::from_integer(1.into());
            decompose_unchecked(&e, blocks, &zero_levels)
        })
        .collect();
    // pulled-back functional of component i's normal at vertex j: g_k = h · L_i(e_k)
    let pulled: Vec<Vec<Vec<Rational>>> = normals
        .iter()
        .enumerate()
        .map(|(i, hs)| hs.iter().map(|h| (0..arity).map(|k| dot(h, &linear[k][i])).collect()).collect())
        .collect();
    // values of every pulled-back functional on every vertex of every component
    let values: Vec<Vec<Vec<Vec<Rational>>>> = pulled
        .iter()
        .map(|gs| {
            gs.iter()
                .map(|g| components.iter().map(|p| p.vertices().iter().map(|v| dot(g, v)).collect()).collect())
                .collect()
        })
        .collect();

    let sizes: Vec<usize> = components.iter().map(VPolytope::len).collect();
    let total: usize = sizes.iter().product();
    let results: Vec<(Vec<Rational>, Vec<Rational>)> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut choice = vec![0usize; sizes.len()];
            for (c, &s) in choice.iter_mut().zip(&sizes).rev() {
                *c = idx % s;
                idx /= s;
            }
            // g(S) - g(S') = Σ_c g·(v_c - v'_c); each term must be positive when v'_c ≠ v_c
            for (c, &vc) in choice.iter().enumerate() {
                for u in 0..sizes[c] {
                    if u == vc {
                        continue;
                    }
                    let diff: Rational =
                        (0..sizes.len()).map(|i| &values[i][choice[i]][c][vc] - &values[i][choice[i]][c][u]).sum();
                    if diff <= Rational::zero() {
                        return Err(Error::ExtremalityViolated(format!(
                            "sum for vertex choice {choice:?} is not certified extreme"
                        )));
                    }
                }
            }
            let mut s = tau_r.clone();
            let mut g = vec![Rational::zero(); arity];
            for (i, &j) in choice.iter().enumerate() {
                for (a, b) in s.iter_mut().zip(&components[i].vertices()[j]) {
                    *a += b;
                }
                for (a, b) in g.iter_mut().zip(&pulled[i][j]) {
                    *a += b;
                }
            }
            Ok((s, g))
        })
        .collect::<Result<_>>()?;

    let mut results = results;
    results.sort();
    let (vertices, witnesses): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    if vertices.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ExtremalityViolated("two vertex choices give the same sum".into()));
    }
    let polytope = VPolytope::from_vertices(arity, vertices)?;
    let mq: Rational = levels.iter().cloned().sum::<Rational>() + Rational::from_integer(BigInt::from(tau.mixed_count) * m);
    let q = (mq / Rational::from_integer(m.into())).to_integer();
    Ok(DecomposedState { polytope, witnesses, tau, components: components.to_vec(), component_levels: levels, m, q })
}

/// Each component's state polytope, computed in its block ring and embedded at the ambient arity.
pub fn component_state_polytopes(input: &ChainInput, m: u32, opts: &EnumerateOptions) -> Result<Vec<StatePolytopeResult>> {
    let blocks = input.blocks()?;
    let run = |i: usize| -> Result<StatePolytopeResult> {
        let vars = blocks.block_vars(i);
        let gens = input.components[i]
            .generators()
            .iter()
            .map(|g| g.restrict(&vars).expect("support validated"))
            .collect();
        let local = Ideal::new(vars.len(), gens)?;
        let r = enumerate_state_polytope(&local, m, opts)?;
        r.require_complete(opts.budget)?;
        let verts = r.polytope.vertices().iter().map(|v| embed_block(&blocks, i, v)).collect();
        let witnesses = r.witnesses.iter().map(|w| embed_block(&blocks, i, w)).collect();
        Ok(StatePolytopeResult { polytope: VPolytope::from_vertices(blocks.arity(), verts)?, witnesses, ..r })
    };
    if opts.parallel {
        (0..blocks.len()).into_par_iter().map(run).collect()
    } else {
        (0..blocks.len()).map(run).collect()
    }
}

pub fn decomposed_state_polytope(input: &ChainInput, m: u32, opts: &EnumerateOptions) -> Result<DecomposedState> {
    let blocks = input.blocks()?;
    let comps = component_state_polytopes(input, m, opts)?;
    let polys: Vec<VPolytope> = comps.into_iter().map(|c| c.polytope).collect();
    decompose_from_polytopes(&blocks, m, &polys)
}

/// Splices per-block weight vectors (ambient arity, supported on their blocks) into one weight
/// whose order restricts to each block's order on every graded piece.
pub fn junction_witness(blocks: &BlockSpec, block_weights: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let slice = |i: usize| -> BlockWeights {
        let r = blocks.block(i);
        BlockWeights::new(*r.start(), block_weights[i][r].to_vec())
    };
    let mut acc = slice(0);
    for i in 1..blocks.len() {
        acc = merge_junction_orders(&slice(i), &acc)?;
    }
    Ok(acc.weights)
}

#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    pub block: usize,
    pub level: Rational,
    pub summand: Vec<Rational>,
    pub contained: bool,
    pub certificate: HullMembership,
}

#[derive(Clone, Debug)]
pub struct ChainVerdict {
    pub barycenter: Vec<Rational>,
    pub tau: TauVector,
    pub q: BigInt,
    pub components: Vec<ComponentVerdict>,
    pub contained: bool,
}

impl ChainVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "barycenter": vector_json(&self.barycenter),
            "tau": self.tau.tau,
            "Q": self.q.to_string(),
            "contained": self.contained,
            "components": self.components.iter().map(|c| {
                let cert = match &c.certificate {
                    HullMembership::Inside { lambda } => json!({"kind": "convex-combination", "lambda": vector_json(lambda)}),
                    HullMembership::Outside { separator } => json!({"kind": "separating-functional", "h": vector_json(separator)}),
                };
                json!({
                    "block": c.block,
                    "level": format_rational(&c.level),
                    "summand": vector_json(&c.summand),
                    "contained": c.contained,
                    "certificate": cert,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Barycenter test through the components: decompose `γ - τ` and test each piece against its
/// component polytope.
pub fn semistability_from_polytopes(blocks: &BlockSpec, m: u32, components: &[VPolytope]) -> Result<ChainVerdict> {
    if components.len() != blocks.len() {
        return Err(Error::InvalidChain(format!("{} component polytopes for {} blocks", components.len(), blocks.len())));
    }
    let levels: Vec<Rational> = components.iter().enumerate().map(|(i, p)| component_level(p, i)).collect::<Result<_>>()?;
    let tau = tau_vector(blocks, m);
    let mq: Rational = levels.iter().cloned().sum::<Rational>() + Rational::from_integer(BigInt::from(tau.mixed_count) * m);
    let q = (mq / Rational::from_integer(m.into())).to_integer();
    let gamma = trivial_character_point(blocks.last(), m, &q);
    let p: Vec<Rational> = gamma.iter().zip(&tau.tau).map(|(g, &t)| g - Rational::from_integer(t.into())).collect();
    let pieces = barycenter_decompose(&p, blocks, &levels)?;
    let mut verdicts = Vec::new();
    for (i, (piece, poly)) in pieces.into_iter().zip(components).enumerate() {
        let cert = member_convex_hull(poly.vertices(), &piece)?;
        verdicts.push(ComponentVerdict { block: i, level: levels[i].clone(), contained: cert.is_inside(), summand: piece, certificate: cert });
    }
    let contained = verdicts.iter().all(|v| v.contained);
    Ok(ChainVerdict { barycenter: gamma, tau, q, components: verdicts, contained })
}

pub fn semistability_via_components(input: &ChainInput, m: u32, opts: &EnumerateOptions) -> Result<ChainVerdict> {
    let blocks = input.blocks()?;
    let comps = component_state_polytopes(input, m, opts)?;
    let polys: Vec<VPolytope> = comps.into_iter().map(|c| c.polytope).collect();
    semistability_from_polytopes(&blocks, m, &polys)
}

/// Integer vector from an exact rational vector with integral entries.
pub fn integral(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat_vec, ratio};

    #[test]
    fn mixed_sets_and_tau() {
        let lines = BlockSpec::new(vec![0, 1, 2, 3]).unwrap();
        let t = mixed_ideals(&lines);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].generators(), &[Monomial::new(vec![1, 0, 1, 0]), Monomial::new(vec![1, 0, 0, 1])]);
        assert_eq!(t[1].generators(), &[Monomial::new(vec![0, 1, 0, 1])]);

        let pc = BlockSpec::new(vec![0, 2, 4]).unwrap();
        let tau = tau_vector(&pc, 3);
        assert_eq!(tau.tau, vec![11, 11, 4, 11, 11]);
        assert_eq!(tau.mixed_count, 16);

        let bridge = BlockSpec::new(vec![0, 4, 7, 11]).unwrap();
        assert_eq!(tau_vector(&bridge, 2).tau, vec![7, 7, 7, 7, 4, 8, 8, 4, 7, 7, 7, 7]);
    }

    #[test]
    fn decomposition_pieces() {
        let b = BlockSpec::new(vec![0, 2, 4]).unwrap();
        let p = rat_vec(&[1, 2, 3, 4, 5]);
        let q = barycenter_decompose(&p, &b, &rat_vec(&[5, 10])).unwrap();
        assert_eq!(q[0], rat_vec(&[1, 2, 2, 0, 0]));
        assert_eq!(q[1], rat_vec(&[0, 0, 1, 4, 5]));
        assert!(barycenter_decompose(&p, &b, &rat_vec(&[5, 11])).is_err());
        let one = BlockSpec::new(vec![0, 2]).unwrap();
        assert_eq!(barycenter_decompose(&[ratio(1, 2), ratio(1, 2), rat_vec(&[1])[0].clone()], &one, &rat_vec(&[2])).unwrap()[0], vec![ratio(1, 2), ratio(1, 2), rat_vec(&[1])[0].clone()]);
    }

    #[test]
    fn validation_reports() {
        let bad = ChainInput::new(vec![0, 3, 2], vec![Ideal::zero(3), Ideal::zero(3)]);
        assert!(matches!(validate_chain(&bad).violations[0], ChainViolation::Blocks(_)));
        let cube = crate::algebra::Polynomial::from_int_terms(3, &[(1, &[0, 3, 0])]);
        let c = ChainInput::new(vec![0, 1, 2], vec![Ideal::new(3, vec![cube]).unwrap(), Ideal::zero(3)]);
        assert!(matches!(validate_chain(&c).violations[0], ChainViolation::JunctionVanishing { .. }));
    }
}
