//! The `statec` command line: argument parsing, dispatch and deterministic output.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::rational::{format_rational, Rational};
use crate::algebra::{BlockSpec, Monomial, MonomialOrder, Polynomial};
use crate::chain::{
    assemble_ideal, barycenter_decompose, decompose_from_polytopes, decomposed_state_polytope, semistability_from_polytopes,
    semistability_via_components, tau_vector, validate_chain, ChainInput,
};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, implicitize, initial_ideal, intersect_ideals, Ideal};
use crate::hm::{cuspidal_tail_aggregates, hm_from_aggregates, hm_index_decomposed, hm_index_direct, OnePS};
use crate::io::{parse_ideal_file, parse_index_list, parse_rational_list, IdealFile};
use crate::lp::{member_convex_hull, HullMembership};
use crate::polytope::{vector_json, VPolytope};
use crate::rosary::{
    conic_ends, rosary_assemble, rosary_component_ideal, rosary_component_initial, rosary_components,
    rosary_mixed_sets, rosary_slice_decomposition_check, w_table, w_table_csv, RosarySpec,
};
use crate::state::{enumerate_state_polytope, semistability_report, EnumerateOptions, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const REGULARITY_WARNING: &str = "m is trusted to be at least the regularity of the ideal; it is not checked";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gb,
    Initial,
    State,
    Intersect,
    Eliminate,
    Implicitize,
    ChainState,
    Tau,
    DecomposePoint,
    Contains,
    Semistable,
    Hm,
    Rosary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RosaryWhat {
    Wtable,
    Generators,
    Initial,
    Mixed,
    Check,
}

/// Exact state polytopes, chain decompositions and Hilbert–Mumford indices.
#[derive(Debug, Parser)]
#[command(name = "statec", version)]
pub struct Args {
    pub command: Command,
    /// Ideal file (`ring:`, `ideal[k]:`, `blocks:`, `weights:`, `target:` lines).
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    /// Degree of the state polytope or Hilbert point.
    #[arg(long)]
    pub m: Option<u32>,
    /// `lex`, `grlex`, `grevlex`, `weight`, or a matrix with rows separated by `;`.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub blocks: Option<String>,
    /// Comma-separated rationals: 1-PS weights or order weights.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub budget: Option<usize>,
    /// Worker threads; more than one fans out independent computations.
    #[arg(long)]
    pub parallel: Option<usize>,
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_enum)]
    pub what: Option<RosaryWhat>,
    /// Comma-separated polytope JSON files.
    #[arg(long)]
    pub polytopes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[arg(long)]
    pub levels: Option<String>,
    /// Variables kept by `eliminate`, by index.
    #[arg(long)]
    pub keep: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Genus for the cuspidal tail aggregate family of `hm`.
    #[arg(long)]
    pub g: Option<i64>,
}

/// What a run produced: the text for stdout (or `--out`), diagnostics, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Io(_) | Error::Infeasible(_) => EXIT_FAILURE,
        _ => EXIT_INVALID,
    }
}

struct Context {
    args: Args,
    echo: Vec<String>,
    inputs: Vec<u8>,
    warnings: Vec<String>,
}

enum Payload {
    Json(Value),
    Csv(String),
    /// An inner hull cut short by the oracle budget; always emitted as JSON.
    Partial(Value),
}

struct Invalid(Value);

impl Context {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.inputs.extend_from_slice(text.as_bytes());
        self.inputs.push(0);
        Ok(text)
    }

    fn ideal_file(&mut self) -> Result<IdealFile> {
        let path = self.args.ideal.clone().ok_or_else(|| Error::Malformed("--ideal is required".into()))?;
        let file = parse_ideal_file(&self.read(&path)?)?;
        for (k, i) in &file.ideals {
            if !i.is_homogeneous() {
                self.warnings.push(format!("ideal[{k}] has non-homogeneous generators"));
            }
        }
        Ok(file)
    }

    fn m(&self) -> Result<u32> {
        self.args.m.ok_or_else(|| Error::Malformed("--m is required".into()))
    }

    fn budget(&self) -> Result<usize> {
        if let Some(b) = self.args.budget {
            return Ok(b);
        }
        match std::env::var("STATEC_BUDGET") {
            Ok(s) => s.trim().parse().map_err(|_| Error::Malformed(format!("STATEC_BUDGET={s:?} is not a count"))),
            Err(_) => Ok(DEFAULT_BUDGET),
        }
    }

    fn enumerate_options(&self) -> Result<EnumerateOptions> {
        Ok(EnumerateOptions { budget: self.budget()?, parallel: self.args.parallel.unwrap_or(1) > 1 })
    }

    fn blocks(&self, file: Option<&IdealFile>) -> Result<BlockSpec> {
        let b = match (&self.args.blocks, file.and_then(|f| f.blocks.clone())) {
            (Some(s), _) => parse_index_list(s)?,
            (None, Some(b)) => b,
            (None, None) => return Err(Error::Malformed("--blocks is required".into())),
        };
        BlockSpec::new(b)
    }

    fn weights(&self, file: Option<&IdealFile>) -> Result<Option<Vec<Rational>>> {
        match (&self.args.weights, file.and_then(|f| f.weights.clone())) {
            (Some(s), _) => Ok(Some(parse_rational_list(s)?)),
            (None, w) => Ok(w),
        }
    }

    fn order(&self, arity: usize, file: Option<&IdealFile>) -> Result<MonomialOrder> {
        let name = self.args.order.as_deref().unwrap_or("grevlex");
        if name.contains(',') {
            let rows = name.split(';').map(parse_rational_list).collect::<Result<Vec<_>>>()?;
            let order = MonomialOrder::custom(rows)?;
            if order.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: order.arity() });
            }
            return Ok(order);
        }
        MonomialOrder::from_name(name, arity, self.weights(file)?.as_deref())
    }

    fn polytopes(&mut self) -> Result<Vec<VPolytope>> {
        let list = self.args.polytopes.clone().ok_or_else(|| Error::Malformed("--polytopes is required".into()))?;
        list.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|p| {
                let text = self.read(Path::new(p.trim()))?;
                VPolytope::from_json(&serde_json::from_str(&text)?)
            })
            .collect()
    }

    /// The single ideal of the file; several sections are assembled as a chain when blocks are
    /// given and intersected otherwise.
    fn target_ideal(&self, file: &IdealFile) -> Result<std::result::Result<Ideal, Invalid>> {
        if file.ideals.len() == 1 {
            return Ok(Ok(file.ideal()?.clone()));
        }
        if self.args.blocks.is_some() || file.blocks.is_some() {
            return Ok(match self.chain(file)? {
                Ok(input) => Ok(assemble_ideal(&input)?),
                Err(inv) => Err(inv),
            });
        }
        let mut it = file.ideals.values();
        let mut acc = it.next().ok_or_else(|| Error::Malformed("no ideal sections".into()))?.clone();
        for i in it {
            acc = intersect_ideals(&acc, i)?;
        }
        Ok(Ok(acc))
    }

    fn format(&self) -> Format {
        self.args.format.unwrap_or(Format::Json)
    }

    fn chain(&self, file: &IdealFile) -> Result<std::result::Result<ChainInput, Invalid>> {
        let blocks = self.blocks(Some(file))?;
        let input = ChainInput::new(blocks.boundaries().to_vec(), file.ideals.values().cloned().collect());
        let report = validate_chain(&input);
        if !report.is_ok() {
            return Ok(Err(Invalid(json!({
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))));
        }
        Ok(Ok(input))
    }
}

fn poly_strings(gens: &[Polynomial], names: &[String]) -> Vec<String> {
    gens.iter().map(|g| g.display_with(names)).collect()
}

fn mono_strings<'a>(monos: impl IntoIterator<Item = &'a Monomial>, names: &[String]) -> Vec<String> {
    monos.into_iter().map(|m| m.display_with(names)).collect()
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn rows_csv(rows: &[Vec<String>], header: &[String]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Malformed(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn vertices_csv(p: &VPolytope) -> Result<String> {
    let header: Vec<String> = (0..p.dim()).map(|i| format!("x{i}")).collect();
    let rows: Vec<Vec<String>> = p.vertices().iter().map(|v| v.iter().map(format_rational).collect()).collect();
    rows_csv(&rows, &header)
}

fn certificate_json(c: &HullMembership) -> Value {
    match c {
        HullMembership::Inside { lambda } => json!({"kind": "convex-combination", "lambda": vector_json(lambda)}),
        HullMembership::Outside { separator } => json!({"kind": "separating-functional", "h": vector_json(separator)}),
    }
}

fn dispatch(cx: &mut Context) -> Result<std::result::Result<Payload, Invalid>> {
    let csv_only_json = |cx: &Context| -> Result<()> {
        if cx.format() == Format::Csv {
            return Err(Error::Malformed("this command has no CSV form".into()));
        }
        Ok(())
    };
    let payload = match cx.args.command {
        Command::Gb => {
            csv_only_json(cx)?;
            let file = cx.ideal_file()?;
            let order = cx.order(file.arity(), Some(&file))?;
            let ideal = match cx.target_ideal(&file)? {
                Ok(i) => i,
                Err(inv) => return Ok(Err(inv)),
            };
            let gb = buchberger(&ideal, &order)?;
            Payload::Json(json!({
                "order": format!("{:?}", order.kind()),
                "basis": poly_strings(gb.elements(), &file.names),
                "leadingMonomials": mono_strings(&gb.leading_monomials(), &file.names),
            }))
        }
        Command::Initial => {
            csv_only_json(cx)?;
            let file = cx.ideal_file()?;
            let order = cx.order(file.arity(), Some(&file))?;
            let ideal = match cx.target_ideal(&file)? {
                Ok(i) => i,
                Err(inv) => return Ok(Err(inv)),
            };
            let init = initial_ideal(&ideal, &order)?;
            Payload::Json(json!({
                "order": format!("{:?}", order.kind()),
                "generators": mono_strings(init.generators(), &file.names),
            }))
        }
        Command::State => {
            let file = cx.ideal_file()?;
            let m = cx.m()?;
            cx.warnings.push(REGULARITY_WARNING.into());
            let opts = cx.enumerate_options()?;
            let ideal = match cx.target_ideal(&file)? {
                Ok(i) => i,
                Err(inv) => return Ok(Err(inv)),
            };
            let r = enumerate_state_polytope(&ideal, m, &opts)?;
            if !r.is_complete() {
                cx.warnings.push(format!("oracle budget of {} queries exceeded; the vertices span an inner hull", opts.budget));
                return Ok(Ok(Payload::Partial(r.to_json())));
            }
            match cx.format() {
                Format::Json => Payload::Json(r.to_json()),
                Format::Csv => Payload::Csv(vertices_csv(&r.polytope)?),
            }
        }
        Command::Intersect => {
            csv_only_json(cx)?;
            let file = cx.ideal_file()?;
            let mut acc: Option<Ideal> = None;
            for i in file.ideals.values() {
                acc = Some(match acc {
                    None => i.clone(),
                    Some(a) => intersect_ideals(&a, i)?,
                });
            }
            let acc = acc.ok_or_else(|| Error::Malformed("no ideal sections".into()))?;
            let gb = buchberger(&acc, &MonomialOrder::grevlex(file.arity()))?;
            let out = IdealFile { names: file.names.clone(), ideals: [(0, gb.as_ideal())].into(), ..Default::default() };
            Payload::Json(json!({
                "generators": poly_strings(gb.elements(), &file.names),
                "idealFile": out.to_text(),
            }))
        }
        Command::Eliminate => {
            csv_only_json(cx)?;
            let file = cx.ideal_file()?;
            let keep = parse_index_list(cx.args.keep.as_deref().ok_or_else(|| Error::Malformed("--keep is required".into()))?)?;
            let ideal = match cx.target_ideal(&file)? {
                Ok(i) => i,
                Err(inv) => return Ok(Err(inv)),
            };
            let e = eliminate(&ideal, &keep)?;
            Payload::Json(json!({
                "keep": keep.iter().map(|&k| file.names.get(k).cloned().unwrap_or_default()).collect::<Vec<_>>(),
                "generators": poly_strings(e.generators(), &file.names),
            }))
        }
        Command::Implicitize => {
            csv_only_json(cx)?;
            let file = cx.ideal_file()?;
            let forms = file.ideal()?.generators().to_vec();
            let ideal = implicitize(&forms)?;
            let names = default_names(forms.len());
            let gb = buchberger(&ideal, &MonomialOrder::grevlex(forms.len()))?;
            let out = IdealFile { names: names.clone(), ideals: [(0, gb.as_ideal())].into(), ..Default::default() };
            Payload::Json(json!({
                "generators": poly_strings(gb.elements(), &names),
                "idealFile": out.to_text(),
            }))
        }
        Command::ChainState => {
            let m = cx.m()?;
            let dec = if cx.args.polytopes.is_some() {
                let blocks = cx.blocks(None)?;
                let polys = cx.polytopes()?;
                decompose_from_polytopes(&blocks, m, &polys)?
            } else {
                let file = cx.ideal_file()?;
                cx.warnings.push(REGULARITY_WARNING.into());
                let input = match cx.chain(&file)? {
                    Ok(i) => i,
                    Err(inv) => return Ok(Err(inv)),
                };
                decomposed_state_polytope(&input, m, &cx.enumerate_options()?)?
            };
            match cx.format() {
                Format::Json => Payload::Json(dec.to_json()),
                Format::Csv => Payload::Csv(vertices_csv(&dec.polytope)?),
            }
        }
        Command::Tau => {
            let blocks = cx.blocks(None)?;
            let m = cx.m()?;
            if let Some(n) = cx.args.nvars {
                if n != blocks.arity() {
                    return Err(Error::ArityMismatch { expected: blocks.arity(), found: n });
                }
            }
            let t = tau_vector(&blocks, m);
            match cx.format() {
                Format::Json => Payload::Json(json!({"m": m, "tau": t.tau, "mixedCount": t.mixed_count})),
                Format::Csv => {
                    let header: Vec<String> = (0..t.tau.len()).map(|i| format!("x{i}")).collect();
                    Payload::Csv(rows_csv(&[t.tau.iter().map(|x| x.to_string()).collect()], &header)?)
                }
            }
        }
        Command::DecomposePoint => {
            let blocks = cx.blocks(None)?;
            let point = parse_rational_list(cx.args.point.as_deref().ok_or_else(|| Error::Malformed("--point is required".into()))?)?;
            let levels =
                parse_rational_list(cx.args.levels.as_deref().ok_or_else(|| Error::Malformed("--levels is required".into()))?)?;
            let pieces = barycenter_decompose(&point, &blocks, &levels)?;
            match cx.format() {
                Format::Json => Payload::Json(json!({"pieces": pieces.iter().map(|p| vector_json(p)).collect::<Vec<_>>()})),
                Format::Csv => {
                    let header: Vec<String> = (0..point.len()).map(|i| format!("x{i}")).collect();
                    let rows: Vec<Vec<String>> = pieces.iter().map(|p| p.iter().map(format_rational).collect()).collect();
                    Payload::Csv(rows_csv(&rows, &header)?)
                }
            }
        }
        Command::Contains => {
            csv_only_json(cx)?;
            let point = parse_rational_list(cx.args.point.as_deref().ok_or_else(|| Error::Malformed("--point is required".into()))?)?;
            let poly = if cx.args.polytopes.is_some() {
                let mut ps = cx.polytopes()?;
                if ps.len() != 1 {
                    return Err(Error::Malformed("contains takes exactly one polytope".into()));
                }
                ps.remove(0)
            } else {
                let file = cx.ideal_file()?;
                let opts = cx.enumerate_options()?;
                let ideal = match cx.target_ideal(&file)? {
                    Ok(i) => i,
                    Err(inv) => return Ok(Err(inv)),
                };
                let r = enumerate_state_polytope(&ideal, cx.m()?, &opts)?;
                r.require_complete(opts.budget)?;
                r.polytope
            };
            if point.len() != poly.dim() {
                return Err(Error::ArityMismatch { expected: poly.dim(), found: point.len() });
            }
            let cert = member_convex_hull(poly.vertices(), &point)?;
            Payload::Json(json!({"contained": cert.is_inside(), "certificate": certificate_json(&cert)}))
        }
        Command::Semistable => {
            csv_only_json(cx)?;
            let m = cx.m()?;
            cx.warnings.push(REGULARITY_WARNING.into());
            if cx.args.polytopes.is_some() {
                let blocks = cx.blocks(None)?;
                let polys = cx.polytopes()?;
                Payload::Json(semistability_from_polytopes(&blocks, m, &polys)?.to_json())
            } else {
                let file = cx.ideal_file()?;
                let opts = cx.enumerate_options()?;
                if file.ideals.len() > 1 {
                    let input = match cx.chain(&file)? {
                        Ok(i) => i,
                        Err(inv) => return Ok(Err(inv)),
                    };
                    Payload::Json(semistability_via_components(&input, m, &opts)?.to_json())
                } else {
                    let r = enumerate_state_polytope(file.ideal()?, m, &opts)?;
                    r.require_complete(opts.budget)?;
                    let mut v = semistability_report(&r)?.to_json();
                    v.as_object_mut().expect("object").insert("Q".into(), json!(r.q.to_string()));
                    Payload::Json(v)
                }
            }
        }
        Command::Hm => {
            csv_only_json(cx)?;
            let m = cx.m()?;
            if let Some(g) = cx.args.g {
                let (y, z, p, rj) = cuspidal_tail_aggregates(g, m)
                    .ok_or_else(|| Error::OutOfRange(format!("the cuspidal tail family is tabulated for m = 2, 3, not {m}")))?;
                let one = Rational::from_integer(1.into());
                let mu = hm_from_aggregates(&y, &z, p, 0, m, &one, std::slice::from_ref(&rj));
                Payload::Json(json!({
                    "family": "cuspidal-tail",
                    "g": g,
                    "m": m,
                    "sumY": format_rational(&y),
                    "sumZ": format_rational(&z),
                    "P": p,
                    "junctionWeight": format_rational(&rj),
                    "mu": format_rational(&mu),
                }))
            } else {
                let file = cx.ideal_file()?;
                cx.warnings.push(REGULARITY_WARNING.into());
                let rho = OnePS::new(cx.weights(Some(&file))?.ok_or_else(|| Error::Malformed("--weights is required".into()))?);
                if file.ideals.len() > 1 {
                    let input = match cx.chain(&file)? {
                        Ok(i) => i,
                        Err(inv) => return Ok(Err(inv)),
                    };
                    Payload::Json(hm_index_decomposed(&input, m, &rho)?.to_json())
                } else {
                    Payload::Json(hm_index_direct(file.ideal()?, m, &rho)?.to_json())
                }
            }
        }
        Command::Rosary => {
            let r = cx.args.r.ok_or_else(|| Error::Malformed("--r is required".into()))?;
            let spec = RosarySpec::new(r)?;
            let names = default_names(spec.arity());
            let what = cx.args.what.unwrap_or(RosaryWhat::Wtable);
            let l = || cx.args.l.ok_or_else(|| Error::Malformed("--l is required".into()));
            let d = || cx.args.d.ok_or_else(|| Error::Malformed("--d is required".into()));
            match what {
                RosaryWhat::Wtable => {
                    let rows = w_table(1..=r as i64)?;
                    match cx.args.format.unwrap_or(Format::Csv) {
                        Format::Csv => Payload::Csv(w_table_csv(&rows)),
                        Format::Json => Payload::Json(Value::Array(
                            rows.iter()
                                .map(|w| {
                                    json!({"r": w.r, "w2Closed": w.w2_closed, "w2Rec": w.w2_rec,
                                           "w3Closed": w.w3_closed, "w3Rec": w.w3_rec, "agree": w.agree()})
                                })
                                .collect(),
                        )),
                    }
                }
                RosaryWhat::Generators => {
                    csv_only_json(cx)?;
                    let i = rosary_component_ideal(l()?, &spec)?;
                    Payload::Json(json!({"generators": poly_strings(i.generators(), &names)}))
                }
                RosaryWhat::Initial => {
                    csv_only_json(cx)?;
                    let l = l()?;
                    let i = rosary_component_ideal(l, &spec)?;
                    let got = initial_ideal(&i, &MonomialOrder::lex(spec.arity()))?;
                    let want = crate::groebner::MonomialIdeal::new(spec.arity(), rosary_component_initial(l, &spec)?);
                    Payload::Json(json!({
                        "computed": mono_strings(got.generators(), &names),
                        "expected": mono_strings(want.generators(), &names),
                        "equal": got == want,
                    }))
                }
                RosaryWhat::Mixed => {
                    csv_only_json(cx)?;
                    let t = rosary_mixed_sets(l()?, d()?, &spec)?;
                    Payload::Json(json!({"count": t.len(), "monomials": mono_strings(&t, &names)}))
                }
                RosaryWhat::Check => {
                    csv_only_json(cx)?;
                    let d = d()?;
                    let (first, last) = if cx.args.ideal.is_some() {
                        let file = cx.ideal_file()?;
                        if file.arity() != spec.arity() || file.ideals.len() != 2 {
                            return Err(Error::Malformed(format!(
                                "end components: expected ideal[0] and ideal[1] over {} variables",
                                spec.arity()
                            )));
                        }
                        let mut it = file.ideals.into_values();
                        (it.next().expect("two"), it.next().expect("two"))
                    } else {
                        conic_ends(&spec)
                    };
                    let comps = rosary_components(&spec, first, last)?;
                    let whole = rosary_assemble(&spec, &comps)?;
                    let check = rosary_slice_decomposition_check(&spec, &whole, &comps, &MonomialOrder::lex(spec.arity()), d)?;
                    Payload::Json(json!({
                        "d": d,
                        "holds": check.holds(),
                        "left": mono_strings(&check.left, &names),
                        "right": mono_strings(&check.right, &names),
                        "onlyLeft": mono_strings(&check.only_left, &names),
                        "onlyRight": mono_strings(&check.only_right, &names),
                    }))
                }
            }
        }
    };
    Ok(Ok(payload))
}

fn envelope(cx: &Context, status: &str, payload: Value) -> String {
    let digest = if cx.inputs.is_empty() { Sha256::digest(cx.echo.join(" ").as_bytes()) } else { Sha256::digest(&cx.inputs) };
    let v = json!({
        "command": cx.echo.join(" "),
        "input": format!("sha256:{}", hex::encode(digest)),
        "status": status,
        "payload": payload,
        "warnings": cx.warnings,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Runs one command. `argv` includes the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let args = match Args::try_parse_from(&argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let threads = args.parallel.unwrap_or(1).max(1);
    let out_path = args.out.clone();
    let mut cx = Context { args, echo, inputs: Vec::new(), warnings: Vec::new() };

    let result = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| dispatch(&mut cx)),
        Err(e) => Err(Error::Malformed(format!("thread pool: {e}"))),
    };
    let (code, text, stderr) = match result {
        Ok(Ok(Payload::Json(v))) => (EXIT_OK, envelope(&cx, "ok", v), String::new()),
        Ok(Ok(Payload::Partial(v))) => {
            (EXIT_BUDGET, envelope(&cx, "budget-exceeded", v), "error: oracle budget exceeded\n".to_string())
        }
        Ok(Ok(Payload::Csv(s))) => (EXIT_OK, s, cx.warnings.iter().map(|w| format!("warning: {w}\n")).collect()),
        Ok(Err(Invalid(v))) => (EXIT_INVALID, envelope(&cx, "invalid", v), "error: validation failed\n".to_string()),
        Err(e) => {
            let code = exit_code(&e);
            let status = if code == EXIT_BUDGET { "budget-exceeded" } else { "error" };
            (code, envelope(&cx, status, json!({"error": e.to_string()})), format!("error: {e}\n"))
        }
    };
    match out_path {
        Some(p) if code == EXIT_OK => match std::fs::write(&p, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("error: {}: {e}\n", p.display()) },
        },
        _ => Outcome { code, stdout: text, stderr },
    }
}
