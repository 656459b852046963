//! Dispatch from parsed documents to the library.

use std::collections::BTreeMap;

use clap::ValueEnum;
use coxcomb_core::abelian::{
    check_exact, cokernel, composite_is_zero, element_eq, forget_grading, hom_group, localize,
    smith_normal_form, FgAbelianGroup, GroupHom, IntegerMatrix,
};
use coxcomb_core::iteration::{
    self, ConfigPoint, ExponentConfig, FiberData, IterationTrace, RamificationProfile, TraceStatus,
};
use coxcomb_core::platonic::{self, GeometryFlags, PlatonicVerdict};
use coxcomb_core::ring::{ExponentData, ProjectivePoint, RingData};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::document::{
    int_value, rat_value, FlagsSection, GroupSpec, InputDocument, Int, MapSpec, RingSection, Rows,
};
use crate::error::{CliError, EXIT_OK, EXIT_PRECONDITION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupOp {
    Snf,
    Coker,
    Hom,
    Localize,
    Exact,
    Forget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingOp {
    Build,
    Trinomials,
    Expand,
    CheckHomogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Group(GroupOp),
    Ring(RingOp),
    Platonic,
    Logterm,
    Iterate,
}

impl Command {
    pub fn name(&self) -> String {
        let sub = |v: Option<clap::builder::PossibleValue>| {
            v.expect("no skipped variants").get_name().to_string()
        };
        match self {
            Self::Group(op) => format!("group {}", sub(op.to_possible_value())),
            Self::Ring(op) => format!("ring {}", sub(op.to_possible_value())),
            Self::Platonic => "platonic".into(),
            Self::Logterm => "logterm".into(),
            Self::Iterate => "iterate".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_steps: usize,
    /// Replace the profile list by the divide-by-gcd heuristic.
    pub heuristic_gcd: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_steps: iteration::DEFAULT_MAX_STEPS,
            heuristic_gcd: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub summary: String,
    pub citations: Vec<String>,
    pub exit_code: u8,
}

impl Report {
    fn new(command: Command, result: Value, summary: String, citations: &[&str]) -> Self {
        Self {
            command: command.name(),
            result,
            summary,
            citations: citations.iter().map(|c| c.to_string()).collect(),
            exit_code: EXIT_OK,
        }
    }

    pub fn to_value(&self, cite: bool) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("exit_code".into(), self.exit_code.into());
        m.insert("result".into(), self.result.clone());
        m.insert("summary".into(), self.summary.clone().into());
        if cite {
            m.insert("citations".into(), self.citations.clone().into());
        }
        Value::Object(m)
    }
}

pub fn error_value(command: &str, err: &CliError) -> Value {
    json!({
        "command": command,
        "exit_code": err.exit_code(),
        "error": {"kind": err.kind(), "message": err.to_string()},
    })
}

const CITE_SNF: &str =
    "Smith normal form: the cokernel is determined by the nonunit diagonal entries";
const CITE_HOM: &str = "Hom(Z/a, Z/b) = Z/gcd(a,b), additive in both arguments";
const CITE_LOCALIZE: &str = "removing prime divisors quotients the class group by their classes";
const CITE_EXACT: &str = "exactness at the middle term: image lattice equals kernel lattice";
const CITE_FORGET: &str =
    "forgetting linearizations: the class group is the cokernel of the character map";
const CITE_RING: &str = "R(A,P0) = k[T_ij, S_k]/(g_I) graded by K0 = Z^(n+m)/im(P0^t)";
const CITE_GENERATORS: &str = "the trinomials g_(0,1,i) generate the ideal of relations";
const CITE_PLATONIC: &str =
    "Platonic tuples: decreasing with head (5,3,2), (4,3,2), (3,3,2), (x,2,2) or (x,y,1), then ones";
const CITE_ITERATE: &str =
    "iteration of Cox rings terminates once every exponent vector is primitive";

pub fn execute(command: Command, doc: &InputDocument, opts: &Options) -> Result<Report, CliError> {
    match command {
        Command::Group(op) => group(op, doc),
        Command::Ring(op) => ring(op, doc),
        Command::Platonic => platonic_cmd(doc),
        Command::Logterm => logterm_cmd(doc),
        Command::Iterate => iterate_cmd(doc, opts),
    }
}

fn count_noun(n: usize, noun: &str) -> String {
    format!("{n} {noun}{}", if n == 1 { "" } else { "s" })
}

fn missing(section: &str) -> CliError {
    CliError::schema(format!("missing `{section}` section"))
}

fn to_u64(x: &Int, what: &str) -> Result<u64, CliError> {
    u64::try_from(&x.0).map_err(|_| {
        CliError::schema(format!(
            "{what} must be a nonnegative 64-bit integer, got {}",
            x.0
        ))
    })
}

fn to_usize(x: &Int, what: &str) -> Result<usize, CliError> {
    usize::try_from(&x.0)
        .map_err(|_| CliError::schema(format!("{what} must be a nonnegative index, got {}", x.0)))
}

fn big_rows(rows: &Rows) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect()
}

/// `cols` is used only when there are no rows.
fn to_matrix(rows: &Rows, cols: usize) -> Result<IntegerMatrix, CliError> {
    let Some(first) = rows.first() else {
        return Ok(IntegerMatrix::zeros(0, cols));
    };
    if let Some(i) = rows.iter().position(|r| r.len() != first.len()) {
        return Err(CliError::schema(format!(
            "matrix row {i} has length {}, expected {}",
            rows[i].len(),
            first.len()
        )));
    }
    Ok(IntegerMatrix::from_rows(&big_rows(rows))?)
}

fn matrix_value(m: &IntegerMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_value).collect()))
            .collect(),
    )
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn group_value(g: &FgAbelianGroup) -> Value {
    let mut m = Map::new();
    m.insert("free_rank".into(), g.free_rank().into());
    m.insert("invariant_factors".into(), ints(g.invariant_factors()));
    m.insert("structure".into(), g.to_string().into());
    if let Some(order) = g.order() {
        m.insert("order".into(), int_value(&order));
    }
    Value::Object(m)
}

fn group_from_spec(spec: &GroupSpec) -> Result<FgAbelianGroup, CliError> {
    match (&spec.presentation, &spec.free_rank, &spec.invariant_factors) {
        (Some(p), None, None) => Ok(FgAbelianGroup::from_presentation(to_matrix(p, 0)?)),
        (None, rank, orders) if rank.is_some() || orders.is_some() => {
            let rank = rank
                .as_ref()
                .map(|r| to_usize(r, "free_rank"))
                .transpose()?;
            let orders: Vec<BigInt> = orders.iter().flatten().map(|o| o.0.clone()).collect();
            Ok(FgAbelianGroup::from_cyclic_orders(
                rank.unwrap_or(0),
                &orders,
            )?)
        }
        _ => Err(CliError::schema(
            "a group needs either `presentation` or `free_rank`/`invariant_factors`",
        )),
    }
}

fn map_from_spec(spec: &MapSpec) -> Result<GroupHom, CliError> {
    let source = group_from_spec(&spec.source)?;
    let target = group_from_spec(&spec.target)?;
    let matrix = to_matrix(&spec.matrix, source.ambient_rank())?;
    Ok(GroupHom::new(source, target, matrix)?)
}

fn field<'a, T>(value: Option<&'a T>, name: &str) -> Result<&'a T, CliError> {
    value.ok_or_else(|| CliError::schema(format!("missing `group.{name}`")))
}

fn group(op: GroupOp, doc: &InputDocument) -> Result<Report, CliError> {
    let command = Command::Group(op);
    let section = || doc.group.as_ref().ok_or_else(|| missing("group"));
    let map_field =
        |value: Option<&MapSpec>, name: &str| field(value, name).and_then(map_from_spec);
    match op {
        GroupOp::Snf => {
            let m = to_matrix(doc.matrix.as_ref().ok_or_else(|| missing("matrix"))?, 0)?;
            let s = smith_normal_form(&m);
            let diagonal = s.diagonal();
            let summary = format!(
                "diag({})",
                diagonal
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let result = json!({
                "d": matrix_value(&s.d),
                "diagonal": ints(&diagonal),
                "rank": s.rank(),
                "u": matrix_value(&s.u),
                "v": matrix_value(&s.v),
            });
            Ok(Report::new(command, result, summary, &[CITE_SNF]))
        }
        GroupOp::Coker => {
            let m = to_matrix(doc.matrix.as_ref().ok_or_else(|| missing("matrix"))?, 0)?;
            let g = cokernel(&m);
            Ok(Report::new(
                command,
                group_value(&g),
                g.to_string(),
                &[CITE_SNF],
            ))
        }
        GroupOp::Hom => {
            let s = section()?;
            let a = group_from_spec(field(s.source.as_ref(), "source")?)?;
            let b = group_from_spec(field(s.target.as_ref(), "target")?)?;
            let h = hom_group(&a, &b);
            let summary = format!("Hom({a}, {b}) = {h}");
            Ok(Report::new(command, group_value(&h), summary, &[CITE_HOM]))
        }
        GroupOp::Localize => {
            let s = section()?;
            let cl = group_from_spec(field(s.ambient.as_ref(), "ambient")?)?;
            let removed = big_rows(field(s.removed.as_ref(), "removed")?);
            let loc = localize(&cl, &removed)?;
            let summary = format!("{cl} -> {loc}");
            let result = json!({"ambient": group_value(&cl), "localized": group_value(&loc)});
            Ok(Report::new(command, result, summary, &[CITE_LOCALIZE]))
        }
        GroupOp::Exact => {
            let s = section()?;
            let f = map_field(s.f.as_ref(), "f")?;
            let g = map_field(s.g.as_ref(), "g")?;
            let exact = check_exact(&f, &g)?;
            let zero = composite_is_zero(&f, &g)?;
            let summary = if exact { "exact" } else { "not exact" }.to_string();
            let result = json!({"composite_zero": zero, "exact": exact});
            Ok(Report::new(command, result, summary, &[CITE_EXACT]))
        }
        GroupOp::Forget => {
            let s = section()?;
            let gamma = map_field(s.gamma.as_ref(), "gamma")?;
            let cl = forget_grading(gamma.target(), &gamma)?;
            let summary = format!("{} -> {cl}", gamma.target());
            let result = json!({
                "class_group": group_value(&cl),
                "equivariant_class_group": group_value(gamma.target()),
            });
            Ok(Report::new(command, result, summary, &[CITE_FORGET]))
        }
    }
}

fn exponent_data(section: &RingSection) -> Result<ExponentData, CliError> {
    let vectors = section
        .exponent_vectors
        .iter()
        .map(|v| v.iter().map(|x| to_u64(x, "exponent")).collect())
        .collect::<Result<Vec<Vec<u64>>, _>>()?;
    let m = section
        .m
        .as_ref()
        .map(|m| to_usize(m, "m"))
        .transpose()?
        .unwrap_or(0);
    Ok(ExponentData::new(vectors, m)?)
}

fn ring_data(section: &RingSection) -> Result<RingData, CliError> {
    let points = section
        .points
        .as_ref()
        .ok_or_else(|| CliError::schema("missing `ring.points`"))?
        .iter()
        .map(|[a, b]| ProjectivePoint::new(a.0.clone(), b.0.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingData::build(points, exponent_data(section)?)?)
}

fn degree_value(ring: &RingData, degree: &[BigInt]) -> Result<Value, CliError> {
    let (torsion, free) = ring.k0().coordinates(degree)?;
    Ok(json!({"free": ints(&free), "torsion": ints(&torsion)}))
}

fn ring(op: RingOp, doc: &InputDocument) -> Result<Report, CliError> {
    let command = Command::Ring(op);
    let ring = ring_data(doc.ring.as_ref().ok_or_else(|| missing("ring"))?)?;
    let triples = ring.triples();
    let trinomials = triples
        .iter()
        .map(|&t| ring.trinomial(t))
        .collect::<Result<Vec<_>, _>>()?;
    match op {
        RingOp::Build => {
            let mut degrees = Map::new();
            for (var, d) in ring.degrees() {
                degrees.insert(var.to_string(), degree_value(&ring, d)?);
            }
            let e = ring.exponents();
            let result = json!({
                "degrees": degrees,
                "k0": group_value(ring.k0()),
                "m": e.m(),
                "n": e.n(),
                "points": ring.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "r": ring.r(),
                "relation_matrix": matrix_value(ring.p0()),
                "trinomial_count": triples.len(),
            });
            let summary = format!(
                "K0 = {}, {}",
                ring.k0(),
                count_noun(triples.len(), "trinomial")
            );
            Ok(Report::new(command, result, summary, &[CITE_RING]))
        }
        RingOp::Trinomials => {
            let mut alphas = Map::new();
            for i in 0..=ring.r() {
                for j in i + 1..=ring.r() {
                    alphas.insert(format!("{i},{j}"), rat_value(&ring.alpha(i, j)?));
                }
            }
            let list: Vec<Value> = trinomials
                .iter()
                .map(|t| json!({"indices": t.indices, "polynomial": t.polynomial.to_string()}))
                .collect();
            let result = json!({"alphas": alphas, "count": list.len(), "trinomials": list});
            let summary = count_noun(list.len(), "trinomial");
            Ok(Report::new(command, result, summary, &[CITE_RING]))
        }
        RingOp::Expand => {
            let mut list = Vec::new();
            for t in &trinomials {
                let c = ring.expand_in_generating_set(t.indices)?;
                let combination: Map<String, Value> = c
                    .coefficients()
                    .iter()
                    .map(|(i, q)| (format!("0,1,{i}"), rat_value(q)))
                    .collect();
                list.push(json!({
                    "combination": combination,
                    "exact": c.expand(&ring) == t.polynomial,
                    "indices": t.indices,
                    "rendered": c.to_string(),
                }));
            }
            let generators: Vec<[usize; 3]> = (2..=ring.r()).map(|i| [0, 1, i]).collect();
            let summary = format!(
                "{} over {}",
                count_noun(list.len(), "trinomial"),
                count_noun(generators.len(), "generator")
            );
            let result = json!({"expansions": list, "generators": generators});
            Ok(Report::new(
                command,
                result,
                summary,
                &[CITE_RING, CITE_GENERATORS],
            ))
        }
        RingOp::CheckHomogeneous => {
            let mut list = Vec::new();
            for t in &trinomials {
                let degrees: Vec<Vec<BigInt>> = t
                    .polynomial
                    .terms()
                    .map(|(mono, _)| ring.monomial_degree(mono))
                    .collect();
                let mut same = true;
                for d in &degrees[1..] {
                    same &= element_eq(ring.k0(), &degrees[0], d)?;
                }
                list.push(json!({
                    "degree": degree_value(&ring, &degrees[0])?,
                    "homogeneous": same,
                    "indices": t.indices,
                }));
            }
            let homogeneous = ring.verify_homogeneous();
            let summary = if homogeneous {
                "homogeneous"
            } else {
                "not homogeneous"
            }
            .to_string();
            let result = json!({"homogeneous": homogeneous, "trinomials": list});
            Ok(Report::new(command, result, summary, &[CITE_RING]))
        }
    }
}

fn verdict_value(v: &PlatonicVerdict) -> Value {
    let mut m = Map::new();
    m.insert("platonic".into(), v.platonic.into());
    if let Some(w) = &v.witness {
        m.insert("witness".into(), w.0.clone().into());
    }
    Value::Object(m)
}

fn verdict_summary(v: &PlatonicVerdict) -> String {
    match &v.witness {
        None if v.platonic => "Platonic".into(),
        None => "not Platonic".into(),
        Some(w) => format!("not Platonic, witness {:?}", w.0),
    }
}

fn platonic_cmd(doc: &InputDocument) -> Result<Report, CliError> {
    let e = exponent_data(doc.ring.as_ref().ok_or_else(|| missing("ring"))?)?;
    let v = platonic::is_platonic_ring(&e);
    let mut result = verdict_value(&v);
    result["r"] = e.r().into();
    Ok(Report::new(
        Command::Platonic,
        result,
        verdict_summary(&v),
        &[CITE_PLATONIC],
    ))
}

fn flags(section: &FlagsSection) -> GeometryFlags {
    let f = |x: Option<bool>| x.unwrap_or(false);
    GeometryFlags {
        almost_homogeneous: f(section.almost_homogeneous),
        complexity_one: f(section.complexity_one),
        units_constant: f(section.units_constant),
        spherical: f(section.spherical),
        q_factorial_projective: f(section.q_factorial_projective),
        smooth: f(section.smooth),
        complete: f(section.complete),
        torus_invariants_constant: f(section.torus_invariants_constant),
    }
}

fn logterm_cmd(doc: &InputDocument) -> Result<Report, CliError> {
    let flags = flags(doc.flags.as_ref().ok_or_else(|| missing("flags"))?);
    let exponents = doc.ring.as_ref().map(exponent_data).transpose()?;
    let report = platonic::log_terminal(exponents.as_ref(), &flags)?;
    let mut result = Map::new();
    result.insert("basis".into(), report.basis.clone().into());
    result.insert("verdict".into(), report.verdict.into());
    if let Some(fano) = report.fano_type {
        result.insert("fano_type".into(), fano.into());
    }
    if let Some(v) = &report.platonic {
        result.insert("platonic".into(), verdict_value(v));
    }
    let summary = if report.verdict {
        "log terminal"
    } else {
        "not log terminal"
    };
    let citations: Vec<&str> = match &report.platonic {
        Some(_) => vec![&report.basis, CITE_PLATONIC],
        None => vec![&report.basis],
    };
    Ok(Report::new(
        Command::Logterm,
        Value::Object(result),
        summary.into(),
        &citations,
    ))
}

fn config_from_section(
    doc: &InputDocument,
) -> Result<(ExponentConfig, Vec<RamificationProfile>), CliError> {
    let section = doc.iteration.as_ref().ok_or_else(|| missing("iteration"))?;
    let points = section
        .config
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            Ok(ConfigPoint {
                class_id: entry.class.clone().unwrap_or_else(|| format!("x{i}")),
                vector: entry
                    .vector
                    .iter()
                    .map(|x| to_u64(x, "exponent"))
                    .collect::<Result<_, CliError>>()?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let config = ExponentConfig::new(points)?;
    let mut profiles = Vec::new();
    for p in section.profiles.iter().flatten() {
        let mut per_point = BTreeMap::new();
        for fiber in p.fibers.iter().flatten() {
            let point = to_usize(&fiber.point, "fiber point")?;
            let data = FiberData {
                fiber_size: to_u64(&fiber.fiber_size, "fiber_size")?,
                multiplicities: fiber
                    .multiplicities
                    .iter()
                    .map(|x| to_u64(x, "multiplicity"))
                    .collect::<Result<_, _>>()?,
            };
            if per_point.insert(point, data).is_some() {
                return Err(CliError::schema(format!(
                    "point {point} listed twice in one profile"
                )));
            }
        }
        profiles.push(RamificationProfile::new(
            to_u64(&p.degree, "degree")?,
            per_point,
        )?);
    }
    Ok((config, profiles))
}

fn config_value(c: &ExponentConfig) -> Value {
    Value::Array(
        c.points()
            .iter()
            .map(|p| json!({"class": p.class_id, "vector": p.vector}))
            .collect(),
    )
}

fn trace_value(trace: &IterationTrace) -> Value {
    let status = match &trace.status {
        TraceStatus::AllPrimitive => json!({"kind": "all_primitive"}),
        TraceStatus::Exhausted => json!({"kind": "exhausted"}),
        TraceStatus::InvalidProfile { step, error } => {
            json!({"kind": "invalid_profile", "step": step, "error": error.to_string()})
        }
    };
    json!({
        "configs": trace.configs.iter().map(config_value).collect::<Vec<_>>(),
        "status": status,
        "steps": trace.configs.len() - 1,
        "u_sequence": trace.u_sequence,
    })
}

fn iterate_cmd(doc: &InputDocument, opts: &Options) -> Result<Report, CliError> {
    let (config, profiles) = config_from_section(doc)?;
    let trace = if opts.heuristic_gcd {
        if !profiles.is_empty() {
            return Err(CliError::schema(
                "--heuristic-gcd replaces `iteration.profiles`; remove them",
            ));
        }
        iteration::run_heuristic(&config, opts.max_steps)
    } else {
        iteration::run(&config, &profiles, opts.max_steps)
    };
    let mut result = trace_value(&trace);
    result["heuristic"] = opts.heuristic_gcd.into();
    let u = trace
        .u_sequence
        .iter()
        .map(|u| u.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let (summary, exit_code) = match &trace.status {
        TraceStatus::AllPrimitive => (format!("u = [{u}], all primitive"), EXIT_OK),
        TraceStatus::Exhausted => (format!("u = [{u}], profiles exhausted"), EXIT_OK),
        TraceStatus::InvalidProfile { step, error } => (
            format!("u = [{u}], invalid profile at step {step}: {error}"),
            EXIT_PRECONDITION,
        ),
    };
    let mut report = Report::new(Command::Iterate, result, summary, &[CITE_ITERATE]);
    report.exit_code = exit_code;
    Ok(report)
}
