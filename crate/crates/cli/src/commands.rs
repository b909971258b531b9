//! The checks behind each subcommand, generic over the ground field.

use dore::dcv::{
    check_dcv, check_trimmed_dcv, hom_to_iterated, iso_degree_check, relation_defect, search_dcv, CandidateShape, DcvError,
    RingSlot, ScalarSlot, Scope, SourceData, SourceTemplate, DEFAULT_CANDIDATE_CAP,
};
use dore::doubleore::{associated_graded, change_basis, check_associativity, check_compatibility, to_iterated, verify_iterated};
use dore::report::{Doc, ToReport, Value};
use dore::{DoubleOreAlgebra, ExtElement, Field, FieldKind, Fp, Q};
use thiserror::Error;

use crate::ast::{CheckKind, FieldDecl, Pos, SpecDocument};
use crate::error::SpecError;
use crate::parser::{parse_expr, parse_spec};
use crate::resolve::{resolve, ring_element, Model};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRequest {
    pub degree: u32,
    /// Scalars as written, e.g. `["0", "1", "-1/2"]`; every field element when empty.
    pub pool: Vec<String>,
    /// The dcv candidate whose source data is searched for; the target's own data otherwise.
    pub dcv: Option<String>,
    pub target: Option<String>,
    /// Source parameters to solve for: `p12`, `p11`, `tau0`, `tau1`, `tau2`.
    pub unknown: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    CheckExtension,
    CheckDcv,
    ToIterated,
    Graded,
    ChangeBasis,
    SearchDcv(SearchRequest),
}

impl Command {
    pub fn label(&self) -> &'static str {
        match self {
            Command::CheckExtension => "check-extension",
            Command::CheckDcv => "check-dcv",
            Command::ToIterated => "to-iterated",
            Command::Graded => "graded",
            Command::ChangeBasis => "change-basis",
            Command::SearchDcv(_) => "search-dcv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub max_degree: usize,
    pub scope: Scope,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_degree: 3, scope: Scope::Basis }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Cap(String),
}

/// A report plus the overall verdict of the directed checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub report: Value,
    pub passed: bool,
}

/// Primes the command line can dispatch to.
pub const SUPPORTED_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

macro_rules! by_prime {
    ($p:expr, $pos:expr, |$t:ident| $body:expr) => {
        match $p {
            2 => {
                type $t = Fp<2>;
                $body
            }
            3 => {
                type $t = Fp<3>;
                $body
            }
            5 => {
                type $t = Fp<5>;
                $body
            }
            7 => {
                type $t = Fp<7>;
                $body
            }
            11 => {
                type $t = Fp<11>;
                $body
            }
            13 => {
                type $t = Fp<13>;
                $body
            }
            17 => {
                type $t = Fp<17>;
                $body
            }
            19 => {
                type $t = Fp<19>;
                $body
            }
            23 => {
                type $t = Fp<23>;
                $body
            }
            29 => {
                type $t = Fp<29>;
                $body
            }
            31 => {
                type $t = Fp<31>;
                $body
            }
            37 => {
                type $t = Fp<37>;
                $body
            }
            41 => {
                type $t = Fp<41>;
                $body
            }
            43 => {
                type $t = Fp<43>;
                $body
            }
            47 => {
                type $t = Fp<47>;
                $body
            }
            p => Err(SpecError::invalid($pos, format!("F {p} is not supported; use Q or a prime below 50")).into()),
        }
    };
}

/// Parses, resolves and runs `cmd` on a spec document.
pub fn run_spec(text: &str, cmd: &Command, cfg: RunConfig) -> Result<CommandOutput, RunError> {
    let doc = parse_spec(text)?;
    run_document(&doc, cmd, cfg)
}

pub fn run_document(doc: &SpecDocument, cmd: &Command, cfg: RunConfig) -> Result<CommandOutput, RunError> {
    let field_pos = Pos { line: 1, col: 1 };
    match doc.field {
        FieldDecl::Rational => run_model::<Q>(&resolve(doc)?, cmd, cfg),
        FieldDecl::Prime(p) => by_prime!(p, field_pos, |F| run_model::<F>(&resolve::<F>(doc)?, cmd, cfg)),
    }
}

fn field_label<S: Field>() -> String {
    match S::kind() {
        FieldKind::Rational => "Q".into(),
        FieldKind::Prime(p) => format!("F{p}"),
    }
}

struct Subject {
    name: String,
    max_degree: usize,
    scope: Scope,
}

/// The directed subjects of `kind`, or every candidate subject when there is no directive.
fn subjects<S: Field>(model: &Model<S>, kind: CheckKind, cfg: RunConfig) -> Vec<Subject> {
    let directed: Vec<Subject> = model
        .checks
        .iter()
        .filter(|c| c.kind == kind)
        .map(|c| Subject {
            name: c.subject.clone(),
            max_degree: c.max_degree.unwrap_or(cfg.max_degree),
            scope: c.scope.unwrap_or(cfg.scope),
        })
        .collect();
    if !directed.is_empty() {
        return directed;
    }
    let names: Vec<String> = match kind {
        CheckKind::Dcv => model.dcvs.iter().map(|d| d.name.clone()).collect(),
        _ => model.extensions.iter().map(|e| e.name.clone()).collect(),
    };
    names.into_iter().map(|name| Subject { name, max_degree: cfg.max_degree, scope: cfg.scope }).collect()
}

fn run_model<S: Field>(model: &Model<S>, cmd: &Command, cfg: RunConfig) -> Result<CommandOutput, RunError> {
    let results: Vec<(Doc, bool)> = match cmd {
        Command::CheckExtension => each(model, CheckKind::Extension, cfg, check_extension),
        Command::CheckDcv => each(model, CheckKind::Dcv, cfg, check_candidate),
        Command::ToIterated => each(model, CheckKind::Iterated, cfg, iterated),
        Command::Graded => each(model, CheckKind::Graded, cfg, graded),
        Command::ChangeBasis => each(model, CheckKind::Basis, cfg, basis),
        Command::SearchDcv(req) => vec![search(model, req, cfg)?],
    };
    let passed = !results.is_empty() && results.iter().all(|(_, ok)| *ok);
    let docs: Vec<Doc> = results.into_iter().map(|(d, _)| d).collect();
    let report = Doc::new()
        .with("command", cmd.label())
        .with("field", field_label::<S>())
        .with("ring", model.ring_name.clone())
        .with("passed", passed)
        .with("checks", docs);
    Ok(CommandOutput { report: report.into(), passed })
}

fn each<S: Field>(
    model: &Model<S>,
    kind: CheckKind,
    cfg: RunConfig,
    f: fn(&Model<S>, &Subject) -> (Doc, bool),
) -> Vec<(Doc, bool)> {
    subjects(model, kind, cfg).iter().map(|s| f(model, s)).collect()
}

fn head(kind: &str, s: &Subject) -> Doc {
    Doc::new().with("check", kind).with("subject", s.name.clone()).with("max_degree", s.max_degree)
}

fn algebra_doc<S: Field>(alg: &DoubleOreAlgebra<S>) -> Doc {
    let ring = alg.ring();
    let names = ring.names();
    let images = |v: Vec<dore::RingElement<S>>| -> Vec<String> {
        v.iter().zip(names).map(|(r, n)| format!("{n} -> {}", ring.render(r))).collect()
    };
    let mut d = Doc::new().with("p12", alg.p12().to_string()).with("p11", alg.p11().to_string());
    for (k, t) in alg.taus().iter().enumerate() {
        d.push(&format!("tau{k}"), ring.render(t));
    }
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        d.push(&format!("sigma{}{}", i + 1, j + 1), images(alg.sigma().component_images(i, j)));
    }
    for i in 0..2 {
        d.push(&format!("delta{}", i + 1), images(alg.delta().component_images(i)));
    }
    d
}

fn check_extension<S: Field>(model: &Model<S>, s: &Subject) -> (Doc, bool) {
    let ext = model.extension(&s.name).expect("subjects are resolved");
    let built = ext.data.build(s.max_degree.max(1));
    let compat = check_compatibility(&ext.arith, s.max_degree);
    let assoc = check_associativity(&ext.arith, s.max_degree);
    let passed = built.is_ok() && compat.passed() && assoc.passed();
    let build = Doc::new().with("passed", built.is_ok()).with("error", built.err().map(|e| e.to_string()));
    let d = head("extension", s)
        .with("passed", passed)
        .with("build", build)
        .with("compatibility", compat.to_report())
        .with("associativity", assoc.to_report());
    (d, passed)
}

/// Scalar coefficients `a_i` of `q = sum a_i v^i` along one variable, if `q` has that form.
fn scalar_profile<S: Field>(q: &ExtElement<S>, first: bool) -> Option<Vec<S>> {
    let mut out = Vec::new();
    for (e, r) in q.terms() {
        let (k, other) = if first { (e.i, e.j) } else { (e.j, e.i) };
        if other != 0 {
            return None;
        }
        let k = k as usize;
        out.resize(out.len().max(k + 1), S::zero());
        out[k] = r.as_scalar()?;
    }
    Some(out)
}

fn error_doc(e: &DcvError) -> Doc {
    Doc::new().with("passed", false).with("error", e.to_string())
}

fn check_candidate<S: Field>(model: &Model<S>, s: &Subject) -> (Doc, bool) {
    let dcv = model.dcv(&s.name).expect("subjects are resolved");
    let target = &model.extensions[dcv.target];
    let c = &dcv.matrix;
    let mut d = head("dcv", s).with("target", target.name.clone()).with("scope", s.scope.label());
    let names = model.names();
    d.push("q1", c.q1.render(names));
    d.push("q2", c.q2.render(names));
    let mut passed = match check_dcv(c, &target.arith, s.scope, s.max_degree) {
        Ok(cert) => {
            d.push("certificate", cert.to_report());
            cert.passed()
        }
        Err(e) => {
            d.push("certificate", error_doc(&e));
            false
        }
    };
    let profiles = (scalar_profile(&c.q1, true), scalar_profile(&c.q2, false));
    if let (Some(a), Some(b)) = profiles {
        if c.source.is_trimmed() && target.arith.is_trimmed() {
            match check_trimmed_dcv(&c.source, &target.arith, &a, &b, s.max_degree) {
                Ok(t) => {
                    passed &= t.agree();
                    d.push("trimmed", t.to_report());
                }
                Err(e) => d.push("trimmed", error_doc(&e)),
            }
        }
    }
    d.push("iso_degree", iso_degree_check(c).to_report());
    d.push("passed", passed);
    (d, passed)
}

fn iterated<S: Field>(model: &Model<S>, s: &Subject) -> (Doc, bool) {
    if let Some(dcv) = model.dcv(&s.name) {
        let target = &model.extensions[dcv.target];
        let d = head("hom-to-iterated", s).with("target", target.name.clone());
        return match hom_to_iterated(&dcv.matrix, &target.arith, s.scope, s.max_degree) {
            Ok(r) => {
                let ok = r.passed();
                (d.with("passed", ok).with("translation", r.to_report()), ok)
            }
            Err(e) => (d.with("passed", false).with("translation", error_doc(&e)), false),
        };
    }
    let ext = model.extension(&s.name).expect("subjects are resolved");
    let out = to_iterated(&ext.arith);
    let verified: Vec<Doc> = out
        .presentations
        .iter()
        .map(|p| {
            let r = verify_iterated(&ext.arith, p, s.max_degree);
            Doc::new().with("order", p.order.label()).with("products", r.to_report())
        })
        .collect();
    let ok =
        !out.presentations.is_empty() && out.presentations.iter().all(|p| verify_iterated(&ext.arith, p, s.max_degree).passed());
    let d = head("iterated", s).with("passed", ok).with("outcome", out.to_report()).with("verification", verified);
    (d, ok)
}

fn graded<S: Field>(model: &Model<S>, s: &Subject) -> (Doc, bool) {
    let ext = model.extension(&s.name).expect("subjects are resolved");
    let d = head("graded", s);
    match associated_graded(&ext.arith) {
        Ok(g) => {
            let compat = check_compatibility(&g, s.max_degree);
            let ok = compat.passed();
            (d.with("passed", ok).with("graded", algebra_doc(&g)).with("compatibility", compat.to_report()), ok)
        }
        Err(e) => (d.with("passed", false).with("error", e.to_string()), false),
    }
}

fn basis<S: Field>(model: &Model<S>, s: &Subject) -> (Doc, bool) {
    let ext = model.extension(&s.name).expect("subjects are resolved");
    let d = head("change-basis", s);
    match change_basis(&ext.arith) {
        Ok((new, change)) => {
            let compat = check_compatibility(&new, s.max_degree);
            let (z1, z2) = change.new_generators(&ext.arith);
            let defect = relation_defect(&ext.arith, &z1, &z2, &SourceData::from_algebra(&new));
            let recovers = defect.is_zero();
            let ok = compat.passed() && recovers;
            let names = model.names();
            let d = d
                .with("passed", ok)
                .with("case", format!("{:?}", change.case).to_lowercase())
                .with("new_y1", z1.render(names))
                .with("new_y2", z2.render(names))
                .with("algebra", algebra_doc(&new))
                .with("compatibility", compat.to_report())
                .with("recovers_old_relation", recovers);
            (d, ok)
        }
        Err(e) => (d.with("passed", false).with("error", e.to_string()), false),
    }
}

fn search<S: Field>(model: &Model<S>, req: &SearchRequest, cfg: RunConfig) -> Result<(Doc, bool), RunError> {
    let at = Pos { line: 1, col: 1 };
    let invalid = |m: String| RunError::Spec(SpecError::invalid(at, m));
    let dcv = match &req.dcv {
        Some(n) => Some(model.dcv(n).ok_or_else(|| invalid(format!("unknown dcv `{n}`")))?),
        None => model.dcvs.first(),
    };
    let target_name = match (&req.target, dcv) {
        (Some(t), _) => t.clone(),
        (None, Some(d)) => model.extensions[d.target].name.clone(),
        (None, None) => model.extensions.first().ok_or_else(|| invalid("no extension declared".into()))?.name.clone(),
    };
    let target = model.extension(&target_name).ok_or_else(|| invalid(format!("unknown extension `{target_name}`")))?;
    let source = dcv.map_or_else(|| target.data.clone(), |d| d.matrix.source.clone());
    let mut template = SourceTemplate::fixed(&source);
    for u in &req.unknown {
        match u.as_str() {
            "p12" => template.p12 = ScalarSlot::Unknown,
            "p11" => template.p11 = ScalarSlot::Unknown,
            "tau0" => template.tau[0] = RingSlot::Unknown,
            "tau1" => template.tau[1] = RingSlot::Unknown,
            "tau2" => template.tau[2] = RingSlot::Unknown,
            other => return Err(invalid(format!("unknown parameter `{other}`; expected p12, p11, tau0, tau1 or tau2"))),
        }
    }
    let pool: Vec<S> = if req.pool.is_empty() {
        S::elements().ok_or_else(|| invalid("an explicit --pool is required over Q".into()))?
    } else {
        let mut out = Vec::new();
        for p in &req.pool {
            let e = parse_expr(p)?;
            let r = ring_element(&model.ring, &e, at)?;
            let v = r.as_scalar().ok_or_else(|| invalid(format!("pool entry `{p}` is not a scalar")))?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    };
    let shape = CandidateShape::full(req.degree);
    let out =
        search_dcv(&template, &target.arith, &shape, &pool, cfg.max_degree, DEFAULT_CANDIDATE_CAP).map_err(|e| match e {
            DcvError::PoolTooLarge { .. } | DcvError::DegreeBound(_) => RunError::Cap(e.to_string()),
            other => invalid(other.to_string()),
        })?;
    let found = !out.hits.is_empty();
    let d = Doc::new()
        .with("check", "search-dcv")
        .with("target", target.name.clone())
        .with("degree", req.degree as usize)
        .with("pool", pool.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        .with("unknown", req.unknown.clone())
        .with("passed", found)
        .with("outcome", out.to_report());
    Ok((d, found))
}
