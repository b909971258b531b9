//! Executable fixtures for the worked algebras and morphisms, and a verifier that
//! replays every check against the recorded verdicts.

mod algebras;
mod fixtures;
mod tables;
#[cfg(test)]
mod tests;

use rayon::prelude::*;
use thiserror::Error;

use crate::dcv::{check_dcv, check_trimmed_dcv, hom_to_iterated, iso_degree_check, DcvMatrix, Scope, SourceData};
use crate::doubleore::{check_associativity, check_compatibility, to_iterated, verify_iterated, AlgebraError, DoubleOreAlgebra};
use crate::exactfield::{Field, FieldKind};
use crate::report::{Doc, ToReport, Value};
use crate::ringmaps::MapError;
use crate::{F13, F3, F5, Q};

pub use algebras::*;
pub use fixtures::{corrupted_h, d_to_e_source, pin_n_reading, scaled_generators, NPin};
pub use tables::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("illegal parameters: {0}")]
    Parameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A check the verifier can replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// The (source) extension data pass the well-definedness gate.
    Build,
    Compatibility,
    Associativity,
    /// Some iterated presentation exists and reproduces every product.
    Iterated,
    Dcv,
    /// Both sides of the trimmed characterization agree.
    TrimmedAgree,
    IsoDegree,
    HomToIterated,
}

impl Check {
    pub fn label(&self) -> &'static str {
        match self {
            Check::Build => "build",
            Check::Compatibility => "compatibility",
            Check::Associativity => "associativity",
            Check::Iterated => "iterated",
            Check::Dcv => "dcv",
            Check::TrimmedAgree => "trimmed-agree",
            Check::IsoDegree => "iso-degree",
            Check::HomToIterated => "hom-to-iterated",
        }
    }
}

/// Expected verdict of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
    /// Fails once the degree bound reaches the given value; passes vacuously below.
    FailFrom(usize),
}

impl Expect {
    pub fn verdict_at(&self, max_degree: usize) -> bool {
        match self {
            Expect::Pass => true,
            Expect::Fail => false,
            Expect::FailFrom(d) => max_degree < *d,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DcvSetup<S: Field> {
    pub matrix: DcvMatrix<S>,
    pub scope: Scope,
    /// `(a, b)` with `q1 = sum a_i y1^i`, `q2 = sum b_j y2^j`, for trimmed fixtures.
    pub trimmed: Option<(Vec<S>, Vec<S>)>,
}

/// The algebra a fixture is about (the target, for morphism fixtures).
#[derive(Clone, Debug)]
pub struct FixtureData<S: Field> {
    pub algebra: DoubleOreAlgebra<S>,
    pub dcv: Option<DcvSetup<S>>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Q(FixtureData<Q>),
    F3(FixtureData<F3>),
    F5(FixtureData<F5>),
    F13(FixtureData<F13>),
}

macro_rules! instance_from {
    ($($v:ident),*) => {$(
        impl From<FixtureData<$v>> for Instance {
            fn from(d: FixtureData<$v>) -> Self {
                Instance::$v(d)
            }
        }
    )*};
}
instance_from!(Q, F3, F5, F13);

impl Instance {
    pub fn field(&self) -> FieldKind {
        match self {
            Instance::Q(_) => Q::kind(),
            Instance::F3(_) => F3::kind(),
            Instance::F5(_) => F5::kind(),
            Instance::F13(_) => F13::kind(),
        }
    }

    fn run(&self, check: Check, max_degree: usize) -> (bool, Option<String>) {
        match self {
            Instance::Q(d) => d.run(check, max_degree),
            Instance::F3(d) => d.run(check, max_degree),
            Instance::F5(d) => d.run(check, max_degree),
            Instance::F13(d) => d.run(check, max_degree),
        }
    }
}

impl<S: Field> FixtureData<S> {
    /// Verdict plus a short explanation when it is a failure.
    fn run(&self, check: Check, d: usize) -> (bool, Option<String>) {
        let alg = &self.algebra;
        let dcv = self.dcv.as_ref();
        let missing = || (false, Some("no dcv data".to_string()));
        match check {
            Check::Build => {
                let src = dcv.map_or_else(|| SourceData::from_algebra(alg), |s| s.matrix.source.clone());
                match src.build(d) {
                    Ok(_) => (true, None),
                    Err(e) => (false, Some(e.to_string())),
                }
            }
            Check::Compatibility => {
                let r = check_compatibility(alg, d);
                (r.passed(), (!r.passed()).then(|| format!("failed: {}", r.failed_names().join(", "))))
            }
            Check::Associativity => {
                let r = check_associativity(alg, d);
                (r.passed(), r.failure.map(|(a, b, c)| format!("({a})({b})({c})")))
            }
            Check::Iterated => {
                let out = to_iterated(alg);
                if out.presentations.is_empty() {
                    return (false, Some(format!("absent: {}", out.failure_conditions().join(", "))));
                }
                let bad = out.presentations.iter().find(|p| !verify_iterated(alg, p, d).passed());
                (bad.is_none(), bad.map(|p| format!("{} products disagree", p.order.label())))
            }
            Check::Dcv => match dcv {
                None => missing(),
                Some(s) => match check_dcv(&s.matrix, alg, s.scope, d) {
                    Err(e) => (false, Some(e.to_string())),
                    Ok(c) => {
                        let words: Vec<_> = c.words.iter().filter(|w| !w.passed).map(|w| w.word.clone()).collect();
                        let why = match (&c.relation_defect, words.is_empty()) {
                            (Some(def), _) => Some(format!("relation defect {def}")),
                            (None, false) => Some(format!("commutation fails at {}", words.join(", "))),
                            (None, true) => None,
                        };
                        (c.passed(), why)
                    }
                },
            },
            Check::TrimmedAgree => match dcv.and_then(|s| s.trimmed.as_ref().map(|t| (s, t))) {
                None => missing(),
                Some((s, (a, b))) => match check_trimmed_dcv(&s.matrix.source, alg, a, b, d) {
                    Err(e) => (false, Some(e.to_string())),
                    Ok(r) => {
                        (r.agree(), (!r.agree()).then(|| format!("dcv side {}, criterion side {}", r.left.passed(), r.right())))
                    }
                },
            },
            Check::IsoDegree => match dcv {
                None => missing(),
                Some(s) => {
                    let r = iso_degree_check(&s.matrix);
                    let show = |x: Option<u32>| x.map_or("-inf".to_string(), |v| v.to_string());
                    (r.passed(), (!r.passed()).then(|| format!("degrees ({}, {})", show(r.degree_q1), show(r.degree_q2))))
                }
            },
            Check::HomToIterated => match dcv {
                None => missing(),
                Some(s) => match hom_to_iterated(&s.matrix, alg, s.scope, d) {
                    Err(e) => (false, Some(e.to_string())),
                    Ok(r) => (r.passed(), (!r.passed()).then(|| format!("violated: {}", r.violated().join("; ")))),
                },
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub citation: String,
    pub notes: Vec<String>,
    pub expected: Vec<(Check, Expect)>,
    pub instance: Instance,
}

impl Fixture {
    pub fn expectation(&self, check: Check) -> Option<Expect> {
        self.expected.iter().find(|(c, _)| *c == check).map(|(_, e)| *e)
    }

    /// Replays every check with a recorded expectation.
    pub fn verify(&self, max_degree: usize) -> FixtureReport {
        let outcomes = self
            .expected
            .iter()
            .map(|(check, exp)| {
                let (actual, detail) = self.instance.run(*check, max_degree);
                CheckOutcome { check: *check, expected: exp.verdict_at(max_degree), actual, detail }
            })
            .collect();
        FixtureReport {
            name: self.name.clone(),
            field: self.instance.field(),
            citation: self.citation.clone(),
            notes: self.notes.clone(),
            outcomes,
        }
    }
}

/// Names of every registered fixture, in report order.
pub fn fixture_names() -> Vec<&'static str> {
    fixtures::REGISTRY.iter().map(|(n, _)| *n).collect()
}

pub fn get_fixture(name: &str) -> Result<Fixture, CatalogError> {
    let (_, build) =
        fixtures::REGISTRY.iter().find(|(n, _)| *n == name).ok_or_else(|| CatalogError::UnknownFixture(name.to_string()))?;
    build()
}

pub fn all_fixtures() -> Result<Vec<Fixture>, CatalogError> {
    fixtures::REGISTRY.par_iter().map(|(_, b)| b()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub expected: bool,
    pub actual: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn matched(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub field: FieldKind,
    pub citation: String,
    pub notes: Vec<String>,
    pub outcomes: Vec<CheckOutcome>,
}

impl FixtureReport {
    pub fn matched(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::matched)
    }
}

impl ToReport for FixtureReport {
    fn to_report(&self) -> Doc {
        let checks: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut d = Doc::new()
                    .with("check", o.check.label())
                    .with("expected", o.expected)
                    .with("actual", o.actual)
                    .with("matched", o.matched());
                if let Some(why) = &o.detail {
                    d.push("detail", why.clone());
                }
                d.into()
            })
            .collect();
        Doc::new()
            .with("fixture", self.name.clone())
            .with("field", self.field.to_string())
            .with("citation", self.citation.clone())
            .with("notes", self.notes.clone())
            .with("matched", self.matched())
            .with("checks", Value::List(checks))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    pub max_degree: usize,
    pub fixtures: Vec<FixtureReport>,
}

impl CatalogReport {
    /// Number of fixtures with at least one unexpected verdict.
    pub fn mismatches(&self) -> usize {
        self.fixtures.iter().filter(|f| !f.matched()).count()
    }

    pub fn passed(&self) -> bool {
        self.mismatches() == 0
    }
}

impl ToReport for CatalogReport {
    fn to_report(&self) -> Doc {
        let checks: usize = self.fixtures.iter().map(|f| f.outcomes.len()).sum();
        let mismatched: Vec<String> = self.fixtures.iter().filter(|f| !f.matched()).map(|f| f.name.clone()).collect();
        Doc::new()
            .with("check", "catalog")
            .with("max_degree", self.max_degree)
            .with("fixtures", Value::List(self.fixtures.iter().map(|f| f.to_report().into()).collect()))
            .with(
                "summary",
                Doc::new()
                    .with("fixtures", self.fixtures.len())
                    .with("checks", checks)
                    .with("mismatches", self.mismatches())
                    .with("mismatched", mismatched)
                    .with("passed", self.passed()),
            )
    }
}

/// Replays the given fixtures in parallel; reports keep the input order.
pub fn verify_fixtures(fixtures: &[Fixture], max_degree: usize) -> CatalogReport {
    let fixtures = fixtures.par_iter().map(|f| f.verify(max_degree)).collect();
    CatalogReport { max_degree, fixtures }
}

/// Builds and replays every registered fixture.
pub fn verify_all(max_degree: usize) -> Result<CatalogReport, CatalogError> {
    Ok(verify_fixtures(&all_fixtures()?, max_degree))
}
