//! Double change-of-variable (dcv) matrices between right double extensions over a shared
//! ring, and the homomorphisms they induce.
//!
//! A column `(q1, q2)` in the target `B` is a dcv-matrix for source data
//! `(sigma', delta', P', tau')` when
//! `q2 q1 = p'12 q1 q2 + p'11 q1^2 + tau'1 q1 + tau'2 q2 + tau'0` and
//! `[q1; q2] r = sigma'(r) [q1; q2] + delta'(r)` for all `r` in `R`.

mod search;
mod structure;
mod translate;
mod trimmed;

use std::sync::Arc;

use thiserror::Error;

use crate::doubleore::{check_compatibility, AlgebraError, DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::{solve_linear, Field, ScalarMatrix};
use crate::presring::{PresentedRing, RingElement, Word};
use crate::report::{Doc, ToReport, Value};
use crate::ringmaps::{check_well_defined, DeltaColumn, SigmaMatrix};

pub use search::{
    candidate_count, search_dcv, CandidateShape, MapDeriver, MapRule, RingSlot, ScalarSlot, SearchHit, SearchOutcome, SlotKind,
    SourceTemplate, DEFAULT_CANDIDATE_CAP,
};
pub use structure::{check_semi_invariant, decompose_semi_invariant, DecompositionReport, SemiInvariantReport};
pub use translate::{hom_to_iterated, HomIteratedReport};
pub use trimmed::{check_trimmed_dcv, TrimmedReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcvError {
    #[error("source and target are defined over different rings")]
    RingMismatch,
    #[error("source algebra cannot be built: {0}")]
    SourceNotBuildable(String),
    #[error("decomposition does not reproduce the candidate: {0}")]
    DecompositionMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("candidate space has {size} elements, above the cap {cap}")]
    PoolTooLarge { size: u128, cap: u128 },
    #[error("degree bound {0} is above the supported maximum 2")]
    DegreeBound(u32),
}

/// Which ring elements `r` the commutation rule is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// `r` in the ground field only.
    Scalars,
    /// `r` in `{1} ∪ generators`.
    Generators,
    /// All basis words up to the degree bound.
    Basis,
}

impl Scope {
    pub fn label(&self) -> &'static str {
        match self {
            Scope::Scalars => "scalars",
            Scope::Generators => "generators",
            Scope::Basis => "basis",
        }
    }

    pub fn words<S: Field>(&self, ring: &PresentedRing<S>, max_degree: usize) -> Vec<Word> {
        match self {
            Scope::Scalars => vec![Word::unit()],
            Scope::Generators => std::iter::once(Word::unit()).chain((0..ring.num_gens() as u16).map(Word::generator)).collect(),
            Scope::Basis => ring.basis(max_degree),
        }
    }
}

impl std::str::FromStr for Scope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "scalars" => Ok(Scope::Scalars),
            "generators" => Ok(Scope::Generators),
            "basis" => Ok(Scope::Basis),
            other => Err(format!("unknown scope `{other}`")),
        }
    }
}

/// Defining data `(sigma', delta', P', tau')` of the source extension.
#[derive(Clone, Debug)]
pub struct SourceData<S: Field> {
    pub sigma: SigmaMatrix<S>,
    pub delta: DeltaColumn<S>,
    pub p12: S,
    pub p11: S,
    /// `[tau'0, tau'1, tau'2]`.
    pub tau: [RingElement<S>; 3],
}

impl<S: Field> SourceData<S> {
    pub fn new(sigma: &SigmaMatrix<S>, delta: &DeltaColumn<S>, p12: S, p11: S, tau: [RingElement<S>; 3]) -> Self {
        SourceData { sigma: sigma.clone(), delta: delta.clone(), p12, p11, tau }
    }

    /// Zero delta and tail.
    pub fn trimmed(sigma: &SigmaMatrix<S>, p12: S, p11: S) -> Self {
        let z = RingElement::zero;
        Self::new(sigma, &DeltaColumn::zero(sigma), p12, p11, [z(), z(), z()])
    }

    pub fn from_algebra(alg: &DoubleOreAlgebra<S>) -> Self {
        Self::new(alg.sigma(), alg.delta(), alg.p12().clone(), alg.p11().clone(), alg.taus().clone())
    }

    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.sigma.ring()
    }

    pub fn is_trimmed(&self) -> bool {
        self.delta.is_zero() && self.tau.iter().all(RingElement::is_zero)
    }

    pub fn with_tau(&self, k: usize, t: RingElement<S>) -> Self {
        let mut out = self.clone();
        out.tau[k] = t;
        out
    }

    /// Builds `B'` when sigma' and delta' are well defined at `bound`.
    pub fn build(&self, bound: usize) -> Result<DoubleOreAlgebra<S>, DcvError> {
        let ring = self.ring().clone();
        DoubleOreAlgebra::new(&ring, &self.sigma, &self.delta, self.p12.clone(), self.p11.clone(), self.tau.clone(), bound)
            .map_err(|e: AlgebraError| DcvError::SourceNotBuildable(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct DcvMatrix<S: Field> {
    pub q1: ExtElement<S>,
    pub q2: ExtElement<S>,
    pub source: SourceData<S>,
}

impl<S: Field> DcvMatrix<S> {
    pub fn new(q1: ExtElement<S>, q2: ExtElement<S>, source: SourceData<S>) -> Self {
        DcvMatrix { q1, q2, source }
    }

    fn check_ring(&self, target: &DoubleOreAlgebra<S>) -> Result<(), DcvError> {
        if !Arc::ptr_eq(self.source.ring(), target.ring()) {
            return Err(DcvError::RingMismatch);
        }
        target.check(&self.q1).and_then(|_| target.check(&self.q2)).map_err(|_| DcvError::RingMismatch)
    }
}

/// `q2 q1 - (p'12 q1 q2 + p'11 q1^2 + tau'1 q1 + tau'2 q2 + tau'0)`.
pub fn relation_defect<S: Field>(
    target: &DoubleOreAlgebra<S>,
    q1: &ExtElement<S>,
    q2: &ExtElement<S>,
    src: &SourceData<S>,
) -> ExtElement<S> {
    let rhs = target.mul(q1, q2).scale(&src.p12)
        + target.mul(q1, q1).scale(&src.p11)
        + target.ring_times(&src.tau[1], q1)
        + target.ring_times(&src.tau[2], q2)
        + ExtElement::from_ring(src.tau[0].clone());
    target.mul(q2, q1) - rhs
}

/// Both rows of `[q1; q2] r - sigma'(r) [q1; q2] - delta'(r)`.
pub(crate) fn commutation_defect<S: Field>(
    target: &DoubleOreAlgebra<S>,
    q: [&ExtElement<S>; 2],
    sigma: &SigmaMatrix<S>,
    delta: &DeltaColumn<S>,
    r: &RingElement<S>,
) -> [ExtElement<S>; 2] {
    let re = ExtElement::from_ring(r.clone());
    let s = sigma.apply(r);
    let d = delta.apply(r);
    let row = |i: usize| {
        let rhs =
            target.ring_times(s.get(i, 0), q[0]) + target.ring_times(s.get(i, 1), q[1]) + ExtElement::from_ring(d.get(i).clone());
        target.mul(q[i], &re) - rhs
    };
    [row(0), row(1)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordVerdict {
    pub word: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcvCertificate {
    pub scope: Scope,
    pub max_degree: usize,
    pub relation_passed: bool,
    /// Rendered `q2 q1 - (...)` when nonzero.
    pub relation_defect: Option<String>,
    pub words: Vec<WordVerdict>,
}

impl DcvCertificate {
    pub fn commutation_passed(&self) -> bool {
        self.words.iter().all(|w| w.passed)
    }

    pub fn passed(&self) -> bool {
        self.relation_passed && self.commutation_passed()
    }
}

impl ToReport for DcvCertificate {
    fn to_report(&self) -> Doc {
        let words: Vec<Value> =
            self.words.iter().map(|w| Doc::new().with("r", w.word.clone()).with("passed", w.passed).into()).collect();
        let mut rel = Doc::new().with("passed", self.relation_passed);
        if let Some(d) = &self.relation_defect {
            rel.push("defect", d.clone());
        }
        Doc::new()
            .with("check", "dcv")
            .with("scope", self.scope.label())
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("relation", rel)
            .with("commutation", Doc::new().with("passed", self.commutation_passed()).with("words", Value::List(words)))
    }
}

/// Verifies the `q2 q1` relation exactly and the commutation rule on the words of `scope`.
pub fn check_dcv<S: Field>(
    c: &DcvMatrix<S>,
    target: &DoubleOreAlgebra<S>,
    scope: Scope,
    max_degree: usize,
) -> Result<DcvCertificate, DcvError> {
    c.check_ring(target)?;
    let defect = relation_defect(target, &c.q1, &c.q2, &c.source);
    let ring = target.ring();
    let words = scope
        .words(ring, max_degree)
        .into_iter()
        .map(|w| {
            let r = RingElement::monomial(w.clone(), S::one());
            let d = commutation_defect(target, [&c.q1, &c.q2], &c.source.sigma, &c.source.delta, &r);
            WordVerdict { word: ring.render_word(&w), passed: d.iter().all(ExtElement::is_zero) }
        })
        .collect();
    Ok(DcvCertificate {
        scope,
        max_degree,
        relation_passed: defect.is_zero(),
        relation_defect: (!defect.is_zero()).then(|| target.render(&defect)),
        words,
    })
}

/// `phi(sum a_ij y'1^i y'2^j) = sum a_ij q1^i q2^j`; the argument is read in source
/// left-normal form.
pub fn induced_hom_apply<S: Field>(
    c: &DcvMatrix<S>,
    source_elt: &ExtElement<S>,
    target: &DoubleOreAlgebra<S>,
) -> Result<ExtElement<S>, DcvError> {
    c.check_ring(target)?;
    let mut out = ExtElement::zero();
    for (e, a) in source_elt.terms() {
        let m = target.mul(&target.pow(&c.q1, e.i), &target.pow(&c.q2, e.j));
        out = out + target.ring_times(a, &m);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub sample_degree: usize,
    pub source_compatible: bool,
    pub pairs: usize,
    /// `(u, v, phi(uv), phi(u) phi(v))` for the first failing pair.
    pub failure: Option<[String; 4]>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl ToReport for HomReport {
    fn to_report(&self) -> Doc {
        let mut d = Doc::new()
            .with("check", "hom-multiplicative")
            .with("sample_degree", self.sample_degree)
            .with("passed", self.passed())
            .with("source_compatible", self.source_compatible)
            .with("pairs", self.pairs);
        if let Some(f) = &self.failure {
            d.push(
                "counterexample",
                Doc::new()
                    .with("u", f[0].clone())
                    .with("v", f[1].clone())
                    .with("phi_uv", f[2].clone())
                    .with("phi_u_phi_v", f[3].clone()),
            );
        }
        d
    }
}

/// Checks `phi(uv) = phi(u) phi(v)` for sampled source monomials, with `uv` normalized in
/// the source algebra.
pub fn check_hom_multiplicative<S: Field>(
    c: &DcvMatrix<S>,
    target: &DoubleOreAlgebra<S>,
    sample_degree: usize,
) -> Result<HomReport, DcvError> {
    use rayon::prelude::*;
    c.check_ring(target)?;
    let source = c.source.build(sample_degree.max(1))?;
    let source_compatible = check_compatibility(&source, sample_degree).passed();
    let els = crate::doubleore::sample_elements(&source, sample_degree);
    let n = els.len();
    let images: Vec<ExtElement<S>> = els.iter().map(|e| induced_hom_apply(c, e, target)).collect::<Result<_, _>>()?;
    let failure = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (k / n, k % n);
            let lhs = induced_hom_apply(c, &source.mul(&els[a], &els[b]), target).expect("ring checked");
            let rhs = target.mul(&images[a], &images[b]);
            (lhs != rhs).then(|| [source.render(&els[a]), source.render(&els[b]), target.render(&lhs), target.render(&rhs)])
        })
        .find_first(Option::is_some)
        .flatten();
    Ok(HomReport { sample_degree, source_compatible, pairs: n * n, failure })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDegreeReport {
    pub degree_q1: Option<u32>,
    pub degree_q2: Option<u32>,
    pub degree_y1_of_q1: Option<u32>,
    pub degree_y2_of_q2: Option<u32>,
}

impl IsoDegreeReport {
    /// Both `q1` and `q2` have degree one in the indeterminates.
    pub fn passed(&self) -> bool {
        self.degree_q1 == Some(1) && self.degree_q2 == Some(1)
    }
}

impl ToReport for IsoDegreeReport {
    fn to_report(&self) -> Doc {
        let show = |d: Option<u32>| d.map_or_else(|| "-inf".to_string(), |d| d.to_string());
        Doc::new()
            .with("check", "iso-degree")
            .with("passed", self.passed())
            .with("deg_q1", show(self.degree_q1))
            .with("deg_q2", show(self.degree_q2))
            .with("deg_y1_q1", show(self.degree_y1_of_q1))
            .with("deg_y2_q2", show(self.degree_y2_of_q2))
    }
}

/// Necessary degree condition for the induced map to be an isomorphism.
pub fn iso_degree_check<S: Field>(c: &DcvMatrix<S>) -> IsoDegreeReport {
    IsoDegreeReport {
        degree_q1: c.q1.degree(),
        degree_q2: c.q2.degree(),
        degree_y1_of_q1: c.q1.degree_y1(),
        degree_y2_of_q2: c.q2.degree_y2(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub max_degree: usize,
    pub spanning_set: usize,
    pub y1_reached: bool,
    pub y2_reached: bool,
    /// `y_k = sum c_m phi(m)` with the nonzero `c_m`, when found.
    pub witnesses: Vec<String>,
}

impl SurjectivityReport {
    pub fn passed(&self) -> bool {
        self.y1_reached && self.y2_reached
    }
}

impl ToReport for SurjectivityReport {
    fn to_report(&self) -> Doc {
        Doc::new()
            .with("check", "bounded-surjectivity")
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("spanning_set", self.spanning_set)
            .with("y1_reached", self.y1_reached)
            .with("y2_reached", self.y2_reached)
            .with("witnesses", self.witnesses.clone())
    }
}

/// Solves for `y1` and `y2` in the span of `phi(w y'1^i y'2^j)` with `i + j` and `|w|`
/// at most `max_degree`.
pub fn bounded_surjectivity<S: Field>(
    c: &DcvMatrix<S>,
    target: &DoubleOreAlgebra<S>,
    max_degree: usize,
) -> Result<SurjectivityReport, DcvError> {
    c.check_ring(target)?;
    let ring = target.ring();
    let mut monos = Vec::new();
    let mut images = Vec::new();
    for e in Exponent::up_to(max_degree as u32) {
        for w in ring.basis(max_degree) {
            let m = ExtElement::monomial(e.i, e.j, RingElement::monomial(w, S::one()));
            images.push(induced_hom_apply(c, &m, target)?);
            monos.push(m);
        }
    }
    let goals = [target.y1(), target.y2()];
    let mut coords: std::collections::BTreeMap<(Exponent, Word), usize> = Default::default();
    for el in images.iter().chain(goals.iter()) {
        for (e, r) in el.terms() {
            for (w, _) in r.terms() {
                let n = coords.len();
                coords.entry((*e, w.clone())).or_insert(n);
            }
        }
    }
    let fill = |els: &[ExtElement<S>]| {
        let mut m = ScalarMatrix::zeros(coords.len(), els.len());
        for (col, el) in els.iter().enumerate() {
            for (e, r) in el.terms() {
                for (w, c) in r.terms() {
                    m.set(coords[&(*e, w.clone())], col, c.clone());
                }
            }
        }
        m
    };
    let a = fill(&images);
    let mut reached = [false, false];
    let mut witnesses = Vec::new();
    for (k, g) in goals.iter().enumerate() {
        let sol = solve_linear(&a, &fill(std::slice::from_ref(g))).expect("row counts agree");
        if let Some(x) = sol.solution {
            reached[k] = true;
            let terms: Vec<String> = (0..monos.len())
                .filter(|&i| !x.get(i, 0).is_zero())
                .map(|i| format!("{} * phi({})", x.get(i, 0), render_source(&monos[i], ring.names())))
                .collect();
            witnesses.push(format!("y{} = {}", k + 1, terms.join(" + ")));
        }
    }
    Ok(SurjectivityReport { max_degree, spanning_set: monos.len(), y1_reached: reached[0], y2_reached: reached[1], witnesses })
}

/// Source elements print with primed variables.
pub fn render_source<S: Field>(e: &ExtElement<S>, names: &[String]) -> String {
    e.render(names).replace("y1", "y1'").replace("y2", "y2'")
}

/// Sigma and delta are well defined at `bound`.
pub fn source_maps_well_defined<S: Field>(src: &SourceData<S>, bound: usize) -> bool {
    check_well_defined(&src.sigma, bound).passed() && check_well_defined(&src.delta, bound).passed()
}

#[cfg(test)]
mod tests;
