use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{check_dcv, relation_defect, DcvCertificate, DcvError, DcvMatrix, Scope, SourceData};
use crate::doubleore::{DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::{solve_linear, Field, ScalarMatrix};
use crate::presring::{RingElement, Word};
use crate::report::{Doc, ToReport, Value};
use crate::ringmaps::{DeltaColumn, SigmaMatrix};

pub const DEFAULT_CANDIDATE_CAP: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub enum ScalarSlot<S> {
    Fixed(S),
    Unknown,
}

#[derive(Clone, Debug)]
pub enum RingSlot<S: Field> {
    Fixed(RingElement<S>),
    /// Solved for in the span of ring words of degree at most 2.
    Unknown,
}

pub type MapDeriver<S> = Arc<dyn Fn(&ExtElement<S>, &ExtElement<S>) -> Option<(SigmaMatrix<S>, DeltaColumn<S>)> + Send + Sync>;

/// How `(sigma', delta')` is obtained for a candidate.
#[derive(Clone)]
pub enum MapRule<S: Field> {
    Fixed(SigmaMatrix<S>, DeltaColumn<S>),
    /// Built from the candidate; `None` skips it.
    Derived(MapDeriver<S>),
}

/// Source data with some parameters left open. Unknown parameters are solved from the
/// `q2 q1` relation for each candidate (free variables set to zero).
#[derive(Clone)]
pub struct SourceTemplate<S: Field> {
    pub p12: ScalarSlot<S>,
    pub p11: ScalarSlot<S>,
    /// `[tau0', tau1', tau2']`.
    pub tau: [RingSlot<S>; 3],
    pub maps: MapRule<S>,
}

impl<S: Field> SourceTemplate<S> {
    pub fn fixed(src: &SourceData<S>) -> Self {
        SourceTemplate {
            p12: ScalarSlot::Fixed(src.p12.clone()),
            p11: ScalarSlot::Fixed(src.p11.clone()),
            tau: src.tau.clone().map(RingSlot::Fixed),
            maps: MapRule::Fixed(src.sigma.clone(), src.delta.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    /// A nonzero pool scalar.
    Unit,
    /// A pool scalar, possibly zero.
    Scalar,
    /// Zero or a nonzero pool scalar times a ring word of degree at most 1.
    General,
}

/// Which coefficients of `q1` and `q2` vary, and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateShape {
    pub q1: Vec<(Exponent, SlotKind)>,
    pub q2: Vec<(Exponent, SlotKind)>,
}

impl CandidateShape {
    /// Every exponent pair of total degree at most `degree_bound`, general coefficients.
    pub fn full(degree_bound: u32) -> Self {
        let slots: Vec<_> = Exponent::up_to(degree_bound).into_iter().map(|e| (e, SlotKind::General)).collect();
        CandidateShape { q1: slots.clone(), q2: slots }
    }

    pub fn degree(&self) -> u32 {
        self.q1.iter().chain(&self.q2).map(|(e, _)| e.total()).max().unwrap_or(0)
    }
}

pub struct SearchHit<S: Field> {
    /// Position in the canonical enumeration.
    pub index: u128,
    pub matrix: DcvMatrix<S>,
    pub certificate: DcvCertificate,
}

pub struct SearchOutcome<S: Field> {
    pub candidates: u128,
    pub hits: Vec<SearchHit<S>>,
    names: Vec<String>,
}

impl<S: Field> ToReport for SearchOutcome<S> {
    fn to_report(&self) -> Doc {
        let hits: Vec<Value> = self
            .hits
            .iter()
            .map(|h| {
                let m = &h.matrix;
                let r = |e: &RingElement<S>| ExtElement::from_ring(e.clone()).render(&self.names);
                Doc::new()
                    .with("index", h.index.to_string())
                    .with("q1", m.q1.render(&self.names))
                    .with("q2", m.q2.render(&self.names))
                    .with("p12", m.source.p12.to_string())
                    .with("p11", m.source.p11.to_string())
                    .with("tau0", r(&m.source.tau[0]))
                    .with("tau1", r(&m.source.tau[1]))
                    .with("tau2", r(&m.source.tau[2]))
                    .into()
            })
            .collect();
        Doc::new()
            .with("check", "search-dcv")
            .with("candidates", self.candidates.to_string())
            .with("hits", self.hits.len())
            .with("matrices", Value::List(hits))
    }
}

struct Space<S: Field> {
    slots: Vec<(usize, Exponent, Vec<RingElement<S>>)>,
}

impl<S: Field> Space<S> {
    fn new(shape: &CandidateShape, pool: &[S], words: &[Word]) -> Self {
        let mut nonzero: Vec<S> = Vec::new();
        for c in pool {
            if !c.is_zero() && !nonzero.contains(c) {
                nonzero.push(c.clone());
            }
        }
        let options = |k: SlotKind| -> Vec<RingElement<S>> {
            let units = nonzero.iter().map(|c| RingElement::constant(c.clone()));
            match k {
                SlotKind::Unit => units.collect(),
                SlotKind::Scalar => std::iter::once(RingElement::zero()).chain(units).collect(),
                SlotKind::General => std::iter::once(RingElement::zero())
                    .chain(nonzero.iter().flat_map(|c| words.iter().map(|w| RingElement::monomial(w.clone(), c.clone()))))
                    .collect(),
            }
        };
        let slots = [&shape.q1, &shape.q2]
            .into_iter()
            .enumerate()
            .flat_map(|(q, v)| v.iter().map(move |(e, k)| (q, *e, *k)))
            .map(|(q, e, k)| (q, e, options(k)))
            .collect();
        Space { slots }
    }

    fn size(&self) -> u128 {
        self.slots.iter().try_fold(1u128, |acc, s| acc.checked_mul(s.2.len() as u128)).unwrap_or(u128::MAX)
    }

    /// Mixed-radix decoding with the first slot most significant.
    fn candidate(&self, mut index: u128) -> [ExtElement<S>; 2] {
        let mut q = [ExtElement::zero(), ExtElement::zero()];
        for (which, e, opts) in self.slots.iter().rev() {
            let n = opts.len() as u128;
            q[*which].add_term(*e, opts[(index % n) as usize].clone());
            index /= n;
        }
        q
    }
}

/// Fills unknown parameters so the `q2 q1` relation holds, if possible.
fn resolve<S: Field>(
    t: &SourceTemplate<S>,
    target: &DoubleOreAlgebra<S>,
    q: &[ExtElement<S>; 2],
    sigma: SigmaMatrix<S>,
    delta: DeltaColumn<S>,
    tau_words: &[Word],
) -> Option<SourceData<S>> {
    let fixed_scalar = |s: &ScalarSlot<S>| match s {
        ScalarSlot::Fixed(v) => v.clone(),
        ScalarSlot::Unknown => S::zero(),
    };
    let fixed_ring = |s: &RingSlot<S>| match s {
        RingSlot::Fixed(v) => v.clone(),
        RingSlot::Unknown => RingElement::zero(),
    };
    let base = SourceData {
        sigma,
        delta,
        p12: fixed_scalar(&t.p12),
        p11: fixed_scalar(&t.p11),
        tau: [fixed_ring(&t.tau[0]), fixed_ring(&t.tau[1]), fixed_ring(&t.tau[2])],
    };
    enum Var {
        P12,
        P11,
        Tau(usize, Word),
    }
    let mut vars: Vec<(Var, ExtElement<S>)> = Vec::new();
    if matches!(t.p12, ScalarSlot::Unknown) {
        vars.push((Var::P12, target.mul(&q[0], &q[1])));
    }
    if matches!(t.p11, ScalarSlot::Unknown) {
        vars.push((Var::P11, target.mul(&q[0], &q[0])));
    }
    for k in 0..3 {
        if matches!(t.tau[k], RingSlot::Unknown) {
            for w in tau_words {
                let r = RingElement::monomial(w.clone(), S::one());
                let col = match k {
                    0 => ExtElement::from_ring(r),
                    _ => target.ring_times(&r, &q[k - 1]),
                };
                vars.push((Var::Tau(k, w.clone()), col));
            }
        }
    }
    if vars.is_empty() {
        return Some(base);
    }
    let rhs = relation_defect(target, &q[0], &q[1], &base);
    let mut coords: BTreeMap<(Exponent, Word), usize> = BTreeMap::new();
    for el in vars.iter().map(|v| &v.1).chain(std::iter::once(&rhs)) {
        for (e, r) in el.terms() {
            for (w, _) in r.terms() {
                let n = coords.len();
                coords.entry((*e, w.clone())).or_insert(n);
            }
        }
    }
    let mut a = ScalarMatrix::zeros(coords.len(), vars.len());
    let mut b = ScalarMatrix::zeros(coords.len(), 1);
    for (col, (_, el)) in vars.iter().enumerate() {
        for (e, r) in el.terms() {
            for (w, c) in r.terms() {
                a.set(coords[&(*e, w.clone())], col, c.clone());
            }
        }
    }
    for (e, r) in rhs.terms() {
        for (w, c) in r.terms() {
            b.set(coords[&(*e, w.clone())], 0, c.clone());
        }
    }
    let x = solve_linear(&a, &b).expect("row counts agree").solution?;
    let mut out = base;
    for (i, (v, _)) in vars.iter().enumerate() {
        let c = x.get(i, 0).clone();
        match v {
            Var::P12 => out.p12 = c,
            Var::P11 => out.p11 = c,
            Var::Tau(k, w) => out.tau[*k].add_term(w.clone(), c),
        }
    }
    Some(out)
}

/// Number of candidates `search_dcv` would enumerate.
pub fn candidate_count<S: Field>(target: &DoubleOreAlgebra<S>, shape: &CandidateShape, pool: &[S]) -> u128 {
    Space::new(shape, pool, &target.ring().basis(1)).size()
}

/// Enumerates every candidate of `shape` with coefficients from `pool`, resolves the
/// template and keeps those passing `check_dcv` on basis words up to `max_degree`. Hits
/// come back in canonical enumeration order.
pub fn search_dcv<S: Field>(
    template: &SourceTemplate<S>,
    target: &DoubleOreAlgebra<S>,
    shape: &CandidateShape,
    pool: &[S],
    max_degree: usize,
    cap: u128,
) -> Result<SearchOutcome<S>, DcvError> {
    if shape.degree() > 2 {
        return Err(DcvError::DegreeBound(shape.degree()));
    }
    let ring = target.ring();
    if let MapRule::Fixed(s, _) = &template.maps {
        if !Arc::ptr_eq(s.ring(), ring) {
            return Err(DcvError::RingMismatch);
        }
    }
    let space = Space::new(shape, pool, &ring.basis(1));
    let size = space.size();
    if size > cap {
        return Err(DcvError::PoolTooLarge { size, cap });
    }
    let tau_words = ring.basis(2);
    let hits = (0..size as u64)
        .into_par_iter()
        .filter_map(|index| {
            let q = space.candidate(index as u128);
            let (sigma, delta) = match &template.maps {
                MapRule::Fixed(s, d) => (s.clone(), d.clone()),
                MapRule::Derived(f) => f(&q[0], &q[1])?,
            };
            let source = resolve(template, target, &q, sigma, delta, &tau_words)?;
            let [q1, q2] = q;
            let matrix = DcvMatrix::new(q1, q2, source);
            let certificate = check_dcv(&matrix, target, Scope::Basis, max_degree).ok()?;
            certificate.passed().then_some(SearchHit { index: index as u128, matrix, certificate })
        })
        .collect();
    Ok(SearchOutcome { candidates: size, hits, names: ring.names().to_vec() })
}
