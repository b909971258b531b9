//! The six operator identities on sigma, delta and tau, and the associativity oracle.
//!
//! Expanding `(y2 y1) r` and `(p12 y1 y2 + p11 y1^2 + tau1 y1 + tau2 y2 + tau0) r` with the
//! commutation rule and comparing coefficients of `y1^2, y1 y2, y2^2, y1, y2, 1` gives six
//! identities between composites of the maps. Composites apply right to left.

use rayon::prelude::*;

use super::{DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::Field;
use crate::presring::{RingElement, Word};
use crate::report::{Doc, ToReport};

/// Identity names: the y-monomial whose coefficient each identity compares.
pub const RELATION_NAMES: [&str; 6] = ["y1^2", "y1*y2", "y2^2", "y1", "y2", "1"];

#[derive(Clone, Copy, Debug)]
enum Op {
    /// sigma_ij, zero-based.
    Sig(usize, usize),
    /// delta_i, zero-based.
    Del(usize),
    /// r -> r * tau_k.
    Right(usize),
    /// r -> tau_k * r.
    Left(usize),
}

struct Term<S> {
    coef: S,
    ops: Vec<Op>,
}

struct Identity<S> {
    lhs: Vec<Term<S>>,
    rhs: Vec<Term<S>>,
}

fn identities<S: Field>(p12: &S, p11: &S) -> Vec<Identity<S>> {
    use Op::*;
    let (a, b) = (p12.clone(), p11.clone());
    let one = S::one;
    let t = |coef: S, ops: &[Op]| Term { coef, ops: ops.to_vec() };
    let (s11, s12, s21, s22) = (Sig(0, 0), Sig(0, 1), Sig(1, 0), Sig(1, 1));
    let (d1, d2) = (Del(0), Del(1));
    vec![
        Identity {
            lhs: vec![t(one(), &[s21, s11]), t(b.clone(), &[s22, s11])],
            rhs: vec![
                t(b.clone(), &[s11, s11]),
                t(b.clone() * b.clone(), &[s12, s11]),
                t(a.clone(), &[s11, s21]),
                t(b.clone() * a.clone(), &[s12, s21]),
            ],
        },
        Identity {
            lhs: vec![t(one(), &[s21, s12]), t(a.clone(), &[s22, s11])],
            rhs: vec![
                t(b.clone(), &[s11, s12]),
                t(b.clone() * a.clone(), &[s12, s11]),
                t(a.clone(), &[s11, s22]),
                t(a.clone() * a.clone(), &[s12, s21]),
            ],
        },
        Identity { lhs: vec![t(one(), &[s22, s12])], rhs: vec![t(b.clone(), &[s12, s12]), t(a.clone(), &[s12, s22])] },
        Identity {
            lhs: vec![t(one(), &[d2, s11]), t(one(), &[s21, d1]), t(one(), &[Right(1), s22, s11])],
            rhs: vec![
                t(b.clone(), &[d1, s11]),
                t(b.clone(), &[s11, d1]),
                t(b.clone(), &[Right(1), s12, s11]),
                t(a.clone(), &[d1, s21]),
                t(a.clone(), &[s11, d2]),
                t(a.clone(), &[Right(1), s12, s21]),
                t(one(), &[Left(1), s11]),
                t(one(), &[Left(2), s21]),
            ],
        },
        Identity {
            lhs: vec![t(one(), &[d2, s12]), t(one(), &[s22, d1]), t(one(), &[Right(2), s22, s11])],
            rhs: vec![
                t(b.clone(), &[d1, s12]),
                t(b.clone(), &[s12, d1]),
                t(b.clone(), &[Right(2), s12, s11]),
                t(a.clone(), &[d1, s22]),
                t(a.clone(), &[s12, d2]),
                t(a.clone(), &[Right(2), s12, s21]),
                t(one(), &[Left(1), s12]),
                t(one(), &[Left(2), s22]),
            ],
        },
        Identity {
            lhs: vec![t(one(), &[d2, d1]), t(one(), &[Right(0), s22, s11])],
            rhs: vec![
                t(b.clone(), &[d1, d1]),
                t(b.clone(), &[Right(0), s12, s11]),
                t(a.clone(), &[d1, d2]),
                t(a.clone(), &[Right(0), s12, s21]),
                t(one(), &[Left(1), d1]),
                t(one(), &[Left(2), d2]),
                t(one(), &[Left(0)]),
            ],
        },
    ]
}

fn apply_op<S: Field>(alg: &DoubleOreAlgebra<S>, op: Op, r: &RingElement<S>) -> RingElement<S> {
    let ring = alg.ring();
    match op {
        Op::Sig(i, j) => alg.sigma().component(i, j, r),
        Op::Del(i) => alg.delta().component(i, r),
        Op::Right(k) => ring.mul(r, alg.tau(k)),
        Op::Left(k) => ring.mul(alg.tau(k), r),
    }
}

fn eval_side<S: Field>(alg: &DoubleOreAlgebra<S>, side: &[Term<S>], r: &RingElement<S>) -> RingElement<S> {
    let mut acc = RingElement::zero();
    for term in side {
        if term.coef.is_zero() {
            continue;
        }
        let v = term.ops.iter().rev().fold(r.clone(), |x, op| apply_op(alg, *op, &x));
        acc = acc + v.scale(&term.coef);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResult {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl RelationResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub max_degree: usize,
    pub relations: Vec<RelationResult>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationResult::passed)
    }

    pub fn relation(&self, name: &str) -> Option<&RelationResult> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.relations.iter().filter(|r| !r.passed()).map(|r| r.name).collect()
    }
}

fn counterexample_doc(c: &Option<Counterexample>) -> Doc {
    match c {
        None => Doc::new(),
        Some(c) => Doc::new().with("input", c.input.clone()).with("lhs", c.lhs.clone()).with("rhs", c.rhs.clone()),
    }
}

impl ToReport for CompatibilityReport {
    fn to_report(&self) -> Doc {
        let rels: Vec<Doc> = self
            .relations
            .iter()
            .map(|r| {
                let mut d = Doc::new().with("coefficient", r.name).with("passed", r.passed()).with("checked", r.checked);
                if r.counterexample.is_some() {
                    d.push("counterexample", counterexample_doc(&r.counterexample));
                }
                d
            })
            .collect();
        Doc::new()
            .with("check", "compatibility")
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("relations", rels.into_iter().map(Into::into).collect::<Vec<crate::report::Value>>())
    }
}

/// Evaluates the six identities on every ring basis word of length at most `max_degree`.
pub fn check_compatibility<S: Field>(alg: &DoubleOreAlgebra<S>, max_degree: usize) -> CompatibilityReport {
    let ring = alg.ring();
    let words: Vec<Word> = ring.basis(max_degree);
    let ids = identities(alg.p12(), alg.p11());
    let relations = ids
        .iter()
        .zip(RELATION_NAMES)
        .map(|(id, name)| {
            let counterexample = words
                .par_iter()
                .map(|w| {
                    let r = RingElement::monomial(w.clone(), S::one());
                    let (l, rr) = (eval_side(alg, &id.lhs, &r), eval_side(alg, &id.rhs, &r));
                    (l != rr).then(|| Counterexample { input: ring.render_word(w), lhs: ring.render(&l), rhs: ring.render(&rr) })
                })
                .find_first(Option::is_some)
                .flatten();
            RelationResult { name, checked: words.len(), counterexample }
        })
        .collect();
    CompatibilityReport { max_degree, relations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub max_degree: usize,
    pub triples: usize,
    pub failure: Option<(String, String, String)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl ToReport for AssociativityReport {
    fn to_report(&self) -> Doc {
        let mut d = Doc::new()
            .with("check", "associativity")
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("triples", self.triples);
        if let Some((a, b, c)) = &self.failure {
            d.push("counterexample", Doc::new().with("a", a.clone()).with("b", b.clone()).with("c", c.clone()));
        }
        d
    }
}

/// Test elements: ring basis words and y-monomials of degree at most `max_degree`.
pub(crate) fn sample_elements<S: Field>(alg: &DoubleOreAlgebra<S>, max_degree: usize) -> Vec<ExtElement<S>> {
    let mut out: Vec<ExtElement<S>> =
        alg.ring().basis(max_degree).into_iter().map(|w| ExtElement::from_ring(RingElement::monomial(w, S::one()))).collect();
    out.extend(
        Exponent::up_to(max_degree as u32)
            .into_iter()
            .filter(|e| e.total() > 0)
            .map(|e| ExtElement::monomial(e.i, e.j, RingElement::one())),
    );
    out
}

/// Checks `(ab)c = a(bc)` on all triples of sample elements.
pub fn check_associativity<S: Field>(alg: &DoubleOreAlgebra<S>, max_degree: usize) -> AssociativityReport {
    let els = sample_elements(alg, max_degree);
    let n = els.len();
    let pairs: Vec<ExtElement<S>> = (0..n * n).into_par_iter().map(|k| alg.mul(&els[k / n], &els[k % n])).collect();
    let failure = (0..n * n * n)
        .into_par_iter()
        .find_first(|&k| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            alg.mul(&pairs[a * n + b], &els[c]) != alg.mul(&els[a], &pairs[b * n + c])
        })
        .map(|k| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            (alg.render(&els[a]), alg.render(&els[b]), alg.render(&els[c]))
        });
    AssociativityReport { max_degree, triples: n * n * n, failure }
}
