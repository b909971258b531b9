//! Right double Ore extensions `B = R_P[y1, y2; sigma, delta, tau]`.
//!
//! Elements are kept in left-normal form `sum r_ij y1^i y2^j`. Products are computed by
//! pushing `y_k` past ring words with `y_k r = sum_l sigma_kl(r) y_l + delta_k(r)` and
//! rewriting `y2 y1 = p12 y1 y2 + p11 y1^2 + tau1 y1 + tau2 y2 + tau0`.

mod basis;
mod checks;
mod element;
pub mod iterated;

use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::Field;
use crate::memo::Memo;
use crate::presring::{PresentedRing, RingElement, Word};
use crate::ringmaps::{check_well_defined, DeltaColumn, MapError, SigmaMatrix};

pub use basis::{associated_graded, change_basis, check_right_basis, BasisChange, ChangeCase, RightBasisReport};
pub(crate) use checks::sample_elements;
pub use checks::{
    check_associativity, check_compatibility, AssociativityReport, CompatibilityReport, Counterexample, RelationResult,
    RELATION_NAMES,
};
pub use element::{Exponent, ExtElement};
pub use iterated::{
    scalar_tail_iterated, to_iterated, verify_iterated, IteratedEngine, IteratedOrder, IteratedOutcome, IteratedPresentation,
    IteratedProductReport, OrePoly,
};

pub const DEFAULT_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{map} is not well defined: {context}")]
    WellDefinedness { map: &'static str, context: String },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("extension data are defined over different rings or sigma bundles")]
    RingMismatch,
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

struct AlgInner<S: Field> {
    sigma: SigmaMatrix<S>,
    delta: DeltaColumn<S>,
    p12: S,
    p11: S,
    tau: [RingElement<S>; 3],
    bound: usize,
    nf_memo: Memo<Vec<u8>, ExtElement<S>>,
    push_memo: Memo<(Exponent, Word), ExtElement<S>>,
}

/// A validated right double extension. Cloning is cheap and shares product caches.
#[derive(Clone)]
pub struct DoubleOreAlgebra<S: Field> {
    inner: Arc<AlgInner<S>>,
}

/// Builds the extension at the default well-definedness bound.
pub fn build_extension<S: Field>(
    ring: &Arc<PresentedRing<S>>,
    sigma: &SigmaMatrix<S>,
    delta: &DeltaColumn<S>,
    p12: S,
    p11: S,
    tau: [RingElement<S>; 3],
) -> Result<DoubleOreAlgebra<S>, AlgebraError> {
    DoubleOreAlgebra::new(ring, sigma, delta, p12, p11, tau, DEFAULT_DEGREE)
}

impl<S: Field> DoubleOreAlgebra<S> {
    /// `tau` is `[tau0, tau1, tau2]`. Sigma and delta are checked for well-definedness on
    /// the ring relations and on basis products up to `bound`.
    pub fn new(
        ring: &Arc<PresentedRing<S>>,
        sigma: &SigmaMatrix<S>,
        delta: &DeltaColumn<S>,
        p12: S,
        p11: S,
        tau: [RingElement<S>; 3],
        bound: usize,
    ) -> Result<Self, AlgebraError> {
        if !Arc::ptr_eq(ring, sigma.ring()) || !delta.sigma().same_as(sigma) {
            return Err(AlgebraError::RingMismatch);
        }
        for t in &tau {
            ring.check(t).map_err(MapError::from)?;
        }
        let ws = check_well_defined(sigma, bound);
        if let Some(v) = ws.violations.first() {
            return Err(AlgebraError::WellDefinedness { map: "sigma", context: v.context.clone() });
        }
        let wd = check_well_defined(delta, bound);
        if let Some(v) = wd.violations.first() {
            return Err(AlgebraError::WellDefinedness { map: "delta", context: v.context.clone() });
        }
        Ok(Self::assemble(sigma.clone(), delta.clone(), p12, p11, tau, bound))
    }

    /// Same constructor without the well-definedness gate, for deliberately broken data.
    pub fn new_unchecked(sigma: &SigmaMatrix<S>, delta: &DeltaColumn<S>, p12: S, p11: S, tau: [RingElement<S>; 3]) -> Self {
        Self::assemble(sigma.clone(), delta.clone(), p12, p11, tau, 0)
    }

    fn assemble(sigma: SigmaMatrix<S>, delta: DeltaColumn<S>, p12: S, p11: S, tau: [RingElement<S>; 3], bound: usize) -> Self {
        DoubleOreAlgebra {
            inner: Arc::new(AlgInner { sigma, delta, p12, p11, tau, bound, nf_memo: Memo::new(), push_memo: Memo::new() }),
        }
    }

    /// Same sigma and delta with new parameters and tail.
    pub fn with_parameters(&self, p12: S, p11: S, tau: [RingElement<S>; 3]) -> Result<Self, AlgebraError> {
        for t in &tau {
            self.ring().check(t).map_err(MapError::from)?;
        }
        Ok(Self::assemble(self.sigma().clone(), self.delta().clone(), p12, p11, tau, self.inner.bound))
    }

    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.inner.sigma.ring()
    }

    pub fn sigma(&self) -> &SigmaMatrix<S> {
        &self.inner.sigma
    }

    pub fn delta(&self) -> &DeltaColumn<S> {
        &self.inner.delta
    }

    pub fn p12(&self) -> &S {
        &self.inner.p12
    }

    pub fn p11(&self) -> &S {
        &self.inner.p11
    }

    /// `tau(0)`, `tau(1)`, `tau(2)`.
    pub fn tau(&self, k: usize) -> &RingElement<S> {
        &self.inner.tau[k]
    }

    pub fn taus(&self) -> &[RingElement<S>; 3] {
        &self.inner.tau
    }

    /// Degree bound used for the well-definedness gate.
    pub fn certified_bound(&self) -> usize {
        self.inner.bound
    }

    /// delta = 0 and tau = {0, 0, 0}.
    pub fn is_trimmed(&self) -> bool {
        self.delta().is_zero() && self.inner.tau.iter().all(RingElement::is_zero)
    }

    /// p12 != 0, the parameter condition for a (two-sided) double extension.
    pub fn is_double_candidate(&self) -> bool {
        !self.inner.p12.is_zero()
    }

    pub fn same_as(&self, other: &DoubleOreAlgebra<S>) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn y1(&self) -> ExtElement<S> {
        ExtElement::monomial(1, 0, RingElement::one())
    }

    pub fn y2(&self) -> ExtElement<S> {
        ExtElement::monomial(0, 1, RingElement::one())
    }

    /// `y1` for `k = 1`, `y2` for `k = 2`.
    pub fn y(&self, k: usize) -> ExtElement<S> {
        if k == 1 {
            self.y1()
        } else {
            self.y2()
        }
    }

    /// Confirms every coefficient is a normal form of the coefficient ring.
    pub fn check(&self, e: &ExtElement<S>) -> Result<(), AlgebraError> {
        for (_, r) in e.terms() {
            self.ring().check(r).map_err(|_| AlgebraError::RingMismatch)?;
        }
        Ok(())
    }

    pub fn mul(&self, a: &ExtElement<S>, b: &ExtElement<S>) -> ExtElement<S> {
        let mut out = ExtElement::zero();
        for (ea, r) in a.terms() {
            for (eb, s) in b.terms() {
                let pushed = self.push_elem(*ea, s);
                let tail = eb.yword();
                let moved = self.mul_yword_right(&pushed, &tail);
                out = out + self.ring_times(r, &moved);
            }
        }
        out
    }

    pub fn pow(&self, a: &ExtElement<S>, n: u32) -> ExtElement<S> {
        (0..n).fold(ExtElement::one(), |acc, _| self.mul(&acc, a))
    }

    /// `r * e` for a ring element on the left.
    pub fn ring_times(&self, r: &RingElement<S>, e: &ExtElement<S>) -> ExtElement<S> {
        let ring = self.ring();
        let mut out = ExtElement::zero();
        for (ex, c) in e.terms() {
            out.add_term(*ex, ring.mul(r, c));
        }
        out
    }

    /// `e * w` for a y-word `w` (letters 1 and 2).
    fn mul_yword_right(&self, e: &ExtElement<S>, w: &[u8]) -> ExtElement<S> {
        if w.is_empty() {
            return e.clone();
        }
        let mut out = ExtElement::zero();
        for (ex, c) in e.terms() {
            let mut word = ex.yword();
            word.extend_from_slice(w);
            out = out + self.ring_times(c, &self.nf(&word));
        }
        out
    }

    /// `y1^i y2^j * r` in left-normal form.
    fn push_elem(&self, ex: Exponent, r: &RingElement<S>) -> ExtElement<S> {
        let mut out = ExtElement::zero();
        for (w, c) in r.terms() {
            out = out + self.push(ex, w).scale(c);
        }
        out
    }

    fn push(&self, ex: Exponent, w: &Word) -> ExtElement<S> {
        if ex.i == 0 && ex.j == 0 {
            return ExtElement::monomial(0, 0, self.ring().normalize_word(w));
        }
        if w.is_empty() {
            return ExtElement::monomial(ex.i, ex.j, RingElement::one());
        }
        self.inner.push_memo.get_or(&(ex, w.clone()), || {
            // Peel the last y-letter: y_k w = sum_l sigma_kl(w) y_l + delta_k(w).
            let (k, rest) = if ex.j > 0 { (1, Exponent::new(ex.i, ex.j - 1)) } else { (0, Exponent::new(ex.i - 1, 0)) };
            let s = self.sigma().apply_word(w);
            let d = self.delta().apply_word(w);
            let mut out = self.push_elem(rest, d.get(k));
            for l in 0..2 {
                let part = self.push_elem(rest, s.get(k, l));
                out = out + self.mul_yword_right(&part, &[l as u8 + 1]);
            }
            out
        })
    }

    /// Left-normal form of a y-word.
    fn nf(&self, w: &[u8]) -> ExtElement<S> {
        let Some(p) = w.windows(2).position(|x| x == [2, 1]) else {
            let i = w.iter().filter(|&&c| c == 1).count() as u32;
            return ExtElement::monomial(i, w.len() as u32 - i, RingElement::one());
        };
        self.inner.nf_memo.get_or(&w.to_vec(), || {
            let (a, b) = (&w[..p], &w[p + 2..]);
            let splice = |mid: &[u8]| [a, mid, b].concat();
            let mut out = ExtElement::zero();
            if !self.p12().is_zero() {
                out = out + self.nf(&splice(&[1, 2])).scale(self.p12());
            }
            if !self.p11().is_zero() {
                out = out + self.nf(&splice(&[1, 1])).scale(self.p11());
            }
            // a is sorted, so it is the monomial y1^i y2^j.
            let i = a.iter().filter(|&&c| c == 1).count() as u32;
            let prefix = Exponent::new(i, a.len() as u32 - i);
            for (k, tail) in [(0usize, &[][..]), (1, &[1u8][..]), (2, &[2u8][..])] {
                let t = self.tau(k);
                if t.is_zero() {
                    continue;
                }
                let pushed = self.push_elem(prefix, t);
                out = out + self.mul_yword_right(&pushed, &[tail, b].concat());
            }
            out
        })
    }

    pub fn render(&self, e: &ExtElement<S>) -> String {
        e.render(self.ring().names())
    }
}

impl<S: Field> std::fmt::Debug for DoubleOreAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DoubleOreAlgebra")
            .field("sigma", self.sigma())
            .field("delta", self.delta())
            .field("p12", self.p12())
            .field("p11", self.p11())
            .field("tau", self.taus())
            .finish()
    }
}

#[cfg(test)]
mod tests;
