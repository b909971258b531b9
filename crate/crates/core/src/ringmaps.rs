//! Linear maps on a presented ring given by generator images: the matrix map sigma,
//! the derivation column delta, single endomorphisms/derivations, inner derivations.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::Field;
use crate::memo::Memo;
use crate::presring::{PresentedRing, RingElement, RingError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("maps are defined over a different ring")]
    RingMismatch,
    #[error("map is not well defined: {0}")]
    WellDefinedness(String),
}

/// 2x2 matrix over the ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<S>(pub [[RingElement<S>; 2]; 2]);

/// Column of two ring elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Col2<S>(pub [RingElement<S>; 2]);

impl<S: Field> Mat2<S> {
    pub fn identity() -> Self {
        Mat2([[RingElement::one(), RingElement::zero()], [RingElement::zero(), RingElement::one()]])
    }

    pub fn zero() -> Self {
        Mat2([[RingElement::zero(), RingElement::zero()], [RingElement::zero(), RingElement::zero()]])
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement<S> {
        &self.0[i][j]
    }

    pub fn mul(&self, ring: &PresentedRing<S>, o: &Mat2<S>) -> Mat2<S> {
        let e = |i: usize, j: usize| ring.mul(&self.0[i][0], &o.0[0][j]) + ring.mul(&self.0[i][1], &o.0[1][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn apply(&self, ring: &PresentedRing<S>, c: &Col2<S>) -> Col2<S> {
        let e = |i: usize| ring.mul(&self.0[i][0], &c.0[0]) + ring.mul(&self.0[i][1], &c.0[1]);
        Col2([e(0), e(1)])
    }

    fn add(&self, o: &Mat2<S>) -> Mat2<S> {
        let e = |i: usize, j: usize| &self.0[i][j] + &o.0[i][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    fn scale(&self, s: &S) -> Mat2<S> {
        let e = |i: usize, j: usize| self.0[i][j].scale(s);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(RingElement::is_zero)
    }
}

impl<S: Field> Col2<S> {
    pub fn zero() -> Self {
        Col2([RingElement::zero(), RingElement::zero()])
    }

    pub fn get(&self, i: usize) -> &RingElement<S> {
        &self.0[i]
    }

    pub fn add(&self, o: &Col2<S>) -> Col2<S> {
        Col2([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1]])
    }

    fn scale(&self, s: &S) -> Col2<S> {
        Col2([self.0[0].scale(s), self.0[1].scale(s)])
    }

    pub fn mul_right(&self, ring: &PresentedRing<S>, r: &RingElement<S>) -> Col2<S> {
        Col2([ring.mul(&self.0[0], r), ring.mul(&self.0[1], r)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(RingElement::is_zero)
    }
}

impl<S: Field> fmt::Debug for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }
}

impl<S: Field> fmt::Debug for Col2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.0[0], self.0[1])
    }
}

fn check_images<S: Field>(ring: &PresentedRing<S>, got: usize, images: &[&RingElement<S>]) -> Result<(), MapError> {
    if got != ring.num_gens() {
        return Err(MapError::ImageCount { expected: ring.num_gens(), got });
    }
    for im in images {
        ring.check(im)?;
    }
    Ok(())
}

struct SigmaInner<S: Field> {
    ring: Arc<PresentedRing<S>>,
    images: Vec<Mat2<S>>,
    memo: Memo<Word, Mat2<S>>,
}

/// The matrix homomorphism R -> M2(R), extended multiplicatively from generator images.
#[derive(Clone)]
pub struct SigmaMatrix<S: Field> {
    inner: Arc<SigmaInner<S>>,
}

impl<S: Field> SigmaMatrix<S> {
    /// `images[k]` is the matrix sigma(x_k).
    pub fn new(ring: &Arc<PresentedRing<S>>, images: Vec<Mat2<S>>) -> Result<Self, MapError> {
        let flat: Vec<&RingElement<S>> = images.iter().flat_map(|m| m.0.iter().flatten()).collect();
        check_images(ring, images.len(), &flat)?;
        Ok(SigmaMatrix { inner: Arc::new(SigmaInner { ring: ring.clone(), images, memo: Memo::new() }) })
    }

    /// Builds from the four component maps, each given as a list of generator images.
    pub fn from_components(ring: &Arc<PresentedRing<S>>, c: [[Vec<RingElement<S>>; 2]; 2]) -> Result<Self, MapError> {
        let n = ring.num_gens();
        for comp in c.iter().flatten() {
            if comp.len() != n {
                return Err(MapError::ImageCount { expected: n, got: comp.len() });
            }
        }
        let images =
            (0..n).map(|k| Mat2([[c[0][0][k].clone(), c[0][1][k].clone()], [c[1][0][k].clone(), c[1][1][k].clone()]])).collect();
        Self::new(ring, images)
    }

    pub fn identity(ring: &Arc<PresentedRing<S>>) -> Self {
        let g = ring.gens();
        let z = vec![RingElement::zero(); g.len()];
        Self::from_components(ring, [[g.clone(), z.clone()], [z, g]]).expect("identity images are valid")
    }

    pub fn diagonal(a: &Endomorphism<S>, b: &Endomorphism<S>) -> Result<Self, MapError> {
        if !Arc::ptr_eq(&a.inner.ring, &b.inner.ring) {
            return Err(MapError::RingMismatch);
        }
        let z = vec![RingElement::zero(); a.inner.images.len()];
        Self::from_components(&a.inner.ring, [[a.inner.images.clone(), z.clone()], [z, b.inner.images.clone()]])
    }

    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        &self.inner.ring
    }

    /// True for clones of the same bundle.
    pub fn same_as(&self, other: &SigmaMatrix<S>) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn generator_image(&self, k: usize) -> &Mat2<S> {
        &self.inner.images[k]
    }

    /// Component (i, j) on every generator, zero-based.
    pub fn component_images(&self, i: usize, j: usize) -> Vec<RingElement<S>> {
        self.inner.images.iter().map(|m| m.0[i][j].clone()).collect()
    }

    /// True when component (i, j) vanishes on all generators (hence everywhere, when
    /// the opposite off-diagonal pattern makes sigma triangular or diagonal).
    pub fn component_vanishes_on_generators(&self, i: usize, j: usize) -> bool {
        self.inner.images.iter().all(|m| m.0[i][j].is_zero())
    }

    pub fn apply_word(&self, w: &Word) -> Mat2<S> {
        if w.is_empty() {
            return Mat2::identity();
        }
        self.inner.memo.get_or(w, || {
            let head = &self.inner.images[w.letters()[0] as usize];
            if w.len() == 1 {
                return head.clone();
            }
            let rest = self.apply_word(&Word::from_slice(&w.letters()[1..]));
            head.mul(&self.inner.ring, &rest)
        })
    }

    pub fn apply(&self, r: &RingElement<S>) -> Mat2<S> {
        r.terms().fold(Mat2::zero(), |acc, (w, c)| acc.add(&self.apply_word(w).scale(c)))
    }

    pub fn component(&self, i: usize, j: usize, r: &RingElement<S>) -> RingElement<S> {
        r.terms().fold(RingElement::zero(), |acc, (w, c)| acc + self.apply_word(w).0[i][j].scale(c))
    }

    /// `M sigma M^-1` for an invertible scalar matrix `M`.
    pub fn conjugate(&self, m: [[S; 2]; 2], m_inv: [[S; 2]; 2]) -> Self {
        let sm = |m: &[[S; 2]; 2]| {
            Mat2([
                [RingElement::constant(m[0][0].clone()), RingElement::constant(m[0][1].clone())],
                [RingElement::constant(m[1][0].clone()), RingElement::constant(m[1][1].clone())],
            ])
        };
        let (a, b) = (sm(&m), sm(&m_inv));
        let ring = &self.inner.ring;
        let images = self.inner.images.iter().map(|x| a.mul(ring, &x.mul(ring, &b))).collect();
        Self::new(ring, images).expect("conjugate keeps image shapes")
    }
}

impl<S: Field> fmt::Debug for SigmaMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.images.iter()).finish()
    }
}

struct DeltaInner<S: Field> {
    sigma: SigmaMatrix<S>,
    images: Vec<Col2<S>>,
    memo: Memo<Word, Col2<S>>,
}

/// Column sigma-derivation: delta(rr') = sigma(r) delta(r') + delta(r) r'.
#[derive(Clone)]
pub struct DeltaColumn<S: Field> {
    inner: Arc<DeltaInner<S>>,
}

impl<S: Field> DeltaColumn<S> {
    pub fn new(sigma: &SigmaMatrix<S>, images: Vec<Col2<S>>) -> Result<Self, MapError> {
        let flat: Vec<&RingElement<S>> = images.iter().flat_map(|c| c.0.iter()).collect();
        check_images(sigma.ring(), images.len(), &flat)?;
        Ok(DeltaColumn { inner: Arc::new(DeltaInner { sigma: sigma.clone(), images, memo: Memo::new() }) })
    }

    pub fn from_components(sigma: &SigmaMatrix<S>, d1: Vec<RingElement<S>>, d2: Vec<RingElement<S>>) -> Result<Self, MapError> {
        let n = sigma.ring().num_gens();
        if d1.len() != n || d2.len() != n {
            return Err(MapError::ImageCount { expected: n, got: d1.len().min(d2.len()) });
        }
        Self::new(sigma, d1.into_iter().zip(d2).map(|(a, b)| Col2([a, b])).collect())
    }

    pub fn zero(sigma: &SigmaMatrix<S>) -> Self {
        let n = sigma.ring().num_gens();
        Self::new(sigma, vec![Col2::zero(); n]).expect("zero images are valid")
    }

    pub fn sigma(&self) -> &SigmaMatrix<S> {
        &self.inner.sigma
    }

    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.inner.sigma.ring()
    }

    pub fn generator_image(&self, k: usize) -> &Col2<S> {
        &self.inner.images[k]
    }

    pub fn component_images(&self, i: usize) -> Vec<RingElement<S>> {
        self.inner.images.iter().map(|c| c.0[i].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.images.iter().all(Col2::is_zero)
    }

    /// Same generator images, bound to another sigma.
    pub fn rebind(&self, sigma: &SigmaMatrix<S>) -> Result<Self, MapError> {
        Self::new(sigma, self.inner.images.clone())
    }

    pub fn apply_word(&self, w: &Word) -> Col2<S> {
        if w.is_empty() {
            return Col2::zero();
        }
        self.inner.memo.get_or(w, || {
            let g = w.letters()[0] as usize;
            if w.len() == 1 {
                return self.inner.images[g].clone();
            }
            let rest = Word::from_slice(&w.letters()[1..]);
            let ring = self.ring();
            let head = self.inner.sigma.generator_image(g).apply(ring, &self.apply_word(&rest));
            let tail = self.inner.images[g].mul_right(ring, &ring.normalize_word(&rest));
            head.add(&tail)
        })
    }

    pub fn apply(&self, r: &RingElement<S>) -> Col2<S> {
        r.terms().fold(Col2::zero(), |acc, (w, c)| acc.add(&self.apply_word(w).scale(c)))
    }

    pub fn component(&self, i: usize, r: &RingElement<S>) -> RingElement<S> {
        r.terms().fold(RingElement::zero(), |acc, (w, c)| acc + self.apply_word(w).0[i].scale(c))
    }
}

impl<S: Field> fmt::Debug for DeltaColumn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.images.iter()).finish()
    }
}

struct EndoInner<S: Field> {
    ring: Arc<PresentedRing<S>>,
    images: Vec<RingElement<S>>,
    memo: Memo<Word, RingElement<S>>,
}

/// A single algebra endomorphism given by generator images.
#[derive(Clone)]
pub struct Endomorphism<S: Field> {
    inner: Arc<EndoInner<S>>,
}

impl<S: Field> Endomorphism<S> {
    pub fn new(ring: &Arc<PresentedRing<S>>, images: Vec<RingElement<S>>) -> Result<Self, MapError> {
        check_images(ring, images.len(), &images.iter().collect::<Vec<_>>())?;
        Ok(Endomorphism { inner: Arc::new(EndoInner { ring: ring.clone(), images, memo: Memo::new() }) })
    }

    pub fn identity(ring: &Arc<PresentedRing<S>>) -> Self {
        Self::new(ring, ring.gens()).expect("identity images are valid")
    }

    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        &self.inner.ring
    }

    pub fn images(&self) -> &[RingElement<S>] {
        &self.inner.images
    }

    pub fn apply_word(&self, w: &Word) -> RingElement<S> {
        if w.is_empty() {
            return RingElement::one();
        }
        self.inner.memo.get_or(w, || {
            let head = &self.inner.images[w.letters()[0] as usize];
            if w.len() == 1 {
                return head.clone();
            }
            let rest = self.apply_word(&Word::from_slice(&w.letters()[1..]));
            self.inner.ring.mul(head, &rest)
        })
    }

    pub fn apply(&self, r: &RingElement<S>) -> RingElement<S> {
        r.terms().fold(RingElement::zero(), |acc, (w, c)| acc + self.apply_word(w).scale(c))
    }
}

impl<S: Field> fmt::Debug for Endomorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.images.iter()).finish()
    }
}

struct DerivInner<S: Field> {
    twist: Endomorphism<S>,
    images: Vec<RingElement<S>>,
    memo: Memo<Word, RingElement<S>>,
}

/// A twisted derivation d(rr') = twist(r) d(r') + d(r) r'.
#[derive(Clone)]
pub struct TwistedDerivation<S: Field> {
    inner: Arc<DerivInner<S>>,
}

impl<S: Field> TwistedDerivation<S> {
    pub fn new(twist: &Endomorphism<S>, images: Vec<RingElement<S>>) -> Result<Self, MapError> {
        check_images(twist.ring(), images.len(), &images.iter().collect::<Vec<_>>())?;
        Ok(TwistedDerivation { inner: Arc::new(DerivInner { twist: twist.clone(), images, memo: Memo::new() }) })
    }

    pub fn zero(twist: &Endomorphism<S>) -> Self {
        Self::new(twist, vec![RingElement::zero(); twist.images().len()]).expect("zero images are valid")
    }

    pub fn twist(&self) -> &Endomorphism<S> {
        &self.inner.twist
    }

    pub fn images(&self) -> &[RingElement<S>] {
        &self.inner.images
    }

    pub fn apply_word(&self, w: &Word) -> RingElement<S> {
        if w.is_empty() {
            return RingElement::zero();
        }
        self.inner.memo.get_or(w, || {
            let g = w.letters()[0] as usize;
            if w.len() == 1 {
                return self.inner.images[g].clone();
            }
            let rest = Word::from_slice(&w.letters()[1..]);
            let ring = self.inner.twist.ring();
            ring.mul(&self.inner.twist.images()[g], &self.apply_word(&rest))
                + ring.mul(&self.inner.images[g], &ring.normalize_word(&rest))
        })
    }

    pub fn apply(&self, r: &RingElement<S>) -> RingElement<S> {
        r.terms().fold(RingElement::zero(), |acc, (w, c)| acc + self.apply_word(w).scale(c))
    }
}

impl<S: Field> fmt::Debug for TwistedDerivation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.images.iter()).finish()
    }
}

/// r -> a r - twist(r) a, with the identity twist when `twist` is `None`.
pub fn inner_derivation<S: Field>(
    ring: &Arc<PresentedRing<S>>,
    a: &RingElement<S>,
    twist: Option<&Endomorphism<S>>,
) -> TwistedDerivation<S> {
    let twist = twist.cloned().unwrap_or_else(|| Endomorphism::identity(ring));
    let images =
        (0..ring.num_gens() as u16).map(|k| ring.mul(a, &ring.gen(k)) - ring.mul(&twist.images()[k as usize], a)).collect();
    TwistedDerivation::new(&twist, images).expect("inner derivation images are normal")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellDefinednessReport {
    pub max_degree: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl WellDefinednessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Common shape of the four map kinds for the well-definedness check.
pub trait MapBundle<S: Field> {
    type Value: PartialEq + fmt::Debug;
    fn ring(&self) -> &Arc<PresentedRing<S>>;
    fn eval_word(&self, w: &Word) -> Self::Value;
    fn eval(&self, r: &RingElement<S>) -> Self::Value;
    /// Value on `u v` predicted from the values on `u` and `v`.
    fn product_rule(&self, u: &Word, v: &Word) -> Self::Value;
}

impl<S: Field> MapBundle<S> for SigmaMatrix<S> {
    type Value = Mat2<S>;
    fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.ring()
    }
    fn eval_word(&self, w: &Word) -> Mat2<S> {
        self.apply_word(w)
    }
    fn eval(&self, r: &RingElement<S>) -> Mat2<S> {
        self.apply(r)
    }
    fn product_rule(&self, u: &Word, v: &Word) -> Mat2<S> {
        self.apply_word(u).mul(self.ring(), &self.apply_word(v))
    }
}

impl<S: Field> MapBundle<S> for DeltaColumn<S> {
    type Value = Col2<S>;
    fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.ring()
    }
    fn eval_word(&self, w: &Word) -> Col2<S> {
        self.apply_word(w)
    }
    fn eval(&self, r: &RingElement<S>) -> Col2<S> {
        self.apply(r)
    }
    fn product_rule(&self, u: &Word, v: &Word) -> Col2<S> {
        let ring = self.ring();
        let left = self.sigma().apply_word(u).apply(ring, &self.apply_word(v));
        left.add(&self.apply_word(u).mul_right(ring, &ring.normalize_word(v)))
    }
}

impl<S: Field> MapBundle<S> for Endomorphism<S> {
    type Value = RingElement<S>;
    fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.ring()
    }
    fn eval_word(&self, w: &Word) -> RingElement<S> {
        self.apply_word(w)
    }
    fn eval(&self, r: &RingElement<S>) -> RingElement<S> {
        self.apply(r)
    }
    fn product_rule(&self, u: &Word, v: &Word) -> RingElement<S> {
        self.ring().mul(&self.apply_word(u), &self.apply_word(v))
    }
}

impl<S: Field> MapBundle<S> for TwistedDerivation<S> {
    type Value = RingElement<S>;
    fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.twist().ring()
    }
    fn eval_word(&self, w: &Word) -> RingElement<S> {
        self.apply_word(w)
    }
    fn eval(&self, r: &RingElement<S>) -> RingElement<S> {
        self.apply(r)
    }
    fn product_rule(&self, u: &Word, v: &Word) -> RingElement<S> {
        let ring = self.ring();
        ring.mul(&self.twist().apply_word(u), &self.apply_word(v)) + ring.mul(&self.apply_word(u), &ring.normalize_word(v))
    }
}

/// Checks that a bundle respects every ring relation, and that on basis words `u`, `v`
/// with `|u| + |v| <= max_degree` its value on the normal form of `uv` matches the
/// product rule.
pub fn check_well_defined<S: Field, M: MapBundle<S>>(map: &M, max_degree: usize) -> WellDefinednessReport {
    let ring = map.ring().clone();
    let mut violations = Vec::new();
    let mut checked = 0;
    for rule in ring.rules() {
        checked += 1;
        let lhs = map.eval_word(&rule.lhs);
        let rhs = map.eval(&rule.rhs);
        if lhs != rhs {
            violations.push(Violation {
                context: format!("relation {} = {}", ring.render_word(&rule.lhs), ring.render(&rule.rhs)),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }
    let basis = ring.basis(max_degree);
    for u in basis.iter().filter(|u| !u.is_empty()) {
        for v in basis.iter().filter(|v| !v.is_empty() && u.len() + v.len() <= max_degree) {
            checked += 1;
            let direct = map.eval(&ring.normalize_word(&u.concat(v)));
            let split = map.product_rule(u, v);
            if direct != split {
                violations.push(Violation {
                    context: format!("product {} * {}", ring.render_word(u), ring.render_word(v)),
                    lhs: format!("{direct:?}"),
                    rhs: format!("{split:?}"),
                });
            }
        }
    }
    WellDefinednessReport { max_degree, checked, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn jordan() -> Arc<PresentedRing<Q>> {
        let w = Word::from_slice;
        Arc::new(
            PresentedRing::from_relations(
                vec!["x1".into(), "x2".into()],
                vec![vec![(w(&[1, 0]), q(1)), (w(&[0, 1]), q(-1)), (w(&[0, 0]), q(-1))]],
            )
            .unwrap(),
        )
    }

    /// sigma of the trimmed algebra with y1 x1 = x1 y2 etc., parameter f.
    fn h_sigma(r: &Arc<PresentedRing<Q>>, f: i64) -> SigmaMatrix<Q> {
        let (x1, x2) = (r.gen(0), r.gen(1));
        let fx = &x1.scale(&q(f)) + &x2;
        let z = RingElement::zero();
        SigmaMatrix::from_components(
            r,
            [[vec![z.clone(), z.clone()], vec![x1.clone(), fx.clone()]], [vec![x1, fx], vec![z.clone(), z]]],
        )
        .unwrap()
    }

    #[test]
    fn sigma_on_generators_and_squares() {
        let r = jordan();
        let s = h_sigma(&r, 1);
        let x1 = r.gen(0);
        let m = s.apply(&x1);
        assert_eq!(m, Mat2([[RingElement::zero(), x1.clone()], [x1.clone(), RingElement::zero()]]));
        assert_eq!(s.apply(&RingElement::one()), Mat2::identity());
        let sq = r.mul(&x1, &x1);
        assert_eq!(s.apply(&sq), Mat2([[sq.clone(), RingElement::zero()], [RingElement::zero(), sq]]));
    }

    #[test]
    fn delta_examples() {
        let comm = Arc::new(PresentedRing::<Q>::free(&["x1"]).unwrap());
        let id = SigmaMatrix::identity(&comm);
        let d = DeltaColumn::from_components(&id, vec![RingElement::one()], vec![RingElement::zero()]).unwrap();
        let x = comm.gen(0);
        assert_eq!(d.apply(&comm.mul(&x, &x)), Col2([x.scale(&q(2)), RingElement::zero()]));
        assert_eq!(d.apply(&RingElement::one()), Col2::zero());
        let r = jordan();
        let zero = DeltaColumn::zero(&h_sigma(&r, 2));
        for w in r.basis(3) {
            assert!(zero.apply_word(&w).is_zero());
        }
    }

    #[test]
    fn well_definedness() {
        let r = jordan();
        assert!(check_well_defined(&h_sigma(&r, 1), 3).passed());
        assert!(check_well_defined(&SigmaMatrix::identity(&r), 3).passed());
        let (x1, x2) = (r.gen(0), r.gen(1));
        let z = RingElement::zero();
        let bad = SigmaMatrix::from_components(
            &r,
            [[vec![x2.clone(), x2.clone()], vec![z.clone(), z.clone()]], [vec![z.clone(), z], vec![x1, x2]]],
        )
        .unwrap();
        let report = check_well_defined(&bad, 2);
        assert!(!report.passed());
        assert!(report.violations[0].context.starts_with("relation"));
    }

    #[test]
    fn inner_derivation_examples() {
        let r = jordan();
        let d = inner_derivation(&r, &RingElement::zero(), None);
        assert!(d.images().iter().all(RingElement::is_zero));
        let central = RingElement::constant(q(5));
        let d = inner_derivation(&r, &central, None);
        for w in r.basis(3) {
            assert!(d.apply_word(&w).is_zero());
        }
        let poly = Arc::new(PresentedRing::<Q>::free(&["x1"]).unwrap());
        let x = poly.gen(0);
        let neg = Endomorphism::new(&poly, vec![-&x]).unwrap();
        let d = inner_derivation(&poly, &x, Some(&neg));
        assert_eq!(d.apply(&x), poly.mul(&x, &x).scale(&q(2)));
        assert!(check_well_defined(&d, 3).passed());
    }

    #[test]
    fn image_count_is_checked() {
        let r = jordan();
        let err = Endomorphism::new(&r, vec![r.gen(0)]).unwrap_err();
        assert_eq!(err, MapError::ImageCount { expected: 2, got: 1 });
    }

    fn basis_pair() -> impl Strategy<Value = (usize, usize)> {
        (0usize..15, 0usize..15)
    }

    proptest! {
        #[test]
        fn multiplicativity_and_leibniz((i, j) in basis_pair(), f in 1i64..4) {
            let r = jordan();
            let s = h_sigma(&r, f);
            let x2 = r.gen(1);
            let d = DeltaColumn::from_components(&SigmaMatrix::identity(&r), vec![RingElement::zero(), RingElement::zero()], vec![r.gen(0), x2]).unwrap();
            let basis = r.basis(3);
            let (u, v) = (&basis[i % basis.len()], &basis[j % basis.len()]);
            let (ru, rv) = (r.normalize_word(u), r.normalize_word(v));
            let prod = r.mul(&ru, &rv);
            prop_assert_eq!(s.apply(&prod), s.apply(&ru).mul(&r, &s.apply(&rv)));
            let ds = d.sigma();
            prop_assert_eq!(d.apply(&prod), ds.apply(&ru).apply(&r, &d.apply(&rv)).add(&d.apply(&ru).mul_right(&r, &rv)));
            prop_assert_eq!(s.apply(&(&ru + &rv.scale(&q(f)))), {
                let (a, b) = (s.apply(&ru), s.apply(&rv));
                Mat2([[&a.0[0][0] + &b.0[0][0].scale(&q(f)), &a.0[0][1] + &b.0[0][1].scale(&q(f))],
                      [&a.0[1][0] + &b.0[1][0].scale(&q(f)), &a.0[1][1] + &b.0[1][1].scale(&q(f))]])
            });
        }

        #[test]
        fn inner_derivation_is_twisted_leibniz((i, j) in basis_pair(), c in -3i64..4) {
            let r = jordan();
            let a = &r.gen(0).scale(&q(c)) + &r.gen(1);
            let d = inner_derivation(&r, &a, None);
            let basis = r.basis(3);
            let (u, v) = (&basis[i % basis.len()], &basis[j % basis.len()]);
            prop_assert_eq!(d.eval(&r.normalize_word(&u.concat(v))), d.product_rule(u, v));
        }
    }
}
