//! Builders for the algebras of the catalog, generic over the ground field.

use std::sync::Arc;

use super::CatalogError;
use crate::doubleore::{DoubleOreAlgebra, DEFAULT_DEGREE};
use crate::exactfield::Field;
use crate::presring::{PresentedRing, RingElement, Word};
use crate::ringmaps::{DeltaColumn, SigmaMatrix};

pub(crate) fn s<S: Field>(n: i64) -> S {
    S::from_i64(n)
}

/// `sum c * word` over generator indices.
pub fn poly<S: Field>(ring: &PresentedRing<S>, terms: &[(i64, &[u16])]) -> RingElement<S> {
    let raw: Vec<(Word, S)> = terms.iter().map(|(c, w)| (Word::from_slice(w), s(*c))).collect();
    ring.normalize(&raw).expect("generator indices are in range")
}

fn two_gen<S: Field>(rel: Vec<(Word, S)>) -> Arc<PresentedRing<S>> {
    Arc::new(PresentedRing::from_relations(vec!["x1".into(), "x2".into()], vec![rel]).expect("valid presentation"))
}

/// `k<x1, x2> / (x2 x1 - x1 x2 - x1^2)`.
pub fn jordan_ring<S: Field>() -> Arc<PresentedRing<S>> {
    let w = Word::from_slice;
    two_gen(vec![(w(&[1, 0]), s(1)), (w(&[0, 1]), s(-1)), (w(&[0, 0]), s(-1))])
}

/// `k<x1, x2> / (x2 x1 + x1 x2)`.
pub fn skew_ring<S: Field>() -> Arc<PresentedRing<S>> {
    let w = Word::from_slice;
    two_gen(vec![(w(&[1, 0]), s(1)), (w(&[0, 1]), s(1))])
}

/// `k<x1, x2> / (x2 x2 + x1 x2)`, the relation exactly as printed for the Nakayama
/// example.
pub fn literal_n_ring<S: Field>() -> Arc<PresentedRing<S>> {
    let w = Word::from_slice;
    two_gen(vec![(w(&[1, 1]), s(1)), (w(&[0, 1]), s(1))])
}

/// `k[x]`.
pub fn line_ring<S: Field>() -> Arc<PresentedRing<S>> {
    Arc::new(PresentedRing::free(&["x"]).expect("one generator"))
}

fn sigma<S: Field>(ring: &Arc<PresentedRing<S>>, c: [[Vec<RingElement<S>>; 2]; 2]) -> Result<SigmaMatrix<S>, CatalogError> {
    Ok(SigmaMatrix::from_components(ring, c)?)
}

fn zeros<S: Field>(ring: &PresentedRing<S>) -> Vec<RingElement<S>> {
    vec![RingElement::zero(); ring.num_gens()]
}

fn trimmed<S: Field>(sg: &SigmaMatrix<S>, p12: S, p11: S) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let z = RingElement::zero;
    Ok(DoubleOreAlgebra::new(sg.ring(), sg, &DeltaColumn::zero(sg), p12, p11, [z(), z(), z()], DEFAULT_DEGREE)?)
}

/// Trimmed algebra over the Jordan plane with `p = (-1, 0)`, `sigma11 = sigma22 = 0` and
/// `y1 x2 = f x1 y2 + x2 y2`, `y2 x2 = f x1 y1 + x2 y1`.
pub fn algebra_h<S: Field>(f: i64) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    if f == 0 {
        return Err(CatalogError::Parameter("H needs f != 0".into()));
    }
    let r = jordan_ring::<S>();
    let (x1, fx) = (poly(&r, &[(1, &[0])]), poly(&r, &[(f, &[0]), (1, &[1])]));
    let sg = sigma(&r, [[zeros(&r), vec![x1.clone(), fx.clone()]], [vec![x1, fx], zeros(&r)]])?;
    trimmed(&sg, s(-1), s(0))
}

/// Trimmed algebra over the Jordan plane with `P = (1, 1)`, `sigma12 = 0`,
/// `sigma11 = sigma22 = (f x1, g x1 + f x2)` and `sigma21 = (h x1, m x1 + h x2)`.
pub fn algebra_subcase_411<S: Field>(f: i64, g: i64, h: i64, m: i64) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    if f == 0 {
        return Err(CatalogError::Parameter("subcase 4.1.1 needs f != 0".into()));
    }
    let r = jordan_ring::<S>();
    let lin = |a: i64, b: i64, c: i64| vec![poly(&r, &[(a, &[0])]), poly(&r, &[(b, &[0]), (c, &[1])])];
    let sg = sigma(&r, [[lin(f, g, f), zeros(&r)], [lin(h, m, h), lin(f, g, f)]])?;
    trimmed(&sg, s(1), s(1))
}

/// Skew plane with `y2 y1 = p y1 y2`, `y1 x1 = -p x1 y1`, `y1 x2 = -p^2 x2 y1 + x1 y2`,
/// `y2 x1 = p x1 y2`, `y2 x2 = x1 y1 + x2 y2`.
pub fn algebra_d<S: Field>(p: i64) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    if p != 1 && p != -1 {
        return Err(CatalogError::Parameter("D needs p in {-1, 1}".into()));
    }
    let r = skew_ring::<S>();
    let g = |c: i64, k: u16| poly(&r, &[(c, &[k])]);
    let sg = sigma(
        &r,
        [
            [vec![g(-p, 0), g(-p * p, 1)], vec![RingElement::zero(), g(1, 0)]],
            [vec![RingElement::zero(), g(1, 0)], vec![g(p, 0), g(1, 1)]],
        ],
    )?;
    trimmed(&sg, s(p), s(0))
}

/// Skew plane with `y2 y1 = p y1 y2` where `p^2 = -1`, `y1 x1 = (x1 + x2) y2`,
/// `y1 x2 = (x1 - x2) y2`, `y2 x1 = (x2 - x1) y1`, `y2 x2 = (x1 + x2) y1`.
pub fn algebra_e<S: Field>(p: i64) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let ps: S = s(p);
    if ps.clone() * ps.clone() != -S::one() {
        return Err(CatalogError::Parameter(format!("E needs p^2 = -1, got p = {ps}")));
    }
    let r = skew_ring::<S>();
    let l = |a: i64, b: i64| poly(&r, &[(a, &[0]), (b, &[1])]);
    let sg = sigma(&r, [[zeros(&r), vec![l(1, 1), l(1, -1)]], [vec![l(-1, 1), l(1, 1)], zeros(&r)]])?;
    trimmed(&sg, ps, s(0))
}

/// A way of reading the printed 4x4 scalar matrix of the Nakayama example as sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NReading {
    /// Rows ordered `y1x1, y1x2, y2x1, y2x2` (else `y1x1, y2x1, y1x2, y2x2`).
    pub rows_by_y: bool,
    /// Columns ordered `x1y1, x2y1, x1y2, x2y2` (else `x1y1, x1y2, x2y1, x2y2`).
    pub cols_by_y: bool,
    pub transposed: bool,
}

impl NReading {
    /// The eight readings in the documented enumeration order.
    pub fn all() -> Vec<NReading> {
        let mut out = Vec::new();
        for transposed in [false, true] {
            for rows_by_y in [true, false] {
                for cols_by_y in [true, false] {
                    out.push(NReading { rows_by_y, cols_by_y, transposed });
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!(
            "rows {}, columns {}{}",
            if self.rows_by_y { "y1x1,y1x2,y2x1,y2x2" } else { "y1x1,y2x1,y1x2,y2x2" },
            if self.cols_by_y { "x1y1,x2y1,x1y2,x2y2" } else { "x1y1,x1y2,x2y1,x2y2" },
            if self.transposed { ", transposed" } else { "" }
        )
    }

    /// `(i, k)` for `y_i x_k`, zero-based.
    fn row(&self, idx: usize) -> (usize, usize) {
        if self.rows_by_y {
            (idx / 2, idx % 2)
        } else {
            (idx % 2, idx / 2)
        }
    }

    /// `(k, j)` for `x_k y_j`, zero-based.
    fn col(&self, idx: usize) -> (usize, usize) {
        if self.cols_by_y {
            (idx % 2, idx / 2)
        } else {
            (idx / 2, idx % 2)
        }
    }
}

pub fn n_matrix(f: i64, g: i64) -> [[i64; 4]; 4] {
    [[0, 0, -g, f], [0, 0, f, -g], [g, f, 0, 0], [f, g, 0, 0]]
}

/// The trimmed algebra with `P = (-1, 0)` over `ring`, sigma read from the printed matrix.
pub fn algebra_n_over<S: Field>(
    ring: &Arc<PresentedRing<S>>,
    f: i64,
    g: i64,
    reading: NReading,
) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let (fs, gs): (S, S) = (s(f), s(g));
    if fs.clone() * fs == gs.clone() * gs {
        return Err(CatalogError::Parameter(format!("N needs f^2 != g^2, got (f, g) = ({f}, {g})")));
    }
    let m = n_matrix(f, g);
    let mut comps: [[Vec<RingElement<S>>; 2]; 2] = Default::default();
    for c in comps.iter_mut().flatten() {
        *c = zeros(ring);
    }
    for a in 0..4 {
        for b in 0..4 {
            let v = if reading.transposed { m[b][a] } else { m[a][b] };
            if v == 0 {
                continue;
            }
            let (i, k) = reading.row(a);
            let (kk, j) = reading.col(b);
            let img = &comps[i][j][k] + &poly(ring, &[(v, &[kk as u16])]);
            comps[i][j][k] = img;
        }
    }
    let sg = sigma(ring, comps)?;
    trimmed(&sg, s(-1), s(0))
}

pub fn algebra_n<S: Field>(f: i64, g: i64, reading: NReading) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    algebra_n_over(&skew_ring::<S>(), f, g, reading)
}

/// Table target with `sigma = diag(theta, theta)`, `theta(x) = -x`, `delta = (1, 0)` on
/// `x` and `y2 y1 = -y1 y2`; here `sigma11 delta1 = -delta1 sigma11`.
pub fn target_anticommuting<S: Field>() -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let th = vec![poly(&r, &[(-1, &[0])])];
    let sg = sigma(&r, [[th.clone(), zeros(&r)], [zeros(&r), th]])?;
    let d = DeltaColumn::from_components(&sg, vec![RingElement::one()], zeros(&r))?;
    let z = RingElement::zero;
    Ok(DoubleOreAlgebra::new(&r, &sg, &d, s(-1), s(0), [z(), z(), z()], DEFAULT_DEGREE)?)
}

/// Table target with `sigma = diag(eps, id)`, `eps(x) = 0`, `delta = (x, 0)` on `x` and
/// `y2 y1 = y1 y2`.
pub fn target_idempotent<S: Field>() -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let sg = sigma(&r, [[zeros(&r), zeros(&r)], [zeros(&r), vec![r.gen(0)]]])?;
    let d = DeltaColumn::from_components(&sg, vec![r.gen(0)], zeros(&r))?;
    let z = RingElement::zero;
    Ok(DoubleOreAlgebra::new(&r, &sg, &d, s(1), s(0), [z(), z(), z()], DEFAULT_DEGREE)?)
}

/// Table target with `sigma = diag(eps, id)`, `delta = (0, x)` on `x` and `y2 y1 = y1 y2`.
pub fn target_second_derivation<S: Field>() -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let sg = sigma(&r, [[zeros(&r), zeros(&r)], [zeros(&r), vec![r.gen(0)]]])?;
    let d = DeltaColumn::from_components(&sg, zeros(&r), vec![r.gen(0)])?;
    let z = RingElement::zero;
    Ok(DoubleOreAlgebra::new(&r, &sg, &d, s(1), s(0), [z(), z(), z()], DEFAULT_DEGREE)?)
}

/// `sigma = I`, `delta = (0, d/dx)`, `y2 y1 = y1 y2`.
pub fn target_weyl<S: Field>() -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let sg = SigmaMatrix::identity(&r);
    let d = DeltaColumn::from_components(&sg, zeros(&r), vec![RingElement::one()])?;
    let z = RingElement::zero;
    Ok(DoubleOreAlgebra::new(&r, &sg, &d, s(1), s(0), [z(), z(), z()], DEFAULT_DEGREE)?)
}

/// `sigma11 = sigma21 = id`, `sigma12 = sigma22 = 0` on generators, `y2 y1 = y1 y2`.
pub fn target_equal_rows<S: Field>() -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let sg = sigma(&r, [[vec![r.gen(0)], zeros(&r)], [vec![r.gen(0)], zeros(&r)]])?;
    trimmed(&sg, s(1), s(0))
}

/// Data for the normalization round trip: `p12 = 1` uses `delta2 = d/dx` with a tail,
/// `p12 = 3` the twist `theta` with `tau0 = x^2 + 1`, anything else `sigma = I` with a
/// full tail.
pub fn lemma_data<S: Field>(p12: i64, p11: i64) -> Result<DoubleOreAlgebra<S>, CatalogError> {
    let r = line_ring::<S>();
    let x = r.gen(0);
    let z = RingElement::zero;
    let (sg, d, tau) = match (p12, p11) {
        (1, _) => {
            let sg = SigmaMatrix::identity(&r);
            let d = DeltaColumn::from_components(&sg, zeros(&r), vec![RingElement::one()])?;
            (sg, d, [x.clone(), &RingElement::one() + &x, z()])
        }
        (3, _) => {
            let th = vec![poly(&r, &[(-1, &[0])])];
            let sg = sigma(&r, [[th.clone(), zeros(&r)], [zeros(&r), th]])?;
            let d = DeltaColumn::zero(&sg);
            (sg, d, [poly(&r, &[(1, &[0, 0]), (1, &[])]), z(), z()])
        }
        _ => {
            let sg = SigmaMatrix::identity(&r);
            let d = DeltaColumn::zero(&sg);
            (sg, d, [poly(&r, &[(1, &[0])]), poly(&r, &[(2, &[])]), poly(&r, &[(-1, &[0])])])
        }
    };
    Ok(DoubleOreAlgebra::new(&r, &sg, &d, s(p12), s(p11), tau, DEFAULT_DEGREE)?)
}
