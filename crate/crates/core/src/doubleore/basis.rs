use std::collections::BTreeMap;

use super::{AlgebraError, DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::{solve_linear, Field, ScalarMatrix};
use crate::presring::{RingElement, Word};
use crate::report::{Doc, ToReport};
use crate::ringmaps::{Col2, DeltaColumn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeCase {
    /// p12 = 1, p11 != 0: rescale y1 by p11.
    Rescale,
    /// p12 != 1: shift y2 by q y1 with q = p11 / (p12 - 1).
    Shift,
}

/// New generators `ybar = M y`, i.e. `ybar_i = m[i][0] y1 + m[i][1] y2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange<S> {
    pub case: ChangeCase,
    pub m: [[S; 2]; 2],
    pub m_inv: [[S; 2]; 2],
}

impl<S: Field> BasisChange<S> {
    fn combo(alg: &DoubleOreAlgebra<S>, row: &[S; 2]) -> ExtElement<S> {
        alg.y1().scale(&row[0]) + alg.y2().scale(&row[1])
    }

    /// `ybar` written in the old algebra.
    pub fn new_generators(&self, old: &DoubleOreAlgebra<S>) -> (ExtElement<S>, ExtElement<S>) {
        (Self::combo(old, &self.m[0]), Self::combo(old, &self.m[1]))
    }

    /// The old `y` written in the new algebra.
    pub fn old_generators(&self, new: &DoubleOreAlgebra<S>) -> (ExtElement<S>, ExtElement<S>) {
        (Self::combo(new, &self.m_inv[0]), Self::combo(new, &self.m_inv[1]))
    }
}

fn transform<S: Field>(
    alg: &DoubleOreAlgebra<S>,
    m: [[S; 2]; 2],
    m_inv: [[S; 2]; 2],
    keep_delta: bool,
) -> Result<(super::SigmaMatrix<S>, DeltaColumn<S>), AlgebraError> {
    let sigma = alg.sigma().conjugate(m.clone(), m_inv);
    let delta = if keep_delta {
        let n = alg.ring().num_gens();
        let images = (0..n)
            .map(|k| {
                let c = alg.delta().generator_image(k);
                let row = |i: usize| c.get(0).scale(&m[i][0]) + c.get(1).scale(&m[i][1]);
                Col2([row(0), row(1)])
            })
            .collect();
        DeltaColumn::new(&sigma, images)?
    } else {
        DeltaColumn::zero(&sigma)
    };
    Ok((sigma, delta))
}

fn shift_matrices<S: Field>(alg: &DoubleOreAlgebra<S>) -> Result<([[S; 2]; 2], [[S; 2]; 2], S), AlgebraError> {
    let denom = alg.p12().clone() - S::one();
    let q = alg.p11().div(&denom).map_err(|_| AlgebraError::NotApplicable("p12 = 1".into()))?;
    let (o, z) = (S::one(), S::zero());
    Ok(([[o.clone(), z.clone()], [q.clone(), o.clone()]], [[o.clone(), z], [-q.clone(), o]], q))
}

/// Normalizes the parameters: `P = {1, 1}` when p12 = 1 and p11 != 0, `P = {p12, 0}`
/// when p12 != 1.
pub fn change_basis<S: Field>(alg: &DoubleOreAlgebra<S>) -> Result<(DoubleOreAlgebra<S>, BasisChange<S>), AlgebraError> {
    let [t0, t1, t2] = alg.taus().clone();
    let (o, z) = (S::one(), S::zero());
    if alg.p12().is_one() {
        if alg.p11().is_zero() {
            return Err(AlgebraError::NotApplicable("p11 = 0 and p12 = 1".into()));
        }
        let p = alg.p11().clone();
        let pinv = p.inv().expect("p11 is nonzero");
        let m = [[p.clone(), z.clone()], [z.clone(), o.clone()]];
        let m_inv = [[pinv, z.clone()], [z, o.clone()]];
        let (sigma, delta) = transform(alg, m.clone(), m_inv.clone(), true)?;
        let tau = [t0.scale(&p), t1, t2.scale(&p)];
        let new = DoubleOreAlgebra::new(alg.ring(), &sigma, &delta, o.clone(), o, tau, alg.certified_bound())?;
        return Ok((new, BasisChange { case: ChangeCase::Rescale, m, m_inv }));
    }
    let (m, m_inv, q) = shift_matrices(alg)?;
    let (sigma, delta) = transform(alg, m.clone(), m_inv.clone(), true)?;
    let tau = [t0, &t1 - &t2.scale(&q), t2];
    let new = DoubleOreAlgebra::new(alg.ring(), &sigma, &delta, alg.p12().clone(), z, tau, alg.certified_bound())?;
    Ok((new, BasisChange { case: ChangeCase::Shift, m, m_inv }))
}

/// The associated graded algebra: shifted sigma, zero delta and tail, p11 = 0.
pub fn associated_graded<S: Field>(alg: &DoubleOreAlgebra<S>) -> Result<DoubleOreAlgebra<S>, AlgebraError> {
    if alg.p12().is_one() {
        return Err(AlgebraError::NotApplicable("p12 = 1".into()));
    }
    let (m, m_inv, _) = shift_matrices(alg)?;
    let (sigma, delta) = transform(alg, m, m_inv, false)?;
    let zero = || RingElement::zero();
    DoubleOreAlgebra::new(
        alg.ring(),
        &sigma,
        &delta,
        alg.p12().clone(),
        S::zero(),
        [zero(), zero(), zero()],
        alg.certified_bound(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightBasisReport {
    pub max_degree: usize,
    pub p12_nonzero: bool,
    /// Number of products `y2^i y1^j w` tested.
    pub size: usize,
    pub independent: bool,
    pub spans: bool,
}

impl RightBasisReport {
    pub fn passed(&self) -> bool {
        self.independent && self.spans
    }

    /// Double (not just right double) up to the bound.
    pub fn double_certified(&self) -> bool {
        self.p12_nonzero && self.passed()
    }
}

impl ToReport for RightBasisReport {
    fn to_report(&self) -> Doc {
        Doc::new()
            .with("check", "right-basis")
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("independent", self.independent)
            .with("spans", self.spans)
            .with("p12_nonzero", self.p12_nonzero)
            .with("double_certified_to_degree", self.double_certified())
    }
}

/// Compares the filtration pieces spanned by `y2^i y1^j w` and `w y1^a y2^b`
/// (y-degree plus ring degree at most `max_degree`).
pub fn check_right_basis<S: Field>(alg: &DoubleOreAlgebra<S>, max_degree: usize) -> RightBasisReport {
    let ring = alg.ring();
    let basis = ring.basis(max_degree);
    let exps = Exponent::up_to(max_degree as u32);
    let words_upto = |d: usize| basis.iter().filter(move |w| w.len() <= d);

    let mut right: Vec<ExtElement<S>> = Vec::new();
    let mut left: Vec<ExtElement<S>> = Vec::new();
    for e in &exps {
        let rest = max_degree - e.total() as usize;
        // e.i counts y2 factors, e.j counts y1 factors on the right-basis side.
        let mono = alg.mul(&alg.pow(&alg.y2(), e.i), &alg.pow(&alg.y1(), e.j));
        for w in words_upto(rest) {
            let r = ExtElement::from_ring(RingElement::monomial(w.clone(), S::one()));
            right.push(alg.mul(&mono, &r));
            left.push(ExtElement::monomial(e.i, e.j, RingElement::monomial(w.clone(), S::one())));
        }
    }

    let mut coords: BTreeMap<(Exponent, Word), usize> = BTreeMap::new();
    for el in right.iter().chain(&left) {
        for (e, r) in el.terms() {
            for (w, _) in r.terms() {
                let n = coords.len();
                coords.entry((*e, w.clone())).or_insert(n);
            }
        }
    }
    let to_matrix = |els: &[ExtElement<S>]| {
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
    let (mv, mu) = (to_matrix(&right), to_matrix(&left));
    let sol = solve_linear(&mv, &mu).expect("matrices share a row count");
    RightBasisReport {
        max_degree,
        p12_nonzero: alg.is_double_candidate(),
        size: right.len(),
        independent: sol.rank == right.len(),
        spans: sol.solution.is_some(),
    }
}
