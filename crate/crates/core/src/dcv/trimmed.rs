use super::{check_dcv, DcvCertificate, DcvError, DcvMatrix, Scope, SourceData};
use crate::doubleore::{DoubleOreAlgebra, ExtElement};
use crate::exactfield::Field;
use crate::presring::RingElement;
use crate::report::{Doc, ToReport};
use crate::ringmaps::SigmaMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedReport {
    pub max_degree: usize,
    pub left: DcvCertificate,
    pub degrees_equal: bool,
    pub coefficients_equal: bool,
    pub mixed_vanish: bool,
    pub twist_matches: bool,
}

impl TrimmedReport {
    pub fn right(&self) -> bool {
        self.degrees_equal && self.coefficients_equal && self.mixed_vanish && self.twist_matches
    }

    pub fn agree(&self) -> bool {
        self.left.passed() == self.right()
    }
}

impl ToReport for TrimmedReport {
    fn to_report(&self) -> Doc {
        Doc::new()
            .with("check", "trimmed-dcv")
            .with("max_degree", self.max_degree)
            .with("dcv_side", self.left.passed())
            .with(
                "criterion_side",
                Doc::new()
                    .with("passed", self.right())
                    .with("degrees_equal", self.degrees_equal)
                    .with("coefficients_equal", self.coefficients_equal)
                    .with("mixed_compositions_vanish", self.mixed_vanish)
                    .with("twist_matches", self.twist_matches),
            )
            .with("agree", self.agree())
    }
}

fn trim<S: Field>(c: &[S]) -> &[S] {
    let end = c.iter().rposition(|x| !x.is_zero()).map_or(0, |p| p + 1);
    &c[..end]
}

/// `sigma^i_pq(r)`: the identity matrix for `i = 0`, else the `i`-fold composite of the
/// `(p, q)` component.
fn sigma_power<S: Field>(sigma: &SigmaMatrix<S>, i: usize, p: usize, q: usize, r: &RingElement<S>) -> RingElement<S> {
    if i == 0 {
        return if p == q { r.clone() } else { RingElement::zero() };
    }
    (0..i).fold(r.clone(), |acc, _| sigma.component(p, q, &acc))
}

/// Both sides of the trimmed characterization for `q1 = sum a_i y1^i`, `q2 = sum b_j y2^j`.
pub fn check_trimmed_dcv<S: Field>(
    source: &SourceData<S>,
    target: &DoubleOreAlgebra<S>,
    a: &[S],
    b: &[S],
    max_degree: usize,
) -> Result<TrimmedReport, DcvError> {
    if !source.is_trimmed() || !target.is_trimmed() {
        return Err(DcvError::PreconditionFailure("source and target must be trimmed".into()));
    }
    let poly = |c: &[S], k: usize| {
        c.iter().enumerate().fold(ExtElement::zero(), |acc, (i, x)| {
            let (e1, e2) = if k == 1 { (i as u32, 0) } else { (0, i as u32) };
            acc + ExtElement::monomial(e1, e2, RingElement::constant(x.clone()))
        })
    };
    let (q1, q2) = (poly(a, 1), poly(b, 2));
    let lhs = target.mul(&q2, &q1);
    let rhs = target.mul(&q1, &q2).scale(&source.p12) + target.mul(&q1, &q1).scale(&source.p11);
    if lhs != rhs {
        return Err(DcvError::PreconditionFailure(format!(
            "q2*q1 = {} differs from p12'*q1*q2 + p11'*q1^2 = {}",
            target.render(&lhs),
            target.render(&rhs)
        )));
    }
    let left = check_dcv(&DcvMatrix::new(q1, q2, source.clone()), target, Scope::Basis, max_degree)?;

    let (a, b) = (trim(a), trim(b));
    let sigma = target.sigma();
    let words = target.ring().basis(max_degree);
    let mut mixed_vanish = true;
    let mut twist_matches = true;
    for w in &words {
        let r = RingElement::monomial(w.clone(), S::one());
        for (l, k) in [(0, 1), (1, 0)] {
            let diag_off = sigma.component(l, l, &sigma.component(l, k, &r));
            let off_diag = sigma.component(l, k, &sigma.component(l, l, &r));
            mixed_vanish &= diag_off.is_zero() && off_diag.is_zero();
        }
        let sp = source.sigma.apply(&r);
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for p in 0..2 {
                for q in 0..2 {
                    twist_matches &= sigma_power(sigma, i, p, q, &r).scale(ai) == sp.get(p, q).scale(ai);
                }
            }
        }
    }
    Ok(TrimmedReport {
        max_degree,
        left,
        degrees_equal: a.len() == b.len(),
        coefficients_equal: a == b,
        mixed_vanish,
        twist_matches,
    })
}
