use super::{check_dcv, commutation_defect, relation_defect, DcvError, DcvMatrix, Scope};
use crate::doubleore::{DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::Field;
use crate::presring::{RingElement, Word};
use crate::report::{Doc, ToReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiInvariantReport {
    pub i: usize,
    pub n: u32,
    pub max_degree: usize,
    pub checked: usize,
    /// `(r, y_i^n r)` for the first word producing another exponent.
    pub failure: Option<(String, String)>,
}

impl SemiInvariantReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl ToReport for SemiInvariantReport {
    fn to_report(&self) -> Doc {
        let mut d = Doc::new()
            .with("check", "semi-invariant")
            .with("monomial", format!("y{}^{}", self.i, self.n))
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("checked", self.checked);
        if let Some((r, p)) = &self.failure {
            d.push("counterexample", Doc::new().with("r", r.clone()).with("product", p.clone()));
        }
        d
    }
}

fn power_times<S: Field>(alg: &DoubleOreAlgebra<S>, i: usize, n: u32, w: &Word) -> ExtElement<S> {
    let r = ExtElement::from_ring(RingElement::monomial(w.clone(), S::one()));
    alg.mul(&alg.pow(&alg.y(i), n), &r)
}

/// Whether `y_i^n R` lies in `R y1^n + R y2^n`, word by word.
pub fn check_semi_invariant<S: Field>(alg: &DoubleOreAlgebra<S>, i: usize, n: u32, max_degree: usize) -> SemiInvariantReport {
    assert!(n >= 1 && (i == 1 || i == 2), "need n >= 1 and i in {{1, 2}}");
    let allowed = [Exponent::new(n, 0), Exponent::new(0, n)];
    let words = alg.ring().basis(max_degree);
    let failure = words.iter().find_map(|w| {
        let p = power_times(alg, i, n, w);
        let bad = p.terms().any(|(e, _)| !allowed.contains(e));
        bad.then(|| (alg.ring().render_word(w), alg.render(&p)))
    });
    SemiInvariantReport { i, n, max_degree, checked: words.len(), failure }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n: u32,
    pub max_degree: usize,
    /// The hypothesis on `q2 q1`; reported, not required.
    pub relation_holds: bool,
    /// `[q1; q2]` satisfies the commutation rule.
    pub left: bool,
    /// `[g1; g2]` satisfies the commutation rule.
    pub g_commutes: bool,
    /// `f sigma^n(r) = sigma'(r) f` entrywise.
    pub twist_matches: bool,
}

impl DecompositionReport {
    pub fn right(&self) -> bool {
        self.g_commutes && self.twist_matches
    }

    pub fn agree(&self) -> bool {
        self.left == self.right()
    }
}

impl ToReport for DecompositionReport {
    fn to_report(&self) -> Doc {
        Doc::new()
            .with("check", "semi-invariant-decomposition")
            .with("n", self.n as usize)
            .with("max_degree", self.max_degree)
            .with("relation_holds", self.relation_holds)
            .with("q_is_dcv", self.left)
            .with("g_is_dcv", self.g_commutes)
            .with("twist_matches", self.twist_matches)
            .with("agree", self.agree())
    }
}

/// Evaluates both sides of the decomposition criterion for `q_i = f y_i^n + g_i`.
pub fn decompose_semi_invariant<S: Field>(
    c: &DcvMatrix<S>,
    target: &DoubleOreAlgebra<S>,
    n: u32,
    f: &ExtElement<S>,
    g: [&ExtElement<S>; 2],
    max_degree: usize,
) -> Result<DecompositionReport, DcvError> {
    c.check_ring(target)?;
    for (i, (q, gi)) in [(&c.q1, g[0]), (&c.q2, g[1])].into_iter().enumerate() {
        if gi.degree().is_some_and(|d| d > n) {
            return Err(DcvError::DecompositionMismatch(format!("deg g{} exceeds {n}", i + 1)));
        }
        let rebuilt = target.mul(f, &target.pow(&target.y(i + 1), n)) + gi.clone();
        if &rebuilt != q {
            return Err(DcvError::DecompositionMismatch(format!(
                "f*y{}^{n} + g{} = {} but q{} = {}",
                i + 1,
                i + 1,
                target.render(&rebuilt),
                i + 1,
                target.render(q)
            )));
        }
    }
    for i in 1..=2 {
        let rep = check_semi_invariant(target, i, n, max_degree);
        if !rep.passed() {
            return Err(DcvError::PreconditionFailure(format!("y{i}^{n} is not semi-invariant up to degree {max_degree}")));
        }
    }

    let left = check_dcv(c, target, Scope::Basis, max_degree)?.commutation_passed();
    let src = &c.source;
    let mut g_commutes = true;
    let mut twist_matches = true;
    for w in target.ring().basis(max_degree) {
        let r = RingElement::monomial(w.clone(), S::one());
        g_commutes &= commutation_defect(target, g, &src.sigma, &src.delta, &r).iter().all(ExtElement::is_zero);
        let s_prime = src.sigma.apply(&r);
        for i in 0..2 {
            let p = power_times(target, i + 1, n, &w);
            for (j, e) in [Exponent::new(n, 0), Exponent::new(0, n)].into_iter().enumerate() {
                let s = ExtElement::from_ring(p.coefficient(e.i, e.j));
                twist_matches &= target.mul(f, &s) == target.ring_times(s_prime.get(i, j), f);
            }
        }
    }
    Ok(DecompositionReport {
        n,
        max_degree,
        relation_holds: relation_defect(target, &c.q1, &c.q2, src).is_zero(),
        left,
        g_commutes,
        twist_matches,
    })
}
