use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::catalog::{algebra_d, algebra_e, algebra_h, algebra_n, lemma_data, pin_n_reading, scaled_generators, target_weyl};
use crate::doubleore::{build_extension, Exponent};
use crate::presring::PresentedRing;
use crate::{F5, Q};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn h() -> DoubleOreAlgebra<Q> {
    algebra_h(1).unwrap()
}

fn identity(alg: &DoubleOreAlgebra<Q>) -> DcvMatrix<Q> {
    scaled_generators(alg, &q(1))
}

fn d_to_e() -> (DoubleOreAlgebra<F5>, DcvMatrix<F5>) {
    let e = algebra_e::<F5>(2).unwrap();
    let r = e.ring().clone();
    let z = RingElement::zero;
    let alpha = vec![r.gen(0).scale(&F5::new(-1)), r.gen(1)];
    let sg = SigmaMatrix::from_components(&r, [[alpha.clone(), vec![z(), z()]], [vec![z(), z()], alpha]]).unwrap();
    let c = DcvMatrix::new(
        ExtElement::from_ring(r.gen(0)),
        ExtElement::from_ring(r.gen(1)),
        SourceData::trimmed(&sg, F5::new(-1), F5::new(0)),
    );
    (e, c)
}

#[test]
fn h_scalings_are_dcv_matrices() {
    let alg = h();
    for l in [2, -1, 7] {
        let cert = check_dcv(&scaled_generators(&alg, &q(l)), &alg, Scope::Basis, 3).unwrap();
        assert!(cert.passed(), "lambda = {l}");
        assert_eq!(cert.words.len(), alg.ring().basis(3).len());
    }
}

#[test]
fn identity_candidate() {
    for alg in [h(), lemma_data(1, 2).unwrap(), algebra_d(1).unwrap()] {
        let c = identity(&alg);
        assert!(check_dcv(&c, &alg, Scope::Basis, 3).unwrap().passed());
        assert!(check_hom_multiplicative(&c, &alg, 2).unwrap().passed());
        let s = bounded_surjectivity(&c, &alg, 1).unwrap();
        assert!(s.passed());
    }
}

#[test]
fn d_to_e_depends_on_scope() {
    let (e, c) = d_to_e();
    assert!(check_dcv(&c, &e, Scope::Scalars, 3).unwrap().passed());
    let g = check_dcv(&c, &e, Scope::Generators, 3).unwrap();
    assert!(g.relation_passed);
    // x1 * x1 = x1^2 while alpha(x1) x1 = -x1^2
    assert!(!g.words[1].passed);
}

#[test]
fn induced_map_values() {
    let alg = h();
    let c = scaled_generators(&alg, &q(2));
    assert_eq!(induced_hom_apply(&c, &ExtElement::one(), &alg).unwrap(), ExtElement::one());
    let y1y2 = ExtElement::monomial(1, 1, RingElement::one());
    assert_eq!(induced_hom_apply(&c, &y1y2, &alg).unwrap(), ExtElement::monomial(1, 1, RingElement::constant(q(4))));

    // y2' y1' = -y1' y2' in the source, sent to x2 x1 = -x1 x2
    let (e, c) = d_to_e();
    let lhs = induced_hom_apply(&c, &ExtElement::monomial(1, 1, RingElement::constant(F5::new(-1))), &e).unwrap();
    let x1x2 = RingElement::monomial(Word::from_slice(&[0, 1]), F5::new(-1));
    assert_eq!(lhs, ExtElement::from_ring(x1x2));
    assert_eq!(lhs, e.mul(&c.q2, &c.q1));
}

#[test]
fn ring_mismatch() {
    let alg = h();
    let other = algebra_h::<Q>(2).unwrap();
    let c = identity(&other);
    assert_eq!(check_dcv(&c, &alg, Scope::Basis, 1).unwrap_err(), DcvError::RingMismatch);
    assert_eq!(induced_hom_apply(&c, &ExtElement::one(), &alg).unwrap_err(), DcvError::RingMismatch);
}

#[test]
fn multiplicativity_and_perturbation() {
    let alg = h();
    let c = scaled_generators(&alg, &q(2));
    let rep = check_hom_multiplicative(&c, &alg, 2).unwrap();
    assert!(rep.passed() && rep.source_compatible);

    let mut bad = c.clone();
    bad.source = bad.source.with_tau(1, RingElement::one());
    assert!(!check_dcv(&bad, &alg, Scope::Basis, 2).unwrap().relation_passed);
    let rep = check_hom_multiplicative(&bad, &alg, 2).unwrap();
    assert!(!rep.passed());
}

#[test]
fn unbuildable_source() {
    let (e, mut c) = d_to_e();
    let r = e.ring().clone();
    let z = RingElement::zero;
    // alpha(x1) = alpha(x2) = x2 does not respect x2 x1 = -x1 x2
    let bad = vec![r.gen(1), r.gen(1)];
    let sg = SigmaMatrix::from_components(&r, [[bad.clone(), vec![z(), z()]], [vec![z(), z()], bad]]).unwrap();
    c.source = SourceData::trimmed(&sg, F5::new(-1), F5::new(0));
    assert!(matches!(check_hom_multiplicative(&c, &e, 1), Err(DcvError::SourceNotBuildable(_))));
}

#[test]
fn semi_invariance() {
    let alg = h();
    // y1^2 x1 = y1 x1 y2 = x1 y2^2
    let x1 = ExtElement::from_ring(alg.ring().gen(0));
    assert_eq!(alg.mul(&alg.pow(&alg.y1(), 2), &x1), ExtElement::monomial(0, 2, alg.ring().gen(0)));
    assert!(check_semi_invariant(&alg, 1, 2, 1).passed());
    assert!(check_semi_invariant(&alg, 2, 1, 3).passed());

    let w = lemma_data::<Q>(1, 2).unwrap();
    let rep = check_semi_invariant(&w, 2, 1, 2);
    assert!(!rep.passed());
    assert_eq!(rep.failure.unwrap().0, "x");
}

#[test]
fn decomposition_both_directions() {
    let alg = h();
    let zero = ExtElement::zero();
    for l in [1, 2] {
        let c = scaled_generators(&alg, &q(l));
        let f = ExtElement::scalar(q(l));
        let rep = decompose_semi_invariant(&c, &alg, 1, &f, [&zero, &zero], 3).unwrap();
        assert!(rep.left && rep.right() && rep.agree() && rep.relation_holds);
    }

    let c = scaled_generators(&alg, &q(2));
    let g1 = ExtElement::from_ring(alg.ring().gen(0));
    let mut perturbed = c.clone();
    perturbed.q1 = perturbed.q1 + g1.clone();
    let rep = decompose_semi_invariant(&perturbed, &alg, 1, &ExtElement::scalar(q(2)), [&g1, &zero], 3).unwrap();
    assert!(!rep.left && !rep.g_commutes && rep.agree());

    // with sigma' = I only the twist condition breaks
    let mut twisted = c.clone();
    twisted.source = SourceData::trimmed(&SigmaMatrix::identity(alg.ring()), q(-1), q(0));
    let rep = decompose_semi_invariant(&twisted, &alg, 1, &ExtElement::scalar(q(2)), [&zero, &zero], 3).unwrap();
    assert!(!rep.left && rep.g_commutes && !rep.twist_matches && rep.agree());
}

#[test]
fn decomposition_errors() {
    let alg = h();
    let zero = ExtElement::zero();
    let c = scaled_generators(&alg, &q(2));
    let err = decompose_semi_invariant(&c, &alg, 1, &ExtElement::scalar(q(3)), [&zero, &zero], 2).unwrap_err();
    assert!(matches!(err, DcvError::DecompositionMismatch(_)));
    let big = alg.pow(&alg.y1(), 2);
    let err = decompose_semi_invariant(&c, &alg, 1, &ExtElement::scalar(q(2)), [&big, &zero], 2).unwrap_err();
    assert!(matches!(err, DcvError::DecompositionMismatch(_)));

    let w = lemma_data::<Q>(1, 2).unwrap();
    let err = decompose_semi_invariant(&identity(&w), &w, 1, &ExtElement::one(), [&zero, &zero], 2).unwrap_err();
    assert!(matches!(err, DcvError::PreconditionFailure(_)));
}

#[test]
fn iso_degree() {
    let alg = h();
    assert!(iso_degree_check(&scaled_generators(&alg, &q(2))).passed());

    let r = alg.ring();
    let quad = DcvMatrix::new(
        alg.pow(&alg.y1(), 2).scale(&q(3)) + ExtElement::from_ring(r.gen(1)),
        ExtElement::scalar(q(5)),
        SourceData::from_algebra(&alg),
    );
    let rep = iso_degree_check(&quad);
    assert!(!rep.passed());
    assert_eq!((rep.degree_q1, rep.degree_q2), (Some(2), Some(0)));

    let (_, c) = d_to_e();
    assert!(!iso_degree_check(&c).passed());
}

#[test]
fn surjectivity() {
    let alg = h();
    let rep = bounded_surjectivity(&scaled_generators(&alg, &q(2)), &alg, 1).unwrap();
    assert!(rep.passed());
    assert!(rep.witnesses[0].contains("1/2 * phi(y1')"), "{:?}", rep.witnesses);

    let squares = DcvMatrix::new(alg.pow(&alg.y1(), 2), alg.pow(&alg.y2(), 2), SourceData::from_algebra(&alg));
    for d in 1..=3 {
        let rep = bounded_surjectivity(&squares, &alg, d).unwrap();
        assert!(!rep.y1_reached && !rep.y2_reached, "bound {d}");
    }
}

#[test]
fn trimmed_characterization() {
    let alg = h();
    let src = SourceData::from_algebra(&alg);
    let lam = [q(0), q(2)];
    let rep = check_trimmed_dcv(&src, &alg, &lam, &lam, 3).unwrap();
    assert!(rep.left.passed() && rep.right() && rep.agree());

    let (f, g) = (1, 2);
    let n = algebra_n::<Q>(f, g, pin_n_reading(f, g, 3).unwrap().chosen).unwrap();
    let three = [q(0), q(3)];
    let rep = check_trimmed_dcv(&SourceData::from_algebra(&n), &n, &three, &three, 3).unwrap();
    assert!(rep.left.passed() && rep.right());

    let rep = check_trimmed_dcv(&src, &alg, &[q(0), q(2)], &[q(0), q(3)], 3).unwrap();
    assert!(!rep.left.passed() && !rep.coefficients_equal && rep.agree());

    let commuting = SourceData { p12: q(1), ..src.clone() };
    let err = check_trimmed_dcv(&commuting, &alg, &lam, &lam, 2).unwrap_err();
    assert!(matches!(err, DcvError::PreconditionFailure(_)));

    let w = target_weyl::<Q>().unwrap();
    let err = check_trimmed_dcv(&SourceData::from_algebra(&w), &w, &lam, &lam, 2).unwrap_err();
    assert!(matches!(err, DcvError::PreconditionFailure(_)));
}

/// `k[x]` with `sigma(x) = [[x, 0], [x, x]]`, `y2 y1 = y1 y2`.
fn lower_triangular() -> DoubleOreAlgebra<Q> {
    let r = Arc::new(PresentedRing::<Q>::free(&["x"]).unwrap());
    let x = vec![r.gen(0)];
    let sg = SigmaMatrix::from_components(&r, [[x.clone(), vec![RingElement::zero()]], [x.clone(), x]]).unwrap();
    let z = RingElement::zero;
    build_extension(&r, &sg, &DeltaColumn::zero(&sg), q(1), q(0), [z(), z(), z()]).unwrap()
}

#[test]
fn translation_to_iterated() {
    let (e, c) = d_to_e();
    let rep = hom_to_iterated(&c, &e, Scope::Scalars, 3).unwrap();
    assert!(rep.passed(), "{:?}", rep.violated());
    assert!(rep.emitted.unwrap()[2].starts_with("q2*q1 = "));
    let rel = e.mul(&c.q1, &c.q2).scale(&c.source.p12) + e.ring_times(&c.source.tau[1], &c.q1);
    assert_eq!(e.mul(&c.q2, &c.q1), rel);

    let alg = lower_triangular();
    let c = identity(&alg);
    let rep = hom_to_iterated(&c, &alg, Scope::Basis, 3).unwrap();
    assert_eq!(rep.violated(), vec!["sigma21' = 0"]);
    assert!(rep.relaxed_passed());

    let mut tail = c.clone();
    tail.source = tail.source.with_tau(2, alg.ring().gen(0));
    let rep = hom_to_iterated(&tail, &alg, Scope::Basis, 3).unwrap();
    assert!(rep.violated().contains(&"tau2' = 0"));
    assert!(rep.emitted.is_none());
}

fn f5_h() -> DoubleOreAlgebra<F5> {
    algebra_h::<F5>(1).unwrap()
}

fn diagonal_shape() -> CandidateShape {
    CandidateShape { q1: vec![(Exponent::new(1, 0), SlotKind::Scalar)], q2: vec![(Exponent::new(0, 1), SlotKind::Scalar)] }
}

#[test]
fn search_finds_scalar_multiples() {
    let alg = f5_h();
    let pool = F5::elements().unwrap();
    let t = SourceTemplate::fixed(&SourceData::from_algebra(&alg));
    let out = search_dcv(&t, &alg, &diagonal_shape(), &pool, 3, DEFAULT_CANDIDATE_CAP).unwrap();
    assert_eq!(out.candidates, 25);
    let lambdas: Vec<F5> = out.hits.iter().map(|h| h.matrix.q1.coefficient(1, 0).as_scalar().unwrap()).collect();
    assert_eq!(lambdas, pool);
    for hit in &out.hits {
        let l = hit.matrix.q1.coefficient(1, 0).as_scalar().unwrap();
        assert_eq!(hit.matrix.q2, alg.y2().scale(&l));
        let c = [F5::new(0), l];
        assert!(check_trimmed_dcv(&hit.matrix.source, &alg, &c, &c, 3).unwrap().agree());
    }
}

#[test]
fn search_is_exhaustive() {
    let alg = f5_h();
    let pool = [F5::new(1), F5::new(4)];
    let shape = CandidateShape {
        q1: vec![(Exponent::new(0, 0), SlotKind::General), (Exponent::new(1, 0), SlotKind::Unit)],
        q2: vec![(Exponent::new(0, 1), SlotKind::Scalar)],
    };
    let src = SourceData::from_algebra(&alg);
    let out = search_dcv(&SourceTemplate::fixed(&src), &alg, &shape, &pool, 2, DEFAULT_CANDIDATE_CAP).unwrap();

    let mut generals = vec![RingElement::zero()];
    for c in &pool {
        for w in alg.ring().basis(1) {
            generals.push(RingElement::monomial(w, c.clone()));
        }
    }
    let mut expected = Vec::new();
    let mut index = 0u128;
    for g in &generals {
        for u in &pool {
            for s in std::iter::once(F5::new(0)).chain(pool) {
                let q1 = ExtElement::from_ring(g.clone()) + alg.y1().scale(u);
                let m = DcvMatrix::new(q1, alg.y2().scale(&s), src.clone());
                if check_dcv(&m, &alg, Scope::Basis, 2).unwrap().passed() {
                    expected.push(index);
                }
                index += 1;
            }
        }
    }
    assert_eq!(out.candidates, index);
    assert_eq!(out.hits.iter().map(|h| h.index).collect::<Vec<_>>(), expected);
}

#[test]
fn search_with_zero_pool() {
    let alg = f5_h();
    let t = SourceTemplate::fixed(&SourceData::from_algebra(&alg));
    let out = search_dcv(&t, &alg, &CandidateShape::full(1), &[F5::new(0)], 3, DEFAULT_CANDIDATE_CAP).unwrap();
    assert_eq!(out.candidates, 1);
    // the zero column satisfies both defining identities for trimmed source data
    assert_eq!(out.hits.len(), 1);
    assert!(out.hits[0].matrix.q1.is_zero() && out.hits[0].matrix.q2.is_zero());
}

#[test]
fn search_errors() {
    let alg = f5_h();
    let pool = F5::elements().unwrap();
    let t = SourceTemplate::fixed(&SourceData::from_algebra(&alg));
    let err = search_dcv(&t, &alg, &CandidateShape::full(2), &pool, 1, DEFAULT_CANDIDATE_CAP).err().unwrap();
    assert!(matches!(err, DcvError::PoolTooLarge { cap: DEFAULT_CANDIDATE_CAP, .. }));
    let err = search_dcv(&t, &alg, &diagonal_shape(), &pool, 1, 10).err().unwrap();
    assert_eq!(err, DcvError::PoolTooLarge { size: 25, cap: 10 });
    let err = search_dcv(&t, &alg, &CandidateShape::full(3), &pool, 1, DEFAULT_CANDIDATE_CAP).err().unwrap();
    assert_eq!(err, DcvError::DegreeBound(3));
    let other = algebra_h::<F5>(2).unwrap();
    let err = search_dcv(&t, &other, &diagonal_shape(), &pool, 1, DEFAULT_CANDIDATE_CAP).err().unwrap();
    assert_eq!(err, DcvError::RingMismatch);
}

#[test]
fn search_solves_unknown_parameters() {
    let alg = f5_h();
    let pool = F5::elements().unwrap();
    let mut t = SourceTemplate::fixed(&SourceData::from_algebra(&alg));
    t.p12 = ScalarSlot::Unknown;
    let out = search_dcv(&t, &alg, &diagonal_shape(), &pool, 2, DEFAULT_CANDIDATE_CAP).unwrap();
    assert_eq!(out.hits.len(), 5);
    for hit in out.hits.iter().filter(|h| !h.matrix.q1.is_zero()) {
        assert_eq!(hit.matrix.source.p12, F5::new(-1));
    }
}

#[test]
fn scope_parsing() {
    for s in [Scope::Scalars, Scope::Generators, Scope::Basis] {
        assert_eq!(s.label().parse::<Scope>().unwrap(), s);
    }
    assert!("everything".parse::<Scope>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_scalings_on_h(l in -4i64..5, m in -4i64..5) {
        let alg = h();
        let c = DcvMatrix::new(alg.y1().scale(&q(l)), alg.y2().scale(&q(m)), SourceData::from_algebra(&alg));
        let cert = check_dcv(&c, &alg, Scope::Basis, 2).unwrap();
        prop_assert!(cert.relation_passed);
        prop_assert_eq!(cert.passed(), l == m);
        let rep = check_trimmed_dcv(&c.source, &alg, &[q(0), q(l)], &[q(0), q(m)], 2).unwrap();
        prop_assert!(rep.agree());
    }
}
