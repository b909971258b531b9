//! End-to-end acceptance: one pass/fail line per criterion.

use std::collections::BTreeSet;

use dore::catalog::*;
use dore::dcv::{
    check_dcv, check_trimmed_dcv, hom_to_iterated, iso_degree_check, relation_defect, search_dcv, CandidateShape, DcvMatrix,
    Scope, SlotKind, SourceData, DEFAULT_CANDIDATE_CAP,
};
use dore::doubleore::{change_basis, check_associativity, check_compatibility, to_iterated, verify_iterated};
use dore::{DoubleOreAlgebra, Exponent, ExtElement, Field, RingElement, F13, F3, F5, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const D: usize = 3;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn criterion_1() -> Result<(), String> {
    for f in [1, 2, 5] {
        let h = algebra_h::<Q>(f).map_err(|e| e.to_string())?;
        if !check_compatibility(&h, D).passed() {
            return Err(format!("f = {f}: compatibility fails"));
        }
        if !check_associativity(&h, D).passed() {
            return Err(format!("f = {f}: associativity fails"));
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let h = algebra_h::<Q>(1).map_err(|e| e.to_string())?;
    for l in [2, -1, 7] {
        let c = scaled_generators(&h, &q(l));
        let cert = check_dcv(&c, &h, Scope::Basis, D).map_err(|e| e.to_string())?;
        let ab = vec![q(0), q(l)];
        let t = check_trimmed_dcv(&c.source, &h, &ab, &ab, D).map_err(|e| e.to_string())?;
        if !(cert.passed() && t.left.passed() && t.right() && t.agree()) {
            return Err(format!("lambda = {l}: dcv {}, trimmed {} / {}", cert.passed(), t.left.passed(), t.right()));
        }
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for (f, g) in [(1, 2), (2, 1), (0, 3)] {
        let pin = pin_n_reading(f, g, D).map_err(|e| e.to_string())?;
        let n = algebra_n::<Q>(f, g, pin.chosen).map_err(|e| e.to_string())?;
        let c = scaled_generators(&n, &q(g * g - f * f));
        if !check_dcv(&c, &n, Scope::Basis, D).map_err(|e| e.to_string())?.passed() {
            return Err(format!("({f}, {g}) fails under {}", pin.chosen.label()));
        }
    }
    match algebra_n::<Q>(1, 1, NReading::all()[0]) {
        Err(CatalogError::Parameter(_)) => Ok(()),
        _ => Err("(1, 1) was accepted".into()),
    }
}

fn d_to_e<S: Field>(p: i64) -> Result<(), String> {
    let e = algebra_e::<S>(p).map_err(|e| e.to_string())?;
    let r = e.ring();
    let c = DcvMatrix::new(
        ExtElement::from_ring(r.gen(0)),
        ExtElement::from_ring(r.gen(1)),
        d_to_e_source(&e).map_err(|e| e.to_string())?,
    );
    let cert = check_dcv(&c, &e, Scope::Scalars, D).map_err(|e| e.to_string())?;
    let hom = hom_to_iterated(&c, &e, Scope::Scalars, D).map_err(|e| e.to_string())?;
    if cert.passed() && hom.passed() {
        Ok(())
    } else {
        Err(format!("{}: dcv {}, hom_to_iterated {}", S::kind(), cert.passed(), hom.passed()))
    }
}

fn criterion_4() -> Result<(), String> {
    d_to_e::<F5>(2)?;
    d_to_e::<F13>(5)
}

fn criterion_5() -> Result<(), String> {
    let b = algebra_subcase_411::<Q>(1, 1, 1, 1).map_err(|e| e.to_string())?;
    let out = to_iterated(&b);
    let pres =
        out.presentations.iter().find(|p| p.order.label() == "y1-then-y2").ok_or("4.1.1 has no y1-then-y2 presentation")?;
    if !verify_iterated(&b, pres, D).passed() {
        return Err("iterated products disagree with the double extension".into());
    }
    let h = algebra_h::<Q>(1).map_err(|e| e.to_string())?;
    let out = to_iterated(&h);
    let cited = out.failure_conditions();
    let nonzero = |i, j| h.sigma().component_images(i, j).iter().any(|r| !r.is_zero());
    if !out.presentations.is_empty() {
        return Err("H has an iterated presentation".into());
    }
    if !(cited.contains(&"sigma12 != 0") && cited.contains(&"sigma21 != 0") && nonzero(0, 1) && nonzero(1, 0)) {
        return Err(format!("H failure conditions {cited:?}"));
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    for (p12, p11) in [(1, 2), (2, 1), (3, 5)] {
        let old = lemma_data::<Q>(p12, p11).map_err(|e| e.to_string())?;
        let (new, change) = change_basis(&old).map_err(|e| e.to_string())?;
        if !check_compatibility(&new, D).passed() {
            return Err(format!("({p12}, {p11}): new data fail compatibility"));
        }
        let (z1, z2) = change.new_generators(&old);
        if !relation_defect(&old, &z1, &z2, &SourceData::from_algebra(&new)).is_zero() {
            return Err(format!("({p12}, {p11}): the new generators violate the new relation"));
        }
    }
    Ok(())
}

/// Coefficient choices a slot may take: zero or `c w` with `c` a nonzero pool element and
/// `w` in `{1, x}`, or a nonzero constant for unit slots.
fn slot_options<S: Field>(target: &DoubleOreAlgebra<S>, kind: SlotKind) -> Vec<RingElement<S>> {
    let nonzero: Vec<S> = S::elements().expect("finite field").into_iter().filter(|c| !c.is_zero()).collect();
    let consts = nonzero.iter().map(|c| RingElement::constant(c.clone()));
    match kind {
        SlotKind::Unit => consts.collect(),
        SlotKind::Scalar => std::iter::once(RingElement::zero()).chain(consts).collect(),
        SlotKind::General => {
            let x = target.ring().gen(0);
            let mut v = vec![RingElement::zero()];
            for c in &nonzero {
                v.push(RingElement::constant(c.clone()));
                v.push(x.scale(c));
            }
            v
        }
    }
}

fn enumerate<S: Field>(target: &DoubleOreAlgebra<S>, shape: &CandidateShape) -> Vec<(ExtElement<S>, ExtElement<S>)> {
    let slots: Vec<(usize, Exponent, Vec<RingElement<S>>)> = [&shape.q1, &shape.q2]
        .iter()
        .enumerate()
        .flat_map(|(k, v)| v.iter().map(move |(e, kind)| (k, *e, *kind)))
        .map(|(k, e, kind)| (k, e, slot_options(target, kind)))
        .collect();
    let mut out = vec![(ExtElement::zero(), ExtElement::zero())];
    for (k, e, opts) in &slots {
        out = out
            .into_iter()
            .flat_map(|(a, b)| {
                opts.iter().map(move |r| {
                    let m = ExtElement::monomial(e.i, e.j, r.clone());
                    if *k == 0 {
                        (a.clone() + m, b.clone())
                    } else {
                        (a.clone(), b.clone() + m)
                    }
                })
            })
            .collect();
    }
    out
}

fn shape(q1: &[((u32, u32), SlotKind)], q2: &[((u32, u32), SlotKind)]) -> CandidateShape {
    let conv = |v: &[((u32, u32), SlotKind)]| v.iter().map(|((i, j), k)| (Exponent::new(*i, *j), *k)).collect();
    CandidateShape { q1: conv(q1), q2: conv(q2) }
}

/// Search hits against a re-enumeration that builds each row's source from its formulas.
fn table_oracle<S: Field>(target: &DoubleOreAlgebra<S>, row: TableRow, shape: &CandidateShape) -> Result<usize, String> {
    let pool = S::elements().expect("finite field");
    let out =
        search_dcv(&table_template(target, row), target, shape, &pool, 2, DEFAULT_CANDIDATE_CAP).map_err(|e| e.to_string())?;
    let key = |a: &ExtElement<S>, b: &ExtElement<S>| format!("{} | {}", target.render(a), target.render(b));
    let mut hits = BTreeSet::new();
    for h in &out.hits {
        let m = &h.matrix;
        if !table_conditions_hold(target, row, &m.q1, &m.q2, &m.source) {
            return Err(format!("{} over {}: hit {} violates the row", row.label(), S::kind(), key(&m.q1, &m.q2)));
        }
        hits.insert(key(&m.q1, &m.q2));
    }
    let mut expected = BTreeSet::new();
    let candidates = enumerate(target, shape);
    for (q1, q2) in &candidates {
        let Some(src) = table_source(target, row, q1, q2) else { continue };
        let c = DcvMatrix::new(q1.clone(), q2.clone(), src);
        if check_dcv(&c, target, Scope::Basis, 2).is_ok_and(|cert| cert.passed()) {
            expected.insert(key(q1, q2));
        }
    }
    if out.candidates != candidates.len() as u128 || hits != expected {
        return Err(format!(
            "{} over {}: {} of {} candidates hit, re-enumeration finds {} of {}",
            row.label(),
            S::kind(),
            hits.len(),
            out.candidates,
            expected.len(),
            candidates.len()
        ));
    }
    Ok(hits.len())
}

fn table_rows<S: Field>() -> Result<usize, String> {
    use SlotKind::*;
    let err = |e: CatalogError| e.to_string();
    let anti = target_anticommuting::<S>().map_err(err)?;
    let weyl = target_weyl::<S>().map_err(err)?;
    let rows = target_equal_rows::<S>().map_err(err)?;
    let mut total = 0;
    total += table_oracle(&anti, TableRow::First(1), &shape(&[((0, 0), Unit)], &[((0, 0), Unit)]))?;
    total += table_oracle(&anti, TableRow::First(2), &shape(&[((0, 0), General), ((1, 0), Unit)], &[((0, 0), General)]))?;
    total += table_oracle(&weyl, TableRow::Second(1), &shape(&[((0, 0), General)], &[((0, 0), General), ((0, 1), Unit)]))?;
    for k in [2, 3] {
        let sh = shape(&[((0, 0), General), ((1, 0), Unit)], &[((0, 0), General), ((0, 1), Unit)]);
        total += table_oracle(&rows, TableRow::Second(k), &sh)?;
    }
    Ok(total)
}

fn criterion_7() -> Result<(), String> {
    let hits = table_rows::<F3>()? + table_rows::<F5>()?;
    if hits == 0 {
        return Err("no hits at all".into());
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let bad = corrupted_h().map_err(|e| e.to_string())?;
    let Instance::Q(data) = &bad.instance else { return Err("corrupted H is not rational".into()) };
    if check_compatibility(&data.algebra, D).passed() || check_associativity(&data.algebra, D).passed() {
        return Err("tau0 = 1 passes a check".into());
    }
    let h = algebra_h::<Q>(1).map_err(|e| e.to_string())?;
    let mut c = scaled_generators(&h, &q(2));
    c.source = c.source.with_tau(1, RingElement::one());
    if check_dcv(&c, &h, Scope::Basis, D).map_err(|e| e.to_string())?.passed()
        || relation_defect(&h, &c.q1, &c.q2, &c.source).is_zero()
    {
        return Err("perturbed tau1' still satisfies the relation".into());
    }
    let quad = DcvMatrix::new(h.mul(&h.y1(), &h.y1()), h.y2(), SourceData::from_algebra(&h));
    if iso_degree_check(&quad).passed() {
        return Err("a degree-2 q1 passes iso_degree".into());
    }
    Ok(())
}

fn agree<S: Field>(alg: &DoubleOreAlgebra<S>) -> Result<bool, String> {
    if SourceData::from_algebra(alg).build(D).is_err() {
        return Ok(true);
    }
    Ok(check_compatibility(alg, D).passed() == check_associativity(alg, D).passed())
}

fn perturb<S: Field>(alg: &DoubleOreAlgebra<S>, rng: &mut ChaCha8Rng) -> DoubleOreAlgebra<S> {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3i64..=3);
    }
    let c = S::from_i64(c);
    let ring = alg.ring();
    let r = match rng.gen_range(0..=ring.num_gens()) {
        0 => RingElement::one(),
        k => ring.gen(k as u16 - 1),
    };
    let mut tau = alg.taus().clone();
    let mut p11 = alg.p11().clone();
    match rng.gen_range(0..4) {
        3 => p11 = p11 + c,
        k => tau[k] = &tau[k] + &r.scale(&c),
    }
    alg.with_parameters(alg.p12().clone(), p11, tau).expect("ring elements are normal")
}

fn algebras() -> Result<Vec<Instance>, String> {
    Ok(all_fixtures().map_err(|e| e.to_string())?.into_iter().map(|f| f.instance).collect())
}

fn criterion_9() -> Result<(), String> {
    let list = algebras()?;
    for (k, inst) in list.iter().enumerate() {
        let same = match inst {
            Instance::Q(d) => agree(&d.algebra),
            Instance::F3(d) => agree(&d.algebra),
            Instance::F5(d) => agree(&d.algebra),
            Instance::F13(d) => agree(&d.algebra),
        }?;
        if !same {
            return Err(format!("catalog algebra #{k} gets different verdicts"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d0e);
    let base: Vec<&Instance> = list.iter().filter(|i| matches!(i, Instance::Q(_) | Instance::F5(_))).collect();
    let mut failing = 0;
    for n in 0..20 {
        let inst = base[rng.gen_range(0..base.len())];
        let (same, passes) = match inst {
            Instance::Q(d) => {
                let a = perturb(&d.algebra, &mut rng);
                (agree(&a)?, check_associativity(&a, D).passed())
            }
            Instance::F5(d) => {
                let a = perturb(&d.algebra, &mut rng);
                (agree(&a)?, check_associativity(&a, D).passed())
            }
            _ => unreachable!(),
        };
        if !same {
            return Err(format!("perturbation #{n} gets different verdicts"));
        }
        failing += usize::from(!passes);
    }
    if failing == 0 {
        return Err("no perturbation broke the algebra".into());
    }
    Ok(())
}

fn catalog_json(extra: &[&str]) -> Result<String, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let args = ["dore", "catalog", "verify", "--format", "structured"].iter().chain(extra);
    let code = dore_cli::cli::run(args, &mut std::io::empty(), &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn criterion_10() -> Result<(), String> {
    let first = catalog_json(&[])?;
    for extra in [&[][..], &["--threads", "1"], &["--threads", "2"], &["--threads", "4"]] {
        if catalog_json(extra)? != first {
            return Err(format!("report differs with {extra:?}"));
        }
    }
    Ok(())
}

type Criterion = fn() -> Result<(), String>;

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 10] = [
        ("H is compatible and associative for f in {1, 2, 5}", criterion_1),
        ("scaled generators of H are dcv-matrices, both trimmed sides agree", criterion_2),
        ("N candidates pass under the pinned reading, (1, 1) is rejected", criterion_3),
        ("D to E passes at scalar scope and translates to iterated form", criterion_4),
        ("4.1.1 is iterated y1-then-y2, H is not", criterion_5),
        ("basis change round trip", criterion_6),
        ("table search hits match their rows and a re-enumeration", criterion_7),
        ("negative controls fail", criterion_8),
        ("compatibility and associativity agree", criterion_9),
        ("catalog report is deterministic", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {what}", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {what}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
