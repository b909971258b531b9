//! The fixture registry.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::algebras::*;
use super::tables::{table_source, TableRow};
use super::{CatalogError, Check, DcvSetup, Expect, Fixture, FixtureData, Instance};
use crate::dcv::{check_dcv, DcvMatrix, Scope, SourceData};
use crate::doubleore::{check_associativity, DoubleOreAlgebra, ExtElement, DEFAULT_DEGREE};
use crate::exactfield::Field;
use crate::presring::RingElement;
use crate::ringmaps::{DeltaColumn, SigmaMatrix};
use crate::{F13, F5, Q};

use Check::*;
use Expect::*;

type Builder = fn() -> Result<Fixture, CatalogError>;

/// Every registered fixture, in report order.
pub(super) const REGISTRY: &[(&str, Builder)] = &[
    ("H", || fixture_h(1)),
    ("H:f=2", || fixture_h(2)),
    ("H:f=5", || fixture_h(5)),
    ("subcase-4.1.1", || fixture_411(1, 1, 1, 1)),
    ("subcase-4.1.1:2,0,1,3", || fixture_411(2, 0, 1, 3)),
    ("subcase-4.1.1:3,2,4,1", || fixture_411(3, 2, 4, 1)),
    ("D", || fixture_d::<Q>("D", 1)),
    ("D:p=-1", || fixture_d::<Q>("D:p=-1", -1)),
    ("D:F5,p=-1", || fixture_d::<F5>("D:F5,p=-1", -1)),
    ("E", || fixture_e::<F5>("E", 2)),
    ("E:F13,p=5", || fixture_e::<F13>("E:F13,p=5", 5)),
    ("E:F5,p=3", || fixture_e::<F5>("E:F5,p=3", 3)),
    ("N", || fixture_n("N", 1, 2)),
    ("N:2,1", || fixture_n("N:2,1", 2, 1)),
    ("N:0,3", || fixture_n("N:0,3", 0, 3)),
    ("N:literal-ring", fixture_n_literal),
    ("normalization:1,2", || fixture_normalization(1, 2)),
    ("normalization:2,1", || fixture_normalization(2, 1)),
    ("normalization:3,5", || fixture_normalization(3, 5)),
    ("target-anticommuting", || fixture_target("target-anticommuting", target_anticommuting())),
    ("target-idempotent", || fixture_target("target-idempotent", target_idempotent())),
    ("target-second-derivation", || fixture_target("target-second-derivation", target_second_derivation())),
    ("target-weyl", || fixture_target("target-weyl", target_weyl())),
    ("target-equal-rows", || fixture_target("target-equal-rows", target_equal_rows())),
    ("dcv-HtoH-lambda", || fixture_lambda("dcv-HtoH-lambda", 2)),
    ("dcv-HtoH-lambda:-1", || fixture_lambda("dcv-HtoH-lambda:-1", -1)),
    ("dcv-HtoH-lambda:7", || fixture_lambda("dcv-HtoH-lambda:7", 7)),
    ("dcv-HtoH-lambda:perturbed-tau1", fixture_lambda_perturbed),
    ("dcv-DtoE", || fixture_d_to_e::<F5>("dcv-DtoE", 2, Scope::Scalars)),
    ("dcv-DtoE:F13,p=5", || fixture_d_to_e::<F13>("dcv-DtoE:F13,p=5", 5, Scope::Scalars)),
    ("dcv-DtoE:generator-scope", || fixture_d_to_e::<F5>("dcv-DtoE:generator-scope", 2, Scope::Generators)),
    ("nakayama-N", || fixture_nakayama("nakayama-N", 1, 2)),
    ("nakayama-N:2,1", || fixture_nakayama("nakayama-N:2,1", 2, 1)),
    ("nakayama-N:0,3", || fixture_nakayama("nakayama-N:0,3", 0, 3)),
    ("table1-row-1", || table1(1)),
    ("table1-row-2", || table1(2)),
    ("table1-row-3", || table1(3)),
    ("table1-row-4", || table1(4)),
    ("table1-row-4:anticommuting", table1_row4_anticommuting),
    ("table1-row-5", || table1(5)),
    ("table1-row-6", || table1(6)),
    ("table1-row-7", || table1(7)),
    ("table1-row-8", || table1(8)),
    ("table2-row-1", || table2(1)),
    ("table2-row-2", || table2(2)),
    ("table2-row-3", || table2(3)),
    ("example-degree2-const", example_degree2_const),
];

fn structural(iterated: Expect) -> Vec<(Check, Expect)> {
    vec![(Build, Pass), (Compatibility, Pass), (Associativity, Pass), (Iterated, iterated)]
}

fn algebra_fixture<S: Field>(
    name: &str,
    citation: &str,
    notes: Vec<String>,
    expected: Vec<(Check, Expect)>,
    algebra: DoubleOreAlgebra<S>,
) -> Fixture
where
    Instance: From<FixtureData<S>>,
{
    Fixture { name: name.into(), citation: citation.into(), notes, expected, instance: FixtureData { algebra, dcv: None }.into() }
}

fn suffix(name: &str, base: &str) -> String {
    if name == base {
        String::new()
    } else {
        name[base.len()..].to_string()
    }
}

fn fixture_h(f: i64) -> Result<Fixture, CatalogError> {
    let name = if f == 1 { "H".to_string() } else { format!("H:f={f}") };
    Ok(algebra_fixture(
        &name,
        "Subcase 4.3.1, the trimmed double extension H",
        vec![format!("f = {f}; both sigma12 and sigma21 are nonzero, so no iterated presentation exists")],
        structural(Fail),
        algebra_h::<Q>(f)?,
    ))
}

/// `H` with `tau0` set to 1 and `H`'s expected verdicts; a negative control for the
/// verifier.
pub fn corrupted_h() -> Result<Fixture, CatalogError> {
    let h = algebra_h::<Q>(1)?;
    let z = RingElement::zero;
    let bad = h.with_parameters(h.p12().clone(), h.p11().clone(), [RingElement::one(), z(), z()])?;
    let mut fx = algebra_fixture("H", "Subcase 4.3.1, the trimmed double extension H", Vec::new(), structural(Fail), bad);
    fx.notes.push("corrupted: tau0 = 1".into());
    Ok(fx)
}

fn fixture_411(f: i64, g: i64, h: i64, m: i64) -> Result<Fixture, CatalogError> {
    let name = if (f, g, h, m) == (1, 1, 1, 1) { "subcase-4.1.1".to_string() } else { format!("subcase-4.1.1:{f},{g},{h},{m}") };
    Ok(algebra_fixture(
        &name,
        "Subcase 4.1.1, P = (1, 1), sigma12 = 0",
        vec![format!("(f, g, h, m) = ({f}, {g}, {h}, {m}); presentable as y1-then-y2")],
        structural(Pass),
        algebra_subcase_411::<Q>(f, g, h, m)?,
    ))
}

fn fixture_d<S: Field>(name: &str, p: i64) -> Result<Fixture, CatalogError>
where
    Instance: From<FixtureData<S>>,
{
    Ok(algebra_fixture(
        name,
        "Subcase 4.2.3, the algebra D",
        vec![format!("p = {p} over {}", S::kind())],
        structural(Fail),
        algebra_d::<S>(p)?,
    ))
}

fn fixture_e<S: Field>(name: &str, p: i64) -> Result<Fixture, CatalogError>
where
    Instance: From<FixtureData<S>>,
{
    Ok(algebra_fixture(
        name,
        "Subcase 4.2.3, the algebra E",
        vec![format!("p = {p} over {}, where p^2 = -1", S::kind())],
        structural(Fail),
        algebra_e::<S>(p)?,
    ))
}

/// Outcome of pinning the reading of the printed Nakayama matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NPin {
    pub chosen: NReading,
    pub passers: Vec<NReading>,
}

/// `(lambda y1, lambda y2)` as a matrix from the algebra to itself.
pub fn scaled_generators<S: Field>(alg: &DoubleOreAlgebra<S>, lambda: &S) -> DcvMatrix<S> {
    DcvMatrix::new(alg.y1().scale(lambda), alg.y2().scale(lambda), SourceData::from_algebra(alg))
}

fn n_lambda<S: Field>(f: i64, g: i64) -> S {
    s::<S>(g * g - f * f)
}

/// The readings of the printed matrix under which the algebra builds, is associative up
/// to `max_degree`, and the scaled generators `(g^2 - f^2)(y1, y2)` form a dcv-matrix.
/// The first passer in [`NReading::all`] order is chosen.
pub fn pin_n_reading(f: i64, g: i64, max_degree: usize) -> Result<NPin, CatalogError> {
    static PINS: OnceLock<Mutex<HashMap<(i64, i64, usize), NPin>>> = OnceLock::new();
    let pins = PINS.get_or_init(Default::default);
    if let Some(p) = pins.lock().expect("pin cache").get(&(f, g, max_degree)) {
        return Ok(p.clone());
    }
    let passers: Vec<NReading> = NReading::all()
        .into_iter()
        .filter(|r| {
            algebra_n::<Q>(f, g, *r).is_ok_and(|alg| {
                let c = scaled_generators(&alg, &n_lambda(f, g));
                check_associativity(&alg, max_degree).passed()
                    && check_dcv(&c, &alg, Scope::Basis, max_degree).is_ok_and(|cert| cert.passed())
            })
        })
        .collect();
    let chosen = *passers
        .first()
        .ok_or_else(|| CatalogError::Parameter(format!("no reading of the N matrix passes for (f, g) = ({f}, {g})")))?;
    let pin = NPin { chosen, passers };
    pins.lock().expect("pin cache").insert((f, g, max_degree), pin.clone());
    Ok(pin)
}

fn pin_notes(pin: &NPin) -> Vec<String> {
    let mut notes = vec![format!("pinned reading: {}", pin.chosen.label())];
    notes.extend(pin.passers.iter().map(|r| format!("passing reading: {}", r.label())));
    notes
}

fn fixture_n(name: &str, f: i64, g: i64) -> Result<Fixture, CatalogError> {
    let pin = pin_n_reading(f, g, DEFAULT_DEGREE)?;
    let alg = algebra_n::<Q>(f, g, pin.chosen)?;
    let mut notes = vec![format!("(f, g) = ({f}, {g}); ring relation x2 x1 = -x1 x2")];
    notes.extend(pin_notes(&pin));
    Ok(algebra_fixture(name, "Subcase 4.3.3, the algebra N", notes, structural(Fail), alg))
}

/// The printed relation `x2 x2 + x1 x2` taken literally; sigma is then not well defined
/// on the relation and the build check fails.
fn fixture_n_literal() -> Result<Fixture, CatalogError> {
    let ring = literal_n_ring::<Q>();
    let reading = pin_n_reading(1, 2, DEFAULT_DEGREE)?.chosen;
    let skew = algebra_n::<Q>(1, 2, reading)?;
    let transport = |k: usize| {
        let col = skew.sigma().generator_image(k);
        let mut m = [[RingElement::zero(), RingElement::zero()], [RingElement::zero(), RingElement::zero()]];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let raw: Vec<_> = col.get(i, j).terms().map(|(w, c)| (w.clone(), c.clone())).collect();
                *e = ring.normalize(&raw).expect("linear images");
            }
        }
        crate::ringmaps::Mat2(m)
    };
    let sg = SigmaMatrix::new(&ring, vec![transport(0), transport(1)])?;
    let z = RingElement::zero;
    let alg = DoubleOreAlgebra::new_unchecked(&sg, &DeltaColumn::zero(&sg), s(-1), s(0), [z(), z(), z()]);
    Ok(algebra_fixture(
        "N:literal-ring",
        "Subcase 4.3.3, the algebra N",
        vec![
            "ring relation x2 x2 = -x1 x2 as printed; not confluent (overlap x2 x2 x2)".into(),
            format!("sigma read as: {}", reading.label()),
        ],
        vec![(Build, Fail)],
        alg,
    ))
}

fn fixture_normalization(p12: i64, p11: i64) -> Result<Fixture, CatalogError> {
    Ok(algebra_fixture(
        &format!("normalization:{p12},{p11}"),
        "Basis change to p11 = 0",
        vec![format!("(p12, p11) = ({p12}, {p11}) over Q")],
        vec![(Build, Pass), (Compatibility, Pass), (Associativity, Pass)],
        lemma_data::<Q>(p12, p11)?,
    ))
}

fn fixture_target(name: &str, alg: Result<DoubleOreAlgebra<F5>, CatalogError>) -> Result<Fixture, CatalogError> {
    Ok(algebra_fixture(
        name,
        "Target for the dcv tables",
        vec!["over F5".into()],
        vec![(Build, Pass), (Compatibility, Pass), (Associativity, Pass)],
        alg?,
    ))
}

fn dcv_fixture<S: Field>(
    name: &str,
    citation: &str,
    notes: Vec<String>,
    expected: Vec<(Check, Expect)>,
    algebra: DoubleOreAlgebra<S>,
    setup: DcvSetup<S>,
) -> Fixture
where
    Instance: From<FixtureData<S>>,
{
    Fixture {
        name: name.into(),
        citation: citation.into(),
        notes,
        expected,
        instance: FixtureData { algebra, dcv: Some(setup) }.into(),
    }
}

fn lambda_setup(alg: &DoubleOreAlgebra<Q>, lambda: i64) -> DcvSetup<Q> {
    let l = s::<Q>(lambda);
    DcvSetup {
        matrix: scaled_generators(alg, &l),
        scope: Scope::Basis,
        trimmed: Some((vec![Q::from_i64(0), l.clone()], vec![Q::from_i64(0), l])),
    }
}

fn fixture_lambda(name: &str, lambda: i64) -> Result<Fixture, CatalogError> {
    let h = algebra_h::<Q>(1)?;
    Ok(dcv_fixture(
        name,
        "Nakayama automorphism of H, scaled generators",
        vec![
            format!("lambda = {lambda}{}", suffix(name, "dcv-HtoH-lambda")),
            "the value lambda = -h^2 refers to a parameter absent from H; scalings are checked generically".into(),
        ],
        vec![(Build, Pass), (Dcv, Pass), (TrimmedAgree, Pass), (IsoDegree, Pass), (HomToIterated, Fail)],
        h.clone(),
        lambda_setup(&h, lambda),
    ))
}

/// `tau1' = 1` breaks the `q2 q1` relation.
fn fixture_lambda_perturbed() -> Result<Fixture, CatalogError> {
    let h = algebra_h::<Q>(1)?;
    let mut setup = lambda_setup(&h, 2);
    setup.matrix.source = setup.matrix.source.with_tau(1, RingElement::one());
    setup.trimmed = None;
    Ok(dcv_fixture(
        "dcv-HtoH-lambda:perturbed-tau1",
        "Nakayama automorphism of H, scaled generators",
        vec!["lambda = 2 with tau1' = 1".into()],
        vec![(Build, Pass), (Dcv, Fail)],
        h,
        setup,
    ))
}

/// `sigma' = diag(alpha, alpha)` with `alpha(x1) = -x1`, `alpha(x2) = x2`.
pub fn d_to_e_source<S: Field>(target: &DoubleOreAlgebra<S>) -> Result<SourceData<S>, CatalogError> {
    let r = target.ring();
    let alpha = vec![poly(r, &[(-1, &[0])]), r.gen(1)];
    let z = vec![RingElement::zero(); 2];
    let sg = SigmaMatrix::from_components(r, [[alpha.clone(), z.clone()], [z, alpha]])?;
    Ok(SourceData::trimmed(&sg, s(-1), s(0)))
}

fn fixture_d_to_e<S: Field>(name: &str, p: i64, scope: Scope) -> Result<Fixture, CatalogError>
where
    Instance: From<FixtureData<S>>,
{
    let e = algebra_e::<S>(p)?;
    let r = e.ring();
    let matrix = DcvMatrix::new(ExtElement::from_ring(r.gen(0)), ExtElement::from_ring(r.gen(1)), d_to_e_source(&e)?);
    let expected = match scope {
        Scope::Scalars => vec![(Build, Pass), (Dcv, Pass), (IsoDegree, Fail), (HomToIterated, Pass)],
        _ => vec![(Build, Pass), (Dcv, Fail), (IsoDegree, Fail)],
    };
    Ok(dcv_fixture(
        name,
        "Homomorphism from D to E, q = (x1, x2)",
        vec![
            format!("target E with p = {p} over {}; commutation checked at {} scope", S::kind(), scope.label()),
            "alpha(x1) = -x1 is given; alpha(x2) = x2 is chosen".into(),
        ],
        expected,
        e,
        DcvSetup { matrix, scope, trimmed: None },
    ))
}

fn fixture_nakayama(name: &str, f: i64, g: i64) -> Result<Fixture, CatalogError> {
    let pin = pin_n_reading(f, g, DEFAULT_DEGREE)?;
    let alg = algebra_n::<Q>(f, g, pin.chosen)?;
    let l: Q = n_lambda(f, g);
    let setup = DcvSetup {
        matrix: scaled_generators(&alg, &l),
        scope: Scope::Basis,
        trimmed: Some((vec![Q::from_i64(0), l.clone()], vec![Q::from_i64(0), l.clone()])),
    };
    let mut notes = vec![format!("(f, g) = ({f}, {g}), lambda = g^2 - f^2 = {l}")];
    notes.extend(pin_notes(&pin));
    Ok(dcv_fixture(
        name,
        "Nakayama automorphism of N",
        notes,
        vec![(Build, Pass), (Dcv, Pass), (TrimmedAgree, Pass), (IsoDegree, Pass)],
        alg,
        setup,
    ))
}

/// `sum (i, j, r) r y1^i y2^j`.
fn ext<S: Field>(terms: Vec<(u32, u32, RingElement<S>)>) -> ExtElement<S> {
    terms.into_iter().fold(ExtElement::zero(), |acc, (i, j, r)| acc + ExtElement::monomial(i, j, r))
}

fn table_fixture(
    name: &str,
    row: TableRow,
    target: DoubleOreAlgebra<F5>,
    target_name: &str,
    q1: ExtElement<F5>,
    q2: ExtElement<F5>,
    expected: Vec<(Check, Expect)>,
    mut notes: Vec<String>,
) -> Result<Fixture, CatalogError> {
    let source = table_source(&target, row, &q1, &q2)
        .ok_or_else(|| CatalogError::Parameter(format!("{name}: candidate does not have the row's shape")))?;
    notes.insert(0, format!("over F5 on {target_name}: q1 = {}, q2 = {}", target.render(&q1), target.render(&q2)));
    let matrix = DcvMatrix::new(q1, q2, source);
    Ok(dcv_fixture(
        name,
        &format!("dcv table, {}", row.label()),
        notes,
        expected,
        target,
        DcvSetup { matrix, scope: Scope::Basis, trimmed: None },
    ))
}

fn table1(k: usize) -> Result<Fixture, CatalogError> {
    let row = TableRow::First(k);
    let first = vec![(Build, Pass), (Dcv, Pass), (IsoDegree, Fail), (HomToIterated, Pass)];
    let (target, tname) = match k {
        1..=3 => (target_anticommuting::<F5>()?, "target-anticommuting"),
        8 => (target_second_derivation::<F5>()?, "target-second-derivation"),
        _ => (target_idempotent::<F5>()?, "target-idempotent"),
    };
    let r = target.ring().clone();
    let p = |t: &[(i64, &[u16])]| poly(&r, t);
    let c = |n: i64| p(&[(n, &[])]);
    let (q1, q2, notes): (_, _, Vec<String>) = match k {
        1 => (ext(vec![(0, 0, c(3))]), ext(vec![(0, 0, c(2))]), vec!["units d = 3, c = 2".into()]),
        2 => (ext(vec![(1, 0, c(2)), (0, 0, p(&[(1, &[0])]))]), ext(vec![(0, 0, p(&[(1, &[0]), (3, &[])]))]), vec![]),
        3 => (ext(vec![(2, 0, c(2)), (0, 0, p(&[(1, &[0]), (1, &[])]))]), ext(vec![(0, 0, c(3))]), vec![]),
        4 => (
            ext(vec![(3, 0, c(3)), (0, 0, p(&[(1, &[0])]))]),
            ext(vec![(0, 0, c(2))]),
            vec!["n = 3 on an idempotent twist, where y1^k r = eps(r) y1^k + delta1(r)".into()],
        ),
        5 => (ext(vec![(2, 0, c(2)), (1, 0, c(3)), (0, 0, p(&[(1, &[0])]))]), ext(vec![(0, 0, c(4))]), vec![]),
        6 => (
            ext(vec![(3, 0, c(1)), (2, 0, c(2)), (1, 0, c(4)), (0, 0, p(&[(1, &[0]), (1, &[])]))]),
            ext(vec![(0, 0, c(3))]),
            vec!["the coefficient of y1^k pairs with delta1^k".into()],
        ),
        7 => (ext(vec![(2, 0, c(4)), (1, 0, c(1)), (0, 0, p(&[(2, &[0]), (3, &[])]))]), ext(vec![(0, 0, c(2))]), vec![]),
        8 => (
            ext(vec![(1, 1, c(3)), (0, 0, p(&[(1, &[0]), (2, &[])]))]),
            ext(vec![(0, 0, c(4))]),
            vec!["delta1 delta2 composed right to left; delta1 = 0 on this target".into()],
        ),
        _ => return Err(CatalogError::UnknownFixture(format!("table1-row-{k}"))),
    };
    table_fixture(&row.label(), row, target, tname, q1, q2, first, notes)
}

/// Row 4 with odd `n` on the anticommuting target: `y1^3 x` carries a `y1^2` term the
/// row's `delta1'` does not account for.
fn table1_row4_anticommuting() -> Result<Fixture, CatalogError> {
    let target = target_anticommuting::<F5>()?;
    let r = target.ring().clone();
    let q1 = ext(vec![(3, 0, poly(&r, &[(2, &[])])), (0, 0, r.gen(0))]);
    let q2 = ext(vec![(0, 0, poly(&r, &[(2, &[])]))]);
    table_fixture(
        "table1-row-4:anticommuting",
        TableRow::First(4),
        target,
        "target-anticommuting",
        q1,
        q2,
        vec![(Build, Pass), (Dcv, FailFrom(1)), (IsoDegree, Fail)],
        vec!["odd n: y1^3 r = sigma11^3(r) y1^3 + delta1 sigma11^2(r) y1^2 + ...".into()],
    )
}

fn table2(k: usize) -> Result<Fixture, CatalogError> {
    let row = TableRow::Second(k);
    let (target, tname) =
        if k == 1 { (target_weyl::<F5>()?, "target-weyl") } else { (target_equal_rows::<F5>()?, "target-equal-rows") };
    let r = target.ring().clone();
    let p = |t: &[(i64, &[u16])]| poly(&r, t);
    let c = |n: i64| p(&[(n, &[])]);
    let x = r.gen(0);
    let (q1, q2, expected, notes): (_, _, _, Vec<String>) = match k {
        1 => (
            ext(vec![(0, 0, p(&[(1, &[0]), (1, &[])]))]),
            ext(vec![(0, 1, c(2)), (0, 0, x)]),
            vec![(Build, Pass), (Dcv, Pass), (IsoDegree, Fail), (HomToIterated, Fail)],
            vec!["tau0' = b1 delta2(d) = 2 is nonzero".into()],
        ),
        2 => (
            ext(vec![(1, 0, c(2)), (0, 0, c(1))]),
            ext(vec![(0, 1, c(3)), (0, 0, c(1))]),
            vec![(Build, Pass), (Dcv, Fail), (IsoDegree, Pass)],
            vec!["q2 q1 carries a1 b1 p12 y1 y2, which the relation with p12' = 0 cannot absorb".into()],
        ),
        3 => (
            ext(vec![(1, 0, c(2)), (0, 0, x)]),
            ext(vec![(0, 1, c(3)), (0, 0, c(4))]),
            vec![(Build, Pass), (Dcv, Fail), (IsoDegree, Pass)],
            vec!["q2 q1 carries a1 b1 p12 y1 y2, which the relation with p12' = 0 cannot absorb".into()],
        ),
        _ => return Err(CatalogError::UnknownFixture(format!("table2-row-{k}"))),
    };
    table_fixture(&row.label(), row, target, tname, q1, q2, expected, notes)
}

/// `q1 = a2 y1^2 + a0`, `q2 = c`: a dcv-matrix that is not an isomorphism.
fn example_degree2_const() -> Result<Fixture, CatalogError> {
    let target = target_anticommuting::<F5>()?;
    let r = target.ring().clone();
    let q1 = ext(vec![(2, 0, poly(&r, &[(3, &[])])), (0, 0, poly(&r, &[(1, &[0]), (2, &[])]))]);
    let q2 = ext(vec![(0, 0, poly(&r, &[(4, &[0])]))]);
    table_fixture(
        "example-degree2-const",
        TableRow::First(3),
        target,
        "target-anticommuting",
        q1,
        q2,
        vec![(Build, Pass), (Dcv, Pass), (IsoDegree, Fail), (HomToIterated, Pass)],
        vec!["degree two in y1, so the induced map is not an isomorphism".into()],
    )
}
