//! The two tables of dcv-matrices: `(sigma', delta')` built from the row formulas, the
//! parameter and tail conditions of each row, and search templates.

use std::sync::Arc;

use crate::dcv::{MapRule, RingSlot, ScalarSlot, SourceData, SourceTemplate};
use crate::doubleore::{DoubleOreAlgebra, ExtElement};
use crate::exactfield::Field;
use crate::presring::RingElement;
use crate::ringmaps::{DeltaColumn, SigmaMatrix};

/// A row of the first table (`q2 = c`) or the second (`q2 = b1 y2 + b0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    /// Rows 1 to 7 have `q1` a polynomial in `y1`, row 8 has `q1 = a1 y1 y2 + a0`.
    First(usize),
    /// Row 1 has `q1 = d`, rows 2 and 3 have `q1 = a1 y1 + a0`.
    Second(usize),
}

impl TableRow {
    pub fn label(&self) -> String {
        match self {
            TableRow::First(k) => format!("table1-row-{k}"),
            TableRow::Second(k) => format!("table2-row-{k}"),
        }
    }
}

/// `q1 = a0 + sum_{i >= 1} a_i y1^i` with scalar `a_i`.
struct Y1Poly<S: Field> {
    a0: RingElement<S>,
    a: Vec<S>,
}

fn y1_poly<S: Field>(q: &ExtElement<S>) -> Option<Y1Poly<S>> {
    let mut a = Vec::new();
    let mut a0 = RingElement::zero();
    for (e, r) in q.terms() {
        if e.j != 0 {
            return None;
        }
        if e.i == 0 {
            a0 = r.clone();
        } else {
            let c = r.as_scalar()?;
            a.resize(a.len().max(e.i as usize), S::zero());
            a[e.i as usize - 1] = c;
        }
    }
    Some(Y1Poly { a0, a })
}

fn compose<S: Field>(sigma: &SigmaMatrix<S>, comps: &[(usize, usize)], r: &RingElement<S>) -> RingElement<S> {
    comps.iter().rev().fold(r.clone(), |acc, &(i, j)| sigma.component(i, j, &acc))
}

fn delta_power<S: Field>(delta: &DeltaColumn<S>, i: usize, n: usize, r: &RingElement<S>) -> RingElement<S> {
    (0..n).fold(r.clone(), |acc, _| delta.component(i, &acc))
}

/// Generator images of `r -> a r - twist(r) a` with `twist` given on generators.
fn inner_images<S: Field>(target: &DoubleOreAlgebra<S>, a: &RingElement<S>, twist: &[RingElement<S>]) -> Vec<RingElement<S>> {
    let ring = target.ring();
    (0..ring.num_gens()).map(|k| ring.mul(a, &ring.gen(k as u16)) - ring.mul(&twist[k], a)).collect()
}

fn add_images<S: Field>(a: Vec<RingElement<S>>, b: Vec<RingElement<S>>) -> Vec<RingElement<S>> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

fn diagonal<S: Field>(
    target: &DoubleOreAlgebra<S>,
    s11: Vec<RingElement<S>>,
    s22: Vec<RingElement<S>>,
) -> Option<SigmaMatrix<S>> {
    let z = vec![RingElement::zero(); target.ring().num_gens()];
    SigmaMatrix::from_components(target.ring(), [[s11, z.clone()], [z, s22]]).ok()
}

/// `(sigma', delta')` prescribed by the row for this candidate, or `None` when the
/// candidate does not have the row's shape.
pub fn table_maps<S: Field>(
    target: &DoubleOreAlgebra<S>,
    row: TableRow,
    q1: &ExtElement<S>,
    q2: &ExtElement<S>,
) -> Option<(SigmaMatrix<S>, DeltaColumn<S>)> {
    let ring = target.ring();
    let (sigma, delta) = (target.sigma(), target.delta());
    let gens = ring.gens();
    let on_gens = |f: &dyn Fn(&RingElement<S>) -> RingElement<S>| gens.iter().map(f).collect::<Vec<_>>();
    match row {
        TableRow::First(k) => {
            let c = q2.as_ring()?;
            let s22 = sigma.component_images(1, 1);
            let d2 = inner_images(target, &c, &s22);
            let (s11, d1) = if k == 8 {
                let a1 = q1.coefficient(1, 1).as_scalar()?;
                let a0 = q1.coefficient(0, 0);
                if q1.terms().count() > 2 || a1.is_zero() {
                    return None;
                }
                let s11 = on_gens(&|g| compose(sigma, &[(0, 0), (1, 1)], g));
                let d1 = inner_images(target, &a0, &s11);
                let d12 = on_gens(&|g| delta.component(0, &delta.component(1, g)));
                let s = diagonal(target, s11, s22)?;
                return Some((s.clone(), DeltaColumn::from_components(&s, d1, add_images(d12, d2)).ok()?));
            } else {
                let p = y1_poly(q1)?;
                let n = p.a.len();
                if k > 1 && n == 0 {
                    return None;
                }
                let s11 = on_gens(&|g| (0..n.max(1)).fold(g.clone(), |acc, _| sigma.component(0, 0, &acc)));
                let mut d1 = inner_images(target, &p.a0, &s11);
                for (i, ai) in p.a.iter().enumerate() {
                    let di = on_gens(&|g| delta_power(delta, 0, i + 1, g).scale(ai));
                    d1 = add_images(d1, di);
                }
                (s11, d1)
            };
            let s = diagonal(target, s11, s22)?;
            let d = DeltaColumn::from_components(&s, d1, d2).ok()?;
            Some((s, d))
        }
        TableRow::Second(1) => {
            let d = q1.as_ring()?;
            let b1 = q2.coefficient(0, 1).as_scalar()?;
            let b0 = q2.coefficient(0, 0);
            let s11 = sigma.component_images(0, 0);
            let d1 = inner_images(target, &d, &s11);
            let d2 = add_images(on_gens(&|g| delta.component(1, g).scale(&b1)), inner_images(target, &b0, &gens));
            let s = diagonal(target, s11, gens.clone())?;
            let dc = DeltaColumn::from_components(&s, d1, d2).ok()?;
            Some((s, dc))
        }
        TableRow::Second(_) => {
            let a1 = q1.coefficient(1, 0).as_scalar()?;
            let b1 = q2.coefficient(0, 1).as_scalar()?;
            let (a0, b0) = (q1.coefficient(0, 0), q2.coefficient(0, 0));
            let s = sigma.clone();
            let row = |i: usize, lead: &S| {
                on_gens(&|g| {
                    let tw = &ring.mul(&sigma.component(i, 0, g), &a0) + &ring.mul(&sigma.component(i, 1, g), &b0);
                    let own = if i == 0 { &a0 } else { &b0 };
                    delta.component(i, g).scale(lead) + ring.mul(own, g) - tw
                })
            };
            let dc = DeltaColumn::from_components(&s, row(0, &a1), row(1, &b1)).ok()?;
            Some((s, dc))
        }
    }
}

/// `(p12', p11', [tau0', tau1', tau2'])` the row prescribes for this candidate.
pub fn table_parameters<S: Field>(
    target: &DoubleOreAlgebra<S>,
    row: TableRow,
    q1: &ExtElement<S>,
    q2: &ExtElement<S>,
) -> Option<(S, S, [RingElement<S>; 3])> {
    let ring = target.ring();
    let z = RingElement::zero;
    match row {
        TableRow::First(1) => {
            // cdc^-1d^-1 for commuting units
            let (c, d) = (q2.as_ring()?.as_scalar()?, q1.as_ring()?.as_scalar()?);
            let p = c.clone() * d.clone() * c.inv().ok()? * d.inv().ok()?;
            Some((p, S::zero(), [z(), z(), z()]))
        }
        TableRow::First(_) => Some((S::zero(), S::zero(), [z(), q2.as_ring()?, z()])),
        TableRow::Second(1) => {
            let d = q1.as_ring()?;
            let b1 = q2.coefficient(0, 1).as_scalar()?;
            Some((S::one(), S::zero(), [target.delta().component(1, &d).scale(&b1), z(), z()]))
        }
        TableRow::Second(k) => {
            let a1inv = q1.coefficient(1, 0).as_scalar()?.inv().ok()?;
            let b1 = q2.coefficient(0, 1).as_scalar()?;
            let (a0, b0) = (q1.coefficient(0, 0), q2.coefficient(0, 0));
            let ratio = b1 * a1inv;
            let tau1 = &b0 - &a0.scale(&ratio);
            let tau0 = if k == 2 { z() } else { &ring.mul(&b0, &a0) - &ring.mul(&a0, &a0).scale(&ratio) };
            Some((S::zero(), ratio, [tau0, tau1, z()]))
        }
    }
}

/// Source data following the row's formulas for `(sigma', delta')`, `P'` and `tau'`.
pub fn table_source<S: Field>(
    target: &DoubleOreAlgebra<S>,
    row: TableRow,
    q1: &ExtElement<S>,
    q2: &ExtElement<S>,
) -> Option<SourceData<S>> {
    let (sigma, delta) = table_maps(target, row, q1, q2)?;
    let (p12, p11, tau) = table_parameters(target, row, q1, q2)?;
    Some(SourceData { sigma, delta, p12, p11, tau })
}

/// Whether a resolved source satisfies the row's parameter and tail conditions.
pub fn table_conditions_hold<S: Field>(
    target: &DoubleOreAlgebra<S>,
    row: TableRow,
    q1: &ExtElement<S>,
    q2: &ExtElement<S>,
    src: &SourceData<S>,
) -> bool {
    table_parameters(target, row, q1, q2).is_some_and(|(p12, p11, tau)| src.p12 == p12 && src.p11 == p11 && src.tau == tau)
}

/// Search template: the row's maps, its constant parameters fixed and the
/// candidate-dependent entries left unknown.
pub fn table_template<S: Field>(target: &DoubleOreAlgebra<S>, row: TableRow) -> SourceTemplate<S> {
    let t = target.clone();
    let maps = MapRule::Derived(Arc::new(move |q1: &ExtElement<S>, q2: &ExtElement<S>| table_maps(&t, row, q1, q2)));
    let (zs, zr) = (|| ScalarSlot::Fixed(S::zero()), || RingSlot::Fixed(RingElement::zero()));
    match row {
        TableRow::First(1) => SourceTemplate { p12: ScalarSlot::Unknown, p11: zs(), tau: [zr(), zr(), zr()], maps },
        TableRow::First(_) => SourceTemplate { p12: zs(), p11: zs(), tau: [zr(), RingSlot::Unknown, zr()], maps },
        TableRow::Second(1) => {
            SourceTemplate { p12: ScalarSlot::Fixed(S::one()), p11: zs(), tau: [RingSlot::Unknown, zr(), zr()], maps }
        }
        TableRow::Second(k) => SourceTemplate {
            p12: zs(),
            p11: ScalarSlot::Unknown,
            tau: [if k == 2 { zr() } else { RingSlot::Unknown }, RingSlot::Unknown, zr()],
            maps,
        },
    }
}
