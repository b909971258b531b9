//! Two-step iterated Ore extensions `R[t; sigma1, d1][u; sigma2, d2]` and the translation
//! from double extensions with a triangular sigma.
//!
//! Arithmetic here is independent of the double-extension engine: it uses single-variable
//! commutation rules only, so agreement of products is a genuine cross-check.

use std::sync::Arc;

use super::{DoubleOreAlgebra, Exponent, ExtElement};
use crate::exactfield::Field;
use crate::memo::Memo;
use crate::presring::{render_signed_terms, render_word, PresentedRing, RingElement, Word};
use crate::report::{Doc, ToReport};
use crate::ringmaps::{Endomorphism, TwistedDerivation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IteratedOrder {
    /// `t = y1` first, then `u = y2`.
    Y1ThenY2,
    /// `t = y2` first, then `u = y1`.
    Y2ThenY1,
}

impl IteratedOrder {
    pub fn label(&self) -> &'static str {
        match self {
            IteratedOrder::Y1ThenY2 => "y1-then-y2",
            IteratedOrder::Y2ThenY1 => "y2-then-y1",
        }
    }

    fn names(&self) -> (&'static str, &'static str) {
        match self {
            IteratedOrder::Y1ThenY2 => ("y1", "y2"),
            IteratedOrder::Y2ThenY1 => ("y2", "y1"),
        }
    }
}

/// Element `sum r_i t^i` of the first-step extension; index = power of `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OrePoly<S: Field>(Vec<RingElement<S>>);

impl<S: Field> OrePoly<S> {
    pub fn new(mut coeffs: Vec<RingElement<S>>) -> Self {
        while coeffs.last().is_some_and(RingElement::is_zero) {
            coeffs.pop();
        }
        OrePoly(coeffs)
    }

    pub fn zero() -> Self {
        OrePoly(Vec::new())
    }

    pub fn constant(r: RingElement<S>) -> Self {
        Self::new(vec![r])
    }

    pub fn t_power(i: usize) -> Self {
        let mut v = vec![RingElement::zero(); i];
        v.push(RingElement::one());
        OrePoly(v)
    }

    pub fn coeffs(&self) -> &[RingElement<S>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &OrePoly<S>) -> OrePoly<S> {
        let n = self.0.len().max(o.0.len());
        let z = RingElement::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn scale(&self, s: &S) -> OrePoly<S> {
        Self::new(self.0.iter().map(|r| r.scale(s)).collect())
    }

    pub fn render(&self, names: &[String], var: &str) -> String {
        let mut parts = Vec::new();
        for (i, r) in self.0.iter().enumerate().rev() {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                n => format!("{var}^{n}"),
            };
            for (w, c) in r.terms().rev() {
                let word = if w.is_empty() { String::new() } else { render_word(w, names) };
                let body = match (word.is_empty(), mono.is_empty()) {
                    (true, _) => mono.clone(),
                    (false, true) => word,
                    (false, false) => format!("{word}*{mono}"),
                };
                parts.push((body, c.clone()));
            }
        }
        render_signed_terms(parts.iter().map(|(b, c)| (b.clone(), c)))
    }
}

/// Second-step element `sum a_j u^j` with `a_j` in the first-step extension.
pub type IterElement<S> = Vec<OrePoly<S>>;

#[derive(Clone, Debug)]
pub struct IteratedPresentation<S: Field> {
    pub order: IteratedOrder,
    pub first_sigma: Endomorphism<S>,
    pub first_delta: TwistedDerivation<S>,
    /// `sigma2` restricted to R.
    pub second_sigma: Endomorphism<S>,
    /// `d2` on the generators of R.
    pub second_delta: Vec<OrePoly<S>>,
    /// `sigma2(t) = slope * t + tail`.
    pub slope: S,
    pub tail: RingElement<S>,
    /// `d2(t) = quad * t^2 + lin * t + constant`.
    pub quad: S,
    pub lin: RingElement<S>,
    pub constant: RingElement<S>,
}

impl<S: Field> IteratedPresentation<S> {
    pub fn ring(&self) -> &Arc<PresentedRing<S>> {
        self.first_sigma.ring()
    }

    /// Nonzero slope: the second step is again invertible on the first variable.
    pub fn is_double(&self) -> bool {
        !self.slope.is_zero()
    }

    pub fn sigma_on_first_variable(&self) -> OrePoly<S> {
        OrePoly::new(vec![self.tail.clone(), RingElement::constant(self.slope.clone())])
    }

    pub fn delta_on_first_variable(&self) -> OrePoly<S> {
        OrePoly::new(vec![self.constant.clone(), self.lin.clone(), RingElement::constant(self.quad.clone())])
    }
}

impl<S: Field> ToReport for IteratedPresentation<S> {
    fn to_report(&self) -> Doc {
        let names = self.ring().names();
        let (t, u) = self.order.names();
        let gens = |f: &dyn Fn(usize) -> String| -> Vec<String> {
            (0..names.len()).map(|k| format!("{} -> {}", names[k], f(k))).collect()
        };
        let ring = self.ring();
        Doc::new()
            .with("order", self.order.label())
            .with("first_step", format!("R[{t}; sigma, d]"))
            .with("first_sigma", gens(&|k| ring.render(&self.first_sigma.images()[k])))
            .with("first_delta", gens(&|k| ring.render(&self.first_delta.images()[k])))
            .with("second_step", format!("R[{t}; sigma, d][{u}; sigma2, d2]"))
            .with("second_sigma", gens(&|k| ring.render(&self.second_sigma.images()[k])))
            .with("second_delta", gens(&|k| self.second_delta[k].render(names, t)))
            .with(&format!("sigma2({t})"), self.sigma_on_first_variable().render(names, t))
            .with(&format!("d2({t})"), self.delta_on_first_variable().render(names, t))
            .with("double", self.is_double())
    }
}

/// Arithmetic in the iterated extension described by a presentation.
pub struct IteratedEngine<S: Field> {
    pres: IteratedPresentation<S>,
    t_push: Memo<(usize, Word), OrePoly<S>>,
    d2_words: Memo<Word, OrePoly<S>>,
    d2_tpow: Memo<usize, OrePoly<S>>,
    u_push: Memo<(usize, OrePoly<S>), IterElement<S>>,
}

impl<S: Field> IteratedEngine<S> {
    pub fn new(pres: &IteratedPresentation<S>) -> Self {
        IteratedEngine {
            pres: pres.clone(),
            t_push: Memo::new(),
            d2_words: Memo::new(),
            d2_tpow: Memo::new(),
            u_push: Memo::new(),
        }
    }

    fn ring(&self) -> &PresentedRing<S> {
        self.pres.ring()
    }

    fn rmul(&self, r: &RingElement<S>, a: &OrePoly<S>) -> OrePoly<S> {
        OrePoly::new(a.0.iter().map(|c| self.ring().mul(r, c)).collect())
    }

    /// `t^i * w` in the first-step extension.
    fn t_push_word(&self, i: usize, w: &Word) -> OrePoly<S> {
        if i == 0 {
            return OrePoly::constant(self.ring().normalize_word(w));
        }
        self.t_push.get_or(&(i, w.clone()), || {
            // t^i w = t^(i-1) (sigma1(w) t + d1(w)).
            let s = self.pres.first_sigma.apply_word(w);
            let d = self.pres.first_delta.apply_word(w);
            let moved = self.t_push_elem(i - 1, &s);
            let shifted = OrePoly::new(std::iter::once(RingElement::zero()).chain(moved.0).collect());
            shifted.add(&self.t_push_elem(i - 1, &d))
        })
    }

    fn t_push_elem(&self, i: usize, r: &RingElement<S>) -> OrePoly<S> {
        r.terms().fold(OrePoly::zero(), |acc, (w, c)| acc.add(&self.t_push_word(i, w).scale(c)))
    }

    pub fn mul_first(&self, a: &OrePoly<S>, b: &OrePoly<S>) -> OrePoly<S> {
        let mut out = OrePoly::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, bk) in b.0.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let moved = self.t_push_elem(i, bk);
                let shifted = OrePoly::new(vec![RingElement::zero(); k].into_iter().chain(moved.0).collect());
                out = out.add(&self.rmul(ai, &shifted));
            }
        }
        out
    }

    fn pow_first(&self, a: &OrePoly<S>, n: usize) -> OrePoly<S> {
        (0..n).fold(OrePoly::constant(RingElement::one()), |acc, _| self.mul_first(&acc, a))
    }

    pub fn sigma2(&self, a: &OrePoly<S>) -> OrePoly<S> {
        let st = self.pres.sigma_on_first_variable();
        let mut out = OrePoly::zero();
        for (i, r) in a.0.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let sr = OrePoly::constant(self.pres.second_sigma.apply(r));
            out = out.add(&self.mul_first(&sr, &self.pow_first(&st, i)));
        }
        out
    }

    fn d2_word(&self, w: &Word) -> OrePoly<S> {
        if w.is_empty() {
            return OrePoly::zero();
        }
        self.d2_words.get_or(w, || {
            let g = w.letters()[0] as usize;
            let img = self.pres.second_delta[g].clone();
            if w.len() == 1 {
                return img;
            }
            let rest = Word::from_slice(&w.letters()[1..]);
            let sg = OrePoly::constant(self.pres.second_sigma.images()[g].clone());
            let rest_el = OrePoly::constant(self.ring().normalize_word(&rest));
            self.mul_first(&sg, &self.d2_word(&rest)).add(&self.mul_first(&img, &rest_el))
        })
    }

    fn d2_tpow(&self, i: usize) -> OrePoly<S> {
        if i == 0 {
            return OrePoly::zero();
        }
        self.d2_tpow.get_or(&i, || {
            // d2(t * t^(i-1)) = sigma2(t) d2(t^(i-1)) + d2(t) t^(i-1).
            let head = self.mul_first(&self.pres.sigma_on_first_variable(), &self.d2_tpow(i - 1));
            head.add(&self.mul_first(&self.pres.delta_on_first_variable(), &OrePoly::t_power(i - 1)))
        })
    }

    pub fn d2(&self, a: &OrePoly<S>) -> OrePoly<S> {
        let mut out = OrePoly::zero();
        for (i, r) in a.0.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let sr = OrePoly::constant(self.pres.second_sigma.apply(r));
            let dr = r.terms().fold(OrePoly::zero(), |acc, (w, c)| acc.add(&self.d2_word(w).scale(c)));
            let part = self.mul_first(&sr, &self.d2_tpow(i)).add(&self.mul_first(&dr, &OrePoly::t_power(i)));
            out = out.add(&part);
        }
        out
    }

    /// `u^j * a` in the second-step extension.
    fn u_push(&self, j: usize, a: &OrePoly<S>) -> IterElement<S> {
        if j == 0 || a.is_zero() {
            return if a.is_zero() { Vec::new() } else { vec![a.clone()] };
        }
        self.u_push.get_or(&(j, a.clone()), || {
            // u^j a = u^(j-1) (sigma2(a) u + d2(a)).
            let mut moved = self.u_push(j - 1, &self.sigma2(a));
            moved.insert(0, OrePoly::zero());
            add_iter(&moved, &self.u_push(j - 1, &self.d2(a)))
        })
    }

    pub fn mul(&self, a: &IterElement<S>, b: &IterElement<S>) -> IterElement<S> {
        let mut out: IterElement<S> = Vec::new();
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (k, bk) in b.iter().enumerate() {
                let moved = self.u_push(j, bk);
                let mut shifted = vec![OrePoly::zero(); k];
                shifted.extend(moved.into_iter().map(|c| self.mul_first(aj, &c)));
                out = add_iter(&out, &shifted);
            }
        }
        out
    }
}

fn add_iter<S: Field>(a: &IterElement<S>, b: &IterElement<S>) -> IterElement<S> {
    let n = a.len().max(b.len());
    let z = OrePoly::zero();
    let mut v: IterElement<S> = (0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect();
    while v.last().is_some_and(OrePoly::is_zero) {
        v.pop();
    }
    v
}

/// Monomial `w t^i u^j`.
pub fn iter_monomial<S: Field>(w: &Word, i: usize, j: usize) -> IterElement<S> {
    let mut coeffs = vec![RingElement::zero(); i];
    coeffs.push(RingElement::monomial(w.clone(), S::one()));
    let mut v = vec![OrePoly::zero(); j];
    v.push(OrePoly::new(coeffs));
    v
}

/// Reads an iterated element as an element of the double extension.
pub fn to_ext<S: Field>(alg: &DoubleOreAlgebra<S>, order: IteratedOrder, e: &IterElement<S>) -> ExtElement<S> {
    let mut out = ExtElement::zero();
    for (j, a) in e.iter().enumerate() {
        for (i, r) in a.coeffs().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            match order {
                IteratedOrder::Y1ThenY2 => out.add_term(Exponent::new(i as u32, j as u32), r.clone()),
                IteratedOrder::Y2ThenY1 => {
                    let m = alg.mul(&alg.pow(&alg.y2(), i as u32), &alg.pow(&alg.y1(), j as u32));
                    out = out + alg.ring_times(r, &m);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedOutcome<S: Field> {
    pub presentations: Vec<IteratedPresentation<S>>,
    /// Violated conditions per order, e.g. `("y1-then-y2", "sigma12 != 0")`.
    pub failures: Vec<(&'static str, String)>,
}

impl<S: Field> PartialEq for IteratedPresentation<S> {
    fn eq(&self, o: &Self) -> bool {
        self.order == o.order
            && self.first_sigma.images() == o.first_sigma.images()
            && self.first_delta.images() == o.first_delta.images()
            && self.second_sigma.images() == o.second_sigma.images()
            && self.second_delta == o.second_delta
            && (&self.slope, &self.tail, &self.quad, &self.lin, &self.constant)
                == (&o.slope, &o.tail, &o.quad, &o.lin, &o.constant)
    }
}

impl<S: Field> Eq for IteratedPresentation<S> {}

impl<S: Field> IteratedOutcome<S> {
    pub fn get(&self, order: IteratedOrder) -> Option<&IteratedPresentation<S>> {
        self.presentations.iter().find(|p| p.order == order)
    }

    pub fn failure_conditions(&self) -> Vec<&str> {
        self.failures.iter().map(|(_, c)| c.as_str()).collect()
    }
}

impl<S: Field> ToReport for IteratedOutcome<S> {
    fn to_report(&self) -> Doc {
        let pres: Vec<Doc> = self.presentations.iter().map(ToReport::to_report).collect();
        let fails: Vec<String> = self.failures.iter().map(|(o, c)| format!("{o}: {c}")).collect();
        Doc::new()
            .with("check", "iterated")
            .with("presentable", !self.presentations.is_empty())
            .with("presentations", pres)
            .with("failed_conditions", fails)
    }
}

/// Tries both orders.
pub fn to_iterated<S: Field>(alg: &DoubleOreAlgebra<S>) -> IteratedOutcome<S> {
    let ring = alg.ring();
    let sigma = alg.sigma();
    let delta = alg.delta();
    let endo = |i: usize, j: usize| Endomorphism::new(ring, sigma.component_images(i, j)).expect("images are normal");
    let mixed = |d: usize, s: (usize, usize)| -> Vec<OrePoly<S>> {
        let (dd, ss) = (delta.component_images(d), sigma.component_images(s.0, s.1));
        dd.into_iter().zip(ss).map(|(a, b)| OrePoly::new(vec![a, b])).collect()
    };
    let mut out = IteratedOutcome { presentations: Vec::new(), failures: Vec::new() };

    let y12 = IteratedOrder::Y1ThenY2.label();
    if sigma.component_vanishes_on_generators(0, 1) {
        let s1 = endo(0, 0);
        let d1 = TwistedDerivation::new(&s1, delta.component_images(0)).expect("images are normal");
        out.presentations.push(IteratedPresentation {
            order: IteratedOrder::Y1ThenY2,
            first_sigma: s1,
            first_delta: d1,
            second_sigma: endo(1, 1),
            second_delta: mixed(1, (1, 0)),
            slope: alg.p12().clone(),
            tail: alg.tau(2).clone(),
            quad: alg.p11().clone(),
            lin: alg.tau(1).clone(),
            constant: alg.tau(0).clone(),
        });
    } else {
        out.failures.push((y12, "sigma12 != 0".into()));
    }

    let y21 = IteratedOrder::Y2ThenY1.label();
    let mut conds = Vec::new();
    if !sigma.component_vanishes_on_generators(1, 0) {
        conds.push("sigma21 != 0");
    }
    if alg.p12().is_zero() {
        conds.push("p12 = 0");
    }
    if !alg.p11().is_zero() {
        conds.push("p11 != 0");
    }
    if conds.is_empty() {
        let inv = alg.p12().inv().expect("p12 is nonzero");
        let s2 = endo(1, 1);
        let d2 = TwistedDerivation::new(&s2, delta.component_images(1)).expect("images are normal");
        out.presentations.push(IteratedPresentation {
            order: IteratedOrder::Y2ThenY1,
            first_sigma: s2,
            first_delta: d2,
            second_sigma: endo(0, 0),
            second_delta: mixed(0, (0, 1)),
            slope: inv.clone(),
            tail: alg.tau(1).scale(&-inv.clone()),
            quad: S::zero(),
            lin: alg.tau(2).scale(&-inv.clone()),
            constant: alg.tau(0).scale(&-inv),
        });
    } else {
        out.failures.extend(conds.into_iter().map(|c| (y21, c.to_string())));
    }
    out
}

/// The iterated extension `k[x1][x2; sigma2, d2]` with `sigma2(x1) = p12 x1 + tau2` and
/// `d2(x1) = p11 x1^2 + tau1 x1 + tau0`, all data scalars. Double iff p12 != 0.
pub fn scalar_tail_iterated<S: Field>(p12: S, p11: S, tau0: S, tau1: S, tau2: S) -> IteratedPresentation<S> {
    let ring = Arc::new(PresentedRing::free(&[]).expect("empty presentation"));
    let id = Endomorphism::identity(&ring);
    IteratedPresentation {
        order: IteratedOrder::Y1ThenY2,
        first_delta: TwistedDerivation::zero(&id),
        first_sigma: id.clone(),
        second_sigma: id,
        second_delta: Vec::new(),
        slope: p12,
        tail: RingElement::constant(tau2),
        quad: p11,
        lin: RingElement::constant(tau1),
        constant: RingElement::constant(tau0),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedProductReport {
    pub max_degree: usize,
    pub pairs: usize,
    pub mismatch: Option<(String, String)>,
}

impl IteratedProductReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl ToReport for IteratedProductReport {
    fn to_report(&self) -> Doc {
        let mut d = Doc::new()
            .with("check", "iterated-products")
            .with("max_degree", self.max_degree)
            .with("passed", self.passed())
            .with("pairs", self.pairs);
        if let Some((a, b)) = &self.mismatch {
            d.push("mismatch", vec![a.clone(), b.clone()]);
        }
        d
    }
}

/// Multiplies all monomial pairs `w t^i u^j` (ring degree plus `i + j` at most
/// `max_degree`) in the iterated engine and compares with the double-extension product.
pub fn verify_iterated<S: Field>(
    alg: &DoubleOreAlgebra<S>,
    pres: &IteratedPresentation<S>,
    max_degree: usize,
) -> IteratedProductReport {
    use rayon::prelude::*;
    let engine = IteratedEngine::new(pres);
    let mut monos = Vec::new();
    for e in Exponent::up_to(max_degree as u32) {
        for w in alg.ring().basis(max_degree - e.total() as usize) {
            monos.push(iter_monomial::<S>(&w, e.i as usize, e.j as usize));
        }
    }
    let n = monos.len();
    let mismatch = (0..n * n)
        .into_par_iter()
        .find_first(|&k| {
            let (a, b) = (&monos[k / n], &monos[k % n]);
            let lhs = to_ext(alg, pres.order, &engine.mul(a, b));
            let rhs = alg.mul(&to_ext(alg, pres.order, a), &to_ext(alg, pres.order, b));
            lhs != rhs
        })
        .map(|k| {
            let show = |m: &IterElement<S>| alg.render(&to_ext(alg, pres.order, m));
            (show(&monos[k / n]), show(&monos[k % n]))
        });
    IteratedProductReport { max_degree, pairs: n * n, mismatch }
}
