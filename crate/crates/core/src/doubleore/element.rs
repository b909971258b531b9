use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::exactfield::Field;
use crate::presring::{render_signed_terms, render_word, RingElement};

/// Exponent pair of `y1^i y2^j`, ordered by total degree, then `i`, then `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Exponent {
    pub i: u32,
    pub j: u32,
}

impl Exponent {
    pub fn new(i: u32, j: u32) -> Self {
        Exponent { i, j }
    }

    pub fn total(&self) -> u32 {
        self.i + self.j
    }

    /// The sorted y-word `1^i 2^j`.
    pub(crate) fn yword(&self) -> Vec<u8> {
        let mut w = vec![1u8; self.i as usize];
        w.resize((self.i + self.j) as usize, 2);
        w
    }

    /// All exponents of total degree at most `d`, ascending.
    pub fn up_to(d: u32) -> Vec<Exponent> {
        (0..=d).flat_map(|t| (0..=t).map(move |i| Exponent::new(i, t - i))).collect()
    }
}

impl Ord for Exponent {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.total(), self.i, self.j).cmp(&(o.total(), o.i, o.j))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Left-normal form `sum r_ij y1^i y2^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement<S> {
    terms: BTreeMap<Exponent, RingElement<S>>,
}

impl<S: Field> ExtElement<S> {
    pub fn zero() -> Self {
        ExtElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_ring(RingElement::one())
    }

    pub fn from_ring(r: RingElement<S>) -> Self {
        Self::monomial(0, 0, r)
    }

    pub fn scalar(c: S) -> Self {
        Self::from_ring(RingElement::constant(c))
    }

    pub fn monomial(i: u32, j: u32, r: RingElement<S>) -> Self {
        let mut e = Self::zero();
        e.add_term(Exponent::new(i, j), r);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &RingElement<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> RingElement<S> {
        self.terms.get(&Exponent::new(i, j)).cloned().unwrap_or_else(RingElement::zero)
    }

    pub fn add_term(&mut self, e: Exponent, r: RingElement<S>) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ExtElement { terms: self.terms.iter().map(|(e, r)| (*e, r.scale(s))).collect() }
    }

    /// Total y-degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total).max()
    }

    pub fn degree_y1(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.i).max()
    }

    pub fn degree_y2(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.j).max()
    }

    /// The ring element, when the element has y-degree zero.
    pub fn as_ring(&self) -> Option<RingElement<S>> {
        match self.degree() {
            None => Some(RingElement::zero()),
            Some(0) => Some(self.coefficient(0, 0)),
            _ => None,
        }
    }

    /// Terms ascending by (total, i, j), e.g. `x1 + 2*y1 - x1*y1*y2`.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts: Vec<(String, S)> = Vec::new();
        for (e, r) in &self.terms {
            let mono = render_y(*e);
            if r.num_terms() == 1 || mono.is_empty() {
                for (w, c) in r.terms().rev() {
                    let word = if w.is_empty() { String::new() } else { render_word(w, names) };
                    let body = match (word.is_empty(), mono.is_empty()) {
                        (true, _) => mono.clone(),
                        (false, true) => word,
                        (false, false) => format!("{word}*{mono}"),
                    };
                    parts.push((body, c.clone()));
                }
            } else {
                let inner = render_signed_terms(
                    r.terms().rev().map(|(w, c)| (if w.is_empty() { String::new() } else { render_word(w, names) }, c)),
                );
                parts.push((format!("({inner})*{mono}"), S::one()));
            }
        }
        let one = parts.iter().map(|(b, c)| (b.clone(), c)).collect::<Vec<_>>();
        render_signed_terms(one.into_iter())
    }
}

fn render_y(e: Exponent) -> String {
    let pow = |name: &str, n: u32| match n {
        0 => None,
        1 => Some(name.to_string()),
        n => Some(format!("{name}^{n}")),
    };
    [pow("y1", e.i), pow("y2", e.j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

impl<S: Field> Add for ExtElement<S> {
    type Output = ExtElement<S>;
    fn add(mut self, rhs: Self) -> Self {
        for (e, r) in rhs.terms {
            self.add_term(e, r);
        }
        self
    }
}

impl<S: Field> Add for &ExtElement<S> {
    type Output = ExtElement<S>;
    fn add(self, rhs: Self) -> ExtElement<S> {
        self.clone() + rhs.clone()
    }
}

impl<S: Field> Neg for ExtElement<S> {
    type Output = ExtElement<S>;
    fn neg(self) -> Self {
        ExtElement { terms: self.terms.into_iter().map(|(e, r)| (e, -r)).collect() }
    }
}

impl<S: Field> Neg for &ExtElement<S> {
    type Output = ExtElement<S>;
    fn neg(self) -> ExtElement<S> {
        -self.clone()
    }
}

impl<S: Field> Sub for ExtElement<S> {
    type Output = ExtElement<S>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Field> Sub for &ExtElement<S> {
    type Output = ExtElement<S>;
    fn sub(self, rhs: Self) -> ExtElement<S> {
        self.clone() - rhs.clone()
    }
}

impl<S: Field> fmt::Debug for ExtElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (e, r) in &self.terms {
            m.entry(&(e.i, e.j), r);
        }
        m.finish()
    }
}
