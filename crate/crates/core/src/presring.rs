//! Finitely presented algebras k<x1..xg>/(relations) with normal forms by rewriting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;
use thiserror::Error;

use crate::exactfield::{is_negative, Field};

pub const DEFAULT_REWRITE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("two rules share the left-hand side {0}")]
    DuplicateRule(String),
    #[error("rule for {0} is not order-decreasing")]
    NotOrderDecreasing(String),
    #[error("rule left-hand side {0} must have length at least 2")]
    LhsTooShort(String),
    #[error("relation {0} has no leading word")]
    TrivialRelation(String),
    #[error("element does not belong to this ring: {0}")]
    RingMismatch(String),
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
}

/// A monomial: generator indices, ordered degree-lexicographically by generator rank.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u16; 8]>);

impl Word {
    pub fn unit() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_slice(ix: &[u16]) -> Word {
        Word(SmallVec::from_slice(ix))
    }

    pub fn generator(i: u16) -> Word {
        Word::from_slice(&[i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn splice(&self, at: usize, len: usize, middle: &Word) -> Word {
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(self.len() - len + middle.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[at + len..]);
        Word(v)
    }

    fn contains_at(&self, at: usize, pat: &Word) -> bool {
        self.0[at..].starts_with(&pat.0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Linear combination of normal words. Arithmetic that needs the relations goes through
/// [`PresentedRing`]; additive structure lives here.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Field> RingElement<S> {
    pub fn zero() -> Self {
        RingElement { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(Word::unit(), c)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn monomial(w: Word, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        RingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// The scalar value, if the element is a constant.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.iter().next() {
            None => Some(S::zero()),
            Some((w, c)) if w.is_empty() && self.terms.len() == 1 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * s.clone())).collect() }
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        add_into(&mut self.terms, w, c);
    }
}

fn add_into<S: Field>(map: &mut BTreeMap<Word, S>, w: Word, c: S) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl<S: Field> Add for &RingElement<S> {
    type Output = RingElement<S>;
    fn add(self, rhs: Self) -> RingElement<S> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        out
    }
}

impl<S: Field> Add for RingElement<S> {
    type Output = RingElement<S>;
    fn add(mut self, rhs: Self) -> RingElement<S> {
        for (w, c) in rhs.terms {
            add_into(&mut self.terms, w, c);
        }
        self
    }
}

impl<S: Field> Neg for &RingElement<S> {
    type Output = RingElement<S>;
    fn neg(self) -> RingElement<S> {
        RingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

impl<S: Field> Neg for RingElement<S> {
    type Output = RingElement<S>;
    fn neg(self) -> RingElement<S> {
        -&self
    }
}

impl<S: Field> Sub for &RingElement<S> {
    type Output = RingElement<S>;
    fn sub(self, rhs: Self) -> RingElement<S> {
        self + &(-rhs)
    }
}

impl<S: Field> Sub for RingElement<S> {
    type Output = RingElement<S>;
    fn sub(self, rhs: Self) -> RingElement<S> {
        self + (-rhs)
    }
}

impl<S: Field> fmt::Debug for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..16).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&render_terms(self.terms.iter().rev(), &names))
    }
}

/// `lhs -> rhs`, with every word of `rhs` smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule<S: Field> {
    pub lhs: Word,
    pub rhs: RingElement<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair<S: Field> {
    pub overlap: Word,
    pub via_first: RingElement<S>,
    pub via_second: RingElement<S>,
}

/// Generators are indexed by precedence: index 0 is the smallest generator.
#[derive(Debug, Clone)]
pub struct PresentedRing<S: Field> {
    names: Vec<String>,
    rules: Vec<RewriteRule<S>>,
    cap: usize,
}

impl<S: Field> PresentedRing<S> {
    pub fn free(names: &[&str]) -> Result<Self, RingError> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    pub fn new(names: Vec<String>, rules: Vec<RewriteRule<S>>) -> Result<Self, RingError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(RingError::DuplicateGenerator(n.clone()));
            }
        }
        let ring = PresentedRing { names, rules: Vec::new(), cap: DEFAULT_REWRITE_CAP };
        for (i, r) in rules.iter().enumerate() {
            let shown = ring.render_word(&r.lhs);
            if r.lhs.len() < 2 {
                return Err(RingError::LhsTooShort(shown));
            }
            if r.lhs.letters().iter().any(|&g| g as usize >= ring.names.len()) {
                return Err(RingError::RingMismatch(shown));
            }
            if rules[..i].iter().any(|o| o.lhs == r.lhs) {
                return Err(RingError::DuplicateRule(shown));
            }
            if r.rhs.terms().any(|(w, _)| w >= &r.lhs) {
                return Err(RingError::NotOrderDecreasing(shown));
            }
        }
        Ok(PresentedRing { rules, ..ring })
    }

    /// Orients each relation `Σ c_w w = 0` by its leading word.
    pub fn from_relations(names: Vec<String>, relations: Vec<Vec<(Word, S)>>) -> Result<Self, RingError> {
        let mut rules = Vec::new();
        for rel in relations {
            let mut acc = RingElement::zero();
            for (w, c) in rel {
                acc.add_term(w, c);
            }
            let Some((lead, lc)) = acc.terms.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
                return Err(RingError::TrivialRelation("0".into()));
            };
            let inv = lc.inv().expect("leading coefficient is nonzero");
            acc.terms.remove(&lead);
            rules.push(RewriteRule { lhs: lead, rhs: acc.scale(&(-inv)) });
        }
        Self::new(names, rules)
    }

    pub fn with_rewrite_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rules(&self) -> &[RewriteRule<S>] {
        &self.rules
    }

    pub fn generator_index(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn gen(&self, i: u16) -> RingElement<S> {
        RingElement::monomial(Word::generator(i), S::one())
    }

    pub fn gens(&self) -> Vec<RingElement<S>> {
        (0..self.num_gens() as u16).map(|i| self.gen(i)).collect()
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, &RewriteRule<S>)> {
        (0..w.len())
            .find_map(|at| self.rules.iter().find(|r| r.lhs.len() <= w.len() - at && w.contains_at(at, &r.lhs)).map(|r| (at, r)))
    }

    fn reduce(&self, mut work: BTreeMap<Word, S>) -> Result<RingElement<S>, RingError> {
        if self.rules.is_empty() {
            work.retain(|_, c| !c.is_zero());
            return Ok(RingElement { terms: work });
        }
        let mut out = BTreeMap::new();
        let mut steps = 0usize;
        // Largest word first: rewriting only produces smaller words, so a popped
        // irreducible word has its final coefficient.
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w) {
                None => {
                    out.insert(w, c);
                }
                Some((at, rule)) => {
                    steps += 1;
                    if steps > self.cap {
                        return Err(RingError::NonTerminating(self.cap));
                    }
                    for (rw, rc) in rule.rhs.terms() {
                        let next = w.splice(at, rule.lhs.len(), rw);
                        debug_assert!(next < w, "rewrite must decrease the term order");
                        add_into(&mut work, next, c.clone() * rc.clone());
                    }
                }
            }
        }
        Ok(RingElement { terms: out })
    }

    fn reduce_unchecked(&self, work: BTreeMap<Word, S>) -> RingElement<S> {
        // Validated rules are order-decreasing, so only a pathological cap can trip here.
        self.reduce(work).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Normal form of a formal combination of (not necessarily irreducible) words.
    pub fn normalize(&self, raw: &[(Word, S)]) -> Result<RingElement<S>, RingError> {
        let mut work = BTreeMap::new();
        for (w, c) in raw {
            if w.letters().iter().any(|&g| g as usize >= self.num_gens()) {
                return Err(RingError::RingMismatch(format!("{w:?}")));
            }
            add_into(&mut work, w.clone(), c.clone());
        }
        self.reduce(work)
    }

    pub fn normalize_word(&self, w: &Word) -> RingElement<S> {
        let mut work = BTreeMap::new();
        work.insert(w.clone(), S::one());
        self.reduce_unchecked(work)
    }

    /// Confirms an element is a valid normal form of this ring.
    pub fn check(&self, e: &RingElement<S>) -> Result<(), RingError> {
        for (w, _) in e.terms() {
            if w.letters().iter().any(|&g| g as usize >= self.num_gens()) || !self.is_irreducible(w) {
                return Err(RingError::RingMismatch(self.render_word(w)));
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &RingElement<S>, b: &RingElement<S>) -> RingElement<S> {
        if a.is_zero() || b.is_zero() {
            return RingElement::zero();
        }
        if let Some(s) = a.as_scalar() {
            return b.scale(&s);
        }
        if let Some(s) = b.as_scalar() {
            return a.scale(&s);
        }
        let mut work = BTreeMap::new();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                add_into(&mut work, u.concat(v), c.clone() * d.clone());
            }
        }
        self.reduce_unchecked(work)
    }

    pub fn mul_word_right(&self, a: &RingElement<S>, w: &Word) -> RingElement<S> {
        let mut work = BTreeMap::new();
        for (u, c) in a.terms() {
            add_into(&mut work, u.concat(w), c.clone());
        }
        self.reduce_unchecked(work)
    }

    pub fn pow(&self, a: &RingElement<S>, e: u32) -> RingElement<S> {
        (0..e).fold(RingElement::one(), |acc, _| self.mul(&acc, a))
    }

    /// Irreducible words of length at most `max_degree`, ascending in term order.
    pub fn basis(&self, max_degree: usize) -> Vec<Word> {
        let mut layer = vec![Word::unit()];
        let mut all = layer.clone();
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.num_gens() as u16 {
                    let cand = w.concat(&Word::generator(g));
                    // the prefix is irreducible, so only suffixes can match a rule
                    let reducible = self
                        .rules
                        .iter()
                        .any(|r| r.lhs.len() <= cand.len() && cand.contains_at(cand.len() - r.lhs.len(), &r.lhs));
                    if !reducible {
                        next.push(cand);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }

    /// Overlap and inclusion ambiguities up to the given word length whose two
    /// reductions disagree.
    pub fn check_local_confluence(&self, max_overlap_len: usize) -> Vec<CriticalPair<S>> {
        let mut out = Vec::new();
        let one_step = |w: &Word, at: usize, rule: &RewriteRule<S>| {
            let mut work = BTreeMap::new();
            for (rw, rc) in rule.rhs.terms() {
                add_into(&mut work, w.splice(at, rule.lhs.len(), rw), rc.clone());
            }
            self.reduce_unchecked(work)
        };
        for (i, a) in self.rules.iter().enumerate() {
            for (j, b) in self.rules.iter().enumerate() {
                let (la, lb) = (a.lhs.letters(), b.lhs.letters());
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] != lb[..k] {
                        continue;
                    }
                    let w = a.lhs.concat(&Word::from_slice(&lb[k..]));
                    if w.len() > max_overlap_len {
                        continue;
                    }
                    let first = one_step(&w, 0, a);
                    let second = one_step(&w, la.len() - k, b);
                    if first != second {
                        out.push(CriticalPair { overlap: w, via_first: first, via_second: second });
                    }
                }
                if i != j && lb.len() < la.len() && la.len() <= max_overlap_len {
                    for at in 0..=la.len() - lb.len() {
                        if a.lhs.contains_at(at, &b.lhs) {
                            let first = one_step(&a.lhs, 0, a);
                            let second = one_step(&a.lhs, at, b);
                            if first != second {
                                out.push(CriticalPair { overlap: a.lhs.clone(), via_first: first, via_second: second });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn render_word(&self, w: &Word) -> String {
        render_word(w, &self.names)
    }

    /// Canonical text: terms in descending term order, e.g. `x1*x2 + x1^2`.
    pub fn render(&self, e: &RingElement<S>) -> String {
        render_terms(e.terms().rev(), &self.names)
    }
}

pub(crate) fn render_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = &names[letters[i] as usize];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// Shared term printer: `body` is a monomial string (empty for the unit).
pub(crate) fn render_signed_terms<'a, S: Field>(terms: impl Iterator<Item = (String, &'a S)>) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let neg = is_negative(c);
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            let _ = write!(out, "{mag}*{body}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_terms<'a, S: Field>(terms: impl Iterator<Item = (&'a Word, &'a S)>, names: &[String]) -> String {
    render_signed_terms(terms.map(|(w, c)| {
        let body = if w.is_empty() { String::new() } else { render_word(w, names) };
        (body, c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn w(ix: &[u16]) -> Word {
        Word::from_slice(ix)
    }

    /// x2 x1 -> x1 x2 + x1^2
    fn jordan() -> PresentedRing<Q> {
        PresentedRing::from_relations(
            vec!["x1".into(), "x2".into()],
            vec![vec![(w(&[1, 0]), q(1)), (w(&[0, 1]), q(-1)), (w(&[0, 0]), q(-1))]],
        )
        .unwrap()
    }

    /// x2 x1 -> -x1 x2
    fn skew() -> PresentedRing<Q> {
        PresentedRing::from_relations(vec!["x1".into(), "x2".into()], vec![vec![(w(&[1, 0]), q(1)), (w(&[0, 1]), q(1))]]).unwrap()
    }

    #[test]
    fn normal_forms() {
        let r = jordan();
        let e = r.normalize(&[(w(&[1, 0]), q(1))]).unwrap();
        assert_eq!(r.render(&e), "x1*x2 + x1^2");
        assert_eq!(r.normalize(&[(Word::unit(), q(1))]).unwrap(), RingElement::one());

        let s = skew();
        let e = s.normalize(&[(w(&[1, 1, 0]), q(1))]).unwrap();
        assert_eq!(s.render(&e), "x1*x2^2");
        assert_eq!(s.render(&s.mul(&s.gen(1), &s.gen(0))), "-x1*x2");
    }

    #[test]
    fn arithmetic_basics() {
        let r = jordan();
        let x1 = r.gen(0);
        assert_eq!(r.render(&r.mul(&x1, &x1)), "x1^2");
        let x1x2 = r.mul(&x1, &r.gen(1));
        assert!((&x1x2 + &(-&x1x2)).is_zero());
        assert_eq!(r.render(&RingElement::zero()), "0");
        assert_eq!(r.render(&(RingElement::constant(q(-2)) - x1.scale(&Q::new(1.into(), 2.into())))), "-1/2*x1 - 2");
    }

    #[test]
    fn validation() {
        let dup = PresentedRing::<Q>::new(
            vec!["x1".into(), "x2".into()],
            vec![
                RewriteRule { lhs: w(&[1, 0]), rhs: RingElement::monomial(w(&[0, 1]), q(1)) },
                RewriteRule { lhs: w(&[1, 0]), rhs: RingElement::zero() },
            ],
        );
        assert!(matches!(dup, Err(RingError::DuplicateRule(_))));
        let up = PresentedRing::<Q>::new(
            vec!["x1".into(), "x2".into()],
            vec![RewriteRule { lhs: w(&[0, 1]), rhs: RingElement::monomial(w(&[1, 0]), q(1)) }],
        );
        assert!(matches!(up, Err(RingError::NotOrderDecreasing(_))));
        assert!(matches!(PresentedRing::<Q>::free(&["a", "a"]), Err(RingError::DuplicateGenerator(_))));
        assert!(matches!(jordan().normalize(&[(w(&[2]), q(1))]), Err(RingError::RingMismatch(_))));
    }

    #[test]
    fn rewrite_cap_is_diagnosable() {
        let r = skew().with_rewrite_cap(2);
        let long = w(&[1, 1, 1, 0, 0, 0]);
        assert_eq!(r.normalize(&[(long, q(1))]), Err(RingError::NonTerminating(2)));
    }

    #[test]
    fn bases() {
        let r = jordan();
        let b = r.basis(2);
        let shown: Vec<String> = b.iter().map(|x| r.render_word(x)).collect();
        assert_eq!(shown, ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
        assert_eq!(r.basis(0), vec![Word::unit()]);
        assert_eq!(PresentedRing::<Q>::free(&["a", "b"]).unwrap().basis(2).len(), 7);
    }

    #[test]
    fn confluence() {
        assert!(jordan().check_local_confluence(4).is_empty());
        assert!(skew().check_local_confluence(4).is_empty());
        let comm = PresentedRing::<Q>::from_relations(
            vec!["x1".into(), "x2".into()],
            vec![vec![(w(&[1, 0]), q(1)), (w(&[0, 1]), q(-1))]],
        )
        .unwrap();
        assert!(comm.check_local_confluence(4).is_empty());
        // x2^2 -> -x1 x2 has a self-overlap on x2^3 that does not resolve
        let literal = PresentedRing::<Q>::from_relations(
            vec!["x1".into(), "x2".into()],
            vec![vec![(w(&[1, 1]), q(1)), (w(&[0, 1]), q(1))]],
        )
        .unwrap();
        let pairs = literal.check_local_confluence(4);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].overlap, w(&[1, 1, 1]));
    }

    fn arb_element() -> impl Strategy<Value = RingElement<Q>> {
        proptest::collection::vec((proptest::collection::vec(0u16..2, 0..4), -3i64..4), 0..4).prop_map(|terms| {
            let r = jordan();
            let raw: Vec<(Word, Q)> = terms.into_iter().map(|(ix, c)| (Word::from_slice(&ix), q(c))).collect();
            r.normalize(&raw).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_element(), b in arb_element(), c in arb_element()) {
            let r = jordan();
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &(&b + &c)), &r.mul(&a, &b) + &r.mul(&a, &c));
            prop_assert_eq!(r.mul(&(&a + &b), &c), &r.mul(&a, &c) + &r.mul(&b, &c));
            prop_assert_eq!(r.mul(&RingElement::one(), &a), a.clone());
            prop_assert_eq!(r.mul(&a, &RingElement::one()), a.clone());
        }

        #[test]
        fn normalize_is_idempotent(a in arb_element()) {
            let r = jordan();
            let raw: Vec<(Word, Q)> = a.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            prop_assert_eq!(r.normalize(&raw).unwrap(), a.clone());
            prop_assert!(r.check(&a).is_ok());
        }

        #[test]
        fn scaling_is_linear(a in arb_element(), s in -4i64..5) {
            let s = q(s);
            prop_assert_eq!(a.scale(&s) + a.clone(), a.scale(&(s + Q::one())));
            prop_assert!(a.scale(&Q::zero()).is_zero());
        }
    }
}
