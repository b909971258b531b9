//! Turns a parsed document into rings, extension data and dcv candidates over a field.

use std::collections::HashMap;
use std::sync::Arc;

use dore::dcv::{DcvMatrix, Scope, SourceData};
use dore::{DeltaColumn, DoubleOreAlgebra, ExtElement, Field, PresentedRing, RingElement, SigmaMatrix, Word};

use crate::ast::*;
use crate::error::SpecError;

/// A declared extension. `arith` multiplies elements without any well-definedness gate,
/// so that broken data can still be written down and checked.
#[derive(Clone)]
pub struct ExtensionModel<S: Field> {
    pub name: String,
    pub data: SourceData<S>,
    pub arith: DoubleOreAlgebra<S>,
}

#[derive(Clone)]
pub struct DcvModel<S: Field> {
    pub name: String,
    /// Index into [`Model::extensions`].
    pub target: usize,
    pub matrix: DcvMatrix<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckModel {
    pub kind: CheckKind,
    pub subject: String,
    pub max_degree: Option<usize>,
    pub scope: Option<Scope>,
}

#[derive(Clone)]
pub struct Model<S: Field> {
    pub ring_name: String,
    pub ring: Arc<PresentedRing<S>>,
    pub extensions: Vec<ExtensionModel<S>>,
    pub dcvs: Vec<DcvModel<S>>,
    pub checks: Vec<CheckModel>,
}

impl<S: Field> Model<S> {
    pub fn extension(&self, name: &str) -> Option<&ExtensionModel<S>> {
        self.extensions.iter().find(|e| e.name == name)
    }

    pub fn dcv(&self, name: &str) -> Option<&DcvModel<S>> {
        self.dcvs.iter().find(|d| d.name == name)
    }

    pub fn names(&self) -> &[String] {
        self.ring.names()
    }
}

trait Arith<S: Field> {
    type E: Clone;
    fn constant(&self, c: S) -> Self::E;
    fn var(&self, n: &Name) -> Result<Self::E, SpecError>;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn neg(&self, a: Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn as_scalar(&self, a: &Self::E) -> Option<S>;
}

fn eval<S: Field, A: Arith<S>>(a: &A, e: &Expr, at: Pos) -> Result<A::E, SpecError> {
    Ok(match e {
        Expr::Num(n) => a.constant(S::from_bigint(n)),
        Expr::Var(v) => a.var(v)?,
        Expr::Neg(x) => a.neg(eval(a, x, at)?),
        Expr::Add(x, y) => a.add(eval(a, x, at)?, eval(a, y, at)?),
        Expr::Sub(x, y) => {
            let y = a.neg(eval(a, y, at)?);
            a.add(eval(a, x, at)?, y)
        }
        Expr::Mul(x, y) => a.mul(&eval(a, x, at)?, &eval(a, y, at)?),
        Expr::Div(x, y) => {
            let d = eval(a, y, at)?;
            let d = a.as_scalar(&d).ok_or_else(|| SpecError::invalid(at, format!("divisor `{y}` is not a scalar")))?;
            let inv = d.inv().map_err(|_| SpecError::invalid(at, format!("division by `{y}`, which is zero")))?;
            a.mul(&eval(a, x, at)?, &a.constant(inv))
        }
        Expr::Pow(x, n) => {
            let base = eval(a, x, at)?;
            (1..*n).fold(base.clone(), |acc, _| a.mul(&acc, &base))
        }
    })
}

struct RingCtx<'a, S: Field>(&'a PresentedRing<S>);

impl<S: Field> Arith<S> for RingCtx<'_, S> {
    type E = RingElement<S>;
    fn constant(&self, c: S) -> Self::E {
        RingElement::constant(c)
    }
    fn var(&self, n: &Name) -> Result<Self::E, SpecError> {
        let i = self.0.generator_index(&n.text).ok_or_else(|| unknown(n, "generator"))?;
        Ok(self.0.gen(i))
    }
    fn add(&self, a: Self::E, b: Self::E) -> Self::E {
        a + b
    }
    fn neg(&self, a: Self::E) -> Self::E {
        -a
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.0.mul(a, b)
    }
    fn as_scalar(&self, a: &Self::E) -> Option<S> {
        a.as_scalar()
    }
}

struct ExtCtx<'a, S: Field>(&'a DoubleOreAlgebra<S>);

impl<S: Field> Arith<S> for ExtCtx<'_, S> {
    type E = ExtElement<S>;
    fn constant(&self, c: S) -> Self::E {
        ExtElement::scalar(c)
    }
    fn var(&self, n: &Name) -> Result<Self::E, SpecError> {
        match n.text.as_str() {
            "y1" => Ok(self.0.y1()),
            "y2" => Ok(self.0.y2()),
            _ => RingCtx(self.0.ring()).var(n).map(ExtElement::from_ring),
        }
    }
    fn add(&self, a: Self::E, b: Self::E) -> Self::E {
        a + b
    }
    fn neg(&self, a: Self::E) -> Self::E {
        -a
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.0.mul(a, b)
    }
    fn as_scalar(&self, a: &Self::E) -> Option<S> {
        a.as_ring()?.as_scalar()
    }
}

fn unknown(n: &Name, kind: &'static str) -> SpecError {
    SpecError::Resolution { pos: n.pos, kind, name: n.text.clone() }
}

/// Evaluates a ring expression.
pub fn ring_element<S: Field>(ring: &PresentedRing<S>, e: &Expr, at: Pos) -> Result<RingElement<S>, SpecError> {
    eval(&RingCtx(ring), e, at)
}

/// Evaluates an element of the extension, in `y1`, `y2` and the ring generators.
pub fn ext_element<S: Field>(alg: &DoubleOreAlgebra<S>, e: &Expr, at: Pos) -> Result<ExtElement<S>, SpecError> {
    eval(&ExtCtx(alg), e, at)
}

fn scalar<S: Field>(ring: &PresentedRing<S>, e: &Expr, at: Pos) -> Result<S, SpecError> {
    ring_element(ring, e, at)?.as_scalar().ok_or_else(|| SpecError::invalid(at, format!("`{e}` is not a scalar")))
}

const RESERVED: [&str; 2] = ["y1", "y2"];

fn build_ring<S: Field>(doc: &SpecDocument) -> Result<(String, Arc<PresentedRing<S>>), SpecError> {
    let decl = match doc.rings.as_slice() {
        [] => return Err(SpecError::invalid(Pos { line: 1, col: 1 }, "no ring declared")),
        [d] => d,
        [_, second, ..] => return Err(SpecError::invalid(second.name.pos, "only one ring may be declared")),
    };
    for g in &decl.gens {
        if RESERVED.contains(&g.text.as_str()) {
            return Err(SpecError::invalid(g.pos, format!("`{g}` is reserved for the extension variables")));
        }
    }
    let names: Vec<String> = if decl.order.is_empty() {
        decl.gens.iter().map(|g| g.text.clone()).collect()
    } else {
        for o in &decl.order {
            if !decl.gens.contains(o) {
                return Err(unknown(o, "generator"));
            }
        }
        if decl.order.len() != decl.gens.len() || decl.gens.iter().any(|g| !decl.order.contains(g)) {
            return Err(SpecError::invalid(decl.order[0].pos, "order must list every generator exactly once"));
        }
        decl.order.iter().map(|g| g.text.clone()).collect()
    };
    let free =
        PresentedRing::<S>::new(names.clone(), Vec::new()).map_err(|e| SpecError::invalid(decl.name.pos, e.to_string()))?;
    let mut rels: Vec<Vec<(Word, S)>> = Vec::new();
    for r in &doc.relations {
        let d = ring_element(&free, &r.lhs, r.pos)? - ring_element(&free, &r.rhs, r.pos)?;
        if d.is_zero() {
            return Err(SpecError::invalid(r.pos, "relation is trivial"));
        }
        rels.push(d.terms().map(|(w, c)| (w.clone(), c.clone())).collect());
    }
    let ring = PresentedRing::from_relations(names, rels)
        .map_err(|e| SpecError::invalid(doc.relations.first().map_or(decl.name.pos, |r| r.pos), e.to_string()))?;
    Ok((decl.name.text.clone(), Arc::new(ring)))
}

#[derive(Default)]
struct Bundles<S: Field> {
    maps: HashMap<String, Vec<Vec<RingElement<S>>>>,
    params: HashMap<String, [S; 2]>,
    taus: HashMap<String, [RingElement<S>; 3]>,
}

fn slot_index(b: &Binding) -> usize {
    match (b.family, b.index.as_slice()) {
        (Family::Sigma, [i, j]) => 2 * (*i as usize - 1) + (*j as usize - 1),
        (Family::Delta, [i]) => *i as usize - 1,
        (Family::Param, [1, 2]) => 0,
        (Family::Param, _) => 1,
        (Family::Tau, [i]) => *i as usize,
        _ => unreachable!("bindings are validated by the parser"),
    }
}

fn collect_bundles<S: Field>(doc: &SpecDocument, ring: &PresentedRing<S>) -> Result<Bundles<S>, SpecError> {
    let n = ring.num_gens();
    let mut b = Bundles { maps: HashMap::new(), params: HashMap::new(), taus: HashMap::new() };
    let mut seen: HashMap<(String, usize, usize), Pos> = HashMap::new();
    let mut once = |key: (String, usize, usize), pos: Pos, shown: String| {
        if seen.insert(key, pos).is_some() {
            Err(SpecError::invalid(pos, format!("{shown} is bound twice")))
        } else {
            Ok(())
        }
    };
    for m in &doc.maps {
        let g = ring.generator_index(&m.generator.text).ok_or_else(|| unknown(&m.generator, "generator"))? as usize;
        let slot = slot_index(&m.map);
        once((m.map.bundle(), slot, g), m.map.pos, format!("{}({})", m.map, m.generator))?;
        let width = if m.map.family == Family::Sigma { 4 } else { 2 };
        let comps = b.maps.entry(m.map.bundle()).or_insert_with(|| vec![vec![RingElement::zero(); n]; width]);
        comps[slot][g] = ring_element(ring, &m.image, m.map.pos)?;
    }
    for p in &doc.params {
        let slot = slot_index(&p.target);
        once((p.target.bundle(), slot, 0), p.target.pos, p.target.to_string())?;
        b.params.entry(p.target.bundle()).or_insert_with(|| [S::zero(), S::zero()])[slot] = scalar(ring, &p.value, p.target.pos)?;
    }
    for t in &doc.taus {
        let slot = slot_index(&t.target);
        once((t.target.bundle(), slot, 0), t.target.pos, t.target.to_string())?;
        let z = RingElement::zero;
        b.taus.entry(t.target.bundle()).or_insert_with(|| [z(), z(), z()])[slot] = ring_element(ring, &t.value, t.target.pos)?;
    }
    Ok(b)
}

/// `sigma'` names the bundle family `Sigma` with one prime.
fn bundle_name(n: &Name, family: Family) -> Result<String, SpecError> {
    let ok = n.text.strip_prefix(family.base()).is_some_and(|rest| rest.chars().all(|c| c == '\''));
    if ok {
        Ok(n.text.clone())
    } else {
        Err(unknown(
            n,
            match family {
                Family::Sigma => "sigma bundle",
                Family::Delta => "delta bundle",
                Family::Param => "parameter bundle",
                Family::Tau => "tau bundle",
            },
        ))
    }
}

fn source_data<S: Field>(ring: &Arc<PresentedRing<S>>, bundles: &Bundles<S>, args: &[Name]) -> Result<SourceData<S>, SpecError> {
    let n = ring.num_gens();
    let [s, d, p, t] = args else { unreachable!("arity is checked by the caller") };
    let sig = bundle_name(s, Family::Sigma)?;
    let del = bundle_name(d, Family::Delta)?;
    let par = bundle_name(p, Family::Param)?;
    let ta = bundle_name(t, Family::Tau)?;
    let zero_maps = |w| vec![vec![RingElement::zero(); n]; w];
    let sc = bundles.maps.get(&sig).cloned().unwrap_or_else(|| zero_maps(4));
    let dc = bundles.maps.get(&del).cloned().unwrap_or_else(|| zero_maps(2));
    let [s11, s12, s21, s22]: [Vec<RingElement<S>>; 4] = sc.try_into().expect("four components");
    let sigma =
        SigmaMatrix::from_components(ring, [[s11, s12], [s21, s22]]).map_err(|e| SpecError::invalid(s.pos, e.to_string()))?;
    let [d1, d2]: [Vec<RingElement<S>>; 2] = dc.try_into().expect("two components");
    let delta = DeltaColumn::from_components(&sigma, d1, d2).map_err(|e| SpecError::invalid(d.pos, e.to_string()))?;
    let [p12, p11] = bundles.params.get(&par).cloned().unwrap_or_else(|| [S::zero(), S::zero()]);
    let z = RingElement::zero;
    let tau = bundles.taus.get(&ta).cloned().unwrap_or_else(|| [z(), z(), z()]);
    Ok(SourceData::new(&sigma, &delta, p12, p11, tau))
}

fn parse_scope(n: &Name) -> Result<Scope, SpecError> {
    n.text.parse().map_err(|_| unknown(n, "scope"))
}

/// Resolves every name and evaluates every expression of `doc` over `S`.
pub fn resolve<S: Field>(doc: &SpecDocument) -> Result<Model<S>, SpecError> {
    let (ring_name, ring) = build_ring::<S>(doc)?;
    let bundles = collect_bundles(doc, &ring)?;
    let mut extensions: Vec<ExtensionModel<S>> = Vec::new();
    for e in &doc.extensions {
        if extensions.iter().any(|x| x.name == e.name.text) {
            return Err(SpecError::invalid(e.name.pos, format!("extension `{}` is declared twice", e.name)));
        }
        if e.call.text != "double" {
            return Err(unknown(&e.call, "constructor"));
        }
        if e.args.len() != 5 {
            return Err(SpecError::Arity {
                pos: e.call.pos,
                name: e.call.text.clone(),
                expected: "5".into(),
                found: e.args.len(),
            });
        }
        if e.args[0].text != ring_name {
            return Err(unknown(&e.args[0], "ring"));
        }
        let data = source_data(&ring, &bundles, &e.args[1..])?;
        let arith =
            DoubleOreAlgebra::new_unchecked(&data.sigma, &data.delta, data.p12.clone(), data.p11.clone(), data.tau.clone());
        extensions.push(ExtensionModel { name: e.name.text.clone(), data, arith });
    }
    let mut dcvs: Vec<DcvModel<S>> = Vec::new();
    for d in &doc.dcvs {
        if dcvs.iter().any(|x| x.name == d.name.text) {
            return Err(SpecError::invalid(d.name.pos, format!("dcv `{}` is declared twice", d.name)));
        }
        let target = extensions.iter().position(|x| x.name == d.target.text).ok_or_else(|| unknown(&d.target, "extension"))?;
        let source = match d.source.as_slice() {
            [b] => extensions.iter().find(|x| x.name == b.text).ok_or_else(|| unknown(b, "extension"))?.data.clone(),
            args @ [_, _, _, _] => source_data(&ring, &bundles, args)?,
            args => {
                return Err(SpecError::Arity {
                    pos: d.name.pos,
                    name: "source".into(),
                    expected: "1 or 4".into(),
                    found: args.len(),
                })
            }
        };
        let alg = &extensions[target].arith;
        let q1 = ext_element(alg, &d.q1, d.name.pos)?;
        let q2 = ext_element(alg, &d.q2, d.name.pos)?;
        dcvs.push(DcvModel { name: d.name.text.clone(), target, matrix: DcvMatrix::new(q1, q2, source) });
    }
    let mut checks = Vec::new();
    for c in &doc.checks {
        let s = &c.subject.text;
        let found = match c.kind {
            CheckKind::Dcv => dcvs.iter().any(|d| &d.name == s),
            CheckKind::Iterated => dcvs.iter().any(|d| &d.name == s) || extensions.iter().any(|e| &e.name == s),
            _ => extensions.iter().any(|e| &e.name == s),
        };
        if !found {
            return Err(unknown(&c.subject, if c.kind == CheckKind::Dcv { "dcv" } else { "extension" }));
        }
        let scope = c.scope.as_ref().map(parse_scope).transpose()?;
        checks.push(CheckModel { kind: c.kind, subject: s.clone(), max_degree: c.max_degree, scope });
    }
    Ok(Model { ring_name, ring, extensions, dcvs, checks })
}
