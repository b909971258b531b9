//! Syntax tree of a spec document and its canonical text form.

use std::fmt;

use num_bigint::BigInt;

/// Arithmetic over ring generators, `y1`, `y2` and integer literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(BigInt),
    Var(Name),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }

    /// Every variable name, in order of appearance.
    pub fn vars(&self) -> Vec<&Name> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a Name>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // left operands keep their grouping at equal precedence, right operands do not
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            paren(f, a, a.prec() < p)?;
            write!(f, "{op}")?;
            paren(f, b, b.prec() <= p)
        };
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                paren(f, a, a.prec() <= 3)
            }
            Expr::Add(a, b) => binary(f, a, " + ", b, 1),
            Expr::Sub(a, b) => binary(f, a, " - ", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
            Expr::Div(a, b) => binary(f, a, "/", b, 2),
            Expr::Pow(a, n) => {
                paren(f, a, a.prec() < 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDecl {
    Rational,
    Prime(u64),
}

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A name with the position it was written at. Positions are ignored by equality so
/// that documents compare structurally.
#[derive(Debug, Clone, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Name { text: text.into(), pos: Pos::default() }
    }
}

impl PartialEq for Name {
    fn eq(&self, o: &Self) -> bool {
        self.text == o.text
    }
}

impl std::hash::Hash for Name {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.text.hash(h)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDecl {
    pub name: Name,
    pub gens: Vec<Name>,
    /// Generators from smallest to largest; empty when no `order` clause was given.
    pub order: Vec<Name>,
}

/// Which family a binding belongs to. Bundles are named by their base and a number of
/// primes, e.g. `sigma'` or `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sigma,
    Delta,
    Param,
    Tau,
}

impl Family {
    pub fn base(&self) -> &'static str {
        match self {
            Family::Sigma => "sigma",
            Family::Delta => "delta",
            Family::Param => "P",
            Family::Tau => "tau",
        }
    }
}

/// `sigma''12` is bundle `sigma''`, index `[1, 2]`.
#[derive(Debug, Clone, Eq)]
pub struct Binding {
    pub family: Family,
    pub primes: usize,
    pub index: Vec<u8>,
    pub pos: Pos,
}

impl PartialEq for Binding {
    fn eq(&self, o: &Self) -> bool {
        (self.family, self.primes, &self.index) == (o.family, o.primes, &o.index)
    }
}

impl Binding {
    pub fn bundle(&self) -> String {
        format!("{}{}", self.family.base(), "'".repeat(self.primes))
    }

    fn head(&self) -> &'static str {
        match self.family {
            Family::Param => "p",
            f => f.base(),
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.head(), "'".repeat(self.primes))?;
        self.index.iter().try_for_each(|i| write!(f, "{i}"))
    }
}

/// `lhs = rhs` in the free algebra on the ring generators.
#[derive(Debug, Clone, Eq)]
pub struct RelDecl {
    pub lhs: Expr,
    pub rhs: Expr,
    pub pos: Pos,
}

impl PartialEq for RelDecl {
    fn eq(&self, o: &Self) -> bool {
        (&self.lhs, &self.rhs) == (&o.lhs, &o.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub map: Binding,
    pub generator: Name,
    pub image: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDecl {
    pub target: Binding,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDecl {
    pub name: Name,
    pub call: Name,
    pub args: Vec<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcvDecl {
    pub name: Name,
    pub target: Name,
    pub q1: Expr,
    pub q2: Expr,
    pub source: Vec<Name>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Extension,
    Dcv,
    Iterated,
    Graded,
    Basis,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] =
        [CheckKind::Extension, CheckKind::Dcv, CheckKind::Iterated, CheckKind::Graded, CheckKind::Basis];

    pub fn keyword(&self) -> &'static str {
        match self {
            CheckKind::Extension => "extension",
            CheckKind::Dcv => "dcv",
            CheckKind::Iterated => "iterated",
            CheckKind::Graded => "graded",
            CheckKind::Basis => "basis",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckDecl {
    pub kind: CheckKind,
    pub subject: Name,
    pub max_degree: Option<usize>,
    pub scope: Option<Name>,
}

/// A parsed spec, grouped by section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub field: FieldDecl,
    pub rings: Vec<RingDecl>,
    pub relations: Vec<RelDecl>,
    pub maps: Vec<MapDecl>,
    pub params: Vec<ValueDecl>,
    pub taus: Vec<ValueDecl>,
    pub extensions: Vec<ExtensionDecl>,
    pub dcvs: Vec<DcvDecl>,
    pub checks: Vec<CheckDecl>,
}

fn join(names: &[Name], sep: &str) -> String {
    names.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldDecl::Rational => writeln!(f, "field Q")?,
            FieldDecl::Prime(p) => writeln!(f, "field F {p}")?,
        }
        for r in &self.rings {
            write!(f, "ring {} gens {}", r.name, join(&r.gens, " "))?;
            if !r.order.is_empty() {
                write!(f, " order {}", join(&r.order, " < "))?;
            }
            writeln!(f)?;
        }
        for r in &self.relations {
            writeln!(f, "rel {} = {}", r.lhs, r.rhs)?;
        }
        for m in &self.maps {
            writeln!(f, "map {} {} = {}", m.map, m.generator, m.image)?;
        }
        for p in &self.params {
            writeln!(f, "param {} = {}", p.target, p.value)?;
        }
        for t in &self.taus {
            writeln!(f, "{} = {}", t.target, t.value)?;
        }
        for e in &self.extensions {
            writeln!(f, "extension {} = {}({})", e.name, e.call, join(&e.args, ", "))?;
        }
        for d in &self.dcvs {
            writeln!(f, "dcv {} on {} q1 = {} q2 = {} source({})", d.name, d.target, d.q1, d.q2, join(&d.source, ", "))?;
        }
        for c in &self.checks {
            write!(f, "check {} {}", c.kind.keyword(), c.subject)?;
            if let Some(d) = c.max_degree {
                write!(f, " --max-degree {d}")?;
            }
            if let Some(s) = &c.scope {
                write!(f, " --scope {s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
