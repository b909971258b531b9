//! Line-oriented lexer and recursive-descent parser for spec documents.

use std::fmt;

use num_bigint::BigInt;

use crate::ast::*;
use crate::error::SpecError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Flag(String),
    Sym(char),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Flag(s) => write!(f, "`--{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const SYMBOLS: &str = "+-*/^=<(),";

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SpecError> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: ln + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                Tok::Int(digits.parse().expect("ascii digits"))
            } else if c == '-' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2).is_some_and(|c| c.is_ascii_alphabetic()) {
                i += 2;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-') {
                    i += 1;
                }
                Tok::Flag(chars[start + 2..i].iter().collect())
            } else if SYMBOLS.contains(c) {
                i += 1;
                Tok::Sym(c)
            } else {
                return Err(SpecError::Syntax { pos, expected: vec!["token".into()], found: format!("`{c}`") });
            };
            out.push((tok, pos));
        }
        out.push((Tok::Newline, Pos { line: ln + 1, col: chars.len() + 1 }));
    }
    let end = match out.last() {
        Some((_, p)) => *p,
        None => Pos { line: 1, col: 1 },
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

const STATEMENTS: [&str; 8] = ["ring", "rel", "map", "param", "extension", "dcv", "check", "tau binding"];

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

/// Parses a spec document.
pub fn parse_spec(src: &str) -> Result<SpecDocument, SpecError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    p.document()
}

/// Parses a single expression, as used for elements on the command line.
pub fn parse_expr(src: &str) -> Result<Expr, SpecError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    p.skip_newlines();
    p.expect_tok(&Tok::Eof, "end of input")?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, SpecError> {
        Err(SpecError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.at += 1;
        }
    }

    fn expect_tok(&mut self, t: &Tok, shown: &str) -> Result<Pos, SpecError> {
        if self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.fail(&[shown])
        }
    }

    fn sym(&mut self, c: char) -> Result<Pos, SpecError> {
        self.expect_tok(&Tok::Sym(c), &quoted(&c.to_string()))
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, SpecError> {
        self.expect_tok(&Tok::Ident(kw.into()), &quoted(kw))
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self) -> Result<Name, SpecError> {
        match self.peek().clone() {
            Tok::Ident(text) => Ok(Name { text, pos: self.bump().1 }),
            _ => self.fail(&["identifier"]),
        }
    }

    fn end_of_line(&mut self) -> Result<(), SpecError> {
        match self.peek() {
            Tok::Newline | Tok::Eof => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&["end of line"]),
        }
    }

    fn uint(&mut self) -> Result<BigInt, SpecError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn small_uint(&mut self, what: &str, positive: bool) -> Result<u64, SpecError> {
        let pos = self.pos();
        let n = self.uint()?;
        match u64::try_from(&n) {
            Ok(v) if v > 0 || !positive => Ok(v),
            _ => Err(SpecError::Syntax { pos, expected: vec![what.into()], found: format!("`{n}`") }),
        }
    }

    fn document(&mut self) -> Result<SpecDocument, SpecError> {
        self.skip_newlines();
        self.keyword("field")?;
        let field = match self.peek() {
            Tok::Ident(s) if s == "Q" => {
                self.bump();
                FieldDecl::Rational
            }
            Tok::Ident(s) if s == "F" => {
                self.bump();
                FieldDecl::Prime(self.small_uint("prime", true)?)
            }
            _ => return self.fail(&["\"Q\"", "\"F\""]),
        };
        self.end_of_line()?;
        let mut doc = SpecDocument {
            field,
            rings: Vec::new(),
            relations: Vec::new(),
            maps: Vec::new(),
            params: Vec::new(),
            taus: Vec::new(),
            extensions: Vec::new(),
            dcvs: Vec::new(),
            checks: Vec::new(),
        };
        loop {
            self.skip_newlines();
            if *self.peek() == Tok::Eof {
                return Ok(doc);
            }
            self.statement(&mut doc)?;
            self.end_of_line()?;
        }
    }

    fn statement(&mut self, doc: &mut SpecDocument) -> Result<(), SpecError> {
        let Tok::Ident(head) = self.peek().clone() else {
            let all: Vec<String> = STATEMENTS.iter().map(|s| quoted(s)).collect();
            let all: Vec<&str> = all.iter().map(String::as_str).collect();
            return self.fail(&all);
        };
        match head.as_str() {
            "ring" => doc.rings.push(self.ring()?),
            "rel" => {
                let pos = self.bump().1;
                let lhs = self.expr()?;
                self.sym('=')?;
                doc.relations.push(RelDecl { lhs, rhs: self.expr()?, pos });
            }
            "map" => {
                self.bump();
                let map = self.binding(&[Family::Sigma, Family::Delta], "map name")?;
                let generator = if *self.peek() == Tok::Sym('(') {
                    self.bump();
                    let g = self.ident()?;
                    self.sym(')')?;
                    g
                } else {
                    self.ident()?
                };
                self.sym('=')?;
                doc.maps.push(MapDecl { map, generator, image: self.expr()? });
            }
            "param" => {
                self.bump();
                let target = self.binding(&[Family::Param], "parameter name")?;
                self.sym('=')?;
                doc.params.push(ValueDecl { target, value: self.expr()? });
            }
            "extension" => {
                self.bump();
                let name = self.ident()?;
                self.sym('=')?;
                let call = self.ident()?;
                let args = self.arguments()?;
                doc.extensions.push(ExtensionDecl { name, call, args });
            }
            "dcv" => doc.dcvs.push(self.dcv()?),
            "check" => doc.checks.push(self.check()?),
            _ if parse_binding(&head, &[Family::Tau]).is_some() => {
                let target = self.binding(&[Family::Tau], "tau binding")?;
                self.sym('=')?;
                doc.taus.push(ValueDecl { target, value: self.expr()? });
            }
            _ => {
                let all: Vec<String> = STATEMENTS.iter().map(|s| quoted(s)).collect();
                let all: Vec<&str> = all.iter().map(String::as_str).collect();
                return self.fail(&all);
            }
        }
        Ok(())
    }

    fn binding(&mut self, families: &[Family], what: &str) -> Result<Binding, SpecError> {
        let pos = self.pos();
        if let Tok::Ident(s) = self.peek() {
            if let Some((family, primes, index)) = parse_binding(s, families) {
                self.bump();
                return Ok(Binding { family, primes, index, pos });
            }
        }
        self.fail(&[what])
    }

    fn ring(&mut self) -> Result<RingDecl, SpecError> {
        self.keyword("ring")?;
        let name = self.ident()?;
        self.keyword("gens")?;
        let mut gens = vec![self.ident()?];
        while matches!(self.peek(), Tok::Ident(s) if s != "order") {
            gens.push(self.ident()?);
        }
        let mut order = Vec::new();
        if self.at_keyword("order") {
            self.bump();
            order.push(self.ident()?);
            while *self.peek() == Tok::Sym('<') {
                self.bump();
                order.push(self.ident()?);
            }
        }
        Ok(RingDecl { name, gens, order })
    }

    fn arguments(&mut self) -> Result<Vec<Name>, SpecError> {
        self.sym('(')?;
        let mut args = Vec::new();
        if *self.peek() != Tok::Sym(')') {
            args.push(self.ident()?);
            while *self.peek() == Tok::Sym(',') {
                self.bump();
                args.push(self.ident()?);
            }
        }
        if *self.peek() != Tok::Sym(')') {
            return self.fail(&["\",\"", "\")\""]);
        }
        self.bump();
        Ok(args)
    }

    fn dcv(&mut self) -> Result<DcvDecl, SpecError> {
        self.keyword("dcv")?;
        let name = self.ident()?;
        self.keyword("on")?;
        let target = self.ident()?;
        self.keyword("q1")?;
        self.sym('=')?;
        let q1 = self.expr()?;
        self.keyword("q2")?;
        self.sym('=')?;
        let q2 = self.expr()?;
        self.keyword("source")?;
        let source = self.arguments()?;
        Ok(DcvDecl { name, target, q1, q2, source })
    }

    fn check(&mut self) -> Result<CheckDecl, SpecError> {
        self.keyword("check")?;
        let kind = match self.peek() {
            Tok::Ident(s) => CheckKind::ALL.into_iter().find(|k| k.keyword() == s),
            _ => None,
        };
        let Some(kind) = kind else {
            let all: Vec<String> = CheckKind::ALL.iter().map(|k| quoted(k.keyword())).collect();
            let all: Vec<&str> = all.iter().map(String::as_str).collect();
            return self.fail(&all);
        };
        self.bump();
        let subject = self.ident()?;
        let mut c = CheckDecl { kind, subject, max_degree: None, scope: None };
        loop {
            match self.peek().clone() {
                Tok::Flag(f) if f == "max-degree" && c.max_degree.is_none() => {
                    self.bump();
                    c.max_degree = Some(self.small_uint("integer", false)? as usize);
                }
                Tok::Flag(f) if f == "scope" && c.scope.is_none() => {
                    self.bump();
                    c.scope = Some(self.ident()?);
                }
                Tok::Newline | Tok::Eof => return Ok(c),
                _ => return self.fail(&["\"--max-degree\"", "\"--scope\"", "end of line"]),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, SpecError> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    e = Expr::Add(Box::new(e), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    e = Expr::Sub(Box::new(e), Box::new(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SpecError> {
        let mut e = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    e = Expr::Div(Box::new(e), Box::new(self.unary()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SpecError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let n = self.small_uint("positive integer", true)?;
            let n = u32::try_from(n).map_err(|_| SpecError::invalid(self.pos(), "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SpecError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::Ident(text) => Ok(Expr::Var(Name { text, pos: self.bump().1 })),
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.sym(')')?;
                Ok(e)
            }
            _ => self.fail(&["integer", "identifier", "\"(\"", "\"-\""]),
        }
    }
}

/// Splits `sigma'12`, `delta2`, `p11` or `tau'0` into family, primes and index.
fn parse_binding(s: &str, families: &[Family]) -> Option<(Family, usize, Vec<u8>)> {
    families.iter().find_map(|&f| {
        let head = match f {
            Family::Param => "p",
            other => other.base(),
        };
        let rest = s.strip_prefix(head)?;
        let digits = rest.trim_start_matches('\'');
        let primes = rest.len() - digits.len();
        let index: Vec<u8> = digits.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        let ok = match f {
            Family::Sigma => index.len() == 2 && index.iter().all(|i| (1..=2).contains(i)),
            Family::Delta => index.len() == 1 && (1..=2).contains(&index[0]),
            Family::Param => index == [1, 2] || index == [1, 1],
            Family::Tau => index.len() == 1 && index[0] <= 2,
        };
        ok.then_some((f, primes, index))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_expects_field() {
        let err = parse_spec("").unwrap_err();
        assert_eq!(
            err,
            SpecError::Syntax { pos: Pos { line: 1, col: 1 }, expected: vec!["\"field\"".into()], found: "end of input".into() }
        );
        assert_eq!(parse_spec("# nothing\n\n").unwrap_err().pos(), Pos { line: 2, col: 1 });
    }

    #[test]
    fn expression_grouping() {
        let e = parse_expr("x2*x1 - -2*x1^2 + (x1 + 1)^3/4").unwrap();
        assert_eq!(e.to_string(), "x2*x1 - -2*x1^2 + (x1 + 1)^3/4");
        assert_eq!(parse_expr("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse_expr("(a - b) - c").unwrap().to_string(), "a - b - c");
        assert_eq!(parse_expr("-(-a)").unwrap().to_string(), "-(-a)");
        assert_eq!(parse_expr("(-a)^2").unwrap().to_string(), "(-a)^2");
    }

    #[test]
    fn exponents_are_positive() {
        let err = parse_expr("x^0").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { ref expected, .. } if expected == &["positive integer"]));
        assert!(parse_expr("x^-1").is_err());
    }

    #[test]
    fn binding_names() {
        let f = [Family::Sigma, Family::Delta, Family::Param, Family::Tau];
        assert_eq!(parse_binding("sigma'12", &f), Some((Family::Sigma, 1, vec![1, 2])));
        assert_eq!(parse_binding("delta2", &f), Some((Family::Delta, 0, vec![2])));
        assert_eq!(parse_binding("p11", &f), Some((Family::Param, 0, vec![1, 1])));
        assert_eq!(parse_binding("tau''0", &f), Some((Family::Tau, 2, vec![0])));
        for bad in ["sigma13", "delta3", "p21", "tau3", "sigma1", "pi12"] {
            assert_eq!(parse_binding(bad, &f), None, "{bad}");
        }
    }

    #[test]
    fn error_positions() {
        let err = parse_spec("field Q\nring R gens x1\nrel x1 * = 2\n").unwrap_err();
        assert_eq!(err.pos(), Pos { line: 3, col: 10 });
        let err = parse_spec("field Z\n").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { expected, .. } if expected == ["\"Q\"", "\"F\""]));
        let err = parse_spec("field Q\nfoo\n").unwrap_err();
        assert!(err.to_string().contains("\"ring\""));
        let err = parse_spec("field Q\ncheck dcv q --depth 2\n").unwrap_err();
        assert!(err.to_string().contains("--depth"));
    }
}
