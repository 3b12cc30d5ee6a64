use num_traits::ToPrimitive;

use super::ast::Expr;
use super::lexer::{tokenize, Pos, Spanned, Tok};
use super::{DefinitionFile, DefinitionKind, ParseError};
use crate::error::{Error, Result};

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    /// Declared names, once the header has been read.
    declared: Option<Vec<String>>,
}

fn err(pos: Pos, expected: &[&str], found: &Tok) -> Error {
    Error::Parse(ParseError {
        line: pos.line,
        column: pos.column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.to_string(),
    })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, label: &str) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(err(self.pos(), &[label], self.peek()))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.pos();
                self.next();
                Ok((s, p))
            }
            t => Err(err(self.pos(), &["identifier"], &t)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.next();
                self.expect(Tok::Colon, "`:`")
            }
            t => Err(err(self.pos(), &[&format!("`{word}:`")], t)),
        }
    }

    /// Comma-separated identifiers; stops before a `name:` header keyword.
    fn names(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::Ident(_)) || *self.peek2() == Tok::Colon || *self.peek2() == Tok::Eq {
            return Ok(out);
        }
        loop {
            let (name, pos) = self.ident()?;
            if out.contains(&name) {
                return Err(Error::ArityMismatch(format!(
                    "`{name}` declared twice (line {}, column {})",
                    pos.line, pos.column
                )));
            }
            out.push(name);
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.next();
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let start = self.pos();
        let negated = *self.peek() == Tok::Minus;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        if negated {
            return Err(Error::Parse(ParseError {
                line: start.line,
                column: start.column,
                expected: vec!["parenthesized base, e.g. `(-x)^2`".into()],
                found: "unary minus before `^`".into(),
            }));
        }
        self.next();
        let neg = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let pos = self.pos();
        let n = match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                n.to_i64().ok_or_else(|| err(pos, &["exponent that fits in 64 bits"], &Tok::Int(n)))?
            }
            t => return Err(err(pos, &["integer exponent"], &t)),
        };
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                self.next();
                if let Some(declared) = &self.declared {
                    if !declared.contains(&s) {
                        return Err(Error::UndeclaredSymbol { name: s, line: pos.line, column: pos.column });
                    }
                }
                Ok(Expr::Sym(s))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Minus => {
                self.next();
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            t => Err(err(pos, &["integer", "identifier", "`(`", "`-`"], &t)),
        }
    }
}

/// Parses a lone expression; symbols are not checked.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, declared: None };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(err(p.pos(), &["operator", "end of input"], p.peek()));
    }
    Ok(e)
}

pub fn parse_file(text: &str) -> Result<DefinitionFile> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, declared: None };
    p.keyword("kind")?;
    let pos = p.pos();
    let kind = match p.ident()?.0.as_str() {
        "ternary" => DefinitionKind::Ternary,
        "ybmap" => DefinitionKind::YbMap,
        other => return Err(err(pos, &["`ternary`", "`ybmap`"], &Tok::Ident(other.into()))),
    };
    p.keyword("params")?;
    let params = p.names()?;
    p.keyword("vars")?;
    let vars = p.names()?;
    let mut quasigroup = None;
    let mut shared = 0;
    while let (Tok::Ident(s), Tok::Colon) = (p.peek(), p.peek2()) {
        match s.as_str() {
            "quasigroup" if quasigroup.is_none() => {
                p.next();
                p.next();
                let (mut name, _) = p.ident()?;
                // `matrix_reversed(2)` style arguments
                if *p.peek() == Tok::LParen {
                    p.next();
                    match p.next().tok {
                        Tok::Int(n) => name = format!("{name}({n})"),
                        t => return Err(err(p.pos(), &["integer"], &t)),
                    }
                    p.expect(Tok::RParen, "`)`")?;
                }
                quasigroup = Some(name);
            }
            "shared" => {
                p.next();
                p.next();
                let pos = p.pos();
                shared = match p.next().tok {
                    Tok::Int(n) => {
                        usize::try_from(&n).map_err(|_| err(pos, &["small integer"], &Tok::Int(n.clone())))?
                    }
                    t => return Err(err(pos, &["integer"], &t)),
                };
            }
            _ => break,
        }
    }
    for v in &vars {
        if params.contains(v) {
            return Err(Error::ArityMismatch(format!("`{v}` is both a parameter and a variable")));
        }
    }
    p.declared = Some(params.iter().chain(&vars).cloned().collect());

    let mut bodies: Vec<(String, Expr)> = Vec::new();
    loop {
        if *p.peek() == Tok::Eof && !bodies.is_empty() {
            break;
        }
        let (name, pos) = p.ident()?;
        if bodies.iter().any(|(n, _)| *n == name) {
            return Err(Error::ArityMismatch(format!(
                "body `{name}` defined twice (line {}, column {})",
                pos.line, pos.column
            )));
        }
        p.expect(Tok::Eq, "`=`")?;
        let e = p.expr()?;
        if !matches!(p.peek(), Tok::Eof | Tok::Ident(_)) {
            return Err(err(p.pos(), &["operator", "next definition", "end of input"], p.peek()));
        }
        bodies.push((name, e));
    }
    DefinitionFile::new(kind, params, vars, bodies, quasigroup)?.with_shared(shared)
}
