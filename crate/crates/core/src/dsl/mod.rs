//! A small language for rational closed forms.
//!
//! ```text
//! kind: ybmap
//! params: a1, b1          # first half is alpha, second half is beta
//! vars: x, y
//! u = y + (a1 - b1)/(x + y)
//! v = x - (a1 - b1)/(x + y)
//! ```

mod ast;
mod lexer;
mod parser;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

pub use ast::{Compiled, Expr};
pub use parser::parse_expr;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::quasigroup::{Carrier, Quasigroup};
use crate::yb::{ParametricTernarySystem, ParametricYbMap, Source, DEFAULT_DEGREE};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: expected {}, found {found}", .expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefinitionKind {
    Ternary,
    YbMap,
}

impl DefinitionKind {
    fn name(self) -> &'static str {
        match self {
            DefinitionKind::Ternary => "ternary",
            DefinitionKind::YbMap => "ybmap",
        }
    }

    fn bodies(self) -> &'static [&'static str] {
        match self {
            DefinitionKind::Ternary => &["mu"],
            DefinitionKind::YbMap => &["u", "v"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionFile {
    kind: DefinitionKind,
    params: Vec<String>,
    vars: Vec<String>,
    /// In canonical body order (`mu`, or `u` then `v`).
    bodies: Vec<(String, Expr)>,
    quasigroup: Option<String>,
    /// Trailing parameters per factor that are tied across factors.
    shared: usize,
}

impl DefinitionFile {
    pub fn new(
        kind: DefinitionKind,
        params: Vec<String>,
        vars: Vec<String>,
        mut bodies: Vec<(String, Expr)>,
        quasigroup: Option<String>,
    ) -> Result<Self> {
        let want_vars = match kind {
            DefinitionKind::Ternary => 3,
            DefinitionKind::YbMap => 2,
        };
        if vars.len() != want_vars {
            return Err(Error::ArityMismatch(format!(
                "a {} file declares {want_vars} variables, found {}",
                kind.name(),
                vars.len()
            )));
        }
        if !params.len().is_multiple_of(2) {
            return Err(Error::ArityMismatch(format!(
                "parameters split evenly between the two factors, found {}",
                params.len()
            )));
        }
        let names: Vec<&str> = bodies.iter().map(|(n, _)| n.as_str()).collect();
        let want = kind.bodies();
        if names.len() != want.len() || !want.iter().all(|w| names.contains(w)) {
            return Err(Error::ArityMismatch(format!(
                "a {} file defines {}, found {}",
                kind.name(),
                want.join(", "),
                names.join(", ")
            )));
        }
        bodies.sort_by_key(|(n, _)| want.iter().position(|w| w == n));
        if let Some(q) = &quasigroup {
            Quasigroup::builtin(q)?;
        }
        Ok(DefinitionFile { kind, params, vars, bodies, quasigroup, shared: 0 })
    }

    /// Ties the last `shared` parameters of each factor together.
    pub fn with_shared(mut self, shared: usize) -> Result<Self> {
        if shared > self.param_arity() {
            return Err(Error::ArityMismatch(format!(
                "{shared} shared parameters, but each factor has {}",
                self.param_arity()
            )));
        }
        self.shared = shared;
        Ok(self)
    }

    pub fn shared(&self) -> usize {
        self.shared
    }

    pub fn kind(&self) -> DefinitionKind {
        self.kind
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn body(&self, name: &str) -> Option<&Expr> {
        self.bodies.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn quasigroup(&self) -> Option<&str> {
        self.quasigroup.as_deref()
    }

    /// Parameters per factor.
    pub fn param_arity(&self) -> usize {
        self.params.len() / 2
    }

    fn carrier(&self) -> Result<Carrier> {
        match &self.quasigroup {
            Some(q) => Ok(Quasigroup::builtin(q)?.carrier()),
            None => Ok(Carrier::Scalars(1)),
        }
    }

    fn compiled(&self) -> Result<Vec<Compiled>> {
        let slots: Vec<String> = self.params.iter().chain(&self.vars).cloned().collect();
        self.bodies.iter().map(|(_, e)| e.compile(&slots)).collect()
    }

    pub fn into_ternary(&self, name: &str) -> Result<ParametricTernarySystem> {
        if self.kind != DefinitionKind::Ternary {
            return Err(Error::ArityMismatch(format!("{name} defines a YB map, not a ternary system")));
        }
        let mu = Arc::new(self.compiled()?.remove(0));
        let carrier = self.carrier()?;
        if carrier.coords() != 1 {
            return Err(Error::IncompatibleStructure("DSL expressions are scalar-valued".into()));
        }
        Ok(ParametricTernarySystem::new(name, carrier, self.param_arity(), move |alpha, beta, a, b, c| {
            let slots: Vec<&FieldElement> = alpha.iter().chain(beta).chain([&a[0], &b[0], &c[0]]).collect();
            Ok(vec![mu.evaluate(a[0].field(), &slots)?])
        })
        .with_shared_params(self.shared)
        .with_degree(DEFAULT_DEGREE)
        .with_source(Source::Dsl(name.to_string())))
    }

    pub fn into_yb_map(&self, name: &str) -> Result<ParametricYbMap> {
        if self.kind != DefinitionKind::YbMap {
            return Err(Error::ArityMismatch(format!("{name} defines a ternary system, not a YB map")));
        }
        let mut c = self.compiled()?;
        let (u, v) = (Arc::new(c.remove(0)), Arc::new(c.remove(0)));
        let carrier = self.carrier()?;
        if carrier.coords() != 1 {
            return Err(Error::IncompatibleStructure("DSL expressions are scalar-valued".into()));
        }
        Ok(ParametricYbMap::new(name, carrier, self.param_arity(), move |x, alpha, y, beta| {
            let slots: Vec<&FieldElement> = alpha.iter().chain(beta).chain([&x[0], &y[0]]).collect();
            let field = x[0].field();
            Ok((vec![u.evaluate(field, &slots)?], vec![v.evaluate(field, &slots)?]))
        })
        .with_shared_params(self.shared)
        .with_degree(DEFAULT_DEGREE)
        .with_source(Source::Dsl(name.to_string())))
    }
}

impl fmt::Display for DefinitionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind.name())?;
        writeln!(f, "params: {}", self.params.join(", "))?;
        writeln!(f, "vars: {}", self.vars.join(", "))?;
        if let Some(q) = &self.quasigroup {
            writeln!(f, "quasigroup: {q}")?;
        }
        if self.shared > 0 {
            writeln!(f, "shared: {}", self.shared)?;
        }
        for (n, e) in &self.bodies {
            writeln!(f, "{n} = {e}")?;
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<DefinitionFile> {
    parser::parse_file(text)
}

pub fn load(path: &Path) -> Result<DefinitionFile> {
    parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use proptest::prelude::*;

    use super::*;
    use crate::field::{Field, FieldConfig, Sampler};

    const Q: Field = Field::Rational;

    const Q1: &str = "kind: ternary\nparams: a1, b1\nvars: a, b, c\n\
                      mu = (a1*a*(b-c)+b1*c*(a-b))/(a1*(b-c)+b1*(a-b))\n";
    const DKDV: &str = "kind: ternary\nparams: a1, b1\nvars: a, b, c\nmu = b - (a1-b1)/(c-a)\n";
    const ADLER: &str = "kind: ybmap\r\nparams: a1, b1\r\nvars: x, y\r\n\
                         u = y + (a1-b1)/(x+y)\r\nv = x - (a1-b1)/(x+y)\r\n";

    fn q(n: i64) -> FieldElement {
        Q.int(n)
    }

    #[test]
    fn q1_at_a_point() {
        let t = parse(Q1).unwrap().into_ternary("q1").unwrap();
        let w = t.evaluate(&[q(1)], &[q(2)], &[q(1)], &[q(2)], &[q(3)]).unwrap();
        assert_eq!(w, vec![Q.ratio(7, 3).unwrap()]);
    }

    #[test]
    fn q1_equal_parameters_give_b() {
        let t = parse(Q1).unwrap().into_ternary("q1").unwrap();
        let mut s = Sampler::new(&FieldConfig::rational(4), 0);
        let mut checked = 0;
        while checked < 50 {
            let (al, a, b, c) = (s.element(), s.element(), s.element(), s.element());
            match t.evaluate(std::slice::from_ref(&al), std::slice::from_ref(&al), &[a], std::slice::from_ref(&b), &[c])
            {
                Ok(w) => {
                    assert_eq!(w, vec![b]);
                    checked += 1;
                }
                Err(e) => assert!(e.is_pole()),
            }
        }
    }

    #[test]
    fn dkdv_pole() {
        let t = parse(DKDV).unwrap().into_ternary("dkdv").unwrap();
        let e = t.evaluate(&[q(1)], &[q(2)], &[q(1)], &[q(2)], &[q(1)]).unwrap_err();
        assert!(matches!(e, Error::DivisionByZero));
    }

    #[test]
    fn adler_with_crlf() {
        let r = parse(ADLER).unwrap().into_yb_map("adler").unwrap();
        let (u, v) = r.evaluate(&[q(1)], &[q(3)], &[q(1)], &[q(1)]).unwrap();
        assert_eq!((u, v), (vec![q(2)], vec![q(0)]));
    }

    #[test]
    fn truncated_expression() {
        match parse("kind: ybmap\nparams: a, b\nvars: x, y\nu = y + ").unwrap_err() {
            Error::Parse(e) => {
                assert_eq!((e.line, e.column), (4, 9));
                assert_eq!(e.found, "end of input");
                assert!(e.expected.contains(&"identifier".to_string()));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn undeclared_and_arity_errors() {
        let e = parse("kind: ternary\nparams: p, q\nvars: a, b, c\nmu = a + z").unwrap_err();
        assert!(matches!(e, Error::UndeclaredSymbol { ref name, line: 4, column: 10 } if name == "z"));
        let e = parse("kind: ternary\nparams: p\nvars: a, b, c\nmu = a").unwrap_err();
        assert!(matches!(e, Error::ArityMismatch(_)));
        let e = parse("kind: ybmap\nparams: p, q\nvars: a, b, c\nu = a\nv = b").unwrap_err();
        assert!(matches!(e, Error::ArityMismatch(_)));
        let e = parse("kind: ybmap\nparams: p, q\nvars: a, b\nu = a").unwrap_err();
        assert!(matches!(e, Error::ArityMismatch(_)));
    }

    #[test]
    fn shared_parameters() {
        let text = "kind: ternary\nparams: p, r, q, s\nvars: a, b, c\nquasigroup: division\nshared: 1\nmu = b*r/s";
        let def = parse(text).unwrap();
        assert_eq!(def.shared(), 1);
        assert_eq!(parse(&def.to_string()).unwrap(), def);
        let t = def.into_ternary("t").unwrap();
        assert_eq!(t.param_layout().shared, 1);
        let e = parse("kind: ybmap\nparams: p, q\nvars: x, y\nshared: 2\nu = y\nv = x").unwrap_err();
        assert!(matches!(e, Error::ArityMismatch(_)));
    }

    #[test]
    fn unary_minus_before_power_is_rejected() {
        assert!(matches!(parse_expr("-x^2"), Err(Error::Parse(_))));
        assert_eq!(parse_expr("(-x)^2").unwrap().to_string(), "(-x)^2");
        assert_eq!(parse_expr("x^-2").unwrap(), Expr::Pow(Box::new(Expr::Sym("x".into())), -2));
    }

    #[test]
    fn left_associativity() {
        let b = HashMap::new();
        assert_eq!(parse_expr("8 - 4 - 2").unwrap().evaluate(Q, &b).unwrap(), q(2));
        assert_eq!(parse_expr("8 / 4 / 2").unwrap().evaluate(Q, &b).unwrap(), q(1));
        assert_eq!(parse_expr("0^0").unwrap().evaluate(Q, &b).unwrap(), q(1));
    }

    #[test]
    fn unbound_symbol() {
        let e = parse_expr("x + 1").unwrap().evaluate(Q, &HashMap::new()).unwrap_err();
        assert!(matches!(e, Error::UnboundSymbol(ref s) if s == "x"));
    }

    #[test]
    fn file_printer_round_trip() {
        let f = parse(Q1).unwrap();
        assert_eq!(parse(&f.to_string()).unwrap(), f);
        let with_q = parse("kind: ybmap\nparams: a, b\nvars: x, y\nquasigroup: division\nv = x\nu = y").unwrap();
        assert_eq!(with_q.quasigroup(), Some("division"));
        assert_eq!(parse(&with_q.to_string()).unwrap(), with_q);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..20).prop_map(|n| Expr::Int(n.into())),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Expr::Sym(s.into())),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner, -3i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            ]
        })
    }

    fn fp_bindings() -> (Field, HashMap<String, FieldElement>) {
        let f = Field::Prime(1_000_003);
        let b = [("x", 5), ("y", 7), ("z", 11)].iter().map(|(k, v)| (k.to_string(), f.int(*v))).collect();
        (f, b)
    }

    proptest! {
        #[test]
        fn print_parse_is_identity(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse_expr(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e, "{}", printed);
            prop_assert_eq!(reparsed.to_string(), printed);
        }

        #[test]
        fn evaluation_is_structural(a in arb_expr(), b in arb_expr()) {
            let (f, env) = fp_bindings();
            let (Ok(va), Ok(vb)) = (a.evaluate(f, &env), b.evaluate(f, &env)) else { return Ok(()) };
            let bin = |op: fn(Box<Expr>, Box<Expr>) -> Expr| op(Box::new(a.clone()), Box::new(b.clone())).evaluate(f, &env).unwrap();
            prop_assert_eq!(bin(Expr::Add), &va + &vb);
            prop_assert_eq!(bin(Expr::Sub), &va - &vb);
            prop_assert_eq!(bin(Expr::Mul), &va * &vb);
            if !vb.is_zero() {
                prop_assert_eq!(bin(Expr::Div), va.try_div(&vb).unwrap());
            }
        }
    }
}
