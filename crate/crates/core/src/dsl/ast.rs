use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal; negative constants are `Neg(Int(..))`.
    Int(BigInt),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn symbols(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Int(_) => {}
            Expr::Sym(s) => {
                if !out.contains(&s.as_str()) {
                    out.push(s)
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
        }
    }

    /// Exact evaluation; `0^0 = 1`.
    pub fn evaluate(&self, field: Field, bindings: &HashMap<String, FieldElement>) -> Result<FieldElement> {
        self.eval_with(field, &|s| bindings.get(s).cloned())
    }

    fn eval_with(&self, field: Field, lookup: &dyn Fn(&str) -> Option<FieldElement>) -> Result<FieldElement> {
        Ok(match self {
            Expr::Int(n) => field.from_bigint(n),
            Expr::Sym(s) => lookup(s).ok_or_else(|| Error::UnboundSymbol(s.clone()))?,
            Expr::Add(a, b) => a.eval_with(field, lookup)? + b.eval_with(field, lookup)?,
            Expr::Sub(a, b) => a.eval_with(field, lookup)? - b.eval_with(field, lookup)?,
            Expr::Mul(a, b) => a.eval_with(field, lookup)? * b.eval_with(field, lookup)?,
            Expr::Div(a, b) => a.eval_with(field, lookup)?.try_div(&b.eval_with(field, lookup)?)?,
            Expr::Neg(a) => -a.eval_with(field, lookup)?,
            Expr::Pow(a, n) => a.eval_with(field, lookup)?.pow(*n)?,
        })
    }

    /// Replaces symbols by positions in `names` for repeated evaluation.
    pub fn compile(&self, names: &[String]) -> Result<Compiled> {
        Ok(match self {
            Expr::Int(n) => Compiled::Int(n.clone()),
            Expr::Sym(s) => {
                Compiled::Slot(names.iter().position(|n| n == s).ok_or_else(|| Error::UnboundSymbol(s.clone()))?)
            }
            Expr::Add(a, b) => Compiled::Add(Box::new(a.compile(names)?), Box::new(b.compile(names)?)),
            Expr::Sub(a, b) => Compiled::Sub(Box::new(a.compile(names)?), Box::new(b.compile(names)?)),
            Expr::Mul(a, b) => Compiled::Mul(Box::new(a.compile(names)?), Box::new(b.compile(names)?)),
            Expr::Div(a, b) => Compiled::Div(Box::new(a.compile(names)?), Box::new(b.compile(names)?)),
            Expr::Neg(a) => Compiled::Neg(Box::new(a.compile(names)?)),
            Expr::Pow(a, n) => Compiled::Pow(Box::new(a.compile(names)?), *n),
        })
    }
}

/// Where an operand sits, from loosest to tightest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ctx {
    Expr,
    Term,
    Factor,
    Atom,
    PowBase,
}

fn binds(e: &Expr) -> Ctx {
    match e {
        Expr::Int(_) | Expr::Sym(_) => Ctx::PowBase,
        Expr::Add(..) | Expr::Sub(..) => Ctx::Expr,
        Expr::Mul(..) | Expr::Div(..) => Ctx::Term,
        Expr::Pow(..) => Ctx::Factor,
        Expr::Neg(_) => Ctx::Atom,
    }
}

fn write_in(e: &Expr, ctx: Ctx, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrap = ctx > binds(e);
    if wrap {
        f.write_str("(")?;
    }
    match e {
        Expr::Int(n) => write!(f, "{n}")?,
        Expr::Sym(s) => f.write_str(s)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_in(a, Ctx::Expr, f)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_in(b, Ctx::Term, f)?;
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_in(a, Ctx::Term, f)?;
            f.write_str(if matches!(e, Expr::Mul(..)) { "*" } else { "/" })?;
            write_in(b, Ctx::Factor, f)?;
        }
        Expr::Neg(a) => {
            f.write_str("-")?;
            write_in(a, Ctx::Atom, f)?;
        }
        Expr::Pow(a, n) => {
            write_in(a, Ctx::PowBase, f)?;
            write!(f, "^{n}")?;
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

/// Canonical form: minimal parentheses, spaced `+`/`-`, tight `*`, `/`, `^`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_in(self, Ctx::Expr, f)
    }
}

/// An expression with symbols resolved to slot indices.
#[derive(Clone, Debug)]
pub enum Compiled {
    Int(BigInt),
    Slot(usize),
    Add(Box<Compiled>, Box<Compiled>),
    Sub(Box<Compiled>, Box<Compiled>),
    Mul(Box<Compiled>, Box<Compiled>),
    Div(Box<Compiled>, Box<Compiled>),
    Neg(Box<Compiled>),
    Pow(Box<Compiled>, i64),
}

impl Compiled {
    pub fn evaluate(&self, field: Field, slots: &[&FieldElement]) -> Result<FieldElement> {
        Ok(match self {
            Compiled::Int(n) => field.from_bigint(n),
            Compiled::Slot(i) => slots[*i].clone(),
            Compiled::Add(a, b) => a.evaluate(field, slots)? + b.evaluate(field, slots)?,
            Compiled::Sub(a, b) => a.evaluate(field, slots)? - b.evaluate(field, slots)?,
            Compiled::Mul(a, b) => a.evaluate(field, slots)? * b.evaluate(field, slots)?,
            Compiled::Div(a, b) => a.evaluate(field, slots)?.try_div(&b.evaluate(field, slots)?)?,
            Compiled::Neg(a) => -a.evaluate(field, slots)?,
            Compiled::Pow(a, n) => a.evaluate(field, slots)?.pow(*n)?,
        })
    }
}
