//! Left quasigroups, loops and groups over field scalars or invertible matrices.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldConfig, FieldElement, Sampler};
use crate::matrix::SquareMatrix;

/// A point of a carrier: its field coordinates (matrices are stored row-major).
pub type Point = Vec<FieldElement>;

/// Where points live; decides how verifiers sample them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// `field^d`.
    Scalars(usize),
    /// `(field*)^d`.
    NonZero(usize),
    /// Invertible `n x n` matrices.
    Matrices(usize),
}

impl Carrier {
    pub fn coords(self) -> usize {
        match self {
            Carrier::Scalars(d) | Carrier::NonZero(d) => d,
            Carrier::Matrices(n) => n * n,
        }
    }

    pub fn contains(self, p: &[FieldElement]) -> bool {
        p.len() == self.coords()
            && match self {
                Carrier::Scalars(_) => true,
                Carrier::NonZero(_) => p.iter().all(|e| !e.is_zero()),
                Carrier::Matrices(n) => SquareMatrix::new(n, p.to_vec()).is_invertible(),
            }
    }

    pub fn sample(self, s: &mut Sampler) -> Result<Point> {
        match self {
            Carrier::Scalars(d) => Ok(s.elements(d)),
            Carrier::NonZero(d) => (0..d).map(|_| s.nonzero()).collect(),
            Carrier::Matrices(n) => {
                for _ in 0..crate::field::ELEMENT_RETRY_BUDGET {
                    let p = s.elements(n * n);
                    if SquareMatrix::new(n, p.clone()).is_invertible() {
                        return Ok(p);
                    }
                }
                Err(Error::SamplingExhausted { attempts: crate::field::ELEMENT_RETRY_BUDGET })
            }
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Scalars(d) => write!(f, "F^{d}"),
            Carrier::NonZero(d) => write!(f, "(F*)^{d}"),
            Carrier::Matrices(n) => write!(f, "GL_{n}(F)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinQuasigroup {
    /// `(F, +)`.
    Additive,
    /// `(F*, *)`.
    Multiplicative,
    /// `(F*, a*b = b/a)`, left identity 1.
    Division,
    /// `(F, a*b = b-a)`, left identity 0.
    SubtractionLoop,
    /// Invertible matrices with `A*B = BA`.
    MatrixReversed(usize),
}

impl BuiltinQuasigroup {
    pub const NAMES: [&'static str; 5] =
        ["additive", "multiplicative", "division", "subtraction_loop", "matrix_reversed"];

    /// Accepts the builtin names; `matrix_reversed` takes an optional order as
    /// `matrix_reversed(n)` or `matrix_reversed:n` (default 2).
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        Ok(match name {
            "additive" => BuiltinQuasigroup::Additive,
            "multiplicative" => BuiltinQuasigroup::Multiplicative,
            "division" => BuiltinQuasigroup::Division,
            "subtraction_loop" => BuiltinQuasigroup::SubtractionLoop,
            "matrix_reversed" => BuiltinQuasigroup::MatrixReversed(2),
            _ => {
                let order = name
                    .strip_prefix("matrix_reversed")
                    .and_then(|rest| {
                        rest.strip_prefix(':').or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                    })
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::UnknownQuasigroup(name.to_string()))?;
                BuiltinQuasigroup::MatrixReversed(order)
            }
        })
    }

    pub fn name(self) -> String {
        match self {
            BuiltinQuasigroup::Additive => "additive".into(),
            BuiltinQuasigroup::Multiplicative => "multiplicative".into(),
            BuiltinQuasigroup::Division => "division".into(),
            BuiltinQuasigroup::SubtractionLoop => "subtraction_loop".into(),
            BuiltinQuasigroup::MatrixReversed(n) => format!("matrix_reversed({n})"),
        }
    }

    pub fn structure(self) -> Quasigroup {
        Quasigroup::from_builtin(self)
    }
}

impl fmt::Display for BuiltinQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub is_group: bool,
    pub is_abelian: bool,
    pub is_loop: bool,
}

pub type BinaryOp = Arc<dyn Fn(&[FieldElement], &[FieldElement]) -> Result<Point> + Send + Sync>;
pub type IdentityFn = Arc<dyn Fn(Field) -> Point + Send + Sync>;

/// A carrier with a binary operation, its left division and an optional left identity.
#[derive(Clone)]
pub struct Quasigroup {
    name: String,
    carrier: Carrier,
    op: BinaryOp,
    ldiv: BinaryOp,
    left_identity: Option<IdentityFn>,
    flags: Flags,
    builtin: Option<BuiltinQuasigroup>,
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quasigroup")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("flags", &self.flags)
            .finish()
    }
}

fn scalar_op(f: fn(&FieldElement, &FieldElement) -> Result<FieldElement>) -> BinaryOp {
    Arc::new(move |u, v| u.iter().zip(v).map(|(a, b)| f(a, b)).collect())
}

fn matrix_op(n: usize, f: fn(&SquareMatrix, &SquareMatrix) -> Result<SquareMatrix>) -> BinaryOp {
    Arc::new(move |u, v| {
        let a = SquareMatrix::new(n, u.to_vec());
        let b = SquareMatrix::new(n, v.to_vec());
        Ok(f(&a, &b)?.into_entries())
    })
}

impl Quasigroup {
    pub fn builtin(name: &str) -> Result<Self> {
        Ok(Self::from_builtin(BuiltinQuasigroup::parse(name)?))
    }

    pub fn from_builtin(kind: BuiltinQuasigroup) -> Self {
        let abelian_group = Flags { is_group: true, is_abelian: true, is_loop: true };
        let (carrier, op, ldiv, identity, flags): (Carrier, BinaryOp, BinaryOp, i64, Flags) = match kind {
            BuiltinQuasigroup::Additive => {
                (Carrier::Scalars(1), scalar_op(|a, b| Ok(a + b)), scalar_op(|u, w| Ok(w - u)), 0, abelian_group)
            }
            BuiltinQuasigroup::Multiplicative => {
                (Carrier::NonZero(1), scalar_op(|a, b| Ok(a * b)), scalar_op(|u, w| w.try_div(u)), 1, abelian_group)
            }
            BuiltinQuasigroup::Division => {
                (Carrier::NonZero(1), scalar_op(|a, b| b.try_div(a)), scalar_op(|a, b| Ok(a * b)), 1, Flags::default())
            }
            BuiltinQuasigroup::SubtractionLoop => {
                (Carrier::Scalars(1), scalar_op(|a, b| Ok(b - a)), scalar_op(|a, b| Ok(a + b)), 0, Flags::default())
            }
            BuiltinQuasigroup::MatrixReversed(n) => {
                let q = Quasigroup {
                    name: kind.name(),
                    carrier: Carrier::Matrices(n),
                    op: matrix_op(n, |a, b| Ok(b * a)),
                    ldiv: matrix_op(n, |a, b| Ok(b * &a.inverse()?)),
                    left_identity: Some(Arc::new(move |f| SquareMatrix::identity(f, n).into_entries())),
                    flags: Flags { is_group: true, is_abelian: n == 1, is_loop: true },
                    builtin: Some(kind),
                };
                return q;
            }
        };
        Quasigroup {
            name: kind.name(),
            carrier,
            op,
            ldiv,
            left_identity: Some(Arc::new(move |f| vec![f.int(identity)])),
            flags,
            builtin: Some(kind),
        }
    }

    /// A user-defined structure; nothing is assumed about its laws.
    pub fn custom(
        name: impl Into<String>,
        carrier: Carrier,
        op: BinaryOp,
        ldiv: BinaryOp,
        left_identity: Option<IdentityFn>,
        flags: Flags,
    ) -> Self {
        Quasigroup { name: name.into(), carrier, op, ldiv, left_identity, flags, builtin: None }
    }

    /// On a group `G`, the quasigroup `a*b = b a^{-1}` with `a\w = w a` and
    /// left identity `e`. Gives `division` for `(F*, *)` and
    /// `subtraction_loop` for `(F, +)`.
    pub fn reversed_division(group: &Quasigroup) -> Result<Self> {
        if !group.flags.is_group {
            return Err(Error::IncompatibleStructure(format!("{} is not a group", group.name)));
        }
        match group.builtin {
            Some(BuiltinQuasigroup::Multiplicative) => return Ok(Self::from_builtin(BuiltinQuasigroup::Division)),
            Some(BuiltinQuasigroup::Additive) => return Ok(Self::from_builtin(BuiltinQuasigroup::SubtractionLoop)),
            _ => {}
        }
        let g1 = group.clone();
        let g2 = group.clone();
        let op: BinaryOp = Arc::new(move |a, b| {
            let a_inv = g1.group_inverse(a)?;
            g1.op(b, &a_inv)
        });
        let ldiv: BinaryOp = Arc::new(move |a, w| g2.op(w, a));
        Ok(Quasigroup {
            name: format!("reversed_division({})", group.name),
            carrier: group.carrier,
            op,
            ldiv,
            left_identity: group.left_identity.clone(),
            flags: Flags::default(),
            builtin: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn builtin_kind(&self) -> Option<BuiltinQuasigroup> {
        self.builtin
    }

    pub fn op(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<Point> {
        (self.op)(u, v)
    }

    pub fn ldiv(&self, u: &[FieldElement], w: &[FieldElement]) -> Result<Point> {
        (self.ldiv)(u, w)
    }

    pub fn left_identity(&self, field: Field) -> Option<Point> {
        self.left_identity.as_ref().map(|e| e(field))
    }

    /// `u^{-1} = u \ e`, only meaningful for groups.
    pub fn group_inverse(&self, u: &[FieldElement]) -> Result<Point> {
        if !self.flags.is_group {
            return Err(Error::IncompatibleStructure(format!("{} is not a group", self.name)));
        }
        let e = self
            .left_identity(u[0].field())
            .ok_or_else(|| Error::IncompatibleStructure(format!("{} has no identity", self.name)))?;
        self.ldiv(u, &e)
    }

    /// Samples each law at `samples` points. Left-division laws and the left
    /// identity are always required; associativity, commutativity and the
    /// right identity are required only when the matching flag is claimed,
    /// otherwise they are reported for information.
    pub fn check_axioms(&self, cfg: &FieldConfig, samples: usize) -> Result<AxiomReport> {
        if samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        let field = cfg.field();
        let mut s = Sampler::new(cfg, 0);
        let e = self.left_identity(field);
        let mut laws = Vec::new();

        laws.push(self.law(&mut s, samples, "u*(u\\w) = w", true, |q, p| {
            Ok((q.op(&p[0], &q.ldiv(&p[0], &p[2])?)?, p[2].clone()))
        })?);
        laws.push(self.law(&mut s, samples, "u\\(u*v) = v", true, |q, p| {
            Ok((q.ldiv(&p[0], &q.op(&p[0], &p[1])?)?, p[1].clone()))
        })?);
        if let Some(e) = &e {
            let e1 = e.clone();
            laws.push(self.law(&mut s, samples, "e*u = u", true, move |q, p| Ok((q.op(&e1, &p[0])?, p[0].clone())))?);
            let e2 = e.clone();
            laws.push(self.law(&mut s, samples, "u*e = u", self.flags.is_loop, move |q, p| {
                Ok((q.op(&p[0], &e2)?, p[0].clone()))
            })?);
        }
        laws.push(self.law(&mut s, samples, "(u*v)*w = u*(v*w)", self.flags.is_group, |q, p| {
            Ok((q.op(&q.op(&p[0], &p[1])?, &p[2])?, q.op(&p[0], &q.op(&p[1], &p[2])?)?))
        })?);
        laws.push(self.law(&mut s, samples, "u*v = v*u", self.flags.is_abelian, |q, p| {
            Ok((q.op(&p[0], &p[1])?, q.op(&p[1], &p[0])?))
        })?);
        Ok(AxiomReport { structure: self.name.clone(), field: field.label(), samples, laws })
    }

    fn law(
        &self,
        s: &mut Sampler,
        samples: usize,
        law: &str,
        required: bool,
        sides: impl Fn(&Quasigroup, &[Point; 3]) -> Result<(Point, Point)>,
    ) -> Result<LawCheck> {
        for _ in 0..samples {
            let mut outcome = None;
            for _ in 0..crate::yb::RESAMPLE_BUDGET {
                let p = [self.carrier.sample(s)?, self.carrier.sample(s)?, self.carrier.sample(s)?];
                match sides(self, &p) {
                    Ok(sides) => {
                        outcome = Some((p, sides));
                        break;
                    }
                    Err(e) if e.is_pole() => continue,
                    Err(e) => return Err(e),
                }
            }
            let Some((p, (lhs, rhs))) = outcome else { continue };
            if lhs != rhs {
                return Ok(LawCheck {
                    law: law.to_string(),
                    required,
                    holds: false,
                    witness: Some(format!(
                        "u = {}, v = {}, w = {}: {} != {}",
                        show(&p[0]),
                        show(&p[1]),
                        show(&p[2]),
                        show(&lhs),
                        show(&rhs)
                    )),
                });
            }
        }
        Ok(LawCheck { law: law.to_string(), required, holds: true, witness: None })
    }
}

pub(crate) fn show(p: &[FieldElement]) -> String {
    if p.len() == 1 {
        p[0].to_string()
    } else {
        let parts: Vec<String> = p.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub required: bool,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub structure: String,
    pub field: String,
    pub samples: usize,
    pub laws: Vec<LawCheck>,
}

impl AxiomReport {
    pub fn law(&self, law: &str) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.law == law)
    }

    /// Every required law held at every sample.
    pub fn is_consistent(&self) -> bool {
        self.laws.iter().all(|l| l.holds || !l.required)
    }
}
