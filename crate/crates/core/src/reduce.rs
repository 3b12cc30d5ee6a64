//! Reduction of YB maps and Lax matrices through compatible constraints, and
//! parameter reindexing.

use std::fmt;
use std::sync::Arc;

use crate::construct::Preconditions;
use crate::dsl::{parse_expr, Compiled};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::lax::LaxMatrix;
use crate::matrix::SquareMatrix;
use crate::quasigroup::{show, Carrier, Point};
use crate::yb::{
    run_trials, CheckOptions, Failure, Outcome, ParametricTernarySystem, ParametricYbMap, Params, Source,
    VerificationReport,
};

pub type ConstraintFn = Arc<dyn Fn(&[FieldElement], &[FieldElement]) -> Result<FieldElement> + Send + Sync>;

/// `x_k = f_alpha(x_1, .., x_{k-1}, x_{k+1}, .., x_n)`.
#[derive(Clone)]
pub struct ConstraintFunction {
    name: String,
    /// Dimension of the unreduced points.
    dim: usize,
    /// 1-based.
    index: usize,
    eval: ConstraintFn,
}

impl fmt::Debug for ConstraintFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstraintFunction({} on x_{} of {})", self.name, self.index, self.dim)
    }
}

impl ConstraintFunction {
    pub fn new<F>(name: impl Into<String>, dim: usize, index: usize, eval: F) -> Result<Self>
    where
        F: Fn(&[FieldElement], &[FieldElement]) -> Result<FieldElement> + Send + Sync + 'static,
    {
        if dim < 2 || index == 0 || index > dim {
            return Err(Error::InvalidArgument(format!(
                "constraint index {index} out of range for points of dimension {dim}"
            )));
        }
        Ok(ConstraintFunction { name: name.into(), dim, index, eval: Arc::new(eval) })
    }

    pub fn zero(dim: usize, index: usize) -> Result<Self> {
        Self::new("zero", dim, index, |_, free| Ok(free[0].zero_like()))
    }

    pub fn constant(dim: usize, index: usize, c: i64) -> Result<Self> {
        Self::new(format!("constant({c})"), dim, index, move |_, free| Ok(free[0].int_like(c)))
    }

    /// An expression in `x1 .. x{n-1}` (the free coordinates in order) and
    /// `p1 .. p{m}` (the factor's parameters).
    pub fn from_expr(text: &str, dim: usize, index: usize, param_arity: usize) -> Result<Self> {
        let e = parse_expr(text)?;
        let names: Vec<String> =
            (1..dim).map(|i| format!("x{i}")).chain((1..=param_arity).map(|i| format!("p{i}"))).collect();
        let compiled: Compiled = e.compile(&names)?;
        Self::new(e.to_string(), dim, index, move |alpha, free| {
            if alpha.len() != param_arity {
                return Err(Error::ArityMismatch(format!("constraint expects {param_arity} parameters")));
            }
            let slots: Vec<&FieldElement> = free.iter().chain(alpha).collect();
            compiled.evaluate(free[0].field(), &slots)
        })
    }

    /// `zero`, `constant(c)`/`constant:c`, or an expression.
    pub fn parse(spec: &str, dim: usize, index: usize, param_arity: usize) -> Result<Self> {
        let spec = spec.trim();
        if spec == "zero" {
            return Self::zero(dim, index);
        }
        let inner =
            spec.strip_prefix("constant(").and_then(|s| s.strip_suffix(')')).or_else(|| spec.strip_prefix("constant:"));
        if let Some(c) = inner {
            let c = c.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad constant in `{spec}`")))?;
            return Self::constant(dim, index, c);
        }
        Self::from_expr(spec, dim, index, param_arity)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn eval(&self, alpha: &[FieldElement], free: &[FieldElement]) -> Result<FieldElement> {
        (self.eval)(alpha, free)
    }

    /// Inserts `f_alpha(free)` at the constrained position.
    pub fn fill(&self, alpha: &[FieldElement], free: &[FieldElement]) -> Result<Point> {
        let mut p = free.to_vec();
        p.insert(self.index - 1, self.eval(alpha, free)?);
        Ok(p)
    }

    /// Drops the constrained coordinate.
    pub fn project(&self, p: &[FieldElement]) -> Point {
        let mut p = p.to_vec();
        p.remove(self.index - 1);
        p
    }
}

fn reduced_carrier(c: Carrier) -> Result<Carrier> {
    match c {
        Carrier::Scalars(d) if d >= 2 => Ok(Carrier::Scalars(d - 1)),
        Carrier::NonZero(d) if d >= 2 => Ok(Carrier::NonZero(d - 1)),
        other => Err(Error::IncompatibleStructure(format!("cannot reduce points on {other}"))),
    }
}

fn require_dim(dim: usize, name: &str, f: &ConstraintFunction) -> Result<()> {
    if dim != f.dim() {
        return Err(Error::IncompatibleStructure(format!(
            "{name} has points of dimension {dim}, the constraint expects {}",
            f.dim()
        )));
    }
    Ok(())
}

/// Samples the free coordinates, fills both inputs with `f`, and checks that
/// `u_k = f_alpha(u without k)` and `v_k = f_beta(v without k)`.
pub fn check_compatibility(
    r: &ParametricYbMap,
    f: &ConstraintFunction,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    require_dim(r.dim(), r.name(), f)?;
    let free = reduced_carrier(r.carrier())?;
    let identity = format!("compatibility of x{} = {}", f.index(), f.name());
    let layout = r.param_layout();
    run_trials(&identity, r.name(), cfg, opts, r.degree(), |s| {
        let (xf, yf) = (free.sample(s)?, free.sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let x = f.fill(&p[0], &xf)?;
        let y = f.fill(&p[1], &yf)?;
        let (u, v) = r.evaluate(&x, &p[0], &y, &p[1])?;
        let k = f.index() - 1;
        let lhs = vec![u[k].clone(), v[k].clone()];
        let rhs = vec![f.eval(&p[0], &f.project(&u))?, f.eval(&p[1], &f.project(&v))?];
        Ok(if lhs == rhs {
            Outcome::Agree
        } else {
            Outcome::Disagree(Failure::new(
                vec![("x", show(&x)), ("y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))],
                format!("(u_k, v_k) = {}", show(&lhs)),
                format!("(f(u), f(v)) = {}", show(&rhs)),
            ))
        })
    })
}

/// The map on the free coordinates. With `Preconditions::Check` the
/// compatibility report is required to pass (strict) before reducing.
pub fn reduce_map(r: &ParametricYbMap, f: &ConstraintFunction, pre: &Preconditions) -> Result<ParametricYbMap> {
    require_dim(r.dim(), r.name(), f)?;
    let carrier = reduced_carrier(r.carrier())?;
    if let Preconditions::Check { cfg, opts, strict: true } = pre {
        let rep = check_compatibility(r, f, cfg, opts)?;
        if !rep.passed() {
            return Err(Error::PreconditionFailed(Box::new(rep)));
        }
    }
    let how = format!("x{}={}", f.index(), f.name());
    let name = format!("{}[{how}]", r.name());
    let (rr, ff) = (r.clone(), f.clone());
    Ok(ParametricYbMap::new(name, carrier, r.param_arity(), move |x, a, y, b| {
        let (u, v) = rr.evaluate(&ff.fill(a, x)?, a, &ff.fill(b, y)?, b)?;
        Ok((ff.project(&u), ff.project(&v)))
    })
    .with_shared_params(r.param_layout().shared)
    .with_degree(r.degree())
    .with_source(Source::Reduced(how)))
}

/// `L~(x; alpha) = L(fill(x); alpha)`.
pub fn reduce_lax(l: &LaxMatrix, f: &ConstraintFunction) -> Result<LaxMatrix> {
    require_dim(l.dim(), l.name(), f)?;
    let carrier = reduced_carrier(l.carrier())?;
    let name = format!("{}[x{}={}]", l.name(), f.index(), f.name());
    let (ll, ff) = (l.clone(), f.clone());
    Ok(LaxMatrix::new(name, l.order(), carrier, l.param_arity(), l.degree(), move |x, a, z| {
        ll.eval(&ff.fill(a, x)?, a, z)
    })
    .with_shared_params(l.param_layout().shared))
}

pub type SubstFn = Arc<dyn Fn(&[FieldElement]) -> Result<Params> + Send + Sync>;

/// New parameters `p'` standing for old parameters `sub(p')`. The last
/// `shared` components of `p'` are free constants tied across factors
/// rather than YB parameters.
#[derive(Clone)]
pub struct Reparametrization {
    name: String,
    arity: usize,
    shared: usize,
    sub: SubstFn,
}

impl fmt::Debug for Reparametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reparametrization({})", self.name)
    }
}

impl Reparametrization {
    pub fn new<F>(name: impl Into<String>, arity: usize, shared: usize, sub: F) -> Self
    where
        F: Fn(&[FieldElement]) -> Result<Params> + Send + Sync + 'static,
    {
        assert!(shared <= arity);
        Reparametrization { name: name.into(), arity, shared, sub: Arc::new(sub) }
    }

    /// `(a, r) -> (a - r, a + r)`; `r` is shared by all factors.
    pub fn homotopy() -> Self {
        Self::new("(a,r)->(a-r,a+r)", 2, 1, |p| Ok(vec![&p[0] - &p[1], &p[0] + &p[1]]))
    }

    /// Fixes component `index` (1-based) of an `arity`-vector to a constant
    /// shared by every factor; the constant becomes the last new parameter.
    pub fn pin(arity: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= arity);
        Self::new(format!("p{index}=c"), arity, 1, move |p| {
            let mut old = p[..arity - 1].to_vec();
            old.insert(index - 1, p[arity - 1].clone());
            Ok(old)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, p: &[FieldElement]) -> Result<Params> {
        (self.sub)(p)
    }

    pub fn map(&self, r: &ParametricYbMap, name: &str) -> ParametricYbMap {
        let (rr, sub) = (r.clone(), self.sub.clone());
        ParametricYbMap::new(name, r.carrier(), self.arity, move |x, a, y, b| rr.evaluate(x, &sub(a)?, y, &sub(b)?))
            .with_shared_params(self.shared)
            .with_degree(r.degree().saturating_mul(2))
            .with_source(Source::Reparametrized(self.name.clone()))
            .with_note(format!("{} with {}", r.name(), self.name))
    }

    pub fn ternary(&self, t: &ParametricTernarySystem, name: &str) -> ParametricTernarySystem {
        let (tt, sub) = (t.clone(), self.sub.clone());
        ParametricTernarySystem::new(name, t.carrier(), self.arity, move |a, b, x, y, z| {
            tt.evaluate(&sub(a)?, &sub(b)?, x, y, z)
        })
        .with_shared_params(self.shared)
        .with_degree(t.degree().saturating_mul(2))
        .with_source(Source::Reparametrized(self.name.clone()))
    }

    pub fn lax(&self, l: &LaxMatrix, name: &str) -> LaxMatrix {
        let (ll, sub) = (l.clone(), self.sub.clone());
        LaxMatrix::new(name, l.order(), l.carrier(), self.arity, l.degree(), move |x, a, z| ll.eval(x, &sub(a)?, z))
            .with_shared_params(self.shared)
    }
}

/// `L_bar(x1, x2; alpha)` with `K_alpha = diag(alpha1, alpha2)`.
fn l_bar(x: &[FieldElement], a: &[FieldElement]) -> Result<SquareMatrix> {
    let (x1, x2) = (&x[0], &x[1]);
    let (a1, a2) = (&a[0], &a[1]);
    let c = (a1 - &(&(a2 * x1) * x1)).try_div(&(a1 * x2))?;
    let d = -(a2 * x1).try_div(a1)?;
    Ok(SquareMatrix::from_rows([[x1.clone(), x2.clone()], [c, d]]))
}

/// The 2-dimensional, 2+2 parameter map built from the refactorization of
/// `L_bar - zeta K`, returned with that Lax matrix. Outputs are the first
/// rows of `U` and `V`.
pub fn case_one_map() -> (ParametricYbMap, LaxMatrix) {
    let map = ParametricYbMap::new("case1_map", Carrier::Scalars(2), 2, |x, a, y, b| {
        let (lx, ly) = (l_bar(x, a)?, l_bar(y, b)?);
        let (ka, kb) = (SquareMatrix::diagonal(a), SquareMatrix::diagonal(b));
        let c = (&a[0] * &a[1]).inv()?;
        let kk = &ka * &kb;
        let mixed = &(&ly * &ka) + &(&kb * &lx);
        let u = &(&(&(&ly * &lx) + &kk.scale(&c)) * &mixed.inverse()?) * &ka;
        let v = &ka.inverse()? * &(&mixed - &(&u * &kb));
        Ok((vec![u.get(0, 0).clone(), u.get(0, 1).clone()], vec![v.get(0, 0).clone(), v.get(0, 1).clone()]))
    })
    .with_degree(48)
    .with_source(Source::Catalog);
    let lax = LaxMatrix::new("case1_lax", 2, Carrier::Scalars(2), 2, 1, |x, a, z| {
        Ok(&l_bar(x, a)? - &SquareMatrix::diagonal(a).scale(z))
    });
    (map, lax)
}
