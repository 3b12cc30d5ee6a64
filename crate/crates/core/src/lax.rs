//! Lax matrices `L(x; alpha; zeta)` and the refactorization identity
//! `L(u; alpha) L(v; beta) = L(y; beta) L(x; alpha)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement, Sampler};
use crate::matrix::SquareMatrix;
use crate::quasigroup::{show, Carrier, Point};
use crate::yb::{
    run_trials, CheckOptions, Failure, Outcome, ParamLayout, ParametricYbMap, VerificationReport, RESAMPLE_BUDGET,
};

pub type LaxFn = Arc<dyn Fn(&[FieldElement], &[FieldElement], &FieldElement) -> Result<SquareMatrix> + Send + Sync>;

#[derive(Clone)]
pub struct LaxMatrix {
    name: String,
    order: usize,
    carrier: Carrier,
    params: ParamLayout,
    /// Degree in `zeta`.
    degree: usize,
    eval: LaxFn,
}

impl fmt::Debug for LaxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaxMatrix")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("carrier", &self.carrier)
            .field("degree", &self.degree)
            .finish()
    }
}

impl LaxMatrix {
    pub fn new<F>(
        name: impl Into<String>,
        order: usize,
        carrier: Carrier,
        param_arity: usize,
        degree: usize,
        eval: F,
    ) -> Self
    where
        F: Fn(&[FieldElement], &[FieldElement], &FieldElement) -> Result<SquareMatrix> + Send + Sync + 'static,
    {
        LaxMatrix {
            name: name.into(),
            order,
            carrier,
            params: ParamLayout::new(param_arity),
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn with_shared_params(mut self, shared: usize) -> Self {
        self.params = ParamLayout::with_shared(self.params.arity, shared);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `L(x; alpha) = I`, whatever `x` is. Any map refactorizes it.
    pub fn identity(carrier: Carrier, param_arity: usize, order: usize) -> Self {
        LaxMatrix::new("identity_lax", order, carrier, param_arity, 0, move |x, _, _| {
            Ok(SquareMatrix::identity(x[0].field(), order))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.coords()
    }

    pub fn param_arity(&self) -> usize {
        self.params.arity
    }

    pub fn param_layout(&self) -> ParamLayout {
        self.params
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval(&self, x: &[FieldElement], alpha: &[FieldElement], zeta: &FieldElement) -> Result<SquareMatrix> {
        if x.len() != self.dim() || alpha.len() != self.params.arity {
            return Err(Error::ArityMismatch(format!(
                "{} takes a point of dimension {} and {} parameters",
                self.name,
                self.dim(),
                self.params.arity
            )));
        }
        let m = (self.eval)(x, alpha, zeta)?;
        debug_assert_eq!(m.order(), self.order);
        Ok(m)
    }

    /// Smallest number of random `zeta` values that pins down the products,
    /// which have degree `2 * degree` in `zeta`.
    pub fn min_zeta_points(&self) -> usize {
        2 * self.degree + 1
    }
}

fn compatible(l: &LaxMatrix, r: &ParametricYbMap) -> Result<()> {
    if l.dim() != r.dim() || l.param_arity() != r.param_arity() {
        return Err(Error::IncompatibleStructure(format!(
            "{} and {} have different point or parameter shapes",
            l.name(),
            r.name()
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn refactorizes(
    l: &LaxMatrix,
    u: &[FieldElement],
    v: &[FieldElement],
    x: &[FieldElement],
    y: &[FieldElement],
    alpha: &[FieldElement],
    beta: &[FieldElement],
    zetas: &[FieldElement],
) -> Result<Option<(FieldElement, SquareMatrix, SquareMatrix)>> {
    for z in zetas {
        let lhs = l.eval(u, alpha, z)? * l.eval(v, beta, z)?;
        let rhs = l.eval(y, beta, z)? * l.eval(x, alpha, z)?;
        if lhs != rhs {
            return Ok(Some((z.clone(), lhs, rhs)));
        }
    }
    Ok(None)
}

/// `zeta = 0`, then `count` random values, then one extra random value.
fn zeta_values(s: &mut Sampler, count: usize) -> Vec<FieldElement> {
    let mut z = vec![s.field().zero()];
    z.extend(s.elements(count + 1));
    z
}

/// Checks the refactorization at `zeta = 0`, `zeta_points` random values
/// and one more random value.
pub fn check_refactorization(
    l: &LaxMatrix,
    r: &ParametricYbMap,
    cfg: &FieldConfig,
    opts: &CheckOptions,
    zeta_points: usize,
) -> Result<VerificationReport> {
    compatible(l, r)?;
    if zeta_points < l.min_zeta_points() {
        return Err(Error::InvalidArgument(format!(
            "{} has degree {} in zeta, so at least {} zeta points are needed",
            l.name(),
            l.degree(),
            l.min_zeta_points()
        )));
    }
    let identity = format!("refactorization with {}", l.name());
    let layout = r.param_layout();
    run_trials(&identity, r.name(), cfg, opts, r.degree().saturating_add(2 * l.degree() as u32), |s| {
        let (x, y) = (r.carrier().sample(s)?, r.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let zetas = zeta_values(s, zeta_points);
        let (u, v) = r.evaluate(&x, &p[0], &y, &p[1])?;
        Ok(match refactorizes(l, &u, &v, &x, &y, &p[0], &p[1], &zetas)? {
            None => Outcome::Agree,
            Some((z, lhs, rhs)) => Outcome::Disagree(Failure::new(
                vec![
                    ("x", show(&x)),
                    ("y", show(&y)),
                    ("alpha", show(&p[0])),
                    ("beta", show(&p[1])),
                    ("zeta", z.to_string()),
                ],
                lhs.to_string(),
                rhs.to_string(),
            )),
        })
    })
}

fn perturb(s: &mut Sampler, p: &[FieldElement]) -> Point {
    loop {
        let d = s.elements(p.len());
        if d.iter().any(|e| !e.is_zero()) {
            return p.iter().zip(&d).map(|(a, b)| a + b).collect();
        }
    }
}

/// Falsification evidence that `L` is strong for `R`: the image `(u, v)`
/// refactorizes, and each of `perturbations` random shifts `(u + d, v)` and
/// `(u, v + d)` does not. A pass is a necessary condition for uniqueness,
/// not a proof of it.
pub fn check_strongness(
    l: &LaxMatrix,
    r: &ParametricYbMap,
    cfg: &FieldConfig,
    opts: &CheckOptions,
    perturbations: usize,
) -> Result<VerificationReport> {
    compatible(l, r)?;
    if perturbations == 0 {
        return Err(Error::InvalidArgument("perturbations must be at least 1".into()));
    }
    let identity = format!("strongness of {} ({perturbations} perturbations)", l.name());
    let layout = r.param_layout();
    let count = l.min_zeta_points();
    run_trials(&identity, r.name(), cfg, opts, r.degree().saturating_add(2 * l.degree() as u32), |s| {
        let (x, y) = (r.carrier().sample(s)?, r.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let zetas = zeta_values(s, count);
        let (u, v) = r.evaluate(&x, &p[0], &y, &p[1])?;
        let inputs = |extra: Vec<(&'static str, String)>| {
            let mut base = vec![("x", show(&x)), ("y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))];
            base.extend(extra);
            base
        };
        if let Some((z, lhs, rhs)) = refactorizes(l, &u, &v, &x, &y, &p[0], &p[1], &zetas)? {
            return Ok(Outcome::Disagree(Failure::new(
                inputs(vec![("zeta", z.to_string())]),
                lhs.to_string(),
                rhs.to_string(),
            )));
        }
        for _ in 0..perturbations {
            for which in ["u", "v"] {
                let mut attempt = 0;
                let held = loop {
                    let (cu, cv) = match which {
                        "u" => (perturb(s, &u), v.clone()),
                        _ => (u.clone(), perturb(s, &v)),
                    };
                    match refactorizes(l, &cu, &cv, &x, &y, &p[0], &p[1], &zetas) {
                        Ok(None) => break Some((cu, cv)),
                        Ok(Some(_)) => break None,
                        Err(e) if e.is_pole() && attempt + 1 < RESAMPLE_BUDGET => attempt += 1,
                        Err(e) => return Err(e),
                    }
                };
                if let Some((cu, cv)) = held {
                    return Ok(Outcome::Disagree(Failure::new(
                        inputs(vec![("perturbed", which.to_string())]),
                        format!("candidate ({}, {}) also refactorizes", show(&cu), show(&cv)),
                        format!("only ({}, {})", show(&u), show(&v)),
                    )));
                }
            }
        }
        Ok(Outcome::Agree)
    })
}
