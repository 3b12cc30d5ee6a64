use std::fmt;
use std::sync::Arc;

use crate::construct::ConstructionRecipe;
use crate::error::{Error, Result};
use crate::field::{FieldElement, Sampler};
use crate::quasigroup::{Carrier, Point, Quasigroup};

pub type Params = Vec<FieldElement>;

pub type MapFn = Arc<
    dyn Fn(&[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement]) -> Result<(Point, Point)> + Send + Sync,
>;

pub type TernaryFn = Arc<
    dyn Fn(&[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement]) -> Result<Point>
        + Send
        + Sync,
>;

pub type DynamicalFn = Arc<
    dyn Fn(
            &[FieldElement],
            &[FieldElement],
            &[FieldElement],
            &[FieldElement],
            &[FieldElement],
        ) -> Result<(Point, Point)>
        + Send
        + Sync,
>;

/// Default Schwartz-Zippel degree estimate for objects without a curated bound.
pub const DEFAULT_DEGREE: u32 = 64;

/// Where an evaluable object came from.
#[derive(Clone, Debug)]
pub enum Source {
    Catalog,
    Dsl(String),
    Constructed(Box<ConstructionRecipe>),
    Reduced(String),
    Reparametrized(String),
    Custom,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Catalog => f.write_str("catalog"),
            Source::Dsl(path) => write!(f, "dsl:{path}"),
            Source::Constructed(r) => write!(f, "constructed:{}", r.kind),
            Source::Reduced(how) => write!(f, "reduced:{how}"),
            Source::Reparametrized(how) => write!(f, "reparametrized:{how}"),
            Source::Custom => f.write_str("custom"),
        }
    }
}

/// How parameters are laid out per factor.
///
/// The last `shared` components of every factor's parameter vector are free
/// constants (not YB parameters): verifiers draw them once per tuple and give
/// every factor the same values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamLayout {
    pub arity: usize,
    pub shared: usize,
}

impl ParamLayout {
    pub fn new(arity: usize) -> Self {
        ParamLayout { arity, shared: 0 }
    }

    pub fn with_shared(arity: usize, shared: usize) -> Self {
        assert!(shared <= arity);
        ParamLayout { arity, shared }
    }

    /// One parameter vector per factor. `equal` ties every factor together.
    pub fn sample(self, s: &mut Sampler, factors: usize, equal: bool) -> Vec<Params> {
        let shared = s.elements(self.shared);
        let own = self.arity - self.shared;
        let draw = |s: &mut Sampler| {
            let mut p = s.elements(own);
            p.extend(shared.iter().cloned());
            p
        };
        if equal {
            let p = draw(s);
            vec![p; factors]
        } else {
            (0..factors).map(|_| draw(s)).collect()
        }
    }
}

/// A map `(x, alpha, y, beta) -> (u, v)` on `X x X` with per-factor parameters.
#[derive(Clone)]
pub struct ParametricYbMap {
    name: String,
    carrier: Carrier,
    params: ParamLayout,
    degree: u32,
    source: Source,
    note: Option<String>,
    eval: MapFn,
}

impl fmt::Debug for ParametricYbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricYbMap")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("params", &self.params)
            .field("source", &self.source)
            .finish()
    }
}

impl ParametricYbMap {
    pub fn new<F>(name: impl Into<String>, carrier: Carrier, param_arity: usize, eval: F) -> Self
    where
        F: Fn(&[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement]) -> Result<(Point, Point)>
            + Send
            + Sync
            + 'static,
    {
        ParametricYbMap {
            name: name.into(),
            carrier,
            params: ParamLayout::new(param_arity),
            degree: DEFAULT_DEGREE,
            source: Source::Custom,
            note: None,
            eval: Arc::new(eval),
        }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn with_shared_params(mut self, shared: usize) -> Self {
        self.params = ParamLayout::with_shared(self.params.arity, shared);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
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

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn evaluate(
        &self,
        x: &[FieldElement],
        alpha: &[FieldElement],
        y: &[FieldElement],
        beta: &[FieldElement],
    ) -> Result<(Point, Point)> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::ArityMismatch(format!("{} expects points of dimension {d}", self.name)));
        }
        if alpha.len() != self.params.arity || beta.len() != self.params.arity {
            return Err(Error::ArityMismatch(format!(
                "{} expects {} parameters per factor",
                self.name, self.params.arity
            )));
        }
        (self.eval)(x, alpha, y, beta)
    }
}

/// A parametric ternary operation `mu_{alpha,beta}(a, b, c)`.
#[derive(Clone)]
pub struct ParametricTernarySystem {
    name: String,
    carrier: Carrier,
    params: ParamLayout,
    degree: u32,
    source: Source,
    eval: TernaryFn,
}

impl fmt::Debug for ParametricTernarySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricTernarySystem")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("params", &self.params)
            .field("source", &self.source)
            .finish()
    }
}

impl ParametricTernarySystem {
    pub fn new<F>(name: impl Into<String>, carrier: Carrier, param_arity: usize, eval: F) -> Self
    where
        F: Fn(&[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement], &[FieldElement]) -> Result<Point>
            + Send
            + Sync
            + 'static,
    {
        ParametricTernarySystem {
            name: name.into(),
            carrier,
            params: ParamLayout::new(param_arity),
            degree: DEFAULT_DEGREE,
            source: Source::Custom,
            eval: Arc::new(eval),
        }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn with_shared_params(mut self, shared: usize) -> Self {
        self.params = ParamLayout::with_shared(self.params.arity, shared);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn param_arity(&self) -> usize {
        self.params.arity
    }

    pub fn param_layout(&self) -> ParamLayout {
        self.params
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn evaluate(
        &self,
        alpha: &[FieldElement],
        beta: &[FieldElement],
        a: &[FieldElement],
        b: &[FieldElement],
        c: &[FieldElement],
    ) -> Result<Point> {
        let d = self.carrier.coords();
        if a.len() != d || b.len() != d || c.len() != d {
            return Err(Error::ArityMismatch(format!("{} expects points of dimension {d}", self.name)));
        }
        if alpha.len() != self.params.arity || beta.len() != self.params.arity {
            return Err(Error::ArityMismatch(format!(
                "{} expects {} parameters per factor",
                self.name, self.params.arity
            )));
        }
        (self.eval)(alpha, beta, a, b, c)
    }
}

/// A family `R(lambda)` on a quasigroup, with `phi(lambda, x) = lambda x`.
#[derive(Clone)]
pub struct DynamicalYbMap {
    name: String,
    quasigroup: Quasigroup,
    params: ParamLayout,
    degree: u32,
    eval: DynamicalFn,
}

impl fmt::Debug for DynamicalYbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DynamicalYbMap")
            .field("name", &self.name)
            .field("quasigroup", &self.quasigroup.name())
            .field("params", &self.params)
            .finish()
    }
}

impl DynamicalYbMap {
    /// `eval(lambda, x, alpha, y, beta) = (u, v)`.
    pub fn new<F>(name: impl Into<String>, quasigroup: Quasigroup, params: ParamLayout, eval: F) -> Self
    where
        F: Fn(
                &[FieldElement],
                &[FieldElement],
                &[FieldElement],
                &[FieldElement],
                &[FieldElement],
            ) -> Result<(Point, Point)>
            + Send
            + Sync
            + 'static,
    {
        DynamicalYbMap { name: name.into(), quasigroup, params, degree: DEFAULT_DEGREE, eval: Arc::new(eval) }
    }

    /// Treats a parametric map as a dynamical one that ignores `lambda`.
    pub fn constant(map: &ParametricYbMap, quasigroup: Quasigroup) -> Result<Self> {
        if map.carrier().coords() != quasigroup.carrier().coords() {
            return Err(Error::IncompatibleStructure(format!(
                "{} lives on {}, {} on {}",
                map.name(),
                map.carrier(),
                quasigroup.name(),
                quasigroup.carrier()
            )));
        }
        let m = map.clone();
        Ok(DynamicalYbMap::new(map.name(), quasigroup, map.param_layout(), move |_, x, a, y, b| m.evaluate(x, a, y, b))
            .with_degree(map.degree()))
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.quasigroup
    }

    pub fn param_layout(&self) -> ParamLayout {
        self.params
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn phi(&self, lambda: &[FieldElement], x: &[FieldElement]) -> Result<Point> {
        self.quasigroup.op(lambda, x)
    }

    pub fn evaluate(
        &self,
        lambda: &[FieldElement],
        x: &[FieldElement],
        alpha: &[FieldElement],
        y: &[FieldElement],
        beta: &[FieldElement],
    ) -> Result<(Point, Point)> {
        (self.eval)(lambda, x, alpha, y, beta)
    }
}
