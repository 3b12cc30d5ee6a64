//! Maps from ternary systems and ternary systems from maps.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::quasigroup::{BuiltinQuasigroup, Point, Quasigroup};
use crate::yb::{
    check_3d_consistency, check_invariance, check_map_equality, check_symmetry, check_ternary_equality, CheckOptions,
    DynamicalYbMap, ParametricTernarySystem, ParametricYbMap, Source, SymmetryKind, VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    Group,
    AbelianAdditive,
    Division,
    Loop,
    AbelianGeneral,
    ShibukawaDynamical,
    Inverse,
}

impl ConstructionKind {
    /// Kinds accepted by [`yb_from_ternary`].
    pub const MAP_KINDS: [ConstructionKind; 5] = [
        ConstructionKind::Group,
        ConstructionKind::AbelianAdditive,
        ConstructionKind::Division,
        ConstructionKind::Loop,
        ConstructionKind::AbelianGeneral,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "group" => ConstructionKind::Group,
            "abelian_additive" => ConstructionKind::AbelianAdditive,
            "division" => ConstructionKind::Division,
            "loop" => ConstructionKind::Loop,
            "abelian_general" => ConstructionKind::AbelianGeneral,
            "shibukawa_dynamical" | "dynamical" => ConstructionKind::ShibukawaDynamical,
            "inverse" => ConstructionKind::Inverse,
            _ => return Err(Error::InvalidArgument(format!("unknown construction kind `{s}`"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Group => "group",
            ConstructionKind::AbelianAdditive => "abelian_additive",
            ConstructionKind::Division => "division",
            ConstructionKind::Loop => "loop",
            ConstructionKind::AbelianGeneral => "abelian_general",
            ConstructionKind::ShibukawaDynamical => "shibukawa_dynamical",
            ConstructionKind::Inverse => "inverse",
        }
    }

    /// The structure used when the caller names none.
    pub fn default_quasigroup(self) -> Quasigroup {
        let b = match self {
            ConstructionKind::Group | ConstructionKind::AbelianGeneral | ConstructionKind::ShibukawaDynamical => {
                BuiltinQuasigroup::Multiplicative
            }
            ConstructionKind::AbelianAdditive => BuiltinQuasigroup::Additive,
            ConstructionKind::Division | ConstructionKind::Inverse => BuiltinQuasigroup::Division,
            ConstructionKind::Loop => BuiltinQuasigroup::SubtractionLoop,
        };
        Quasigroup::from_builtin(b)
    }

    /// The kind whose construction quasigroup is `q`; used to rebuild a map
    /// from the ternary that the inverse construction produced over `q`.
    pub fn for_quasigroup(q: &Quasigroup) -> Result<Self> {
        Ok(match q.builtin_kind() {
            Some(BuiltinQuasigroup::Additive) => ConstructionKind::AbelianAdditive,
            Some(BuiltinQuasigroup::Multiplicative) | Some(BuiltinQuasigroup::MatrixReversed(_)) => {
                ConstructionKind::Group
            }
            Some(BuiltinQuasigroup::Division) => ConstructionKind::Division,
            Some(BuiltinQuasigroup::SubtractionLoop) => ConstructionKind::Loop,
            None if q.flags().is_group => ConstructionKind::Group,
            None => {
                return Err(Error::IncompatibleStructure(format!("no construction kind is known for {}", q.name())))
            }
        })
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeStatus {
    /// Every precondition passed.
    Verified,
    /// Built on request although a precondition did not pass.
    Unsupported,
    /// Preconditions were not run.
    Unchecked,
}

#[derive(Clone, Debug)]
pub struct ConstructionRecipe {
    pub kind: ConstructionKind,
    pub quasigroup: String,
    pub source: String,
    pub preconditions: Vec<VerificationReport>,
    pub status: RecipeStatus,
}

impl ConstructionRecipe {
    fn new(kind: ConstructionKind, q: &Quasigroup, source: &str) -> Self {
        ConstructionRecipe {
            kind,
            quasigroup: q.name().to_string(),
            source: source.to_string(),
            preconditions: Vec::new(),
            status: RecipeStatus::Unchecked,
        }
    }

    /// Records the reports, then fails in strict mode if any did not pass.
    fn settle(&mut self, reports: Vec<VerificationReport>, strict: bool) -> Result<()> {
        let bad = reports.iter().find(|r| !r.passed()).cloned();
        self.preconditions = reports;
        match bad {
            Some(r) if strict => Err(Error::PreconditionFailed(Box::new(r))),
            Some(_) => {
                self.status = RecipeStatus::Unsupported;
                Ok(())
            }
            None => {
                self.status = RecipeStatus::Verified;
                Ok(())
            }
        }
    }
}

/// How preconditions are handled.
#[derive(Clone, Debug)]
pub enum Preconditions {
    /// Run the sampled checks; fail on anything but Pass when `strict`.
    Check {
        cfg: FieldConfig,
        opts: CheckOptions,
        strict: bool,
    },
    Skip,
}

impl Preconditions {
    pub fn strict(cfg: FieldConfig, opts: CheckOptions) -> Self {
        Preconditions::Check { cfg, opts, strict: true }
    }

    pub fn lenient(cfg: FieldConfig, opts: CheckOptions) -> Self {
        Preconditions::Check { cfg, opts, strict: false }
    }
}

/// The quasigroup whose operation and division build the map for `kind`
/// from the structure `q` the symmetry lives on.
pub fn construction_quasigroup(kind: ConstructionKind, q: &Quasigroup) -> Result<Quasigroup> {
    let incompatible =
        || Error::IncompatibleStructure(format!("construction kind `{kind}` does not apply to {}", q.name()));
    match kind {
        ConstructionKind::Group => {
            if q.flags().is_group {
                Ok(q.clone())
            } else {
                Err(incompatible())
            }
        }
        ConstructionKind::AbelianAdditive => match q.builtin_kind() {
            Some(BuiltinQuasigroup::Additive) => Ok(q.clone()),
            _ => Err(incompatible()),
        },
        ConstructionKind::Division => match q.builtin_kind() {
            Some(BuiltinQuasigroup::Division) => Ok(q.clone()),
            Some(BuiltinQuasigroup::Multiplicative) => Quasigroup::reversed_division(q),
            _ => Err(incompatible()),
        },
        ConstructionKind::Loop => match q.builtin_kind() {
            Some(BuiltinQuasigroup::SubtractionLoop) => Ok(q.clone()),
            Some(BuiltinQuasigroup::Additive) => Quasigroup::reversed_division(q),
            _ => Err(incompatible()),
        },
        ConstructionKind::AbelianGeneral => {
            let f = q.flags();
            if f.is_group && f.is_abelian {
                Quasigroup::reversed_division(q)
            } else {
                Err(incompatible())
            }
        }
        ConstructionKind::ShibukawaDynamical | ConstructionKind::Inverse => {
            Err(Error::InvalidArgument(format!("`{kind}` is not a map-from-ternary kind")))
        }
    }
}

/// The structure and symmetry kind that must hold for `kind`.
pub fn required_symmetry(kind: ConstructionKind, q: &Quasigroup) -> Result<(SymmetryKind, Quasigroup)> {
    let p = construction_quasigroup(kind, q)?;
    Ok(match kind {
        ConstructionKind::Group | ConstructionKind::AbelianAdditive => (SymmetryKind::Homogeneous, p),
        ConstructionKind::Division => (SymmetryKind::Division, p),
        ConstructionKind::Loop => (SymmetryKind::Loop, p),
        _ => (SymmetryKind::Abelian, q.clone()),
    })
}

fn check_compatible_carrier(coords: usize, name: &str, q: &Quasigroup) -> Result<()> {
    if coords != q.carrier().coords() {
        return Err(Error::IncompatibleStructure(format!(
            "{name} has points of dimension {coords}, {} lives on {}",
            q.name(),
            q.carrier()
        )));
    }
    Ok(())
}

/// `R(x, y) = (m \ c, e \ m)` with `c = x*y` and `m = mu(e, x, c)`, all in the
/// construction quasigroup. This single formula covers every map kind once the
/// right quasigroup is chosen (e.g. the division quasigroup gives
/// `((y/x) m, m)` with `m = mu(1, x, y/x)`).
pub fn yb_from_ternary(
    t: &ParametricTernarySystem,
    kind: ConstructionKind,
    q: &Quasigroup,
    pre: &Preconditions,
) -> Result<ParametricYbMap> {
    let p = construction_quasigroup(kind, q)?;
    check_compatible_carrier(t.carrier().coords(), t.name(), &p)?;
    let mut recipe = ConstructionRecipe::new(kind, &p, t.name());
    if let Preconditions::Check { cfg, opts, strict } = pre {
        let (sym, sq) = required_symmetry(kind, q)?;
        let reports = vec![check_3d_consistency(t, cfg, opts)?, check_symmetry(t, sym, &sq, cfg, opts)?];
        recipe.settle(reports, *strict)?;
    }
    let tt = t.clone();
    let pq = p.clone();
    let name = format!("{}[{}/{}]", t.name(), kind, p.name());
    Ok(ParametricYbMap::new(name, p.carrier(), t.param_arity(), move |x, a, y, b| {
        let e = pq
            .left_identity(x[0].field())
            .ok_or_else(|| Error::IncompatibleStructure(format!("{} has no left identity", pq.name())))?;
        let c = pq.op(x, y)?;
        let m = tt.evaluate(a, b, &e, x, &c)?;
        Ok((pq.ldiv(&m, &c)?, pq.ldiv(&e, &m)?))
    })
    .with_shared_params(t.param_layout().shared)
    .with_degree(t.degree().saturating_mul(2))
    .with_source(Source::Constructed(Box::new(recipe))))
}

pub type PointFn = Arc<dyn Fn(&[FieldElement]) -> Result<Point> + Send + Sync>;

/// An invertible relabelling of the carrier.
#[derive(Clone)]
pub struct Bijection {
    pub forward: PointFn,
    pub inverse: PointFn,
}

impl Bijection {
    pub fn identity() -> Self {
        let id: PointFn = Arc::new(|p| Ok(p.to_vec()));
        Bijection { forward: id.clone(), inverse: id }
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Bijection")
    }
}

/// The dynamical map with
/// `xi_l(x)(y) = l \ pi^{-1}(mu(pi(l), pi(lx), pi((lx)y)))` and
/// `eta_l(y)(x) = (l xi_l(x)(y)) \ ((lx)y)`, returned as `(eta, xi)`.
/// Strict preconditions only check 3D consistency of `t`.
pub fn dynamical_yb_from_ternary(
    t: &ParametricTernarySystem,
    q: &Quasigroup,
    pi: Option<Bijection>,
    pre: &Preconditions,
) -> Result<DynamicalYbMap> {
    check_compatible_carrier(t.carrier().coords(), t.name(), q)?;
    if let Preconditions::Check { cfg, opts, strict: true } = pre {
        let r = check_3d_consistency(t, cfg, opts)?;
        if !r.passed() {
            return Err(Error::PreconditionFailed(Box::new(r)));
        }
    }
    let pi = pi.unwrap_or_else(Bijection::identity);
    let tt = t.clone();
    let qq = q.clone();
    let name = format!("{}[{}/{}]", t.name(), ConstructionKind::ShibukawaDynamical, q.name());
    Ok(DynamicalYbMap::new(name, q.clone(), t.param_layout(), move |l, x, a, y, b| {
        let lx = qq.op(l, x)?;
        let lxy = qq.op(&lx, y)?;
        let m = tt.evaluate(a, b, &(pi.forward)(l)?, &(pi.forward)(&lx)?, &(pi.forward)(&lxy)?)?;
        let xi = qq.ldiv(l, &(pi.inverse)(&m)?)?;
        let eta = qq.ldiv(&qq.op(l, &xi)?, &lxy)?;
        Ok((eta, xi))
    })
    .with_degree(t.degree().saturating_mul(3)))
}

/// `mu(a, b, c) = a * v(a \ b, b \ c)` in `q`, with `v` the second component
/// of `r`. Strict preconditions check `v * u = x * y`.
pub fn ternary_from_yb(r: &ParametricYbMap, q: &Quasigroup, pre: &Preconditions) -> Result<ParametricTernarySystem> {
    check_compatible_carrier(r.dim(), r.name(), q)?;
    let mut recipe = ConstructionRecipe::new(ConstructionKind::Inverse, q, r.name());
    if let Preconditions::Check { cfg, opts, strict } = pre {
        recipe.settle(vec![check_invariance(r, q, cfg, opts)?], *strict)?;
    }
    let rr = r.clone();
    let qq = q.clone();
    let name = format!("{}[inverse/{}]", r.name(), q.name());
    Ok(ParametricTernarySystem::new(name, q.carrier(), r.param_arity(), move |alpha, beta, a, b, c| {
        let (_, v) = rr.evaluate(&qq.ldiv(a, b)?, alpha, &qq.ldiv(b, c)?, beta)?;
        qq.op(a, &v)
    })
    .with_shared_params(r.param_layout().shared)
    .with_degree(r.degree().saturating_mul(2))
    .with_source(Source::Constructed(Box::new(recipe))))
}

/// `mu(a, b, c) = a * xi_a(a \ b)(b \ c)` in the map's own quasigroup, for
/// maps whose `xi` may depend on `lambda`. No precondition is checked.
pub fn ternary_from_dynamical(d: &DynamicalYbMap) -> ParametricTernarySystem {
    let dd = d.clone();
    let q = d.quasigroup().clone();
    let layout = d.param_layout();
    let name = format!("{}[inverse/{}]", d.name(), q.name());
    ParametricTernarySystem::new(name, q.carrier(), layout.arity, move |alpha, beta, a, b, c| {
        let (_, xi) = dd.evaluate(a, &q.ldiv(a, b)?, alpha, &q.ldiv(b, c)?, beta)?;
        q.op(a, &xi)
    })
    .with_shared_params(layout.shared)
    .with_degree(d.degree().saturating_mul(2))
}

/// The object a round trip starts from.
#[derive(Clone, Debug)]
pub enum RoundTrip {
    /// ternary -> map (by `kind`) -> ternary (inverse over the construction quasigroup).
    Ternary(ParametricTernarySystem, ConstructionKind),
    /// map -> ternary (inverse over `q`) -> map (by the kind matching `q`).
    Map(ParametricYbMap),
}

/// Pointwise comparison of the start object with its image after both
/// constructions. Preconditions are not enforced on the intermediate steps.
pub fn roundtrip_check(
    start: &RoundTrip,
    q: &Quasigroup,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    match start {
        RoundTrip::Ternary(t, kind) => {
            let map = yb_from_ternary(t, *kind, q, &Preconditions::Skip)?;
            let p = construction_quasigroup(*kind, q)?;
            let back = ternary_from_yb(&map, &p, &Preconditions::Skip)?;
            check_ternary_equality(&back, t, cfg, opts)
        }
        RoundTrip::Map(r) => {
            let kind = ConstructionKind::for_quasigroup(q)?;
            let t = ternary_from_yb(r, q, &Preconditions::Skip)?;
            let back = yb_from_ternary(&t, kind, q, &Preconditions::Skip)?;
            check_map_equality(&back, r, cfg, opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quasigroup::Carrier;
    use crate::yb::{check_dynamical_yb, check_yb, Verdict};

    const Q: Field = Field::Rational;

    fn dkdv() -> ParametricTernarySystem {
        ParametricTernarySystem::new("dkdv", Carrier::Scalars(1), 1, |a, b, x, y, z| {
            Ok(vec![&y[0] - &(&a[0] - &b[0]).try_div(&(&z[0] - &x[0]))?])
        })
    }

    fn sum_ternary() -> ParametricTernarySystem {
        ParametricTernarySystem::new("sum", Carrier::Scalars(1), 1, |_, _, x, y, z| Ok(vec![&(&x[0] + &y[0]) + &z[0]]))
    }

    fn qb(name: &str) -> Quasigroup {
        Quasigroup::builtin(name).unwrap()
    }

    fn opts() -> CheckOptions {
        CheckOptions::new(60)
    }

    #[test]
    fn dkdv_additive_gives_adler_at_a_point() {
        let r =
            yb_from_ternary(&dkdv(), ConstructionKind::AbelianAdditive, &qb("additive"), &Preconditions::Skip).unwrap();
        // Adler at alpha=3, beta=1, (x,y)=(1,1): t = 2/2 = 1 -> (2, 0)
        let (u, v) = r.evaluate(&[Q.int(1)], &[Q.int(3)], &[Q.int(1)], &[Q.int(1)]).unwrap();
        assert_eq!((u, v), (vec![Q.int(2)], vec![Q.int(0)]));
    }

    #[test]
    fn strict_mode_rejects_broken_ternary() {
        let cfg = FieldConfig::default_prime(1);
        let err = yb_from_ternary(
            &sum_ternary(),
            ConstructionKind::AbelianAdditive,
            &qb("additive"),
            &Preconditions::strict(cfg.clone(), opts()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
        let r = yb_from_ternary(
            &sum_ternary(),
            ConstructionKind::AbelianAdditive,
            &qb("additive"),
            &Preconditions::lenient(cfg, opts()),
        )
        .unwrap();
        match r.source() {
            Source::Constructed(rec) => assert_eq!(rec.status, RecipeStatus::Unsupported),
            s => panic!("unexpected source {s}"),
        }
    }

    #[test]
    fn kinds_reject_wrong_structures() {
        assert!(construction_quasigroup(ConstructionKind::Division, &qb("additive")).is_err());
        assert!(construction_quasigroup(ConstructionKind::Group, &qb("division")).is_err());
        assert!(construction_quasigroup(ConstructionKind::Loop, &qb("additive")).is_ok());
        assert!(construction_quasigroup(ConstructionKind::AbelianGeneral, &qb("matrix_reversed")).is_err());
    }

    #[test]
    fn dkdv_dynamical_closed_form() {
        let d = dynamical_yb_from_ternary(&dkdv(), &qb("multiplicative"), None, &Preconditions::Skip).unwrap();
        // xi = x - (a-b)/(l^2 (xy-1)) at l=2, x=3, y=1, a=5, b=1: 3 - 4/(4*2) = 5/2
        let (_, xi) = d.evaluate(&[Q.int(2)], &[Q.int(3)], &[Q.int(5)], &[Q.int(1)], &[Q.int(1)]).unwrap();
        assert_eq!(xi, vec![Q.ratio(5, 2).unwrap()]);
    }

    #[test]
    fn dynamical_iff_on_dkdv_and_sum() {
        let cfg = FieldConfig::default_prime(3);
        let good = dynamical_yb_from_ternary(&dkdv(), &qb("multiplicative"), None, &Preconditions::Skip).unwrap();
        assert_eq!(check_dynamical_yb(&good, &cfg, &opts()).unwrap().verdict, Verdict::Pass);
        let bad = dynamical_yb_from_ternary(&sum_ternary(), &qb("additive"), None, &Preconditions::Skip).unwrap();
        assert_eq!(check_dynamical_yb(&bad, &cfg, &opts()).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn strict_dynamical_rejects_broken_ternary() {
        let pre = Preconditions::strict(FieldConfig::default_prime(1), opts());
        let err = dynamical_yb_from_ternary(&sum_ternary(), &qb("additive"), None, &pre).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn dkdv_loop_map_is_yb_and_round_trips() {
        let cfg = FieldConfig::default_prime(2);
        let q = qb("subtraction_loop");
        let r =
            yb_from_ternary(&dkdv(), ConstructionKind::Loop, &q, &Preconditions::strict(cfg.clone(), opts())).unwrap();
        assert!(check_yb(&r, &cfg, &opts()).unwrap().passed());
        let rt = roundtrip_check(&RoundTrip::Map(r), &q, &cfg, &opts()).unwrap();
        assert!(rt.passed(), "{}", rt.summary_line());
        let rt = roundtrip_check(&RoundTrip::Ternary(dkdv(), ConstructionKind::Loop), &q, &cfg, &opts()).unwrap();
        assert!(rt.passed(), "{}", rt.summary_line());
    }

    #[test]
    fn inverse_strict_needs_invariance() {
        let swap_plus =
            ParametricYbMap::new("shift", Carrier::Scalars(1), 1, |x, _, y, _| Ok((vec![&y[0] + &x[0]], x.to_vec())));
        let pre = Preconditions::strict(FieldConfig::default_prime(1), opts());
        let err = ternary_from_yb(&swap_plus, &qb("additive"), &pre).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }
}
