//! Sampled verifiers for the defining identities.

use std::fmt;

use super::engine::{run_trials, CheckOptions, Outcome};
use super::objects::{DynamicalYbMap, ParametricTernarySystem, ParametricYbMap};
use super::report::{Failure, VerificationReport};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::quasigroup::{show, BuiltinQuasigroup, Point, Quasigroup};

type Triple = (Point, Point, Point);

fn outcome(inputs: Vec<(&str, String)>, lhs: &[Point], rhs: &[Point]) -> Outcome {
    if lhs == rhs {
        Outcome::Agree
    } else {
        let fmt = |ps: &[Point]| {
            let parts: Vec<String> = ps.iter().map(|p| show(p)).collect();
            format!("({})", parts.join(", "))
        };
        Outcome::Disagree(Failure::new(inputs, fmt(lhs), fmt(rhs)))
    }
}

/// Both sides of `R23 R13 R12 = R12 R13 R23` at one point; the rightmost
/// factor acts first and `R_ij` carries the parameters of factors `i` and `j`.
pub fn yb_sides(
    r: &ParametricYbMap,
    [x, y, z]: [&[FieldElement]; 3],
    [a, b, c]: [&[FieldElement]; 3],
) -> Result<(Triple, Triple)> {
    // R12, then R13, then R23
    let (x1, y1) = r.evaluate(x, a, y, b)?;
    let (x2, z1) = r.evaluate(&x1, a, z, c)?;
    let (y2, z2) = r.evaluate(&y1, b, &z1, c)?;
    // R23, then R13, then R12
    let (y3, z3) = r.evaluate(y, b, z, c)?;
    let (x3, z4) = r.evaluate(x, a, &z3, c)?;
    let (x4, y4) = r.evaluate(&x3, a, &y3, b)?;
    Ok(((x2, y2, z2), (x4, y4, z4)))
}

pub fn check_yb(r: &ParametricYbMap, cfg: &FieldConfig, opts: &CheckOptions) -> Result<VerificationReport> {
    let layout = r.param_layout();
    run_trials("yang-baxter equation", r.name(), cfg, opts, r.degree(), |s| {
        let (x, y, z) = (r.carrier().sample(s)?, r.carrier().sample(s)?, r.carrier().sample(s)?);
        let p = layout.sample(s, 3, opts.equal_params);
        let (lhs, rhs) = yb_sides(r, [&x, &y, &z], [&p[0], &p[1], &p[2]])?;
        Ok(outcome(
            vec![
                ("x", show(&x)),
                ("y", show(&y)),
                ("z", show(&z)),
                ("alpha", show(&p[0])),
                ("beta", show(&p[1])),
                ("gamma", show(&p[2])),
            ],
            &[lhs.0, lhs.1, lhs.2],
            &[rhs.0, rhs.1, rhs.2],
        ))
    })
}

/// Both sides of the dynamical YB equation with the shifted dynamical
/// parameters `phi(lambda, X^(i))` placed as in
/// `R23(l) R13(phi(l, X2)) R12(l) = R12(phi(l, X3)) R13(l) R23(phi(l, X1))`,
/// where `X^(i)` is the i-th component of the triple the factor acts on.
pub fn dynamical_yb_sides(
    r: &DynamicalYbMap,
    lambda: &[FieldElement],
    [u, v, w]: [&[FieldElement]; 3],
    [a, b, c]: [&[FieldElement]; 3],
) -> Result<(Triple, Triple)> {
    let (u1, v1) = r.evaluate(lambda, u, a, v, b)?;
    let shifted = r.phi(lambda, &v1)?;
    let (u2, w1) = r.evaluate(&shifted, &u1, a, w, c)?;
    let (v2, w2) = r.evaluate(lambda, &v1, b, &w1, c)?;

    let shifted = r.phi(lambda, u)?;
    let (v3, w3) = r.evaluate(&shifted, v, b, w, c)?;
    let (u3, w4) = r.evaluate(lambda, u, a, &w3, c)?;
    let shifted = r.phi(lambda, &w4)?;
    let (u4, v4) = r.evaluate(&shifted, &u3, a, &v3, b)?;
    Ok(((u2, v2, w2), (u4, v4, w4)))
}

pub fn check_dynamical_yb(r: &DynamicalYbMap, cfg: &FieldConfig, opts: &CheckOptions) -> Result<VerificationReport> {
    let carrier = r.quasigroup().carrier();
    let layout = r.param_layout();
    run_trials("dynamical yang-baxter equation", r.name(), cfg, opts, r.degree(), |s| {
        let lambda = carrier.sample(s)?;
        let (u, v, w) = (carrier.sample(s)?, carrier.sample(s)?, carrier.sample(s)?);
        let p = layout.sample(s, 3, opts.equal_params);
        let (lhs, rhs) = dynamical_yb_sides(r, &lambda, [&u, &v, &w], [&p[0], &p[1], &p[2]])?;
        Ok(outcome(
            vec![
                ("lambda", show(&lambda)),
                ("u", show(&u)),
                ("v", show(&v)),
                ("w", show(&w)),
                ("alpha", show(&p[0])),
                ("beta", show(&p[1])),
                ("gamma", show(&p[2])),
            ],
            &[lhs.0, lhs.1, lhs.2],
            &[rhs.0, rhs.1, rhs.2],
        ))
    })
}

/// Vertex values on the consistency cube: `w1`, `w2`, and the two routes to
/// each of `w3` and `w4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeValues {
    pub w1: Point,
    pub w2: Point,
    pub w3: (Point, Point),
    pub w4: (Point, Point),
}

impl CubeValues {
    pub fn consistent(&self) -> bool {
        self.w3.0 == self.w3.1 && self.w4.0 == self.w4.1
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cube_values(
    t: &ParametricTernarySystem,
    alpha: &[FieldElement],
    beta: &[FieldElement],
    gamma: &[FieldElement],
    a: &[FieldElement],
    b: &[FieldElement],
    c: &[FieldElement],
    d: &[FieldElement],
) -> Result<CubeValues> {
    let w1 = t.evaluate(alpha, beta, a, b, c)?;
    let w2 = t.evaluate(beta, gamma, b, c, d)?;
    let w4_via_w1 = t.evaluate(alpha, gamma, &w1, c, d)?;
    let w3_via_w1 = t.evaluate(beta, gamma, a, &w1, &w4_via_w1)?;
    let w3_via_w2 = t.evaluate(alpha, gamma, a, b, &w2)?;
    let w4_via_w2 = t.evaluate(alpha, beta, &w3_via_w2, &w2, d)?;
    Ok(CubeValues { w1, w2, w3: (w3_via_w1, w3_via_w2), w4: (w4_via_w2, w4_via_w1) })
}

pub fn check_3d_consistency(
    t: &ParametricTernarySystem,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    let layout = t.param_layout();
    let carrier = t.carrier();
    run_trials("3d consistency", t.name(), cfg, opts, t.degree(), |s| {
        let p = layout.sample(s, 3, opts.equal_params);
        let pts: Vec<Point> = (0..4).map(|_| carrier.sample(s)).collect::<Result<_>>()?;
        let cube = cube_values(t, &p[0], &p[1], &p[2], &pts[0], &pts[1], &pts[2], &pts[3])?;
        Ok(outcome(
            vec![
                ("alpha", show(&p[0])),
                ("beta", show(&p[1])),
                ("gamma", show(&p[2])),
                ("a", show(&pts[0])),
                ("b", show(&pts[1])),
                ("c", show(&pts[2])),
                ("d", show(&pts[3])),
            ],
            &[cube.w3.0, cube.w4.0],
            &[cube.w3.1, cube.w4.1],
        ))
    })
}

/// Symmetry conditions that let the dynamical parameter drop out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    /// `mu(l a, l b, l c) = l mu(a, b, c)` in the structure's operation.
    Homogeneous,
    /// `l mu(a, b, c) = mu(a/l, l b, c/l)`, on the division quasigroup.
    Division,
    /// `l + mu(a, b, c) = mu(a - l, l + b, c - l)`, on the subtraction loop.
    Loop,
    /// `l mu(a, b, c) = mu(a l^{-1}, l b, c l^{-1})` on an Abelian group.
    Abelian,
}

impl SymmetryKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "homogeneous" => SymmetryKind::Homogeneous,
            "division" => SymmetryKind::Division,
            "loop" => SymmetryKind::Loop,
            "abelian" => SymmetryKind::Abelian,
            _ => return Err(Error::InvalidArgument(format!("unknown symmetry kind `{s}`"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SymmetryKind::Homogeneous => "homogeneous",
            SymmetryKind::Division => "division",
            SymmetryKind::Loop => "loop",
            SymmetryKind::Abelian => "abelian",
        }
    }
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_same_carrier(coords: usize, name: &str, q: &Quasigroup) -> Result<()> {
    if coords != q.carrier().coords() {
        return Err(Error::IncompatibleStructure(format!(
            "{name} has points of dimension {coords}, {} lives on {}",
            q.name(),
            q.carrier()
        )));
    }
    Ok(())
}

fn symmetry_sides(
    t: &ParametricTernarySystem,
    kind: SymmetryKind,
    q: &Quasigroup,
    lambda: &[FieldElement],
    [alpha, beta]: [&[FieldElement]; 2],
    [a, b, c]: [&[FieldElement]; 3],
) -> Result<(Point, Point)> {
    let mu = t.evaluate(alpha, beta, a, b, c)?;
    match kind {
        SymmetryKind::Homogeneous => {
            let lhs = t.evaluate(alpha, beta, &q.op(lambda, a)?, &q.op(lambda, b)?, &q.op(lambda, c)?)?;
            Ok((lhs, q.op(lambda, &mu)?))
        }
        // On (F*, b/a) and (F, b-a): l*a is a/l resp. a-l, and l\b is l b resp. l+b.
        SymmetryKind::Division | SymmetryKind::Loop => {
            let lhs = t.evaluate(alpha, beta, &q.op(lambda, a)?, &q.ldiv(lambda, b)?, &q.op(lambda, c)?)?;
            Ok((lhs, q.ldiv(lambda, &mu)?))
        }
        SymmetryKind::Abelian => {
            let inv = q.group_inverse(lambda)?;
            let lhs = t.evaluate(alpha, beta, &q.op(a, &inv)?, &q.op(lambda, b)?, &q.op(c, &inv)?)?;
            Ok((lhs, q.op(lambda, &mu)?))
        }
    }
}

pub fn check_symmetry(
    t: &ParametricTernarySystem,
    kind: SymmetryKind,
    q: &Quasigroup,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    require_same_carrier(t.carrier().coords(), t.name(), q)?;
    let flags = q.flags();
    let compatible = match kind {
        SymmetryKind::Homogeneous => true,
        SymmetryKind::Division => q.builtin_kind() == Some(BuiltinQuasigroup::Division),
        SymmetryKind::Loop => q.builtin_kind() == Some(BuiltinQuasigroup::SubtractionLoop),
        SymmetryKind::Abelian => flags.is_group && flags.is_abelian,
    };
    if !compatible {
        return Err(Error::IncompatibleStructure(format!("symmetry kind `{kind}` does not apply to {}", q.name())));
    }
    let identity = format!("{kind} symmetry over {}", q.name());
    let layout = t.param_layout();
    run_trials(&identity, t.name(), cfg, opts, t.degree(), |s| {
        let carrier = q.carrier();
        let lambda = carrier.sample(s)?;
        let (a, b, c) = (carrier.sample(s)?, carrier.sample(s)?, carrier.sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let (lhs, rhs) = symmetry_sides(t, kind, q, &lambda, [&p[0], &p[1]], [&a, &b, &c])?;
        Ok(outcome(
            vec![
                ("lambda", show(&lambda)),
                ("alpha", show(&p[0])),
                ("beta", show(&p[1])),
                ("a", show(&a)),
                ("b", show(&b)),
                ("c", show(&c)),
            ],
            &[lhs],
            &[rhs],
        ))
    })
}

/// `v(x,y) * u(x,y) = x * y` in the quasigroup operation.
pub fn check_invariance(
    r: &ParametricYbMap,
    q: &Quasigroup,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    require_same_carrier(r.dim(), r.name(), q)?;
    let identity = format!("invariance v*u = x*y over {}", q.name());
    let layout = r.param_layout();
    run_trials(&identity, r.name(), cfg, opts, r.degree(), |s| {
        let (x, y) = (q.carrier().sample(s)?, q.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let (u, v) = r.evaluate(&x, &p[0], &y, &p[1])?;
        let lhs = q.op(&v, &u)?;
        let rhs = q.op(&x, &y)?;
        Ok(outcome(
            vec![("x", show(&x)), ("y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))],
            &[lhs],
            &[rhs],
        ))
    })
}

/// `R(R(x, y))` with the same parameters.
pub fn second_iterate(
    r: &ParametricYbMap,
    x: &[FieldElement],
    alpha: &[FieldElement],
    y: &[FieldElement],
    beta: &[FieldElement],
) -> Result<(Point, Point)> {
    let (u, v) = r.evaluate(x, alpha, y, beta)?;
    r.evaluate(&u, alpha, &v, beta)
}

/// Pass means `R o R = id` at every sample; Fail carries a witness.
pub fn check_involution(r: &ParametricYbMap, cfg: &FieldConfig, opts: &CheckOptions) -> Result<VerificationReport> {
    let layout = r.param_layout();
    run_trials("involution R o R = id", r.name(), cfg, opts, r.degree(), |s| {
        let (x, y) = (r.carrier().sample(s)?, r.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let (x2, y2) = second_iterate(r, &x, &p[0], &y, &p[1])?;
        Ok(outcome(
            vec![("x", show(&x)), ("y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))],
            &[x2, y2],
            &[x.clone(), y.clone()],
        ))
    })
}

/// Pointwise equality of two maps on the same carrier.
pub fn check_map_equality(
    left: &ParametricYbMap,
    right: &ParametricYbMap,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    if left.dim() != right.dim() || left.param_arity() != right.param_arity() {
        return Err(Error::IncompatibleStructure(format!(
            "{} and {} have different shapes",
            left.name(),
            right.name()
        )));
    }
    let identity = format!("pointwise equality with {}", right.name());
    let layout = left.param_layout();
    run_trials(&identity, left.name(), cfg, opts, left.degree().max(right.degree()), |s| {
        let (x, y) = (left.carrier().sample(s)?, left.carrier().sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let (u1, v1) = left.evaluate(&x, &p[0], &y, &p[1])?;
        let (u2, v2) = right.evaluate(&x, &p[0], &y, &p[1])?;
        Ok(outcome(
            vec![("x", show(&x)), ("y", show(&y)), ("alpha", show(&p[0])), ("beta", show(&p[1]))],
            &[u1, v1],
            &[u2, v2],
        ))
    })
}

/// Pointwise equality of two ternary systems on the same carrier.
pub fn check_ternary_equality(
    left: &ParametricTernarySystem,
    right: &ParametricTernarySystem,
    cfg: &FieldConfig,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    if left.carrier().coords() != right.carrier().coords() || left.param_arity() != right.param_arity() {
        return Err(Error::IncompatibleStructure(format!(
            "{} and {} have different shapes",
            left.name(),
            right.name()
        )));
    }
    let identity = format!("pointwise equality with {}", right.name());
    let layout = left.param_layout();
    run_trials(&identity, left.name(), cfg, opts, left.degree().max(right.degree()), |s| {
        let carrier = left.carrier();
        let (a, b, c) = (carrier.sample(s)?, carrier.sample(s)?, carrier.sample(s)?);
        let p = layout.sample(s, 2, opts.equal_params);
        let lhs = left.evaluate(&p[0], &p[1], &a, &b, &c)?;
        let rhs = right.evaluate(&p[0], &p[1], &a, &b, &c)?;
        Ok(outcome(
            vec![("alpha", show(&p[0])), ("beta", show(&p[1])), ("a", show(&a)), ("b", show(&b)), ("c", show(&c))],
            &[lhs],
            &[rhs],
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quasigroup::Carrier;
    use crate::yb::Verdict;

    const Q: Field = Field::Rational;

    fn q(n: i64) -> Point {
        vec![Q.int(n)]
    }

    fn adler() -> ParametricYbMap {
        ParametricYbMap::new("adler", Carrier::Scalars(1), 1, |x, a, y, b| {
            let t = (&a[0] - &b[0]).try_div(&(&x[0] + &y[0]))?;
            Ok((vec![&y[0] + &t], vec![&x[0] - &t]))
        })
    }

    fn dkdv() -> ParametricTernarySystem {
        ParametricTernarySystem::new("dkdv", Carrier::Scalars(1), 1, |a, b, x, y, z| {
            Ok(vec![&y[0] - &(&a[0] - &b[0]).try_div(&(&z[0] - &x[0]))?])
        })
    }

    fn cfg() -> FieldConfig {
        FieldConfig::default_prime(1)
    }

    fn opts() -> CheckOptions {
        CheckOptions::new(100)
    }

    #[test]
    fn adler_passes_yb_and_involution() {
        assert!(check_yb(&adler(), &cfg(), &opts()).unwrap().passed());
        assert!(check_involution(&adler(), &cfg(), &opts()).unwrap().passed());
        assert!(check_invariance(&adler(), &Quasigroup::builtin("additive").unwrap(), &cfg(), &opts())
            .unwrap()
            .passed());
    }

    /// Brute-force search for a point where the two sides differ.
    #[test]
    fn broken_map_fails_with_a_witness() {
        let broken =
            ParametricYbMap::new("broken", Carrier::Scalars(1), 1, |x, _, y, _| Ok((vec![&x[0] + &y[0]], x.to_vec())));
        let mut witness = None;
        'search: for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let (l, r) = yb_sides(&broken, [&q(x), &q(y), &q(z)], [&q(0), &q(0), &q(0)]).unwrap();
                    if l != r {
                        witness = Some((x, y, z));
                        break 'search;
                    }
                }
            }
        }
        assert!(witness.is_some());
        let r = check_yb(&broken, &cfg(), &opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.failures.is_empty() && r.failures[0].input("gamma").is_some());
        assert!(r.confidence.is_none());
    }

    #[test]
    fn worked_cube() {
        let c = cube_values(&dkdv(), &q(1), &q(2), &q(4), &q(0), &q(1), &q(2), &q(3)).unwrap();
        assert_eq!(c.w1, vec![Q.ratio(3, 2).unwrap()]);
        assert_eq!(c.w2, q(3));
        assert_eq!(c.w3, (q(2), q(2)));
        assert_eq!(c.w4, (q(4), q(4)));
        assert!(c.consistent());
    }

    #[test]
    fn linear_ternary_is_not_consistent() {
        let lin = ParametricTernarySystem::new("lin", Carrier::Scalars(1), 1, |a, b, x, y, z| {
            Ok(vec![&(&x[0] + &(&a[0] * &y[0])) + &(&b[0] * &z[0])])
        });
        assert_eq!(check_3d_consistency(&lin, &cfg(), &opts()).unwrap().verdict, Verdict::Fail);
        assert!(check_3d_consistency(&dkdv(), &cfg(), &opts()).unwrap().passed());
    }

    #[test]
    fn dkdv_symmetries() {
        for (kind, q) in [
            (SymmetryKind::Division, "division"),
            (SymmetryKind::Loop, "subtraction_loop"),
            (SymmetryKind::Homogeneous, "additive"),
        ] {
            let r = check_symmetry(&dkdv(), kind, &Quasigroup::builtin(q).unwrap(), &cfg(), &opts()).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
        }
        let r = check_symmetry(
            &dkdv(),
            SymmetryKind::Homogeneous,
            &Quasigroup::builtin("multiplicative").unwrap(),
            &cfg(),
            &opts(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn symmetry_kind_must_fit_structure() {
        let e =
            check_symmetry(&dkdv(), SymmetryKind::Abelian, &Quasigroup::builtin("division").unwrap(), &cfg(), &opts());
        assert!(matches!(e, Err(Error::IncompatibleStructure(_))));
        let e = check_symmetry(&dkdv(), SymmetryKind::Loop, &Quasigroup::builtin("additive").unwrap(), &cfg(), &opts());
        assert!(matches!(e, Err(Error::IncompatibleStructure(_))));
        let e = check_invariance(&adler(), &Quasigroup::builtin("matrix_reversed").unwrap(), &cfg(), &opts());
        assert!(matches!(e, Err(Error::IncompatibleStructure(_))));
    }

    #[test]
    fn lifted_constant_map_satisfies_dynamical_equation() {
        let d = DynamicalYbMap::constant(&adler(), Quasigroup::builtin("additive").unwrap()).unwrap();
        assert!(check_dynamical_yb(&d, &cfg(), &opts()).unwrap().passed());
    }

    #[test]
    fn equal_parameters_reduce_adler_to_swap() {
        let o = opts().with_equal_params(true);
        let swap = ParametricYbMap::new("swap", Carrier::Scalars(1), 1, |x, _, y, _| Ok((y.to_vec(), x.to_vec())));
        assert!(check_map_equality(&adler(), &swap, &cfg(), &o).unwrap().passed());
        assert_eq!(check_map_equality(&adler(), &swap, &cfg(), &opts()).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn pass_reports_carry_the_bound() {
        let r = check_yb(&adler().with_degree(12), &cfg(), &opts()).unwrap();
        let c = r.confidence.unwrap();
        assert_eq!(c.degree_estimate, 12);
        assert!(c.per_sample_bound <= 12.0 / 2305843009213693951.0 * 1.0000001);
        let exact = check_yb(&adler(), &FieldConfig::rational(1), &CheckOptions::new(20)).unwrap();
        assert!(exact.passed() && exact.confidence.is_none());
    }
}
