//! Named maps, ternary systems and Lax pairs with the verdicts each one is
//! expected to get.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldElement};
use crate::glmatrix::{gl_lax, gl_ternary, gl_yb_map, CommutingFamily};
use crate::lax::{check_refactorization, check_strongness, LaxMatrix};
use crate::matrix::SquareMatrix;
use crate::quasigroup::{BuiltinQuasigroup, Carrier, Quasigroup};
use crate::reduce::case_one_map;
use crate::yb::{
    check_3d_consistency, check_invariance, check_involution, check_symmetry, check_yb, CheckOptions,
    ParametricTernarySystem, ParametricYbMap, Source, SymmetryKind, Verdict, VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    YbMap,
    Ternary,
    Lax,
    GlMap,
    GlTernary,
}

impl EntryKind {
    pub fn name(self) -> &'static str {
        match self {
            EntryKind::YbMap => "ybmap",
            EntryKind::Ternary => "ternary",
            EntryKind::Lax => "lax",
            EntryKind::GlMap => "glmap",
            EntryKind::GlTernary => "glternary",
        }
    }
}

#[derive(Clone, Debug)]
pub enum EntryObject {
    Map(ParametricYbMap),
    Ternary(ParametricTernarySystem),
    /// A Lax matrix together with the map it refactorizes.
    Lax {
        lax: LaxMatrix,
        map: ParametricYbMap,
    },
}

/// One expected property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Yb,
    Consistency3d,
    Symmetry(SymmetryKind, BuiltinQuasigroup),
    Invariance(BuiltinQuasigroup),
    /// `true`: an involution; `false`: expected to fail `R o R = id`.
    Involution(bool),
    Refactorization,
    Strongness,
}

impl Check {
    pub fn expected(self) -> Verdict {
        match self {
            Check::Involution(false) => Verdict::Fail,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Yb => f.write_str("yb"),
            Check::Consistency3d => f.write_str("3d"),
            Check::Symmetry(k, q) => write!(f, "symmetry:{k}/{q}"),
            Check::Invariance(q) => write!(f, "invariance/{q}"),
            Check::Involution(true) => f.write_str("involution:yes"),
            Check::Involution(false) => f.write_str("involution:no"),
            Check::Refactorization => f.write_str("refactorization"),
            Check::Strongness => f.write_str("strongness"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub object: EntryObject,
    pub contexts: Vec<BuiltinQuasigroup>,
    pub checks: Vec<Check>,
    /// Short description shown beside verdicts.
    pub anchor: &'static str,
    /// DSL fixture with the same closed form, relative to the crate root.
    pub fixture: Option<&'static str>,
}

impl CatalogEntry {
    pub fn param_arity(&self) -> usize {
        match &self.object {
            EntryObject::Map(m) => m.param_arity(),
            EntryObject::Ternary(t) => t.param_arity(),
            EntryObject::Lax { lax, .. } => lax.param_arity(),
        }
    }

    pub fn map(&self) -> Option<&ParametricYbMap> {
        match &self.object {
            EntryObject::Map(m) => Some(m),
            EntryObject::Lax { map, .. } => Some(map),
            EntryObject::Ternary(_) => None,
        }
    }

    pub fn ternary(&self) -> Option<&ParametricTernarySystem> {
        match &self.object {
            EntryObject::Ternary(t) => Some(t),
            _ => None,
        }
    }

    pub fn lax(&self) -> Option<(&LaxMatrix, &ParametricYbMap)> {
        match &self.object {
            EntryObject::Lax { lax, map } => Some((lax, map)),
            _ => None,
        }
    }

    /// `Some(true)`/`Some(false)` when an involution expectation is recorded.
    pub fn involution(&self) -> Option<bool> {
        self.checks.iter().find_map(|c| match c {
            Check::Involution(b) => Some(*b),
            _ => None,
        })
    }

    pub fn flags(&self) -> String {
        let parts: Vec<String> = self.checks.iter().map(|c| c.to_string()).collect();
        parts.join(", ")
    }
}

type Fe = FieldElement;

fn one(p: &[Fe]) -> &Fe {
    &p[0]
}

fn map1(
    name: &str,
    carrier: Carrier,
    arity: usize,
    degree: u32,
    f: impl Fn(&Fe, &[Fe], &Fe, &[Fe]) -> Result<(Fe, Fe)> + Send + Sync + 'static,
) -> ParametricYbMap {
    ParametricYbMap::new(name, carrier, arity, move |x, a, y, b| {
        let (u, v) = f(one(x), a, one(y), b)?;
        Ok((vec![u], vec![v]))
    })
    .with_degree(degree)
    .with_source(Source::Catalog)
}

fn ternary1(
    name: &str,
    arity: usize,
    degree: u32,
    f: impl Fn(&[Fe], &[Fe], &Fe, &Fe, &Fe) -> Result<Fe> + Send + Sync + 'static,
) -> ParametricTernarySystem {
    ParametricTernarySystem::new(name, Carrier::Scalars(1), arity, move |al, be, a, b, c| {
        Ok(vec![f(al, be, one(a), one(b), one(c))?])
    })
    .with_degree(degree)
    .with_source(Source::Catalog)
}

pub fn adler() -> ParametricYbMap {
    map1("adler", Carrier::Scalars(1), 1, 12, |x, a, y, b| {
        let t = (&a[0] - &b[0]).try_div(&(x + y))?;
        Ok((y + &t, x - &t))
    })
}

pub fn h2() -> ParametricYbMap {
    map1("h2", Carrier::NonZero(1), 1, 24, |x, a, y, b| {
        let (a, b) = (&a[0], &b[0]);
        let xy = x * y;
        let p = &(&(a * &xy) + &(&(b - a) * x)) - b;
        let q = &(&(b * &xy) + &(&(a - b) * y)) - a;
        Ok(((y * &p).try_div(&q)?, (x * &q).try_div(&p)?))
    })
}

pub fn f4() -> ParametricYbMap {
    map1("f4", Carrier::NonZero(1), 1, 12, |x, a, y, b| {
        let k = &x.one_like() + &(&a[0] - &b[0]).try_div(&(x - y))?;
        Ok((y * &k, x * &k))
    })
}

pub fn f5() -> ParametricYbMap {
    map1("f5", Carrier::Scalars(1), 1, 12, |x, a, y, b| {
        let t = (&a[0] - &b[0]).try_div(&(x - y))?;
        Ok((y + &t, x + &t))
    })
}

pub fn q1_map() -> ParametricYbMap {
    map1("q1_map", Carrier::Scalars(1), 1, 18, |x, a, y, b| {
        let (a, b) = (&a[0], &b[0]);
        let s = x + y;
        let d = &(b * x) + &(a * y);
        Ok(((&(a * y) * &s).try_div(&d)?, (&(b * x) * &s).try_div(&d)?))
    })
}

/// `y(b1 x + a2 y)/(a1 x + b2 y)`, `x(b1 x + a2 y)/(a1 x + b2 y)`.
pub fn fourparam() -> ParametricYbMap {
    map1("fourparam", Carrier::NonZero(1), 2, 18, |x, a, y, b| {
        let k = (&(&b[0] * x) + &(&a[1] * y)).try_div(&(&(&a[0] * x) + &(&b[1] * y)))?;
        Ok((y * &k, x * &k))
    })
}

pub fn fourparam_involution() -> ParametricYbMap {
    map1("fourparam_involution", Carrier::NonZero(1), 2, 18, |x, a, y, b| {
        let xy = x * y;
        let p = &a[0] + &(&b[1] * &xy);
        let q = &b[0] + &(&a[1] * &xy);
        Ok(((y * &p).try_div(&q)?, (x * &q).try_div(&p)?))
    })
}

/// Parameters per factor are `(a, r)`; `r` is tied across factors.
pub fn mkdv_toda_homotopy() -> ParametricYbMap {
    map1("mkdv_toda_homotopy", Carrier::NonZero(1), 2, 24, |x, a, y, b| {
        let (al, be, r) = (&a[0], &b[0], &a[1]);
        let num = &(&(be - r) * x) + &(&(al + r) * y);
        let den = &(&(al - r) * x) + &(&(be + r) * y);
        let k = num.try_div(&den)?;
        Ok((y * &k, x * &k))
    })
    .with_shared_params(1)
}

pub fn q1_ternary() -> ParametricTernarySystem {
    ternary1("q1_ternary", 1, 12, |al, be, a, b, c| {
        let (al, be) = (&al[0], &be[0]);
        let (bc, ab) = (b - c, a - b);
        let num = &(&(al * a) * &bc) + &(&(be * c) * &ab);
        let den = &(al * &bc) + &(be * &ab);
        num.try_div(&den)
    })
}

pub fn dkdv_ternary() -> ParametricTernarySystem {
    ternary1("dkdv_ternary", 1, 8, |al, be, a, b, c| Ok(b - &(&al[0] - &be[0]).try_div(&(c - a))?))
}

/// `b(b1 a + a2 c)/(a1 a + b2 c)`.
pub fn fourparam_ternary() -> ParametricTernarySystem {
    ternary1("fourparam_ternary", 2, 12, |al, be, a, b, c| {
        (b * &(&(&be[0] * a) + &(&al[1] * c))).try_div(&(&(&al[0] * a) + &(&be[1] * c)))
    })
}

/// `w = b((b-r)a + (a+r)c)/((a-r)a + (b+r)c)` with parameters `(a, r)`.
pub fn homotopy_ternary() -> ParametricTernarySystem {
    ternary1("homotopy_ternary", 2, 16, |al, be, a, b, c| {
        let (p, q, r) = (&al[0], &be[0], &al[1]);
        (b * &(&(&(q - r) * a) + &(&(p + r) * c))).try_div(&(&(&(p - r) * a) + &(&(q + r) * c)))
    })
    .with_shared_params(1)
}

fn two_by_two_lax(name: &str, split: fn(&[Fe]) -> (Fe, Fe), shared: usize) -> LaxMatrix {
    LaxMatrix::new(name, 2, Carrier::NonZero(1), 2, 1, move |x, a, z| {
        let (a1, a2) = split(a);
        let x = one(x);
        Ok(SquareMatrix::from_rows([[-(&a1 * z), x.clone()], [x.inv()?, -(&a2 * z)]]))
    })
    .with_shared_params(shared)
}

/// `[[-a1 zeta, x], [1/x, -a2 zeta]]`.
pub fn fourparam_lax() -> LaxMatrix {
    two_by_two_lax("fourparam_lax", |a| (a[0].clone(), a[1].clone()), 0)
}

/// The same matrix at `(a1, a2) = (a - r, a + r)`.
pub fn homotopy_lax() -> LaxMatrix {
    two_by_two_lax("homotopy_lax", |a| (&a[0] - &a[1], &a[0] + &a[1]), 1)
}

fn build() -> Vec<CatalogEntry> {
    use BuiltinQuasigroup::*;
    use Check::*;
    let (case1, case1_lax) = case_one_map();
    let diag = CommutingFamily::diagonal();
    let gl_map = gl_yb_map(&diag).expect("order 2").with_name("gl2_map");
    let gl_t = gl_ternary(&diag).expect("order 2").with_name("gl2_ternary");
    let gl_l = gl_lax(&diag).expect("order 2").with_name("gl2_lax");
    let map = |name, object, contexts, checks, anchor, fixture| CatalogEntry {
        name,
        kind: EntryKind::YbMap,
        object: EntryObject::Map(object),
        contexts,
        checks,
        anchor,
        fixture,
    };
    let ternary = |name, object, contexts, checks, anchor, fixture| CatalogEntry {
        name,
        kind: EntryKind::Ternary,
        object: EntryObject::Ternary(object),
        contexts,
        checks,
        anchor,
        fixture,
    };
    let lax = |name, lax, map, checks, anchor| CatalogEntry {
        name,
        kind: EntryKind::Lax,
        object: EntryObject::Lax { lax, map },
        contexts: vec![],
        checks,
        anchor,
        fixture: None,
    };
    vec![
        map(
            "adler",
            adler(),
            vec![Additive],
            vec![Yb, Invariance(Additive), Involution(true)],
            "Adler's map; dKdV ternary through the additive group",
            Some("fixtures/adler.yb"),
        ),
        map(
            "h2",
            h2(),
            vec![Multiplicative],
            vec![Yb, Invariance(Multiplicative), Involution(true)],
            "H_II; Q1 ternary through the multiplicative group",
            Some("fixtures/h2.yb"),
        ),
        map(
            "f4",
            f4(),
            vec![Division],
            vec![Yb, Invariance(Division), Involution(true)],
            "F_IV; dKdV ternary through the division quasigroup",
            Some("fixtures/f4.yb"),
        ),
        map(
            "f5",
            f5(),
            vec![SubtractionLoop],
            vec![Yb, Invariance(SubtractionLoop), Involution(true)],
            "F_V; dKdV ternary through the subtraction loop",
            Some("fixtures/f5.yb"),
        ),
        map(
            "q1_map",
            q1_map(),
            vec![Additive],
            vec![Yb, Invariance(Additive), Involution(true)],
            "Q1 ternary through the additive group",
            Some("fixtures/q1_map.yb"),
        ),
        map(
            "fourparam",
            fourparam(),
            vec![Division],
            vec![Yb, Invariance(Division), Involution(false)],
            "four-parameter map with strong 2x2 Lax matrix; not an involution",
            Some("fixtures/fourparam.yb"),
        ),
        map(
            "fourparam_involution",
            fourparam_involution(),
            vec![Multiplicative],
            vec![Yb, Invariance(Multiplicative), Involution(true)],
            "four-parameter involution; fourparam ternary through the multiplicative group",
            Some("fixtures/fourparam_involution.yb"),
        ),
        map(
            "mkdv_toda_homotopy",
            mkdv_toda_homotopy(),
            vec![Division],
            vec![Yb, Invariance(Division), Involution(false)],
            "fourparam at (a-r, a+r); r is a free constant, not a YB parameter",
            Some("fixtures/mkdv_toda_homotopy.yb"),
        ),
        map(
            "case1_map",
            case1.clone(),
            vec![],
            vec![Yb],
            "2-dimensional Case I map from the binomial Lax matrix",
            None,
        ),
        CatalogEntry {
            name: "gl2_map",
            kind: EntryKind::GlMap,
            object: EntryObject::Map(gl_map.clone()),
            contexts: vec![MatrixReversed(2)],
            checks: vec![Yb, Invariance(MatrixReversed(2))],
            anchor: "map on GL_2 x GL_2 from the diagonal commuting family",
            fixture: None,
        },
        ternary(
            "q1_ternary",
            q1_ternary(),
            vec![Additive, Multiplicative],
            vec![
                Consistency3d,
                Symmetry(SymmetryKind::Homogeneous, Additive),
                Symmetry(SymmetryKind::Homogeneous, Multiplicative),
            ],
            "Q1 equation as a ternary system",
            Some("fixtures/q1_ternary.yb"),
        ),
        ternary(
            "dkdv_ternary",
            dkdv_ternary(),
            vec![Additive, Division, SubtractionLoop],
            vec![
                Consistency3d,
                Symmetry(SymmetryKind::Homogeneous, Additive),
                Symmetry(SymmetryKind::Division, Division),
                Symmetry(SymmetryKind::Loop, SubtractionLoop),
            ],
            "discrete KdV as a ternary system",
            Some("fixtures/dkdv_ternary.yb"),
        ),
        ternary(
            "fourparam_ternary",
            fourparam_ternary(),
            vec![Division, Multiplicative],
            vec![
                Consistency3d,
                Symmetry(SymmetryKind::Division, Division),
                Symmetry(SymmetryKind::Homogeneous, Multiplicative),
            ],
            "ternary system of the four-parameter map over the division quasigroup",
            Some("fixtures/fourparam_ternary.yb"),
        ),
        ternary(
            "homotopy_ternary",
            homotopy_ternary(),
            vec![Division, Multiplicative],
            vec![
                Consistency3d,
                Symmetry(SymmetryKind::Division, Division),
                Symmetry(SymmetryKind::Homogeneous, Multiplicative),
            ],
            "MKdV/Toda homotopy ternary system",
            Some("fixtures/homotopy_ternary.yb"),
        ),
        CatalogEntry {
            name: "gl2_ternary",
            kind: EntryKind::GlTernary,
            object: EntryObject::Ternary(gl_t),
            contexts: vec![MatrixReversed(2)],
            checks: vec![Consistency3d],
            anchor: "ternary system on GL_2 induced by gl2_map",
            fixture: None,
        },
        lax(
            "fourparam_lax",
            fourparam_lax(),
            fourparam(),
            vec![Refactorization, Strongness],
            "[[-a1 z, x], [1/x, -a2 z]] for fourparam",
        ),
        lax(
            "homotopy_lax",
            homotopy_lax(),
            mkdv_toda_homotopy(),
            vec![Refactorization, Strongness],
            "fourparam_lax at (a-r, a+r) for mkdv_toda_homotopy",
        ),
        lax(
            "case1_lax",
            case1_lax,
            case1,
            vec![Refactorization, Strongness],
            "binomial Lax matrix L_bar - z K for case1_map",
        ),
        lax("gl2_lax", gl_l, gl_map, vec![Refactorization], "X - z K_a for gl2_map"),
    ]
}

pub fn list() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build)
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    list().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// A constructed map that should coincide with a catalog map.
#[derive(Clone, Copy, Debug)]
pub struct KnownConstruction {
    pub ternary: &'static str,
    pub kind: &'static str,
    pub quasigroup: BuiltinQuasigroup,
    pub map: &'static str,
}

/// A ternary system the inverse construction should reproduce.
#[derive(Clone, Copy, Debug)]
pub struct KnownInverse {
    pub map: &'static str,
    pub quasigroup: BuiltinQuasigroup,
    pub ternary: &'static str,
}

pub const KNOWN_CONSTRUCTIONS: &[KnownConstruction] = &[
    KnownConstruction {
        ternary: "q1_ternary",
        kind: "abelian_additive",
        quasigroup: BuiltinQuasigroup::Additive,
        map: "q1_map",
    },
    KnownConstruction {
        ternary: "q1_ternary",
        kind: "group",
        quasigroup: BuiltinQuasigroup::Multiplicative,
        map: "h2",
    },
    KnownConstruction {
        ternary: "dkdv_ternary",
        kind: "abelian_additive",
        quasigroup: BuiltinQuasigroup::Additive,
        map: "adler",
    },
    KnownConstruction { ternary: "dkdv_ternary", kind: "division", quasigroup: BuiltinQuasigroup::Division, map: "f4" },
    KnownConstruction {
        ternary: "dkdv_ternary",
        kind: "loop",
        quasigroup: BuiltinQuasigroup::SubtractionLoop,
        map: "f5",
    },
    KnownConstruction {
        ternary: "fourparam_ternary",
        kind: "division",
        quasigroup: BuiltinQuasigroup::Division,
        map: "fourparam",
    },
    KnownConstruction {
        ternary: "fourparam_ternary",
        kind: "group",
        quasigroup: BuiltinQuasigroup::Multiplicative,
        map: "fourparam_involution",
    },
    KnownConstruction {
        ternary: "homotopy_ternary",
        kind: "division",
        quasigroup: BuiltinQuasigroup::Division,
        map: "mkdv_toda_homotopy",
    },
];

pub const KNOWN_INVERSES: &[KnownInverse] = &[
    KnownInverse { map: "fourparam", quasigroup: BuiltinQuasigroup::Division, ternary: "fourparam_ternary" },
    KnownInverse {
        map: "fourparam_involution",
        quasigroup: BuiltinQuasigroup::Multiplicative,
        ternary: "fourparam_ternary",
    },
    KnownInverse { map: "mkdv_toda_homotopy", quasigroup: BuiltinQuasigroup::Division, ternary: "homotopy_ternary" },
    KnownInverse { map: "f5", quasigroup: BuiltinQuasigroup::SubtractionLoop, ternary: "dkdv_ternary" },
    KnownInverse { map: "f4", quasigroup: BuiltinQuasigroup::Division, ternary: "dkdv_ternary" },
    KnownInverse { map: "adler", quasigroup: BuiltinQuasigroup::Additive, ternary: "dkdv_ternary" },
    KnownInverse { map: "h2", quasigroup: BuiltinQuasigroup::Multiplicative, ternary: "q1_ternary" },
    KnownInverse { map: "q1_map", quasigroup: BuiltinQuasigroup::Additive, ternary: "q1_ternary" },
    KnownInverse { map: "gl2_map", quasigroup: BuiltinQuasigroup::MatrixReversed(2), ternary: "gl2_ternary" },
];

pub fn known_construction(ternary: &str, kind: &str, q: BuiltinQuasigroup) -> Option<&'static str> {
    KNOWN_CONSTRUCTIONS.iter().find(|k| k.ternary == ternary && k.kind == kind && k.quasigroup == q).map(|k| k.map)
}

pub fn known_inverse(map: &str, q: BuiltinQuasigroup) -> Option<&'static str> {
    KNOWN_INVERSES.iter().find(|k| k.map == map && k.quasigroup == q).map(|k| k.ternary)
}

/// Budgets for [`run_check`] and [`run_all`].
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub check: CheckOptions,
    pub zeta_points: usize,
    pub perturbations: usize,
}

impl RunOptions {
    pub fn new(samples: usize) -> Self {
        RunOptions { check: CheckOptions::new(samples), zeta_points: 3, perturbations: 10 }
    }
}

pub fn run_check(
    entry: &CatalogEntry,
    check: Check,
    cfg: &FieldConfig,
    opts: &RunOptions,
) -> Result<VerificationReport> {
    let o = &opts.check;
    let wrong = || Error::InvalidArgument(format!("check `{check}` does not apply to {}", entry.name));
    match (check, &entry.object) {
        (Check::Yb, EntryObject::Map(m)) => check_yb(m, cfg, o),
        (Check::Involution(_), EntryObject::Map(m)) => check_involution(m, cfg, o),
        (Check::Invariance(q), EntryObject::Map(m)) => check_invariance(m, &Quasigroup::from_builtin(q), cfg, o),
        (Check::Consistency3d, EntryObject::Ternary(t)) => check_3d_consistency(t, cfg, o),
        (Check::Symmetry(k, q), EntryObject::Ternary(t)) => check_symmetry(t, k, &Quasigroup::from_builtin(q), cfg, o),
        (Check::Refactorization, EntryObject::Lax { lax, map }) => {
            check_refactorization(lax, map, cfg, o, opts.zeta_points)
        }
        (Check::Strongness, EntryObject::Lax { lax, map }) => check_strongness(lax, map, cfg, o, opts.perturbations),
        _ => Err(wrong()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRow {
    pub entry: String,
    pub check: String,
    pub anchor: String,
    pub expected: Verdict,
    pub matches: bool,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRun {
    pub field: String,
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<RunRow>,
    pub mismatches: usize,
}

impl CatalogRun {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }
}

/// Runs every recorded expectation; entries run in parallel, rows keep
/// catalog order.
pub fn run_all(cfg: &FieldConfig, opts: &RunOptions) -> Result<CatalogRun> {
    let per_entry: Vec<Vec<RunRow>> = list()
        .par_iter()
        .map(|e| {
            e.checks
                .iter()
                .map(|&c| {
                    let report = run_check(e, c, cfg, opts)?;
                    Ok(RunRow {
                        entry: e.name.to_string(),
                        check: c.to_string(),
                        anchor: e.anchor.to_string(),
                        expected: c.expected(),
                        matches: report.verdict == c.expected(),
                        report,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<RunRow> = per_entry.into_iter().flatten().collect();
    Ok(CatalogRun {
        field: cfg.field().label(),
        seed: cfg.rng_seed,
        samples: opts.check.samples,
        mismatches: rows.iter().filter(|r| !r.matches).count(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn names_are_unique_and_known() {
        let mut names: Vec<&str> = list().iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), list().len());
        for k in KNOWN_CONSTRUCTIONS {
            assert!(lookup(k.ternary).unwrap().ternary().is_some());
            assert!(lookup(k.map).unwrap().map().is_some());
        }
        for k in KNOWN_INVERSES {
            assert!(lookup(k.ternary).unwrap().ternary().is_some());
        }
        assert!(matches!(lookup("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn recorded_flags() {
        let a = lookup("adler").unwrap();
        assert_eq!(a.involution(), Some(true));
        assert_eq!(a.contexts, vec![BuiltinQuasigroup::Additive]);
        assert_eq!(lookup("fourparam").unwrap().involution(), Some(false));
        assert_eq!(lookup("fourparam_involution").unwrap().involution(), Some(true));
    }

    #[test]
    fn every_check_applies_to_its_entry() {
        let cfg = FieldConfig::default_prime(1);
        let o = RunOptions::new(2);
        for e in list() {
            for &c in &e.checks {
                run_check(e, c, &cfg, &o).unwrap_or_else(|err| panic!("{} {c}: {err}", e.name));
            }
        }
    }

    #[test]
    fn h2_witness() {
        let (u, v) = h2().evaluate(&[Q.int(2)], &[Q.int(2)], &[Q.int(3)], &[Q.int(1)]).unwrap();
        assert_eq!(u, vec![Q.ratio(27, 7).unwrap()]);
        assert_eq!(v, vec![Q.ratio(14, 9).unwrap()]);
    }

    #[test]
    fn fourparam_iterate() {
        let r = fourparam();
        let (a, b) = ([Q.int(1), Q.int(2)], [Q.int(3), Q.int(5)]);
        let (u, v) = r.evaluate(&[Q.int(1)], &a, &[Q.int(2)], &b).unwrap();
        assert_eq!((u[0].clone(), v[0].clone()), (Q.ratio(14, 11).unwrap(), Q.ratio(7, 11).unwrap()));
        let (u2, _) = r.evaluate(&u, &a, &v, &b).unwrap();
        assert_eq!(u2[0], Q.ratio(8, 11).unwrap());
    }
}
