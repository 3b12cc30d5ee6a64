//! Maps, ternary systems and the sampled identity checks run on them.

mod checks;
mod engine;
mod objects;
mod report;

pub use checks::{
    check_3d_consistency, check_dynamical_yb, check_invariance, check_involution, check_map_equality, check_symmetry,
    check_ternary_equality, check_yb, cube_values, dynamical_yb_sides, second_iterate, yb_sides, CubeValues,
    SymmetryKind,
};
pub use engine::{run_trials, CheckOptions, Outcome, RESAMPLE_BUDGET};
pub use objects::{
    DynamicalFn, DynamicalYbMap, MapFn, ParamLayout, ParametricTernarySystem, ParametricYbMap, Params, Source,
    TernaryFn, DEFAULT_DEGREE,
};
pub use report::{Confidence, Failure, NamedValue, SampleCounts, Verdict, VerificationReport, MAX_WITNESSES};
