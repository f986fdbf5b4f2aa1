//! Numerical function theory on the unit disk.
//!
//! - [`grid`]: midpoint quadrature on the circle, Poisson and Herglotz kernels.
//! - [`functions`]: outer synthesis, inner functions, quotients, compositions,
//!   radial boundary values.
//! - [`schur`]: self-maps of the disk and seeded samplers of `S_a`.
//! - [`integrability`]: tail functions, UI verdicts, de la Vallée Poussin gauges.
//! - [`classify`]: Smirnov/outer tests, factorization, composition harness.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod error;
pub mod functions;
pub mod grid;
pub mod integrability;
pub mod schur;

pub use classify::{
    criteria_agree, factorize, harmonic_majorant_check, harness_family, outer_test, smirnov_test,
    ui_smirnov_test, verify_composition_theorem, ClassifyConfig, Factorization, HarnessMode,
    HarnessReport, MajorantReport, OuterClass, OuterVerdict, SmirnovClass, SmirnovVerdict,
};
pub use error::{HardyError, Result};
pub use functions::{
    boundary_log_modulus, compose, radial_limit, synth_outer, AnalyticFunction, Clip, ClosedForm,
    PointMass, RadialSchedule,
};
pub use grid::{circle_mean, herglotz_kernel, make_grid, poisson_kernel, CircleGrid, DiskPoint};
pub use integrability::{
    build_gauge, gauge_eval, gauge_implies_ui, tail_function, ui_verdict, BoundarySampleFamily,
    Gauge, GaugeBound, UIReport, UiVerdict,
};
pub use num_complex::Complex64;
pub use schur::{sample_family, scale_map, schur_compose, SchurMap};
