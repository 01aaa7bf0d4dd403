//! Arbitrary-precision evaluation of the Rogers–Ramanujan continued fraction
//! `R(q)` and the modular-equation ladders that turn it into digits of 2π.
//!
//! ```
//! use rrpi_core::{digits_of_2pi, piladder::context_for, Scheme};
//!
//! let ctx = context_for(Scheme::Deg5, 1).unwrap();
//! let d = digits_of_2pi(Scheme::Deg5, 1, &ctx).unwrap();
//! assert_eq!(d.digits, "6.2831853071795");
//! ```

pub mod cfrac;
pub mod closedform;
pub mod error;
pub mod golden;
pub mod modular;
pub mod observations;
pub mod piladder;
pub mod precision;
mod roots;

pub use cfrac::{eval_r, invert_r, CfracEval};
pub use closedform::{ccl_step, tower, GoldenConstants, TowerLevel};
pub use error::{Error, Result};
pub use golden::{verify, Check, VerifyOptions};
pub use observations::{ellipse_axis_from_perimeter, ellipse_perimeter, rho, table1, EllipseSpec, RhoReport, Table1};
pub use modular::{residual_deg11, residual_deg5, rogers_solve, ModularResidual, Relation, RogersSolution};
pub use piladder::{
    digits_of_2pi, ladder, ladder_deg11, ladder_deg5, limit_ratio, DigitReport, DigitString, LadderState,
    Scheme,
};
pub use precision::{
    const_pi_reference, elementary, two_pi_reference, DecimalDigits, DigitRounding, Elementary,
    PrecisionContext, Real, Rounding,
};
