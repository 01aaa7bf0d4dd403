//! Modular relations between `u = R(q)` and `v = R(q^d)`.
//!
//! * degree 5: `u^5 (1 + 3v + 4v^2 + 2v^3 + v^4) - v (1 - 2v + 4v^2 - 3v^3 + v^4) = 0`
//! * degree 11 (Rogers): `uv (1 - 11u^5 - u^10)(1 - 11v^5 - v^10) - (u - v)^12 = 0`
//!
//! Both residuals are computed with cleared denominators. The degree-11
//! relation is also solved for `v` by Newton's method.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real, MIN_GUARD_DIGITS};

/// Upper bound on `u` accepted by [`rogers_solve`]: `R(e^{-2π})` rounded up.
pub const ROGERS_MAX_U: f64 = 0.2841;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Degree5,
    Degree11,
}

/// Value of a modular relation at a candidate pair.
#[derive(Debug, Clone)]
pub struct ModularResidual {
    pub u: Real,
    pub v: Real,
    pub residual: Real,
    pub relation: Relation,
    /// Sum of the magnitudes of the two sides; the residual is meaningful
    /// relative to this.
    pub scale: Real,
}

impl ModularResidual {
    /// `|residual| / scale`, or `|residual|` when both sides vanish.
    pub fn relative(&self) -> Real {
        if self.scale.is_zero() {
            self.residual.abs()
        } else {
            (&self.residual / &self.scale).abs()
        }
    }

    /// Both the absolute and the relative residual are below
    /// `10^-(working - 10)`.
    pub fn holds(&self, ctx: &PrecisionContext) -> bool {
        let tol = ctx.tolerance(10);
        self.residual.abs() < tol && self.relative() < tol
    }
}

fn same_precision(ctx: &PrecisionContext, xs: &[&Real]) -> Result<()> {
    for x in xs {
        if x.working_digits() != ctx.working_digits() {
            return Err(Error::PrecisionMismatch {
                left: x.working_digits(),
                right: ctx.working_digits(),
            });
        }
    }
    Ok(())
}

/// Degree-5 residual `u^5 D(v) - v N(v)`, positive when `u` is too large
/// for `v`.
pub fn residual_deg5(u: &Real, v: &Real, ctx: &PrecisionContext) -> Result<ModularResidual> {
    same_precision(ctx, &[u, v])?;
    let v2 = v.square();
    let v3 = &v2 * v;
    let v4 = v2.square();
    let den = 1 + v * 3 + &v2 * 4 + &v3 * 2 + &v4;
    let num = 1 - v * 2 + &v2 * 4 - &v3 * 3 + &v4;
    if den.is_zero() {
        return Err(Error::domain("residual_deg5", "denominator polynomial vanishes"));
    }
    let lhs = u.powi(5) * den;
    let rhs = v * num;
    Ok(ModularResidual {
        u: u.clone(),
        v: v.clone(),
        residual: &lhs - &rhs,
        relation: Relation::Degree5,
        scale: lhs.abs() + rhs.abs(),
    })
}

fn rogers_factor(x: &Real) -> Real {
    let x5 = x.powi(5);
    1 - &x5 * 11 - x5.square()
}

/// Degree-11 residual `uv (1 - 11u^5 - u^10)(1 - 11v^5 - v^10) - (u - v)^12`.
pub fn residual_deg11(u: &Real, v: &Real, ctx: &PrecisionContext) -> Result<ModularResidual> {
    same_precision(ctx, &[u, v])?;
    let lhs = u * v * rogers_factor(u) * rogers_factor(v);
    let rhs = (u - v).powi(12);
    Ok(ModularResidual {
        u: u.clone(),
        v: v.clone(),
        residual: &lhs - &rhs,
        relation: Relation::Degree11,
        scale: lhs.abs() + rhs.abs(),
    })
}

/// Solver settings for [`rogers_solve_with`].
#[derive(Debug, Clone, Copy)]
pub struct RogersOptions {
    /// Working digits of the first Newton stage.
    pub start_digits: u32,
    /// Double the precision stage by stage; when false every step runs at
    /// full precision.
    pub doubling: bool,
    /// Newton steps allowed per stage.
    pub max_steps_per_stage: usize,
}

impl Default for RogersOptions {
    fn default() -> Self {
        RogersOptions {
            start_digits: 64,
            doubling: true,
            max_steps_per_stage: 60,
        }
    }
}

/// One Newton update.
#[derive(Debug, Clone)]
pub struct NewtonStep {
    /// Working digits the step ran at.
    pub digits: u32,
    /// `log10 |Δv / v|`, or `-inf` for an exact zero step.
    pub rel_step_log10: f64,
}

/// Root of the degree-11 relation with its convergence certificate.
#[derive(Debug, Clone)]
pub struct RogersSolution {
    pub v: Real,
    pub iterations: usize,
    /// Last Newton correction `|Δv|`.
    pub final_step: Real,
    pub trace: Vec<NewtonStep>,
    pub residual: ModularResidual,
}

/// `v = R(q^11)` from `u = R(q)`, `q = e^{-2απ}` with `α >= 1`.
pub fn rogers_solve(u: &Real, ctx: &PrecisionContext) -> Result<RogersSolution> {
    rogers_solve_with(u, ctx, RogersOptions::default())
}

/// Precision stages, ascending, ending at the context's working digits.
fn stages(ctx: &PrecisionContext, opts: &RogersOptions) -> Vec<PrecisionContext> {
    let full = ctx.working_digits();
    let mut out = vec![*ctx];
    if opts.doubling {
        let floor = opts.start_digits.max(2 * MIN_GUARD_DIGITS);
        let mut d = full;
        while d.div_ceil(2) >= floor {
            d = d.div_ceil(2);
            let stage = PrecisionContext::with_guard(d - MIN_GUARD_DIGITS, MIN_GUARD_DIGITS)
                .expect("stage digits exceed the minimum guard");
            out.push(stage);
        }
    }
    out.reverse();
    out
}

pub fn rogers_solve_with(
    u: &Real,
    ctx: &PrecisionContext,
    opts: RogersOptions,
) -> Result<RogersSolution> {
    same_precision(ctx, &[u])?;
    if !u.is_positive() || u.to_f64() > ROGERS_MAX_U {
        return Err(Error::domain(
            "rogers_solve",
            format!("u must be R(e^(-2απ)) with α >= 1, i.e. in (0, {ROGERS_MAX_U}], got {u}"),
        ));
    }

    let seed = u.powi(11);
    let mut v = seed.clone();
    let mut trace = Vec::new();
    let mut final_step = ctx.zero();
    let stage_list = stages(ctx, &opts);
    let last = stage_list.len() - 1;

    for (i, stage) in stage_list.iter().enumerate() {
        let us = u.at(stage);
        let c_u = rogers_factor(&us) * &us;
        v = v.at(stage);
        let stop = stage.pow10(-i64::from(stage.working_digits().saturating_sub(3)));
        let mut converged = false;
        for _ in 0..opts.max_steps_per_stage {
            let v5 = v.powi(5);
            let v10 = v5.square();
            let f = &c_u * &v * (1 - &v5 * 11 - &v10) - (&us - &v).powi(12);
            let df = &c_u * (1 - &v5 * 66 - &v10 * 11) + (&us - &v).powi(11) * 12;
            if df.is_zero() {
                return Err(Error::RootAmbiguity("Newton derivative vanished".into()));
            }
            let step = f / df;
            let rel = (&step / &v).abs();
            trace.push(NewtonStep {
                digits: stage.working_digits(),
                rel_step_log10: if step.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    rel.log10_abs()?.to_f64()
                },
            });
            v = &v - &step;
            if !v.is_positive() {
                return Err(Error::RootAmbiguity(format!("Newton iterate left (0, u): {v}")));
            }
            if i == last {
                final_step = step.abs();
            }
            if step.is_zero() || rel <= stop {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence {
                what: "Newton iteration on the degree-11 relation",
                iterations: trace.len(),
            });
        }
    }

    // branch checks
    if v >= *u {
        return Err(Error::RootAmbiguity(format!("root {v} not below u = {u}")));
    }
    let seed_gap = (&v / &seed - 1).abs();
    if seed_gap.to_f64() >= 0.5 {
        return Err(Error::RootAmbiguity(format!(
            "root {v} is far from the seed u^11 = {seed}"
        )));
    }
    let eps = ctx.pow10(-i64::from((ctx.working_digits() / 2).min(20)));
    let below = residual_deg11(u, &(&v * (1 - &eps)), ctx)?.residual;
    let above = residual_deg11(u, &(&v * (1 + &eps)), ctx)?.residual;
    if below.is_negative() == above.is_negative() {
        return Err(Error::RootAmbiguity(
            "degree-11 residual does not change sign across the root".into(),
        ));
    }
    let residual = residual_deg11(u, &v, ctx)?;
    if !residual.holds(ctx) {
        return Err(Error::InvariantViolated(format!(
            "degree-11 residual {} (relative {}) above tolerance",
            residual.residual,
            residual.relative()
        )));
    }

    Ok(RogersSolution {
        iterations: trace.len(),
        v,
        final_step,
        trace,
        residual,
    })
}
