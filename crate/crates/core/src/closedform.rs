//! Golden-ratio closed forms for `R` and the degree-5 tower
//! `R(e^{-2·5ⁿπ})`.
//!
//! ```text
//! R(e^{-2π})          = sqrt(φ² + 1) − φ
//! R⁵(e^{-2π/√5})      = sqrt(φ¹⁰ + 1) − φ⁵
//! R(e^{-2π√5})        = (1 − φ r) / (φ + r),  r = R(e^{-2π/√5})
//! ```
//!
//! Each level of the tower comes from the previous one by the CCL step:
//! `Y = ((1 − φ⁵u⁵)/(φ⁵ + u⁵))^(1/5)`, `v = (1 − φY)/(φ + Y)`.

use crate::error::{Error, Result};
use crate::modular::residual_deg5;
use crate::precision::{PrecisionContext, Real};

/// `φ = (√5 + 1)/2` and `φ⁵`.
#[derive(Debug, Clone)]
pub struct GoldenConstants {
    pub phi: Real,
    pub phi5: Real,
}

impl GoldenConstants {
    pub fn new(ctx: &PrecisionContext) -> Result<Self> {
        let phi = (ctx.int(5).sqrt()? + 1) / 2;
        let phi5 = phi.powi(5);
        Ok(GoldenConstants { phi, phi5 })
    }
}

/// `sqrt(a² + 1) − a`, evaluated as `1 / (sqrt(a² + 1) + a)`.
fn radical_gap(a: &Real) -> Result<Real> {
    Ok((a.square() + 1).sqrt()?.checked_add(a)?.recip())
}

/// `R(e^{-2π}) = sqrt(φ² + 1) − φ`.
pub fn closed_r_2pi(ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    radical_gap(&g.phi)
}

/// `R⁵(e^{-2π/√5}) = sqrt(φ¹⁰ + 1) − φ⁵`.
pub fn closed_r5_2pi_over_sqrt5(ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    radical_gap(&g.phi5)
}

/// `R(e^{-2π√5}) = (1 − φ r)/(φ + r)` with `r` the fifth root of
/// [`closed_r5_2pi_over_sqrt5`].
pub fn closed_r_2pi_sqrt5(ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    let r = closed_r5_2pi_over_sqrt5(ctx)?.root(5)?;
    Ok((1 - &g.phi * &r) / (&g.phi + &r))
}

/// `Y⁵ = (1 − φ⁵u⁵)/(φ⁵ + u⁵)`; a domain error when `1 − φ⁵u⁵ <= 0`.
pub fn ccl_y5(u: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    let u5 = u.powi(5);
    let top = 1 - &g.phi5 * &u5;
    if !top.is_positive() {
        return Err(Error::domain(
            "ccl_step",
            format!("1 - φ⁵u⁵ = {top} is not positive for u = {u}"),
        ));
    }
    Ok(top / (&g.phi5 + u5))
}

/// `v = (1 − φY)/(φ + Y)` exactly as displayed. Loses about
/// `log10(1/v)` digits to cancellation in `1 − φY`.
pub fn ccl_step_literal(u: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    let y = ccl_y5(u, ctx)?.root(5)?;
    Ok((1 - &g.phi * &y) / (&g.phi + &y))
}

/// CCL step `u = R(q) ↦ v = R(q⁵)`.
///
/// `1 − φY` is evaluated as `(1 − t⁵)/(1 + t + t² + t³ + t⁴)` with `t = φY`
/// and `1 − t⁵ = u⁵(1 + φ¹⁰)/(φ⁵ + u⁵)`, so no digits cancel. The result
/// is checked against the degree-5 relation before it is returned.
pub fn ccl_step(u: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if u.working_digits() != ctx.working_digits() {
        return Err(Error::PrecisionMismatch {
            left: u.working_digits(),
            right: ctx.working_digits(),
        });
    }
    if !u.is_positive() || u >= &ctx.one() {
        return Err(Error::domain("ccl_step", format!("u must lie in (0, 1), got {u}")));
    }
    let g = GoldenConstants::new(ctx)?;
    let u5 = u.powi(5);
    let den = &g.phi5 + &u5;
    let y = ccl_y5(u, ctx)?.root(5)?;
    let t = &g.phi * &y;
    let one_minus_t5 = &u5 * (g.phi5.square() + 1) / &den;
    let t2 = t.square();
    let geometric = 1 + &t + &t2 + &t2 * &t + t2.square();
    let v = one_minus_t5 / (geometric * (&g.phi + &y));

    if !(v.is_positive() && &v < u) {
        return Err(Error::InvariantViolated(format!("ccl_step produced {v} outside (0, {u})")));
    }
    let check = residual_deg5(u, &v, ctx)?;
    if !check.holds(ctx) {
        return Err(Error::InvariantViolated(format!(
            "degree-5 residual {} after ccl_step (wrong root branch?)",
            check.residual
        )));
    }
    Ok(v)
}

/// One level of the degree-5 tower: `u = R(e^{-2·alpha·π})`, `alpha = 5ⁿ`.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub n: u32,
    pub alpha: u64,
    pub u: Real,
}

/// Levels `0..=n` of the tower, starting at `R(e^{-2π})`.
pub fn tower(n: u32, ctx: &PrecisionContext) -> Result<Vec<TowerLevel>> {
    let mut levels = Vec::with_capacity(n as usize + 1);
    let mut u = closed_r_2pi(ctx)?;
    for level in 0..=n {
        if level > 0 {
            u = ccl_step(&u, ctx)?;
        }
        let alpha = 5u64
            .checked_pow(level)
            .ok_or_else(|| Error::InvalidArgument(format!("tower level {level} too large")))?;
        levels.push(TowerLevel {
            n: level,
            alpha,
            u: u.clone(),
        });
    }
    Ok(levels)
}

/// The nested radical for `R(e^{-10π})`:
/// `(1 − φX)/(φ + X)` with `X = (3(sqrt(φ² + 1) − 1) − φ²)^(1/5)`.
pub fn r_e10pi_nested(ctx: &PrecisionContext) -> Result<Real> {
    let g = GoldenConstants::new(ctx)?;
    let x = n1_radicand(&g)?.root(5)?;
    Ok((1 - &g.phi * &x) / (&g.phi + &x))
}

/// `3(sqrt(φ² + 1) − 1) − φ²`, the fifth power of `Y` at the first step.
fn n1_radicand(g: &GoldenConstants) -> Result<Real> {
    let phi2 = g.phi.square();
    Ok(((&phi2 + 1).sqrt()? - 1) * 3 - phi2)
}

/// Pieces of the second-level closed form `R(e^{-50π}) = (B − φA)/(A + φB)`.
#[derive(Debug, Clone)]
pub struct SecondLevel {
    pub x: Real,
    pub a: Real,
    pub b: Real,
    pub v: Real,
}

/// Evaluate `X`, `A`, `B` from their displayed radicals and the quotient
/// `(B − φA)/(A + φB)`. The quotient cancels about 14 digits.
pub fn r_e50pi_ab(ctx: &PrecisionContext) -> Result<SecondLevel> {
    let g = GoldenConstants::new(ctx)?;
    let x = n1_radicand(&g)?.root(5)?;
    let p = (&g.phi + &x).powi(5);
    let m = (1 - &g.phi * &x).powi(5);
    let a = (&p - &g.phi5 * &m).root(5)?;
    let b = (&g.phi5 * &p + &m).root(5)?;
    let v = (&b - &g.phi * &a) / (&a + &g.phi * &b);
    Ok(SecondLevel { x, a, b, v })
}
