//! Numerical near-coincidences between `R(q)` at `q = e^{−2π}`,
//! `e^{−2π/√5}`, `e^{−2π√5}` and `2π − 6`, the constant `ρ` obtained by
//! inverting `R`, and the ellipse-perimeter reading of those coincidences.

use crate::cfrac::{default_bracket, eval_r, invert_r};
use crate::closedform::closed_r_2pi;
use crate::error::{Error, Result};
use crate::precision::{two_pi_reference, PrecisionContext, Real};
use crate::roots::refine_increasing;

/// Shared ingredients of the observations at one precision.
#[derive(Debug, Clone)]
pub struct Ingredients {
    /// `2π − 6`.
    pub two_pi_minus_6: Real,
    /// `R(e^{−2π})`.
    pub r_2pi: Real,
    /// `R⁵(e^{−2π/√5})`.
    pub r5_over_sqrt5: Real,
    /// `R(e^{−2π√5})`.
    pub r_sqrt5: Real,
    /// `e^{−2π/5}`.
    pub e_2pi_5: Real,
}

impl Ingredients {
    pub fn new(ctx: &PrecisionContext) -> Result<Self> {
        let two_pi = two_pi_reference(ctx)?;
        let sqrt5 = ctx.int(5).sqrt()?;
        let r_over = eval_r(&(-(&two_pi / &sqrt5)).exp(), ctx)?.value;
        let r_sqrt5 = eval_r(&(-(&two_pi * &sqrt5)).exp(), ctx)?.value;
        Ok(Self {
            two_pi_minus_6: &two_pi - 6,
            r_2pi: closed_r_2pi(ctx)?,
            r5_over_sqrt5: r_over.powi(5),
            r_sqrt5,
            e_2pi_5: (-(two_pi / 5)).exp(),
        })
    }

    /// `6x/(1 − x)` with `x = R⁵(e^{−2π/√5})`.
    pub fn x1(&self) -> Real {
        &self.r5_over_sqrt5 * 6 / (1 - &self.r5_over_sqrt5)
    }

    /// `R(e^{−2π√5}) / √(R⁵(e^{−2π/√5}))`.
    pub fn x3(&self) -> Result<Real> {
        Ok(&self.r_sqrt5 / self.r5_over_sqrt5.sqrt()?)
    }
}

/// The five terms `x₁ < x₂ < x₃ < x₄ < x₅` and their successive gaps.
#[derive(Debug, Clone)]
pub struct Table1 {
    pub values: [(&'static str, Real); 5],
    pub differences: [(&'static str, Real); 4],
}

pub fn table1(ctx: &PrecisionContext) -> Result<Table1> {
    let ing = Ingredients::new(ctx)?;
    let xs = [
        ing.x1(),
        ing.two_pi_minus_6.clone(),
        ing.x3()?,
        ing.r_2pi.clone(),
        ing.e_2pi_5.clone(),
    ];
    for (i, w) in xs.windows(2).enumerate() {
        if w[0] >= w[1] {
            return Err(Error::InvariantViolated(format!(
                "x{} = {} is not below x{} = {}",
                i + 1,
                w[0],
                i + 2,
                w[1]
            )));
        }
    }
    let [x1, x2, x3, x4, x5] = xs;
    let differences = [
        ("x2-x1", &x2 - &x1),
        ("x3-x2", &x3 - &x2),
        ("x4-x3", &x4 - &x3),
        ("x5-x4", &x5 - &x4),
    ];
    Ok(Table1 {
        values: [("x1", x1), ("x2", x2), ("x3", x3), ("x4", x4), ("x5", x5)],
        differences,
    })
}

/// Which observed residual a value is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObservationId {
    /// `R(e^{−2π}) − (2π − 6)`.
    Eq1,
    /// `R⁵(e^{−2π/√5}) − (2π − 6)/2π`.
    Eq2,
    /// `x₁ − (2π − 6)`.
    Eq3,
    /// `R(e^{−2π√5}) − (2π − 6)√((2π − 6)/2π)`.
    Eq4,
    /// `x₃ − (2π − 6)`.
    Eq5,
}

impl ObservationId {
    pub const ALL: [ObservationId; 5] = [Self::Eq1, Self::Eq2, Self::Eq3, Self::Eq4, Self::Eq5];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Eq1 => "eq1",
            Self::Eq2 => "eq2",
            Self::Eq3 => "eq3",
            Self::Eq4 => "eq4",
            Self::Eq5 => "eq5",
        }
    }
}

/// The five residuals, signed, in order.
pub fn observation_residuals(ctx: &PrecisionContext) -> Result<Vec<(ObservationId, Real)>> {
    let ing = Ingredients::new(ctx)?;
    let x2 = &ing.two_pi_minus_6;
    let two_pi = x2 + 6;
    let ratio = x2 / &two_pi;
    Ok(vec![
        (ObservationId::Eq1, &ing.r_2pi - x2),
        (ObservationId::Eq2, &ing.r5_over_sqrt5 - &ratio),
        (ObservationId::Eq3, ing.x1() - x2),
        (ObservationId::Eq4, &ing.r_sqrt5 - x2 * ratio.sqrt()?),
        (ObservationId::Eq5, ing.x3()? - x2),
    ])
}

/// `q` with `R(q) = 2π − 6`, found inside `bracket`.
pub fn invert_two_pi_minus_6(ctx: &PrecisionContext, bracket: Option<(Real, Real)>) -> Result<Real> {
    let target = two_pi_reference(ctx)? - 6;
    let bracket = match bracket {
        Some(b) => b,
        None => default_bracket(&target, ctx)?,
    };
    invert_r(&target, ctx, bracket)
}

/// `q^{1/5}` against a base value, and that ratio's fifth root.
#[derive(Debug, Clone)]
pub struct RhoReport {
    pub label: &'static str,
    /// `q` with `R(q) = 2π − 6`.
    pub q: Real,
    pub base: Real,
    /// `q^{1/5} / base`: `R((ratio · base)⁵) = 2π − 6`.
    pub ratio: Real,
    /// `ratio^{1/5}`, the printed `ρ ≈ 0.99973708` for base `R(e^{−2π})`.
    pub rho: Real,
}

fn rho_report(label: &'static str, q: &Real, base: Real) -> Result<RhoReport> {
    let ratio = q.root(5)? / &base;
    Ok(RhoReport {
        label,
        q: q.clone(),
        rho: ratio.root(5)?,
        base,
        ratio,
    })
}

/// `ρ` with base `R(e^{−2π})`.
pub fn rho(ctx: &PrecisionContext) -> Result<RhoReport> {
    rho_with_bracket(ctx, None)
}

pub fn rho_with_bracket(ctx: &PrecisionContext, bracket: Option<(Real, Real)>) -> Result<RhoReport> {
    let q = invert_two_pi_minus_6(ctx, bracket)?;
    rho_report("R(e^-2pi)", &q, closed_r_2pi(ctx)?)
}

/// The same inversion measured against `x₁` and `x₃`.
pub fn rho_variants(ctx: &PrecisionContext) -> Result<Vec<RhoReport>> {
    let q = invert_two_pi_minus_6(ctx, None)?;
    let ing = Ingredients::new(ctx)?;
    Ok(vec![
        rho_report("R(e^-2pi)", &q, ing.r_2pi.clone())?,
        rho_report("x1", &q, ing.x1())?,
        rho_report("x3", &q, ing.x3()?)?,
    ])
}

/// An ellipse with semi-axes `a >= b`.
#[derive(Debug, Clone)]
pub struct EllipseSpec {
    pub a: Real,
    pub b: Real,
    /// `a − b`.
    pub d: Real,
    /// `(a − b)/(a + b)`.
    pub lambda: Real,
    /// Approximate perimeter.
    pub p: Real,
}

impl EllipseSpec {
    pub fn new(a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Self> {
        let p = ellipse_perimeter(a, b, ctx)?;
        Ok(Self {
            a: a.clone(),
            b: b.clone(),
            d: a - b,
            lambda: (a - b) / (a + b),
            p,
        })
    }
}

/// `π(a + b)(1 + 3λ²/(10 + √(4 − 3λ²)))`, `λ = (a − b)/(a + b)`.
pub fn ellipse_perimeter(a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !b.is_positive() || a < b {
        return Err(Error::domain("ellipse_perimeter", format!("need a >= b > 0, got a = {a}, b = {b}")));
    }
    let sum = a + b;
    let lambda2 = ((a - b) / &sum).square();
    let disc = 4 - &lambda2 * 3;
    if disc.is_negative() {
        return Err(Error::domain("ellipse_perimeter", format!("4 - 3λ² = {disc} < 0")));
    }
    let correction = &lambda2 * 3 / (disc.sqrt()? + 10);
    Ok(ctx.pi()? * sum * (correction + 1))
}

/// `d >= 0` with `ellipse_perimeter(1 + d, 1) = p`.
pub fn ellipse_axis_from_perimeter(p: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let two_pi = two_pi_reference(ctx)?;
    if p < &two_pi {
        return Err(Error::domain(
            "ellipse_axis_from_perimeter",
            format!("perimeter {p} is below 2π; no ellipse with b = 1 has it"),
        ));
    }
    if p == &two_pi {
        return Ok(ctx.zero());
    }
    let inner = ctx.widened(10);
    let p_in = p.at(&inner);
    let one = inner.one();
    // p >= π(a + b) bounds d by p/π − 2
    let hi = &p_in / inner.pi()? - 2;
    let tol = p_in.ulp() * 4;
    let d = refine_increasing(
        |d| Ok(ellipse_perimeter(&(d + &one), &one, &inner)? - &p_in),
        inner.zero(),
        hi.clone(),
        Some(&hi / 2),
        &tol,
        4 * inner.bits() as usize,
    )?;
    Ok(d.at(ctx))
}

/// A near-circle read off one of the perimeters `6 + x`.
#[derive(Debug, Clone)]
pub struct EllipseReading {
    pub label: &'static str,
    pub perimeter: Real,
    /// `None` when the perimeter is below 2π.
    pub d: Option<Real>,
}

/// `d` for the perimeters `6 + R(e^{−2π})`, `6/(1 − R⁵(e^{−2π/√5}))` and
/// `6 + x₃`, plus the comparison value `R(e^{−2π})/1000`.
pub fn ellipse_readings(ctx: &PrecisionContext) -> Result<(Vec<EllipseReading>, Real)> {
    let ing = Ingredients::new(ctx)?;
    let perimeters = [
        ("6+R(e^-2pi)", &ing.r_2pi + 6),
        ("6/(1-R^5(e^-2pi/sqrt5))", 6 / (1 - &ing.r5_over_sqrt5)),
        ("6+x3", ing.x3()? + 6),
    ];
    let readings = perimeters
        .into_iter()
        .map(|(label, perimeter)| {
            let d = match ellipse_axis_from_perimeter(&perimeter, ctx) {
                Ok(d) => Some(d),
                Err(Error::Domain { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(EllipseReading { label, perimeter, d })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((readings, ing.r_2pi / 1000))
}
