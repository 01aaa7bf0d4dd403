//! Arbitrary-precision arithmetic contract.
//!
//! Every quantity in the crate is a [`Real`] produced under a
//! [`PrecisionContext`]. The context fixes the working precision
//! (`target_digits + guard_digits` decimal digits) for the lifetime of a
//! computation; Reals built under different contexts refuse to mix.
//!
//! The backing float is MPFR (through `rug`), so every elementary operation is
//! correctly rounded to nearest: each op contributes at most 1/2 ulp, well
//! inside the 2 ulp per-operation budget the composite routines document.
//!
//! The reference value of π comes from the Gauss–Legendre (Brent–Salamin)
//! arithmetic–geometric-mean iteration, built only from `+ − × ÷ √`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest guard allowed on a context.
pub const MIN_GUARD_DIGITS: u32 = 16;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Rounding policy applied to every operation. MPFR's round-to-nearest-even
/// is the only mode used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rounding {
    #[default]
    ToNearest,
}

/// Decimal precision of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
    rounding: Rounding,
}

/// Number of bits needed to hold `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

impl PrecisionContext {
    /// Context with the default guard, `max(32, ceil(0.05 * target))`.
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, Self::default_guard(target_digits))
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::InvalidArgument("target_digits must be at least 1".into()));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "guard_digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        target_digits
            .checked_add(guard_digits)
            .filter(|w| *w <= 50_000_000)
            .ok_or_else(|| Error::InvalidArgument("working precision too large".into()))?;
        Ok(PrecisionContext {
            target_digits,
            guard_digits,
            rounding: Rounding::ToNearest,
        })
    }

    pub fn default_guard(target_digits: u32) -> u32 {
        let proportional = (f64::from(target_digits) * 0.05).ceil() as u32;
        proportional.max(32)
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// Decimal digits every Real of this context carries.
    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// A context with `extra` more target digits and the same guard.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            target_digits: self.target_digits + extra,
            ..*self
        }
    }

    /// `10^-(working - slack)`, the customary "agrees to working precision"
    /// tolerance.
    pub fn tolerance(&self, slack: u32) -> Real {
        let exp = i64::from(self.working_digits().saturating_sub(slack));
        self.pow10(-exp)
    }

    pub fn pow10(&self, exp: i64) -> Real {
        let ten = Float::with_val(self.bits(), 10);
        let exp = i32::try_from(exp).expect("decimal exponent out of range");
        self.wrap(ten.pow(exp))
    }

    pub fn zero(&self) -> Real {
        self.wrap(Float::new(self.bits()))
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Real {
        self.wrap(Float::with_val(self.bits(), n))
    }

    /// Exact ratio `num / den`, rounded once.
    pub fn ratio(&self, num: i64, den: i64) -> Real {
        assert!(den != 0, "ratio with zero denominator");
        let v = Float::with_val(self.bits(), num) / den;
        self.wrap(v)
    }

    pub fn from_f64(&self, x: f64) -> Real {
        self.wrap(Float::with_val(self.bits(), x))
    }

    /// Parse a decimal literal such as `"0.15"` or `"-9.3284736e-3"`.
    pub fn parse(&self, literal: &str) -> Result<Real> {
        let parsed = Float::parse(literal.trim())
            .map_err(|e| Error::InvalidArgument(format!("bad decimal literal {literal:?}: {e}")))?;
        Ok(self.wrap(Float::with_val(self.bits(), parsed)))
    }

    /// π at working precision from the reference oracle.
    pub fn pi(&self) -> Result<Real> {
        const_pi_reference(self)
    }

    /// Wrap a raw float, rounding it to this context's precision.
    pub fn wrap(&self, mut value: Float) -> Real {
        if value.prec() != self.bits() {
            value.set_prec_round(self.bits(), Round::Nearest);
        }
        Real {
            value,
            digits: self.working_digits(),
        }
    }

    fn check(&self, x: &Real) -> Result<()> {
        if x.digits != self.working_digits() {
            return Err(Error::PrecisionMismatch {
                left: x.digits,
                right: self.working_digits(),
            });
        }
        Ok(())
    }
}

/// An arbitrary-precision real bound to the working precision it was
/// computed at.
#[derive(Clone)]
pub struct Real {
    value: Float,
    digits: u32,
}

/// How a value is cut to a number of significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitRounding {
    Nearest,
    Truncate,
}

/// Decimal digits of a value: `±0.d₁d₂…dₙ × 10^point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalDigits {
    pub negative: bool,
    pub digits: String,
    pub point: i64,
}

impl DecimalDigits {
    /// `d₁.d₂…dₙe<exp>` form, e.g. `-9.3284736e-3`.
    pub fn to_scientific(&self) -> String {
        if self.digits.chars().all(|c| c == '0') {
            return "0".to_string();
        }
        let sign = if self.negative { "-" } else { "" };
        let (head, tail) = self.digits.split_at(1);
        let exp = self.point - 1;
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }

    /// Positional form, e.g. `0.0005042376` or `6.2831853071795`.
    pub fn to_plain(&self) -> String {
        let sign = if self.negative { "-" } else { "" };
        let n = self.digits.len() as i64;
        if self.point <= 0 {
            let zeros = "0".repeat((-self.point) as usize);
            format!("{sign}0.{zeros}{}", self.digits)
        } else if self.point >= n {
            let zeros = "0".repeat((self.point - n) as usize);
            format!("{sign}{}{zeros}", self.digits)
        } else {
            let (int, frac) = self.digits.split_at(self.point as usize);
            format!("{sign}{int}.{frac}")
        }
    }
}

impl Real {
    pub fn working_digits(&self) -> u32 {
        self.digits
    }

    /// The backing MPFR float.
    pub fn float(&self) -> &Float {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Re-round into another context.
    pub fn at(&self, ctx: &PrecisionContext) -> Real {
        ctx.wrap(self.value.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_sign_positive() && !self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_sign_negative() && !self.value.is_zero()
    }

    pub fn abs(&self) -> Real {
        self.same(self.value.clone().abs())
    }

    pub fn square(&self) -> Real {
        self.same(self.value.clone().square())
    }

    /// Reciprocal `1/x`.
    pub fn recip(&self) -> Real {
        self.same(self.value.clone().recip())
    }

    pub fn checked_add(&self, rhs: &Real) -> Result<Real> {
        self.compatible(rhs)?;
        Ok(self.same(Float::with_val(self.value.prec(), &self.value + &rhs.value)))
    }

    pub fn checked_sub(&self, rhs: &Real) -> Result<Real> {
        self.compatible(rhs)?;
        Ok(self.same(Float::with_val(self.value.prec(), &self.value - &rhs.value)))
    }

    pub fn checked_mul(&self, rhs: &Real) -> Result<Real> {
        self.compatible(rhs)?;
        Ok(self.same(Float::with_val(self.value.prec(), &self.value * &rhs.value)))
    }

    pub fn checked_div(&self, rhs: &Real) -> Result<Real> {
        self.compatible(rhs)?;
        if rhs.is_zero() {
            return Err(Error::domain("div", "division by zero"));
        }
        Ok(self.same(Float::with_val(self.value.prec(), &self.value / &rhs.value)))
    }

    pub fn ln(&self) -> Result<Real> {
        if !self.is_positive() {
            return Err(Error::domain("ln", format!("argument must be > 0, got {self}")));
        }
        Ok(self.same(self.value.clone().ln()))
    }

    pub fn exp(&self) -> Real {
        self.same(self.value.clone().exp())
    }

    pub fn sqrt(&self) -> Result<Real> {
        if self.is_negative() {
            return Err(Error::domain("sqrt", format!("argument must be >= 0, got {self}")));
        }
        Ok(self.same(self.value.clone().sqrt()))
    }

    /// Real `n`-th root; odd roots of negative numbers take the real branch.
    pub fn root(&self, n: u32) -> Result<Real> {
        if n == 0 {
            return Err(Error::domain("nth_root", "root index must be positive"));
        }
        if n.is_multiple_of(2) && self.is_negative() {
            return Err(Error::domain(
                "nth_root",
                format!("even root ({n}) of negative argument {self}"),
            ));
        }
        Ok(self.same(self.value.clone().root(n)))
    }

    pub fn powi(&self, k: i32) -> Real {
        self.same(self.value.clone().pow(k))
    }

    /// One unit in the last place of `self` at its precision.
    pub fn ulp(&self) -> Real {
        let prec = self.value.prec();
        let exp = self.value.get_exp().unwrap_or(0);
        let mut u = Float::with_val(prec, 1);
        u <<= exp - prec as i32;
        self.same(u)
    }

    /// `10^exp` at the precision of `self`.
    pub fn power_of_ten(&self, exp: i64) -> Real {
        let exp = i32::try_from(exp).expect("decimal exponent out of range");
        self.same(Float::with_val(self.value.prec(), 10).pow(exp))
    }

    /// `log10 |x|` as a Real.
    pub fn log10_abs(&self) -> Result<Real> {
        if self.is_zero() {
            return Err(Error::domain("log10", "argument is zero"));
        }
        Ok(self.same(self.value.clone().abs().log10()))
    }

    /// `floor(log10 |x|)`, the decimal exponent of the leading digit.
    pub fn decimal_exponent(&self) -> Option<i64> {
        if !self.value.is_normal() {
            return None;
        }
        // Truncation never carries into the next decade.
        let (_, _, point) = self.value.to_sign_string_exp_round(10, Some(1), Round::Zero);
        Some(i64::from(point?) - 1)
    }

    /// First `n` significant decimal digits.
    pub fn sig_digits(&self, n: usize, mode: DigitRounding) -> DecimalDigits {
        let round = match mode {
            DigitRounding::Nearest => Round::Nearest,
            DigitRounding::Truncate => Round::Zero,
        };
        let (negative, digits, point) = self.value.to_sign_string_exp_round(10, Some(n.max(1)), round);
        DecimalDigits {
            negative,
            digits,
            point: point.map(i64::from).unwrap_or(0),
        }
    }

    /// Scientific string with `n` significant digits, rounded to nearest.
    pub fn to_sci(&self, n: usize) -> String {
        self.sig_digits(n, DigitRounding::Nearest).to_scientific()
    }

    fn same(&self, value: Float) -> Real {
        Real {
            value,
            digits: self.digits,
        }
    }

    fn compatible(&self, rhs: &Real) -> Result<()> {
        if self.digits != rhs.digits {
            return Err(Error::PrecisionMismatch {
                left: self.digits,
                right: rhs.digits,
            });
        }
        Ok(())
    }

    fn expect_compatible(&self, rhs: &Real, op: &str) {
        assert!(
            self.digits == rhs.digits,
            "{op} on Reals of different working precision ({} vs {} digits)",
            self.digits,
            rhs.digits
        );
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci(n))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} @ {} digits)", self.to_sci(25), self.digits)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits && self.value == other.value
    }
}

impl PartialOrd for Real {
    /// Reals of different working precision are incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.digits != other.digits {
            return None;
        }
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.expect_compatible(rhs, stringify!($method));
                self.same(Float::with_val(self.value.prec(), &self.value $op &rhs.value))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
        impl $trait<i32> for &Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                self.same(Float::with_val(self.value.prec(), &self.value $op rhs))
            }
        }
        impl $trait<i32> for Real {
            type Output = Real;
            fn $method(self, rhs: i32) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<&Real> for i32 {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                rhs.same(Float::with_val(rhs.value.prec(), self $op &rhs.value))
            }
        }
        impl $trait<Real> for i32 {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.same(-self.value.clone())
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Elementary functions exposed through [`elementary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Ln,
    Exp,
    Sqrt,
    NthRoot(u32),
    PowInt(i32),
}

/// Apply an elementary function at the context's working precision.
pub fn elementary(x: &Real, op: Elementary, ctx: &PrecisionContext) -> Result<Real> {
    ctx.check(x)?;
    match op {
        Elementary::Ln => x.ln(),
        Elementary::Exp => Ok(x.exp()),
        Elementary::Sqrt => x.sqrt(),
        Elementary::NthRoot(n) => x.root(n),
        Elementary::PowInt(k) => Ok(x.powi(k)),
    }
}

/// π to working precision by the Gauss–Legendre AGM iteration.
///
/// Runs 64 bits above the working precision and rounds once at the end.
/// Fails with [`Error::PrecisionExhausted`] if `|a - b|` has not fallen to
/// the working ulp within `log2(bits) + 8` iterations.
pub fn const_pi_reference(ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits() + 64;
    let mut a = Float::with_val(bits, 1);
    let mut b = Float::with_val(bits, 0.5).sqrt();
    let mut t = Float::with_val(bits, 0.25);
    let max_iter = (f64::from(bits).log2().ceil() as u32) + 8;
    let threshold = -(i64::from(bits) - 8);

    for k in 0..max_iter {
        let next_a = Float::with_val(bits, &a + &b) / 2u32;
        let next_b = Float::with_val(bits, &a * &b).sqrt();
        let mut diff = Float::with_val(bits, &a - &next_a).square();
        diff <<= k;
        t -= diff;
        a = next_a;
        b = next_b;

        let gap = Float::with_val(bits, &a - &b);
        let converged = gap.is_zero() || gap.get_exp().map(i64::from).unwrap_or(0) < threshold;
        if converged {
            let sum = Float::with_val(bits, &a + &b).square();
            let pi = sum / (t * 4u32);
            return Ok(ctx.wrap(pi));
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "Gauss-Legendre iteration did not reach {bits} bits in {max_iter} steps"
    )))
}

/// 2π from the reference oracle.
pub fn two_pi_reference(ctx: &PrecisionContext) -> Result<Real> {
    Ok(const_pi_reference(ctx)? * 2)
}

/// MPFR's own π constant. Used only to cross-check the reference oracle.
pub fn const_pi_mpfr(ctx: &PrecisionContext) -> Real {
    ctx.wrap(Float::with_val(ctx.bits(), Constant::Pi))
}
