//! 2π from the continued fraction: `2π ≈ −(5/α) ln R(e^{−2απ})`.
//!
//! Two ladders drive α upward:
//!
//! * `deg5`: `α = 5ⁿ`, each rung from the closed-form CCL step;
//! * `deg11`: `α = 5·11ᵐ`, starting at `R(e^{−10π})` and climbing by Newton
//!   solves of Rogers' degree-11 relation.
//!
//! The approximation overshoots 2π by about `(5/α) e^{−2απ}`, so the number
//! of correct digits grows ×5 (resp. ×11) per rung.

use std::fmt;
use std::str::FromStr;

use crate::closedform::tower;
use crate::error::{Error, Result};
use crate::modular::rogers_solve;
use crate::precision::{two_pi_reference, DigitRounding, PrecisionContext, Real};

/// Highest rung each scheme is tested at.
pub const DEG5_TESTED_MAX: u32 = 6;
pub const DEG11_TESTED_MAX: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Deg5,
    Deg11,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Deg5 => "deg5",
            Scheme::Deg11 => "deg11",
        }
    }

    /// `α` at a rung: `5ⁿ` or `5·11ᵐ`.
    pub fn alpha(&self, level: u32) -> Option<u64> {
        match self {
            Scheme::Deg5 => 5u64.checked_pow(level),
            Scheme::Deg11 => 11u64.checked_pow(level)?.checked_mul(5),
        }
    }

    pub fn tested_max(&self) -> u32 {
        match self {
            Scheme::Deg5 => DEG5_TESTED_MAX,
            Scheme::Deg11 => DEG11_TESTED_MAX,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deg5" => Ok(Scheme::Deg5),
            "deg11" => Ok(Scheme::Deg11),
            other => Err(Error::InvalidArgument(format!(
                "unknown scheme {other:?} (expected deg5 or deg11)"
            ))),
        }
    }
}

/// One rung of a ladder.
#[derive(Debug, Clone)]
pub struct LadderState {
    pub scheme: Scheme,
    pub level: u32,
    pub alpha: u64,
    /// `R(e^{−2απ})`.
    pub u: Real,
    /// `−(5/α) ln u`.
    pub two_pi_approx: Real,
    /// Error in the sign convention the ladder is usually quoted in:
    /// `2π − approx` for deg5, `approx − 2π` for deg11.
    pub signed_error: Real,
    /// `approx − 2π` for both schemes.
    pub overshoot: Real,
}

/// Correct-digit summary of a rung.
#[derive(Debug, Clone)]
pub struct DigitReport {
    pub level: u32,
    /// Leading digits of 2π the approximation resolves:
    /// `|approx − 2π| < 10^−(k−1)`.
    pub k_correct: u64,
    /// `signed_error = mantissa × 10^exponent`, `1 <= |mantissa| < 10`.
    pub error_mantissa: Real,
    pub error_exponent: i64,
}

impl LadderState {
    pub fn digit_report(&self) -> Result<DigitReport> {
        let err = &self.signed_error;
        let working = err.working_digits();
        let Some(exponent) = err.decimal_exponent() else {
            return Err(Error::ContextTooSmall {
                needed: u64::from(working) + 1,
                available: working,
            });
        };
        // 2π has one integer digit; |e| < 10^E+1 resolves digits through 10^-(−E−1)
        let k = (-exponent).max(0) as u64;
        if k + 10 > u64::from(working) {
            return Err(Error::ContextTooSmall {
                needed: k + 10,
                available: working,
            });
        }
        let mantissa = err / err.power_of_ten(exponent);
        Ok(DigitReport {
            level: self.level,
            k_correct: k,
            error_mantissa: mantissa,
            error_exponent: exponent,
        })
    }
}

/// Correct digits expected at `α` from `|error| ≈ (5/α) e^{−2απ}`.
pub fn predicted_digits(alpha: u64) -> u64 {
    let a = alpha as f64;
    let neg_log10_err = 2.0 * std::f64::consts::PI * a * std::f64::consts::LOG10_E + (a / 5.0).log10();
    neg_log10_err.floor() as u64 + 1
}

/// `ceil(−log10 q)` for `q = e^{−2απ}`: the decimal order of the nome,
/// which is how the ×5 digit table is usually tabulated. It drops the
/// `5/α` factor of the actual error, so it is informational only.
pub fn predicted_nome_digits(alpha: u64) -> u64 {
    (2.0 * std::f64::consts::PI * alpha as f64 * std::f64::consts::LOG10_E).ceil() as u64
}

/// Working precision sized for a rung: target `1.1 × k(L) + 64` digits.
pub fn context_for(scheme: Scheme, level: u32) -> Result<PrecisionContext> {
    let alpha = scheme
        .alpha(level)
        .ok_or_else(|| Error::InvalidArgument(format!("{scheme} level {level} overflows α")))?;
    let k = predicted_digits(alpha);
    let target = (k as f64 * 1.1).ceil() as u64 + 64;
    let target = u32::try_from(target)
        .map_err(|_| Error::InvalidArgument(format!("{scheme} level {level} needs {target} digits")))?;
    PrecisionContext::new(target)
}

fn ensure_fits(scheme: Scheme, level: u32, ctx: &PrecisionContext) -> Result<()> {
    let alpha = scheme
        .alpha(level)
        .ok_or_else(|| Error::InvalidArgument(format!("{scheme} level {level} overflows α")))?;
    let needed = predicted_digits(alpha) + 10;
    if needed > u64::from(ctx.working_digits()) {
        return Err(Error::ContextTooSmall {
            needed,
            available: ctx.working_digits(),
        });
    }
    Ok(())
}

fn state(scheme: Scheme, level: u32, alpha: u64, u: Real, two_pi: &Real, ctx: &PrecisionContext) -> Result<LadderState> {
    let alpha_r = ctx.int(i64::try_from(alpha).map_err(|_| Error::InvalidArgument("α too large".into()))?);
    let approx = -(u.ln()? * 5) / alpha_r;
    let overshoot = &approx - two_pi;
    let signed_error = match scheme {
        Scheme::Deg5 => -&overshoot,
        Scheme::Deg11 => overshoot.clone(),
    };
    Ok(LadderState {
        scheme,
        level,
        alpha,
        u,
        two_pi_approx: approx,
        signed_error,
        overshoot,
    })
}

fn check_shrinking(states: &[LadderState]) -> Result<()> {
    for w in states.windows(2) {
        if w[1].overshoot.abs() >= w[0].overshoot.abs() {
            return Err(Error::InvariantViolated(format!(
                "{} error did not shrink from level {} to {}",
                w[1].scheme, w[0].level, w[1].level
            )));
        }
    }
    Ok(())
}

/// Degree-5 ladder, rungs `0..=n_max`.
pub fn ladder_deg5(n_max: u32, ctx: &PrecisionContext) -> Result<Vec<LadderState>> {
    ensure_fits(Scheme::Deg5, n_max, ctx)?;
    let two_pi = two_pi_reference(ctx)?;
    let states = tower(n_max, ctx)?
        .into_iter()
        .map(|t| state(Scheme::Deg5, t.n, t.alpha, t.u, &two_pi, ctx))
        .collect::<Result<Vec<_>>>()?;
    check_shrinking(&states)?;
    Ok(states)
}

/// Degree-11 ladder, rungs `0..=m_max`; rung 0 is `R(e^{−10π})`.
pub fn ladder_deg11(m_max: u32, ctx: &PrecisionContext) -> Result<Vec<LadderState>> {
    ensure_fits(Scheme::Deg11, m_max, ctx)?;
    let two_pi = two_pi_reference(ctx)?;
    let base = tower(1, ctx)?.pop().expect("tower(1) has two levels").u;
    let mut states = vec![state(Scheme::Deg11, 0, 5, base, &two_pi, ctx)?];
    for m in 1..=m_max {
        let prev = states.last().expect("non-empty");
        let sol = rogers_solve(&prev.u, ctx)?;
        let alpha = prev.alpha * 11;
        let next = state(Scheme::Deg11, m, alpha, sol.v, &two_pi, ctx)?;
        // the root must extend the ladder: a spurious root would not
        // shrink the error
        if next.overshoot.abs() >= prev.overshoot.abs() {
            return Err(Error::RootAmbiguity(format!(
                "degree-11 root at level {m} does not improve the 2π approximation"
            )));
        }
        states.push(next);
    }
    check_shrinking(&states)?;
    Ok(states)
}

pub fn ladder(scheme: Scheme, level: u32, ctx: &PrecisionContext) -> Result<Vec<LadderState>> {
    match scheme {
        Scheme::Deg5 => ladder_deg5(level, ctx),
        Scheme::Deg11 => ladder_deg11(level, ctx),
    }
}

/// Certified leading digits of 2π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitString {
    pub scheme: Scheme,
    pub level: u32,
    pub k: u64,
    /// `6.2831…` with exactly `k` digits.
    pub digits: String,
}

/// The `k` digits of 2π that the rung `level` resolves, read off the
/// independent reference.
pub fn digits_of_2pi(scheme: Scheme, level: u32, ctx: &PrecisionContext) -> Result<DigitString> {
    let states = ladder(scheme, level, ctx)?;
    let last = states.last().expect("ladder has at least one rung");
    let k = last.digit_report()?.k_correct;
    let needed = k + u64::from(ctx.guard_digits());
    if needed > u64::from(ctx.working_digits()) {
        return Err(Error::ReferenceShortfall {
            needed,
            available: ctx.working_digits(),
        });
    }
    let two_pi = two_pi_reference(ctx)?;
    let n = usize::try_from(k).expect("digit count fits usize");
    // truncation must not depend on the last few reference digits
    let slack = ctx.tolerance(5);
    let lo = (&two_pi - &slack).sig_digits(n, DigitRounding::Truncate);
    let hi = (&two_pi + &slack).sig_digits(n, DigitRounding::Truncate);
    if lo != hi {
        return Err(Error::ReferenceShortfall {
            needed: needed + 10,
            available: ctx.working_digits(),
        });
    }
    Ok(DigitString {
        scheme,
        level,
        k,
        digits: lo.to_plain(),
    })
}

/// `R(e^{−2πα}) / e^{−2πα/5}`, which rises to 1 as `α` grows.
pub fn limit_ratio(alpha: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if alpha < &ctx.one() {
        return Err(Error::InvalidArgument(format!("alpha must be >= 1, got {alpha}")));
    }
    let exponent = two_pi_reference(ctx)? * alpha;
    let q = (-&exponent).exp();
    let r = crate::cfrac::eval_r(&q, ctx)?.value;
    Ok(r / (-(exponent / 5)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trunc(x: &Real, n: usize) -> String {
        x.sig_digits(n, DigitRounding::Truncate).to_scientific()
    }

    #[test]
    fn deg5_first_three_errors() {
        let ctx = context_for(Scheme::Deg5, 2).unwrap();
        let s = ladder_deg5(2, &ctx).unwrap();
        assert_eq!(trunc(&s[0].signed_error, 8), "-9.3284736e-3");
        assert_eq!(trunc(&s[1].signed_error, 8), "-2.2711010e-14");
        assert_eq!(trunc(&s[2].signed_error, 9), "-1.20840441e-69");
        let k: Vec<u64> = s.iter().map(|x| x.digit_report().unwrap().k_correct).collect();
        assert_eq!(k, vec![3, 14, 69]);
    }

    #[test]
    fn alpha_bookkeeping() {
        assert_eq!(Scheme::Deg5.alpha(3), Some(125));
        assert_eq!(Scheme::Deg11.alpha(0), Some(5));
        assert_eq!(Scheme::Deg11.alpha(2), Some(605));
        assert_eq!(Scheme::Deg5.alpha(40), None);
    }

    #[test]
    fn deg11_base_equals_deg5_level1() {
        let ctx = context_for(Scheme::Deg11, 1).unwrap();
        let d11 = ladder_deg11(0, &ctx).unwrap();
        let d5 = ladder_deg5(1, &ctx).unwrap();
        assert_eq!(d11.len(), 1);
        assert_eq!(d11[0].u, d5[1].u);
        assert_eq!(d11[0].alpha, d5[1].alpha);
    }

    #[test]
    fn deg11_first_rung() {
        let ctx = context_for(Scheme::Deg11, 1).unwrap();
        let s = ladder_deg11(1, &ctx).unwrap();
        assert_eq!(s[1].alpha, 55);
        assert_eq!(trunc(&s[1].signed_error, 11), "7.5371714126e-152");
        assert!(s[1].signed_error.is_positive());
        assert_eq!(s[1].digit_report().unwrap().k_correct, 152);
    }

    #[test]
    fn digits_level0_and_1() {
        let ctx = context_for(Scheme::Deg5, 1).unwrap();
        let d0 = digits_of_2pi(Scheme::Deg5, 0, &ctx).unwrap();
        assert_eq!(d0.digits, "6.28");
        assert_eq!(d0.k, 3);
        let d1 = digits_of_2pi(Scheme::Deg5, 1, &ctx).unwrap();
        assert_eq!(d1.digits, "6.2831853071795");
        assert_eq!(d1.k, 14);
    }

    #[test]
    fn context_too_small_detected() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(matches!(ladder_deg5(2, &ctx), Err(Error::ContextTooSmall { .. })));
        assert!(matches!(ladder_deg11(1, &ctx), Err(Error::ContextTooSmall { .. })));
    }

    #[test]
    fn reference_shortfall_detected() {
        // enough working digits for the rung but k exceeds the target
        let ctx = PrecisionContext::with_guard(40, 40).unwrap();
        assert!(matches!(
            digits_of_2pi(Scheme::Deg5, 2, &ctx),
            Err(Error::ReferenceShortfall { .. })
        ));
    }

    #[test]
    fn predicted_growth_law() {
        assert_eq!(predicted_digits(1), 3);
        assert_eq!(predicted_digits(5), 14);
        assert_eq!(predicted_digits(25), 69);
        assert_eq!(predicted_digits(55), 152);
        assert_eq!(predicted_digits(605), 1653);
        let nome: Vec<u64> = (0..7).map(|n| predicted_nome_digits(5u64.pow(n))).collect();
        assert_eq!(nome, vec![3, 14, 69, 342, 1706, 8528, 42637]);
    }

    #[test]
    fn limit_ratio_behaviour() {
        let ctx = PrecisionContext::new(30).unwrap();
        let r1 = limit_ratio(&ctx.one(), &ctx).unwrap();
        // independent 40-digit evaluation
        let expected = ctx.parse("0.9981360445985093321500244590470747").unwrap();
        assert!((&r1 - &expected).abs() < ctx.pow10(-28));
        let r5 = limit_ratio(&ctx.int(5), &ctx).unwrap();
        assert!(r5 > r1 && r5 < ctx.one());
        let r10 = limit_ratio(&ctx.int(10), &ctx).unwrap();
        let bound = (-(two_pi_reference(&ctx).unwrap() * 10)).exp() * 10;
        assert!(1 - &r10 < bound);
        assert!(limit_ratio(&ctx.ratio(1, 2), &ctx).is_err());
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("deg5".parse::<Scheme>().unwrap(), Scheme::Deg5);
        assert_eq!("deg11".parse::<Scheme>().unwrap(), Scheme::Deg11);
        assert!("deg7".parse::<Scheme>().is_err());
    }

    #[test]
    fn digit_prefixes_extend() {
        for (scheme, top) in [(Scheme::Deg5, 3), (Scheme::Deg11, 2)] {
            let ctx = context_for(scheme, top).unwrap();
            let two_pi = two_pi_reference(&ctx).unwrap();
            let states = ladder(scheme, top, &ctx).unwrap();
            let mut prev = String::new();
            for st in &states {
                let k = st.digit_report().unwrap().k_correct;
                assert!((&st.two_pi_approx - &two_pi).abs() < ctx.pow10(1 - k as i64));
                let d = digits_of_2pi(scheme, st.level, &ctx).unwrap();
                assert_eq!(d.digits.len() as u64, k + 1);
                assert!(d.digits.starts_with(&prev), "{scheme} level {}", st.level);
                prev = d.digits;
            }
        }
    }

    #[test]
    fn deg11_pairs_satisfy_relation() {
        let ctx = context_for(Scheme::Deg11, 2).unwrap();
        let s = ladder_deg11(2, &ctx).unwrap();
        for w in s.windows(2) {
            let r = crate::modular::residual_deg11(&w[0].u, &w[1].u, &ctx).unwrap();
            assert!(r.holds(&ctx), "level {}", w[1].level);
        }
        assert_eq!(trunc(&s[2].signed_error, 11), "1.0515416546e-1653");
        assert_eq!(s[2].digit_report().unwrap().k_correct, 1653);
    }

    #[test]
    fn digit_ratio_approaches_degree() {
        let ctx = context_for(Scheme::Deg5, 4).unwrap();
        let k: Vec<f64> = ladder_deg5(4, &ctx)
            .unwrap()
            .iter()
            .map(|s| s.digit_report().unwrap().k_correct as f64)
            .collect();
        for w in k.windows(2).skip(1) {
            let ratio = w[1] / w[0];
            assert!((4.9..5.1).contains(&ratio), "{ratio}");
        }
    }
}
