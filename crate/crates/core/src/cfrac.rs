//! The Rogers–Ramanujan continued fraction
//!
//! ```text
//! R(q) = q^(1/5) / (1 + q / (1 + q^2 / (1 + q^3 / (1 + ...))))
//! ```
//!
//! for real `0 < q < 1`, evaluated by backward recurrence from a truncation
//! depth `N` where the tail is replaced by its limit 1, and its inverse.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::roots::refine_increasing;

/// Largest accepted nome. Depth grows like `1/(1 - q)` near 1.
pub const MAX_Q: f64 = 1.0 - 1e-6;

/// Default cap on the truncation depth.
pub const DEFAULT_MAX_DEPTH: usize = 5_000_000;

/// Extra decimal digits the inversion runs with before rounding back.
const INVERT_EXTRA_DIGITS: u32 = 10;

/// A value of `R(q)` together with the depth used to compute it.
#[derive(Debug, Clone)]
pub struct CfracEval {
    pub q: Real,
    pub depth_used: usize,
    pub value: Real,
}

/// Smallest `N` with `q^N < 10^-(working + 5)`.
pub fn truncation_depth(q: &Real, ctx: &PrecisionContext) -> Result<usize> {
    validate_q(q, ctx)?;
    let neg_ln_q = -q.ln()?.to_f64();
    let needed = f64::from(ctx.working_digits() + 5) * std::f64::consts::LN_10;
    let n = (needed / neg_ln_q).floor() + 1.0;
    if !n.is_finite() || n > DEFAULT_MAX_DEPTH as f64 {
        return Err(Error::NonConvergence {
            what: "continued fraction truncation depth",
            iterations: DEFAULT_MAX_DEPTH,
        });
    }
    Ok((n as usize).max(1))
}

/// `R(q)` to working precision.
pub fn eval_r(q: &Real, ctx: &PrecisionContext) -> Result<CfracEval> {
    let depth = truncation_depth(q, ctx)?;
    eval_r_at_depth(q, depth, ctx)
}

/// `R(q)` with the tail replaced by 1 below level `depth`.
pub fn eval_r_at_depth(q: &Real, depth: usize, ctx: &PrecisionContext) -> Result<CfracEval> {
    validate_q(q, ctx)?;
    if depth == 0 {
        return Err(Error::InvalidArgument("continued fraction depth must be positive".into()));
    }
    if depth > DEFAULT_MAX_DEPTH {
        return Err(Error::NonConvergence {
            what: "continued fraction evaluation",
            iterations: depth,
        });
    }
    // Guard bits cover the ~depth rounding errors of the recurrence.
    let guard_bits = 32 + (usize::BITS - depth.leading_zeros());
    let inner =
        PrecisionContext::with_guard(ctx.target_digits(), ctx.guard_digits() + guard_bits.div_ceil(3))?;
    let qi = q.at(&inner);

    // partial numerator q^j, walked down from q^depth
    let mut num = qi.powi(i32::try_from(depth).expect("depth bounded by DEFAULT_MAX_DEPTH"));
    let mut tail = inner.one();
    for _ in 0..depth {
        tail = &num / &tail + 1;
        num = num / &qi;
    }
    let value = qi.root(5)? / tail;
    Ok(CfracEval {
        q: q.clone(),
        depth_used: depth,
        value: value.at(ctx),
    })
}

/// A bracket `(q_lo, q_hi)` with `R(q_lo) < target < R(q_hi)`.
///
/// Uses `q^(1/5) / (1 + q) < R(q) < q^(1/5)`. Where that bound needs `q`
/// near 1, the upper end instead walks towards 1 by halving `1 - q` until
/// `R` exceeds the target.
pub fn default_bracket(target: &Real, ctx: &PrecisionContext) -> Result<(Real, Real)> {
    validate_target(target)?;
    // R(q) < (sqrt(5) - 1)/2 on (0, 1)
    let sup = (ctx.int(5).sqrt()? - 1) / 2;
    if target >= &sup {
        return Err(Error::InvalidBracket(format!("target {target} is not below sup R = {sup}")));
    }
    let lo = target.powi(5);
    // q^(1/5)/(1+q) >= target holds at q = (target (1 + s))^5 once s >= q
    let max_q = ctx.from_f64(MAX_Q);
    let mut stretch = ctx.from_f64(0.5);
    loop {
        let hi = (target * (stretch.clone() + 1)).powi(5);
        if hi >= max_q {
            break;
        }
        if stretch >= hi {
            return Ok((lo, hi));
        }
        stretch = stretch * 2;
    }
    let mut hi = (&lo + 1) / 2;
    loop {
        match eval_r(&hi, ctx) {
            Ok(r) if &r.value > target => return Ok((lo, hi)),
            Ok(_) if hi < max_q => hi = (hi + 1) / 2,
            Ok(_) | Err(Error::NonConvergence { .. } | Error::Domain { .. }) => {
                return Err(Error::InvalidBracket(format!(
                    "no q up to {MAX_Q} has R(q) above {target}"
                )))
            }
            Err(e) => return Err(e),
        }
    }
}

/// Find `q` with `R(q) = target` inside `bracket`.
///
/// Bisection-safeguarded secant on `R(q) - target`, seeded at `target^5`,
/// run 10 digits above working precision. The returned `q` satisfies
/// `|R(q) - target| < 1 ulp` at that raised precision.
pub fn invert_r(target: &Real, ctx: &PrecisionContext, bracket: (Real, Real)) -> Result<Real> {
    validate_target(target)?;
    let inner = ctx.widened(INVERT_EXTRA_DIGITS);
    let t = target.at(&inner);
    let (lo, hi) = (bracket.0.at(&inner), bracket.1.at(&inner));
    for end in [&lo, &hi] {
        if !end.is_positive() || end.to_f64() > MAX_Q {
            return Err(Error::InvalidBracket(format!("bracket end {end} outside (0, {MAX_Q}]")));
        }
    }
    let seed = t.powi(5);
    let tol = t.ulp();
    let max_iter = 4 * inner.bits() as usize;
    let q = refine_increasing(
        |q| Ok(eval_r(q, &inner)?.value - &t),
        lo,
        hi,
        Some(seed),
        &tol,
        max_iter,
    )?;
    Ok(q.at(ctx))
}

fn validate_q(q: &Real, ctx: &PrecisionContext) -> Result<()> {
    if q.working_digits() != ctx.working_digits() {
        return Err(Error::PrecisionMismatch {
            left: q.working_digits(),
            right: ctx.working_digits(),
        });
    }
    if !q.is_positive() || q.to_f64() >= 1.0 {
        return Err(Error::domain("eval_r", format!("q must lie in (0, 1), got {q}")));
    }
    if q.to_f64() > MAX_Q {
        return Err(Error::domain(
            "eval_r",
            format!("q = {q} exceeds the supported maximum 1 - 1e-6"),
        ));
    }
    Ok(())
}

fn validate_target(target: &Real) -> Result<()> {
    if !target.is_positive() || target.to_f64() >= 1.0 {
        return Err(Error::domain("invert_r", format!("target must lie in (0, 1), got {target}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{two_pi_reference, DigitRounding};

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn e_minus_two_pi(c: &PrecisionContext) -> Real {
        (-two_pi_reference(c).unwrap()).exp()
    }

    #[test]
    fn r_at_e_minus_two_pi() {
        let c = ctx(10);
        let r = eval_r(&e_minus_two_pi(&c), &c).unwrap();
        assert_eq!(r.value.sig_digits(10, DigitRounding::Nearest).to_plain(), "0.2840790438");
    }

    #[test]
    fn r5_at_two_pi_over_sqrt5_gives_x1() {
        let c = ctx(10);
        let arg = -(two_pi_reference(&c).unwrap() / c.int(5).sqrt().unwrap());
        let x = eval_r(&arg.exp(), &c).unwrap().value.powi(5);
        let x1 = &x * 6 / (1 - &x);
        assert_eq!(x1.sig_digits(10, DigitRounding::Nearest).to_plain(), "0.2826810695");
    }

    #[test]
    fn leading_factor_dominates_near_zero() {
        let c = ctx(40);
        let mut prev_gap = c.one();
        for e in [2, 5, 10, 20, 40] {
            let q = c.pow10(-e);
            let r = eval_r(&q, &c).unwrap();
            let ratio = &r.value / q.root(5).unwrap();
            assert!(ratio <= c.one() && ratio.is_positive());
            let gap = 1 - ratio;
            assert!(gap < prev_gap);
            // 1 - R/q^(1/5) ~ q
            assert!(gap <= &q * 2);
            prev_gap = gap;
        }
    }

    #[test]
    fn depth_stability_at_half() {
        let c = ctx(100);
        let q = c.ratio(1, 2);
        let base = eval_r(&q, &c).unwrap();
        let deeper = eval_r_at_depth(&q, base.depth_used + 50, &c).unwrap();
        assert_eq!(base.value, deeper.value);
        assert!(base.depth_used > 300 && base.depth_used < 500);
    }

    #[test]
    fn domain_checks() {
        let c = ctx(20);
        assert!(eval_r(&c.zero(), &c).is_err());
        assert!(eval_r(&c.one(), &c).is_err());
        assert!(eval_r(&c.int(-1), &c).is_err());
        assert!(eval_r(&c.parse("0.9999999").unwrap(), &c).is_err());
        assert!(eval_r_at_depth(&c.ratio(1, 2), 0, &c).is_err());
        let other = ctx(30).ratio(1, 2);
        assert!(matches!(eval_r(&other, &c), Err(Error::PrecisionMismatch { .. })));
    }

    #[test]
    fn value_in_unit_interval() {
        let c = ctx(30);
        for s in ["0.001", "0.3", "0.9", "0.99"] {
            let v = eval_r(&c.parse(s).unwrap(), &c).unwrap().value;
            assert!(v.is_positive() && v < c.one(), "R({s}) = {v}");
        }
    }

    #[test]
    fn invert_roundtrip_at_e_minus_two_pi() {
        let c = ctx(60);
        let q0 = e_minus_two_pi(&c);
        let target = eval_r(&q0, &c).unwrap().value;
        let bracket = default_bracket(&target, &c).unwrap();
        let q = invert_r(&target, &c, bracket).unwrap();
        assert!(((q - &q0) / &q0).abs() <= c.tolerance(3));
    }

    #[test]
    fn invert_target_015() {
        let c = ctx(50);
        let target = c.parse("0.15").unwrap();
        let bracket = default_bracket(&target, &c).unwrap();
        let q = invert_r(&target, &c, bracket).unwrap();
        let back = eval_r(&q, &c).unwrap().value;
        assert!((back - &target).abs() <= c.tolerance(2));
    }

    #[test]
    fn invert_rejects_bad_bracket() {
        let c = ctx(30);
        let target = c.parse("0.15").unwrap();
        let bad = (c.parse("0.5").unwrap(), c.parse("0.6").unwrap());
        assert!(matches!(invert_r(&target, &c, bad), Err(Error::InvalidBracket(_))));
        assert!(invert_r(&c.parse("1.5").unwrap(), &c, default_bracket(&target, &c).unwrap()).is_err());
    }

    #[test]
    fn bracket_contains_root() {
        let c = ctx(30);
        for s in ["0.01", "0.15", "0.5", "0.55", "0.6"] {
            let t = c.parse(s).unwrap();
            let (lo, hi) = default_bracket(&t, &c).unwrap();
            assert!(eval_r(&lo, &c).unwrap().value < t);
            assert!(eval_r(&hi, &c).unwrap().value > t);
        }
    }

    #[test]
    fn target_above_supremum_has_no_bracket() {
        let c = ctx(30);
        let t = c.parse("0.7").unwrap();
        assert!(matches!(default_bracket(&t, &c), Err(Error::InvalidBracket(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn eval_r_is_increasing(a in 0.001f64..0.9, b in 0.001f64..0.9) {
                let c = ctx(40);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let ra = eval_r(&c.from_f64(lo), &c).unwrap().value;
                let rb = eval_r(&c.from_f64(hi), &c).unwrap().value;
                if lo == hi {
                    prop_assert_eq!(ra, rb);
                } else {
                    prop_assert!(ra < rb, "R({}) = {} vs R({}) = {}", lo, ra, hi, rb);
                }
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            // R flattens towards its supremum, so q itself is only
            // recovered to the conditioning R / (q R')
            #[test]
            fn invert_undoes_eval(q in 0.001f64..0.9) {
                let c = ctx(50);
                let q = c.from_f64(q);
                let r = eval_r(&q, &c).unwrap().value;
                let back = invert_r(&r, &c, default_bracket(&r, &c).unwrap()).unwrap();
                let forward = eval_r(&back, &c).unwrap().value;
                prop_assert!((&forward - &r).abs() <= c.tolerance(3));

                let h = &q * c.pow10(-20);
                let up = eval_r(&(&q + &h), &c).unwrap().value;
                let down = eval_r(&(&q - &h), &c).unwrap().value;
                let kappa = (&r / (&q * ((up - down) / (h * 2)))).abs();
                let rel = ((&back - &q) / &q).abs();
                prop_assert!(rel <= c.tolerance(5) * (kappa + 1), "q = {}, recovered {}", q, back);
            }
        }
    }
}
