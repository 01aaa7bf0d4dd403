//! Bracketed root refinement for increasing functions: secant steps,
//! falling back to bisection whenever the secant leaves the bracket or the
//! bracket stops shrinking.

use crate::error::{Error, Result};
use crate::precision::Real;

/// Find `x` in `[lo, hi]` with `|f(x)| <= tol_f`, for `f` increasing with
/// `f(lo) < 0 < f(hi)`.
pub(crate) fn refine_increasing<F>(
    mut f: F,
    lo: Real,
    hi: Real,
    seed: Option<Real>,
    tol_f: &Real,
    max_iter: usize,
) -> Result<Real>
where
    F: FnMut(&Real) -> Result<Real>,
{
    if lo >= hi {
        return Err(Error::InvalidBracket(format!("lower end {lo} is not below upper end {hi}")));
    }
    let f_lo = f(&lo)?;
    let f_hi = f(&hi)?;
    if f_lo.abs() <= *tol_f {
        return Ok(lo);
    }
    if f_hi.abs() <= *tol_f {
        return Ok(hi);
    }
    if !(f_lo.is_negative() && f_hi.is_positive()) {
        return Err(Error::InvalidBracket(format!(
            "no sign change: f(lo) = {f_lo}, f(hi) = {f_hi}"
        )));
    }

    let (mut lo, mut hi) = (lo, hi);
    // bracket widths one and two steps back
    let mut widths = (&hi - &lo, &hi - &lo);
    let mut x = match seed {
        Some(s) if s > lo && s < hi => s,
        _ => (&lo + &hi) / 2,
    };
    let mut fx = f(&x)?;
    // Last point not equal to x, used for the secant.
    let (mut x_prev, mut f_prev) = if fx.is_negative() { (hi.clone(), f_hi) } else { (lo.clone(), f_lo) };

    for _ in 0..max_iter {
        if fx.abs() <= *tol_f {
            return Ok(x);
        }
        if fx.is_negative() {
            lo = x.clone();
        } else {
            hi = x.clone();
        }

        let new_width = &hi - &lo;
        let stalled = new_width.clone() * 2 > widths.1;
        widths = (new_width, widths.0);

        let secant = if f_prev != fx {
            let step = &fx * (&x - &x_prev) / (&fx - &f_prev);
            Some(&x - step)
        } else {
            None
        };
        let next = match secant {
            Some(c) if !stalled && c > lo && c < hi => c,
            _ => (&lo + &hi) / 2,
        };
        if next == x {
            return Ok(x);
        }
        x_prev = std::mem::replace(&mut x, next);
        f_prev = std::mem::replace(&mut fx, f(&x)?);
    }
    Err(Error::NonConvergence {
        what: "bracketed root refinement",
        iterations: max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;

    #[test]
    fn finds_sqrt_two() {
        let c = PrecisionContext::new(60).unwrap();
        let tol = c.tolerance(2);
        let r = refine_increasing(|x| Ok(x.square() - 2), c.int(0), c.int(2), None, &tol, 40).unwrap();
        let exact = c.int(2).sqrt().unwrap();
        assert!((r - exact).abs() <= c.tolerance(3));
    }

    #[test]
    fn rejects_bad_bracket() {
        let c = PrecisionContext::new(30).unwrap();
        let tol = c.tolerance(2);
        let err = refine_increasing(|x| Ok(x.square() + 1), c.int(0), c.int(2), None, &tol, 50);
        assert!(matches!(err, Err(Error::InvalidBracket(_))));
        let err = refine_increasing(|x| Ok(x.clone()), c.int(2), c.int(1), None, &tol, 50);
        assert!(matches!(err, Err(Error::InvalidBracket(_))));
    }

    #[test]
    fn iteration_cap_reported() {
        let c = PrecisionContext::new(200).unwrap();
        let tol = c.tolerance(2);
        let err = refine_increasing(|x| Ok(x.powi(3) - 2), c.int(0), c.int(2), None, &tol, 2);
        assert!(matches!(err, Err(Error::NonConvergence { .. })));
    }
}
