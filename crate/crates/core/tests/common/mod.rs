//! Shared oracles and property bodies for the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rug::Integer;

use rrpi_core::closedform::tower;
use rrpi_core::modular::residual_deg11;
use rrpi_core::{
    cfrac::{default_bracket, eval_r, invert_r},
    digits_of_2pi, ladder_deg11, residual_deg5, table1, two_pi_reference, DigitRounding, PrecisionContext,
    Real, Scheme,
};

/// 2π to 2000 significant digits (truncated), frozen from an unrelated
/// arbitrary-precision package.
pub const TWO_PI_2000: &str = include_str!("../fixtures/two_pi_2000.txt");

/// `arctan(1/x) * scale` in fixed point.
fn arctan_inv(x: u32, scale: &Integer) -> Integer {
    let x2 = Integer::from(x) * x;
    let mut power = Integer::from(scale / x);
    let mut sum = power.clone();
    let mut n: u32 = 1;
    loop {
        power /= &x2;
        if power == 0 {
            break;
        }
        let term = Integer::from(&power / (2 * n + 1));
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// Leading `digits` significant digits of 2π (truncated) by Machin's
/// formula `π/4 = 4 arctan(1/5) − arctan(1/239)` in integer arithmetic.
pub fn machin_two_pi(digits: usize) -> String {
    let guard = 20;
    let scale = Integer::from(Integer::u_pow_u(10, (digits + guard) as u32));
    let quarter = arctan_inv(5, &scale) * 4 - arctan_inv(239, &scale);
    let two_pi: Integer = quarter * 8;
    let s = two_pi.to_string();
    format!("{}.{}", &s[..1], &s[1..digits])
}

/// Truncated decimal form of `x` with `n` significant digits.
pub fn truncated(x: &Real, n: usize) -> String {
    x.sig_digits(n, DigitRounding::Truncate).to_plain()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn fail(e: rrpi_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).expect("valid precision")
}

/// Consecutive tower values satisfy the degree-5 relation.
pub fn tower_pairs_satisfy_deg5(digits: u32, levels: u32) -> Result<(), TestCaseError> {
    let c = ctx(digits);
    let t = tower(levels, &c).map_err(fail)?;
    for w in t.windows(2) {
        let r = residual_deg5(&w[0].u, &w[1].u, &c).map_err(fail)?;
        ensure(r.holds(&c), format!("level {} residual {}", w[1].n, r.residual))?;
    }
    Ok(())
}

/// Solved degree-11 pairs satisfy the degree-11 relation.
pub fn solved_pairs_satisfy_deg11(m_max: u32) -> Result<(), TestCaseError> {
    let c = rrpi_core::piladder::context_for(Scheme::Deg11, m_max).expect("context");
    let l = ladder_deg11(m_max, &c).map_err(fail)?;
    for w in l.windows(2) {
        let r = residual_deg11(&w[0].u, &w[1].u, &c).map_err(fail)?;
        ensure(r.holds(&c), format!("level {} residual {}", w[1].level, r.residual))?;
    }
    Ok(())
}

pub fn eval_r_monotone(a: f64, b: f64) -> Result<(), TestCaseError> {
    let c = ctx(40);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let (qa, qb) = (c.from_f64(lo), c.from_f64(hi));
    let ra = eval_r(&qa, &c).map_err(fail)?.value;
    let rb = eval_r(&qb, &c).map_err(fail)?.value;
    if lo == hi {
        ensure(ra == rb, "equal arguments give different values")
    } else {
        ensure(ra < rb, format!("R({lo}) = {ra} not below R({hi}) = {rb}"))
    }
}

/// `invert_r(eval_r(q)) = q`: the forward residual is at working precision
/// and the recovered `q` is off by at most the condition number
/// `R / (q R')` times that.
pub fn invert_roundtrip(q: f64) -> Result<(), TestCaseError> {
    let c = ctx(50);
    let q = c.from_f64(q);
    let r = eval_r(&q, &c).map_err(fail)?.value;
    let bracket = default_bracket(&r, &c).map_err(fail)?;
    let back = invert_r(&r, &c, bracket).map_err(fail)?;
    let forward = eval_r(&back, &c).map_err(fail)?.value;
    ensure((&forward - &r).abs() <= c.tolerance(3), format!("R(q') - R(q) = {}", &forward - &r))?;

    let h = &q * c.pow10(-20);
    let up = eval_r(&(&q + &h), &c).map_err(fail)?.value;
    let down = eval_r(&(&q - &h), &c).map_err(fail)?.value;
    let slope = (up - down) / (h * 2);
    let kappa = (&r / (&q * slope)).abs();
    let rel = ((&back - &q) / &q).abs();
    ensure(rel <= c.tolerance(5) * (kappa + 1), format!("q = {q}, recovered {back}"))
}

pub fn strict_chain(digits: u32) -> Result<(), TestCaseError> {
    table1(&ctx(digits)).map(|_| ()).map_err(fail)
}

pub fn exp_ln_roundtrip(x: f64, digits: u32) -> Result<(), TestCaseError> {
    let c = ctx(digits);
    let x = c.from_f64(x);
    let back = x.ln().map_err(fail)?.exp();
    let rel = ((&back - &x) / &x).abs();
    ensure(rel <= c.tolerance(3), format!("exp(ln({x})) = {back}"))
}

/// Digit strings of successive rungs extend each other, and each rung's
/// approximation is within `10^-(k-1)` of 2π.
pub fn prefix_consistency(scheme: Scheme, top: u32) -> Result<(), TestCaseError> {
    let c = rrpi_core::piladder::context_for(scheme, top).expect("context");
    let reference = two_pi_reference(&c).map_err(fail)?;
    let states = rrpi_core::ladder(scheme, top, &c).map_err(fail)?;
    let mut prev: Option<String> = None;
    for st in &states {
        let d = digits_of_2pi(scheme, st.level, &c).map_err(fail)?;
        let k = st.digit_report().map_err(fail)?.k_correct;
        let bound = c.pow10(1 - k as i64);
        ensure((&st.two_pi_approx - &reference).abs() < bound, format!("level {} misses k", st.level))?;
        if let Some(p) = &prev {
            ensure(d.digits.starts_with(p.as_str()), format!("level {} is not an extension", st.level))?;
        }
        prev = Some(d.digits);
    }
    Ok(())
}

pub fn q_strategy() -> impl Strategy<Value = f64> {
    0.001f64..0.9
}
