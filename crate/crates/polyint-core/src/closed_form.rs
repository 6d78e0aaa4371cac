//! Closed-form evaluation of I(a,b,p,t) = integral over the real line of
//! x^p Li_t(+-e^{ax})/(1+e^{bx}) dx, its p=0 and p=t specializations, the
//! unit-interval K integral's series form, and the log-moment constant.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::euler::{euler_sum_with_cap, EulerSumSpec, SumKind};
use crate::series::{alternating_sum, richardson_sum, SeriesResult};
use crate::special::{binomial, dirichlet_eta, factorial, half_step_diff, riemann_zeta};
use crate::{ComplexScalar, Sign, DEFAULT_TERM_CAP};

const PI: f64 = core::f64::consts::PI;
const LN_2: f64 = core::f64::consts::LN_2;
/// Smallest tolerance the series engines will chase.
const MIN_TOL: f64 = 1e-13;
/// Internal tolerance for the no-tolerance specializations.
const COROLLARY_TOL: f64 = 1e-12;

fn neg1pow(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The integral's parameters. q = a/b is derived, positive by the a*b > 0
/// requirement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegralParams {
    pub sign: Sign,
    pub a: f64,
    pub b: f64,
    /// Power of x in the numerator.
    pub p: usize,
    /// Order of the polylogarithm; t >= 1.
    pub t: usize,
}

impl IntegralParams {
    pub fn new(sign: Sign, a: f64, b: f64, p: usize, t: usize) -> Result<Self> {
        let params = IntegralParams { sign, a, b, p, t };
        params.validate()?;
        Ok(params)
    }

    pub fn q(&self) -> f64 {
        self.a / self.b
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::Domain("a and b must be finite"));
        }
        if !(self.a * self.b > 0.0) {
            return Err(Error::Domain("a*b > 0 is required"));
        }
        if self.t == 0 {
            return Err(Error::Domain("t >= 1 is required"));
        }
        Ok(())
    }
}

/// Parity of p + t; the B component vanishes for odd weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl core::fmt::Display for Parity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// The evaluated integral, split into its real components A and B, the
/// coefficient C of the imaginary unit, and the overall prefactor
/// b_scale = p! sign(b)/b^{p+1}, with total = b_scale (A + B + C i).
#[derive(Clone, Copy, Debug)]
pub struct EvalBreakdown {
    pub a_part: f64,
    pub b_part: f64,
    pub c_part: f64,
    pub total: ComplexScalar,
    pub parity: Parity,
    pub b_scale: f64,
}

fn assemble(params: &IntegralParams, a_part: f64, b_part: f64, c_part: f64) -> EvalBreakdown {
    let b_scale =
        factorial(params.p) * Float::signum(params.b) / Float::powi(params.b, params.p as i32 + 1);
    // the +0.0 keeps a structurally zero imaginary part from picking up the
    // prefactor's sign as -0.0
    let total = ComplexScalar::new(
        b_scale * (a_part + b_part),
        b_scale * c_part + 0.0,
    );
    EvalBreakdown {
        a_part,
        b_part,
        c_part,
        total,
        parity: if (params.p + params.t) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        },
        b_scale,
    }
}

fn xi(sign: Sign, s: f64) -> Result<f64> {
    match sign {
        Sign::Plus => riemann_zeta(s),
        Sign::Minus => dirichlet_eta(s),
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if !(tol >= MIN_TOL) {
        return Err(Error::Domain("tolerance must be >= 1e-13"));
    }
    // each of up to four series contributions gets a share
    Ok(Float::max(tol / 4.0, MIN_TOL))
}

fn converged_value(r: SeriesResult) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NonConvergence("closed-form series did not reach tolerance"))
    }
}

/// Evaluates the integral in closed form to absolute tolerance `tol` on the
/// unscaled components.
pub fn evaluate(params: IntegralParams, tol: f64) -> Result<EvalBreakdown> {
    evaluate_with_cap(params, tol, DEFAULT_TERM_CAP)
}

/// As `evaluate` with an explicit term budget for the series parts. A budget
/// too small to reach `tol` is a non-convergence error, never a degraded
/// silent result.
pub fn evaluate_with_cap(params: IntegralParams, tol: f64, cap: usize) -> Result<EvalBreakdown> {
    params.validate()?;
    let sub_tol = check_tol(tol)?;
    let (p, t) = (params.p, params.t);
    let q = params.q();
    let sg = params.sign.factor();

    // A: the xi sums, with the boundary values xi(0) = -+1/2 kept in the loop
    let mut a_part =
        sg * neg1pow(p) / Float::powi(q, p as i32 + 1) * xi(params.sign, (p + t + 1) as f64)?;
    for j in 0..=t / 2 {
        a_part += sg
            * 2.0
            * Float::powi(q, (t - 2 * j) as i32)
            * binomial(p + t - 2 * j, p)
            * dirichlet_eta((p + t + 1 - 2 * j) as f64)?
            * xi(params.sign, (2 * j) as f64)?;
    }

    // B: zero for odd weight; the double series when the Euler-sum split
    // does not exist (t = 1, plus); the Euler-sum bracket otherwise
    let b_part = if (p + t) % 2 == 1 {
        0.0
    } else if t == 1 && params.sign == Sign::Plus {
        converged_value(double_series_b_with_cap(params.sign, p, t, q, sub_tol, cap)?)?
    } else {
        let kind = match params.sign {
            Sign::Plus => SumKind::Plain,
            Sign::Minus => SumKind::Alternating,
        };
        let full = converged_value(euler_sum_with_cap(
            EulerSumSpec::new(kind, p + 1, t, q)?,
            sub_tol,
            cap,
        )?)?;
        let half = converged_value(euler_sum_with_cap(
            EulerSumSpec::new(kind, p + 1, t, q / 2.0)?,
            sub_tol,
            cap,
        )?)?;
        let coef = neg1pow(p) + neg1pow(t);
        sg * coef
            * (full
                - Float::powi(2.0, -(p as i32)) * half
                - dirichlet_eta((p + 1) as f64)? * xi(params.sign, t as f64)?)
    };

    let c_part = match params.sign {
        Sign::Minus => 0.0,
        Sign::Plus => {
            -Float::powi(q, t as i32 - 1)
                * binomial(p + t - 1, p)
                * dirichlet_eta((p + t) as f64)?
                * PI
        }
    };

    Ok(assemble(&params, a_part, b_part, c_part))
}

/// The p = 0 specialization, assembled from its own formulas rather than by
/// calling `evaluate`; the two must agree component by component.
pub fn corollary_p0(params: IntegralParams) -> Result<EvalBreakdown> {
    params.validate()?;
    if params.p != 0 {
        return Err(Error::Domain("specialization requires p = 0"));
    }
    let t = params.t;
    let q = params.q();
    let even = t % 2 == 0;
    match params.sign {
        Sign::Minus => {
            // -(1/q) eta(t+1) - 2 sum q^{t-2j} eta(2j) eta(t+1-2j), the sum
            // reaching (t-1)/2 for odd t and t/2 for even t
            let mut a_part = -dirichlet_eta((t + 1) as f64)? / q;
            for j in 0..=t / 2 {
                a_part -= 2.0
                    * Float::powi(q, (t - 2 * j) as i32)
                    * dirichlet_eta((2 * j) as f64)?
                    * dirichlet_eta((t + 1 - 2 * j) as f64)?;
            }
            let b_part = if even {
                let s_q = alt_sum_1t(t, q)?;
                let s_half = alt_sum_1t(t, q / 2.0)?;
                2.0 * dirichlet_eta(t as f64)? * LN_2 - 2.0 * s_q + 2.0 * s_half
            } else {
                0.0
            };
            Ok(assemble(&params, a_part, b_part, 0.0))
        }
        Sign::Plus => {
            let mut a_part = riemann_zeta((t + 1) as f64)? / q;
            for j in 0..=t / 2 {
                a_part += 2.0
                    * Float::powi(q, (t - 2 * j) as i32)
                    * dirichlet_eta((t + 1 - 2 * j) as f64)?
                    * riemann_zeta((2 * j) as f64)?;
            }
            let b_part = if even {
                let s_q = plain_sum_1t(t, q)?;
                let s_half = plain_sum_1t(t, q / 2.0)?;
                2.0 * (s_q - s_half - riemann_zeta(t as f64)? * LN_2)
            } else {
                0.0
            };
            let c_part = -Float::powi(q, t as i32 - 1) * dirichlet_eta(t as f64)? * PI;
            Ok(assemble(&params, a_part, b_part, c_part))
        }
    }
}

/// The p = t specialization. The minus form is stated for q = 1 with a > 0;
/// the plus form requires even t (odd t has no published specialization).
pub fn corollary_pt(params: IntegralParams) -> Result<EvalBreakdown> {
    params.validate()?;
    let t = params.t;
    if params.p != t {
        return Err(Error::Domain("specialization requires p = t"));
    }
    let q = params.q();
    match params.sign {
        Sign::Minus => {
            if q != 1.0 || params.a <= 0.0 {
                return Err(Error::Domain("minus-sign p = t form requires a = b > 0"));
            }
            // stated as (-a)^{t+1}/t! I = rhs; with b_scale = t! sign(a)/a^{t+1}
            // that is rhs = (-1)^{t+1} (A + B), so components are unscaled here
            let flip = neg1pow(t + 1);
            let mut a_sum = dirichlet_eta((2 * t + 1) as f64)?;
            for j in 0..=t / 2 {
                a_sum += 2.0
                    * neg1pow(t)
                    * binomial(2 * t - 2 * j, t)
                    * dirichlet_eta((2 * t + 1 - 2 * j) as f64)?
                    * dirichlet_eta((2 * j) as f64)?;
            }
            let s_one = alt_sum(t + 1, t, 1.0)?;
            let s_half = alt_sum(t + 1, t, 0.5)?;
            let b_sum = 2.0 * s_one
                - Float::powi(2.0, 1 - t as i32) * s_half
                - 2.0 * dirichlet_eta((t + 1) as f64)? * dirichlet_eta(t as f64)?;
            Ok(assemble(&params, flip * a_sum, flip * b_sum, 0.0))
        }
        Sign::Plus => {
            if t % 2 != 0 {
                return Err(Error::Domain("plus-sign p = t form requires even t"));
            }
            let mut a_part = neg1pow(t) / Float::powi(q, t as i32 + 1)
                * riemann_zeta((2 * t + 1) as f64)?;
            for j in 0..=t / 2 {
                a_part += 2.0
                    * Float::powi(q, (t - 2 * j) as i32)
                    * binomial(2 * t - 2 * j, t)
                    * dirichlet_eta((2 * t + 1 - 2 * j) as f64)?
                    * riemann_zeta((2 * j) as f64)?;
            }
            let s_q = plain_sum(t + 1, t, q)?;
            let s_half = plain_sum(t + 1, t, q / 2.0)?;
            let b_part = 2.0
                * (s_q
                    - Float::powi(2.0, -(t as i32)) * s_half
                    - dirichlet_eta((t + 1) as f64)? * riemann_zeta(t as f64)?);
            let c_part = -Float::powi(q, t as i32 - 1)
                * binomial(2 * t - 1, t)
                * dirichlet_eta((2 * t) as f64)?
                * PI;
            Ok(assemble(&params, a_part, b_part, c_part))
        }
    }
}

fn alt_sum_1t(t: usize, r: f64) -> Result<f64> {
    alt_sum(1, t, r)
}

fn plain_sum_1t(t: usize, r: f64) -> Result<f64> {
    plain_sum(1, t, r)
}

fn alt_sum(p: usize, t: usize, r: f64) -> Result<f64> {
    converged_value(euler_sum_with_cap(
        EulerSumSpec::new(SumKind::Alternating, p, t, r)?,
        COROLLARY_TOL,
        DEFAULT_TERM_CAP,
    )?)
}

fn plain_sum(p: usize, t: usize, r: f64) -> Result<f64> {
    converged_value(euler_sum_with_cap(
        EulerSumSpec::new(SumKind::Plain, p, t, r)?,
        COROLLARY_TOL,
        DEFAULT_TERM_CAP,
    )?)
}

/// The value of the unit-interval log moment: log^m y/(1+y) integrates to
/// (-1)^m m! eta(m+1) over [0,1].
pub fn log_moment(m: usize) -> f64 {
    neg1pow(m)
        * factorial(m)
        * dirichlet_eta((m + 1) as f64).expect("eta at integer s >= 1 cannot fail")
}

/// K(c,p,q,t): series form of the unit-interval integral
/// x^c log^p x Li_t(+-x^q)/(1+x), as
/// ((-1)^p p!/2^{p+1}) sum_n (+-1)^n n^{-t} [H^{(p+1)}_{(qn+c)/2} - H^{(p+1)}_{(qn+c-1)/2}].
pub fn k_integral(
    sign: Sign,
    c: f64,
    p: usize,
    q: f64,
    t: usize,
    tol: f64,
) -> Result<SeriesResult> {
    k_integral_with_cap(sign, c, p, q, t, tol, DEFAULT_TERM_CAP)
}

/// As `k_integral` with an explicit term budget.
pub fn k_integral_with_cap(
    sign: Sign,
    c: f64,
    p: usize,
    q: f64,
    t: usize,
    tol: f64,
    cap: usize,
) -> Result<SeriesResult> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Domain("k integral requires finite q > 0"));
    }
    if !(c >= -1.0 && c.is_finite()) {
        return Err(Error::Domain("k integral requires c >= -1"));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::Domain("tolerance must be >= 1e-13"));
    }
    if sign == Sign::Plus && p + t == 0 {
        // terms ~ 1/(qn): the positive series is harmonic
        return Err(Error::Divergent("k integral diverges for plus sign with p = t = 0"));
    }
    let pref = neg1pow(p) * factorial(p) / Float::powi(2.0, p as i32 + 1);
    // qn + c > -1 for n >= 1, so the half-step difference stays in domain
    let term = |n: usize| {
        half_step_diff(p + 1, (q * n as f64 + c) / 2.0) / Float::powi(n as f64, t as i32)
    };
    let out = match sign {
        Sign::Plus => richardson_sum(term, (p + t) as i32, tol, cap)?,
        Sign::Minus => alternating_sum(term, tol, cap)?,
    };
    if !out.converged {
        return Err(Error::NonConvergence("k integral series did not reach tolerance"));
    }
    let scale = match sign {
        Sign::Plus => pref,
        // the engine sums (-1)^{n+1} term; the series wants (-1)^n
        Sign::Minus => -pref,
    };
    Ok(SeriesResult {
        value: scale * out.value,
        abs_error_estimate: Float::abs(scale) * out.est,
        terms_used: out.terms,
        converged: true,
    })
}

/// The B component as the raw double series
/// [(-1)^p + (-1)^t] sum_n (+-1)^n sum_k (-1)^k / (n^t (qn+k)^{p+1}),
/// inner k-sum collapsed in closed form to a half-step harmonic difference.
pub fn double_series_b(sign: Sign, p: usize, t: usize, q: f64, tol: f64) -> Result<SeriesResult> {
    double_series_b_with_cap(sign, p, t, q, tol, DEFAULT_TERM_CAP)
}

/// As `double_series_b` with an explicit term budget.
pub fn double_series_b_with_cap(
    sign: Sign,
    p: usize,
    t: usize,
    q: f64,
    tol: f64,
    cap: usize,
) -> Result<SeriesResult> {
    if t == 0 {
        return Err(Error::Domain("double series requires t >= 1"));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Domain("double series requires finite q > 0"));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::Domain("tolerance must be >= 1e-13"));
    }
    if (p + t) % 2 == 1 {
        // the [(-1)^p + (-1)^t] prefactor vanishes
        return Ok(SeriesResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            terms_used: 0,
            converged: true,
        });
    }
    // sum_k (-1)^k/(qn+k)^{p+1} = -2^{-(p+1)} D_{p+1}(qn/2)
    let coef = neg1pow(p) + neg1pow(t);
    let inner_scale = -coef / Float::powi(2.0, p as i32 + 1);
    let term = |n: usize| half_step_diff(p + 1, q * n as f64 / 2.0) / Float::powi(n as f64, t as i32);
    let (out, scale) = match sign {
        Sign::Plus => (richardson_sum(term, (p + t) as i32, tol, cap)?, inner_scale),
        Sign::Minus => (alternating_sum(term, tol, cap)?, -inner_scale),
    };
    if !out.converged {
        return Err(Error::NonConvergence("double series did not reach tolerance"));
    }
    Ok(SeriesResult {
        value: scale * out.value,
        abs_error_estimate: Float::abs(scale) * out.est,
        terms_used: out.terms,
        converged: true,
    })
}
