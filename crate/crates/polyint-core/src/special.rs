//! Scalar special functions: zeta/eta (plus their derivatives), digamma and
//! polygamma, extended harmonic numbers of real index, half-step harmonic
//! differences, and the real-axis polylogarithm with analytic continuation.

use num_traits::Float;

use crate::bernoulli::BERNOULLI_EVEN_F64;
use crate::error::{Error, Result};
use crate::series::cvz_alternating;
use crate::ComplexScalar;

pub(crate) const EULER_GAMMA: f64 = 0.5772156649015329;
/// exp(-1/2); series/expansion dispatch boundary for the polylogarithm.
const EXP_NEG_HALF: f64 = 0.6065306597126334;
const PI: f64 = core::f64::consts::PI;
const LN_2: f64 = core::f64::consts::LN_2;

/// n! as binary64; exact through n = 22, correctly rounded far beyond.
pub(crate) fn factorial(n: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 2..=n {
        acc *= i as f64;
    }
    acc
}

/// C(n, k) computed exactly in integer arithmetic, rounded once on return.
/// Every intermediate product acc*(n-i) is divisible by i+1.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// H_m = 1 + 1/2 + .. + 1/m (H_0 = 0).
fn harmonic_int(m: usize) -> f64 {
    let mut acc = 0.0;
    for i in 1..=m {
        acc += 1.0 / i as f64;
    }
    acc
}

/// eta(s) for s >= 0. eta(0) = 1/2 and eta(1) = log 2 exactly by definition;
/// everything else through the accelerated alternating series.
pub fn dirichlet_eta(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::Domain("dirichlet_eta: s must be finite"));
    }
    if s < 0.0 {
        return Err(Error::Domain("dirichlet_eta requires s >= 0"));
    }
    if s == 0.0 {
        return Ok(0.5);
    }
    if s == 1.0 {
        return Ok(LN_2);
    }
    Ok(cvz_alternating(|k| Float::powf((k + 1) as f64, -s)))
}

/// zeta(s) for s > 1, plus the single continuation value zeta(0) = -1/2.
/// The strip 0 < s < 1, the pole s = 1, and s < 0 are rejected.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::Domain("riemann_zeta: s must be finite"));
    }
    if s == 0.0 {
        return Ok(-0.5);
    }
    if s == 1.0 {
        return Err(Error::Pole("riemann_zeta has a pole at s = 1"));
    }
    if s < 1.0 {
        return Err(Error::Domain("riemann_zeta requires s > 1 or s = 0"));
    }
    // 1 - 2^{1-s} without cancellation near s = 1
    let denom = -Float::exp_m1((1.0 - s) * LN_2);
    Ok(dirichlet_eta(s)? / denom)
}

/// eta'(s), s > 0.
pub(crate) fn eta_prime(s: f64) -> f64 {
    debug_assert!(s > 0.0);
    -cvz_alternating(|k| {
        let kp = (k + 1) as f64;
        Float::ln(kp) * Float::powf(kp, -s)
    })
}

/// zeta'(s), s > 1, through the eta functional relation.
pub(crate) fn zeta_prime(s: f64) -> Result<f64> {
    let denom = -Float::exp_m1((1.0 - s) * LN_2);
    let pow = Float::powf(2.0, 1.0 - s);
    Ok((eta_prime(s) - pow * LN_2 * riemann_zeta(s)?) / denom)
}

/// zeta(-k) for k >= 0: zeta(0) = -1/2, zeta(-2n) = 0, zeta(-k) = -B_{k+1}/(k+1).
pub(crate) fn zeta_neg_int(k: usize) -> f64 {
    if k == 0 {
        -0.5
    } else if k % 2 == 0 {
        0.0
    } else {
        -BERNOULLI_EVEN_F64[(k + 1) / 2] / (k + 1) as f64
    }
}

/// zeta at integer argument <= 0 or real argument > 1.
fn zeta_any(s: i64) -> f64 {
    if s <= 0 {
        zeta_neg_int((-s) as usize)
    } else {
        debug_assert!(s >= 2);
        riemann_zeta(s as f64).unwrap_or(f64::NAN)
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == Float::floor(x)
}

/// psi(x) for real x off the poles 0, -1, -2, ..
///
/// Recurrence shift to x >= 12, then the Bernoulli asymptotic series
/// truncated at the first negligible term.
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("digamma: x must be finite"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole("digamma pole at nonpositive integer"));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut s = Float::ln(x) - 0.5 * inv;
    let mut pw = inv2;
    for j in 1..=21 {
        let term = (BERNOULLI_EVEN_F64[j] / (2 * j) as f64) * pw;
        s -= term;
        if term.abs() < 1e-18 * s.abs() {
            break;
        }
        pw *= inv2;
    }
    Ok(acc + s)
}

/// psi^{(k)}(x), k >= 1, x off the poles. Same shift-then-asymptotic scheme.
pub fn polygamma(k: usize, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("polygamma requires k >= 1 (use digamma)"));
    }
    if !x.is_finite() {
        return Err(Error::Domain("polygamma: x must be finite"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole("polygamma pole at nonpositive integer"));
    }
    let mut x = x;
    let mut acc = 0.0;
    // psi^{(k)}(x) = psi^{(k)}(x+1) - (-1)^k k!/x^{k+1}
    let sgn_shift = -Float::powi(-1.0, k as i32);
    let kfac = factorial(k);
    while x < 12.0 {
        acc += sgn_shift * kfac / Float::powi(x, k as i32 + 1);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let xk = Float::powi(x, -(k as i32));
    let mut s = factorial(k - 1) * xk + 0.5 * kfac * xk * inv;
    // sum_{j>=1} B_{2j} (2j+k-1)!/((2j)! x^{2j+k})
    let mut g = factorial(k + 1) / 2.0;
    let mut pw = xk * inv2;
    for j in 1..=20usize {
        let term = BERNOULLI_EVEN_F64[j] * g * pw;
        s += term;
        if term.abs() < 1e-18 * s.abs() {
            break;
        }
        g = g * ((2 * j + k) * (2 * j + k + 1)) as f64 / ((2 * j + 1) * (2 * j + 2)) as f64;
        pw *= inv2;
    }
    Ok(Float::powi(-1.0, k as i32 - 1) * s + acc)
}

/// Extended harmonic number H^{(p)}_lambda for real lambda > -1, p >= 1.
///
/// p = 1 is gamma + psi(lambda+1); p >= 2 routes through polygamma. Agrees
/// with the integer partial sums at integer lambda.
pub fn harmonic_extended(lambda: f64, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("harmonic_extended requires p >= 1"));
    }
    if !lambda.is_finite() {
        return Err(Error::Domain("harmonic_extended: lambda must be finite"));
    }
    if lambda <= -1.0 {
        return Err(Error::Pole("harmonic_extended requires lambda > -1"));
    }
    if p == 1 {
        return Ok(EULER_GAMMA + digamma(lambda + 1.0)?);
    }
    let sign = Float::powi(-1.0, p as i32 - 1);
    Ok(riemann_zeta(p as f64)? + sign * polygamma(p - 1, lambda + 1.0)? / factorial(p - 1))
}

/// z1^{-m} - z2^{-m} for 0 < z1 < z2 without cancellation.
fn pow_diff(m: i32, z1: f64, z2: f64) -> f64 {
    -Float::powi(z1, -m) * Float::exp_m1(-(m as f64) * Float::ln_1p((z2 - z1) / z1))
}

/// D_m(lambda) = H^{(m)}_lambda - H^{(m)}_{lambda-1/2}, lambda > -1/2.
///
/// Both harmonic numbers lose all significance to cancellation for large
/// lambda (D_8(1000) ~ 1e-25), so the difference is built directly: recurrence
/// steps to lambda >= 12, then a term-by-term differenced asymptotic series.
pub(crate) fn half_step_diff(m: usize, lambda: f64) -> f64 {
    debug_assert!(m >= 1 && lambda > -0.5);
    let mi = m as i32;
    let mut lam = lambda;
    let mut acc = 0.0;
    while lam < 12.0 {
        // D(lam) = D(lam+1) + (lam+1/2)^-m - (lam+1)^-m
        acc += pow_diff(mi, lam + 0.5, lam + 1.0);
        lam += 1.0;
    }
    let z1 = lam + 0.5;
    let z2 = lam + 1.0;
    let lr = Float::ln_1p(0.5 / z1);
    let mut s;
    if m == 1 {
        s = lr + 0.5 * (1.0 / z1 - 1.0 / z2);
        for j in 1..=20i32 {
            let term = (BERNOULLI_EVEN_F64[j as usize] / (2 * j) as f64) * pow_diff(2 * j, z1, z2);
            s += term;
            if term.abs() < 1e-18 * s.abs() {
                break;
            }
        }
    } else {
        s = pow_diff(mi - 1, z1, z2) / (m as f64 - 1.0) + 0.5 * pow_diff(mi, z1, z2);
        for j in 1..=20usize {
            // B_2j/(2j)! * m(m+1)..(m+2j-2)
            let mut c = BERNOULLI_EVEN_F64[j] / factorial(2 * j);
            for i in m..(m + 2 * j - 1) {
                c *= i as f64;
            }
            let term = c * pow_diff(mi + 2 * j as i32 - 1, z1, z2);
            s += term;
            if term.abs() < 1e-18 * s.abs() {
                break;
            }
        }
    }
    s + acc
}

/// Direct series sum_{k>=1} z^k/k^m, |z| safely inside the unit disc.
fn li_series(m: usize, z: f64) -> f64 {
    let mut s = 0.0;
    let mut term = z;
    let mut k = 1u32;
    loop {
        let add = term * Float::powi(k as f64, -(m as i32));
        s += add;
        if add.abs() <= 1e-18 * s.abs() + 5e-324 {
            return s;
        }
        k += 1;
        term *= z;
    }
}

/// Li_m(sign e^u) as (re, im), never forming e^u when it would overflow.
///
/// The continuation branch for sign = plus, u > 0 carries
/// im = -pi u^{m-1}/(m-1)!.
pub(crate) fn li_exp(m: usize, positive: bool, u: f64) -> (f64, f64) {
    debug_assert!(m >= 1);
    if positive {
        if m == 1 {
            return if u <= -0.5 {
                (-Float::ln_1p(-Float::exp(u)), 0.0)
            } else if u < 0.0 {
                (-Float::ln(-Float::exp_m1(u)), 0.0)
            } else if u == 0.0 {
                (f64::INFINITY, -PI) // divergence signal; callers reject upstream
            } else if u > 36.0 {
                // log(e^u - 1) = u + log1p(-e^{-u}), tail below 1e-16
                (-u, -PI)
            } else {
                (-Float::ln(Float::exp_m1(u)), -PI)
            };
        }
        if u == 0.0 {
            return (zeta_any(m as i64), 0.0);
        }
        if u <= -0.5 {
            return (li_series(m, Float::exp(u)), 0.0);
        }
        if u < 0.5 {
            // expansion in u around the singular point
            let ufac = Float::powi(u, m as i32 - 1) / factorial(m - 1);
            let mut re = ufac * (harmonic_int(m - 1) - Float::ln(u.abs()));
            let im = if u <= 0.0 { 0.0 } else { -PI * ufac };
            let mut pw = 1.0;
            for k in 0..40usize {
                if k != m - 1 {
                    re += zeta_any(m as i64 - k as i64) * pw / factorial(k);
                }
                pw *= u;
                if k > m && (pw / factorial(k)).abs() < 1e-20 {
                    break;
                }
            }
            return (re, im);
        }
        // inversion, u >= 0.5
        let mut re = Float::powi(-1.0, m as i32 + 1) * li_series(m, Float::exp(-u));
        for j in 0..=(m / 2) {
            re += 2.0 * zeta_any(2 * j as i64) * Float::powi(u, (m - 2 * j) as i32)
                / factorial(m - 2 * j);
        }
        let im = -PI * Float::powi(u, m as i32 - 1) / factorial(m - 1);
        (re, im)
    } else {
        if m == 1 {
            return if u <= 0.0 {
                (-Float::ln_1p(Float::exp(u)), 0.0)
            } else {
                (-(u + Float::ln_1p(Float::exp(-u))), 0.0)
            };
        }
        if u == 0.0 {
            let eta = dirichlet_eta(m as f64).unwrap_or(f64::NAN);
            return (-eta, 0.0);
        }
        if u <= -0.5 {
            return (li_series(m, -Float::exp(u)), 0.0);
        }
        if u < 0.5 {
            // duplication: Li_m(-e^u) = 2^{1-m} Li_m(e^{2u}) - Li_m(e^u);
            // the imaginary parts cancel exactly
            let a = li_exp(m, true, 2.0 * u).0;
            let b = li_exp(m, true, u).0;
            return (Float::powi(2.0, 1 - m as i32) * a - b, 0.0);
        }
        let mut re = Float::powi(-1.0, m as i32 + 1) * li_series(m, -Float::exp(-u));
        for j in 0..=(m / 2) {
            let et = if j == 0 {
                0.5
            } else {
                dirichlet_eta(2.0 * j as f64).unwrap_or(f64::NAN)
            };
            re -= 2.0 * et * Float::powi(u, (m - 2 * j) as i32) / factorial(m - 2 * j);
        }
        (re, 0.0)
    }
}

/// Li_m(x) on the closed unit interval |x| <= 1 (real there).
/// (m=1, x=1) is the divergent harmonic series and is refused.
pub fn polylog_unit(m: usize, x: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("polylog_unit requires m >= 1"));
    }
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::Domain("polylog_unit requires |x| <= 1"));
    }
    if m == 1 {
        if x == 1.0 {
            return Err(Error::Divergent("Li_1(1) is the harmonic series"));
        }
        return Ok(-Float::ln_1p(-x));
    }
    if x == 1.0 {
        return riemann_zeta(m as f64);
    }
    if x == -1.0 {
        return Ok(-dirichlet_eta(m as f64)?);
    }
    if x.abs() <= EXP_NEG_HALF {
        return Ok(li_series(m, x));
    }
    // |ln|x|| < 1/2: route through the expansion around the singularity
    Ok(li_exp(m, x > 0.0, Float::ln(x.abs())).0)
}

/// Li_m(x) for any real x, continued across x > 1 with branch
/// Im Li_m(x) = -pi ln^{m-1}(x)/(m-1)!; real for x <= 1.
pub fn polylog_continued(m: usize, x: f64) -> Result<ComplexScalar> {
    if m == 0 {
        return Err(Error::Domain("polylog_continued requires m >= 1"));
    }
    if !x.is_finite() {
        return Err(Error::Domain("polylog_continued: x must be finite"));
    }
    if x.abs() <= 1.0 {
        return Ok(ComplexScalar::new(polylog_unit(m, x)?, 0.0));
    }
    let (re, im) = li_exp(m, x > 0.0, Float::ln(x.abs()));
    Ok(ComplexScalar::new(re, im))
}
