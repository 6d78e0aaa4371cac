//! Internal series engines: a Cohen-Rodriguez Villegas-Zagier accelerator for
//! alternating scalar constants, a doubling alternating-sum engine, and a
//! Richardson ladder for positive tails with known leading decay.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

/// Outcome of an infinite-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Absolute error estimate; never negative.
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    /// When set, `abs_error_estimate <= ` the tolerance that was requested.
    pub converged: bool,
}

/// Relative floor applied to alternating-engine estimates; repeated averaging
/// of ~2K partial sums cannot resolve below a few ulps.
const ALT_EST_FLOOR: f64 = 8.0 * f64::EPSILON;

/// Relative floor for Richardson estimates. The ladder can reproduce its own
/// previous top entry exactly while the summed terms still carry rounding
/// noise, so a zero raw estimate is not believable.
const RICH_EST_FLOOR: f64 = 8.0 * f64::EPSILON;

pub(crate) struct EngineOutput {
    pub value: f64,
    pub est: f64,
    pub terms: usize,
    pub converged: bool,
}

impl EngineOutput {
    pub(crate) fn into_result(self) -> SeriesResult {
        SeriesResult {
            value: self.value,
            abs_error_estimate: self.est,
            terms_used: self.terms,
            converged: self.converged,
        }
    }
}

/// Condensation-accelerated alternating sum sum_{k>=0} (-1)^k a(k) for
/// smooth, totally monotone a. Fixed 48-term scheme, good to ~2 ulps.
pub(crate) fn cvz_alternating(mut a: impl FnMut(usize) -> f64) -> f64 {
    const N: usize = 48;
    let mut d = (3.0 + Float::sqrt(8.0f64)).powi(N as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..N {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        let nf = N as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// sum_{n>=1} (-1)^{n+1} term(n): iterated averaging of the first K partial
/// sums, K doubling until two consecutive rounds agree.
///
/// Collapsing S_1..S_K by repeated adjacent averaging weights the partial
/// sums binomially, which converges even for conditionally convergent tails.
pub(crate) fn alternating_sum(
    mut term: impl FnMut(usize) -> f64,
    tol: f64,
    cap: usize,
) -> Result<EngineOutput> {
    let mut k = 24usize;
    let mut partial: Vec<f64> = Vec::new();
    let mut acc = 0.0f64;
    let mut next_n = 1usize;
    let mut prev: Option<f64> = None;
    loop {
        while next_n <= k {
            let t = term(next_n);
            if !t.is_finite() {
                return Err(Error::Domain("alternating series term is not finite"));
            }
            acc += if next_n % 2 == 1 { t } else { -t };
            partial.push(acc);
            next_n += 1;
        }
        let mut window: Vec<f64> = partial.clone();
        while window.len() > 1 {
            for i in 0..window.len() - 1 {
                window[i] = 0.5 * (window[i] + window[i + 1]);
            }
            window.pop();
        }
        let value = window[0];
        let floor = ALT_EST_FLOOR * value.abs();
        if let Some(p) = prev {
            let est = Float::max((value - p).abs(), floor);
            if est <= tol {
                return Ok(EngineOutput {
                    value,
                    est,
                    terms: k,
                    converged: true,
                });
            }
            if 2 * k > cap {
                return Ok(EngineOutput {
                    value,
                    est,
                    terms: k,
                    converged: false,
                });
            }
        } else if 2 * k > cap {
            return Ok(EngineOutput {
                value,
                est: f64::INFINITY,
                terms: k,
                converged: false,
            });
        }
        prev = Some(value);
        k *= 2;
    }
}

/// sum_{n>=1} term(n) for positive-decay tails behaving like c n^{-s0}
/// (plus faster corrections in integer steps of the exponent).
///
/// Classic Richardson ladder over checkpoints at N, 2N, .., 2^L N with the
/// known leading exponent s0; the estimate is the distance between the last
/// two ladder tops. If the ladder disagrees with itself, the base block is
/// enlarged fourfold and the checkpoints extend over the same cached terms.
pub(crate) fn richardson_sum(
    mut term: impl FnMut(usize) -> f64,
    s0: i32,
    tol: f64,
    cap: usize,
) -> Result<EngineOutput> {
    debug_assert!(s0 >= 1, "decay exponent must be positive");
    const LADDER: usize = 7;
    let mut base = 64usize;
    // checkpoint partial sums at base << i, grown lazily and reused across
    // escalations (the summation order never changes)
    let mut acc = 0.0f64;
    let mut next_n = 1usize;
    let mut checkpoints: Vec<f64> = Vec::new(); // S_{64 << i}
    loop {
        let needed = base << LADDER;
        if needed > cap {
            // honest failure: cap too small for even one ladder
            return Ok(EngineOutput {
                value: acc,
                est: f64::INFINITY,
                terms: next_n - 1,
                converged: false,
            });
        }
        while next_n <= needed {
            let t = term(next_n);
            if !t.is_finite() {
                return Err(Error::Domain("series term is not finite"));
            }
            acc += t;
            if next_n.is_power_of_two() && next_n >= 64 {
                checkpoints.push(acc);
            }
            next_n += 1;
        }
        let first = (base / 64).trailing_zeros() as usize;
        let mut ladder: Vec<f64> = checkpoints[first..=first + LADDER].to_vec();
        let mut prev_top = ladder[0];
        for j in 0..LADDER {
            let weight = Float::powi(2.0f64, s0 + j as i32) - 1.0;
            for kk in 0..LADDER - j {
                ladder[kk] = ladder[kk + 1] + (ladder[kk + 1] - ladder[kk]) / weight;
            }
            if j == LADDER - 2 {
                prev_top = ladder[0];
            }
        }
        let value = ladder[0];
        let est = Float::max((value - prev_top).abs(), RICH_EST_FLOOR * value.abs());
        if est <= tol {
            return Ok(EngineOutput {
                value,
                est,
                terms: needed,
                converged: true,
            });
        }
        if (base << (LADDER + 2)) > cap {
            return Ok(EngineOutput {
                value,
                est,
                terms: needed,
                converged: false,
            });
        }
        base *= 4;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (diff {})", (a - b).abs());
    }

    #[test]
    fn cvz_hits_eta_and_catalan() {
        let eta2 = cvz_alternating(|k| 1.0 / ((k + 1) as f64).powi(2));
        close(eta2, 0.8224670334241132, 2e-15);
        let cat = cvz_alternating(|k| 1.0 / ((2 * k + 1) as f64).powi(2));
        close(cat, 0.915965594177219, 2e-15);
        let eta1 = cvz_alternating(|k| 1.0 / (k + 1) as f64);
        close(eta1, core::f64::consts::LN_2, 2e-15);
    }

    #[test]
    fn alternating_engine_converges_and_reports() {
        // eta(2) the slow way
        let r = alternating_sum(|n| 1.0 / (n as f64).powi(2), 1e-13, 1 << 20).unwrap();
        assert!(r.converged);
        assert!(r.est <= 1e-13);
        close(r.value, 0.8224670334241132, 1e-13);
        // conditionally convergent eta(1)
        let r = alternating_sum(|n| 1.0 / n as f64, 1e-12, 1 << 20).unwrap();
        assert!(r.converged);
        close(r.value, core::f64::consts::LN_2, 1e-12);
    }

    #[test]
    fn alternating_engine_respects_cap() {
        let r = alternating_sum(|n| 1.0 / n as f64, 1e-13, 60).unwrap();
        assert!(!r.converged);
        assert!(r.terms <= 95);
    }

    #[test]
    fn richardson_sums_zeta_tails() {
        // s0 is the decay exponent of the partial-sum remainder, one less
        // than the term decay: sum (n+1)^-2 leaves an N^-1 tail
        let r = richardson_sum(|n| 1.0 / ((n + 1) as f64).powi(2), 1, 1e-13, 1 << 22).unwrap();
        assert!(r.converged, "est {}", r.est);
        close(r.value, 0.6449340668482264, 2e-13);
        // sum n^-3 leaves an N^-2 tail
        let r = richardson_sum(|n| 1.0 / (n as f64).powi(3), 2, 1e-13, 1 << 22).unwrap();
        assert!(r.converged);
        close(r.value, 1.2020569031595942, 4e-13);
    }

    #[test]
    fn richardson_tiny_cap_is_honest() {
        let r = richardson_sum(|n| 1.0 / (n as f64).powi(2), 2, 1e-13, 100).unwrap();
        assert!(!r.converged);
        assert!(r.est.is_infinite());
    }

    #[test]
    fn nan_terms_are_domain_errors() {
        assert!(matches!(
            alternating_sum(|_| f64::NAN, 1e-10, 1000),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            richardson_sum(|_| f64::NAN, 2, 1e-10, 100000),
            Err(Error::Domain(_))
        ));
    }
}
