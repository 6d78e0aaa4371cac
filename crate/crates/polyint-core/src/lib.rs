//! Closed-form evaluation of the two-parameter family of Fermi-Dirac moment
//! integrals
//!
//! ```text
//!   I(sign, a, b, p, t) = INT_-inf^inf x^p Li_t(sign e^{a x}) / (1 + e^{b x}) dx,   a b > 0,
//! ```
//!
//! together with the scalar machinery it rests on: exact Bernoulli numbers,
//! zeta and eta values, digamma/polygamma, harmonic numbers of real index,
//! the real-axis polylogarithm with its analytic continuation, linear and
//! alternating Euler sums, and a double-exponential quadrature oracle used to
//! cross-check every closed form numerically.
//!
//! The crate is `no_std` (with `alloc`); IO, parallel sweeps, and file formats
//! live in the companion CLI crate.
//!
//! Evaluations come back as [`EvalBreakdown`] records exposing the real parts
//! `A` and `B`, the imaginary coefficient `C`, and the assembled total, so the
//! provenance of each contribution stays visible to callers and tests.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod bernoulli;
mod closed_form;
mod error;
mod euler;
mod quadrature;
mod series;
mod special;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, constants, BernoulliTable, Constants};
pub use closed_form::{
    corollary_p0, corollary_pt, double_series_b, double_series_b_with_cap, evaluate,
    evaluate_with_cap, k_integral, k_integral_with_cap, log_moment, EvalBreakdown, IntegralParams,
    Parity,
};
pub use error::{Error, Result};
pub use euler::{
    euler_sum, euler_sum_with_cap, half_scaled_identity, known_closed_forms, plain_partial_sums,
    scaled_decomposition, sitaramachandrarao, EulerSumSpec, KnownClosedForm, ScaledDecomposition,
    SumKind,
};
pub use quadrature::{
    fermi_dirac_polylog, integrate_line, integrate_unit, QuadratureResult, UnitIntegrand,
};
pub use series::SeriesResult;
pub use special::{
    digamma, dirichlet_eta, harmonic_extended, polygamma, polylog_continued, polylog_unit,
    riemann_zeta,
};

/// Complex value with binary64 components.
pub type ComplexScalar = num_complex::Complex64;

/// Sign of the exponential argument inside the polylogarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// +1.0 or -1.0.
    #[inline]
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Default ceiling on series terms before an engine gives up.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;
