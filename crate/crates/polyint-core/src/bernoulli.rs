//! Exact Bernoulli numbers/polynomials and the handful of fundamental
//! constants everything else leans on.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Highest index the default table carries.
pub(crate) const MAX_INDEX: usize = 64;

/// B_0, B_2, B_4, .., B_42 rounded to binary64, indexed by half the subscript.
/// Generated from the exact table; the unit tests pin every entry against it.
/// Used by the asymptotic tails where exact arithmetic would be waste.
pub(crate) const BERNOULLI_EVEN_F64: [f64; 22] = [
    1.0,
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e16,
    8.416930475736826e17,
];

/// Cache of B_0..B_max in exact integer-fraction arithmetic.
///
/// Built once from the defining recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0;
/// immutable afterwards, so shared references are freely sendable.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Table up to B_64.
    pub fn new() -> Self {
        Self::with_max(MAX_INDEX)
    }

    /// Table up to B_max.
    pub fn with_max(max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max + 1);
        values.push(BigRational::one());
        for m in 1..=max {
            // B_m = -(1/(m+1)) sum_{j<m} C(m+1,j) B_j
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in values.iter().enumerate() {
                acc += bj * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        BernoulliTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Exact B_j.
    pub fn number(&self, j: usize) -> Result<&BigRational> {
        self.values.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            max: self.max(),
        })
    }

    /// B_m(x) = sum_{j=0}^{m} C(m,j) B_j x^{m-j}, evaluated exactly at the
    /// binary64 value of `x` and rounded once at the end.
    pub fn polynomial(&self, m: usize, x: f64) -> Result<f64> {
        if m > self.max() {
            return Err(Error::IndexOutOfRange {
                index: m,
                max: self.max(),
            });
        }
        let xr = BigRational::from_float(x)
            .ok_or(Error::Domain("bernoulli_polynomial: x must be finite"))?;
        let mut powers: Vec<BigRational> = Vec::with_capacity(m + 1);
        powers.push(BigRational::one());
        for k in 1..=m {
            let next = &powers[k - 1] * &xr;
            powers.push(next);
        }
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for j in 0..=m {
            acc += &self.values[j] * BigRational::from_integer(binom.clone()) * &powers[m - j];
            if j < m {
                binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
            }
        }
        ratio_to_f64(&acc).ok_or(Error::Domain("bernoulli_polynomial: result overflows"))
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Exact B_j from a freshly built default table. Errors past index 64.
pub fn bernoulli_number(j: usize) -> Result<BigRational> {
    if j > MAX_INDEX {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: MAX_INDEX,
        });
    }
    Ok(BernoulliTable::with_max(j).values[j].clone())
}

/// B_m(x) rounded once from the exact rational value. Errors past index 64.
pub fn bernoulli_polynomial(m: usize, x: f64) -> Result<f64> {
    if m > MAX_INDEX {
        return Err(Error::IndexOutOfRange {
            index: m,
            max: MAX_INDEX,
        });
    }
    BernoulliTable::with_max(m).polynomial(m, x)
}

/// Fundamental constants as maximum-precision binary64 literals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub pi: f64,
    pub euler_gamma: f64,
    pub catalan: f64,
    pub log2: f64,
}

pub fn constants() -> Constants {
    Constants {
        pi: core::f64::consts::PI,
        euler_gamma: 0.5772156649015329,
        catalan: 0.915965594177219,
        log2: core::f64::consts::LN_2,
    }
}

/// Correctly rounded rational -> binary64 conversion.
///
/// num-rational's `to_f64` goes through separate numerator/denominator
/// conversions and loses the low bits for large operands, so the rounding is
/// done here: take a 55-bit quotient, then round to nearest-even with the
/// division remainder as the sticky bit.
fn ratio_to_f64(r: &BigRational) -> Option<f64> {
    use num_traits::Float;

    if r.is_zero() {
        return Some(0.0);
    }
    let negative = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().abs();
    let e = n.bits() as i64 - d.bits() as i64;
    // n/d is in [2^(e-1), 2^(e+1)); scale so the integer quotient has 55 or 56 bits.
    let mut shift = 55 - e;
    let (mut q, mut rem) = scaled_div(&n, &d, shift);
    let mut sticky = !rem.is_zero();
    if q.bits() < 55 {
        shift += 1;
        let qr = scaled_div(&n, &d, shift);
        q = qr.0;
        rem = qr.1;
        sticky = !rem.is_zero();
    }
    if q.bits() == 56 {
        sticky |= &q & BigInt::one() == BigInt::one();
        q >>= 1;
        shift -= 1;
    }
    debug_assert_eq!(q.bits(), 55);
    let q = q.to_u64()?;
    let mut mantissa = q >> 2; // 53 bits
    let guard = (q >> 1) & 1 == 1;
    sticky |= q & 1 == 1;
    if guard && (sticky || mantissa & 1 == 1) {
        mantissa += 1;
    }
    let mut exp = 2 - shift; // value = mantissa * 2^exp
    if mantissa == 1 << 53 {
        mantissa >>= 1;
        exp += 1;
    }
    if exp > 1024 {
        return None;
    }
    let magnitude = (mantissa as f64) * Float::exp2(exp as f64);
    Some(if negative { -magnitude } else { magnitude })
}

fn scaled_div(n: &BigInt, d: &BigInt, shift: i64) -> (BigInt, BigInt) {
    let nn = if shift >= 0 { n << shift as usize } else { n.clone() };
    let dd = if shift >= 0 { d.clone() } else { d << (-shift) as usize };
    (&nn / &dd, nn % dd)
}
