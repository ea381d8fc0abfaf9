//! Fixed-point decimals with 60 fractional digits, enough to carry the
//! analysis constants to well over 30 significant digits.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Number of fractional decimal digits carried.
pub const FRACTION_DIGITS: u32 = 60;

fn unit() -> BigInt {
    BigInt::from(10u32).pow(FRACTION_DIGITS)
}

/// A real number stored as `raw / 10^FRACTION_DIGITS`.
///
/// Multiplication and division truncate toward zero, so each operation loses
/// at most one unit in the last place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decimal {
    raw: BigInt,
}

impl Decimal {
    pub fn zero() -> Self {
        Decimal {
            raw: BigInt::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Decimal {
            raw: BigInt::from(v) * unit(),
        }
    }

    /// Nearest-below fixed-point value of `num / den`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Decimal {
            raw: BigInt::from(num) * unit() / BigInt::from(den),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Decimal {
            raw: r.numer() * unit() / r.denom(),
        }
    }

    pub fn abs(&self) -> Self {
        Decimal {
            raw: self.raw.abs(),
        }
    }

    /// Square root by integer Newton iteration.
    ///
    /// # Panics
    ///
    /// On negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.raw.is_negative(), "sqrt of negative decimal");
        Decimal {
            raw: (&self.raw * unit()).sqrt(),
        }
    }

    /// `sum_{k>=0} x^(2k+1) / (2k+1)` for `x = 1/m`, the inverse hyperbolic
    /// tangent, summed until terms vanish at this precision.
    pub(crate) fn atanh_inv(m: u32) -> Self {
        Self::arctan_like(m, false)
    }

    /// Inverse tangent of `1/m`.
    pub(crate) fn atan_inv(m: u32) -> Self {
        Self::arctan_like(m, true)
    }

    fn arctan_like(m: u32, alternating: bool) -> Self {
        let m = BigInt::from(m);
        let m2 = &m * &m;
        // Guard digits keep the truncation error of the partial sums out of
        // the returned digits.
        let guard = BigInt::from(10u32).pow(10);
        let mut power = unit() * &guard / &m;
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if alternating && k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            power /= &m2;
            k += 1;
        }
        Decimal { raw: sum / guard }
    }

    pub fn to_f64(&self) -> f64 {
        // Enough leading digits for a correctly rounded double.
        let scale = BigInt::from(10u32).pow(FRACTION_DIGITS - 20);
        let head = (&self.raw / scale).to_f64().unwrap_or(f64::NAN);
        head / 1e20
    }

    /// Renders with exactly `digits` fractional digits (truncated).
    pub fn to_string_digits(&self, digits: u32) -> String {
        let digits = digits.min(FRACTION_DIGITS);
        let shifted = &self.raw / BigInt::from(10u32).pow(FRACTION_DIGITS - digits);
        let negative =
            shifted.sign() == Sign::Minus || (shifted.is_zero() && self.raw.is_negative());
        let (int_part, frac_part) = shifted.abs().div_rem(&BigInt::from(10u32).pow(digits));
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&alloc::format!("{int_part}"));
        if digits > 0 {
            let frac = alloc::format!("{frac_part}");
            out.push('.');
            for _ in frac.len()..digits as usize {
                out.push('0');
            }
            out.push_str(&frac);
        }
        out
    }

    /// Absolute difference is at most `tol`.
    pub fn approx_eq(&self, other: &Decimal, tol: &Decimal) -> bool {
        (self.clone() - other.clone()).abs().cmp(tol) != Ordering::Greater
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map_or(40, |p| p as u32);
        f.write_str(&self.to_string_digits(digits))
    }
}

impl Add for Decimal {
    type Output = Decimal;
    fn add(self, rhs: Decimal) -> Decimal {
        Decimal {
            raw: self.raw + rhs.raw,
        }
    }
}

impl Sub for Decimal {
    type Output = Decimal;
    fn sub(self, rhs: Decimal) -> Decimal {
        Decimal {
            raw: self.raw - rhs.raw,
        }
    }
}

impl Neg for Decimal {
    type Output = Decimal;
    fn neg(self) -> Decimal {
        Decimal { raw: -self.raw }
    }
}

impl Mul for Decimal {
    type Output = Decimal;
    fn mul(self, rhs: Decimal) -> Decimal {
        Decimal {
            raw: self.raw * rhs.raw / unit(),
        }
    }
}

impl Div for Decimal {
    type Output = Decimal;
    fn div(self, rhs: Decimal) -> Decimal {
        Decimal {
            raw: self.raw * unit() / rhs.raw,
        }
    }
}

impl Mul<&Rational> for Decimal {
    type Output = Decimal;
    fn mul(self, rhs: &Rational) -> Decimal {
        Decimal {
            raw: self.raw * rhs.numer() / rhs.denom(),
        }
    }
}

impl One for Decimal {
    fn one() -> Self {
        Decimal { raw: unit() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(Decimal::from_ratio(1, 3).to_string_digits(5), "0.33333");
        assert_eq!(Decimal::from_ratio(-5, 2).to_string_digits(2), "-2.50");
        assert_eq!(Decimal::from_ratio(-1, 8).to_string_digits(2), "-0.12");
        assert_eq!(Decimal::from_int(7).to_string_digits(0), "7");
    }

    #[test]
    fn sqrt_two() {
        let r = Decimal::from_int(2).sqrt();
        assert_eq!(
            r.to_string_digits(40),
            "1.4142135623730950488016887242096980785696"
        );
    }

    #[test]
    fn arithmetic() {
        let a = Decimal::from_ratio(3, 4);
        let b = Decimal::from_ratio(1, 4);
        assert_eq!((a.clone() * b.clone()).to_string_digits(6), "0.187500");
        assert_eq!((a / b).to_string_digits(3), "3.000");
        assert!((Decimal::from_ratio(1, 3) * Decimal::from_int(3))
            .approx_eq(&Decimal::one(), &Decimal::from_ratio(1, 1_000_000_000)));
    }
}
