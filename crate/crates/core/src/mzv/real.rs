//! Binary fixed-point reals: `mant · 2^-bits` with a big-integer mantissa.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use crate::coeff::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Real { mant: BigInt::from(1) << bits, bits }
    }

    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Real { mant, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// Nearest-below fixed-point value of `q`.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let num: BigInt = q.numer() << bits;
        Real { mant: num_integer::Integer::div_floor(&num, q.denom()), bits }
    }

    /// `2^bits / n`.
    pub fn recip(n: &BigInt, bits: u32) -> Self {
        Real { mant: (BigInt::from(1) << bits) / n, bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Self {
        Real { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        Real { mant: &self.mant / n, bits: self.bits }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Real { mant: &self.mant * n, bits: self.bits }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        Real { mant: &self.mant * q.numer() / q.denom(), bits: self.bits }
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> Self {
        let m: BigInt = &self.mant << self.bits;
        Real { mant: m.sqrt(), bits: self.bits }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.mant.bits().saturating_sub(64);
        let m: BigInt = &self.mant >> shift;
        let e = shift as i64 - self.bits as i64;
        m.to_f64().unwrap_or(f64::NAN) * exp2i(e)
    }

    /// Decimal expansion truncated to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> alloc::string::String {
        let neg = self.mant.is_negative();
        let m = self.mant.abs();
        let int_part: BigInt = &m >> self.bits;
        let frac: BigInt = &m - (&int_part << self.bits);
        let scaled: BigInt = (frac * BigInt::from(10).pow(digits as u32)) >> self.bits;
        let mut s = alloc::format!("{}{}", if neg { "-" } else { "" }, int_part);
        if digits > 0 {
            s.push_str(&alloc::format!(".{:0>width$}", scaled, width = digits));
        }
        s
    }

    /// `π` by Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(bits: u32) -> Self {
        let guard = 16;
        let b = bits + guard;
        let atan_inv = |x: u64| -> BigInt {
            let x = BigInt::from(x);
            let x2 = &x * &x;
            let mut power = (BigInt::from(1) << b) / &x;
            let mut sum = BigInt::zero();
            let mut k = 0u64;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k.is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
        Real { mant: pi >> guard, bits }
    }

    fn check(&self, other: &Real) {
        debug_assert_eq!(self.bits, other.bits, "mixed fixed-point precisions");
    }
}

impl Add<&Real> for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        self.check(rhs);
        Real { mant: &self.mant + &rhs.mant, bits: self.bits }
    }
}

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        self.check(rhs);
        self.mant += &rhs.mant;
    }
}

impl Sub<&Real> for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self.check(rhs);
        Real { mant: &self.mant - &rhs.mant, bits: self.bits }
    }
}

impl Mul<&Real> for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        self.check(rhs);
        Real { mant: (&self.mant * &rhs.mant) >> self.bits, bits: self.bits }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, bits: self.bits }
    }
}

/// `2^e` without `std`.
fn exp2i(e: i64) -> f64 {
    let mut out = 1.0f64;
    let base = if e < 0 { 0.5 } else { 2.0 };
    for _ in 0..e.unsigned_abs() {
        out *= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn pi_digits() {
        let p = Real::pi(200);
        let s = p.to_f64();
        assert!((s - core::f64::consts::PI).abs() < 1e-15);
        // compare against a higher-precision evaluation
        let q = Real::pi(260);
        let diff = (&Real::from_mantissa(q.mantissa() >> 60, 200) - &p).abs();
        assert!(diff.mantissa() <= &BigInt::from(4));
    }

    #[test]
    fn arithmetic() {
        let a = Real::from_rational(&rat(1, 3), 100);
        let b = &a + &a;
        let c = &b * &Real::from_rational(&rat(3, 2), 100);
        assert!((c.to_f64() - 1.0).abs() < 1e-25 + 1e-15);
        let two = Real::from_rational(&rat(2, 1), 100);
        assert!((two.sqrt().to_f64() - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(Real::from_rational(&rat(-1, 2), 10).to_f64(), -0.5);
        assert_eq!(Real::from_rational(&rat(-1, 8), 40).to_decimal(4), "-0.1250");
        assert_eq!(Real::pi(200).to_decimal(30), "3.141592653589793238462643383279");
        let tiny = Real::from_mantissa(BigInt::from(3), 200);
        assert!((tiny.to_f64() / (3.0 * 0.5f64.powi(200)) - 1.0).abs() < 1e-15);
    }
}
