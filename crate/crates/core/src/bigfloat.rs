//! Minimal binary floating point on top of `BigInt`: enough to evaluate
//! products of factorials and powers of `2 pi` to well past 64 digits.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::numeric::{bigint_ln, scaled_bigint_to_f64};

/// Mantissa bits kept after every operation (about 96 decimal digits).
pub const PRECISION: u64 = 320;

/// `mant * 2^exp`, with `mant` truncated to [`PRECISION`] bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn from_bigint(x: BigInt) -> Self {
        Self { mant: x, exp: 0 }.normalized()
    }

    pub fn from_u64(x: u64) -> Self {
        Self::from_bigint(BigInt::from(x))
    }

    fn normalized(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > PRECISION {
            let shift = bits - PRECISION;
            self.mant >>= shift as usize;
            self.exp += shift as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }.normalized()
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let shift = PRECISION + rhs.mant.bits();
        let num = &self.mant << shift as usize;
        Self { mant: num / &rhs.mant, exp: self.exp - rhs.exp - shift as i64 }.normalized()
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::from_u64(1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        scaled_bigint_to_f64(&self.mant, self.exp)
    }

    /// Natural logarithm as an `f64`; finite for any nonzero value.
    pub fn ln(&self) -> f64 {
        bigint_ln(&self.mant) + self.exp as f64 * std::f64::consts::LN_2
    }

    /// Compares against `10^k` exactly.
    pub fn cmp_pow10(&self, k: i32) -> Ordering {
        let ten = BigInt::from(10);
        let (mut lhs, mut rhs) = (self.mant.clone(), BigInt::one());
        if k >= 0 {
            rhs *= ten.pow(k as u32);
        } else {
            lhs *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            lhs <<= self.exp as usize;
        } else {
            rhs <<= (-self.exp) as usize;
        }
        lhs.cmp(&rhs)
    }

    /// Scientific notation with `digits` significant digits, e.g. `8.434e3`.
    pub fn to_scientific(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        let abs = Self { mant: self.mant.abs(), exp: self.exp };
        let mut e10 = (abs.ln() / std::f64::consts::LN_10).floor() as i64;
        loop {
            let scaled = abs.scaled_integer(digits as i64 - 1 - e10);
            let s = scaled.to_string();
            match s.len().cmp(&digits) {
                Ordering::Greater => e10 += 1,
                Ordering::Less => e10 -= 1,
                Ordering::Equal => {
                    let (head, tail) = s.split_at(1);
                    let sign = if neg { "-" } else { "" };
                    return if tail.is_empty() {
                        format!("{sign}{head}e{e10}")
                    } else {
                        format!("{sign}{head}.{tail}e{e10}")
                    };
                }
            }
        }
    }

    /// `round(self * 10^k)` for a nonnegative value.
    fn scaled_integer(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10);
        let (mut num, mut den) = (self.mant.clone(), BigInt::one());
        if k >= 0 {
            num *= ten.pow(k as u32);
        } else {
            den *= ten.pow((-k) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        (num * 2 + &den) / (den * 2)
    }
}

/// `atan(1/x) * 2^bits`, truncated, for an integer `x > 1`.
fn atan_inv(x: u64, bits: u64) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let x2 = BigInt::from(x * x);
    let mut power = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// `pi` via Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi() -> BigFloat {
    static PI: OnceLock<BigFloat> = OnceLock::new();
    PI.get_or_init(|| {
        let bits = PRECISION + 32;
        let mant = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
        BigFloat { mant, exp: -(bits as i64) }.normalized()
    })
    .clone()
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let s = pi().to_scientific(60);
        assert_eq!(s, "3.14159265358979323846264338327950288419716939937510582097494e0");
    }

    #[test]
    fn arithmetic_and_formatting() {
        let third = BigFloat::from_u64(1).div(&BigFloat::from_u64(3));
        assert_eq!(third.to_scientific(5), "3.3333e-1");
        assert_eq!(BigFloat::from_u64(8434).to_scientific(3), "8.43e3");
        assert_eq!(BigFloat::from_u64(1000).to_scientific(1), "1e3");
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-17);
        assert_eq!(third.cmp_pow10(0), Ordering::Less);
        assert_eq!(third.cmp_pow10(-1), Ordering::Greater);
        assert_eq!(BigFloat::from_u64(100).cmp_pow10(2), Ordering::Equal);
        assert_eq!(BigFloat::from_u64(3).powi(4), BigFloat::from_u64(81));
    }
}
