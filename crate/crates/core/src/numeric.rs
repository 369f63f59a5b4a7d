//! Conversions between exact integers and floats that stay finite for very
//! large magnitudes.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

/// Nearest-ish `f64`; saturates to `±inf` beyond the float range.
pub fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.sign() == Sign::Minus {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// `x * 2^exp` as an `f64`, accurate to a couple of ulps even when `x` has
/// thousands of bits.
pub fn scaled_bigint_to_f64(x: &BigInt, exp: i64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits() as i64;
    let (mantissa, exp) = if bits > 64 {
        (x >> (bits - 64) as usize, exp + bits - 64)
    } else {
        (x.clone(), exp)
    };
    ldexp(mantissa.to_f64().expect("64-bit mantissa"), exp)
}

/// `m * 2^e` with intermediate scaling so extreme exponents do not overflow early.
pub fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return m;
        }
    }
    m * 2f64.powi(e as i32)
}

/// Natural logarithm of `|x|`; `-inf` for zero.
pub fn bigint_ln(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits() as i64;
    if bits <= 1000 {
        return bigint_to_f64(x).abs().ln();
    }
    let shift = bits - 64;
    let top = (x.magnitude() >> shift as usize).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `arccosh(x)` for `x >= 1`, accurate near 1 where `x^2 - 1` cancels.
pub fn acosh(x: f64) -> f64 {
    let t = x - 1.0;
    if t < 0.0 {
        return f64::NAN;
    }
    if t > 1e8 {
        return x.ln() + std::f64::consts::LN_2;
    }
    (t + (t * (t + 2.0)).sqrt()).ln_1p()
}

/// Shrinks a nonnegative value by a few ulps.
pub fn round_down(x: f64) -> f64 {
    (x * (1.0 - 8.0 * f64::EPSILON)).max(0.0)
}

/// Grows a nonnegative value by a few ulps.
pub fn round_up(x: f64) -> f64 {
    x * (1.0 + 8.0 * f64::EPSILON)
}
