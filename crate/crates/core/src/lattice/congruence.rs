use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::element::{Ambient, LatticeElement};
use super::LatticeError;

/// Membership in the kernel of reduction modulo `level`.
pub fn in_congruence(e: &LatticeElement, level: &BigInt) -> bool {
    e.is_identity_mod(level)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is usable for the trace theorem in `ambient`: prime,
/// larger than `2n`, and not dividing `2ab` for a quaternion algebra.
pub fn check_tower_prime(ambient: &Ambient, p: u64) -> Result<(), LatticeError> {
    if !is_prime(p) {
        return Err(LatticeError::NotPrime(p));
    }
    let n = ambient.degree() as u64;
    if p <= 2 * n {
        return Err(LatticeError::PrimeTooSmall { p, n: n as usize });
    }
    if let Ambient::QuaternionOrder(alg) = ambient {
        if alg.is_excluded_prime(p) {
            return Err(LatticeError::RamifiedPrime { p, algebra: alg.to_string() });
        }
    }
    Ok(())
}

fn checked_level(e: &LatticeElement, p: u64, m: u32) -> Result<BigInt, LatticeError> {
    if m == 0 {
        return Err(LatticeError::InvalidInput("exponent m must be at least 1".into()));
    }
    check_tower_prime(&e.ambient(), p)?;
    let level = BigInt::from(p).pow(m);
    if !in_congruence(e, &level) {
        return Err(LatticeError::NotInSubgroup { level: level.to_string() });
    }
    Ok(level)
}

/// `(tr ≡ n mod p^m, k)` with `tr = p^m k + n`.
pub fn trace_congruence(e: &LatticeElement, p: u64, m: u32) -> Result<(bool, BigInt), LatticeError> {
    let level = checked_level(e, p, m)?;
    let diff = e.trace() - BigInt::from(e.degree());
    let (k, r) = diff.div_rem(&level);
    Ok((r.is_zero(), k))
}

/// Smallest `|q| <= n/2` (positive first) with `|tr(x^q)| > p^m - n`.
pub fn witness_q(e: &LatticeElement, p: u64, m: u32) -> Result<i64, LatticeError> {
    if e.is_identity() {
        return Err(LatticeError::IdentityElement);
    }
    if !e.is_semisimple() {
        return Err(LatticeError::NotSemisimple);
    }
    let level = checked_level(e, p, m)?;
    let n = e.degree();
    let threshold = &level - BigInt::from(n);
    let inverse = e.inverse();
    let (mut pos, mut neg) = (e.clone(), inverse.clone());
    for k in 1..=(n / 2) as i64 {
        if k > 1 {
            pos = pos.mul(e)?;
            neg = neg.mul(&inverse)?;
        }
        if pos.trace().abs() > threshold {
            return Ok(k);
        }
        if neg.trace().abs() > threshold {
            return Ok(-k);
        }
    }
    Err(LatticeError::NoWitness { element: e.to_string() })
}
