//! Certified complex roots of squarefree monic integer polynomials.
//!
//! Seeds come from a double-precision Aberth iteration. They are polished
//! with Weierstrass (Durand-Kerner) steps whose corrections are evaluated
//! exactly on a dyadic grid, and every root is certified by the inclusion
//! disk `|z - z_i| <= d |W_i|` with `W_i = p(z_i) / prod_{j != i} (z_i - z_j)`.
//! Pairwise disjoint disks hold exactly one root each.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, Zero};

use super::SpectralError;
use crate::numeric::{bigint_to_f64, ldexp, scaled_bigint_to_f64};

const MAX_ABERTH_STEPS: usize = 2000;
const MAX_POLISH_STEPS: usize = 200;
/// Relative allowance for the few roundings in radius and distance estimates.
const SLACK: f64 = 1e-12;

/// A root `(re + i im) * 2^-scale` together with a radius of a disk around it
/// that provably contains exactly one root of the polynomial.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub re: BigInt,
    pub im: BigInt,
    pub scale: u64,
    pub radius: f64,
}

impl CertifiedRoot {
    /// `|z|^2 * 2^(2 scale)`, exact.
    pub fn norm_sqr_scaled(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        let e = -(self.scale as i64);
        Complex64::new(scaled_bigint_to_f64(&self.re, e), scaled_bigint_to_f64(&self.im, e))
    }
}

/// Roots of the monic squarefree polynomial with integer coefficients
/// `coeffs` (lowest degree first). Each disk radius is driven below
/// `2^-bits * scale_hint`; anything above `2^(-bits/2) * scale_hint` after the
/// step budget is reported as a convergence failure.
pub fn certified_roots(
    coeffs: &[BigInt],
    bits: u32,
    scale_hint: f64,
) -> Result<Vec<CertifiedRoot>, SpectralError> {
    let d = coeffs.len() - 1;
    assert!(d >= 1, "polynomial must have positive degree");
    let s = 2 * u64::from(bits) + 64;
    let hint = scale_hint.max(1.0);
    let target = ldexp(hint, -i64::from(bits));
    let acceptable = ldexp(hint, -i64::from(bits / 2));

    let mut z: Vec<(BigInt, BigInt)> = aberth_seeds(coeffs)
        .into_iter()
        .map(|c| (to_grid(c.re, s), to_grid(c.im, s)))
        .collect();
    let mut best: Option<(f64, Vec<CertifiedRoot>)> = None;

    for step in 0..MAX_POLISH_STEPS {
        let mut numer = Vec::with_capacity(d);
        let mut denom = Vec::with_capacity(d);
        let mut collided = false;
        for i in 0..d {
            let p = eval_scaled(coeffs, &z[i], s);
            let mut q = (BigInt::from(1), BigInt::zero());
            for j in 0..d {
                if j != i {
                    q = cmul(&q, &(&z[i].0 - &z[j].0, &z[i].1 - &z[j].1));
                }
            }
            if q.0.is_zero() && q.1.is_zero() {
                collided = true;
                // separate coincident approximations deterministically
                z[i].1 += BigInt::from(i as u64 + 1 + step as u64) << (s - 40);
            }
            numer.push(p);
            denom.push(q);
        }
        if collided {
            continue;
        }

        let radii: Vec<f64> = (0..d)
            .map(|i| {
                let pn = norm_sqr(&numer[i]);
                if pn.is_zero() {
                    return 0.0;
                }
                let w2 = ratio_f64(&pn, &norm_sqr(&denom[i]), -2 * s as i64);
                d as f64 * w2.sqrt() * (1.0 + SLACK)
            })
            .collect();
        let rmax = radii.iter().cloned().fold(0.0, f64::max);
        if rmax.is_finite() && disjoint(&z, &radii, s) {
            let roots: Vec<CertifiedRoot> = z
                .iter()
                .zip(&radii)
                .map(|((re, im), &radius)| CertifiedRoot {
                    re: re.clone(),
                    im: im.clone(),
                    scale: s,
                    radius,
                })
                .collect();
            if rmax <= target {
                return Ok(roots);
            }
            if best.as_ref().map_or(true, |(r, _)| rmax < *r) {
                best = Some((rmax, roots));
            }
        }

        for i in 0..d {
            let (pr, pi) = &numer[i];
            let (qr, qi) = &denom[i];
            let q2 = qr * qr + qi * qi;
            let wr = (pr * qr + pi * qi) / &q2;
            let wi = (pi * qr - pr * qi) / &q2;
            z[i].0 -= wr;
            z[i].1 -= wi;
        }
    }

    match best {
        Some((rmax, roots)) if rmax <= acceptable => Ok(roots),
        _ => Err(SpectralError::ConvergenceFailure { degree: d }),
    }
}

fn cmul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn norm_sqr(a: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &a.0 + &a.1 * &a.1
}

/// `p(z) * 2^(s d)` for `z = (re + i im) 2^-s`, exact.
fn eval_scaled(coeffs: &[BigInt], z: &(BigInt, BigInt), s: u64) -> (BigInt, BigInt) {
    let d = coeffs.len() - 1;
    let mut acc = (coeffs[d].clone(), BigInt::zero());
    for k in (0..d).rev() {
        let (r, i) = cmul(&acc, z);
        acc = (r + (&coeffs[k] << (s as usize * (d - k))), i);
    }
    acc
}

/// `num / den * 2^exp` for positive big integers, to a few ulps.
fn ratio_f64(num: &BigInt, den: &BigInt, exp: i64) -> f64 {
    let (mn, en) = top_bits(num);
    let (md, ed) = top_bits(den);
    ldexp(mn / md, en - ed + exp)
}

fn top_bits(x: &BigInt) -> (f64, i64) {
    let bits = x.bits() as i64;
    if bits <= 64 {
        (bigint_to_f64(x).abs(), 0)
    } else {
        let shift = bits - 64;
        (bigint_to_f64(&(x.abs() >> shift as usize)), shift)
    }
}

fn disjoint(z: &[(BigInt, BigInt)], radii: &[f64], s: u64) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let dz = (&z[i].0 - &z[j].0, &z[i].1 - &z[j].1);
            let dist = scaled_bigint_to_f64(&norm_sqr(&dz), -2 * s as i64).sqrt() * (1.0 - SLACK);
            if dist <= radii[i] + radii[j] {
                return false;
            }
        }
    }
    true
}

/// Exact grid point `x * 2^s`, truncated.
fn to_grid(x: f64, s: u64) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let (mantissa, exp, sign) = x.integer_decode();
    let m = BigInt::from(mantissa);
    let e = i64::from(exp) + s as i64;
    let v = if e >= 0 { m << e as usize } else { m >> (-e) as usize };
    if sign < 0 {
        -v
    } else {
        v
    }
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(c[c.len() - 1], 0.0);
    let mut dp = Complex64::zero();
    for &ck in c[..c.len() - 1].iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

/// Double-precision Aberth-Ehrlich iteration started on a circle of radius
/// given by the Fujiwara bound.
fn aberth_seeds(coeffs: &[BigInt]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let c: Vec<f64> = coeffs.iter().map(bigint_to_f64).collect();
    if d == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let mut radius = 0.0f64;
    for k in 1..=d {
        let a = c[d - k].abs();
        let term = if k == d { (a / 2.0).powf(1.0 / k as f64) } else { a.powf(1.0 / k as f64) };
        radius = radius.max(term);
    }
    let radius = if radius.is_finite() && radius > 0.0 { 2.0 * radius } else { 1.0 };
    let initial: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut z = initial.clone();
    for _ in 0..MAX_ABERTH_STEPS {
        let mut moved = false;
        for i in 0..d {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                return initial;
            }
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm() {
                moved = true;
            }
            z[i] -= w;
        }
        if !moved {
            break;
        }
    }
    z
}
