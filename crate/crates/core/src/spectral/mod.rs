//! Eigenvalue magnitudes, translation length `sqrt(2 sum (log |a_i|)^2)` and
//! the trace of the hyperbolic part `sum |a_i|`, computed from exact
//! characteristic polynomials with certified error radii.

mod roots;

pub use roots::{certified_roots, CertifiedRoot};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::poly::{split_cyclotomic, totient};
use crate::exact::{char_poly, fujiwara_bound, is_semisimple, CharPolyData, IntegerMatrix};
use crate::numeric::{bigint_ln, scaled_bigint_to_f64};

pub const DEFAULT_BITS: u32 = 128;

/// Magnitudes this close to 1 (or within the error radius, if larger) are
/// taken to lie on the unit circle.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("root refinement did not converge for a degree-{degree} factor; raise the precision")]
    ConvergenceFailure { degree: usize },
    #[error("element is not semisimple")]
    NotSemisimple,
    #[error("determinant is {det}, expected 1")]
    NotUnimodular { det: String },
    #[error("characteristic polynomial has degree 0")]
    EmptyPolynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralData {
    pub n: usize,
    /// `|a_1| >= ... >= |a_n|`, with multiplicity.
    pub magnitudes: Vec<f64>,
    /// `log |a_i|`, aligned with `magnitudes`.
    pub log_magnitudes: Vec<f64>,
    /// Uniform bound on `| |a_i| - magnitudes[i] |`.
    pub error_radius: f64,
    pub length: f64,
    /// Bound on the error of `length`, propagated from the root disks.
    pub length_error: f64,
    pub hyp_trace: f64,
}

impl SpectralData {
    pub fn is_zero_length(&self) -> bool {
        self.length == 0.0
    }

    /// Bound on the error of `hyp_trace`.
    pub fn hyp_trace_error(&self) -> f64 {
        self.n as f64 * self.error_radius + 4.0 * f64::EPSILON * self.hyp_trace
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ElementClass {
    Identity,
    Elliptic,
    PositiveLength,
    NonSemisimple,
}

struct Root {
    magnitude: f64,
    log: f64,
    magnitude_err: f64,
    log_err: f64,
}

impl Root {
    fn unit() -> Self {
        Root { magnitude: 1.0, log: 0.0, magnitude_err: 0.0, log_err: 0.0 }
    }

    fn from_certified(r: &CertifiedRoot) -> Self {
        let s2 = 2 * r.scale as i64;
        let norm = r.norm_sqr_scaled();
        let magnitude = scaled_bigint_to_f64(&norm, -s2).sqrt();
        let t = scaled_bigint_to_f64(&(&norm - (BigInt::one() << s2 as usize)), -s2);
        let sq = scaled_bigint_to_f64(&norm, -s2);
        let log = if t.abs() < 0.5 {
            0.5 * t.ln_1p()
        } else if sq > 0.0 && sq.is_finite() {
            0.5 * sq.ln()
        } else {
            0.5 * (bigint_ln(&norm) - s2 as f64 * std::f64::consts::LN_2)
        };
        let magnitude_err = r.radius + 2.0 * f64::EPSILON * magnitude;
        let log_err = if r.radius < magnitude {
            -(-r.radius / magnitude).ln_1p() + 4.0 * f64::EPSILON * (1.0 + log.abs())
        } else {
            f64::INFINITY
        };
        Root { magnitude, log, magnitude_err, log_err }
    }
}

/// Magnitudes of all complex roots of `cp`, with multiplicity.
///
/// Cyclotomic factors are split off exactly, so roots of unity come out as
/// exactly 1. The remaining roots are certified to `2^-bits` relative to the
/// Fujiwara bound; the reported `error_radius` also covers the final rounding
/// of each magnitude to `f64`.
pub fn root_magnitudes(cp: &CharPolyData, bits: u32) -> Result<SpectralData, SpectralError> {
    let n = cp.degree();
    if n == 0 {
        return Err(SpectralError::EmptyPolynomial);
    }
    let bound = fujiwara_bound(cp);
    let mut roots: Vec<Root> = Vec::with_capacity(n);
    for (idx, factor) in cp.to_qpoly().squarefree_decomposition().iter().enumerate() {
        let mult = idx + 1;
        if factor.is_constant() {
            continue;
        }
        let (ks, rest) = split_cyclotomic(factor);
        let unit_count: u64 = ks.iter().map(|&k| totient(k)).sum();
        for _ in 0..unit_count as usize * mult {
            roots.push(Root::unit());
        }
        let mut coeffs = rest
            .integer_coeffs()
            .expect("factors of a monic integer polynomial are integral");
        if coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
            for _ in 0..mult {
                roots.push(Root {
                    magnitude: 0.0,
                    log: f64::NEG_INFINITY,
                    magnitude_err: 0.0,
                    log_err: 0.0,
                });
            }
        }
        if coeffs.len() > 1 {
            for r in certified_roots(&coeffs, bits, bound)? {
                let root = Root::from_certified(&r);
                for _ in 1..mult {
                    roots.push(Root { ..root });
                }
                roots.push(root);
            }
        }
    }
    debug_assert_eq!(roots.len(), n);

    let error_radius = roots.iter().map(|r| r.magnitude_err).fold(0.0, f64::max);
    let tol = error_radius.max(UNIT_TOLERANCE);
    for r in roots.iter_mut() {
        if r.log != 0.0 && (r.magnitude - 1.0).abs() <= tol {
            r.log_err = r.log_err.max(r.log.abs());
            r.magnitude = 1.0;
            r.log = 0.0;
        }
    }
    roots.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));

    let sum_sq: f64 = roots.iter().map(|r| r.log * r.log).sum();
    let length = (2.0 * sum_sq).sqrt();
    let err_sq: f64 = roots.iter().map(|r| r.log_err * r.log_err).sum();
    let length_error = (2.0 * err_sq).sqrt() + 4.0 * f64::EPSILON * length;
    Ok(SpectralData {
        n,
        magnitudes: roots.iter().map(|r| r.magnitude).collect(),
        log_magnitudes: roots.iter().map(|r| r.log).collect(),
        error_radius,
        length,
        length_error,
        hyp_trace: roots.iter().map(|r| r.magnitude).sum(),
    })
}

/// Full spectral data of a semisimple determinant-one matrix.
pub fn translation_length(m: &IntegerMatrix, bits: u32) -> Result<SpectralData, SpectralError> {
    let det = m.determinant();
    if !det.is_one() {
        return Err(SpectralError::NotUnimodular { det: det.to_string() });
    }
    if !is_semisimple(m) {
        return Err(SpectralError::NotSemisimple);
    }
    root_magnitudes(&char_poly(m), bits)
}

/// Exact classification: an integer matrix with all eigenvalues on the unit
/// circle has only roots of unity as eigenvalues (Kronecker), so the
/// elliptic case is decided by cyclotomic factors alone.
pub fn classify(m: &IntegerMatrix) -> ElementClass {
    if m.is_identity() {
        ElementClass::Identity
    } else if !is_semisimple(m) {
        ElementClass::NonSemisimple
    } else {
        classify_semisimple(&char_poly(m))
    }
}

/// Elliptic or positive length, for a characteristic polynomial already
/// known to come from a semisimple non-identity element.
pub fn classify_semisimple(cp: &CharPolyData) -> ElementClass {
    let (_, rest) = split_cyclotomic(&cp.to_qpoly().squarefree_part());
    if rest.is_constant() {
        ElementClass::Elliptic
    } else {
        ElementClass::PositiveLength
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn logs_away_from_one_keep_full_precision() {
        // X^4 - 2X^3 - 5X^2 + 19X + 1; reference logs at 50 digits
        let sd = root_magnitudes(&CharPolyData::from_symmetric_i64(&[2, -5, -19, 1]), 128).unwrap();
        let expected = [0.9972408619621974793, 0.9972408619621974793, 0.96324486238537191344, -2.957726586309766872];
        for (got, want) in sd.log_magnitudes.iter().zip(expected) {
            assert!(close(*got, want, 4e-15), "{got} vs {want}");
        }
        let inv = root_magnitudes(&CharPolyData::from_symmetric_i64(&[-19, -5, 2, 1]), 128).unwrap();
        assert!(close(sd.length, inv.length, sd.length_error + inv.length_error));
    }

    #[test]
    fn magnitudes_of_small_polynomials() {
        let sd = root_magnitudes(&CharPolyData::from_symmetric_i64(&[27, 1]), 128).unwrap();
        // (27 +- sqrt(725)) / 2
        assert!(close(sd.magnitudes[0], 26.962912017836260, 1e-13));
        assert!(close(sd.magnitudes[1], 0.037087982163739922, 1e-16));
        assert!(close(sd.magnitudes[0] * sd.magnitudes[1], 1.0, 1e-14));

        let sd = root_magnitudes(&CharPolyData::from_symmetric_i64(&[0, 1]), 128).unwrap();
        assert_eq!(sd.magnitudes, vec![1.0, 1.0]);
        assert_eq!(sd.length, 0.0);

        let sd = root_magnitudes(&CharPolyData::from_symmetric_i64(&[3, 3, 1]), 128).unwrap();
        assert_eq!(sd.magnitudes, vec![1.0, 1.0, 1.0]);
        assert_eq!(sd.hyp_trace, 3.0);
    }

    #[test]
    fn lengths_of_examples() {
        let m = IntegerMatrix::from_i64_rows(&[[1, 5], [5, 26]]);
        let sd = translation_length(&m, 128).unwrap();
        // 2 arccosh(27/2)
        assert!(close(sd.length, 6.588924585484383, 1e-12));
        assert!(sd.length_error < 1e-13);
        assert!(close(sd.hyp_trace, 27.0, 1e-12));

        assert_eq!(translation_length(&IntegerMatrix::identity(3), 128).unwrap().length, 0.0);
        let rot = IntegerMatrix::from_i64_rows(&[[0, -1], [1, 0]]);
        assert_eq!(translation_length(&rot, 128).unwrap().length, 0.0);

        let unipotent = IntegerMatrix::from_i64_rows(&[[1, 1], [0, 1]]);
        assert_eq!(translation_length(&unipotent, 128), Err(SpectralError::NotSemisimple));
        let two = IntegerMatrix::from_i64_rows(&[[2, 0], [0, 1]]);
        assert!(matches!(translation_length(&two, 128), Err(SpectralError::NotUnimodular { .. })));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&IntegerMatrix::identity(2)), ElementClass::Identity);
        assert_eq!(
            classify(&IntegerMatrix::from_i64_rows(&[[1, 1], [0, 1]])),
            ElementClass::NonSemisimple
        );
        assert_eq!(
            classify(&IntegerMatrix::from_i64_rows(&[[0, -1], [1, 0]])),
            ElementClass::Elliptic
        );
        assert_eq!(
            classify(&IntegerMatrix::from_i64_rows(&[[1, 5], [5, 26]])),
            ElementClass::PositiveLength
        );
        // order 6 rotation and -I are elliptic too
        assert_eq!(
            classify(&IntegerMatrix::from_i64_rows(&[[1, -1], [1, 0]])),
            ElementClass::Elliptic
        );
        assert_eq!(
            classify(&IntegerMatrix::from_i64_rows(&[[-1, 0], [0, -1]])),
            ElementClass::Elliptic
        );
    }

    #[test]
    fn repeated_and_mixed_factors() {
        // (X^2 - 3X + 1)^2 (X + 1): diag-like block structure of degree 5
        let cp = CharPolyData::from_monic_coeffs(
            &[1, -5, 5, 5, -5, 1].map(BigInt::from),
        )
        .unwrap();
        let sd = root_magnitudes(&cp, 128).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(close(sd.magnitudes[0], phi2, 1e-14));
        assert!(close(sd.magnitudes[1], phi2, 1e-14));
        assert_eq!(sd.magnitudes[2], 1.0);
        let expect = (2.0 * 4.0 * phi2.ln().powi(2)).sqrt();
        assert!(close(sd.length, expect, 1e-13));
    }
}
