//! Dense univariate polynomials over the rationals.
//!
//! Only what the rest of the crate needs: arithmetic, Euclidean division and
//! gcd, squarefree decomposition (Yun) and cyclotomic factor extraction.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => Self {
                coeffs: self.coeffs.iter().map(|c| c / lc).collect(),
            },
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm: returns `(f_1, f_2, ...)` with `self = c * prod f_i^i`,
    /// each `f_i` monic, squarefree and pairwise coprime. Trivial factors are
    /// kept so that index `i - 1` always carries multiplicity `i`.
    pub fn squarefree_decomposition(&self) -> Vec<QPoly> {
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut factors = Vec::new();
        loop {
            let g = b.gcd(&d);
            factors.push(g.clone());
            b = b.div_rem(&g).0;
            if b.is_constant() {
                break;
            }
            c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
        }
        while factors.last().is_some_and(QPoly::is_constant) {
            factors.pop();
        }
        factors
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        if f.is_constant() {
            return f;
        }
        f.div_rem(&f.gcd(&f.derivative())).0.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at an integer matrix; `None` if a coefficient is not
    /// an integer.
    pub fn eval_matrix(&self, m: &IntegerMatrix) -> Option<IntegerMatrix> {
        let n = m.n();
        let mut acc = IntegerMatrix::zero(n);
        for c in self.coeffs.iter().rev() {
            if !c.is_integer() {
                return None;
            }
            acc = acc.mul(m).add(&IntegerMatrix::identity(n).scale(c.numer()));
        }
        Some(acc)
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Euler's totient for small arguments.
pub fn totient(mut k: u64) -> u64 {
    let mut result = k;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

/// The `k`-th cyclotomic polynomial, built by dividing `X^k - 1` by the
/// cyclotomic polynomials of the proper divisors of `k`.
pub fn cyclotomic(k: u64) -> QPoly {
    assert!(k >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u64, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&k) {
        return p.clone();
    }
    let k_usize = usize::try_from(k).expect("cyclotomic index fits in usize");
    let mut p = QPoly::monomial(k_usize).sub(&QPoly::one());
    for d in 1..k {
        if k % d == 0 {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    cache.lock().expect("cyclotomic cache").insert(k, p.clone());
    p
}

/// Splits a monic squarefree polynomial into `(cyclotomic part, remainder)`.
///
/// The cyclotomic part collects every `Phi_k` dividing `f`; its roots are
/// exactly the roots of unity among the roots of `f`.
pub fn split_cyclotomic(f: &QPoly) -> (Vec<u64>, QPoly) {
    let mut rest = f.monic();
    let mut found = Vec::new();
    let Some(deg) = rest.degree() else {
        return (found, rest);
    };
    // phi(k) >= sqrt(k / 2), so phi(k) <= deg forces k <= 2 deg^2.
    let limit = 2 * (deg as u64).pow(2) + 2;
    for k in 1..=limit {
        if rest.is_constant() {
            break;
        }
        if totient(k) as usize > rest.degree().unwrap_or(0) {
            continue;
        }
        let phi = cyclotomic(k);
        let (q, r) = rest.div_rem(&phi);
        if r.is_zero() {
            found.push(k);
            rest = q;
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> QPoly {
        QPoly::from_integers(c.iter().map(|&x| BigInt::from(x)))
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), zp(&[-1, 1]));
        assert_eq!(cyclotomic(2), zp(&[1, 1]));
        assert_eq!(cyclotomic(4), zp(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), zp(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), zp(&[1, 0, -1, 0, 1]));
        for k in 1..40 {
            assert_eq!(cyclotomic(k).degree(), Some(totient(k) as usize));
        }
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (X-1)^3 (X+2)
        let f = zp(&[-1, 1])
            .mul(&zp(&[-1, 1]))
            .mul(&zp(&[-1, 1]))
            .mul(&zp(&[2, 1]));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], zp(&[2, 1]));
        assert!(parts[1].is_constant());
        assert_eq!(parts[2], zp(&[-1, 1]));
        assert_eq!(f.squarefree_part(), zp(&[-1, 1]).mul(&zp(&[2, 1])));
    }

    #[test]
    fn split_cyclotomic_separates_salem_like_factor() {
        // (X^2 + 1)(X^2 - 3X + 1)
        let f = zp(&[1, 0, 1]).mul(&zp(&[1, -3, 1]));
        let (ks, rest) = split_cyclotomic(&f);
        assert_eq!(ks, vec![4]);
        assert_eq!(rest, zp(&[1, -3, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), zp(&[1, 1]));
        let (q, r) = zp(&[1, 0, 0, 1]).div_rem(&zp(&[1, 1]));
        assert_eq!(q, zp(&[1, -1, 1]));
        assert!(r.is_zero());
    }
}
