use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ExactError, IntegerMatrix, QPoly};
use crate::numeric::{bigint_ln, bigint_to_f64};

/// Characteristic polynomial `X^n - s_1 X^{n-1} + s_2 X^{n-2} - ... + (-1)^n s_n`
/// stored through its elementary symmetric functions `s_1 .. s_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPolyData {
    sym: Vec<BigInt>,
}

impl CharPolyData {
    pub fn from_symmetric(sym: Vec<BigInt>) -> Self {
        Self { sym }
    }

    pub fn from_symmetric_i64(sym: &[i64]) -> Self {
        Self::from_symmetric(sym.iter().map(|&s| BigInt::from(s)).collect())
    }

    /// From monic coefficients, highest degree first (`[1, c_1, ..., c_n]`).
    pub fn from_monic_coeffs(coeffs: &[BigInt]) -> Result<Self, ExactError> {
        match coeffs.first() {
            Some(lead) if lead.is_one() => {}
            _ => return Err(ExactError::NotMonic),
        }
        let sym = coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { -c } else { c.clone() })
            .collect();
        Ok(Self { sym })
    }

    pub fn degree(&self) -> usize {
        self.sym.len()
    }

    /// `s_j`, with `s_0 = 1` and `s_j = 0` beyond the degree.
    pub fn s(&self, j: usize) -> BigInt {
        match j {
            0 => BigInt::one(),
            j if j <= self.sym.len() => self.sym[j - 1].clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn symmetric(&self) -> &[BigInt] {
        &self.sym
    }

    pub fn determinant(&self) -> BigInt {
        self.s(self.degree())
    }

    pub fn trace(&self) -> BigInt {
        self.s(1)
    }

    /// Monic coefficients, highest degree first.
    pub fn monic_coeffs(&self) -> Vec<BigInt> {
        std::iter::once(BigInt::one())
            .chain(
                self.sym
                    .iter()
                    .enumerate()
                    .map(|(k, s)| if k % 2 == 0 { -s } else { s.clone() }),
            )
            .collect()
    }

    /// Coefficients lowest degree first, as an exact polynomial.
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_integers(self.monic_coeffs().into_iter().rev())
    }

    pub fn is_unipotent_poly(&self) -> bool {
        let n = self.degree();
        (1..=n).all(|j| self.sym[j - 1] == binomial(n, j))
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Exact characteristic polynomial by Berkowitz's division-free algorithm.
pub fn char_poly(m: &IntegerMatrix) -> CharPolyData {
    let n = m.n();
    // coefficients of det(X I - A_r), highest degree first
    let mut poly = vec![BigInt::one()];
    for r in 0..n {
        // column vector C = A[0..r][r], row vector R = A[r][0..r]
        let col: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let row: Vec<BigInt> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-m.get(r, r));
        let mut v = col;
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            toeplitz.push(-dot);
            v = (0..r)
                .map(|i| (0..r).map(|k| m.get(i, k) * &v[k]).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .map(|j| &toeplitz[i - j] * &poly[j])
                    .sum::<BigInt>()
            })
            .collect();
        poly = next;
    }
    let cp = CharPolyData::from_monic_coeffs(&poly).expect("Berkowitz output is monic");
    debug_assert!(cp
        .to_qpoly()
        .eval_matrix(m)
        .is_some_and(|z| z.is_zero()));
    cp
}

/// Characteristic polynomial of the inverse of a determinant-one element:
/// `s_i(x^{-1}) = s_{n-i}(x)`.
pub fn symmetric_of_inverse(cp: &CharPolyData) -> Result<CharPolyData, ExactError> {
    let n = cp.degree();
    if !cp.s(n).is_one() {
        return Err(ExactError::NotUnimodular {
            det: cp.s(n).to_string(),
        });
    }
    Ok(CharPolyData::from_symmetric(
        (1..=n).map(|i| cp.s(n - i)).collect(),
    ))
}

/// Fujiwara's root bound for the monic polynomial:
/// `2 max{|s_1|, |s_2|^{1/2}, ..., |s_{n-1}|^{1/(n-1)}, |s_n / 2|^{1/n}}`.
///
/// The result is nudged up by a few ulps so float rounding cannot make it
/// smaller than the exact value.
pub fn fujiwara_bound(cp: &CharPolyData) -> f64 {
    let n = cp.degree();
    if n == 0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    for k in 1..n {
        let s = cp.s(k).abs();
        if s.is_zero() {
            continue;
        }
        best = best.max(root_of_bigint(&s, k));
    }
    let last = cp.s(n).abs();
    if !last.is_zero() {
        let v = ((bigint_ln(&last) - std::f64::consts::LN_2) / n as f64).exp();
        best = best.max(v);
    }
    2.0 * best * (1.0 + 8.0 * f64::EPSILON)
}

fn root_of_bigint(s: &BigInt, k: usize) -> f64 {
    let x = bigint_to_f64(s);
    if x.is_finite() {
        if k == 1 {
            x
        } else {
            x.powf(1.0 / k as f64)
        }
    } else {
        (bigint_ln(s) / k as f64).exp()
    }
}
