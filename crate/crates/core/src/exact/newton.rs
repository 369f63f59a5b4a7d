//! Newton's identities between elementary symmetric functions and power
//! sums (`tr(x^j)`), in both directions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{CharPolyData, ExactError};

/// `tr(x), tr(x^2), ..., tr(x^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerTraces {
    traces: Vec<BigInt>,
}

impl PowerTraces {
    pub fn new(traces: Vec<BigInt>) -> Self {
        Self { traces }
    }

    pub fn from_i64(traces: &[i64]) -> Self {
        Self::new(traces.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn degree(&self) -> usize {
        self.traces.len()
    }

    pub fn traces(&self) -> &[BigInt] {
        &self.traces
    }

    /// `tr(x^j)` for `1 <= j <= n`.
    pub fn get(&self, j: usize) -> &BigInt {
        &self.traces[j - 1]
    }

    pub fn abs_sum(&self) -> BigInt {
        self.traces.iter().map(|t| t.abs()).sum()
    }
}

fn alternating(i: usize) -> bool {
    // sign (-1)^{i-1} is positive for odd i
    i % 2 == 1
}

/// Solves `j s_j = sum_{i=1}^{j} (-1)^{i-1} s_{j-i} tr(x^i)` for the power sums.
pub fn newton_power_traces(cp: &CharPolyData) -> PowerTraces {
    let n = cp.degree();
    let mut p: Vec<BigInt> = Vec::with_capacity(n);
    for j in 1..=n {
        // (-1)^{j-1} p_j = j s_j - sum_{i<j} (-1)^{i-1} s_{j-i} p_i
        let mut acc = BigInt::from(j) * cp.s(j);
        for i in 1..j {
            let term = cp.s(j - i) * &p[i - 1];
            if alternating(i) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        p.push(if alternating(j) { acc } else { -acc });
    }
    PowerTraces::new(p)
}

/// Inverse of [`newton_power_traces`]. Fails when a division by `j` is not
/// exact, which means the traces cannot come from an integral element.
pub fn newton_symmetric(pt: &PowerTraces) -> Result<CharPolyData, ExactError> {
    let n = pt.degree();
    let mut s: Vec<BigInt> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=j {
            let prev = if i == j { BigInt::from(1) } else { s[j - i - 1].clone() };
            let term = prev * pt.get(i);
            if alternating(i) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(j));
        if !r.is_zero() {
            return Err(ExactError::NonIntegralResult { index: j });
        }
        s.push(q);
    }
    Ok(CharPolyData::from_symmetric(s))
}

/// Rational-typed variant of [`newton_symmetric`] for trace data that need
/// not come from an integral element.
pub fn newton_symmetric_rational(traces: &[BigRational]) -> Vec<BigRational> {
    let n = traces.len();
    let mut s: Vec<BigRational> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let prev = if i == j {
                BigRational::from_integer(1.into())
            } else {
                s[j - i - 1].clone()
            };
            let term = prev * &traces[i - 1];
            if alternating(i) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{char_poly, IntegerMatrix};

    // Power sums computed straight from the roots, independent of the
    // recursion under test.
    fn power_sums(roots: &[i64], n: usize) -> Vec<i64> {
        (1..=n as u32)
            .map(|k| roots.iter().map(|r| r.pow(k)).sum())
            .collect()
    }

    #[test]
    fn power_traces_examples() {
        let pt = newton_power_traces(&CharPolyData::from_symmetric_i64(&[3, 1]));
        // companion [[0,-1],[1,3]] squared has trace 7
        let c = IntegerMatrix::from_i64_rows(&[[0, -1], [1, 3]]);
        assert_eq!(pt, PowerTraces::new(vec![c.trace(), c.pow(2).trace()]));
        assert_eq!(pt, PowerTraces::from_i64(&[3, 7]));

        let pt = newton_power_traces(&CharPolyData::from_symmetric_i64(&[6, 11, 6]));
        assert_eq!(pt, PowerTraces::from_i64(&power_sums(&[1, 2, 3], 3)));
        assert_eq!(pt, PowerTraces::from_i64(&[6, 14, 36]));

        for n in 1..=9 {
            let pt = newton_power_traces(&char_poly(&IntegerMatrix::identity(n)));
            assert!(pt.traces().iter().all(|t| *t == BigInt::from(n)));
        }
    }

    #[test]
    fn symmetric_examples() {
        for n in 1..=9usize {
            let cp = newton_symmetric(&PowerTraces::new(vec![BigInt::from(n); n])).unwrap();
            let expected: Vec<BigInt> = (1..=n).map(|j| super::super::charpoly::binomial(n, j)).collect();
            assert_eq!(cp.symmetric(), expected.as_slice());
        }
        assert_eq!(
            newton_symmetric(&PowerTraces::from_i64(&[3, 7])).unwrap(),
            CharPolyData::from_symmetric_i64(&[3, 1])
        );
        assert_eq!(
            newton_symmetric(&PowerTraces::from_i64(&[6, 14, 36])).unwrap(),
            CharPolyData::from_symmetric_i64(&[6, 11, 6])
        );
    }

    #[test]
    fn inconsistent_traces_fail_loudly() {
        // s_2 = (3*3 - 8)/2 is not an integer
        assert!(matches!(
            newton_symmetric(&PowerTraces::from_i64(&[3, 8])),
            Err(ExactError::NonIntegralResult { index: 2 })
        ));
        let s = newton_symmetric_rational(&[
            BigRational::from_integer(3.into()),
            BigRational::from_integer(8.into()),
        ]);
        assert_eq!(s[1], BigRational::new(1.into(), 2.into()));
    }
}
