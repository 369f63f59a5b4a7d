use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::ExactError;

/// Square matrix with exact integer entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(ExactError::Shape {
                n,
                len: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let n = rows.len();
        if n == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        if let Some(row) = rows.iter().position(|r| r.len() != n) {
            return Err(ExactError::Ragged { row });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed literal matrix")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, x)| {
            if k / self.n == k % self.n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { n: self.n, entries }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[(n - 1) * n + (n - 1)]
    }

    /// Matrix obtained by deleting row `row` and column `col`.
    pub fn minor(&self, row: usize, col: usize) -> Option<Self> {
        if self.n < 2 {
            return None;
        }
        let entries = (0..self.n)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..self.n)
                    .filter(move |&j| j != col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        Some(Self {
            n: self.n - 1,
            entries,
        })
    }

    /// Classical adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j).expect("n >= 2").determinant();
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                out.entries[j * n + i] = cof;
            }
        }
        out
    }

    /// Exact inverse when the determinant is a unit; `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        let det = self.determinant();
        if det.is_one() {
            Some(self.adjugate())
        } else if (-&det).is_one() {
            Some(self.adjugate().scale(&det))
        } else {
            None
        }
    }

    /// True when every entry is congruent to the identity modulo `level`.
    pub fn is_identity_mod(&self, level: &BigInt) -> bool {
        self.entries.iter().enumerate().all(|(k, x)| {
            let target = if k / self.n == k % self.n {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            (x - target).mod_floor(level).is_zero()
        })
    }

    pub fn from_json_value(value: &Value) -> Result<Self, ExactError> {
        let obj = value
            .as_object()
            .ok_or_else(|| ExactError::Json("expected an object with \"n\" and \"entries\"".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| ExactError::Json("\"n\" must be a positive integer".into()))?;
        let rows = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| ExactError::Json("\"entries\" must be an array of rows".into()))?;
        let n = usize::try_from(n).map_err(|_| ExactError::Json("\"n\" too large".into()))?;
        if rows.len() != n {
            return Err(ExactError::Json(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        let mut parsed = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| ExactError::Json(format!("row {i} is not an array")))?;
            if row.len() != n {
                return Err(ExactError::Ragged { row: i });
            }
            let row = row
                .iter()
                .map(json_integer)
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(row);
        }
        Self::from_rows(parsed)
    }

    pub fn from_json_str(text: &str) -> Result<Self, ExactError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| ExactError::Json(e.to_string()))?;
        Self::from_json_value(&value)
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .map(|r| Value::Array(r.iter().map(bigint_to_json).collect()))
            .collect();
        json!({ "n": self.n, "entries": rows })
    }
}

/// Parses a JSON integer (number literal or decimal string) into a `BigInt`.
pub(crate) fn json_integer(v: &Value) -> Result<BigInt, ExactError> {
    let text = match v {
        Value::Number(num) => num.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(ExactError::Json(format!("non-integer entry {other}"))),
    };
    BigInt::from_str(text.trim()).map_err(|_| ExactError::Json(format!("non-integer entry {text}")))
}

pub(crate) fn bigint_to_json(x: &BigInt) -> Value {
    serde_json::Number::from_str(&x.to_string())
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
