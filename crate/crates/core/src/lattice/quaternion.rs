//! Quaternion algebras `(a, b / Q)` with basis `1, i, j, ij`, `i^2 = a`,
//! `j^2 = b`, `ij = -ji`, and their standard order `Z<1, i, j, ij>`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::LatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: i64,
    b: i64,
}

impl QuaternionAlgebra {
    pub fn new(a: i64, b: i64) -> Result<Self, LatticeError> {
        if a == 0 || b == 0 {
            return Err(LatticeError::InvalidInput(format!("Hilbert symbol ({a}, {b}) needs nonzero entries")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `D ⊗ R ≅ Mat_2(R)`.
    pub fn split_real(&self) -> bool {
        self.a > 0 || self.b > 0
    }

    /// Primes where the standard order may fail to be `Mat_2(Z_p)`: those dividing `2ab`.
    pub fn is_excluded_prime(&self, p: u64) -> bool {
        let two_ab = BigInt::from(2) * BigInt::from(self.a) * BigInt::from(self.b);
        (two_ab % BigInt::from(p)).is_zero()
    }

    pub fn from_json_value(v: &Value) -> Result<Self, LatticeError> {
        let get = |key: &str| {
            v.get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| LatticeError::InvalidInput(format!("algebra JSON needs integer \"{key}\"")))
        };
        Self::new(get("a")?, get("b")?)
    }

    pub fn to_json_value(&self) -> Value {
        json!({ "a": self.a, "b": self.b })
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / Q)", self.a, self.b)
    }
}

/// `w + x i + y j + z ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement {
    coeffs: [BigRational; 4],
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl QuatElement {
    pub fn new(coeffs: [BigRational; 4]) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new([q(w), q(x), q(y), q(z)])
    }

    pub fn from_bigints(c: [BigInt; 4]) -> Self {
        Self::new(c.map(BigRational::from_integer))
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0, 0, 0)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn w(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, if integral.
    pub fn integer_coeffs(&self) -> Option<[BigInt; 4]> {
        self.is_integral().then(|| self.coeffs.clone().map(|c| c.to_integer()))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn conjugate(&self) -> Self {
        let [w, x, y, z] = self.coeffs.clone();
        Self::new([w, -x, -y, -z])
    }

    pub fn mul(&self, rhs: &Self, alg: &QuaternionAlgebra) -> Self {
        let (a, b) = (q(alg.a), q(alg.b));
        let [w1, x1, y1, z1] = &self.coeffs;
        let [w2, x2, y2, z2] = &rhs.coeffs;
        let w = w1 * w2 + &a * x1 * x2 + &b * y1 * y2 - &a * &b * z1 * z2;
        let x = w1 * x2 + x1 * w2 - &b * y1 * z2 + &b * z1 * y2;
        let y = w1 * y2 + y1 * w2 + &a * x1 * z2 - &a * z1 * x2;
        let z = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
        Self::new([w, x, y, z])
    }

    pub fn pow(&self, k: u32, alg: &QuaternionAlgebra) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, alg);
            }
            base = base.mul(&base, alg);
            k >>= 1;
        }
        acc
    }

    pub fn inverse(&self, alg: &QuaternionAlgebra) -> Option<Self> {
        let (_, nrd) = quat_trd_nrd(self, alg);
        if nrd.is_zero() {
            return None;
        }
        Some(Self::new(self.conjugate().coeffs.map(|c| c / &nrd)))
    }

    /// `{"coeffs": ["w", "x", "y", "z"]}` with rationals written `p/q`.
    pub fn to_json_value(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
    }

    pub fn from_json_value(v: &Value) -> Result<Self, LatticeError> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 4)
            .ok_or_else(|| LatticeError::InvalidInput("element JSON needs \"coeffs\" with 4 entries".into()))?;
        let mut out: [BigRational; 4] = Default::default();
        for (slot, item) in out.iter_mut().zip(arr) {
            let text = match item {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(LatticeError::InvalidInput(format!("bad coefficient {other}"))),
            };
            *slot = parse_rational(&text)?;
        }
        Ok(Self::new(out))
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, LatticeError> {
    let bad = || LatticeError::InvalidInput(format!("bad rational {text:?}"));
    let text = text.trim();
    match text.split_once('/') {
        None => BigInt::from_str(text).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = &self.coeffs;
        write!(f, "{w} + {x}i + {y}j + {z}ij")
    }
}

pub fn quat_mult(u: &QuatElement, v: &QuatElement, alg: &QuaternionAlgebra) -> QuatElement {
    u.mul(v, alg)
}

/// Reduced trace `2w` and reduced norm `w^2 - a x^2 - b y^2 + ab z^2`.
pub fn quat_trd_nrd(u: &QuatElement, alg: &QuaternionAlgebra) -> (BigRational, BigRational) {
    let (a, b) = (q(alg.a), q(alg.b));
    let [w, x, y, z] = &u.coeffs;
    let trd = w * q(2);
    let nrd = w * w - &a * x * x - &b * y * y + &a * &b * z * z;
    (trd, nrd)
}

/// Real matrix image under `D ⊗ R ≅ Mat_2(R)`. For `a > 0` this sends
/// `i -> diag(√a, -√a)` and `j -> [[0, b], [1, 0]]`; otherwise the roles of
/// `i` and `j` are exchanged.
pub fn split_embedding(u: &QuatElement, alg: &QuaternionAlgebra) -> Result<[[f64; 2]; 2], LatticeError> {
    let f = |c: &BigRational| c.to_f64().unwrap_or(f64::NAN);
    let [w, x, y, z] = u.coeffs.each_ref().map(f);
    let (a, b) = (alg.a as f64, alg.b as f64);
    if alg.a > 0 {
        let s = a.sqrt();
        Ok([[w + x * s, b * (y + z * s)], [y - z * s, w - x * s]])
    } else if alg.b > 0 {
        // i' = j, j' = i, i'j' = -ij
        let t = b.sqrt();
        Ok([[w + y * t, a * (x - z * t)], [x + z * t, w - y * t]])
    } else {
        Err(LatticeError::NotSplit(alg.to_string()))
    }
}

/// `x + y √d -> [[x, d y], [y, x]]`.
pub fn quadratic_field_embedding(x: &BigRational, y: &BigRational, d: &BigRational) -> [[BigRational; 2]; 2] {
    [[x.clone(), d * y], [y.clone(), x.clone()]]
}

/// Rational `4x4` image: write `u = W + Z j` with `W, Z ∈ Q(√a)`, map to
/// `[[W, bZ], [conj Z, conj W]]` and then each entry through
/// [`quadratic_field_embedding`].
pub fn rational_embedding(u: &QuatElement, alg: &QuaternionAlgebra) -> Vec<Vec<BigRational>> {
    let (a, b) = (q(alg.a), q(alg.b));
    let [w, x, y, z] = &u.coeffs;
    let blocks = [
        [(w.clone(), x.clone()), (&b * y, &b * z)],
        [(y.clone(), -z.clone()), (w.clone(), -x.clone())],
    ];
    let mut out = vec![vec![BigRational::zero(); 4]; 4];
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, (re, im)) in row.iter().enumerate() {
            let m = quadratic_field_embedding(re, im, &a);
            for r in 0..2 {
                for c in 0..2 {
                    out[2 * bi + r][2 * bj + c] = m[r][c].clone();
                }
            }
        }
    }
    out
}

/// Semisimple as an element of `D ⊗ R`: either rational, or with distinct
/// roots of `X^2 - trd X + nrd`.
pub fn quat_is_semisimple(u: &QuatElement, alg: &QuaternionAlgebra) -> bool {
    if u.is_rational() {
        return true;
    }
    let (trd, nrd) = quat_trd_nrd(u, alg);
    &trd * &trd - nrd * q(4) != BigRational::zero()
}

impl Default for QuatElement {
    fn default() -> Self {
        Self::new(Default::default())
    }
}
