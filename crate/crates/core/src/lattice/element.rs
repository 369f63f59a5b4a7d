use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::quaternion::{quat_is_semisimple, quat_trd_nrd, QuatElement, QuaternionAlgebra};
use super::LatticeError;
use crate::exact::{char_poly, is_semisimple, CharPolyData, IntegerMatrix};
use crate::spectral::{root_magnitudes, SpectralData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    SpecialLinear { n: usize },
    QuaternionOrder(QuaternionAlgebra),
}

impl Ambient {
    /// Matrix size of the real points: `n`, or 2 for a quaternion algebra.
    pub fn degree(&self) -> usize {
        match self {
            Ambient::SpecialLinear { n } => *n,
            Ambient::QuaternionOrder(_) => 2,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::SpecialLinear { n } => write!(f, "SL_{n}(Z)"),
            Ambient::QuaternionOrder(alg) => write!(f, "O^1 in {alg}"),
        }
    }
}

/// A principal congruence subgroup: the kernel of reduction modulo `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceSpec {
    pub ambient: Ambient,
    pub level: BigInt,
}

impl CongruenceSpec {
    pub fn new(ambient: Ambient, level: BigInt) -> Result<Self, LatticeError> {
        if level < BigInt::one() {
            return Err(LatticeError::InvalidInput(format!("level {level} must be positive")));
        }
        Ok(Self { ambient, level })
    }

    /// `(p, m)` when the level is a prime power `p^m` with `m >= 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        let level = u64::try_from(&self.level).ok()?;
        if level < 2 {
            return None;
        }
        let p = (2..=level).find(|d| level % d == 0)?;
        let mut rest = level;
        let mut m = 0;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        (rest == 1).then_some((p, m))
    }
}

/// A determinant-one (or reduced-norm-one) integral element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeElement {
    SpecialLinear(IntegerMatrix),
    Quaternion { algebra: QuaternionAlgebra, element: QuatElement },
}

impl LatticeElement {
    pub fn special_linear(m: IntegerMatrix) -> Result<Self, LatticeError> {
        let det = m.determinant();
        if !det.is_one() {
            return Err(LatticeError::NotUnit(format!("determinant {det}")));
        }
        Ok(Self::SpecialLinear(m))
    }

    pub fn quaternion(algebra: QuaternionAlgebra, element: QuatElement) -> Result<Self, LatticeError> {
        if !element.is_integral() {
            return Err(LatticeError::NotUnit("coefficients are not integral".into()));
        }
        let (_, nrd) = quat_trd_nrd(&element, &algebra);
        if !nrd.is_one() {
            return Err(LatticeError::NotUnit(format!("reduced norm {nrd}")));
        }
        Ok(Self::Quaternion { algebra, element })
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            Self::SpecialLinear(m) => Ambient::SpecialLinear { n: m.n() },
            Self::Quaternion { algebra, .. } => Ambient::QuaternionOrder(*algebra),
        }
    }

    pub fn degree(&self) -> usize {
        self.ambient().degree()
    }

    /// Trace, or reduced trace.
    pub fn trace(&self) -> BigInt {
        match self {
            Self::SpecialLinear(m) => m.trace(),
            Self::Quaternion { algebra, element } => quat_trd_nrd(element, algebra).0.to_integer(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Self::SpecialLinear(m) => m.is_identity(),
            Self::Quaternion { element, .. } => *element == QuatElement::one(),
        }
    }

    pub fn is_semisimple(&self) -> bool {
        match self {
            Self::SpecialLinear(m) => is_semisimple(m),
            Self::Quaternion { algebra, element } => quat_is_semisimple(element, algebra),
        }
    }

    /// Characteristic polynomial (reduced characteristic polynomial for quaternions).
    pub fn char_poly(&self) -> CharPolyData {
        match self {
            Self::SpecialLinear(m) => char_poly(m),
            Self::Quaternion { algebra, element } => {
                let (trd, nrd) = quat_trd_nrd(element, algebra);
                CharPolyData::from_symmetric(vec![trd.to_integer(), nrd.to_integer()])
            }
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LatticeError> {
        match (self, rhs) {
            (Self::SpecialLinear(a), Self::SpecialLinear(b)) if a.n() == b.n() => {
                Ok(Self::SpecialLinear(a.mul(b)))
            }
            (Self::Quaternion { algebra, element: u }, Self::Quaternion { algebra: alg2, element: v })
                if algebra == alg2 =>
            {
                Ok(Self::Quaternion { algebra: *algebra, element: u.mul(v, algebra) })
            }
            _ => Err(LatticeError::InvalidInput("elements live in different groups".into())),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::SpecialLinear(m) => {
                Self::SpecialLinear(m.inverse_unimodular().expect("determinant one"))
            }
            Self::Quaternion { algebra, element } => {
                Self::Quaternion { algebra: *algebra, element: element.conjugate() }
            }
        }
    }

    /// `x^q` for any integer `q`, computed exactly.
    pub fn pow(&self, q: i64) -> Self {
        let base = if q < 0 { self.inverse() } else { self.clone() };
        let k = u32::try_from(q.unsigned_abs()).expect("exponent fits in u32");
        match base {
            Self::SpecialLinear(m) => Self::SpecialLinear(m.pow(k)),
            Self::Quaternion { algebra, element } => {
                Self::Quaternion { algebra, element: element.pow(k, &algebra) }
            }
        }
    }

    /// Flattened integer data: matrix entries row-major, or `(w, x, y, z)`.
    pub fn entry_vector(&self) -> Vec<BigInt> {
        match self {
            Self::SpecialLinear(m) => m.entries().to_vec(),
            Self::Quaternion { element, .. } => {
                element.coeffs().iter().map(|c| c.to_integer()).collect()
            }
        }
    }

    /// True iff the element reduces to the identity modulo `level`.
    pub fn is_identity_mod(&self, level: &BigInt) -> bool {
        match self {
            Self::SpecialLinear(m) => m.is_identity_mod(level),
            Self::Quaternion { element, .. } => element.coeffs().iter().enumerate().all(|(k, c)| {
                let target = if k == 0 { BigInt::one() } else { BigInt::zero() };
                c.is_integer() && (c.to_integer() - target).mod_floor(level).is_zero()
            }),
        }
    }

    /// Spectral data of the real image; requires semisimplicity.
    pub fn spectral(&self, bits: u32) -> Result<SpectralData, LatticeError> {
        if !self.is_semisimple() {
            return Err(LatticeError::NotSemisimple);
        }
        Ok(root_magnitudes(&self.char_poly(), bits)?)
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SpecialLinear(m) => write!(f, "{m}"),
            Self::Quaternion { element, .. } => write!(f, "{element}"),
        }
    }
}
