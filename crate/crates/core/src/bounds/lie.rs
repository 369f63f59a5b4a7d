use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::BoundsError;
use crate::bigfloat::{factorial, pi, BigFloat};

/// Largest classical rank for which exponent tables are produced.
pub const MAX_RANK: u32 = 100;

/// Killing-Cartan type of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KcType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl KcType {
    /// Validated constructor from a family letter (`"A"`, `"E8"`, ...) and a rank.
    pub fn new(family: &str, rank: Option<u32>) -> Result<Self, BoundsError> {
        let fixed = |t: KcType, r: u32| match rank {
            None => Ok(t),
            Some(k) if k == r => Ok(t),
            Some(k) => Err(BoundsError::InvalidType(format!("{t} has rank {r}, not {k}"))),
        };
        let classical = |make: fn(u32) -> KcType, min: u32| {
            let r = rank.ok_or_else(|| BoundsError::InvalidType(format!("type {family} needs a rank")))?;
            if r < min || r > MAX_RANK {
                return Err(BoundsError::InvalidType(format!(
                    "rank {r} outside {min}..={MAX_RANK} for type {family}"
                )));
            }
            Ok(make(r))
        };
        match family.to_ascii_uppercase().as_str() {
            "A" => classical(KcType::A, 1),
            "B" => classical(KcType::B, 1),
            "C" => classical(KcType::C, 1),
            "D" => classical(KcType::D, 3),
            "E6" => fixed(KcType::E6, 6),
            "E7" => fixed(KcType::E7, 7),
            "E8" => fixed(KcType::E8, 8),
            "F4" => fixed(KcType::F4, 4),
            "G2" => fixed(KcType::G2, 2),
            "E" => match rank {
                Some(6) => Ok(KcType::E6),
                Some(7) => Ok(KcType::E7),
                Some(8) => Ok(KcType::E8),
                _ => Err(BoundsError::InvalidType("type E needs rank 6, 7 or 8".into())),
            },
            other => Err(BoundsError::InvalidType(format!("unknown type {other:?}"))),
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            KcType::A(r) | KcType::B(r) | KcType::C(r) | KcType::D(r) => r,
            KcType::E6 => 6,
            KcType::E7 => 7,
            KcType::E8 => 8,
            KcType::F4 => 4,
            KcType::G2 => 2,
        }
    }

    /// Dimension of the Lie algebra.
    pub fn dimension(self) -> u64 {
        match self {
            KcType::A(r) => u64::from(r) * u64::from(r) + 2 * u64::from(r),
            KcType::B(r) | KcType::C(r) => 2 * u64::from(r) * u64::from(r) + u64::from(r),
            KcType::D(r) => 2 * u64::from(r) * u64::from(r) - u64::from(r),
            KcType::E6 => 78,
            KcType::E7 => 133,
            KcType::E8 => 248,
            KcType::F4 => 52,
            KcType::G2 => 14,
        }
    }

    /// Exponents `m_1 <= ... <= m_r`.
    pub fn exponents(self) -> Vec<u32> {
        match self {
            KcType::A(r) => (1..=r).collect(),
            KcType::B(r) | KcType::C(r) => (1..=r).map(|i| 2 * i - 1).collect(),
            KcType::D(r) => {
                let mut e: Vec<u32> = (1..r).map(|i| 2 * i - 1).collect();
                e.push(r - 1);
                e.sort_unstable();
                e
            }
            KcType::E6 => vec![1, 4, 5, 7, 8, 11],
            KcType::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            KcType::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            KcType::F4 => vec![1, 5, 7, 11],
            KcType::G2 => vec![1, 5],
        }
    }

    /// Tabulated lower bound for `f` over the family.
    pub fn table_lower_bound(self) -> f64 {
        match self {
            KcType::A(_) => 1e-32,
            KcType::B(_) | KcType::C(_) => 1e-16,
            KcType::D(_) => 1e-19,
            KcType::E6 => 1e-15,
            KcType::E7 => 1e-13,
            KcType::E8 => 8434.1205,
            KcType::F4 => 1e-9,
            KcType::G2 => 1e-5,
        }
    }
}

impl fmt::Display for KcType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KcType::A(r) => write!(f, "A{r}"),
            KcType::B(r) => write!(f, "B{r}"),
            KcType::C(r) => write!(f, "C{r}"),
            KcType::D(r) => write!(f, "D{r}"),
            KcType::E6 => f.write_str("E6"),
            KcType::E7 => f.write_str("E7"),
            KcType::E8 => f.write_str("E8"),
            KcType::F4 => f.write_str("F4"),
            KcType::G2 => f.write_str("G2"),
        }
    }
}

impl FromStr for KcType {
    type Err = BoundsError;

    /// Parses labels such as `A3`, `d4`, `E8`, `G2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (letter, digits) = s.split_at(split);
        if letter.len() != 1 || digits.is_empty() {
            return Err(BoundsError::InvalidType(format!("cannot parse type {s:?}")));
        }
        let rank: u32 = digits
            .parse()
            .map_err(|_| BoundsError::InvalidType(format!("cannot parse rank in {s:?}")))?;
        KcType::new(letter, Some(rank))
    }
}

/// `f(m_1, ..., m_r) = prod m_i! / (2 pi)^(m_i + 1)` in extended precision.
pub fn f_value_exact(kc: KcType) -> BigFloat {
    let two_pi = BigFloat::from_u64(2).mul(&pi());
    kc.exponents().into_iter().fold(BigFloat::from_u64(1), |acc, m| {
        acc.mul(&BigFloat::from_bigint(factorial(m)))
            .div(&two_pi.powi(m + 1))
    })
}

pub fn f_value(kc: KcType) -> f64 {
    f_value_exact(kc).to_f64()
}

/// Flags attached to [`degree_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCaveat {
    /// The bound divides by the table constant instead of multiplying.
    pub constant_reciprocated: bool,
    /// Deriving a degree bound from `v >= f^[k:Q]` needs `f > 1`.
    pub requires_f_above_one: bool,
    /// Whether the table guarantees `f > 1` for this type.
    pub f_above_one: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeBound {
    pub value: f64,
    pub caveat: DegreeCaveat,
}

/// `log(v) / c`, where `c` is the tabulated lower bound for `f`: the stated
/// instantiation `[k:Q] <= 10^32 log(v)` for type A and its analogues.
pub fn degree_bound(kc: KcType, v: f64) -> Result<DegreeBound, BoundsError> {
    if !(v > 1.0) {
        return Err(BoundsError::Domain(format!("volume {v} must exceed 1")));
    }
    let c = kc.table_lower_bound();
    Ok(DegreeBound {
        value: v.ln() / c,
        caveat: DegreeCaveat {
            constant_reciprocated: true,
            requires_f_above_one: true,
            f_above_one: c > 1.0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_counts_and_dimensions() {
        // dim = r + 2 sum m_i
        for kc in [
            KcType::A(5),
            KcType::B(4),
            KcType::C(7),
            KcType::D(6),
            KcType::E6,
            KcType::E7,
            KcType::E8,
            KcType::F4,
            KcType::G2,
        ] {
            let e = kc.exponents();
            assert_eq!(e.len() as u32, kc.rank(), "{kc}");
            let sum: u64 = e.iter().map(|&m| u64::from(m)).sum();
            assert_eq!(kc.dimension(), u64::from(kc.rank()) + 2 * sum, "{kc}");
        }
        assert_eq!(KcType::D(4).exponents(), vec![1, 3, 3, 5]);
    }

    #[test]
    fn f_value_examples() {
        assert!((f_value(KcType::G2) - 4.940174608757516e-5).abs() < 1e-18);
        assert!((f_value(KcType::A(1)) - 0.025330295910584443).abs() < 1e-17);
        let e8 = f_value(KcType::E8);
        assert!((e8 - 8434.120587063027).abs() < 1e-9);
        assert_eq!(format!("{:.4}", e8), "8434.1206");
        assert!(f_value_exact(KcType::E8).to_scientific(64).starts_with("8.4341205870630"));
    }

    #[test]
    fn parsing() {
        assert_eq!("A3".parse::<KcType>().unwrap(), KcType::A(3));
        assert_eq!("e8".parse::<KcType>().unwrap(), KcType::E8);
        assert!("D2".parse::<KcType>().is_err());
        assert!("E9".parse::<KcType>().is_err());
        assert!("A101".parse::<KcType>().is_err());
        assert!(KcType::new("G2", Some(3)).is_err());
        assert_eq!(KcType::new("E", Some(7)).unwrap(), KcType::E7);
    }

    #[test]
    fn degree_bound_examples() {
        let e = std::f64::consts::E;
        let a = degree_bound(KcType::A(4), e).unwrap();
        assert!((a.value / 1e32 - 1.0).abs() < 1e-15);
        assert!(!a.caveat.f_above_one);
        assert!((degree_bound(KcType::B(2), e).unwrap().value / 1e16 - 1.0).abs() < 1e-15);
        let e8 = degree_bound(KcType::E8, e).unwrap();
        assert!((e8.value - 1.0 / 8434.1205).abs() < 1e-18);
        assert!(e8.caveat.f_above_one);
        assert!(degree_bound(KcType::E8, 1.0).is_err());
    }
}
