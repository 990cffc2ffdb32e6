//! Exact rationals for certificate sides: always reduced, denominator > 0,
//! serialized as `p/q` strings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::is_perfect_square;
use crate::{Error, Result};

/// An exact rational in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational with zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Rational {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.gcd(&den);
        Rational {
            num: num / &g,
            den: den / g,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    /// Ratio of two nonnegative integers, `den != 0`.
    pub fn from_biguint_ratio(num: &BigUint, den: &BigUint) -> Result<Self> {
        Self::new(
            BigInt::from_biguint(Sign::Plus, num.clone()),
            BigInt::from_biguint(Sign::Plus, den.clone()),
        )
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn square(&self) -> Rational {
        Rational {
            num: &self.num * &self.num,
            den: &self.den * &self.den,
        }
    }

    /// Exact square root when both reduced parts are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.num.is_negative() {
            return None;
        }
        let num_root = is_perfect_square(self.num.magnitude())?;
        let den_root = is_perfect_square(self.den.magnitude())?;
        Some(Rational {
            num: BigInt::from_biguint(Sign::Plus, num_root),
            den: BigInt::from_biguint(Sign::Plus, den_root),
        })
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::normalized(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational::normalized(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.num.is_zero(), "division by zero rational");
        Rational::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |part: &str| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Domain(format!("invalid rational component: {part:?}")))
        };
        match s.split_once('/') {
            Some((num, den)) => Rational::new(parse_int(num)?, parse_int(den)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    #[test]
    fn normalizes_eagerly() {
        assert_eq!(rat(4, 8), rat(1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert!(rat(3, -6).denominator().is_positive());
        assert_eq!(rat(0, -7), Rational::from_integer(0));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Rational::new(BigInt::one(), BigInt::zero()).is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = rat(3, 2);
        let b = rat(20, 3);
        assert_eq!(&a * &b, rat(10, 1));
        assert_eq!(&a + &b, rat(49, 6));
        assert_eq!(&b - &a, rat(31, 6));
        assert_eq!(&b / &a, rat(40, 9));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for r in [rat(15, 2), rat(-7, 3), rat(4, 1), rat(0, 5)] {
            let s = r.to_string();
            assert_eq!(s.parse::<Rational>().unwrap(), r);
        }
        assert_eq!("17/2".parse::<Rational>().unwrap(), rat(17, 2));
        assert_eq!("4".parse::<Rational>().unwrap(), rat(4, 1));
        assert!("4/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn sqrt_exact_detects_squares() {
        assert_eq!(rat(9, 4).sqrt_exact(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt_exact(), None);
        assert_eq!(rat(-9, 4).sqrt_exact(), None);
        assert_eq!(rat(49, 36).sqrt_exact(), Some(rat(7, 6)));
    }
}
