//! Scalars in two arithmetic modes: exact rationals and tolerance-carrying floats.
//!
//! Rank decisions are discontinuous, so the default mode is exact rational
//! arithmetic where every theorem can be tested as an identity. Float mode
//! exists for ingesting measured data; it carries a single relative tolerance
//! that is used uniformly for every zero and equality test.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic mode shared by every value inside one table or realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArithmeticMode {
    Exact,
    Float { tol: f64 },
}

pub const DEFAULT_TOL: f64 = 1e-9;

impl ArithmeticMode {
    pub fn float_default() -> Self {
        ArithmeticMode::Float { tol: DEFAULT_TOL }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ArithmeticMode::Exact)
    }

    pub fn tol(&self) -> Option<f64> {
        match self {
            ArithmeticMode::Exact => None,
            ArithmeticMode::Float { tol } => Some(*tol),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ArithmeticMode::Exact => Scalar::Rational(BigRational::zero()),
            ArithmeticMode::Float { .. } => Scalar::Float(0.0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            ArithmeticMode::Exact => Scalar::Rational(BigRational::one()),
            ArithmeticMode::Float { .. } => Scalar::Float(1.0),
        }
    }

    pub fn from_int(&self, k: i64) -> Scalar {
        match self {
            ArithmeticMode::Exact => Scalar::int(k),
            ArithmeticMode::Float { .. } => Scalar::Float(k as f64),
        }
    }

    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        match self {
            ArithmeticMode::Exact => Scalar::rat(num, den),
            ArithmeticMode::Float { .. } => Scalar::Float(num as f64 / den as f64),
        }
    }

    /// Zero test. Exact in rational mode; `|x| <= tol` in float mode
    /// (values in this domain are probabilities of unit scale).
    pub fn is_zero(&self, s: &Scalar) -> bool {
        match (self, s) {
            (ArithmeticMode::Exact, Scalar::Rational(r)) => r.is_zero(),
            (ArithmeticMode::Float { tol }, s) => s.to_f64().abs() <= *tol,
            (ArithmeticMode::Exact, Scalar::Float(x)) => *x == 0.0,
        }
    }

    /// Strict negativity: `< 0` exactly, or below `-tol` in float mode.
    pub fn is_negative(&self, s: &Scalar) -> bool {
        match (self, s) {
            (ArithmeticMode::Exact, Scalar::Rational(r)) => r.is_negative(),
            (ArithmeticMode::Float { tol }, s) => s.to_f64() < -*tol,
            (ArithmeticMode::Exact, Scalar::Float(x)) => *x < 0.0,
        }
    }

    /// Mode-aware equality: identity in exact mode, `|a-b| <= tol*max(1,|a|,|b|)`
    /// in float mode.
    pub fn eq_scalar(&self, a: &Scalar, b: &Scalar) -> bool {
        match self {
            ArithmeticMode::Exact => a == b,
            ArithmeticMode::Float { tol } => {
                let (x, y) = (a.to_f64(), b.to_f64());
                (x - y).abs() <= tol * 1.0_f64.max(x.abs()).max(y.abs())
            }
        }
    }

    /// Parse a value in this mode. Accepts `"num/den"`, integers and plain
    /// decimal strings; rational mode parses decimals exactly.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        match self {
            ArithmeticMode::Exact => parse_rational(text).map(Scalar::Rational),
            ArithmeticMode::Float { .. } => {
                if let Ok(r) = parse_rational(text) {
                    return Ok(Scalar::Float(ratio_to_f64(&r)));
                }
                text.trim()
                    .parse::<f64>()
                    .map(Scalar::Float)
                    .map_err(|e| Error::InvalidScalar {
                        text: text.to_string(),
                        reason: e.to_string(),
                    })
            }
        }
    }
}

/// One number, in whichever arithmetic the surrounding container runs.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn rat(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(k: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => ratio_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    /// Same value pushed into float representation.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::Float(x) => x.is_finite(),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact parser: `-3/16`, `7`, `0.1875` (decimal digits become a power-of-ten
/// denominator, no rounding). Scientific notation is rejected so that exact
/// mode never approximates silently.
fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = |reason: &str| Error::InvalidScalar {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(bad("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
        {
            return Err(bad("expected decimal digits"));
        }
        let digits = format!(
            "{}{}",
            if int_digits.is_empty() {
                "0"
            } else {
                int_digits
            },
            frac_part
        );
        let n: BigInt = digits.parse().map_err(|_| bad("bad decimal"))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(BigInt::from(sign) * n, d));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| bad("expected integer, fraction or decimal"))?;
    Ok(BigRational::from_integer(n))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

// Mixed-representation arithmetic promotes to float; containers keep modes
// homogeneous, so promotion only happens when a caller mixes them on purpose.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let m = ArithmeticMode::Exact;
        assert_eq!(m.parse("3/16").unwrap(), Scalar::rat(3, 16));
        assert_eq!(m.parse("-3/16").unwrap(), Scalar::rat(-3, 16));
        assert_eq!(m.parse("7").unwrap(), Scalar::int(7));
        assert_eq!(m.parse("0.1875").unwrap(), Scalar::rat(3, 16));
        assert_eq!(m.parse("-0.5").unwrap(), Scalar::rat(-1, 2));
        assert_eq!(m.parse(".25").unwrap(), Scalar::rat(1, 4));
        assert!(m.parse("1e-3").is_err());
        assert!(m.parse("1/0").is_err());
        assert!(m.parse("").is_err());
    }

    #[test]
    fn display_round_trip() {
        let m = ArithmeticMode::Exact;
        for s in [
            Scalar::rat(3, 16),
            Scalar::rat(-7, 3),
            Scalar::int(0),
            Scalar::int(42),
        ] {
            let text = s.to_string();
            assert_eq!(m.parse(&text).unwrap(), s);
        }
    }

    #[test]
    fn float_mode_parses_rationals() {
        let m = ArithmeticMode::float_default();
        let v = m.parse("1/4").unwrap();
        assert_eq!(v, Scalar::Float(0.25));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::rat(1, 3);
        let b = Scalar::rat(1, 6);
        assert_eq!(&a + &b, Scalar::rat(1, 2));
        assert_eq!(&a - &b, Scalar::rat(1, 6));
        assert_eq!(&a * &b, Scalar::rat(1, 18));
        assert_eq!(&a / &b, Scalar::int(2));
    }

    #[test]
    fn float_zero_test_uses_tolerance() {
        let m = ArithmeticMode::Float { tol: 1e-9 };
        assert!(m.is_zero(&Scalar::Float(5e-10)));
        assert!(!m.is_zero(&Scalar::Float(5e-9)));
        assert!(m.is_negative(&Scalar::Float(-1e-3)));
        assert!(!m.is_negative(&Scalar::Float(-5e-10)));
    }
}
